"""Continued fraction of sqrt(m), Pell solutions, Lucas-type sequences and ranks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import islice
from typing import Iterator, List, NamedTuple, Optional, Tuple

from .errors import ContractViolation, InvalidArgument
from .intkernel import factorize, is_perfect_square, jacobi


@dataclass(frozen=True)
class CFExpansion:
    m: int
    u0: int
    period: Tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.period)

    def partial_quotient(self, i: int) -> int:
        if i == 0:
            return self.u0
        return self.period[(i - 1) % self.r]


class Convergent(NamedTuple):
    i: int
    h: int
    k: int


@dataclass(frozen=True)
class PellFundamental:
    m: int
    a: int
    b: int
    negative_fundamental: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class LucasPair:
    n: int
    F: int
    G: int
    modulus: Optional[int] = None


@dataclass(frozen=True)
class RankResult:
    p: int
    rho: int
    divides_some_a_n: bool
    degenerate: bool = False


def cf_sqrt(m: int) -> CFExpansion:
    """Shortest-period continued fraction of sqrt(m)."""
    if m < 2:
        raise InvalidArgument(f"cf_sqrt needs m >= 2, got {m}")
    if is_perfect_square(m) is not None:
        raise InvalidArgument(f"{m} is a perfect square")
    u0 = math.isqrt(m)
    P, Q, u = 0, 1, u0
    period = []
    start = None
    while True:
        P = u * Q - P
        Q = (m - P * P) // Q
        if start is None:
            start = (P, Q)
        elif (P, Q) == start:
            break
        u = (u0 + P) // Q
        period.append(u)
    if period[-1] != 2 * u0:
        raise ContractViolation(f"period of sqrt({m}) does not end in 2*u0")
    return CFExpansion(m, u0, tuple(period))


def iter_convergents(cf: CFExpansion) -> Iterator[Convergent]:
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    i = 0
    while True:
        u = cf.partial_quotient(i)
        h_prev, h = h, u * h + h_prev
        k_prev, k = k, u * k + k_prev
        yield Convergent(i, h, k)
        i += 1


def convergents(cf: CFExpansion, count: int) -> List[Convergent]:
    if count < 1:
        raise InvalidArgument("count must be >= 1")
    return list(islice(iter_convergents(cf), count))


def least_pell(m: int) -> PellFundamental:
    """Least positive solutions of X^2 - mY^2 = 1 and, when solvable, = -1."""
    cf = cf_sqrt(m)
    r = cf.r
    l = r if r % 2 == 0 else 2 * r
    conv = convergents(cf, l)
    a, b = conv[l - 1].h, conv[l - 1].k
    if a * a - m * b * b != 1:
        raise ContractViolation(f"convergent {l - 1} of sqrt({m}) is not a Pell solution")
    negative = None
    if r % 2 == 1:
        a0, b0 = conv[r - 1].h, conv[r - 1].k
        if a0 * a0 - m * b0 * b0 != -1 or (a0 * a0 + m * b0 * b0, 2 * a0 * b0) != (a, b):
            raise ContractViolation(f"negative Pell solution for {m} failed verification")
        negative = (a0, b0)
    return PellFundamental(m, a, b, negative)


def _pair_mul(m, p, q):
    return p[0] * q[0] + m * p[1] * q[1], p[0] * q[1] + p[1] * q[0]


def pell_power(m: int, n: int, fundamental: Optional[PellFundamental] = None) -> Tuple[int, int]:
    """(a_n, b_n) with a_n + b_n sqrt(m) = (a + b sqrt(m))^n."""
    if n < 0:
        raise InvalidArgument("pell_power needs n >= 0")
    fund = fundamental or least_pell(m)
    result, base = (1, 0), (fund.a, fund.b)
    while n:
        if n & 1:
            result = _pair_mul(m, result, base)
        base = _pair_mul(m, base, base)
        n >>= 1
    return result


def _mat_mul(x, y, mod):
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    out = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
    if mod is not None:
        out = tuple(tuple(v % mod for v in row) for row in out)
    return out


def lucas_matrix(a: int, n: int, modulus: Optional[int] = None):
    """The matrix ((2a, -1), (1, 0))**n, optionally reduced mod ``modulus``.

    Equals ((F_{n+1}, -F_n), (F_n, -F_{n-1})).
    """
    result = ((1, 0), (0, 1))
    base = ((2 * a, -1), (1, 0))
    if modulus is not None:
        base = _mat_mul(base, ((1, 0), (0, 1)), modulus)
    while n:
        if n & 1:
            result = _mat_mul(result, base, modulus)
        base = _mat_mul(base, base, modulus)
        n >>= 1
    return result


def lucas_pair(a: int, n: int, modulus: Optional[int] = None) -> LucasPair:
    """F_n and G_n of A_{n+1} = 2a A_n - A_{n-1} (seeds 0, 1 and 2, 2a)."""
    if a < 2:
        raise InvalidArgument(f"lucas_pair needs a >= 2, got {a}")
    if n < 0:
        raise InvalidArgument("lucas_pair needs n >= 0")
    if modulus is not None and (modulus < 3 or modulus % 2 == 0):
        raise InvalidArgument(f"modulus must be an odd prime, got {modulus}")
    (f_next, _), (f_n, neg_f_prev) = lucas_matrix(a, n, modulus)
    G = f_next + neg_f_prev
    if modulus is not None:
        G %= modulus
    return LucasPair(n, f_n, G, modulus)


def _rank_by_stepping(a, p):
    f_prev, f = 0, 1
    for n in range(1, p + 2):
        if f == 0:
            return n
        f_prev, f = f, (2 * a * f - f_prev) % p
    raise ContractViolation(f"no rank <= p+1 for a={a}, p={p}")


def _rank_by_divisors(a, p, eps):
    n = p - eps
    rho = n
    for q, _ in factorize(n):
        while rho % q == 0 and lucas_pair(a, rho // q, p).F == 0:
            rho //= q
    return rho


def rank_rho(a: int, p: int, method: str = "divisors") -> RankResult:
    """Rank of apparition of p in F_n.

    ``method="divisors"`` searches the divisors of p - (D/p), D = a^2 - 1,
    by fast exponentiation; ``method="step"`` walks the recurrence up to p+1.
    If p divides a^2 - 1 the characteristic polynomial has a double root mod p,
    F_n = n a^(n-1), and the rank is p (flagged ``degenerate``).
    """
    if p < 3 or p % 2 == 0:
        raise InvalidArgument(f"rank_rho needs an odd prime, got {p}")
    eps = jacobi(a * a - 1, p)
    if eps == 0:
        return RankResult(p, p, False, degenerate=True)
    if method == "step":
        rho = _rank_by_stepping(a % p, p)
    elif method == "divisors":
        rho = _rank_by_divisors(a, p, eps)
    else:
        raise InvalidArgument(f"unknown rank method {method!r}")
    if not 0 < rho <= p + 1:
        raise ContractViolation(f"rank {rho} outside (0, p+1] for p={p}")
    return RankResult(p, rho, rho % 2 == 0)
