"""Membership in Lambda_m and prime witness triples for the quotient G_m / P_m.

Lambda_m is the set of odd primes p with (m/p) = (-m/p) = 1 that never divide
a Pell value a_n; the last condition is equivalent to p having odd rank.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .classgroup import class_number
from .errors import InvalidArgument, NotEligible, NotFound
from .intkernel import is_perfect_square, is_prime, jacobi, primes_upto, sqrt_mod_prime_power
from .pell import rank_rho
from .polyfp import splits_completely
from .triplegroup import GroupContext, PrimitiveTriple, normalize


@dataclass(frozen=True)
class LambdaVerdict:
    p: int
    legendre_m: bool
    legendre_neg_m: bool
    rank_parity: Optional[bool]  # True when the rank is odd; None if not computed
    rho: Optional[int] = None

    @property
    def in_lambda(self) -> bool:
        return self.legendre_m and self.legendre_neg_m and bool(self.rank_parity)


@dataclass(frozen=True)
class PrimeWitnessTriple:
    p: int
    triple: PrimitiveTriple
    k: int
    delta: int
    representation: Optional[Tuple[int, int]] = None


def _check_prime(ctx, p):
    if p == 2 or p < 2 or not is_prime(p):
        raise InvalidArgument(f"{p} is not an odd prime")
    if ctx.m % p == 0:
        raise InvalidArgument(f"{p} divides m={ctx.m}")


def in_lambda(ctx: GroupContext, p: int) -> LambdaVerdict:
    _check_prime(ctx, p)
    leg_m = jacobi(ctx.m, p) == 1
    leg_neg = jacobi(-ctx.m, p) == 1
    if not (leg_m and leg_neg):
        return LambdaVerdict(p, leg_m, leg_neg, None)
    rank = rank_rho(ctx.fundamental.a, p)
    return LambdaVerdict(p, leg_m, leg_neg, rank.rho % 2 == 1, rank.rho)


def _lambda_chunk(m, primes):
    ctx = GroupContext(m)
    return [v for v in (in_lambda(ctx, p) for p in primes) if v.in_lambda]


def lambda_primes(ctx: GroupContext, bound: int, jobs: int = 1) -> List[LambdaVerdict]:
    """Primes p <= bound in Lambda_m, ascending.

    With ``jobs > 1`` the prime range is split across worker processes; the
    merged result is identical to the sequential one.
    """
    if bound < 3:
        raise InvalidArgument("bound must be >= 3")
    primes = [p for p in primes_upto(bound) if p > 2 and ctx.m % p]
    if jobs <= 1 or len(primes) < 2 * jobs:
        return _lambda_chunk(ctx.m, primes)
    size = math.ceil(len(primes) / jobs)
    chunks = [primes[i : i + size] for i in range(0, len(primes), size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_lambda_chunk, [ctx.m] * len(chunks), chunks)
        merged = [v for part in parts for v in part]
    return sorted(merged, key=lambda v: v.p)


def lemma32_test(ctx: GroupContext, p: int) -> bool:
    """Sufficient criterion for p in Lambda_m.

    p > a^2, p != 1 (mod 16), and x^8 - 2a x^4 + 1 splits completely mod p.
    """
    if p < 3 or p % 2 == 0:
        raise InvalidArgument(f"{p} is not an odd prime")
    a = ctx.fundamental.a
    return p > a * a and p % 16 != 1 and splits_completely(a, p)


def lemma32_primes(ctx: GroupContext, bound: int) -> List[int]:
    return [p for p in primes_upto(bound) if p > 2 and lemma32_test(ctx, p)]


def _cornacchia(N, m, r):
    a, b = N, r
    while b * b >= N:
        a, b = b, a % b
    rest = N - b * b
    if rest % m:
        return None
    y = is_perfect_square(rest // m)
    return None if y is None or y == 0 else (b, y)


def primitive_representations(N: int, m: int, p: int) -> List[Tuple[int, int]]:
    """All (x, y) with x, y > 0, gcd(x, y) = 1 and x^2 + m y^2 = N.

    N must be p^(2k) or 4 p^(2k) with p an odd prime not dividing m. Each such
    pair has x = r y (mod N) for a square root r of -m mod N, and Cornacchia's
    descent on (N, r) recovers it.
    """
    odd, two = N, 1
    while odd % 2 == 0:
        odd //= 2
        two *= 2
    e = 0
    while odd % p == 0:
        odd //= p
        e += 1
    if odd != 1 or two not in (1, 4):
        raise InvalidArgument(f"{N} is not p^(2k) or 4 p^(2k) for p={p}")
    r = sqrt_mod_prime_power(-m, p, e)
    if r is None:
        return []
    pe = p ** e
    roots = {r, pe - r}
    if two == 4:
        if (-m) % 4 != 1:
            return []
        # Combine with the roots 1, 3 mod 4.
        roots = {(x * 4 * pow(4, -1, pe) + s * pe * pow(pe, -1, 4)) % N for x in roots for s in (1, 3)}
    found = set()
    for root in roots:
        rep = _cornacchia(N, m, root)
        if rep is not None and math.gcd(*rep) == 1 and rep[0] > 0:
            found.add(rep)
    return sorted(found, key=lambda xy: (xy[1], xy[0]))


def _scan_representations(N, m):
    out = []
    for y in range(1, math.isqrt(N // m) + 1):
        x = is_perfect_square(N - m * y * y)
        if x and math.gcd(x, y) == 1:
            out.append((x, y))
    return out


def triple_from_prime(ctx: GroupContext, p: int, max_k: Optional[int] = None,
                      method: str = "cornacchia") -> PrimeWitnessTriple:
    """Primitive triple whose third entry is 2^delta * p^k, with k minimal.

    Search order: k = 1, 2, ... up to the class number h of Q(sqrt(-m)), and
    for each k first delta = 0 then delta = 1; within that, the smallest y >= 1.
    ``method="scan"`` tries every y directly instead of enumerating square
    roots of -m; both give the same answer.
    """
    _check_prime(ctx, p)
    if jacobi(ctx.m, p) != 1 or jacobi(-ctx.m, p) != 1:
        raise NotEligible(f"p={p} fails (m/p) = (-m/p) = 1 for m={ctx.m}")
    if method not in ("cornacchia", "scan"):
        raise InvalidArgument(f"unknown method {method!r}")
    m = ctx.m
    h = max_k if max_k is not None else class_number(m)
    for k in range(1, h + 1):
        for delta in (0, 1):
            Z = 2 ** delta * p ** k
            if method == "scan":
                reps = _scan_representations(Z * Z, m)
            else:
                reps = primitive_representations(Z * Z, m, p)
            if not reps:
                continue
            x, y = reps[0]
            triple = normalize(ctx, x, y, Z)
            rep = None
            if delta == 1 and y % 2 == 1 and (x - y) % 2 == 0:
                rep = ((x - y) // 2, y)
            return PrimeWitnessTriple(p, triple, k, delta, rep)
    raise NotFound(f"no representation of (2^d p^k)^2 with k <= {h} for p={p}, m={m}")
