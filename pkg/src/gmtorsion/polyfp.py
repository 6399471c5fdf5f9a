"""Dense polynomials over F_p and the splitting test for x^8 - 2a x^4 + 1."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import ContractViolation, InvalidArgument
from .intkernel import is_perfect_square

Coeffs = Tuple[int, ...]


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class PolyFp:
    """Polynomial over F_p, coefficients lowest degree first."""

    p: int
    coeffs: Coeffs

    @classmethod
    def make(cls, p: int, coeffs) -> "PolyFp":
        return cls(p, _trim(c % p for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def _padded(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return self.coeffs + (0,) * (n - len(self.coeffs)), other.coeffs + (0,) * (n - len(other.coeffs))

    def __add__(self, other: "PolyFp") -> "PolyFp":
        a, b = self._padded(other)
        return PolyFp.make(self.p, (x + y for x, y in zip(a, b)))

    def __sub__(self, other: "PolyFp") -> "PolyFp":
        a, b = self._padded(other)
        return PolyFp.make(self.p, (x - y for x, y in zip(a, b)))

    def __mul__(self, other: "PolyFp") -> "PolyFp":
        if not self or not other:
            return PolyFp(self.p, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyFp.make(self.p, out)

    def __mod__(self, other: "PolyFp") -> "PolyFp":
        return self.divmod(other)[1]

    def divmod(self, other: "PolyFp"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = pow(other.coeffs[-1], -1, p)
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv_lead % p
            if c:
                quot[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] = (rem[i - dq + j] - c * b) % p
        return PolyFp.make(p, quot), PolyFp.make(p, rem[:dq])

    def monic(self) -> "PolyFp":
        inv = pow(self.coeffs[-1], -1, self.p)
        return PolyFp.make(self.p, (c * inv for c in self.coeffs))


def poly_gcd(f: PolyFp, g: PolyFp) -> PolyFp:
    while g:
        f, g = g, f % g
    return f.monic() if f else f


def powmod_x(e: int, f: PolyFp) -> PolyFp:
    """x**e mod f by square-and-multiply."""
    result = PolyFp.make(f.p, (1,)) % f
    base = PolyFp.make(f.p, (0, 1)) % f
    while e:
        if e & 1:
            result = (result * base) % f
        base = (base * base) % f
        e >>= 1
    return result


def count_distinct_roots(f: PolyFp) -> int:
    """Number of distinct roots of f in F_p, as deg gcd(x^p - x, f)."""
    if not f:
        raise InvalidArgument("zero polynomial has every element as a root")
    x = PolyFp.make(f.p, (0, 1))
    return poly_gcd(f, powmod_x(f.p, f) - x).degree


def eighth_degree(a: int, p: int) -> PolyFp:
    """x^8 - 2a x^4 + 1 reduced mod p."""
    return PolyFp.make(p, (1, 0, 0, 0, -2 * a, 0, 0, 0, 1))


def splits_completely(a: int, p: int) -> bool:
    return count_distinct_roots(eighth_degree(a, p)) == 8


@dataclass(frozen=True)
class RationalFactorization:
    reducible: bool
    t: Optional[int] = None
    factors: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None


def int_poly_mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return tuple(out)


def rational_factorization(a: int) -> RationalFactorization:
    """Factor x^8 - 2a x^4 + 1 over Q, for a the least Pell value of some m.

    Reducible exactly when 2(a - 1) = t^2, in which case the factors are
    x^4 - t x^2 - 1 and x^4 + t x^2 - 1 (integer coefficients, lowest first).
    """
    if a < 2:
        raise InvalidArgument(f"a must be >= 2, got {a}")
    if is_perfect_square(2 * (a + 1)) is not None:
        raise ContractViolation(f"2(a+1) is a square for a={a}; not a least Pell solution")
    t = is_perfect_square(2 * (a - 1))
    if t is None:
        return RationalFactorization(False)
    p_minus = (-1, 0, -t, 0, 1)
    p_plus = (-1, 0, t, 0, 1)
    if int_poly_mul(p_minus, p_plus) != (1, 0, 0, 0, -2 * a, 0, 0, 0, 1):
        raise ContractViolation(f"factor expansion failed for a={a}")
    return RationalFactorization(True, t, (p_minus, p_plus))
