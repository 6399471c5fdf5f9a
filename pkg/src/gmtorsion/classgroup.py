"""Ideal class groups of Q(sqrt(-m)) as reduced binary quadratic forms.

Classes are compared through reduced forms. Ideals of the maximal order are
kept in Hermite normal form over the basis {1, w}, where w = sqrt(-m) when
m = 1, 2 (mod 4) and w = (1 + sqrt(-m))/2 when m = 3 (mod 4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Tuple

from .errors import CertificateRefused, ContractViolation, InvalidArgument, NotEligible
from .intkernel import egcd, is_perfect_square
from .triplegroup import GroupContext, PrimitiveTriple, add, normalize


@dataclass(frozen=True)
class Discriminant:
    m: int
    D: int


def discriminant(m: int) -> Discriminant:
    if m < 2:
        raise InvalidArgument(f"m must be > 1, got {m}")
    return Discriminant(m, -m if m % 4 == 3 else -4 * m)


class QuadForm(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self
        return abs(b) <= a <= c and (b >= 0 or (abs(b) != a and a != c))


def principal_form(D: int) -> QuadForm:
    if D % 4 == 0:
        return QuadForm(1, 0, -D // 4)
    return QuadForm(1, 1, (1 - D) // 4)


def reduce(form) -> QuadForm:
    """Gauss reduction of a positive definite form."""
    a, b, c = form
    if a <= 0 or b * b - 4 * a * c >= 0:
        raise InvalidArgument(f"{tuple(form)} is not positive definite")
    while True:
        if not -a < b <= a:
            r = (a - b) // (2 * a)
            b, c = b + 2 * r * a, a * r * r + b * r + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return QuadForm(a, b, c)


def compose(f1, f2) -> QuadForm:
    """Dirichlet composition of two primitive forms of the same discriminant."""
    f1, f2 = QuadForm(*f1), QuadForm(*f2)
    D = f1.discriminant
    if f2.discriminant != D:
        raise InvalidArgument("forms have different discriminants")
    if f1.a > f2.a:
        f1, f2 = f2, f1
    a1, b1, _ = f1
    a2, b2, c2 = f2
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, y1, _ = egcd(a2, a1)
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = egcd(s, d)
        y2 = -y2
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    num = b3 * b3 - D
    if num % (4 * a3):
        raise ContractViolation(f"composition of {f1} and {f2} is not integral")
    return reduce((a3, b3, num // (4 * a3)))


def is_principal(form) -> bool:
    f = QuadForm(*form)
    return reduce(f) == principal_form(f.discriminant)


def reduced_forms(D: int) -> List[QuadForm]:
    """All primitive reduced forms of negative discriminant D."""
    if D >= 0 or D % 4 not in (0, 1):
        raise InvalidArgument(f"bad negative discriminant {D}")
    out = []
    for a in range(1, math.isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(a, b, c) == 1:
                out.append(QuadForm(a, b, c))
    return out


def class_number(m: int) -> int:
    return len(reduced_forms(discriminant(m).D))


# -- ideals --------------------------------------------------------------


def _omega_times(m, u, v):
    # (u + v w) * w
    if m % 4 == 3:
        return -v * (1 + m) // 4, u + v
    return -m * v, u


def element_mul(m: int, e1, e2) -> Tuple[int, int]:
    """Product of u1 + v1 w and u2 + v2 w in coordinates over {1, w}."""
    u1, v1 = e1
    u2, v2 = e2
    wu, wv = _omega_times(m, 0, v1 * v2)  # v1 v2 w^2
    return u1 * u2 + wu, u1 * v2 + u2 * v1 + wv


def _hnf(m, vectors):
    n, pivot = 0, None
    for u, v in vectors:
        if v == 0:
            n = math.gcd(n, u)
        elif pivot is None:
            pivot = (u, v)
        else:
            t, s = pivot
            g, p, q = egcd(s, v)
            n = math.gcd(n, (v // g) * t - (s // g) * u)
            pivot = (p * t + q * u, g)
    if pivot is None or n == 0:
        raise InvalidArgument("generators do not span a full-rank lattice")
    t, s = pivot
    if s < 0:
        t, s = -t, -s
    return QuadIdeal(m, n, t % n, s)


@dataclass(frozen=True)
class QuadIdeal:
    """The ideal Z n + Z (t + s w), with 0 <= t < n."""

    m: int
    n: int
    t: int
    s: int

    def __post_init__(self):
        if self.n <= 0 or self.s <= 0 or self.n % self.s or self.t % self.s:
            raise ContractViolation(f"{self} violates the ideal HNF conditions")
        for gen in ((self.n, 0), (self.t, self.s)):
            if not self.contains(_omega_times(self.m, *gen)):
                raise ContractViolation(f"{self} is not closed under multiplication by w")

    @classmethod
    def generated_by(cls, m: int, gens: Iterable[Tuple[int, int]]) -> "QuadIdeal":
        """Ideal generated (over the maximal order) by the given elements."""
        vectors = []
        for g in gens:
            vectors.append(tuple(g))
            vectors.append(_omega_times(m, *g))
        return _hnf(m, vectors)

    @property
    def norm(self) -> int:
        return self.n * self.s

    def basis(self):
        return (self.n, 0), (self.t, self.s)

    def contains(self, elem) -> bool:
        u, v = elem
        if v % self.s:
            return False
        return (u - (v // self.s) * self.t) % self.n == 0

    def __mul__(self, other: "QuadIdeal") -> "QuadIdeal":
        if other.m != self.m:
            raise InvalidArgument("ideals from different fields")
        prods = [element_mul(self.m, e, f) for e in self.basis() for f in other.basis()]
        return _hnf(self.m, prods)

    def to_form(self) -> QuadForm:
        """Reduced form of the ideal class (via the primitive part n/s, t/s)."""
        A, B0 = self.n // self.s, self.t // self.s
        m = self.m
        if m % 4 == 3:
            a, b, num = A, 2 * B0 + 1, B0 * B0 + B0 + (1 + m) // 4
        else:
            a, b, num = A, 2 * B0, B0 * B0 + m
        if num % A:
            raise ContractViolation(f"{self} does not give an integral norm form")
        return reduce((a, b, num // A))


def _sqrt_minus_m(m, x, y):
    # x + y sqrt(-m) over {1, w}
    if m % 4 == 3:
        return x - y, 2 * y
    return x, y


def ideal_from_triple(ctx: GroupContext, t) -> QuadIdeal:
    """HNF of the ideal generated by z and x + y sqrt(-m)."""
    x, y, z = t
    ideal = QuadIdeal.generated_by(ctx.m, [(z, 0), _sqrt_minus_m(ctx.m, x, y)])
    if (z * z) % ideal.norm:
        raise ContractViolation(f"norm {ideal.norm} does not divide z^2 for [{x},{y},{z}]")
    return ideal


def ideal_via_inverse(ctx: GroupContext, t, beta: Optional[int] = None) -> QuadIdeal:
    """The same ideal as ``ideal_from_triple`` with basis {z, x*beta + sqrt(-m)}.

    Here z*gamma + y*beta = 1. Only for m = 1, 2 (mod 4), where z is odd.
    A caller-supplied ``beta`` must satisfy y*beta = 1 (mod z).
    """
    x, y, z = t
    m = ctx.m
    if m % 4 == 3:
        raise InvalidArgument("the inverse basis applies only to m = 1, 2 (mod 4)")
    if beta is None:
        g, _, beta = egcd(z, y)
        if g != 1:
            raise ContractViolation(f"gcd(z, y) = {g} for a primitive triple")
    elif (y * beta - 1) % z:
        raise InvalidArgument(f"beta={beta} is not an inverse of y mod z")
    return QuadIdeal(m, z, (x * beta) % z, 1)


def f_m_image(ctx: GroupContext, t) -> QuadForm:
    """Reduced form of the class of <z, x + y sqrt(-m)>."""
    return ideal_from_triple(ctx, t).to_form()


def represents(c: int, m: int) -> Optional[Tuple[int, int]]:
    """Some (x, y), x, y >= 0, with x^2 + m y^2 = c; solutions with y > 0 first."""
    if c < 0:
        return None
    for y in range(1, math.isqrt(c // m) + 1):
        x = is_perfect_square(c - m * y * y)
        if x is not None:
            return x, y
    x = is_perfect_square(c)
    return (x, 0) if x is not None else None


# -- order-two certificates ------------------------------------------------

M_GREATER_C = "m_greater_c"
REPRESENTATION_FAILURE = "representation_failure"
REDUCED_FORM_NONPRINCIPAL = "reduced_form_nonprincipal"


@dataclass(frozen=True)
class TorsionCertificate:
    """Evidence that t + P_m has order exactly two in G_m / P_m."""

    m: int
    triple: PrimitiveTriple
    negative_pell_check: bool
    doubling_in_Pm: PrimitiveTriple
    nonprincipality_evidence: str
    image: QuadForm

    def to_json(self) -> dict:
        return {
            "triple": [str(v) for v in self.triple],
            "negativePell": self.negative_pell_check,
            "doubling": [str(v) for v in self.doubling_in_Pm],
            "evidence": self.nonprincipality_evidence,
        }


def certify_order_two(ctx: GroupContext, t) -> TorsionCertificate:
    """Certify that the coset of ``t`` has order two modulo the Pell subgroup.

    Requires x^2 - m y^2 = -1, so that 2t = [1, -2xy, z^2] is a Pell triple
    and the real quadratic field has a unit of norm -1 (hence P_m lies in the
    kernel of f_m). Non-principality of f_m(t) then shows t is not in P_m.
    """
    t = normalize(ctx, *t)
    x, y, z = t
    m = ctx.m
    if x * x - m * y * y != -1:
        raise NotEligible(f"[{t}] does not satisfy x^2 - {m} y^2 = -1")

    doubling = normalize(ctx, 1, -2 * x * y, z * z)
    if add(ctx, t, t) != doubling:
        raise ContractViolation(f"2[{t}] differs from [1, -2xy, z^2]")
    if 1 + m * (2 * x * y) ** 2 != z ** 4:
        raise ContractViolation(f"[1, 2xy, z^2] is not a Pell triple for m={m}")

    image = f_m_image(ctx, t)
    principal = is_principal(image)
    ideal = ideal_from_triple(ctx, t)
    # The norm argument needs Z[sqrt(-m)] as the maximal order and norm z.
    norm_argument_ok = m % 4 != 3 and ideal.norm == z
    if norm_argument_ok and m > z:
        evidence = M_GREATER_C
    elif norm_argument_ok and represents(z, m) is None:
        evidence = REPRESENTATION_FAILURE
    elif not principal:
        evidence = REDUCED_FORM_NONPRINCIPAL
    else:
        raise CertificateRefused(f"f_{m}([{t}]) is principal; [{t}] may lie in P_{m}")
    if principal:
        raise ContractViolation(f"{evidence} evidence contradicts principal image for [{t}]")
    return TorsionCertificate(m, t, True, doubling, evidence, image)
