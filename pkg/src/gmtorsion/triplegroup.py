"""The group G_m of primitive solutions of x^2 + m y^2 = z^2."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Tuple, Union

from .errors import ContractViolation, InvalidArgument
from .intkernel import squarefree_part
from .pell import PellFundamental, least_pell, pell_power

INFINITE = "infinite"


class PrimitiveTriple(NamedTuple):
    x: int
    y: int
    z: int

    def __str__(self):
        return f"{self.x},{self.y},{self.z}"

    @classmethod
    def parse(cls, text: str) -> "PrimitiveTriple":
        """Parse ``"x,y,z"``; the result is not yet checked against any m."""
        parts = text.split(",")
        if len(parts) != 3:
            raise InvalidArgument(f"malformed triple {text!r}")
        try:
            return cls(*(int(p.strip()) for p in parts))
        except ValueError:
            raise InvalidArgument(f"malformed triple {text!r}") from None


IDENTITY = PrimitiveTriple(1, 0, 1)


@dataclass(frozen=True)
class GroupContext:
    m: int
    fundamental: PellFundamental = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.m < 2:
            raise InvalidArgument(f"m must be > 1, got {self.m}")
        if squarefree_part(self.m)[1] != 1:
            raise InvalidArgument(f"m={self.m} is not squarefree")
        object.__setattr__(self, "fundamental", least_pell(self.m))

    def on_conic(self, x: int, y: int, z: int) -> bool:
        return x * x + self.m * y * y == z * z


def _canonical(x, y, z):
    if z < 0:
        x, y, z = -x, -y, -z
    if y < 0 or (y == 0 and x < 0):
        x, y = -x, -y
    return PrimitiveTriple(x, y, z)


def normalize(ctx: GroupContext, x: int, y: int, z: int) -> PrimitiveTriple:
    """Primitive, canonically signed representative of [x, y, z].

    Sign convention: y > 0, or y = 0 and x > 0; z > 0 always.
    """
    if z == 0 or not ctx.on_conic(x, y, z):
        raise InvalidArgument(f"({x}, {y}, {z}) is not on x^2 + {ctx.m} y^2 = z^2")
    g = math.gcd(x, y, z)
    t = _canonical(x // g, y // g, z // g)
    if t.x == 0:
        raise ContractViolation(f"x = 0 in a primitive triple for m={ctx.m}")
    return t


def check(ctx: GroupContext, t) -> PrimitiveTriple:
    """Validate that ``t`` is already a canonical primitive triple for ctx.m."""
    t = PrimitiveTriple(*t)
    if normalize(ctx, *t) != t:
        raise InvalidArgument(f"[{t}] is not a canonical primitive triple for m={ctx.m}")
    return t


def add_with_gcd(ctx: GroupContext, t1, t2) -> Tuple[PrimitiveTriple, int]:
    """Group law together with the gcd g removed during normalization."""
    x, y, z = t1
    a, b, c = t2
    X = x * a - ctx.m * y * b
    Y = x * b + y * a
    Z = z * c
    g = math.gcd(X, Y, Z)
    return normalize(ctx, X, Y, Z), g


def add(ctx: GroupContext, t1, t2) -> PrimitiveTriple:
    return add_with_gcd(ctx, t1, t2)[0]


def neg(ctx: GroupContext, t) -> PrimitiveTriple:
    x, y, z = t
    return normalize(ctx, x, -y, z)


def scalar_mul(ctx: GroupContext, k: int, t) -> PrimitiveTriple:
    if k < 0:
        k, t = -k, neg(ctx, t)
    result = IDENTITY
    base = PrimitiveTriple(*t)
    while k:
        if k & 1:
            result = add(ctx, result, base)
        base = add(ctx, base, base)
        k >>= 1
    return result


def order(ctx: GroupContext, t) -> Union[int, str]:
    """1, 3 or ``INFINITE``.

    The torsion subgroup of G_m is trivial except for Z/3Z when m = 3, so
    only the order-3 probe is needed.
    """
    t = PrimitiveTriple(*t)
    if t == IDENTITY:
        return 1
    if ctx.m == 3 and scalar_mul(ctx, 3, t) == IDENTITY:
        return 3
    return INFINITE


def pell_generator(ctx: GroupContext, n: int) -> PrimitiveTriple:
    """[1, b_n, a_n] for the n-th Pell solution."""
    if n < 1:
        raise InvalidArgument("pell_generator needs n >= 1")
    a_n, b_n = pell_power(ctx.m, n, ctx.fundamental)
    return normalize(ctx, 1, b_n, a_n)


def triple_from_uv(ctx: GroupContext, u: int, v: int) -> PrimitiveTriple:
    """Class of (u + v sqrt(-m))^2, i.e. [u^2 - m v^2, 2uv, u^2 + m v^2].

    Every class of G_m arises this way for some integers u, v.
    """
    if u == 0 and v == 0:
        raise InvalidArgument("u and v cannot both be zero")
    return normalize(ctx, u * u - ctx.m * v * v, 2 * u * v, u * u + ctx.m * v * v)
