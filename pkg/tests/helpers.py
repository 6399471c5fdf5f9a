"""Shared builders for the test suite."""

import math

from gmtorsion.intkernel import jacobi, primes_upto
from gmtorsion.lambdasieve import triple_from_prime
from gmtorsion.triplegroup import GroupContext, add, pell_generator, triple_from_uv


def random_pool(m, rng, size=40):
    """Triples for G_m built from Pell generators, prime witnesses, (u, v)
    parametrizations, and sums of those."""
    ctx = GroupContext(m)
    pool = [pell_generator(ctx, n) for n in (1, 2, 3)]
    eligible = [p for p in primes_upto(400) if p > 2 and m % p and jacobi(m, p) == 1 and jacobi(-m, p) == 1]
    for p in eligible[:4]:
        pool.append(triple_from_prime(ctx, p).triple)
    while len(pool) < size // 2:
        u, v = rng.randint(-40, 40), rng.randint(1, 40)
        if math.gcd(u, v) == 1:
            pool.append(triple_from_uv(ctx, u, v))
    while len(pool) < size:
        pool.append(add(ctx, rng.choice(pool), rng.choice(pool)))
    return ctx, pool
