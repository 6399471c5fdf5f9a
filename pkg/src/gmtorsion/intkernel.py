"""Exact integer utilities: Jacobi symbol, square tests, primality, factoring.

Everything here works on Python ints and never rounds.
"""

from __future__ import annotations

import math
import random
import time
from typing import List, Optional, Tuple

from .errors import FactorizationTimeout, InvalidArgument

TRIAL_BOUND = 10_000

# Deterministic Miller-Rabin below this bound with the first 13 prime bases.
MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

Factorization = List[Tuple[int, int]]


def _small_primes(limit):
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i in range(limit + 1) if sieve[i]]


SMALL_PRIMES = _small_primes(TRIAL_BOUND)


def primes_upto(limit: int) -> List[int]:
    """All primes p <= limit, ascending."""
    if limit <= TRIAL_BOUND:
        import bisect

        return SMALL_PRIMES[: bisect.bisect_right(SMALL_PRIMES, limit)]
    return _small_primes(limit)


def egcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, u, v) with u*a + v*b = g = gcd(a, b) >= 0."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if a < 0:
        return -a, -u0, -v0
    return a, u0, v0


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1."""
    if n < 1 or n % 2 == 0:
        raise InvalidArgument(f"Jacobi symbol needs odd n >= 1, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod_prime(a: int, p: int) -> Optional[int]:
    """Some r with r*r = a (mod p) for an odd prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c, r, t = pow(z, q, p), pow(a, (q + 1) // 2, p), pow(a, q, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (s - i - 1), p)
        s, c = i, b * b % p
        r, t = r * b % p, t * b * b % p
    return r


def sqrt_mod_prime_power(a: int, p: int, e: int) -> Optional[int]:
    """Some r with r*r = a (mod p**e), p odd and coprime to a, by Hensel lifting."""
    r = sqrt_mod_prime(a, p)
    if r is None or r == 0:
        return None
    pk = p
    for _ in range(e - 1):
        pk *= p
        r = (r - (r * r - a) * pow(2 * r, -1, pk)) % pk
    return r


def is_perfect_square(n: int) -> Optional[int]:
    """Return r with r*r == n, or None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def _strong_probable_prime(n, base):
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas_probable_prime(n):
    # Selfridge method A parameters.
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    inv2 = (n + 1) // 2
    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        if V == 0:
            return True
        Qk = Qk * Qk % n
    return False


def is_prime(n: int) -> bool:
    """Primality test.

    Deterministic Miller-Rabin below ``MR_DETERMINISTIC_BOUND``; above it a
    Baillie-PSW test (Miller-Rabin bases plus a strong Lucas test).
    """
    if n < 2:
        return False
    for p in SMALL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    if not all(_strong_probable_prime(n, b) for b in _MR_BASES):
        return False
    if n < MR_DETERMINISTIC_BOUND:
        return True
    if is_perfect_square(n) is not None:
        return False
    return _strong_lucas_probable_prime(n)


def _brent(n, rng, deadline):
    """One nontrivial factor of composite odd n (Pollard rho, Brent cycle)."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        batch = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                if deadline is not None and time.monotonic() > deadline:
                    raise FactorizationTimeout(f"factoring {n} exceeded the time budget")
                ys = y
                for _ in range(min(batch, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += batch
            r *= 2
        if g == n:
            # Backtrack one step at a time from the saved position.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        # Degenerate cycle: restart with fresh parameters.


def factorize(n: int, timeout: Optional[float] = None, seed: int = 0) -> Factorization:
    """Prime factorization of n >= 1 as ascending (prime, exponent) pairs.

    ``timeout`` is in seconds; exceeding it raises FactorizationTimeout.
    """
    if n < 1:
        raise InvalidArgument(f"factorize needs n >= 1, got {n}")
    deadline = None if timeout is None else time.monotonic() + timeout
    counts = {}
    for p in SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    rng = random.Random(seed)
    stack = [n] if n > 1 else []
    while stack:
        f = stack.pop()
        if f == 1:
            continue
        if is_prime(f):
            counts[f] = counts.get(f, 0) + 1
            continue
        r = is_perfect_square(f)
        d = r if r is not None else _brent(f, rng, deadline)
        stack.extend((d, f // d))
    return sorted(counts.items())


def squarefree_part(n: int, timeout: Optional[float] = None) -> Tuple[int, int]:
    """Return (m, b) with n = m * b**2 and m squarefree."""
    if n < 1:
        raise InvalidArgument(f"squarefree_part needs n >= 1, got {n}")
    m = b = 1
    for p, e in factorize(n, timeout=timeout):
        if e % 2:
            m *= p
        b *= p ** (e // 2)
    return m, b


def is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_part(n)[1] == 1
