"""Exact rational arithmetic helpers: factorization, square classes, valuations.

All rational numbers in this package are gmpy2.mpq instances (or plain ints
where integrality is guaranteed).  This module collects the number-theoretic
utilities the rest of the package relies on: integer factorization, squarefree
parts, p-adic valuations and Legendre symbols.
"""

import random

from gmpy2 import mpq, mpz, isqrt, is_square as _mpz_is_square, gcd

QQ = mpq


def rational(value):
    """Coerce ints, strings like '3/4', and mpq values to mpq."""
    if isinstance(value, str):
        return mpq(value)
    return mpq(value)


def is_square_rational(q):
    """True if the rational q is a square in Q."""
    q = mpq(q)
    if q < 0:
        return False
    return _mpz_is_square(q.numerator) and _mpz_is_square(q.denominator)


def sqrt_rational(q):
    """Exact square root of a rational square; raises ValueError otherwise."""
    q = mpq(q)
    if not is_square_rational(q):
        raise ValueError("not a rational square: %s" % q)
    return mpq(isqrt(q.numerator), isqrt(q.denominator))


def valuation(q, p):
    """p-adic valuation of a nonzero rational."""
    q = mpq(q)
    if q == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = mpz(q.numerator)
    while n % p == 0:
        n //= p
        v += 1
    d = mpz(q.denominator)
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _is_probable_prime(n):
    n = int(n)
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n, rng):
    """Find a nontrivial factor of composite odd n (Brent's cycle variant)."""
    n = int(n)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = int(gcd(q, n))
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = int(gcd(abs(x - ys), n))
        if g != n:
            return g


def factorint(n):
    """Factor a nonzero integer; returns {prime: exponent} (sign dropped)."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor zero")
    result = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            result[p] = result.get(p, 0) + 1
            n //= p
    # deterministic seeding keeps repeated runs identical
    rng = random.Random(n & 0xFFFFFFFF)
    p = 53
    while p * p <= n and p < 100000:
        while n % p == 0:
            result[p] = result.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            result[m] = result.get(m, 0) + 1
            continue
        d = _brent_rho(m, rng)
        stack.append(d)
        stack.append(m // d)
    return result


def factor_rational(q):
    """Factor a nonzero rational into {prime: exponent} with sign separate.

    Returns (sign, {p: e}) with e possibly negative.
    """
    q = mpq(q)
    if q == 0:
        raise ValueError("cannot factor zero")
    sign = 1 if q > 0 else -1
    fac = factorint(q.numerator)
    for p, e in factorint(q.denominator).items():
        fac[p] = fac.get(p, 0) - e
    return sign, {p: e for p, e in fac.items() if e}


def squarefree_part(q):
    """Signed squarefree integer representing the square class of q in Q*/Q*2."""
    sign, fac = factor_rational(q)
    out = sign
    for p, e in fac.items():
        if e % 2:
            out *= p
    return int(out)


def support_primes(q):
    """Sorted list of primes dividing the numerator or denominator of q."""
    _, fac = factor_rational(q)
    return sorted(fac)


def legendre(a, p):
    """Legendre symbol (a/p) for odd prime p, values in {-1, 0, 1}."""
    a = int(a) % p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else 1


def primes_from(start):
    """Yield primes >= start in increasing order."""
    n = max(2, int(start))
    if n % 2 == 0 and n > 2:
        n += 1
    if n == 2:
        yield 2
        n = 3
    while True:
        if _is_probable_prime(n):
            yield n
        n += 2


def xgcd(a, b):
    """Extended gcd over the integers: returns (g, s, t) with s*a + t*b == g."""
    a, b = int(a), int(b)
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0
