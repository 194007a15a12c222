"""p-adic arithmetic in unramified extensions Z_q / Z_p, plus mod-p polynomial
factorization, Hensel lifting, square roots and rational reconstruction.

A ZqContext fixes an odd prime p, a working relative precision k, and a monic
irreducible modulus h of degree d over F_p, lifted coefficient-wise; elements
of Q_q are stored as (valuation, unit vector mod p^k) pairs in the power basis
of t = x mod h.  Precision is handled float-style: every nonzero element
carries k significant base-p digits.

The mod-2 case is only needed for square roots of rational 2-adic numbers and
is handled separately by the integer routines at the bottom.
"""

import random

from gmpy2 import mpq

from .rationals import valuation as q_valuation, xgcd


# ----------------------------------------------------------- F_p[x] helpers
# polynomials over Z/m as tuples of ints (degree increasing, no trailing 0)


def _ptrim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def _pmul(f, g, m):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % m
    return _ptrim(out)


def _pdivmod(f, g, m):
    """Division with remainder; leading coefficient of g must be invertible."""
    f = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, m)
    q = [0] * max(0, len(f) - dg)
    while len(f) - 1 >= dg and any(f):
        while f and f[-1] % m == 0:
            f.pop()
        if len(f) - 1 < dg:
            break
        c = f[-1] * inv % m
        k = len(f) - 1 - dg
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] = (f[k + i] - c * b) % m
    return _ptrim(q), _ptrim(f)


def _pgcd(f, g, p):
    a, b = _ptrim([x % p for x in f]), _ptrim([x % p for x in g])
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = _ptrim([x * inv % p for x in a])
    return a


def _ppowmod(f, e, mod, p):
    result = (1,)
    base = _pdivmod(f, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


class BadPrime(ValueError):
    """Raised when a chosen prime is unusable (non-squarefree reduction etc.)."""


def factor_mod_p(coeffs, p):
    """Factor a squarefree polynomial mod an odd prime p.

    coeffs: integer (or mpq with p-unit denominator) coefficients, degree
    increasing.  Returns a list of monic irreducible factors as int tuples.
    Raises BadPrime if the reduction drops degree or is not squarefree.
    """
    f = []
    for c in coeffs:
        c = mpq(c)
        if c.denominator % p == 0:
            raise BadPrime("denominator divisible by %d" % p)
        f.append(int(c.numerator * pow(int(c.denominator), -1, p)) % p)
    f = _ptrim(f)
    if len(f) != len(list(coeffs)):
        raise BadPrime("leading coefficient vanishes mod %d" % p)
    inv = pow(f[-1], -1, p)
    f = _ptrim([x * inv % p for x in f])
    deriv = _ptrim([c * i % p for i, c in enumerate(f)][1:])
    if _pgcd(f, deriv, p) != (1,):
        raise BadPrime("not squarefree mod %d" % p)

    rng = random.Random(p * 1000003 + len(f))
    factors = []
    # distinct-degree splitting
    stage = []
    h = (0, 1)  # x
    rest = f
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = _ppowmod(h, p, rest, p)
        g = _pgcd(_psub(h, (0, 1), p), rest, p)
        if len(g) > 1:
            stage.append((g, d))
            rest, _ = _pdivmod(rest, g, p)
            h = _pdivmod(h, rest, p)[1]
    if len(rest) > 1:
        stage.append((rest, len(rest) - 1))

    # equal-degree splitting (Cantor-Zassenhaus, p odd)
    for g, d in stage:
        todo = [g]
        while todo:
            u = todo.pop()
            du = len(u) - 1
            if du == d:
                factors.append(u)
                continue
            while True:
                a = tuple(rng.randrange(p) for _ in range(du))
                a = _ptrim(a)
                if len(a) < 1:
                    continue
                b = _ppowmod(a, (p ** d - 1) // 2, u, p)
                b = _psub(b, (1,), p)
                w = _pgcd(b, u, p)
                if 1 < len(w) < len(u):
                    todo.append(w)
                    todo.append(_pdivmod(u, w, p)[0])
                    break
    factors.sort()
    return factors


def _psub(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c % p
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return _ptrim(out)


def find_irreducible(p, d, seed=0):
    """Deterministically find a monic irreducible of degree d over F_p."""
    if d == 1:
        return (0, 1)
    rng = random.Random(p * 65537 + d * 257 + seed)
    from .rationals import factorint

    dprimes = sorted(factorint(d))
    while True:
        h = tuple(rng.randrange(p) for _ in range(d)) + (1,)
        # irreducibility: x^(p^d) == x mod h and gcd(x^(p^(d/l)) - x, h) = 1
        xq = _ppowmod((0, 1), p ** d, h, p)
        if _psub(xq, (0, 1), p) != ():
            continue
        ok = True
        for ell in dprimes:
            xe = _ppowmod((0, 1), p ** (d // ell), h, p)
            if _pgcd(_psub(xe, (0, 1), p), h, p) != (1,):
                ok = False
                break
        if ok:
            return h


# ------------------------------------------------------------- Zq contexts


class PrecisionError(ArithmeticError):
    pass


class ZqContext:
    """Unramified extension of Z_p of degree d at relative precision k."""

    def __init__(self, p, d, k, modulus=None, seed=0):
        if p == 2:
            raise ValueError("ZqContext requires an odd prime")
        self.p = int(p)
        self.d = int(d)
        self.k = int(k)
        self.pk = self.p ** self.k
        self.h = tuple(int(c) for c in (modulus or find_irreducible(p, d, seed)))
        if len(self.h) != d + 1 or self.h[-1] != 1:
            raise ValueError("modulus must be monic of degree d")
        self._nonresidue = None

    # -- raw vector helpers (tuples of length d, entries mod pk) --

    def _vmul(self, a, b):
        prod = _pmul(a, b, self.pk)
        _, rem = _pdivmod(prod, self.h, self.pk)
        return tuple(rem) + (0,) * (self.d - len(rem))

    def _vadd(self, a, b):
        return tuple((x + y) % self.pk for x, y in zip(a, b))

    def _vsub(self, a, b):
        return tuple((x - y) % self.pk for x, y in zip(a, b))

    def _vinv(self, a):
        """Inverse of a unit vector, by residue xgcd plus Newton lifting."""
        ares = _ptrim(tuple(x % self.p for x in a))
        g = _pgcd(ares, self.h, self.p)
        if g != (1,):
            raise ZeroDivisionError("not a unit")
        # Bezout at residue level
        x = self._residue_inverse(ares)
        prec = 1
        while prec < self.k:
            prec = min(2 * prec, self.k)
            # x <- x * (2 - a*x)
            ax = self._vmul(a, x)
            two = (2,) + (0,) * (self.d - 1)
            x = self._vmul(x, self._vsub(two, ax))
        return x

    def _residue_inverse(self, ares):
        p = self.p
        r0, r1 = self.h, _ptrim(ares)
        s0, s1 = (), (1,)
        while r1:
            q, r = _pdivmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        if len(r0) != 1:
            raise ZeroDivisionError("not a unit")
        c = pow(r0[0], -1, p)
        inv = _ptrim([x * c % p for x in s0])
        inv = _pdivmod(inv, self.h, p)[1]
        return tuple(inv) + (0,) * (self.d - len(inv))

    def _vval(self, a):
        """Largest n with p^n dividing every coordinate (None for zero)."""
        if all(x % self.pk == 0 for x in a):
            return None
        v = 0
        q = self.p
        while all(x % q == 0 for x in a):
            v += 1
            q *= self.p
        return v

    # -- element constructors --

    def zero(self):
        return PadicElt(self, 0, None)

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        return self.from_rational(mpq(n))

    def from_rational(self, q):
        q = mpq(q)
        if q == 0:
            return self.zero()
        v = q_valuation(q, self.p)
        unit = q / mpq(self.p) ** v
        n = int(unit.numerator) % self.pk
        dinv = pow(int(unit.denominator), -1, self.pk)
        vec = (n * dinv % self.pk,) + (0,) * (self.d - 1)
        return PadicElt(self, v, vec)

    def from_vector(self, vec, val=0):
        """Element p^val * (vec in power basis); vec entries are integers."""
        vec = tuple(int(x) % self.pk for x in vec)
        v = self._vval(vec)
        if v is None:
            return self.zero()
        if v:
            q = self.p ** v
            vec = tuple(x // q for x in vec)
        return PadicElt(self, val + v, vec)

    def gen(self):
        return self.from_vector((0, 1) + (0,) * (self.d - 2) if self.d >= 2 else (0,))

    # -- residue field F_q --

    def fq_pow(self, a, e):
        return _ppowmod(a, e, self.h, self.p)

    def fq_is_square(self, a):
        a = _ptrim(tuple(x % self.p for x in a))
        if not a:
            return True
        q = self.p ** self.d
        return self.fq_pow(a, (q - 1) // 2) == (1,)

    def _find_nonresidue(self):
        if self._nonresidue is not None:
            return self._nonresidue
        rng = random.Random(self.p * 31 + self.d)
        q = self.p ** self.d
        while True:
            a = _ptrim(tuple(rng.randrange(self.p) for _ in range(self.d)))
            if a and self.fq_pow(a, (q - 1) // 2) != (1,):
                self._nonresidue = a
                return a

    def fq_sqrt(self, a):
        """Square root in F_q by Tonelli-Shanks; a must be a nonzero square."""
        p, d = self.p, self.d
        q = p ** d
        a = _ptrim(tuple(x % p for x in a))
        if not a:
            return ()
        e = 0
        s = q - 1
        while s % 2 == 0:
            s //= 2
            e += 1
        z = self.fq_pow(self._find_nonresidue(), s)
        x = self.fq_pow(a, (s + 1) // 2)
        b = self.fq_pow(a, s)
        while b != (1,):
            # find least m with b^(2^m) = 1
            m = 0
            t = b
            while t != (1,):
                t = _pdivmod(_pmul(t, t, p), self.h, p)[1]
                m += 1
            if m >= e:
                raise ValueError("not a square in F_q")
            for _ in range(e - m - 1):
                z = _pdivmod(_pmul(z, z, p), self.h, p)[1]
            x = _pdivmod(_pmul(x, z, p), self.h, p)[1]
            z = _pdivmod(_pmul(z, z, p), self.h, p)[1]
            b = _pdivmod(_pmul(b, z, p), self.h, p)[1]
            e = m
        return x

    def __repr__(self):
        return "ZqContext(p=%d, d=%d, k=%d)" % (self.p, self.d, self.k)


class PadicElt:
    """Element of Q_q = Frac(Z_q): valuation plus unit vector mod p^k."""

    __slots__ = ("ctx", "val", "vec")

    def __init__(self, ctx, val, vec):
        self.ctx = ctx
        self.val = val
        self.vec = vec  # None means zero

    def is_zero(self):
        return self.vec is None

    def is_unit(self):
        return self.vec is not None and self.val == 0

    def valuation(self):
        if self.vec is None:
            raise ValueError("valuation of (approximate) zero")
        return self.val

    def _coerce(self, other):
        if isinstance(other, PadicElt):
            return other
        return self.ctx.from_rational(mpq(other))

    def __add__(self, other):
        other = self._coerce(other)
        if self.vec is None:
            return other
        if other.vec is None:
            return self
        ctx = self.ctx
        v = min(self.val, other.val)
        q1 = ctx.p ** (self.val - v)
        q2 = ctx.p ** (other.val - v)
        vec = tuple((x * q1 + y * q2) % ctx.pk for x, y in zip(self.vec, other.vec))
        return ctx.from_vector(vec, v)

    __radd__ = __add__

    def __neg__(self):
        if self.vec is None:
            return self
        return PadicElt(self.ctx, self.val, tuple((-x) % self.ctx.pk for x in self.vec))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if self.vec is None or other.vec is None:
            return self.ctx.zero()
        return PadicElt(self.ctx, self.val + other.val, self.ctx._vmul(self.vec, other.vec))

    __rmul__ = __mul__

    def inverse(self):
        if self.vec is None:
            raise ZeroDivisionError("inverse of zero")
        return PadicElt(self.ctx, -self.val, self.ctx._vinv(self.vec))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        n = int(n)
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = self.ctx.one()
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return (self - other).is_zero()

    def residue(self):
        """Image in F_q (requires valuation >= 0)."""
        if self.vec is None:
            return ()
        if self.val < 0:
            raise ValueError("negative valuation")
        if self.val > 0:
            return ()
        return _ptrim(tuple(x % self.ctx.p for x in self.vec))

    def sqrt(self):
        """A square root in Q_q (even valuation, square residue required)."""
        ctx = self.ctx
        if self.vec is None:
            return self
        if self.val % 2:
            raise ValueError("odd valuation: not a square")
        res = _ptrim(tuple(x % ctx.p for x in self.vec))
        if not ctx.fq_is_square(res):
            raise ValueError("unit part is not a square")
        r = ctx.fq_sqrt(res)
        x = tuple(r) + (0,) * (ctx.d - len(r))
        prec = 1
        while prec < ctx.k:
            prec = min(2 * prec, ctx.k)
            # Newton: x <- (x + a/x) / 2
            ax = ctx._vmul(self.vec, ctx._vinv(x))
            s = ctx._vadd(x, ax)
            half = pow(2, -1, ctx.pk)
            x = tuple(v * half % ctx.pk for v in s)
        return PadicElt(ctx, self.val // 2, x)

    def is_square(self):
        if self.vec is None:
            return True
        if self.val % 2:
            return False
        return self.ctx.fq_is_square(tuple(x % self.ctx.p for x in self.vec))

    def rational_coords(self, drop=0):
        """If the element lies in Q_p (to precision), reconstruct a rational.

        drop discards that many low-significance digits before
        reconstructing, to tolerate noise from earlier cancellation.
        Returns None if higher basis coordinates are nonzero or the
        reconstruction fails.
        """
        ctx = self.ctx
        if self.vec is None:
            return mpq(0)
        mod = ctx.p ** (ctx.k - drop) if drop else ctx.pk
        if any(x % mod for x in self.vec[1:]):
            return None
        r = rational_reconstruct(self.vec[0] % mod, mod)
        if r is None:
            return None
        return r * mpq(ctx.p) ** self.val

    def __repr__(self):
        if self.vec is None:
            return "O(p^inf)"
        return "p^%d * %s (mod %d^%d)" % (self.val, list(self.vec), self.ctx.p, self.ctx.k)


def rational_reconstruct(a, m):
    """Find n/d = a mod m with |n|, d <= sqrt(m/2); None on failure."""
    from gmpy2 import gcd, isqrt

    a = int(a) % m
    if a == 0:
        return mpq(0)
    bound = int(isqrt(m // 2))
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if abs(t1) > bound or t1 == 0:
        return None
    if gcd(r1, abs(t1)) != 1 or gcd(abs(t1), m) != 1:
        return None
    n, d = (r1, t1) if t1 > 0 else (-r1, -t1)
    return mpq(n, d)


def lift_root(coeffs, ctx, residue_root):
    """Hensel-lift a simple residue root of a polynomial to full precision.

    coeffs: rational coefficients (degree increasing) with p-unit denominators.
    residue_root: tuple over F_p (power-basis vector).
    """
    cs = [ctx.from_rational(mpq(c)) for c in coeffs]
    x = ctx.from_vector(tuple(residue_root) + (0,) * (ctx.d - len(residue_root)))

    def ev(poly, x):
        total = ctx.zero()
        for c in reversed(poly):
            total = total * x + c
        return total

    dcs = [cs[i] * i for i in range(1, len(cs))]
    fx = ev(cs, x)
    dfx = ev(dcs, x)
    if not dfx.is_unit():
        raise BadPrime("residue root is not simple")
    for _ in range(ctx.k.bit_length() + 2):
        if fx.is_zero():
            break
        x = x - fx / dfx
        fx = ev(cs, x)
        dfx = ev(dcs, x)
    return x


# ----------------------------------------------- roots over the residue field


def fq_roots_of_factor(u, ctx, seed=0):
    """All roots in F_q of an irreducible factor u over F_p.

    u: int tuple (degree increasing) irreducible over F_p of degree e | d.
    Returns the Frobenius orbit [r, r^p, r^(p^2), ...] of length e, each root
    a residue vector.  Uses equal-degree splitting over F_q to find one root.
    """
    p = ctx.p
    d = ctx.d
    q = p ** d
    e = len(u) - 1
    if d % e:
        raise ValueError("factor degree does not divide extension degree")

    # F_q[y] arithmetic with coefficients as residue vectors (int tuples)
    def cmul(a, b):
        return _pdivmod(_pmul(a, b, p), ctx.h, p)[1]

    def pmul(a, b):
        if not a or not b:
            return []
        out = [()] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if not cb:
                    continue
                t = cmul(ca, cb)
                out[i + j] = _psub(out[i + j], tuple((-c) % p for c in t), p)
        while out and not out[-1]:
            out.pop()
        return out

    def pdivmod(a, b):
        a = list(a)
        db = len(b) - 1
        lead = tuple(b[-1]) + (0,) * (d - len(b[-1]))
        binv = _ptrim(ctx._residue_inverse(lead))
        qq = [()] * max(0, len(a) - db)
        while True:
            while a and not a[-1]:
                a.pop()
            if len(a) - 1 < db or not a:
                break
            c = cmul(a[-1], binv)
            k = len(a) - 1 - db
            qq[k] = c
            for i, cb in enumerate(b):
                a[k + i] = _psub(a[k + i], cmul(c, cb), p)
        return qq, a

    def pgcd(a, b):
        while b:
            a, b = b, pdivmod(a, b)[1]
            while b and not b[-1]:
                b.pop()
        return a

    def ppow(a, n, mod):
        r = [(1,)]
        base = pdivmod(a, mod)[1]
        while n:
            if n & 1:
                r = pdivmod(pmul(r, base), mod)[1]
            base = pdivmod(pmul(base, base), mod)[1]
            n >>= 1
        return r

    rng = random.Random(p * 131071 + e * 8191 + seed)
    cur = [((c % p,) if c % p else ()) for c in u]
    while len(cur) - 1 > 1:
        delta = _ptrim(tuple(rng.randrange(p) for _ in range(d)))
        b = ppow([delta, (1,)], (q - 1) // 2, cur)
        if b:
            b[0] = _psub(b[0], (1,), p)
        while b and not b[-1]:
            b.pop()
        g = pgcd(b, cur)
        if g and 0 < len(g) - 1 < len(cur) - 1:
            cur = g
    c0 = cur[0]
    c1 = tuple(cur[1]) + (0,) * (d - len(cur[1]))
    c1inv = ctx._residue_inverse(_ptrim(c1))
    root = _ptrim(_pdivmod(_pmul(tuple((-c) % p for c in c0), c1inv, p), ctx.h, p)[1])
    roots = []
    r = root
    for _ in range(e):
        roots.append(r)
        r = ctx.fq_pow(r, p)
    return roots


# ------------------------------------------------------------ 2-adic helpers


def sqrt_2adic(a, k):
    """Square root of a rational in Q_2 to relative precision k bits.

    Returns (val, unit) with sqrt = 2^val * unit, unit odd mod 2^k.
    Raises ValueError if a is not a square in Q_2.
    """
    a = mpq(a)
    if a == 0:
        return (0, 0)
    v = q_valuation(a, 2)
    if v % 2:
        raise ValueError("odd 2-adic valuation: not a square")
    unit = a / mpq(2) ** v
    m = 1 << (k + 2)
    u = int(unit.numerator) * pow(int(unit.denominator), -1, m) % m
    if u % 8 != 1:
        raise ValueError("unit part not 1 mod 8: not a square in Q_2")
    # lift bit by bit: x odd, x^2 = u (mod 2^j)
    x = 1
    for j in range(3, k + 2):
        if (x * x - u) % (1 << (j + 1)):
            x += 1 << (j - 1)
    return (v // 2, x % (1 << k))


def is_square_2adic(a):
    a = mpq(a)
    if a == 0:
        return True
    v = q_valuation(a, 2)
    if v % 2:
        return False
    unit = a / mpq(2) ** v
    u = int(unit.numerator) * pow(int(unit.denominator), -1, 8) % 8
    return u == 1
