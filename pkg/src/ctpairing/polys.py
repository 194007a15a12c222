"""Sparse multivariate and dense univariate polynomial arithmetic over Q.

Multivariate polynomials are dicts mapping exponent tuples to nonzero mpq
coefficients, wrapped in the MPoly class.  Univariate polynomials are plain
lists of mpq coefficients in increasing degree order, manipulated by the
upoly_* functions; that lightweight form is convenient for resultants,
discriminants and modular reductions.
"""

from gmpy2 import mpq, gcd

from .rationals import rational


class MPoly:
    """Sparse polynomial in a fixed number of variables over Q."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars, coeffs=None):
        self.nvars = nvars
        self.coeffs = {}
        if coeffs:
            for mono, c in coeffs.items():
                c = mpq(c)
                if c != 0:
                    self.coeffs[tuple(mono)] = c

    @classmethod
    def variable(cls, i, nvars):
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {mono: mpq(1)})

    @classmethod
    def constant(cls, c, nvars):
        return cls(nvars, {(0,) * nvars: mpq(c)})

    def is_zero(self):
        return not self.coeffs

    def copy(self):
        p = MPoly(self.nvars)
        p.coeffs = dict(self.coeffs)
        return p

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.coeffs == other.coeffs
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(other, self.nvars)
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        p = MPoly(self.nvars)
        p.coeffs = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = MPoly(self.nvars)
        p.coeffs = {mono: -c for mono, c in self.coeffs.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = mpq(other)
            p = MPoly(self.nvars)
            if c != 0:
                p.coeffs = {mono: a * c for mono, a in self.coeffs.items()}
            return p
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(mono, 0) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        p = MPoly(self.nvars)
        p.coeffs = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n):
        result = MPoly.constant(1, self.nvars)
        base = self
        n = int(n)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def coefficient(self, mono):
        return mpq(self.coeffs.get(tuple(mono), 0))

    def total_degree(self):
        if not self.coeffs:
            return -1
        return max(sum(m) for m in self.coeffs)

    def evaluate(self, point):
        """Evaluate at a list of ring elements (anything supporting + and *)."""
        total = None
        for mono, c in self.coeffs.items():
            term = c
            for x, e in zip(point, mono):
                for _ in range(e):
                    term = term * x
            total = term if total is None else total + term
        return 0 if total is None else total

    def derivative(self, i):
        out = {}
        for mono, c in self.coeffs.items():
            if mono[i]:
                m2 = list(mono)
                m2[i] -= 1
                out[tuple(m2)] = c * mono[i]
        p = MPoly(self.nvars)
        p.coeffs = out
        return p

    def substitute_linear(self, matrix):
        """Apply x_i -> sum_j matrix[i][j] * x_j."""
        images = []
        for i in range(self.nvars):
            img = MPoly(self.nvars)
            img.coeffs = {
                tuple(1 if k == j else 0 for k in range(self.nvars)): mpq(matrix[i][j])
                for j in range(self.nvars)
                if matrix[i][j] != 0
            }
            images.append(img)
        return self.evaluate(images)

    def divide_monomial_exact(self, mono):
        """Exact division by the monomial x^mono; raises if not divisible."""
        mono = tuple(mono)
        out = {}
        for m, c in self.coeffs.items():
            m2 = tuple(a - b for a, b in zip(m, mono))
            if any(e < 0 for e in m2):
                raise ValueError("polynomial not divisible by monomial")
            out[m2] = c
        p = MPoly(self.nvars)
        p.coeffs = out
        return p

    def content(self):
        """Positive rational c such that self/c has coprime integer coefficients."""
        if not self.coeffs:
            return mpq(0)
        num = 0
        den = 1
        for c in self.coeffs.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return mpq(num, den)

    def primitive_normalized(self):
        """Scale to coprime integer coefficients with a positive coefficient
        on the lexicographically largest monomial."""
        if not self.coeffs:
            return self.copy()
        scaled = self * (1 / self.content())
        lead = max(scaled.coeffs)
        if scaled.coeffs[lead] < 0:
            scaled = -scaled
        return scaled

    def monomials_sorted(self):
        return sorted(self.coeffs, reverse=True)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        names = ["x%d" % (i + 1) for i in range(self.nvars)]
        parts = []
        for mono in self.monomials_sorted():
            c = self.coeffs[mono]
            factors = []
            for n, e in zip(names, mono):
                if e == 1:
                    factors.append(n)
                elif e > 1:
                    factors.append("%s^%d" % (n, e))
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append("%s*%s" % (c, body))
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


# ---------------------------------------------------------------- univariate


def upoly(coeffs):
    """Normalize a coefficient list (degree-increasing) by trimming zeros."""
    cs = [mpq(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def upoly_degree(f):
    return len(f) - 1


def upoly_eval(f, x):
    total = mpq(0)
    for c in reversed(f):
        total = total * x + c
    return total


def upoly_add(f, g):
    n = max(len(f), len(g))
    out = [mpq(0)] * n
    for i, c in enumerate(f):
        out[i] += c
    for i, c in enumerate(g):
        out[i] += c
    return upoly(out)


def upoly_scale(f, c):
    c = mpq(c)
    return upoly([a * c for a in f])


def upoly_mul(f, g):
    if not f or not g:
        return []
    out = [mpq(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return upoly(out)


def upoly_divmod(f, g):
    """Euclidean division over Q; g must be nonzero."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    f = list(f)
    q = [mpq(0)] * max(0, len(f) - len(g) + 1)
    inv = 1 / g[-1]
    while len(f) >= len(g) and f:
        c = f[-1] * inv
        k = len(f) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] -= c * b
        while f and f[-1] == 0:
            f.pop()
    return upoly(q), upoly(f)


def upoly_gcd(f, g):
    """Monic gcd over Q."""
    a, b = upoly(f), upoly(g)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    if a:
        a = upoly_scale(a, 1 / a[-1])
    return a


def upoly_derivative(f):
    return upoly([c * i for i, c in enumerate(f)][1:])


def upoly_resultant(f, g):
    """Resultant of two univariate rationals polynomials (0 if either is 0)."""
    f, g = upoly(f), upoly(g)
    if not f or not g:
        return mpq(0)
    res = mpq(1)
    a, b = f, g
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * b[0] ** da
        _, r = upoly_divmod(a, b)
        dr = len(r) - 1
        if not r:
            return mpq(0)
        res *= (-1) ** (da * db) * b[-1] ** (da - dr)
        a, b = b, r


def upoly_discriminant(f):
    """disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f)."""
    f = upoly(f)
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    res = upoly_resultant(f, upoly_derivative(f))
    return (-1) ** (n * (n - 1) // 2) * res / f[-1]


def upoly_from_string_list(values):
    return upoly([rational(v) for v in values])


def upoly_xgcd(f, g):
    """Extended gcd over Q: returns (d, u, v) with u f + v g = d, d monic."""
    a, b = upoly(f), upoly(g)
    ua, va = upoly([1]), upoly([])
    ub, vb = upoly([]), upoly([1])
    while b:
        q, r = upoly_divmod(a, b)
        a, b = b, r
        ua, ub = ub, upoly_add(ua, upoly_scale(upoly_mul(q, ub), -1))
        va, vb = vb, upoly_add(va, upoly_scale(upoly_mul(q, vb), -1))
    if a:
        c = 1 / a[-1]
        a, ua, va = upoly_scale(a, c), upoly_scale(ua, c), upoly_scale(va, c)
    return a, ua, va


def upoly_rational_factors(f):
    """Monic irreducible factors over Q (with multiplicity), via sympy."""
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(int(mpq(c).numerator), int(mpq(c).denominator)) * x ** i
               for i, c in enumerate(f))
    _, factors = sympy.factor_list(sympy.Poly(expr, x))
    out = []
    for poly, mult in factors:
        coeffs = [mpq(int(c.numerator), int(c.denominator))
                  for c in reversed(sympy.Poly(poly, x).all_coeffs())]
        coeffs = upoly_scale(coeffs, 1 / coeffs[-1])
        for _ in range(int(mult)):
            out.append(coeffs)
    return sorted(out)
