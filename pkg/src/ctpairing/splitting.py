"""Work in a p-adic splitting field of the sextic, and solve square-class
equations in the etale algebra L = Q[x]/(f).

The central object is a SplittingContext: an unramified p-adic field Q_q
containing all six roots of f, for a well-chosen odd prime p, together with
the lifted roots and the Frobenius permutation on them.  On top of it sits
solve_square_class, which decides whether a pair (xi, m) with N(xi) = m^2
is of the form (r nu^2, r^3 N(nu)) with r rational and nu in L*, and
produces (r, nu) when it is.
"""

from math import lcm

from gmpy2 import mpq

from .etale import EtaleElt, idempotents, square_units
from .padic import ZqContext, factor_mod_p, fq_roots_of_factor, lift_root
from .polys import upoly_discriminant
from .rationals import factor_rational, legendre, primes_from, rational, valuation


def _denominator_primes(values):
    out = set()
    for v in values:
        for p in factor_rational(mpq(v).denominator)[1]:
            out.add(int(p))
    return out


def good_prime(f_coeffs, avoid=(), start=3):
    """Least odd prime where f stays squarefree of degree 6 and the given
    extra rational numbers are units."""
    f = [mpq(c) for c in f_coeffs]
    disc = upoly_discriminant(f)
    if disc == 0:
        raise ValueError("polynomial is not squarefree")
    bad = _denominator_primes(f)
    for p in primes_from(max(3, start)):
        if p in bad:
            continue
        if valuation(f[6], p) != 0 or valuation(disc, p) != 0:
            continue
        if any(v != 0 and valuation(v, p) != 0 for v in avoid):
            continue
        return p
    raise RuntimeError("unreachable")


class SplittingContext:
    """All six roots of f inside an unramified extension Z_q of Z_p."""

    def __init__(self, f_coeffs, prime=None, precision=60, seed=0, avoid=()):
        self.f = [mpq(c) for c in f_coeffs]
        if len(self.f) != 7 or self.f[6] == 0:
            raise ValueError("need a degree 6 polynomial")
        if prime is None:
            prime = good_prime(self.f, avoid=avoid)
        self.p = int(prime)
        self.precision = int(precision)
        self.seed = seed
        self._avoid = tuple(avoid)
        fint = self._integral_model()
        factors = factor_mod_p(fint, self.p)
        self.factor_degrees = [len(u) - 1 for u in factors]
        d = lcm(*self.factor_degrees)
        self.ctx = ZqContext(self.p, d, self.precision, seed=seed)
        roots = []
        frob = []
        for u in factors:
            orbit = fq_roots_of_factor(u, self.ctx, seed=seed)
            base = len(roots)
            e = len(orbit)
            for i, r in enumerate(orbit):
                roots.append(lift_root(self.f, self.ctx, r))
                frob.append(base + (i + 1) % e)
        self.roots = roots
        self.frobenius = tuple(frob)

    def _integral_model(self):
        out = []
        for c in self.f:
            c = mpq(c)
            if c.denominator % self.p == 0:
                raise ValueError("prime divides a coefficient denominator")
            out.append(c)
        return out

    def with_precision(self, precision):
        return SplittingContext(self.f, prime=self.p, precision=precision,
                                seed=self.seed, avoid=self._avoid)

    def embed(self, q):
        """Rational number as an element of Z_q."""
        return self.ctx.from_rational(rational(q))

    def eval_at_root(self, coeffs, i):
        """Evaluate a polynomial (list of rationals, low degree first) at the
        i-th root."""
        t = self.roots[i]
        acc = self.embed(coeffs[-1])
        for c in reversed(coeffs[:-1]):
            acc = acc * t + self.embed(c)
        return acc

    def eval_etale(self, elt):
        """Values of an element of L at all six roots."""
        if isinstance(elt, EtaleElt):
            coeffs = list(elt.coeffs)
        else:
            coeffs = [rational(elt)]
        return [self.eval_at_root(coeffs, i) for i in range(6)]

    def interpolate(self, values):
        """Coefficients (as Z_q elements) of the degree <= 5 polynomial with
        the given values at the six roots (Lagrange)."""
        n = 6
        coeffs = [self.ctx_zero() for _ in range(n)]
        for i in range(n):
            num = [self.ctx_one()]
            den = self.ctx_one()
            for j in range(n):
                if j == i:
                    continue
                num = self._poly_mul_linear(num, self.roots[j])
                den = den * (self.roots[i] - self.roots[j])
            scale = values[i] / den
            for k in range(len(num)):
                coeffs[k] = coeffs[k] + num[k] * scale
        return coeffs

    def ctx_zero(self):
        from .padic import PadicElt
        return PadicElt(self.ctx, 0, None)

    def ctx_one(self):
        return self.ctx.one()

    @staticmethod
    def _poly_mul_linear(poly, root):
        """Multiply a coefficient list by (x - root)."""
        out = [poly[0] * (-root)]
        for k in range(1, len(poly)):
            out.append(poly[k] * (-root) + poly[k - 1])
        out.append(poly[-1])
        return out

    def to_rational_etale(self, algebra, values):
        """Reconstruct an element of L from its values at the roots, or None
        if the interpolation is not defined over Q at this precision."""
        coeffs = self.interpolate(values)
        out = []
        for c in coeffs:
            q = c.rational_coords()
            if q is None:
                return None
            out.append(q)
        return algebra.element(out)


def _support_exponents(r_primes, q):
    """Row of the F2 Legendre condition matrix for squarefree candidates
    supported on r_primes (first slot is the sign)."""
    row = [1 if q % 4 == 3 else 0]
    for p in r_primes:
        if p == 2:
            row.append(1 if q % 8 in (3, 5) else 0)
        else:
            row.append(1 if legendre(p, q) == -1 else 0)
    return row


def _solve_f2(rows, rhs, nvars):
    """All solutions of a linear system over F2 (row reduce + enumerate)."""
    m = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                m[i] = [a ^ b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][nvars]:
            return []
    free = [c for c in range(nvars) if c not in pivots]
    sols = []
    for mask in range(1 << len(free)):
        x = [0] * nvars
        for k, c in enumerate(free):
            x[c] = (mask >> k) & 1
        for i, c in enumerate(pivots):
            x[c] = (m[i][nvars] ^ sum(m[i][j] & x[j] for j in free)) & 1
        sols.append(x)
    return sols


def _candidate_supports(algebra, xi, m):
    """Primes allowed in the squarefree part of r when xi = r nu^2."""
    f = algebra.f
    disc = upoly_discriminant(f)
    primes = {2}
    for v in (m, f[6], disc):
        sign, fac = factor_rational(rational(v))
        primes.update(int(p) for p in fac)
    primes.update(_denominator_primes(xi.coeffs))
    return sorted(primes)


def _legendre_conditions(algebra, xi, r_primes, limit=120, stall=25):
    """F2-linear conditions on the exponent vector of r, harvested from
    residues of xi at roots of f modulo auxiliary primes.

    Stops once `stall` consecutive auxiliary primes add no new condition,
    since the condition rows take at most 2^(1 + #r_primes) values.
    """
    f = algebra.f
    rows, rhs = [], []
    seen = set()
    count = 0
    idle = 0
    for q in primes_from(3):
        if count >= limit or idle >= stall or q > 20000:
            break
        if q in r_primes:
            continue
        if any(mpq(c).denominator % q == 0 for c in f) or any(
                mpq(c).denominator % q == 0 for c in xi.coeffs):
            continue
        if valuation(f[6], q) != 0:
            continue
        fmodq = [int(mpq(c).numerator * pow(int(mpq(c).denominator), -1, q)) % q for c in f]
        fpmod = [(k * fmodq[k]) % q for k in range(1, 7)]
        ximodq = [int(mpq(c).numerator * pow(int(mpq(c).denominator), -1, q)) % q
                  for c in xi.coeffs]
        added = False
        for t in range(q):
            ft = 0
            for c in reversed(fmodq):
                ft = (ft * t + c) % q
            if ft:
                continue
            fpt = 0
            for c in reversed(fpmod):
                fpt = (fpt * t + c) % q
            if fpt == 0:
                continue
            xiq = 0
            for c in reversed(ximodq):
                xiq = (xiq * t + c) % q
            if xiq == 0:
                continue
            row = _support_exponents(r_primes, q)
            b = 1 if legendre(xiq, q) == -1 else 0
            key = (tuple(row), b)
            if key in seen:
                continue
            seen.add(key)
            rows.append(row)
            rhs.append(b)
            count += 1
            added = True
        idle = 0 if added else idle + 1
    return rows, rhs


def solve_square_class(algebra, xi, m, prime=None, seed=0):
    """Find (r, nu) with xi = r nu^2 and m = r^3 N(nu), or None if the pair
    (xi, m) is not of that form.

    r runs over squarefree integers supported on a finite explicit set of
    primes; candidates are filtered by Legendre-symbol conditions at
    auxiliary primes and by local square tests, then decided exactly by
    computing square roots in the factor fields of L.
    """
    xi = algebra.element(list(xi.coeffs)) if isinstance(xi, EtaleElt) else algebra.element([xi])
    m = rational(m)
    if xi.norm() != m * m:
        raise ValueError("norm of xi must equal m^2")
    r_primes = _candidate_supports(algebra, xi, m)
    rows, rhs = _legendre_conditions(algebra, xi, r_primes)
    sols = _solve_f2(rows, rhs, 1 + len(r_primes))
    candidates = []
    for x in sols:
        r = mpq(-1) ** x[0]
        for p, e in zip(r_primes, x[1:]):
            if e:
                r *= p
        candidates.append(r)
    if not candidates:
        return None
    # cheap local pre-filter: xi/r must be a square in every completion of L
    # at a couple of good odd primes
    avoid = [m] + [c for c in xi.coeffs if c != 0]
    start = 3
    for _ in range(2):
        if len(candidates) <= 1:
            break
        p = good_prime(algebra.f, avoid=avoid, start=start)
        start = p + 1
        sc = SplittingContext(algebra.f, prime=p, precision=16,
                              seed=seed, avoid=avoid)
        xivals = sc.eval_etale(xi)
        candidates = [r for r in candidates if _local_square(sc, xivals, r)]
    if not candidates:
        return None
    idems = idempotents(algebra)
    units = square_units(algebra)
    xi_coeffs = [mpq(c) for c in xi.coeffs]
    for r in candidates:
        nu = _exact_sqrt(algebra, idems, [c / r for c in xi_coeffs])
        if nu is None:
            continue
        if not (nu * nu - xi / r).is_zero():
            raise ArithmeticError("field square root verification failed")
        for eps, _ in units:
            nu2 = nu * eps
            if rational(r) ** 3 * nu2.norm() == m:
                return (rational(r), nu2)
    return None


def _local_square(sc, xivals, r):
    rv = sc.embed(r)
    for v in xivals:
        t = v / rv
        if t.valuation() % 2 != 0 or not t.is_square():
            return False
    return True


def _exact_sqrt(algebra, idems, a_coeffs):
    """A square root of the element with the given power-basis coefficients,
    assembled from exact square roots in the factor fields, or None."""
    from .field import field_sqrt
    from .polys import upoly_divmod

    total = algebra.zero()
    for ek, g in idems:
        _, ak = upoly_divmod(a_coeffs, g)
        bk = field_sqrt(g, ak)
        if bk is None:
            return None
        total = total + algebra.element(list(bk) + [mpq(0)] * (6 - len(bk))) * ek
    return total
