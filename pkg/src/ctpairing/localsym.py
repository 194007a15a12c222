"""Local Hilbert symbols and local points on twisted Kummer surfaces.

The pairing of two Selmer classes is a finite sum of local Hilbert
symbols (a, g(P_v))_v.  This module provides: the Hilbert symbol over
F_2, the finite set of places that can contribute, and the search for a
suitable local point P_v on the twisted Kummer surface at each place.
A suitable point is one that lifts to the twisted Jacobian (the pushout
quartic takes a nonzero square value there) and at which the quadratic
form gamma is nonzero.

Places are encoded as an odd/even prime (int) or None for the real
place.
"""

import itertools
import random
from math import gcd, lcm

from gmpy2 import mpq
from sympy import factorint

from .kummer import pushout_minor
from .padic import BadPrime, factor_mod_p
from .polys import MPoly, upoly_resultant
from .rationals import rational
from .twisted import twisted_kummer


# ---------------------------------------------------------------------------
# valuations and square classes of rationals


def q_valuation(q, p):
    q = rational(q)
    if q == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = int(q.numerator)
    while n % p == 0:
        n //= p
        v += 1
    d = int(q.denominator)
    while d % p == 0:
        d //= p
        v -= 1
    return v


def val_unit(q, p):
    """(v, u) with q = p^v u and u a p-adic unit."""
    v = q_valuation(q, p)
    return v, rational(q) / mpq(p) ** v


def _unit_mod(u, m):
    """Integer representative of a rational m-adic unit modulo m."""
    u = rational(u)
    return int(u.numerator) * pow(int(u.denominator), -1, m) % m


def _legendre(n, p):
    n = n % p
    if n == 0:
        return 0
    return 1 if pow(n, (p - 1) // 2, p) == 1 else -1


def is_local_square(q, place):
    """Is the nonzero rational q a square in the completion at place?"""
    q = rational(q)
    if q == 0:
        raise ValueError("square class of zero")
    if place is None:
        return q > 0
    p = int(place)
    v, u = val_unit(q, p)
    if v % 2:
        return False
    if p == 2:
        return _unit_mod(u, 8) == 1
    return _legendre(_unit_mod(u, p), p) == 1


def hilbert_symbol(a, b, place):
    """Hilbert symbol (a, b)_v with values in F_2 (0 trivial, 1 not)."""
    a = rational(a)
    b = rational(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol of zero")
    if place is None:
        return 1 if a < 0 and b < 0 else 0
    p = int(place)
    alpha, u = val_unit(a, p)
    beta, w = val_unit(b, p)
    alpha %= 2
    beta %= 2
    if p == 2:
        uu = _unit_mod(u, 8)
        ww = _unit_mod(w, 8)
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        return (eps(uu) * eps(ww) + alpha * omega(ww) + beta * omega(uu)) % 2
    out = 0
    if beta:
        out ^= 1 if _legendre(_unit_mod(u, p), p) == -1 else 0
    if alpha:
        out ^= 1 if _legendre(_unit_mod(w, p), p) == -1 else 0
    if alpha and beta and p % 4 == 3:
        out ^= 1
    return out


def squarefree_part(q):
    """The squarefree integer representing q in Q*/(Q*)^2."""
    q = rational(q)
    if q == 0:
        return mpq(0)
    n = int(q.numerator * q.denominator)
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factorint(abs(n)).items():
        if e % 2:
            out *= p
    return mpq(out)


# ---------------------------------------------------------------------------
# the finite set of contributing places


def discriminant(f):
    """Discriminant of a degree-6 polynomial with rational coefficients."""
    f = [rational(c) for c in f]
    deriv = [i * c for i, c in enumerate(f)][1:]
    res = upoly_resultant(f, deriv)
    return -res / f[6]  # (-1)^(6*5/2) Res(f, f') / lc(f)


def contributing_places(f, a, hmats=(), gammas=()):
    """Places where the local symbol can be nonzero.

    Everywhere else the model is integral, a is a unit, and gamma is a
    primitive integral form, so the contribution vanishes.  Returns the
    finite primes in increasing order followed by None (the real place).
    """
    primes = {2}
    items = [rational(f[6]), discriminant(f), rational(a)]
    for h in hmats:
        for row in h:
            for x in row:
                items.append(mpq(rational(x).denominator))
    for g in gammas:
        denom = 1
        for c in g.coeffs.values():
            denom = lcm(denom, int(rational(c).denominator))
        items.append(mpq(denom))
    for q in items:
        n = abs(int(q.numerator * q.denominator))
        if n:
            primes.update(factorint(n).keys())
    return sorted(primes) + [None]


# ---------------------------------------------------------------------------
# pushout values (liftability of Kummer points to the Jacobian)


def pushout_values(f, hmat, point):
    """The six pushout-form values at a point; equal up to nonzero square
    factors wherever they are nonzero."""
    return [pushout_minor(f, hmat, point, pair)
            for pair in itertools.combinations(range(4), 2)]


def pushout_value(f, hmat, point):
    """First nonzero pushout value at the point (0 if all vanish)."""
    for v in pushout_values(f, hmat, point):
        if v != 0:
            return v
    return mpq(0)


# ---------------------------------------------------------------------------
# exact small points on a quartic surface


def surface_points(quartic, bound):
    """Primitive integer points of height <= bound on the quartic, in
    order of increasing height."""
    seen = set()
    for height in range(1, bound + 1):
        rng_vals = range(-height, height + 1)
        for pt in itertools.product(rng_vals, repeat=4):
            if max(abs(c) for c in pt) != height and height > 1:
                continue
            if all(c == 0 for c in pt):
                continue
            # normalise sign and primitivity
            g = 0
            for c in pt:
                g = gcd(g, abs(c))
            if g != 1:
                continue
            lead = next(c for c in pt if c)
            if lead < 0:
                continue
            if pt in seen:
                continue
            seen.add(pt)
            if quartic.evaluate([mpq(c) for c in pt]) == 0:
                yield pt


# ---------------------------------------------------------------------------
# p-adic machinery on integer coordinates


def _padic_int(q, p, modulus):
    """Integer representative of a rational with nonnegative valuation."""
    q = rational(q)
    v = q_valuation(q, p)
    if v < 0:
        raise ValueError("negative valuation")
    unit = q / mpq(p) ** v
    r = int(unit.numerator) * pow(int(unit.denominator), -1, modulus) % modulus
    return p ** v * r % modulus


def _upoly_eval(coeffs, t):
    total = mpq(0)
    for c in reversed(coeffs):
        total = total * t + c
    return total


def _newton_refine(coeffs, t0, p, prec):
    """Refine an approximate root t0 of the univariate polynomial to a
    root modulo p^prec, assuming v(f(t0)) > 2 v(f'(t0))."""
    modulus = p ** prec
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    t = t0 % modulus
    for _ in range(prec.bit_length() + 4):
        ft = _upoly_eval(coeffs, t)
        if ft == 0 or q_valuation(ft, p) >= prec:
            break
        dft = _upoly_eval(deriv, t)
        step = ft / dft
        if q_valuation(step, p) <= 0:
            raise ArithmeticError("Newton step is not p-adically small")
        t = (t - _padic_int(step, p, modulus)) % modulus
    return t


def _restrict_to_coord(poly, point, i):
    """Coefficients (ascending) of poly as a univariate polynomial in
    coordinate i, the other coordinates frozen at the point's values."""
    out = [mpq(0)] * 5
    for mono, c in poly.coeffs.items():
        term = c
        for k, e in enumerate(mono):
            if k != i:
                term = term * rational(point[k]) ** e
        out[mono[i]] += term
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


class LocalData:
    """A local point together with the symbol data derived from it."""

    __slots__ = ("place", "point", "precision", "gamma_class", "symbol")

    def __init__(self, place, point, precision, gamma_class, symbol):
        self.place = place
        self.point = point
        self.precision = precision  # None for an exact point
        self.gamma_class = gamma_class
        self.symbol = symbol


def _class_rep(value, p, trust):
    """Square-class representative of an approximately known value, or
    None if the value is zero / not known to enough precision.

    trust: number of p-adic digits the value is good to (None = exact).
    """
    if value == 0:
        return None
    v, u = val_unit(value, p)
    if trust is not None and v >= trust - 2:
        return None
    if p == 2:
        return mpq(2) ** (v % 2) * _unit_mod(u, 8)
    nonres = 1
    if _legendre(_unit_mod(u, p), p) == -1:
        nonres = next(n for n in range(2, p) if _legendre(n, p) == -1)
    return mpq(p) ** (v % 2) * nonres


def _square_at(value, p, trust):
    """Whether the approximately known nonzero value is a local square;
    None if not determined."""
    if value == 0:
        return None
    v, u = val_unit(value, p)
    if trust is not None and v >= trust - 2:
        return None
    if v % 2:
        return False
    if p == 2:
        return _unit_mod(u, 8) == 1
    return _legendre(_unit_mod(u, p), p) == 1


def _try_point(f, hmat, gamma, a, place, point, trust):
    """Symbol data if the (possibly approximate) point is usable."""
    if place is None:
        vals = pushout_values(f, hmat, point)
        push = next((v for v in vals if abs(v) > mpq(1, 10 ** 8)), mpq(0))
        if push <= 0:
            return None
        gval = gamma.evaluate([rational(c) for c in point])
        if abs(gval) <= mpq(1, 10 ** 8):
            return None
        cls = mpq(-1) if gval < 0 else mpq(1)
        return LocalData(place, tuple(point), None,
                         cls, hilbert_symbol(a, cls, None))
    p = int(place)
    for push in pushout_values(f, hmat, point):
        sq = _square_at(push, p, trust)
        if sq is None:
            continue
        if not sq:
            return None  # the point does not lift locally
        break
    else:
        return None
    gval = gamma.evaluate([rational(c) for c in point])
    cls = _class_rep(gval, p, trust)
    if cls is None:
        return None
    return LocalData(place, tuple(point), trust, cls,
                     hilbert_symbol(a, cls, p))


def _roots_mod_p(coeffs, p):
    """Roots in F_p of a polynomial with rational p-integral coefficients."""
    try:
        ints = []
        for c in coeffs:
            c = rational(c)
            if int(c.denominator) % p == 0:
                return []
            ints.append(int(c.numerator) * pow(int(c.denominator), -1, p) % p)
    except ValueError:
        return []
    while ints and ints[-1] == 0:
        ints.pop()
    if not ints:
        return []
    if p <= 3000:
        return [t for t in range(p) if _upoly_eval_mod(ints, t, p) == 0]
    try:
        factors = factor_mod_p(coeffs, p)
    except BadPrime:
        return []
    return [(-fac[0]) % p for fac in factors if len(fac) == 2]


def _upoly_eval_mod(ints, t, p):
    total = 0
    for c in reversed(ints):
        total = (total * t + c) % p
    return total


def _odd_p_candidates(surface, p, rng, tries):
    """Smooth residue points on the surface mod an odd prime, found by
    intersecting with random lines."""
    grads = [surface.derivative(i) for i in range(4)]
    seen = set()
    if p <= 13:
        pts = [pt for pt in itertools.product(range(p), repeat=4)
               if any(pt) and
               surface.evaluate([mpq(c) for c in pt]) % p == 0]
        rng.shuffle(pts)
        lines = None
    else:
        pts = None
    count = 0
    while count < tries:
        count += 1
        if pts is not None:
            if not pts:
                return
            pt = pts.pop()
        else:
            base = [rng.randrange(p) for _ in range(4)]
            direc = [rng.randrange(p) for _ in range(4)]
            if not any(direc):
                continue
            coeffs = _line_poly(surface, base, direc)
            ts = _roots_mod_p(coeffs, p)
            if not ts:
                continue
            t = ts[rng.randrange(len(ts))]
            pt = tuple((b + t * d) % p for b, d in zip(base, direc))
            if not any(pt):
                continue
        if pt in seen:
            continue
        seen.add(pt)
        gvals = [g.evaluate([mpq(c) for c in pt]) % p for g in grads]
        units = [i for i in range(4) if gvals[i] % p != 0]
        if not units:
            continue
        yield pt, units


def _line_poly(surface, base, direc):
    """Coefficients of t -> surface(base + t * direc), by interpolation."""
    nodes = range(5)
    vals = [surface.evaluate([mpq(b + t * d) for b, d in zip(base, direc)])
            for t in nodes]
    # Newton divided differences at integer nodes 0..4
    table = [mpq(v) for v in vals]
    coeffs_nodes = []
    for k in range(5):
        coeffs_nodes.append(table[0])
        table = [(table[i + 1] - table[i]) / mpq(k + 1)
                 for i in range(len(table) - 1)]
        if not table:
            break
    # expand Newton form prod (t - j)
    poly = [mpq(0)] * 5
    basis = [mpq(1)]
    for k in range(5):
        if k < len(coeffs_nodes):
            for i, b in enumerate(basis):
                poly[i] += coeffs_nodes[k] * b
        new = [mpq(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            new[i] -= k * b
            new[i + 1] += b
        basis = new
    return poly


def _finite_place_search(f, hmat, gamma, a, p, surface, rng,
                         precision, tries):
    if p <= 5:
        candidates = _lifted_candidates(surface, p, rng, tries)
    else:
        candidates = _odd_p_candidates(surface, p, rng, tries)
    for pt, units in candidates:
        for i in units:
            coeffs = _restrict_to_coord(surface, pt, i)
            if len(coeffs) < 2:
                continue
            try:
                t = _newton_refine(coeffs, int(pt[i]), p, precision)
            except (ArithmeticError, ValueError):
                continue
            refined = tuple(mpq(t) if k == i else mpq(pt[k])
                            for k in range(4))
            data = _try_point(f, hmat, gamma, a, p, refined, precision)
            if data is not None:
                return data
    return None


def _lifted_candidates(surface, p, rng, tries):
    """Approximate p-adic points for small p, found by lifting coordinate
    tuples modulo p^j.  A candidate is yielded once some coordinate i
    satisfies the Hensel criterion v(F) > 2 v(dF/dx_i), so the remaining
    coordinate can be solved for by Newton iteration.  Lifting beyond the
    residue field is essential: whether a residue point lifts can depend
    on the particular representatives chosen for the frozen coordinates."""
    grads = [surface.derivative(i) for i in range(4)]
    frontier = [pt for pt in itertools.product(range(p), repeat=4)
                if any(pt)
                and int(surface.evaluate([mpq(c) for c in pt])) % p == 0]
    yielded = 0
    maxdepth = 16 if p == 2 else 9
    for j in range(1, maxdepth):
        step = p ** j
        new = []
        for pt in frontier:
            fval = int(surface.evaluate([mpq(c) for c in pt]))
            units = []
            for i in range(4):
                gv = int(grads[i].evaluate([mpq(c) for c in pt]))
                if gv == 0:
                    continue
                d = 0
                while gv % p == 0:
                    gv //= p
                    d += 1
                # Hensel: a root in coordinate i exists when v(F) > 2 v(F_i)
                if fval == 0:
                    units.append(i)
                    continue
                vf = 0
                ftmp = fval
                while ftmp % p == 0:
                    ftmp //= p
                    vf += 1
                if vf > 2 * d:
                    units.append(i)
            if units:
                yield pt, units
                yielded += 1
                if yielded >= tries:
                    return
            for bits in itertools.product(range(p), repeat=4):
                cand = tuple(pt[k] + step * bits[k] for k in range(4))
                if int(surface.evaluate([mpq(c) for c in cand])) % (p * step) == 0:
                    new.append(cand)
        if len(new) > 4000:
            new = rng.sample(new, 4000)
        frontier = new
        if not frontier:
            return


def _real_place_search(f, hmat, gamma, a, surface, rng, tries):
    from sympy import Poly, Rational, Symbol
    t = Symbol("t")
    for _ in range(tries):
        base = [rng.randint(-6, 6) for _ in range(4)]
        direc = [rng.randint(-6, 6) for _ in range(4)]
        if not any(direc):
            continue
        coeffs = _line_poly(surface, base, direc)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            continue
        poly = Poly(sum(Rational(int(c.numerator), int(c.denominator)) * t ** i
                        for i, c in enumerate(coeffs)), t)
        try:
            roots = poly.nroots(n=20)
        except Exception:
            continue
        for r in roots:
            if abs(complex(r).imag) > 1e-9:
                continue
            x = complex(r).real
            num = [mpq(int(round((b + x * d) * 10 ** 9)), 10 ** 9)
                   for b, d in zip(base, direc)]
            scale = max(abs(c) for c in num)
            if scale == 0:
                continue
            pt = [c / scale for c in num]
            data = _try_point(f, hmat, gamma, a, None, pt, None)
            if data is not None:
                return data
    return None


def local_symbol(model, gamma, a, place, height_bound=5, precision=24,
                 seed=0, tries=60):
    """Hilbert symbol (a, gamma(P_v))_v for a suitable local point P_v on
    the twisted Kummer surface of the model.

    Returns a LocalData with the point used, the square class of
    gamma(P_v) and the symbol value in F_2.
    """
    f = model.algebra.f
    hmat = model.hmat
    surface = twisted_kummer(model)
    # exact rational points work at every place
    for pt in surface_points(surface, height_bound):
        trust = None
        data = _try_point(f, hmat, gamma, a,
                          place, [mpq(c) for c in pt], trust)
        if data is not None:
            return data
    rng = random.Random(seed)
    if place is None:
        data = _real_place_search(f, hmat, gamma, a, surface, rng, tries)
    else:
        data = _finite_place_search(f, hmat, gamma, a, int(place),
                                    surface, rng, precision, tries)
        if data is None and precision < 200:
            return local_symbol(model, gamma, a, place,
                                height_bound=height_bound,
                                precision=2 * precision,
                                seed=seed + 1, tries=2 * tries)
    if data is None:
        raise ArithmeticError(
            "no suitable local point found at place %s" % (place,))
    return data
