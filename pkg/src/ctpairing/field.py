"""Exact square roots in number fields Q[x]/(g) with g irreducible.

The method is classical: to decide whether a is a square in K = Q[x]/(g),
factor the norm polynomial N_{K/Q}(y^2 - a) over Q (shifting y -> y - c*x
first when needed to make it squarefree), and read off the K-factors of
y^2 - a as gcds with the rational factors.  Everything is exact; no
floating point or p-adic approximation is involved.
"""

from gmpy2 import mpq

from .polys import (upoly, upoly_add, upoly_divmod, upoly_mul,
                    upoly_rational_factors, upoly_resultant, upoly_scale,
                    upoly_xgcd)


def _kred(u, g):
    return upoly_divmod(u, g)[1]


def _kmul(u, v, g):
    return _kred(upoly_mul(u, v), g)


def _kinv(u, g):
    d, s, _ = upoly_xgcd(u, g)
    if d != [mpq(1)]:
        raise ZeroDivisionError("element is not invertible")
    return _kred(s, g)


def _kypoly_gcd(p, q, g):
    """Monic gcd of polynomials in y with coefficients in K (lists of upolys,
    degree increasing)."""
    def trim(u):
        while u and not u[-1]:
            u.pop()
        return u

    a, b = trim([c[:] for c in p]), trim([c[:] for c in q])
    while b:
        inv = _kinv(b[-1], g)
        bm = [_kmul(c, inv, g) for c in b]
        # reduce a mod bm
        r = [c[:] for c in a]
        while len(r) >= len(bm):
            lead = r[-1]
            shift = len(r) - len(bm)
            for i, c in enumerate(bm):
                r[shift + i] = upoly_add(r[shift + i],
                                         upoly_scale(_kmul(lead, c, g), -1))
            trim(r)
            if len(r) >= len(bm) and not r[-1]:
                r.pop()
        a, b = bm, trim(r)
    if a:
        inv = _kinv(a[-1], g)
        a = [_kmul(c, inv, g) for c in a]
    return a


def _lagrange(points):
    """Coefficients of the polynomial through (x, y) pairs, over Q."""
    n = len(points)
    out = [mpq(0)] * n
    for i, (xi, yi) in enumerate(points):
        num = [mpq(1)]
        den = mpq(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            num = upoly_mul(num, [-xj, mpq(1)]) + []
            den *= xi - xj
        scale = yi / den
        for k, c in enumerate(num):
            out[k] += c * scale
    return upoly(out)


def _norm_poly(g, a, lam):
    """q(y) = Res_x(g(x), (y - lam x)^2 - a(x)), computed by interpolation."""
    d = len(g) - 1
    pts = []
    y0 = 0
    while len(pts) < 2 * d + 1:
        # c(x) = (y0 - lam x)^2 - a(x)
        c = [-v for v in a] + [mpq(0)] * max(0, 3 - len(a))
        c[0] += mpq(y0) ** 2
        c[1] += -2 * y0 * lam
        c[2] += lam * lam
        c = upoly(c)
        if not c:
            y0 = -y0 + (1 if y0 <= 0 else 0)
            continue
        pts.append((mpq(y0), upoly_resultant(g, c)))
        y0 = -y0 + (1 if y0 <= 0 else 0)
    return _lagrange(pts)


def _is_squarefree(q):
    from .polys import upoly_gcd, upoly_derivative
    return upoly_gcd(q, upoly_derivative(q)) == [mpq(1)]


def field_sqrt(g, a):
    """Square root of a in K = Q[x]/(g) (g irreducible over Q), or None.

    a is a coefficient list of degree < deg g; the result is in the same
    form.
    """
    g = upoly_scale(upoly(g), 1 / upoly(g)[-1])
    a = _kred(upoly(a), g)
    if not a:
        return [mpq(0)]
    for lam in range(12):
        q = _norm_poly(g, a, mpq(lam))
        if q and _is_squarefree(q):
            break
    else:
        raise ArithmeticError("no squarefree shift found")
    theta = [mpq(0), mpq(1)]
    # p(y) = y^2 - a over K
    p = [upoly_scale(a, -1), [], [mpq(1)]]
    for h in upoly_rational_factors(q):
        if len(h) - 1 > len(g) - 1:
            continue
        # h(y + lam theta) as a polynomial in y over K
        hk = [[] for _ in range(len(h))]
        power = [[mpq(1)]]   # (y + lam theta)^j, coefficients in K
        for j, hj in enumerate(h):
            if hj:
                for k, c in enumerate(power):
                    hk[k] = upoly_add(hk[k], upoly_scale(c, hj))
            if j + 1 < len(h):
                shifted = [[]] + [c[:] for c in power]
                base = upoly_scale(theta, mpq(lam))
                for k, c in enumerate(power):
                    shifted[k] = upoly_add(shifted[k], _kmul(c, base, g))
                power = shifted
        d = _kypoly_gcd(p, hk, g)
        if len(d) == 2:
            b = upoly_scale(d[0], -1)
            if _kred(upoly_mul(b, b), g) == a:
                return b + [mpq(0)] * (len(g) - 1 - len(b))
    return None
