"""Geometry of the genus 2 Kummer surface and its standard models.

Everything here is attached to a sextic f = f6 x^6 + ... + f0 defining the
curve y^2 = f(x).  The module provides: the Kummer quartic in P^3, the dual
Kummer quartic, the skew matrices A(theta) giving the maps K -> K^dual, the
standard quadratic form triple (G, H, S) in P^5 cutting out the blown-up
Kummer surface, the Lambda matrix of a point of P^3, and the skew matrices
Z, W of linear forms whose pfaffian combination recovers G, H, S.

Quadratic forms in six variables are represented by symmetric 6x6 matrices M
with q(u) = (1/2) u^T M u.
"""

from gmpy2 import mpq

from .linalg import adjugate_ring, det_ring, inverse_field, mat_mul, mat_transpose
from .polys import MPoly, upoly
from .skew import skew4, star4

# order of the upper-triangle pairs (i,j), i<j, of a skew 4x4 matrix,
# matched with the variables u_0..u_5: u_k sits at position PAIRS[k] with
# sign U_SIGNS[k]
PAIRS = ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3))
U_SIGNS = (1, 1, 1, 1, -1, 1)


def _f(coeffs):
    f = upoly(coeffs)
    if len(f) != 7:
        raise ValueError("need a degree 6 polynomial")
    return f


def kummer_quartic(f_coeffs):
    """Equation of the Kummer surface K in P^3 (variables x1..x4)."""
    f0, f1, f2, f3, f4, f5, f6 = _f(f_coeffs)
    x1, x2, x3, x4 = (MPoly.variable(i, 4) for i in range(4))
    k2 = x2 * x2 - 4 * x1 * x3
    k3 = 2 * (
        2 * f0 * x1 ** 3
        + f1 * x1 * x1 * x2
        + 2 * f2 * x1 * x1 * x3
        + f3 * x1 * x2 * x3
        + 2 * f4 * x1 * x3 * x3
        + f5 * x2 * x3 * x3
        + 2 * f6 * x3 ** 3
    )
    k4 = (
        (f1 * f1 - 4 * f0 * f2) * x1 ** 4
        - 4 * f0 * f3 * x1 ** 3 * x2
        - 2 * f1 * f3 * x1 ** 3 * x3
        - 4 * f0 * f4 * x1 * x1 * x2 * x2
        + 4 * (f0 * f5 - f1 * f4) * x1 * x1 * x2 * x3
        + (f3 * f3 - 4 * f0 * f6 + 2 * f1 * f5 - 4 * f2 * f4) * x1 * x1 * x3 * x3
        - 4 * f0 * f5 * x1 * x2 ** 3
        + 4 * (2 * f0 * f6 - f1 * f5) * x1 * x2 * x2 * x3
        + 4 * (f1 * f6 - f2 * f5) * x1 * x2 * x3 * x3
        - 2 * f3 * f5 * x1 * x3 ** 3
        - 4 * f0 * f6 * x2 ** 4
        - 4 * f1 * f6 * x2 ** 3 * x3
        - 4 * f2 * f6 * x2 * x2 * x3 * x3
        - 4 * f3 * f6 * x2 * x3 ** 3
        + (f5 * f5 - 4 * f4 * f6) * x3 ** 4
    )
    return k2 * x4 * x4 - k3 * x4 + k4


def dual_kummer_quartic(f_coeffs):
    """Equation of the dual Kummer surface (variables are the dual x1*..x4*)."""
    f0, f1, f2, f3, f4, f5, f6 = _f(f_coeffs)
    y1, y2, y3, y4 = (MPoly.variable(i, 4) for i in range(4))
    m = [
        [2 * f0 * y4, f1 * y4, y1, y2],
        [f1 * y4, 2 * f2 * y4 - 2 * y1, f3 * y4 - y2, y3],
        [y1, f3 * y4 - y2, 2 * f4 * y4 - 2 * y3, f5 * y4],
        [y2, y3, f5 * y4, 2 * f6 * y4],
    ]
    return det_ring(m)


def h_polys(f_coeffs, theta):
    """The three odd halves h3, h4, h5 of f at a ring element theta."""
    f0, f1, f2, f3, f4, f5, f6 = _f(f_coeffs)
    t = theta
    t2 = t * t
    t3 = t2 * t
    t4 = t3 * t
    t5 = t4 * t
    h3 = 2 * f6 * t3 + f5 * t2
    h4 = 2 * f6 * t4 + 2 * f5 * t3 + 2 * f4 * t2 + f3 * t
    h5 = 2 * f6 * t5 + 2 * f5 * t4 + 2 * f4 * t3 + 2 * f3 * t2 + 2 * f2 * t + f1
    return h3, h4, h5


def a_theta(f_coeffs, theta, one=None):
    """Skew matrix A(theta) giving K -> K^dual; Pf(A) = f'(theta)."""
    h3, h4, h5 = h_polys(f_coeffs, theta)
    if one is None:
        one = theta * 0 + 1
    return skew4(h5, h4, theta * theta, h3, -theta, one)


def quad_form_matrix(poly):
    """Symmetric matrix M with q(u) = (1/2) u^T M u for a quadratic MPoly."""
    n = poly.nvars
    m = [[mpq(0)] * n for _ in range(n)]
    for mono, c in poly.coeffs.items():
        idx = [i for i, e in enumerate(mono) for _ in range(e)]
        if len(idx) != 2:
            raise ValueError("not a quadratic form")
        i, j = idx
        if i == j:
            m[i][i] = 2 * c
        else:
            m[i][j] += c
            m[j][i] += c
    return m


def matrix_quad_form(m):
    """Quadratic form (1/2) u^T M u as an MPoly."""
    n = len(m)
    out = MPoly(n)
    for i in range(n):
        for j in range(i, n):
            mono = tuple((2 if k == i else 0) if i == j else (1 if k in (i, j) else 0) for k in range(n))
            c = mpq(m[i][i], 2) if i == j else mpq(m[i][j] + m[j][i], 2)
            if c:
                out = out + MPoly(n, {mono: c})
    return out


def standard_g_matrix():
    """Matrix of G = u0 u5 + u1 u4 + u2 u3 (the 6x6 exchange matrix)."""
    return [[mpq(1) if i + j == 5 else mpq(0) for j in range(6)] for i in range(6)]


def standard_triple(f_coeffs):
    """Matrices (G, H, S) of the standard model triple in P^5."""
    f0, f1, f2, f3, f4, f5, f6 = _f(f_coeffs)
    u = [MPoly.variable(i, 6) for i in range(6)]
    gform = u[0] * u[5] + u[1] * u[4] + u[2] * u[3]
    w = u[2] - f5 * u[3]
    hform = (
        u[0] * u[4]
        + u[1] * u[3]
        - f0 * u[5] * u[5]
        - f1 * u[4] * u[5]
        - f2 * u[4] * u[4]
        - f3 * u[3] * u[4]
        - f4 * u[3] * u[3]
        + mpq(1, 4) / f6 * w * w
    )
    sform = (
        u[0] * u[3]
        - 2 * f0 * u[4] * u[5]
        - f1 * (u[3] * u[5] + u[4] * u[4])
        - 2 * f2 * u[3] * u[4]
        - f3 * u[3] * u[3]
        + mpq(1, 2) / f6 * (u[1] - f3 * u[4] - 2 * f4 * u[3]) * w
        - mpq(1, 4) / (f6 * f6) * f5 * w * w
    )
    return (
        quad_form_matrix(gform),
        quad_form_matrix(hform),
        quad_form_matrix(sform),
    )


def lambda_matrix(xs):
    """4x6 matrix whose rows span the G-isotropic 3-space attached to a
    point (x1:x2:x3:x4) of P^3.  Entries may be any ring elements."""
    x1, x2, x3, x4 = xs
    z = x1 * 0
    return [
        [z, z, x4, z, x3, x2],
        [z, -x4, z, x3, z, -x1],
        [x4, z, z, -x2, -x1, z],
        [-x3, x2, -x1, z, z, z],
    ]


def b_matrix(hmat, xs):
    """B = Lambda H Lambda^T, a 4x4 symmetric matrix (of quadratic forms when
    xs are coordinate variables)."""
    lam = lambda_matrix(xs)
    return mat_mul(mat_mul(lam, hmat), mat_transpose(lam))


def vector_to_skew(v):
    """Skew 4x4 matrix attached to (u0, ..., u5) via the pair ordering."""
    entries = [None] * 6
    for k, (pair, sgn) in enumerate(zip(PAIRS, U_SIGNS)):
        idx = {(0, 1): 0, (0, 2): 1, (0, 3): 2, (1, 2): 3, (1, 3): 4, (2, 3): 5}[pair]
        entries[idx] = v[k] if sgn == 1 else -v[k]
    return skew4(*entries)


def skew_to_vector(a):
    """Inverse of vector_to_skew."""
    flat = {(0, 1): a[0][1], (0, 2): a[0][2], (0, 3): a[0][3],
            (1, 2): a[1][2], (1, 3): a[1][3], (2, 3): a[2][3]}
    return [flat[pair] if sgn == 1 else -flat[pair] for pair, sgn in zip(PAIRS, U_SIGNS)]


def zw_matrices(hmat):
    """Skew matrices (Z, W) of linear forms in u0..u5 with
    Pf(l Z + m W) = l^2 G - 2 l m H + m^2 S."""
    u = [MPoly.variable(i, 6) for i in range(6)]
    z = vector_to_skew(u)
    grads = []
    for i in range(6):
        g = MPoly(6)
        for j in range(6):
            if hmat[i][j] != 0:
                g = g + hmat[i][j] * u[j]
        grads.append(g)
    w = star4(vector_to_skew(grads))
    return z, w


def kummer_from_model(f_coeffs, hmat):
    """Quartic form (in x1..x4) cutting out the (possibly twisted) Kummer
    surface attached to a model with standard G, computed from Adj(B)."""
    f6 = _f(f_coeffs)[6]
    xs = [MPoly.variable(i, 4) for i in range(4)]
    b = b_matrix(hmat, xs)
    adj44 = det_ring([[b[i][j] for j in range(3)] for i in range(3)])
    return (-2 * f6 * adj44).divide_monomial_exact((0, 0, 0, 2))


def pushout_minor(f_coeffs, hmat, point, pair):
    """Value of the pushout form -f6 (B_ii B_jj - B_ij^2) at a point of P^3.

    Setting this equal to a square defines the double cover J_eps -> K_eps.
    """
    f6 = _f(f_coeffs)[6]
    b = b_matrix(hmat, point)
    i, j = pair
    return -f6 * (b[i][i] * b[j][j] - b[i][j] * b[i][j])
