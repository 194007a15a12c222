"""Shared helpers for the test suite: random algebraic data generators and
small constructions used by several test modules."""

import itertools
import os

from gmpy2 import mpq

from ctpairing.kummer import skew_to_vector, vector_to_skew
from ctpairing.linalg import (adjugate_ring, inverse_field, mat_identity,
                              mat_mul, mat_transpose)
from ctpairing.polys import upoly_discriminant, upoly_mul

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


def fixture_path(name):
    return os.path.abspath(os.path.join(FIXTURES, name))


def random_rational(rng, bound=9, allow_zero=True):
    num = rng.randint(-bound, bound)
    if not allow_zero:
        while num == 0:
            num = rng.randint(-bound, bound)
    den = rng.randint(1, 4)
    return mpq(num, den)


def random_sextic(rng, bound=9):
    """A random squarefree degree-6 polynomial with nonzero leading term."""
    while True:
        f = [mpq(rng.randint(-bound, bound)) for _ in range(7)]
        if f[6] == 0:
            continue
        if upoly_discriminant(f) != 0:
            return f


def split_sextic(rng, bound=6):
    """A squarefree sextic with six rational roots; returns (coeffs, roots)."""
    while True:
        roots = set()
        while len(roots) < 6:
            roots.add(mpq(rng.randint(-bound, bound), rng.randint(1, 2)))
        roots = sorted(roots)
        f6 = mpq(rng.randint(1, 5))
        poly = [mpq(1)]
        for r in roots:
            poly = upoly_mul(poly, [-r, mpq(1)])
        return [f6 * c for c in poly], roots


def random_sl4(rng, steps=6, bound=3):
    """A random integral 4x4 matrix of determinant 1 (elementary products)."""
    m = mat_identity(4)
    for _ in range(steps):
        i, j = rng.sample(range(4), 2)
        c = mpq(rng.randint(-bound, bound))
        e = mat_identity(4)
        e[i][j] = c
        m = mat_mul(m, e)
    return m


def exterior_square(p):
    """6x6 matrix of the induced action u -> vec(P skew(u) P^T)."""
    cols = []
    for k in range(6):
        e = [mpq(0)] * 6
        e[k] = mpq(1)
        s = vector_to_skew(e)
        cols.append(skew_to_vector(mat_mul(mat_mul(p, s), mat_transpose(p))))
    return [[cols[k][i] for k in range(6)] for i in range(6)]


def quad_value(mat, v):
    n = len(mat)
    return sum(v[i] * mat[i][j] * v[j] for i in range(n) for j in range(n))


def cubic_from_roots(roots):
    """Coefficients (c0, c1, c2) of the monic cubic with the given roots."""
    c = [mpq(1)]
    for r in roots:
        c = upoly_mul(c, [-r, mpq(1)])
    return c[0], c[1], c[2]


def partition_lambda_amat(f6, r_roots, s_roots):
    """The distinguished vector and 3x3 matrix attached to a factorisation of
    a split sextic into two rational cubics."""
    r0, r1, r2 = cubic_from_roots(r_roots)
    s0, s1, s2 = cubic_from_roots(s_roots)
    lam = [f6 * (r0 * s2 + r2 * s0), f6 * (r0 + s0), f6 * (r1 + s1), mpq(1)]
    amat = [
        [f6 * (r2 - s2), f6 * (-r1 + s1), f6 * (r0 - s0)],
        [f6 * (-r1 + s1), f6 * (r0 + r1 * s2 - r2 * s1 - s0),
         f6 * (-r0 * s2 + r2 * s0)],
        [f6 * (r0 - s0), f6 * (-r0 * s2 + r2 * s0), f6 * (r0 * s1 - r1 * s0)],
    ]
    return lam, amat


def partition_bmat(f6, r_roots, s_roots):
    """Rank-considerations aside, B = lam lam^T + diag(adj(A), 0)."""
    lam, amat = partition_lambda_amat(f6, r_roots, s_roots)
    adj = adjugate_ring(amat)
    b = [[lam[i] * lam[j] for j in range(4)] for i in range(4)]
    for i in range(3):
        for j in range(3):
            b[i][j] += adj[i][j]
    return b


def split_form_data(f6, roots):
    """All ten cubic-pair factorisations of a split sextic, as a list of
    (lam, B) pairs."""
    out = []
    for comb in itertools.combinations(range(6), 3):
        if 0 not in comb:
            continue
        rs = [roots[i] for i in comb]
        ss = [roots[i] for i in range(6) if i not in comb]
        out.append((partition_lambda_amat(f6, rs, ss)[0],
                    partition_bmat(f6, rs, ss)))
    return out


def triple_product_form(parts, x, y, z):
    """The trilinear-in-squares form built from the ten factorisations,
    evaluated at (x, y, z)."""
    total = mpq(0)
    for _, b in parts:
        total += quad_value(b, x) * quad_value(b, y) * quad_value(
            inverse_field(b), z)
    return total / 4
