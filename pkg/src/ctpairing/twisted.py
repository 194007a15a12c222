"""Quartic covariants of a model: the twisted Kummer surface and the
covering map down to the Kummer surface of the Jacobian.

A model (G, H) with standard G determines quartic forms F_0, ..., F_4 in
the coordinates x1..x4 of P^3.  The twisted Kummer surface attached to the
model is { F_0 = 0 }, and (x1 : x2 : x3 : x4) -> (F_1 : F_2 : F_3 : F_4)
is the covering map from it to the Kummer surface of the Jacobian.

The F_i are covariants of weights (3, 5, 6, 7, 9) in the entries of H.
"""

from gmpy2 import mpq

from .kummer import PAIRS, U_SIGNS, b_matrix, lambda_matrix
from .linalg import det_ring, mat_mul, mat_transpose
from .models import q_form_matrices
from .polys import MPoly


def _x_vars():
    return [MPoly.variable(i, 4) for i in range(4)]


def e_covariant(model, r):
    """Quartic form Adj(Lambda G (G^{-1} H)^r Lambda^T)_44 / x4^2."""
    g = model.gmat
    h = model.hmat
    m6 = g
    for _ in range(r):
        m6 = mat_mul(m6, mat_mul(g, h))  # G (G^{-1} H)^r, with G^{-1} = G
    lam = lambda_matrix(_x_vars())
    mat = mat_mul(mat_mul(lam, m6), mat_transpose(lam))
    minor = det_ring([[mat[i][j] for j in range(3)] for i in range(3)])
    return minor.divide_monomial_exact((0, 0, 0, 2))


def star_product(qpoly, bmat):
    """The quartic form Q * H = sum c_ijkl (B_ik B_jl - B_il B_jk).

    qpoly is a quadratic form in u0..u5; each u_k is identified (with a
    sign) with a skew coordinate z_ij via the pair ordering, so that the
    form reads sum c_ijkl z_ij z_kl.
    """
    out = MPoly(4)
    for mono, c in qpoly.coeffs.items():
        idx = [k for k, e in enumerate(mono) for _ in range(e)]
        if len(idx) != 2:
            raise ValueError("not a quadratic form")
        a, b = idx
        (i, j), (k, l) = PAIRS[a], PAIRS[b]
        term = bmat[i][k] * bmat[j][l] - bmat[i][l] * bmat[j][k]
        out = out + (c * U_SIGNS[a] * U_SIGNS[b]) * term
    return out


def covariants(model):
    """The quartic covariants (F_0, F_1, F_2, F_3, F_4) of the model."""
    from .kummer import matrix_quad_form

    f = model.algebra.f
    n_mats = q_form_matrices(model)
    q0, q1, q2 = (matrix_quad_form(n_mats[j]) for j in range(3))
    bmat = b_matrix(model.hmat, _x_vars())
    f0 = e_covariant(model, 1) * mpq(1, 2 * f[6])
    f1 = star_product(q2, bmat) - 2 * f[4] * f0
    f2 = -star_product(q1, bmat) + f[3] * f0
    f3 = star_product(q0, bmat)
    f4 = (f[6] * e_covariant(model, 3)
          - star_product(f[2] * q2 - f[3] * q1 + f[4] * q0, bmat)
          - (f[1] * f[5] - 4 * f[2] * f[4] + 2 * f[3] ** 2) * f0)
    return f0, f1, f2, f3, f4


def twisted_kummer(model):
    """Primitive integral quartic cutting out the twisted Kummer surface."""
    return covariants(model)[0].primitive_normalized()


def covering_map(model):
    """The four quartics (F_1, F_2, F_3, F_4) of the covering map."""
    return covariants(model)[1:]
