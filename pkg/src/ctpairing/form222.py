"""The specialised (2,2,2)-form: the quadratic form gamma in x1..x4.

Given models for two Selmer classes and their sum, a rational point P on
the twisted Kummer surface of the second class, and a contraction vector
c, this module computes the quadratic form

    gamma(x) = sum over (3,3)-partitions of  mu * Q_1(x) Q_2(P) Q_3*(c)

whose quotient by x1^2 is the rational function used in the pairing
formula.  All per-partition quantities live in an unramified p-adic
splitting field of the sextic; the sum over partitions is Galois-stable
and is reconstructed as an exact rational quadratic form.
"""

import itertools
import random

from gmpy2 import mpq

from .kummer import vector_to_skew
from .skew import star4
from .linalg import mat_mul, mat_vec
from .models import q_form_matrices, xi_m_at
from .padic import PrecisionError
from .polys import MPoly
from .rationals import rational
from .splitting import SplittingContext, solve_square_class
from .twisted import covariants

# the ten (3,3)-partitions of the root indices, first part containing 0
PARTITIONS = tuple(
    ((0,) + pair, tuple(sorted(set(range(1, 6)) - set(pair))))
    for pair in itertools.combinations(range(1, 6), 2)
)

_QUAD_MONOS = tuple(
    tuple((1 if k in (i, j) else 0) if i != j else (2 if k == i else 0)
          for k in range(4))
    for i in range(4) for j in range(i, 4)
)
_QUAD_PAIRS = tuple((i, j) for i in range(4) for j in range(i, 4))


def _monic_cubic(sc, indices):
    """Coefficients [c0, c1, c2] of prod_{i in indices} (x - theta_i)."""
    poly = [sc.ctx.one()]
    for i in indices:
        root = sc.roots[i]
        out = [poly[0] * (-root)]
        for k in range(1, len(poly)):
            out.append(poly[k] * (-root) + poly[k - 1])
        out.append(poly[-1])
        poly = out
    return poly[:3]


def _lambda_vector(sc, f6, r, s):
    f6 = sc.embed(f6)
    return (
        f6 * (r[0] * s[2] + r[2] * s[0]),
        f6 * (r[0] + s[0]),
        f6 * (r[1] + s[1]),
        sc.ctx.one(),
    )


def _combine_quartics(sc, dicts, weights):
    """Linear combination of rational coefficient dicts with p-adic weights."""
    out = {}
    for d, w in zip(dicts, weights):
        if w.is_zero():
            continue
        for mono, c in d.items():
            term = w * sc.embed(c)
            out[mono] = out.get(mono, sc.ctx.zero()) + term
    return {m: c for m, c in out.items() if not c.is_zero()}


def _quartic_jet(sc, d, v):
    """Value, gradient and Hessian of a quartic coefficient dict at a
    rational vector v."""
    val = sc.ctx.zero()
    grad = [sc.ctx.zero() for _ in range(4)]
    hess = [[sc.ctx.zero() for _ in range(4)] for _ in range(4)]
    v = [rational(c) for c in v]

    def monom(exps):
        out = mpq(1)
        for base, e in zip(v, exps):
            out *= base ** e
        return out

    for mono, c in d.items():
        val = val + c * monom(mono)
        for i in range(4):
            if mono[i] == 0:
                continue
            e1 = list(mono)
            e1[i] -= 1
            grad[i] = grad[i] + c * (mono[i] * monom(e1))
            for j in range(i, 4):
                if e1[j] == 0:
                    continue
                e2 = e1[:]
                e2[j] -= 1
                coef = mono[i] * e1[j]
                hess[i][j] = hess[i][j] + c * (coef * monom(e2))
    for i in range(4):
        for j in range(i):
            hess[i][j] = hess[j][i]
    return val, grad, hess


def _extract_square_root(sc, d, rng):
    """Given a quartic dict with P = alpha Q^2, return (alpha, qdict) where
    qdict maps index pairs (i <= j) to the coefficients of Q, normalised so
    that Q(v) = 1 at the chosen base point v (hence alpha = P(v))."""
    candidates = [[1 if k == i else 0 for k in range(4)] for i in range(4)]
    for _ in range(40):
        candidates.append([rng.randint(-3, 3) for _ in range(4)])
    for v in candidates:
        if all(c == 0 for c in v):
            continue
        val, grad, hess = _quartic_jet(sc, d, v)
        if val.is_zero() or not val.is_unit():
            continue
        alpha = val
        inv2a = (2 * alpha).inverse()
        inv4a = (4 * alpha).inverse()
        qdict = {}
        for i, j in _QUAD_PAIRS:
            if i == j:
                c2 = hess[i][i] * mpq(1, 2)
                c1sq = grad[i] * grad[i]
            else:
                c2 = hess[i][j]
                c1sq = 2 * grad[i] * grad[j]
            qdict[(i, j)] = (c2 - c1sq * inv4a) * inv2a
        return alpha, qdict
    raise PrecisionError("no unit base point found for square extraction")


def _negligible(sc, x, ref_val=0):
    """True if x is indistinguishable from zero: either exactly zero or of
    valuation so high relative to ref_val that it is cancellation noise
    (the p-adic elements carry a fixed number of significant digits and do
    not track digits lost to cancellation)."""
    if x.is_zero():
        return True
    return x.valuation() - ref_val >= sc.ctx.k // 2


def _same(sc, a, b):
    """Equality up to cancellation noise."""
    ref = 0
    for x in (a, b):
        if not x.is_zero():
            ref = min(ref, x.valuation())
    return _negligible(sc, a - b, ref)


def _quad_value(sc, qdict, point):
    point = [rational(c) for c in point]
    out = sc.ctx.zero()
    for (i, j), c in qdict.items():
        out = out + c * (point[i] * point[j])
    return out


def _invert_matrix(sc, mat):
    """Gauss-Jordan inverse for a square matrix of p-adic elements."""
    n = len(mat)
    aug = [list(row) + [sc.ctx.one() if i == j else sc.ctx.zero()
                        for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if aug[r][col].is_unit():
                pivot = r
                break
        if pivot is None:
            raise PrecisionError("matrix not invertible at working precision")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r == col:
                continue
            factor = aug[r][col]
            if factor.is_zero():
                continue
            aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _dual_quad_value(sc, qdict, cvec):
    """Value of the dual quadratic form at cvec: (1/2) c^T B^{-1} c where
    Q(x) = (1/2) x^T B x."""
    b = [[sc.ctx.zero() for _ in range(4)] for _ in range(4)]
    for (i, j), c in qdict.items():
        if i == j:
            b[i][i] = 2 * c
        else:
            b[i][j] = b[i][j] + c
            b[j][i] = b[j][i] + c
    binv = _invert_matrix(sc, b)
    cvec = [rational(c) for c in cvec]
    out = sc.ctx.zero()
    for i in range(4):
        for j in range(4):
            out = out + binv[i][j] * (cvec[i] * cvec[j])
    return out * mpq(1, 2)


def _a_matrix_at(model, u0):
    """The symmetrised matrix A_ij = (W* Z Y*)_ij + (W* Z Y*)_ji at u0,
    where Z, W, Y are the skew matrices of the model and of S = H G H."""
    u0 = [rational(c) for c in u0]
    g = model.gmat
    h = model.hmat
    smat = mat_mul(mat_mul(h, g), h)
    z = vector_to_skew(u0)
    w = star4(vector_to_skew(mat_vec(h, u0)))
    y = star4(vector_to_skew(mat_vec(smat, u0)))
    prod = mat_mul(mat_mul(star4(w), z), star4(y))
    return [[prod[i][j] + prod[j][i] for j in range(4)] for i in range(4)]


def _chi_value(sc, qdict, amat):
    """chi = sum of Q-coefficients against the matrix A."""
    out = sc.ctx.zero()
    for (i, j), c in qdict.items():
        out = out + c * amat[i][j]
    return out


class _ModelData:
    """Per-model, per-splitting-context data used in the gamma sum."""

    def __init__(self, sc, model, rng):
        alg = model.algebra
        f = alg.f
        self.model = model
        self.fdicts = [q.coeffs for q in covariants(model)]
        n_mats = q_form_matrices(model)
        for _ in range(60):
            u0 = [rng.randint(-5, 5) for _ in range(6)]
            rep = xi_m_at(alg, n_mats, u0)
            if rep is None:
                continue
            amat = _a_matrix_at(model, u0)
            xi_vals = sc.eval_etale(rep.xi)
            if any(v.is_zero() or not v.is_unit() for v in xi_vals):
                continue
            self.rep = rep
            self.amat = amat
            self.xi_vals = xi_vals
            self.m = sc.embed(rep.m)
            return
        raise PrecisionError("no suitable specialisation point found")

    def partition_data(self, sc, f, lam, part, rng):
        """(w, alpha, chi, qdict) for one (3,3)-partition, with the exact
        identity -f6 w = alpha chi^2 verified."""
        p4 = _combine_quartics(
            sc,
            self.fdicts,
            [lam[1] * lam[1] - lam[0] * lam[2], lam[0], lam[1], lam[2], lam[3]],
        )
        alpha, qdict = _extract_square_root(sc, p4, rng)
        g1, g2 = part
        prod1 = sc.ctx.one()
        for i in g1:
            prod1 = prod1 * self.xi_vals[i]
        prod2 = sc.ctx.one()
        for i in g2:
            prod2 = prod2 * self.xi_vals[i]
        w = prod1 + prod2 + 2 * self.m
        chi = _chi_value(sc, qdict, self.amat)
        if _negligible(sc, chi):
            raise PrecisionError("degenerate specialisation: chi = 0")
        if not _same(sc, -f[6] * w, alpha * chi * chi):
            raise ArithmeticError(
                "square-class consistency check failed for a partition")
        return w, alpha, chi, qdict, prod1


def gamma_form(model_a, model_b, model_ab, point, cvec,
               prime=None, precision=24, seed=0):
    """The rational quadratic form gamma(x1..x4), primitive-normalised.

    model_a, model_b, model_ab represent classes a, b and a+b; point is a
    rational point on the twisted Kummer surface of model_b; cvec is the
    contraction vector (an arbitrary dual vector, generically chosen).
    """
    alg = model_a.algebra
    f = alg.f
    last_err = None
    for attempt in range(4):
        prec = precision << attempt
        try:
            return _gamma_attempt(alg, f, model_a, model_b, model_ab,
                                  point, cvec, prime, prec, seed)
        except PrecisionError as err:
            last_err = err
    raise last_err


def _gamma_attempt(alg, f, model_a, model_b, model_ab, point, cvec,
                   prime, precision, seed):
    rng = random.Random(seed)
    sc = SplittingContext(f, prime=prime, precision=precision, seed=seed,
                          avoid=[f[6]])
    datas = [_ModelData(sc, m, rng) for m in (model_a, model_b, model_ab)]
    prod_rep = datas[0].rep * datas[1].rep * datas[2].rep
    sol = solve_square_class(alg, prod_rep.xi, prod_rep.m, seed=seed)
    if sol is None:
        raise ArithmeticError(
            "the three models do not satisfy class(a) class(b) = class(a+b)")
    _, nu = sol
    nu_vals = sc.eval_etale(nu)
    coeffs = {pair: sc.ctx.zero() for pair in _QUAD_PAIRS}
    for part in PARTITIONS:
        g1, _ = part
        r = _monic_cubic(sc, g1)
        s = _monic_cubic(sc, part[1])
        lam = _lambda_vector(sc, f[6], r, s)
        per = [d.partition_data(sc, f, lam, part, rng) for d in datas]
        (w_a, alpha_a, chi_a, q_a, _) = per[0]
        (w_b, alpha_b, chi_b, q_b, _) = per[1]
        (w_ab, alpha_ab, chi_ab, q_ab, _) = per[2]
        # mu_kappa for the product class, from the explicit cocycle formula
        mu_k = sc.ctx.one()
        for i in g1:
            mu_k = mu_k * nu_vals[i]
        for d, data in zip(per, datas):
            prod1 = d[4]
            mu_k = mu_k * (1 + data.m / prod1)
        mu = mu_k * chi_ab / (chi_a * chi_b * w_ab)
        scal = mu * _quad_value(sc, q_b, point) * _dual_quad_value(sc, q_ab, cvec)
        for pair in _QUAD_PAIRS:
            coeffs[pair] = coeffs[pair] + scal * q_a[pair]
    out = MPoly(4)
    for pair, mono in zip(_QUAD_PAIRS, _QUAD_MONOS):
        val = coeffs[pair]
        if _negligible(sc, val):
            continue
        q = val.rational_coords(drop=sc.ctx.k // 4)
        if q is None:
            raise PrecisionError("rational reconstruction failed")
        if q:
            out = out + MPoly(4, {mono: q})
    if out.is_zero():
        raise PrecisionError("gamma vanished; retry at higher precision")
    return out.primitive_normalized()
