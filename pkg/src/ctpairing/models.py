"""Models of two-covers: pairs of quadratic forms (G, H) in six variables.

A Selmer representative is a pair (xi, m) with xi in L* = (Q[x]/f)* and
m in Q*, N(xi) = m^2, taken modulo (xi, m) -> (xi r nu^2, m r^3 N(nu)).
Each class is realised by a model: a quadric pencil (G, H) with G the
standard hyperbolic form u0 u5 + u1 u4 + u2 u3 and
det(x G - H) = N(xi) f(x) / f6.

This module converts both ways (model_from_selmer, selmer_from_model),
produces the six derived quadratic forms Q_0..Q_5 of a model, and tests
equality of Selmer classes.

Quadratic forms are symmetric 6x6 matrices M with q(u) = (1/2) u^T M u.
"""

from math import gcd

from gmpy2 import mpq

from .etale import EtaleAlgebra, EtaleElt
from .kummer import standard_g_matrix, standard_triple, vector_to_skew
from .linalg import det_field, det_ring, mat_mul, mat_transpose, mat_vec, solve_field
from .polys import upoly_derivative
from .rationals import rational
from .skew import pfaffian4
from .splitting import solve_square_class


class SelmerRep:
    """A pair (xi, m) with N(xi) = m^2, representing a class in L*/Q* L*2."""

    def __init__(self, algebra, xi, m):
        self.algebra = algebra
        self.xi = xi if isinstance(xi, EtaleElt) else algebra.element(xi)
        self.m = rational(m)
        if self.xi.norm() != self.m * self.m:
            raise ValueError("norm of xi must equal m^2")
        if self.m == 0:
            raise ValueError("xi must be a unit")

    def __mul__(self, other):
        return SelmerRep(self.algebra, self.xi * other.xi, self.m * other.m)

    def is_trivial(self, prime=None, seed=0):
        return solve_square_class(self.algebra, self.xi, self.m,
                                  prime=prime, seed=seed) is not None

    def equals(self, other, prime=None, seed=0):
        return (self * other).is_trivial(prime=prime, seed=seed)

    def __repr__(self):
        return "SelmerRep(xi=%s, m=%s)" % (list(self.xi.coeffs), self.m)


class Model:
    """A model (G, H) with standard G, given by the matrix of H."""

    def __init__(self, algebra, hmat):
        self.algebra = algebra
        self.hmat = [[rational(c) for c in row] for row in hmat]
        self.gmat = standard_g_matrix()

    def transformed(self, p):
        """Model with forms pulled back along u -> P u (requires that the
        standard G is preserved)."""
        pt = mat_transpose(p)
        g2 = mat_mul(mat_mul(pt, self.gmat), p)
        if g2 != self.gmat:
            raise ValueError("transformation does not preserve G")
        return Model(self.algebra, mat_mul(mat_mul(pt, self.hmat), p))

    def reversed(self):
        """Coordinate reversal u_i -> u_{5-i}; swaps the class by c."""
        r = standard_g_matrix()
        return Model(self.algebra, mat_mul(mat_mul(r, self.hmat), r))

    def char_check(self):
        """det(x G - H) must equal -c^2 f(x) / f6 for a constant c in Q*."""
        from .rationals import is_square_rational

        f = self.algebra.f
        scale = None
        for x in (mpq(0), mpq(1), mpq(-1), mpq(2), mpq(-2), mpq(3), mpq(5), mpq(7)):
            m = [[x * self.gmat[i][j] - self.hmat[i][j] for j in range(6)]
                 for i in range(6)]
            lhs = det_field(m)
            rhs = -sum(c * x ** k for k, c in enumerate(f)) / f[6]
            if rhs == 0:
                continue
            ratio = lhs / rhs
            if scale is None:
                scale = ratio
                if not is_square_rational(ratio):
                    return False
            elif ratio != scale:
                return False
        return True


def standard_model(algebra):
    _, hmat, _ = standard_triple(algebra.f)
    return Model(algebra, hmat)


def q_form_matrices(model):
    """Matrices N_0..N_5 of the derived forms, Q_j(u) = (1/2) u^T N_j u."""
    f = model.algebra.f
    g, h = model.gmat, model.hmat
    ginv_h = mat_mul(g, h)   # the standard G is an involution
    out = []
    for j in range(6):
        acc = [[mpq(0)] * 6 for _ in range(6)]
        power = [row[:] for row in g]
        for i in range(j + 1, 7):
            if f[i]:
                for a in range(6):
                    for b in range(6):
                        acc[a][b] += f[i] * power[a][b]
            if i < 6:
                power = mat_mul(power, ginv_h)
        out.append([[2 * acc[a][b] / f[6] for b in range(6)] for a in range(6)])
    return out


def q_form_matrices_from_xi(algebra, xi):
    """The same matrices computed directly from xi, via the trace form
    Q_j(u) = Tr(xi beta_j u(theta)^2 / f'(theta))."""
    f = algebra.f
    fp = upoly_derivative(f)
    fp_elt = algebra.zero()
    th = algebra.theta()
    for k, c in enumerate(fp):
        fp_elt = fp_elt + algebra.element([0] * k + [c])
    base = xi / fp_elt
    out = []
    for j in range(6):
        beta = algebra.zero()
        for i in range(j + 1, 7):
            if f[i]:
                beta = beta + algebra.element([0] * (i - j - 1) + [f[i]])
        c = base * beta
        mat = [[mpq(0)] * 6 for _ in range(6)]
        powers = [algebra.one()]
        for _ in range(10):
            powers.append(powers[-1] * th)
        for a in range(6):
            for b in range(6):
                mat[a][b] = (c * powers[a + b]).trace()
        out.append([[2 * mat[a][b] for b in range(6)] for a in range(6)])
    return out


def xi_m_at(algebra, n_mats, u0):
    """Specialise the pencil pair (Xi, M) at a rational vector u0, giving a
    representative (xi, m); u0 must avoid the vanishing locus of M."""
    u0 = [rational(c) for c in u0]
    coeffs = []
    rows = []
    for n in n_mats:
        v = mat_vec(n, u0)
        rows.append([x / 2 for x in v])
        coeffs.append(sum(a * b for a, b in zip(u0, v)) / 2)
    m = det_field(rows)
    if m == 0:
        return None
    xi = algebra.element(coeffs)
    return SelmerRep(algebra, xi, m)


def selmer_from_model(model):
    """Recover the class (xi, m) of a model from the kernel of theta G - H."""
    alg = model.algebra
    th = alg.theta()
    one = alg.one()
    m = [[th * model.gmat[i][j] - one * model.hmat[i][j] for j in range(6)]
         for i in range(6)]
    v = _adjugate_column(m)
    v = _strip_rational_content(v)
    a = vector_to_skew(v)
    fp = upoly_derivative(alg.f)
    fp_elt = alg.element(list(fp))
    xi = pfaffian4(a) / fp_elt
    nmat = [[mpq(0)] * 6 for _ in range(6)]
    for j in range(6):
        for i in range(6):
            nmat[i][j] = v[j].coeffs[i]
    # sign pinned so that the untwisted model recovers m = +1, matching the
    # matrix-product normalisation of m
    mval = -det_field(nmat) / (2 * alg.f[6]) ** 3
    return SelmerRep(alg, xi, mval)


def _strip_rational_content(v):
    """Divide a kernel vector by the gcd of all its rational coordinates.

    Scaling the kernel vector by a nonzero rational changes (xi, m) by
    (r^2, r^6), which does not change the class, but keeps entries small.
    """
    nums = []
    dens = []
    for elt in v:
        for c in elt.coeffs:
            if c != 0:
                nums.append(abs(c.numerator))
                dens.append(abs(c.denominator))
    if not nums:
        return v
    g = 0
    for n in nums:
        g = gcd(g, n)
    l = 1
    for d in dens:
        l = l * d // gcd(l, d)
    scale = mpq(l, g)
    return [elt * scale for elt in v]


def _adjugate_column(m):
    """A nonzero kernel column of a rank-5 matrix over L, via cofactors."""
    n = len(m)
    for col in range(n):
        rows = [r for r in range(n) if r != col]
        v = []
        nonzero = False
        for k in range(n):
            cols = [c for c in range(n) if c != k]
            sub = [[m[r][c] for c in cols] for r in rows]
            d = det_ring(sub)
            if (col + k) % 2:
                d = -d
            v.append(d)
            nonzero = nonzero or not d.is_zero()
        if nonzero:
            return v
    raise ValueError("matrix has rank < 5")


def model_from_selmer(selmer, hints=(), prime=None, seed=0):
    """Build a model whose class is the given representative.

    When the class of (xi, m) can be trivialised as xi = r nu^2, the
    coefficient vectors of nu^{-1}, nu^{-1} theta, nu^{-1} theta^2 span a
    totally isotropic 3-space of the derived form G_xi (the products have
    theta-degree at most 4, so their top coefficient vanishes); hyperbolic
    completion of that space gives the change of coordinates explicitly.
    Otherwise the class is matched against the supplied hints, which are
    (SelmerRep, Model) pairs for known classes.
    """
    alg = selmer.algebra
    sol = solve_square_class(alg, selmer.xi, selmer.m, prime=prime, seed=seed)
    if sol is None:
        # (xi, -m) differs from (xi, m) by the hyperelliptic class, which is
        # realised by reversing the coordinates; the same isotropic space
        # works, and the determinant branch below picks the right model.
        sol = solve_square_class(alg, selmer.xi, -selmer.m, prime=prime,
                                 seed=seed)
    if sol is None:
        for rep, model in hints:
            if selmer.equals(rep, prime=prime, seed=seed):
                return model
            flipped = SelmerRep(alg, rep.xi, -rep.m)
            if selmer.equals(flipped, prime=prime, seed=seed):
                return model.reversed()
        raise ValueError(
            "class is neither trivial nor among the supplied hint models")
    _, nu = sol
    nu_inv = nu.inverse()
    th = alg.theta()
    iso = []
    for k in range(3):
        elt = nu_inv * th ** k if k else nu_inv
        iso.append([mpq(c) for c in elt.coeffs])
    n_mats = q_form_matrices_from_xi(alg, selmer.xi)
    gm = [[c / 2 for c in row] for row in n_mats[5]]   # matrix of G_xi
    hm = [[(alg.f[6] * n_mats[4][i][j] - alg.f[5] * n_mats[5][i][j]) / (2 * alg.f[6])
           for j in range(6)] for i in range(6)]
    t = _hyperbolic_completion(gm, iso)
    tt = mat_transpose(t)
    model = Model(alg, mat_mul(mat_mul(tt, hm), t))
    # det(T)^2 = 1/N(xi) = 1/m^2, and the sign of det(T) m distinguishes the
    # two classes realised by the pencil: m itself versus -m (differing by
    # the hyperelliptic class).  Reversing the coordinate order flips it.
    dt = det_field(t)
    if dt * selmer.m == 1:
        return model
    if dt * selmer.m == -1:
        return model.reversed()
    raise ArithmeticError("could not match the class of the constructed model")


def _hyperbolic_completion(gm, iso):
    """T with T^T gm T the standard hyperbolic matrix, given a totally
    isotropic 3-space (basis `iso`) of the form with matrix gm.

    B(x, y) = x^T gm y is the polarisation, so B(v, v) = 2 G(v).
    """
    def b(x, y):
        return sum(x[i] * sum(gm[i][j] * y[j] for j in range(6)) for i in range(6))

    for v1 in iso:
        for v2 in iso:
            if b(v1, v2) != 0:
                raise ValueError("subspace is not totally isotropic")
    # dual vectors: B(v_i, w_j) = delta_ij  (B is nondegenerate)
    rows = [[sum(gm[i][j] * v[j] for j in range(6)) for i in range(6)] for v in iso]
    duals = []
    for k in range(3):
        rhs = [mpq(1) if i == k else mpq(0) for i in range(3)]
        duals.append(_solve_underdetermined(rows, rhs))
    # correct the duals by elements of the isotropic space so they become
    # isotropic and mutually orthogonal
    corr = [[b(duals[i], duals[j]) / 2 for j in range(3)] for i in range(3)]
    ws = []
    for j in range(3):
        w = duals[j][:]
        for k in range(3):
            for i in range(6):
                w[i] -= corr[j][k] * iso[k][i]
        ws.append(w)
    cols = [iso[0], iso[1], iso[2], ws[2], ws[1], ws[0]]
    t = [[cols[j][i] for j in range(6)] for i in range(6)]
    if mat_mul(mat_mul(mat_transpose(t), gm), t) != standard_g_matrix():
        raise ArithmeticError("hyperbolic completion failed")
    return t


def _solve_underdetermined(rows, rhs):
    """One solution x of a full-rank underdetermined system rows . x = rhs."""
    from .linalg import kernel_field

    m = len(rows)
    n = len(rows[0])
    aug = [row[:] + [rhs[k]] for k, row in enumerate(rows)]
    # gaussian elimination with column pivots
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        scale = aug[r][c]
        aug[r] = [x / scale for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                fac = aug[i][c]
                aug[i] = [x - fac * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if r < m:
        raise ArithmeticError("system is not full rank")
    x = [mpq(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x
