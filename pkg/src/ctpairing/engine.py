"""End-to-end pairing computations.

Builds the full pairing matrix over a basis of 2-Selmer representatives:
each entry is a sum of local Hilbert symbols (a, gamma(P_v))_v, with the
diagonal filled in through the identity <x, x> = <x, c> for the canonical
class c = (1, -1), and derives the resulting rank bound.
"""

from gmpy2 import mpq

from .etale import EtaleAlgebra
from .form222 import gamma_form
from .localsym import (contributing_places, local_symbol, pushout_value,
                       surface_points)
from .models import Model, SelmerRep, model_from_selmer
from .padic import PrecisionError
from .polys import upoly_rational_factors, upoly_degree
from .rationals import squarefree_part
from .twisted import twisted_kummer


class ParityInconsistency(ArithmeticError):
    """The computed matrix contradicts the deficiency parity constraint."""


class EntryResult:
    """One pairing value together with how it was obtained."""

    __slots__ = ("value", "provenance", "point", "a", "gamma", "table",
                 "detail")

    def __init__(self, value, provenance, point=None, a=None, gamma=None,
                 table=None, detail=""):
        self.value = value
        self.provenance = provenance
        self.point = point
        self.a = a
        self.gamma = gamma
        self.table = table or []
        self.detail = detail


# Contraction vectors tried, in order, when specialising the three-model
# form; the first generic one wins.
_CVECS = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
          (1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1), (1, 1, 1, 1)]


def _entry_attempt(model_a, model_b, model_ab, point, cvec, prime,
                   precision, seed, tries):
    """The pairing value from one (rational point, contraction) choice."""
    f = model_a.algebra.f
    aval = pushout_value(f, model_b.hmat, [mpq(c) for c in point])
    if aval == 0:
        return None
    a = squarefree_part(aval)
    if a == 1:
        # every local symbol (1, *) vanishes
        return EntryResult(0, "computed", point=point, a=a, table=[])
    gamma = gamma_form(model_a, model_b, model_ab, point, cvec,
                       prime=prime, precision=precision, seed=seed)
    if not gamma.coeffs:
        return None
    places = contributing_places(f, a, hmats=[model_a.hmat], gammas=[gamma])
    total = 0
    table = []
    for place in places:
        data = local_symbol(model_a, gamma, a, place,
                            precision=precision, seed=seed, tries=tries)
        total ^= data.symbol
        table.append(data)
    return EntryResult(total, "computed", point=point, a=a, gamma=gamma,
                       table=table)


def pairing_entry(model_a, model_b, model_ab, prime=None, precision=24,
                  height_bound=8, seed=0, tries=60, max_points=6,
                  max_cvecs=4):
    """<a, b> computed from a rational point on the twisted Kummer
    surface of b.  Raises ArithmeticError when no usable point is found."""
    surface = twisted_kummer(model_b)
    errors = []
    used = 0
    for point in surface_points(surface, height_bound):
        if used >= max_points:
            break
        if surface.evaluate([mpq(c) for c in point]) != 0:
            continue
        used += 1
        for cvec in _CVECS[:max_cvecs]:
            try:
                res = _entry_attempt(model_a, model_b, model_ab, point,
                                     cvec, prime, precision, seed, tries)
            except (ArithmeticError, PrecisionError) as err:
                errors.append(str(err))
                continue
            if res is not None:
                return res
    raise ArithmeticError(
        "no usable rational point on the twisted Kummer surface"
        + (": " + "; ".join(sorted(set(errors))) if errors else ""))


class PairingContext:
    """Shared state for computing many entries over one algebra: the model
    hints, the canonical class, and the search options."""

    def __init__(self, algebra, hints=(), prime=None, precision=24,
                 height_bound=8, seed=0, tries=60):
        self.algebra = algebra
        self.hints = list(hints)
        self.prime = prime
        self.precision = precision
        self.height_bound = height_bound
        self.seed = seed
        self.tries = tries
        self.canonical = SelmerRep(algebra, algebra.one(), mpq(-1))
        self._cache = {}

    def model_for(self, rep):
        key = (tuple(rep.xi.coeffs), rep.m)
        if key not in self._cache:
            self._cache[key] = model_from_selmer(
                rep, hints=self.hints, prime=self.prime, seed=self.seed)
        return self._cache[key]

    def entry(self, rep_a, rep_b):
        """<a, b>, trying both orderings of the arguments."""
        errors = []
        rep_ab = rep_a * rep_b
        model_ab = self.model_for(rep_ab)
        for first, second in ((rep_a, rep_b), (rep_b, rep_a)):
            try:
                return pairing_entry(
                    self.model_for(first), self.model_for(second), model_ab,
                    prime=self.prime, precision=self.precision,
                    height_bound=self.height_bound, seed=self.seed,
                    tries=self.tries)
            except (ArithmeticError, PrecisionError) as err:
                errors.append(str(err))
        raise ArithmeticError("entry could not be computed: "
                              + "; ".join(errors))


def canonical_is_trivial(f_coeffs):
    """The canonical class is trivial exactly when the sextic has an
    irreducible factor of odd degree."""
    return any(upoly_degree(g) % 2 == 1
               for g in upoly_rational_factors(list(f_coeffs)))


def torsion_two_dim(f_coeffs):
    """dim_F2 of the rational 2-torsion of the Jacobian, from the factor
    degrees of the sextic."""
    degs = [upoly_degree(g) for g in upoly_rational_factors(list(f_coeffs))]
    return len(degs) - 2 + (1 if all(d % 2 == 0 for d in degs) else 0)


def pairing_matrix(ctx, gens):
    """The full symmetric pairing matrix over the given basis.

    gens is a list of (label, SelmerRep).  Off-diagonal entries between
    distinct non-canonical classes are computed directly; the diagonal is
    <x, c>, and any row/column at the canonical class c repeats the
    diagonal.  Entries that cannot be computed are left as None and the
    failure reason is recorded.
    """
    n = len(gens)
    reps = [rep for _, rep in gens]
    canonical = ctx.canonical
    is_c = [rep.equals(canonical, prime=ctx.prime, seed=ctx.seed)
            for rep in reps]
    c_trivial = canonical_is_trivial(ctx.algebra.f)
    entries = [[None] * n for _ in range(n)]

    def put(i, j, res):
        entries[i][j] = res
        if entries[j][i] is None and i != j:
            entries[j][i] = EntryResult(res.value, "inferred (symmetry)",
                                        detail=res.detail)

    def failed(msg):
        return EntryResult(None, "unresolved", detail=msg)

    # diagonal entries: <x, x> = <x, c>
    for i in range(n):
        if is_c[i]:
            continue
        if c_trivial:
            put(i, i, EntryResult(0, "inferred (canonical class trivial)"))
            continue
        try:
            put(i, i, ctx.entry(reps[i], canonical))
        except ArithmeticError as err:
            put(i, i, failed(str(err)))
    # entries against the canonical class repeat the diagonal
    for k in range(n):
        if not is_c[k]:
            continue
        for i in range(n):
            if i == k:
                continue
            src = entries[i][i]
            res = EntryResult(src.value, "inferred (pairing with the "
                              "canonical class equals the diagonal)",
                              detail=src.detail)
            entries[i][k] = res
            entries[k][i] = EntryResult(res.value, "inferred (symmetry)",
                                        detail=res.detail)
        if entries[k][k] is None:
            try:
                entries[k][k] = ctx.entry(canonical, canonical)
            except ArithmeticError as err:
                entries[k][k] = failed(str(err))
    # remaining off-diagonal entries
    for i in range(n):
        for j in range(i + 1, n):
            if entries[i][j] is not None or is_c[i] or is_c[j]:
                continue
            try:
                put(i, j, ctx.entry(reps[i], reps[j]))
            except ArithmeticError as err:
                put(i, j, failed(str(err)))
                entries[j][i] = failed(str(err))
    return entries


def matrix_values(entries):
    return [[e.value if e is not None else None for e in row]
            for row in entries]


def _f2_rank(rows):
    rows = [list(r) for r in rows]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    rank = 0
    col = 0
    for col in range(m):
        piv = next((r for r in range(rank, n) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(n):
            if r != rank and rows[r][col]:
                rows[r] = [(x + y) % 2 for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


class RankReport:
    __slots__ = ("selmer_dim", "torsion_dim", "bound_before", "pairing_rank",
                 "bound_after", "complete", "parity_checked")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw.get(k))


def rank_report(values, torsion_dim, deficient_places=None):
    """Rank bound from the pairing matrix.

    bound = selmer_dim - rank(pairing) - torsion_dim; with unresolved
    entries the rank of the complete principal submatrix is still a valid
    lower bound for the rank of the pairing, so the bound remains valid.
    """
    n = len(values)
    complete = all(v is not None for row in values for v in row)
    if complete:
        rank = _f2_rank(values)
    else:
        keep = [i for i in range(n)
                if all(values[i][j] is not None and values[j][i] is not None
                       for j in range(n))]
        rank = _f2_rank([[values[i][j] for j in keep] for i in keep])
    bound_before = n - torsion_dim
    bound_after = n - rank - torsion_dim
    parity_checked = False
    if deficient_places is not None and complete:
        # the rank of the pairing is even exactly when <c, c> = 0, which
        # happens exactly when the number of deficient places is even
        if rank % 2 != len(deficient_places) % 2:
            raise ParityInconsistency(
                "pairing rank %d contradicts %d deficient places"
                % (rank, len(deficient_places)))
        parity_checked = True
    return RankReport(selmer_dim=n, torsion_dim=torsion_dim,
                      bound_before=bound_before, pairing_rank=rank,
                      bound_after=bound_after, complete=complete,
                      parity_checked=parity_checked)
