"""Problem-file ingestion and validation.

A problem file is a JSON object:

    {
      "curve": ["f0", ..., "f6"],             seven rationals, f6 != 0
      "selmer": [{"label": ..., "xi": [six rationals], "m": rational,
                  "basis": true}, ...],
      "models": [{"label": ..., "h": [21 rationals]}, ...],     optional
      "deficient_places": [3, "inf"],                           optional
      "mw_points": [[four rationals], ...],                     optional
      "options": {"prime": ..., "precision": ...,
                  "height_bound": ..., "seed": ...}             optional
    }

Rationals are decimal strings "p/q" (or plain integers).  A model entry
lists the coefficients h_ij (i <= j, row-major) of the quadratic form H
in u_0..u_5; its label must match a selmer entry, and the pair (G, H)
must satisfy the determinant condition det(xG - H) = -c^2 f(x)/f6.
A selmer entry with "basis": false supplies a known class/model (for
example a sum of generators) without adding it to the pairing basis.
"""

import json

from gmpy2 import mpq

from .etale import EtaleAlgebra
from .kummer import quad_form_matrix
from .models import Model, SelmerRep
from .polys import MPoly, upoly_derivative, upoly_gcd


class ProblemError(ValueError):
    """A malformed or inconsistent problem file; the message carries the
    field path."""


_TRIANGLE = [(i, j) for i in range(6) for j in range(i, 6)]

_DEFAULT_OPTIONS = {"prime": None, "precision": 24,
                    "height_bound": 8, "seed": 0, "tries": 60}


def _rat(value, path):
    try:
        if isinstance(value, bool):
            raise ValueError
        if isinstance(value, (int, str)):
            return mpq(value)
    except ValueError:
        pass
    raise ProblemError("%s: expected a rational as integer or \"p/q\" "
                       "string, got %r" % (path, value))


def _rat_list(values, n, path):
    if not isinstance(values, list) or len(values) != n:
        raise ProblemError("%s: expected a list of %d rationals" % (path, n))
    return [_rat(v, "%s[%d]" % (path, i)) for i, v in enumerate(values)]


def _place(value, path):
    if value in ("inf", "oo", None):
        return None
    if isinstance(value, int) and value >= 2:
        return value
    raise ProblemError("%s: expected a prime or \"inf\", got %r"
                       % (path, value))


def model_matrix(h_coeffs):
    """Half-bilinear matrix of the quadratic form with the given
    upper-triangle coefficients."""
    poly = MPoly(6)
    for (i, j), c in zip(_TRIANGLE, h_coeffs):
        mono = tuple((2 if k == i else 0) if i == j
                     else (1 if k in (i, j) else 0) for k in range(6))
        poly = poly + MPoly(6, {mono: mpq(c)})
    return quad_form_matrix(poly)


def model_triangle(model):
    """Inverse of model_matrix: the 21 quadratic-form coefficients."""
    h = model.hmat
    return [h[i][j] / 2 if i == j else h[i][j] for i, j in _TRIANGLE]


class Problem:
    """A validated problem: the curve, the Selmer representatives, any
    supplied models, and the run options."""

    def __init__(self, curve, gens, models, deficient_places, mw_points,
                 options, aux=()):
        self.curve = curve
        self.algebra = EtaleAlgebra(curve)
        self.gens = gens                    # [(label, SelmerRep)], the basis
        self.aux = list(aux)                # labelled non-basis classes
        self.models = models                # {label: Model}
        self.deficient_places = deficient_places
        self.mw_points = mw_points
        self.options = options

    def hints(self):
        by_label = dict(self.gens + self.aux)
        return [(by_label[label], model)
                for label, model in self.models.items()]


def load_problem(path, overrides=None):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as err:
        raise ProblemError("cannot read %s: %s" % (path, err))
    except json.JSONDecodeError as err:
        raise ProblemError("%s is not valid JSON: %s" % (path, err))
    if not isinstance(raw, dict):
        raise ProblemError("top level: expected an object")

    curve = _rat_list(raw.get("curve"), 7, "curve")
    if curve[6] == 0:
        raise ProblemError("curve: leading coefficient f6 must be nonzero")
    g = upoly_gcd(curve, upoly_derivative(curve))
    if len(g) > 1:
        raise ProblemError("curve: the sextic must be squarefree")
    algebra = EtaleAlgebra(curve)

    gens = []
    aux = []
    labels = set()
    for k, entry in enumerate(raw.get("selmer", [])):
        path_k = "selmer[%d]" % k
        if not isinstance(entry, dict) or "label" not in entry:
            raise ProblemError(path_k + ": expected {label, xi, m}")
        label = str(entry["label"])
        if label in labels:
            raise ProblemError(path_k + ": duplicate label %r" % label)
        labels.add(label)
        xi = _rat_list(entry.get("xi"), 6, path_k + ".xi")
        m = _rat(entry.get("m"), path_k + ".m")
        try:
            rep = SelmerRep(algebra, xi, m)
        except ValueError as err:
            raise ProblemError("%s (%r): %s" % (path_k, label, err))
        if entry.get("basis", True):
            gens.append((label, rep))
        else:
            aux.append((label, rep))
    if not gens:
        raise ProblemError("selmer: at least one basis element is required")

    models = {}
    for k, entry in enumerate(raw.get("models", [])):
        path_k = "models[%d]" % k
        if not isinstance(entry, dict) or "label" not in entry:
            raise ProblemError(path_k + ": expected {label, h}")
        label = str(entry["label"])
        if label not in labels:
            raise ProblemError(path_k + ": unknown label %r" % label)
        h = _rat_list(entry.get("h"), 21, path_k + ".h")
        model = Model(algebra, model_matrix(h))
        if not model.char_check():
            raise ProblemError(
                path_k + (" (%r): det(xG - H) is not a square multiple "
                          "of -f(x)/f6" % label))
        models[label] = model

    deficient = raw.get("deficient_places")
    if deficient is not None:
        deficient = [_place(v, "deficient_places[%d]" % i)
                     for i, v in enumerate(deficient)]

    mw_points = [_rat_list(v, 4, "mw_points[%d]" % i)
                 for i, v in enumerate(raw.get("mw_points", []))]

    options = dict(_DEFAULT_OPTIONS)
    for key, val in (raw.get("options") or {}).items():
        if key not in options:
            raise ProblemError("options.%s: unknown option" % key)
        options[key] = val
    for key, val in (overrides or {}).items():
        if val is not None:
            options[key] = val
    return Problem(curve, gens, models, deficient, mw_points, options,
                   aux=aux)


def cassels_image(algebra, kummer_point):
    """The pair (xi, m) that the degree-zero class of a Kummer-coordinate
    point maps to: xi = x x' - (x + x') theta + theta^2 for a point with
    coordinates (1 : x + x' : x x' : *).  The sign of m is not determined
    by the coordinates; both candidates are returned."""
    k = [mpq(c) for c in kummer_point]
    if k[0] == 0:
        raise ValueError("point must have nonzero first coordinate")
    from .rationals import sqrt_rational

    xi = algebra.element([k[2] / k[0], -k[1] / k[0], 1])
    m = sqrt_rational(xi.norm())
    if m is None:
        raise ValueError("norm of (x - theta)(x' - theta) is not a square; "
                         "the point does not come from a rational divisor")
    return [SelmerRep(algebra, xi, m), SelmerRep(algebra, xi, -m)]
