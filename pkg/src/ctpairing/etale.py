"""The degree-6 etale algebra L = Q[x]/(f) attached to a sextic.

The defining sextic f = f6 x^6 + ... + f0 need not be monic or irreducible,
only squarefree with f6 != 0.  Internally elements are reduced against the
monic normalization g = f/f6, which has the same roots and hence defines the
same quotient algebra.  Norms and traces are taken over Q and computed from
the multiplication matrix of the element.
"""

from gmpy2 import mpq

from .linalg import det_field, solve_field
from .polys import (
    upoly,
    upoly_degree,
    upoly_discriminant,
    upoly_divmod,
    upoly_gcd,
    upoly_mul,
    upoly_scale,
)


class EtaleAlgebra:
    """Q[x]/(f) for a squarefree sextic f (coefficients f0..f6)."""

    def __init__(self, f_coeffs):
        f = upoly(f_coeffs)
        if upoly_degree(f) != 6:
            raise ValueError("defining polynomial must have degree 6")
        self.f = f
        self.f6 = f[-1]
        self.monic = upoly_scale(f, 1 / self.f6)
        if upoly_gcd(self.f, [c * i for i, c in enumerate(self.f)][1:] or [0]) not in ([], [mpq(1)]):
            raise ValueError("defining polynomial must be squarefree")
        self.discriminant = upoly_discriminant(f)

    def element(self, coeffs):
        """Element from a coefficient list in the power basis 1, t, ..., t^5."""
        cs = [mpq(c) for c in coeffs]
        if len(cs) > 6:
            _, cs = upoly_divmod(cs, self.monic)
        cs = list(cs) + [mpq(0)] * (6 - len(cs))
        return EtaleElt(self, tuple(cs[:6]))

    def one(self):
        return self.element([1])

    def zero(self):
        return self.element([])

    def theta(self):
        return self.element([0, 1])

    def from_rational(self, c):
        return self.element([c])

    def __eq__(self, other):
        return isinstance(other, EtaleAlgebra) and self.f == other.f

    def __repr__(self):
        return "EtaleAlgebra(%s)" % (self.f,)


class EtaleElt:
    """Element of an EtaleAlgebra, stored in the power basis."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, EtaleElt):
            if other.algebra.f != self.algebra.f:
                raise ValueError("elements of different algebras")
            return other
        return self.algebra.from_rational(other)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        return EtaleElt(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return EtaleElt(self.algebra, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, EtaleElt):
            c = mpq(other)
            return EtaleElt(self.algebra, tuple(a * c for a in self.coeffs))
        other = self._coerce(other)
        prod = upoly_mul(upoly(self.coeffs), upoly(other.coeffs))
        _, rem = upoly_divmod(prod, self.algebra.monic)
        rem = list(rem) + [mpq(0)] * (6 - len(rem))
        return EtaleElt(self.algebra, tuple(rem[:6]))

    __rmul__ = __mul__

    def __pow__(self, n):
        result = self.algebra.one()
        base = self
        n = int(n)
        if n < 0:
            base = base.inverse()
            n = -n
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.algebra.from_rational(other) / self

    def multiplication_matrix(self):
        """6x6 rational matrix of multiplication by self in the power basis."""
        cols = []
        power = self.algebra.one()
        theta = self.algebra.theta()
        for _ in range(6):
            cols.append((self * power).coeffs)
            power = power * theta
        return [[cols[j][i] for j in range(6)] for i in range(6)]

    def norm(self):
        return det_field(self.multiplication_matrix())

    def trace(self):
        m = self.multiplication_matrix()
        return sum(m[i][i] for i in range(6))

    def inverse(self):
        """Multiplicative inverse; raises ZeroDivisionError for zero divisors."""
        m = self.multiplication_matrix()
        try:
            sol = solve_field(m, [mpq(1), 0, 0, 0, 0, 0])
        except ValueError:
            raise ZeroDivisionError("element is a zero divisor in the etale algebra")
        return EtaleElt(self.algebra, tuple(sol))

    def lift(self):
        """Coefficient list (length 6) in the power basis."""
        return list(self.coeffs)

    def __repr__(self):
        return "EtaleElt(%s)" % (list(self.coeffs),)


def idempotents(algebra):
    """The primitive idempotents of L, one per irreducible factor of f,
    as pairs (e_k, g_k) with g_k the monic factor."""
    from .polys import upoly_rational_factors, upoly_xgcd

    out = []
    for g in upoly_rational_factors(algebra.monic):
        h, _ = upoly_divmod(algebra.monic, g)
        d, u, _ = upoly_xgcd(h, g)
        if d != [mpq(1)]:
            raise ValueError("defining polynomial must be squarefree")
        _, ek = upoly_divmod(upoly_mul(u, h), algebra.monic)
        out.append((algebra.element(ek), g))
    return out


def square_units(algebra):
    """All elements eps of L with eps^2 = 1, together with the degrees of the
    factors where eps is -1 (so that N(eps) = (-1)^sum(degrees))."""
    parts = [(ek, upoly_degree(g)) for ek, g in idempotents(algebra)]
    factors = parts
    idempotents_list = parts
    out = []
    for mask in range(1 << len(factors)):
        eps = algebra.zero()
        degs = []
        for k, (ek, deg) in enumerate(idempotents_list):
            if (mask >> k) & 1:
                eps = eps - ek
                degs.append(deg)
            else:
                eps = eps + ek
        out.append((eps, degs))
    return out
