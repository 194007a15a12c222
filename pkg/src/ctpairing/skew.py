"""Skew-symmetric 4x4 matrices over a commutative ring: pfaffian and star.

A skew 4x4 matrix has six independent entries.  The pfaffian satisfies
Pf(A)^2 = det(A), and the star operator exchanges a skew matrix with the
skew matrix of its complementary entries, so that A A* = A* A = Pf(A) I and
Adj(A) = Pf(A) A*.
"""


def skew4(a12, a13, a14, a23, a24, a34):
    """Build the skew matrix with the given upper-triangle entries."""
    z = a12 * 0
    return [
        [z, a12, a13, a14],
        [-a12, z, a23, a24],
        [-a13, -a23, z, a34],
        [-a14, -a24, -a34, z],
    ]


def skew4_entries(a):
    """Upper-triangle entries (a12, a13, a14, a23, a24, a34)."""
    return (a[0][1], a[0][2], a[0][3], a[1][2], a[1][3], a[2][3])


def pfaffian4(a):
    """Pfaffian of a skew 4x4 matrix."""
    return a[0][1] * a[2][3] - a[0][2] * a[1][3] + a[0][3] * a[1][2]


def star4(a):
    """Complementary-entry involution: (A*)_{12} = A_{34} etc., with signs
    arranged so that A A* = Pf(A) I."""
    a12, a13, a14, a23, a24, a34 = skew4_entries(a)
    return skew4(-a34, a24, -a23, -a14, a13, -a12)


def is_skew4(a):
    if len(a) != 4 or any(len(row) != 4 for row in a):
        return False
    for i in range(4):
        if a[i][i] != a[i][i] * 0:
            return False
        for j in range(i + 1, 4):
            if a[i][j] != -a[j][i]:
                return False
    return True
