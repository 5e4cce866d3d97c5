"""Small exact linear algebra over the integers and rationals.

Matrices are lists of rows.  Nothing here ever touches a float; integer
inputs stay integers wherever the algorithm allows it (Bareiss
elimination, column Hermite reduction), everything else goes through
:class:`fractions.Fraction`.
"""

from fractions import Fraction
from math import gcd


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vecmat(v, m):
    """Row vector times matrix, ``v . M``."""
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0])))


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def scale(c, v):
    return tuple(c * x for x in v)


def det(m):
    """Exact determinant.

    Integer matrices use fraction-free Bareiss elimination so every
    intermediate value stays an integer; anything else falls back to
    Gaussian elimination over Fraction.
    """
    n = len(m)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in m for x in row):
        return _det_bareiss(m)
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        result *= piv
        for r in range(c + 1, n):
            f = a[r][c] / piv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return sign * result


def _det_bareiss(m):
    n = len(m)
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rref(rows):
    """Reduced row echelon form over Q. Returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(rows):
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows):
    """Basis of the right kernel {x : A x = 0} as tuples of Fractions."""
    ncols = len(rows[0])
    a, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -a[i][f]
        basis.append(tuple(x))
    return basis


def solve(a, b):
    """Solve the consistent system ``A x = b`` exactly.

    ``A`` may be non-square; the system must have a unique solution.
    Raises ValueError when it is inconsistent or underdetermined.
    """
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    r, pivots = rref(aug)
    n = len(a[0])
    if n in pivots:
        raise ValueError("inconsistent system")
    if len(pivots) < n:
        raise ValueError("system does not have a unique solution")
    return tuple(r[i][n] for i in range(n))


def inverse(m):
    n = len(m)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in r[:n]]


def adjugate(m):
    """Integer adjugate of an integer matrix together with its determinant."""
    d = det(m)
    if d == 0:
        raise ValueError("singular matrix")
    inv = inverse(m)
    adj = [[x * d for x in row] for row in inv]
    return [[int(x) for x in row] for row in adj], d


def int_inverse(m):
    """Inverse of a unimodular integer matrix, as integers."""
    adj, d = adjugate(m)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return [[x * d for x in row] for row in adj]


def xgcd(a, b):
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def gcd_all(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def primitive(v):
    g = gcd_all(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def hermite_columns(a):
    """Column-style Hermite normal form of an integer matrix of full row rank.

    Returns ``(H, U)`` with ``A . U = H``, ``U`` unimodular, and
    ``H = [L | 0]`` where ``L`` is lower triangular with a positive
    diagonal and ``0 <= L[i][j] < L[i][i]`` for ``j < i``.  For a
    nonsingular square ``A`` the result is the unique representative of
    the orbit ``{A . M : M in GL_n(Z)}``.
    """
    m, n = len(a), len(a[0])
    h = [list(row) for row in a]
    u = identity(n)

    def combine(i, j, p, q, r, s):
        # (col_i, col_j) <- (p col_i + r col_j, q col_i + s col_j)
        for mat in (h, u):
            for row in mat:
                ci, cj = row[i], row[j]
                row[i] = p * ci + r * cj
                row[j] = q * ci + s * cj

    for i in range(m):
        for j in range(i + 1, n):
            b = h[i][j]
            if b == 0:
                continue
            a_ii = h[i][i]
            g, x, y = xgcd(a_ii, b)
            combine(i, j, x, -b // g, y, a_ii // g)
        if h[i][i] == 0:
            raise ValueError("matrix does not have full row rank")
        if h[i][i] < 0:
            for mat in (h, u):
                for row in mat:
                    row[i] = -row[i]
        piv = h[i][i]
        for j in range(i):
            q = h[i][j] // piv
            if q:
                for mat in (h, u):
                    for row in mat:
                        row[j] -= q * row[i]
    return h, u
