"""Exact integer and rational matrix helpers.

Matrices are lists of row lists holding ints or Fractions.  Everything here
is exact: no floats anywhere.  Sizes in this package stay small (rank 16 and
below), so clarity wins over asymptotics.
"""

from fractions import Fraction
from math import gcd


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def copy_matrix(a):
    return [row[:] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    bt = transpose(b)
    return [[sum(ra[t] * cb[t] for t in range(k)) for cb in bt] for ra in a]


def mat_vec(a, v):
    return [sum(row[i] * v[i] for i in range(len(v))) for row in a]


def vec_mat(v, a):
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0]))]


def mat_eq(a, b):
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def scalar_mul(c, a):
    return [[c * x for x in row] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def is_integer_matrix(a):
    return all(Fraction(x).denominator == 1 for row in a for x in row)


def to_int_matrix(a):
    """Cast a matrix of integral Fractions to plain ints."""
    out = []
    for row in a:
        r = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                raise ValueError("matrix entry %s is not an integer" % (x,))
            r.append(f.numerator)
        out.append(r)
    return out


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def gcd_vec(v):
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g


def det(a):
    """Determinant by fraction-free Bareiss elimination (integer input)."""
    n = len(a)
    if n == 0:
        return 1
    m = [[int(x) for x in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def frac_det(a):
    """Determinant over the rationals."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    d = Fraction(1)
    for k in range(n):
        piv = None
        for i in range(k, n):
            if m[i][k] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            d = -d
        d *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] * inv
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return d


def frac_inverse(a):
    """Exact inverse of a square matrix, as Fractions.  Raises on singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for k in range(n):
        piv = None
        for i in range(k, n):
            if m[i][k] != 0:
                piv = i
                break
        if piv is None:
            raise ValueError("matrix is singular")
        m[k], m[piv] = m[piv], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return [row[n:] for row in m]


def frac_solve(a, rhs):
    """Solve a x = rhs exactly; a square nonsingular, rhs a vector."""
    inv = frac_inverse(a)
    return mat_vec(inv, rhs)


def smith_normal_form(m):
    """Smith normal form with transforms.

    Returns (d, u, v) with u * m * v == d, u and v unimodular, and d diagonal
    with nonnegative entries d[0][0] | d[1][1] | ...
    """
    a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):
        # row_i += c * row_j
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, c):
        # col_i += c * col_j
        for row in a:
            row[i] += c * row[j]
        for row in v:
            row[i] += c * row[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # find a pivot of smallest absolute value in the remaining block
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    best = x
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        # clear row and column t; restart if a remainder creates a smaller entry
        dirty = False
        for i in range(t + 1, rows):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                add_row(i, t, -q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                add_col(j, t, -q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block by the pivot
        d = a[t][t]
        culprit = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % d:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            add_row(t, culprit, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    return a, u, v


def kernel_basis(m):
    """Basis of the integer kernel {x : m x = 0}, as a list of row vectors.

    The returned basis spans a saturated (primitive) sublattice of Z^n.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if rows == 0:
        return [list(r) for r in identity(cols)]
    d, _u, v = smith_normal_form(m)
    r = 0
    for i in range(min(rows, cols)):
        if d[i][i] != 0:
            r += 1
    # m (v e_j) = u^-1 d e_j = 0 exactly for the zero diagonal columns
    out = []
    for j in range(r, cols):
        out.append([v[i][j] for i in range(cols)])
    return out


def saturate_rows(m):
    """Saturation of the row span: basis of span_Q(rows) ∩ Z^n."""
    cols = len(m[0]) if m else 0
    nonzero = [row for row in m if any(row)]
    if not nonzero:
        return []
    # span_Q(rows) is the orthogonal complement (standard dot) of ker(m),
    # and the integer kernel of an integer matrix is always saturated.
    k = kernel_basis(nonzero)
    if not k:
        return [list(r) for r in identity(cols)]
    return kernel_basis(k)


def symmetric_signature(g):
    """Signature (n_plus, n_minus) of a nondegenerate symmetric matrix.

    Exact symmetric Gaussian reduction with full pivoting; raises on a
    degenerate form.
    """
    n = len(g)
    m = [[Fraction(x) for x in row] for row in g]
    plus = minus = 0
    idx = list(range(n))

    def swap(i, j):
        m[i], m[j] = m[j], m[i]
        for row in m:
            row[i], row[j] = row[j], row[i]

    k = 0
    while k < n:
        piv = None
        for i in range(k, n):
            if m[i][i] != 0:
                piv = i
                break
        if piv is None:
            # look for an off-diagonal entry and fold it onto the diagonal
            found = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if m[i][j] != 0:
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                raise ValueError("degenerate quadratic form")
            i, j = found
            # row/col i += row/col j makes the (i,i) entry 2*m[i][j] != 0
            for t in range(n):
                m[i][t] += m[j][t]
            for t in range(n):
                m[t][i] += m[t][j]
            piv = i
        if piv != k:
            swap(k, piv)
        if m[k][k] > 0:
            plus += 1
        else:
            minus += 1
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] * inv
            if f:
                for t in range(k, n):
                    m[i][t] -= f * m[k][t]
                for t in range(k, n):
                    m[t][i] = m[i][t]
        k += 1
    del idx
    return plus, minus
