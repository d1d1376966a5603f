"""Small exact dense linear algebra.

Matrices are tuples of row tuples.  The division-free operations (product,
determinant by cofactor expansion, adjugate) work over any commutative ring
element type: Fraction, float, complex, or LaurentPoly.  Rank, solving and
subspace work require a field and are written for Fraction entries.

Everything here is sized for n <= 6; no attempt at asymptotic cleverness.
"""

from fractions import Fraction


class LinAlgError(ArithmeticError):
    pass


def mat(rows):
    rows = tuple(tuple(r) for r in rows)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise LinAlgError("ragged rows")
    return rows


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(a):
    return tuple(zip(*a))


def mat_mul(a, b):
    a, b = mat(a), mat(b)
    if len(a[0]) != len(b):
        raise LinAlgError(f"shape mismatch {len(a)}x{len(a[0])} * {len(b)}x{len(b[0])}")
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_scale(s, a):
    return tuple(tuple(s * x for x in row) for row in a)


def mat_prod(ms, n=None):
    """Product of a sequence of square matrices, left to right."""
    ms = list(ms)
    if not ms:
        if n is None:
            raise LinAlgError("empty product needs a dimension")
        return identity(n)
    out = mat(ms[0])
    for m in ms[1:]:
        out = mat_mul(out, m)
    return out


def _minor(a, i, j):
    return tuple(
        tuple(x for jj, x in enumerate(row) if jj != j)
        for ii, row in enumerate(a)
        if ii != i
    )


def det(a):
    a = mat(a)
    n = len(a)
    if n == 0 or len(a[0]) != n:
        raise LinAlgError("determinant needs a nonempty square matrix")
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    out = None
    for j in range(n):
        piece = a[0][j] * det(_minor(a, 0, j))
        if j % 2:
            piece = -piece
        out = piece if out is None else out + piece
    return out


def adjugate(a):
    """Transpose of the cofactor matrix; a * adj(a) = det(a) * I, no division."""
    a = mat(a)
    n = len(a)
    if n == 1:
        return ((Fraction(1),),)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            c = det(_minor(a, j, i))
            if (i + j) % 2:
                c = -c
            row.append(c)
        out.append(tuple(row))
    return tuple(out)


def is_scalar_matrix(a):
    """Return the scalar c when a == c*I with c != 0, else None."""
    a = mat(a)
    n = len(a)
    c = a[0][0]
    if c == 0:
        return None
    for i in range(n):
        for j in range(n):
            if i == j:
                if a[i][j] != c:
                    return None
            elif a[i][j] != 0:
                return None
    return c


def proj_eq(a, b):
    """Projective equality: a == scalar * b with nonzero scalar."""
    a, b = mat(a), mat(b)
    if len(a) != len(b) or len(a[0]) != len(b[0]) or len(a) != len(a[0]):
        return False
    return is_scalar_matrix(mat_mul(a, adjugate(b))) is not None


# -- Fraction-field routines ------------------------------------------------


def _frac_rows(rows):
    return [[x if isinstance(x, Fraction) else Fraction(x) for x in r] for r in rows]


def rref(rows):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    m = _frac_rows(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def row_space(rows):
    """Canonical form of a row span: pivot-normalized echelon rows, no zeros.

    Two row sets span the same subspace iff their canonical forms are equal.
    """
    m, pivots = rref(rows)
    return tuple(tuple(m[i]) for i in range(len(pivots)))


def nullspace(rows):
    """Basis (list of tuples) of {x : rows . x = 0}, column-vector convention."""
    m, pivots = rref(rows)
    if not rows:
        return []
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(tuple(v))
    return basis


def solve(a_rows, b):
    """One solution x of A x = b over Fraction, or None if inconsistent."""
    a = _frac_rows(a_rows)
    b = [x if isinstance(x, Fraction) else Fraction(x) for x in b]
    aug = [row + [bv] for row, bv in zip(a, b)]
    m, pivots = rref(aug)
    ncols = len(a[0]) if a else 0
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = m[r][ncols]
    return tuple(x)


def intersect_row_spaces(a_rows, b_rows):
    """Canonical basis of rowspace(A) ∩ rowspace(B)."""
    a = row_space(a_rows)
    b = row_space(b_rows)
    if not a or not b:
        return ()
    # u.A = v.B  <=>  [A^T | -B^T] (u;v) = 0
    at = transpose(a)
    bt = transpose(b)
    sys_rows = [list(ra) + [-x for x in rb] for ra, rb in zip(at, bt)]
    combos = nullspace(sys_rows)
    p = len(a)
    ncols = len(a[0])
    vecs = []
    for c in combos:
        u = c[:p]
        w = tuple(sum(u[i] * a[i][j] for i in range(p)) for j in range(ncols))
        vecs.append(w)
    return row_space(vecs) if vecs else ()


def canonical_vector(v):
    """Scale so the first nonzero coordinate is 1; canonical line representative."""
    v = tuple(x if isinstance(x, Fraction) else Fraction(x) for x in v)
    lead = next((x for x in v if x != 0), None)
    if lead is None:
        raise LinAlgError("zero vector has no canonical form")
    return tuple(x / lead for x in v)
