"""Snake paths on the lattice triangle and the transport matrices T1, T2, T3.

A snake is a path of n upward tiles descending from a corner of the lattice
triangle to the opposite side.  Walking a snake through the orientation rule
of flags.snake_basis produces a projective basis; flipping snake segments
(moves I and II) multiplies that basis by explicit elementary matrices.  The
composite words, with Fock-Goncharov variables inserted at the white lattice
vertices swept by move II and at the side vertices, are the transport
matrices between the three sides of a triangle of flags.

All matrices are unnormalized projective representatives: the diagonal
factors H are stored without the determinant-fixing fractional powers, so
results are exact over the rationals and equality of transports is scalar
equality (linalg.proj_eq).  Bases are stacked as rows and matrices act by
left multiplication throughout.
"""

from fractions import Fraction

from .encode import SCHEMA, check_schema, scalar_from_json, scalar_to_json
from .errors import DomainError
from .flags import DegenerateConfiguration, interior_vertices
from .linalg import canonical_vector, mat_mul, mat_prod, solve, transpose


class IndexOutOfRange(DomainError):
    pass


class BadSegment(DomainError):
    pass


class IncompleteAssignment(DomainError):
    pass


class NonpositiveVariable(DomainError):
    pass


def _one():
    return Fraction(1)


def elem_l(n, k):
    """Row operation L_k = I + E_{k+1,k}: adds row k to row k+1 (1-indexed)."""
    if not 1 <= k <= n - 1:
        raise IndexOutOfRange(f"L_k needs 1 <= k <= {n - 1}, got {k}")
    return tuple(
        tuple(
            _one() if i == j else (_one() if (i, j) == (k, k - 1) else Fraction(0))
            for j in range(n)
        )
        for i in range(n)
    )


def elem_h(n, k, t):
    """Diagonal diag(1 x k, t x (n-k)), the unnormalized projective H_k(t)."""
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"H_k needs 1 <= k <= {n}, got {k}")
    zero = t * 0
    one = zero + 1
    return tuple(
        tuple((one if i < k else t) if i == j else zero for j in range(n))
        for i in range(n)
    )


def elem_s(n):
    """Antidiagonal reversal S with (S)_{ij} = (-1)^(n-i) delta_{i,n+1-j}."""
    return tuple(
        tuple(
            Fraction((-1) ** (n - 1 - i)) if i + j == n - 1 else Fraction(0)
            for j in range(n)
        )
        for i in range(n)
    )


# -- snakes -------------------------------------------------------------------

# axis index pairs (i, j) such that the segment from tile m+e_i to tile m+e_j
# runs clockwise around their common gray triangle
_CLOCKWISE = {(0, 1), (1, 2), (2, 0)}

_CORNER_AXIS = {0: (1, 0, 0), 1: (0, 1, 0), 2: (0, 0, 1)}


def _segment_frame(a, b):
    """For adjacent tiles a, b return (gray corner m, axis of a, axis of b)."""
    m = tuple(min(x, y) for x, y in zip(a, b))
    if sum(m) != sum(a) - 1:
        raise BadSegment(f"tiles {a} and {b} are not adjacent")
    i = next(k for k in range(3) if a[k] == m[k] + 1)
    j = next(k for k in range(3) if b[k] == m[k] + 1)
    return m, i, j


class Snake:
    """Ordered tuple of n upward tiles descending from a corner.

    The first tile touches a corner of the lattice triangle; every segment
    lowers the corner's coordinate by exactly one, which is equivalent to no
    segment running parallel to the opposite (target) side.
    """

    __slots__ = ("tiles", "n", "axis")

    def __init__(self, tiles):
        tiles = tuple(tuple(int(x) for x in t) for t in tiles)
        if not tiles:
            raise BadSegment("empty snake")
        n = sum(tiles[0]) + 1
        if len(tiles) != n:
            raise BadSegment(f"snake needs {n} tiles, got {len(tiles)}")
        for t in tiles:
            if len(t) != 3 or min(t) < 0 or sum(t) != n - 1:
                raise BadSegment(f"{t} is not an upward tile for n={n}")
        axis = next((k for k in range(3) if tiles[0][k] == n - 1), None)
        if axis is None:
            raise BadSegment(f"snake must start at a corner tile, got {tiles[0]}")
        for a, b in zip(tiles, tiles[1:]):
            _segment_frame(a, b)
            if a[axis] - b[axis] != 1:
                raise BadSegment(
                    f"segment {a} -> {b} is parallel to the target side"
                )
        object.__setattr__(self, "tiles", tiles)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "axis", axis)

    def __setattr__(self, name, value):
        raise AttributeError("Snake is immutable")

    def __eq__(self, other):
        return isinstance(other, Snake) and self.tiles == other.tiles

    def __hash__(self):
        return hash(self.tiles)

    def __repr__(self):
        return f"Snake({list(self.tiles)})"

    def segment_clockwise(self, i):
        """True when segment i (between tiles i and i+1) runs clockwise."""
        _, a, b = _segment_frame(self.tiles[i], self.tiles[i + 1])
        return (a, b) in _CLOCKWISE


def boundary_snake_12(n):
    """The side-12 snake: corner 1 to corner 2 along c = 0."""
    return Snake([(n - 1 - t, t, 0) for t in range(n)])


def boundary_snake_23(n):
    return Snake([(0, n - 1 - t, t) for t in range(n)])


def boundary_snake_31(n):
    return Snake([(t, 0, n - 1 - t) for t in range(n)])


def _flip(tiles, idx):
    """Flip tile idx across the gray triangle it spans with tile idx-1.

    Returns (new tiles, white vertex swept).  The segment into the flipped
    tile must run clockwise so that the basis change is the positive branch
    of the orientation rule.
    """
    m, i, j = _segment_frame(tiles[idx - 1], tiles[idx])
    if (i, j) not in _CLOCKWISE:
        raise BadSegment(
            f"segment {tiles[idx - 1]} -> {tiles[idx]} must be clockwise to flip"
        )
    k = 3 - i - j
    new = tuple(m[x] + (1 if x == k else 0) for x in range(3))
    white = tuple(max(a, b) for a, b in zip(tiles[idx], new))
    return tiles[:idx] + (new,) + tiles[idx + 1 :], white


def move_one(snake):
    """Flip the last segment of the snake.

    Returns (new snake, matrix).  The matrix is L_{n-1}: on a row-stacked
    basis it replaces the last vector v_n by v_n + v_{n-1}.
    """
    n = snake.n
    if n < 2:
        raise BadSegment("move I needs at least two tiles")
    tiles, _ = _flip(snake.tiles, n - 1)
    return Snake(tiles), elem_l(n, n - 1)


def move_two(snake, k, z):
    """Flip segments k and k+1 of the snake (1-indexed, 1 <= k <= n-2).

    Returns (new snake, matrix, white vertex).  The matrix is the block
    diag(I_{k-1}, ((1,0,0),(1,1,0),(0,0,z)), z I_{n-k-2}), which equals
    L_k * H_{k+1}(z); z is the Fock-Goncharov variable at the white vertex
    swept by the flip.
    """
    n = snake.n
    if not 1 <= k <= n - 2:
        raise IndexOutOfRange(f"move II needs 1 <= k <= {n - 2}, got {k}")
    tiles, white = _flip(snake.tiles, k)
    new = Snake(tiles)
    matrix = mat_mul(elem_l(n, k), elem_h(n, k + 1, z))
    return new, matrix, white


def snake_basis(config, snake, first=None):
    """Build the basis determined by a snake from a line configuration.

    Starting from ``first`` (default: the canonical generator of the line at
    the snake's first tile) each segment determines the next vector through
    the orientation rule: walking a segment from tile a to tile b across a
    gray triangle with third corner c, the new vector v_b satisfies
    v_b + v_a in line(c) for a clockwise segment and v_b - v_a in line(c)
    for a counterclockwise one.  Rows are returned in snake order.
    """
    lines = config.lines
    if config.n != snake.n:
        raise BadSegment(f"snake for n={snake.n} but config has n={config.n}")
    g0 = lines[snake.tiles[0]]
    if first is None:
        v = g0
    else:
        v = tuple(x if isinstance(x, Fraction) else Fraction(x) for x in first)
        if canonical_vector(v) != g0:
            raise DegenerateConfiguration("first vector not on the snake's first line")
    rows = [v]
    for idx in range(snake.n - 1):
        a, b = snake.tiles[idx], snake.tiles[idx + 1]
        m, i, j = _segment_frame(a, b)
        k = 3 - i - j
        gamma = tuple(m[x] + (1 if x == k else 0) for x in range(3))
        g_b, g_c = lines[b], lines[gamma]
        cw = (i, j) in _CLOCKWISE
        rhs = tuple(-x for x in rows[-1]) if cw else rows[-1]
        sol = solve(transpose((g_b, g_c)), rhs)
        if sol is None or sol[0] == 0:
            raise DegenerateConfiguration(
                f"orientation rule breaks down on segment {a} -> {b}"
            )
        rows.append(tuple(sol[0] * x for x in g_b))
    return tuple(rows)


# -- transport words ----------------------------------------------------------


def _sweep_schedule(n):
    """Chronological move list carrying side 12 to the reverse of side 31.

    Move I is applied first; then for each j the snake is pushed one rank
    deeper with moves II at descending starting position, each round closed
    by a move I.  Yields ("I",) and ("II", k) tokens.
    """
    moves = [("I",)]
    for j in range(1, n - 1):
        for k in range(n - 1 - j, n - 1):
            moves.append(("II", k))
        moves.append(("I",))
    return moves


def _rotate_key(key, times):
    a, b, c = key
    for _ in range(times % 3):
        a, b, c = c, a, b
    return (a, b, c)


def transport_word(n, which):
    """Elementary factor list for the transport matrix, in display order.

    Factors are ("S",), ("L", k) and ("H", k, vertex); the product of the
    factors left to right, with each vertex replaced by its Fock-Goncharov
    value, is the transport matrix.  which = 1 transports side 12 to side
    31; 2 and 3 are its cyclic rotations.
    """
    if n < 2:
        raise IndexOutOfRange("transport needs n >= 2")
    if which not in (1, 2, 3):
        raise IndexOutOfRange(f"which must be 1, 2 or 3, got {which}")
    tiles = boundary_snake_12(n).tiles
    units = []
    for mv in _sweep_schedule(n):
        if mv[0] == "I":
            tiles, _ = _flip(tiles, n - 1)
            units.append((("L", n - 1),))
        else:
            k = mv[1]
            tiles, white = _flip(tiles, k)
            units.append((("L", k), ("H", k + 1, white)))
    assert tiles == tuple(reversed(boundary_snake_31(n).tiles))
    word = [("S",)]
    word += [("H", n - k, (k, 0, n - k)) for k in range(1, n)]
    # moves compose right to left, so later moves sit further left; each
    # move's own factors stay in display order within the unit
    for unit in reversed(units):
        word.extend(unit)
    word += [("H", k, (n - k, k, 0)) for k in range(1, n)]
    rot = which - 1
    return [
        (f[0], f[1], _rotate_key(f[2], rot)) if f[0] == "H" else f for f in word
    ]


def side_vertices(n):
    """All side (non-corner, boundary) lattice vertices, sum n."""
    out = []
    for k in range(1, n):
        out.append((n - k, k, 0))
        out.append((0, n - k, k))
        out.append((k, 0, n - k))
    return out


class FGAssignment:
    """Fock-Goncharov variables: one positive scalar per non-corner vertex.

    Keys are the 3(n-1) side vertices and the (n-1)(n-2)/2 interior vertices
    of the sum-n lattice triangle; the constructor demands exactly that key
    set.  Values are positive scalars, or symbolic ring elements for exact
    manipulation (symbolics are only checked to be nonzero).
    """

    __slots__ = ("n", "values")

    def __init__(self, n, values):
        want = set(side_vertices(n)) | set(interior_vertices(n))
        got = {tuple(int(x) for x in k) for k in values}
        if got != want:
            missing = sorted(want - got)
            extra = sorted(got - want)
            raise IncompleteAssignment(
                f"assignment keys off for n={n}: missing {missing}, extra {extra}"
            )
        vals = {}
        for k, v in values.items():
            key = tuple(int(x) for x in k)
            _check_value(key, v)
            vals[key] = v
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("FGAssignment is immutable")

    def __getitem__(self, key):
        return self.values[tuple(key)]

    def __eq__(self, other):
        return (
            isinstance(other, FGAssignment)
            and self.n == other.n
            and self.values == other.values
        )

    def rotated(self):
        """Cyclic relabeling: the value at (a,b,c) becomes the one at (c,a,b)."""
        return FGAssignment(
            self.n, {k: self.values[_rotate_key(k, 1)] for k in self.values}
        )

    @classmethod
    def constant(cls, n, value=Fraction(1)):
        keys = side_vertices(n) + interior_vertices(n)
        return cls(n, {k: value for k in keys})

    def to_json(self):
        return {
            "schema": SCHEMA,
            "kind": "fg_assignment",
            "n": self.n,
            "values": [
                {"a": a, "b": b, "c": c, "value": scalar_to_json(v)}
                for (a, b, c), v in sorted(self.values.items())
            ],
        }

    @classmethod
    def from_json(cls, doc, mode="rational"):
        check_schema(doc, "fg_assignment")
        vals = {
            (e["a"], e["b"], e["c"]): scalar_from_json(e["value"], mode)
            for e in doc["values"]
        }
        return cls(int(doc["n"]), vals)


def _check_value(key, v):
    if isinstance(v, (int, float, Fraction)):
        if not v > 0:
            raise NonpositiveVariable(f"variable at {key} must be positive, got {v}")
    else:
        is_zero = getattr(v, "is_zero", None)
        if callable(is_zero) and is_zero():
            raise NonpositiveVariable(f"variable at {key} is zero")


def _evaluate_word(n, word, assignment):
    factors = []
    for f in word:
        if f[0] == "S":
            factors.append(elem_s(n))
        elif f[0] == "L":
            factors.append(elem_l(n, f[1]))
        else:
            factors.append(elem_h(n, f[1], assignment[f[2]]))
    return mat_prod(factors, n)


def transport(n, which, assignment):
    """Transport matrix T_which for the given Fock-Goncharov assignment.

    An exact unnormalized projective representative: T1*T2*T3 is a scalar
    matrix, not the identity on the nose.
    """
    if not isinstance(assignment, FGAssignment) or assignment.n != n:
        raise IncompleteAssignment(f"need a complete assignment for n={n}")
    return _evaluate_word(n, transport_word(n, which), assignment)


def standard_matrix_n3(z):
    """The 3x3 standard side-change matrix with variable z at the center."""
    one = z * 0 + 1
    zero = z * 0
    return (
        (one, one + z, z),
        (-one, -one, zero),
        (one, zero, zero),
    )


def hs_swap_check(n, k, z):
    """Exact form of the diagonal/antidiagonal swap identity.

    Verifies H_k(z) * S == z * (S * H_{n-k}(1/z)) entrywise; the factor z is
    the projective slack left by working with unnormalized representatives.
    """
    lhs = mat_mul(elem_h(n, k, z), elem_s(n))
    rhs = mat_mul(elem_s(n), elem_h(n, n - k, 1 / z))
    scaled = tuple(tuple(z * x for x in row) for row in rhs)
    return lhs == scaled


def reduce_to_shear(z):
    """n=2 dictionary between transport factors and half-plane turn matrices.

    Returns the three 2x2 matrices (crossing, left_turn, right_turn) where
    crossing = S*H_1(z) and the turns are the exact integer words
    S L1 S L1 and -(S L1).  With z = w**2 the crossing equals w times the
    edge-crossing matrix ((0,-w),(1/w,0)) used by the fat-graph holonomy.
    """
    s = elem_s(2)
    l1 = elem_l(2, 1)
    crossing = mat_mul(s, elem_h(2, 1, z))
    left_turn = mat_prod([s, l1, s, l1])
    right_turn = tuple(tuple(-x for x in row) for row in mat_mul(s, l1))
    return crossing, left_turn, right_turn
