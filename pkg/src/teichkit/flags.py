"""Complete flags and the line/plane configuration of a flag triple.

A complete flag in R^n is a chain of nested subspaces F_1 < F_2 < ... < F_n,
stored here as an invertible matrix whose first i rows span F_i.  A triple of
flags in general position induces, on the lattice triangle of side n, a line
for every upward tile and a plane for every downward tile; the projective
invariants of that configuration (triple ratios at interior lattice vertices,
cross ratios of coplanar line pencils) are the coordinates used by the
transport machinery in snakes.py.

Everything in this module is exact: entries are converted to Fraction and all
rank and intersection decisions use exact arithmetic.
"""

from fractions import Fraction

from .encode import SCHEMA, check_schema, scalar_from_json, scalar_to_json
from .errors import DomainError
from .halfplane import INFINITY, cross_ratio as boundary_cross_ratio
from .linalg import (
    canonical_vector,
    det,
    intersect_row_spaces,
    mat,
    rank,
    row_space,
    solve,
    transpose,
)


class DimensionMismatch(DomainError):
    pass


class SingularFlag(DomainError):
    pass


class NotTransverse(DomainError):
    pass


class NotProjectiveBasis(DomainError):
    pass


class NotGeneric(DomainError):
    pass


class DegenerateConfiguration(DomainError):
    pass


class NotCoplanar(DomainError):
    pass


def _fracvec(v):
    return tuple(x if isinstance(x, Fraction) else Fraction(x) for x in v)


class Flag:
    """Complete flag: F_i is the span of the first i rows of ``rows``.

    The matrix must be square and invertible; this is checked exactly at
    construction.  Flags are immutable and compare by their row matrix.
    """

    __slots__ = ("rows",)

    def __init__(self, rows):
        m = mat(tuple(_fracvec(r) for r in rows))
        if not m or len(m) != len(m[0]):
            raise DimensionMismatch("flag matrix must be square and nonempty")
        if det(m) == 0:
            raise SingularFlag("flag matrix is singular")
        object.__setattr__(self, "rows", m)

    def __setattr__(self, name, value):
        raise AttributeError("Flag is immutable")

    @property
    def n(self):
        return len(self.rows)

    def subspace(self, i):
        """Canonical echelon basis of F_i; i = 0 gives the zero space ()."""
        if not 0 <= i <= self.n:
            raise DimensionMismatch(f"subspace index {i} out of range 0..{self.n}")
        return row_space(self.rows[:i])

    def __eq__(self, other):
        return isinstance(other, Flag) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Flag({[list(r) for r in self.rows]})"

    def to_json(self):
        return {
            "schema": SCHEMA,
            "kind": "flag",
            "rows": [[scalar_to_json(x) for x in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, doc):
        check_schema(doc, "flag")
        return cls(doc["rows"])


def standard_flag(n):
    """The flag spanned by e_1, e_2, ..., e_n in that order."""
    return Flag(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))


def reversed_flag(n):
    """The flag spanned by e_n, ..., e_1; opposite to the standard one."""
    return Flag(tuple(tuple(Fraction(int(i + j == n - 1)) for j in range(n)) for i in range(n)))


# -- lattice bookkeeping ------------------------------------------------------
#
# Barycentric triples (a,b,c) of nonnegative integers label, depending on
# their sum: lattice vertices (sum n), upward tiles alias lines (sum n-1),
# downward tiles alias planes (sum n-2).


def _triples(total):
    if total < 0:
        return []
    return [
        (a, b, total - a - b)
        for a in range(total, -1, -1)
        for b in range(total - a, -1, -1)
    ]


def upward_tiles(n):
    """Centers of upward tiles: triples summing to n-1."""
    return _triples(n - 1)


def downward_tiles(n):
    """Centers of downward tiles: triples summing to n-2."""
    return _triples(n - 2)


def interior_vertices(n):
    """Lattice vertices not on the boundary: sum n, all parts positive."""
    return [(a, b, c) for (a, b, c) in _triples(n) if a >= 1 and b >= 1 and c >= 1]


def _triple_intersection(s1, s2, s3):
    return intersect_row_spaces(intersect_row_spaces(s1, s2), s3)


def general_position(f1, f2, f3):
    """Exact test of general position for a triple of flags.

    True iff for every index triple (i1,i2,i3) the intersection
    F1_{i1} ∩ F2_{i2} ∩ F3_{i3} has the minimal possible dimension
    max(i1+i2+i3-2n, 0).  Taking i3 = n recovers pairwise transversality,
    so no separate check is needed.
    """
    if not (f1.n == f2.n == f3.n):
        raise DimensionMismatch("flags live in different dimensions")
    n = f1.n
    subs = [[f.subspace(i) for i in range(n + 1)] for f in (f1, f2, f3)]
    for i1 in range(1, n + 1):
        for i2 in range(1, n + 1):
            pair = intersect_row_spaces(subs[0][i1], subs[1][i2])
            for i3 in range(1, n + 1):
                got = len(intersect_row_spaces(pair, subs[2][i3]))
                if got != max(i1 + i2 + i3 - 2 * n, 0):
                    return False
    return True


def two_flag_splitting(f, g):
    """Decompose R^n into lines L_1 .. L_n adapted to a transverse flag pair.

    L_i = F_i ∩ G_{n-i+1}; then F_i = L_1 + ... + L_i and
    G_i = L_n + ... + L_{n-i+1}.  Returns canonical generators.
    """
    if f.n != g.n:
        raise DimensionMismatch("flags live in different dimensions")
    n = f.n
    fs = [f.subspace(i) for i in range(n + 1)]
    gs = [g.subspace(i) for i in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if len(intersect_row_spaces(fs[i], gs[j])) != max(i + j - n, 0):
                raise NotTransverse("flags are not transverse")
    out = []
    for i in range(1, n + 1):
        cut = intersect_row_spaces(fs[i], gs[n - i + 1])
        out.append(canonical_vector(cut[0]))
    return tuple(out)


def projective_basis_vectors(lines, weights):
    """Vectors v_1..v_n spanning the first n lines with the last as a mix.

    ``lines`` is a sequence of n+1 generator vectors in R^n such that any n
    of them are linearly independent; ``weights`` is a sequence of n nonzero
    scalars.  Returns the unique (up to one global factor) basis with
    <v_i> = lines[i] and <w_1 v_1 + ... + w_n v_n> = lines[n].  The global
    factor is fixed by scaling the first vector's first nonzero entry to 1.
    """
    gens = [_fracvec(v) for v in lines]
    if not gens:
        raise NotProjectiveBasis("no lines given")
    n = len(gens[0])
    if len(gens) != n + 1:
        raise NotProjectiveBasis(f"need {n + 1} lines in dimension {n}, got {len(gens)}")
    w = [x if isinstance(x, Fraction) else Fraction(x) for x in weights]
    if len(w) != n or any(x == 0 for x in w):
        raise NotProjectiveBasis("weights must be n nonzero scalars")
    for k in range(n + 1):
        subset = gens[:k] + gens[k + 1 :]
        if rank(subset) != n:
            raise NotProjectiveBasis("some n of the lines do not span")
    coeffs = solve(transpose(gens[:n]), gens[n])
    if coeffs is None or any(c == 0 for c in coeffs):
        raise NotProjectiveBasis("last line is not a full mix of the others")
    vecs = [tuple(c / wi * x for x in g) for c, wi, g in zip(coeffs, w, gens)]
    lead = next(x for x in vecs[0] if x != 0)
    return tuple(tuple(x / lead for x in v) for v in vecs)


class LineConfig:
    """Lines and planes cut out by a flag triple on the lattice triangle.

    lines:  map (a,b,c) with a+b+c = n-1 to a canonical line generator,
            the 1-dim space F1_{n-a} ∩ F2_{n-b} ∩ F3_{n-c}.
    planes: map (a,b,c) with a+b+c = n-2 to a canonical echelon pair spanning
            the matching 2-dim intersection.  Empty when n = 2: the only
            downward tile would carry the whole plane, not a proper subspace.
    """

    __slots__ = ("n", "lines", "planes")

    def __init__(self, n, lines, planes):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "lines", dict(lines))
        object.__setattr__(self, "planes", dict(planes))

    def __setattr__(self, name, value):
        raise AttributeError("LineConfig is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, LineConfig)
            and self.n == other.n
            and self.lines == other.lines
            and self.planes == other.planes
        )

    def __repr__(self):
        return f"LineConfig(n={self.n}, {len(self.lines)} lines, {len(self.planes)} planes)"

    def to_json(self):
        return {
            "schema": SCHEMA,
            "kind": "line_config",
            "n": self.n,
            "lines": {
                ",".join(map(str, k)): [scalar_to_json(x) for x in v]
                for k, v in sorted(self.lines.items())
            },
            "planes": {
                ",".join(map(str, k)): [[scalar_to_json(x) for x in row] for row in v]
                for k, v in sorted(self.planes.items())
            },
        }

    @classmethod
    def from_json(cls, doc):
        check_schema(doc, "line_config")
        lines = {
            tuple(int(s) for s in k.split(",")): _fracvec(
                scalar_from_json(x) for x in v
            )
            for k, v in doc["lines"].items()
        }
        planes = {
            tuple(int(s) for s in k.split(",")): tuple(
                _fracvec(scalar_from_json(x) for x in row) for row in v
            )
            for k, v in doc["planes"].items()
        }
        return cls(int(doc["n"]), lines, planes)


def line_config(f1, f2, f3):
    """Compute the full line/plane configuration of a triple in general position."""
    if not general_position(f1, f2, f3):
        raise NotGeneric("flags are not in general position")
    n = f1.n
    subs = [[f.subspace(i) for i in range(n + 1)] for f in (f1, f2, f3)]
    lines = {}
    for (a, b, c) in upward_tiles(n):
        cut = _triple_intersection(subs[0][n - a], subs[1][n - b], subs[2][n - c])
        if len(cut) != 1:
            raise NotGeneric(f"expected a line at {(a, b, c)}, got dimension {len(cut)}")
        lines[(a, b, c)] = canonical_vector(cut[0])
    planes = {}
    if n >= 3:
        for (a, b, c) in downward_tiles(n):
            cut = _triple_intersection(subs[0][n - a], subs[1][n - b], subs[2][n - c])
            if len(cut) != 2:
                raise NotGeneric(f"expected a plane at {(a, b, c)}, got dimension {len(cut)}")
            planes[(a, b, c)] = cut
            # each plane must contain the three lines at its tile corners
            for corner in ((a + 1, b, c), (a, b + 1, c), (a, b, c + 1)):
                if rank(list(cut) + [lines[corner]]) != 2:
                    raise NotGeneric(f"plane {(a, b, c)} misses its corner line {corner}")
    return LineConfig(n, lines, planes)


def triple_ratio(config, vertex):
    """Projective invariant of the six lines around an interior lattice vertex.

    ``vertex`` = (a,b,c) with a+b+c = n and a,b,c >= 1; it is the common
    corner of three upward tiles (a+1,b-1,c-1), (a-1,b+1,c-1), (a-1,b-1,c+1)
    and three downward tiles, and equivalently labels the white triangle of
    the line lattice with corners at those tiles.  The six incident lines lie
    in a common 3-dim subspace; the returned scalar is the ratio

        |A,AB,C| |C,CA,B| |B,BC,A|
        ---------------------------
        |A,AB,B| |B,BC,C| |C,CA,A|

    of 3x3 determinants taken in any basis of that subspace, where A,B,C are
    the corner lines and AB,BC,CA the intermediate ones.  The value does not
    depend on the basis nor on the scaling of any generator.
    """
    a, b, c = vertex
    if a + b + c != config.n or min(a, b, c) < 1:
        raise ValueError(f"{vertex} is not an interior lattice vertex for n={config.n}")
    keys = {
        "A": (a + 1, b - 1, c - 1),
        "AB": (a, b, c - 1),
        "B": (a - 1, b + 1, c - 1),
        "BC": (a - 1, b, c),
        "C": (a - 1, b - 1, c + 1),
        "CA": (a, b - 1, c),
    }
    gens = {t: config.lines[k] for t, k in keys.items()}
    span = row_space(list(gens.values()))
    if len(span) != 3:
        raise DegenerateConfiguration(
            f"lines around {vertex} span dimension {len(span)}, expected 3"
        )
    st = transpose(span)
    coords = {}
    for t, g in gens.items():
        x = solve(st, g)
        if x is None:
            raise DegenerateConfiguration(f"line {keys[t]} escapes the local 3-space")
        coords[t] = x

    def d3(p, q, r):
        return det((coords[p], coords[q], coords[r]))

    num = d3("A", "AB", "C") * d3("C", "CA", "B") * d3("B", "BC", "A")
    den = d3("A", "AB", "B") * d3("B", "BC", "C") * d3("C", "CA", "A")
    if den == 0:
        raise DegenerateConfiguration(f"vanishing denominator at {vertex}")
    return num / den


def pencil_cross_ratio(l1, l2, l3, l4):
    """Cross ratio of four distinct coplanar lines through the origin.

    The four generators must span exactly a 2-dim subspace.  Each line is
    mapped to its slope in a fixed echelon basis of that subspace and the
    boundary cross ratio of the four slopes is returned; the result does not
    depend on the basis choice.
    """
    gens = [_fracvec(v) for v in (l1, l2, l3, l4)]
    span = row_space(gens)
    if len(span) > 2:
        raise NotCoplanar("lines do not lie in a common plane")
    if len(span) < 2:
        raise DegenerateConfiguration("lines span less than a plane")
    st = transpose(span)
    slopes = []
    for g in gens:
        x, y = solve(st, g)
        slopes.append(INFINITY if x == 0 else y / x)
    return boundary_cross_ratio(*slopes)
