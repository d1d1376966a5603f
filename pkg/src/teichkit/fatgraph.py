"""Trivalent fat graphs with multiplicative edge weights and their holonomy.

A fat graph is a graph plus a cyclic order of half-edges at each vertex;
thickening it gives an oriented surface with boundary.  Every vertex here
is trivalent.  Internal edges carry a weight lam > 0 (the exponentiated
half shear coordinate), open edges carry a cusp weight kappa and end at an
implicit 1-valent vertex.

Holonomy words multiply 2x2 matrices left to right:

    R = [[1,1],[-1,0]]   L = [[0,1],[-1,-1]]   (turn right / left)
    X(w) = [[0,-w],[1/w,0]]                     (cross an edge)
    K = [[0,0],[-1,0]]                          (bounce at a cusp)

R and L have det 1, X(w) has det 1, K has det 0.  R^-1 = -L and L^-1 = -R,
so inverting a word flips turn letters and multiplies the sign by (-1) per
turn; PathWord carries that sign explicitly and evaluation applies it, so
traces are honest SL(2) traces.  The cusp trace of a K-free word A is
Tr(A K) = -A[0][1].
"""

from dataclasses import dataclass

from .encode import SCHEMA, check_schema, scalar_from_json, scalar_to_json
from .errors import DomainError, SchemaError


class MalformedGraph(DomainError):
    pass


class InvalidWord(DomainError):
    pass


class UnknownEdge(InvalidWord):
    pass


class ProductNotIdentity(DomainError):
    pass


class Mat2:
    """2x2 matrix over any commutative scalar type."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    def __mul__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def cusp_trace(self):
        return -self.b

    def inverse(self):
        dt = self.det()
        if dt == 0:
            raise InvalidWord("matrix is singular")
        return Mat2(self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.entries() == other.entries()

    def __repr__(self):
        return f"Mat2({self.a}, {self.b}, {self.c}, {self.d})"


def turn_right():
    return Mat2(1, 1, -1, 0)


def turn_left():
    return Mat2(0, 1, -1, -1)


def cusp_bounce():
    return Mat2(0, 0, -1, 0)


def cross(weight):
    return Mat2(0, -weight, 1 / weight, 0)


def cross_inv(weight):
    return Mat2(0, weight, -1 / weight, 0)


@dataclass(frozen=True)
class PathWord:
    """Holonomy word: sign times a product of generator tokens, left to right.

    Tokens: "R", "L", "K", ("E", edge_id), ("Einv", edge_id).
    """

    tokens: tuple
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidWord(f"sign must be +-1, got {self.sign}")
        for t in self.tokens:
            if isinstance(t, str):
                if t not in ("R", "L", "K"):
                    raise InvalidWord(f"unknown letter {t!r}")
            elif not (isinstance(t, tuple) and len(t) == 2 and t[0] in ("E", "Einv")):
                raise InvalidWord(f"bad token {t!r}")

    def __mul__(self, other):
        return PathWord(self.tokens + other.tokens, self.sign * other.sign)

    def inverse(self):
        """Reverse and invert letters: R^-1 = -L, L^-1 = -R, X^-1 = Xinv."""
        out = []
        sign = self.sign
        for t in reversed(self.tokens):
            if t == "R":
                out.append("L")
                sign = -sign
            elif t == "L":
                out.append("R")
                sign = -sign
            elif t == "K":
                raise InvalidWord("cusp bounce is not invertible")
            else:
                out.append(("Einv" if t[0] == "E" else "E", t[1]))
        return PathWord(tuple(out), sign)

    def to_json(self):
        toks = [t if isinstance(t, str) else [t[0], t[1]] for t in self.tokens]
        return {"schema": SCHEMA, "kind": "pathword", "sign": self.sign, "tokens": toks}

    @classmethod
    def from_json(cls, doc):
        check_schema(doc, "pathword")
        try:
            toks = tuple(t if isinstance(t, str) else (t[0], t[1]) for t in doc["tokens"])
            return cls(toks, doc.get("sign", 1))
        except (KeyError, TypeError, IndexError) as exc:
            raise SchemaError(f"bad pathword document: {exc}") from exc
        except InvalidWord as exc:
            raise SchemaError(str(exc)) from exc


@dataclass(frozen=True)
class EdgeData:
    weight: object
    is_open: bool = False


class FatGraph:
    """vertices: name -> cyclic tuple of (edge_id, end); edges: name -> EdgeData.

    Internal edges appear with both ends among the vertices; open edges with
    end 0 only, their end 1 being the cusp.
    """

    def __init__(self, vertices, edges, genus=None, n_boundary=None):
        self.vertices = {v: tuple((e, int(end)) for e, end in hes) for v, hes in vertices.items()}
        self.edges = dict(edges)
        self.genus = genus
        self.n_boundary = n_boundary
        self._where = {}
        for v, hes in self.vertices.items():
            for h in hes:
                if h in self._where:
                    raise MalformedGraph(f"half-edge {h} used twice")
                self._where[h] = v
        self.validate()

    def validate(self):
        for v, hes in self.vertices.items():
            if len(hes) != 3:
                raise MalformedGraph(f"vertex {v} has valence {len(hes)}, need 3")
        for e, data in self.edges.items():
            ends = [(e, 0) in self._where, (e, 1) in self._where]
            if data.is_open:
                if ends != [True, False]:
                    raise MalformedGraph(f"open edge {e} must attach end 0 only")
            elif not all(ends):
                raise MalformedGraph(f"internal edge {e} must attach both ends")
        for h in self._where:
            if h[0] not in self.edges:
                raise MalformedGraph(f"half-edge of unknown edge {h[0]}")
        n_open = sum(1 for d in self.edges.values() if d.is_open)
        if self.genus is not None and self.n_boundary is not None:
            v, e, s = len(self.vertices), len(self.edges), self.n_boundary
            if v + n_open - e != 2 - 2 * self.genus - s:
                raise MalformedGraph(
                    f"Euler count V-E = {v + n_open}-{e} incompatible with genus {self.genus}, {s} boundaries"
                )
            if len(self.faces()) != s:
                raise MalformedGraph(f"{len(self.faces())} faces, declared {s} boundaries")

    def next_half_edge(self, h):
        e, end = h
        other = (e, 1 - end)
        v = self._where.get(other)
        if v is None:
            return other
        hes = self.vertices[v]
        return hes[(hes.index(other) + 1) % len(hes)]

    def faces(self):
        """Boundary cycles of the thickened graph, as tuples of half-edges."""
        seen = set()
        out = []
        states = [(e, end) for e in sorted(self.edges) for end in (0, 1)]
        for h0 in states:
            if h0 in seen:
                continue
            cyc = []
            h = h0
            while h not in seen:
                seen.add(h)
                cyc.append(h)
                h = self.next_half_edge(h)
            out.append(tuple(cyc))
        return out

    def weight(self, e):
        return self.edges[e].weight

    def generator(self, token):
        if token == "R":
            return turn_right()
        if token == "L":
            return turn_left()
        if token == "K":
            return cusp_bounce()
        kind, e = token
        if e not in self.edges:
            raise UnknownEdge(f"unknown edge {e!r}")
        w = self.edges[e].weight
        return cross(w) if kind == "E" else cross_inv(w)

    def holonomy(self, word):
        m = Mat2.identity()
        for t in word.tokens:
            m = m * self.generator(t)
        if word.sign == -1:
            m = -m
        return m

    def to_json(self):
        return {
            "schema": SCHEMA,
            "kind": "fatgraph",
            "vertices": {v: [[e, end] for e, end in hes] for v, hes in self.vertices.items()},
            "edges": {
                e: {"weight": scalar_to_json(d.weight), "open": d.is_open}
                for e, d in self.edges.items()
            },
            "genus": self.genus,
            "boundary": self.n_boundary,
        }

    @classmethod
    def from_json(cls, doc, mode="rational"):
        check_schema(doc, "fatgraph")
        try:
            vertices = {v: [(e, end) for e, end in hes] for v, hes in doc["vertices"].items()}
            edges = {
                e: EdgeData(scalar_from_json(d["weight"], mode), bool(d.get("open", False)))
                for e, d in doc["edges"].items()
            }
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SchemaError):
                raise
            raise SchemaError(f"bad fatgraph document: {exc}") from exc
        try:
            return cls(vertices, edges, doc.get("genus"), doc.get("boundary"))
        except MalformedGraph:
            raise

    def __repr__(self):
        return f"FatGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


# -- builders ----------------------------------------------------------------


def pair_of_pants(w1, w2, w3):
    """Two-vertex theta graph; returns (graph, boundary loop words).

    Boundary loop i avoids edge s_i; each trace is -(w_j w_k + 1/(w_j w_k))
    for the complementary pair, so all three are <= -2 for positive weights.
    """
    g = FatGraph(
        {
            "u": (("s1", 0), ("s2", 0), ("s3", 0)),
            "v": (("s1", 1), ("s3", 1), ("s2", 1)),
        },
        {e: EdgeData(w) for e, w in zip(("s1", "s2", "s3"), (w1, w2, w3))},
        genus=0,
        n_boundary=3,
    )
    loops = {
        "loop1": PathWord(("R", ("E", "s2"), "R", ("E", "s3")), sign=-1),
        "loop2": PathWord((("E", "s3"), "R", ("E", "s1"), "R"), sign=-1),
        "loop3": PathWord(("L", ("E", "s1"), "R", ("E", "s2"), "L"), sign=1),
    }
    return g, loops


def four_holed_sphere(stem_weights, loop_weights):
    """Genus-0, 4-boundary graph: central vertex, three stems, three loops.

    stem edge s_i runs from the center to outer vertex i; edge p_i is the
    loop at outer vertex i.  Boundary words loop1..loop3 encircle the three
    p-loops; loop4 is the inverse of their product, so the four holonomies
    multiply to the identity exactly.
    """
    s1, s2, s3 = stem_weights
    q1, q2, q3 = loop_weights
    vertices = {
        "c": (("s1", 0), ("s2", 0), ("s3", 0)),
        "a1": (("s1", 1), ("p1", 0), ("p1", 1)),
        "a2": (("s2", 1), ("p2", 0), ("p2", 1)),
        "a3": (("s3", 1), ("p3", 0), ("p3", 1)),
    }
    edges = {
        "s1": EdgeData(s1),
        "s2": EdgeData(s2),
        "s3": EdgeData(s3),
        "p1": EdgeData(q1),
        "p2": EdgeData(q2),
        "p3": EdgeData(q3),
    }
    g = FatGraph(vertices, edges, genus=0, n_boundary=4)
    loop1 = PathWord((("E", "s1"), "R", ("E", "p1"), "R", ("E", "s1")), sign=1)
    loop2 = PathWord(("R", ("E", "s2"), "R", ("E", "p2"), "R", ("E", "s2"), "L"), sign=-1)
    loop3 = PathWord(("L", ("E", "s3"), "R", ("E", "p3"), "R", ("E", "s3"), "R"), sign=-1)
    loop4 = (loop1 * loop2 * loop3).inverse()
    return g, {"loop1": loop1, "loop2": loop2, "loop3": loop3, "loop4": loop4}


def trace_coordinates(graph, loops):
    """(x1, x2, x3, g1, g2, g3, g4) from the four boundary words.

    x_i is the trace of the product of the two loops complementary to i
    and 4; g_i are the boundary traces.  Raises ProductNotIdentity unless
    the four holonomies compose to the identity.
    """
    ms = [graph.holonomy(loops[k]) for k in ("loop1", "loop2", "loop3", "loop4")]
    prod = ms[0] * ms[1] * ms[2] * ms[3]

    def near(x, v):
        return abs(x - v) < 1e-9 if isinstance(x, float) else x == v

    if not (near(prod.b, 0) and near(prod.c, 0) and near(prod.a, 1) and near(prod.d, 1)):
        raise ProductNotIdentity(f"loop product is {prod}, not the identity")
    x1 = (ms[1] * ms[2]).trace()
    x2 = (ms[2] * ms[0]).trace()
    x3 = (ms[0] * ms[1]).trace()
    return (x1, x2, x3, ms[0].trace(), ms[1].trace(), ms[2].trace(), ms[3].trace())


def fricke_value(coords):
    """The four-boundary trace relation, normalized to equal 4.

    x1 x2 x3 + x1^2 + x2^2 + x3^2
      - (g4 g1 + g2 g3) x1 - (g4 g2 + g1 g3) x2 - (g4 g3 + g1 g2) x3
      + g1^2 + g2^2 + g3^2 + g4^2 + g1 g2 g3 g4
    """
    x1, x2, x3, g1, g2, g3, g4 = coords
    return (
        x1 * x2 * x3
        + x1 * x1 + x2 * x2 + x3 * x3
        - (g4 * g1 + g2 * g3) * x1
        - (g4 * g2 + g1 * g3) * x2
        - (g4 * g3 + g1 * g2) * x3
        + g1 * g1 + g2 * g2 + g3 * g3 + g4 * g4
        + g1 * g2 * g3 * g4
    )
