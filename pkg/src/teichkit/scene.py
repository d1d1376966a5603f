"""Scene descriptions over the upper half plane and their SVG rendering.

A scene is an ordered list of drawable elements: geodesics, horocycles,
Euclidean circles, marked points and geodesic polygons, each with optional
color/label strings.  Rendering is deterministic (fixed viewBox, canonical
element order, fixed decimal formatting) so equal scenes produce
byte-identical SVG.

The three-holed-sphere builders turn exponentiated shear coordinates into
boundary Mobius maps and the classical picture: three invariant axes, the
common perpendicular between consecutive axes, and its image under the
holonomy, which cuts out a fundamental domain.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape, quoteattr

from .encode import SCHEMA, check_schema, scalar_from_json, scalar_to_json
from .errors import DomainError, SchemaError
from .halfplane import (
    INFINITY,
    MobiusMap,
    apply_to_geodesic,
    axis,
    common_perpendicular,
    geodesic_through,
)


class BadGeometry(DomainError):
    """Element data outside the model: below the boundary, nonpositive size."""


KINDS = ("geodesic", "horocycle", "circle", "point", "polygon")

# z-order when rendering: fills under strokes under markers
_KIND_LAYER = {"polygon": 0, "geodesic": 1, "horocycle": 2, "circle": 3, "point": 4}

_DEFAULT_COLOR = {
    "geodesic": "#2d5fa6",
    "horocycle": "#b07a2d",
    "circle": "#2d8a57",
    "point": "#333333",
    "polygon": "#888888",
}


def coordinate_to_json(v):
    return "inf" if v is INFINITY else scalar_to_json(v)


def coordinate_from_json(v, mode="rational"):
    if v == "inf":
        return INFINITY
    return scalar_from_json(v, mode)


def _coord(v, allow_infinity=False):
    if v is INFINITY:
        if not allow_infinity:
            raise BadGeometry("infinity not allowed here")
        return v
    if isinstance(v, bool) or not isinstance(v, (int, Fraction, float)):
        raise BadGeometry(f"bad coordinate {v!r}")
    if isinstance(v, float) and not math.isfinite(v):
        raise BadGeometry(f"coordinate must be finite, got {v!r}")
    return Fraction(v) if isinstance(v, int) else v


@dataclass(frozen=True)
class SceneElement:
    """One drawable item; geometry is a kind-specific tuple.

    Build through the constructor functions below, which validate.
    """

    kind: str
    geometry: tuple
    color: str = ""
    label: str = ""

    def to_json(self):
        doc = {"kind": self.kind, "color": self.color, "label": self.label}
        g = self.geometry
        if self.kind == "geodesic":
            doc["p"], doc["q"] = coordinate_to_json(g[0]), coordinate_to_json(g[1])
        elif self.kind == "horocycle":
            doc["base"], doc["size"] = coordinate_to_json(g[0]), scalar_to_json(g[1])
        elif self.kind == "circle":
            doc["x"], doc["y"], doc["r"] = (scalar_to_json(v) for v in g)
        elif self.kind == "point":
            doc["x"], doc["y"] = scalar_to_json(g[0]), scalar_to_json(g[1])
        else:
            doc["vertices"] = [
                "inf" if v is INFINITY else [scalar_to_json(v[0]), scalar_to_json(v[1])]
                for v in g
            ]
        return doc


def geodesic(p, q, color="", label=""):
    """Complete geodesic with distinct boundary endpoints; INFINITY allowed."""
    p = _coord(p, allow_infinity=True)
    q = _coord(q, allow_infinity=True)
    geodesic_through(p, q)
    return SceneElement("geodesic", (p, q), color, label)


def horocycle(base, size, color="", label=""):
    """Horocycle at a boundary point.

    Tangent circle of diameter size at a finite base; the horizontal line
    Im z = size when base is INFINITY.
    """
    base = _coord(base, allow_infinity=True)
    size = _coord(size)
    if size <= 0:
        raise BadGeometry(f"size must be positive, got {size}")
    return SceneElement("horocycle", (base, size), color, label)


def circle(x, y, r, color="", label=""):
    """Euclidean circle strictly inside the half plane (y > r > 0)."""
    x, y, r = _coord(x), _coord(y), _coord(r)
    if r <= 0:
        raise BadGeometry(f"radius must be positive, got {r}")
    if y <= r:
        raise BadGeometry("circle touches or crosses the boundary")
    return SceneElement("circle", (x, y, r), color, label)


def point(x, y, color="", label=""):
    """Marked point; boundary points (y = 0) allowed."""
    x, y = _coord(x), _coord(y)
    if y < 0:
        raise BadGeometry(f"below the boundary: y = {y}")
    return SceneElement("point", (x, y), color, label)


def polygon(vertices, color="", label=""):
    """Closed polygon whose sides are geodesic segments.

    Vertices are (x, y) pairs with y >= 0, or INFINITY for an ideal vertex
    at the top; cyclically consecutive vertices must differ.
    """
    vs = []
    for v in vertices:
        if v is INFINITY:
            vs.append(v)
            continue
        x, y = v
        x, y = _coord(x), _coord(y)
        if y < 0:
            raise BadGeometry(f"vertex below the boundary: {v!r}")
        vs.append((x, y))
    if len(vs) < 3:
        raise BadGeometry("polygon needs at least 3 vertices")
    for a, b in zip(vs, vs[1:] + vs[:1]):
        if a is b or a == b:
            raise BadGeometry("repeated consecutive vertex")
    return SceneElement("polygon", tuple(vs), color, label)


def element_from_json(doc, mode="rational"):
    if not isinstance(doc, dict):
        raise SchemaError("element must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown element kind {kind!r}")
    color, label = doc.get("color", ""), doc.get("label", "")
    if not (isinstance(color, str) and isinstance(label, str)):
        raise SchemaError("color and label must be strings")
    try:
        if kind == "geodesic":
            return geodesic(
                coordinate_from_json(doc["p"], mode),
                coordinate_from_json(doc["q"], mode),
                color=color,
                label=label,
            )
        if kind == "horocycle":
            return horocycle(
                coordinate_from_json(doc["base"], mode),
                scalar_from_json(doc["size"], mode),
                color=color,
                label=label,
            )
        if kind == "circle":
            x, y, r = (scalar_from_json(doc[k], mode) for k in ("x", "y", "r"))
            return circle(x, y, r, color=color, label=label)
        if kind == "point":
            return point(
                scalar_from_json(doc["x"], mode),
                scalar_from_json(doc["y"], mode),
                color=color,
                label=label,
            )
        verts = [
            INFINITY
            if v == "inf"
            else (scalar_from_json(v[0], mode), scalar_from_json(v[1], mode))
            for v in doc["vertices"]
        ]
        return polygon(verts, color=color, label=label)
    except KeyError as exc:
        raise SchemaError(f"element missing field {exc}") from exc
    except (TypeError, IndexError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        if isinstance(exc, DomainError):
            # parseable but describes nothing drawable
            raise SchemaError(str(exc)) from exc
        raise SchemaError(f"bad element document: {exc}") from exc


@dataclass(frozen=True)
class Scene:
    """Ordered element collection; authoring order is kept in JSON,
    rendering sorts canonically."""

    elements: tuple = ()

    def __post_init__(self):
        for el in self.elements:
            if not isinstance(el, SceneElement):
                raise BadGeometry(f"not a scene element: {el!r}")
        object.__setattr__(self, "elements", tuple(self.elements))

    def add(self, *els):
        return Scene(self.elements + els)

    def to_json(self):
        return {
            "schema": SCHEMA,
            "kind": "scene",
            "elements": [el.to_json() for el in self.elements],
        }

    @classmethod
    def from_json(cls, doc, mode="rational"):
        check_schema(doc, "scene")
        els = doc.get("elements")
        if not isinstance(els, list):
            raise SchemaError("scene needs an element list")
        return cls(tuple(element_from_json(e, mode) for e in els))


# -- rendering ----------------------------------------------------------------

_PPU = 80.0  # pixels per half-plane unit
_W, _H = 880.0, 460.0
_BASE = 440.0  # svg y of the real axis; 20px strip below for ticks


def _sx(x):
    return (float(x) + 5.5) * _PPU


def _sy(y):
    return _BASE - float(y) * _PPU


def _fmt(t):
    s = f"{t:.3f}"
    return "0.000" if s == "-0.000" else s


def _stroke(color, width="1.6"):
    return f'stroke={quoteattr(color)} stroke-width="{width}" fill="none"'


def _geodesic_svg(p, q, color):
    if p is INFINITY or q is INFINITY:
        foot = q if p is INFINITY else p
        x = _fmt(_sx(foot))
        return f'<line x1="{x}" y1="{_fmt(_BASE)}" x2="{x}" y2="0.000" {_stroke(color)}/>'
    lo, hi = sorted((float(p), float(q)))
    r = _fmt((hi - lo) / 2.0 * _PPU)
    return (
        f'<path d="M {_fmt(_sx(lo))} {_fmt(_BASE)} '
        f'A {r} {r} 0 0 1 {_fmt(_sx(hi))} {_fmt(_BASE)}" {_stroke(color)}/>'
    )


def _horocycle_svg(base, size, color):
    if base is INFINITY:
        y = _fmt(_sy(size))
        return f'<line x1="0.000" y1="{y}" x2="{_fmt(_W)}" y2="{y}" {_stroke(color, "1.4")}/>'
    half = float(size) / 2.0
    return (
        f'<circle cx="{_fmt(_sx(base))}" cy="{_fmt(_sy(half))}" r="{_fmt(half * _PPU)}" '
        f'{_stroke(color, "1.4")}/>'
    )


def _circle_svg(x, y, r, color):
    return (
        f'<circle cx="{_fmt(_sx(x))}" cy="{_fmt(_sy(y))}" r="{_fmt(float(r) * _PPU)}" '
        f'{_stroke(color, "1.4")}/>'
    )


def _point_svg(x, y, color):
    return f'<circle cx="{_fmt(_sx(x))}" cy="{_fmt(_sy(y))}" r="3.5" fill={quoteattr(color)}/>'


def _segment(a, b):
    """Geodesic side from a to b as path commands; the pen sits at a."""
    if b is INFINITY:
        return f"L {_fmt(_sx(a[0]))} 0.000"
    if a is INFINITY:
        x, y = b
        return f"L {_fmt(_sx(x))} 0.000 L {_fmt(_sx(x))} {_fmt(_sy(y))}"
    x1, y1 = (float(v) for v in a)
    x2, y2 = (float(v) for v in b)
    if x1 == x2:
        return f"L {_fmt(_sx(x2))} {_fmt(_sy(y2))}"
    # circle through both points centered on the real axis
    c = (x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2) / (2.0 * (x1 - x2))
    r = _fmt(math.hypot(x1 - c, y1) * _PPU)
    sweep = 1 if x1 < x2 else 0
    return f"A {r} {r} 0 0 {sweep} {_fmt(_sx(x2))} {_fmt(_sy(y2))}"


def _polygon_svg(vertices, color):
    verts = list(vertices)
    start = next(i for i, v in enumerate(verts) if v is not INFINITY)
    verts = verts[start:] + verts[:start]
    x0, y0 = verts[0]
    parts = [f"M {_fmt(_sx(x0))} {_fmt(_sy(y0))}"]
    for a, b in zip(verts, verts[1:] + verts[:1]):
        parts.append(_segment(a, b))
    parts.append("Z")
    return (
        f'<path d="{" ".join(parts)}" fill={quoteattr(color)} fill-opacity="0.15" '
        f'stroke={quoteattr(color)} stroke-width="1.2"/>'
    )


def _sort_key(el):
    """Canonical draw order, independent of how scalars were spelled.

    Coordinates compare as floats so a scene parsed in rational mode and
    the same scene parsed in float mode render byte-identically; ties fall
    back to authoring order (sorted() is stable).
    """

    def c(v):
        return (1, 0.0) if v is INFINITY else (0, float(v))

    g = el.geometry
    if el.kind == "polygon":
        geom = tuple(c(v) if v is INFINITY else (0, float(v[0]), float(v[1])) for v in g)
    else:
        geom = tuple(c(v) for v in g)
    return (_KIND_LAYER[el.kind], el.kind, geom, el.color, el.label)


def _label_anchor(el):
    g = el.geometry
    if el.kind == "geodesic":
        p, q = g
        if p is INFINITY or q is INFINITY:
            foot = q if p is INFINITY else p
            return _sx(foot) + 4.0, 14.0, "start"
        lo, hi = sorted((float(p), float(q)))
        return _sx((lo + hi) / 2.0) + 4.0, _sy((hi - lo) / 2.0) - 5.0, "start"
    if el.kind == "horocycle":
        base, size = g
        if base is INFINITY:
            return 6.0, _sy(size) - 5.0, "start"
        return _sx(base) + 4.0, _sy(size) - 5.0, "start"
    if el.kind == "circle":
        x, y, r = g
        return _sx(x) + 4.0, _sy(float(y) + float(r)) - 5.0, "start"
    if el.kind == "point":
        x, y = g
        return _sx(x) + 5.0, _sy(y) - 5.0, "start"
    finite = [v for v in g if v is not INFINITY]
    cx = sum(float(v[0]) for v in finite) / len(finite)
    cy = sum(float(v[1]) for v in finite) / len(finite)
    return _sx(cx), _sy(cy), "middle"


def render_svg(scene):
    """Deterministic SVG text for a scene.

    Fixed viewBox x in [-5.5, 5.5], y in [0, 5.5] at 80 px/unit; content
    outside is clipped.  Elements are drawn in a canonical order (layer by
    kind, then serialized form), labels on top.  The empty scene renders
    the real and imaginary axes with integer ticks.
    """
    ordered = sorted(scene.elements, key=_sort_key)
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 880 460" '
        'width="880" height="460">',
        f'<rect width="{_fmt(_W)}" height="{_fmt(_H)}" fill="white"/>',
        f'<line x1="440.000" y1="0.000" x2="440.000" y2="{_fmt(_BASE)}" '
        'stroke="#cccccc" stroke-width="1" stroke-dasharray="4 4"/>',
    ]
    for k in range(-5, 6):
        x = _fmt(_sx(k))
        out.append(
            f'<line x1="{x}" y1="{_fmt(_BASE)}" x2="{x}" y2="{_fmt(_BASE + 5.0)}" '
            'stroke="#444444" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{x}" y="{_fmt(_BASE + 16.0)}" font-family="monospace" '
            f'font-size="9" text-anchor="middle" fill="#444444">{k}</text>'
        )
    out.append(
        f'<line x1="0.000" y1="{_fmt(_BASE)}" x2="{_fmt(_W)}" y2="{_fmt(_BASE)}" '
        'stroke="#444444" stroke-width="1.5"/>'
    )
    for el in ordered:
        color = el.color or _DEFAULT_COLOR[el.kind]
        g = el.geometry
        if el.kind == "geodesic":
            out.append(_geodesic_svg(g[0], g[1], color))
        elif el.kind == "horocycle":
            out.append(_horocycle_svg(g[0], g[1], color))
        elif el.kind == "circle":
            out.append(_circle_svg(g[0], g[1], g[2], color))
        elif el.kind == "point":
            out.append(_point_svg(g[0], g[1], color))
        else:
            out.append(_polygon_svg(g, color))
    for el in ordered:
        if not el.label:
            continue
        color = el.color or _DEFAULT_COLOR[el.kind]
        x, y, anchor = _label_anchor(el)
        out.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="monospace" font-size="12" '
            f'text-anchor="{anchor}" fill={quoteattr(color)}>{escape(el.label)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- three-holed sphere -------------------------------------------------------


def pants_maps(e1, e2, e3):
    """Boundary holonomies of the three-holed sphere, exact in the inputs.

    Takes exponentiated shears (exp s1, exp s2, exp s3), all positive.
    Returns normalized det > 0 representatives (m1, m2, m3) with
    m1 m2 m3 = identity as maps.
    """
    for e in (e1, e2, e3):
        if isinstance(e, bool) or not isinstance(e, (int, Fraction, float)) or e <= 0:
            raise BadGeometry(f"exponentiated shear must be positive, got {e!r}")
    a, b, c = (Fraction(e) if isinstance(e, int) else e for e in (e1, e2, e3))
    m1 = MobiusMap(1 / (b * c), -(1 + 1 / b), 0, 1)
    m2 = MobiusMap(1, 0, 1 / (a * c) + 1 / c, 1 / (a * c))
    m3 = m1.compose(m2).inverse()
    return m1, m2, m3


def pants_scene(e1, e2, e3):
    """Half-plane picture of the three-holed sphere at the given shears.

    Draws the three invariant axes, the common perpendicular between axes
    1 and 2 with its image under m1, the common perpendicular between axes
    2 and 3 with its image under m3^{-1}, and the finite axis endpoints.
    The perpendicular pairs bound a fundamental domain.  All three
    holonomies must be hyperbolic.
    """
    m1, m2, m3 = pants_maps(e1, e2, e3)
    a1, a2, a3 = axis(m1), axis(m2), axis(m3)
    g12 = common_perpendicular(a1, a2)
    g23 = common_perpendicular(a2, a3)
    els = [
        _axis_element(a1, "#b03a3a", "axis1"),
        _axis_element(a2, "#b03a3a", "axis2"),
        _axis_element(a3, "#b03a3a", "axis3"),
        _axis_element(g12, "#2d5fa6", "g12"),
        _axis_element(apply_to_geodesic(m1, g12), "#2d5fa6", "m1 g12"),
        _axis_element(g23, "#2d8a57", "g23"),
        _axis_element(apply_to_geodesic(m3.inverse(), g23), "#2d8a57", "m3inv g23"),
    ]
    for ax in (a1, a2, a3):
        for e in ax.endpoints():
            if e is not INFINITY:
                els.append(point(e, 0, color="#333333"))
    return Scene(tuple(els))


def _axis_element(g, color, label):
    p, q = g.endpoints()
    return geodesic(p, q, color=color, label=label)
