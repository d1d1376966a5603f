"""Command-line front end.

Subcommands: holonomy (evaluate a path word on a fat graph), verify (run a
seeded identity-checking suite), render (scene JSON to SVG), pants-scene
(build the three-holed-sphere scene from exponentiated shears).

Exit codes: 0 success, 1 a verification trial failed, 2 malformed input
(bad JSON, schema violations), 3 mathematically invalid input.  The env
var TEICHKIT_SCALAR picks the default scalar mode for --scalar flags.
"""

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import confluence, fatgraph, surface
from .encode import SCHEMA, scalar_to_json
from .errors import DomainError, SchemaError
from .fatgraph import FatGraph, PathWord, pair_of_pants
from .flags import interior_vertices
from .laurent import LaurentRing
from .linalg import is_scalar_matrix, mat_prod, proj_eq
from .scene import Scene, pants_scene, render_svg
from .snakes import FGAssignment, side_vertices, transport


def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    return json.loads(text)


def _scalar_mode(args):
    mode = args.scalar or os.environ.get("TEICHKIT_SCALAR", "rational")
    if mode not in ("rational", "float"):
        raise SchemaError(f"unknown scalar mode {mode!r}")
    return mode


def _cmd_holonomy(args):
    mode = _scalar_mode(args)
    graph = FatGraph.from_json(_read_json(args.graph), mode)
    word = PathWord.from_json(_read_json(args.word))
    if not word.tokens:
        raise SchemaError("empty word")
    m = graph.holonomy(word)
    doc = {
        "schema": SCHEMA,
        "kind": "holonomy_result",
        "matrix": [
            [scalar_to_json(m.a), scalar_to_json(m.b)],
            [scalar_to_json(m.c), scalar_to_json(m.d)],
        ],
        "trace": scalar_to_json(m.trace()),
        "trace_k": scalar_to_json(m.cusp_trace()),
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def _cmd_render(args):
    scene = Scene.from_json(_read_json(args.scene), mode="float")
    Path(args.out).write_text(render_svg(scene))
    return 0


def _cmd_pants_scene(args):
    ws = []
    for w in (args.e1, args.e2, args.e3):
        try:
            ws.append(Fraction(w))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational literal {w!r}") from exc
    text = json.dumps(pants_scene(*ws).to_json(), indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


# -- verification suites -------------------------------------------------------


def _rand_q(rng):
    return Fraction(rng.randint(1, 9), rng.randint(1, 9))


def _nontrivial(rng):
    t = _rand_q(rng)
    return t if t != 1 else Fraction(2)


def _rand_assignment(rng, n):
    keys = side_vertices(n) + interior_vertices(n)
    return FGAssignment(n, {k: _rand_q(rng) for k in keys})


def _suite_fricke(rng, trials, n):
    out = []
    for i in range(trials):
        ws = [_rand_q(rng) for _ in range(6)]
        g, loops = fatgraph.four_holed_sphere(ws[:3], ws[3:])
        ok = fatgraph.fricke_value(fatgraph.trace_coordinates(g, loops)) == 4
        out.append((f"fricke trial {i + 1:02d}: relation == 4", ok))
    return out


def _suite_frickepv(rng, trials, n):
    lim = confluence.limit_coordinates()
    names = ("ls1", "ls2", "ls3", "lp1", "lp2", "kap1", "kap2")
    out = []
    for i in range(trials):
        vals = {k: _rand_q(rng) for k in names}
        nums = confluence.LimitCoords(*(p.eval(vals) for p in lim))
        ok = confluence.limiting_relation_value(nums) == 0
        t = _nontrivial(rng)
        moved = dict(vals, kap1=vals["kap1"] * t, kap2=vals["kap2"] / t)
        ok = ok and all(p.eval(vals) == p.eval(moved) for p in lim)
        out.append((f"frickepv trial {i + 1:02d}: relation == 0, rebalancing inert", ok))
    return out


def _suite_transport(rng, trials, n):
    out = []
    for i in range(trials):
        z = _rand_assignment(rng, n)
        p = mat_prod([transport(n, 1, z), transport(n, 2, z), transport(n, 3, z)], n)
        s = is_scalar_matrix(p)
        out.append(
            (f"transport trial {i + 1:02d}: T1 T2 T3 scalar at n={n}", s is not None and s != 0)
        )
    return out


def _two_triangle(rng, n):
    L, R = _rand_assignment(rng, n), _rand_assignment(rng, n)
    surf = surface.TriangulatedSurface({"L": L, "R": R}, [(("L", "12"), ("R", "12"))])
    word = surface.TrianglePathWord([surface.t_token("L", 1), "S", surface.t_token("R", 2)])
    return surf, word


def _suite_amalgamation(rng, trials, n):
    out = []
    for i in range(trials):
        surf, word = _two_triangle(rng, n)
        m0 = surface.path_matrix(surf, word)
        ok = True
        for k in range(1, n):
            t = _nontrivial(rng)
            va = surface.side_vertex(n, "12", k)
            vb = surface.side_vertex(n, "12", n - k)
            moved = surf.with_value("L", va, surf.triangles["L"][va] * t)
            moved = moved.with_value("R", vb, surf.triangles["R"][vb] / t)
            ok = ok and surface.path_matrix(moved, word) == m0
        # the word enters through L's 31 side, so that pinning must matter
        v = surface.side_vertex(n, "31", 1)
        pinched = surf.with_value("L", v, surf.triangles["L"][v] * 2)
        ok = ok and not proj_eq(surface.path_matrix(pinched, word), m0)
        cyl, words = surface.cylinder_two_cusps(
            2, {"t": _rand_assignment(rng, 2), "b": _rand_assignment(rng, 2)}
        )
        base = {w: surface.path_matrix(cyl, wd) for w, wd in words.items()}
        for (t1, v1), (t2, v2) in surface.amalgamation_classes(cyl)["amalgamated"]:
            t = _nontrivial(rng)
            moved = cyl.with_value(t1, v1, cyl.triangles[t1][v1] * t)
            moved = moved.with_value(t2, v2, cyl.triangles[t2][v2] / t)
            ok = ok and all(
                surface.path_matrix(moved, wd) == base[w] for w, wd in words.items()
            )
        out.append(
            (f"amalgamation trial {i + 1:02d}: class rescales inert, pinning moves", ok)
        )
    return out


def _suite_skein(rng, trials, n):
    g, _ = pair_of_pants(_rand_q(rng), _rand_q(rng), _rand_q(rng))
    alphabet = ["R", "L", ("E", "s1"), ("E", "s2"), ("E", "s3"), ("Einv", "s1")]
    out = []
    for i in range(trials):
        wa = PathWord(tuple(rng.choice(alphabet) for _ in range(rng.randint(1, 7))))
        wb = PathWord(tuple(rng.choice(alphabet) for _ in range(rng.randint(1, 7))))
        a, b = g.holonomy(wa), g.holonomy(wb)
        binv = g.holonomy(wb.inverse())
        ok = (a * b).trace() + (a * binv).trace() == a.trace() * b.trace()
        out.append((f"skein trial {i + 1:02d}: Tr(AB) + Tr(AB^-1) == Tr(A) Tr(B)", ok))
    return out


def _suite_lambda(rng, trials, n):
    ring = LaurentRing("s1", "s2", "s3", "q1", "q2", "c1", "c2")
    s1, s2, s3, q1, q2, c1, c2 = ring.gens()
    g, arcs, _ = confluence.cusped_three_holed((s1, s2, s3), (q1, q2), (c1, c2))
    lam = confluence.lambda_lengths(g, arcs)
    expected = {
        "a": c2 ** 2 * q1 ** 2 * q2 * s1 ** 4 * s2 ** 2 * s3 ** 2,
        "b": c2 ** 2 * q1 * s1 ** 2 * s3 ** 2,
        "c": c2 ** 2 * q1 * q2 * s1 ** 2 * s2 ** 2 * s3 ** 2,
        "d": c1 * c2 * q1 * q2 * s1 ** 2 * s2 ** 2 * s3 ** 2,
        "e": c1 * c2,
    }
    out = [("lambda monomial table matches", lam == expected)]
    table = dict(lam)
    table["q1"], table["q2"] = q1, q2
    base = Fraction(2)
    for i in range(trials):
        exps = {name: Fraction(rng.randint(-3, 3)) for name in ring.names}
        values = {}
        for name, mono in table.items():
            _, es = mono.monomial_parts()
            t = sum(Fraction(e) * exps[v] for e, v in zip(es, ring.names))
            values[name] = base ** int(t)
        got = confluence.invert_monomials(table, values, base)
        out.append((f"lambda trial {i + 1:02d}: invert_monomials round trip", got == exps))
    return out


SUITES = {
    "fricke": _suite_fricke,
    "frickepv": _suite_frickepv,
    "transport": _suite_transport,
    "amalgamation": _suite_amalgamation,
    "skein": _suite_skein,
    "lambda": _suite_lambda,
}

_DEFAULT_TRIALS = {
    "fricke": 20,
    "frickepv": 10,
    "transport": 10,
    "amalgamation": 10,
    "skein": 20,
    "lambda": 10,
}


def _cmd_verify(args):
    trials = args.trials if args.trials is not None else _DEFAULT_TRIALS[args.suite]
    if trials < 1:
        raise SchemaError("need at least one trial")
    if args.n < 2:
        raise SchemaError("need n >= 2")
    rng = random.Random(args.seed)
    results = SUITES[args.suite](rng, trials, args.n)
    npass = sum(1 for _, ok in results if ok)
    for name, ok in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    print(f"{args.suite}: {npass}/{len(results)} passed")
    return 0 if npass == len(results) else 1


def build_parser():
    p = argparse.ArgumentParser(
        prog="teichkit",
        description="exact-arithmetic toolkit for hyperbolic surfaces",
    )
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("holonomy", help="evaluate a path word on a fat graph")
    h.add_argument("graph", help="fat graph JSON file")
    h.add_argument("word", help="path word JSON file")
    h.add_argument("--scalar", choices=("rational", "float"), default=None)
    h.set_defaults(func=_cmd_holonomy)

    v = sub.add_parser("verify", help="run a seeded verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=None)
    v.add_argument("--n", type=int, default=3, help="triangle rank for transport/amalgamation")
    v.set_defaults(func=_cmd_verify)

    r = sub.add_parser("render", help="render a scene JSON file to SVG")
    r.add_argument("scene", help="scene JSON file")
    r.add_argument("--out", required=True, help="output SVG path")
    r.set_defaults(func=_cmd_render)

    ps = sub.add_parser(
        "pants-scene",
        help="three-holed-sphere scene JSON from exponentiated shears",
    )
    ps.add_argument("e1", help="exp(s1), as a rational like 2 or 7/5")
    ps.add_argument("e2", help="exp(s2)")
    ps.add_argument("e3", help="exp(s3)")
    ps.add_argument("--out", default=None, help="write here instead of stdout")
    ps.set_defaults(func=_cmd_pants_scene)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(
            f"SchemaError: bad JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
            file=sys.stderr,
        )
        return 2
    except SchemaError as exc:
        print(f"SchemaError: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
