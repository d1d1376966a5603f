import json
import random
from fractions import Fraction as Q
from pathlib import Path

import pytest

from teichkit.fatgraph import cross, turn_left, turn_right
from teichkit.flags import (
    DegenerateConfiguration,
    Flag,
    general_position,
    interior_vertices,
    line_config,
    reversed_flag,
    standard_flag,
    triple_ratio,
)
from teichkit.laurent import LaurentRing
from teichkit.linalg import det, identity, is_scalar_matrix, mat_mul, mat_prod, proj_eq
from teichkit.snakes import (
    BadSegment,
    FGAssignment,
    IncompleteAssignment,
    IndexOutOfRange,
    NonpositiveVariable,
    Snake,
    boundary_snake_12,
    boundary_snake_23,
    boundary_snake_31,
    elem_h,
    elem_l,
    elem_s,
    hs_swap_check,
    move_one,
    move_two,
    reduce_to_shear,
    side_vertices,
    snake_basis,
    standard_matrix_n3,
    transport,
    transport_word,
)

GOLDEN = Path(__file__).parent / "golden"

A, B, G = Q(2), Q(3), Q(5)
Z111 = B / (A * G - B)


def example_config():
    f3 = Flag([(1, A, B), (0, 1, G), (0, 0, 1)])
    return line_config(standard_flag(3), reversed_flag(3), f3)


def jacobi_upper(n, k, t):
    m = [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]
    m[k - 1][k] = t
    return m


def positive_unitriangular(n, rng):
    # positive Jacobi parameters along a reduced word give a configuration
    # with all triple ratios positive
    word = []
    for top in range(1, n):
        word.extend(range(top, 0, -1))
    u = identity(n)
    for k in word:
        u = mat_mul(u, jacobi_upper(n, k, Q(rng.randint(1, 40), rng.randint(1, 12))))
    return u


def positive_config(n, seed):
    rng = random.Random(seed)
    f1, f2 = standard_flag(n), reversed_flag(n)
    while True:
        f3 = Flag(positive_unitriangular(n, rng))
        if not general_position(f1, f2, f3):
            continue
        cfg = line_config(f1, f2, f3)
        ratios = {v: triple_ratio(cfg, v) for v in interior_vertices(n)}
        if all(r > 0 for r in ratios.values()):
            return cfg, ratios


def random_assignment(n, seed):
    rng = random.Random(seed)
    keys = side_vertices(n) + interior_vertices(n)
    return FGAssignment(
        n, {k: Q(rng.randint(1, 60), rng.randint(1, 17)) for k in keys}
    )


class TestElementary:
    def test_l_adds_row(self):
        l2 = elem_l(3, 2)
        assert l2 == ((1, 0, 0), (0, 1, 0), (0, 1, 1))

    def test_l_range(self):
        with pytest.raises(IndexOutOfRange):
            elem_l(3, 3)
        with pytest.raises(IndexOutOfRange):
            elem_l(3, 0)

    def test_h_diagonal(self):
        assert elem_h(3, 2, Q(5)) == ((1, 0, 0), (0, 1, 0), (0, 0, 5))
        assert elem_h(4, 1, Q(2)) == (
            (1, 0, 0, 0),
            (0, 2, 0, 0),
            (0, 0, 2, 0),
            (0, 0, 0, 2),
        )

    def test_h_range(self):
        with pytest.raises(IndexOutOfRange):
            elem_h(3, 4, Q(1))

    def test_s_antidiagonal(self):
        assert elem_s(2) == ((0, -1), (1, 0))
        assert elem_s(3) == ((0, 0, 1), (0, -1, 0), (1, 0, 0))

    def test_s_squares_to_sign(self):
        for n in (2, 3, 4, 5):
            s2 = mat_mul(elem_s(n), elem_s(n))
            sign = Q((-1) ** (n - 1))
            assert s2 == tuple(
                tuple(sign * e for e in row) for row in identity(n)
            )

    def test_s_det_one_n3(self):
        assert det(elem_s(3)) == 1

    @pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)])
    def test_hs_swap(self, n, k):
        assert hs_swap_check(n, k, Q(5))
        assert hs_swap_check(n, k, Q(7, 3))


class TestSnake:
    def test_boundary_snakes(self):
        assert boundary_snake_12(3).tiles == ((2, 0, 0), (1, 1, 0), (0, 2, 0))
        assert boundary_snake_23(3).tiles == ((0, 2, 0), (0, 1, 1), (0, 0, 2))
        assert boundary_snake_31(3).tiles == ((0, 0, 2), (1, 0, 1), (2, 0, 0))

    def test_boundary_segments_clockwise(self):
        for mk in (boundary_snake_12, boundary_snake_23, boundary_snake_31):
            s = mk(4)
            assert all(s.segment_clockwise(i) for i in range(3))

    def test_tile_count_enforced(self):
        with pytest.raises(BadSegment):
            Snake([(2, 0, 0), (1, 1, 0)])

    def test_must_start_at_corner(self):
        with pytest.raises(BadSegment):
            Snake([(1, 1, 0), (0, 2, 0), (0, 1, 1)])

    def test_adjacency_enforced(self):
        with pytest.raises(BadSegment):
            Snake([(2, 0, 0), (0, 2, 0), (0, 1, 1)])

    def test_no_parallel_segment(self):
        # segments keeping a fixed run parallel to the target side
        with pytest.raises(BadSegment):
            Snake([(2, 0, 0), (1, 0, 1), (1, 1, 0)])
        with pytest.raises(BadSegment):
            Snake([(2, 0, 0), (1, 1, 0), (1, 0, 1)])

    def test_immutable(self):
        s = boundary_snake_12(2)
        with pytest.raises(AttributeError):
            s.tiles = ()


class TestMoves:
    def test_move_one_flips_last(self):
        s = boundary_snake_12(3)
        s2, m = move_one(s)
        assert s2.tiles == ((2, 0, 0), (1, 1, 0), (0, 1, 1))
        assert m == elem_l(3, 2)

    def test_move_one_needs_clockwise(self):
        s, _ = move_one(boundary_snake_12(3))
        # the flipped segment is now counterclockwise; flipping again fails
        with pytest.raises(BadSegment):
            move_one(s)

    def test_move_two_white_vertex(self):
        s, _ = move_one(boundary_snake_12(3))
        s2, m, white = move_two(s, 1, Q(7))
        assert s2.tiles == ((2, 0, 0), (1, 0, 1), (0, 1, 1))
        assert white == (1, 1, 1)
        assert m == ((1, 0, 0), (1, 1, 0), (0, 0, 7))
        assert m == mat_mul(elem_l(3, 1), elem_h(3, 2, Q(7)))

    def test_move_two_range(self):
        with pytest.raises(IndexOutOfRange):
            move_two(boundary_snake_12(3), 2, Q(1))

    def test_move_two_needs_clockwise(self):
        s, _, _ = move_two(move_one(boundary_snake_12(3))[0], 1, Q(1))
        with pytest.raises(BadSegment):
            move_two(s, 1, Q(1))

    def test_sweep_trajectory_n3(self):
        s = boundary_snake_12(3)
        s, _ = move_one(s)
        s, _, _ = move_two(s, 1, Q(1))
        s, _ = move_one(s)
        assert s.tiles == tuple(reversed(boundary_snake_31(3).tiles))


class TestSnakeBasis:
    def test_side12_basis(self):
        cfg = example_config()
        d = A * G - B
        assert snake_basis(cfg, boundary_snake_12(3)) == (
            (1, 0, 0),
            (0, d / G, 0),
            (0, 0, d),
        )

    def test_side31_basis(self):
        cfg = example_config()
        d = A * G - B
        assert snake_basis(cfg, boundary_snake_31(3)) == (
            (1, A, B),
            (-1, -(d / G), 0),
            (1, 0, 0),
        )

    def test_side23_basis(self):
        cfg = example_config()
        assert snake_basis(cfg, boundary_snake_23(3)) == (
            (0, 0, 1),
            (0, -1 / G, -1),
            (1 / B, A / B, 1),
        )

    def test_first_vector_scales_everything(self):
        cfg = example_config()
        base = snake_basis(cfg, boundary_snake_12(3))
        scaled = snake_basis(cfg, boundary_snake_12(3), first=(Q(3), 0, 0))
        assert scaled == tuple(tuple(3 * x for x in row) for row in base)

    def test_first_vector_must_lie_on_line(self):
        cfg = example_config()
        with pytest.raises(DegenerateConfiguration):
            snake_basis(cfg, boundary_snake_12(3), first=(0, 1, 0))

    def test_dimension_mismatch(self):
        cfg = example_config()
        with pytest.raises(BadSegment):
            snake_basis(cfg, boundary_snake_12(4))


class TestStandardMatrix:
    def test_factorization_exact(self):
        ring = LaurentRing(("z",))
        (z,) = ring.gens()
        word = [elem_s(3), elem_l(3, 2), elem_l(3, 1), elem_h(3, 2, z), elem_l(3, 2)]
        assert mat_prod(word, 3) == standard_matrix_n3(z)

    def test_det_is_z(self):
        ring = LaurentRing(("z",))
        (z,) = ring.gens()
        assert det(standard_matrix_n3(z)) == z

    def test_cube_is_z_times_identity(self):
        ring = LaurentRing(("z",))
        (z,) = ring.gens()
        t = standard_matrix_n3(z)
        assert mat_prod([t, t, t], 3) == tuple(
            tuple(z * e for e in row) for row in identity(3)
        )

    def test_maps_between_boundary_bases(self):
        cfg = example_config()
        w = snake_basis(cfg, boundary_snake_12(3))
        u = snake_basis(cfg, boundary_snake_31(3))
        v = snake_basis(cfg, boundary_snake_23(3))
        t = standard_matrix_n3(Z111)
        d = A * G - B
        assert mat_mul(t, w) == u
        assert tuple(tuple(d * e for e in r) for r in mat_mul(t, v)) == w
        assert tuple(tuple(e / B for e in r) for r in mat_mul(t, u)) == v


def _as_lists(word):
    return [list(f[:2]) + [list(f[2])] if f[0] == "H" else list(f) for f in word]


class TestTransportWord:
    def test_n2_word(self):
        assert transport_word(2, 1) == [
            ("S",),
            ("H", 1, (1, 0, 1)),
            ("L", 1),
            ("H", 1, (1, 1, 0)),
        ]

    @pytest.mark.parametrize("n", [3, 4])
    def test_golden(self, n):
        doc = json.loads((GOLDEN / f"transport_word_n{n}.json").read_text())
        assert doc["kind"] == "transport_word" and doc["n"] == n
        assert _as_lists(transport_word(n, 1)) == doc["factors"]

    def test_rotation_relabels_keys(self):
        w1 = transport_word(3, 1)
        w2 = transport_word(3, 2)
        w3 = transport_word(3, 3)
        rot = lambda k: (k[2], k[0], k[1])
        assert w2 == [
            (f[0], f[1], rot(f[2])) if f[0] == "H" else f for f in w1
        ]
        assert w3 == [
            (f[0], f[1], rot(rot(f[2]))) if f[0] == "H" else f for f in w1
        ]

    def test_interior_labels_cover_all_vertices(self):
        for n in (3, 4, 5, 6):
            inner = [
                f[2]
                for f in transport_word(n, 1)
                if f[0] == "H" and min(f[2]) >= 1
            ]
            assert sorted(inner) == sorted(interior_vertices(n))
            assert len(inner) == len(set(inner))

    def test_which_validated(self):
        with pytest.raises(IndexOutOfRange):
            transport_word(3, 4)
        with pytest.raises(IndexOutOfRange):
            transport_word(1, 1)


class TestTransport:
    def test_sides_one_gives_standard_matrix(self):
        vals = {v: Q(1) for v in side_vertices(3)}
        vals[(1, 1, 1)] = Z111
        assert transport(3, 1, FGAssignment(3, vals)) == standard_matrix_n3(Z111)

    def test_all_ones_n2_is_minus_right_turn(self):
        t = transport(2, 1, FGAssignment.constant(2))
        tr = turn_right()
        assert t == ((-tr.a, -tr.b), (-tr.c, -tr.d))

    def test_side_flanks_conjugate_standard_part(self):
        z = random_assignment(3, 7)
        mid = mat_prod(
            [
                elem_s(3),
                elem_l(3, 2),
                elem_l(3, 1),
                elem_h(3, 2, z[(1, 1, 1)]),
                elem_l(3, 2),
            ],
            3,
        )
        sandwich = mat_prod(
            [
                elem_h(3, 1, 1 / z[(1, 0, 2)]),
                elem_h(3, 2, 1 / z[(2, 0, 1)]),
                mid,
                elem_h(3, 1, z[(2, 1, 0)]),
                elem_h(3, 2, z[(1, 2, 0)]),
            ],
            3,
        )
        assert proj_eq(transport(3, 1, z), sandwich)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_triple_product_scalar(self, n):
        z = random_assignment(n, 90 + n)
        p = mat_prod([transport(n, 1, z), transport(n, 2, z), transport(n, 3, z)], n)
        s = is_scalar_matrix(p)
        assert s is not None and s != 0

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_rotation_equivariance(self, n):
        z = random_assignment(n, 70 + n)
        assert transport(n, 2, z) == transport(n, 1, z.rotated())
        assert transport(n, 3, z) == transport(n, 1, z.rotated().rotated())

    def test_needs_matching_assignment(self):
        with pytest.raises(IncompleteAssignment):
            transport(3, 1, FGAssignment.constant(4))


class TestFlagOracle:
    """Transports rebuilt from exact flag data via the orientation rule."""

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_all_three_transports(self, n):
        cfg, ratios = positive_config(n, 500 + n)
        vals = {v: Q(1) for v in side_vertices(n)}
        vals.update(ratios)
        z = FGAssignment(n, vals)
        w = snake_basis(cfg, boundary_snake_12(n))
        u = snake_basis(cfg, boundary_snake_31(n))
        v = snake_basis(cfg, boundary_snake_23(n))
        assert proj_eq(mat_mul(transport(n, 1, z), w), u)
        assert proj_eq(mat_mul(transport(n, 2, z), v), w)
        assert proj_eq(mat_mul(transport(n, 3, z), u), v)

    def test_moves_track_rule_exactly(self):
        # every intermediate basis of the sweep agrees with the one rebuilt
        # from scratch through the orientation rule
        cfg, ratios = positive_config(4, 504)
        snake = boundary_snake_12(4)
        rows = snake_basis(cfg, snake)
        schedule = [("I",), ("II", 2), ("I",), ("II", 1), ("II", 2), ("I",)]
        for mv in schedule:
            if mv[0] == "I":
                snake, m = move_one(snake)
            else:
                probe, _, white = move_two(snake, mv[1], Q(1))
                snake, m, _ = move_two(snake, mv[1], ratios[white])
                assert snake == probe
            rows = mat_mul(m, rows)
            assert rows == snake_basis(cfg, snake, first=rows[0])
        closed = mat_mul(elem_s(4), rows)
        assert proj_eq(closed, snake_basis(cfg, boundary_snake_31(4)))

    def test_interior_variable_is_triple_ratio(self):
        cfg = example_config()
        assert triple_ratio(cfg, (1, 1, 1)) == Z111


class TestAssignment:
    def test_requires_every_vertex(self):
        vals = {v: Q(1) for v in side_vertices(3)}
        with pytest.raises(IncompleteAssignment):
            FGAssignment(3, vals)

    def test_rejects_corner_keys(self):
        vals = {v: Q(1) for v in side_vertices(3)}
        vals[(1, 1, 1)] = Q(1)
        vals[(3, 0, 0)] = Q(1)
        with pytest.raises(IncompleteAssignment):
            FGAssignment(3, vals)

    def test_key_count(self):
        for n in (2, 3, 4, 5):
            z = FGAssignment.constant(n)
            assert len(z.values) == (n + 4) * (n - 1) // 2

    def test_positive_required(self):
        vals = {v: Q(1) for v in side_vertices(2)}
        vals[(1, 1, 0)] = Q(0)
        with pytest.raises(NonpositiveVariable):
            FGAssignment(2, vals)
        vals[(1, 1, 0)] = Q(-2)
        with pytest.raises(NonpositiveVariable):
            FGAssignment(2, vals)

    def test_symbolic_values_allowed(self):
        ring = LaurentRing("a", "b", "c")
        a, b, c = ring.gens()
        z = FGAssignment(2, {(1, 1, 0): a, (0, 1, 1): b, (1, 0, 1): c})
        t = transport(2, 1, z)
        assert t[0][0] == -c
        assert t[0][1] == -(c * a)

    def test_rotated(self):
        z = random_assignment(3, 3)
        assert z.rotated()[(1, 0, 2)] == z[(2, 1, 0)]
        assert z.rotated().rotated().rotated() == z

    def test_json_round_trip(self):
        z = random_assignment(4, 44)
        doc = z.to_json()
        assert doc["kind"] == "fg_assignment"
        assert FGAssignment.from_json(doc) == z

    def test_immutable(self):
        z = FGAssignment.constant(2)
        with pytest.raises(AttributeError):
            z.n = 3


class TestShearDictionary:
    def test_turns_match_holonomy_generators(self):
        _, left, right = reduce_to_shear(Q(1))
        tl, tr = turn_left(), turn_right()
        assert left == ((tl.a, tl.b), (tl.c, tl.d))
        assert right == ((tr.a, tr.b), (tr.c, tr.d))

    def test_crossing_is_weight_times_edge_matrix(self):
        w = Q(3, 2)
        crossing, _, _ = reduce_to_shear(w * w)
        cm = cross(w)
        assert crossing == ((w * cm.a, w * cm.b), (w * cm.c, w * cm.d))

    def test_crossing_shape(self):
        crossing, _, _ = reduce_to_shear(Q(9))
        assert crossing == ((0, -9), (1, 0))
