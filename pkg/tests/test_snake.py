import json

import pytest

from clusterlab.algebra import LaurentPolynomial as LP
from clusterlab.mutation import initial_seed, mutate
from clusterlab.snake import (
    SnakeError,
    all_matchings_bruteforce,
    build_band,
    build_snake,
    enumerate_matchings,
    expand,
    expand_band,
    minimal_matching,
    trim_to_band,
)
from clusterlab.surface import (
    ArcCrossing,
    LoopCrossing,
    annulus_fixture,
    builtin_genus1,
    builtin_genus2,
)


def fixture_snakes():
    T1, T2 = builtin_genus1(), builtin_genus2()
    return [
        build_snake(T1, ArcCrossing(seq))
        for seq in ((1,), (1, 3), (4, 2), (3, 4), (4, 2, 1, 4), (3, 1, 2, 3))
    ] + [
        build_snake(T2, ArcCrossing(seq))
        for seq in ((8, 9, 10, 2), (10, 4, 6, 3), (3, 6, 4, 10, 1, 5, 6, 7),
                    (5, 6, 7, 8, 3, 6, 4, 10), (8, 9, 10, 2, 1, 10, 4, 6, 3, 8))
    ]


def fixture_bands():
    T1, T2, A = builtin_genus1(), builtin_genus2(), annulus_fixture()
    return [
        build_band(A, LoopCrossing((1, 2))),
        trim_to_band(build_snake(T1, ArcCrossing((4, 2, 1, 4)))),
        build_band(T1, T1.boundary_loop()),
        trim_to_band(build_snake(T2, ArcCrossing((8, 9, 10, 2, 1, 10, 4, 6, 3, 8)))),
        build_band(T2, T2.boundary_loop()),
    ]


# -- construction ------------------------------------------------------------


def test_tile_counts():
    T = builtin_genus1()
    assert len(build_snake(T, ArcCrossing((1, 3))).tiles) == 2
    assert len(build_snake(T, ArcCrossing((2,))).tiles) == 1
    S = build_snake(T, ArcCrossing((4, 2, 1, 4)))
    assert len(S.tiles) == 4
    assert S.tiles[0].diagonal == 4 and S.tiles[-1].diagonal == 4


def test_band_tile_counts():
    T1, T2, A = builtin_genus1(), builtin_genus2(), annulus_fixture()
    assert len(build_band(T1, T1.boundary_loop()).tiles) == 8
    assert len(build_band(A, LoopCrossing((1, 2))).tiles) == 2
    assert len(build_band(T2, T2.boundary_loop()).tiles) == 20


def test_trim_to_band_tile_counts():
    T1, T2 = builtin_genus1(), builtin_genus2()
    s10 = build_snake(T2, ArcCrossing((8, 9, 10, 2, 1, 10, 4, 6, 3, 8)))
    assert len(trim_to_band(s10).tiles) == 8
    s4 = build_snake(T1, ArcCrossing((4, 2, 1, 4)))
    assert len(trim_to_band(s4).tiles) == 2
    # tile count is always |a| - 2
    for S in (s4, s10):
        assert len(trim_to_band(S).tiles) == len(S.crossings) - 2


def test_trim_to_band_preconditions():
    T = builtin_genus1()
    with pytest.raises(SnakeError):
        trim_to_band(build_snake(T, ArcCrossing((1, 3))))
    with pytest.raises(SnakeError):
        trim_to_band(build_snake(T, ArcCrossing((4, 2, 1))))


def test_glue_labels_match_third_sides():
    # the shared edge of consecutive tiles carries the third side of the
    # triangle containing both diagonals
    T = builtin_genus1()
    S = build_snake(T, ArcCrossing((4, 2, 1, 4)))
    for j, direction in enumerate(S.glue_dirs):
        e = S.edges[S.tile_edges[j][direction]]
        assert len(e.tiles) == 2
        tri = T.triangles[S.walk[j + 1]]
        sides = {str(s) for s in tri}
        assert str(e.label) in sides


def test_debug_dump_golden():
    T = builtin_genus1()
    S = build_snake(T, ArcCrossing((4, 2, 1, 4)))
    data = json.loads(S.to_debug_json())
    assert data["kind"] == "snake"
    assert data["crossings"] == [4, 2, 1, 4]
    assert data["glue_dirs"] == ["E", "N", "E"]
    assert data["tiles"][0]["labels"] == {"S": "A3", "E": "A1", "N": "A2", "W": "B1"}
    B = trim_to_band(S)
    bd = json.loads(B.to_debug_json())
    assert bd["kind"] == "band" and len(bd["tiles"]) == 2
    assert set(bd["wrap"]) == {"first_tile_edge", "last_tile_edge", "label"}


# -- matchings ----------------------------------------------------------------


def test_single_tile_matchings():
    T = builtin_genus1()
    S = build_snake(T, ArcCrossing((1,)))
    ms = enumerate_matchings(S)
    assert len(ms) == 2
    weights = sorted(w.y_exps for _, w in ms)
    assert weights == [(0, 0, 0, 0), (1, 0, 0, 0)]
    m0 = minimal_matching(S)
    # the minimal matching is a pair of opposite tile edges and is the
    # unique matching of y-weight 1
    te = S.tile_edges[0]
    assert m0.edges in ({te["S"], te["N"]}, {te["E"], te["W"]})
    (flat,) = [m for m, w in ms if w.y_exps == (0, 0, 0, 0)]
    assert flat.edges == m0.edges


def test_minimal_matching_two_tile_straight():
    # brute force over the 3 matchings: the minimal avoids the interior edge
    T = builtin_genus1()
    S = build_snake(T, ArcCrossing((1, 3)))
    assert len(all_matchings_bruteforce(S)) == 3
    m0 = minimal_matching(S)
    interior = {e.index for e in S.edges if len(e.tiles) == 2}
    assert not (m0.edges & interior)


def test_three_tile_matching_counts():
    # constant glue direction grows like Fibonacci (5 matchings on 3 tiles);
    # the alternating staircase has d+1 = 4
    T = builtin_genus1()
    straight = build_snake(T, ArcCrossing((1, 3, 4)))
    assert straight.glue_dirs[0] == straight.glue_dirs[1]
    assert len(enumerate_matchings(straight)) == 5
    assert len(all_matchings_bruteforce(straight)) == 5
    stair = build_snake(T, ArcCrossing((1, 2, 3)))
    assert stair.glue_dirs[0] != stair.glue_dirs[1]
    assert len(enumerate_matchings(stair)) == 4
    assert len(all_matchings_bruteforce(stair)) == 4


def test_flip_bfs_equals_bruteforce_on_snakes():
    for S in fixture_snakes():
        masks = sorted(S.mask_from_matching(m) for m, _ in enumerate_matchings(S))
        assert masks == all_matchings_bruteforce(S)


def test_exactly_one_minimal_and_maximal():
    for G in fixture_snakes() + fixture_bands():
        ms = enumerate_matchings(G)
        minimals = [m for m, w in ms if all(e == 0 for e in w.y_exps)]
        assert len(minimals) == 1
        maximals = [
            m
            for m, _ in ms
            if not any(up for _, _, up in G.flips(G.mask_from_matching(m)))
        ]
        assert len(maximals) == 1
        assert minimal_matching(G).edges == minimals[0].edges


def test_band_good_matchings_subset_of_all():
    for G in fixture_bands():
        good = {G.mask_from_matching(m) for m, _ in enumerate_matchings(G)}
        assert good <= set(all_matchings_bruteforce(G))


def test_annulus_band_excludes_winding_matchings():
    A = annulus_fixture()
    band = build_band(A, LoopCrossing((1, 2)))
    assert len(enumerate_matchings(band)) == 3
    assert len(all_matchings_bruteforce(band)) == 5


# -- expansion -----------------------------------------------------------------


def test_single_crossing_formula():
    # one tile: (product of one opposite pair + y_i * product of the other) / x_i
    T = builtin_genus1()
    for k in (1, 2, 3, 4):
        S = build_snake(T, ArcCrossing((k,)))
        labels = S.tiles[0].edge_labels
        xw = {d: (LP.x_var(s.index, 4) if s.is_arc else LP.one(4)) for d, s in labels.items()}
        te = S.tile_edges[0]
        m0 = minimal_matching(S).edges
        low = [d for d in "SENW" if te[d] in m0]
        high = [d for d in "SENW" if te[d] not in m0]
        num = xw[low[0]] * xw[low[1]] + LP.y_var(k, 4) * xw[high[0]] * xw[high[1]]
        denom = LP.monomial(4, 4, 1, [-1 if i == k else 0 for i in range(1, 5)])
        assert expand(S) == num * denom


def test_expand_w1_value():
    T = builtin_genus1()
    W1 = expand(build_snake(T, ArcCrossing((3, 4))))
    assert W1.set_y_one().serialize() == "x1^2*x3^-1 + x1*x2*x3^-1*x4^-1 + x2^2*x4^-1"
    assert W1.serialize() == "x1^2*x3^-1*y3*y4 + x1*x2*x3^-1*x4^-1*y4 + x2^2*x4^-1"


def test_expand_matches_mutation_single():
    T = builtin_genus1()
    s0 = initial_seed(T.exchange_matrix())
    for k in (1, 2, 3, 4):
        assert expand(build_snake(T, ArcCrossing((k,)))) == mutate(s0, k).cluster[k - 1]


def test_expansions_positive_with_monomial_denominator():
    for G in fixture_snakes():
        p = expand(G)
        assert p.coefficients_positive()
        f = p.f_polynomial()
        assert f.constant_term() == 1
    for G in fixture_bands():
        p = expand_band(G)
        assert p.coefficients_positive()
        assert p.f_polynomial().constant_term() == 1


def test_annulus_closed_form():
    A = annulus_fixture()
    z = expand_band(build_band(A, LoopCrossing((1, 2))), "trivial")
    expected = LP(2, 0, {(1, -1): 1, (-1, 1): 1, (-1, -1): 1})
    assert z == expected


def test_expand_trivial_equals_set_y_one():
    T = builtin_genus2()
    S = build_snake(T, ArcCrossing((3, 6, 4, 10, 1, 5, 6, 7)))
    assert expand(S, "trivial") == expand(S, "principal").set_y_one()


def test_band_start_triangle_irrelevant_for_boundary_loop():
    T = builtin_genus1()
    loop = T.boundary_loop()
    p = expand_band(build_band(T, loop), "trivial")
    assert len(p.terms) == 9


def test_deterministic_enumeration_order():
    T = builtin_genus1()
    S = build_snake(T, ArcCrossing((4, 2, 1, 4)))
    a = [(sorted(m.edges), w) for m, w in enumerate_matchings(S)]
    b = [(sorted(m.edges), w) for m, w in enumerate_matchings(build_snake(T, ArcCrossing((4, 2, 1, 4))))]
    assert a == b


def test_single_crossing_f_polynomial():
    T = builtin_genus1()
    for k in (1, 2, 3, 4):
        f = expand(build_snake(T, ArcCrossing((k,)))).f_polynomial()
        assert f == LP.one(4) + LP.y_var(k, 4)


def test_boundary_loop_f_polynomial_constant_term():
    T = builtin_genus1()
    L = expand_band(build_band(T, T.boundary_loop()))
    f = L.f_polynomial()
    assert f.constant_term() == 1
    assert f.coefficients_positive()
