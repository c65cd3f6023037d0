import math

import numpy as np
import pytest
from conftest import naive_configurations

from dwbc import correlators as cr
from dwbc.errors import (
    CapExceeded,
    DimensionMismatch,
    DuplicateInversion,
    IndexOutOfRange,
    NotConserving,
)
from dwbc.lattice import (
    ArrowGrid,
    VertexPredicate,
    brute_partition,
    classify_vertex,
    config_weight,
    count_configurations,
    dwbc,
    enumerate_configurations,
    kind_of,
    make_boundary,
    row_permuted,
)
from dwbc.weights import ModelParams, VertexKind, weight_a, weight_b, weight_c


def _class_grids(boundary):
    """Package enumeration as class grids with columns left to right (naive oracle layout)."""
    out = []
    for g in enumerate_configurations(boundary):
        C = g.n_cols
        out.append([[classify_vertex(g, i, C - k).weight_class for k in range(C)] for i in range(1, g.n_rows + 1)])
    return out


def _directions(boundary):
    left = [1 if o == "in" else -1 for o in boundary.left]
    right = [-1 if o == "in" else 1 for o in boundary.right]
    top = [-1 if o == "in" else 1 for o in reversed(boundary.top)]
    bottom = [1 if o == "in" else -1 for o in reversed(boundary.bottom)]
    return left, right, top, bottom


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 2), (3, 7), (4, 42), (5, 429), (6, 7436)])
def test_counts_follow_alternating_sign_matrices(n, expected):
    assert count_configurations(dwbc(n)) == expected


@pytest.mark.parametrize(
    "boundary",
    [
        dwbc(2),
        dwbc(3),
        make_boundary(3, 2, [("right", 2)]),
        make_boundary(3, 1, [("right", 1), ("right", 3)]),
        make_boundary(3, 1, [("right", 2), ("left", 3)]),
        make_boundary(3, 3, [("right", 2), ("top", 3)]),
        make_boundary(3, 3, [("right", 1), ("bottom", 2)]),
        make_boundary(2, 3, [("top", 1)]),
    ],
    ids=lambda b: f"{b.n_rows}x{b.n_cols}:{b.inversions()}",
)
def test_enumeration_matches_naive_search(boundary):
    ours = _class_grids(boundary)
    naive = naive_configurations(*_directions(boundary))
    assert len(ours) == len(set(map(str, ours)))
    assert sorted(map(str, ours)) == sorted(map(str, naive))


def test_all_horizontal_arrows_out_has_no_configuration():
    b = make_boundary(2, 2, [("right", 1), ("right", 2), ("left", 1), ("left", 2)])
    assert all(o == "out" for o in b.left + b.right + b.top + b.bottom)
    assert count_configurations(b) == 0
    assert naive_configurations(*_directions(b)) == []
    assert brute_partition(b, ModelParams(0.8, [0.1, 0.2], [0.5, 0.6])) == 0


def test_make_boundary_flips_and_errors():
    b = make_boundary(3, 2, [("right", 2), ("top", 1)])
    assert b.right == ("in", "out", "in") and b.top == ("in", "out")
    assert b.inversions() == [("right", 2), ("top", 1)]
    assert make_boundary(3, 3) == dwbc(3)
    with pytest.raises(IndexOutOfRange):
        make_boundary(3, 2, [("top", 3)])
    with pytest.raises(DuplicateInversion):
        make_boundary(3, 2, [("left", 1), ("left", 1)])
    with pytest.raises(ValueError):
        make_boundary(3, 2, [("middle", 1)])


def test_single_vertex():
    (g,) = list(enumerate_configurations(dwbc(1)))
    assert classify_vertex(g, 1, 1) is VertexKind.C1
    p = ModelParams(0.8, [0.3], [0.6])
    assert config_weight(g, p) == pytest.approx(math.sinh(0.8))
    assert brute_partition(dwbc(1), p) == pytest.approx(math.sinh(0.8))


def test_kind_table_and_flow_violations():
    assert kind_of(1, 1, 1, 1) is VertexKind.A1
    assert kind_of(-1, 1, 1, -1) is VertexKind.C2
    with pytest.raises(NotConserving):
        kind_of(1, -1, 1, -1)  # all four arrows point into the vertex
    with pytest.raises(NotConserving):
        kind_of(-1, 1, -1, 1)  # all four point out


def test_public_columns_count_from_the_right():
    # public column 1 is the last internal column, and carries y_1
    p = ModelParams(0.8, [0.1, 0.2, 0.3], [0.9, 0.5, 0.35])
    cols = list(reversed(p.y))
    for g in enumerate_configurations(dwbc(3)):
        for i in range(1, 4):
            assert g.arrows_at(i, 1)[1] == g.h[i - 1, 3]
            assert g.arrows_at(i, 3)[0] == g.h[i - 1, 0]
            # class c exactly where the horizontal arrow turns
            assert (classify_vertex(g, i, 1).weight_class == "c") == (g.h[i - 1, 2] != g.h[i - 1, 3])
        manual = 1.0
        for i in range(3):
            for k in range(3):
                cls = classify_vertex(g, i + 1, 3 - k).weight_class
                manual *= {"a": weight_a, "b": weight_b, "c": weight_c}[cls](p.x[i], cols[k], p.lam)
        assert config_weight(g, p) == pytest.approx(manual, rel=1e-13)
    b = make_boundary(3, 3, [("top", 1), ("right", 1)])
    for g in enumerate_configurations(b):
        assert g.v[0, 2] == -1 and g.v[0, 0] == 1


def test_rightmost_column_has_exactly_one_c():
    for n in range(1, 6):
        for g in enumerate_configurations(dwbc(n)):
            assert sum(classify_vertex(g, i, 1).weight_class == "c" for i in range(1, n + 1)) == 1


def test_enumeration_is_deterministic_and_read_only():
    first = list(enumerate_configurations(dwbc(4)))
    second = list(enumerate_configurations(dwbc(4)))
    assert first == second
    with pytest.raises(ValueError):
        first[0].h[0, 0] = 1
    # up before down: the first configuration sends the top-left vertical bond up
    assert first[0].v[1, 0] == 1


def test_weights_and_zero_b_vertex(draw):
    p = draw(3)
    grids = list(enumerate_configurations(dwbc(3)))
    assert brute_partition(dwbc(3), p) == pytest.approx(sum(config_weight(g, p) for g in grids), rel=1e-13)
    # put y_j equal to x_i wherever a grid has a b vertex: that grid weighs 0
    g = next(g for g in grids if any(classify_vertex(g, i, j).weight_class == "b" for i in (1, 2, 3) for j in (1, 2, 3)))
    i, j = next((i, j) for i in (1, 2, 3) for j in (1, 2, 3) if classify_vertex(g, i, j).weight_class == "b")
    y = list(p.y)
    y[j - 1] = p.x[i - 1]
    assert config_weight(g, p.replace(y=y)) == 0
    with pytest.raises(DimensionMismatch):
        config_weight(g, draw(2))


def test_peeled_top_row_is_all_a(draw):
    p = draw(4)
    left = p.replace(y=p.y[1:])
    b = cr.onepoint_boundary(4, 1)
    for g in enumerate_configurations(b):
        assert [classify_vertex(g, 1, j).weight_class for j in (1, 2, 3)] == ["a", "a", "a"]
    # so the top row contributes prod_j a(x_1, y_j) to every configuration
    top = math.prod(weight_a(p.x[0], y, p.lam) for y in left.y)
    rest = brute_partition(dwbc(3), p.replace(x=p.x[1:], y=p.y[1:]))
    assert brute_partition(b, left) == pytest.approx(top * rest, rel=1e-12)


def test_filters_partition_the_sum(draw):
    for n in (2, 3, 4, 5):
        p = draw(n)
        total = brute_partition(dwbc(n), p)
        parts = [brute_partition(dwbc(n), p, filter=[(r, 1, "c")]) for r in range(1, n + 1)]
        assert sum(parts) == pytest.approx(total, rel=1e-13)
    p = draw(3)
    both = VertexPredicate([(1, 1, "c"), (2, 2, "c")])
    assert brute_partition(dwbc(3), p, filter=both) == pytest.approx(
        brute_partition(dwbc(3), p, filter=[(1, 1, "c"), (2, 2, "c")])
    )
    with pytest.raises(IndexOutOfRange):
        brute_partition(dwbc(3), p, filter=[(4, 1, "c")])


def test_slicing_consistency(draw):
    for n in (2, 3, 4):
        p = draw(n)
        left = p.replace(y=p.y[1:])
        total = sum(
            cr.right_column_weight(r, p) * brute_partition(cr.onepoint_boundary(n, r), left) for r in range(1, n + 1)
        )
        assert total == pytest.approx(brute_partition(dwbc(n), p), rel=1e-12)


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        count_configurations(dwbc(8))
    with pytest.raises(CapExceeded):
        list(enumerate_configurations(dwbc(3), cap=8))
    assert count_configurations(dwbc(3), cap=9) == 7


def test_row_permuted(draw):
    p = draw(3)
    q = row_permuted(p, [3, 1, 2])
    assert q.x == (p.x[2], p.x[0], p.x[1])


def test_grid_equality_and_hash():
    a, b = list(enumerate_configurations(dwbc(2)))
    assert a != b and len({a, b, a}) == 2
    assert isinstance(a, ArrowGrid)
    assert np.all(np.isin(a.h, (1, -1)))
