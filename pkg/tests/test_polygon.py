from math import comb

import pytest

from ainfsurf.chains import Cell, ChainElement, TensorElement, hom_differential
from ainfsurf.polygon import build_polygon, split_defect, split_polygons

from oracles import as_dict, ascending, standard_polygon_tables


def v(i):
    return Cell(0, f"v{i}")


def e(i):
    return Cell(1, f"e{i}")


P = Cell(2, "P")

GRID = [(n, t) for n in range(3, 11) for t in range(2, n + 1)]


def test_hexagon_face_boundary():
    poly = build_polygon(6, 6)
    assert poly.boundary_of(P) == ChainElement({e(1): 1, e(2): 1, e(3): 1, e(4): 1, e(5): 1, e(6): -1})


def test_seven_gon_with_terminal_v5():
    poly = build_polygon(7, 5)
    assert poly.boundary_of(P) == ChainElement({e(1): 1, e(2): 1, e(3): 1, e(4): 1, e(5): -1, e(6): -1, e(7): -1})
    assert poly.boundary_of(e(5)) == ChainElement({v(5): 1, v(6): -1})
    assert poly.boundary_of(e(7)) == ChainElement({v(7): 1, v(1): -1})


def test_triangle_edges():
    poly = build_polygon(3, 3)
    assert poly.boundary_of(e(1)) == ChainElement({v(2): 1, v(1): -1})
    assert poly.boundary_of(e(2)) == ChainElement({v(3): 1, v(2): -1})
    assert poly.boundary_of(e(3)) == ChainElement({v(3): 1, v(1): -1})


@pytest.mark.parametrize("n,t", [(2, 2), (5, 1), (5, 6), (1, 1)])
def test_bad_parameters(n, t):
    with pytest.raises(ValueError):
        build_polygon(n, t)


@pytest.mark.parametrize("n", range(3, 9))
def test_standard_tables_match_typed_formulas(n):
    d, d2 = standard_polygon_tables(n)
    poly = build_polygon(n)
    for c in poly.cells:
        assert as_dict(poly.boundary(c)) == d[c.label]
        assert as_dict(poly.delta(2)(c)) == d2[c.label]


def test_pentagon_delta3():
    poly = build_polygon(5)
    expected = TensorElement(
        {(e(1), e(2), e(3)): 1, (e(1), e(2), e(4)): 1, (e(1), e(3), e(4)): 1, (e(2), e(3), e(4)): 1}
    )
    assert poly.diagonal(3, P) == expected


def test_seven_gon_generalized_delta2():
    poly = build_polygon(7, 5)
    asc = {(e(i), e(j)): 1 for i in range(1, 5) for j in range(i + 1, 5)}
    assert len(asc) == 6
    desc = {(e(7), e(6)): -1, (e(7), e(5)): -1, (e(6), e(5)): -1}
    expected = TensorElement({**asc, **desc, (v(1), P): 1, (P, v(5)): 1})
    assert poly.diagonal(2, P) == expected


def test_seven_gon_delta5_vanishes():
    assert build_polygon(7, 5).diagonal(5, P).is_zero()


@pytest.mark.parametrize("n,t", GRID)
def test_vertex_diagonal(n, t):
    poly = build_polygon(n, t)
    for i in range(1, n + 1):
        assert poly.diagonal(2, v(i)) == TensorElement.of(v(i), v(i))


def test_reversed_edge_diagonal():
    poly = build_polygon(7, 5)
    assert poly.diagonal(2, e(5)) == TensorElement({(v(6), e(5)): 1, (e(5), v(5)): 1})
    assert poly.diagonal(2, e(7)) == TensorElement({(v(1), e(7)): 1, (e(7), v(7)): 1})


def test_diagonal_rejects_bad_input(pentagon):
    with pytest.raises(ValueError):
        pentagon.delta(1)
    with pytest.raises(KeyError):
        pentagon.diagonal(2, Cell(2, "Q"))


@pytest.mark.parametrize("n,t", GRID)
def test_generalized_diagonal_against_enumeration(n, t):
    poly = build_polygon(n, t)
    for k in range(3, n + 2):
        asc = ascending(range(1, t), k)
        desc = {w: -a for w, a in ascending(range(n, t - 1, -1), k).items()}
        assert as_dict(poly.diagonal(k, P)) == {**asc, **desc}


@pytest.mark.parametrize("n,t", GRID)
def test_boundary_squares_to_zero(n, t):
    poly = build_polygon(n, t)
    for c in poly.cells:
        assert poly.boundary.apply(poly.boundary_of(c)).is_zero()


@pytest.mark.parametrize("n,t", GRID)
def test_leibniz(n, t):
    poly = build_polygon(n, t)
    delta = hom_differential(poly.delta(2), poly.boundary)
    assert all(delta(c).is_zero() for c in poly.cells)


@pytest.mark.parametrize("n", range(3, 13))
def test_word_counts_standard(n):
    poly = build_polygon(n)
    for k in range(2, n + 3):
        words = poly.diagonal(k, P)
        expected = comb(n - 1, k) + (2 if k == 2 else 0) if k < n else 0
        assert len(words) == expected


@pytest.mark.parametrize("n,t", GRID)
def test_vanishing_threshold(n, t):
    poly = build_polygon(n, t)
    threshold = max(t, n - t + 2)
    for k in range(2, n + 3):
        assert poly.diagonal(k, P).is_zero() == (k >= threshold)


@pytest.mark.parametrize("n,t", GRID)
def test_support_shape(n, t):
    poly = build_polygon(n, t)
    for k in range(3, n + 1):
        val = poly.diagonal(k, P)
        positive = {w for w, a in val.items() if a > 0}
        negative = {w for w, a in val.items() if a < 0}
        assert all(abs(a) == 1 for _, a in val.items())
        assert all(all(c.dim == 1 for c in w) for w in val.keys())
        if t == n:
            assert not negative
        assert not positive & negative
        for c in poly.vertices + poly.edges:
            assert poly.diagonal(k, c).is_zero()


def test_split_shapes():
    s = split_polygons(7, 5)
    assert (s.first.n, s.second.n) == (5, 4)
    assert s.first.initial == s.second.initial == v(1)
    assert s.first.terminal == s.second.terminal == v(5)
    s = split_polygons(4, 3)
    assert (s.first.n, s.second.n) == (3, 3)


def test_split_boundaries_add_up():
    s = split_polygons(7, 5)
    b1 = s.first.boundary_of(s.first.face)
    b2 = s.second.boundary_of(s.second.face)
    assert b1 == ChainElement({e(1): 1, e(2): 1, e(3): 1, e(4): 1, e(0): -1})
    assert b2 == ChainElement({e(5): -1, e(6): -1, e(7): -1, e(0): 1})
    assert b1 + b2 == s.polygon.boundary_of(P)


def test_split_rejects_standard_polygon():
    with pytest.raises(ValueError):
        split_polygons(6, 6)


@pytest.mark.parametrize("n,t", [(n, t) for n, t in GRID if t < n])
def test_split_identity(n, t):
    s = split_polygons(n, t)
    for k in range(2, n + 2):
        chord, diff = split_defect(s, k)
        assert chord.is_zero()
        assert diff.is_zero()
