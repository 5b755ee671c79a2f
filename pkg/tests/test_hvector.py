import pytest
from hypothesis import given, strategies as st

from virtualih.hvector import (PoincarePolynomial as P, PoincareSeries, assumes_v,
                               classical_h_from_f, duality_check, global_poincare, kalai_check,
                               local_poincare, poincare_series, truncate_below)


def test_truncation():
    assert truncate_below(P((1, 1, -1)), 3) == P((1, 1))
    assert truncate_below(P((5, 2)), 0) == P((0,))
    assert truncate_below(P((1, 2, 1)), 7) == P((1, 2, 1))


def test_polynomial_text_round_trip():
    p = P.parse("[1,5,5,1]")
    assert str(p) == "[1,5,5,1]" and p.degree == 6
    assert P.parse(str(P((0, 0, 1)))) == P((0, 0, 1))


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_product_is_commutative(a, b):
    assert P(tuple(a)) * P(tuple(b)) == P(tuple(b)) * P(tuple(a))


def test_classical_h():
    assert classical_h_from_f([6, 12, 8]).to_list() == [1, 3, 3, 1]
    assert classical_h_from_f([2]).to_list() == [1, 1]
    assert classical_h_from_f([4, 4]).to_list() == [1, 2, 1]


@pytest.mark.parametrize("name, top, value", [
    ("quadrant", None, [1]), ("orthant3", None, [1]),
    ("square_cone", None, [1, 1]), ("cube_cone", None, [1, 4]),
    ("octahedron_cone", None, [1, 2])])
def test_local_values(fan, name, top, value):
    f = fan(name)
    assert local_poincare(f.poset(), f.maximal[0]).to_list() == value


@pytest.mark.parametrize("name, value", [("p1", [1, 1]), ("p1xp1", [1, 2, 1]),
                                         ("cube", [1, 5, 5, 1]), ("octahedron", [1, 3, 3, 1]),
                                         ("half_plane", [1, 1])])
def test_global_values(fan, name, value):
    assert global_poincare(fan(name).poset()).to_list() == value


def test_half_plane_duality(fan):
    res = duality_check(fan("half_plane").poset())
    assert res["relative"].to_list() == [0, 1, 1] and res["holds"]


def test_kalai_examples(fan):
    f = fan("square_cone")
    p = f.poset()
    top = f.maximal[0]
    assert kalai_check(p, top, 0)["lhs"] == kalai_check(p, top, 0)["rhs"]
    res = kalai_check(p, top, f.cone_by_rays([0]))
    assert res["holds"] and res["lhs"] != res["rhs"]
    assert kalai_check(p, top, top)["lhs"] == kalai_check(p, top, top)["rhs"]


def test_series(fan):
    s = poincare_series(fan("square_cone").poset(), fan("square_cone").maximal[0])
    assert s == PoincareSeries(P((1, 1)), 3)
    assert s.expand(2) == [1, 4, 9]
    assert poincare_series(fan("p1").poset()).expand(3) == [1, 2, 2, 2]


def test_provenance(fan):
    f = fan("sqrt5_square_cone")
    assert assumes_v(f.poset(), f.maximal[0], rational=False)
    assert not assumes_v(f.poset(), f.maximal[0], rational=True)
    q = fan("quadrant")
    assert not assumes_v(q.poset(), q.maximal[0], rational=False)


def test_poset_invariance(fan):
    a, b = fan("square_cone"), fan("sqrt5_square_cone")
    assert local_poincare(a.poset(), a.maximal[0]) == local_poincare(b.poset(), b.maximal[0])


def test_non_pure_is_rejected():
    from virtualih.fan import FanError, build_fan
    f = build_fan([(1, 0), (0, 1), (-1, 0)], [[0, 1], [2]])
    with pytest.raises(FanError):
        global_poincare(f.poset())
