import itertools
from fractions import Fraction

import pytest

from virtualih.exactmath import QuadraticField
from virtualih.fan import (FanError, boundary_fan, build_fan, check_strictly_convex,
                           facet_connected_components, flattened_boundary_fan, is_complete,
                           is_simplicial, orientation_coefficient, skeleton, star,
                           transversal_fan)
from virtualih.fansheaf import cochain_complex, constant_sheaf


def test_affine_two_cone():
    f = build_fan([(1, 0), (0, 1)], [[0, 1]])
    assert len(f.cones) == 4
    assert not is_complete(f)
    assert f.cones[0].dim == 0 and f.cones[0].rays == ()


def test_p1_is_complete():
    assert is_complete(build_fan([(1,), (-1,)], [[0], [1]]))


def test_non_face_intersection_is_rejected():
    # the two cones overlap in a full-dimensional region
    with pytest.raises(FanError) as err:
        build_fan([(1, 0), (1, 1), (0, 1)], [[0, 2], [1, 2]])
    assert err.value.witness


def test_duplicate_and_zero_rays():
    with pytest.raises(FanError):
        build_fan([(1, 0), (2, 0)], [[0], [1]])
    with pytest.raises(FanError):
        build_fan([(0, 0)], [[0]])


def test_non_pointed_cone_is_rejected():
    with pytest.raises(FanError):
        build_fan([(1, 0), (-1, 0), (0, 1)], [[0, 1, 2]])


def test_cube_face_lattice(fan):
    cube = fan("cube")
    assert len(cube.cones) == 27
    assert cube.f_vector() == [8, 12, 6]
    assert is_complete(cube) and not is_simplicial(cube)
    assert len(skeleton(cube, 1).cones) == 9
    assert len(skeleton(cube, 0).cones) == 1
    assert len(skeleton(cube, 3).cones) == 27


def test_simplicial_faces_count(fan):
    octa = fan("octahedron")
    for c in octa.cones:
        assert len(octa.faces[c.id]) == 2 ** c.dim


def test_boundary_fans(fan):
    assert len(boundary_fan(fan("p1xp1")).cones) == 1
    assert len(boundary_fan(fan("quadrant")).cones) == 3
    half = fan("half_plane")
    b = half.boundary_ids()
    assert sorted(tuple(half.cones[c].rays) for c in b) == [(), (0,), (2,)]


def test_star(fan):
    f = fan("p1xp1")
    assert star(f, 0) == frozenset(range(len(f.cones)))
    ray = f.cone_by_rays([0])
    assert len(star(f, ray)) == 3
    top = f.maximal[0]
    assert star(f, top) == {top}


def test_transversal_fans(fan):
    f = fan("square_cone")
    t0, _ = transversal_fan(f, 0)
    assert len(t0.cones) == len(f.cones)
    tf, back = transversal_fan(f, f.cone_by_rays([0]))
    assert tf.ambient_dim == 2 and len(tf.cones) == 4
    top, _ = transversal_fan(f, f.maximal[0])
    assert top.ambient_dim == 0 and len(top.cones) == 1


def test_transversal_poset_is_interval(fan):
    cube = fan("cube")
    for c in cube.cones:
        tf, back = transversal_fan(cube, c.id)
        assert tf.ambient_dim == 3 - c.dim
        assert len(tf.cones) == len(cube.star(c.id))


@pytest.mark.parametrize("name, rays", [("quadrant", 2), ("orthant3", 3), ("square_cone", 4)])
def test_flattened_boundary_fan(fan, name, rays):
    f = fan(name)
    lam, pl = flattened_boundary_fan(f, f.maximal[0])
    assert is_complete(lam)
    assert len(lam.ids_of_dim(1)) == rays
    assert check_strictly_convex(lam, pl)[0]
    assert len(lam.cones) == len(f.cones) - 1     # poset of the boundary


def test_facet_components(fan):
    assert len(facet_connected_components(fan("cube"))) == 1
    assert len(facet_connected_components(fan("two_opposite_cones"))) == 2
    assert len(facet_connected_components(fan("prism_sides"))) == 1


def test_orientation_signs_and_dd(fan):
    cube = fan("cube")
    for (t, s), v in cube.orientation.items():
        assert orientation_coefficient(cube, t, s) == v in (1, -1)
    for relative in (False, True):
        assert cochain_complex(cube, constant_sheaf(cube), 0, relative=relative).check_dd()
    with pytest.raises(FanError):
        orientation_coefficient(cube, 0, cube.maximal[0])


def test_flipped_orientation_keeps_cohomology():
    from virtualih.fansheaf import cohomology_dims
    a = build_fan([(1, 0), (0, 1), (-1, 0)], [[0, 1], [1, 2]])
    b = build_fan([(1, 0), (0, -1), (-1, 0)], [[0, 1], [1, 2]])   # mirror image
    for rel in (False, True):
        assert (cohomology_dims(cochain_complex(a, constant_sheaf(a), 0, relative=rel))
                == cohomology_dims(cochain_complex(b, constant_sheaf(b), 0, relative=rel)))


def test_quadratic_coordinates():
    K = QuadraticField(5)
    phi = K.parse("1/2+1/2*sqrt(5)")
    f = build_fan([(1, 0, 1), (0, 1, 1), (-phi, 0, 1), (0, -1, 1)], [[0, 1, 2, 3]], field=K)
    assert len(f.cones) == 10 and not f.cones[-1].is_simplicial


def test_strict_convexity_detects_linear_function(fan):
    from virtualih.fan import PiecewiseLinear
    f = fan("p1xp1")
    linear = PiecewiseLinear({c: (Fraction(1), Fraction(0)) for c in f.maximal})
    assert not check_strictly_convex(f, linear)[0]


def test_poset_interval(fan):
    p = fan("square_cone").poset()
    top = len(p) - 1
    ray = 1
    q = p.interval(ray, top)
    assert q.dims[-1] == 2 and len(q) == 4
