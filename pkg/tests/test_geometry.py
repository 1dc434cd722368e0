import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from objsteiner import geometry as G


def disk(x, y, r, w=1, term=False):
    return G.GeometricObject(G.Disk(G.Point(x, y), r), w, term)


def square(x, y, s, w=1, term=False):
    return G.GeometricObject(G.AxisSquare(G.Point(x, y), s), w, term)


def test_disk_disk_intersection():
    assert G.intersects(disk(0, 0, 1), disk(1.5, 0, 1))
    assert not G.intersects(disk(0, 0, 1), disk(2.5, 0, 1))
    # tangency counts (closed sets)
    assert G.intersects(disk(0, 0, 1), disk(2, 0, 1))


def test_square_square_intersection():
    assert not G.intersects(square(0, 0, 1), square(2, 2, 1))
    assert G.intersects(square(0, 0, 1), square(1, 1, 1))  # shared corner
    assert G.intersects(square(0, 0, 2), square(1, 1, 1))


def test_polygon_cases():
    tri = G.GeometricObject(G.SimplePolygon((G.Point(0, 0), G.Point(3, 0), G.Point(0, 4))))
    assert G.intersects(tri, disk(1, 1, 0.5))
    assert not G.intersects(tri, disk(10, 10, 1))
    inside = G.GeometricObject(G.SimplePolygon((G.Point(0.5, 0.5), G.Point(1.0, 0.5), G.Point(0.7, 1.0))))
    assert G.intersects(tri, inside)  # containment, no boundary crossing
    pt = G.GeometricObject(G.PointShape(G.Point(1, 1)))
    assert G.intersects(tri, pt)


def test_rotated_square_is_l1_ball():
    rs = G.GeometricObject(G.RotatedSquare(G.Point(0, 0), 1))
    assert G.intersects(rs, G.GeometricObject(G.PointShape(G.Point(0.5, 0.5))))
    assert not G.intersects(rs, G.GeometricObject(G.PointShape(G.Point(0.6, 0.6))))
    assert G.diameter(rs) == 2


def test_self_intersecting_polygon_rejected():
    with pytest.raises(ValueError):
        G.GeometricObject(
            G.SimplePolygon((G.Point(0, 0), G.Point(1, 1), G.Point(1, 0), G.Point(0, 1)))
        )


def test_nonpositive_weight_rejected():
    with pytest.raises(ValueError):
        disk(0, 0, 1, w=0)


def test_diameter_values():
    assert G.diameter(disk(0, 0, 1)) == 2
    assert abs(G.diameter(square(0, 0, 1)) - math.sqrt(2)) < 1e-12
    tri = G.GeometricObject(G.SimplePolygon((G.Point(0, 0), G.Point(3, 0), G.Point(0, 4))))
    assert abs(G.diameter(tri) - 5) < 1e-12


def test_diameter_dominates_sampled_pairs():
    rng = random.Random(5)
    for _ in range(20):
        o = disk(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0.5, 2))
        d = G.diameter(o)
        c, r = o.shape.center, o.shape.radius
        for _ in range(30):
            a1, a2 = rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)
            p = G.Point(c.x + r * math.cos(a1), c.y + r * math.sin(a1))
            q = G.Point(c.x + r * math.cos(a2), c.y + r * math.sin(a2))
            assert math.sqrt(G.dist2(p, q)) <= d + 1e-9


def test_contains_unit_diameter_disk():
    assert G.contains_unit_diameter_disk(disk(0, 0, 1))
    assert not G.contains_unit_diameter_disk(disk(0, 0, 0.4))
    assert G.contains_unit_diameter_disk(square(0, 0, 1))
    thin = G.GeometricObject(
        G.SimplePolygon((G.Point(0, 0), G.Point(10, 0), G.Point(10, 0.3), G.Point(0, 0.3)))
    )
    assert not G.contains_unit_diameter_disk(thin)
    pt = G.GeometricObject(G.PointShape(G.Point(0, 0)))
    assert not G.contains_unit_diameter_disk(pt)


def test_inscribed_disk_agrees_with_grid_oracle():
    rng = random.Random(11)
    for _ in range(12):
        n = rng.choice([5, 6, 7])
        rad = rng.uniform(0.4, 1.1)
        pts = tuple(
            G.Point(rad * math.cos(2 * math.pi * i / n), rad * math.sin(2 * math.pi * i / n))
            for i in range(n)
        )
        o = G.GeometricObject(G.SimplePolygon(pts))
        lp = G.contains_unit_diameter_disk(o)
        # grid-sampling oracle
        expect = rad * math.cos(math.pi / n) >= 0.5  # exact inscribed radius
        if abs(rad * math.cos(math.pi / n) - 0.5) > 1e-3:
            assert lp == expect


@settings(max_examples=60, deadline=None)
@given(
    st.floats(-4, 4), st.floats(-4, 4), st.floats(0.3, 2.0),
    st.floats(-4, 4), st.floats(-4, 4), st.floats(0.3, 2.0),
)
def test_intersects_symmetric_reflexive(x1, y1, r1, x2, y2, r2):
    a, b = disk(x1, y1, r1), disk(x2, y2, r2)
    assert G.intersects(a, b) == G.intersects(b, a)
    assert G.intersects(a, a)


def test_validate_assumption_g():
    rep = G.validate_assumption_G([disk(0, 0, 1)], 4)
    assert rep.ok and rep.classification[0] == "disk"
    rep = G.validate_assumption_G([disk(0, 0, 0.5)], 4)
    assert not rep.ok and "radius" in rep.violations[0][1]
    rep = G.validate_assumption_G([square(0, 0, 1)], 8)
    assert rep.ok and rep.classification[0] == "fat"
    wide = G.GeometricObject(G.SimplePolygon((G.Point(0, 0), G.Point(9, 0), G.Point(9, 2), G.Point(0, 2))))
    rep = G.validate_assumption_G([wide], 8)
    assert not rep.ok
    with pytest.raises(ValueError):
        G.validate_assumption_G([], 2)
