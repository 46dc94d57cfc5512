"""Good geodesics, contracting bounds, and the truncated boundary atlas."""

import itertools
import random
from fractions import Fraction

import pytest

from systolic.boundary import (C_DEFAULT, D_DEFAULT, GoodnessError,
                               atlas_report, boundary_atlas, contracting_check,
                               corollary_contr_check, in_standard_neighborhood,
                               is_good_geodesic, make_good_geodesic,
                               rays_equivalent_truncated)
from systolic.complex import FlagComplex
from systolic.generators import flat_parallelogram, flat_rectangle, gen_disc_with_degrees
from systolic.metric import dist, dist_map
from systolic.suites import extremal_geodesic


def corner_pair(X):
    return (min(X.vertices, key=lambda v: X.coords[v]),
            max(X.vertices, key=lambda v: X.coords[v]))


def test_length_one_path_is_good():
    X = flat_parallelogram(3, 3)
    v = X.vertices[0]
    w = min(X.adjacency[v])
    good, witness = is_good_geodesic(X, [v, w])
    assert witness is None and good.max_certificate == 0


def test_non_geodesic_rejected():
    X = flat_parallelogram(3, 3)
    v = X.vertices[0]
    w = min(X.adjacency[v])
    with pytest.raises(ValueError):
        is_good_geodesic(X, [v, w, v])


def test_make_good_geodesic_certifies():
    for X, pair in [(flat_parallelogram(8, 2), None),
                    (gen_disc_with_degrees(3, rings=3), None)]:
        if pair is None:
            if X.coords is not None:
                u, w = corner_pair(X)
            else:
                dm = dist_map(X, (X.vertices[0],))
                u = max(dm, key=lambda v: dm[v])
                dm2 = dist_map(X, (u,))
                w = max(dm2, key=lambda v: dm2[v])
        good = make_good_geodesic(X, u, w)
        assert good.path[0] == u and good.path[-1] == w
        verified, witness = is_good_geodesic(X, good.path)
        assert witness is None
        assert verified.max_certificate <= C_DEFAULT + 1


def test_straight_lattice_line_certificate_small():
    X = flat_rectangle(2, 8)
    row = [v for v in X.vertices if X.coords[v][0] == 0]
    row.sort(key=lambda v: X.coords[v][1])
    good, witness = is_good_geodesic(X, row)
    assert witness is None
    assert good.max_certificate <= 1


def test_subpaths_of_good_geodesics_are_good():
    X = flat_parallelogram(8, 2)
    u, w = corner_pair(X)
    good = make_good_geodesic(X, u, w)
    sub = good.path[2:7]
    verified, witness = is_good_geodesic(X, sub)
    assert witness is None


def test_contracting_identical_targets():
    X = flat_parallelogram(6, 2)
    t, s = corner_pair(X)
    excess, _ = contracting_check(X, t, s, s)
    assert excess <= 0


def test_contracting_flat_triples():
    X = flat_rectangle(7, 4)
    t, s = corner_pair(X)
    rng = random.Random(0)
    for _ in range(5):
        s2 = rng.choice([v for v in X.vertices if v not in (t, s)])
        excess, _ = contracting_check(X, t, s, s2)
        assert excess <= C_DEFAULT
        assert excess < 10  # far below the bound on flat instances


def test_corollary_contr_basics():
    X = flat_rectangle(7, 4)
    O, far = corner_pair(X)
    v_path = extremal_geodesic(X, O, far, largest=False)
    assert corollary_contr_check(X, v_path, v_path) <= 0
    # two lattice rays from a corner
    right = max((v for v in X.vertices if X.coords[v][0] == 0),
                key=lambda v: X.coords[v][1])
    up = max((v for v in X.vertices if X.coords[v][1] <= Fraction(7, 2)),
             key=lambda v: X.coords[v][0])
    ray1 = extremal_geodesic(X, O, right)
    ray2 = extremal_geodesic(X, O, up)
    excess = corollary_contr_check(X, ray1, ray2)
    assert excess <= 2


def test_corollary_contr_prime_form():
    # |v_N w_N| <= 2 |v_k w_l| + D for good geodesics from a common basepoint
    X = flat_rectangle(6, 4)
    O, far = corner_pair(X)
    paths = [extremal_geodesic(X, O, far, False),
             extremal_geodesic(X, O, far, True)]
    g1, g2 = paths
    for N in range(min(len(g1), len(g2))):
        for k in range(N, len(g1)):
            for l in range(N, len(g2)):
                lhs = dist(X, (g1[N],), (g2[N],))
                rhs = 2 * dist(X, (g1[k],), (g2[l],)) + D_DEFAULT
                assert lhs <= rhs


def test_rays_equivalent_truncated():
    X = flat_rectangle(8, 8)
    O = min(X.vertices, key=lambda v: X.coords[v])
    row_target = next(v for v in X.vertices if X.coords[v] == (0, Fraction(6)))
    line_target = next(v for v in X.vertices if X.coords[v] == (6, Fraction(3)))
    a, _ = is_good_geodesic(X, extremal_geodesic(X, O, row_target))
    b, _ = is_good_geodesic(X, extremal_geodesic(X, O, row_target))
    assert rays_equivalent_truncated(X, a, b) == ("equivalent-so-far", None)
    # two lattice rays diverging linearly from the corner
    c, _ = is_good_geodesic(X, extremal_geodesic(X, O, line_target))
    verdict, idx = rays_equivalent_truncated(X, a, c, D=2)
    assert verdict == "distinct" and idx == 3
    verdict, _ = rays_equivalent_truncated(X, a, c, D=1000)
    assert verdict == "equivalent-so-far"


def test_standard_neighborhood():
    X = flat_rectangle(2, 10)
    O = min(X.vertices, key=lambda v: X.coords[v])
    row0 = sorted((v for v in X.vertices if X.coords[v][0] == 0),
                  key=lambda v: X.coords[v][1])
    eta, _ = is_good_geodesic(X, extremal_geodesic(X, O, row0[8]))
    assert in_standard_neighborhood(X, eta, eta, N=3, R=D_DEFAULT + 1)
    with pytest.raises(ValueError):
        in_standard_neighborhood(X, eta, eta, N=3, R=D_DEFAULT)
    # threshold behavior with a small explicit D
    diag = max(X.vertices, key=lambda v: (X.coords[v][0], X.coords[v][1]))
    zeta, _ = is_good_geodesic(X, extremal_geodesic(X, O, row0[8])[:9])
    gap = dist(X, (zeta.path[3],), (eta.path[3],))
    assert in_standard_neighborhood(X, zeta, eta, N=3, R=max(gap, 3), D=2)
    far = extremal_geodesic(X, O, diag, largest=True)
    if len(far) > 3:
        far_g, _ = is_good_geodesic(X, far[:9] if len(far) > 9 else far)
        d3 = dist(X, (far_g.path[3],), (eta.path[3],))
        if d3 > 3:
            assert not in_standard_neighborhood(X, far_g, eta, N=3,
                                                R=d3 - 1, D=2)


def test_disjoint_neighborhoods_by_enumeration():
    # gap condition |v_N w_N| > R + S + D + 2 forces disjoint neighborhoods
    X = flat_rectangle(2, 14)
    O = next(v for v in X.vertices if X.coords[v] == (1, Fraction(15, 2)))
    N, R, S, D = 4, 3, 3, 2
    atlas = boundary_atlas(X, O, N, D=D, cap=2000)
    rays = atlas.rays
    for eta, xi in itertools.combinations(rays, 2):
        if dist(X, (eta.path[N],), (xi.path[N],)) > R + S + D + 2:
            for zeta in rays:
                both = (in_standard_neighborhood(X, zeta, eta, N, R, D=D)
                        and in_standard_neighborhood(X, zeta, xi, N, S, D=D))
                assert not both


def test_atlas_star_graph():
    X = FlagComplex.from_edges([(0, i) for i in range(1, 6)])
    atlas = boundary_atlas(X, 0, 1)
    assert len(atlas.rays) == 5
    assert len(atlas.classes) == 1  # leaves pairwise at distance 2 <= D
    assert atlas.raw_violations == 0


def test_atlas_radius_zero_single_class():
    X = flat_parallelogram(3, 3)
    atlas = boundary_atlas(X, X.vertices[0], 0)
    assert len(atlas.classes) == 1


def spider(arms: int, length: int) -> FlagComplex:
    edges = []
    vid = 1
    for _ in range(arms):
        prev = 0
        for _ in range(length):
            edges.append((prev, vid))
            prev = vid
            vid += 1
    return FlagComplex.from_edges(edges)


def test_atlas_separated_directions():
    # genuinely separated ray directions stay separate under the closure,
    # and the class count grows with the number of directions
    for arms in (3, 5):
        X = spider(arms, 4)
        atlas = boundary_atlas(X, 0, 4, D=1)
        assert len(atlas.rays) == arms
        assert len(atlas.classes) == arms
        assert atlas.raw_violations == 0


def test_atlas_flat_disc_surfaces_truncation_artifact():
    # on a flat disc the sphere of rays is connected, so the union-find
    # closure collapses to one class while the raw relation is visibly
    # non-transitive
    X = flat_rectangle(6, 6)
    center = next(v for v in X.vertices if X.coords[v] == (3, Fraction(7, 2)))
    atlas = boundary_atlas(X, center, 3, D=1)
    assert len(atlas.classes) == 1
    assert atlas.raw_violations > 0


def test_atlas_cap_flagged():
    X = flat_rectangle(6, 6)
    center = next(v for v in X.vertices if X.coords[v] == (3, Fraction(7, 2)))
    atlas = boundary_atlas(X, center, 2, cap=3)
    assert atlas.capped


def test_atlas_report_deterministic():
    X = flat_rectangle(4, 4)
    center = next(v for v in X.vertices if X.coords[v] == (2, Fraction(2)))
    a1 = atlas_report(boundary_atlas(X, center, 2, D=1))
    a2 = atlas_report(boundary_atlas(X, center, 2, D=1))
    assert a1 == a2
    as_json = atlas_report(boundary_atlas(X, center, 2, D=1), as_json=True)
    import json
    parsed = json.loads(as_json)
    assert parsed["basepoint"] == center and parsed["D"] == 1
