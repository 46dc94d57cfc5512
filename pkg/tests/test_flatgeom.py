"""Defects, Gauss-Bonnet, flat embeddings, and exact CAT(0) geodesics."""

import math
import random
from fractions import Fraction

import pytest

from systolic.complex import FlagComplex
from systolic.flatgeom import (DiscError, EmbedError, GenCharDisc, PolyPath,
                               as_disc, d_close, defect, embed_flat_disc,
                               gauss_bonnet_sum, is_flat,
                               placements_congruent, polygon_geodesic,
                               polygon_geodesic_bruteforce)
from systolic.generators import (flat_parallelogram, flat_rectangle,
                                 gen_disc_with_degrees, gen_flat_region,
                                 random_flat_disc)
from systolic.svg import poly_path_points, render_svg

HALF = Fraction(1, 2)


def single_triangle():
    return as_disc(FlagComplex.from_edges([(0, 1), (1, 2), (0, 2)]))


def hexagon_wheel_disc():
    return as_disc(FlagComplex.from_edges(
        [(0, i) for i in range(1, 7)] + [(i, i % 6 + 1) for i in range(1, 7)]))


def wheel_disc(spokes):
    return as_disc(FlagComplex.from_edges(
        [(0, i) for i in range(1, spokes + 1)]
        + [(i, i % spokes + 1) for i in range(1, spokes + 1)]))


def test_defect_examples():
    tri = single_triangle()
    assert all(defect(tri, v) == 2 for v in (0, 1, 2))
    wheel = hexagon_wheel_disc()
    assert defect(wheel, 0) == 0
    assert all(defect(wheel, v) == 1 for v in range(1, 7))


def test_gauss_bonnet():
    assert gauss_bonnet_sum(single_triangle()) == 6
    assert gauss_bonnet_sum(hexagon_wheel_disc()) == 6
    for seed in range(10):
        disc = as_disc(gen_disc_with_degrees(seed, rings=random.Random(seed).randint(1, 3)))
        assert gauss_bonnet_sum(disc) == 6


def test_is_flat():
    assert is_flat(as_disc(flat_rectangle(4, 4)))[0]
    assert is_flat(single_triangle())[0]
    seven = wheel_disc(7)
    ok, witness = is_flat(seven)
    assert not ok and witness == ("interior", 0)


def test_as_disc_rejects_non_discs():
    with pytest.raises(DiscError):
        as_disc(FlagComplex.from_edges([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]))


def test_embed_single_triangle():
    pos = embed_flat_disc(single_triangle())
    from systolic.lattice import lattice_adjacent
    pts = list(pos.values())
    assert all(lattice_adjacent(p, q) for i, p in enumerate(pts) for q in pts[i + 1:])


def test_embed_recovers_generator_coordinates():
    for X in (flat_rectangle(4, 3), flat_parallelogram(3, 4)):
        pos = embed_flat_disc(as_disc(X))
        assert placements_congruent(pos, X.coords)


def test_embed_fails_on_nonflat():
    with pytest.raises(EmbedError):
        embed_flat_disc(wheel_disc(7))


def test_random_flat_discs_embed():
    for seed in range(8):
        X = random_flat_disc(seed)
        pos = embed_flat_disc(as_disc(X))
        assert placements_congruent(pos, X.coords)


# --- polygon geodesics ------------------------------------------------------


def test_geodesic_straight_vertical():
    disc = GenCharDisc(0, tuple((Fraction(-2), Fraction(2)) for _ in range(5)))
    path = polygon_geodesic(disc, (0, Fraction(1)), (4, Fraction(1)))
    assert path.xs == (1, 1, 1, 1, 1)


def test_geodesic_bends_at_boundary_vertex():
    # middle row pinched to [1, 3]: the straight chord would cross at 0
    disc = GenCharDisc(0, ((Fraction(-4), Fraction(4)),
                           (Fraction(1), Fraction(3)),
                           (Fraction(-4), Fraction(4))))
    path = polygon_geodesic(disc, (0, Fraction(0)), (2, Fraction(0)))
    assert path.xs == (0, 1, 0)


def test_geodesic_staircase_matches_oracle():
    disc = GenCharDisc(0, ((Fraction(0), Fraction(0)),
                           (Fraction(-1), Fraction(1, 2)),
                           (Fraction(1, 2), Fraction(3)),
                           (Fraction(2), Fraction(2))))
    p, q = (0, Fraction(0)), (3, Fraction(2))
    funnel = polygon_geodesic(disc, p, q)
    brute = polygon_geodesic_bruteforce(disc, p, q)
    assert funnel.xs == brute.xs


def test_geodesic_point_doors():
    disc = GenCharDisc(0, ((Fraction(0), Fraction(2)),
                           (Fraction(1), Fraction(1)),
                           (Fraction(-1), Fraction(3))))
    path = polygon_geodesic(disc, (0, Fraction(0)), (2, Fraction(3)))
    assert path.xs[1] == 1


def test_geodesic_reversal_symmetry():
    rng = random.Random(11)
    for _ in range(60):
        nrows = rng.randint(2, 7)
        rows = []
        lo = Fraction(rng.randint(-4, 4), 2)
        for _ in range(nrows):
            lo = lo + Fraction(rng.randint(-2, 2), 2)
            rows.append((lo, lo + Fraction(rng.randint(0, 8), 2)))
        disc = GenCharDisc(0, tuple(rows))
        p = (0, rows[0][0])
        q = (nrows - 1, rows[-1][1])
        fwd = polygon_geodesic(disc, p, q)
        rev_disc = GenCharDisc(0, tuple(reversed(rows)))
        rev = polygon_geodesic(rev_disc, (0, rows[-1][1]), (nrows - 1, rows[0][0]))
        assert fwd.xs == tuple(reversed(rev.xs))


def _length(xs):
    return sum(math.sqrt(float((b - a) ** 2) + 0.75) for a, b in zip(xs, xs[1:]))


def test_geodesic_not_longer_than_boundary_paths():
    rng = random.Random(12)
    for _ in range(30):
        nrows = rng.randint(2, 6)
        rows = []
        lo = Fraction(0)
        for _ in range(nrows):
            lo = lo + Fraction(rng.randint(-1, 1), 2)
            rows.append((lo, lo + Fraction(rng.randint(1, 6), 2)))
        disc = GenCharDisc(0, tuple(rows))
        p = (0, rows[0][0])
        q = (nrows - 1, rows[-1][1])
        geo = polygon_geodesic(disc, p, q)
        left = [r[0] for r in rows[:-1]] + [rows[-1][1]]
        right = [rows[0][0]] + [r[1] for r in rows[1:]]
        assert _length(geo.xs) <= _length(left) + 1e-9
        assert _length(geo.xs) <= _length(right) + 1e-9


def test_funnel_equals_bruteforce_randomized():
    rng = random.Random(13)
    for _ in range(120):
        nrows = rng.randint(2, 8)
        rows = []
        for _ in range(nrows):
            lo = Fraction(rng.randint(-8, 8), 2)
            rows.append((lo, lo + Fraction(rng.randint(0, 9), 2)))
        disc = GenCharDisc(rng.randint(-3, 3), tuple(rows))
        lo0, hi0 = rows[0]
        lom, him = rows[-1]
        p = (disc.first_row, lo0 + (hi0 - lo0) * Fraction(rng.randint(0, 3), 3))
        q = (disc.last_row, lom + (him - lom) * Fraction(rng.randint(0, 3), 3))
        assert polygon_geodesic(disc, p, q).xs == \
            polygon_geodesic_bruteforce(disc, p, q).xs


def test_geodesic_endpoint_validation():
    disc = GenCharDisc(0, ((Fraction(0), Fraction(1)), (Fraction(0), Fraction(1))))
    with pytest.raises(ValueError):
        polygon_geodesic(disc, (0, Fraction(5)), (1, Fraction(0)))
    with pytest.raises(ValueError):
        polygon_geodesic(disc, (1, Fraction(0)), (0, Fraction(0)))


def test_d_close():
    a = PolyPath(0, (Fraction(0), Fraction(0), Fraction(0)))
    b = PolyPath(0, (Fraction(3), Fraction(3), Fraction(3)))
    assert d_close(a, a) == 0
    assert d_close(a, b) == 3
    with pytest.raises(ValueError):
        d_close(a, PolyPath(1, (Fraction(0), Fraction(0), Fraction(0))))


def test_svg_deterministic():
    X = flat_parallelogram(3, 3)
    path = PolyPath(0, (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2)))
    svg1 = render_svg(X.coords, X.edges(), X.triangles(), [poly_path_points(path)])
    svg2 = render_svg(X.coords, X.edges(), X.triangles(), [poly_path_points(path)])
    assert svg1 == svg2
    assert svg1.startswith("<svg ") and svg1.rstrip().endswith("</svg>")
    assert svg1.count("<polygon") == len(X.triangles())
    assert svg1.count("<polyline") == 1


def test_canonical_placement_isometry_invariant():
    from systolic.lattice import (canonical_placement, from_cube, point_group,
                                  to_cube)

    rng = random.Random(21)
    X = flat_parallelogram(4, 3)
    pts = list(X.coords.values())
    group = point_group()
    base = canonical_placement(pts)
    for _ in range(10):
        f = rng.choice(group)
        dr = rng.randint(-5, 5)
        dx2 = rng.randint(-5, 5)
        shift = (dr, Fraction(2 * dx2 + dr, 2))
        moved = []
        for p in pts:
            q = from_cube(f(to_cube(p)))
            moved.append((q[0] + shift[0], q[1] + shift[1]))
        assert canonical_placement(moved) == base
    # a genuinely different shape canonicalizes differently
    other = list(flat_rectangle(4, 3).coords.values())
    assert canonical_placement(other) != base
