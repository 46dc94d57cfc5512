"""Flag complex construction, largeness checks, generators, file format."""

import itertools
import random
from fractions import Fraction

import pytest

from systolic.complex import (FlagComplex, INFINITY, dumps_complex, is_k_large,
                              is_locally_6_large, loads_complex,
                              simply_connected_heuristic)
from systolic.flatgeom import as_disc, defect, gauss_bonnet_sum
from systolic.generators import (flat_parallelogram, flat_rectangle,
                                 gen_disc_with_degrees, gen_flat_region)

HALF = Fraction(1, 2)


def hexagon_wheel():
    return FlagComplex.from_edges([(0, i) for i in range(1, 7)]
                                  + [(i, i % 6 + 1) for i in range(1, 7)])


def octahedron():
    # two poles joined to an equatorial 4-cycle
    edges = [(0, i) for i in (2, 3, 4, 5)] + [(1, i) for i in (2, 3, 4, 5)]
    edges += [(2, 3), (3, 4), (4, 5), (5, 2)]
    return FlagComplex.from_edges(edges)


def torus_4x4():
    # 4x4 grid torus with one diagonal family; flag and not simply connected
    def vid(i, j):
        return (i % 4) * 4 + (j % 4)
    edges = set()
    for i in range(4):
        for j in range(4):
            edges.add(tuple(sorted((vid(i, j), vid(i + 1, j)))))
            edges.add(tuple(sorted((vid(i, j), vid(i, j + 1)))))
            edges.add(tuple(sorted((vid(i, j), vid(i + 1, j + 1)))))
    return FlagComplex.from_edges(sorted(edges))


def test_single_edge_has_no_triangle():
    X = FlagComplex.from_edges([(0, 1)])
    assert len(X) == 2 and X.edge_count() == 1
    assert not X.triangles()


def test_three_cycle_spans_triangle():
    X = FlagComplex.from_edges([(0, 1), (1, 2), (0, 2)])
    assert X.is_simplex((0, 1, 2))
    assert X.triangles() == [(0, 1, 2)]


def test_self_loop_rejected():
    with pytest.raises(ValueError):
        FlagComplex.from_edges([(3, 3)])


def test_flat_block_interior_degree_six():
    X = flat_rectangle(6, 6)
    interior = [v for v, (row, x) in X.coords.items()
                if 1 <= row <= 5 and X.coords[v][1] not in
                (min(c[1] for w, c in X.coords.items() if c[0] == row),
                 max(c[1] for w, c in X.coords.items() if c[0] == row))]
    assert interior
    assert all(X.degree(v) == 6 for v in interior)


def test_link_of_triangle_vertex_is_edge():
    X = FlagComplex.from_edges([(0, 1), (1, 2), (0, 2)])
    link = X.link((0,))
    assert link.vertices == (1, 2) and link.is_edge(1, 2)


def test_link_of_flat_interior_vertex_is_6_cycle():
    X = flat_parallelogram(4, 4)
    v = next(v for v in X.vertices if X.degree(v) == 6)
    link = X.link((v,))
    assert len(link) == 6
    assert all(link.degree(w) == 2 for w in link.vertices)
    assert link.is_connected()


def test_link_of_flat_interior_edge_is_two_points():
    X = flat_parallelogram(4, 4)
    v = next(v for v in X.vertices if X.degree(v) == 6)
    w = next(w for w in X.adjacency[v] if X.degree(w) == 6)
    link = X.link((v, w))
    assert len(link) == 2 and link.edge_count() == 0


def brute_force_induced_cycles(X, max_len):
    """Oracle: induced cycles by direct subset enumeration."""
    found = []
    for size in range(4, max_len + 1):
        for sub in itertools.combinations(X.vertices, size):
            induced = X.induced(sub)
            if all(induced.degree(v) == 2 for v in sub) and induced.is_connected():
                found.append(sub)
    return found


def test_induced_4_cycle_witnessed():
    X = FlagComplex.from_edges([(0, 1), (1, 2), (2, 3), (3, 0)])
    res = is_k_large(X, 5)
    assert not res.ok
    assert len(res.witness) == 4 and set(res.witness) == {0, 1, 2, 3}


def test_wheel_is_6_large():
    X = hexagon_wheel()
    assert is_k_large(X, 6).ok
    assert not brute_force_induced_cycles(X, 5)


def test_bare_6_cycle_not_infinity_large():
    X = FlagComplex.from_edges([(i, (i + 1) % 6) for i in range(6)])
    res = is_k_large(X, INFINITY)
    assert not res.ok and len(res.witness) == 6


def test_k_large_monotone():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(5, 10)
        edges = [(a, b) for a in range(n) for b in range(a + 1, n)
                 if rng.random() < 0.5]
        X = FlagComplex.from_edges(edges, vertices=range(n))
        verdicts = [is_k_large(X, k).ok for k in (4, 5, 6, 7, 8)]
        # true at k implies true at every smaller k
        for smaller, larger in zip(verdicts, verdicts[1:]):
            assert smaller or not larger


def test_locally_6_large_flat_region_and_octahedron():
    assert is_locally_6_large(flat_parallelogram(4, 4)).ok
    res = is_locally_6_large(octahedron())
    assert not res.ok
    simplex, cycle = res.witness
    assert len(cycle) == 4


def test_locally_6_large_single_simplex():
    X = FlagComplex.from_edges([(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)])
    assert is_locally_6_large(X).ok


def test_simply_connected_heuristic():
    assert simply_connected_heuristic(FlagComplex.from_edges([(0, 1), (1, 2), (0, 2)])) == "verified"
    assert simply_connected_heuristic(flat_rectangle(5, 5)) == "verified"
    assert simply_connected_heuristic(torus_4x4()) == "unknown"


def test_gen_flat_region_single_triangle():
    X = gen_flat_region([(Fraction(0), Fraction(1)), (HALF, HALF)])
    assert len(X) == 3 and len(X.triangles()) == 1


def test_gen_flat_region_rectangle_defects():
    X = flat_rectangle(5, 5)
    disc = as_disc(X)
    assert is_locally_6_large(X).ok
    interior = [v for v in X.vertices if v not in disc.boundary_set]
    assert interior and all(defect(disc, v) == 0 for v in interior)


def test_gen_flat_region_parallelogram_corner_defects():
    X = flat_parallelogram(5, 5)
    disc = as_disc(X)
    defects = sorted(defect(disc, v) for v in disc.boundary_cycle)
    assert gauss_bonnet_sum(disc) == 6
    assert defects.count(2) == 2  # the two sharp corners
    assert sum(defects) == 6


def test_gen_flat_region_errors():
    with pytest.raises(ValueError):
        gen_flat_region([(Fraction(0), Fraction(1)), (Fraction(5), Fraction(6))])
    with pytest.raises(ValueError):
        gen_flat_region([(HALF, Fraction(3, 2))])  # parity of row 0 violated


def test_generated_regions_pass_checks():
    rng = random.Random(0)
    for _ in range(5):
        h, w = rng.randint(2, 5), rng.randint(2, 5)
        X = flat_parallelogram(h, w) if rng.random() < 0.5 else flat_rectangle(h, w)
        X.validate()
        assert is_locally_6_large(X).ok
        assert simply_connected_heuristic(X) == "verified"


def test_flag_closure_against_enumeration():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(4, 8)
        edges = [(a, b) for a in range(n) for b in range(a + 1, n)
                 if rng.random() < 0.6]
        X = FlagComplex.from_edges(edges, vertices=range(n))
        reported = set(X.simplices(max_size=4))
        for size in range(1, 5):
            for sub in itertools.combinations(range(n), size):
                is_clique = all(X.is_edge(a, b)
                                for a, b in itertools.combinations(sub, 2))
                assert (sub in reported) == is_clique


def test_disc_generator_is_systolic():
    for seed in range(4):
        X = gen_disc_with_degrees(seed, rings=2)
        X.validate()
        disc = as_disc(X)
        assert gauss_bonnet_sum(disc) == 6
        assert is_locally_6_large(X).ok
        assert simply_connected_heuristic(X) == "verified"
        interior = [v for v in X.vertices if v not in disc.boundary_set]
        assert all(X.degree(v) >= 6 for v in interior)


def test_file_format_roundtrip():
    X = flat_parallelogram(3, 2)
    text = dumps_complex(X)
    Y = loads_complex(text)
    assert Y.adjacency == X.adjacency
    assert Y.coords == X.coords


def test_file_format_tolerance():
    text = "# a comment\n  v 7\n e 0   1 \ne 1 2\ne 0 1\n"
    X = loads_complex(text)
    assert set(X.vertices) == {0, 1, 2, 7}
    assert X.edge_count() == 2
    with pytest.raises(ValueError):
        loads_complex("e 4 4\n")
