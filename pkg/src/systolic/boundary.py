"""Good geodesics, contracting checks, and finite-radius boundary atlases.

A good geodesic stays within C+1 of the Euclidean geodesic of every one of
its subsegments; boundary points at a finite truncation are classes of good
geodesics of length N under the all-indices threshold D = 3C + 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complex import FlagComplex
from .eucgeo import euclidean_geodesic, thread_vertex_path
from .metric import dist, dist_map, is_geodesic_path

C_DEFAULT = 208          # universal constant serving both verification suites
D_DEFAULT = 3 * C_DEFAULT + 2

DEFAULT_C_SAMPLES = tuple(Fraction(i, 8) for i in range(9))


class GoodnessError(ValueError):
    """A certificate failed where the construction guarantees it."""


@dataclass
class GoodGeodesic:
    path: list[int]
    C: int
    certificate: dict[tuple[int, int, int], int]  # (i, j, k) -> |v_k, delta_k^{i,j}|

    @property
    def max_certificate(self) -> int:
        return max(self.certificate.values(), default=0)


def is_good_geodesic(X: FlagComplex, path: list[int], C: int = C_DEFAULT):
    """Certify a 1-skeleton geodesic as good, or return the first violation.

    Returns (GoodGeodesic, None) or (None, witness (i, j, k, distance)).
    """
    if not is_geodesic_path(X, path):
        raise ValueError("path is not a 1-skeleton geodesic")
    cert: dict[tuple[int, int, int], int] = {}
    n = len(path) - 1
    for i in range(n):
        for j in range(i + 1, n + 1):
            eg = euclidean_geodesic(X, (path[i],), (path[j],))
            for k in range(i, j + 1):
                d = dist(X, (path[k],), eg.deltas[k - i])
                cert[(i, j, k)] = d
                if d > C + 1:
                    return None, (i, j, k, d)
    return GoodGeodesic(list(path), C, cert), None


def make_good_geodesic(X: FlagComplex, v: int, w: int, C: int = C_DEFAULT) -> GoodGeodesic:
    """A good geodesic from v to w: thread the Euclidean geodesic between
    them and certify the result.  Certification failure is a hard error."""
    eg = euclidean_geodesic(X, (v,), (w,))
    path = thread_vertex_path(X, eg)
    good, witness = is_good_geodesic(X, path, C)
    if good is None:
        raise GoodnessError(f"threaded path failed its certificate at {witness}")
    return good


def contracting_check(X: FlagComplex, t: int, s: int, s2: int,
                      c_samples=DEFAULT_C_SAMPLES):
    """Max over sampled c of |r_[cn] r'_[cn']| - c*|s s'| for the threaded
    Euclidean geodesics from t to s and from t to s'."""
    eg1 = euclidean_geodesic(X, (t,), (s,))
    eg2 = euclidean_geodesic(X, (t,), (s2,))
    r1 = thread_vertex_path(X, eg1)
    r2 = thread_vertex_path(X, eg2)
    n1, n2 = eg1.n, eg2.n
    dss = dist(X, (s,), (s2,))
    worst = None
    details = []
    for c in c_samples:
        k1 = int(c * n1)
        k2 = int(c * n2)
        excess = Fraction(dist(X, (r1[k1],), (r2[k2],))) - c * dss
        details.append((c, excess))
        if worst is None or excess > worst:
            worst = excess
    return worst, details


def corollary_contr_check(X: FlagComplex, path_v: list[int], path_w: list[int],
                          c_samples=DEFAULT_C_SAMPLES):
    """Max over sampled c of |v_[cn] w_[cm]| - c*|v_n w_m| for two good
    geodesics from a common basepoint."""
    if path_v[0] != path_w[0]:
        raise ValueError("paths must share their basepoint")
    n, m = len(path_v) - 1, len(path_w) - 1
    dend = dist(X, (path_v[-1],), (path_w[-1],))
    worst = None
    for c in c_samples:
        excess = Fraction(dist(X, (path_v[int(c * n)],), (path_w[int(c * m)],))) - c * dend
        if worst is None or excess > worst:
            worst = excess
    return worst


def rays_equivalent_truncated(X: FlagComplex, a: GoodGeodesic, b: GoodGeodesic,
                              D: int = D_DEFAULT):
    """("equivalent-so-far", None) or ("distinct", witness index).

    Distinct once some |v_i w_i| > D: linear amplification then separates the
    classes for good.  Requires the same basepoint and equal length.
    """
    if a.path[0] != b.path[0]:
        raise ValueError("rays have different basepoints")
    if len(a.path) != len(b.path):
        raise ValueError("truncated rays must have equal length")
    for i in range(len(a.path)):
        if dist(X, (a.path[i],), (b.path[i],)) > D:
            return "distinct", i
    return "equivalent-so-far", None


def in_standard_neighborhood(X: FlagComplex, zeta: GoodGeodesic, eta: GoodGeodesic,
                             N: int, R: int, D: int = D_DEFAULT) -> bool:
    """Membership of zeta in the standard neighborhood of eta at depth N and
    radius R (good geodesics from the same basepoint, |w_N v_N| <= R)."""
    if R <= D:
        raise ValueError(f"R must exceed D = {D}")
    if N < 1:
        raise ValueError("N must be >= 1")
    if zeta.path[0] != eta.path[0]:
        raise ValueError("rays have different basepoints")
    if len(zeta.path) - 1 < N or len(eta.path) - 1 < N:
        raise ValueError("rays too short for depth N")
    return dist(X, (zeta.path[N],), (eta.path[N],)) <= R


@dataclass
class BoundaryAtlas:
    basepoint: int
    N: int
    D: int
    rays: list[GoodGeodesic]
    classes: list[list[int]]             # indices into rays, union-find closure
    raw_violations: int                  # transitivity failures of the raw relation
    rep_distance_matrix: list[list[int]]
    capped: bool


def _geodesic_rays(X: FlagComplex, O: int, N: int, cap: int):
    """All 1-skeleton geodesics of length N from O, lexicographic, capped."""
    dm = dist_map(X, (O,))
    out: list[list[int]] = []
    stack = [[O]]
    capped = False
    while stack:
        path = stack.pop()
        if len(path) == N + 1:
            out.append(path)
            if len(out) >= cap:
                capped = bool(stack)
                break
            continue
        d = len(path)
        for w in sorted(X.adjacency[path[-1]], reverse=True):
            if dm.get(w) == d:
                stack.append(path + [w])
    return out, capped


def boundary_atlas(X: FlagComplex, O: int, N: int, D: int = D_DEFAULT,
                   C: int = C_DEFAULT, cap: int = 20000) -> BoundaryAtlas:
    """Finite-radius boundary approximation at basepoint O.

    Enumerates good geodesics of length N from O (deterministic order,
    capped), partitions them by union-find closure of the all-indices
    threshold D, and reports raw-relation transitivity violations (a
    truncation artifact: the threshold relation is only transitive in the
    limit) plus the distance matrix of class representatives.
    """
    ecc_map = dist_map(X, (O,))
    if N > max(ecc_map.values()):
        raise ValueError(f"N exceeds the eccentricity of {O}")
    paths, capped = _geodesic_rays(X, O, N, cap)
    rays = []
    for p in paths:
        good, _ = is_good_geodesic(X, p, C)
        if good is not None:
            rays.append(good)

    parent = list(range(len(rays)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    related = [[False] * len(rays) for _ in rays]
    for a in range(len(rays)):
        related[a][a] = True
        for b in range(a + 1, len(rays)):
            verdict, _ = rays_equivalent_truncated(X, rays[a], rays[b], D)
            if verdict == "equivalent-so-far":
                related[a][b] = related[b][a] = True
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)

    violations = 0
    for a in range(len(rays)):
        for b in range(a + 1, len(rays)):
            if not related[a][b]:
                continue
            for c in range(b + 1, len(rays)):
                if related[b][c] and not related[a][c]:
                    violations += 1

    groups: dict[int, list[int]] = {}
    for idx in range(len(rays)):
        groups.setdefault(find(idx), []).append(idx)
    classes = [sorted(g) for g in sorted(groups.values())]
    reps = [rays[g[0]] for g in classes]
    matrix = [[dist(X, (p.path[N],), (q.path[N],)) for q in reps] for p in reps]
    return BoundaryAtlas(O, N, D, rays, classes, violations, matrix, capped)


def atlas_report(atlas: BoundaryAtlas, as_json: bool = False) -> str:
    """Deterministic plain-text or JSON dump of an atlas."""
    if as_json:
        import json
        return json.dumps({
            "basepoint": atlas.basepoint,
            "N": atlas.N,
            "D": atlas.D,
            "ray_count": len(atlas.rays),
            "capped": atlas.capped,
            "classes": atlas.classes,
            "raw_transitivity_violations": atlas.raw_violations,
            "representative_distances": atlas.rep_distance_matrix,
        }, sort_keys=True, indent=2) + "\n"
    lines = [
        f"atlas basepoint={atlas.basepoint} N={atlas.N} D={atlas.D}",
        f"rays={len(atlas.rays)} capped={atlas.capped}",
        f"classes={len(atlas.classes)} raw-transitivity-violations={atlas.raw_violations}",
        "class representatives are lexicographically least rays (truncation-dependent)",
    ]
    for idx, cls in enumerate(atlas.classes):
        rep = atlas.rays[cls[0]].path
        lines.append(f"class {idx}: size={len(cls)} rep={rep}")
    lines.append("representative distance matrix:")
    for row in atlas.rep_distance_matrix:
        lines.append("  " + " ".join(f"{d:3d}" for d in row))
    return "\n".join(lines) + "\n"
