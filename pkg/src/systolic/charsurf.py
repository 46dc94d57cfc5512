"""Characteristic discs, surfaces, images, and the minimal-surface oracle.

A characteristic disc for a thick interval is the flat disc spanned on the
loop through distance-maximizing representatives of the two simplex
sequences; its shape is determined by the per-layer widths |s_k t_k| and the
consecutive offsets read off |s_k t_{k+1}|, so it is built directly as a
lattice row stack and then audited (wide + flat).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .complex import FlagComplex, Simplex
from .flatgeom import TriangulatedDisc, as_disc, is_flat
from .generators import gen_flat_region
from .lattice import HALF
from .metric import dist, dist_map, all_geodesics


class CharDiscError(ValueError):
    """Disc construction failed; falsifies systolicity or the preconditions."""


class SurfaceError(ValueError):
    """No simplicial filling realizes the disc; reported loudly."""


@dataclass
class CharDisc:
    """Flat disc of a thick interval with its lattice embedding.

    Row k (interval start i <= k <= j) spans [left_x[k-i], left_x[k-i] +
    widths[k-i]] on lattice row k; `rows_ids` lists the disc vertex ids of
    each row left to right; the boundary rows map to s/t under any
    characteristic surface.
    """
    interval: tuple[int, int]
    s: list[int]
    t: list[int]
    widths: list[int]
    left_x: list[Fraction]
    disc: TriangulatedDisc
    rows_ids: list[list[int]]
    sigma_seq: list[Simplex]
    tau_seq: list[Simplex]
    thin_endpoints: bool

    @property
    def complex(self) -> FlagComplex:
        return self.disc.complex

    def shape(self) -> tuple:
        """Isometry-invariant shape key (widths plus offset pattern)."""
        offs = tuple(b - a for a, b in zip(self.left_x, self.left_x[1:]))
        return (tuple(self.widths), offs)

    def row_of(self, vid: int) -> int:
        return self.complex.coords[vid][0]

    def is_left_boundary(self, vid: int) -> bool:
        k = self.row_of(vid) - self.interval[0]
        return self.rows_ids[k][0] == vid

    def is_right_boundary(self, vid: int) -> bool:
        k = self.row_of(vid) - self.interval[0]
        return self.rows_ids[k][-1] == vid


def _maximizing_pairs(X: FlagComplex, sigma: Simplex, tau: Simplex):
    best = -1
    pairs = []
    for s in sigma:
        dm = dist_map(X, (s,))
        for t in tau:
            d = dm[t]
            if d > best:
                best, pairs = d, [(s, t)]
            elif d == best:
                pairs.append((s, t))
    return best, sorted(pairs)


def build_char_disc(X: FlagComplex, sigma_seq, tau_seq, interval,
                    tie_seed: int | None = None) -> CharDisc:
    """Characteristic disc for a thick interval of (sigma_seq, tau_seq).

    Representatives s_k, t_k maximize |s_k t_k| per layer; ties break to the
    lexicographically smallest pair, or to a seeded random maximizing pair
    when `tie_seed` is given (the shape is choice-independent either way).
    Also accepts a partial interval whose layers all have thickness >= 2.
    """
    i, j = interval
    sigma_seq = [tuple(sorted(s)) for s in sigma_seq]
    tau_seq = [tuple(sorted(t)) for t in tau_seq]
    if not 0 <= i < j <= len(sigma_seq) - 1:
        raise ValueError(f"bad interval {interval}")
    rng = random.Random(tie_seed) if tie_seed is not None else None

    widths, s_rep, t_rep = [], [], []
    for k in range(i, j + 1):
        a, pairs = _maximizing_pairs(X, sigma_seq[k], tau_seq[k])
        pick = rng.choice(pairs) if rng is not None else pairs[0]
        widths.append(a)
        s_rep.append(pick[0])
        t_rep.append(pick[1])

    thin_endpoints = widths[0] == 1 and widths[-1] == 1
    interior = widths[1:-1] if thin_endpoints else widths
    if any(a < 2 for a in interior):
        raise CharDiscError(f"interval {interval} has a thin interior layer")
    if not thin_endpoints and (widths[0] < 2 or widths[-1] < 2):
        raise CharDiscError("partial interval requires thickness >= 2 throughout")
    if thin_endpoints:
        for k in (0, len(widths) - 1):
            if set(sigma_seq[i + k]) & set(tau_seq[i + k]):
                raise CharDiscError(
                    f"endpoint layer {i + k} members intersect; not a thick interval")

    left_x = [Fraction(0) if i % 2 == 0 else HALF]
    for k in range(len(widths) - 1):
        b = dist(X, (s_rep[k],), (t_rep[k + 1],))
        if b == widths[k + 1] + 1:
            off = HALF
        elif b == widths[k + 1]:
            off = -HALF
        else:
            raise CharDiscError(
                f"|s_{i + k} t_{i + k + 1}| = {b} incompatible with width {widths[k + 1]}")
        left_x.append(left_x[-1] + off)

    region = gen_flat_region(
        [(lx, lx + a) for lx, a in zip(left_x, widths)], first_row=i)
    disc = as_disc(region)
    rows_ids: list[list[int]] = [[] for _ in widths]
    for vid in region.vertices:
        rows_ids[region.coords[vid][0] - i].append(vid)
    for ids in rows_ids:
        ids.sort(key=lambda v: region.coords[v][1])

    expected_boundary = set(rows_ids[0]) | set(rows_ids[-1])
    expected_boundary |= {ids[0] for ids in rows_ids} | {ids[-1] for ids in rows_ids}
    if frozenset(disc.boundary_cycle) != frozenset(expected_boundary):
        raise CharDiscError("disc boundary is not the defining loop")
    if thin_endpoints:
        cyc = disc.boundary_cycle
        m = len(cyc)
        for a in range(m):
            for b in range(a + 2, m):
                if (a, b) != (0, m - 1) and region.is_edge(cyc[a], cyc[b]):
                    raise CharDiscError(
                        f"disc is not wide: boundary chord ({cyc[a]}, {cyc[b]})")
    flat = is_flat(disc)
    if not flat.ok:
        raise CharDiscError(f"disc is not flat: {flat.witness}")

    return CharDisc((i, j), s_rep, t_rep, widths, left_x, disc, rows_ids,
                    sigma_seq[i:j + 1], tau_seq[i:j + 1], thin_endpoints)


def _cross_pairs(cd: CharDisc, k: int) -> list[tuple[int, int]]:
    """Disc edges between row k and row k+1 (relative indices)."""
    out = []
    for a_idx, a in enumerate(cd.rows_ids[k]):
        ax = cd.left_x[k] + a_idx
        for b_idx, b in enumerate(cd.rows_ids[k + 1]):
            if abs(cd.left_x[k + 1] + b_idx - ax) == HALF:
                out.append((a_idx, b_idx))
    return out


def _surface_rows(X: FlagComplex, cd: CharDisc, cap: int = 10000):
    """Per-row geodesic candidates (lexicographic) and cross-row edge lists."""
    rows = []
    for k, (s, t) in enumerate(zip(cd.s, cd.t)):
        paths, truncated = all_geodesics(X, s, t, cap)
        paths = [p for p in paths if len(p) == cd.widths[k] + 1]
        if truncated:
            raise SurfaceError("geodesic enumeration cap hit; raise the cap")
        rows.append(sorted(paths))
    crosses = [_cross_pairs(cd, k) for k in range(len(cd.widths) - 1)]
    return rows, crosses


def _row_fillings(X, cd, row_candidates, crosses):
    """Backtracking over per-row geodesics, bottom-up, lexicographic."""
    n_rows = len(cd.widths)

    def extend(chosen):
        k = len(chosen)
        if k == n_rows:
            yield list(chosen)
            return
        for path in row_candidates[k]:
            if k > 0:
                prev = chosen[-1]
                if any(not X.is_edge(prev[a], path[b]) for a, b in crosses[k - 1]):
                    continue
            chosen.append(path)
            yield from extend(chosen)
            chosen.pop()

    return extend([])


def build_char_surface(X: FlagComplex, cd: CharDisc) -> dict[int, int]:
    """A characteristic surface realizing the disc: maps each disc vertex to
    a complex vertex so rows land on 1-skeleton geodesics s_k..t_k and every
    disc edge maps to an edge."""
    rows, crosses = _surface_rows(X, cd)
    for filling in _row_fillings(X, cd, rows, crosses):
        return {vid: filling[k][idx]
                for k, ids in enumerate(cd.rows_ids)
                for idx, vid in enumerate(ids)}
    raise SurfaceError(f"no surface fills the disc for interval {cd.interval}")


def enumerate_char_surfaces(X: FlagComplex, cd: CharDisc, limit: int = 100000,
                            vary_boundary: bool = True):
    """All characteristic surfaces (oracle-grade, small discs only).

    With `vary_boundary`, every choice of thickness-realizing boundary
    representatives is enumerated as well.
    """
    count = 0
    choices = []
    for k in range(len(cd.widths)):
        sig, tau = cd.sigma_seq[k], cd.tau_seq[k]
        _, pairs = _maximizing_pairs(X, sig, tau)
        choices.append(pairs if vary_boundary else [(cd.s[k], cd.t[k])])
    for combo in product(*choices):
        alt = CharDisc(cd.interval, [c[0] for c in combo], [c[1] for c in combo],
                       cd.widths, cd.left_x, cd.disc, cd.rows_ids,
                       cd.sigma_seq, cd.tau_seq, cd.thin_endpoints)
        rows, crosses = _surface_rows(X, alt)
        for filling in _row_fillings(X, alt, rows, crosses):
            yield {vid: filling[k][idx]
                   for k, ids in enumerate(alt.rows_ids)
                   for idx, vid in enumerate(ids)}
            count += 1
            if count >= limit:
                raise SurfaceError("surface enumeration limit hit")


def characteristic_image(X: FlagComplex, sigma, tau, cd: CharDisc,
                         surface: dict[int, int], rho) -> Simplex:
    """Span of the images of the disc simplex rho over all characteristic
    surfaces, via single-vertex substitutions off one base surface.

    Interior disc vertices: layer-k vertices adjacent to the base images of
    all disc neighbors.  Boundary vertices: the thickness-realizing vertices
    of the corresponding sequence member.  The result is validated to be a
    simplex.
    """
    rho = tuple(sorted(rho))
    if not cd.complex.is_simplex(rho):
        raise ValueError(f"{rho} is not a simplex of the disc")
    n = dist(X, sigma, tau)
    ds, dt = dist_map(X, sigma), dist_map(X, tau)
    out: set[int] = set()
    for u in rho:
        k = cd.row_of(u)
        rel = k - cd.interval[0]
        if cd.is_left_boundary(u):
            t_k = cd.t[rel]
            cands = {z for z in cd.sigma_seq[rel]
                     if dist(X, (z,), (t_k,)) == cd.widths[rel]}
        elif cd.is_right_boundary(u):
            s_k = cd.s[rel]
            cands = {z for z in cd.tau_seq[rel]
                     if dist(X, (s_k,), (z,)) == cd.widths[rel]}
        else:
            nbs = [surface[w] for w in cd.complex.adjacency[u]]
            common = set.intersection(*(set(X.adjacency[img]) for img in nbs))
            cands = {z for z in common if ds.get(z) == k and dt.get(z) == n - k}
        out |= cands
    image = tuple(sorted(out))
    if not X.is_simplex(image):
        raise CharDiscError(f"characteristic image of {rho} is not a simplex: {image}")
    return image


def char_image_oracle(X: FlagComplex, cd: CharDisc, rho, limit: int = 100000) -> Simplex:
    """Span of images of rho over exhaustively enumerated surfaces."""
    rho = tuple(sorted(rho))
    out: set[int] = set()
    for surf in enumerate_char_surfaces(X, cd, limit):
        out |= {surf[u] for u in rho}
    return tuple(sorted(out))


def char_preimage(X: FlagComplex, sigma, tau, cd: CharDisc,
                  surface: dict[int, int], x: int) -> int:
    """The unique disc vertex whose characteristic image contains x.

    Decodes by layer and image membership; ambiguity or absence raises (the
    preimage is single-valued on the characteristic image).
    """
    n = dist(X, sigma, tau)
    k = dist(X, (x,), sigma)
    if dist(X, (x,), tau) != n - k or not cd.interval[0] <= k <= cd.interval[1]:
        raise ValueError(f"vertex {x} lies outside the disc's layers")
    matches = [u for u in cd.rows_ids[k - cd.interval[0]]
               if x in characteristic_image(X, sigma, tau, cd, surface, (u,))]
    if len(matches) != 1:
        raise CharDiscError(f"preimage of {x} is not unique: {matches}")
    return matches[0]


# ---------------------------------------------------------------------------
# Minimal-surface search (oracle-grade).


@dataclass(frozen=True)
class FillingResult:
    area: int | None
    triangles: tuple[Simplex, ...] | None
    capped: bool


def _canon_cycle(cycle: tuple[int, ...]) -> tuple[int, ...]:
    m = len(cycle)
    best = None
    for rev in (cycle, cycle[::-1]):
        for r in range(m):
            rot = rev[r:] + rev[:r]
            if best is None or rot < best:
                best = rot
    return best


def minimal_surface_bruteforce(X: FlagComplex, loop, max_area: int = 24) -> FillingResult:
    """Minimum-area simplicial disc spanned on an embedded loop.

    Recursion on the triangle attached to a fixed edge of the hole: ears,
    chord splits (memoized on the canonical cycle), or an interior vertex
    insertion.  Explores fillings whose intermediate boundaries stay
    embedded; exhaustive at oracle scale, capped by `max_area`.
    """
    loop = tuple(loop)
    if len(loop) < 3 or len(set(loop)) != len(loop):
        raise ValueError("loop must be an embedded cycle")
    for a, b in zip(loop, loop[1:] + loop[:1]):
        if not X.is_edge(a, b):
            raise ValueError(f"loop edge ({a}, {b}) missing")

    memo: dict[tuple, tuple[int, object]] = {}

    def fill(cycle: tuple[int, ...], budget: int):
        if budget < 1:
            return None
        if len(cycle) == 3:
            return [cycle] if X.is_simplex(cycle) else None
        key = _canon_cycle(cycle)
        if key in memo:
            known_budget, known = memo[key]
            if known is not None and len(known) <= budget:
                return known
            if known is None and known_budget >= budget:
                return None
        cycle = key
        c0, c1 = cycle[0], cycle[1]
        cset = set(cycle)
        index = {v: idx for idx, v in enumerate(cycle)}
        best = None
        for z in sorted(X.adjacency[c0] & X.adjacency[c1]):
            tri = tuple(sorted((c0, c1, z)))
            sub_budget = (budget if best is None else len(best) - 1) - 1
            if sub_budget < 0:
                break
            if z in cset:
                pos = index[z]
                if pos == 2:
                    rest = fill(cycle[:1] + cycle[2:], sub_budget)
                    cand = None if rest is None else [tri] + rest
                elif pos == len(cycle) - 1:
                    rest = fill(cycle[1:], sub_budget)
                    cand = None if rest is None else [tri] + rest
                else:
                    part_a = fill(cycle[1:pos + 1], sub_budget)
                    if part_a is None:
                        continue
                    part_b = fill(cycle[pos:] + cycle[:1],
                                  sub_budget - len(part_a))
                    cand = None if part_b is None else [tri] + part_a + part_b
            else:
                rest = fill((c0, z) + cycle[1:], sub_budget)
                cand = None if rest is None else [tri] + rest
            if cand is not None and (best is None or len(cand) < len(best)):
                best = cand
        memo[key] = (budget, best)
        return best

    result = fill(loop, max_area)
    if result is None:
        return FillingResult(None, None, True)
    return FillingResult(len(result), tuple(result), False)


def is_triangulable(X: FlagComplex, loop) -> bool:
    """Whether the loop bounds a filling with no interior vertices (chord DP)."""
    loop = tuple(loop)
    m = len(loop)
    if m < 3 or len(set(loop)) != m:
        raise ValueError("loop must be an embedded cycle")
    for a, b in zip(loop, loop[1:] + loop[:1]):
        if not X.is_edge(a, b):
            raise ValueError(f"loop edge ({a}, {b}) missing")

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def arc(i: int, j: int) -> bool:
        # arc loop[i..j] closed by the (present) edge loop[i]-loop[j]
        if j - i == 1:
            return True
        return any(
            (k == i + 1 or X.is_edge(loop[i], loop[k]))
            and (k == j - 1 or X.is_edge(loop[k], loop[j]))
            and arc(i, k) and arc(k, j)
            for k in range(i + 1, j))

    return arc(0, m - 1)
