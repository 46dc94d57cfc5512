"""Combinatorial metric structure on flag complexes.

Distances are 1-skeleton path lengths from multi-source BFS; every query is
a pure function of an immutable complex, with per-complex bounded caching of
BFS maps (distance queries dominate everything downstream).
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .complex import FlagComplex, Simplex

_CACHE_BOUND = 4096


class ProjectionError(ValueError):
    """Residue-intersection is empty or not a simplex: input is not systolic."""


def dist_map(X: FlagComplex, sources: Iterable[int]) -> dict[int, int]:
    """BFS distance from a vertex set to every reachable vertex (cached)."""
    key = frozenset(sources)
    if not key:
        raise ValueError("empty source set")
    cache = X._dist_cache
    hit = cache.get(key)
    if hit is not None:
        cache.move_to_end(key)
        return hit
    dist = {v: 0 for v in key}
    queue = deque(key)
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        for w in X.adjacency[v]:
            if w not in dist:
                dist[w] = d
                queue.append(w)
    cache[key] = dist
    if len(cache) > _CACHE_BOUND:
        cache.popitem(last=False)
    return dist


def dist(X: FlagComplex, A: Iterable[int] | int, B: Iterable[int] | int) -> int:
    """Minimum 1-skeleton distance between two nonempty vertex sets."""
    if isinstance(A, int):
        A = (A,)
    if isinstance(B, int):
        B = (B,)
    dm = dist_map(X, A)
    best = None
    for b in B:
        d = dm.get(b)
        if d is not None and (best is None or d < best):
            best = d
    if best is None:
        raise ValueError("vertex sets lie in different components")
    return best


def ball(X: FlagComplex, Y: Iterable[int], n: int) -> frozenset[int]:
    """Vertex set of the combinatorial ball B_n(Y)."""
    if n < 0:
        raise ValueError("radius must be >= 0")
    dm = dist_map(X, Y)
    return frozenset(v for v, d in dm.items() if d <= n)


def sphere(X: FlagComplex, Y: Iterable[int], n: int) -> frozenset[int]:
    """Vertex set of the combinatorial sphere S_n(Y)."""
    if n < 0:
        raise ValueError("radius must be >= 0")
    dm = dist_map(X, Y)
    return frozenset(v for v, d in dm.items() if d == n)


def is_convex(X: FlagComplex, Y: Iterable[int]) -> bool:
    """Geodesic convexity: every vertex on a geodesic between Y-vertices is in Y.

    Interval containment is equivalent to all geodesics lying in Y^(1).
    """
    ys = sorted(set(Y))
    if not ys:
        raise ValueError("empty subcomplex")
    if not X.induced(ys).is_connected():
        return False
    yset = frozenset(ys)
    for i, u in enumerate(ys):
        du = dist_map(X, (u,))
        for v in ys[i + 1:]:
            duv = du[v]
            dv = dist_map(X, (v,))
            for w in du:
                if w not in yset and du[w] + dv.get(w, duv + 1) == duv:
                    return False
    return True


def residue(X: FlagComplex, sigma: Iterable[int]) -> list[Simplex]:
    """All simplices of X containing sigma."""
    sigma = tuple(sorted(sigma))
    if not X.is_simplex(sigma):
        raise ValueError(f"{sigma} is not a simplex")
    out = [sigma]
    link = X.link(sigma)
    for tau in link.simplices():
        out.append(tuple(sorted(sigma + tau)))
    return sorted(out, key=lambda s: (len(s), s))


def projection(X: FlagComplex, sigma: Iterable[int], Y: Iterable[int]) -> Simplex:
    """Projection of simplex sigma onto the (convex) subcomplex Y.

    The intersection of the residue of sigma with Y; validated to be a
    nonempty simplex rather than assumed, so failures diagnose non-systolic
    (or non-convex) input.
    """
    sigma = tuple(sorted(sigma))
    yset = frozenset(Y)
    if not X.is_simplex(sigma):
        raise ValueError(f"{sigma} is not a simplex")
    dm = dist_map(X, yset)
    if any(dm.get(v) != 1 for v in sigma):
        raise ValueError(f"{sigma} is not contained in S_1(Y)")
    common = X.adjacency[sigma[0]]
    for v in sigma[1:]:
        common = common & X.adjacency[v]
    pi = tuple(sorted(common & yset))
    if not pi:
        raise ProjectionError(f"projection of {sigma} is empty")
    if not X.is_simplex(pi):
        raise ProjectionError(f"projection of {sigma} is not a simplex: {pi}")
    return pi


def directed_geodesic(X: FlagComplex, sigma: Iterable[int], W: Iterable[int]) -> list[Simplex]:
    """Simplex sequence from sigma to the convex subcomplex W by iterated
    projection onto shrinking balls around W.

    Requires sigma inside a single sphere S_n(W), or meeting S_n(W) and
    S_{n-1}(W) (then the sequence starts with the inner intersection).
    """
    sigma = tuple(sorted(sigma))
    wset = frozenset(W)
    if not X.is_simplex(sigma):
        raise ValueError(f"{sigma} is not a simplex")
    dm = dist_map(X, wset)
    dists = {dm[v] for v in sigma}
    n = max(dists)
    if dists == {n} or (n > 0 and dists == {n, n - 1}):
        pass
    else:
        raise ValueError(f"sigma spreads over spheres {sorted(dists)} around W")
    seq = [sigma]
    if len(dists) == 2:
        sigma = tuple(v for v in sigma if dm[v] == n - 1)
        n -= 1
        seq.append(sigma)
    for i in range(1, n + 1):
        target = frozenset(v for v, d in dm.items() if d <= n - i)
        sigma = projection(X, sigma, target)
        seq.append(sigma)
    return seq


def spans_simplex(X: FlagComplex, *simplices: Iterable[int]) -> bool:
    """Whether the union of the given vertex sets spans a simplex."""
    vs = sorted(set().union(*map(set, simplices)))
    return X.is_simplex(vs)


def all_geodesics(X: FlagComplex, u: int, v: int, cap: int = 10000):
    """Every 1-skeleton geodesic from u to v, truncated at `cap` paths.

    Returns (paths, truncated).  Exponential on flat regions; the cap keeps
    oracle uses bounded.
    """
    dm = dist_map(X, (v,))
    if u not in dm:
        raise ValueError("u and v lie in different components")
    paths: list[list[int]] = []
    truncated = False
    stack = [[u]]
    while stack:
        path = stack.pop()
        last = path[-1]
        if last == v:
            paths.append(path)
            if len(paths) >= cap:
                truncated = bool(stack)
                break
            continue
        d = dm[last]
        for w in sorted(X.adjacency[last], reverse=True):
            if dm.get(w) == d - 1:
                stack.append(path + [w])
    return paths, truncated


def is_geodesic_path(X: FlagComplex, path: list[int]) -> bool:
    if len(path) < 1:
        return False
    if any(not X.is_edge(a, b) for a, b in zip(path, path[1:])):
        return False
    return dist(X, path[0], path[-1]) == len(path) - 1
