"""Search for equal-area cells with equal perimeters.

The inner problem (areas) is solved exactly for any site placement, so the
outer search only has to steer the n sites until the perimeter spread
max - min vanishes.  Site translations are a gauge freedom (shifting all
sites moves no wall once the weights re-solve), so the sites are centered:
the first n-1 are free parameters and the last is pinned by requiring the
site mean to sit on the polygon centroid.  The spread is piecewise smooth
but kinked, hence a derivative-free simplex search, restarted with a
shrinking initial simplex, from a deterministic bank of starts: equal-area
slab centroids along both axes, grid splits for composite n, a centered
ring, and seeded random draws.  The best configuration wins; ties keep the
earliest start.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .geometry import ConvexPolygon, clip_halfplane
from .powerdiagram import PowerDiagram, Sites, Weights, perimeter_spread, power_diagram
from .weights import WeightSolveError, solve_equal_measure_weights


@dataclass(frozen=True)
class EqualizeResult:
    sites: Sites
    weights: Weights
    diagram: PowerDiagram
    spread: float
    converged: bool
    evaluations: int
    start_index: int


class _SearchDone(Exception):
    pass


def _axis_cut(polygon: ConvexPolygon, axis: int, want_area: float) -> float:
    # coordinate t with area(polygon cut at axis <= t) = want_area, by bisection
    bb = polygon.bbox
    lo, hi = bb[axis], bb[axis + 2]
    a = (1.0, 0.0) if axis == 0 else (0.0, 1.0)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        piece = clip_halfplane(polygon, a, mid)
        got = piece.area if piece is not None else 0.0
        if got < want_area:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _slab(polygon: ConvexPolygon, axis: int, t0: float | None,
          t1: float | None) -> ConvexPolygon | None:
    piece = polygon
    a = (1.0, 0.0) if axis == 0 else (0.0, 1.0)
    neg = (-1.0, 0.0) if axis == 0 else (0.0, -1.0)
    if t1 is not None and piece is not None:
        piece = clip_halfplane(piece, a, t1)
    if t0 is not None and piece is not None:
        piece = clip_halfplane(piece, neg, -t0)
    return piece


def _slab_centroids(polygon: ConvexPolygon, n: int, axis: int) -> np.ndarray | None:
    A = polygon.area
    cuts = [None] + [_axis_cut(polygon, axis, A * k / n) for k in range(1, n)] + [None]
    out = []
    for k in range(n):
        piece = _slab(polygon, axis, cuts[k], cuts[k + 1])
        if piece is None:
            return None
        out.append(piece.centroid)
    return np.array(out)


def _grid_sites(polygon: ConvexPolygon, rows: int, cols: int) -> np.ndarray | None:
    A = polygon.area
    cuts = [None] + [_axis_cut(polygon, 1, A * k / rows) for k in range(1, rows)] + [None]
    out = []
    for k in range(rows):
        band = _slab(polygon, 1, cuts[k], cuts[k + 1])
        if band is None:
            return None
        centers = _slab_centroids(band, cols, axis=0)
        if centers is None:
            return None
        out.extend(centers)
    return np.array(out)


def _ring_sites(polygon: ConvexPolygon, n: int) -> np.ndarray:
    cx, cy = polygon.centroid
    rho = 0.5 * (polygon.area / np.pi) ** 0.5
    out = []
    for k in range(n):
        ang = 0.4 + 2.0 * np.pi * k / n
        p = np.array([cx + rho * np.cos(ang), cy + rho * np.sin(ang)])
        for _ in range(40):
            if polygon.contains(p):
                break
            p = 0.5 * (p + np.array([cx, cy]))
        out.append(p)
    return np.array(out)


def _random_sites(polygon: ConvexPolygon, n: int, rng) -> np.ndarray:
    x0, y0, x1, y1 = polygon.bbox
    out = []
    while len(out) < n:
        p = (rng.uniform(x0, x1), rng.uniform(y0, y1))
        if polygon.contains(p):
            out.append(p)
    return np.array(out)


def _start_bank(polygon: ConvexPolygon, n: int, seed: int, random_starts: int):
    starts = []
    for axis in (0, 1):
        s = _slab_centroids(polygon, n, axis)
        if s is not None:
            starts.append(s)
    for r in range(2, n):
        if n % r == 0:
            g = _grid_sites(polygon, r, n // r)
            if g is not None:
                starts.append(g)
    starts.append(_ring_sites(polygon, n))
    rng = np.random.default_rng(seed)
    for _ in range(random_starts):
        starts.append(_random_sites(polygon, n, rng))
    return starts


def equalize_perimeters(polygon: ConvexPolygon, n: int, tol: float = 1e-6,
                        seed: int = 0, inner_tol: float = 1e-11,
                        max_evals: int = 40000, random_starts: int = 6,
                        nm_restarts: int = 4) -> EqualizeResult:
    """Equal-area decomposition with perimeter spread at most tol, if found.

    Deterministic for fixed arguments.  When no configuration reaches tol
    within the evaluation budget the best one found is returned with
    converged = False.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    centroid = np.array(polygon.centroid)
    bb = polygon.bbox
    diam = ((bb[2] - bb[0]) ** 2 + (bb[3] - bb[1]) ** 2) ** 0.5
    dmin_floor = 1e-7 * diam
    stop_at = 0.25 * tol
    dim = 2 * (n - 1)

    state = {"best": None, "evals": 0}

    def sites_from(theta):
        first = theta.reshape(n - 1, 2)
        last = n * centroid - first.sum(axis=0)
        return np.vstack([first, last[None, :]])

    def make_objective(start_index):
        def objective(theta):
            if state["evals"] >= max_evals:
                raise _SearchDone()
            state["evals"] += 1
            sxy = sites_from(np.asarray(theta, dtype=float))
            diff = sxy[:, None, :] - sxy[None, :, :]
            dist = np.sqrt((diff * diff).sum(axis=2))
            np.fill_diagonal(dist, np.inf)
            dmin = float(dist.min())
            if dmin < dmin_floor:
                val = 1e3 * (2.0 - dmin / dmin_floor)
            else:
                try:
                    sts = Sites(tuple(map(tuple, sxy)))
                    wts = solve_equal_measure_weights(polygon, sts, tol=inner_tol,
                                                      max_iter=400)
                    val = perimeter_spread(power_diagram(polygon, sts, wts))
                except (WeightSolveError, ValueError):
                    val = 300.0
            if state["best"] is None or val < state["best"][0]:
                state["best"] = (val, np.array(theta, dtype=float), start_index)
            if val <= stop_at:
                raise _SearchDone()
            return val
        return objective

    for si, sites0 in enumerate(_start_bank(polygon, n, seed, random_starts)):
        theta = sites0[:n - 1].reshape(-1).astype(float)
        objective = make_objective(si)
        try:
            objective(theta)
            h = 0.10 * diam
            for _ in range(nm_restarts):
                simplex = np.vstack([theta[None, :],
                                     theta[None, :] + h * np.eye(dim)])
                res = minimize(objective, theta, method="Nelder-Mead",
                               options={"initial_simplex": simplex,
                                        "xatol": 1e-10 * diam, "fatol": 1e-12,
                                        "maxfev": 3000, "maxiter": 6000})
                theta = np.asarray(res.x, dtype=float)
                h *= 0.25
        except _SearchDone:
            pass
        if state["best"] is not None and state["best"][0] <= stop_at:
            break
        if state["evals"] >= max_evals:
            break

    if state["best"] is None:
        raise RuntimeError("search made no evaluations")
    _, theta, si = state["best"]
    sxy = sites_from(theta)
    sts = Sites(tuple(map(tuple, sxy)))
    wts = solve_equal_measure_weights(polygon, sts, tol=min(inner_tol, 1e-12),
                                      max_iter=3000)
    diag = power_diagram(polygon, sts, wts)
    spread = perimeter_spread(diag)
    return EqualizeResult(sites=sts, weights=wts, diagram=diag, spread=spread,
                          converged=spread <= tol, evaluations=state["evals"],
                          start_index=si)
