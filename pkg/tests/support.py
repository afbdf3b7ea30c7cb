"""Shared helpers for the test suite: poset property checks, random convex
polygon generation, and rigid-motion utilities."""

import numpy as np
from scipy.spatial import ConvexHull

from equicell import (ConvexPolygon, KIND_COMPLEMENT, is_face_complement,
                      is_face_stratification)
from equicell.poset import face_matrix


def order_matrix(poset):
    """Reflexive boolean matrix L with L[i, j] = (element i <= element j)."""
    els = list(poset.elements)
    mat = face_matrix(els, els, poset.kind)
    np.fill_diagonal(mat, True)
    return mat


def scalar_leq(poset, a, b):
    """Pairwise order via the scalar predicate (independent of face_matrix)."""
    if a == b:
        return True
    if poset.kind == KIND_COMPLEMENT:
        return is_face_complement(a, b)
    return is_face_stratification(b, a)


def check_partial_order(poset, sample_rng=None):
    """Assert reflexivity, antisymmetry, transitivity, dimension monotonicity.

    Runs on the full vectorized order matrix, cross-checked against the
    scalar predicate on a random sample of pairs.
    """
    mat = order_matrix(poset)
    size = len(poset.elements)
    # reflexivity comes through the scalar predicate as well
    for lab in poset.elements:
        assert scalar_leq(poset, lab, lab)
    both = mat & mat.T
    assert not (both & ~np.eye(size, dtype=bool)).any(), "antisymmetry failed"
    closure = (mat.astype(np.int64) @ mat.astype(np.int64)) > 0
    assert not (closure & ~mat).any(), "transitivity failed"
    dims = np.array(poset.dims)
    strict = mat & ~np.eye(size, dtype=bool)
    lo_idx, hi_idx = np.nonzero(strict)
    assert (dims[lo_idx] < dims[hi_idx]).all(), "dimension monotonicity failed"
    rng = sample_rng or np.random.default_rng(0)
    for _ in range(min(200, size * size)):
        i = int(rng.integers(size))
        j = int(rng.integers(size))
        want = scalar_leq(poset, poset.elements[i], poset.elements[j])
        assert bool(mat[i, j]) == want, f"matrix/scalar mismatch at ({i},{j})"


def check_diamond(poset):
    """Assert every closed interval of length 2 has exactly 2 midpoints."""
    mat = order_matrix(poset)
    size = len(poset.elements)
    dims = np.array(poset.dims)
    strict = mat & ~np.eye(size, dtype=bool)
    checked = 0
    for i in range(size):
        for j in range(size):
            if strict[i, j] and dims[j] == dims[i] + 2:
                mids = int(np.count_nonzero(strict[i] & strict[:, j]))
                assert mids == 2, f"interval ({i},{j}) has {mids} midpoints"
                checked += 1
    assert checked > 0
    return checked


def random_convex_polygon(rng, points=10, scale=1.0, offset=(0.0, 0.0)):
    """Convex hull of random points, returned as a ccw ConvexPolygon."""
    pts = rng.random((points, 2)) * scale + np.asarray(offset, dtype=float)
    hull = ConvexHull(pts)
    verts = [tuple(pts[i]) for i in hull.vertices]  # ccw for 2-D hulls
    return ConvexPolygon(tuple(verts))


def boundary_distance(polygon, p):
    """Distance from an interior point to the polygon boundary (negative
    outside)."""
    verts = polygon.vertices
    m = len(verts)
    best = np.inf
    for i in range(m):
        x0, y0 = verts[i]
        x1, y1 = verts[(i + 1) % m]
        edge = np.hypot(x1 - x0, y1 - y0)
        cross = (x1 - x0) * (p[1] - y0) - (y1 - y0) * (p[0] - x0)
        best = min(best, cross / edge)
    return best


def random_sites_inside(rng, polygon, n, margin=0.03):
    """n distinct random points inside the polygon via rejection sampling.

    The boundary margin halves whenever draws starve, so thin polygons still
    terminate.
    """
    x0, y0, x1, y1 = polygon.bbox
    floor = margin * np.sqrt(polygon.area)
    out = []
    tries = 0
    while len(out) < n:
        tries += 1
        if tries % 2000 == 0:
            floor *= 0.5
        p = (float(rng.uniform(x0, x1)), float(rng.uniform(y0, y1)))
        if boundary_distance(polygon, p) < floor:
            continue
        if any((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 < 1e-6 for q in out):
            continue
        out.append(p)
    return tuple(out)


def rigid_motion(angle, shift):
    """Return a point map applying rotation by angle then translation."""
    c, s = np.cos(angle), np.sin(angle)

    def move(p):
        x, y = p
        return (c * x - s * y + shift[0], s * x + c * y + shift[1])

    return move


def vertex_set_close(poly_a, poly_b, tol):
    """True when two polygons have the same vertex set within tol."""
    va = list(poly_a.vertices)
    vb = list(poly_b.vertices)
    if len(va) != len(vb):
        return False
    used = [False] * len(vb)
    for p in va:
        hit = False
        for k, q in enumerate(vb):
            if used[k]:
                continue
            if abs(p[0] - q[0]) <= tol and abs(p[1] - q[1]) <= tol:
                used[k] = True
                hit = True
                break
        if not hit:
            return False
    return True


UNIT_SQUARE = ConvexPolygon(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)))
UNIT_TRIANGLE = ConvexPolygon(((0.0, 0.0), (1.0, 0.0), (0.5, np.sqrt(3.0) / 2)))
