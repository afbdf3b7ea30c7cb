"""Convex polygon primitives: shoelace area, perimeter, half-plane clipping."""
from __future__ import annotations

from dataclasses import dataclass

AREA_EPS = 1e-15    # clip results with less area than this count as empty
MERGE_EPS = 1e-12   # consecutive vertices closer than this are merged


def polygon_area(pts) -> float:
    s = 0.0
    m = len(pts)
    for i in range(m):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % m]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def polygon_perimeter(pts) -> float:
    s = 0.0
    m = len(pts)
    for i in range(m):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % m]
        s += ((x1 - x0) ** 2 + (y1 - y0) ** 2) ** 0.5
    return s


def _merge_close(pts, tags=None, eps=MERGE_EPS):
    # drop vertices within eps of their predecessor (cyclically); when tags
    # ride along, the surviving vertex keeps the leaving tag of the dropped one
    m = len(pts)
    if m == 0:
        return (pts, tags) if tags is not None else pts
    keep_pts, keep_tags = [], []
    for i in range(m):
        p = pts[i]
        if keep_pts:
            q = keep_pts[-1]
            if abs(p[0] - q[0]) <= eps and abs(p[1] - q[1]) <= eps:
                if tags is not None:
                    keep_tags[-1] = tags[i]
                continue
        keep_pts.append(p)
        if tags is not None:
            keep_tags.append(tags[i])
    # cyclic closure: last may coincide with first; its leaving edge is
    # degenerate, so its tag just drops
    while len(keep_pts) > 1:
        p, q = keep_pts[-1], keep_pts[0]
        if abs(p[0] - q[0]) <= eps and abs(p[1] - q[1]) <= eps:
            keep_pts.pop()
            if tags is not None:
                keep_tags.pop()
        else:
            break
    if tags is not None:
        return keep_pts, keep_tags
    return keep_pts


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex polygon with counterclockwise vertices and positive area.

    Clipping may leave collinear triples of vertices; they are tolerated.
    """

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = [(float(x), float(y)) for x, y in self.vertices]
        pts = _merge_close(pts)
        if len(pts) < 3:
            raise ValueError("need at least 3 distinct vertices")
        area = polygon_area(pts)
        if area <= AREA_EPS:
            raise ValueError("vertices must wind counterclockwise with positive area")
        scale = max(max(abs(x), abs(y)) for x, y in pts) + 1.0
        tol = 1e-9 * scale * scale
        m = len(pts)
        for i in range(m):
            ax, ay = pts[i]
            bx, by = pts[(i + 1) % m]
            cx, cy = pts[(i + 2) % m]
            cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
            if cross < -tol:
                raise ValueError("vertices are not convex at index %d" % ((i + 1) % m))
        object.__setattr__(self, "vertices", tuple(pts))

    @property
    def area(self) -> float:
        return polygon_area(self.vertices)

    @property
    def perimeter(self) -> float:
        return polygon_perimeter(self.vertices)

    @property
    def centroid(self) -> tuple[float, float]:
        a2 = 0.0
        cx = cy = 0.0
        m = len(self.vertices)
        for i in range(m):
            x0, y0 = self.vertices[i]
            x1, y1 = self.vertices[(i + 1) % m]
            w = x0 * y1 - x1 * y0
            a2 += w
            cx += (x0 + x1) * w
            cy += (y0 + y1) * w
        return (cx / (3.0 * a2), cy / (3.0 * a2))

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        return (min(xs), min(ys), max(xs), max(ys))

    def contains(self, point, eps: float = 1e-9) -> bool:
        px, py = point
        m = len(self.vertices)
        for i in range(m):
            x0, y0 = self.vertices[i]
            x1, y1 = self.vertices[(i + 1) % m]
            if (x1 - x0) * (py - y0) - (y1 - y0) * (px - x0) < -eps:
                return False
        return True


def clip_tagged(pts, tags, a, c, new_tag):
    """Clip a tagged convex polygon to the half-plane a . x <= c.

    tags[i] labels the edge leaving pts[i]; cut edges get new_tag.  Returns
    (pts, tags), possibly empty.
    """
    ax, ay = a
    m = len(pts)
    if m == 0:
        return [], []
    scale = abs(ax) + abs(ay)
    out_p, out_t = [], []
    sides = [ax * p[0] + ay * p[1] - c for p in pts]
    for i in range(m):
        p, sp, tp = pts[i], sides[i], tags[i]
        q, sq = pts[(i + 1) % m], sides[(i + 1) % m]
        eps = 1e-13 * scale * (1.0 + abs(p[0]) + abs(p[1]) + abs(q[0]) + abs(q[1]))
        p_in, q_in = sp <= eps, sq <= eps
        if p_in:
            out_p.append(p)
            out_t.append(tp)
        if p_in != q_in:
            t = sp / (sp - sq)
            ip = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
            out_p.append(ip)
            out_t.append(new_tag if p_in else tp)
    out_p, out_t = _merge_close(out_p, out_t)
    if len(out_p) < 3 or polygon_area(out_p) < AREA_EPS:
        return [], []
    return out_p, out_t


def clip_halfplane(poly: ConvexPolygon, a, c) -> ConvexPolygon | None:
    """Intersection of poly with {x : a . x <= c}; None when (nearly) empty."""
    pts = list(poly.vertices)
    tags = [0] * len(pts)
    out, _ = clip_tagged(pts, tags, a, c, 1)
    if not out:
        return None
    return ConvexPolygon(tuple(out))
