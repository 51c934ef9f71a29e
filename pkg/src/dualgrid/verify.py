"""Exact geometric checks on a finished or partial drawing.

Everything here uses integer arithmetic.  The all-pairs segment test is
vectorised with numpy int64, which is exact while coordinates stay below
2**29 (every cross product then fits in 2**61); larger drawings take the
plain Python path.  Pairs flagged as touching are then classified one at a
time in Python.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Iterable, Mapping, Sequence

import numpy as np

from .placement import GridDrawing
from .quad import QuadGraph
from .report import VerificationReport

Point = tuple[int, int]
_NUMPY_LIMIT = 2**29
_CHUNK = 2048


class Orientation(IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


def cross(p: Sequence[int], q: Sequence[int], r: Sequence[int]) -> int:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orientation(p: Sequence[int], q: Sequence[int], r: Sequence[int]) -> Orientation:
    c = cross(p, q, r)
    return Orientation.LEFT if c > 0 else Orientation.RIGHT if c < 0 else Orientation.COLLINEAR


def on_segment(p: Sequence[int], a: Sequence[int], b: Sequence[int]) -> bool:
    """``p`` lies on the closed segment ``ab``."""
    return (
        cross(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_touch(a, b, c, d) -> bool:
    """Closed segments ``ab`` and ``cd`` share at least one point."""
    o1, o2 = orientation(a, b, c), orientation(a, b, d)
    o3, o4 = orientation(c, d, a), orientation(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return on_segment(c, a, b) or on_segment(d, a, b) or on_segment(a, c, d) or on_segment(b, c, d)


def segments_cross_properly(a, b, c, d) -> bool:
    """The segments meet in exactly one point interior to both."""
    return (
        orientation(a, b, c) * orientation(a, b, d) < 0
        and orientation(c, d, a) * orientation(c, d, b) < 0
    )


def touching_pairs(
    segs: np.ndarray, others: np.ndarray | None = None
) -> list[tuple[int, int]]:
    """All index pairs of closed segments that share a point.

    ``segs`` (and ``others``) are ``(k, 4)`` integer arrays ``x1 y1 x2 y2``.
    Without ``others`` the pairs are ``i < j`` within ``segs``.
    """
    same = others is None
    b = segs if others is None else others
    if len(segs) == 0 or len(b) == 0:
        return []
    if max(int(np.abs(segs).max()), int(np.abs(b).max())) >= _NUMPY_LIMIT:
        return _touching_pairs_slow(segs, b, same)
    out: list[tuple[int, int]] = []
    bx1, by1, bx2, by2 = (b[:, i][None, :] for i in range(4))
    for start in range(0, len(segs), _CHUNK):
        a = segs[start : start + _CHUNK]
        ax1, ay1, ax2, ay2 = (a[:, i][:, None] for i in range(4))
        o1 = np.sign((ax2 - ax1) * (by1 - ay1) - (ay2 - ay1) * (bx1 - ax1))
        o2 = np.sign((ax2 - ax1) * (by2 - ay1) - (ay2 - ay1) * (bx2 - ax1))
        o3 = np.sign((bx2 - bx1) * (ay1 - by1) - (by2 - by1) * (ax1 - bx1))
        o4 = np.sign((bx2 - bx1) * (ay2 - by1) - (by2 - by1) * (ax2 - bx1))
        boxes = (
            (np.minimum(ax1, ax2) <= np.maximum(bx1, bx2))
            & (np.minimum(bx1, bx2) <= np.maximum(ax1, ax2))
            & (np.minimum(ay1, ay2) <= np.maximum(by1, by2))
            & (np.minimum(by1, by2) <= np.maximum(ay1, ay2))
        )
        hit = boxes & (o1 * o2 <= 0) & (o3 * o4 <= 0)
        if same:
            rows = np.arange(start, start + len(a))[:, None]
            hit &= rows < np.arange(len(b))[None, :]
        for i, j in zip(*np.nonzero(hit)):
            out.append((start + int(i), int(j)))
    return out


def _touching_pairs_slow(a: np.ndarray, b: np.ndarray, same: bool) -> list[tuple[int, int]]:
    pa = [tuple(int(v) for v in row) for row in a]
    pb = [tuple(int(v) for v in row) for row in b]
    out = []
    for i, s in enumerate(pa):
        for j in range(i + 1 if same else 0, len(pb)):
            t = pb[j]
            if segments_touch(s[:2], s[2:], t[:2], t[2:]):
                out.append((i, j))
    return out


def point_in_polygon(p: Sequence[int], poly: Sequence[Sequence[int]]) -> int:
    """1 strictly inside, 0 on the boundary, -1 strictly outside."""
    k = len(poly)
    inside = False
    for i in range(k):
        a, b = poly[i], poly[(i + 1) % k]
        if on_segment(p, a, b):
            return 0
        if (a[1] > p[1]) != (b[1] > p[1]):
            # sign of the crossing's x relative to p, without division
            c = cross(a, b, p)
            if (c > 0) == (b[1] > a[1]):
                inside = not inside
    return 1 if inside else -1


# ------------------------------------------------------------ requirements

def _bent(q: QuadGraph, d: GridDrawing) -> frozenset | None:
    if d.bend_edge is None:
        return None
    return frozenset(d.bend_edge)


def _segments(
    edges: Iterable[tuple[str, str]], coords: Mapping[str, Point], bent: frozenset | None, bend: Point | None
) -> list[tuple[frozenset, str, str, Point, Point]]:
    """Straight pieces: (edge, end key, end key, point, point)."""
    out = []
    for a, b in edges:
        e = frozenset((a, b))
        if e == bent and bend is not None:
            out.append((e, a, "bend", coords[a], bend))
            out.append((e, "bend", b, bend, coords[b]))
        else:
            out.append((e, a, b, coords[a], coords[b]))
    return out


def _as_array(segs) -> np.ndarray:
    return np.array([[s[3][0], s[3][1], s[4][0], s[4][1]] for s in segs], dtype=np.int64).reshape(-1, 4)


def _check_plane(name: str, segs, report: VerificationReport) -> None:
    bad = []
    for i, j in touching_pairs(_as_array(segs)):
        s, t = segs[i], segs[j]
        if s[0] == t[0]:
            # the two halves of the bent edge meet only at the bend
            if not _halves_ok(s, t):
                bad.append(_witness(s, t))
            continue
        shared = {s[1], s[2]} & {t[1], t[2]} - {"bend"}
        if not shared:
            bad.append(_witness(s, t))
            continue
        x = next(iter(shared))
        ps = s[3] if s[1] == x else s[4]
        other_s = s[4] if s[1] == x else s[3]
        other_t = t[4] if t[1] == x else t[3]
        if orientation(ps, other_s, other_t) == 0 and _same_direction(ps, other_s, other_t):
            bad.append(_witness(s, t))
    report.add(name, not bad, {"pairs": bad[:10]} if bad else None)


def _halves_ok(s, t) -> bool:
    a, m, b = s[3], s[4], t[4]
    if orientation(a, m, b) != 0:
        return True
    return not _same_direction(m, a, b)


def _same_direction(o: Point, a: Point, b: Point) -> bool:
    return (a[0] - o[0]) * (b[0] - o[0]) + (a[1] - o[1]) * (b[1] - o[1]) > 0


def _witness(s, t) -> dict:
    return {
        "edges": [sorted(s[0]), sorted(t[0])],
        "segments": [[list(s[3]), list(s[4])], [list(t[3]), list(t[4])]],
    }


def check_requirements(q: QuadGraph, d: GridDrawing) -> VerificationReport:
    """Planarity of both drawings, the crossing pattern, containment, bounds."""
    report = VerificationReport()
    missing = sorted(set(q.graph.vertex_ids) - set(d.coords))
    report.add("coords.complete", not missing, {"missing": missing[:10]} if missing else None)
    if missing:
        return report
    coords = {k: (int(v[0]), int(v[1])) for k, v in d.coords.items()}
    bend = tuple(d.bend_point) if d.bend_point is not None else None

    seen: dict[Point, str] = {}
    clash = []
    for k in sorted(q.graph.vertex_ids):
        if coords[k] in seen:
            clash.append([seen[coords[k]], k, list(coords[k])])
        seen[coords[k]] = k
    if bend is not None and bend in seen:
        clash.append(["bend", seen[bend], list(bend)])
    report.add("vertices.distinct", not clash, {"clashes": clash[:10]} if clash else None)

    # (f) one bent edge, naming a real edge
    bent = _bent(q, d)
    primal_set = {frozenset(e) for e in q.primal_edges}
    dual_set = {frozenset(e) for e in q.dual_edges}
    ok = bent is not None and bend is not None and (bent in primal_set or bent in dual_set)
    report.add("bend.exactly_one", ok, {"bend": d.to_json().get("bend")})

    # (e) bounds
    hi = 2 * q.n - 2
    out = [[k, list(p)] for k, p in sorted(coords.items()) if not (0 <= p[0] <= hi and 0 <= p[1] <= hi)]
    if bend is not None and not (0 <= bend[0] <= hi and 0 <= bend[1] <= hi):
        out.append(["bend", list(bend)])
    report.add("bounds.grid", not out and d.n == q.n, {"limit": hi, "n": d.n, "outside": out[:10]})
    if not ok:
        return report

    psegs = _segments(q.primal_edges, coords, bent, bend)
    dsegs = _segments(q.dual_edges, coords, bent, bend)
    _check_plane("primal.planar", psegs, report)
    _check_plane("dual.planar", dsegs, report)
    _check_crossings(q, psegs, dsegs, report)
    _check_containment(q, coords, bent, bend, report)
    return report


def _check_crossings(q: QuadGraph, psegs, dsegs, report: VerificationReport) -> None:
    partner = {}
    for pe in q.primal_edges:
        partner[frozenset(pe)] = frozenset(q.dual_edge_of[frozenset(pe)])
    crossings: dict[frozenset, int] = {}
    bad = []
    for i, j in touching_pairs(_as_array(psegs), _as_array(dsegs)):
        s, t = psegs[i], dsegs[j]
        if partner[s[0]] == t[0] and segments_cross_properly(s[3], s[4], t[3], t[4]):
            crossings[s[0]] = crossings.get(s[0], 0) + 1
        else:
            bad.append(_witness(s, t))
    report.add("crossings.only_partners", not bad, {"pairs": bad[:10]} if bad else None)
    lacking = [sorted(e) for e in partner if crossings.get(e, 0) != 1]
    report.add("crossings.partners_once", not lacking, {"edges": lacking[:10]} if lacking else None)


def _face_polygon(boundary, coords, bent, bend) -> list[Point]:
    pts = []
    k = len(boundary)
    for i in range(k):
        a, b = boundary[i], boundary[(i + 1) % k]
        pts.append(coords[a])
        if bent is not None and bend is not None and frozenset((a, b)) == bent:
            pts.append(bend)
    return pts


def _check_containment(q: QuadGraph, coords, bent, bend, report: VerificationReport) -> None:
    bad = []
    outer_id = q.primal.outer_face_id
    for f_vertex, face in sorted(q.primal_face_of_dual.items()):
        boundary = [f"p:{x}" for x in face.boundary]
        poly = _face_polygon(boundary, coords, bent, bend)
        where = point_in_polygon(coords[f_vertex], poly)
        want = -1 if face.id == outer_id else 1
        if where != want:
            bad.append({"vertex": f_vertex, "at": list(coords[f_vertex]), "face": boundary})
    report.add("dual.inside_faces", not bad, {"vertices": bad[:10]} if bad else None)


# --------------------------------------------------------------- convexity

def strictly_convex(points: Sequence[Sequence[int]]) -> bool:
    """Counterclockwise polygon with every turn strictly left."""
    k = len(points)
    return k >= 3 and all(
        orientation(points[i - 1], points[i], points[(i + 1) % k]) == Orientation.LEFT for i in range(k)
    )


def check_strict_convexity(q: QuadGraph, d: GridDrawing) -> VerificationReport:
    """Inner radial faces strictly convex and counterclockwise; outer quad
    reflex at exactly the vertex facing the bend."""
    report = VerificationReport()
    coords = d.coords
    outer = q.graph.outer_face_id
    bad = []
    for f in q.graph.faces:
        if f.id == outer:
            continue
        b = f.boundary
        if not strictly_convex([coords[x] for x in b]):
            bad.append({"face": list(b), "coords": [list(coords[x]) for x in b]})
    report.add("convexity.inner_faces", not bad, {"faces": bad[:10]} if bad else None)

    quad = q.outer_quad
    reflex_at = q.roles()[2]
    turns = {quad[i]: orientation(coords[quad[i - 1]], coords[quad[i]], coords[quad[(i + 1) % 4]]) for i in range(4)}
    ok = all(
        t == (Orientation.RIGHT if x == reflex_at else Orientation.LEFT) for x, t in turns.items()
    )
    report.add(
        "convexity.outer_concave",
        ok,
        {"quad": list(quad), "reflex_expected": reflex_at, "turns": {k: int(v) for k, v in turns.items()}},
    )
    return report


# ------------------------------------------------------------------ angles

def slope_class(dx: int, dy: int) -> str | None:
    """``"down"`` for angles in [-45, atan(-1/2)], ``"flat"``, ``"up"`` for
    [45, 90]; ``None`` when the vector fits none of them."""
    if dx > 0 and dy == 0:
        return "flat"
    if dx > 0 and -dx <= dy and 2 * dy <= -dx:
        return "down"
    if dy > 0 and dy >= dx >= 0:
        return "up"
    return None


_SETTLED_CHECKS = ("settled_turn", "no_double_vertical", "no_double_diagonal")


def check_angles(snapshot: Mapping, d: GridDrawing | None = None) -> VerificationReport:
    """Slope invariants of one frontier snapshot, as recorded by ``trace``.

    ``angles.slopes`` limits every frontier edge to three slope classes and
    rules out anything but exactly -45 degrees leaving a vertex with unplaced
    neighbours.  The other three checks relate the two frontier edges at an
    interior vertex whose neighbours are all placed: ``settled_turn`` (the
    edge after it is vertical when its left neighbour came first, otherwise
    the edge before it is -45), ``no_double_vertical`` and
    ``no_double_diagonal``.  ``d`` is accepted for symmetry with the other
    checks; a snapshot carries every coordinate it needs.
    """
    report = VerificationReport()
    rows = [
        (r["id"], r["x"], r["y"], r["group"], r["pending"]) if isinstance(r, Mapping) else tuple(r)
        for r in snapshot["frontier"]
    ]
    k = snapshot.get("k")
    bad1 = []
    vec = []
    for j in range(len(rows) - 1):
        a, b = rows[j], rows[j + 1]
        dx, dy = b[1] - a[1], b[2] - a[2]
        vec.append((dx, dy))
        cls = slope_class(dx, dy)
        if cls is None or (cls == "down" and a[4] > 0 and dy != -dx):
            bad1.append({"from": a[0], "to": b[0], "vector": [dx, dy], "pending": a[4]})
    report.add("angles.slopes", not bad1, {"k": k, "edges": bad1[:10]} if bad1 else None)

    def vertical(v):
        return v[0] == 0 and v[1] > 0

    def diag(v):
        return v[0] > 0 and v[1] == -v[0]

    bad: dict[str, list[str]] = {name: [] for name in _SETTLED_CHECKS}
    for j in range(1, len(rows) - 1):
        c = rows[j]
        if c[4] > 0:
            continue
        prev, cur = vec[j - 1], vec[j]
        left, here = rows[j - 1], c
        left_low = (left[3], left[1]) < (here[3], here[1])
        if left_low and not vertical(cur):
            bad["settled_turn"].append(c[0])
        if not left_low and not diag(prev):
            bad["settled_turn"].append(c[0])
        if vertical(cur) and vertical(prev):
            bad["no_double_vertical"].append(c[0])
        if diag(cur) and diag(prev):
            bad["no_double_diagonal"].append(c[0])
    for name in _SETTLED_CHECKS:
        names = bad[name]
        report.add(f"angles.{name}", not names, {"k": k, "vertices": names[:10]} if names else None)
    return report


# ----------------------------------------------------------------- partial

def check_partial(q: QuadGraph, coords: Mapping[str, Sequence[int]], placed: Iterable[str]) -> VerificationReport:
    """Planarity and strict convexity of the closed faces among ``placed``.

    Used step by step in debug runs, before finalisation.
    """
    report = VerificationReport()
    keep = set(placed)
    pts = {k: (int(coords[k][0]), int(coords[k][1])) for k in keep}
    edges = sorted({tuple(sorted((a, b))) for a in keep for b in q.graph.rotation[a] if b in keep})
    segs = _segments(edges, pts, None, None)
    _check_plane("partial.planar", segs, report)
    outer = q.graph.outer_face_id
    bad = []
    for f in q.graph.faces:
        if f.id == outer or not keep.issuperset(f.boundary):
            continue
        if not strictly_convex([pts[x] for x in f.boundary]):
            bad.append(list(f.boundary))
    report.add("partial.convex_faces", not bad, {"faces": bad[:10]} if bad else None)
    return report


def verify_all(q: QuadGraph, d: GridDrawing) -> VerificationReport:
    report = check_requirements(q, d)
    report.extend(check_strict_convexity(q, d))
    return report
