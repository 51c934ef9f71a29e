"""Canonical labeling of a quadrangulation with a fixed outer quad.

The labeling is found backwards.  Starting from the whole graph with outer
path ``u, w', w, v`` (roles, see :meth:`QuadGraph.roles`), we repeatedly peel
off the top of the current graph ``H``:

* a single vertex ``z`` of the outer path whose only neighbours on the path
  are its two path neighbours, whose inner faces have their opposite corner
  off the path, and which already lost a neighbour to an earlier peel; or
* two adjacent path vertices of degree two in ``H``.

Either move keeps ``H`` 2-connected with a simple outer cycle through
``(u, v)``.  Among all legal moves the one with the least vertex identifier
is taken (singletons before pairs on ties), and peeling stops at the
quadrilateral on ``(u, v)``.  Reversing the peel order gives the labeling.

:func:`compute_labeling` keeps per-vertex counters so each peel costs time
proportional to the degrees involved; :func:`compute_labeling_reference`
rescans the whole outer cycle every step and must agree with it exactly.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .errors import LabelingNotFound, MalformedDocument
from .graph import articulation_points
from .quad import QuadGraph, indexed
from .report import VerificationReport


@dataclass(frozen=True)
class CanonicalLabeling:
    """Ordered groups; ``groups[k - 1]`` holds the vertices labeled ``k``.

    Pairs are stored left to right along the outer path.
    """

    groups: tuple[tuple[str, ...], ...]

    @property
    def m(self) -> int:
        return len(self.groups)

    @cached_property
    def delta(self) -> dict[str, int]:
        return {x: k for k, grp in enumerate(self.groups, start=1) for x in grp}

    def to_json(self) -> dict:
        return {"format": 1, "groups": [list(g) for g in self.groups]}

    @classmethod
    def from_json(cls, doc: str | Mapping) -> "CanonicalLabeling":
        data = json.loads(doc) if isinstance(doc, str) else doc
        try:
            return cls(tuple(tuple(str(x) for x in g) for g in data["groups"]))
        except (KeyError, TypeError) as exc:
            raise MalformedDocument(f"bad labeling document: {exc}") from exc


def compute_labeling(q: QuadGraph, *, check: bool = True) -> CanonicalLabeling:
    """Canonical labeling of ``q`` for its outer quad and bend choice.

    With ``check`` the result is run through :func:`verify_labeling`, which
    costs O(n^2); switch it off for large inputs.
    """
    ix = indexed(q)
    adj, pos, faces, faces_of, face_at = ix.adj, ix.pos, ix.faces, ix.faces_of, ix.face_at
    U, V, W, W2 = ix.roles
    n = len(adj)

    on_c = bytearray(n)
    removed = bytearray(n)
    live = bytearray(b"\x01") * len(faces)
    nbr_on_c = [0] * n
    opp_on_c = [0] * n
    lost = [0] * n
    deg = [len(a) for a in adj]
    nxt = [-1] * n
    prv = [-1] * n

    def join(x: int) -> None:
        on_c[x] = 1
        for y in adj[x]:
            if not removed[y]:
                nbr_on_c[y] += 1
        for f in faces_of[x]:
            if live[f]:
                vs = faces[f]
                opp_on_c[vs[(vs.index(x) + 2) & 3]] += 1

    touched: set[int] = set()

    def remove(z: int) -> None:
        removed[z] = 1
        on_c[z] = 0
        for y in adj[z]:
            if not removed[y]:
                nbr_on_c[y] -= 1
                deg[y] -= 1
                lost[y] += 1
                touched.add(y)
        for f in faces_of[z]:
            if not live[f]:
                continue
            live[f] = 0
            vs = faces[f]
            i = vs.index(z)
            a, b, c = vs[(i + 1) & 3], vs[(i + 2) & 3], vs[(i + 3) & 3]
            opp_on_c[b] -= 1
            if on_c[a]:
                opp_on_c[c] -= 1
            if on_c[c]:
                opp_on_c[a] -= 1
            touched.update((a, b, c))

    path = [U, W2, W, V]
    for a, b in zip(path, path[1:]):
        nxt[a], prv[b] = b, a
    for x in path:
        join(x)

    def single_ok(z: int) -> bool:
        return (
            on_c[z] == 1
            and z != U
            and z != V
            and nbr_on_c[z] == 2
            and opp_on_c[z] == 0
            and lost[z] > 0
        )

    def pair_ok(z: int) -> bool:
        if not on_c[z] or z == U or z == V:
            return False
        z1 = nxt[z]
        return z1 != V and z1 != -1 and deg[z] == 2 and deg[z1] == 2

    heap: list[tuple[int, int, int]] = []

    def offer(x: int) -> None:
        if not on_c[x]:
            return
        heapq.heappush(heap, (x, 0, x))
        y = nxt[x]
        if y != -1:
            heapq.heappush(heap, (min(x, y), 1, x))
        y = prv[x]
        if y != -1:
            heapq.heappush(heap, (min(x, y), 1, y))

    h_size = n
    peeled: list[tuple[int, ...]] = []

    def peel_single(z: int) -> None:
        left, right = prv[z], nxt[z]
        remove(z)
        # walk z's remaining neighbours counterclockwise from left to right
        row = adj[z]
        deg_z = len(row)
        i = pos[z][left]
        new_path = [left]
        while True:
            f = face_at[z][i]
            vs = faces[f]
            new_path.append(vs[(vs.index(z) + 2) & 3])
            i = (i + 1) % deg_z
            x = row[i]
            if x == right:
                break
            new_path.append(x)
        new_path.append(right)
        for a, b in zip(new_path, new_path[1:]):
            nxt[a], prv[b] = b, a
        for x in new_path[1:-1]:
            join(x)
        touched.update(new_path)
        peeled.append((z,))

    def peel_pair(z0: int) -> None:
        z1 = nxt[z0]
        left, right = prv[z0], nxt[z1]
        remove(z0)
        remove(z1)
        nxt[left], prv[right] = right, left
        touched.update((left, right))
        peeled.append((z0, z1))

    peel_single(W2)
    h_size -= 1
    for x in range(n):
        if on_c[x]:
            offer(x)
    touched.clear()

    while h_size > 4:
        while heap:
            key, kind, z = heapq.heappop(heap)
            if kind == 0:
                if single_ok(z):
                    break
            elif pair_ok(z) and min(z, nxt[z]) == key:
                break
        else:
            raise LabelingNotFound(
                "no removable vertex or pair on the outer path",
                remaining=h_size,
                outer_path=_walk(nxt, U, ix.ids),
            )
        if kind == 0:
            peel_single(z)
            h_size -= 1
        else:
            peel_pair(z)
            h_size -= 2
        for x in touched:
            offer(x)
        touched.clear()

    a = nxt[U]
    b = nxt[a]
    if nxt[b] != V:
        raise LabelingNotFound(
            "peeling stopped away from the base quadrilateral",
            outer_path=_walk(nxt, U, ix.ids),
        )
    ids = ix.ids
    groups = [(ids[U], ids[V]), (ids[a], ids[b])]
    groups.extend(tuple(ids[x] for x in grp) for grp in reversed(peeled))
    labeling = CanonicalLabeling(tuple(groups))
    if check:
        report = verify_labeling(q, labeling)
        if not report.ok:
            raise LabelingNotFound(
                "computed labeling failed verification",
                failures=[c.to_json() for c in report.failures()],
            )
    return labeling


def _walk(nxt: Sequence[int], start: int, ids: Sequence[str]) -> list[str]:
    out = []
    x = start
    while x != -1 and len(out) <= len(ids):
        out.append(ids[x])
        x = nxt[x]
    return out


def compute_labeling_reference(q: QuadGraph) -> CanonicalLabeling:
    """Quadratic peel that re-derives every candidate from scratch each step.

    The outer cycle is re-traced from the induced rotation system of the
    remaining graph instead of being patched, so the bookkeeping in
    :func:`compute_labeling` is checked against an independent route.
    """
    ix = indexed(q)
    adj, faces, faces_of = ix.adj, ix.faces, ix.faces_of
    U, V, W, W2 = ix.roles
    n = len(adj)
    alive = [True] * n

    def outer_path() -> list[int]:
        # face to the left of v -> u in the induced embedding, read backwards
        walk = []
        a, b = V, U
        while True:
            walk.append(a)
            rb = [x for x in adj[b] if alive[x]]
            a, b = b, rb[rb.index(a) - 1]
            if (a, b) == (V, U):
                break
        i = walk.index(U)
        return walk[i:] + walk[:i]

    peeled: list[tuple[int, ...]] = []
    alive[W2] = False
    peeled.append((W2,))
    size = n - 1
    while size > 4:
        path = outer_path()
        on_path = set(path)
        options = []
        for j in range(1, len(path) - 1):
            z = path[j]
            nbrs = [y for y in adj[z] if alive[y]]
            if (
                len([y for y in nbrs if y in on_path]) == 2
                and any(not alive[y] for y in adj[z])
                and not any(
                    faces[f][(faces[f].index(z) + 2) % 4] in on_path
                    for f in faces_of[z]
                    if all(alive[x] for x in faces[f])
                )
            ):
                options.append((z, 0, z))
            if j + 1 < len(path) - 1:
                z1 = path[j + 1]
                if len(nbrs) == 2 and sum(alive[y] for y in adj[z1]) == 2:
                    options.append((min(z, z1), 1, z))
        if not options:
            raise LabelingNotFound("reference peel is stuck", remaining=size)
        _, kind, z = min(options)
        if kind == 0:
            alive[z] = False
            peeled.append((z,))
            size -= 1
        else:
            z1 = path[path.index(z) + 1]
            alive[z] = alive[z1] = False
            peeled.append((z, z1))
            size -= 2
    path = outer_path()
    ids = ix.ids
    groups = [(ids[U], ids[V]), (ids[path[1]], ids[path[2]])]
    groups.extend(tuple(ids[x] for x in grp) for grp in reversed(peeled))
    return CanonicalLabeling(tuple(groups))


# ------------------------------------------------------------------ checking

def verify_labeling(q: QuadGraph, c: CanonicalLabeling) -> VerificationReport:
    """Check a claimed labeling against the canonical-labeling invariants.

    Every prefix graph is rebuilt from the rotation system, so nothing from
    the peeling code is reused.  O(n^2) overall.
    """
    report = VerificationReport()
    g = q.graph
    u, v, w, w2 = q.roles()
    flat = [x for grp in c.groups for x in grp]
    report.add(
        "labeling.partition",
        sorted(flat) == sorted(g.vertex_ids),
        {"missing": sorted(set(g.vertex_ids) - set(flat)), "repeated": sorted({x for x in flat if flat.count(x) > 1})},
    )
    bad_sizes = [k for k, grp in enumerate(c.groups, 1) if len(grp) not in (1, 2)]
    report.add("labeling.group_sizes", not bad_sizes, {"groups": bad_sizes})
    report.add(
        "labeling.first_group",
        len(c.groups) > 0 and set(c.groups[0]) == {u, v},
        {"expected": [u, v], "got": list(c.groups[0]) if c.groups else []},
    )
    report.add(
        "labeling.last_group",
        len(c.groups) > 0 and list(c.groups[-1]) == [w2],
        {"expected": [w2], "got": list(c.groups[-1]) if c.groups else []},
    )
    report.add(
        "labeling.second_group",
        len(c.groups) > 1 and len(c.groups[1]) == 2,
        {"got": list(c.groups[1]) if len(c.groups) > 1 else []},
    )
    if not report.ok:
        return report

    rotation = g.rotation
    delta = c.delta
    m = c.m
    fails: dict[str, dict] = {}

    def fail(name: str, witness: dict) -> None:
        fails.setdefault(name, witness)

    for k in range(2, m + 1):
        # G_k: groups 1..k; the prefix checks apply to G_{k-1} for k - 1 >= 2
        inside = {x for x, d in delta.items() if d <= k}
        sub = {x: [y for y in rotation[x] if y in inside] for x in inside}
        order = sorted(inside)
        at = {x: i for i, x in enumerate(order)}
        cuts, connected = articulation_points([[at[y] for y in sub[x]] for x in order])
        if cuts or not connected:
            fail("prefix.biconnected", {"k": k + 1, "cut_vertices": sorted(order[i] for i in cuts)})
        exterior, faces = _trace_induced(sub, v, u)
        if len(set(exterior)) != len(exterior):
            fail("prefix.outer_cycle", {"k": k + 1, "boundary": exterior})
        bad = [f for f in faces if len(f) != 4]
        if bad:
            fail("labeling.quadrilateral_faces", {"k": k, "faces": bad[:3]})
        if k == m:
            continue
        grp = c.groups[k]  # group k + 1
        on_c = set(exterior)
        later = {x for x, d in delta.items() if d > k + 1}
        if len(grp) == 1:
            z = grp[0]
            below = [y for y in rotation[z] if y in inside]
            if len(below) < 2 or any(y not in on_c for y in below):
                fail("single.attachment", {"k": k + 1, "vertex": z, "neighbors_below": below})
            if k + 1 < m and not any(y in later for y in rotation[z]):
                fail("single.later_neighbor", {"k": k + 1, "vertex": z})
        else:
            z0, z1 = grp
            if z1 not in rotation[z0]:
                fail("pair.adjacent", {"k": k + 1, "pair": [z0, z1]})
            for z in grp:
                below = [y for y in rotation[z] if y in inside]
                if len(below) != 1 or below[0] not in on_c:
                    fail("pair.attachment", {"k": k + 1, "vertex": z, "neighbors_below": below})
                if not any(y in later for y in rotation[z]):
                    fail("pair.later_neighbor", {"k": k + 1, "vertex": z})
    for name in (
        "prefix.biconnected",
        "prefix.outer_cycle",
        "labeling.quadrilateral_faces",
        "single.attachment",
        "single.later_neighbor",
        "pair.adjacent",
        "pair.attachment",
        "pair.later_neighbor",
    ):
        report.add(name, name not in fails, fails.get(name))
    return report


def _trace_induced(
    sub: Mapping[str, Sequence[str]], a0: str, b0: str
) -> tuple[list[str], list[list[str]]]:
    """Faces of an induced rotation system; the one left of ``a0 -> b0`` first."""
    pos = {x: {y: i for i, y in enumerate(nb)} for x, nb in sub.items()}
    seen: set[tuple[str, str]] = set()

    def walk(a: str, b: str) -> list[str]:
        out = []
        while (a, b) not in seen:
            seen.add((a, b))
            out.append(a)
            nb = sub[b]
            a, b = b, nb[pos[b][a] - 1]
        return out

    exterior = walk(a0, b0)
    faces = []
    for x, nb in sub.items():
        for y in nb:
            if (x, y) not in seen:
                faces.append(walk(x, y))
    return exterior, faces
