"""Linear-time placement with relative x offsets.

Frontier vertices store x relative to their frontier predecessor, covered
vertices store x relative to the vertex whose under-set absorbed them.  A
shift of ``U(c_j) | ... | U(c_r)`` is then a single addition to the offset
of ``c_j``, and the under-set trees move rigidly for free.  Each step only
reads the frontier between its first and last contact, and those vertices
(other than the two ends) leave the frontier for good, so the total work is
linear.  Absolute coordinates are resolved in one pass at the end.
"""

from __future__ import annotations

import gc
from contextlib import contextmanager

from .errors import BadGroupShape, RepairDivergence
from .labeling import CanonicalLabeling
from .placement import DEGENERACY_TYPES
from .quad import QuadGraph, indexed


@contextmanager
def _gc_paused():
    # the loop allocates millions of small objects but creates no cycles
    was = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was:
            gc.enable()


def place_offset(
    q: QuadGraph,
    labeling: CanonicalLabeling,
    trace: list | None = None,
) -> tuple[dict[str, list[int]], dict[str, int]]:
    with _gc_paused():
        return _place(q, labeling, trace)


def _place(q, labeling, trace):
    ix = indexed(q)
    n = len(ix.ids)
    adj = ix.adj
    U, V, W, W2 = ix.roles
    groups = [tuple(ix.index[x] for x in grp) for grp in labeling.groups]
    m = len(groups)
    if m < 3 or len(groups[0]) != 2 or len(groups[1]) != 2 or set(groups[0]) != {U, V}:
        raise BadGroupShape("groups 1 and 2 must be the base edge and the first quad")

    delta = [0] * n
    for k, grp in enumerate(groups, start=1):
        for z in grp:
            delta[z] = k
    pending = [len(a) for a in adj]
    placed = [False] * n
    nxt = [-1] * n
    prv = [-1] * n
    dx = [0] * n
    y = [0] * n
    children: list[list[int]] = [[] for _ in range(n)]
    counts = dict.fromkeys(DEGENERACY_TYPES, 0)

    def place(grp) -> None:
        for z in grp:
            placed[z] = True
            for w in adj[z]:
                pending[w] -= 1

    a, b = groups[1]
    if a not in adj[U]:
        a, b = b, a
    if a not in adj[U] or b not in adj[V]:
        raise BadGroupShape("group 2 does not close the first quadrilateral")
    place((U, V, a, b))
    for s, t in ((U, a), (a, b), (b, V)):
        nxt[s], prv[t] = t, s
    dx[a], dx[b], dx[V] = 1, 1, 1
    y[a] = y[b] = 1

    def snapshot(k: int) -> dict:
        rows = []
        c, x = U, 0
        while c != -1:
            x += dx[c] if c != U else 0
            rows.append([ix.ids[c], x, y[c], delta[c], pending[c]])
            c = nxt[c]
        return {"k": k, "m": m, "frontier": rows}

    if trace is not None:
        trace.append(snapshot(2))

    def collinear(ax, ay, bx, by, cx, cy) -> bool:
        return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) == 0

    for k in range(3, m + 1):
        grp = groups[k - 1]
        if len(grp) == 1:
            z0 = grp[0]
            if k == m:
                cp, cq = U, W
            else:
                cp, cq = _contact_block(adj[z0], placed)
            place(grp)
            # rel[i]: x of the i-th frontier vertex from cp onward, relative to cp
            path = [cp]
            rel = [0]
            c = cp
            while c != cq:
                c = nxt[c]
                if c == -1:
                    raise BadGroupShape("contacts are not in frontier order", group=[ix.ids[z0]])
                path.append(c)
                rel.append(rel[-1] + dx[c])
            qi = len(path) - 1
            if qi < 2:
                raise BadGroupShape("singleton must close at least one face", group=[ix.ids[z0]])

            def low(i: int, j: int) -> int:
                di, dj = delta[path[i]], delta[path[j]]
                if di != dj:
                    return i if di < dj else j
                return i if rel[i] < rel[j] else j

            left = low(0, 1)
            right = low(qi - 2, qi - 1)
            start = qi - 1 if right == qi - 2 else qi
            for i in range(start, qi + 1):
                rel[i] += 1
            after = nxt[cq]
            yq = y[cq]
            for _ in range(n + 1):
                x0 = 0 if pending[cp] == 0 else 1
                y0 = yq + rel[qi] - 1 + (1 if pending[cp] == 0 else 0)
                fired = False
                if x0 == rel[1] == rel[2]:
                    for i in range(1, qi + 1):
                        rel[i] += 1
                    counts["d1"] += 1
                    fired = True
                    x0 = 0 if pending[cp] == 0 else 1
                    y0 = yq + rel[qi] - 1 + (1 if pending[cp] == 0 else 0)
                if (
                    k < m
                    and after != -1
                    and pending[cq] == 0
                    and collinear(x0, y0, rel[qi], yq, rel[qi] + dx[after], y[after])
                ):
                    dx[after] += 1
                    counts["d2"] += 1
                    fired = True
                if not fired:
                    break
            else:
                raise RepairDivergence(f"degeneracy repairs did not settle at step {k}", k=k)
            for i in range(1, qi):
                c = path[i]
                if i == 1 and left == 1:
                    parent, off = cp, rel[i]
                elif i == qi - 1 and right == qi - 2:
                    parent, off = cq, rel[i] - rel[qi]
                else:
                    parent, off = z0, rel[i] - x0
                children[parent].append(c)
                dx[c] = off
            dx[z0] = x0
            dx[cq] = rel[qi] - x0
            y[z0] = y0
            nxt[cp], prv[z0] = z0, cp
            nxt[z0], prv[cq] = cq, z0
        else:
            z0, z1 = grp
            c0 = next((w for w in adj[z0] if placed[w]), -1)
            c1 = next((w for w in adj[z1] if placed[w]), -1)
            if c0 != -1 and nxt[c1] == c0:
                z0, z1, c0, c1 = z1, z0, c1, c0
            if c0 == -1 or nxt[c0] != c1:
                raise BadGroupShape("pair must sit on one frontier edge", group=[ix.ids[z] for z in grp])
            cp, cq = c0, c1
            place(grp)
            span = dx[cq] + 2
            after = nxt[cq]
            yp, yq = y[cp], y[cq]
            for _ in range(n + 1):
                x0 = 0 if pending[cp] == 0 else 1
                y0 = yq + span - 2 + (1 if pending[cp] == 0 else 0)
                fired = False
                if y0 == yp:
                    span += 1
                    counts["d3"] += 1
                    fired = True
                    x0 = 0 if pending[cp] == 0 else 1
                    y0 = yq + span - 2 + (1 if pending[cp] == 0 else 0)
                if (
                    k < m
                    and after != -1
                    and pending[cq] == 0
                    and collinear(x0 + 1, y0, span, yq, span + dx[after], y[after])
                ):
                    dx[after] += 1
                    counts["d4"] += 1
                    fired = True
                if not fired:
                    break
            else:
                raise RepairDivergence(f"degeneracy repairs did not settle at step {k}", k=k)
            dx[z0], dx[z1], dx[cq] = x0, 1, span - x0 - 1
            y[z0] = y[z1] = y0
            nxt[cp], prv[z0] = z0, cp
            nxt[z0], prv[z1] = z1, z0
            nxt[z1], prv[cq] = cq, z1
        if trace is not None:
            trace.append(snapshot(k))

    x = [0] * n
    c, acc = U, 0
    roots = []
    while c != -1:
        acc += dx[c] if c != U else 0
        x[c] = acc
        roots.append(c)
        c = nxt[c]
    stack = roots
    while stack:
        c = stack.pop()
        for ch in children[c]:
            x[ch] = x[c] + dx[ch]
            stack.append(ch)
    return {ix.ids[i]: [x[i], y[i]] for i in range(n)}, counts


def _contact_block(rot: list[int], placed: list[bool]) -> tuple[int, int]:
    """First and last placed neighbours, counterclockwise, of a new vertex."""
    d = len(rot)
    for i in range(d):
        if placed[rot[i]] and not placed[rot[i - 1]]:
            j = i
            while placed[rot[(j + 1) % d]]:
                j += 1
            return rot[i], rot[j % d]
    raise BadGroupShape("new vertex has no contiguous block of placed neighbours")
