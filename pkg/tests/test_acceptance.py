"""Acceptance criteria 1-10.  Each test prints one PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) for the summary alone.
Tolerances are fixed here: everything geometric is exact; the timing limits
are 10 s for the corpus, 5 s for the large embed and a growth factor of 6.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from corpus import corpus_results, corpus_specs, random_specs
from dualgrid import GenSpec, build_quad, check_angles, compute_labeling, draw, embed, platonic, random_graph, render_svg, verify_all
from dualgrid.offset import place_offset
from dualgrid.verify import check_requirements, check_strict_convexity

CORPUS_SECONDS = 10.0
LARGE_SECONDS = 5.0
GROWTH_LIMIT = 6.0
SMALL_N, LARGE_N = 25_000, 100_000


def _line(number: int, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"


def _coords_with_bend(d):
    pts = list(d.coords.values())
    if d.bend_point is not None:
        pts.append(d.bend_point)
    return pts


def criterion_1():
    t0 = time.perf_counter()
    results = [(s, draw(random_graph(s))) for s in corpus_specs()]
    elapsed = time.perf_counter() - t0
    bad = [
        str(s) for s, r in results
        if not all(0 <= c <= 2 * r.quad.n - 2 for p in _coords_with_bend(r.drawing) for c in p)
    ]
    ok = not bad and elapsed < CORPUS_SECONDS
    return ok, f"grid bound on {len(results)} graphs, {len(bad)} outside, {elapsed:.1f}s (< {CORPUS_SECONDS:.0f}s)"


def _both_bends():
    for bend in ("primal", "dual"):
        for spec, r in corpus_results(bend):
            yield bend, spec, r


def criterion_2():
    bad = []
    runs = 0
    for bend, spec, r in _both_bends():
        runs += 1
        report = check_requirements(r.quad, r.drawing)
        if not report.ok:
            bad.append((bend, str(spec), [c.name for c in report.failures()]))
    return not bad, f"requirement suite on {runs} runs (both bend choices), {len(bad)} failing {bad[:2]}"


def criterion_3():
    bad = []
    runs = 0
    for bend, spec, r in _both_bends():
        runs += 1
        report = check_strict_convexity(r.quad, r.drawing)
        if not report.ok:
            bad.append((bend, str(spec), [c.name for c in report.failures()]))
    return not bad, f"inner faces strictly convex, outer quad reflex at w, {runs} runs, {len(bad)} failing"


def criterion_4():
    bad = []
    runs = 0
    for spec in corpus_specs():
        for bend in ("primal", "dual"):
            trace = []
            r = draw(random_graph(spec), bend_on=bend, check=False, trace=trace)
            runs += 1
            first = trace[0]
            got = [(row[1], row[2]) for row in first["frontier"]]
            ids = [row[0] for row in first["frontier"]]
            u, v = r.quad.roles()[:2]
            if first["k"] != 2 or got != [(0, 0), (1, 1), (2, 1), (3, 0)] or ids[0] != u or ids[-1] != v:
                bad.append(str(spec))
    return not bad, f"u=(0,0) v=(3,0) group 2 at (1,1),(2,1) on {runs} runs, {len(bad)} failing"


def criterion_5():
    bad = []
    runs = 0
    for bend, spec, r in _both_bends():
        runs += 1
        d = r.drawing
        w2 = r.quad.roles()[3]
        if d.bend_point != (d.coords[w2][0] - 1, d.coords[w2][1] + 2):
            bad.append((bend, str(spec)))
    return not bad, f"bend at (x(w')-1, y(w')+2) on {runs} runs, {len(bad)} failing"


def criterion_6():
    over, width_bad = [], []
    zero = 0
    runs = 0
    worst = 0.0
    for bend, spec, r in _both_bends():
        runs += 1
        d = r.drawing
        total = d.total_degeneracies
        worst = max(worst, total / (d.n - 3))
        if total > d.n - 3:
            over.append(str(spec))
        if total == 0:
            zero += 1
            if d.width_before_finalize != d.n - 1:
                width_bad.append(str(spec))
    ok = not over and not width_bad and zero > 0
    return ok, (
        f"repairs <= n-3 on {runs} runs (max {worst:.2f} of budget), "
        f"{zero} zero-repair runs with width n-1, {len(over) + len(width_bad)} failing"
    )


def criterion_7():
    bad = []
    snaps = 0
    for spec in random_specs(50, offset=1000):
        trace = []
        draw(random_graph(spec), check=False, trace=trace)
        for s in trace:
            if s["k"] < s["m"]:
                snaps += 1
                if not check_angles(s).ok:
                    bad.append((str(spec), s["k"]))
    return not bad, f"slope rules on {snaps} snapshots from 50 traced runs, {len(bad)} failing"


def criterion_8():
    bad = []
    for i, spec in enumerate(random_specs(100, offset=2000)):
        bend = "dual" if i % 3 == 0 else "primal"
        q = build_quad(random_graph(spec), check=False, bend_on=bend)
        c = compute_labeling(q, check=False)
        if embed(q, c, "reference").dumps() != embed(q, c, "offset").dumps():
            bad.append(str(spec))
    return not bad, f"reference and offset JSON byte-identical on 100 instances, {len(bad)} differing"


def _timed_placement(total_n: int) -> tuple[int, float]:
    # a triangulation on V vertices has 2V - 4 faces, so n = 3V - 4
    g = random_graph(GenSpec("triangulation", n=(total_n + 4) // 3, seed=9))
    q = build_quad(g, check=False)
    c = compute_labeling(q, check=False)
    best = float("inf")
    for _ in range(2):
        t0 = time.perf_counter()
        place_offset(q, c)
        best = min(best, time.perf_counter() - t0)
    return q.n, best


def criterion_9():
    n_small, t_small = _timed_placement(SMALL_N)
    n_large, t_large = _timed_placement(LARGE_N)
    growth = t_large / t_small
    ok = t_large < LARGE_SECONDS and growth <= GROWTH_LIMIT
    return ok, (
        f"offset placement n={n_large} in {t_large:.2f}s (< {LARGE_SECONDS:.0f}s), "
        f"n={n_small} in {t_small:.2f}s, growth x{growth:.1f} (<= {GROWTH_LIMIT:.0f})"
    )


def criterion_10():
    r = draw(platonic("dodecahedron"))
    report = verify_all(r.quad, r.drawing)
    svg = render_svg(r.quad, r.drawing)
    fits = all(0 <= c <= 62 for p in _coords_with_bend(r.drawing) for c in p)
    ok = report.ok and r.quad.n == 32 and fits and svg.rstrip().endswith("</svg>")
    return ok, f"dodecahedron n={r.quad.n} verifies={report.ok}, fits 62x62={fits}, svg {len(svg)} bytes"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, capsys):
    ok, detail = CRITERIA[number - 1]()
    with capsys.disabled():
        print("\n" + _line(number, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(_line(i, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
