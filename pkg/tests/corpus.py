"""Shared inputs for the test modules."""

from __future__ import annotations

import random
from functools import lru_cache

from dualgrid import GenSpec, draw, random_graph
from dualgrid.generate import SOLIDS

K4_DOC = {
    "format": 1,
    "vertices": ["1", "2", "3", "4"],
    "rotation": {"1": ["3", "4", "2"], "2": ["1", "4", "3"], "3": ["2", "4", "1"], "4": ["2", "1", "3"]},
    "outer_face": ["1", "2", "3"],
}


def random_specs(count: int, lo: int = 4, hi: int = 60, offset: int = 0) -> list[GenSpec]:
    out = []
    for seed in range(offset, offset + count):
        n = random.Random(seed).randint(lo, hi)
        out.append(GenSpec("triangulation" if seed % 2 else "sparsified", n=n, seed=seed))
    return out


def corpus_specs() -> list[GenSpec]:
    return [GenSpec("platonic", name=s) for s in SOLIDS] + random_specs(200)


@lru_cache(maxsize=None)
def corpus_results(bend_on: str = "primal"):
    return tuple((spec, draw(random_graph(spec), bend_on=bend_on)) for spec in corpus_specs())
