import json

import networkx as nx
import pytest

from corpus import K4_DOC, random_specs
from dualgrid import CanonicalLabeling, build_quad, compute_labeling, parse_graph, platonic, random_graph, select_outer_quad, verify_labeling
from dualgrid.labeling import compute_labeling_reference


def k4_quad(bend="primal"):
    return select_outer_quad(build_quad(parse_graph(K4_DOC)), bend_on=bend)


def oracle_labelings(q):
    """Every grouping meeting the prefix conditions, by exhaustive search."""
    G = nx.Graph(q.graph.edges())
    u, v, _, w2 = q.roles()
    found = []

    def fine(S, grp):
        T = S | set(grp)
        rest = set(G) - T
        if not nx.is_biconnected(G.subgraph(T)):
            return False
        if rest and not nx.is_connected(G.subgraph(rest)):
            return False
        for z in grp:
            if rest and not any(y in rest for y in G[z]):
                return False
        return True

    def go(S, groups):
        rest = set(G) - S
        if rest == {w2}:
            if sum(1 for y in G[w2] if y in S) >= 2:
                found.append(tuple(groups) + ((w2,),))
            return
        for z in sorted(rest - {w2}):
            if sum(1 for y in G[z] if y in S) >= 2 and fine(S, (z,)):
                go(S | {z}, groups + [(z,)])
            for z1 in sorted(G[z]):
                if z1 in rest and z1 != w2 and z < z1:
                    if all(sum(1 for y in G[x] if y in S) == 1 for x in (z, z1)) and fine(S, (z, z1)):
                        go(S | {z, z1}, groups + [(z, z1)])

    for a in G[u]:
        for b in G[v]:
            if a != v and b != u and G.has_edge(a, b) and a != w2 and b != w2:
                go({u, v, a, b}, [(u, v), (a, b)])
    return found


def normal(c):
    return tuple(tuple(sorted(g)) for g in c)


@pytest.mark.parametrize("bend", ["primal", "dual"])
def test_k4_labeling_among_oracle(bend):
    q = k4_quad(bend)
    c = compute_labeling(q)
    assert c.m == 5
    assert set(c.groups[0]) == set(q.roles()[:2])
    assert len(c.groups[1]) == 2
    assert c.groups[-1] == (q.roles()[3],)
    all_valid = {normal(x) for x in oracle_labelings(q)}
    assert normal(c.groups) in all_valid


def test_k4_golden():
    c = compute_labeling(k4_quad())
    assert c.groups == (("p:1", "f:2"), ("f:0", "p:3"), ("p:4", "f:3"), ("p:2",), ("f:1",))


def test_oracle_labelings_pass_verifier():
    q = k4_quad()
    labs = oracle_labelings(q)
    assert labs
    for lab in labs:
        assert verify_labeling(q, CanonicalLabeling(lab)).ok


def test_cube_prefixes_biconnected():
    q = build_quad(platonic("cube"))
    c = compute_labeling(q)
    G = nx.Graph(q.graph.edges())
    placed = set()
    for k, grp in enumerate(c.groups, 1):
        placed |= set(grp)
        if k >= 2:
            assert nx.is_biconnected(G.subgraph(placed))


def test_group_count_identity():
    for spec in random_specs(20):
        q = build_quad(random_graph(spec))
        c = compute_labeling(q)
        s = sum(1 for g in c.groups[2:] if len(g) == 1)
        p = sum(1 for g in c.groups[2:] if len(g) == 2)
        assert 4 + s + 2 * p == q.n
        assert all(len(g) == 2 for g in c.groups[:2])


def test_reference_matches_fast():
    for spec in random_specs(30, hi=40):
        for bend in ("primal", "dual"):
            q = select_outer_quad(build_quad(random_graph(spec)), bend_on=bend)
            assert compute_labeling(q).groups == compute_labeling_reference(q).groups


def test_deterministic_and_round_trip():
    q = build_quad(platonic("icosahedron"))
    a, b = compute_labeling(q), compute_labeling(q)
    assert a == b
    assert CanonicalLabeling.from_json(json.dumps(a.to_json())) == a


def test_swapped_first_groups_fail():
    q = k4_quad()
    c = compute_labeling(q)
    bad = CanonicalLabeling((c.groups[1], c.groups[0]) + c.groups[2:])
    report = verify_labeling(q, bad)
    assert not report.ok
    assert "labeling.first_group" in [f.name for f in report.failures()]


def test_non_adjacent_pair_fails():
    q = build_quad(platonic("cube"))
    c = compute_labeling(q)
    k = next(i for i, g in enumerate(c.groups) if i >= 2 and len(g) == 2)
    single = next(i for i, g in enumerate(c.groups) if i > k and len(g) == 1 and i < c.m - 1)
    z0, z1 = c.groups[k]
    x = c.groups[single][0]
    groups = list(c.groups)
    groups[k] = (z0, x)
    groups[single] = (z1,)
    report = verify_labeling(q, CanonicalLabeling(tuple(groups)))
    assert "pair.adjacent" in [f.name for f in report.failures()]


def test_missing_vertex_fails_partition():
    q = k4_quad()
    c = compute_labeling(q)
    report = verify_labeling(q, CanonicalLabeling(c.groups[:3] + c.groups[4:]))
    assert [f.name for f in report.failures()] == ["labeling.partition"]
