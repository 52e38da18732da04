"""Bounded connectivity, minimal/latest min-cut sides and the min-cut DAG."""

import random

import pytest

from kecc.digraph import GraphError, ReversalOverlay, contract, induced
from kecc.flow import (flow_state, lambda_bounded, latest_mincut,
                       minimal_mincut_side, overlay_reach, pq_graph)
from kecc.gen import gen_blocks, gen_cyc, gen_kn
from kecc.oracle import enumerate_separators, lambda_oracle, mset_oracle

from conftest import overlay_to_digraph, random_strongly_connected, random_walk


def test_lambda_fixtures():
    assert lambda_bounded(gen_cyc(4, 2), 1, 0, 5) == 2
    assert lambda_bounded(gen_kn(4), 0, 3, 10) == 3
    assert lambda_bounded(gen_blocks(5, 5, 2), 1, 6, 4) == 2


def test_lambda_cap_saturates():
    assert lambda_bounded(gen_kn(5), 0, 1, 2) == 2


def test_lambda_matches_oracle_random(rng):
    for _ in range(25):
        g = random_strongly_connected(rng, rng.randrange(3, 8),
                                      rng.randrange(0, 12))
        u, v = rng.sample(range(g.n_live), 2)
        cap = rng.randrange(1, 6)
        assert lambda_bounded(g, u, v, cap) == lambda_oracle(g, u, v, cap)


def test_flow_state_fixtures():
    fs = flow_state(gen_cyc(4, 1), 1, 0)
    assert fs.value == 1
    assert len(fs.overlay.journal) == 3  # one path of three edges
    fs = flow_state(gen_kn(4), 0, 3)
    assert fs.value == 3
    assert len(fs.overlay.journal) == 5  # paths of lengths 1, 2, 2


def test_minimal_mincut_fixtures():
    assert minimal_mincut_side(gen_cyc(4, 1), 1, 0).sorted() == [1]
    assert minimal_mincut_side(gen_cyc(4, 3), 2, 0).sorted() == [2]
    cut = minimal_mincut_side(gen_blocks(5, 5, 2), 6, 1)
    assert cut.sorted() == [5, 6, 7, 8, 9]
    assert cut.out_count == 2


def test_latest_mincut_fixtures():
    assert latest_mincut(gen_cyc(4, 1), 1, 0).sorted() == [1, 2, 3]
    assert latest_mincut(gen_blocks(5, 5, 2), 6, 1).sorted() == [5, 6, 7, 8, 9]


def test_minimal_latest_against_enumeration(rng):
    for _ in range(40):
        g = random_strongly_connected(rng, rng.randrange(3, 7),
                                      rng.randrange(0, 10))
        v, s = rng.sample(range(g.n_live), 2)
        lam = lambda_oracle(g, v, s, 10)
        seps = enumerate_separators(g, v, s, lam)
        assert seps, "a min cut always exists"
        minimal = minimal_mincut_side(g, v, s).members
        latest = latest_mincut(g, v, s).members
        inter = frozenset.intersection(*seps)
        union = frozenset.union(*seps)
        assert minimal == inter
        assert latest == union
        for sep in seps:
            assert minimal <= sep <= latest


def test_latest_boundary_reachability(rng):
    # every boundary point of the returned set is reachable from v inside it
    for _ in range(100):
        g = random_strongly_connected(rng, rng.randrange(3, 9),
                                      rng.randrange(0, 14))
        v, s = rng.sample(range(g.n_live), 2)
        cut = latest_mincut(g, v, s)
        boundary = {g.tail(e) for u in cut.members for e in g.out_edges(u)
                    if g.head(e) not in cut.members}
        sub, vmap = induced(g, cut.members)
        ov = ReversalOverlay(sub)
        reach = overlay_reach(ov, vmap[v])
        assert {vmap[b] for b in boundary} <= reach


def test_include_outgoing_edge(rng):
    # from the latest mincut S with R the inside-reach of v, merging any exit
    # point x != s pushes the connectivity to s strictly above out(S)
    done = 0
    while done < 30:
        g = random_strongly_connected(rng, rng.randrange(4, 9),
                                      rng.randrange(0, 14))
        v, s = rng.sample(range(g.n_live), 2)
        cut = latest_mincut(g, v, s)
        sub, vmap = induced(g, cut.members)
        reach_local = overlay_reach(ReversalOverlay(sub), vmap[v])
        inv = {b: a for a, b in vmap.items()}
        reach = {inv[x] for x in reach_local}
        exits = {g.head(e) for u in cut.members for e in g.out_edges(u)
                 if g.head(e) not in cut.members}
        exits.discard(s)
        if not exits:
            continue
        for x in exits:
            merged, z = contract(g, reach | {x})
            assert lambda_oracle(merged, z, s, cut.out_count + 1) \
                > cut.out_count
        done += 1


def test_edge_conn_after_reverse(rng):
    for _ in range(60):
        g = random_strongly_connected(rng, rng.randrange(3, 8),
                                      rng.randrange(0, 12))
        v, s = rng.sample(range(g.n_live), 2)
        lam = lambda_oracle(g, v, s, g.m_live + 1)
        ov = ReversalOverlay(g)
        walk = random_walk(g, ov, rng, v)
        if not walk:
            continue
        ov.reverse_path(walk)
        after = lambda_oracle(overlay_to_digraph(ov), v, s, g.m_live + 1)
        assert after in (lam, lam - 1)


def test_minimum_set_after_reverse(rng):
    # reversing a v-path that ends outside the minimal separator makes the
    # same set the minimal separator one connectivity level down
    done = 0
    while done < 25:
        g = random_strongly_connected(rng, rng.randrange(3, 8),
                                      rng.randrange(0, 10))
        v, s = rng.sample(range(g.n_live), 2)
        lam = lambda_oracle(g, v, s, 8)
        if lam < 2:
            continue
        minimal = minimal_mincut_side(g, v, s).members
        ov = ReversalOverlay(g)
        walk = random_walk(g, ov, rng, v, max_len=20)
        if not walk:
            continue
        end = ov.head(walk[-1])  # overlay orientation before flipping
        if end in minimal:
            continue
        ov.reverse_path(walk)
        h = overlay_to_digraph(ov)
        assert mset_oracle(h, v, s, lam - 1).members == minimal
        done += 1


def test_submodularity_of_separators(rng):
    done = 0
    while done < 30:
        g = random_strongly_connected(rng, rng.randrange(4, 7),
                                      rng.randrange(0, 8))
        v, s = rng.sample(range(g.n_live), 2)
        lam = lambda_oracle(g, v, s, 8)
        seps = enumerate_separators(g, v, s, lam)
        if len(seps) < 2:
            continue
        a, b = rng.sample(seps, 2)
        from kecc.digraph import out_of
        assert out_of(g, a & b) == lam
        assert out_of(g, a | b) == lam
        done += 1


def test_pq_cycle_fixture():
    g = gen_cyc(4, 1)
    pq = pq_graph(g, 1, 0)
    adjacency = {x: sorted(pq.succ[x]) for x in pq.universe}
    assert adjacency == {0: [1, 3], 1: [], 2: [1], 3: [2]}
    assert pq.n_scc == 4
    closed = {frozenset(x) for x in pq.closed_sets()}
    assert closed == {frozenset({1}), frozenset({1, 2}), frozenset({1, 2, 3})}


def test_pq_saturated_edges_only_backward():
    g = gen_cyc(4, 1)
    pq = pq_graph(g, 1, 0)
    # flow saturates 1->2->3->0; those arcs appear only reversed
    assert 2 not in pq.succ[1]
    assert 1 in pq.succ[2]


def test_pq_kn_fixture():
    g = gen_kn(4)
    pq = pq_graph(g, 0, 3)
    closed = {frozenset(x) for x in pq.closed_sets()}
    brute = set(enumerate_separators(g, 0, 3, 3))
    assert closed == brute


def test_pq_condensation_endpoints(rng):
    for _ in range(20):
        g = random_strongly_connected(rng, rng.randrange(3, 7),
                                      rng.randrange(0, 8))
        v, s = rng.sample(range(g.n_live), 2)
        pq = pq_graph(g, v, s)
        indeg = {c: 0 for c in range(pq.n_scc)}
        for c, targets in pq.dag_succ.items():
            for t in targets:
                indeg[t] += 1
        sources = [c for c, d in indeg.items() if d == 0]
        sinks = [c for c, targets in pq.dag_succ.items() if not targets]
        assert sources == [pq.scc_id[s]]
        assert sinks == [pq.scc_id[v]]


def test_pq_closed_sets_match_enumeration(rng):
    for _ in range(40):
        g = random_strongly_connected(rng, rng.randrange(3, 7),
                                      rng.randrange(0, 9))
        v, s = rng.sample(range(g.n_live), 2)
        lam = lambda_oracle(g, v, s, 10)
        closed = {frozenset(x) for x in pq_graph(g, v, s).closed_sets()}
        assert closed == set(enumerate_separators(g, v, s, lam))


def test_flow_argument_validation():
    g = gen_cyc(3, 1)
    with pytest.raises(GraphError):
        lambda_bounded(g, 1, 1, 3)
    with pytest.raises(GraphError):
        lambda_bounded(g, 0, 1, 0)
