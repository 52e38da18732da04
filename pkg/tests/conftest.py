"""Shared helpers: seeded random graphs, planted fixtures, fingerprinting."""

from __future__ import annotations

import random

import pytest

from kecc.digraph import AUX_OTHER, Digraph


def random_digraph(rng, n, m):
    """Random multigraph without self-loops; may be disconnected."""
    g = Digraph()
    g.add_vertices(n)
    added = 0
    while added < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            g.add_edge(u, v)
            added += 1
    return g


def random_strongly_connected(rng, n, extra):
    """Random permutation cycle plus extra arcs: strongly connected."""
    g = Digraph()
    g.add_vertices(n)
    perm = list(range(n))
    rng.shuffle(perm)
    for i in range(n):
        g.add_edge(perm[i], perm[(i + 1) % n])
    added = 0
    while added < extra:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            g.add_edge(u, v)
            added += 1
    return g


def random_walk(g, ov, rng, start, max_len=12):
    """Edge-distinct directed walk through the overlay, as an edge list."""
    used = set()
    cur = start
    path = []
    for _ in range(max_len):
        options = [(e, y) for e, y in ov.succ(cur) if e not in used]
        if not options or (path and rng.random() < 0.25):
            break
        e, y = options[rng.randrange(len(options))]
        used.add(e)
        path.append(e)
        cur = y
    return path


def fingerprint(g):
    """Structural hash of the full graph state, rings included."""
    return hash((
        tuple(g.kind), tuple(g.v_alive), tuple(g.e_tail), tuple(g.e_head),
        tuple(g.e_alive), tuple(g.first_out), tuple(g.first_in),
        tuple(g.nxt_out), tuple(g.prv_out), tuple(g.nxt_in), tuple(g.prv_in),
        g.n_live, g.m_live,
    ))


def overlay_to_digraph(ov):
    """Materialize the overlay view as a plain graph (same vertex ids)."""
    g = ov.g
    h = Digraph()
    for v in range(g.n_slots()):
        h.add_vertex(g.kind[v])
        if not g.v_alive[v]:
            h.v_alive[v] = False
            h.n_live -= 1
    for v in g.vertices():
        for e, y in ov.succ(v):
            h.add_edge(v, y)
    return h


def planted_deficient():
    """Graph where an auxiliary vertex v with lambda(v, s) = 2 sits inside
    the minimal 3-out set of a whole ordinary cluster.

    A = K5 on 0..4 (s = 1), U = K5 on 5..9, v = 10 auxiliary.
    Edges: 5->0, 5->10 x3, 10->0 x2, 0->5 x3.  The minimal 3-out set of any
    u in U avoiding s is U + {v}; lambda(10, 1) = 2 and the graph is
    2-edge-connected with all ordinary vertices mutually 3-connected.
    """
    g = Digraph()
    g.add_vertices(10)
    v = g.add_vertex(AUX_OTHER)
    for base in (0, 5):
        for i in range(base, base + 5):
            for j in range(base, base + 5):
                if i != j:
                    g.add_edge(i, j)
    g.add_edge(5, 0)
    g.add_edge(5, v, copies=3)
    g.add_edge(v, 0, copies=2)
    g.add_edge(0, 5, copies=3)
    return g, v, 1


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
