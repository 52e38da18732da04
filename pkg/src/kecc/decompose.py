"""Decomposition of a k-edge-connected digraph into pieces whose ordinary
vertices are (k+1)-edge-connected, preserving (k+2)-edge-connectivity.

Minimal k-out sets around a fixed root are located by local search with
doubling volume budgets, processed in an order consistent with set
containment, and contracted away: once eagerly into a standalone piece for
the class just handled, once lazily in the evolving graph.  A second phase
repeats the construction on the reverse of every piece.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .digraph import (AUX_KOUT, ORDINARY, CutSet, Digraph, GraphError,
                      contract_complement_reduced, materialize, vol_of)
from .flow import lambda_bounded, minimal_mincut_side
from .local_search import local_search_mset, randomized_local_search_mset


class DecompositionError(RuntimeError):
    """A local search missed a set it should have found; the decomposition
    would be wrong, so the run is aborted instead."""


@dataclass
class ProperOrder:
    """Classes of vertices sharing one minimal k-out set, ordered so that a
    class with a strictly smaller set comes first; the no-set class is last."""

    classes: list  # (members ascending, CutSet | None), None last

    def non_bottom(self):
        return [(m, c) for (m, c) in self.classes if c is not None]

    def bottom_members(self):
        for members, cut in self.classes:
            if cut is None:
                return members
        return []


def proper_order(g, s, k, ordinary=None, debug=False):
    """Group vertices by their minimal k-out set avoiding s, in an order
    consistent with containment of those sets.

    Sets are found by bounded max-flow plus residual reachability.  Equal
    cardinality rules out strict containment, so ordering by (size, smallest
    member) is always a valid proper order.
    """
    if ordinary is None:
        ordinary = g.ordinary_vertices()
    by_set = {}
    bottom = []
    for v in sorted(ordinary):
        if v == s:
            bottom.append(v)
            continue
        lam = lambda_bounded(g, v, s, k + 1)
        if lam > k:
            bottom.append(v)
            continue
        if lam < k:
            raise GraphError(
                f"graph is not {k}-edge-connected: lambda({v},{s})={lam}")
        cut = minimal_mincut_side(g, v, s)
        by_set.setdefault(cut.members, []).append(v)
    classes = [(members, CutSet.compute(g, key))
               for key, members in by_set.items()]
    classes.sort(key=lambda mc: (len(mc[1].members), min(mc[1].members)))
    if debug:
        for i, (_m1, c1) in enumerate(classes):
            for _m2, c2 in classes[i + 1:]:
                assert not c2.members < c1.members, "order violates containment"
    classes.append((bottom, None))
    return ProperOrder(classes)


@dataclass
class DecompPiece:
    """One output graph: its vertices, which of them are ordinary, and where
    they came from."""

    graph: Digraph
    orig: list  # per-vertex original id, or None for auxiliary vertices
    ordinary: list = field(default_factory=list)  # original ids
    provenance: tuple = (0, 0)

    def __post_init__(self):
        if not self.ordinary:
            self.ordinary = [o for v, o in enumerate(self.orig)
                             if o is not None
                             and self.graph.kind[v] == ORDINARY]

    def local_of(self):
        return {o: v for v, o in enumerate(self.orig) if o is not None}


def _find_min_out_set(gev, v, s, k, m0, mode, reps, rng):
    """Locate the minimal k-out set of v avoiding s in the evolving graph,
    with doubling volume budgets; raise if it is missed or found too late."""
    delta = 1
    while True:
        found = None
        if mode == "det":
            res = local_search_mset(gev, v, s, k, delta)
            if res.found:
                found = res.cut.members
        else:
            for _ in range(reps):
                res = randomized_local_search_mset(gev, v, s, k, delta, rng)
                if res.found:
                    found = res.cut.members
                    break
        if found is not None:
            vol = vol_of(gev, found)
            if delta >= 2 * vol:
                raise DecompositionError(
                    f"set of volume {vol} only surfaced at budget {delta}")
            return found
        if delta >= 2 * m0:
            raise DecompositionError(
                f"no {k}-out set for vertex {v} at any budget up to {delta}")
        delta *= 2


def _phase(g, s, k, m0, mode, reps, rng, check=False):
    """One phase: process classes in proper order on an evolving copy of g.

    Returns (pieces, remainder) where each piece is (graph, vmap, vbar,
    class-members) with vmap sending evolving-graph ids into the piece, and
    remainder is the materialized leftover graph containing s.
    """
    order = proper_order(g, s, k)
    gev = g.copy()
    gev.enable_lazy()
    out = []
    for members, cut in order.non_bottom():
        v = members[0]
        found = _find_min_out_set(gev, v, s, k, m0, mode, reps, rng)
        if check:
            ordinary_found = {u for u in found if gev.kind[u] == ORDINARY}
            assert ordinary_found == set(members), \
                "found set's ordinary vertices differ from the class"
        aux = contract_complement_reduced(gev, found, k)
        out.append((aux.graph, aux.vmap, aux.vbar, members))
        rep = min(found)
        gev.contract_lazy(found, rep, kind=AUX_KOUT)
    remainder, rmap = materialize(gev)
    return out, (remainder, rmap, order.bottom_members())


def decompose_kecc(g, k, delta, mode="det", rng=None, s=None, check=False):
    """Split a k-edge-connected digraph into pieces whose ordinary vertices
    are exactly the (k+1)-edge-connected components.

    mode "det" uses the deterministic local search; "rand" repeats the
    randomized one ceil(log2(2n/delta)) times per budget probe.  A missed
    set aborts with DecompositionError rather than returning a wrong answer.
    """
    if mode not in ("det", "rand"):
        raise GraphError(f"unknown mode {mode!r}")
    if mode == "rand" and rng is None:
        raise GraphError("rand mode needs an rng")
    if not 0 < delta < 1:
        raise GraphError("delta must be in (0, 1)")
    n0 = g.n_live
    m0 = max(1, g.m_live)
    reps = max(1, math.ceil(math.log2(2 * n0 / delta)))
    live = g.vertices()
    if s is None:
        s = min(live)

    base, base_map = materialize(g)
    inv = {new: old for old, new in base_map.items()}
    s1 = base_map[s]

    phase1, (rem, rmap, _bottom) = _phase(base, s1, k, m0, mode, reps, rng,
                                          check)
    stage = []
    for idx, (h, vmap, vbar, _members) in enumerate(phase1):
        orig = [None] * h.n_slots()
        for old, new in vmap.items():
            orig[new] = inv.get(old)
        stage.append((h, orig, vbar, idx))
    rem_orig = [None] * rem.n_slots()
    for old, new in rmap.items():
        rem_orig[new] = inv.get(old)
    stage.append((rem, rem_orig, rmap[s1], len(phase1)))

    pieces = []
    for h, orig, start, idx in stage:
        hr = h.reversed()
        m1 = max(1, hr.m_live)
        sub, (sub_rem, sub_rmap, _b) = _phase(hr, start, k, m1, mode, reps,
                                              rng, check)
        parts = []
        for hh, vmap, _vbar, _members in sub:
            sub_orig = [None] * hh.n_slots()
            for old, new in vmap.items():
                sub_orig[new] = orig[old]
            parts.append((hh, sub_orig))
        rem2_orig = [None] * sub_rem.n_slots()
        for old, new in sub_rmap.items():
            rem2_orig[new] = orig[old]
        parts.append((sub_rem, rem2_orig))
        for jdx, (hh, sub_orig) in enumerate(parts):
            piece = DecompPiece(hh.reversed(), sub_orig, provenance=(idx, jdx))
            if piece.ordinary:
                pieces.append(piece)
    return pieces


@dataclass
class DecompReport:
    ok: bool
    failures: list = field(default_factory=list)
    total_vertices: int = 0
    total_edges: int = 0

    def fail(self, bullet, detail):
        self.ok = False
        self.failures.append(f"{bullet}: {detail}")


def verify_decomposition(g, pieces, k):
    """Check every contract of the decomposition against the oracle:
    connectivity of each piece, (k+1)-connectivity of its ordinary vertices,
    unique ordinary placement, (k+2)-connectivity preservation, and the
    empirical size gates sum(V) <= 5n and sum(E) <= 4(m + kn)."""
    from . import oracle
    report = DecompReport(True)
    n = g.n_live
    m = g.m_live
    report.total_vertices = sum(p.graph.n_live for p in pieces)
    report.total_edges = sum(p.graph.m_live for p in pieces)
    if report.total_vertices > 5 * n:
        report.fail("size", f"{report.total_vertices} vertices > 5n = {5 * n}")
    if report.total_edges > 4 * (m + k * n):
        report.fail("size", f"{report.total_edges} edges > 4(m+kn)")

    placed = {}
    for i, p in enumerate(pieces):
        for o in p.ordinary:
            placed.setdefault(o, []).append(i)
    for v in g.vertices():
        spots = placed.get(v, [])
        if len(spots) != 1:
            report.fail("unique-ordinary", f"vertex {v} ordinary in {spots}")

    for i, p in enumerate(pieces):
        h = p.graph
        verts = h.vertices()
        for u in verts:
            for v in verts:
                if u != v and oracle.lambda_oracle(h, u, v, k) < k:
                    report.fail("piece-connectivity",
                                f"piece {i} is not {k}-edge-connected")
                    break
            else:
                continue
            break
        local = p.local_of()
        missing = [o for o in p.ordinary if o not in local]
        for o in missing:
            report.fail("ordinary-membership",
                        f"piece {i} claims ordinary vertex {o} it lacks")
        present = [o for o in p.ordinary if o in local]
        ords = [local[o] for o in present]
        for a in range(len(ords)):
            for b in range(a + 1, len(ords)):
                if not oracle.mutually_connected(h, ords[a], ords[b], k + 1):
                    report.fail("ordinary-connectivity",
                                f"piece {i}: ordinary pair "
                                f"({present[a]},{present[b]}) "
                                f"not {k + 1}-edge-connected")

    verts = sorted(g.vertices())
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            u, v = verts[a], verts[b]
            whole = oracle.mutually_connected(g, u, v, k + 2)
            inside = False
            spot_u = placed.get(u, [])
            spot_v = placed.get(v, [])
            if spot_u and spot_v and spot_u[0] == spot_v[0]:
                p = pieces[spot_u[0]]
                local = p.local_of()
                if u in local and v in local:
                    inside = oracle.mutually_connected(p.graph, local[u],
                                                       local[v], k + 2)
            if whole != inside:
                report.fail("k2-preservation",
                            f"pair ({u},{v}): connected in G={whole}, "
                            f"in pieces={inside}")
    return report
