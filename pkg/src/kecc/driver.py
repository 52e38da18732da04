"""Drivers: the single-graph partition algorithm (small-set pass plus edge
sampling with per-sample good partitions, run forward and reversed) and the
end-to-end pipeline that decomposes first and then partitions every piece.
"""

from __future__ import annotations

import math

from .digraph import CutSet, GraphError
from .decompose import decompose_kecc
from .flow import flow_state, lambda_bounded, overlay_reach
from .local_search import EMPTY, MSetResult, amplified_mset, local_search_mset
from .partitions import (Partition, good_partition_deficient,
                         good_partition_full, good_partition_low,
                         partition_from_msets, refine, refine_many)

MODES = ("det", "rand", "exact")


def sample_count(n_ord, delta, mode):
    """Number of edges drawn by the sampling pass: ceil(sqrt(n) log2(2n/d))
    with deterministic searches, ceil(sqrt(n) log2(4n/d)) with randomized."""
    base = 4.0 if mode == "rand" else 2.0
    return math.ceil(math.sqrt(n_ord) * math.log2(base * n_ord / delta))


def search_repetitions(n_ord, delta):
    """Randomized-search repetitions per vertex in the small-set pass."""
    return max(1, math.ceil(math.log2(4 * n_ord / delta)))


def _small_set_result(h, v, s, k, mode, search_delta, fail_prob, rng,
                      lam_cache):
    """Small-pass search for the minimal (k+1)-out set of one vertex.

    All modes first classify lambda(v, s) with cap k+2; when it is at least
    k+2 no (k+1)-out separator exists and Empty is certain, so the search is
    skipped.  Exact mode reads the answer off the residual instead of
    searching: at lambda exactly k+1 the residual reach of v is the set.
    """
    if mode == "exact":
        fs = flow_state(h, v, s, cap=k + 2)
        lam_cache[v] = fs.value
        if fs.value != k + 1:
            return EMPTY
        members = overlay_reach(fs.overlay, v)
        return MSetResult.of(CutSet.compute(h, members))
    lam = lambda_bounded(h, v, s, k + 2)
    lam_cache[v] = lam
    if lam >= k + 2:
        return EMPTY
    if mode == "det":
        return local_search_mset(h, v, s, k + 1, search_delta)
    return amplified_mset(h, v, s, k + 1, search_delta, fail_prob, rng)


def _one_direction(h, s, k, delta, mode, rng, low, stats):
    ordinary = h.ordinary_vertices()
    n_ord = len(ordinary)
    m = h.m_live
    universe = tuple(sorted(h.vertices()))
    search_delta = max(1, math.ceil(m / math.sqrt(n_ord)))
    if mode == "exact":
        search_delta = m
    fail_prob = delta / (4 * n_ord)  # per-vertex budget for amplification
    lam_cache = {}
    results = {}
    for v in ordinary:
        if v == s:
            continue
        results[v] = _small_set_result(h, v, s, k, mode, search_delta,
                                       fail_prob, rng, lam_cache)
    parts = [partition_from_msets(results, universe, ordinary)]
    if mode != "exact" and m > 0:
        draws = sample_count(n_ord, delta, mode)
        if stats is not None:
            stats.setdefault("samples", []).append(
                {"n_ord": n_ord, "delta": delta, "mode": mode, "draws": draws})
        live_edges = h.edges()
        seen = set()
        for _ in range(draws):
            e = live_edges[rng.randrange(len(live_edges))]
            v = h.tail(e)
            if v == s or v in seen:
                continue
            seen.add(v)
            lam = lam_cache.get(v)
            if lam is None:
                lam = lambda_bounded(h, v, s, k + 2)
            if lam == k + 1:
                parts.append(good_partition_full(h, v, s, k))
            elif lam == k:
                if low:
                    parts.append(good_partition_low(h, v, s))
                else:
                    parts.append(good_partition_deficient(h, v, s, k))
            elif lam < k:
                if not low:
                    raise GraphError(
                        f"lambda({v},{s})={lam} below k: graph is not "
                        f"{k}-edge-connected")
                parts.append(good_partition_low(h, v, s))
    return refine_many(parts)


def compute_partition_single(h, k, delta, mode="rand", rng=None, s=None,
                             stats=None, low=False):
    """Partition the vertices of one prepared graph so that ordinary
    (k+2)-edge-connected pairs always share a block and other ordinary pairs
    are separated with probability at least 1 - delta.

    The graph's ordinary vertices must be (k+1)-edge-connected.  Runs the
    small-set pass and the sampling pass on the graph and on its reverse,
    and returns the common refinement.  In exact mode the output is
    deterministic and equals the (k+2)-connectivity classes of the ordinary
    vertices.
    """
    if mode not in MODES:
        raise GraphError(f"unknown mode {mode!r}; choose from {MODES}")
    if mode == "rand" and rng is None:
        raise GraphError("rand mode needs an rng")
    if not 0 < delta < 1:
        raise GraphError("delta must be in (0, 1)")
    ordinary = h.ordinary_vertices()
    if not ordinary:
        raise GraphError("graph has no ordinary vertex")
    if s is None:
        s = min(ordinary)
    elif s not in ordinary:
        raise GraphError(f"start vertex {s} is not a live ordinary vertex")
    forward = _one_direction(h, s, k, delta, mode, rng, low, stats)
    hr = h.reversed()
    backward = _one_direction(hr, s, k, delta, mode, rng, low, stats)
    return refine(forward, backward)


def compute_k2ecc(g, k, delta, mode="rand", rng=None, s=None, stats=None):
    """(k+2)-edge-connected components of a k-edge-connected digraph.

    Decomposes with failure budget delta/2, partitions each piece with
    budget delta/(2n), and stitches the per-piece blocks back together:
    vertices from different pieces are never merged.
    """
    if mode not in MODES:
        raise GraphError(f"unknown mode {mode!r}")
    decomp_mode = "rand" if mode == "rand" else "det"
    pieces = decompose_kecc(g, k, delta / 2, decomp_mode, rng, s=s)
    if stats is not None:
        stats["pieces"] = len(pieces)
    n = g.n_live
    piece_delta = delta / (2 * n)
    key = {}
    for i, piece in enumerate(pieces):
        part = compute_partition_single(piece.graph, k, piece_delta, mode,
                                        rng, stats=stats)
        local = piece.local_of()
        for o in piece.ordinary:
            key[o] = (i, part.label[local[o]])
    return Partition.from_key(sorted(g.vertices()), key.__getitem__)


def compute_4ecc_prepared(h, delta, mode="rand", rng=None, s=None, stats=None):
    """4-edge-connected components of the ordinary vertices of a strongly
    connected graph whose ordinary vertices are 3-edge-connected.

    Same driver as the general algorithm with k=2; sampled vertices at
    connectivity below 2 are handled through the latest-mincut construction
    for low connectivities.
    """
    return compute_partition_single(h, 2, delta, mode, rng, s=s, stats=stats,
                                    low=True)
