"""Input validation helpers for the estimator layer."""

from __future__ import annotations

from .digraph import Digraph, GraphError, ORDINARY, AUX_OTHER


class NotFittedError(ValueError, AttributeError):
    """Estimator used before fit(); mirrors the scikit-learn exception."""


def check_k(k):
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    return k


def check_delta(delta):
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta!r}")
    return delta


def check_mode(mode, allowed=("det", "rand", "exact")):
    if mode not in allowed:
        raise ValueError(f"mode must be one of {allowed}, got {mode!r}")
    return mode


def as_digraph(X, ordinary=None):
    """Coerce common edge-list shapes into a Digraph.

    Accepts a Digraph (passed through), an (n, edges) pair, or a bare
    iterable of (u, v) / (u, v, multiplicity) tuples over 0-based ids.
    `ordinary` optionally restricts which vertices carry component claims.
    """
    if isinstance(X, Digraph):
        g = X
    else:
        if isinstance(X, tuple) and len(X) == 2 and isinstance(X[0], int):
            n, edges = X
        else:
            edges = list(X)
            n = 0
            for row in edges:
                n = max(n, row[0] + 1, row[1] + 1)
        g = Digraph()
        g.add_vertices(n)
        for row in edges:
            if len(row) == 2:
                u, v = row
                mult = 1
            else:
                u, v, mult = row
            g.add_edge(int(u), int(v), copies=int(mult))
    if ordinary is not None:
        marked = set(ordinary)
        for v in g.vertices():
            g.kind[v] = ORDINARY if v in marked else AUX_OTHER
    if g.n_live == 0:
        raise GraphError("empty graph")
    return g
