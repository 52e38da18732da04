"""Directed multigraph with ring adjacency, edge-reversal overlays and contraction.

The graph keeps one circular doubly-linked ring of outgoing edges and one of
entering edges per vertex, so single edges can be unlinked and whole rings can
be merged in constant time.  Contraction comes in two flavours: an eager
rebuild that returns a fresh graph, and a lazy in-place form backed by a
disjoint-set structure where edge endpoints are resolved through find().
"""

from __future__ import annotations

from dataclasses import dataclass

ORDINARY = 0
AUX_KOUT = 1
AUX_KIN = 2
AUX_OTHER = 3

KIND_NAMES = {ORDINARY: "ordinary", AUX_KOUT: "aux-kout",
              AUX_KIN: "aux-kin", AUX_OTHER: "aux"}

# Multiplicities are expanded to parallel edges, so cap the expanded size.
MAX_EDGES = 10_000_000


class GraphError(ValueError):
    pass


class DisjointSets:
    """Union-find where unite(u, v) makes u the representative of the class.

    Internally uses union by rank with path compression; the caller-visible
    representative is kept as a label on the tree root, so rank balancing does
    not disturb the "u wins" rule.
    """

    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.label = list(range(n))

    def grow(self, n):
        start = len(self.parent)
        for i in range(start, n):
            self.parent.append(i)
            self.rank.append(0)
            self.label.append(i)

    def _root(self, v):
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def find(self, v):
        return self.label[self._root(v)]

    def unite(self, u, v):
        ru, rv = self._root(u), self._root(v)
        if ru == rv:
            self.label[ru] = u
            return
        if self.rank[ru] < self.rank[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        if self.rank[ru] == self.rank[rv]:
            self.rank[ru] += 1
        self.label[ru] = u


@dataclass(frozen=True)
class CutSet:
    """A vertex subset with its outgoing-edge count and volume cached.

    vol counts edges whose tail lies in the set; out counts edges leaving it.
    The caches are advisory: they can always be recomputed from the graph.
    """

    members: frozenset
    out_count: int
    vol: int

    @classmethod
    def compute(cls, g, members, overlay=None):
        memb = frozenset(members)
        out, vol = out_and_vol(g, memb, overlay)
        return cls(memb, out, vol)

    def __contains__(self, v):
        return v in self.members

    def __len__(self):
        return len(self.members)

    def sorted(self):
        return sorted(self.members)


class Digraph:
    def __init__(self):
        self.kind = []
        self.v_alive = []
        self.e_tail = []
        self.e_head = []
        self.e_alive = []
        # circular doubly-linked rings, one out-ring and one in-ring per vertex
        self.first_out = []
        self.first_in = []
        self.nxt_out = []
        self.prv_out = []
        self.nxt_in = []
        self.prv_in = []
        self.out_deg = []
        self.in_deg = []
        self.n_live = 0
        self.m_live = 0
        self.dsu = None
        self.contraction_log = []
        self._version = 0
        self._csr_cache = None

    # -- construction ------------------------------------------------------

    def add_vertex(self, kind=ORDINARY):
        v = len(self.kind)
        self.kind.append(kind)
        self.v_alive.append(True)
        self.first_out.append(-1)
        self.first_in.append(-1)
        self.out_deg.append(0)
        self.in_deg.append(0)
        self.n_live += 1
        if self.dsu is not None:
            self.dsu.grow(v + 1)
        self._version += 1
        return v

    def add_vertices(self, count, kind=ORDINARY):
        return [self.add_vertex(kind) for _ in range(count)]

    def add_edge(self, tail, head, copies=1):
        if copies < 1:
            raise GraphError("copies must be >= 1")
        if not (self.is_live(tail) and self.is_live(head)):
            raise GraphError(f"dead endpoint in edge ({tail},{head})")
        if tail == head:
            raise GraphError(f"self-loop ({tail},{head}) rejected")
        if len(self.e_tail) + copies > MAX_EDGES:
            raise GraphError("expanded edge count exceeds limit")
        self._version += 1
        out = []
        for _ in range(copies):
            e = len(self.e_tail)
            self.e_tail.append(tail)
            self.e_head.append(head)
            self.e_alive.append(True)
            self.nxt_out.append(-1)
            self.prv_out.append(-1)
            self.nxt_in.append(-1)
            self.prv_in.append(-1)
            self._ring_append(e, tail, self.first_out, self.nxt_out, self.prv_out)
            self._ring_append(e, head, self.first_in, self.nxt_in, self.prv_in)
            self.out_deg[tail] += 1
            self.in_deg[head] += 1
            self.m_live += 1
            out.append(e)
        return out

    def _ring_append(self, e, owner, first, nxt, prv):
        f = first[owner]
        if f < 0:
            first[owner] = e
            nxt[e] = e
            prv[e] = e
        else:
            last = prv[f]
            nxt[last] = e
            prv[e] = last
            nxt[e] = f
            prv[f] = e

    def _ring_unlink(self, e, owner, first, nxt, prv):
        if nxt[e] == e:
            first[owner] = -1
        else:
            nxt[prv[e]] = nxt[e]
            prv[nxt[e]] = prv[e]
            if first[owner] == e:
                first[owner] = nxt[e]
        nxt[e] = -1
        prv[e] = -1

    def delete_edge(self, e):
        if not (0 <= e < len(self.e_tail)) or not self.e_alive[e]:
            raise GraphError(f"edge {e} is not live")
        self._version += 1
        t_owner = self._ring_owner_out(e)
        h_owner = self._ring_owner_in(e)
        self._ring_unlink(e, t_owner, self.first_out, self.nxt_out, self.prv_out)
        self._ring_unlink(e, h_owner, self.first_in, self.nxt_in, self.prv_in)
        self.out_deg[t_owner] -= 1
        self.in_deg[h_owner] -= 1
        self.e_alive[e] = False
        self.m_live -= 1

    def _ring_owner_out(self, e):
        return self.tail(e)

    def _ring_owner_in(self, e):
        return self.head(e)

    def merge_in_rings(self, src, dst):
        """Append src's entering-edge ring onto dst's; O(1)."""
        self._merge(src, dst, self.first_in, self.nxt_in, self.prv_in)
        self.in_deg[dst] += self.in_deg[src]
        self.in_deg[src] = 0
        self._version += 1

    def merge_out_rings(self, src, dst):
        self._merge(src, dst, self.first_out, self.nxt_out, self.prv_out)
        self.out_deg[dst] += self.out_deg[src]
        self.out_deg[src] = 0
        self._version += 1

    def _merge(self, src, dst, first, nxt, prv):
        fs = first[src]
        if fs < 0:
            return
        fd = first[dst]
        first[src] = -1
        if fd < 0:
            first[dst] = fs
            return
        # splice src's cycle after dst's last element
        ld = prv[fd]
        ls = prv[fs]
        nxt[ld] = fs
        prv[fs] = ld
        nxt[ls] = fd
        prv[fd] = ls

    # -- queries -----------------------------------------------------------

    def is_live(self, v):
        return 0 <= v < len(self.kind) and self.v_alive[v]

    def resolve(self, v):
        return v if self.dsu is None else self.dsu.find(v)

    def tail(self, e):
        t = self.e_tail[e]
        return t if self.dsu is None else self.dsu.find(t)

    def head(self, e):
        h = self.e_head[e]
        return h if self.dsu is None else self.dsu.find(h)

    def ends(self, e):
        return self.tail(e), self.head(e)

    def out_edges(self, v):
        e = self.first_out[v]
        if e < 0:
            return
        first = e
        nxt = self.nxt_out
        while True:
            yield e
            e = nxt[e]
            if e == first:
                return

    def in_edges(self, v):
        e = self.first_in[v]
        if e < 0:
            return
        first = e
        nxt = self.nxt_in
        while True:
            yield e
            e = nxt[e]
            if e == first:
                return

    def succ(self, v):
        for e in self.out_edges(v):
            yield e, self.head(e)

    def pred(self, v):
        for e in self.in_edges(v):
            yield e, self.tail(e)

    def vertices(self):
        return [v for v in range(len(self.kind)) if self.v_alive[v]]

    def ordinary_vertices(self):
        return [v for v in range(len(self.kind))
                if self.v_alive[v] and self.kind[v] == ORDINARY]

    def edges(self):
        return [e for e in range(len(self.e_tail)) if self.e_alive[e]]

    def n_slots(self):
        return len(self.kind)

    def m_slots(self):
        return len(self.e_tail)

    # -- whole-graph operations --------------------------------------------

    def copy(self):
        g = Digraph()
        g.kind = self.kind[:]
        g.v_alive = self.v_alive[:]
        g.e_tail = self.e_tail[:]
        g.e_head = self.e_head[:]
        g.e_alive = self.e_alive[:]
        g.first_out = self.first_out[:]
        g.first_in = self.first_in[:]
        g.nxt_out = self.nxt_out[:]
        g.prv_out = self.prv_out[:]
        g.nxt_in = self.nxt_in[:]
        g.prv_in = self.prv_in[:]
        g.out_deg = self.out_deg[:]
        g.in_deg = self.in_deg[:]
        g.n_live = self.n_live
        g.m_live = self.m_live
        if self.dsu is not None:
            d = DisjointSets(0)
            d.parent = self.dsu.parent[:]
            d.rank = self.dsu.rank[:]
            d.label = self.dsu.label[:]
            g.dsu = d
        g.contraction_log = list(self.contraction_log)
        return g

    def reversed(self):
        """A new graph with every edge flipped; k-out/k-in vertex kinds swap."""
        if self.dsu is not None:
            raise GraphError("reverse a materialized graph, not a lazy one")
        swap = {AUX_KOUT: AUX_KIN, AUX_KIN: AUX_KOUT}
        g = Digraph()
        for v in range(len(self.kind)):
            g.add_vertex(swap.get(self.kind[v], self.kind[v]))
            g.v_alive[v] = self.v_alive[v]
            if not self.v_alive[v]:
                g.n_live -= 1
        for v in range(len(self.kind)):
            if self.v_alive[v]:
                for e in self.out_edges(v):
                    g.add_edge(self.e_head[e], v)
        return g

    def enable_lazy(self):
        if self.dsu is None:
            self.dsu = DisjointSets(len(self.kind))
        return self.dsu

    def contract_lazy(self, members, rep, kind=AUX_KOUT):
        """Contract a vertex set in place: DSU indirection plus ring surgery.

        Runs in O(vol(members)) ring operations.  rep must belong to members;
        it survives, relabelled with the given kind, and owns the merged rings.
        """
        memb = set(members)
        if rep not in memb:
            raise GraphError("representative must be a member")
        for u in memb:
            if not self.is_live(u):
                raise GraphError(f"vertex {u} is not live")
        self.enable_lazy()
        self._version += 1
        internal = []
        for u in memb:
            for e in self.out_edges(u):
                if self.head(e) in memb:
                    internal.append(e)
        for e in internal:
            self.delete_edge(e)
        for u in memb:
            if u != rep:
                self.dsu.unite(rep, u)
        for u in memb:
            if u != rep:
                self.merge_in_rings(u, rep)
                self.merge_out_rings(u, rep)
                self.v_alive[u] = False
                self.n_live -= 1
        self.kind[rep] = kind
        self.contraction_log.append((rep, frozenset(memb)))
        return rep

    def check(self):
        """Assert ring/counter consistency; used by tests after mutations."""
        n_seen = sum(1 for v in range(len(self.kind)) if self.v_alive[v])
        assert n_seen == self.n_live, "vertex counter drift"
        m_out = 0
        m_in = 0
        for v in range(len(self.kind)):
            deg = 0
            for e in self.out_edges(v):
                assert self.e_alive[e], "dead edge in out-ring"
                assert self.resolve(self.e_tail[e]) == self.resolve(v)
                deg += 1
            assert deg == self.out_deg[v], f"out_deg drift at {v}"
            m_out += deg
            deg = 0
            for e in self.in_edges(v):
                assert self.e_alive[e], "dead edge in in-ring"
                assert self.resolve(self.e_head[e]) == self.resolve(v)
                deg += 1
            assert deg == self.in_deg[v], f"in_deg drift at {v}"
            m_in += deg
        m_alive = sum(1 for e in range(len(self.e_tail)) if self.e_alive[e])
        assert m_out == m_in == m_alive == self.m_live, "edge counter drift"

    # -- flat adjacency snapshot for hot traversals -------------------------

    def csr(self):
        """Flat (offsets, edge-ids, endpoints) arrays in ring order.

        Only available for plain graphs; lazily cached until the next mutation.
        """
        if self.dsu is not None:
            raise GraphError("no flat snapshot for lazily contracted graphs")
        cached = self._csr_cache
        if cached is not None and cached[0] == self._version:
            return cached[1]
        n = len(self.kind)
        op = [0] * (n + 1)
        ip = [0] * (n + 1)
        oe, oh, ie, it = [], [], [], []
        for v in range(n):
            if self.v_alive[v]:
                for e in self.out_edges(v):
                    oe.append(e)
                    oh.append(self.e_head[e])
            op[v + 1] = len(oe)
        for v in range(n):
            if self.v_alive[v]:
                for e in self.in_edges(v):
                    ie.append(e)
                    it.append(self.e_tail[e])
            ip[v + 1] = len(ie)
        snap = (op, oe, oh, ip, ie, it)
        self._csr_cache = (self._version, snap)
        return snap


class ReversalOverlay:
    """Journaled per-edge direction flips over a frozen graph.

    Traversal through the overlay sees edge (x, y) as (y, x) when flipped.
    The base graph is never touched; undo_all / rewind restore the overlay to
    an earlier journal mark exactly.
    """

    def __init__(self, g):
        self.g = g
        self.flip = bytearray(len(g.e_tail))
        self.journal = []
        self.dirty = {}

    def mark(self):
        return len(self.journal)

    def _toggle(self, e):
        f = self.flip[e] ^ 1
        self.flip[e] = f
        d = 1 if f else -1
        dirty = self.dirty
        # key by resolved endpoints: traversal asks about representatives
        for v in (self.g.tail(e), self.g.head(e)):
            c = dirty.get(v, 0) + d
            if c:
                dirty[v] = c
            else:
                del dirty[v]

    def tail(self, e):
        if self.flip[e]:
            return self.g.head(e)
        return self.g.tail(e)

    def head(self, e):
        if self.flip[e]:
            return self.g.tail(e)
        return self.g.head(e)

    def reverse_path(self, path):
        """Flip every edge of a directed walk (contiguous, edge-distinct)."""
        if len(set(path)) != len(path):
            raise GraphError("path repeats an edge")
        cur = None
        for e in path:
            if not self.g.e_alive[e]:
                raise GraphError(f"edge {e} is not live")
            if cur is not None and self.tail(e) != cur:
                raise GraphError("edges do not form a contiguous walk")
            cur = self.head(e)
        for e in path:
            self._toggle(e)
            self.journal.append(e)

    def rewind(self, mark):
        journal = self.journal
        while len(journal) > mark:
            self._toggle(journal.pop())

    def undo_all(self):
        self.rewind(0)

    def succ(self, v):
        g = self.g
        if v not in self.dirty:
            yield from g.succ(v)
            return
        flip = self.flip
        for e in g.out_edges(v):
            if not flip[e]:
                yield e, g.head(e)
        for e in g.in_edges(v):
            if flip[e]:
                yield e, g.tail(e)

    def pred(self, v):
        g = self.g
        if v not in self.dirty:
            yield from g.pred(v)
            return
        flip = self.flip
        for e in g.in_edges(v):
            if not flip[e]:
                yield e, g.tail(e)
        for e in g.out_edges(v):
            if flip[e]:
                yield e, g.head(e)


# -- set measures -----------------------------------------------------------

def out_and_vol(g, members, overlay=None):
    memb = members if isinstance(members, (set, frozenset)) else set(members)
    out = 0
    vol = 0
    src = overlay.succ if overlay is not None else g.succ
    for u in memb:
        for _e, y in src(u):
            vol += 1
            if y not in memb:
                out += 1
    return out, vol


def out_of(g, members, overlay=None):
    return out_and_vol(g, members, overlay)[0]


def vol_of(g, members, overlay=None):
    return out_and_vol(g, members, overlay)[1]


# -- contraction and splitting ----------------------------------------------

def contract(g, members, kind=None):
    """Eagerly contract a vertex set into one new vertex of the given kind.

    Returns (new graph, contracted vertex).  Vertex ids of survivors are
    preserved, so partitions computed on the result pull back by identity.
    """
    memb = set(members)
    if not memb:
        raise GraphError("cannot contract an empty set")
    live = g.vertices()
    for u in memb:
        if not g.is_live(u):
            raise GraphError(f"vertex {u} is not live")
    if len(memb) == len(live):
        raise GraphError("cannot contract the whole vertex set")
    if kind is None:
        kind = AUX_KOUT if out_of(g, memb) >= 1 else AUX_OTHER
    h = Digraph()
    for v in range(len(g.kind)):
        h.add_vertex(g.kind[v])
        if not g.v_alive[v] or v in memb:
            h.v_alive[v] = False
            h.n_live -= 1
    v_s = h.add_vertex(kind)
    for v in range(len(g.kind)):
        if not g.v_alive[v]:
            continue
        for e in g.out_edges(v):
            t, hd = g.ends(e)
            t2 = v_s if t in memb else t
            h2 = v_s if hd in memb else hd
            if t2 == h2:
                continue
            h.add_edge(t2, h2)
    return h, v_s


def split_outgoing(g, members):
    """Put a fresh intermediate vertex on every outgoing edge of the set."""
    memb = set(members)
    h = g.copy()
    cut = [e for u in memb for e in g.out_edges(u) if g.head(e) not in memb]
    new_vertices = []
    for e in cut:
        t, hd = h.ends(e)
        h.delete_edge(e)
        w = h.add_vertex(AUX_OTHER)
        h.add_edge(t, w)
        h.add_edge(w, hd)
        new_vertices.append(w)
    return h, new_vertices


@dataclass
class ReducedComplement:
    """Standalone graph for a k-out set with the complement contracted."""
    graph: Digraph
    vmap: dict
    vbar: int
    touches: int


def contract_complement_reduced(g, members, k):
    """Build the side graph of a k-out set, contracting everything else.

    The complement becomes a single k-in vertex receiving the k cut edges;
    for each member with r entering edges from outside, min(k, r) parallel
    edges from the contracted vertex are kept.  Touches O(vol) edges.
    """
    memb = set(members)
    out, _vol = out_and_vol(g, memb)
    if out != k:
        raise GraphError(f"expected a {k}-out set, found out={out}")
    order = sorted(memb)
    h = Digraph()
    vmap = {}
    for u in order:
        vmap[u] = h.add_vertex(g.kind[u])
    vbar = h.add_vertex(AUX_KIN)
    touches = 0
    for u in order:
        for e in g.out_edges(u):
            touches += 1
            hd = g.head(e)
            h.add_edge(vmap[u], vmap.get(hd, vbar))
    for u in order:
        rho = 0
        for e in g.in_edges(u):
            touches += 1
            if g.tail(e) not in memb:
                rho += 1
                if rho == k:
                    break
        if rho:
            h.add_edge(vbar, vmap[u], copies=min(k, rho))
    return ReducedComplement(h, vmap, vbar, touches)


def materialize(g):
    """Compact plain copy of a (possibly lazily contracted) graph.

    Returns (graph, mapping) where mapping sends live ids of g to new ids.
    """
    h = Digraph()
    vmap = {}
    for v in sorted(g.vertices()):
        vmap[v] = h.add_vertex(g.kind[v])
    for v in sorted(g.vertices()):
        for e in g.out_edges(v):
            h.add_edge(vmap[v], vmap[g.head(e)])
    return h, vmap


def induced(g, members):
    """Subgraph induced by a vertex set, compacted; returns (graph, mapping)."""
    memb = set(members)
    h = Digraph()
    vmap = {}
    for v in sorted(memb):
        if not g.is_live(v):
            raise GraphError(f"vertex {v} is not live")
        vmap[v] = h.add_vertex(g.kind[v])
    for v in sorted(memb):
        for e in g.out_edges(v):
            hd = g.head(e)
            if hd in memb:
                h.add_edge(vmap[v], vmap[hd])
    return h, vmap
