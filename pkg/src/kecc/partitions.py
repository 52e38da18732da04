"""Vertex partitions: refinement algebra and the per-sample partition
constructions used to separate vertices across large minimal out-sets.
"""

from __future__ import annotations

from .digraph import AUX_KOUT, GraphError, contract


class Partition:
    """A partition of a fixed vertex universe.

    Block ids are dense and canonical: blocks are numbered by their smallest
    member, so equal partitions compare equal and outputs are byte-stable.
    """

    __slots__ = ("universe", "label", "n_blocks")

    def __init__(self, universe, label, n_blocks):
        self.universe = universe
        self.label = label
        self.n_blocks = n_blocks

    @classmethod
    def from_key(cls, universe, key_of):
        """Group universe members by an arbitrary key function."""
        universe = tuple(sorted(universe))
        remap = {}
        label = {}
        for v in universe:
            k = key_of(v)
            if k not in remap:
                remap[k] = len(remap)
            label[v] = remap[k]
        return cls(universe, label, len(remap))

    @classmethod
    def from_blocks(cls, universe, blocks):
        owner = {}
        for i, block in enumerate(blocks):
            for v in block:
                if v in owner:
                    raise ValueError(f"vertex {v} in two blocks")
                owner[v] = i
        universe = tuple(sorted(universe))
        if set(owner) != set(universe):
            raise ValueError("blocks do not cover the universe")
        return cls.from_key(universe, owner.__getitem__)

    @classmethod
    def singletons(cls, universe):
        return cls.from_key(universe, lambda v: v)

    @classmethod
    def one_block(cls, universe):
        return cls.from_key(universe, lambda v: 0)

    def same_block(self, u, v):
        return self.label[u] == self.label[v]

    def blocks(self):
        out = [[] for _ in range(self.n_blocks)]
        for v in self.universe:
            out[self.label[v]].append(v)
        return out

    def restrict(self, subset):
        subset = tuple(sorted(subset))
        return Partition.from_key(subset, self.label.__getitem__)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.universe == other.universe and self.label == other.label

    def __hash__(self):
        return hash((self.universe, tuple(self.label[v] for v in self.universe)))

    def __repr__(self):
        return f"Partition({self.blocks()})"


def refine(p, q):
    """Common refinement: blocks are the nonempty pairwise intersections."""
    if p.universe != q.universe:
        raise ValueError("partitions over different universes")
    pl, ql = p.label, q.label
    return Partition.from_key(p.universe, lambda v: (pl[v], ql[v]))


def refine_many(parts):
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to refine")
    acc = parts[0]
    for p in parts[1:]:
        acc = refine(acc, p)
    return acc


def pull_back(partition, mapping, universe):
    """Partition of `universe` induced through a quotient map into the
    partitioned graph: each vertex takes the block of its image."""
    label = partition.label
    return Partition.from_key(universe, lambda v: label[mapping[v]])


def partition_from_msets(results, universe, ordinary):
    """Group ordinary vertices by their (found) minimal-set members.

    Vertices whose search came back empty share one block with all auxiliary
    vertices of the universe.
    """
    ordinary = set(ordinary)

    def key(v):
        if v not in ordinary:
            return ()
        res = results.get(v)
        if res is None or not res.found:
            return ()
        return tuple(res.cut.sorted())

    return Partition.from_key(universe, key)


# -- component partitions by repeated bounded flow ----------------------------

def ecc_naive(g, c):
    """Classes of mutual bounded connectivity >= c via pairwise flows.

    Stands in for the dedicated linear-time 2/3-edge-connected-component
    algorithms; quadratic in the worst case but correctness-equivalent, since
    mutual c-connectivity is an equivalence relation.
    """
    from .flow import lambda_bounded
    if c < 1:
        raise ValueError("c must be >= 1")
    verts = sorted(g.vertices())
    blocks = []
    unassigned = list(verts)
    while unassigned:
        pivot = unassigned[0]
        block = [pivot]
        rest = []
        for v in unassigned[1:]:
            if (lambda_bounded(g, pivot, v, c) >= c
                    and lambda_bounded(g, v, pivot, c) >= c):
                block.append(v)
            else:
                rest.append(v)
        blocks.append(block)
        unassigned = rest
    return Partition.from_blocks(verts, blocks)


# -- good partitions ----------------------------------------------------------

def good_partition_full(g, v, s, k):
    """Partition for a sampled vertex at connectivity exactly k+1.

    The strongly connected components of the min-cut DAG representation of
    the (v, s)-max-flow refine no (k+2)-connected pair, and separate every
    ordinary u with v inside its minimal (k+1)-out set from vertices outside.
    """
    from .flow import lambda_bounded, pq_graph
    lam = lambda_bounded(g, v, s, k + 2)
    if lam != k + 1:
        raise GraphError(f"expected lambda(v,s)=k+1={k + 1}, found {lam}")
    return pq_graph(g, v, s).partition()


def _contract_with_head(g, z, x):
    """Contract {z, x} and return (graph, new vertex, pullback mapping)."""
    h, zi = contract(g, {z, x}, kind=AUX_KOUT)
    mapping = {u: (zi if u in (z, x) else u) for u in g.vertices()}
    return h, zi, mapping


def good_partition_deficient(g, v, s, k):
    """Partition for a sampled vertex at connectivity exactly k.

    Contract the latest (v, s)-mincut into z; split on the 2-edge-connected
    components once z's k outgoing edges are removed, and on the full
    construction applied after merging z with each exit point that keeps
    connectivity k+1.
    """
    from .flow import lambda_bounded, latest_mincut
    lam = lambda_bounded(g, v, s, k + 1)
    if lam != k:
        raise GraphError(f"expected lambda(v,s)=k={k}, found {lam}")
    universe = tuple(sorted(g.vertices()))
    latest = latest_mincut(g, v, s)
    gz, z = contract(g, latest.members, kind=AUX_KOUT)
    to_gz = {u: (z if u in latest.members else u) for u in universe}
    cut_edges = list(gz.out_edges(z))
    stripped = gz.copy()
    for e in cut_edges:
        stripped.delete_edge(e)
    parts = [pull_back(ecc_naive(stripped, 2), to_gz, universe)]
    for e in cut_edges:
        x = gz.head(e)
        if x == s:
            continue
        gzi, zi, to_gzi = _contract_with_head(gz, z, x)
        lam_i = lambda_bounded(gzi, zi, s, k + 2)
        if lam_i <= k:
            raise GraphError("latest mincut violated: contracted connectivity "
                             f"dropped to {lam_i}")
        if lam_i == k + 1:
            q = good_partition_full(gzi, zi, s, k)
            comp = {u: to_gzi[to_gz[u]] for u in universe}
            parts.append(pull_back(q, comp, universe))
    return refine_many(parts)


def good_partition_low(g, v, s):
    """Partition for a sampled vertex at connectivity 1 or 2 when computing
    4-edge-connected components of a graph whose ordinary vertices are
    3-edge-connected."""
    from .flow import lambda_bounded, latest_mincut, pq_graph
    lam = lambda_bounded(g, v, s, 3)
    if lam > 2:
        raise GraphError(f"expected lambda(v,s) <= 2, found >= {lam}")
    if lam == 2:
        return good_partition_deficient(g, v, s, 2)
    universe = tuple(sorted(g.vertices()))
    latest = latest_mincut(g, v, s)
    gz, z = contract(g, latest.members, kind=AUX_KOUT)
    to_gz = {u: (z if u in latest.members else u) for u in universe}
    cut_edges = list(gz.out_edges(z))
    stripped = gz.copy()
    for e in cut_edges:
        stripped.delete_edge(e)
    parts = [pull_back(ecc_naive(stripped, 3), to_gz, universe)]
    (e1,) = cut_edges
    x1 = gz.head(e1)
    if x1 != s:
        gzi, zi, to_gzi = _contract_with_head(gz, z, x1)
        lam_i = lambda_bounded(gzi, zi, s, 4)
        if lam_i <= 1:
            raise GraphError("latest mincut violated after contraction")
        comp = {u: to_gzi[to_gz[u]] for u in universe}
        if lam_i == 2:
            q = good_partition_low(gzi, zi, s)
            parts.append(pull_back(q, comp, universe))
        elif lam_i == 3:
            q = pq_graph(gzi, zi, s).partition()
            parts.append(pull_back(q, comp, universe))
    return refine_many(parts)


def _case_k_plus_1(g, z, s, k, universe, to_g, stats):
    """Shared body for the (k+3) extension when the contracted vertex has
    k+1 outgoing edges: 2-edge-connected components without those edges,
    refined with min-cut DAG partitions after each exit -point merge."""
    from .flow import lambda_bounded, pq_graph
    cut_edges = list(g.out_edges(z))
    stripped = g.copy()
    for e in cut_edges:
        stripped.delete_edge(e)
    stats["subgraphs"] += 1
    parts = [pull_back(ecc_naive(stripped, 2), to_g, universe)]
    for e in cut_edges:
        x = g.head(e)
        if x == s:
            continue
        gi, zi, to_gi = _contract_with_head(g, z, x)
        stats["subgraphs"] += 1
        lam_i = lambda_bounded(gi, zi, s, k + 3)
        if lam_i <= k + 1:
            raise GraphError(f"contracted connectivity {lam_i} below k+2")
        if lam_i == k + 2:
            q = pq_graph(gi, zi, s).partition()
            comp = {u: to_gi[to_g[u]] for u in universe}
            parts.append(pull_back(q, comp, universe))
    return parts


def good_k3_partition(g, v, s, k, stats=None):
    """Partition for a sampled vertex when refining one (k+2)-connected
    component into (k+3)-connected ones; handles lambda(v, s) in
    {k, k+1, k+2} by the corresponding case split."""
    from .flow import lambda_bounded, latest_mincut, pq_graph
    if stats is None:
        stats = {}
    stats.setdefault("subgraphs", 0)
    lam = lambda_bounded(g, v, s, k + 3)
    if lam > k + 2:
        raise GraphError(f"expected lambda(v,s) <= k+2, found >= {lam}")
    if lam < k:
        raise GraphError(f"lambda(v,s)={lam} below k={k}")
    universe = tuple(sorted(g.vertices()))
    if lam == k + 2:
        return pq_graph(g, v, s).partition()
    latest = latest_mincut(g, v, s)
    gz, z = contract(g, latest.members, kind=AUX_KOUT)
    stats["subgraphs"] += 1
    to_gz = {u: (z if u in latest.members else u) for u in universe}
    if lam == k + 1:
        return refine_many(_case_k_plus_1(gz, z, s, k, universe, to_gz, stats))
    # lam == k: 3-edge-connected components without the k cut edges, plus the
    # recursively obtained case-(k+1)/(k+2) partitions per exit point.
    cut_edges = list(gz.out_edges(z))
    stripped = gz.copy()
    for e in cut_edges:
        stripped.delete_edge(e)
    stats["subgraphs"] += 1
    parts = [pull_back(ecc_naive(stripped, 3), to_gz, universe)]
    for e in cut_edges:
        x = gz.head(e)
        if x == s:
            continue
        gzi, zi, to_gzi = _contract_with_head(gz, z, x)
        stats["subgraphs"] += 1
        lam_i = lambda_bounded(gzi, zi, s, k + 3)
        if lam_i <= k:
            raise GraphError(f"contracted connectivity {lam_i} not above k")
        comp = {u: to_gzi[to_gz[u]] for u in universe}
        if lam_i == k + 2:
            q = pq_graph(gzi, zi, s).partition()
            parts.append(pull_back(q, comp, universe))
        elif lam_i == k + 1:
            sub = _case_k_plus_1(gzi, zi, s, k, universe, comp, stats)
            parts.extend(sub)
    return refine_many(parts)
