"""Multigraphs, spanning-tree polynomials, minors, connections, recognizers.

Conventions: loops and parallel edges are allowed everywhere; the
spanning-tree polynomial of a disconnected graph is the product over
components (generating polynomial of maximal spanning forests), so it is
strictly positive on the open orthant.  Edge-variable order is edge
insertion order.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .exactalg import ExactMatrix
from .polyseries import MultiPoly

Edge = Tuple[str, str, str]  # (edge id, endpoint u, endpoint v)


class Multigraph:
    """Labeled multigraph; u == v loops and parallel edges allowed."""

    def __init__(self, vertices: Sequence[str] = (), edges: Sequence[Edge] = ()):
        self.vertices: List[str] = []
        self._vset = set()
        self.edges: List[Edge] = []
        self._eids = set()
        for v in vertices:
            self.add_vertex(v)
        for e, u, v in edges:
            self.add_edge(e, u, v)

    def add_vertex(self, v: str) -> None:
        if v not in self._vset:
            self._vset.add(v)
            self.vertices.append(v)

    def add_edge(self, eid: str, u: str, v: str) -> None:
        if eid in self._eids:
            raise ValueError(f"duplicate edge id {eid!r}")
        if u not in self._vset or v not in self._vset:
            raise ValueError("edge endpoint not a vertex")
        self._eids.add(eid)
        self.edges.append((eid, u, v))

    def copy(self) -> "Multigraph":
        return Multigraph(self.vertices, self.edges)

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e[0] == eid:
                return e
        raise KeyError(f"unknown edge id {eid!r}")

    def edge_ids(self) -> List[str]:
        return [e[0] for e in self.edges]

    def var_map(self) -> Dict[str, int]:
        """Edge id -> variable index, in insertion order."""
        return {e[0]: i for i, e in enumerate(self.edges)}

    def degree(self, v: str) -> int:
        d = 0
        for _, a, b in self.edges:
            if a == v:
                d += 1
            if b == v:
                d += 1
        return d

    def is_loop(self, eid: str) -> bool:
        _, u, v = self.edge(eid)
        return u == v

    def components(self) -> List[List[str]]:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for _, u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        comps: Dict[str, List[str]] = {}
        for v in self.vertices:
            comps.setdefault(find(v), []).append(v)
        return list(comps.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_bridge(self, eid: str) -> bool:
        e, u, v = self.edge(eid)
        if u == v:
            return False
        before = len(self.components())
        after = len(delete_edge(self, eid).components())
        return after > before

    def delete_vertex(self, v: str) -> "Multigraph":
        if any(u == v or w == v for _, u, w in self.edges):
            raise ValueError("vertex is not isolated")
        return Multigraph([x for x in self.vertices if x != v], self.edges)

    def __repr__(self) -> str:
        return f"Multigraph(V={self.vertices!r}, E={self.edges!r})"


def delete_edge(G: Multigraph, eid: str) -> Multigraph:
    G.edge(eid)
    return Multigraph(G.vertices, [e for e in G.edges if e[0] != eid])


def contract_edge(G: Multigraph, eid: str) -> Multigraph:
    """Identify the endpoints of eid and drop it; loops created are kept."""
    _, cu, cv = G.edge(eid)
    if cu == cv:
        return delete_edge(G, eid)
    # merged vertex keeps label cu
    def m(x):
        return cu if x == cv else x
    verts = [v for v in G.vertices if v != cv]
    edges = [(e, m(u), m(v)) for e, u, v in G.edges if e != eid]
    return Multigraph(verts, edges)


def graph_minor_op(G: Multigraph, eid: str, mode: str) -> Multigraph:
    if mode == "delete":
        return delete_edge(G, eid)
    if mode == "contract":
        return contract_edge(G, eid)
    raise ValueError(f"unknown minor op {mode!r}")


# ---------------------------------------------------------------------------
# Canonical labeling (for the deletion-contraction memo)
# ---------------------------------------------------------------------------

def _refine(adj: Dict[str, List[Tuple[str, bool]]], colors: Dict[str, int]) -> Dict[str, int]:
    while True:
        sig = {}
        for v, nbrs in adj.items():
            sig[v] = (colors[v], tuple(sorted((colors[w], lp) for w, lp in nbrs)))
        order = sorted(set(sig.values()))
        newc = {v: order.index(s) for v, s in sig.items()}
        if newc == colors:
            return colors
        colors = newc


def _canonical_structure(G: Multigraph):
    """Canonical multiset of edges under graph isomorphism (ids ignored).

    Iterative refinement plus individualization on ties; exact for the desk
    scale graphs handled here.
    """
    adj: Dict[str, List[Tuple[str, bool]]] = {v: [] for v in G.vertices}
    for _, u, v in G.edges:
        if u == v:
            adj[u].append((u, True))
        else:
            adj[u].append((v, False))
            adj[v].append((u, False))
    active = [v for v in G.vertices if adj[v]]  # isolated vertices play no role

    def canon_from(colors: Dict[str, int]):
        colors = _refine({v: adj[v] for v in active}, colors)
        classes: Dict[int, List[str]] = {}
        for v in active:
            classes.setdefault(colors[v], []).append(v)
        tied = [vs for vs in classes.values() if len(vs) > 1]
        if not tied:
            rank = {v: colors[v] for v in active}
            key = tuple(sorted((min(rank[u], rank[v]), max(rank[u], rank[v]))
                               if u != v else (rank[u], rank[u])
                               for _, u, v in G.edges if u in rank and v in rank))
            return key, rank
        # individualize each vertex of the first smallest tied class; keep min
        vs = min(tied, key=len)
        best = None
        for v in vs:
            c2 = dict(colors)
            c2[v] = max(colors.values()) + 1
            cand = canon_from(c2)
            if best is None or cand[0] < best[0]:
                best = cand
        return best

    if not active:
        return (), {}
    return canon_from({v: 0 for v in active})


def spanning_tree_poly(G: Multigraph, memo: Optional[dict] = None) -> MultiPoly:
    """Generating polynomial of maximal spanning forests, one variable per edge.

    Deletion-contraction with memoization on canonicalized graphs; variables
    follow edge insertion order of G.
    """
    if memo is None:
        memo = {}
    nvars = len(G.edges)
    varmap = G.var_map()
    forests = _msf_edge_sets(G, memo)
    terms = {}
    for S in forests:
        e = [0] * nvars
        for eid in S:
            e[varmap[eid]] = 1
        terms[tuple(e)] = Fraction(1)
    return MultiPoly(nvars, terms)


def _msf_edge_sets(G: Multigraph, memo: dict) -> List[FrozenSet[str]]:
    """Edge-id sets of the maximal spanning forests of G."""
    nonloops = [e for e in G.edges if e[1] != e[2]]
    if not nonloops:
        return [frozenset()]
    key, rank = _canonical_structure(G)
    hit = memo.get(key)
    if hit is not None:
        cached_sets, cached_order = hit
        remap = _match_edge_order(G, rank, cached_order)
        if remap is not None:
            return [frozenset(remap[i] for i in s) for s in cached_sets]
    eid = nonloops[0][0]
    if G.is_bridge(eid):
        sub = _msf_edge_sets(contract_edge(G, eid), memo)
        out = [s | {eid} for s in sub]
    else:
        out = _msf_edge_sets(delete_edge(G, eid), memo)
        out += [s | {eid} for s in _msf_edge_sets(contract_edge(G, eid), memo)]
    order = _canonical_edge_order(G, rank)
    pos = {e: i for i, e in enumerate(order)}
    memo[key] = ([frozenset(pos[e] for e in s) for s in out], order)
    return out


def _canonical_edge_order(G: Multigraph, rank: Dict[str, int]) -> List[str]:
    def ekey(e):
        eid, u, v = e
        if u == v:
            return (rank[u], rank[u], eid)
        return (min(rank[u], rank[v]), max(rank[u], rank[v]), eid)
    return [e[0] for e in sorted((e for e in G.edges if e[1] in rank and e[2] in rank),
                                 key=ekey)]


def _match_edge_order(G: Multigraph, rank: Dict[str, int], cached_order_len_edges):
    """Map cached canonical edge positions onto this graph's edge ids.

    Valid because edges sharing a canonical (endpoint-rank) signature are
    interchangeable in every spanning forest.
    """
    order = _canonical_edge_order(G, rank)
    if len(order) != len(cached_order_len_edges):
        return None
    return {i: eid for i, eid in enumerate(order)}


def spanning_forests_bruteforce(G: Multigraph) -> List[FrozenSet[str]]:
    """Test oracle: enumerate maximal spanning forests by subset search."""
    from itertools import combinations
    nonloop = [e for e in G.edges if e[1] != e[2]]
    ncomp = len(G.components())
    size = len(G.vertices) - ncomp
    out = []
    for sub in combinations(nonloop, size):
        parent = {v: v for v in G.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for _, u, v in sub:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            out.append(frozenset(e[0] for e in sub))
    return out


# ---------------------------------------------------------------------------
# Connections and extensions
# ---------------------------------------------------------------------------

def _disjointify(G1: Multigraph, G2: Multigraph):
    """Relabel G2's vertices/edge ids away from G1's."""
    vmap = {}
    for v in G2.vertices:
        nv = v
        while nv in G1._vset or nv in vmap.values():
            nv = nv + "'"
        vmap[v] = nv
    emap = {}
    for e, _, _ in G2.edges:
        ne = e
        while ne in G1._eids or ne in emap.values():
            ne = ne + "'"
        emap[e] = ne
    H = Multigraph([vmap[v] for v in G2.vertices],
                   [(emap[e], vmap[u], vmap[v]) for e, u, v in G2.edges])
    return H, vmap, emap


def connect(G1: Multigraph, e1: str, G2: Multigraph, e2: str, mode: str,
            new_edge_id: str = "e") -> Multigraph:
    """Parallel connection, series connection, or 2-sum along (e1, e2).

    The glued edge of a parallel connection gets ``new_edge_id``; the series
    connection's new edge likewise.  A warning is issued when a chosen edge
    is a bridge (the operation is still performed).
    """
    if G1.is_loop(e1) or G2.is_loop(e2):
        raise ValueError("connection edge must not be a loop")
    if G1.is_bridge(e1) or G2.is_bridge(e2):
        warnings.warn("connection along a bridge; semantics degenerate", stacklevel=2)
    if mode == "two_sum":
        return contract_edge(connect(G1, e1, G2, e2, "series", new_edge_id),
                             new_edge_id)
    _, x1, y1 = G1.edge(e1)
    H2, vmap, emap = _disjointify(G1, G2)
    _, x2, y2 = H2.edge(emap[e2])
    if mode == "parallel":
        # identify x1~x2, y1~y2, and e1~e2 into the new edge
        def m(v):
            if v == x2:
                return x1
            if v == y2:
                return y1
            return v
        verts = list(G1.vertices) + [m(v) for v in H2.vertices if m(v) not in G1._vset]
        edges = [e for e in G1.edges if e[0] != e1]
        edges += [(e, m(u), m(v)) for e, u, v in H2.edges if e != emap[e2]]
        out = Multigraph([], [])
        for v in verts:
            out.add_vertex(v)
        eid = new_edge_id
        while eid in {e[0] for e in edges}:
            eid = eid + "'"
        for e, u, v in edges:
            out.add_edge(e, u, v)
        out.add_edge(eid, x1, y1)
        return out
    if mode == "series":
        # identify x1~x2; new edge from y1 to y2
        def m(v):
            return x1 if v == x2 else v
        out = Multigraph([], [])
        for v in G1.vertices:
            out.add_vertex(v)
        for v in H2.vertices:
            out.add_vertex(m(v))
        for e, u, v in G1.edges:
            if e != e1:
                out.add_edge(e, u, v)
        for e, u, v in H2.edges:
            if e != emap[e2]:
                out.add_edge(e, m(u), m(v))
        eid = new_edge_id
        while eid in out._eids:
            eid = eid + "'"
        out.add_edge(eid, y1, m(y2))
        return out
    raise ValueError(f"unknown connection mode {mode!r}")


def extend_edge(G: Multigraph, eid: str, mode: str,
                new_ids: Optional[Tuple[str, str]] = None) -> Multigraph:
    """Replace an edge by two parallel edges or two series edges.

    parallel: edge e:(u,v) becomes e1:(u,v), e2:(u,v).
    series:   edge e:(u,v) becomes e1:(u,w), e2:(w,v) with a fresh vertex w.
    """
    _, u, v = G.edge(eid)
    if mode == "series" and u == v:
        raise ValueError("series extension of a loop")
    if new_ids is None:
        new_ids = (f"{eid}_1", f"{eid}_2")
    e1, e2 = new_ids
    out = Multigraph([], [])
    for w in G.vertices:
        out.add_vertex(w)
    if mode == "parallel":
        for e, a, b in G.edges:
            if e == eid:
                out.add_edge(e1, a, b)
                out.add_edge(e2, a, b)
            else:
                out.add_edge(e, a, b)
        return out
    if mode == "series":
        w = f"{eid}_mid"
        while w in out._vset:
            w = w + "'"
        out.add_vertex(w)
        for e, a, b in G.edges:
            if e == eid:
                out.add_edge(e1, a, w)
                out.add_edge(e2, w, b)
            else:
                out.add_edge(e, a, b)
        return out
    raise ValueError(f"unknown extension mode {mode!r}")


# ---------------------------------------------------------------------------
# Recognizers
# ---------------------------------------------------------------------------

def is_series_parallel(G: Multigraph) -> bool:
    """True iff the underlying loopless graph reduces to a forest by
    loop/parallel/series/degree<=1 reductions (equivalently: no K4 minor)."""
    verts = list(G.vertices)
    edges = [(u, v) for _, u, v in G.edges if u != v]
    changed = True
    while changed:
        changed = False
        # parallel reduction
        seen = {}
        dedup = []
        for u, v in edges:
            k = (u, v) if u <= v else (v, u)
            if k in seen:
                changed = True
                continue
            seen[k] = True
            dedup.append((u, v))
        edges = dedup
        deg: Dict[str, int] = {v: 0 for v in verts}
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        # degree <= 1 removal
        drop = {v for v in verts if deg[v] <= 1}
        if drop:
            keep_edges = [(u, v) for u, v in edges if u not in drop and v not in drop]
            if keep_edges != edges or any(deg[v] for v in drop):
                changed = True
            edges = keep_edges
            verts = [v for v in verts if v not in drop]
            continue
        # series reduction at a degree-2 vertex
        for v in verts:
            if deg[v] == 2:
                nbrs = []
                for a, b in edges:
                    if a == v:
                        nbrs.append(b)
                    elif b == v:
                        nbrs.append(a)
                edges = [(a, b) for a, b in edges if a != v and b != v]
                if nbrs[0] != nbrs[1]:
                    edges.append((nbrs[0], nbrs[1]))
                verts = [w for w in verts if w != v]
                changed = True
                break
    return not edges


def has_no_k3_minor(G: Multigraph) -> bool:
    """True iff every block has at most 2 vertices: the graph obtained by
    dropping loops and collapsing parallel classes is a forest."""
    simple = set()
    for _, u, v in G.edges:
        if u != v:
            simple.add((u, v) if u <= v else (v, u))
    parent = {v: v for v in G.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in simple:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


# -- brute-force minor oracles (test utilities, not public API) -------------

def _has_kk_subgraph(G: Multigraph, k: int) -> bool:
    from itertools import combinations
    simple: Dict[str, set] = {v: set() for v in G.vertices}
    for _, u, v in G.edges:
        if u != v:
            simple[u].add(v)
            simple[v].add(u)
    verts = [v for v in G.vertices if simple[v]]
    for sub in combinations(verts, k):
        if all(b in simple[a] for a, b in combinations(sub, 2)):
            return True
    return False


def bf_has_clique_minor(G: Multigraph, k: int, _memo=None) -> bool:
    """Exhaustive delete/contract search for a K_k minor (test oracle)."""
    if _memo is None:
        _memo = {}
    if len(G.vertices) < k:
        return False
    key, _ = _canonical_structure(G)
    key = (k, key)
    if key in _memo:
        return _memo[key]
    if _has_kk_subgraph(G, k):
        _memo[key] = True
        return True
    for eid, u, v in G.edges:
        if u == v:
            continue
        if bf_has_clique_minor(contract_edge(G, eid), k, _memo):
            _memo[key] = True
            return True
        if bf_has_clique_minor(delete_edge(G, eid), k, _memo):
            _memo[key] = True
            return True
    _memo[key] = False
    return False


# ---------------------------------------------------------------------------
# Incidence matrix
# ---------------------------------------------------------------------------

def incidence_matrix_reduced(G: Multigraph,
                             orientation: Optional[Dict[str, Tuple[str, str]]] = None,
                             dropped_vertex: Optional[str] = None) -> ExactMatrix:
    """Directed vertex-edge incidence matrix with one row deleted.

    Default orientation directs each edge from its stored u to v; loops give
    zero columns.  Requires a connected graph.
    """
    if not G.is_connected():
        raise ValueError("incidence matrix requires a connected graph")
    if dropped_vertex is None:
        dropped_vertex = G.vertices[-1]
    if dropped_vertex not in G._vset:
        raise ValueError("dropped vertex not in graph")
    rows = [v for v in G.vertices if v != dropped_vertex]
    ridx = {v: i for i, v in enumerate(rows)}
    mat = [[Fraction(0)] * len(G.edges) for _ in rows]
    for j, (eid, u, v) in enumerate(G.edges):
        if orientation and eid in orientation:
            u, v = orientation[eid]
        if u == v:
            continue
        if u in ridx:
            mat[ridx[u]][j] += 1
        if v in ridx:
            mat[ridx[v]][j] -= 1
    return ExactMatrix(mat)


# ---------------------------------------------------------------------------
# Small named graphs
# ---------------------------------------------------------------------------

def cycle_graph(n: int) -> Multigraph:
    if n < 1:
        raise ValueError("cycle needs n >= 1")
    G = Multigraph([f"v{i}" for i in range(max(n, 1))] if n > 1 else ["v0"])
    if n == 1:
        G.add_edge("e1", "v0", "v0")
        return G
    for i in range(n):
        G.add_edge(f"e{i+1}", f"v{i}", f"v{(i+1) % n}")
    return G


def complete_graph(p: int) -> Multigraph:
    G = Multigraph([f"v{i}" for i in range(p)])
    k = 1
    for i in range(p):
        for j in range(i + 1, p):
            G.add_edge(f"e{k}", f"v{i}", f"v{j}")
            k += 1
    return G


def path_graph(n: int) -> Multigraph:
    G = Multigraph([f"v{i}" for i in range(n)])
    for i in range(n - 1):
        G.add_edge(f"e{i+1}", f"v{i}", f"v{i+1}")
    return G
