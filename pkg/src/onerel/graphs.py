"""Finite oriented graphs, fundamental cycle bases and embedded-cycle lifting.

Chains over a coefficient domain are sparse maps ``edge index -> coefficient``.
The lifting operation takes a cycle ``r`` meeting a designated edge set ``H``
and, when the cycle space splits as ``R*r + (cycles off H)``, produces an
embedded cycle through ``H`` and a unit ``u`` with ``r - u*[cycle]`` supported
off ``H``, re-verifying every part of the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domains import ZZ
from .errors import InputError
from .intlinalg import (field_rank, field_solve_left, lattice_equal,
                        solve_left)


class Graph:
    """Oriented multigraph; loops allowed.  Edges are (tail, head, label)."""

    def __init__(self, vertices, edges):
        self.vertices = sorted(set(vertices))
        self.edges = []
        labels = set()
        for tail, head, *rest in edges:
            label = rest[0] if rest else f"e{len(self.edges)}"
            if label in labels:
                raise InputError(f"duplicate edge label {label!r}")
            labels.add(label)
            if tail not in self.vertices or head not in self.vertices:
                raise InputError(f"edge {label} touches an unknown vertex")
            self.edges.append((tail, head, label))
        self.label_index = {lab: i for i, (_, _, lab) in enumerate(self.edges)}

    @classmethod
    def from_edge_list(cls, text):
        """Parse lines ``tail head label`` (label optional); ``#`` comments."""
        vertices = []
        edges = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise InputError(f"cannot parse edge line {raw.strip()!r}")
            tail, head = parts[0], parts[1]
            label = parts[2] if len(parts) == 3 else None
            vertices += [tail, head]
            edges.append((tail, head, label) if label else (tail, head))
        return cls(vertices, edges)

    def to_edge_list(self):
        return "\n".join(f"{t} {h} {lab}" for t, h, lab in self.edges)

    def n_edges(self):
        return len(self.edges)

    def incidence(self, edge_index):
        tail, head, _ = self.edges[edge_index]
        return tail, head

    def boundary(self, chain, domain=ZZ):
        """Vertex chain of a 1-chain: head gets +coeff, tail gets -coeff."""
        out = {}
        for e, c in chain.items():
            tail, head, _ = self.edges[e]
            out[head] = domain.add(out.get(head, domain.zero), c)
            out[tail] = domain.add(out.get(tail, domain.zero), domain.neg(c))
        return {v: c for v, c in out.items() if not domain.is_zero(c)}

    def spanning_forest(self, edge_subset=None, roots=None):
        """Deterministic BFS forest: returns (tree edge set, parent map).

        ``parent[v] = (edge index, direction, previous vertex)``; components
        are rooted at their least vertex (or at the given roots first).
        """
        allowed = set(range(len(self.edges))) if edge_subset is None else set(edge_subset)
        adjacency = {v: [] for v in self.vertices}
        for i in sorted(allowed):
            tail, head, _ = self.edges[i]
            adjacency[tail].append((i, 1, head))
            adjacency[head].append((i, -1, tail))
        parent = {}
        tree = set()
        order = list(roots or []) + self.vertices
        for root in order:
            if root in parent:
                continue
            parent[root] = None
            queue = [root]
            while queue:
                v = queue.pop(0)
                for i, direction, other in adjacency[v]:
                    if other not in parent:
                        parent[other] = (i, direction, v)
                        tree.add(i)
                        queue.append(other)
        return tree, parent

    def tree_path(self, parent, v):
        """Edges (index, direction) along the forest path root -> v."""
        path = []
        while parent[v] is not None:
            i, direction, prev = parent[v]
            path.append((i, direction))
            v = prev
        return list(reversed(path))


@dataclass
class GraphWithCycleSpace:
    graph: Graph
    domain: object
    forest: set
    basis: list            # chains (dict edge -> coeff)
    basis_walks: list      # ordered closed walks [(edge, sign), ...]

    def rank(self):
        return len(self.basis)


def cycle_space(graph: Graph, domain=ZZ) -> GraphWithCycleSpace:
    """Fundamental cycles of the BFS spanning forest, one per non-tree edge."""
    tree, parent = graph.spanning_forest()
    basis = []
    walks = []
    for i in sorted(set(range(graph.n_edges())) - tree):
        tail, head, _ = graph.edges[i]
        walk = [(i, 1)]
        chain = {i: domain.one}
        # close up with the reduced forest path head -> tail
        path = _tree_route(graph, parent, head, tail)
        for j, direction in path:
            walk.append((j, direction))
            coeff = chain.get(j, domain.zero)
            coeff = domain.add(coeff, domain.coerce(direction))
            if domain.is_zero(coeff):
                chain.pop(j, None)
            else:
                chain[j] = coeff
        basis.append(chain)
        walks.append(walk)
    return GraphWithCycleSpace(graph=graph, domain=domain, forest=tree,
                               basis=basis, basis_walks=walks)


def _tree_route(graph, parent, start, goal):
    """Reduced forest path start -> goal as (edge, direction) pairs."""
    up_start = graph.tree_path(parent, start)   # root -> start
    up_goal = graph.tree_path(parent, goal)     # root -> goal
    k = 0
    while k < len(up_start) and k < len(up_goal) and up_start[k] == up_goal[k]:
        k += 1
    down = [(i, -d) for i, d in reversed(up_start[k:])]  # start -> meeting point
    return down + up_goal[k:]


@dataclass
class NotApplicable:
    reason: str


@dataclass
class CycleLift:
    cycle_walk: list         # [(edge index, sign), ...] an embedded closed walk
    cycle_chain: dict        # edge -> coeff
    unit: object
    k_coefficients: list     # coordinates of r - u*cycle in the off-H basis
    k_basis: list            # the off-H fundamental-cycle basis used
    verified: bool = False


def _chain_vector(chain, n, domain):
    vec = [domain.zero] * n
    for e, c in chain.items():
        vec[e] = domain.coerce(c)
    return vec


def _walk_is_embedded(graph, walk):
    """No vertex visited twice along the closed walk (start counted once)."""
    visited = []
    for e, sign in walk:
        tail, head, _ = graph.edges[e]
        visited.append(tail if sign > 0 else head)
    return len(visited) == len(set(visited))


def lift_cycle(graph: Graph, h_edges, r, domain=ZZ):
    """Split a cycle as unit * (embedded cycle through H) + (cycles off H).

    ``h_edges`` may be labels or indices; ``r`` maps edges to coefficients.
    Checks the hypothesis that the full cycle space equals the span of ``r``
    plus the cycles supported off ``h_edges``; failures return
    :class:`NotApplicable` naming the violated condition.
    """
    h = {graph.label_index[e] if isinstance(e, str) else int(e) for e in h_edges}
    if not h.issubset(range(graph.n_edges())):
        raise InputError("designated edges outside the graph")
    r = {graph.label_index[e] if isinstance(e, str) else int(e): domain.coerce(c)
         for e, c in (r.items() if isinstance(r, dict) else r)}
    r = {e: c for e, c in r.items() if not domain.is_zero(c)}
    if not r:
        return NotApplicable("the chain is zero")
    if graph.boundary(r, domain):
        return NotApplicable("the chain is not a cycle (nonzero boundary)")
    if not any(e in h for e in r):
        return NotApplicable("the cycle has no support on the designated edges")

    n = graph.n_edges()
    full = cycle_space(graph, domain)
    off = cycle_space(_subgraph_without(graph, h), domain)
    off_basis = [_relabel_chain(chain, graph, _subgraph_without(graph, h))
                 for chain in off.basis]

    z_rows = [_chain_vector(c, n, domain) for c in full.basis]
    k_rows = [_chain_vector(c, n, domain) for c in off_basis]
    r_vec = _chain_vector(r, n, domain)

    if domain is ZZ or not domain.is_field:
        if not lattice_equal(z_rows, k_rows + [r_vec]):
            return NotApplicable(
                "the cycle space is not spanned by the cycle plus off-H cycles")
    else:
        zr = field_rank(z_rows, domain)
        if field_rank(k_rows + [r_vec], domain) != zr or \
                field_rank(k_rows, domain) + 1 != zr:
            return NotApplicable(
                "the cycle space is not spanned by the cycle plus off-H cycles")

    # minimal support subgraph, pruned of degree <= 1 vertices
    support = sorted(r)
    gamma_edges = set(support)
    changed = True
    while changed:
        changed = False
        degree = {}
        for e in gamma_edges:
            tail, head, _ = graph.edges[e]
            degree[tail] = degree.get(tail, 0) + 1
            degree[head] = degree.get(head, 0) + 1
        drop = {e for e in gamma_edges
                if degree[graph.edges[e][0]] <= 1 or degree[graph.edges[e][1]] <= 1}
        drop = {e for e in drop if graph.edges[e][0] != graph.edges[e][1]}
        if drop:
            gamma_edges -= drop
            changed = True
    if not gamma_edges.intersection(h):
        return NotApplicable("pruned support subgraph misses the designated edges")

    gamma_vertices = sorted({v for e in gamma_edges for v in graph.edges[e][:2]})
    # forest of gamma minus H, extended across its components by H edges
    forest0, _ = graph.spanning_forest(edge_subset=gamma_edges - h)
    forest, parent = _extend_forest(graph, gamma_edges, forest0, h)

    candidates = sorted(e for e in gamma_edges.intersection(h) if e not in forest)
    if not candidates:
        return NotApplicable("every designated edge is a forest edge; no cycle to lift")

    last_reason = "no unit solution"
    for e_star in candidates:
        tail, head, _ = graph.edges[e_star]
        walk = [(e_star, 1)] + _tree_route(graph, parent, head, tail)
        chain = {}
        for j, d in walk:
            c = domain.add(chain.get(j, domain.zero), domain.coerce(d))
            if domain.is_zero(c):
                chain.pop(j, None)
            else:
                chain[j] = c
        if not _walk_is_embedded(graph, walk):
            last_reason = "candidate fundamental cycle is not embedded"
            continue
        lam_h = chain.get(e_star, domain.zero)
        r_h = r.get(e_star, domain.zero)
        # solve r - u*lambda == 0 on all designated edges
        unit = _solve_unit(domain, r_h, lam_h)
        if unit is None:
            last_reason = "no unit makes the designated-edge projections match"
            continue
        residual = dict(r)
        for j, c in chain.items():
            nc = domain.sub(residual.get(j, domain.zero), domain.mul(unit, c))
            if domain.is_zero(nc):
                residual.pop(j, None)
            else:
                residual[j] = nc
        if any(j in h for j in residual):
            last_reason = "residual still meets the designated edges"
            continue
        res_vec = _chain_vector(residual, n, domain)
        if domain is ZZ or not domain.is_field:
            coeffs = solve_left(k_rows, res_vec) if k_rows else ([] if not any(res_vec) else None)
        else:
            coeffs = field_solve_left(k_rows, res_vec, domain) if k_rows else (
                [] if all(domain.is_zero(x) for x in res_vec) else None)
        if coeffs is None:
            last_reason = "residual is not a combination of off-H cycles"
            continue
        lift = CycleLift(cycle_walk=walk, cycle_chain=chain, unit=unit,
                         k_coefficients=coeffs, k_basis=off_basis)
        _verify_lift(graph, h, r, lift, k_rows, domain)
        lift.verified = True
        return lift
    return NotApplicable(last_reason)


def _solve_unit(domain, r_h, lam_h):
    if domain.is_zero(lam_h):
        return None
    if domain.is_field:
        return domain.mul(r_h, domain.inv(lam_h))
    # integers: lam divides r and the quotient is a unit
    if r_h % lam_h:
        return None
    q = r_h // lam_h
    return q if domain.is_unit(q) else None


def _verify_lift(graph, h, r, lift, k_rows, domain):
    if not _walk_is_embedded(graph, lift.cycle_walk):
        raise InputError("lift verification failed: cycle not embedded")
    if not domain.is_unit(lift.unit):
        raise InputError("lift verification failed: coefficient is not a unit")
    n = graph.n_edges()
    recon = [domain.zero] * n
    for coeff, row in zip(lift.k_coefficients, k_rows):
        for j in range(n):
            recon[j] = domain.add(recon[j], domain.mul(domain.coerce(coeff), row[j]))
    for j, c in lift.cycle_chain.items():
        recon[j] = domain.add(recon[j], domain.mul(lift.unit, c))
    target = _chain_vector(r, n, domain)
    if recon != target:
        raise InputError("lift verification failed: certificate does not recombine")


def _subgraph_without(graph, h):
    keep = [graph.edges[i] for i in range(graph.n_edges()) if i not in h]
    return Graph(graph.vertices, keep)


def _relabel_chain(chain, full_graph, sub_graph):
    out = {}
    for e, c in chain.items():
        label = sub_graph.edges[e][2]
        out[full_graph.label_index[label]] = c
    return out


def _extend_forest(graph, gamma_edges, forest0, h):
    """Extend a forest of gamma-minus-H to a forest of gamma using H edges.

    Keeps every forest0 edge; H edges joining distinct forest0 components are
    added greedily in index order (no cycles can arise).  The parent map is
    recomputed over the final edge set, which reproduces it exactly.
    """
    comp = {v: v for v in graph.vertices}

    def find(v):
        while comp[v] != v:
            comp[v] = comp[comp[v]]
            v = comp[v]
        return v

    for i in sorted(forest0):
        tail, head, _ = graph.edges[i]
        comp[find(tail)] = find(head)
    final = set(forest0)
    for i in sorted(gamma_edges.intersection(h)):
        tail, head, _ = graph.edges[i]
        if find(tail) != find(head):
            comp[find(tail)] = find(head)
            final.add(i)
    return graph.spanning_forest(edge_subset=final)
