"""Pushouts, pullbacks and the initial object in the category of finite graphs.

Pushout objects are quotients of tagged disjoint unions: elements coming from
the left leg's codomain are tagged ``L:``, elements from the right leg's
codomain ``R:``, and each equivalence class is named after its
lexicographically least tagged member.  Pullback elements are pairs named
``b|a``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graphs import (EMPTY_GRAPH, Graph, GraphMorphism, MismatchError, compose,
                     enumerate_morphisms, graph_of)


@dataclass(frozen=True)
class PushoutResult:
    object: Graph
    left: GraphMorphism   # B -> D
    right: GraphMorphism  # A -> D


@dataclass(frozen=True)
class PullbackResult:
    object: Graph
    left: GraphMorphism   # D -> B
    right: GraphMorphism  # D -> A


def initial_graph() -> Graph:
    return EMPTY_GRAPH


def initial_morphism(g: Graph) -> GraphMorphism:
    return GraphMorphism(EMPTY_GRAPH, g, {}, {})


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry

    def classes(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def pushout(m: GraphMorphism, r: GraphMorphism) -> PushoutResult:
    """Pushout of the span B <-m- C -r-> A in the category of finite graphs."""
    if m.dom != r.dom:
        raise MismatchError("pushout needs a span with a common domain")
    b, a, c = m.cod, r.cod, m.dom

    uf_nodes, uf_edges = _UnionFind(), _UnionFind()
    for n in b.nodes:
        uf_nodes.add(("L", n))
    for n in a.nodes:
        uf_nodes.add(("R", n))
    for e in b.edges:
        uf_edges.add(("L", e))
    for e in a.edges:
        uf_edges.add(("R", e))
    for n in c.nodes:
        uf_nodes.union(("L", m.node_map[n]), ("R", r.node_map[n]))
    for e in c.edges:
        uf_edges.union(("L", m.edge_map[e]), ("R", r.edge_map[e]))

    def class_name(members):
        return min("%s:%s" % tagged for tagged in members)

    node_name = {}
    for cls in uf_nodes.classes():
        name = class_name(cls)
        for member in cls:
            node_name[member] = name
    edge_name = {}
    edge_rep = {}
    for cls in uf_edges.classes():
        name = class_name(cls)
        for member in cls:
            edge_name[member] = name
        edge_rep[name] = min(cls)

    def endpoint(tagged_edge, which):
        tag, e = tagged_edge
        g = b if tag == "L" else a
        return node_name[(tag, (g.src if which == "src" else g.tgt)[e])]

    d = Graph(
        set(node_name.values()), set(edge_name.values()),
        {name: endpoint(rep, "src") for name, rep in edge_rep.items()},
        {name: endpoint(rep, "tgt") for name, rep in edge_rep.items()})
    left = GraphMorphism(b, d, {n: node_name[("L", n)] for n in b.nodes},
                         {e: edge_name[("L", e)] for e in b.edges})
    right = GraphMorphism(a, d, {n: node_name[("R", n)] for n in a.nodes},
                          {e: edge_name[("R", e)] for e in a.edges})
    return PushoutResult(d, left, right)


def pullback(m: GraphMorphism, r: GraphMorphism) -> PullbackResult:
    """Pullback of the cospan B -m-> C <-r- A: the componentwise fiber product."""
    if m.cod != r.cod:
        raise MismatchError("pullback needs a cospan with a common codomain")
    b, a = m.dom, r.dom

    node_pairs = [(nb, na) for nb in sorted(b.nodes) for na in sorted(a.nodes)
                  if m.node_map[nb] == r.node_map[na]]
    edge_pairs = [(eb, ea) for eb in sorted(b.edges) for ea in sorted(a.edges)
                  if m.edge_map[eb] == r.edge_map[ea]]

    def pair_name(p):
        return "%s|%s" % p

    d = Graph(
        [pair_name(p) for p in node_pairs],
        [pair_name(p) for p in edge_pairs],
        {pair_name((eb, ea)): pair_name((b.src[eb], a.src[ea]))
         for eb, ea in edge_pairs},
        {pair_name((eb, ea)): pair_name((b.tgt[eb], a.tgt[ea]))
         for eb, ea in edge_pairs})
    left = GraphMorphism(
        d, b, {pair_name(p): p[0] for p in node_pairs},
        {pair_name(p): p[0] for p in edge_pairs})
    right = GraphMorphism(
        d, a, {pair_name(p): p[1] for p in node_pairs},
        {pair_name(p): p[1] for p in edge_pairs})
    return PullbackResult(d, left, right)


def default_test_graphs() -> list:
    """Small mediator test pool for universal-property verification."""
    return [
        graph_of(),
        graph_of("x"),
        graph_of("x y"),
        graph_of("", "k:x->y"),
        graph_of("", "k:x->x"),
        graph_of("", "k:x->y l:x->y"),
        graph_of("", "k:x->y l:y->z"),
    ]


def verify_pushout(m: GraphMorphism, r: GraphMorphism,
                   candidate: PushoutResult, test_graphs=None) -> bool:
    """Check commutativity and the pushout universal property.

    The mediator quantification runs over a finite pool of test cospans drawn
    from ``test_graphs`` (a desk-scale approximation of the full property).
    """
    if candidate.left.dom != m.cod or candidate.right.dom != r.cod:
        return False
    if compose(m, candidate.left) != compose(r, candidate.right):
        return False
    d = candidate.object
    for t in (test_graphs if test_graphs is not None else default_test_graphs()):
        homs_d = enumerate_morphisms(d, t)
        for f in enumerate_morphisms(m.cod, t):
            mf = compose(m, f)
            for g in enumerate_morphisms(r.cod, t):
                if mf != compose(r, g):
                    continue
                mediators = [u for u in homs_d
                             if compose(candidate.left, u) == f
                             and compose(candidate.right, u) == g]
                if len(mediators) != 1:
                    return False
    return True


def verify_pullback(m: GraphMorphism, r: GraphMorphism,
                    candidate: PullbackResult, test_graphs=None) -> bool:
    """Check commutativity and the pullback universal property (bounded pool)."""
    if candidate.left.cod != m.dom or candidate.right.cod != r.dom:
        return False
    if compose(candidate.left, m) != compose(candidate.right, r):
        return False
    d = candidate.object
    for t in (test_graphs if test_graphs is not None else default_test_graphs()):
        homs_d = enumerate_morphisms(t, d)
        for f in enumerate_morphisms(t, m.dom):
            fm = compose(f, m)
            for g in enumerate_morphisms(t, r.dom):
                if fm != compose(g, r):
                    continue
                mediators = [u for u in homs_d
                             if compose(u, candidate.left) == f
                             and compose(u, candidate.right) == g]
                if len(mediators) != 1:
                    return False
    return True
