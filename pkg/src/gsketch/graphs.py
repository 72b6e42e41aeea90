"""Finite directed multigraphs and their homomorphisms.

Graphs and morphisms are immutable values; every operation returns a new
value.  Enumeration is deterministic: elements are assigned in lexicographic
order (nodes first, then edges) and candidate targets are tried in
lexicographic order.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Mapping


class MismatchError(ValueError):
    """Endpoints of morphisms or constructions do not line up."""


class NotInvertibleError(ValueError):
    """invert() was called on a morphism that is not an isomorphism."""


class Graph:
    """A finite directed multigraph with string-named nodes and edges."""

    __slots__ = ("nodes", "edges", "src", "tgt", "_key")

    def __init__(self, nodes: Iterable[str], edges: Iterable[str],
                 src: Mapping[str, str], tgt: Mapping[str, str]):
        object.__setattr__(self, "nodes", frozenset(nodes))
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "src", dict(src))
        object.__setattr__(self, "tgt", dict(tgt))
        object.__setattr__(self, "_key", (
            self.nodes, self.edges,
            tuple(sorted(self.src.items())), tuple(sorted(self.tgt.items()))))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        return isinstance(other, Graph) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        edges = ", ".join("%s:%s->%s" % (e, self.src[e], self.tgt[e])
                          for e in sorted(self.edges))
        return "Graph([%s], [%s])" % (" ".join(sorted(self.nodes)), edges)

    def is_empty(self) -> bool:
        return not self.nodes and not self.edges


EMPTY_GRAPH = Graph((), (), {}, {})


def graph_of(nodes: str = "", edges: str = "") -> Graph:
    """Build a graph from compact literals: ``graph_of("1 2", "a:1->2 b:1->2")``.

    Edge endpoints are added to the node set automatically.
    """
    node_set = set(nodes.split())
    src, tgt, edge_set = {}, {}, set()
    for item in edges.split():
        name, arrow = item.split(":", 1)
        s, t = arrow.split("->", 1)
        edge_set.add(name)
        src[name], tgt[name] = s, t
        node_set.add(s)
        node_set.add(t)
    return Graph(node_set, edge_set, src, tgt)


def validate_graph(g: Graph) -> list:
    """Return a list of invariant violations; empty iff the graph is valid."""
    violations = []
    for e in sorted(g.edges):
        if e not in g.src:
            violations.append("edge %r has no source" % e)
        elif g.src[e] not in g.nodes:
            violations.append("edge %r has dangling source %r" % (e, g.src[e]))
        if e not in g.tgt:
            violations.append("edge %r has no target" % e)
        elif g.tgt[e] not in g.nodes:
            violations.append("edge %r has dangling target %r" % (e, g.tgt[e]))
    for name in sorted(g.src.keys() | g.tgt.keys()):
        if name not in g.edges:
            violations.append("source/target map mentions unknown edge %r" % name)
    for name in sorted(g.nodes & g.edges):
        violations.append("name %r used for both a node and an edge" % name)
    return violations


class GraphMorphism:
    """A graph homomorphism: total node and edge maps respecting incidence."""

    __slots__ = ("dom", "cod", "node_map", "edge_map", "_key")

    def __init__(self, dom: Graph, cod: Graph,
                 node_map: Mapping[str, str], edge_map: Mapping[str, str]):
        node_map = dict(node_map)
        edge_map = dict(edge_map)
        for n in dom.nodes:
            if n not in node_map:
                raise MismatchError("node %r of the domain is unmapped" % n)
            if node_map[n] not in cod.nodes:
                raise MismatchError("node %r maps outside the codomain" % n)
        for e in dom.edges:
            if e not in edge_map:
                raise MismatchError("edge %r of the domain is unmapped" % e)
            if edge_map[e] not in cod.edges:
                raise MismatchError("edge %r maps outside the codomain" % e)
            if node_map[dom.src[e]] != cod.src[edge_map[e]] or \
               node_map[dom.tgt[e]] != cod.tgt[edge_map[e]]:
                raise MismatchError(
                    "edge %r: image does not respect source/target" % e)
        node_map = {n: node_map[n] for n in dom.nodes}
        edge_map = {e: edge_map[e] for e in dom.edges}
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "node_map", node_map)
        object.__setattr__(self, "edge_map", edge_map)
        object.__setattr__(self, "_key", (
            dom, cod, tuple(sorted(node_map.items())),
            tuple(sorted(edge_map.items()))))

    def __setattr__(self, name, value):
        raise AttributeError("GraphMorphism is immutable")

    def __eq__(self, other):
        return isinstance(other, GraphMorphism) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        entries = ["%s->%s" % kv for kv in sorted(self.node_map.items())]
        entries += ["%s->%s" % kv for kv in sorted(self.edge_map.items())]
        return "GraphMorphism{%s}" % ", ".join(entries)


def morphism_of(dom: Graph, cod: Graph, nodes: Mapping[str, str] = None,
                edges: Mapping[str, str] = None) -> GraphMorphism:
    """Build a morphism, inferring node images from edge assignments.

    Node entries may be omitted when forced by an incident edge; genuinely
    isolated unmapped nodes are an error.
    """
    node_map = dict(nodes or {})
    edge_map = dict(edges or {})
    for e, img in edge_map.items():
        if e not in dom.edges:
            raise MismatchError("unknown edge %r in assignment" % e)
        if img not in cod.edges:
            raise MismatchError("edge %r maps to unknown edge %r" % (e, img))
        for end, cend in ((dom.src[e], cod.src[img]), (dom.tgt[e], cod.tgt[img])):
            if node_map.setdefault(end, cend) != cend:
                raise MismatchError(
                    "conflicting node image for %r forced by edge %r" % (end, e))
    missing = sorted(dom.nodes - node_map.keys())
    if missing:
        raise MismatchError("isolated nodes need explicit images: %s"
                            % ", ".join(missing))
    return GraphMorphism(dom, cod, node_map, edge_map)


def identity(g: Graph) -> GraphMorphism:
    return GraphMorphism(g, g, {n: n for n in g.nodes}, {e: e for e in g.edges})


def compose(f: GraphMorphism, g: GraphMorphism) -> GraphMorphism:
    """Return f;g (apply f first)."""
    if f.cod != g.dom:
        raise MismatchError("cannot compose: codomain of f differs from domain of g")
    return GraphMorphism(
        f.dom, g.cod,
        {n: g.node_map[f.node_map[n]] for n in f.dom.nodes},
        {e: g.edge_map[f.edge_map[e]] for e in f.dom.edges})


def is_monomorphism(m: GraphMorphism) -> bool:
    return (len(set(m.node_map.values())) == len(m.dom.nodes)
            and len(set(m.edge_map.values())) == len(m.dom.edges))


def is_isomorphism(m: GraphMorphism) -> bool:
    return (is_monomorphism(m)
            and len(m.dom.nodes) == len(m.cod.nodes)
            and len(m.dom.edges) == len(m.cod.edges))


def invert(m: GraphMorphism) -> GraphMorphism:
    if not is_isomorphism(m):
        raise NotInvertibleError("morphism is not an isomorphism")
    return GraphMorphism(
        m.cod, m.dom,
        {v: k for k, v in m.node_map.items()},
        {v: k for k, v in m.edge_map.items()})


def _search(dom: Graph, cod: Graph, node_seed: Mapping[str, str],
            edge_seed: Mapping[str, str]) -> Iterator[GraphMorphism]:
    """Backtracking enumeration of all homomorphisms extending a partial map.

    Yields in canonical order: dom elements are assigned in lexicographic
    order, nodes before edges, candidate targets in lexicographic order.
    """
    nodes = sorted(dom.nodes)
    edges = sorted(dom.edges)
    cod_nodes = sorted(cod.nodes)
    node_map: dict = {}
    edge_map: dict = {}

    for n, img in node_seed.items():
        if img not in cod.nodes:
            return
        node_map[n] = img
    for e, img in edge_seed.items():
        if img not in cod.edges:
            return
        # seeded edges force their endpoints
        for end, cend in ((dom.src[e], cod.src[img]), (dom.tgt[e], cod.tgt[img])):
            if node_map.setdefault(end, cend) != cend:
                return
        edge_map[e] = img

    def assign(i: int) -> Iterator[GraphMorphism]:
        if i == len(nodes) + len(edges):
            yield GraphMorphism(dom, cod, node_map, edge_map)
            return
        if i < len(nodes):
            n = nodes[i]
            if n in node_map:
                yield from assign(i + 1)
                return
            for img in cod_nodes:
                node_map[n] = img
                yield from assign(i + 1)
            node_map.pop(n, None)
            return
        e = edges[i - len(nodes)]
        if e in edge_map:
            yield from assign(i + 1)
            return
        s_img = node_map[dom.src[e]]
        t_img = node_map[dom.tgt[e]]
        for img in sorted(cod.edges):
            if cod.src[img] == s_img and cod.tgt[img] == t_img:
                edge_map[e] = img
                yield from assign(i + 1)
        edge_map.pop(e, None)

    yield from assign(0)


def enumerate_morphisms(a: Graph, g: Graph) -> list:
    """All graph homomorphisms a -> g in canonical order."""
    return list(_search(a, g, {}, {}))


def enumerate_morphisms_extending(dom: Graph, cod: Graph,
                                  node_seed: Mapping[str, str],
                                  edge_seed: Mapping[str, str]) -> list:
    """All homomorphisms dom -> cod extending the given partial assignment."""
    return list(_search(dom, cod, node_seed, edge_seed))


def enumerate_extensions(a: GraphMorphism, t: GraphMorphism) -> list:
    """All r: M -> G with a;r = t, for a: K -> M and t: K -> G."""
    if a.dom != t.dom:
        raise MismatchError("extension enumeration needs a common domain")
    node_seed: dict = {}
    edge_seed: dict = {}
    for k, img in a.node_map.items():
        if node_seed.setdefault(img, t.node_map[k]) != t.node_map[k]:
            return []
    for k, img in a.edge_map.items():
        if edge_seed.setdefault(img, t.edge_map[k]) != t.edge_map[k]:
            return []
    return list(_search(a.cod, t.cod, node_seed, edge_seed))
