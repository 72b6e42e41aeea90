import pytest

from gsketch.category import (PushoutResult, default_test_graphs,
                              initial_graph, initial_morphism, pullback,
                              pushout, verify_pullback, verify_pushout)
from gsketch.graphs import (EMPTY_GRAPH, MismatchError, compose,
                            enumerate_morphisms, graph_of, identity,
                            is_isomorphism, morphism_of)

G = graph_of("", "a:1->2 b:2->3 c:3->4 d:4->5 e:1->3 f:1->3 g:3->5")


class TestInitial:
    def test_initial_graph_is_empty(self):
        assert initial_graph() == EMPTY_GRAPH

    def test_initial_morphism_of_empty(self):
        assert initial_morphism(EMPTY_GRAPH) == identity(EMPTY_GRAPH)

    def test_initial_morphism_shape(self):
        m = initial_morphism(G)
        assert m.cod == G and m.node_map == {} and m.edge_map == {}

    def test_initiality(self):
        assert enumerate_morphisms(initial_graph(), G) == [initial_morphism(G)]


class TestPushout:
    def test_empty_apex_is_disjoint_union(self):
        b, a = graph_of("x"), graph_of("y")
        po = pushout(initial_morphism(b), initial_morphism(a))
        assert po.object.nodes == {"L:x", "R:y"}
        assert verify_pushout(initial_morphism(b), initial_morphism(a), po)

    def test_along_identity(self):
        c = graph_of("", "k:x->y")
        r = morphism_of(c, G, edges={"k": "a"})
        po = pushout(identity(c), r)
        assert is_isomorphism(po.right)
        assert verify_pushout(identity(c), r, po)

    def test_merge_parallel_edges(self):
        b = graph_of("", "e3:v1->v3 e4:v1->v3")
        a = graph_of("", "e:v1->v3")
        iota = morphism_of(b, a, edges={"e3": "e", "e4": "e"})
        po = pushout(identity(b), iota)
        assert len(po.object.edges) == 1
        assert verify_pushout(identity(b), iota, po)

    def test_canonical_naming(self):
        # classes are named after their lexicographically least tagged member
        b, a = graph_of("p"), graph_of("q")
        c = graph_of("z")
        m = morphism_of(c, b, nodes={"z": "p"})
        r = morphism_of(c, a, nodes={"z": "q"})
        po = pushout(m, r)
        assert po.object.nodes == {"L:p"}

    def test_mismatch(self):
        with pytest.raises(MismatchError):
            pushout(identity(G), identity(graph_of("x")))

    def test_symmetry_up_to_iso(self):
        c = graph_of("", "k:x->y")
        b = graph_of("", "k:x->y l:x->y")
        m = morphism_of(c, b, edges={"k": "k"})
        r = morphism_of(c, G, edges={"k": "a"})
        d1 = pushout(m, r).object
        d2 = pushout(r, m).object
        assert any(is_isomorphism(phi) for phi in enumerate_morphisms(d1, d2))


class TestPullback:
    def test_along_identity(self):
        b = graph_of("", "k:x->y")
        m = morphism_of(b, G, edges={"k": "b"})
        pb = pullback(m, identity(G))
        assert is_isomorphism(pb.left)
        assert verify_pullback(m, identity(G), pb)

    def test_single_nodes(self):
        c = graph_of("v")
        m = morphism_of(graph_of("x"), c, nodes={"x": "v"})
        r = morphism_of(graph_of("y"), c, nodes={"y": "v"})
        pb = pullback(m, r)
        assert pb.object.nodes == {"x|y"} and not pb.object.edges

    def test_distinct_parallel_edges_have_empty_fiber(self):
        arrow = graph_of("", "e:v1->v2")
        m = morphism_of(arrow, G, edges={"e": "e"})
        r = morphism_of(arrow, G, edges={"e": "f"})
        pb = pullback(m, r)
        assert pb.object.nodes == {"v1|v1", "v2|v2"}
        assert pb.object.edges == frozenset()
        assert verify_pullback(m, r, pb)

    def test_projections_jointly_monic(self):
        arrow = graph_of("", "e:v1->v2")
        m = morphism_of(arrow, G, edges={"e": "b"})
        r = morphism_of(arrow, G, edges={"e": "b"})
        pb = pullback(m, r)
        keys = {(pb.left.node_map[n], pb.right.node_map[n])
                for n in pb.object.nodes}
        assert len(keys) == len(pb.object.nodes)

    def test_mismatch(self):
        with pytest.raises(MismatchError):
            pullback(identity(G), identity(graph_of("x")))


class TestVerifiers:
    def test_rejects_wrong_disjoint_union(self):
        # pretending a pushout with identifications is a plain coproduct
        c = graph_of("z")
        b, a = graph_of("p"), graph_of("q")
        m = morphism_of(c, b, nodes={"z": "p"})
        r = morphism_of(c, a, nodes={"z": "q"})
        union = graph_of("L:p R:q")
        fake = PushoutResult(union,
                             morphism_of(b, union, nodes={"p": "L:p"}),
                             morphism_of(a, union, nodes={"q": "R:q"}))
        assert not verify_pushout(m, r, fake)

    def test_all_spans_over_small_fixtures(self):
        pool = default_test_graphs()
        c = graph_of("", "k:x->y")
        for b in pool:
            for m in enumerate_morphisms(c, b):
                for a in pool:
                    for r in enumerate_morphisms(c, a):
                        assert verify_pushout(m, r, pushout(m, r))

    def test_all_cospans_over_small_fixtures(self):
        pool = default_test_graphs()
        c = graph_of("", "k:x->y")
        for b in pool:
            for m in enumerate_morphisms(b, c):
                for a in pool:
                    for r in enumerate_morphisms(a, c):
                        assert verify_pullback(m, r, pullback(m, r))

    def test_commutativity(self):
        c = graph_of("", "k:x->y")
        r = morphism_of(c, G, edges={"k": "a"})
        po = pushout(identity(c), r)
        assert compose(identity(c), po.left) == compose(r, po.right)
