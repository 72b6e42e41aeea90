import itertools
import pathlib

import pytest

from gsketch.ct import build_ct_fixtures
from gsketch.dsl import parse_files
from gsketch.graphs import GraphMorphism

FIXTURE_DIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "ct"

CORPUS = [FIXTURE_DIR / name for name in (
    "base.sketch", "example.sketch", "conditions.sketch",
    "rules.sketch", "deduce.sketch")]


@pytest.fixture(scope="session")
def fx():
    return build_ct_fixtures()


@pytest.fixture(scope="session")
def corpus_paths():
    return [str(p) for p in CORPUS]


@pytest.fixture(scope="session")
def doc(corpus_paths):
    return parse_files(corpus_paths)


def brute_force_morphisms(a, g):
    """Independent oracle: iterate every node map x edge map, filter the
    homomorphism law."""
    out = []
    a_nodes, a_edges = sorted(a.nodes), sorted(a.edges)
    g_nodes, g_edges = sorted(g.nodes), sorted(g.edges)
    if a_nodes and not g_nodes:
        return []
    if a_edges and not g_edges:
        return []
    for node_images in itertools.product(g_nodes, repeat=len(a_nodes)):
        node_map = dict(zip(a_nodes, node_images))
        for edge_images in itertools.product(g_edges, repeat=len(a_edges)):
            edge_map = dict(zip(a_edges, edge_images))
            if all(node_map[a.src[e]] == g.src[edge_map[e]]
                   and node_map[a.tgt[e]] == g.tgt[edge_map[e]]
                   for e in a_edges):
                out.append(GraphMorphism(a, g, node_map, edge_map))
    return out
