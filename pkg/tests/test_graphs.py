import itertools
import random

import pytest

from edfkit.errors import CapExceededError, ParseError
from edfkit.graphs import (
    SimpleGraph,
    chromatic_number,
    clique_cover_number,
    complement,
    has_induced,
    is_isomorphic,
    named_graph,
    parse_graph,
)


def test_parse_triangle():
    G = parse_graph("graph 3\n0 1\n1 2\n0 2")
    assert G.n == 3
    assert G.edges == frozenset({(0, 1), (1, 2), (0, 2)})


def test_parse_edgeless_and_blank_lines():
    G = parse_graph("graph 2\n\n")
    assert G.n == 2
    assert not G.edges


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("graph 3\n0 3", "line 2"),
        ("graph 3\n0 1\n0 1", "line 3"),
        ("graph 3\n1 0", "u < v"),
        ("graph 3\n0 x", "line 2"),
        ("graf 3\n", "line 1"),
        ("", "line 1"),
    ],
)
def test_parse_errors_name_lines(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_graph(text)


def test_named_families():
    assert len(named_graph("C5").edges) == 5
    assert len(named_graph("K4").edges) == 6
    assert named_graph("E3").edges == frozenset()
    for bad in ("C2", "K0", "X3", "C", "k4"):
        with pytest.raises(ValueError):
            named_graph(bad)


def test_complement_examples():
    assert complement(named_graph("K4")).edges == frozenset()
    c5 = named_graph("C5")
    assert is_isomorphic(complement(c5), c5)


def test_complement_involution_random():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(1, 8)
        edges = [p for p in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        G = SimpleGraph.from_edges(n, edges)
        assert complement(complement(G)) == G


def test_chromatic_examples():
    assert chromatic_number(named_graph("C9")) == 3
    assert chromatic_number(named_graph("C6")) == 2
    assert chromatic_number(named_graph("K4")) == 4
    with pytest.raises(ValueError):
        chromatic_number(SimpleGraph(0, frozenset()))
    with pytest.raises(CapExceededError):
        chromatic_number(named_graph("K17"))


def test_chromatic_cycle_parity():
    for h in range(3, 13):
        assert chromatic_number(named_graph(f"C{h}")) == (2 if h % 2 == 0 else 3)


def test_chromatic_bounds_exhaustive_to_six():
    for n in range(1, 7):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = frozenset(pairs[i] for i in range(len(pairs)) if mask >> i & 1)
            chi = chromatic_number(SimpleGraph(n, edges))
            assert chi <= n
            assert (chi == n) == (len(edges) == len(pairs))


def test_clique_cover_examples():
    assert clique_cover_number(named_graph("C9")) == 5
    assert clique_cover_number(named_graph("K4")) == 1
    assert clique_cover_number(named_graph("E3")) == 3
    assert clique_cover_number(named_graph("C3")) == 1
    for h in range(4, 13):
        assert clique_cover_number(named_graph(f"C{h}")) == (h + 1) // 2


def test_has_induced_examples():
    assert has_induced(named_graph("K4"), named_graph("C3"))
    assert not has_induced(named_graph("K4"), named_graph("C4"))
    assert has_induced(named_graph("C6"), named_graph("E3"))


def test_has_induced_monotone_under_induced_extension():
    rng = random.Random(11)
    H = named_graph("C4")
    for _ in range(25):
        n = rng.randint(4, 6)
        edges = [p for p in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        G = SimpleGraph.from_edges(n, edges)
        if not has_induced(G, H):
            continue
        # extend G by one vertex with arbitrary edges; G stays induced
        extra = [(v, n) for v in range(n) if rng.random() < 0.5]
        G2 = SimpleGraph.from_edges(n + 1, list(G.edges) + extra)
        assert has_induced(G2, H)


def test_is_isomorphic_basics():
    c4 = named_graph("C4")
    relabeled = SimpleGraph.from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)])
    assert is_isomorphic(c4, relabeled)
    assert not is_isomorphic(c4, named_graph("K4"))
