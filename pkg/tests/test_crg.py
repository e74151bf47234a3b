import itertools
import random

import pytest

from edfkit.crg import (
    canonical_form,
    are_twins,
    components,
    detect_structures,
    enumerate_black_crgs,
    fuse_twins,
    gray_graph,
    has_gray_cycle_in_range,
    invert_colors,
    krs,
    make_crg,
    parse_crg,
    partition_vertex,
    sub_crg,
)
from edfkit.errors import CapExceededError, ParseError
from edfkit.graphs import SimpleGraph


def random_crg(rng, k):
    v = "".join(rng.choice("wb") for _ in range(k))
    e = "".join(rng.choice("wbg") for _ in range(k * (k - 1) // 2))
    return make_crg(v, e)


def test_parse_crg_examples():
    assert parse_crg("crg wb\ng") == krs(1, 1)
    K = parse_crg("crg bb\nw")
    assert K.vcolors == ("b", "b") and K.ecolors == ("w",)
    assert parse_crg("crg w") == make_crg("w")
    K3 = parse_crg("crg wbb\ngg\nw")
    assert K3.ecolor(0, 1) == "g" and K3.ecolor(0, 2) == "g" and K3.ecolor(1, 2) == "w"


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("crg ww\nx", "illegal color"),
        ("crg ww\ngg", "expected 1"),
        ("crg ww", "edge rows"),
        ("crg xy\ng", "header"),
        ("", "header"),
    ],
)
def test_parse_crg_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_crg(text)


def test_krs():
    K = krs(2, 0)
    assert K.vcolors == ("w", "w") and K.ecolors == ("g",)
    assert krs(0, 1).vcolors == ("b",)
    assert krs(1, 2).ecolors == ("g", "g", "g")
    with pytest.raises(ValueError):
        krs(0, 0)


def test_are_twins():
    # gray edge between same-colored vertices is not a twin edge
    assert not are_twins(krs(2, 0), 0, 1)
    W = make_crg("ww", "w")
    assert are_twins(W, 0, 1)
    assert not are_twins(krs(1, 1), 0, 1)
    tri = make_crg("wwb", "wgg")
    assert are_twins(tri, 0, 1)
    with pytest.raises(ValueError):
        are_twins(W, 0, 2)


def test_fuse_twins():
    allwhite = make_crg("www", "www")
    assert fuse_twins(allwhite) == make_crg("w")
    assert fuse_twins(krs(1, 1)) == krs(1, 1)
    rng = random.Random(3)
    for _ in range(20):
        K = random_crg(rng, rng.randint(1, 5))
        reduced = fuse_twins(K)
        assert reduced.k <= K.k
        assert fuse_twins(reduced) == reduced
        assert not any(are_twins(reduced, v, w) for v, w in reduced.vertex_pairs())


def test_partition_vertex():
    single = make_crg("w")
    assert partition_vertex(single, 0) == make_crg("ww", "w")
    rng = random.Random(5)
    for _ in range(20):
        K = random_crg(rng, rng.randint(1, 4))
        v = rng.randrange(K.k)
        split = partition_vertex(K, v)
        assert split.k == K.k + 1
        assert are_twins(split, v, K.k)
        assert fuse_twins(split) == fuse_twins(K)
    with pytest.raises(ValueError):
        partition_vertex(single, 1)


def test_components():
    parts = components(krs(1, 2))
    assert [P.k for P in parts] == [1, 1, 1]
    assert components(make_crg("bb", "w"))[0].k == 2
    for r, s in [(2, 0), (1, 1), (2, 3)]:
        assert len(components(krs(r, s))) == r + s


def _oracle_parts(K):
    """Independent recomputation: connected parts of the non-gray adjacency."""
    adj = {v: set() for v in range(K.k)}
    for a, b in K.vertex_pairs():
        if K.ecolor(a, b) != "g":
            adj[a].add(b)
            adj[b].add(a)
    seen, parts = set(), []
    for v in range(K.k):
        if v in seen:
            continue
        stack, part = [v], {v}
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in part:
                    part.add(w)
                    stack.append(w)
        seen |= part
        parts.append(sorted(part))
    return sorted(parts, key=min)


def test_components_partition_with_gray_cuts():
    rng = random.Random(9)
    for _ in range(25):
        K = random_crg(rng, rng.randint(2, 5))
        expected = _oracle_parts(K)
        assert [sub_crg(K, vs) for vs in expected] == components(K)
        owner = {v: i for i, vs in enumerate(expected) for v in vs}
        for a, b in K.vertex_pairs():
            if owner[a] != owner[b]:
                assert K.ecolor(a, b) == "g"
        # no part splits further: within a part, the non-gray graph is connected
        assert sum(len(vs) for vs in expected) == K.k


def test_sub_crg():
    assert sub_crg(krs(1, 2), [0]) == krs(1, 0)
    K = make_crg("wbb", "gwb")
    assert sub_crg(K, range(K.k)) == K
    assert sub_crg(K, [1, 2]) == make_crg("bb", "b")
    with pytest.raises(ValueError):
        sub_crg(K, [])


def test_gray_graph():
    assert gray_graph(krs(1, 2)).edges == frozenset({(0, 1), (0, 2), (1, 2)})
    assert gray_graph(make_crg("bb", "w")).edges == frozenset()
    rng = random.Random(13)
    for _ in range(20):
        K = random_crg(rng, rng.randint(1, 5))
        G = gray_graph(K)
        grays = sum(c == "g" for c in K.ecolors)
        whites = sum(c == "w" for c in K.ecolors)
        blacks = sum(c == "b" for c in K.ecolors)
        assert len(G.edges) == grays
        assert grays + whites + blacks == K.k * (K.k - 1) // 2


def test_gray_graph_respects_sub_crg():
    rng = random.Random(17)
    for _ in range(20):
        K = random_crg(rng, rng.randint(2, 5))
        vs = sorted(rng.sample(range(K.k), rng.randint(1, K.k)))
        lookup = {old: new for new, old in enumerate(vs)}
        expected = frozenset(
            (lookup[a], lookup[b])
            for a, b in gray_graph(K).edges
            if a in lookup and b in lookup
        )
        assert gray_graph(sub_crg(K, vs)).edges == expected


def test_gray_cycles():
    assert has_gray_cycle_in_range(krs(0, 3), 3, 3)
    five_cycle = make_crg("b" * 5, _cycle_edge_string(5))
    assert not has_gray_cycle_in_range(five_cycle, 3, 4)
    assert has_gray_cycle_in_range(five_cycle, 3, 5)
    assert has_gray_cycle_in_range(krs(0, 4), 3, 4)
    with pytest.raises(ValueError):
        has_gray_cycle_in_range(krs(0, 3), 2, 3)


def _cycle_edge_string(k):
    cyc = {(i, (i + 1) % k) for i in range(k)}
    cyc = {(min(a, b), max(a, b)) for a, b in cyc}
    return "".join(
        "g" if pair in cyc else "w" for pair in itertools.combinations(range(k), 2)
    )


def test_detect_structures():
    rep = detect_structures(krs(0, 4))  # gray K4
    assert rep.gray_triangle and rep.gray_cycle4 and rep.gray_c4_plus
    assert not rep.gray_c4_plus_exact and not rep.gray_chordless_c4

    chordless = make_crg("b" * 4, _cycle_edge_string(4))
    rep = detect_structures(chordless)
    assert rep.gray_cycle4 and rep.gray_chordless_c4
    assert not rep.gray_c4_plus and not rep.gray_triangle

    k4_minus = make_crg("b" * 4, "gggggw")
    rep = detect_structures(k4_minus)
    assert rep.gray_c4_plus and rep.gray_c4_plus_exact

    k33 = {(a, b) for a in (0, 1, 2) for b in (3, 4, 5)}
    estring = "".join(
        "g" if (min(p), max(p)) in k33 else "w"
        for p in itertools.combinations(range(6), 2)
    )
    rep = detect_structures(make_crg("b" * 6, estring))
    assert rep.gray_k33_minus


def test_enumeration_counts_and_invariants():
    expected = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}
    for k, count in expected.items():
        reps = enumerate_black_crgs(k)
        assert len(reps) == count
        forms = {canonical_form(K) for K in reps}
        assert len(forms) == count
        for K in reps:
            assert all(c == "b" for c in K.vcolors)
            assert all(c in "wg" for c in K.ecolors)
    # gray edge sorts before white edge
    two = enumerate_black_crgs(2)
    assert two[0].ecolors == ("g",) and two[1].ecolors == ("w",)
    with pytest.raises(CapExceededError):
        enumerate_black_crgs(9)


def test_canonical_form():
    assert canonical_form(krs(1, 1)) == canonical_form(make_crg("bw", "g"))
    assert canonical_form(make_crg("bb", "g")) != canonical_form(make_crg("bb", "w"))
    rng = random.Random(23)
    for _ in range(30):
        K = random_crg(rng, rng.randint(1, 6))
        perm = list(range(K.k))
        rng.shuffle(perm)
        vcol = "".join(K.vcolors[perm[i]] for i in range(K.k))
        ecol = "".join(
            K.ecolor(perm[a], perm[b]) for a, b in itertools.combinations(range(K.k), 2)
        )
        assert canonical_form(make_crg(vcol, ecol)) == canonical_form(K)


def test_invert_colors():
    K = make_crg("wb", "g")
    assert invert_colors(K) == make_crg("bw", "g")
    rng = random.Random(29)
    for _ in range(10):
        K = random_crg(rng, rng.randint(1, 5))
        assert invert_colors(invert_colors(K)) == K
