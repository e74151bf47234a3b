"""Simple labeled graphs, named families, and exact small-graph invariants."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import CapExceededError, ParseError

CHROMATIC_CAP = 16
ISO_CAP = 8


@dataclass(frozen=True)
class SimpleGraph:
    """Immutable simple graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.edges:
            if not 0 <= u < v < self.n:
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, pairs) -> "SimpleGraph":
        norm = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            norm.add((min(u, v), max(u, v)))
        return cls(n, frozenset(norm))

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"SimpleGraph(n={self.n}, m={len(self.edges)})"


def parse_graph(text: str) -> SimpleGraph:
    """Parse graph-file text: header ``graph <n>`` then one ``<u> <v>`` edge per line."""
    lines = text.splitlines()
    if not lines or not re.fullmatch(r"graph\s+\d+", lines[0].strip()):
        raise ParseError("line 1: expected header 'graph <n>'")
    n = int(lines[0].split()[1])
    seen: set[tuple[int, int]] = set()
    for idx, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"line {idx}: expected '<u> <v>' with non-negative integers")
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise ParseError(f"line {idx}: vertex index out of range (n={n})")
        if u >= v:
            raise ParseError(f"line {idx}: expected u < v")
        if (u, v) in seen:
            raise ParseError(f"line {idx}: duplicate edge {u} {v}")
        seen.add((u, v))
    return SimpleGraph(n, frozenset(seen))


def named_graph(name: str) -> SimpleGraph:
    """Build C<h> (cycle, h>=3), K<h> (complete, h>=1) or E<h> (edgeless, h>=1)."""
    m = re.fullmatch(r"([CKE])(\d+)", name.strip())
    if not m:
        raise ValueError(f"unknown graph token {name!r}")
    kind, h = m.group(1), int(m.group(2))
    if kind == "C":
        if h < 3:
            raise ValueError(f"cycle token needs h >= 3, got {name!r}")
        return SimpleGraph.from_edges(h, ((i, (i + 1) % h) for i in range(h)))
    if h < 1:
        raise ValueError(f"graph token needs h >= 1, got {name!r}")
    if kind == "K":
        return SimpleGraph.from_edges(h, itertools.combinations(range(h), 2))
    return SimpleGraph(h, frozenset())


def complement(G: SimpleGraph) -> SimpleGraph:
    edges = frozenset(
        (u, v) for u, v in itertools.combinations(range(G.n), 2) if (u, v) not in G.edges
    )
    return SimpleGraph(G.n, edges)


def _adjacency_masks(G: SimpleGraph) -> list[int]:
    masks = [0] * G.n
    for u, v in G.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _greedy_clique_size(masks: list[int]) -> int:
    n = len(masks)
    best = 1 if n else 0
    order = sorted(range(n), key=lambda v: -bin(masks[v]).count("1"))
    for seed in order:
        clique = [seed]
        allowed = masks[seed]
        for v in order:
            if allowed >> v & 1:
                clique.append(v)
                allowed &= masks[v]
        best = max(best, len(clique))
    return best


def _greedy_coloring_size(masks: list[int], order: list[int]) -> int:
    color_masks: list[int] = []
    for v in order:
        for i, cm in enumerate(color_masks):
            if not cm & masks[v]:
                color_masks[i] |= 1 << v
                break
        else:
            color_masks.append(1 << v)
    return len(color_masks)


def _k_colorable(masks: list[int], order: list[int], k: int) -> bool:
    color_masks = [0] * k

    def assign(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        vb = 1 << v
        for c in range(k):
            if color_masks[c] & masks[v]:
                continue
            fresh = color_masks[c] == 0
            color_masks[c] |= vb
            if assign(i + 1):
                return True
            color_masks[c] ^= vb
            if fresh:
                break  # empty color classes are interchangeable
        return False

    return assign(0)


def chromatic_number(G: SimpleGraph) -> int:
    """Exact chromatic number by branch and bound (greedy upper, clique lower)."""
    if G.n == 0:
        raise ValueError("chromatic number is undefined for the empty graph")
    if G.n > CHROMATIC_CAP:
        raise CapExceededError(f"chromatic number capped at {CHROMATIC_CAP} vertices")
    if not G.edges:
        return 1
    masks = _adjacency_masks(G)
    order = sorted(range(G.n), key=lambda v: (-bin(masks[v]).count("1"), v))
    ub = _greedy_coloring_size(masks, order)
    lb = _greedy_clique_size(masks)
    for k in range(lb, ub):
        if _k_colorable(masks, order, k):
            return k
    return ub


def clique_cover_number(G: SimpleGraph) -> int:
    """Minimum number of cliques covering the vertices."""
    return chromatic_number(complement(G))


def has_induced(G: SimpleGraph, H: SimpleGraph) -> bool:
    """True iff some injective map embeds H into G preserving edges and non-edges."""
    if H.n > G.n:
        return False
    if H.n == 0:
        return True
    g_adj = _adjacency_masks(G)
    h_adj = H.adjacency()
    order = sorted(range(H.n), key=lambda v: (-len(h_adj[v]), v))
    image = [-1] * H.n
    used = [False] * G.n

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        hv = order[i]
        for gv in range(G.n):
            if used[gv]:
                continue
            ok = True
            for hw in order[:i]:
                gw = image[hw]
                if (hw in h_adj[hv]) != bool(g_adj[gv] >> gw & 1):
                    ok = False
                    break
            if ok:
                image[hv] = gv
                used[gv] = True
                if extend(i + 1):
                    return True
                used[gv] = False
                image[hv] = -1
        return False

    return extend(0)


def is_isomorphic(G: SimpleGraph, H: SimpleGraph) -> bool:
    """Exhaustive isomorphism test; intended for small test fixtures only."""
    if G.n != H.n or len(G.edges) != len(H.edges):
        return False
    if G.n > ISO_CAP:
        raise CapExceededError(f"isomorphism test capped at {ISO_CAP} vertices")
    g_deg = sorted(len(a) for a in G.adjacency())
    if g_deg != sorted(len(a) for a in H.adjacency()):
        return False
    target = H.edges
    for perm in itertools.permutations(range(G.n)):
        if all(
            (min(perm[u], perm[v]), max(perm[u], perm[v])) in target for u, v in G.edges
        ):
            return True
    return False
