"""Colored regularity graphs: two-colored vertices, three-colored complete edge sets.

A CRG is a complete graph whose vertices are white or black and whose edges are
white, black or gray.  Edge colors are stored as a flat upper-triangle tuple in
row-major order: (0,1), (0,2), ..., (0,k-1), (1,2), ...
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapExceededError, ParseError
from .graphs import SimpleGraph

WHITE, BLACK, GRAY = "w", "b", "g"

CANONICAL_CAP = 10
ENUMERATION_CAP = 8

# Digit order matches character order 'b' < 'g' < 'w', so packed integer
# comparisons agree with lexicographic string comparisons.
_COLOR_DIGIT = {"b": 0, "g": 1, "w": 2}
_DIGIT_COLOR = "bgw"
_PERM_BATCH = 200_000


def pair_index(i: int, j: int, k: int) -> int:
    """Flat index of edge (i, j) in row-major upper-triangle order."""
    if i > j:
        i, j = j, i
    return i * (2 * k - i - 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class Crg:
    vcolors: tuple[str, ...]
    ecolors: tuple[str, ...]

    def __post_init__(self) -> None:
        k = len(self.vcolors)
        if k < 1:
            raise ValueError("a CRG needs at least one vertex")
        if any(c not in (WHITE, BLACK) for c in self.vcolors):
            raise ValueError("vertex colors must be 'w' or 'b'")
        if len(self.ecolors) != k * (k - 1) // 2:
            raise ValueError("edge color count does not match the vertex count")
        if any(c not in (WHITE, BLACK, GRAY) for c in self.ecolors):
            raise ValueError("edge colors must be 'w', 'b' or 'g'")

    @property
    def k(self) -> int:
        return len(self.vcolors)

    def ecolor(self, i: int, j: int) -> str:
        if i == j:
            raise ValueError("no diagonal edges")
        return self.ecolors[pair_index(i, j, self.k)]

    def vertex_pairs(self):
        return itertools.combinations(range(self.k), 2)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Crg({''.join(self.vcolors)}:{''.join(self.ecolors)})"


def make_crg(vcolors: str, ecolors: str = "") -> Crg:
    return Crg(tuple(vcolors), tuple(ecolors))


def parse_crg(text: str) -> Crg:
    """Parse CRG-file text: ``crg <vcolors>`` then k-1 upper-triangle rows."""
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or not re.fullmatch(r"crg\s+[wb]+", lines[0].strip()):
        raise ParseError("line 1: expected header 'crg <vcolors>' over {w,b}")
    vcolors = lines[0].split()[1]
    k = len(vcolors)
    if len(lines) - 1 != k - 1:
        raise ParseError(f"expected {k - 1} edge rows after the header, found {len(lines) - 1}")
    rows = []
    for i in range(1, k):
        row = lines[i].strip()
        if len(row) != k - i:
            raise ParseError(f"line {i + 1}: expected {k - i} edge colors, found {len(row)}")
        for c in row:
            if c not in (WHITE, BLACK, GRAY):
                raise ParseError(f"line {i + 1}: illegal color {c!r}")
        rows.append(row)
    return make_crg(vcolors, "".join(rows))


def krs(r: int, s: int) -> Crg:
    """CRG with r white vertices, s black vertices and all edges gray."""
    if r < 0 or s < 0 or r + s < 1:
        raise ValueError("K(r,s) needs r, s >= 0 and r + s >= 1")
    k = r + s
    return make_crg(WHITE * r + BLACK * s, GRAY * (k * (k - 1) // 2))


def are_twins(K: Crg, v: int, w: int) -> bool:
    """True iff v, w and the edge vw share one color and v, w agree elsewhere."""
    k = K.k
    if v == w:
        raise ValueError("twin test needs two distinct vertices")
    if not (0 <= v < k and 0 <= w < k):
        raise ValueError("vertex index out of range")
    if K.vcolors[v] != K.vcolors[w] or K.ecolor(v, w) != K.vcolors[v]:
        return False
    return all(K.ecolor(v, x) == K.ecolor(w, x) for x in range(k) if x != v and x != w)


def sub_crg(K: Crg, vertices) -> Crg:
    """Induced sub-CRG on a non-empty vertex subset, preserving relative order."""
    vs = sorted(set(vertices))
    if not vs:
        raise ValueError("vertex subset must be non-empty")
    if vs[0] < 0 or vs[-1] >= K.k:
        raise ValueError("vertex index out of range")
    vcol = "".join(K.vcolors[x] for x in vs)
    ecol = "".join(K.ecolor(a, b) for a, b in itertools.combinations(vs, 2))
    return make_crg(vcol, ecol)


def fuse_twins(K: Crg) -> Crg:
    """Fuse twin pairs until none remain; the result is reduced."""
    cur = K
    while cur.k > 1:
        pair = next(
            ((v, w) for v, w in cur.vertex_pairs() if are_twins(cur, v, w)), None
        )
        if pair is None:
            return cur
        cur = sub_crg(cur, [x for x in range(cur.k) if x != pair[1]])
    return cur


def partition_vertex(K: Crg, v: int) -> Crg:
    """Split v into a twin pair; the new vertex is appended as index k."""
    if not 0 <= v < K.k:
        raise ValueError("vertex index out of range")
    k2 = K.k + 1
    vcolors = K.vcolors + (K.vcolors[v],)
    colors: dict[tuple[int, int], str] = {}
    for a, b in K.vertex_pairs():
        colors[(a, b)] = K.ecolor(a, b)
    for x in range(K.k):
        # vv' takes v's vertex color, the unique choice making v, v' twins.
        colors[(x, K.k)] = K.vcolors[v] if x == v else K.ecolor(v, x)
    ecol = "".join(colors[(a, b)] for a, b in itertools.combinations(range(k2), 2))
    return make_crg("".join(vcolors), ecol)


def components(K: Crg) -> list[Crg]:
    """Finest partition into sub-CRGs joined to each other only by gray edges."""
    parent = list(range(K.k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in K.vertex_pairs():
        if K.ecolor(i, j) != GRAY:
            parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for v in range(K.k):
        groups.setdefault(find(v), []).append(v)
    parts = sorted(groups.values(), key=min)
    return [sub_crg(K, part) for part in parts]


def gray_graph(K: Crg) -> SimpleGraph:
    """Simple graph on V(K) whose edges are exactly the gray edges."""
    return SimpleGraph(
        K.k, frozenset(pair for pair in K.vertex_pairs() if K.ecolor(*pair) == GRAY)
    )


def has_gray_cycle_in_range(K: Crg, lo: int, hi: int) -> bool:
    """True iff the gray graph has a (not necessarily induced) cycle of length in [lo, hi]."""
    if lo < 3:
        raise ValueError("cycle lengths start at 3")
    if hi < lo:
        raise ValueError("empty length range")
    adj = gray_graph(K).adjacency()
    k = K.k
    if lo > k:
        return False

    def search(root: int, v: int, depth: int, visited: set[int]) -> bool:
        for u in adj[v]:
            if u == root and depth >= lo:
                return True
            if u > root and u not in visited and depth < hi:
                visited.add(u)
                if search(root, u, depth + 1, visited):
                    return True
                visited.discard(u)
        return False

    for root in range(k):
        if search(root, root, 1, {root}):
            return True
    return False


@dataclass(frozen=True)
class StructureReport:
    """Gray-subgraph containment flags (subgraph sense unless noted)."""

    gray_edge: bool
    gray_triangle: bool
    gray_cycle4: bool
    gray_c4_plus: bool          # four vertices spanning at least 5 gray edges
    gray_c4_plus_exact: bool    # four vertices with exactly 5 gray edges
    gray_c5_plus_plus: bool     # five vertices with a gray 5-cycle and two gray chords
    gray_chordless_c4: bool     # four vertices inducing exactly a gray 4-cycle
    gray_k33_minus: bool        # complete bipartite 3+3 minus at most one edge


def detect_structures(K: Crg) -> StructureReport:
    G = gray_graph(K)
    adj = G.adjacency()
    n = K.k

    def gray(a: int, b: int) -> bool:
        return b in adj[a]

    gray_edge = bool(G.edges)
    gray_triangle = any(
        gray(a, b) and gray(a, c) and gray(b, c)
        for a, b, c in itertools.combinations(range(n), 3)
    )

    gray_cycle4 = gray_c4_plus = gray_c4_plus_exact = gray_chordless_c4 = False
    for quad in itertools.combinations(range(n), 4):
        count = sum(gray(a, b) for a, b in itertools.combinations(quad, 2))
        if count >= 5:
            gray_c4_plus = True
        if count == 5:
            gray_c4_plus_exact = True
        a, b, c, d = quad
        for cyc in ((a, b, c, d), (a, c, b, d), (a, b, d, c)):
            w, x, y, z = cyc
            if gray(w, x) and gray(x, y) and gray(y, z) and gray(z, w):
                gray_cycle4 = True
                if not gray(w, y) and not gray(x, z):
                    gray_chordless_c4 = True

    gray_c5_plus_plus = False
    for quint in itertools.combinations(range(n), 5):
        count = sum(gray(a, b) for a, b in itertools.combinations(quint, 2))
        if count < 7:
            continue
        first, *rest = quint
        for perm in itertools.permutations(rest):
            if perm[0] > perm[-1]:
                continue  # each cycle twice otherwise
            cyc = (first, *perm)
            if all(gray(cyc[i], cyc[(i + 1) % 5]) for i in range(5)):
                gray_c5_plus_plus = True
                break
        if gray_c5_plus_plus:
            break

    gray_k33_minus = False
    for six in itertools.combinations(range(n), 6):
        for left in itertools.combinations(six, 3):
            if six[0] not in left:
                continue  # fix the split orientation
            right = tuple(v for v in six if v not in left)
            crossing = sum(gray(a, b) for a in left for b in right)
            if crossing >= 8:
                gray_k33_minus = True
                break
        if gray_k33_minus:
            break

    return StructureReport(
        gray_edge=gray_edge,
        gray_triangle=gray_triangle,
        gray_cycle4=gray_cycle4,
        gray_c4_plus=gray_c4_plus,
        gray_c4_plus_exact=gray_c4_plus_exact,
        gray_c5_plus_plus=gray_c5_plus_plus,
        gray_chordless_c4=gray_chordless_c4,
        gray_k33_minus=gray_k33_minus,
    )


def invert_colors(K: Crg) -> Crg:
    """Swap white and black on vertices and edges; gray stays gray."""
    swap = {WHITE: BLACK, BLACK: WHITE, GRAY: GRAY}
    return Crg(tuple(swap[c] for c in K.vcolors), tuple(swap[c] for c in K.ecolors))


# --- canonical forms ---------------------------------------------------------

def _edge_gather(perms: np.ndarray, k: int) -> np.ndarray:
    """Per permutation, source edge index for each target edge position."""
    m = k * (k - 1) // 2
    cols = np.empty((perms.shape[0], m), dtype=np.int64)
    x = 0
    for a in range(k):
        ta = perms[:, a]
        for b in range(a + 1, k):
            tb = perms[:, b]
            lo = np.minimum(ta, tb)
            hi = np.maximum(ta, tb)
            cols[:, x] = lo * (2 * k - lo - 1) // 2 + (hi - lo - 1)
            x += 1
    return cols


@lru_cache(maxsize=None)
def _perm_tables(k: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(k))), dtype=np.int64)
    return perms, _edge_gather(perms, k)


def _pack_keys(rows: np.ndarray) -> list[np.ndarray]:
    """Pack digit rows (< 4) into int64 chunks preserving lexicographic order."""
    keys = []
    for start in range(0, rows.shape[1], 31):
        chunk = rows[:, start : start + 31]
        weights = 4 ** np.arange(chunk.shape[1] - 1, -1, -1, dtype=np.int64)
        keys.append(chunk @ weights)
    return keys


def _best_row(vdig: np.ndarray, edig: np.ndarray, perms: np.ndarray, eidx: np.ndarray):
    rows = np.concatenate([vdig[perms], edig[eidx]], axis=1)
    keys = _pack_keys(rows)
    order = np.lexsort(tuple(reversed(keys)))
    best = order[0]
    return tuple(int(key[best]) for key in keys), rows[best]


@lru_cache(maxsize=65536)
def canonical_form(K: Crg) -> str:
    """Color string minimal over all vertex relabelings: ``<vcolors>:<ecolors>``."""
    k = K.k
    if k > CANONICAL_CAP:
        raise CapExceededError(f"canonical form capped at {CANONICAL_CAP} vertices")
    if k == 1:
        return K.vcolors[0] + ":"
    vdig = np.array([_COLOR_DIGIT[c] for c in K.vcolors], dtype=np.int64)
    edig = np.array([_COLOR_DIGIT[c] for c in K.ecolors], dtype=np.int64)
    if k <= 8:
        perms, eidx = _perm_tables(k)
        _, row = _best_row(vdig, edig, perms, eidx)
    else:
        best_key = None
        row = None
        it = itertools.permutations(range(k))
        while True:
            batch = list(itertools.islice(it, _PERM_BATCH))
            if not batch:
                break
            perms = np.array(batch, dtype=np.int64)
            key, cand = _best_row(vdig, edig, perms, _edge_gather(perms, k))
            if best_key is None or key < best_key:
                best_key, row = key, cand
    chars = "".join(_DIGIT_COLOR[d] for d in row)
    return chars[:k] + ":" + chars[k:]


def crg_from_canonical(form: str) -> Crg:
    vcol, ecol = form.split(":")
    return make_crg(vcol, ecol)


@lru_cache(maxsize=None)
def _black_edge_strings(k: int) -> tuple[str, ...]:
    """Lex-minimal edge strings over {g,w} of the k-vertex isomorphism classes.

    Edges are packed into integers (gray=0, white=1, big-endian), so the
    minimum over a permutation orbit is the lexicographically minimal string.
    Every class on k-1 vertices is extended by all neighborhoods of one new
    vertex; up to 7 vertices whole orbits are marked in a seen-set so each
    class pays for one orbit only, beyond that orbits are recomputed per
    candidate to bound memory.
    """
    if k == 1:
        return ("",)
    m = k * (k - 1) // 2
    _, eidx = _perm_tables(k)
    weights = 1 << np.arange(m - 1, -1, -1, dtype=np.int64)
    old_slots = [pair_index(i, j, k) for i, j in itertools.combinations(range(k - 1), 2)]
    new_slots = [pair_index(i, k - 1, k) for i in range(k - 1)]
    mark_orbits = k <= 7
    seen: set[int] = set()
    mins: set[int] = set()
    nbs = np.arange(1 << (k - 1), dtype=np.int64)
    gray_new = (nbs[:, None] >> np.arange(k - 1, dtype=np.int64)) & 1
    for parent in _black_edge_strings(k - 1):
        base = np.zeros(m, dtype=np.int64)
        for slot, c in zip(old_slots, parent):
            if c == WHITE:
                base[slot] = 1
        cand_bits = np.tile(base, (len(nbs), 1))
        cand_bits[:, new_slots] = 1 - gray_new
        cand_ints = cand_bits @ weights
        for idx in range(len(nbs)):
            cand = int(cand_ints[idx])
            if mark_orbits and cand in seen:
                continue
            orbit = cand_bits[idx][eidx] @ weights
            mins.add(int(orbit.min()))
            if mark_orbits:
                seen.update(orbit.tolist())
    out = []
    for val in sorted(mins):
        out.append(
            "".join(WHITE if val >> (m - 1 - pos) & 1 else GRAY for pos in range(m))
        )
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_black_crgs(k: int) -> tuple[Crg, ...]:
    """One representative per isomorphism class: k black vertices, white/gray edges.

    Representatives carry the lexicographically minimal edge-color string and
    are returned in ascending order of that string.
    """
    if k < 1:
        raise ValueError("need at least one vertex")
    if k > ENUMERATION_CAP:
        raise CapExceededError(f"enumeration capped at {ENUMERATION_CAP} vertices")
    return tuple(make_crg(BLACK * k, s) for s in _black_edge_strings(k))
