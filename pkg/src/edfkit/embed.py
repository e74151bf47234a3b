"""Embedding graphs into CRGs, property membership, and clique spectra."""

from __future__ import annotations

from dataclasses import dataclass

from .crg import BLACK, WHITE, Crg, krs
from .errors import TrivialPropertyError
from .graphs import SimpleGraph, chromatic_number, clique_cover_number


def embeds(H: SimpleGraph, K: Crg) -> tuple[int, ...] | None:
    """Witness map from V(H) into V(K), or None.

    Edges of H must land on a shared black vertex or a black/gray edge;
    non-edges on a shared white vertex or a white/gray edge.  The search
    assigns H-vertices in descending degree order and tries white images
    first, so the returned witness is deterministic.
    """
    if H.n < 1:
        raise ValueError("embedding needs at least one vertex")
    h_adj = H.adjacency()
    order = sorted(range(H.n), key=lambda v: (-len(h_adj[v]), v))
    candidates = sorted(range(K.k), key=lambda u: (K.vcolors[u] != WHITE, u))
    image = [-1] * H.n

    def extend(i: int) -> bool:
        if i == H.n:
            return True
        hv = order[i]
        for u in candidates:
            ok = True
            for hw in order[:i]:
                g = image[hw]
                if hw in h_adj[hv]:
                    if u == g:
                        if K.vcolors[u] != BLACK:
                            ok = False
                            break
                    elif K.ecolor(u, g) == WHITE:
                        ok = False
                        break
                else:
                    if u == g:
                        if K.vcolors[u] != WHITE:
                            ok = False
                            break
                    elif K.ecolor(u, g) == BLACK:
                        ok = False
                        break
            if ok:
                image[hv] = u
                if extend(i + 1):
                    return True
                image[hv] = -1
        return False

    return tuple(image) if extend(0) else None


def in_property(K: Crg, forbidden) -> bool:
    """True iff no forbidden graph embeds into K."""
    forbidden = tuple(forbidden)
    if not forbidden:
        raise ValueError("forbidden set must be non-empty")
    return all(embeds(H, K) is None for H in forbidden)


@dataclass(frozen=True)
class CliqueSpectrum:
    """Extreme points of the admissible K(r,s) region plus chromatic data."""

    extreme_points: frozenset[tuple[int, int]]
    chi: int
    cochi: int
    chi_b: int

    def points(self) -> list[tuple[int, int]]:
        return sorted(self.extreme_points)


def clique_spectrum(forbidden) -> CliqueSpectrum:
    """Scan the downward-closed set of admissible (r,s) and report its extremes.

    Rows are scanned in ascending r, each bounded by the previous row's
    maximum s, which is valid because the region is downward closed.
    """
    forbidden = tuple(forbidden)
    if not forbidden:
        raise ValueError("forbidden set must be non-empty")
    cap = max(H.n for H in forbidden)
    smax: list[int] = []
    r = 0
    while r <= cap:
        if r > 0 and not in_property(krs(r, 0), forbidden):
            break
        limit = smax[r - 1] if r > 0 else cap
        s = 0
        while s < limit and in_property(krs(r, s + 1), forbidden):
            s += 1
        smax.append(s)
        r += 1
    if len(smax) == 1 and smax[0] == 0:
        raise TrivialPropertyError(
            "no single-vertex CRG avoids the forbidden set; the property is trivial"
        )
    extremes = set()
    for row in range(len(smax)):
        nxt = smax[row + 1] if row + 1 < len(smax) else -1
        if smax[row] > nxt:
            extremes.add((row, smax[row]))
    chi = min(chromatic_number(H) for H in forbidden)
    cochi = min(clique_cover_number(H) for H in forbidden)
    chi_b = 1 + max(row + smax[row] for row in range(len(smax)))
    return CliqueSpectrum(frozenset(extremes), chi, cochi, chi_b)
