"""CRG matrix, linear/quadratic functionals, p-cores, and local diagnostics.

The quadratic functional minimizes x^T M x over the probability simplex.  M can
be indefinite (white edges between black vertices), so the global minimum is
found by enumerating every support face and solving its stationarity system
exactly; interior candidates with strictly positive weights are compared and
boundary minima are picked up on the corresponding sub-faces.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .crg import BLACK, GRAY, WHITE, Crg
from .crg import components as crg_components
from .errors import CapExceededError

SUPPORT_CAP = 16
PCORE_CAP = 10
P_EPS = 1e-9

_POSITIVE_TOL = 1e-11
_RESID_TOL = 1e-7


def clamp_p(p: float) -> float:
    """Clamp p into [1e-9, 1-1e-9], warning when the input lies outside."""
    p = float(p)
    if p != p:
        raise ValueError("p must be a number")
    if p < P_EPS or p > 1 - P_EPS:
        clipped = min(max(p, P_EPS), 1 - P_EPS)
        warnings.warn(f"p={p!r} clamped to {clipped!r}", RuntimeWarning, stacklevel=3)
        return clipped
    return p


def matrix(K: Crg, p: float) -> np.ndarray:
    """Symmetric k x k matrix: p on white, 1-p on black, 0 on gray."""
    p = clamp_p(p)
    value = {WHITE: p, BLACK: 1.0 - p, GRAY: 0.0}
    k = K.k
    M = np.zeros((k, k))
    for i in range(k):
        M[i, i] = value[K.vcolors[i]]
    for i, j in K.vertex_pairs():
        M[i, j] = M[j, i] = value[K.ecolor(i, j)]
    return M


def f(K: Crg, p: float) -> float:
    """Uniform-weights value: counts white/black vertices and edges directly."""
    p = clamp_p(p)
    vw = sum(c == WHITE for c in K.vcolors)
    vb = K.k - vw
    ew = sum(c == WHITE for c in K.ecolors)
    eb = sum(c == BLACK for c in K.ecolors)
    return (p * (vw + 2 * ew) + (1 - p) * (vb + 2 * eb)) / K.k**2


@lru_cache(maxsize=None)
def _subsets_by_size(k: int) -> tuple[np.ndarray, ...]:
    return tuple(
        np.array(list(itertools.combinations(range(k), s)), dtype=np.int64)
        for s in range(1, k + 1)
    )


def _solve_single(A: np.ndarray) -> np.ndarray:
    """One stationarity system; min-norm solution when singular but consistent."""
    rhs = np.ones(A.shape[0])
    try:
        y = np.linalg.solve(A, rhs)
        if np.isfinite(y).all() and np.abs(A @ y - 1.0).max() <= _RESID_TOL:
            return y
    except np.linalg.LinAlgError:
        pass
    y = np.linalg.lstsq(A, rhs, rcond=None)[0]
    if np.abs(A @ y - 1.0).max() <= _RESID_TOL:
        return y
    return np.full(A.shape[0], np.nan)


def _face_solutions(M: np.ndarray):
    """Yield (subsets, values, weights) per support size, ascending size.

    A face's interior stationary point solves M_S y = 1; after normalizing to
    the simplex its value is 1 / sum(y).  Faces whose candidate is not strictly
    positive get value +inf (their minima live on sub-faces).
    """
    k = M.shape[0]
    for subs in _subsets_by_size(k):
        ns, s = subs.shape
        A = M[subs[:, :, None], subs[:, None, :]]
        try:
            Y = np.linalg.solve(A, np.ones((ns, s, 1)))[..., 0]
        except np.linalg.LinAlgError:
            Y = np.stack([_solve_single(A[r]) for r in range(ns)])
        resid = np.abs(
            np.einsum("rij,rj->ri", A, np.nan_to_num(Y)) - 1.0
        ).max(axis=1)
        for r in np.nonzero((resid > _RESID_TOL) | ~np.isfinite(Y).all(axis=1))[0]:
            Y[r] = _solve_single(A[r])
        t = Y.sum(axis=1)
        safe_t = np.where(t > 0, t, 1.0)
        X = Y / safe_t[:, None]
        valid = (
            np.isfinite(Y).all(axis=1) & (t > 0) & (X > _POSITIVE_TOL).all(axis=1)
        )
        vals = np.where(valid, 1.0 / safe_t, np.inf)
        yield subs, vals, X


@dataclass
class GSolution:
    value: float
    weights: np.ndarray
    support: tuple[int, ...]
    kkt_gap: float


def _check_support_cap(K: Crg) -> None:
    if K.k > SUPPORT_CAP:
        raise CapExceededError(
            f"support enumeration capped at {SUPPORT_CAP} vertices; "
            "decompose into components first"
        )


def g(K: Crg, p: float) -> GSolution:
    """Global minimum of x^T M x over the simplex, with optimal weights.

    Ties are broken toward the smallest support, then lexicographically.
    """
    p = clamp_p(p)
    _check_support_cap(K)
    M = matrix(K, p)
    best_val = np.inf
    best_sub = best_x = None
    for subs, vals, X in _face_solutions(M):
        i = int(np.argmin(vals))
        if vals[i] < best_val:
            best_val = float(vals[i])
            best_sub, best_x = subs[i], X[i]
    x = np.zeros(K.k)
    x[best_sub] = best_x
    value = float(x @ M @ x)
    kkt_gap = float(max(0.0, (value - M @ x).max()))
    return GSolution(value, x, tuple(int(v) for v in best_sub), kkt_gap)


def g_min_value(K: Crg, p: float) -> float:
    """Value of the quadratic minimum without the weight bookkeeping."""
    p = clamp_p(p)
    _check_support_cap(K)
    best = np.inf
    for _, vals, _ in _face_solutions(matrix(K, p)):
        m = float(vals.min())
        if m < best:
            best = m
    return best


def g_components(K: Crg, p: float) -> float:
    """Combine per-component minima by harmonic sum; equals g on the whole CRG."""
    parts = crg_components(K)
    if len(parts) == 1:
        return g(K, p).value
    return 1.0 / sum(1.0 / g(part, p).value for part in parts)


def g_all_gray(r: int, s: int, p: float) -> float:
    """Closed form for K(r,s): p(1-p) / (r(1-p) + sp)."""
    if r < 0 or s < 0 or r + s < 1:
        raise ValueError("need r, s >= 0 and r + s >= 1")
    p = clamp_p(p)
    return p * (1 - p) / (r * (1 - p) + s * p)


def g_no_gray(K: Crg, p: float) -> float:
    """Closed forms for the two gray-free patterns.

    All-white vertices with all-black edges: min{p, 1-p + (2p-1)/k}.
    All-black vertices with all-white edges: min{p + (1-2p)/k, 1-p}.
    """
    p = clamp_p(p)
    k = K.k
    if all(c == WHITE for c in K.vcolors) and all(c == BLACK for c in K.ecolors):
        return min(p, 1 - p + (2 * p - 1) / k)
    if all(c == BLACK for c in K.vcolors) and all(c == WHITE for c in K.ecolors):
        return min(p + (1 - 2 * p) / k, 1 - p)
    raise ValueError("CRG does not match a gray-free closed-form pattern")


@dataclass
class PCoreReport:
    is_core: bool
    g_value: float
    weights: np.ndarray | None
    violating_subset: tuple[int, ...] | None
    screen_ok: bool
    screen_failures: tuple[str, ...]


def _structural_screen(K: Crg, p: float) -> tuple[str, ...]:
    failures = []
    if p < 0.5:
        if any(c == BLACK for c in K.ecolors):
            failures.append("black edge present")
        if any(
            K.ecolor(i, j) == WHITE
            and (K.vcolors[i] == WHITE or K.vcolors[j] == WHITE)
            for i, j in K.vertex_pairs()
        ):
            failures.append("white edge at a white vertex")
    elif p > 0.5:
        if any(c == WHITE for c in K.ecolors):
            failures.append("white edge present")
        if any(
            K.ecolor(i, j) == BLACK
            and (K.vcolors[i] == BLACK or K.vcolors[j] == BLACK)
            for i, j in K.vertex_pairs()
        ):
            failures.append("black edge at a black vertex")
    else:
        if any(c != GRAY for c in K.ecolors):
            failures.append("non-gray edge at p = 1/2")
    return tuple(failures)


def is_p_core(K: Crg, p: float) -> PCoreReport:
    """Strict-minimality test: g on K beats g on every proper sub-CRG.

    All face values are computed in one pass; a subset-minimum transform then
    gives g for every induced sub-CRG at once.  The report also carries the
    color-pattern screen that every p-core must satisfy.
    """
    p = clamp_p(p)
    if K.k > PCORE_CAP:
        raise CapExceededError(f"p-core check capped at {PCORE_CAP} vertices")
    k = K.k
    screen = _structural_screen(K, p)
    if k == 1:
        return PCoreReport(True, g(K, p).value, np.ones(1), None, not screen, screen)

    val = np.full(1 << k, np.inf)
    for subs, vals, _ in _face_solutions(matrix(K, p)):
        masks = (1 << subs).sum(axis=1)
        val[masks] = vals
    sub_min = val.copy()
    for b in range(k):
        bit = 1 << b
        for m in range(1 << k):
            if m & bit and sub_min[m ^ bit] < sub_min[m]:
                sub_min[m] = sub_min[m ^ bit]
    full = (1 << k) - 1
    g_full = float(sub_min[full])
    proper = [full ^ (1 << v) for v in range(k)]
    worst = min(proper, key=lambda m: sub_min[m])
    is_core = g_full < float(sub_min[worst]) - 1e-12
    if is_core:
        sol = g(K, p)
        return PCoreReport(True, g_full, sol.weights, None, not screen, screen)
    # smallest sub-CRG attaining the global value is the certificate
    best_mask = min(
        (m for m in range(1, full) if sub_min[m] <= g_full + 1e-12),
        key=lambda m: (bin(m).count("1"), m),
    )
    subset = tuple(v for v in range(k) if best_mask >> v & 1)
    return PCoreReport(False, g_full, None, subset, not screen, screen)


def symmetrization_residual(K: Crg, p: float, sol: GSolution) -> float:
    """Max over the support of |(M x)_i - g|; ~0 for full-support optima."""
    M = matrix(K, clamp_p(p))
    mx = M @ sol.weights
    return float(max(abs(mx[i] - sol.value) for i in sol.support))


@dataclass
class LocalDegreeReport:
    balance_residual: float     # per-vertex value identity from the balance equation
    degree_residual: float      # gray-degree / weight identities, side chosen by p
    weight_cap_excess: float    # violation of the opposite-color weight caps


def local_degree_check(K: Crg, p: float, sol: GSolution) -> LocalDegreeReport:
    """Per-vertex diagnostics for a full-support optimum.

    Checks, for each vertex, the weighted-degree identity
    g = p*dW(v) + (1-p)*dB(v) (dW(v) is the own weight at white vertices and
    the white-edge-weighted degree at black ones; dB symmetrically), the
    gray-degree identities for the side of 1/2 that p lies on, and the weight
    caps x(v) <= g/(1-p) (black, p <= 1/2) and x(v) <= g/p (white, p >= 1/2).
    """
    p = clamp_p(p)
    if len(sol.support) != K.k:
        raise ValueError("diagnostics need a full-support solution")
    x = sol.weights
    gval = sol.value
    k = K.k
    balance = 0.0
    degree = 0.0
    cap_excess = 0.0
    for v in range(k):
        white_w = sum(x[z] for z in range(k) if z != v and K.ecolor(v, z) == WHITE)
        black_w = sum(x[z] for z in range(k) if z != v and K.ecolor(v, z) == BLACK)
        gray_w = sum(x[z] for z in range(k) if z != v and K.ecolor(v, z) == GRAY)
        is_white = K.vcolors[v] == WHITE
        d_w = x[v] if is_white else white_w
        d_b = black_w if is_white else x[v]
        balance = max(balance, abs(p * d_w + (1 - p) * d_b - gval))
        if p <= 0.5:
            if is_white:
                degree = max(degree, abs(x[v] - gval / p))
            else:
                predicted = (p - gval) / p + (1 - 2 * p) / p * x[v]
                degree = max(degree, abs(gray_w - predicted))
                cap_excess = max(cap_excess, x[v] - gval / (1 - p))
        if p >= 0.5:
            if not is_white:
                degree = max(degree, abs(x[v] - gval / (1 - p)))
            else:
                predicted = (1 - p - gval) / (1 - p) + (2 * p - 1) / (1 - p) * x[v]
                degree = max(degree, abs(gray_w - predicted))
                cap_excess = max(cap_excess, x[v] - gval / p)
    return LocalDegreeReport(balance, degree, max(0.0, cap_excess))
