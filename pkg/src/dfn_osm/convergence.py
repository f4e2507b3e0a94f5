"""Two-fracture convergence factors and Robin parameter optimization.

The 1D factor rho_1d is a rational function of the two Robin parameters and
is zeroed exactly by the closed-form optimal pair.  In 2D each Fourier mode
k > 0 contracts with factor rho_2d built from the hyperbolic symbols f1, f2;
the continuous extension rho_tilde(0, .) recovers the 1D factor.  The
min-max optimal parameter equioscillates rho_tilde between k = 0 and k_max.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq


@dataclass(frozen=True)
class TwoFractureGeometry:
    length: float
    gamma1: float
    gamma2: float
    nu1: float = 1.0
    nu2: float = 1.0

    def __post_init__(self):
        if not 0 < self.gamma1 < self.gamma2 < self.length:
            raise ValueError(
                f"need 0 < gamma1 < gamma2 < length, got "
                f"({self.gamma1}, {self.gamma2}, {self.length})")
        if not (self.nu1 > 0 and self.nu2 > 0):
            raise ValueError(f"diffusivities must be positive: {self.nu1}, {self.nu2}")


@dataclass(frozen=True)
class OptimizationResult:
    p_star: float
    value: float
    equioscillation_residual: float
    k_max: float


def rho_1d(s_minus: float, s_plus: float, g: TwoFractureGeometry) -> float:
    """Two-step contraction factor of the two-fracture iteration.

    May be negative; |rho_1d| < 1 is guaranteed whenever s_minus = s_plus
    (a single uniform parameter), while strongly unbalanced pairs can lose
    the contraction.
    """
    if not (s_minus > 0 and s_plus > 0):
        raise ValueError(f"Robin parameters must be positive: {s_minus}, {s_plus}")
    A = g.nu2 * g.length / (g.gamma1 * (g.length - g.gamma1))
    B = g.nu1 * g.length / (g.gamma2 * (g.length - g.gamma2))
    return (A - s_minus) * (B - s_plus) / ((B + s_minus) * (A + s_plus))


def optimal_params_1d(g: TwoFractureGeometry) -> tuple[float, float]:
    """Parameter pair that makes the two-fracture iteration nilpotent."""
    s_minus = g.nu2 * g.length / (g.gamma1 * (g.length - g.gamma1))
    s_plus = g.nu1 * g.length / (g.gamma2 * (g.length - g.gamma2))
    return s_minus, s_plus


def two_fracture_p_estimate(g: TwoFractureGeometry) -> float:
    """Scalar surrogate for a single uniform Robin parameter: the geometric
    mean of the two-sided optimal pair."""
    s_minus, s_plus = optimal_params_1d(g)
    return math.sqrt(s_minus * s_plus)


def _coth(x: float) -> float:
    return 1.0 if x > 20.0 else 1.0 / math.tanh(x)


def f_symbols(k: float, g: TwoFractureGeometry) -> tuple[float, float]:
    """Hyperbolic symbols (f1, f2) of mode k > 0; their k -> 0 limits are the
    1D optimal parameters."""
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    w = k * math.pi / g.length
    f1 = g.nu2 * w * (_coth(w * g.gamma1) + _coth(w * (g.length - g.gamma1)))
    f2 = g.nu1 * w * (_coth(w * g.gamma2) + _coth(w * (g.length - g.gamma2)))
    return f1, f2


def rho_2d(k: float, s_minus: float, s_plus: float, g: TwoFractureGeometry) -> float:
    """Per-mode contraction factor (f1-s^-)/(f2+s^-) * (f2-s^+)/(f1+s^+)."""
    if not k > 0:
        raise ValueError(f"k must be positive, got {k} (use rho_tilde for k = 0)")
    f1, f2 = f_symbols(k, g)
    return (f1 - s_minus) / (f2 + s_minus) * (f2 - s_plus) / (f1 + s_plus)


def rho_tilde(k: float, p: float, g: TwoFractureGeometry) -> float:
    """Continuous extension of the mode factor with s^- = f1(p), s^+ = f2(p);
    at k = 0 it equals rho_1d at that pair."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    s_minus, s_plus = f_symbols(p, g)
    if k == 0:
        return rho_1d(s_minus, s_plus, g)
    return rho_2d(k, s_minus, s_plus, g)


def _rho_tilde_grid(ks: np.ndarray, p: float, g: TwoFractureGeometry) -> np.ndarray:
    """Vectorized rho_tilde over an array of k >= 0."""
    w = np.pi / g.length
    s_minus, s_plus = f_symbols(p, g)

    def coth(x):
        return np.where(x > 20.0, 1.0, 1.0 / np.tanh(np.minimum(x, 20.0)))

    ks = np.asarray(ks, dtype=float)
    pos = np.maximum(ks, 1e-300)  # placeholder where k == 0
    f1 = g.nu2 * pos * w * (coth(pos * w * g.gamma1) + coth(pos * w * (g.length - g.gamma1)))
    f2 = g.nu1 * pos * w * (coth(pos * w * g.gamma2) + coth(pos * w * (g.length - g.gamma2)))
    out = (f1 - s_minus) / (f2 + s_minus) * (f2 - s_plus) / (f1 + s_plus)
    if np.any(ks == 0):
        out = np.where(ks == 0, rho_1d(s_minus, s_plus, g), out)
    return out


def minmax_value(p: float, g: TwoFractureGeometry, k_max: float,
                 n_k: int = 4096) -> float:
    """max over k in [0, k_max] of rho_tilde(k, p) on a dense log-spaced grid
    (plus the k = 0 and k = k_max endpoints)."""
    ks = np.concatenate(([0.0], np.geomspace(k_max * 1e-8, k_max, n_k)))
    return float(_rho_tilde_grid(ks, p, g).max())


def optimize_equioscillation(g: TwoFractureGeometry, k_max: float,
                             residual_tol: float = 1e-10) -> OptimizationResult:
    """Solve min_p max_{k in [0, k_max]} rho_tilde(k, p) via equioscillation.

    The optimal p* is the root of rho_tilde(0, p) - rho_tilde(k_max, p),
    found by bracketing and bisection.  Raises RuntimeError when no sign
    change can be bracketed, which would contradict uniqueness of p*.
    """
    if not k_max > 0:
        raise ValueError(f"k_max must be positive, got {k_max}")

    def gap(p: float) -> float:
        return rho_tilde(0.0, p, g) - rho_tilde(k_max, p, g)

    # rho_tilde(0, p) -> 0 as p -> 0 and rho_tilde(k_max, p) -> 0 as
    # p -> k_max, so the sign change sits inside (0, k_max); expand the
    # bracket geometrically if a coarse scan does not already straddle it.
    lo, hi = k_max * 1e-6, k_max
    glo, ghi = gap(lo), gap(hi)
    tries = 0
    while glo * ghi > 0 and tries < 60:
        lo /= 4.0
        glo = gap(lo)
        tries += 1
    if glo * ghi > 0:
        raise RuntimeError(
            f"no equioscillation bracket in [{lo}, {hi}] for k_max={k_max}")
    p_star = brentq(gap, lo, hi, xtol=1e-14, rtol=8.9e-16, maxiter=200)
    residual = abs(gap(p_star))
    if residual > residual_tol:
        # polish by bisection on the original bracket
        a, b, ga = lo, hi, glo
        for _ in range(200):
            mid = 0.5 * (a + b)
            gm = gap(mid)
            if abs(gm) <= residual_tol:
                p_star, residual = mid, abs(gm)
                break
            if ga * gm <= 0:
                b = mid
            else:
                a, ga = mid, gm
    value = minmax_value(p_star, g, k_max)
    return OptimizationResult(p_star=float(p_star), value=value,
                              equioscillation_residual=float(residual),
                              k_max=float(k_max))


def grid_search_minmax(g: TwoFractureGeometry, k_max: float,
                       n_p: int = 2000, n_k: int = 2000,
                       refine: int = 2) -> tuple[float, float]:
    """Brute-force (p*, value) oracle: dense grid over (p, k) of the
    un-simplified objective max{rho_1d(p), max_k rho(k, p)}, with a few
    local linear refinements of the p-grid around the coarse argmin."""
    ks = np.concatenate(([0.0], np.geomspace(k_max * 1e-6, k_max, n_k)))
    ps = np.geomspace(k_max * 1e-4, k_max, n_p)
    best_p = best_val = None
    for _ in range(refine + 1):
        vals = np.empty(ps.size)
        for i, p in enumerate(ps):
            vals[i] = _rho_tilde_grid(ks, p, g).max()
        i0 = int(np.argmin(vals))
        best_p, best_val = float(ps[i0]), float(vals[i0])
        lo = ps[max(i0 - 1, 0)]
        hi = ps[min(i0 + 1, ps.size - 1)]
        ps = np.linspace(lo, hi, n_p)
    return best_p, best_val
