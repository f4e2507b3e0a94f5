"""Spectral radii of iteration matrices and per-mode aggregation."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .network import BcKind, Network
from .matrices import (RobinParams, assemble_dirichlet_1d, assemble_neumann_1d,
                       assemble_mode_2d, iteration_matrix)


@dataclass(frozen=True)
class SpectrumReport:
    rho: float
    dominant_eig: complex
    inf_norm: float
    n_fractures: int | None = None
    p: float | None = None
    mode_k: float | None = None
    argmax_k: float | None = None


@dataclass(frozen=True)
class ModeRange:
    """Frequency sampling for 2D mode sweeps.

    Modes are sampled at the integer indices in [k_min, k_max]; the constant
    mode k = 0 (the 1D matrix) is added when ``include_zero`` is set.  The
    largest resolvable index for mesh size h is L/h.
    """

    k_min: float
    k_max: float
    n_samples: int
    include_zero: bool = False

    def __post_init__(self):
        if not 0 <= self.k_min < self.k_max:
            raise ValueError(f"need 0 <= k_min < k_max, got [{self.k_min}, {self.k_max}]")
        if self.n_samples < 2:
            raise ValueError(f"n_samples must be >= 2, got {self.n_samples}")

    @classmethod
    def from_mesh(cls, length: float, h: float, include_zero: bool = False) -> "ModeRange":
        kmax = math.ceil(length / h)
        return cls(1.0, float(kmax), kmax, include_zero)

    def samples(self) -> np.ndarray:
        lo = max(1, math.ceil(self.k_min))
        hi = math.floor(self.k_max)
        ks = np.arange(lo, hi + 1, dtype=float)
        if ks.size >= 2:
            return ks
        # degenerate / non-integer range: fall back to even sampling
        return np.linspace(max(self.k_min, 1e-8), self.k_max, self.n_samples)


def spectral_radius(T: np.ndarray, *, n_fractures: int | None = None,
                    p: float | None = None,
                    mode_k: float | None = None) -> SpectrumReport:
    """Spectral radius of a dense matrix via the QR eigenvalue algorithm."""
    T = np.asarray(T, dtype=float)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {T.shape}")
    if not np.all(np.isfinite(T)):
        raise ValueError("matrix has non-finite entries")
    eigs = np.linalg.eigvals(T)
    dom = eigs[np.argmax(np.abs(eigs))]
    return SpectrumReport(rho=float(abs(dom)), dominant_eig=complex(dom),
                          inf_norm=float(np.abs(T).sum(axis=1).max()),
                          n_fractures=n_fractures, p=p, mode_k=mode_k)


def _zero_mode_matrix(net: Network, rp: RobinParams, bc: BcKind) -> np.ndarray:
    if bc is BcKind.DIRICHLET:
        return iteration_matrix(assemble_dirichlet_1d(net, rp))
    return iteration_matrix(assemble_neumann_1d(net, rp))


def max_mode_radius(net: Network, rp: RobinParams, mode_range: ModeRange,
                    bc: BcKind | None = None) -> SpectrumReport:
    """max over sampled modes k of rho(T_2d(k)), with the k = 0 mode
    contributed by the matching 1D matrix when requested."""
    bc = net.bc_kind if bc is None else bc
    p = rp.s_minus if isinstance(rp.s_minus, float) else None
    best: SpectrumReport | None = None
    best_k = 0.0
    if mode_range.include_zero:
        best = spectral_radius(_zero_mode_matrix(net, rp, bc),
                               n_fractures=net.n_fractures, p=p)
    for k in mode_range.samples():
        T = iteration_matrix(assemble_mode_2d(net, rp, float(k), bc))
        rep = spectral_radius(T, n_fractures=net.n_fractures, p=p, mode_k=float(k))
        if best is None or rep.rho > best.rho:
            best, best_k = rep, float(k)
    assert best is not None
    return SpectrumReport(rho=best.rho, dominant_eig=best.dominant_eig,
                          inf_norm=best.inf_norm, n_fractures=net.n_fractures,
                          p=p, mode_k=None, argmax_k=best_k)
