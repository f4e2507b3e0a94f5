"""Assembly of the Schwarz error-propagation matrix pairs (M, N).

One Robin transmission row per trace unknown.  For the unknown of fracture j
living on trace S, the row of M discretizes  nu*[[d e_j/d tau]] + s*e_j  at S
(the jump is taken left-derivative minus right-derivative), while the row of
N collects the same quantity with flipped jump sign evaluated on the
neighbouring fracture at the previous iteration:  -nu*[[d e_nb/d tau]] + s*e_nb.
Expressing the jumps in terms of the trace values of the per-fracture
harmonic error profiles yields the familiar block coefficients
(F1, F2, F4, a, b, c, d_j) and their Neumann / per-Fourier-mode variants.

All blocks are derived for uniform diffusivity; a common nu simply scales the
jump terms.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .network import BcKind, Network


class MatrixKind(enum.Enum):
    DIRICHLET_1D = "dirichlet_1d"
    NEUMANN_1D = "neumann_1d"
    MODE_2D = "mode_2d"


@dataclass(frozen=True)
class RobinParams:
    """Robin parameters, either a single p for every trace or per-trace lists.

    ``s_minus[m]`` is used on the lower-indexed side of trace S_m (the
    fracture seeing the trace at gamma2) and ``s_plus[m]`` on the
    higher-indexed side (the fracture seeing it at gamma1).
    """

    s_minus: float | tuple[float, ...]
    s_plus: float | tuple[float, ...]

    def __post_init__(self):
        for name, val in (("s_minus", self.s_minus), ("s_plus", self.s_plus)):
            vals = (val,) if isinstance(val, float) else val
            if any(not v > 0 for v in vals):
                raise ValueError(f"{name} entries must be positive, got {val}")

    @classmethod
    def uniform(cls, p: float) -> "RobinParams":
        return cls(float(p), float(p))

    @classmethod
    def per_trace(cls, s_minus, s_plus) -> "RobinParams":
        return cls(tuple(float(v) for v in s_minus),
                   tuple(float(v) for v in s_plus))

    def minus_at(self, m: int) -> float:
        return self.s_minus if isinstance(self.s_minus, float) else self.s_minus[m]

    def plus_at(self, m: int) -> float:
        return self.s_plus if isinstance(self.s_plus, float) else self.s_plus[m]

    def validate_for(self, n_traces: int) -> None:
        for name, val in (("s_minus", self.s_minus), ("s_plus", self.s_plus)):
            if not isinstance(val, float) and len(val) != n_traces:
                raise ValueError(
                    f"{name} has {len(val)} entries, expected {n_traces} traces")


@dataclass(frozen=True)
class IterationMatrixPair:
    """The pair (M, N) whose product M^-1 N propagates the trace errors."""

    M_mat: np.ndarray
    N_mat: np.ndarray
    kind: MatrixKind
    mode_k: float | None = None


def _coth(x: float) -> float:
    if x > 20.0:
        return 1.0
    return 1.0 / math.tanh(x)


def _csch(x: float) -> float:
    # 1/sinh without overflow for large arguments
    if x > 20.0:
        return 2.0 * math.exp(-x)
    return 1.0 / math.sinh(x)


def _unknown_index(net: Network):
    """Map (fracture, side) -> unknown index; side 'g1'/'g2' is the local
    trace coordinate the unknown lives on."""
    idx = {}
    n = net.n_fractures
    idx[(0, "g2")] = 0
    for j in range(1, n - 1):
        idx[(j, "g1")] = 1 + 2 * (j - 1)
        idx[(j, "g2")] = 2 + 2 * (j - 1)
    idx[(n - 1, "g1")] = 2 * (n - 2) + 1
    return idx


def _jump_coeffs(net: Network, j: int, side: str, kind: MatrixKind,
                 k: float) -> dict:
    """Coefficients of [[d e_j/d tau]] at the given trace in terms of the
    trace values of fracture j's error profile (unit diffusivity)."""
    L, g1, g2 = net.length, net.gamma1, net.gamma2
    n = net.n_fractures
    first, last = j == 0, j == n - 1

    if kind is MatrixKind.DIRICHLET_1D:
        if first:
            return {(j, "g2"): L / (g2 * (L - g2))}
        if last:
            return {(j, "g1"): L / (g1 * (L - g1))}
        b = 1.0 / (g2 - g1)
        if side == "g1":
            return {(j, "g1"): 1.0 / g1 + b, (j, "g2"): -b}
        return {(j, "g1"): -b, (j, "g2"): 1.0 / (L - g2) + b}

    if kind is MatrixKind.NEUMANN_1D:
        # flat (zero-derivative) profile segments on the Neumann-ended sides
        if first:
            return {(j, "g2"): 1.0 / g2}
        if last:
            return {(j, "g1"): 1.0 / (L - g1)}
        b = 1.0 / (g2 - g1)
        if side == "g1":
            return {(j, "g1"): b, (j, "g2"): -b}
        return {(j, "g1"): -b, (j, "g2"): b}

    # per-mode 2D blocks; kappa = k*pi/L is the physical frequency.  The
    # outer-boundary segments contribute kappa*coth for Dirichlet-ended
    # profiles (sinh-shaped) and kappa*tanh for Neumann-ended ones
    # (cosh-shaped); the inter-trace segment always contributes
    # kappa*coth on the diagonal and -kappa/sinh on the off-diagonal.
    kappa = k * math.pi / L
    dirichlet = kind is MatrixKind.MODE_2D and net.bc_kind is BcKind.DIRICHLET
    outer = _coth if dirichlet else math.tanh
    if first:
        return {(j, "g2"): kappa * (_coth(kappa * g2) + outer(kappa * (L - g2)))}
    if last:
        return {(j, "g1"): kappa * (outer(kappa * g1) + _coth(kappa * (L - g1)))}
    d = g2 - g1
    off = -kappa * _csch(kappa * d)
    if side == "g1":
        return {(j, "g1"): kappa * (outer(kappa * g1) + _coth(kappa * d)),
                (j, "g2"): off}
    return {(j, "g1"): off,
            (j, "g2"): kappa * (_coth(kappa * d) + outer(kappa * (L - g2)))}


def _assemble(net: Network, rp: RobinParams, kind: MatrixKind,
              k: float = 0.0) -> IterationMatrixPair:
    rp.validate_for(net.n_traces)
    nus = set(net.diffusivities)
    if len(nus) > 1:
        raise ValueError(
            f"matrix assembly requires uniform diffusivities, got {net.diffusivities}")
    nu = net.diffusivities[0]

    idx = _unknown_index(net)
    dim = len(idx)
    M = np.zeros((dim, dim))
    N = np.zeros((dim, dim))

    for (j, side), r in idx.items():
        # trace index and Robin parameter seen from fracture j's side
        m = j if side == "g2" else j - 1
        s = rp.minus_at(m) if side == "g2" else rp.plus_at(m)

        M[r, r] += s
        for col_key, coeff in _jump_coeffs(net, j, side, kind, k).items():
            M[r, idx[col_key]] += nu * coeff

        # neighbour fracture across the trace; it sees the shared trace from
        # the opposite local coordinate
        nb = j + 1 if side == "g2" else j - 1
        nb_side = "g1" if side == "g2" else "g2"
        N[r, idx[(nb, nb_side)]] += s
        for col_key, coeff in _jump_coeffs(net, nb, nb_side, kind, k).items():
            N[r, idx[col_key]] -= nu * coeff

    return IterationMatrixPair(M, N, kind, mode_k=(k if kind is MatrixKind.MODE_2D else None))


def assemble_dirichlet_1d(net: Network, rp: RobinParams) -> IterationMatrixPair:
    """Iteration matrix pair for the 1D network with Dirichlet fracture ends."""
    return _assemble(net, rp, MatrixKind.DIRICHLET_1D)


def assemble_neumann_1d(net: Network, rp: RobinParams) -> IterationMatrixPair:
    """Iteration matrix pair for the 1D network with Neumann fracture ends
    (Dirichlet only at the left end of the first and the right end of the
    last fracture)."""
    return _assemble(net, rp, MatrixKind.NEUMANN_1D)


def assemble_mode_2d(net: Network, rp: RobinParams, k: float,
                     bc: BcKind | None = None) -> IterationMatrixPair:
    """Per-Fourier-mode pair for the 2D network at mode index k > 0.

    The k = 0 mode is singular here (the hyperbolic profiles degenerate) and
    is covered by the 1D assemblers.  ``bc`` overrides the network's
    boundary-condition kind.
    """
    if not k > 0:
        raise ValueError(f"mode index k must be positive, got {k}")
    if bc is not None and bc is not net.bc_kind:
        net = Network(net.n_fractures, net.length, net.gamma1, net.gamma2,
                      net.diffusivities, bc)
    return _assemble(net, rp, MatrixKind.MODE_2D, k=float(k))


def _block_slices(dim: int):
    yield slice(0, 1)
    for start in range(1, dim - 1, 2):
        yield slice(start, start + 2)
    yield slice(dim - 1, dim)


def iteration_matrix(pair: IterationMatrixPair) -> np.ndarray:
    """T = M^-1 N via direct solves on the 1x1 / 2x2 diagonal blocks of M."""
    dim = pair.M_mat.shape[0]
    T = np.empty_like(pair.N_mat)
    for sl in _block_slices(dim):
        block = pair.M_mat[sl, sl]
        try:
            T[sl, :] = np.linalg.solve(block, pair.N_mat[sl, :])
        except np.linalg.LinAlgError as exc:
            raise np.linalg.LinAlgError(
                f"singular diagonal block {sl} in M") from exc
    return T


def theorem1_norm(L: float, gamma2: float, p: float) -> float:
    """Closed-form value of ||N M^-1||_inf under gamma1 + gamma2 = L.

    Valid for L/2 < gamma2 < L and p > 0; the result is < 1 for all such
    inputs, which is what makes the Dirichlet iteration weakly scalable.
    """
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    if not L / 2 < gamma2 < L:
        raise ValueError(
            f"gamma2 must satisfy L/2 < gamma2 < L, got gamma2={gamma2}, L={L}")
    first = abs(p * gamma2 * (L - gamma2) - L) / (p * gamma2 * (L - gamma2) + L)
    # the interior-row term simplifies differently depending on the sign of
    # L + (L - 2*gamma2)*(L - gamma2)^2*p^2
    disc = L + (L - 2 * gamma2) * (L - gamma2) ** 2 * p ** 2
    if disc < 0:
        second = abs((L - gamma2) * p - 1) / ((L - gamma2) * p + 1)
    else:
        q = p * (L - gamma2) * (2 * gamma2 - L)
        second = abs(q - L) / (q + L)
    return max(first, second)
