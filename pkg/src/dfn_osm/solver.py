"""Finite-difference discretization of the 1D network model.

Provides the monolithic reference solve (continuity + flux balance imposed
at the traces) and the Schwarz iteration that exchanges Robin data between
neighbouring fractures.  Both use the same one-sided second-order stencils
for the derivative jumps, so the discrete Schwarz fixed point coincides with
the discrete monolithic solution.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu, spsolve

from .network import BcKind, Network
from .matrices import RobinParams


@dataclass(frozen=True)
class Discretization:
    """Uniform per-fracture grid with trace-aligned nodes.

    ``h`` is snapped so that gamma1, gamma2 and L are integer multiples of it;
    ``i1`` and ``i2`` are the node indices of the trace coordinates.
    """

    h: float
    n_intervals: int
    i1: int
    i2: int
    nodes: np.ndarray = field(repr=False)


def make_discretization(net: Network, h: float) -> Discretization:
    L, g1, g2 = net.length, net.gamma1, net.gamma2
    d1 = Fraction(g1 / L).limit_denominator(10 ** 6).denominator
    d2 = Fraction(g2 / L).limit_denominator(10 ** 6).denominator
    q = lcm(d1, d2)
    m = max(1, round(L / (h * q))) * q
    i1 = round(m * g1 / L)
    i2 = round(m * g2 / L)
    if min(i1, i2 - i1, m - i2) < 3:
        raise ValueError(
            f"mesh too coarse: need >= 3 intervals between traces and "
            f"boundaries, got splits ({i1}, {i2 - i1}, {m - i2}) for h={h}")
    hs = L / m
    return Discretization(h=hs, n_intervals=m, i1=i1, i2=i2,
                          nodes=np.linspace(0.0, L, m + 1))


@dataclass(frozen=True)
class BoundaryData:
    """Outer boundary values per fracture: Dirichlet values at Dirichlet ends,
    prescribed derivative d u/d tau at Neumann ends."""

    left: tuple[float, ...]
    right: tuple[float, ...]

    @classmethod
    def zero(cls, n: int) -> "BoundaryData":
        return cls((0.0,) * n, (0.0,) * n)


@dataclass
class OsmRunReport:
    iterations: int
    error_history: list[float]
    observed_rate: float
    converged: bool
    p: float
    n_fractures: int
    diverged: bool = False


def _sources(net: Network, disc: Discretization, f):
    """Per-fracture source samples; f is one callable used on every fracture,
    or a sequence of per-fracture callables."""
    x = disc.nodes
    if f is None:
        return np.zeros((net.n_fractures, x.size))
    if callable(f):
        row = np.asarray(f(x), dtype=float) * np.ones_like(x)
        return np.tile(row, (net.n_fractures, 1))
    return np.array([np.asarray(fj(x), dtype=float) * np.ones_like(x) for fj in f])


# one-sided second-order first-derivative stencils and the 5-point jump
# (left-sided minus right-sided derivative) used at the traces
def _jump_stencil(h: float) -> np.ndarray:
    return np.array([1.0, -4.0, 6.0, -4.0, 1.0]) / (2.0 * h)


def _fwd_stencil(h: float) -> np.ndarray:
    return np.array([-3.0, 4.0, -1.0]) / (2.0 * h)


def _is_dirichlet_end(net: Network, j: int, left_end: bool) -> bool:
    if net.bc_kind is BcKind.DIRICHLET:
        return True
    return (j == 0 and left_end) or (j == net.n_fractures - 1 and not left_end)


def _bc_row(net: Network, disc: Discretization, j: int, left_end: bool):
    """(columns, coeffs) of the boundary row at one fracture end."""
    n = disc.n_intervals
    if _is_dirichlet_end(net, j, left_end):
        return ([0 if left_end else n], [1.0])
    fwd = _fwd_stencil(disc.h)
    if left_end:
        return ([0, 1, 2], list(fwd))
    return ([n, n - 1, n - 2], list(-fwd))


def _trace_nodes(net: Network, disc: Discretization, j: int) -> list[int]:
    nodes = []
    if j > 0:
        nodes.append(disc.i1)
    if j < net.n_fractures - 1:
        nodes.append(disc.i2)
    return nodes


def monolithic_solve(net: Network, disc: Discretization, f=None,
                     bc_data: BoundaryData | None = None) -> np.ndarray:
    """Direct solve of the coupled network problem; returns (N, n+1) values."""
    if bc_data is None:
        bc_data = BoundaryData.zero(net.n_fractures)
    N, n = net.n_fractures, disc.n_intervals
    h, i1, i2 = disc.h, disc.i1, disc.i2
    F = _sources(net, disc, f)
    jump = _jump_stencil(h)

    rows, cols, vals = [], [], []
    rhs = np.zeros(N * (n + 1))

    def off(j):
        return j * (n + 1)

    def add(r, c, v):
        rows.append(r)
        cols.append(c)
        vals.append(v)

    for j in range(N):
        o = off(j)
        nu = net.diffusivities[j]
        trace_here = set(_trace_nodes(net, disc, j))
        # boundary rows
        for left_end, node, val in ((True, 0, bc_data.left[j]),
                                    (False, n, bc_data.right[j])):
            cs, ws = _bc_row(net, disc, j, left_end)
            for c, w in zip(cs, ws):
                add(o + node, o + c, w)
            rhs[o + node] = val
        # interior PDE rows (skipping trace nodes, replaced by coupling rows)
        for i in range(1, n):
            if i in trace_here:
                continue
            add(o + i, o + i - 1, -nu / h ** 2)
            add(o + i, o + i, 2 * nu / h ** 2)
            add(o + i, o + i + 1, -nu / h ** 2)
            rhs[o + i] = F[j, i]

    # trace coupling: continuity on the lower fracture's row, flux balance on
    # the upper fracture's row
    for m in range(N - 1):
        r_cont = off(m) + i2
        add(r_cont, off(m) + i2, 1.0)
        add(r_cont, off(m + 1) + i1, -1.0)
        r_flux = off(m + 1) + i1
        for t, w in enumerate(jump):
            add(r_flux, off(m) + i2 - 2 + t, net.diffusivities[m] * w)
            add(r_flux, off(m + 1) + i1 - 2 + t, net.diffusivities[m + 1] * w)

    A = sp.csc_matrix((vals, (rows, cols)), shape=(N * (n + 1), N * (n + 1)))
    u = spsolve(A, rhs)
    return u.reshape(N, n + 1)


def _local_matrix(net: Network, disc: Discretization, rp: RobinParams, j: int):
    """Sparse local system for fracture j with Robin rows at its traces."""
    n, h = disc.n_intervals, disc.h
    nu = net.diffusivities[j]
    jump = _jump_stencil(h)
    rows, cols, vals = [], [], []

    def add(r, c, v):
        rows.append(r)
        cols.append(c)
        vals.append(v)

    for left_end, node in ((True, 0), (False, n)):
        cs, ws = _bc_row(net, disc, j, left_end)
        for c, w in zip(cs, ws):
            add(node, c, w)
    trace_s = {}
    if j > 0:
        trace_s[disc.i1] = rp.plus_at(j - 1)
    if j < net.n_fractures - 1:
        trace_s[disc.i2] = rp.minus_at(j)
    for i in range(1, n):
        if i in trace_s:
            for t, w in enumerate(jump):
                add(i, i - 2 + t, nu * w)
            add(i, i, trace_s[i])
        else:
            add(i, i - 1, -nu / h ** 2)
            add(i, i, 2 * nu / h ** 2)
            add(i, i + 1, -nu / h ** 2)
    return sp.csc_matrix((vals, (rows, cols)), shape=(n + 1, n + 1))


def _trace_errors(net: Network, disc: Discretization, U: np.ndarray,
                  ref: np.ndarray) -> float:
    """inf-norm of the trace-value error, both sides of every trace."""
    d = U - ref
    errs = [np.abs(d[:-1, disc.i2]).max(), np.abs(d[1:, disc.i1]).max()]
    return float(max(errs))


def osm_iterate(net: Network, disc: Discretization, rp: RobinParams,
                f=None, bc_data: BoundaryData | None = None,
                tol: float = 1e-10, max_iter: int = 200,
                init="zero", seed: int | None = None,
                reference: np.ndarray | None = None) -> OsmRunReport:
    """Run the Schwarz iteration, measuring trace errors against the
    monolithic solution.

    ``init`` is "zero", "random" (seeded start for rate measurement) or an
    explicit (N, n+1) array.  One iteration solves all local fracture
    problems from the previous iterate's Robin data (Jacobi sweep).
    """
    if bc_data is None:
        bc_data = BoundaryData.zero(net.n_fractures)
    rp.validate_for(net.n_traces)
    N, n = net.n_fractures, disc.n_intervals
    h, i1, i2 = disc.h, disc.i1, disc.i2
    jump = _jump_stencil(h)
    F = _sources(net, disc, f)
    nus = np.asarray(net.diffusivities)

    if reference is None:
        reference = monolithic_solve(net, disc, f, bc_data)

    if isinstance(init, np.ndarray):
        U = init.astype(float).copy()
    elif init == "random":
        U = np.random.default_rng(seed).standard_normal((N, n + 1))
    else:
        U = np.zeros((N, n + 1))

    # factor each distinct local system once; fractures sharing diffusivity,
    # position class and Robin parameters share a factorization
    lus, groups = {}, {}
    for j in range(N):
        cls = 0 if j == 0 else (2 if j == N - 1 else 1)
        s_key = tuple(sorted((i, rp.plus_at(j - 1) if i == i1 else rp.minus_at(j))
                             for i in _trace_nodes(net, disc, j)))
        key = (cls, net.diffusivities[j], s_key)
        if key not in lus:
            lus[key] = splu(_local_matrix(net, disc, rp, j))
        groups.setdefault(key, []).append(j)

    base = F.copy()
    for j in range(N):
        base[j, 0] = bc_data.left[j]
        base[j, n] = bc_data.right[j]

    s_plus = np.array([rp.plus_at(m) for m in range(N - 1)])
    s_minus = np.array([rp.minus_at(m) for m in range(N - 1)])

    history: list[float] = []
    converged = False
    for _ in range(max_iter):
        # Robin data from the previous iterate's neighbour traces
        j_at_i2 = U[:, i2 - 2:i2 + 3] @ jump  # jump of each fracture at gamma2
        j_at_i1 = U[:, i1 - 2:i1 + 3] @ jump  # ... and at gamma1
        rhs = base.copy()
        # row of fracture m at gamma2 (trace S_m): data from fracture m+1
        rhs[:-1, i2] = -nus[1:] * j_at_i1[1:] + s_minus * U[1:, i1]
        # row of fracture m+1 at gamma1 (trace S_m): data from fracture m
        rhs[1:, i1] = -nus[:-1] * j_at_i2[:-1] + s_plus * U[:-1, i2]

        for key, js in groups.items():
            sol = lus[key].solve(rhs[js].T)
            U[js] = sol.T

        err = _trace_errors(net, disc, U, reference)
        history.append(err)
        if err <= tol:
            converged = True
            break

    rate = 0.0
    if len(history) >= 2:
        n0 = (2 * len(history)) // 3
        n1 = len(history) - 1
        if n1 > n0 and history[n0] > 0:
            rate = (history[n1] / history[n0]) ** (1.0 / (n1 - n0))
    diverged = bool(history) and history[-1] > 10.0 * min(history)
    p = rp.s_minus if isinstance(rp.s_minus, float) else float("nan")
    return OsmRunReport(iterations=len(history), error_history=history,
                        observed_rate=rate, converged=converged, p=p,
                        n_fractures=N, diverged=diverged)


def observed_vs_predicted(net: Network, disc: Discretization, rp: RobinParams,
                          seed: int = 0, tol: float = 1e-12,
                          max_iter: int = 120) -> tuple[float, float, float]:
    """Observed Schwarz contraction rate (f = 0, random start) against the
    spectral radius of the matching 1D iteration matrix."""
    from .matrices import assemble_dirichlet_1d, assemble_neumann_1d, iteration_matrix
    from .spectral import spectral_radius

    report = osm_iterate(net, disc, rp, f=None,
                         bc_data=BoundaryData.zero(net.n_fractures),
                         tol=tol, max_iter=max_iter, init="random", seed=seed,
                         reference=np.zeros((net.n_fractures, disc.n_intervals + 1)))
    if net.bc_kind is BcKind.DIRICHLET:
        pair = assemble_dirichlet_1d(net, rp)
    else:
        pair = assemble_neumann_1d(net, rp)
    predicted = spectral_radius(iteration_matrix(pair)).rho
    observed = report.observed_rate
    return observed, predicted, observed / predicted
