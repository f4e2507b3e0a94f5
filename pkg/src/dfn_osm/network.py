"""Staircase fracture-network geometry and boundary-condition configuration.

A network is a chain of N fractures, each a segment of length L with a local
coordinate tau in [0, L].  Fracture j intersects fracture j+1 at trace S_j,
which sits at tau = gamma2 on fracture j and at tau = gamma1 on fracture j+1.
The first fracture therefore carries a single trace at gamma2 and the last a
single trace at gamma1; interior fractures carry both.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass


class BcKind(enum.Enum):
    """Outer boundary conditions imposed on the fracture endpoints."""

    #: homogeneous Dirichlet at both endpoints of every fracture
    DIRICHLET = "dirichlet"
    #: homogeneous Neumann everywhere except the left end of the first
    #: fracture and the right end of the last one, which stay Dirichlet
    NEUMANN = "neumann"


@dataclass(frozen=True)
class Network:
    """Validated staircase network: geometry, diffusivities and b.c. kind."""

    n_fractures: int
    length: float
    gamma1: float
    gamma2: float
    diffusivities: tuple[float, ...]
    bc_kind: BcKind

    def __post_init__(self):
        if self.n_fractures < 2:
            raise ValueError(f"n_fractures must be >= 2, got {self.n_fractures}")
        if not self.length > 0:
            raise ValueError(f"length must be positive, got {self.length}")
        if not 0 < self.gamma1:
            raise ValueError(f"gamma1 must be positive, got {self.gamma1}")
        if not self.gamma1 < self.gamma2:
            raise ValueError(
                f"gamma1 >= gamma2 ({self.gamma1} >= {self.gamma2})"
            )
        if not self.gamma2 < self.length:
            raise ValueError(
                f"gamma2 must be < length ({self.gamma2} >= {self.length})"
            )
        if len(self.diffusivities) != self.n_fractures:
            raise ValueError(
                f"diffusivities has length {len(self.diffusivities)}, "
                f"expected n_fractures = {self.n_fractures}"
            )
        if any(not nu > 0 for nu in self.diffusivities):
            raise ValueError(f"diffusivities must be positive, got {self.diffusivities}")

    @property
    def n_traces(self) -> int:
        return self.n_fractures - 1


@dataclass(frozen=True)
class TraceLayout:
    """Per-fracture local trace coordinates: (gamma2,), (gamma1, gamma2)*, (gamma1,)."""

    coords: tuple[tuple[float, ...], ...]


def build_staircase(n: int, length: float, gamma1: float, gamma2: float,
                    nu, bc: BcKind = BcKind.DIRICHLET) -> Network:
    """Build and validate a staircase network.

    ``nu`` may be a scalar (uniform diffusivity) or a length-n sequence.
    """
    if isinstance(nu, (int, float)):
        nus = (float(nu),) * n
    else:
        nus = tuple(float(v) for v in nu)
    return Network(n, float(length), float(gamma1), float(gamma2), nus, bc)


def trace_layout(net: Network) -> TraceLayout:
    inner = (net.gamma1, net.gamma2)
    coords = ((net.gamma2,),) + (inner,) * (net.n_fractures - 2) + ((net.gamma1,),)
    return TraceLayout(coords)


def unknown_count(net: Network) -> int:
    """Number of trace-value unknowns, 2(N-2)+2."""
    return 2 * (net.n_fractures - 2) + 2
