import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dfn_osm import (BcKind, RobinParams, assemble_dirichlet_1d,
                     assemble_mode_2d, assemble_neumann_1d, build_staircase,
                     iteration_matrix, theorem1_norm, unknown_count)

L, G1, G2, P = 1.0, 0.2, 0.6, 20.0


def _net(n=5, bc=BcKind.DIRICHLET, nu=1.0):
    return build_staircase(n, L, G1, G2, nu, bc)


def test_dirichlet_blocks_match_closed_forms():
    # closed-form entries of the Robin rows for the single-trace end
    # fractures and the two-trace interior fractures
    net = _net(5)
    pair = assemble_dirichlet_1d(net, RobinParams.uniform(P))
    M, N = pair.M_mat, pair.N_mat
    b = 1.0 / (G2 - G1)
    F1 = P + L / (G2 * (L - G2))
    F4 = P + L / (G1 * (L - G1))
    f2_11 = P + G2 / (G1 * (G2 - G1))
    f2_22 = P + (L - G1) / ((L - G2) * (G2 - G1))
    a = P - G2 / (G1 * (G2 - G1))
    c = P - (L - G1) / ((L - G2) * (G2 - G1))
    d_first = P - L / (G2 * (L - G2))
    d_last = P - L / (G1 * (L - G1))

    assert M[0, 0] == pytest.approx(F1, abs=1e-14)
    assert M[-1, -1] == pytest.approx(F4, abs=1e-14)
    # interior 2x2 blocks at rows (1, 2), (3, 4), (5, 6)
    for r in (1, 3, 5):
        assert M[r, r] == pytest.approx(f2_11, abs=1e-14)
        assert M[r + 1, r + 1] == pytest.approx(f2_22, abs=1e-14)
        assert M[r, r + 1] == pytest.approx(-b, abs=1e-14)
        assert M[r + 1, r] == pytest.approx(-b, abs=1e-14)

    # row 0: fracture 0 sees fracture 1 at (g1, g2) = columns (1, 2)
    assert N[0, 1] == pytest.approx(a, abs=1e-14)
    assert N[0, 2] == pytest.approx(b, abs=1e-14)
    # row 1: fracture 1's g1 unknown sees fracture 0's single g2 unknown
    assert N[1, 0] == pytest.approx(d_first, abs=1e-14)
    # row 2: fracture 1's g2 unknown sees fracture 2 at columns (3, 4)
    assert N[2, 3] == pytest.approx(a, abs=1e-14)
    assert N[2, 4] == pytest.approx(b, abs=1e-14)
    # interior-to-interior backward coupling: row 3 sees fracture 1
    assert N[3, 1] == pytest.approx(b, abs=1e-14)
    assert N[3, 2] == pytest.approx(c, abs=1e-14)
    # last row sees fracture 3's block
    assert N[-1, -3] == pytest.approx(b, abs=1e-14)
    assert N[-1, -2] == pytest.approx(c, abs=1e-14)
    # the last fracture's single unknown enters its neighbour's row with d
    assert N[-2, -1] == pytest.approx(d_last, abs=1e-14)


def test_neumann_blocks_match_closed_forms():
    net = _net(5, BcKind.NEUMANN)
    pair = assemble_neumann_1d(net, RobinParams.uniform(P))
    M, N = pair.M_mat, pair.N_mat
    b = 1.0 / (G2 - G1)
    assert M[0, 0] == pytest.approx(P + 1.0 / G2, abs=1e-14)
    assert M[-1, -1] == pytest.approx(P + 1.0 / (L - G1), abs=1e-14)
    for r in (1, 3, 5):
        assert M[r, r] == pytest.approx(P + b, abs=1e-14)
        assert M[r + 1, r + 1] == pytest.approx(P + b, abs=1e-14)
        assert M[r, r + 1] == pytest.approx(-b, abs=1e-14)
    assert N[0, 1] == pytest.approx(P - b, abs=1e-14)
    assert N[0, 2] == pytest.approx(b, abs=1e-14)
    # the first fracture's flat-profile jump gives coefficient p - 1/gamma2
    assert N[1, 0] == pytest.approx(P - 1.0 / G2, abs=1e-14)
    assert N[-2, -1] == pytest.approx(P - 1.0 / (L - G1), abs=1e-14)


def test_mode_block_value_frozen_oracle():
    # 20 + pi*(coth(0.6 pi) + coth(0.4 pi)) at k = 1, computed to 40 digits
    # with mpmath
    net = _net(5)
    pair = assemble_mode_2d(net, RobinParams.uniform(P), 1.0)
    assert pair.M_mat[0, 0] == pytest.approx(26.98527155040306662, abs=1e-13)
    assert pair.mode_k == 1.0


def test_mode_neumann_uses_tanh_on_outer_segments():
    net = _net(5, BcKind.NEUMANN)
    k = 2.0
    kappa = k * math.pi / L
    pair = assemble_mode_2d(net, RobinParams.uniform(P), k)
    want = P + kappa * (1.0 / math.tanh(kappa * G2) + math.tanh(kappa * (L - G2)))
    assert pair.M_mat[0, 0] == pytest.approx(want, rel=1e-14)


def test_mode_matrices_approach_1d_as_k_vanishes():
    net = _net(4)
    rp = RobinParams.uniform(P)
    T0 = iteration_matrix(assemble_dirichlet_1d(net, rp))
    Tk = iteration_matrix(assemble_mode_2d(net, rp, 1e-5))
    assert np.abs(Tk - T0).max() < 1e-7


def test_row_structure_and_dimensions():
    for n in (2, 3, 7):
        net = _net(n)
        pair = assemble_dirichlet_1d(net, RobinParams.uniform(P))
        dim = unknown_count(net)
        assert pair.M_mat.shape == (dim, dim)
        # M couples only unknowns of the same fracture: each row has at
        # most 2 nonzeros and N never touches the row's own fracture block
        for r in range(dim):
            assert np.count_nonzero(pair.M_mat[r]) <= 2


def test_iteration_matrix_matches_dense_solve():
    net = _net(6)
    pair = assemble_dirichlet_1d(net, RobinParams.uniform(3.5))
    T = iteration_matrix(pair)
    T_ref = np.linalg.solve(pair.M_mat, pair.N_mat)
    assert np.abs(T - T_ref).max() < 1e-13


def test_diffusivity_scales_jump_terms():
    rp = RobinParams.uniform(P)
    pair1 = assemble_dirichlet_1d(_net(3), rp)
    pair2 = assemble_dirichlet_1d(_net(3, nu=2.0), rp)
    # M = s*I + nu*J, so M(nu=2) - M(nu=1) equals the jump part
    jump = pair1.M_mat - P * np.eye(pair1.M_mat.shape[0])
    assert np.abs(pair2.M_mat - (P * np.eye(4) + 2.0 * jump)).max() < 1e-12


def test_per_trace_parameters_enter_matching_rows():
    net = _net(3)
    rp = RobinParams.per_trace([2.0, 3.0], [5.0, 7.0])
    M = assemble_dirichlet_1d(net, rp).M_mat
    # row 0 is fracture 0 at trace 0 (lower side), row 1 fracture 1 at
    # trace 0 (higher side), row 2 fracture 1 at trace 1, row 3 fracture 2
    base = assemble_dirichlet_1d(net, RobinParams.uniform(1.0)).M_mat - np.eye(4)
    diag = np.diag(M - base)
    assert diag == pytest.approx([2.0, 5.0, 3.0, 7.0])


def test_validation_errors():
    net = _net(3)
    with pytest.raises(ValueError, match="positive"):
        RobinParams.uniform(0.0)
    with pytest.raises(ValueError, match="traces"):
        assemble_dirichlet_1d(net, RobinParams.per_trace([1.0], [1.0]))
    with pytest.raises(ValueError, match="uniform"):
        assemble_dirichlet_1d(_net(3, nu=[1.0, 2.0, 1.0]),
                              RobinParams.uniform(1.0))
    with pytest.raises(ValueError, match="positive"):
        assemble_mode_2d(net, RobinParams.uniform(1.0), 0.0)


def test_theorem1_norm_domain_errors():
    with pytest.raises(ValueError, match="p"):
        theorem1_norm(1.0, 0.6, -1.0)
    with pytest.raises(ValueError, match="gamma2"):
        theorem1_norm(1.0, 0.4, 1.0)


@given(gamma2=st.floats(0.51, 0.99), p=st.floats(1e-3, 1e3))
def test_theorem1_norm_is_a_contraction_bound(gamma2, p):
    v = theorem1_norm(1.0, gamma2, p)
    assert 0.0 <= v < 1.0
