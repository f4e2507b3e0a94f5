import pytest
from hypothesis import given, strategies as st

from dfn_osm import (BcKind, Network, build_staircase, trace_layout,
                     unknown_count)


def test_build_staircase_basic():
    net = build_staircase(5, 1.0, 0.2, 0.6, 1.0, BcKind.DIRICHLET)
    assert net.n_fractures == 5
    assert net.n_traces == 4
    assert net.diffusivities == (1.0,) * 5
    assert unknown_count(net) == 8


def test_per_fracture_diffusivities():
    net = build_staircase(3, 1.0, 0.2, 0.6, [1.0, 2.0, 3.0])
    assert net.diffusivities == (1.0, 2.0, 3.0)


def test_trace_layout_ends_carry_one_trace():
    net = build_staircase(4, 1.0, 0.25, 0.5, 1.0)
    layout = trace_layout(net)
    assert layout.coords[0] == (0.5,)
    assert layout.coords[1] == (0.25, 0.5)
    assert layout.coords[2] == (0.25, 0.5)
    assert layout.coords[3] == (0.25,)


@pytest.mark.parametrize("kwargs,match", [
    (dict(n=1), "n_fractures"),
    (dict(length=0.0), "length"),
    (dict(gamma1=-0.1), "gamma1"),
    (dict(gamma1=0.6, gamma2=0.2), "gamma1 >= gamma2"),
    (dict(gamma2=1.5), "gamma2"),
    (dict(nu=0.0), "diffusivities"),
    (dict(nu=[1.0, 1.0]), "diffusivities"),
])
def test_validation_errors(kwargs, match):
    args = dict(n=5, length=1.0, gamma1=0.2, gamma2=0.6, nu=1.0)
    args.update(kwargs)
    with pytest.raises(ValueError, match=match):
        build_staircase(args["n"], args["length"], args["gamma1"],
                        args["gamma2"], args["nu"])


def test_network_is_frozen():
    net = build_staircase(2, 1.0, 0.2, 0.6, 1.0)
    with pytest.raises(AttributeError):
        net.length = 2.0


@given(n=st.integers(2, 40),
       length=st.floats(0.5, 10.0),
       t1=st.floats(0.05, 0.45),
       t2=st.floats(0.55, 0.95),
       nu=st.floats(0.01, 100.0),
       bc=st.sampled_from(list(BcKind)))
def test_valid_geometry_always_builds(n, length, t1, t2, nu, bc):
    net = build_staircase(n, length, t1 * length, t2 * length, nu, bc)
    assert unknown_count(net) == 2 * n - 2
    layout = trace_layout(net)
    assert len(layout.coords) == n
    assert sum(len(c) for c in layout.coords) == unknown_count(net)
