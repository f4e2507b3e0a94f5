"""Experiment driver: fracture-count and parameter sweeps, mode sweeps,
Robin-parameter optimization and Schwarz-vs-matrix validation.

Each run writes a CSV (17 significant digits), a JSON metadata sidecar
sufficient to reproduce it, a deterministic SVG chart and a matplotlib PNG.
Exit codes: 0 success, 1 validation error, 2 compute error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .config import (ConfigError, build_network, get_bool, get_float, get_grid,
                     get_int, parse_config, write_csv)
from .convergence import (TwoFractureGeometry, f_symbols,
                          optimize_equioscillation, rho_tilde,
                          two_fracture_p_estimate)
from .figures import render_png
from .matrices import (RobinParams, assemble_dirichlet_1d, assemble_neumann_1d,
                       assemble_mode_2d, iteration_matrix)
from .network import BcKind, Network, build_staircase
from .solver import make_discretization, observed_vs_predicted, osm_iterate
from .spectral import ModeRange, max_mode_radius, spectral_radius
from .svgplot import emit_svg


def _pmap(fn, items, threads: int):
    if threads <= 1:
        return [fn(it) for it in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _with_bc(net: Network, bc: BcKind) -> Network:
    return Network(net.n_fractures, net.length, net.gamma1, net.gamma2,
                   net.diffusivities, bc)


def _write_meta(out_dir: str, name: str, cfg: dict, args) -> None:
    meta = {
        "experiment": name,
        "config": cfg,
        "seed": args.seed,
        "threads": args.threads,
        "version": __version__,
        "argv": list(sys.argv[1:]),
    }
    with open(os.path.join(out_dir, f"{name}.meta.json"), "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _dump_matrices(out_dir: str, tag: str, pair) -> None:
    T = iteration_matrix(pair)
    for label, mat in (("M", pair.M_mat), ("N", pair.N_mat), ("T", T)):
        path = os.path.join(out_dir, f"matrices_{tag}_{label}.csv")
        write_csv(path, [f"c{i}" for i in range(mat.shape[1])], mat.tolist())


def _robin(cfg) -> RobinParams:
    if "s_minus" in cfg or "s_plus" in cfg:
        sm = [float(v) for v in cfg["s_minus"].split(",")]
        sp_ = [float(v) for v in cfg["s_plus"].split(",")]
        return RobinParams.per_trace(sm, sp_)
    return RobinParams.uniform(get_float(cfg, "p", 20.0))


def run_sweep_n(cfg, args, out_dir: str) -> str:
    n_grid = [int(v) for v in get_grid(cfg, "n_grid")]
    if any(n < 2 for n in n_grid):
        raise ConfigError(f"n_grid entries must be >= 2, got {n_grid}")
    base = build_network({**cfg, "n_fractures": str(n_grid[0])})
    rp = _robin(cfg)
    h = get_float(cfg, "h", 0.0) if "h" in cfg else None

    def one(n: int):
        net_d = build_network({**cfg, "n_fractures": str(n)}, BcKind.DIRICHLET)
        net_n = _with_bc(net_d, BcKind.NEUMANN)
        rho_d = spectral_radius(iteration_matrix(assemble_dirichlet_1d(net_d, rp))).rho
        rho_n = spectral_radius(iteration_matrix(assemble_neumann_1d(net_n, rp))).rho
        row = [n, rho_d, rho_n]
        if h:
            mr_d = ModeRange.from_mesh(net_d.length, h, include_zero=True)
            mr_n = ModeRange.from_mesh(net_d.length, h, include_zero=True)
            row.append(max_mode_radius(net_d, rp, mr_d, BcKind.DIRICHLET).rho)
            row.append(max_mode_radius(net_n, rp, mr_n, BcKind.NEUMANN).rho)
        return row

    rows = _pmap(one, n_grid, args.threads)
    header = ["n", "rho_dirichlet", "rho_neumann"]
    if h:
        header += ["rho2d_dirichlet", "rho2d_neumann"]
    csv_path = os.path.join(out_dir, "sweep_n.csv")
    write_csv(csv_path, header, rows)
    _write_meta(out_dir, "sweep_n", cfg, args)
    if args.dump_matrices:
        _dump_matrices(out_dir, f"n{n_grid[0]}",
                       assemble_dirichlet_1d(base, rp))
    emit_svg(csv_path, "n", header[1:])
    render_png(csv_path, "n", header[1:], title="spectral radius vs fracture count")
    return csv_path


def run_sweep_p(cfg, args, out_dir: str) -> str:
    p_grid = get_grid(cfg, "p_grid")
    if not p_grid:
        raise ConfigError("p_grid is empty")
    net = build_network(cfg)
    g = TwoFractureGeometry(net.length, net.gamma1, net.gamma2,
                            net.diffusivities[0], net.diffusivities[-1])
    use_2d = get_bool(cfg, "mode_2d", False)
    h = get_float(cfg, "h", 1 / 100)

    def rho_of(p: float) -> float:
        rp = RobinParams.uniform(p)
        if use_2d:
            mr = ModeRange.from_mesh(net.length, h,
                                     include_zero=net.bc_kind is BcKind.NEUMANN)
            return max_mode_radius(net, rp, mr).rho
        if net.bc_kind is BcKind.DIRICHLET:
            return spectral_radius(iteration_matrix(assemble_dirichlet_1d(net, rp))).rho
        return spectral_radius(iteration_matrix(assemble_neumann_1d(net, rp))).rho

    rhos = _pmap(rho_of, p_grid, args.threads)
    rows = [[p, r, 0] for p, r in zip(p_grid, rhos)]
    # marker row: the two-fracture predicted optimum, for overlay
    if len(p_grid) > 1:
        if use_2d:
            res = optimize_equioscillation(g, net.length / h)
            f1, f2 = f_symbols(res.p_star, g)
            p_pred = math.sqrt(f1 * f2)
        else:
            p_pred = two_fracture_p_estimate(g)
        rows.append([p_pred, rho_of(p_pred), 1])
    csv_path = os.path.join(out_dir, "sweep_p.csv")
    write_csv(csv_path, ["p", "rho", "marker"], rows)
    _write_meta(out_dir, "sweep_p", cfg, args)
    if args.dump_matrices:
        _dump_matrices(out_dir, f"p{p_grid[0]:g}",
                       assemble_dirichlet_1d(net, RobinParams.uniform(p_grid[0])))
    emit_svg(csv_path, "p", ["rho"], log_x=True)
    render_png(csv_path, "p", ["rho"], log_x=True,
               title="spectral radius vs Robin parameter")
    return csv_path


def run_sweep_mode(cfg, args, out_dir: str) -> str:
    net = build_network(cfg)
    rp = _robin(cfg)
    h = get_float(cfg, "h", 1 / 100)
    if "k_grid" in cfg:
        ks = get_grid(cfg, "k_grid")
    else:
        ks = list(ModeRange.from_mesh(net.length, h).samples())
    include_zero = get_bool(cfg, "include_zero",
                            net.bc_kind is BcKind.NEUMANN)
    rows = []
    if include_zero:
        pair = (assemble_dirichlet_1d(net, rp)
                if net.bc_kind is BcKind.DIRICHLET
                else assemble_neumann_1d(net, rp))
        rows.append([0.0, spectral_radius(iteration_matrix(pair)).rho])

    def one(k: float):
        T = iteration_matrix(assemble_mode_2d(net, rp, k))
        return [k, spectral_radius(T).rho]

    rows += _pmap(one, ks, args.threads)
    csv_path = os.path.join(out_dir, "sweep_mode.csv")
    write_csv(csv_path, ["k", "rho"], rows)
    _write_meta(out_dir, "sweep_mode", cfg, args)
    if args.dump_matrices:
        _dump_matrices(out_dir, f"k{ks[0]:g}", assemble_mode_2d(net, rp, ks[0]))
    emit_svg(csv_path, "k", ["rho"])
    render_png(csv_path, "k", ["rho"], title="per-mode spectral radius")
    return csv_path


def run_optimize(cfg, args, out_dir: str) -> str:
    length = get_float(cfg, "length", 1.0)
    nu_spec = cfg.get("nu", "1")
    nus = [float(v) for v in nu_spec.split(",")]
    g = TwoFractureGeometry(length, get_float(cfg, "gamma1"),
                            get_float(cfg, "gamma2"),
                            nus[0], nus[-1])
    k_max = get_float(cfg, "k_max", 0.0) or length / get_float(cfg, "h", 1 / 100)
    res = optimize_equioscillation(g, k_max)
    f1, f2 = f_symbols(res.p_star, g)
    csv_path = os.path.join(out_dir, "optimize.csv")
    write_csv(csv_path,
              ["p_star", "value", "equioscillation_residual", "k_max",
               "s_minus", "s_plus"],
              [[res.p_star, res.value, res.equioscillation_residual,
                res.k_max, f1, f2]])
    ks = np.concatenate(([0.0], np.geomspace(k_max * 1e-4, k_max, 400)))
    curve = [[float(k), rho_tilde(float(k), res.p_star, g)] for k in ks]
    curve_path = os.path.join(out_dir, "optimize_curve.csv")
    write_csv(curve_path, ["k", "rho_tilde"], curve)
    _write_meta(out_dir, "optimize", cfg, args)
    emit_svg(curve_path, "k", ["rho_tilde"])
    render_png(curve_path, "k", ["rho_tilde"],
               title="equioscillated convergence factor")
    return csv_path


def run_osm_validate(cfg, args, out_dir: str) -> str:
    net = build_network(cfg)
    rp = _robin(cfg)
    disc = make_discretization(net, get_float(cfg, "h", 1 / 160))
    seed = args.seed if args.seed is not None else get_int(cfg, "seed", 0)
    observed, predicted, ratio = observed_vs_predicted(net, disc, rp, seed=seed)
    csv_path = os.path.join(out_dir, "osm_validate.csv")
    write_csv(csv_path, ["observed_rate", "predicted_rho", "ratio"],
              [[observed, predicted, ratio]])
    report = osm_iterate(net, disc, rp, tol=1e-12,
                         max_iter=get_int(cfg, "max_iter", 120),
                         init="random", seed=seed,
                         reference=np.zeros((net.n_fractures,
                                             disc.n_intervals + 1)))
    hist_path = os.path.join(out_dir, "osm_history.csv")
    write_csv(hist_path, ["iteration", "trace_error"],
              [[i + 1, e] for i, e in enumerate(report.error_history)])
    _write_meta(out_dir, "osm_validate", cfg, args)
    if args.dump_matrices:
        pair = (assemble_dirichlet_1d(net, rp)
                if net.bc_kind is BcKind.DIRICHLET
                else assemble_neumann_1d(net, rp))
        _dump_matrices(out_dir, "validate", pair)
    emit_svg(hist_path, "iteration", ["trace_error"], log_y=True)
    render_png(hist_path, "iteration", ["trace_error"], log_y=True,
               title="Schwarz trace-error history")
    return csv_path


EXPERIMENTS = {
    "sweep-n": run_sweep_n,
    "sweep-p": run_sweep_p,
    "sweep-mode": run_sweep_mode,
    "optimize": run_optimize,
    "osm-validate": run_osm_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dfn-osm",
        description="Schwarz-method scalability experiments on staircase "
                    "fracture networks")
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in EXPERIMENTS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True)
        sp.add_argument("--out", default="out")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--dump-matrices", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config)
        os.makedirs(args.out, exist_ok=True)
        csv_path = EXPERIMENTS[args.experiment](cfg, args, args.out)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (np.linalg.LinAlgError, ArithmeticError, RuntimeError) as exc:
        print(f"compute error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    print(csv_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
