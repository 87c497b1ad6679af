"""Command line verification harness.

One binary, four suites:

    verify       every identity check in one report (normalization of the
                 base weight, the sine-transform identity on a u grid, the
                 residue series, the lattice chain, the weight family
                 identity and its moment invariance)
    moments      series route vs quadrature route for the moments
    weights      pointwise dump of the base weight and the family members
    theta-chain  the five closed forms side by side with their spread

Reports are byte-deterministic (see report.py).  Exit code 0 means every
check passed, 1 means at least one failed, 2 means the configuration was
rejected.  When an output path is given, companion PNG figures are rendered
next to it unless --no-figures is passed.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import figures
from .config import (
    SUITES,
    RunConfig,
    apply_flag_overrides,
    load_config_file,
)
from .elliptic import modulus_data, sn_over_cd
from .errors import AccuracyError, ConfigError, ConvergenceError
from .nevanlinna import (
    WeightParams,
    canonical_params,
    lhs_theorem2,
    moment_invariance_report,
    weight_w,
)
from .quadrature import integrate_weighted, lhs_theorem1, moment_quadrature, mystery_weight
from .report import Table, csv_text, json_text, paint, use_color, write_csv, write_json
from .series import moments_from_taylor, residue_series_I
from .theta import chain_check

VERIFY_COLUMNS = (
    "case_id", "suite", "k", "u_re", "u_im",
    "lhs_re", "lhs_im", "rhs_re", "rhs_im",
    "abs_err", "rel_err", "status",
)


@dataclass
class SuiteResult:
    table: Table
    failures: int
    extra: dict = field(default_factory=dict)


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _verify_row(case_id, suite, k, u, lhs, rhs, tol_abs):
    lhs, rhs = complex(lhs), complex(rhs)
    abs_err = abs(lhs - rhs)
    rel_err = abs_err / (1.0 + abs(rhs))
    return (
        case_id, suite, float(k), float(u.real), float(u.imag),
        lhs.real, lhs.imag, rhs.real, rhs.imag,
        abs_err, rel_err, _status(abs_err <= tol_abs),
    )


def _map_cases(tasks, jobs: int):
    """Run zero-argument callables, preserving input order."""
    if jobs <= 1 or len(tasks) <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda t: t(), tasks))


def _nan_verify_rows(case_ids, suite, k, u):
    n = math.nan
    rows = tuple(
        (cid, suite, float(k), float(u.real), float(u.imag),
         n, n, n, n, n, n, "fail")
        for cid in case_ids
    )
    return rows if len(rows) > 1 else rows[0]


def _guarded(compute, case_ids, suite, k, u=0j):
    """A failed evaluation becomes a fail row, never a crash."""
    def run():
        try:
            return compute()
        except (AccuracyError, ConvergenceError):
            return _nan_verify_rows(case_ids, suite, k, u)
    return run


def _ones(x):
    import numpy as np

    return np.ones_like(x)


def cmd_verify(cfg: RunConfig) -> SuiteResult:
    tols = cfg.tols
    tasks = []

    for k in cfg.norm_k_grid:
        cid = f"norm_k{k:g}"
        def case(k=k, cid=cid):
            lhs = integrate_weighted(_ones, k)
            return _verify_row(cid, "normalization", k,
                               0j, lhs, 1.0 + 0j, tols["norm"])
        tasks.append(_guarded(case, (cid,), "normalization", k))

    for k in cfg.k_grid:
        md = modulus_data(k)
        for a, b in cfg.u_fractions:
            u = a * md.K + 1j * b * md.K_prime
            cid = f"t1_k{k:g}_a{a:g}_b{b:g}"
            def case(k=k, u=u, cid=cid):
                lhs = lhs_theorem1(u, k)
                rhs = sn_over_cd(u, k)
                # pass bound scales with the right-hand side magnitude
                return _verify_row(cid, "theorem1", k,
                                   u, lhs, rhs, tols["theorem1"] * (1.0 + abs(rhs)))
            tasks.append(_guarded(case, (cid,), "theorem1", k, u))

    for k in cfg.k_grid:
        md = modulus_data(k)
        for v in cfg.v_grid:
            u = 0.5 * v * (md.K + 1j * md.K_prime)
            cid = f"res_k{k:g}_v{v:g}"
            def case(k=k, v=v, u=u, cid=cid):
                lhs = residue_series_I(v, k)
                rhs = lhs_theorem1(u, k)
                return _verify_row(cid, "residue", k,
                                   u, lhs, rhs, tols["residue"])
            tasks.append(_guarded(case, (cid,), "residue", k, u))

    for k in cfg.k_grid:
        md = modulus_data(k)
        for v in cfg.chain_v_grid:
            u = 0.5 * v * (md.K + 1j * md.K_prime)
            cids = (f"chain_k{k:g}_v{v:g}", f"chain4_k{k:g}_v{v:g}")
            def case(k=k, v=v, u=u, cids=cids):
                stages, sncd = chain_check(v, k)
                dev = max(abs(x - y) for x in stages for y in stages)
                scale = 1.0 + max(abs(x) for x in stages)
                row1 = _verify_row(cids[0], "theta_chain", k,
                                   u, dev + 0j, 0j, tols["chain"] * scale)
                row2 = _verify_row(cids[1], "theta_chain", k,
                                   u, stages[4], sncd, tols["chain_sncd"])
                return (row1, row2)
            tasks.append(_guarded(case, cids, "theta_chain", k, u))

    k2 = cfg.theorem2_k
    md2 = modulus_data(k2)
    for t, g in cfg.weight_params:
        for a, b in ((0.4, 0.0), (0.15, 0.15)):
            u = a * md2.K + 1j * b * md2.K_prime
            cid = f"t2_k{k2:g}_t{t:g}_g{g:g}_a{a:g}_b{b:g}"
            def case(t=t, g=g, u=u, cid=cid):
                lhs = lhs_theorem2(u, WeightParams(t=t, gamma=g), k2)
                rhs = sn_over_cd(u, k2)
                return _verify_row(cid, "theorem2", k2, u, lhs, rhs,
                                   tols["theorem2"])
            tasks.append(_guarded(case, (cid,), "theorem2", k2, u))

    minv_ids = tuple(f"minv_k{k2:g}_n{n}" for n in range(cfg.invariance_n_max + 1))

    def invariance_case():
        params = tuple(WeightParams(t=t, gamma=g) for t, g in cfg.weight_params)
        rep = moment_invariance_report(k2, params=params, n_max=cfg.invariance_n_max)
        rows = []
        for n in range(cfg.invariance_n_max + 1):
            scale = max(1.0, abs(moments_from_taylor(n, k2)))
            rows.append(_verify_row(minv_ids[n], "moment_invariance", k2,
                                    0j, rep.max_deviation[n] + 0j, 0j,
                                    tols["invariance"] * scale))
        return tuple(rows)
    tasks.append(_guarded(invariance_case, minv_ids, "moment_invariance", k2))

    rows = []
    for result in _map_cases(tasks, cfg.jobs):
        if isinstance(result, tuple) and result and isinstance(result[0], tuple):
            rows.extend(result)
        else:
            rows.append(result)
    table = Table(columns=VERIFY_COLUMNS, rows=tuple(rows))
    return SuiteResult(table, table.n_fail)


def cmd_moments(cfg: RunConfig) -> SuiteResult:
    tol = cfg.tols["moments"]
    tasks = []
    for k in cfg.k_grid:
        for n in range(cfg.moments_max + 1):
            def case(k=k, n=n):
                try:
                    mt = moments_from_taylor(n, k)
                    mq = moment_quadrature(n, k)
                except (AccuracyError, ConvergenceError):
                    return (n, float(k), math.nan, math.nan, math.nan), False
                rel = abs(mq - mt) / max(1.0, abs(mt))
                return (n, float(k), float(mt), float(mq), rel), rel <= tol
            tasks.append(case)
    results = _map_cases(tasks, cfg.jobs)
    table = Table(columns=("n", "k", "m_taylor", "m_quadrature", "rel_err"),
                  rows=tuple(r for r, _ in results))
    return SuiteResult(table, sum(0 if ok else 1 for _, ok in results))


def _param_label(t: float, g: float) -> str:
    return f"w_t{t:g}_g{g:g}"


def cmd_dump_weight(cfg: RunConfig) -> SuiteResult:
    import numpy as np

    tol = cfg.tols["weights"]
    xs = np.linspace(cfg.x_min, cfg.x_max, cfg.points)
    failures = 0
    blocks = []
    for k in cfg.k_grid:
        base = mystery_weight(xs, k)
        cp = canonical_params(k)
        members = [WeightParams(t=t, gamma=g) for t, g in cfg.weight_params]
        member_vals = [weight_w(xs, p, k) for p in members]
        canon = weight_w(xs, WeightParams(t=cp.t_star, gamma=cp.gamma_star), k)
        failures += int(np.any(np.abs(canon - base) > tol * base))
        blocks.append((k, base, member_vals, canon))

    columns = ("x", "k", "mystery") + tuple(
        _param_label(t, g) for t, g in cfg.weight_params
    ) + ("w_canonical",)
    rows = []
    for k, base, member_vals, canon in blocks:
        for i, x in enumerate(xs):
            rows.append(
                (float(x), float(k), float(base[i]))
                + tuple(float(mv[i]) for mv in member_vals)
                + (float(canon[i]),)
            )
    table = Table(columns=columns, rows=tuple(rows))
    return SuiteResult(table, failures, {"blocks": blocks, "xs": xs})


def cmd_theta_chain(cfg: RunConfig) -> SuiteResult:
    tol = cfg.tols["chain"]
    tol4 = cfg.tols["chain_sncd"]
    tasks = []
    for k in cfg.k_grid:
        for v in cfg.chain_v_grid:
            def case(k=k, v=v):
                try:
                    stages, sncd = chain_check(v, k)
                except (AccuracyError, ConvergenceError):
                    return (float(v), float(k)) + (math.nan,) * 13, False
                dev = max(abs(x - y) for x in stages for y in stages)
                scale = 1.0 + max(abs(x) for x in stages)
                ok = dev <= tol * scale and abs(stages[4] - sncd) <= tol4
                row = (float(v), float(k))
                for s in stages:
                    row += (s.real, s.imag)
                row += (sncd.real, sncd.imag, dev)
                return row, ok
            tasks.append(case)
    results = _map_cases(tasks, cfg.jobs)
    columns = ("v", "k")
    for i in range(5):
        columns += (f"stage{i}_re", f"stage{i}_im")
    columns += ("sncd_re", "sncd_im", "max_dev")
    table = Table(columns=columns, rows=tuple(r for r, _ in results))
    return SuiteResult(table, sum(0 if ok else 1 for _, ok in results))


def _out_path(cfg: RunConfig, suite: str, multi: bool) -> str | None:
    if cfg.out is None:
        return None
    if not multi:
        return cfg.out
    stem, ext = os.path.splitext(cfg.out)
    return f"{stem}_{suite}{ext or '.' + cfg.fmt}"


def _figure_base(cfg: RunConfig, out_path: str | None) -> str | None:
    if not cfg.figures:
        return None
    if cfg.figures_dir is not None:
        os.makedirs(cfg.figures_dir, exist_ok=True)
        return cfg.figures_dir
    if out_path is not None:
        return os.path.dirname(os.path.abspath(out_path))
    return None


def _render_figures(suite: str, result: SuiteResult, cfg: RunConfig,
                    out_path: str | None) -> list:
    base = _figure_base(cfg, out_path)
    if base is None:
        return []
    table = result.table
    stem = os.path.splitext(os.path.basename(out_path or suite))[0]
    made = []
    if suite == "verify":
        i_err = VERIFY_COLUMNS.index("abs_err")
        i_id = VERIFY_COLUMNS.index("case_id")
        made.append(figures.error_scatter(
            [r[i_id] for r in table.rows],
            [r[i_err] for r in table.rows],
            [("theorem1", cfg.tols["theorem1"]), ("chain", cfg.tols["chain"])],
            os.path.join(base, f"{stem}_errors.png"),
            "verification error per case",
        ))
    elif suite == "moments":
        ns = sorted({r[0] for r in table.rows})
        ks = sorted({r[1] for r in table.rows})
        rel = {(r[0], r[1]): r[4] for r in table.rows}
        made.append(figures.moment_bars(ns, ks, rel, cfg.tols["moments"],
                                        os.path.join(base, f"{stem}_moments.png")))
    elif suite == "weights":
        for k, base_w, member_vals, canon in result.extra["blocks"]:
            labels = [_param_label(t, g) for t, g in cfg.weight_params] + ["canonical"]
            made.append(figures.weight_overlay(
                result.extra["xs"], base_w, member_vals + [canon], labels,
                os.path.join(base, f"{stem}_weights_k{k:g}.png")))
    elif suite == "theta-chain":
        vs = sorted({r[0] for r in table.rows})
        ks = sorted({r[1] for r in table.rows})
        dev = {(r[0], r[1]): r[-1] for r in table.rows}
        made.append(figures.chain_deviation(vs, ks, dev, cfg.tols["chain"],
                                            os.path.join(base, f"{stem}_chain.png")))
    return made


_RUNNERS = {
    "verify": cmd_verify,
    "moments": cmd_moments,
    "weights": cmd_dump_weight,
    "theta-chain": cmd_theta_chain,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mystint",
        description="verify the elliptic integral identities and dump their tables",
    )
    parser.add_argument("--config", metavar="PATH", help="INI-style config file")
    parser.add_argument("--suite", choices=SUITES + ("all",), default="verify")
    parser.add_argument("--k", metavar="LIST",
                        help="comma-separated moduli overriding the config grid")
    parser.add_argument("--moments-max", type=int, metavar="N",
                        help="highest moment index for the moments suite (<= 12)")
    parser.add_argument("--tol", type=float, metavar="TOL",
                        help="override every pass tolerance at once")
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--out", metavar="PATH",
                        help="report file; suite name is appended for --suite all")
    parser.add_argument("--jobs", type=int, metavar="N",
                        help="evaluate independent cases with N worker threads")
    parser.add_argument("--no-figures", action="store_true",
                        help="skip PNG rendering on the report path")
    parser.add_argument("--figures-dir", metavar="DIR",
                        help="render figures here instead of next to the report")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig()
        if args.config:
            cfg = load_config_file(args.config, cfg)
        cfg = apply_flag_overrides(cfg, args).validated()
    except ConfigError as exc:
        print(f"mystint: invalid configuration: {exc}", file=sys.stderr)
        return 2

    suites = list(SUITES) if args.suite == "all" else [args.suite]
    multi = len(suites) > 1
    echo = sys.stderr if cfg.out is None else sys.stdout
    color = use_color(echo)

    total_failures = 0
    for suite in suites:
        result = _RUNNERS[suite](cfg)
        total_failures += result.failures
        out_path = _out_path(cfg, suite, multi)
        if out_path is None:
            text = csv_text(result.table) if cfg.fmt == "csv" else json_text(result.table)
            sys.stdout.write(text)
        else:
            try:
                (write_csv if cfg.fmt == "csv" else write_json)(result.table, out_path)
                fig_paths = _render_figures(suite, result, cfg, out_path)
            except OSError as exc:
                path = exc.filename or out_path
                print(f"mystint: cannot write {path}: {exc.strerror or exc}",
                      file=sys.stderr)
                return 2
            for fig_path in fig_paths:
                print(f"{suite}: figure {fig_path}", file=echo)
        verdict = "ok" if result.failures == 0 else f"{result.failures} FAILED"
        verdict = paint(verdict, "32" if result.failures == 0 else "31", color)
        print(f"{suite}: {len(result.table.rows)} rows, {verdict}"
              + (f" -> {out_path}" if out_path else ""), file=echo)

    return 0 if total_failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
