"""Command-line front end: rate queries, sweeps to CSV, verification, simulation."""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import dm
from . import gaussian as gs
from . import optimize as opt
from .feedback import SimConfig, simulate_refinement
from .verify import CHECKS, format_report, run_checks

EXIT_FAIL = 1
EXIT_USAGE = 2

GAUSS_KEYS = {"p": float, "pr": float, "ps": float, "n0": float, "gamma_db": float,
              "csr": float, "crs": float, "scheme": str, "steps_alpha": int, "steps_beta": int,
              "refine_iters": int, "alpha": float, "beta": float, "d": float, "model": str,
              "out": str}

LABELS = {
    "1": "block-Markov scheme, max-min of A1..A3 with the Wyner-Ziv feasibility test",
    "2": "noisy-network-coding scheme, max-min of B1..B3",
    "nosi": "relay ignores the state, 1-D max-min over alpha",
    "upper": "cut-set bound with jointly Gaussian inputs",
    "nocoop": "no-cooperation capacity C((P + P_R)/P_S)",
    "fullcoop": "full-cooperation value C((P + P_R + 2 sqrt(P P_R))/P_S)",
}


class UsageError(Exception):
    pass


def read_scenario(path: str) -> dict[str, str]:
    """Flat key=value file; '#' starts a comment; blank lines ignored."""
    out: dict[str, str] = {}
    for num, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, val = line.partition("=")
        if not eq:
            raise UsageError(f"{path}:{num}: expected key=value, got {raw!r}")
        key = key.strip().replace("-", "_")
        if key not in GAUSS_KEYS:
            raise UsageError(f"{path}:{num}: unknown key {key!r}")
        out[key] = val.strip()
    return out


def _merge(args: argparse.Namespace, keys) -> dict:
    """Command-line flags override scenario-file values."""
    scen = read_scenario(args.scenario) if getattr(args, "scenario", None) else {}
    vals = {}
    for key in keys:
        v = getattr(args, key, None)
        if v is None and key in scen:
            try:
                v = GAUSS_KEYS[key](scen[key])
            except ValueError as exc:
                raise UsageError(f"bad value for {key}: {scen[key]!r}") from exc
        vals[key] = v
    return vals


def _gaussian_spec(v: dict) -> gs.GaussianChannelSpec:
    if v.get("n0") is not None and v.get("gamma_db") is not None:
        raise UsageError("give either --n0 or --gamma-db, not both")
    if v.get("gamma_db") is not None:
        n0 = gs.db_to_n0(v["gamma_db"])
    else:
        n0 = v.get("n0")
    missing = [k for k, x in (("p", v.get("p")), ("pr", v.get("pr")), ("ps", v.get("ps")), ("n0", n0)) if x is None]
    if missing:
        raise UsageError(f"missing parameters: {', '.join(missing)}")
    return gs.GaussianChannelSpec(v["p"], v["pr"], v["ps"], n0, v.get("csr") or 0.0, v.get("crs") or 0.0)


def _grid(v: dict) -> opt.GridConfig:
    base = opt.GridConfig()
    return opt.GridConfig(
        steps_alpha=v.get("steps_alpha") or base.steps_alpha,
        steps_beta=v.get("steps_beta") or base.steps_beta,
        refine_iters=base.refine_iters if v.get("refine_iters") is None else v["refine_iters"],
    )


def _fmt_terms(names, terms) -> str:
    return ", ".join(f"{n}={opt.fmt(t)}" for n, t in zip(names, terms))


def cmd_rate_binary(args) -> int:
    if args.no_si:
        val = dm.binary_no_si_rate(args.p, args.ps)
        label = "relay ignores the state: Hb(p * p_s) - Hb(p_s)"
    else:
        val = dm.binary_capacity(args.p, args.pr, args.ps)
        label = "capacity without cooperation: min(Hb(p), Hb(p * p_r * p_s) - Hb(p_s))"
    print(f"rate: {val:.4f} bits/use")
    print(f"formula: {label}")
    return 0


def cmd_rate_dm(args) -> int:
    spec = dm.DmChannelSpec.modulo_additive(args.ps, args.csr, args.crs)
    if args.bound == "upper":
        val = dm.dm_upper_bound(spec, grid=args.grid)
        label = "cut-set bound over joint p(x, x_R)"
    else:
        val = dm.capacity_no_coop(spec, grid=args.grid, cost_x=args.cost_x, cost_xr=args.cost_xr)
        label = "capacity without cooperation over product inputs"
    print(f"rate: {val:.6f} bits/use")
    print(f"channel: Y = X xor X_R xor S, p_s={args.ps:g}, c_sr={args.csr:g}, c_rs={args.crs:g}")
    print(f"formula: {label}")
    return 0


def cmd_rate_gaussian(args) -> int:
    v = _merge(args, GAUSS_KEYS)
    spec = _gaussian_spec(v)
    scheme = v.get("scheme") or "2"
    if scheme not in LABELS:
        raise UsageError(f"unknown scheme {scheme!r}; choose from {sorted(LABELS)}")
    fixed = [v.get(k) for k in ("alpha", "beta", "d")]
    lines = []
    status = 0
    if any(x is not None for x in fixed):
        if scheme not in ("1", "2") or any(x is None for x in fixed):
            raise UsageError("--alpha, --beta and --d go together and need --scheme 1 or 2")
        pol = gs.GaussianPolicy(*fixed)
        bd = gs.scheme1_terms(spec, pol) if scheme == "1" else gs.scheme2_terms(spec, pol)
        if not bd.feasible:
            lines.append("rate: infeasible (Wyner-Ziv index does not fit)")
            status = EXIT_FAIL
        else:
            lines.append(f"rate: {opt.fmt(bd.rate)} bits/use")
        lines.append(f"terms: {_fmt_terms(bd.names, bd.terms)}")
        lines.append(f"policy: alpha={opt.fmt(pol.alpha)}, beta={opt.fmt(pol.beta)}, d={opt.fmt(pol.d)}")
    elif scheme in ("1", "2"):
        res = opt.optimize_scheme(spec, scheme, _grid(v))
        pol = res.argmax
        lines.append(f"rate: {opt.fmt(res.rate)} bits/use")
        lines.append(f"terms: {_fmt_terms(res.breakdown.names, res.breakdown.terms)}")
        lines.append(f"argmax: alpha={opt.fmt(pol.alpha)}, beta={opt.fmt(pol.beta)}, d={opt.fmt(pol.d)}, "
                     f"P_Q={opt.fmt(pol.p_q(spec.p_s))}")
    elif scheme == "nosi":
        val, alpha = gs.no_si_rate(spec, return_alpha=True)
        lines.append(f"rate: {opt.fmt(val)} bits/use")
        lines.append(f"terms: {_fmt_terms(('R1', 'R2'), gs.no_si_terms(spec, alpha))}")
        lines.append(f"argmax: alpha={opt.fmt(alpha)}")
    elif scheme == "upper":
        val, rho = gs.gaussian_upper_bound(spec, return_rho=True)
        lines.append(f"rate: {opt.fmt(val)} bits/use")
        mac, bc = gs.upper_bound_terms(spec, rho)
        if spec.n0 == 0 and spec.p > 0:
            # supremum as rho -> 1: the broadcast cut is unbounded for every rho < 1
            lines.append(f"terms: MAC={opt.fmt(mac)}, BC=inf")
            lines.append("argmax: rho -> 1")
        else:
            lines.append(f"terms: {_fmt_terms(('MAC', 'BC'), (mac, bc))}")
            lines.append(f"argmax: rho={opt.fmt(rho)}")
    else:
        fn = gs.no_coop_capacity if scheme == "nocoop" else gs.full_coop_capacity
        lines.append(f"rate: {opt.fmt(fn(spec))} bits/use")
    lines.append(f"formula: {LABELS[scheme]}")
    print("\n".join(lines))
    return status


def _parse_values(text: str) -> list[float]:
    """'0:1.6:0.1' (inclusive range) or '0,0.5,1'."""
    try:
        if ":" in text:
            start, stop, step = (float(x) for x in text.split(":"))
            if step <= 0:
                raise UsageError("range step must be positive")
            return opt._frange(start, stop, step)
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad value list {text!r}") from exc


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_sweep(args) -> int:
    if args.preset:
        if args.vary or args.series:
            raise UsageError("--preset cannot be combined with --vary/--series")
        table = opt.run_preset(args.preset)
    else:
        if not (args.vary and args.values and args.series):
            raise UsageError("give --preset, or --vary, --values and --series")
        v = _merge(args, GAUSS_KEYS)
        if v.get("n0") is None and v.get("gamma_db") is None:
            v["n0"] = 0.0
        template = _gaussian_spec(v)
        table = opt.sweep(template, args.vary, _parse_values(args.values),
                          [s.strip() for s in args.series.split(",")], _grid(v))
    _write(table.to_csv(), args.out)
    return 0


def cmd_verify(args) -> int:
    only = [s.strip() for s in args.only.split(",")] if args.only else None
    results = run_checks(only, args.samples, on_result=lambda r: print(r.line(), flush=True))
    print(format_report(results).splitlines()[-1])
    return 0 if all(r.passed for r in results) else EXIT_FAIL


def cmd_simulate(args) -> int:
    cfg = SimConfig(args.pr, args.ps, args.n, args.rate, args.trials, args.seed)
    rep = simulate_refinement(cfg)
    print(f"trials: {rep.trials}")
    print(f"codebook size: {cfg.codebook_size}")
    print(f"error rate: {rep.error_rate:.6g}")
    print(f"final MSE: empirical {opt.fmt(rep.empirical_mse[-1])}, analytic {opt.fmt(rep.analytic_mse[-1])}")
    if args.out:
        rows = ["step,empirical_mse,analytic_mse"]
        rows += [f"{k},{opt.fmt(e)},{opt.fmt(a)}"
                 for k, (e, a) in enumerate(zip(rep.empirical_mse, rep.analytic_mse), 1)]
        _write("\n".join(rows) + "\n", args.out)
    return 0


def _add_gaussian_flags(p: argparse.ArgumentParser):
    p.add_argument("--scenario", help="key=value scenario file; flags override it")
    p.add_argument("--p", type=float, help="source power P")
    p.add_argument("--pr", type=float, help="relay power P_R")
    p.add_argument("--ps", type=float, help="state power P_S")
    p.add_argument("--n0", type=float, help="noise power N0")
    p.add_argument("--gamma-db", dest="gamma_db", type=float, help="10 log10(1/N0), instead of --n0")
    p.add_argument("--csr", type=float, help="source-to-relay link capacity")
    p.add_argument("--crs", type=float, help="relay-to-source link capacity")
    p.add_argument("--steps-alpha", dest="steps_alpha", type=int)
    p.add_argument("--steps-beta", dest="steps_beta", type=int)
    p.add_argument("--refine-iters", dest="refine_iters", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relaycoop", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    rate = sub.add_parser("rate", help="single-point rate query")
    rsub = rate.add_subparsers(dest="model", required=True)
    b = rsub.add_parser("binary", help="binary modulo-additive example")
    b.add_argument("--p", type=float, required=True)
    b.add_argument("--pr", type=float, default=0.0)
    b.add_argument("--ps", type=float, required=True)
    b.add_argument("--no-si", action="store_true", help="rate when the relay ignores the state")
    b.set_defaults(func=cmd_rate_binary)

    g = rsub.add_parser("gaussian", help="Gaussian model")
    _add_gaussian_flags(g)
    g.add_argument("--scheme", choices=sorted(LABELS))
    g.add_argument("--alpha", type=float, help="evaluate at a fixed policy instead of optimizing")
    g.add_argument("--beta", type=float)
    g.add_argument("--d", type=float)
    g.set_defaults(func=cmd_rate_gaussian)

    d = rsub.add_parser("dm", help="binary modulo-additive channel, generic DM evaluators")
    d.add_argument("--ps", type=float, required=True)
    d.add_argument("--csr", type=float, default=0.0)
    d.add_argument("--crs", type=float, default=0.0)
    d.add_argument("--bound", choices=("upper", "nocoop"), default="upper")
    d.add_argument("--grid", type=int, default=64)
    d.add_argument("--cost-x", dest="cost_x", type=float)
    d.add_argument("--cost-xr", dest="cost_xr", type=float)
    d.set_defaults(func=cmd_rate_dm)

    s = sub.add_parser("sweep", help="parameter sweep to CSV")
    s.add_argument("--preset", choices=sorted(opt.PRESETS))
    s.add_argument("--vary", choices=opt.VARY)
    s.add_argument("--values", help="start:stop:step or comma list")
    s.add_argument("--series", help="comma-separated series ids, e.g. scheme2,upper@c_sr=1")
    s.add_argument("--out", help="CSV path (stdout if omitted)")
    _add_gaussian_flags(s)
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--only", help=f"comma-separated subset of {','.join(CHECKS)}")
    v.add_argument("--samples", type=int, help="sample count for fme, prop3 and bruteforce")
    v.set_defaults(func=cmd_verify)

    sim = sub.add_parser("simulate", help="Monte Carlo simulations")
    ssub = sim.add_subparsers(dest="what", required=True)
    f = ssub.add_parser("feedback", help="iterative state refinement over the relay")
    f.add_argument("--pr", type=float, default=1.0)
    f.add_argument("--ps", type=float, default=1.0)
    f.add_argument("--n", type=int, default=30)
    f.add_argument("--rate", type=float, default=0.4)
    f.add_argument("--trials", type=int, default=10_000)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--out", help="per-step MSE trace CSV")
    f.set_defaults(func=cmd_simulate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
