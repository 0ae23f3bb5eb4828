"""Command-line front end.

    subsetnet encode   --set 2,3,7
    subsetnet simulate --set 5,6,7 --ppj 0.01 --agents 182 --seed 7 [--traced] [--out DIR]
    subsetnet plan     --set 5,6,7 --ppj 0.01
    subsetnet analyze  --set 5,6,7 --ppj 0.05 --ni 28
    subsetnet solve    --set 2,3,7 --ppj 0 --seed 1 [--out DIR]
    subsetnet reproduce --figure 3b --out DIR

Exit codes: 0 ok / verified, 1 invalid input, 2 planner did not converge (or
regime exceeded under --strict), 3 ambiguous classification, 4 verdicts
disagree with the subset oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .analytics import (
    ConfidenceParams,
    PlanConvergenceError,
    evaluate_chain,
    noise_distribution,
    plan_agents,
)
from .analytics.planning import P_SPLIT_FLIP, WARN_LOW_PC
from .classifier import classify, compute_bands, verify
from .export import dumps, histogram_csv, sidecar, write_text
from .figures import PANELS, reproduce_panel
from .grid import SubsetInstance, build_grid, load_instance
from .simulator import ErrorModel, simulate, simulate_traced

EXIT_OK, EXIT_INPUT, EXIT_PLAN, EXIT_AMBIGUOUS, EXIT_MISMATCH = 0, 1, 2, 3, 4

DEFAULTS = {
    "set": None,
    "ppj": 0.0,
    "psj": None,
    "ell": 3.0,
    "nfloor": 1,
    "agents": None,
    "seed": None,
    "threads": 1,
    "traced": False,
    "out": None,
    "ni": None,
    "strict": False,
    "figure": None,
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    elements: list
    ppj: float
    psj: list | None
    ell: float
    nfloor: int
    agents: int | None
    seed: int | None
    threads: int
    out: str | None

    def instance(self) -> SubsetInstance:
        return SubsetInstance(self.elements)

    def model(self) -> ErrorModel:
        ratios = None
        if self.psj is not None:
            ratios = self.psj * len(self.elements) if len(self.psj) == 1 else self.psj
        return ErrorModel(self.ppj, None if ratios is None else tuple(ratios))

    def params(self) -> ConfidenceParams:
        return ConfidenceParams(self.ell, self.nfloor)


def _common(p: argparse.ArgumentParser, *names: str) -> None:
    if "set" in names:
        p.add_argument("--set", help="comma-separated positive integers, e.g. 2,3,7")
    if "model" in names:
        p.add_argument("--ppj", type=float, help="pass-junction error probability (default 0)")
        p.add_argument("--psj", help="split ratio, one value or one per element (default 0.5)")
    if "conf" in names:
        p.add_argument("--ell", type=float, help="confidence multiplier (default 3)")
        p.add_argument("--nfloor", type=int, help="minimum agents per correct exit (default 1)")
    if "run" in names:
        p.add_argument("--agents", type=int, help="number of agents")
        p.add_argument("--seed", type=int, help="random seed (required)")
        p.add_argument("--threads", type=int, help="worker threads (default 1)")
    p.add_argument("--out", help="output directory (default: stdout)")
    p.add_argument("--config", help="JSON file with option values; flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subsetnet", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="print the junction grid as JSON")
    _common(p, "set")
    p = sub.add_parser("simulate", help="simulate agents, write histogram CSV")
    _common(p, "set", "model", "run")
    p.add_argument("--traced", action="store_true", default=None,
                   help="split counts into flip-free and faulty agents")
    p = sub.add_parser("plan", help="fixed-point agent plan")
    _common(p, "set", "model", "conf")
    p.add_argument("--strict", action="store_true", default=None,
                   help="exit 2 when p_c <= 0.5")
    p = sub.add_parser("analyze", help="analytic summary, optionally at a pinned n_i")
    _common(p, "set", "model", "conf")
    p.add_argument("--ni", type=int, help="evaluate the sizing chain at this per-exit floor")
    p.add_argument("--agents", type=int, help="agent count for the bands (default N_min_non)")
    p.add_argument("--strict", action="store_true", default=None)
    p = sub.add_parser("solve", help="plan, simulate, classify and verify")
    _common(p, "set", "model", "conf", "run")
    p.add_argument("--strict", action="store_true", default=None)
    p = sub.add_parser("reproduce", help="write per-figure CSV datasets")
    p.add_argument("--figure", required=False, help=f"one of: all, {', '.join(PANELS)}")
    p.add_argument("--seed", type=int, help="simulation seed (default 0)")
    p.add_argument("--threads", type=int)
    p.add_argument("--ell", type=float)
    p.add_argument("--out", help="output directory (default: stdout)")
    p.add_argument("--config")
    return parser


def _resolve(args: argparse.Namespace) -> dict:
    values = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
        if "elements" in cfg and "set" not in cfg:
            cfg["set"] = cfg.pop("elements")
        unknown = set(cfg) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(cfg)
    for key, val in vars(args).items():
        if key in DEFAULTS and val is not None:
            values[key] = val
    return values


def _run_config(v: dict) -> RunConfig:
    if v["set"] is None:
        raise UsageError("--set is required")
    try:
        raw = v["set"]
        inst = load_instance([raw] if isinstance(raw, int) else raw)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    psj = v["psj"]
    if isinstance(psj, str):
        try:
            psj = [float(x) for x in psj.split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"cannot parse --psj {psj!r}") from None
    elif isinstance(psj, (int, float)):
        psj = [float(psj)]
    if psj is not None and len(psj) not in (1, inst.s):
        raise UsageError("--psj needs one value or one per element")
    cfg = RunConfig(
        elements=list(inst.elements),
        ppj=float(v["ppj"]),
        psj=psj,
        ell=float(v["ell"]),
        nfloor=int(v["nfloor"]),
        agents=None if v["agents"] is None else int(v["agents"]),
        seed=None if v["seed"] is None else int(v["seed"]),
        threads=int(v["threads"]),
        out=v["out"],
    )
    try:
        cfg.model()
        cfg.params()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.agents is not None and cfg.agents < 1:
        raise UsageError("--agents must be >= 1")
    if cfg.threads < 1:
        raise UsageError("--threads must be >= 1")
    if cfg.seed is not None and not 0 <= cfg.seed < 2**64:
        raise UsageError("--seed must lie in [0, 2**64)")
    return cfg


def _emit(out: str | None, files: dict[str, str]) -> None:
    """Write ``name -> text`` into ``out``, or everything to stdout."""
    if out is None:
        for text in files.values():
            sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    for name, text in files.items():
        write_text(Path(out) / name, text if text.endswith("\n") else text + "\n")


def cmd_encode(v: dict) -> int:
    cfg = _run_config(v)
    grid = build_grid(cfg.instance())
    payload = {"elements": cfg.elements, **grid.to_json()}
    _emit(cfg.out, {"grid.json": dumps(payload)})
    return EXIT_OK


def _need_seed(cfg: RunConfig) -> None:
    if cfg.seed is None:
        raise UsageError("--seed is required for stochastic commands")


def cmd_simulate(v: dict) -> int:
    cfg = _run_config(v)
    _need_seed(cfg)
    if cfg.agents is None:
        raise UsageError("--agents is required")
    grid = build_grid(cfg.instance())
    run = simulate_traced if v["traced"] else simulate
    try:
        hist = run(grid, cfg.model(), cfg.agents, cfg.seed, threads=cfg.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    files = {"histogram.csv": histogram_csv(hist)}
    if cfg.out is not None:
        files["histogram.json"] = dumps(sidecar(asdict(cfg), traced=bool(v["traced"]),
                                                n_agents=hist.total))
    _emit(cfg.out, files)
    return EXIT_OK


def _plan_payload(cfg: RunConfig, plan, inst, ell, n_agents=None) -> dict:
    dist = None
    if inst.n_tot >= 2 and plan.p_eff > 0:
        dist = noise_distribution(inst.n_tot, plan.p_eff, p_sj=P_SPLIT_FLIP)
    N = n_agents or plan.N_min_non
    bands = compute_bands(inst, plan, dist if plan.p_c < 1 else None, N, ell)
    return sidecar(
        asdict(cfg),
        plan=plan.to_dict(),
        noise_distribution=None if dist is None else
        {"p_used": dist.p_used, "i_max": dist.i_max, "p_non": dist.p_non.tolist()},
        bands={"N_used": N, "bands": [asdict(b) for b in bands]},
        warnings=plan.warnings,
    )


def cmd_plan(v: dict) -> int:
    cfg = _run_config(v)
    inst = cfg.instance()
    try:
        plan = plan_agents(inst, cfg.model(), cfg.params())
    except PlanConvergenceError as exc:
        last = exc.last.to_dict() if exc.last is not None else None
        _emit(cfg.out, {"plan.json": dumps(sidecar(asdict(cfg), error=str(exc), plan=last,
                                                   warnings=last["warnings"] if last else []))})
        return EXIT_PLAN
    _emit(cfg.out, {"plan.json": dumps(_plan_payload(cfg, plan, inst, cfg.ell))})
    if v["strict"] and WARN_LOW_PC in plan.warnings:
        return EXIT_PLAN
    return EXIT_OK


def cmd_analyze(v: dict) -> int:
    if v["ni"] is None:
        return cmd_plan(v)
    cfg = _run_config(v)
    if v["ni"] < 1:
        raise UsageError("--ni must be >= 1")
    inst = cfg.instance()
    plan = evaluate_chain(inst, cfg.model(), v["ni"], cfg.params())
    _emit(cfg.out, {"analysis.json": dumps(_plan_payload(cfg, plan, inst, cfg.ell, cfg.agents))})
    if v["strict"] and WARN_LOW_PC in plan.warnings:
        return EXIT_PLAN
    return EXIT_OK


def cmd_solve(v: dict) -> int:
    cfg = _run_config(v)
    _need_seed(cfg)
    inst = cfg.instance()
    model = cfg.model()
    try:
        plan = plan_agents(inst, model, cfg.params())
    except PlanConvergenceError as exc:
        if cfg.agents is None:
            last = exc.last.to_dict() if exc.last is not None else None
            _emit(cfg.out, {"summary.json": dumps(sidecar(asdict(cfg), error=str(exc), plan=last))})
            return EXIT_PLAN
        plan = exc.last
    if v["strict"] and WARN_LOW_PC in plan.warnings:
        _emit(cfg.out, {"summary.json": dumps(sidecar(asdict(cfg), error=WARN_LOW_PC,
                                                      plan=plan.to_dict()))})
        return EXIT_PLAN
    N = cfg.agents or plan.N_min_non
    dist = None
    if plan.p_c < 1 and inst.n_tot >= 2:
        dist = noise_distribution(inst.n_tot, plan.p_eff, p_sj=P_SPLIT_FLIP)
    bands = compute_bands(inst, plan, dist, N, cfg.ell)
    hist = simulate_traced(build_grid(inst), model, N, cfg.seed, threads=cfg.threads)
    report = classify(hist, bands)
    check = verify(inst, report)
    summary = sidecar(asdict(cfg), plan=plan.to_dict(), **report.summary())
    _emit(cfg.out, {"verdicts.csv": report.to_csv(), "summary.json": dumps(summary)})
    if report.ambiguous():
        return EXIT_AMBIGUOUS
    return EXIT_OK if check["exact_match"] else EXIT_MISMATCH


def cmd_reproduce(v: dict) -> int:
    fig = v["figure"]
    if fig is None:
        raise UsageError("--figure is required")
    ids = list(PANELS) if fig == "all" else [fig]
    for f in ids:
        if f not in PANELS:
            raise UsageError(f"unknown figure {f!r}; choose from all, {', '.join(PANELS)}")
    seed = 0 if v["seed"] is None else int(v["seed"])
    for f in ids:
        table, meta = reproduce_panel(f, seed=seed, ell=float(v["ell"]), threads=int(v["threads"]))
        files = {f"fig{f}.csv": table}
        if v["out"] is not None:
            files[f"fig{f}.json"] = dumps({"version": __version__, **meta})
        _emit(v["out"], files)
    return EXIT_OK


COMMANDS = {
    "encode": cmd_encode,
    "simulate": cmd_simulate,
    "plan": cmd_plan,
    "analyze": cmd_analyze,
    "solve": cmd_solve,
    "reproduce": cmd_reproduce,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        values = _resolve(args)
        return COMMANDS[args.command](values)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
