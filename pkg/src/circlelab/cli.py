"""``lab``: run check suites and write JSON/CSV reports.

Exit codes: 0 all checks pass, 1 some identity fails, 2 invalid input,
3 the run would exceed the state budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import DEFAULT_BUDGET, BudgetExceeded, LabError, PreconditionError
from .hypersurface import HypersurfaceSpec
from .reports import emit_report
from .suites import SUITES, DESK_WEYL, SuiteParams

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

PARAM_KEYS = ("e", "gamma", "delta", "Nmax", "E", "seed", "samples", "hodge_n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lab", description="Exact finite-field checks of the function-field circle method.")
    ap.add_argument("suite", choices=sorted(SUITES) + ["all-desk"])
    ap.add_argument("--spec", help="hypersurface JSON file (default: diagonal form sum x_i^d)")
    ap.add_argument("--config", help="JSON file with defaults; command-line flags override it")
    ap.add_argument("--p", type=int)
    ap.add_argument("--n", type=int, help="variables of the default diagonal form")
    ap.add_argument("--d", type=int, help="degree of the default diagonal form")
    ap.add_argument("--e", type=int)
    ap.add_argument("--gamma", type=int)
    ap.add_argument("--delta", type=int)
    ap.add_argument("--Nmax", type=int)
    ap.add_argument("--E", type=int, help="window length for the Weyl suite")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--samples", type=int)
    ap.add_argument("--budget", type=int)
    ap.add_argument("--jobs", type=int, help="worker processes for all-desk (reports do not depend on it)")
    ap.add_argument("--out", default="reports")
    return ap


def resolve_config(args: argparse.Namespace) -> dict:
    cfg: dict = {}
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise PreconditionError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise PreconditionError("config file must hold a JSON object")
    for key in ("spec", "p", "n", "d", "e", "gamma", "delta", "Nmax", "E", "seed", "samples", "budget", "jobs"):
        val = getattr(args, key)
        if val is not None:
            cfg[key] = val
    cfg["suite"] = args.suite
    cfg.setdefault("budget", DEFAULT_BUDGET)
    return cfg


def load_form(cfg: dict) -> HypersurfaceSpec:
    spec = cfg.get("spec")
    if isinstance(spec, str):
        try:
            data = json.loads(Path(spec).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise PreconditionError(f"cannot read hypersurface file {spec}: {exc}") from exc
    elif isinstance(spec, dict):
        data = dict(spec)
    else:
        p, n, d = cfg.get("p", 3), cfg.get("n", 2), cfg.get("d", 2)
        return HypersurfaceSpec.diagonal(int(p), int(d), [1] * int(n))
    if "p" in cfg:
        data["p"] = cfg["p"]
    return HypersurfaceSpec.from_dict(data)


def suite_params(cfg: dict) -> SuiteParams:
    kwargs = {k: cfg[k] for k in PARAM_KEYS if k in cfg}
    return SuiteParams(budget=int(cfg["budget"]), **kwargs)


def _run_one(job):
    name, form_dict, sp = job
    f = HypersurfaceSpec.from_dict(form_dict)
    return SUITES[name](f, sp)


def run(cfg: dict, out_dir: str | Path) -> int:
    f = load_form(cfg)
    sp = suite_params(cfg)
    name = cfg["suite"]
    names = list(SUITES) if name == "all-desk" else [name]
    jobs = []
    for key in names:
        target = f
        if key == "weyl" and name == "all-desk" and f.p <= f.d:
            target = DESK_WEYL
        jobs.append((key, target.to_dict(), sp))
    workers = int(cfg.get("jobs", 1) or 1)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(_run_one, jobs))
    else:
        outputs = [_run_one(j) for j in jobs]
    report_cfg = {k: v for k, v in cfg.items() if k not in ("jobs",)}
    all_pass = True
    for (key, form, _), results in zip(jobs, outputs):
        emit_report(results, dict(report_cfg, suite=key, form=form), out_dir, key)
        all_pass &= all(r.passed for r in results)
        status = "pass" if all(r.passed for r in results) else "FAIL"
        print(f"{key}: {sum(r.passed for r in results)}/{len(results)} checks {status}")
    return EXIT_OK if all_pass else EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        return run(cfg, args.out)
    except BudgetExceeded as exc:
        print(f"refused: {exc.what} needs {exc.states} states, budget is {exc.budget}", file=sys.stderr)
        return EXIT_BUDGET
    except (LabError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
