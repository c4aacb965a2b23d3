"""Command-line front end.

Every report starts with the resolved run configuration.  Worker count is left
out of it on purpose: output must be byte-identical for any number of workers.

Exit status: 0 success, 1 invalid invocation or input, 2 a property check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

from .arith import CycleType, IntPolynomial
from .artin import log_sum_L1, truncated_product_L1
from .catalog import enumerate_cubics, load_catalog, make_record, write_catalog
from .constants import constants
from .model import ChebotarevDistribution, inverse_p, model_L1, model_sums
from .quadratic import (
    TRUNCATION_TOLERANCE,
    class_number_character_sum,
    class_number_imaginary,
    compare_truncation,
    fundamental_discriminants,
)
from .stats import (
    DENSITY_SIGMA,
    chebotarev_densities,
    empirical_moment,
    inequality_sweep,
    moment_report,
    scan_residues,
)

DEFAULT_SEED = 20240607
EXIT_OK, EXIT_INVALID, EXIT_CHECK_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    x: float | str | None = None
    y: float | None = None
    r: int | None = None
    seed: int = DEFAULT_SEED
    sample_count: int | None = None
    output_format: str = "json"
    worker_count: int = 1
    tolerances: dict[str, float] = field(default_factory=dict)
    params: dict[str, Any] = field(default_factory=dict)

    def header(self) -> dict:
        out = asdict(self)
        del out["worker_count"]
        return out


# ---------------------------------------------------------------------------
# argument parsing


def _height(s: str) -> float | str:
    if s == "auto":
        return "auto"
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or 'auto', got {s!r}")
    if not math.isfinite(v) or v < 10:
        raise argparse.ArgumentTypeError(f"height must be >= 10, got {s}")
    return v


def _number(s: str) -> float:
    try:
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {s!r}")


def _count(s: str) -> int:
    try:
        return int(float(s))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {s!r}")


def _poly(s: str) -> IntPolynomial:
    try:
        coeffs = tuple(int(c) for c in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--poly takes comma-separated integers low-to-high, got {s!r}")
    try:
        return IntPolynomial(coeffs)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _int_list(s: str) -> list[int]:
    try:
        return [int(v) for v in s.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _float_list(s: str) -> list[float]:
    try:
        return [float(v) for v in s.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None, dest="output_format")
    common.add_argument("--out", help="write the report here instead of standard output")
    common.add_argument("--workers", type=int, default=1, help="worker count (RESIDUE_WORKERS overrides)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    family = argparse.ArgumentParser(add_help=False)
    src = family.add_mutually_exclusive_group(required=True)
    src.add_argument("--catalog", help="catalog CSV (low-to-high coefficients)")
    src.add_argument("--enumerate", type=int, dest="height", metavar="H", help="use enumerate_cubics(H)")

    p = _Parser(prog="zetares", description="Residues of Dedekind zeta functions of S_n-fields.")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    s = sub.add_parser("estimate", parents=[common], help="truncated L(1, rho) for one polynomial")
    s.add_argument("--poly", type=_poly, required=True, help="coefficients low-to-high, leading 1 included")
    s.add_argument("--x", type=_height, default="auto")
    s.add_argument("--method", choices=("product", "logsum"), default="product")

    s = sub.add_parser("scan", parents=[common, family], help="truncated L(1, rho) across a family")
    s.add_argument("--x", type=_height, default="auto")

    s = sub.add_parser("enumerate", parents=[common], help="cubic fields x^3 + a x + b by coefficient height")
    s.add_argument("--H", type=int, required=True)

    s = sub.add_parser("chebotarev", parents=[common, family], help="Frobenius class frequencies")
    s.add_argument("--p", type=_int_list, required=True, help="comma-separated primes")
    s.add_argument("--sigma", type=float, default=DENSITY_SIGMA)

    s = sub.add_parser("moments", parents=[common], help="moments of sum_{y<p<x} a_rho(p)/p")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int, help="random model on S_n")
    g.add_argument("--catalog")
    s.add_argument("--y", type=_number, required=True)
    s.add_argument("--x", type=_number, required=True)
    s.add_argument("--r", type=_int_list, default=[1], help="comma-separated moment orders")
    s.add_argument("--samples", type=_count, default=1000)

    s = sub.add_parser("model", parents=[common], help="model L(1, rho) samples")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--x", type=_number, required=True)
    s.add_argument("--samples", type=_count, default=100)
    s.add_argument("--deform", choices=("none", "inverse-p"), default="none")
    s.add_argument("--forced", type=_int_list, help="force one cycle type at every prime, e.g. 1,1,1")

    s = sub.add_parser("oracle", parents=[common], help="imaginary quadratic ground truth")
    s.add_argument("--dmin", type=int, required=True)
    s.add_argument("--dmax", type=int, default=-3)
    s.add_argument("--x", type=_number, default=1e5)
    s.add_argument("--tolerance", type=float, default=TRUNCATION_TOLERANCE)

    s = sub.add_parser("check-inequalities", parents=[common], help="exhaustive composition sweeps")
    s.add_argument("--max2r", type=int, default=16)
    s.add_argument("--y", type=_float_list, default=[1e3, 1e4])

    sub.add_parser("constants", parents=[common], help="Euler's constant and zeta(2..6)")
    return p


# ---------------------------------------------------------------------------
# output


def _json_default(o):
    if hasattr(o, "to_dict"):
        return o.to_dict()
    if isinstance(o, (CycleType,)):
        return list(o.parts)
    if hasattr(o, "item"):
        return o.item()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _clean(o):
    # non-finite floats become strings so the JSON stays standard
    if isinstance(o, float) and not math.isfinite(o):
        return str(o)
    if isinstance(o, dict):
        return {k: _clean(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_clean(v) for v in o]
    return o


def _emit(cfg: RunConfig, report: Any, rows: list[dict] | None, stream) -> None:
    if cfg.output_format == "csv" and rows is not None:
        stream.write("# config: " + json.dumps(_clean(cfg.header()), sort_keys=True) + "\n")
        if rows:
            w = csv.DictWriter(stream, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            for row in rows:
                w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
        return
    doc = {"config": cfg.header(), "report": json.loads(json.dumps(report, default=_json_default))}
    stream.write(json.dumps(_clean(doc), indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def _family(args) -> list:
    if args.catalog:
        diags: list[tuple[int, str]] = []
        with open(args.catalog, encoding="utf-8") as fh:
            recs = load_catalog(fh, diags)
        for rowno, msg in diags:
            print(f"{args.catalog}:{rowno}: {msg}", file=sys.stderr)
        return recs
    if args.height is not None:
        return enumerate_cubics(args.height)
    raise UsageError("no family given")


def _cmd_estimate(args, cfg):
    rec = make_record(args.poly)
    est = (truncated_product_L1 if args.method == "product" else log_sum_L1)(rec, args.x)
    cfg.params = {"poly": list(args.poly.coefficients), "method": args.method}
    return est.to_dict(), [dict(est.to_dict(), ramified_primes_used=str(list(est.ramified_primes_used)), index_warnings=str(list(est.index_warnings)))], True


def _cmd_scan(args, cfg):
    fam = _family(args)
    if not fam:
        raise UsageError("empty family")
    cfg.params = {"family_size": len(fam), "height": args.height}
    rep = scan_residues(fam, args.x, workers=cfg.worker_count)
    rows = [
        {k: (str(v) if isinstance(v, list) else v) for k, v in r.items()}
        for r in rep.rows
    ]
    return rep.to_dict(), rows, rep.envelope_violations == 0


def _cmd_enumerate(args, cfg):
    if not 1 <= args.H <= 200:
        raise UsageError("--H must be in 1..200")
    recs = enumerate_cubics(args.H)
    cfg.params = {"H": args.H, "count": len(recs)}
    if cfg.output_format == "csv":
        buf = io.StringIO()
        write_catalog(recs, buf)
        return None, None, buf.getvalue()
    return [r.to_dict() for r in recs], None, True


def _cmd_chebotarev(args, cfg):
    fam = _family(args)
    cfg.params = {"primes": args.p, "height": args.height}
    cfg.tolerances = {"sigma": args.sigma}
    reports = [chebotarev_densities(fam, p, sigma=args.sigma) for p in args.p]
    rows = [dict(p=rep.p, unramified=rep.unramified, **c) for rep in reports for c in rep.classes]
    return [r.to_dict() for r in reports], rows, all(r.passed for r in reports)


def _cmd_moments(args, cfg):
    if args.y >= args.x:
        raise UsageError("--y must be below --x")
    for r in args.r:
        if not 0 <= r <= 8:
            raise UsageError(f"r must be in 0..8, got {r}")
    cfg.y, cfg.x, cfg.r = args.y, args.x, None
    cfg.params = {"r": args.r}
    if args.n is not None:
        if args.n not in (3, 4, 5):
            raise UsageError("--n must be 3, 4 or 5")
        if args.samples < 1000:
            raise UsageError("--samples must be >= 1000")
        cfg.sample_count = args.samples
        cfg.params["n"] = args.n
        _set_threads(cfg.worker_count)
        dist = ChebotarevDistribution(args.n)
        sums = model_sums(dist, args.y, args.x, args.samples, cfg.seed)
        reports = [moment_report(f"model(n={args.n})", dist.d, args.y, args.x, r, sums).to_dict() for r in args.r]
    else:
        with open(args.catalog, encoding="utf-8") as fh:
            fam = load_catalog(fh)
        cfg.params["catalog"] = args.catalog
        reports = [empirical_moment(fam, args.y, args.x, r).to_dict() for r in args.r]
    ok = all(rep["passed"] is not False for rep in reports)
    rows = [{k: (str(v) if isinstance(v, list) else v) for k, v in rep.items()} for rep in reports]
    return reports, rows, ok


def _set_threads(workers: int) -> None:
    import numba

    numba.set_num_threads(max(1, min(workers, numba.config.NUMBA_NUM_THREADS)))


def _cmd_model(args, cfg):
    if args.n not in (2, 3, 4, 5):
        raise UsageError("--n must be in 2..5")
    if args.x < 10:
        raise UsageError("--x must be >= 10")
    dist = ChebotarevDistribution(args.n, inverse_p) if args.deform == "inverse-p" else ChebotarevDistribution(args.n)
    forced = None
    if args.forced:
        forced = CycleType(tuple(sorted(args.forced, reverse=True)))
        if forced.n != args.n:
            raise UsageError(f"--forced parts must sum to {args.n}")
    cfg.x, cfg.sample_count = args.x, args.samples
    cfg.params = {"n": args.n, "deform": args.deform, "forced": list(forced.parts) if forced else None}
    count = 1 if forced else args.samples
    rows = []
    for s in range(count):
        est = model_L1(dist, args.x, seed=cfg.seed, forced=forced, sample=s)
        rows.append({"sample": s, "value": est.value, "log_value": est.log_value, "ramified": len(est.ramified_primes_used)})
    return rows, rows, True


def _oracle_row(job):
    D, x, tol = job
    cn = class_number_imaginary(D)
    h2 = class_number_character_sum(D)
    cmp = compare_truncation(D, x)
    return {
        "D": D, "h": cn.h, "h_character_sum": h2, "exact": cmp.exact, "truncated": cmp.truncated,
        "rel_err": cmp.relative_error, "ok": cn.h == h2 and cmp.relative_error <= tol,
    }


def _cmd_oracle(args, cfg):
    if args.dmin > args.dmax or args.dmax > -3:
        raise UsageError("need dmin <= dmax <= -3")
    if args.x < 1e3:
        raise UsageError("--x must be >= 1000")
    cfg.x = args.x
    cfg.params = {"dmin": args.dmin, "dmax": args.dmax}
    cfg.tolerances = {"relative_error": args.tolerance}
    jobs = [(D, args.x, args.tolerance) for D in fundamental_discriminants(args.dmin, args.dmax)]
    if cfg.worker_count > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as ex:
            rows = list(ex.map(_oracle_row, jobs, chunksize=max(1, len(jobs) // (4 * cfg.worker_count))))
    else:
        rows = [_oracle_row(j) for j in jobs]
    return rows, rows, all(r["ok"] for r in rows)


def _cmd_check_inequalities(args, cfg):
    if not 2 <= args.max2r <= 20 or args.max2r % 2:
        raise UsageError("--max2r must be even, 2..20")
    if any(y < 3 for y in args.y):
        raise UsageError("--y must be >= 3")
    cfg.params = {"max2r": args.max2r, "ys": args.y}
    rep = inequality_sweep(args.max2r, args.y)
    rows = [{"enumerated": rep.enumerated, "lemma_passed": rep.lemma_passed,
             "composition_applicable": rep.composition_applicable, "composition_passed": rep.composition_passed,
             "passed": rep.passed}]
    return rep.to_dict(), rows, rep.passed


def _cmd_constants(args, cfg):
    c = constants()
    rows = [{"name": "euler_gamma", "value": c.euler_gamma, "digits": c.euler_gamma_str}] + [
        {"name": f"zeta({n})", "value": v, "digits": c.zeta_strs.get(n, "")} for n, v in sorted(c.zeta_values.items())
    ]
    return rows, rows, True


_COMMANDS = {
    "estimate": _cmd_estimate,
    "scan": _cmd_scan,
    "enumerate": _cmd_enumerate,
    "chebotarev": _cmd_chebotarev,
    "moments": _cmd_moments,
    "model": _cmd_model,
    "oracle": _cmd_oracle,
    "check-inequalities": _cmd_check_inequalities,
    "constants": _cmd_constants,
}


def _workers(flag: int) -> int:
    env = os.environ.get("RESIDUE_WORKERS")
    if env:
        try:
            flag = int(env)
        except ValueError:
            raise UsageError(f"RESIDUE_WORKERS must be an integer, got {env!r}")
    if flag < 1:
        raise UsageError("worker count must be >= 1")
    return flag


def _glue_values(argv: Sequence[str]) -> list[str]:
    # "--poly -1,-1,0,1" would otherwise read the coefficient list as a flag
    out = list(argv)
    for i in range(len(out) - 1):
        if out[i] in _VALUE_FLAGS and out[i + 1].startswith("-") and out[i + 1][1:2].isdigit():
            out[i : i + 2] = [f"{out[i]}={out[i + 1]}", ""]
    return [a for a in out if a != ""]


_VALUE_FLAGS = ("--poly", "--forced", "--p", "--r", "--y", "--dmin", "--dmax")


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = _glue_values(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(
            subcommand=args.subcommand,
            inputs=[v for v in (getattr(args, "catalog", None),) if v],
            x=getattr(args, "x", None) if args.subcommand in ("estimate", "scan") else None,
            seed=args.seed,
            output_format=args.output_format or ("csv" if args.subcommand in ("oracle", "model") else "json"),
            worker_count=_workers(args.workers),
        )
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            report, rows, ok = _COMMANDS[args.subcommand](args, cfg)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, OSError) as e:
        print(f"zetares: error: {e}", file=sys.stderr)
        return EXIT_INVALID

    out = open(args.out, "w", encoding="utf-8", newline="") if args.out else stdout
    try:
        if isinstance(ok, str):
            # enumerate --format csv hands back a finished catalog
            out.write("# config: " + json.dumps(_clean(cfg.header()), sort_keys=True) + "\n")
            out.write(ok)
            ok = True
        else:
            _emit(cfg, report, rows, out)
    finally:
        if args.out:
            out.close()
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
