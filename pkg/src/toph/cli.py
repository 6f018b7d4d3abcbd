"""Command-line interface tying the library into reproducible experiments.

Exit codes (stable contract for scripting):
    0  success
    1  usage or flag validation error
    2  malformed input data (offending line/file reported on stderr)
    3  domain precondition failure (e.g. instance too large to decide)

Every command that writes an output file also writes a sidecar manifest
``<output>.manifest.json`` recording the command, the fully resolved
configuration, the seed, and the input/output paths: enough to reproduce
the output byte-for-byte.  Outputs themselves contain no timestamps, so
rerunning a command with the same manifest reproduces them exactly.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import mpmath as mp
import numpy as np

from . import __version__
from . import hardness, synthgen
from .errors import (
    MalformedRecord,
    MixedSchema,
    TophError,
)
from .oracle import (
    ENUMERATION_LIMIT,
    EcmmInstance,
    gap_report_csv,
    optimality_gap,
    summary_line,
)
from .synthgen import GeneratorSpec, generate, read_dataset, write_dataset
from .truncation import (
    Method,
    TruncationConfig,
    sample_token,
    truncate,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_DOMAIN = 3

_METHOD_FLAGS = {
    "top-h": Method.TOP_H,
    "top-k": Method.TOP_K,
    "top-p": Method.TOP_P,
    "min-p": Method.MIN_P,
    "eta": Method.ETA,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse, but flag errors exit with code 1 per the CLI contract."""

    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to replay a command byte-for-byte.

    Written as ``<output>.manifest.json`` next to each output file.  The
    duration is informational; all other fields determine the output.
    """

    command: str
    config: dict
    seed: int | None
    input: str | None
    output: str
    tool_version: str
    duration_s: float
    schema_version: int = SCHEMA_VERSION


def _write_manifest(
    output: Path, command: str, config: dict, seed: int | None,
    input_path: str | None, started: float,
) -> None:
    manifest = RunManifest(
        command=command,
        config=config,
        seed=seed,
        input=input_path,
        output=str(output),
        tool_version=__version__,
        duration_s=round(time.monotonic() - started, 6),
    )
    with open(str(output) + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(asdict(manifest), fh, indent=2)
        fh.write("\n")


def _build_config(args) -> TruncationConfig:
    method = _METHOD_FLAGS[args.method]
    config = TruncationConfig(
        method=method,
        alpha=args.alpha,
        k=args.k,
        p_nucleus=args.p_nucleus,
        p_base=args.p_base,
        eta=args.eta,
        candidate_cap=args.candidate_cap,
        entropy_slack=args.entropy_slack,
    )
    # validate the active method's parameter up front so bad flags exit 1
    if method == Method.TOP_H and not 0.0 < config.alpha < 1.0:
        raise UsageError(f"--alpha must be in (0, 1), got {config.alpha}")
    if method == Method.TOP_K and config.k < 1:
        raise UsageError(f"--k must be >= 1, got {config.k}")
    if method == Method.TOP_P and not 0.0 < config.p_nucleus <= 1.0:
        raise UsageError(f"--p-nucleus must be in (0, 1], got {config.p_nucleus}")
    if method == Method.MIN_P and not 0.0 < config.p_base < 1.0:
        raise UsageError(f"--p-base must be in (0, 1), got {config.p_base}")
    if method == Method.ETA and not 0.0 < config.eta < 1.0:
        raise UsageError(f"--eta must be in (0, 1), got {config.eta}")
    if config.candidate_cap < 1:
        raise UsageError(f"--candidate-cap must be >= 1, got {config.candidate_cap}")
    return config


def _add_method_flags(sub) -> None:
    sub.add_argument("--method", choices=sorted(_METHOD_FLAGS), default="top-h")
    sub.add_argument("--alpha", type=float, default=0.4)
    sub.add_argument("--k", type=int, default=20)
    sub.add_argument("--p-nucleus", type=float, default=0.9)
    sub.add_argument("--p-base", type=float, default=0.1)
    sub.add_argument("--eta", type=float, default=0.0002)
    sub.add_argument("--candidate-cap", type=int, default=100)
    sub.add_argument("--entropy-slack", type=float, default=0.0)


def _add_family_flags(sub) -> None:
    sub.add_argument("--family", choices=synthgen.FAMILIES, default="zipf")
    sub.add_argument("--n", type=int, default=15)
    sub.add_argument("--s", type=float, default=1.0, help="zipf exponent")
    sub.add_argument("--a", type=float, default=1.0, help="dirichlet concentration")
    sub.add_argument("--sigma", type=float, default=1.0, help="gaussian logit scale")
    sub.add_argument("--temperature", type=float, default=1.0)
    sub.add_argument("--peak", type=float, default=0.9, help="one_hot_mix peak mass")
    sub.add_argument("--shuffle", action="store_true", help="zipf index shuffle")


def _spec_from_args(args, seed: int) -> GeneratorSpec:
    return GeneratorSpec(
        family=args.family,
        n=args.n,
        seed=seed,
        s=args.s,
        a=args.a,
        sigma=args.sigma,
        temperature=args.temperature,
        peak=args.peak,
        shuffle=getattr(args, "shuffle", False),
    )


def _config_dict(config: TruncationConfig) -> dict:
    d = asdict(config)
    d["method"] = config.method.value
    return d


def _truncate_record(rid: str, dist, config: TruncationConfig, with_trace: bool) -> dict:
    result = truncate(dist, config, collect_trace=with_trace)
    record = {
        "schema_version": SCHEMA_VERSION,
        "id": rid,
        "method": config.method.value,
        "selected": list(result.selected),
        "gamma": result.subset.gamma,
        "h_p": result.h_p,
        "h_q": result.h_q,
        "threshold": result.threshold,
    }
    if with_trace:
        record["trace"] = [
            {"index": s.index, "gamma": s.gamma, "entropy": s.entropy}
            for s in (result.trace or ())
        ]
    return record


def cmd_truncate(args) -> int:
    started = time.monotonic()
    config = _build_config(args)
    records = read_dataset(args.input)
    out = Path(args.output)
    with open(out, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(_truncate_record(rec.id, rec.dist, config, args.trace)) + "\n")
    _write_manifest(out, "truncate", {**_config_dict(config), "trace": args.trace},
                    None, args.input, started)
    return EXIT_OK


def cmd_sample(args) -> int:
    started = time.monotonic()
    config = _build_config(args)
    if args.num_samples < 1:
        raise UsageError(f"--num-samples must be >= 1, got {args.num_samples}")
    records = read_dataset(args.input)
    out = Path(args.output)
    with open(out, "w", encoding="utf-8") as fh:
        for pos, rec in enumerate(records):
            result = truncate(rec.dist, config)
            # draw_index is record-offset so records do not share variates
            tokens = [
                sample_token(result, args.seed, pos * args.num_samples + j)
                for j in range(args.num_samples)
            ]
            fh.write(json.dumps({
                "schema_version": SCHEMA_VERSION,
                "id": rec.id,
                "method": config.method.value,
                "tokens": tokens,
            }) + "\n")
    _write_manifest(out, "sample",
                    {**_config_dict(config), "num_samples": args.num_samples},
                    args.seed, args.input, started)
    return EXIT_OK


def cmd_gap(args) -> int:
    started = time.monotonic()
    if not 0.0 < args.alpha < 1.0:
        raise UsageError(f"--alpha must be in (0, 1), got {args.alpha}")
    if args.input:
        dists = [rec.dist for rec in read_dataset(args.input)]
        if not dists:
            raise UsageError(f"dataset {args.input} is empty")
        too_big = max(d.n for d in dists)
        if too_big > ENUMERATION_LIMIT:
            raise UsageError(
                f"dataset contains n={too_big}, above the exhaustive-enumeration "
                f"limit of {ENUMERATION_LIMIT}; the oracle walks all 2**n subsets"
            )
    else:
        if args.n > ENUMERATION_LIMIT:
            raise UsageError(
                f"--n {args.n} exceeds the exhaustive-enumeration limit of "
                f"{ENUMERATION_LIMIT}; the oracle walks all 2**n subsets"
            )
        if args.trials < 1:
            raise UsageError(f"--trials must be >= 1, got {args.trials}")
        spec = _spec_from_args(args, args.seed)
        try:
            dists = generate(spec, args.trials)
        except TophError as exc:
            raise UsageError(str(exc)) from exc
    instances = [EcmmInstance(p=d, alpha=args.alpha) for d in dists]
    report = optimality_gap(instances, slack=args.entropy_slack)
    out = Path(args.output)
    out.write_text(gap_report_csv(report), encoding="utf-8")
    print(summary_line(report))
    _write_manifest(out, "gap",
                    {"family": args.family, "n": args.n, "alpha": args.alpha,
                     "trials": args.trials, "s": args.s, "a": args.a,
                     "sigma": args.sigma, "temperature": args.temperature,
                     "peak": args.peak, "entropy_slack": args.entropy_slack,
                     "summary": {"mean": report.mean, "variance": report.variance,
                                 "min": report.minimum,
                                 "count_suboptimal": report.count_suboptimal}},
                    args.seed, args.input, started)
    return EXIT_OK


def cmd_sweep(args) -> int:
    started = time.monotonic()
    try:
        alphas = [float(x) for x in args.alphas.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"--alphas must be a comma-separated float list: {exc}")
    if not alphas or any(not 0.0 < a < 1.0 for a in alphas):
        raise UsageError("--alphas values must lie in (0, 1)")
    if args.input:
        dists = [rec.dist for rec in read_dataset(args.input)]
        input_path = args.input
    else:
        spec = _spec_from_args(args, args.seed)
        try:
            dists = generate(spec, args.trials)
        except TophError as exc:
            raise UsageError(str(exc)) from exc
        input_path = None
    if not dists:
        raise UsageError("no input distributions")
    out = Path(args.output)
    lines = ["alpha,mean_selected,mean_gamma,mean_entropy_ratio,count"]
    for alpha in alphas:
        config = TruncationConfig(method=Method.TOP_H, alpha=alpha,
                                  candidate_cap=args.candidate_cap,
                                  entropy_slack=args.entropy_slack)
        sizes, gammas, ratios = [], [], []
        for dist in dists:
            result = truncate(dist, config)
            sizes.append(len(result.selected))
            gammas.append(result.subset.gamma)
            if result.h_p > 0.0:
                ratios.append(result.h_q / result.h_p)
        ratio_mean = float(np.mean(ratios)) if ratios else 0.0
        lines.append(
            f"{alpha!r},{float(np.mean(sizes))!r},{float(np.mean(gammas))!r},"
            f"{ratio_mean!r},{len(dists)}"
        )
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    _write_manifest(out, "sweep",
                    {"alphas": alphas, "family": getattr(args, "family", None),
                     "n": args.n, "trials": args.trials,
                     "candidate_cap": args.candidate_cap,
                     "entropy_slack": args.entropy_slack},
                    args.seed, input_path, started)
    return EXIT_OK


def cmd_generate(args) -> int:
    started = time.monotonic()
    if args.count < 1:
        raise UsageError(f"--count must be >= 1, got {args.count}")
    spec = _spec_from_args(args, args.seed)
    try:
        dists = generate(spec, args.count)
    except TophError as exc:
        raise UsageError(str(exc)) from exc
    out = Path(args.output)
    write_dataset(out, dists)
    _write_manifest(out, "generate",
                    {"family": args.family, "n": args.n, "count": args.count,
                     "s": args.s, "a": args.a, "sigma": args.sigma,
                     "temperature": args.temperature, "peak": args.peak,
                     "shuffle": args.shuffle},
                    args.seed, None, started)
    return EXIT_OK


def _load_ccss(path: str) -> hardness.CcssInstance:
    try:
        obj = hardness.load_json(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedRecord(0, f"cannot parse {path}: {exc}") from exc
    return hardness.ccss_from_json(obj)


def _load_ecme(path: str) -> hardness.EcmeInstance:
    try:
        obj = hardness.load_json(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedRecord(0, f"cannot parse {path}: {exc}") from exc
    return hardness.ecme_from_json(obj)


def cmd_reduce(args) -> int:
    started = time.monotonic()
    instance = _load_ccss(args.input)
    prepped = hardness.prepare(instance)
    ecme = hardness.reduce_to_ecme(prepped, dps=args.dps)
    out = Path(args.output)
    hardness.save_json(hardness.ecme_to_json(ecme), out)
    c = ecme.constants
    print(f"k={ecme.k} m={ecme.m} lambda={c.lambda_k} boosters={c.booster_count}")
    _write_manifest(out, "reduce", {"dps": args.dps}, None, args.input, started)
    return EXIT_OK


def cmd_verify(args) -> int:
    instance = _load_ecme(args.input)
    checks: list[tuple[str, bool, str]] = []
    window = hardness.verify_budget_window(instance, dps=args.dps)
    checks.append((
        "budget_window", window.holds,
        f"lower_margin={mp.nstr(window.lower_margin, 8)} "
        f"upper_margin={mp.nstr(window.upper_margin, 8)}",
    ))
    narrow = hardness.CcssInstance(instance.weights, instance.tau, instance.k).narrow_range_holds()
    checks.append(("narrow_range", narrow, "exact rational comparison"))
    mass_ok = (
        sum(instance.heavy_probs) + instance.booster_count * instance.booster_prob == 1
    )
    checks.append(("total_mass_one", mass_ok, "exact rational identity"))
    theta_cap = mp.mpf(1) / (2 * instance.k * instance.k)
    theta_ok = bool(0 < instance.constants.theta_k < theta_cap)
    checks.append(("theta_bounds", theta_ok,
                   f"theta={mp.nstr(instance.constants.theta_k, 8)}"))
    wb_ok = instance.constants.w_b * 2 * instance.booster_count == instance.tau
    checks.append(("booster_block_weight", wb_ok, "2 B w_b == tau"))
    all_ok = all(ok for _, ok, _ in checks)
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    if args.output:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in checks],
            "all_ok": all_ok,
        }
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return EXIT_OK if all_ok else EXIT_DOMAIN


def cmd_decide(args) -> int:
    instance = _load_ecme(args.input)
    decision = hardness.decide_ecme_small(instance, mode=args.mode, dps=args.dps)
    print("YES" if decision.is_yes else "NO")
    if decision.is_yes:
        print(f"witness_heavy={list(decision.witness)}")
        if args.mode == "full":
            print(f"witness_boosters={decision.witness_boosters}")
    if args.output:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "decision": "YES" if decision.is_yes else "NO",
            "witness_heavy": list(decision.witness) if decision.witness else None,
            "witness_boosters": decision.witness_boosters if decision.is_yes else None,
        }
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="toph", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("truncate", help="truncate each input distribution")
    _add_method_flags(p)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--trace", action="store_true", help="emit per-step records")
    p.set_defaults(func=cmd_truncate)

    p = sub.add_parser("sample", help="truncate then draw tokens")
    _add_method_flags(p)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--num-samples", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("gap", help="greedy vs exhaustive-optimum mass ratios")
    _add_family_flags(p)
    p.add_argument("--alpha", type=float, default=0.4)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entropy-slack", type=float, default=0.0)
    p.add_argument("--input", default=None, help="JSONL dataset (else generate)")
    p.add_argument("--output", required=True, help="per-instance CSV path")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("sweep", help="selection statistics over an alpha grid")
    _add_family_flags(p)
    p.add_argument("--alphas", default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")
    p.add_argument("--input", default=None, help="JSONL dataset (else generate)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--candidate-cap", type=int, default=100)
    p.add_argument("--entropy-slack", type=float, default=0.0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("generate", help="write a synthetic JSONL dataset")
    _add_family_flags(p)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce", help="CCSS JSON -> prepared ECME JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--dps", type=int, default=hardness.DEFAULT_DPS)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="structural checks on an ECME JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--dps", type=int, default=hardness.DEFAULT_DPS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decide", help="decide an ECME JSON by exhaustive search")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--mode", choices=["structural", "full"], default="structural")
    p.add_argument("--dps", type=int, default=hardness.DEFAULT_DPS)
    p.set_defaults(func=cmd_decide)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"toph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MalformedRecord, MixedSchema) as exc:
        print(f"toph: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"toph: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TophError as exc:
        print(f"toph: precondition failed: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
