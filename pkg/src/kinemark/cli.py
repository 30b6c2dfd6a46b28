"""Command-line entry point: ``kinemark synth | features | run | report``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .corpus import load_corpus
from .errors import ConfigError, KinemarkError
from .features import extract_corpus, registry_listing
from .harness import (
    ExperimentConfig,
    SynthParams,
    config_from_options,
    load_report,
    parse_settings,
    prepare,
    read_config_file,
    report_render,
    run_experiment,
    synth_corpus,
)
from .harness.config import SETTINGS
from .harness.report import FORMATS

log = logging.getLogger("kinemark")

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


def _cmd_synth(args) -> int:
    params = SynthParams(duration_s=args.duration_s)
    manifest = synth_corpus(args.out, args.participants, args.sick_fraction, args.seed, params)
    print(manifest)
    return EXIT_OK


def _cmd_features_list(args) -> int:
    rows = registry_listing()
    if args.category:
        rows = [r for r in rows if r["category"] == args.category]
    if args.json:
        print(json.dumps(rows, indent=2))
        return EXIT_OK
    width = max(len(r["name"]) for r in rows)
    for r in rows:
        print(f"{r['name']:<{width}}  {r['category']:<11}  {r['arity']:>2}  {r['formula']}")
    return EXIT_OK


def _cmd_features_extract(args) -> int:
    settings = parse_settings(args.setting)
    if len(settings) != 1:
        raise ConfigError("features extract takes exactly one setting")
    recordings = load_corpus(args.corpus, args.rate_hz)
    matrix = extract_corpus(recordings, SETTINGS[settings[0]], args.window_s, args.stride_s,
                            args.segment_s)
    if args.out == "-":
        matrix.to_csv(sys.stdout)
    else:
        matrix.to_csv(args.out)
        print(f"{matrix.n_rows} windows x {len(matrix.names)} features -> {args.out}")
    return EXIT_OK


_RUN_OPTIONS = ("corpus", "setting", "reps", "window_s", "stride_s", "segment_s", "k_features",
                "test_fraction", "seed", "models", "model_params", "rate_hz")


def build_run_config(args) -> tuple[ExperimentConfig, dict]:
    """File values first, then any flag given on the command line overrides them."""
    options = read_config_file(args.config) if args.config else {}
    for key in _RUN_OPTIONS + ("out", "jobs"):
        val = getattr(args, key, None)
        if val is not None:
            options[key] = val
    runtime = {"out": options.get("out"), "jobs": int(options.get("jobs") or 1)}
    if not options.get("corpus"):
        raise ConfigError("a corpus manifest is required (--corpus or 'corpus' in --config)")
    if not runtime["out"]:
        raise ConfigError("an output directory is required (--out or 'out' in --config)")
    return config_from_options(options), runtime


def _cmd_run(args) -> int:
    config, runtime = build_run_config(args)
    out = Path(runtime["out"])
    out.mkdir(parents=True, exist_ok=True)
    started = time.monotonic()
    data = prepare(config)
    log.info("extracted %d windows x %d features in %.1f s", data.matrix.n_rows,
             len(data.matrix.names), time.monotonic() - started)

    def progress(res):
        log.info("repetition %d/%d done (%.1f s elapsed)", res.rep_index + 1,
                 config.repetitions, time.monotonic() - started)
        res.split.to_csv(out / f"split_{res.rep_index}.csv")
        if res.rep_index == 0:
            for s, sr in res.settings.items():
                sr.mask.write(out / f"mask_{s}.txt")

    report = run_experiment(config, data, n_jobs=runtime["jobs"], progress=progress)
    (out / "report.json").write_bytes(report_render(report, "json"))
    text = report_render(report, "text")
    (out / "report.txt").write_bytes(text)
    if not args.quiet:
        sys.stdout.write(text.decode("utf-8"))
    return EXIT_OK


def _cmd_report(args) -> int:
    src = Path(args.input)
    if src.is_dir():
        src = src / "report.json"
    report = load_report(src.read_bytes())
    blob = report_render(report, args.format)
    if args.out:
        Path(args.out).write_bytes(blob)
    else:
        sys.stdout.write(blob.decode("utf-8"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kinemark", description=__doc__)
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="write a synthetic corpus (CSV recordings + manifest)")
    s.add_argument("--out", required=True, help="output directory")
    s.add_argument("--participants", type=int, default=20)
    s.add_argument("--sick-fraction", type=float, default=0.5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--duration-s", type=float, default=SynthParams.duration_s)
    s.set_defaults(func=_cmd_synth)

    f = sub.add_parser("features", help="list or extract window features")
    fsub = f.add_subparsers(dest="features_command", required=True)
    fl = fsub.add_parser("list", help="print the feature registry")
    fl.add_argument("--category", choices=("statistical", "temporal", "spectral"))
    fl.add_argument("--json", action="store_true")
    fl.set_defaults(func=_cmd_features_list)
    fe = fsub.add_parser("extract", help="write the window x feature matrix as CSV")
    fe.add_argument("--corpus", required=True, help="manifest CSV")
    fe.add_argument("--setting", default="s4", choices=sorted(SETTINGS))
    fe.add_argument("--window-s", type=float, default=1.0)
    fe.add_argument("--stride-s", type=float, default=None)
    fe.add_argument("--segment-s", type=float, default=10.0)
    fe.add_argument("--rate-hz", type=float, default=60.0)
    fe.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    fe.set_defaults(func=_cmd_features_extract)

    r = sub.add_parser("run", help="Monte Carlo cross-validation over one or more settings")
    r.add_argument("--config", help="JSON or key=value file; flags override its values")
    r.add_argument("--corpus", help="manifest CSV")
    r.add_argument("--setting", help="s1|s2|s3|s4|all, or a comma list")
    r.add_argument("--reps", type=int)
    r.add_argument("--window-s", type=float)
    r.add_argument("--stride-s", type=float)
    r.add_argument("--segment-s", type=float)
    r.add_argument("--k-features", type=int)
    r.add_argument("--test-fraction", type=float)
    r.add_argument("--seed", type=int)
    r.add_argument("--models", help="comma-separated model kinds")
    r.add_argument("--model-params", help="JSON object: kind -> hyperparameters")
    r.add_argument("--rate-hz", type=float)
    r.add_argument("--jobs", type=int, help="worker processes for repetitions")
    r.add_argument("--out", help="output directory")
    r.add_argument("-q", "--quiet", action="store_true", help="do not echo the text report")
    r.set_defaults(func=_cmd_run)

    rp = sub.add_parser("report", help="render a saved report")
    rp.add_argument("--format", default="text",
                    help=f"one of {', '.join(FORMATS)}")
    rp.add_argument("--input", default=".", help="report.json or a run output directory")
    rp.add_argument("--out", help="write here instead of stdout")
    rp.set_defaults(func=_cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, KinemarkError, OSError, ValueError) as exc:
        code = EXIT_USAGE if isinstance(exc, ConfigError) else EXIT_FAILURE
        print(f"kinemark: error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
