"""Command line driver.

    tdpsi verify --config run.json [--output report.json] [--suites psi,proof] [--text]
    tdpsi sweep --config run.json --count 25 --seed 1 [--output sweep.json]
    tdpsi show-config-schema

Exit codes: 0 all checks pass, 1 some check failed, 2 configuration or
parameter error (including a degenerate parameter point).
"""

import argparse
import json
import sys

from .runner import CONFIG_SCHEMA, EXIT_CONFIG, ConfigError, dumps, load_config, run, sweep


def _read_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError([f"{path}: {exc}"]) from None


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_error(exc, out):
    doc = {"status": "config_error", "errors": exc.problems}
    print("configuration error: " + "; ".join(exc.problems), file=sys.stderr)
    _emit(dumps(doc), out)
    return EXIT_CONFIG


def cmd_verify(args):
    suites = [s.strip() for s in args.suites.split(",") if s.strip()] if args.suites is not None else None
    try:
        cfg = load_config(_read_config(args.config), suites=suites)
    except ConfigError as exc:
        return _config_error(exc, args.output)
    report, code = run(cfg)
    out = args.output or cfg.output_path
    _emit(dumps(report.to_dict()), out)
    if args.text:
        print(report.text_summary(), file=sys.stderr)
    elif out:
        print(report.text_summary().splitlines()[-1])
    return code


def cmd_sweep(args):
    try:
        cfg = load_config(_read_config(args.config), sweep=(args.count, args.seed))
    except ConfigError as exc:
        return _config_error(exc, args.output)
    agg, code = sweep(cfg)
    _emit(dumps(agg), args.output or cfg.output_path)
    s = agg["summary"]
    print(f"{s['pass']} pass, {s['fail']} fail, {s['degenerate']} degenerate", file=sys.stderr)
    return code


def cmd_schema(args):
    sys.stdout.write(dumps(CONFIG_SCHEMA))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="tdpsi", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites on one configuration")
    v.add_argument("--config", required=True)
    v.add_argument("--output")
    v.add_argument("--suites", help="comma-separated subset of relations,equitable,loperator,tdpair,psi,proof,all")
    v.add_argument("--text", action="store_true", help="also print a plain-text summary")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="run suites on random parameter points")
    s.add_argument("--config", required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--output")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("show-config-schema", help="print the JSON schema for config files")
    c.set_defaults(func=cmd_schema)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
