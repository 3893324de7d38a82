"""ssqa-bench: command line front end for the benchmark harness.

Subcommands: run, sweep-replicas, sweep-steps, compare, info. Options can
come from a JSON config file (--config); explicit flags override it.

Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 integrity
failure (a reported cut exceeded the registered best-known value).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import bench, gset, hwsim
from .bench import IntegrityError, RunConfig

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_INTEGRITY = 4


class _CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _int_list(text: str):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("list must not be empty")
    return values


_CONFIG_FIELDS = {f.name: f.type for f in dataclasses.fields(RunConfig)}


def _add_common(parser):
    parser.add_argument("--config", help="JSON file of option defaults (flags win)")
    parser.add_argument("--instance", help="registry name (e.g. G11) or file path")
    parser.add_argument("--engine", choices=bench.ENGINES)
    parser.add_argument("--delay", dest="delay_kind",
                        choices=("dual_bram", "shift_register"))
    parser.add_argument("--replicas", type=int)
    parser.add_argument("--steps", type=int)
    parser.add_argument("--trials", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--q-min", dest="q_min", type=float)
    parser.add_argument("--q-max", dest="q_max", type=float)
    parser.add_argument("--q-tau", dest="q_tau", type=int)
    parser.add_argument("--q-beta", dest="q_beta", type=float)
    parser.add_argument("--i0", help="saturation bound: 'v' or 'start:end'")
    parser.add_argument("--n-rnd", dest="n_rnd", help="noise gain: 'v' or 'start:end'")
    parser.add_argument("--fclk", dest="f_clk", type=float)
    parser.add_argument("--power", dest="power_w", type=float)
    parser.add_argument("--utilization", type=float)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--out", help="output prefix; writes <out>.json and <out>.csv")


def _build_config(args, suffix="") -> RunConfig:
    """Layer config file values under explicit flags (flags win)."""
    values = {}
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            with open(config_path) as fh:
                loaded = json.load(fh)
        except OSError as exc:
            raise _CliError(EXIT_IO, f"cannot read config file: {exc}")
        except json.JSONDecodeError as exc:
            raise _CliError(EXIT_CONFIG, f"config file is not valid JSON: {exc}")
        if not isinstance(loaded, dict):
            raise _CliError(EXIT_CONFIG, "config file must hold a JSON object")
        for key, val in loaded.items():
            if key not in _CONFIG_FIELDS:
                raise _CliError(EXIT_CONFIG, f"unknown config key {key!r}")
            values[key] = val
    for name in _CONFIG_FIELDS:
        flag = getattr(args, name + suffix, None)
        if flag is None and suffix:
            flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    try:
        config = RunConfig(**values)
        bench.parse_ramp(config.i0)
        bench.parse_ramp(config.n_rnd)
    except (TypeError, ValueError) as exc:
        raise _CliError(EXIT_CONFIG, str(exc))
    _validate(config)
    return config


def _validate(config: RunConfig):
    checks = [
        (config.replicas >= 1, "replicas must be >= 1"),
        (config.steps >= 0, "steps must be >= 0"),
        (config.trials >= 1, "trials must be >= 1"),
        (config.q_tau >= 1, "q-tau must be >= 1"),
        (config.q_max >= config.q_min, "q-max must be >= q-min"),
        (config.f_clk > 0, "fclk must be positive"),
        (config.workers >= 1, "workers must be >= 1"),
        (config.engine in bench.ENGINES, f"engine must be one of {bench.ENGINES}"),
    ]
    for ok, message in checks:
        if not ok:
            raise _CliError(EXIT_CONFIG, message)


def _write_outputs(args, payload: str, summaries, oneliner: str | None = None):
    """With --out: write <out>.json / <out>.csv and print a one-line summary.
    Without --out: print the full JSON document to stdout."""
    if args.out:
        try:
            with open(args.out + ".json", "w") as fh:
                fh.write(payload + "\n")
            extra = getattr(args, "_sweep_col", ())
            bench.write_trials_csv(args.out + ".csv", summaries, extra_cols=extra)
        except OSError as exc:
            raise _CliError(EXIT_IO, f"cannot write output: {exc}")
        print(oneliner or f"wrote {args.out}.json and {args.out}.csv")
    else:
        print(payload)


def cmd_run(args):
    config = _build_config(args)
    summary = bench.run_trials(config)
    s = summary.summary_dict()
    norm = f", normalized {s['normalized_mean']:.4f}" if "normalized_mean" in s else ""
    line = (f"{config.instance} {config.engine}: {config.trials} trials, "
            f"mean {s['mean']:.1f} +- {s['std']:.1f}, best {s['max']}{norm} "
            f"-> {args.out}.json/.csv" if args.out else "")
    _write_outputs(args, summary.as_json(), [((), summary)], line or None)


def cmd_sweep_replicas(args):
    config = _build_config(args)
    results = bench.sweep_replicas(config, args.replicas_list)
    args._sweep_col = ("replicas",)
    payload = json.dumps({
        "instance": config.instance,
        "engine": config.engine,
        "sweep": "replicas",
        "points": [{"replicas": r, "summary": s.summary_dict()} for (r,), s in results],
    }, indent=2)
    _write_outputs(args, payload, results)


def cmd_sweep_steps(args):
    config = _build_config(args)
    results = bench.sweep_steps(config, args.steps_list)
    args._sweep_col = ("steps",)
    payload = json.dumps({
        "instance": config.instance,
        "engine": config.engine,
        "sweep": "steps",
        "points": [{"steps": s_val, "summary": s.summary_dict()} for (s_val,), s in results],
    }, indent=2)
    _write_outputs(args, payload, results)


def cmd_compare(args):
    config_a = _build_config(args)
    overrides = {}
    for name in ("engine", "steps", "replicas", "delay_kind"):
        val = getattr(args, name + "_b")
        if val is not None:
            overrides[name] = val
    config_b = dataclasses.replace(config_a, **overrides)
    _validate(config_b)
    report, sa, sb = bench.compare(config_a, config_b)
    args._sweep_col = ("side",)
    payload = json.dumps({"instance": config_a.instance, "compare": report}, indent=2)
    _write_outputs(args, payload, [(("a",), sa), (("b",), sb)])


def cmd_info(args):
    if args.instance:
        try:
            record = gset.registry_lookup(args.instance)
        except gset.UnknownInstanceError:
            raise _CliError(EXIT_CONFIG, f"unknown instance {args.instance!r}; "
                            f"known: {', '.join(gset.registry_names())}")
        info = dataclasses.asdict(record)
        info["bundled"] = args.instance in gset.bundled_instance_names()
        if info["bundled"]:
            graph = gset.load_instance(args.instance)
            info["total_weight"] = sum(w for _, _, w in graph.edges)
        print(json.dumps(info, indent=2))
    else:
        print(gset.registry_as_json())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssqa-bench",
        description="Benchmark p-bit annealing engines on MAX-CUT instances.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one configuration for N trials")
    _add_common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sr = sub.add_parser("sweep-replicas", help="repeat a run across replica counts")
    _add_common(p_sr)
    p_sr.add_argument("--replicas-list", type=_int_list, required=True,
                      help="comma-separated replica counts, e.g. 1,2,5,10,20")
    p_sr.set_defaults(func=cmd_sweep_replicas)

    p_ss = sub.add_parser("sweep-steps", help="repeat a run across step budgets")
    _add_common(p_ss)
    p_ss.add_argument("--steps-list", type=_int_list, required=True,
                      help="comma-separated step budgets, e.g. 100,200,500")
    p_ss.set_defaults(func=cmd_sweep_steps)

    p_cmp = sub.add_parser("compare", help="paired run of two engine configurations")
    _add_common(p_cmp)
    p_cmp.add_argument("--engine-b", choices=bench.ENGINES,
                       help="engine for side B (defaults to side A's)")
    p_cmp.add_argument("--steps-b", dest="steps_b", type=int)
    p_cmp.add_argument("--replicas-b", dest="replicas_b", type=int)
    p_cmp.add_argument("--delay-b", dest="delay_kind_b",
                       choices=("dual_bram", "shift_register"))
    p_cmp.set_defaults(func=cmd_compare)

    p_info = sub.add_parser("info", help="print instance registry metadata")
    p_info.add_argument("--instance", help="one instance; omit for the full registry")
    p_info.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except _CliError as exc:
        print(f"ssqa-bench: error: {exc}", file=sys.stderr)
        return exc.code
    except IntegrityError as exc:
        print(f"ssqa-bench: integrity failure: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except gset.GsetParseError as exc:
        print(f"ssqa-bench: parse error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"ssqa-bench: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"ssqa-bench: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
