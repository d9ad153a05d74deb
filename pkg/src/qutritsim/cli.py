"""Command-line front end: figure reproduction, sweeps, verification.

Subcommands: fig1 | fig2 | fig3 | fig4 | fig5 | verify | sweep.  Figure and
sweep commands write deterministic CSV (UTF-8, '.' decimal, 15 significant
digits, header row); parameter precedence is built-in defaults < --config
file (key=value lines) < repeated --set overrides.  The QUTRIT_TOL
environment variable overrides the integrator tolerance.  Exit codes:
0 success, 1 verification failure, 2 usage error.
"""

import argparse
import os
import sys

from . import figures, verify


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:stop:count, got {text!r}")
    start, stop = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if count < 2:
        raise ValueError("grid count must be at least 2")
    return (start, stop, count)


def _parse_assignment(text):
    if "=" not in text:
        raise ValueError(f"expected key=value, got {text!r}")
    key, _, value = text.partition("=")
    return key.strip(), value.strip()


def _load_config_file(path):
    overrides = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, value = _parse_assignment(line)
            overrides[key] = value
    return overrides


def _apply_overrides(defaults, overrides, parser):
    params = dict(defaults)
    for key, value in overrides.items():
        if key == "grid":
            try:
                params["grid"] = _parse_grid(value)
            except ValueError as exc:
                parser.error(str(exc))
        elif key in params:
            try:
                params[key] = float(value)
            except ValueError:
                parser.error(f"could not parse {key}={value!r} as a number")
        else:
            known = ", ".join(sorted(params))
            parser.error(f"unknown parameter {key!r} (known: {known})")
    return params


def _format_value(v):
    return f"{v:.15g}"


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_format_value(v) for v in row) + "\n")


_PLOT_TEMPLATE = """\
#!/usr/bin/env python3
# Plot companion for {csv}; requires matplotlib.
import csv

import matplotlib.pyplot as plt

with open({csv!r}) as fh:
    reader = csv.reader(fh)
    header = next(reader)
    columns = list(zip(*[[float(v) for v in row] for row in reader]))

x = columns[0]
for label, ys in zip(header[1:], columns[1:]):
    plt.plot(x, ys, label=label)
plt.xlabel(header[0])
plt.legend()
plt.title({title!r})
plt.show()
"""


def write_plot_script(csv_path, title):
    stem, _ = os.path.splitext(csv_path)
    script_path = stem + "_plot.py"
    with open(script_path, "w", encoding="utf-8") as fh:
        fh.write(_PLOT_TEMPLATE.format(csv=os.path.basename(csv_path), title=title))
    return script_path


def _add_common(parser):
    parser.add_argument("--out", default=None, help="output CSV path")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a scenario parameter (repeatable)",
    )
    parser.add_argument("--grid", default=None, help="primary grid as start:stop:count")
    parser.add_argument("--jobs", type=int, default=None, help="worker processes for grid scans")
    parser.add_argument(
        "--plot-script",
        action="store_true",
        help="also emit a plain-text matplotlib script next to the CSV",
    )
    parser.add_argument("--config", default=None, help="key=value file applied before --set")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qutritsim",
        description="Spin-1 dynamics under elliptically modulated drives: "
        "figure data, parameter sweeps, and self-verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("fig1", "fig2", "fig3", "fig4", "fig5"):
        p = sub.add_parser(name, help=f"write the {name} scenario CSV")
        _add_common(p)
    p_sweep = sub.add_parser("sweep", help="sweep one drive parameter")
    _add_common(p_sweep)
    p_sweep.add_argument(
        "--param",
        default="omega0",
        choices=("omega1", "omega", "omega0", "k", "Q", "d"),
        help="which drive parameter the grid sweeps",
    )
    p_verify = sub.add_parser("verify", help="run a self-verification suite")
    p_verify.add_argument("suite", choices=verify.SUITES)
    return parser


def _gather_params(args, scenario, parser):
    overrides = {}
    if args.config:
        overrides.update(_load_config_file(args.config))
    for item in args.overrides:
        try:
            key, value = _parse_assignment(item)
        except ValueError as exc:
            parser.error(str(exc))
        overrides[key] = value
    params = _apply_overrides(figures.DEFAULTS[scenario], overrides, parser)
    if args.grid is not None:
        try:
            params["grid"] = _parse_grid(args.grid)
        except ValueError as exc:
            parser.error(str(exc))
    tol_env = os.environ.get("QUTRIT_TOL")
    if tol_env is not None and "tol" in params:
        try:
            params["tol"] = float(tol_env)
        except ValueError:
            parser.error(f"QUTRIT_TOL={tol_env!r} is not a number")
    return params


def _run_verify(suite):
    checks = verify.run_suite(suite)
    failed = 0
    for name, value, threshold in checks:
        ok = value <= threshold
        failed += 0 if ok else 1
        status = "PASS" if ok else "FAIL"
        print(f"{status} {name} value={value:.3e} threshold={threshold:.1e}")
    print(f"{'OK' if failed == 0 else 'FAILED'} {len(checks) - failed}/{len(checks)} checks passed")
    return 0 if failed == 0 else 1


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "verify":
        return _run_verify(args.suite)

    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    if args.command == "sweep":
        params = _gather_params(args, "sweep", parser)
        header, rows = figures.run_sweep(params, args.param, jobs=jobs)
        out = args.out or f"sweep_{args.param}.csv"
        title = f"averaged populations vs {args.param}"
    else:
        params = _gather_params(args, args.command, parser)
        header, rows = figures.RUNNERS[args.command](params, jobs=jobs)
        out = args.out or f"{args.command}.csv"
        title = figures.RUNNERS[args.command].__doc__.strip().rstrip(".")
    write_csv(out, header, rows)
    print(f"wrote {out} ({len(rows)} rows)")
    if args.plot_script:
        script = write_plot_script(out, title)
        print(f"wrote {script}")
    return 0


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
