"""Command-line harness: ``g2verify suite <name>`` and ``g2verify list``.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for a
configuration error (unknown suite or label, bad config file, exhausted
point generation).
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import fields
from pathlib import Path

from .checks import SUITES, SuiteConfig, checks_for, run_suite
from .sphere import PointGenerationError

log = logging.getLogger("g2verify")

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


def _bool(s: str) -> bool:
    v = s.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {s!r}")


def _labels(s: str) -> tuple:
    return tuple(x.strip() for x in s.split(",") if x.strip())


# key in the config file -> parser for its value
CONFIG_KEYS = {
    "suite": str,
    "points": int,
    "seed": int,
    "report": str,
    "format": str,
    "exclude_axes": _bool,
    "parallel": int,
    "structures": _labels,
    "connections": _labels,
    "timings": _bool,
}


def read_config(path: str | Path) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment, dashes in keys are allowed."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{n}: expected one of {sorted(CONFIG_KEYS)} as key = value")
        try:
            out[key] = CONFIG_KEYS[key](value.strip())
        except ValueError as e:
            raise ConfigError(f"{path}:{n}: {e}") from e
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="g2verify", description="Exact verification of G2-instanton identities on S^7.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("suite", help="run a suite of checks")
    s.add_argument("name", nargs="?", choices=SUITES + ("all",))
    # defaults are None so that config-file values survive unless a flag is given
    s.add_argument("--points", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--report", help="write the report here instead of stdout")
    s.add_argument("--format", choices=("json", "md"))
    s.add_argument("--exclude-axes", dest="exclude_axes", action="store_true", default=None)
    s.add_argument("--include-axes", dest="exclude_axes", action="store_false")
    s.add_argument("--parallel", type=int)
    s.add_argument("--structures", type=_labels, help="comma-separated structure labels")
    s.add_argument("--connections", type=_labels, help="comma-separated connection labels")
    s.add_argument("--config", help="flat key = value file; flags override it")
    s.add_argument("--timings", action="store_true", default=None, help="include elapsed times (reports stop being byte-stable)")

    sub.add_parser("list", help="print every check with its suite and anchor")
    return p


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, config file and flags, in increasing priority."""
    opts = {"suite": None, "points": 20, "seed": 0, "report": None, "format": "json", "parallel": 1, "timings": False}
    if args.config:
        opts.update(read_config(args.config))
    for key in CONFIG_KEYS:
        flag = "name" if key == "suite" else key
        v = getattr(args, flag, None)
        if v is not None:
            opts[key] = v
    if opts["suite"] is None:
        raise ConfigError("no suite given")
    if opts["format"] not in ("json", "md"):
        raise ConfigError(f"unknown format {opts['format']!r}")
    if opts["parallel"] < 1:
        raise ConfigError("parallel must be at least 1")
    return opts


def suite_config(opts: dict) -> SuiteConfig:
    names = {f.name for f in fields(SuiteConfig)}
    kw = {k: v for k, v in opts.items() if k in names}
    cfg = SuiteConfig(name=opts["suite"], **kw)
    try:
        cfg.validate()
    except ValueError as e:
        raise ConfigError(str(e)) from e
    return cfg


def cmd_list(out=None) -> int:
    out = out or sys.stdout
    for chk in checks_for("all"):
        out.write(f"{chk.check_id}\t{chk.suite}\t{chk.anchor}\n")
    return EXIT_PASS


def cmd_suite(args: argparse.Namespace, out=None) -> int:
    out = out or sys.stdout
    opts = resolve(args)
    cfg = suite_config(opts)
    log.info("running suite %s with %d points, seed %d", cfg.name, cfg.points, cfg.seed)
    report = run_suite(cfg, parallel=opts["parallel"])
    text = report.to_json(opts["timings"]) if opts["format"] == "json" else report.to_markdown(opts["timings"])
    if opts["report"]:
        Path(opts["report"]).write_text(text)
    else:
        out.write(text)
    for r in report.runs:
        if not r.passed:
            log.warning("%s: %s", r.check_id, r.status)
    return EXIT_PASS if report.passed else EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "list":
            return cmd_list()
        return cmd_suite(args)
    except (ConfigError, PointGenerationError) as e:
        log.error("%s", e)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
