"""Command-line front end.

Subcommands: roots, certify, sweep, corollary, cache.  Configs are JSON
documents (schema shipped in whitmod/schemas/); rationals are written as
"p/q" strings throughout so no floats ever enter the pipeline.  Reports are
written atomically and are byte-identical across runs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import re
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import cache as cache_mod
from .errors import ConfigError, UnsupportedType, WhitmodError
from .modules import DirectSumPresentation, build_module
from .rootsystem import build_root_system
from .solver import Truncation, length_bound_check, sweep, whittaker_vectors

CONFIG_SCHEMA_VERSION = 1


# ----------------------------------------------------------------------
# config handling


_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def _rational(value, where):
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_RE.match(value):
        return Fraction(value)
    raise ConfigError(f"{where}: expected a rational 'p/q' string, got {value!r}")


def _rational_list(values, where, length=None):
    if not isinstance(values, list):
        raise ConfigError(f"{where}: expected a list of rationals")
    if length is not None and len(values) != length:
        raise ConfigError(f"{where}: expected {length} entries, got {len(values)}")
    return [_rational(v, f"{where}[{i}]") for i, v in enumerate(values)]


def generic_rational(rng: random.Random) -> Fraction:
    """A small 'generic' rational drawn from a seeded generator."""
    num = rng.choice([n for n in range(-60, 61) if n != 0])
    den = rng.randint(2, 13)
    return Fraction(num, den)


def load_config(path):
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON: {exc}")
    if not isinstance(doc, dict):
        raise ConfigError("config: top level must be an object")
    if doc.get("schema_version") != CONFIG_SCHEMA_VERSION:
        raise ConfigError("schema_version: must be 1")
    return doc


def _root_system_from(doc):
    rsdoc = doc.get("root_system")
    if not isinstance(rsdoc, dict):
        raise ConfigError("root_system: required object with 'type' and 'rank'")
    t = rsdoc.get("type")
    r = rsdoc.get("rank")
    if not isinstance(t, str) or not isinstance(r, int):
        raise ConfigError("root_system: 'type' must be a string, 'rank' an integer")
    try:
        return build_root_system(t, r)
    except UnsupportedType as exc:
        raise ConfigError(f"root_system: {exc}")


def _truncation_from(doc, args=None):
    tdoc = doc.get("truncation", {})
    if not isinstance(tdoc, dict):
        raise ConfigError("truncation: expected an object")
    depth = tdoc.get("depth", 8)
    factor = tdoc.get("factor_deg", 8)
    window = tdoc.get("window", 3)
    if args is not None:
        if getattr(args, "depth", None) is not None:
            depth = args.depth
        if getattr(args, "factor_deg", None) is not None:
            factor = args.factor_deg
    for name, val in (("depth", depth), ("factor_deg", factor), ("window", window)):
        if not isinstance(val, int) or val < 0:
            raise ConfigError(f"truncation.{name}: expected a non-negative integer")
    if window < 1:
        raise ConfigError("truncation.window: must be at least 1")
    return Truncation(depth, factor, window)


def _resolve_generic(values, rng, where):
    out = []
    for i, v in enumerate(values):
        if v == "generic":
            if rng is None:
                raise ConfigError(f"{where}[{i}]: 'generic' requires a seed")
            out.append(generic_rational(rng))
        else:
            out.append(_rational(v, f"{where}[{i}]"))
    return out


def presentation_from(doc, rs=None, rng=None, where="config"):
    """Build a module presentation from a config document."""
    if rs is None:
        rs = _root_system_from(doc)
    family = doc.get("family")
    if family == "verma":
        lam = doc.get("lambda")
        if lam is None:
            raise ConfigError(f"{where}.lambda: required for the verma family")
        return build_module("verma", rs, lam=_resolve_generic(lam, rng, f"{where}.lambda"))
    if family == "mcdowell":
        psi = _rational_list(doc.get("psi"), f"{where}.psi", rs.rank)
        omega = doc.get("omega")
        if omega is None:
            raise ConfigError(f"{where}.omega: required for the mcdowell family")
        omega = _resolve_generic(omega, rng, f"{where}.omega")
        casdoc = doc.get("casimirs")
        if not isinstance(casdoc, dict):
            raise ConfigError(f"{where}.casimirs: required object for the mcdowell family")
        casimirs = {}
        for k, v in casdoc.items():
            try:
                idx = int(k)
            except ValueError:
                raise ConfigError(f"{where}.casimirs: keys must be simple-root indices")
            casimirs[idx] = (
                generic_rational(rng) if v == "generic" else _rational(v, f"{where}.casimirs[{k}]")
            )
        try:
            return build_module("mcdowell", rs, psi=psi, omega=omega, casimirs=casimirs)
        except WhitmodError as exc:
            raise ConfigError(f"{where}: {exc}")
    if family == "universal_sl2":
        if "eta" not in doc or "c" not in doc:
            raise ConfigError(f"{where}: universal_sl2 needs 'eta' and 'c'")
        return build_module(
            "universal_sl2",
            rs,
            eta=_rational(doc["eta"], f"{where}.eta"),
            c=_rational(doc["c"], f"{where}.c"),
        )
    if family == "direct_sum":
        comps = doc.get("components")
        if not isinstance(comps, list) or not comps:
            raise ConfigError(f"{where}.components: non-empty list required")
        built = [
            presentation_from(c, rs=rs, rng=rng, where=f"{where}.components[{i}]")
            for i, c in enumerate(comps)
        ]
        return build_module("direct_sum", rs, components=built)
    raise ConfigError(f"{where}.family: unknown family {family!r}")


def _algebras_of(pres):
    if isinstance(pres, DirectSumPresentation):
        return [c.algebra for c in pres.components]
    return [pres.algebra]


def _with_cache(pres_list, fn):
    algebras = {}
    for pres in pres_list:
        for alg in _algebras_of(pres):
            algebras[alg.fingerprint()] = alg
    for alg in algebras.values():
        cache_mod.load_into(alg)
    try:
        return fn()
    finally:
        for alg in algebras.values():
            cache_mod.save_from(alg)


# ----------------------------------------------------------------------
# output


def write_atomic(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def _emit(args, doc_text):
    out = getattr(args, "out", None)
    if out:
        write_atomic(out, doc_text)
    else:
        sys.stdout.write(doc_text)


def _json_text(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ----------------------------------------------------------------------
# commands


def cmd_roots(args):
    try:
        rs = build_root_system(args.type, args.rank)
    except UnsupportedType as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(args, _json_text(rs.to_json_dict()))
    return 0


def cmd_certify(args):
    doc = load_config(args.config)
    rng = _seed_rng(doc, args)
    pres = presentation_from(doc, rng=rng)
    trunc = _truncation_from(doc, args)
    report = _with_cache([pres], lambda: whittaker_vectors(pres, trunc))
    text = _json_text(report.to_json())
    out = args.out or doc.get("output", {}).get("path")
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)
    print(
        f"{report.verdict} dim={report.dim_lower_bound} "
        f"D={trunc.depth} K={trunc.factor_deg} stabilized={str(report.stabilized).lower()}"
    )
    return 0


def _seed_rng(doc, args):
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = doc.get("seed")
    return random.Random(seed) if seed is not None else None


def _grid_points(doc, rs, rng):
    grid = doc.get("grid")
    if not isinstance(grid, dict):
        raise ConfigError("grid: required object for sweep")
    family = doc.get("family")
    points = []
    if family == "verma":
        lams = grid.get("lambda")
        if not isinstance(lams, list):
            raise ConfigError("grid.lambda: required list for a verma sweep")
        for lam in lams:
            lamv = _rational_list(lam if isinstance(lam, list) else [lam], "grid.lambda", rs.rank)
            label = ";".join(str(v) for v in lamv)
            points.append((label, dict(doc, family="verma", **{"lambda": [str(v) for v in lamv]})))
    elif family == "mcdowell":
        omegas = grid.get("omega")
        cass = grid.get("casimirs")
        if not isinstance(omegas, list) or not isinstance(cass, list):
            raise ConfigError("grid.omega and grid.casimirs: required lists for a mcdowell sweep")
        for om in omegas:
            omv = _rational_list(om if isinstance(om, list) else [om], "grid.omega", None)
            for cas in cass:
                if not isinstance(cas, dict):
                    raise ConfigError("grid.casimirs: entries must be objects")
                label = ";".join(str(v) for v in omv) + "|" + ";".join(
                    f"{k}:{v}" for k, v in sorted(cas.items())
                )
                points.append(
                    (label, dict(doc, omega=[str(v) for v in omv], casimirs=cas))
                )
    elif family == "universal_sl2":
        cs = grid.get("c")
        if not isinstance(cs, list):
            raise ConfigError("grid.c: required list for a universal_sl2 sweep")
        for c in cs:
            cv = _rational(c, "grid.c")
            points.append((str(cv), dict(doc, c=str(cv))))
    else:
        raise ConfigError(f"family: cannot sweep family {family!r}")
    return [
        (label, presentation_from(pdoc, rs=rs, rng=rng, where=f"grid[{label}]"))
        for label, pdoc in points
    ]


def cmd_sweep(args):
    doc = load_config(args.config)
    rng = _seed_rng(doc, args)
    rs = _root_system_from(doc)
    points = _grid_points(doc, rs, rng)
    trunc = _truncation_from(doc, args)
    rows, flagged = _with_cache(
        [p for _, p in points], lambda: sweep(points, trunc)
    )
    fmt = args.format or doc.get("output", {}).get("format", "csv")
    if fmt == "json":
        out_doc = {
            "schema_version": 1,
            "truncation": trunc.to_json(),
            "rows": [
                {k: v for k, v in row.items() if k != "report"} for row in rows
            ],
            "dim_ge_2": flagged,
        }
        text = _json_text(out_doc)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["params", "dim", "verdict", "stabilized", "error"])
        for row in rows:
            writer.writerow(
                [
                    row["label"],
                    "" if row["dim"] is None else row["dim"],
                    row["verdict"],
                    str(row["stabilized"]).lower(),
                    row["error"],
                ]
            )
        text = buf.getvalue()
    out = args.out or doc.get("output", {}).get("path")
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)
    if flagged:
        print(f"dim>=2 at: {', '.join(flagged)}", file=sys.stderr)
    return 0 if all(not row["error"] for row in rows) else 1


def default_corollary_suite(rs1):
    """Bundled rank-1 suite for the length-bound harness."""
    suite = []
    for lam in (-1, 0, 1, 2, Fraction(1, 2)):
        suite.append(
            (f"verma lambda={lam}", build_module("verma", rs1, lam=[Fraction(lam)]))
        )
    for c in (0, 1):
        suite.append(
            (
                f"universal eta=1 c={c}",
                build_module("universal_sl2", rs1, eta=1, c=Fraction(c)),
            )
        )
    simples = [build_module("verma", rs1, lam=[Fraction(l)]) for l in (-1, -2, -3)]
    suite.append(
        ("direct sum of 2 simples", build_module("direct_sum", rs1, components=simples[:2]))
    )
    suite.append(
        ("direct sum of 3 simples", build_module("direct_sum", rs1, components=simples))
    )
    return suite


def cmd_corollary(args):
    if args.config:
        doc = load_config(args.config)
        rng = _seed_rng(doc, args)
        instances = []
        inst_docs = doc.get("instances")
        if not isinstance(inst_docs, list) or not inst_docs:
            raise ConfigError("instances: non-empty list required for corollary")
        for i, idoc in enumerate(inst_docs):
            pres = presentation_from(idoc, rng=rng, where=f"instances[{i}]")
            label = idoc.get("label", f"instance {i}")
            instances.append((label, pres))
        trunc = _truncation_from(doc, args)
    else:
        rs1 = build_root_system("A", 1)
        instances = default_corollary_suite(rs1)
        trunc = Truncation(
            args.depth if args.depth is not None else 10,
            args.factor_deg if args.factor_deg is not None else 10,
            3,
        )
    try:
        rows = _with_cache(
            [p for _, p in instances], lambda: length_bound_check(instances, trunc)
        )
    except AssertionError as exc:
        print(f"FAIL {exc}")
        return 1
    for row in rows:
        if row["status"] == "SKIPPED":
            print(f"{row['instance']}: SKIPPED ({row['reason']})")
        else:
            eq = " (equality)" if row.get("equality") else ""
            print(
                f"{row['instance']}: {row['dim']} <= {row['length']} {row['status']}{eq}"
            )
    if args.out:
        clean = [{k: v for k, v in row.items()} for row in rows]
        write_atomic(args.out, _json_text({"schema_version": 1, "rows": clean}))
    return 0


def cmd_cache(args):
    if args.action == "stats":
        rows = cache_mod.stats()
        print(_json_text({"cache_dir": str(cache_mod.cache_dir()), "files": rows}), end="")
        return 0
    if args.action == "clear":
        n = cache_mod.clear()
        print(f"removed {n} cache file(s)")
        return 0
    return 2


# ----------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="whitmod",
        description="Exact Whittaker-module computations for small-rank semisimple Lie algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_roots = sub.add_parser("roots", help="print a root system as JSON")
    p_roots.add_argument("--type", required=True)
    p_roots.add_argument("--rank", type=int, required=True)
    p_roots.add_argument("--out")
    p_roots.set_defaults(fn=cmd_roots)

    for name, fn in (("certify", cmd_certify), ("sweep", cmd_sweep)):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)
        p.add_argument("--format", choices=("json", "csv"))
        p.add_argument("--out")
        p.add_argument("--depth", type=int)
        p.add_argument("--factor-deg", dest="factor_deg", type=int)
        p.add_argument("--seed", type=int)
        p.set_defaults(fn=fn)

    p_cor = sub.add_parser("corollary", help="composition-length bound harness")
    p_cor.add_argument("--config")
    p_cor.add_argument("--out")
    p_cor.add_argument("--depth", type=int)
    p_cor.add_argument("--factor-deg", dest="factor_deg", type=int)
    p_cor.add_argument("--seed", type=int)
    p_cor.set_defaults(fn=cmd_corollary)

    p_cache = sub.add_parser("cache", help="manage the straightening cache")
    p_cache.add_argument("action", choices=("stats", "clear"))
    p_cache.set_defaults(fn=cmd_cache)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except WhitmodError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
