"""Command-line entry point.

Subcommands cover the whole pipeline: Groebner bases and ideal operations
(gb, eliminate, saturate, dim, mincomp), cone analysis (cone, cycle),
obstruction and Behrend evaluation (eu, behrend eval, behrend falsify /
falsify), and the points toolkit (hilb enumerate / tangent / parity-scan).

Exit codes: 0 success, 1 input error, 2 inconclusive or unsupported
verdict.  Every report embeds the effective configuration and seed, and
identical inputs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from .behrend import behrend_value, constancy_falsifier
from .cones import cone_components, signed_support_cycle
from .errors import (
    BoundExceededError,
    ConesignError,
    DegenerateDrawError,
    EuUnsupportedError,
    InfiniteColengthError,
    NotHomogeneousError,
    PointNotOnVarietyError,
    PolynomialSyntaxError,
    PrimalityUndecidedError,
)
from .euler import eu_point
from .hilb import enumerate_plane_partitions, parity_scan, tangent_dimension_hilb
from .ideals import IdealPresentation, dimension, eliminate, minimal_primes, saturate
from .poly import parse_generators, parse_polynomial, order_from_name, ring

CONFIG_ENV = "CONESIGN_CONFIG"


@dataclass
class RunConfig:
    order: str = "degrevlex"
    seed: int = 0
    characteristic: int = 0
    jobs: int = 1
    output_format: str = "json"
    max_n: int = 8
    max_variables: int = 16
    max_gb_pairs: int = 500_000


def load_config(path: str | None = None) -> RunConfig:
    """Defaults, overridden by the JSON file at CONESIGN_CONFIG if set."""
    cfg = RunConfig()
    path = path if path is not None else os.environ.get(CONFIG_ENV)
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        for key, value in data.items():
            if hasattr(cfg, key):
                setattr(cfg, key, value)
    return cfg


def load_ideal_file(path: str, characteristic: int = 0) -> IdealPresentation:
    """Ideal file: a `ring x, y, z;` header, then generators.

    Generators may be comma-separated or one per line; `#` starts a
    comment.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    header = None
    body = []
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if header is None:
            if not (stripped.startswith("ring") and stripped.endswith(";")):
                raise ValueError(
                    f"{path}: expected a 'ring x, y, z;' header line first")
            header = stripped[len("ring"):-1].strip()
        else:
            body.append(stripped)
    if header is None:
        raise ValueError(f"{path}: missing ring header")
    rng = ring(header, characteristic=characteristic)
    gens = parse_generators("\n".join(body), rng)
    return IdealPresentation(rng, gens)


def parse_point(text: str, rng) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != rng.arity:
        raise ValueError(
            f"point has {len(parts)} coordinates, ring has {rng.arity}")
    return tuple(Fraction(p) for p in parts)


def _as_text(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k in value:
            v = value[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_as_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(value, list):
        lines = []
        for v in value:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_as_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
        return "\n".join(lines)
    return f"{pad}{value}"


def emit(payload: dict, cfg: RunConfig, csv_rows=None, csv_header=None) -> None:
    report = {"config": asdict(cfg), "seed": cfg.seed, "result": payload}
    if cfg.output_format == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True, default=str))
        sys.stdout.write("\n")
    elif cfg.output_format == "csv":
        if csv_rows is None:
            raise ValueError("csv output is not available for this subcommand")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(csv_header)
        for row in csv_rows:
            writer.writerow(row)
        sys.stdout.write(buf.getvalue())
    elif cfg.output_format == "text":
        sys.stdout.write(_as_text(payload))
        sys.stdout.write(f"\n# seed={cfg.seed} order={cfg.order} "
                         f"char={cfg.characteristic}\n")
    else:
        raise ValueError(f"unknown output format {cfg.output_format!r}")


def _require_rationals(cfg: RunConfig, what: str) -> None:
    if cfg.characteristic != 0:
        raise ValueError(
            f"{what} requires characteristic 0 (cross-check mode only "
            f"covers gb/eliminate/saturate/dim)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conesign",
        description="Normal-cone cycles, Euler obstructions, Behrend "
                    "values, and Hilbert-scheme parity checks for affine "
                    "schemes over Q.")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--order", choices=["degrevlex", "lex"], default=None)
    parser.add_argument("--char", type=int, default=None)
    parser.add_argument("--jobs", type=int, default=None)
    parser.add_argument("--format", choices=["json", "csv", "text"],
                        default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def ideal_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--ideal", required=True)
        return p

    ideal_cmd("gb", "reduced Groebner basis")
    p = ideal_cmd("eliminate", "eliminate variables")
    p.add_argument("--drop", required=True,
                   help="comma-separated variables to eliminate")
    p = ideal_cmd("saturate", "saturate by a polynomial")
    p.add_argument("--by", required=True, help="polynomial text")
    ideal_cmd("dim", "Krull dimension of the quotient")
    ideal_cmd("mincomp", "minimal primes with multiplicities")
    ideal_cmd("cone", "normal cone components")
    ideal_cmd("cycle", "signed support cycle of the normal cone")

    p = sub.add_parser("eu", help="local Euler obstruction at a point")
    p.add_argument("--variety", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--assume-prime", action="store_true",
                   help="skip primality certification, record the assumption")

    p = sub.add_parser("behrend", help="Behrend function tools")
    bsub = p.add_subparsers(dest="behrend_command", required=True)
    pe = bsub.add_parser("eval", help="Behrend value at a point")
    pe.add_argument("--ideal", required=True)
    pe.add_argument("--point", required=True)
    pf = bsub.add_parser("falsify", help="constancy falsifier")
    pf.add_argument("--ideal", required=True)
    pf.add_argument("--sign", choices=["+1", "-1", "1"], default=None)

    p = sub.add_parser("falsify", help="constancy falsifier (alias)")
    p.add_argument("--ideal", required=True)
    p.add_argument("--sign", choices=["+1", "-1", "1"], default=None)

    p = sub.add_parser("hilb", help="Hilbert scheme of points tools")
    hsub = p.add_subparsers(dest="hilb_command", required=True)
    pe = hsub.add_parser("enumerate", help="plane partitions of size n")
    pe.add_argument("--n", type=int, required=True)
    pt = hsub.add_parser("tangent", help="tangent dimension at an ideal")
    pt.add_argument("--ideal", required=True)
    ps = hsub.add_parser("parity-scan", help="parity over all monomial ideals")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--jobs", type=int, default=None)
    return parser


def _dispatch(args, cfg: RunConfig) -> int:
    cmd = args.command
    if cmd == "gb":
        I = load_ideal_file(args.ideal, cfg.characteristic)
        order = order_from_name(cfg.order, I.ring)
        basis = I.gb(order)
        emit({"basis": [g.to_text(order) for g in basis],
              "order": cfg.order}, cfg)
        return 0
    if cmd == "eliminate":
        I = load_ideal_file(args.ideal, cfg.characteristic)
        drop = tuple(v.strip() for v in args.drop.split(",") if v.strip())
        out = eliminate(I, drop)
        emit({"variables": list(out.ring.variables),
              "generators": [g.to_text() for g in out.gb()]}, cfg)
        return 0
    if cmd == "saturate":
        I = load_ideal_file(args.ideal, cfg.characteristic)
        f = parse_polynomial(args.by, I.ring)
        out = saturate(I, f)
        emit({"generators": [g.to_text() for g in out.gb()]}, cfg)
        return 0
    if cmd == "dim":
        I = load_ideal_file(args.ideal, cfg.characteristic)
        emit({"dimension": dimension(I)}, cfg)
        return 0
    if cmd == "mincomp":
        _require_rationals(cfg, "minimal-prime decomposition")
        I = load_ideal_file(args.ideal)
        comps = minimal_primes(I)
        payload = {"components": [c.to_json_dict() for c in comps]}
        rows = [[i, ";".join(c.to_json_dict()["generators"]), c.multiplicity,
                 c.dimension, c.degree, c.primality]
                for i, c in enumerate(comps)]
        emit(payload, cfg, csv_rows=rows,
             csv_header=["component_id", "generators", "multiplicity",
                         "dimension", "degree", "primality_status"])
        return 0
    if cmd == "cone":
        _require_rationals(cfg, "cone analysis")
        I = load_ideal_file(args.ideal)
        comps = cone_components(I)
        emit({"components": [c.to_json_dict() for c in comps]}, cfg)
        return 0
    if cmd == "cycle":
        _require_rationals(cfg, "cycle computation")
        I = load_ideal_file(args.ideal)
        emit(signed_support_cycle(I).to_json_dict(), cfg)
        return 0
    if cmd == "eu":
        _require_rationals(cfg, "Euler obstruction")
        V = load_ideal_file(args.variety)
        point = parse_point(args.point, V.ring)
        mode = "assumed" if args.assume_prime else "check"
        verdict = eu_point(V, point, primality=mode, seed=cfg.seed)
        emit(verdict.to_json_dict(), cfg)
        return 0
    if cmd == "behrend" and args.behrend_command == "eval":
        _require_rationals(cfg, "Behrend evaluation")
        I = load_ideal_file(args.ideal)
        point = parse_point(args.point, I.ring)
        ev = behrend_value(I, point, seed=cfg.seed)
        emit(ev.to_json_dict(), cfg)
        return 0
    if cmd == "falsify" or (cmd == "behrend"
                            and args.behrend_command == "falsify"):
        _require_rationals(cfg, "the constancy falsifier")
        I = load_ideal_file(args.ideal)
        sign = None if args.sign is None else int(args.sign)
        cert = constancy_falsifier(I, sign)
        emit(cert.to_json_dict(), cfg)
        return 2 if cert.overall == "inconclusive" else 0
    if cmd == "hilb":
        _require_rationals(cfg, "the points toolkit")
        if args.hilb_command == "enumerate":
            parts = enumerate_plane_partitions(args.n, bound=cfg.max_n)
            payload = {"n": args.n, "count": len(parts),
                       "partitions": [p.to_json_dict() for p in parts]}
            rows = [[i, json.dumps(p.to_json_dict()["boxes"])]
                    for i, p in enumerate(parts)]
            emit(payload, cfg, csv_rows=rows,
                 csv_header=["partition_id", "boxes"])
            return 0
        if args.hilb_command == "tangent":
            I = load_ideal_file(args.ideal)
            report = tangent_dimension_hilb(I)
            emit(report.to_json_dict(), cfg)
            return 0
        if args.hilb_command == "parity-scan":
            jobs = args.jobs if args.jobs is not None else cfg.jobs
            summary = parity_scan(args.n, jobs=jobs, bound=cfg.max_n)
            rows = [[r.partition_id, r.n, r.tangent_dim,
                     "true" if r.parity else "false"] for r in summary.rows]
            emit(summary.to_json_dict(), cfg, csv_rows=rows,
                 csv_header=["partition_id", "n", "tangent_dim", "parity"])
            return 0
    raise ValueError(f"unhandled command {cmd!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config()
        if args.seed is not None:
            cfg.seed = args.seed
        if args.order is not None:
            cfg.order = args.order
        if args.char is not None:
            cfg.characteristic = args.char
        if args.jobs is not None:
            cfg.jobs = args.jobs
        if args.format is not None:
            cfg.output_format = args.format
        return _dispatch(args, cfg)
    except (EuUnsupportedError, PrimalityUndecidedError, BoundExceededError,
            DegenerateDrawError) as exc:
        sys.stderr.write(f"inconclusive: {exc}\n")
        return 2
    except (PolynomialSyntaxError, NotHomogeneousError, InfiniteColengthError,
            PointNotOnVarietyError, ConesignError, ValueError, OSError,
            json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
