"""Command line front end.

Every command writes one JSON document (or a CSV table) to stdout or to
--out. Exit codes: 0 success, 1 a check failed, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction
from math import prod
from pathlib import Path

from . import flags as fl
from .errors import FusionFlagError
from .fusion import EvalParams, check_parameter_independence, graded_character
from .garland import check_relations, check_surjection_order, even_fusion, relation_set, super_fusion
from .modcon import (
    highest_weight_module,
    sym_power_even,
    verify_module,
    verify_presentation_relations,
    weight_character,
)
from .rootdata import Weight, build_root_system, check_half_integer, kac_dimension
from .superalg import constants_csv, matrix_realization, spot_check_identities, verify_chevalley

SCHEMA = "fusionflag/1"
THEOREMS = ("chevalley", "presentation", "main", "weyl", "demazure", "truncated", "poset", "lemma-half-integer")


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from exc


def _fraction_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x) for x in text.split(",") if x.strip() != "")
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated rationals, got {text!r}") from exc


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else str(obj)
    if isinstance(obj, Weight):
        return [_jsonable(c) for c in obj.coords]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _csv(header, rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    wr.writerows(rows)
    return buf.getvalue()


# -- verification batteries -------------------------------------------------


def suite_chevalley(ns=(1, 2, 3), seed: int = 0, dump=None) -> dict:
    cases = []
    for n in ns:
        for even in (False, True):
            basis = matrix_realization(n, even)
            bad = verify_chevalley(basis)
            bad += spot_check_identities(basis, random.Random(seed), 5)
            integral = all(Fraction(c).denominator == 1 and c != 0 for c in basis.constants.values())
            cases.append(
                {
                    "n": n,
                    "algebra": "sp" if even else "osp",
                    "violations": bad,
                    "constants": len(basis.constants),
                    "integral": integral,
                    "ok": not bad and integral,
                }
            )
            if dump is not None and not even:
                dump(n, constants_csv(basis))
    return {"cases": cases}


def suite_presentation(pairs=None) -> dict:
    pairs = pairs or [(1, m) for m in range(6)] + [(2, m) for m in range(4)] + [(3, m) for m in range(3)]
    cases = []
    for n, m in pairs:
        M = highest_weight_module(n, m)
        expected = kac_dimension(build_root_system(n), Weight.delta(n, 1, m))
        bad = verify_module(M)
        rep = verify_presentation_relations(M, m)
        cases.append(
            {
                "n": n,
                "m": m,
                "dim": M.dim,
                "expected_dim": expected,
                "module_violations": bad,
                "relations": rep.to_json()["checks"],
                "ok": M.dim == expected and not bad and rep.ok,
            }
        )
    return {"cases": cases}


def _main_cases():
    return [(1, m) for m in fl.partitions_up_to(5)] + [(2, m) for m in [(1,), (1, 1), (2, 1)]]


def suite_main(cases=None, bound_multiplier: int = 1) -> dict:
    out = []
    for n, m in cases or _main_cases():
        m = fl.check_partition(m)
        F = super_fusion(n, m)
        computed = graded_character(F)
        predicted = fl.predicted_qcharacter(m, n)
        rel = check_relations(F, relation_set("K", {"n": n, "m": m}, bound_multiplier))
        expected = prod(kac_dimension(build_root_system(n), Weight.delta(n, 1, x)) for x in m)
        out.append(
            {
                "n": n,
                "m": list(m),
                "total_dim": F.total_dim,
                "expected_dim": expected,
                "predicted_graded_dims": predicted.graded_dims(),
                "computed_graded_dims": computed.graded_dims(),
                "characters_equal": predicted == computed,
                "relations_checked": len(rel.rows),
                "relation_failures": rel.failures,
                "ok": predicted == computed and rel.ok and F.total_dim == expected,
            }
        )
    return {"cases": out}


def suite_weyl(max_super: int = 4, max_even: int = 6, bound_multiplier: int = 1) -> dict:
    cases = []
    for k in range(1, max_super + 1):
        F = super_fusion(1, (1,) * k)
        rel = check_relations(F, relation_set("Weyl", {"n": 1, "N": k, "k": k}, bound_multiplier))
        cases.append(
            {"algebra": "osp", "k": k, "dim": F.total_dim, "expected_dim": 3**k, "ok": F.total_dim == 3**k and rel.ok}
        )
    for k in range(1, max_even + 1):
        F = even_fusion(1, (1,) * k)
        cases.append({"algebra": "sp", "k": k, "dim": F.total_dim, "expected_dim": 2**k, "ok": F.total_dim == 2**k})
    return {"cases": cases, "dims": [c["dim"] for c in cases]}


def _relation_case(m, S, **info) -> dict:
    F = super_fusion(1, m)
    rel = check_relations(F, S)
    expected = prod(2 * x + 1 for x in m)
    info.update(
        {
            "factors": list(m),
            "dim": F.total_dim,
            "expected_dim": expected,
            "relations_checked": len(rel.rows),
            "relation_failures": rel.failures,
            "ok": rel.ok and F.total_dim == expected,
        }
    )
    return info


def suite_truncated(max_weight: int = 6, max_N: int = 4, bound_multiplier: int = 1) -> dict:
    cases = []
    for weight in range(1, max_weight + 1):
        for N in range(1, max_N + 1):
            k, j = divmod(weight, N)
            m = (k + 1,) * j + (k,) * (N - j)
            S = relation_set("TruncWeyl", {"weight": weight, "N": N, "k": len(m)}, bound_multiplier)
            cases.append(_relation_case(m, S, weight=weight, N=N))
    return {"cases": cases}


def suite_demazure(max_level: int = 3, max_weight: int = 6, bound_multiplier: int = 1) -> dict:
    cases = []
    for level in range(1, max_level + 1):
        for weight in range(1, max_weight + 1):
            q, r = divmod(weight - 1, level)
            m = (level,) * q + (r + 1,)
            S = relation_set("Demazure", {"level": level, "weight": weight, "k": len(m)}, bound_multiplier)
            cases.append(_relation_case(m, S, level=level, weight=weight))
    return {"cases": cases}


def suite_poset(bound_multiplier: int = 1) -> dict:
    scans = []
    for m in range(7):
        for k in (1, 2, 3):
            scans.append((1, Weight.of(m), k))
    scans += [(2, Weight.of(2, 0), 2), (2, Weight.of(1, 1), 2)]
    cases = []
    for n, lam, k in scans:
        rep = fl.monotonicity_scan(lam, k, n)
        cases.append({"kind": "monotonicity", "n": n, "weight": lam, "k": k, "pairs": len(rep.rows), "ok": rep.ok})
    for size in range(1, 6):
        for k in (1, 2, 3):
            rep = fl.monotonicity_scan(Weight.of(size), k, 1)
            for a, b in rep.comparable_pairs():
                if a == b:
                    continue
                lo = [int(w.coords[0]) for w in a]
                hi = [int(w.coords[0]) for w in b]
                s = check_surjection_order(lo, hi, 1, bound_multiplier)
                cases.append({"kind": "surjection", "n": 1, "source": hi, "target": lo, "ok": s.ok})
    return {"cases": cases}


def suite_half_integer(ns=(1, 2, 3), bound: int = 3) -> dict:
    cases = []
    for n in ns:
        rs = build_root_system(n)
        for lam in fl.dominant_weights_below(Weight((bound,) * n)):
            rep = check_half_integer(rs, lam)
            cases.append(
                {
                    "n": n,
                    "weight": lam,
                    "values": {str(a.weight): v for a, v in rep.values.items()},
                    "ok": rep.ok,
                }
            )
    return {"cases": cases}


# -- commands -----------------------------------------------------------------


def _need(args, name):
    if getattr(args, name) is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")
    value = getattr(args, name)
    if name in ("n", "k") and value < 1:
        raise UsageError(f"--{name} must be a positive integer")
    if name == "m" and value < 0:
        raise UsageError("--m must be nonnegative")
    return value


def _weight_arg(args) -> Weight:
    n = _need(args, "n")
    if args.weight is not None:
        if len(args.weight) != n:
            raise UsageError(f"--weight needs {n} coordinates")
        return Weight(args.weight)
    return Weight.delta(n, 1, _need(args, "m"))


def cmd_dim(args):
    n = _need(args, "n")
    lam = _weight_arg(args)
    value = kac_dimension(build_root_system(n, even=args.even), lam)
    if args.format in (None, "text"):
        return f"{value}\n", True
    if args.format == "csv":
        return _csv(["n", "weight", "dim"], [[n, str(lam), value]]), True
    return {"command": "dim", "n": n, "even": args.even, "weight": lam, "dim": value}, True


def cmd_char(args):
    n = _need(args, "n")
    m = _need(args, "m")
    M = sym_power_even(n, m) if args.even else highest_weight_module(n, m)
    table = sorted(weight_character(M).items(), key=lambda kv: tuple(-c for c in kv[0].coords))
    if args.format == "csv":
        return _csv(["weight", "mult"], [[" ".join(str(c) for c in w.key()), c] for w, c in table]), True
    return {
        "command": "char",
        "n": n,
        "m": m,
        "even": args.even,
        "dim": M.dim,
        "character": [{"weight": w, "mult": c} for w, c in table],
    }, True


def cmd_fusion(args):
    n = _need(args, "n")
    m = fl.check_partition(_need(args, "partition"))
    zs = [EvalParams(z) for z in args.z] if args.z else [EvalParams.default(len(m))]
    factors = [sym_power_even(n, x) if args.even else highest_weight_module(n, x) for x in m]
    rep = check_parameter_independence(factors, zs)
    expected = prod(f.dim for f in factors)
    chars = rep.characters
    ok = rep.independent and all(c.total == expected for c in chars)
    if args.format == "csv":
        return chars[0].to_csv(), ok
    return {
        "command": "fusion",
        "n": n,
        "partition": list(m),
        "even": args.even,
        "expected_dim": expected,
        "independent": rep.independent,
        "characters": [
            {"z": list(z.z), "total_dim": c.total, "graded_dims": c.graded_dims(), "table": c.rows()}
            for z, c in zip(zs, chars)
        ],
    }, ok


def cmd_flags(args):
    n = _need(args, "n")
    m = fl.check_partition(_need(args, "partition"))
    table = fl.flag_table(m, n)
    identity = fl.dimension_identity(m, n)
    if args.format == "csv":
        rows = [
            [" ".join(map(str, r["indices"])), " ".join(map(str, r["partition_image"])), r["degree_shift"], r["even_dims_product"]]
            for r in table
        ]
        return _csv(["indices", "partition_image", "degree_shift", "even_dims_product"], rows), identity
    out = {"command": "flags", "n": n, "partition": list(m), "pieces": table, "dimension_identity": identity}
    pred = fl.predicted_qcharacter(m, n)
    out["predicted_graded_dims"] = pred.graded_dims()
    out["predicted"] = pred.rows()
    if n == 1:
        pbw = fl.pbw_basis_osp12(m)
        out["pbw"] = pbw.to_json()
    return out, identity


def cmd_poset(args):
    n = _need(args, "n")
    lam = _weight_arg(args)
    k = _need(args, "k")
    rep = fl.monotonicity_scan(lam, k, n)
    if args.format == "csv":
        return rep.to_csv(), rep.ok
    rows = [{key: _jsonable(val) for key, val in r.items()} for r in rep.rows]
    return {"command": "poset", "n": n, "weight": lam, "k": k, "rows": rows, "violations": len(rep.violations)}, rep.ok


def cmd_verify(args):
    name = args.theorem
    mult = args.bound_multiplier
    dumped = []

    def dump(n, text):
        path = Path(args.dump_constants)
        if len(ns) > 1:
            path = path.with_name(f"{path.stem}_n{n}{path.suffix}")
        path.write_text(text)
        dumped.append(str(path))

    if name == "chevalley":
        ns = (args.n,) if args.n else (1, 2, 3)
        result = suite_chevalley(ns, args.seed, dump if args.dump_constants else None)
    elif name == "presentation":
        pairs = [(args.n, args.m)] if args.n and args.m is not None else None
        result = suite_presentation(pairs)
    elif name == "main":
        cases = [(args.n or 1, args.partition)] if args.partition else None
        result = suite_main(cases, mult)
    elif name == "weyl":
        result = suite_weyl(bound_multiplier=mult)
    elif name == "truncated":
        result = suite_truncated(bound_multiplier=mult)
    elif name == "demazure":
        result = suite_demazure(bound_multiplier=mult)
    elif name == "poset":
        result = suite_poset(mult)
    else:
        ns = (args.n,) if args.n else (1, 2, 3)
        result = suite_half_integer(ns)
    ok = all(c["ok"] for c in result["cases"])
    if args.format == "csv":
        rows = [[i, int(c["ok"]), json.dumps(_jsonable(c), sort_keys=True)] for i, c in enumerate(result["cases"])]
        return _csv(["case", "ok", "detail"], rows), ok
    out = {"command": "verify", "theorem": name, "ok": ok, "passed": sum(c["ok"] for c in result["cases"])}
    out["total"] = len(result["cases"])
    out.update(result)
    if dumped:
        out["constants_files"] = dumped
    return out, ok


COMMANDS = {
    "dim": cmd_dim,
    "char": cmd_char,
    "fusion": cmd_fusion,
    "flags": cmd_flags,
    "verify": cmd_verify,
    "poset": cmd_poset,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fusionflag", description="osp(1,2n) fusion products and fusion flags")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, help="rank")
        p.add_argument("--m", type=int, help="highest weight m delta_1")
        p.add_argument("--weight", type=_int_list, help="highest weight in delta coordinates")
        p.add_argument("--k", type=int, help="tuple length for poset scans")
        p.add_argument("--partition", type=_int_list, help="weakly decreasing parts a,b,c")
        p.add_argument("--z", type=_fraction_list, action="append", help="evaluation points z1,z2,...")
        p.add_argument("--even", action="store_true", help="use the even part sp(2n)")
        p.add_argument("--format", choices=("json", "csv", "text") if name == "dim" else ("json", "csv"))
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--bound-multiplier", type=int, default=1)
        p.add_argument("--dump-constants", help="write the structure constant table as CSV")
        if name == "verify":
            p.add_argument("--theorem", choices=THEOREMS, required=True)
    return parser


def render(payload) -> str:
    if isinstance(payload, str):
        return payload
    doc = {"schema": SCHEMA}
    doc.update(_jsonable(payload))
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.bound_multiplier < 1:
        print("error: --bound-multiplier must be at least 1", file=sys.stderr)
        return 2
    if args.n is not None and args.n < 1:
        print("error: --n must be a positive integer", file=sys.stderr)
        return 2
    if args.command == "verify" and args.dump_constants and args.theorem != "chevalley":
        print("error: --dump-constants only applies to --theorem chevalley", file=sys.stderr)
        return 2
    try:
        payload, ok = COMMANDS[args.command](args)
        text = render(payload)
    except (UsageError, FusionFlagError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    try:
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
