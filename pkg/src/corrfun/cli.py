"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from corrfun import counting, functev
from corrfun.errors import CapacityError, InputError, InvariantViolation
from corrfun.exactla import DEFAULT_PRIME, QQ, Field, PrimeField, choose_field, field_from_spec
from corrfun.palgebra import GroupRepresentation, builtin_rep
from corrfun.posetlib import (
    Poset,
    automorphism_group,
    check_order_size,
    coset_decomposition,
    enumerate_orders,
    isomorphism_class_reps,
    orbit_bits,
)
from corrfun.relcore import default_cap
from corrfun.suites import SUITES, SuiteOptions, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3
SAMPLED_SUITES = {"fundamental", "palgebra", "duality"}


@dataclass(frozen=True)
class RunConfig:
    field: str
    cap: int
    fmt: str
    seed: int
    override: bool


def _config(args) -> RunConfig:
    cap = default_cap() if args.cap is None else args.cap
    if cap <= 0:
        raise InputError("--cap must be positive")
    if args.field not in ("auto", "both"):
        field_from_spec(args.field)  # validates the prime early
    if args.seed < 0 or args.seed >= 1 << 64:
        raise InputError("--seed must be an unsigned 64-bit integer")
    return RunConfig(args.field, cap, args.format, args.seed, args.override_guards)


# ---------------------------------------------------------------------------
# input parsing


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1-5"`` or ``"1,2,4"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError as exc:
        raise InputError(f"bad range {text!r}") from exc
    if any(v < 0 for v in out):
        raise InputError("sizes must be non-negative")
    return out


def _load_json(text: str):
    if text.lstrip().startswith(("{", "[")):
        return json.loads(text)
    path = Path(text)
    if not path.exists():
        raise InputError(f"no such file: {text}")
    return json.loads(path.read_text())


def parse_poset(args) -> Poset:
    if args.poset:
        try:
            p = Poset.from_json(_load_json(args.poset))
        except json.JSONDecodeError as exc:
            raise InputError(f"bad poset JSON: {exc}") from exc
    elif args.chain is not None:
        check_order_size(args.chain, args.override_guards)
        p = Poset.chain(args.chain)
    elif args.antichain is not None:
        check_order_size(args.antichain, args.override_guards)
        p = Poset.antichain(args.antichain)
    elif args.elements is not None or args.size is not None:
        if args.elements is not None:
            labels = [s.strip() for s in args.elements.split(",") if s.strip()]
        else:
            labels = [str(i) for i in range(args.size)]
        if len(set(labels)) != len(labels):
            raise InputError("repeated element labels")
        index = {lab: i for i, lab in enumerate(labels)}
        pairs = []
        for item in (args.pairs or "").split(","):
            item = item.strip()
            if not item:
                continue
            if "<" not in item:
                raise InputError(f"pair {item!r} should look like a<b")
            a, b = (s.strip() for s in item.split("<", 1))
            if a not in index or b not in index:
                raise InputError(f"unknown element in {item!r}")
            pairs.append((index[a], index[b]))
        p = Poset.from_pairs(len(labels), pairs)
    else:
        raise InputError("give a poset: --poset, --chain, --antichain, --size or --elements")
    check_order_size(p.size, args.override_guards)
    return p


def parse_rep(spec: str, p: Poset, field: Field) -> GroupRepresentation:
    aut = automorphism_group(p)
    if spec in ("trivial", "sign"):
        return builtin_rep(spec, aut, field)
    try:
        data = _load_json(spec)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad representation JSON: {exc}") from exc
    data.setdefault("field", field.to_json())
    return GroupRepresentation.from_json(data)


def _single_field_only(cfg: RunConfig) -> None:
    if cfg.field == "both":
        raise InputError("--field both is only supported by simple-dim")


def _module_field(cfg: RunConfig, p: Poset, rep_spec: str, n_columns: int) -> Field:
    if cfg.field == "both":
        return QQ
    if cfg.field != "auto":
        return field_from_spec(cfg.field)
    n_cosets = len(coset_decomposition(automorphism_group(p)).reps)
    return choose_field(n_columns * n_cosets) if rep_spec in ("trivial", "sign") else QQ


# ---------------------------------------------------------------------------
# output


def emit(cfg: RunConfig, payload, text_lines: list[str], csv_text: str | None = None) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif cfg.fmt == "csv" and csv_text is not None:
        sys.stdout.write(csv_text)
    else:
        print("\n".join(text_lines))


def _table(header: list[str], rows: list[list]) -> list[str]:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands


def cmd_posets(args, cfg: RunConfig) -> int:
    orders = enumerate_orders(args.n, cfg.override)
    reps = isomorphism_class_reps(orders)
    class_of = {}
    for k, r in enumerate(reps):
        for b in orbit_bits(r.bits, args.n):
            class_of[b] = k
    rows = []
    for i, p in enumerate(orders):
        rows.append([i, json.dumps([list(q) for q in p.strict_pairs()]), len(automorphism_group(p)), class_of[p.bits], "*" if p.bits == reps[class_of[p.bits]].bits else ""])
    header = ["index", "pairs", "aut", "class", "canonical"]
    payload = {
        "n": args.n,
        "orders": len(orders),
        "classes": len(reps),
        "posets": [
            {"index": r[0], "pairs": [list(q) for q in orders[r[0]].strict_pairs()], "aut": r[2], "class": r[3], "canonical": bool(r[4])}
            for r in rows
        ],
    }
    lines = [f"{len(orders)} orders on {args.n} elements, {len(reps)} isomorphism classes"] + _table(header, rows)
    emit(cfg, payload, lines, _csv(header, rows))
    return EXIT_OK


def cmd_simple_dim(args, cfg: RunConfig) -> int:
    p = parse_poset(args)
    xs = parse_range(args.x)
    n_cols = (1 << (max(xs, default=0) * p.size)) if xs else 1
    fld = _module_field(cfg, p, args.rep, n_cols)
    rep = parse_rep(args.rep, p, fld)
    reports = [functev.bounds_report(p, rep, x, cfg.cap) for x in xs]
    if cfg.field == "both":
        # recompute over the default prime and flag any disagreement with the rational run
        prime = PrimeField(DEFAULT_PRIME)
        mod_rep = parse_rep(args.rep, p, prime)
        for i, x in enumerate(xs):
            other = functev.bounds_report(p, mod_rep, x, cfg.cap)
            if (other.dimL, other.dimJ, other.dimS) != (reports[i].dimL, reports[i].dimJ, reports[i].dimS):
                reports[i].flags.append(f"differs over {other.field}: dimS={other.dimS}")
            else:
                reports[i].flags.append(f"agrees over {other.field}")
    header = ["X", "dimL", "dimJ", "dimS", "lower", "upper", "flags"]
    rows = [[r.X, r.dimL, r.dimJ, r.dimS, r.lower, r.upper, ";".join(r.flags)] for r in reports]
    lines = [f"E={p.size} R={json.dumps([list(q) for q in p.strict_pairs()])} V={rep.label} field={functev.describe_field(fld)}"] + _table(header, rows)
    emit(cfg, [r.to_json() for r in reports], lines, functev.reports_to_csv(reports))
    return EXIT_FAIL if any("violated" in f for r in reports for f in r.flags) else EXIT_OK


def cmd_counts(args, cfg: RunConfig) -> int:
    rpt = counting.count_report(args.x, args.e, args.g)
    name = f"s({args.x},{args.e})" if args.g is None else f"ss({args.x},{args.e},{args.g})"
    brute = "not computed" if rpt.bruteforce_value is None else str(rpt.bruteforce_value)
    header = ["x", "e", "g", "formula", "bruteforce", "ok"]
    row = [args.x, args.e, "" if args.g is None else args.g, rpt.formula_value, "" if rpt.bruteforce_value is None else rpt.bruteforce_value, rpt.ok]
    emit(cfg, rpt.to_json(), [f"{name} = {rpt.formula_value} (brute force: {brute})"], _csv(header, [row]))
    return EXIT_OK if rpt.ok else EXIT_FAIL


def cmd_induce_check(args, cfg: RunConfig) -> int:
    _single_field_only(cfg)
    p = parse_poset(args)
    xs = parse_range(args.x)
    fld = _module_field(cfg, p, args.rep, 1 << (max(xs, default=0) * args.target))
    rep = parse_rep(args.rep, p, fld)
    checks = [functev.check_induction_iso(p, rep, args.target, x, cfg.cap) for x in xs]
    header = ["X", "dimL_E", "dimL_F", "ok"]
    rows = [[c.x, c.dim_source, c.dim_target, c.ok] for c in checks]
    payload = {
        "E": p.size,
        "R": [list(q) for q in p.strict_pairs()],
        "F": args.target,
        "V": rep.label,
        "field": functev.describe_field(fld),
        "induced_dim": checks[0].induced_dim if checks else None,
        "rows": [{"X": c.x, "dimL_E": c.dim_source, "dimL_F": c.dim_target, "ok": c.ok} for c in checks],
    }
    lines = [f"E={p.size} F={args.target} induced dim={payload['induced_dim']}"] + _table(header, rows)
    emit(cfg, payload, lines, _csv(header, rows))
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAIL


def cmd_j_vanish(args, cfg: RunConfig) -> int:
    _single_field_only(cfg)
    p = parse_poset(args)
    fld = _module_field(cfg, p, args.rep, 1 << (args.xmax * args.target))
    rep = parse_rep(args.rep, p, fld)
    chk = functev.check_J_vanishing(p, rep, args.target, args.xmax, cfg.cap)
    header = ["X", "dimL", "dimJ", "dimS"]
    rows = [[r.x, r.dimL, r.dimJ, r.dimS] for r in chk.rows]
    payload = {
        "E": p.size,
        "F": args.target,
        "field": functev.describe_field(fld),
        "induced_dim": chk.induced_dim,
        "rows": [{"X": r.x, "dimL": r.dimL, "dimJ": r.dimJ, "dimS": r.dimS} for r in chk.rows],
        "vanishes": chk.ok,
    }
    lines = [f"E={p.size} F={args.target} induced dim={chk.induced_dim}"] + _table(header, rows)
    emit(cfg, payload, lines, _csv(header, rows))
    return EXIT_OK if chk.ok else EXIT_FAIL


def cmd_verify(args, cfg: RunConfig) -> int:
    _single_field_only(cfg)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite == "all":
        names.remove("palgebra")
    fld = None if cfg.field == "auto" else field_from_spec(cfg.field)
    opts = SuiteOptions(field=fld, seed=cfg.seed, cap=cfg.cap)
    results = [run_suite(n, opts) for n in names]
    lines = []
    for r in results:
        lines.append(f"{r.name}: {'PASS' if r.passed else 'FAIL'} ({r.checks} checks)")
        if r.name in SAMPLED_SUITES:
            lines.append(f"  seed: {cfg.seed}")
        if not r.passed:
            lines.append("  counterexample: " + json.dumps(r.counterexample, sort_keys=True))
    header = ["suite", "passed", "checks", "seed"]
    rows = [[r.name, r.passed, r.checks, cfg.seed if r.name in SAMPLED_SUITES else ""] for r in results]
    payload = [r.to_json() for r in results]
    emit(cfg, payload if len(payload) > 1 else payload[0], lines, _csv(header, rows))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="auto", help="rational | p:<prime> | both | auto (default)")
    common.add_argument("--cap", type=int, default=None, help="enumeration cap (default 65536 or $CORRFUN_CAP)")
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--override-guards", action="store_true", help="allow posets on 5 elements")

    poset = argparse.ArgumentParser(add_help=False)
    poset.add_argument("--poset", help="poset JSON file or inline JSON")
    poset.add_argument("--chain", type=int, help="total order 0<1<...<n-1")
    poset.add_argument("--antichain", type=int, help="discrete order on n elements")
    poset.add_argument("--size", type=int, help="number of elements (labels 0..n-1)")
    poset.add_argument("--elements", help="comma separated element labels")
    poset.add_argument("--pairs", help='strict relations such as "a<b,a<c"')
    poset.add_argument("--rep", default="trivial", help="trivial | sign | representation JSON")

    parser = argparse.ArgumentParser(prog="corrfun", description="Exact computations with correspondence functors.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("posets", parents=[common], help="list the orders on n elements")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_posets)

    p = sub.add_parser("simple-dim", parents=[common, poset], help="dimensions of L, J and S with bounds")
    p.add_argument("--x", default="0-4", help='sizes of X, e.g. "1-5"')
    p.set_defaults(func=cmd_simple_dim)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("counts", parents=[common], help="surjection and sandwich counts")
    p.add_argument("x", type=int)
    p.add_argument("e", type=int)
    p.add_argument("g", type=int, nargs="?")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("induce-check", parents=[common, poset], help="compare L at E with L of the induced module at F")
    p.add_argument("--target", type=int, required=True, help="size of F")
    p.add_argument("--x", default="0-3")
    p.set_defaults(func=cmd_induce_check)

    p = sub.add_parser("j-vanish", parents=[common, poset], help="dim J of the induced module at F")
    p.add_argument("--target", type=int, required=True, help="size of F")
    p.add_argument("--xmax", type=int, default=4)
    p.set_defaults(func=cmd_j_vanish)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
