"""Command-line front end.

Subcommands cover table validation, valuation-order enumeration, congruence
classification, reduction, quasiintegral closure, contraction, constraint
admissibility, the extension-of-valuations pipeline, the bundled corpus
listing, and a deterministic whole-suite verification report.  Exit codes:
0 success, 1 verification failure (a counterexample is printed), 2 input
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import core, integrality, valuation_order
from . import finite_semiring as fs
from . import frac_ideal as fi
from .core import SemiringError

OK, FAILED, BAD_INPUT = 0, 1, 2


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _report(command: str, source: str, result, witnesses=None,
            counterexample=None) -> dict:
    payload = {"command": command, "input": source, "result": result,
               "witnesses": witnesses or []}
    if counterexample is not None:
        payload["counterexample"] = counterexample
    return payload


def _load(path_arg: str) -> fs.FiniteSemiring:
    path = Path(path_arg)
    if path.exists():
        return fs.load_file(path, check=False)
    name = path_arg if path_arg.endswith(".sr") else path_arg + ".sr"
    if name in fs.corpus_names():
        return fs.load_corpus(name, check=False)
    raise SemiringError(f"no such semiring file or corpus entry: {path_arg}")


def _parse_subset(r: fs.FiniteSemiring, spec: str) -> list[int]:
    tokens = [t for chunk in spec.split(",") for t in chunk.split()] if spec else []
    return [r.index(t) for t in tokens]


def cmd_validate(args) -> int:
    r = _load(args.table)
    violations = fs.validate(r)
    if violations:
        first = violations[0]
        if args.json:
            _emit_json(_report("validate", args.table, "invalid",
                               counterexample=first.describe()))
        else:
            print(f"invalid: {first.describe()}")
            for extra in violations[1:5]:
                print(f"         {extra.describe()}")
        return FAILED
    flags = []
    if core.is_simple(r):
        flags.append("simple")
    if core.is_unitgenerated(r):
        flags.append("unitgenerated")
    summary = f"ok: idempotent semiring, {r.size} elements"
    if flags:
        summary += ", " + ", ".join(flags)
    if args.json:
        _emit_json(_report("validate", args.table, summary, witnesses=flags))
    else:
        print(summary)
    return OK


def cmd_orders(args) -> int:
    r = _load(args.table)
    orders = valuation_order.enumerate_valuation_orders(r)
    nondegenerate = [rel for rel in orders
                     if not valuation_order.is_degenerate(r, rel)]
    shown = orders if args.degenerate else nondegenerate
    if args.json:
        body = []
        for rel in shown:
            entry = {"pairs": sorted([r.names[x], r.names[y]]
                                     for x, y in sorted(rel.pairs)),
                     "degenerate": valuation_order.is_degenerate(r, rel)}
            if not entry["degenerate"]:
                hom = valuation_order.hom_from_order(r, rel)
                entry["values"] = {r.names[x]: hom.target.render(hom(x))
                                   for x in r.elements()}
            body.append(entry)
        _emit_json(_report("orders", args.table,
                           {"total": len(orders),
                            "nondegenerate": len(nondegenerate)},
                           witnesses=body))
        return OK
    print(f"{len(orders)} valuation orders ({len(nondegenerate)} nondegenerate)")
    for k, rel in enumerate(shown):
        tag = " [degenerate]" if valuation_order.is_degenerate(r, rel) else ""
        print(f"-- order {k}{tag}")
        print(rel.render(r))
        if not valuation_order.is_degenerate(r, rel):
            hom = valuation_order.hom_from_order(r, rel)
            values = ", ".join(f"{r.names[x]}->{hom.target.render(hom(x))}"
                               for x in r.elements())
            print(f"   quotient semifield values: {values}")
    return OK


def cmd_congruences(args) -> int:
    r = _load(args.table)
    congs = fs.congruences(r)
    rows = []
    for c in congs:
        prime = fs.is_prime(r, c)
        qc = fs.is_qc(r, c)
        radical = fs.radical_test(r, c)
        if args.prime and not prime:
            continue
        if args.qc and not qc:
            continue
        if args.radical and not radical:
            continue
        rows.append((c, prime, qc, radical))
    if args.json:
        body = [{"classes": [[r.names[x] for x in cls] for cls in c.classes()],
                 "prime": prime, "qc": qc, "radical": radical}
                for c, prime, qc, radical in rows]
        _emit_json(_report("congruences", args.table, len(rows), witnesses=body))
        return OK
    print(f"{len(rows)} congruences")
    for c, prime, qc, radical in rows:
        tags = [t for t, on in (("prime", prime), ("qc", qc), ("radical", radical)) if on]
        print(f"  {c.render(r)}" + (f"   [{', '.join(tags)}]" if tags else ""))
    return OK


def cmd_reduce(args) -> int:
    r = _load(args.table)
    red = fs.reduction(r)
    classes = [[r.names[x] for x in cls] for cls in red.congruence.classes()]
    if args.json:
        payload = _report("reduce", args.table,
                          {"size": red.semiring.size, "degenerate": red.degenerate},
                          witnesses=classes)
        if red.warning:
            payload["warning"] = red.warning
        _emit_json(payload)
        return OK
    if red.warning:
        print(f"warning: {red.warning}")
    print(f"reduction has {red.semiring.size} elements")
    print("classes: " + " ".join("{" + ",".join(cls) + "}" for cls in classes))
    print(fs.dump_table(red.semiring), end="")
    return OK


def _subring(r: fs.FiniteSemiring, spec: str) -> list[int]:
    seed = set(_parse_subset(r, spec)) | {r.zero, r.one}
    current = core.saturated_closure(r, seed)
    while True:
        extra = {r.mul(x, y) for x in current for y in current} - set(current)
        if not extra:
            break
        current = core.saturated_closure(r, set(current) | extra)
    return sorted(current)


def cmd_closure(args) -> int:
    r = _load(args.table)
    scalars = _subring(r, args.sub)
    closure = sorted(integrality.quasiintegral_closure(r, scalars))
    witnesses = []
    con = integrality.contract(r, scalars)
    for x in closure:
        _, cid = integrality.is_quasiintegral(r, scalars, x)
        witnesses.append({"element": r.names[x],
                          "witness": con.render_class(cid)})
    if args.json:
        _emit_json(_report("closure", args.table,
                           {"subring": [r.names[x] for x in scalars],
                            "closure": [r.names[x] for x in closure]},
                           witnesses=witnesses))
        return OK
    print("subring: " + " ".join(r.names[x] for x in scalars))
    print("quasiintegral closure: " + " ".join(r.names[x] for x in closure))
    for w in witnesses:
        print(f"  {w['element']}: witness class {w['witness']}")
    return OK


def cmd_contract(args) -> int:
    r = _load(args.table)
    scalars = _subring(r, args.sub)
    con = integrality.contract(r, scalars)
    classes = [[r.names[x] for x in cls] for cls in con.classes]
    if args.json:
        _emit_json(_report("contract", args.table,
                           {"subring": [r.names[x] for x in scalars],
                            "classes": classes}))
        return OK
    print("subring: " + " ".join(r.names[x] for x in scalars))
    print("contraction classes: " + " ".join("{" + ",".join(c) + "}" for c in classes))
    return OK


def cmd_admissible(args) -> int:
    r = _load(args.table)
    constraints = []
    for token in args.pairs.split(","):
        token = token.strip()
        if not token:
            continue
        if ">" not in token:
            raise SemiringError(f"constraint {token!r} is not of the form x>y")
        left, right = token.split(">", 1)
        constraints.append((r.index(left.strip()), r.index(right.strip())))
    ok, witness = valuation_order.is_admissible(r, constraints)
    if args.json:
        body = []
        if ok:
            body = [{r.names[x]: witness.target.render(witness(x))
                     for x in r.elements()}]
        _emit_json(_report("admissible", args.table, ok, witnesses=body))
        return OK if ok else FAILED
    if ok:
        values = ", ".join(f"{r.names[x]}->{witness.target.render(witness(x))}"
                           for x in r.elements())
        print(f"admissible; witness values: {values}")
        return OK
    print("not admissible: no valuation order avoids all constraints")
    return FAILED


def cmd_extend(args) -> int:
    try:
        report = fi.extend_valuation(args.p, args.d, seed=args.seed)
    except fi.VerificationError as exc:
        if args.json:
            _emit_json(_report("extend", f"p={args.p} d={args.d}", "FAIL",
                               counterexample=str(exc)))
        else:
            print(f"verification FAILED: {exc}")
            if exc.counterexample is not None:
                print(f"counterexample: {exc.counterexample}")
        return FAILED
    if args.json:
        _emit_json(_report("extend", f"p={args.p} d={args.d}",
                           report.as_dict()))
        return OK
    print(f"extensions of the {args.p}-adic valuation to sqrt({args.d}):")
    for ext in report.extensions:
        print(f"  {ext.kind}: e={ext.e} f={ext.f} pi={ext.pi.render()} "
              f"value-group scale {ext.value_group_scale}")
    print("verification PASS "
          f"(battery of {report.checks['battery_size']} elements)")
    return OK


def cmd_corpus(args) -> int:
    rows = []
    for name in fs.corpus_names():
        r = fs.load_corpus(name)
        rows.append({"file": name, "name": r.name, "elements": r.size})
    if args.json:
        _emit_json(_report("corpus", "bundled", rows))
        return OK
    for row in rows:
        print(f"{row['file']:<12} {row['name']:<8} {row['elements']} elements")
    return OK


def build_suite_report(seed: int = 0, window: int = 8) -> dict:
    """Deterministic verification report over the bundled instances.

    Everything under "checks" must be true; "facts" is descriptive.
    """
    from . import ordered_group as og
    from . import valuation as val
    facts: dict = {}
    checks: dict = {}

    for name in fs.corpus_names():
        r = fs.load_corpus(name)
        key = r.name
        facts[f"{key}.simple"] = core.is_simple(r)
        facts[f"{key}.unitgenerated"] = core.is_unitgenerated(r)
        facts[f"{key}.reduced"] = fs.is_reduced(r)
        checks[f"{key}.valid"] = not fs.validate(r)
        if r.size <= fs.CONGRUENCE_GUARD:
            congs = fs.congruences(r)
            facts[f"{key}.congruences"] = len(congs)
            checks[f"{key}.qc_implies_radical"] = all(
                fs.radical_test(r, c) for c in congs if fs.is_qc(r, c))
            checks[f"{key}.domain_iff_ordered_cancellative"] = (
                fs.is_domain(r) == (fs.is_totally_ordered(r) and fs.is_cancellative(r)))
        if r.size <= valuation_order.ORDER_GUARD:
            orders = valuation_order.enumerate_valuation_orders(r)
            facts[f"{key}.valuation_orders"] = len(orders)
            facts[f"{key}.nondegenerate_orders"] = len(
                [rel for rel in orders if not valuation_order.is_degenerate(r, rel)])
        if core.is_simple(r):
            checks[f"{key}.collapse_criterion"] = fs.check_reduction_collapse(r)
            checks[f"{key}.hom_bound_criterion"] = fs.check_hom_bound_criterion(r)

    zmax = core.GammaMaxSemiring(og.int_power(1))
    ball = val.unit_ball(zmax)
    checks["zmax.unit_ball_is_valuation_subsemiring"] = \
        val.is_valuation_subsemiring(zmax, ball, window)
    checks["zmax.downset_roundtrip"] = val.thm_roundtrip_ok(
        val.identity_valuation(zmax),
        val.representable_downsets(zmax, window), window)
    checks["zmax.ideals_chain"] = val.ideals_form_chain(zmax, ball, window)
    checks["zmax.closure_is_unit_ball"] = \
        integrality.gamma_closure_is_unit_ball(zmax, window)
    for fact, value in integrality.check_contraction_facts(
            window=min(window, 6)).items():
        checks[f"contraction.{fact}"] = value

    for p, d in ((5, -1), (2, -1), (3, -1)):
        ext_report = fi.extend_valuation(p, d, seed=seed)
        facts[f"extend.p{p}_d{d}"] = ext_report.as_dict()
        checks[f"extend.p{p}_d{d}.verified"] = True
        checks[f"invertibility.p{p}_d{d}"] = fi.check_principal_invertibility(
            p, d, seed=seed)

    bz = fs.load_corpus("b_z2")
    b_in_bz = [bz.zero, bz.one]
    checks["bz2.extensible_over_b"] = integrality.is_extensible(bz, b_in_bz)
    checks["bz2.hom_criterion"] = integrality.check_quasiintegral_hom_criterion(
        bz, b_in_bz)

    charpoly = fi.check_principal_integrality(5, -1, fi.QF.of(-1, 1, 1))
    checks["charpoly.one_plus_i_quasiintegral"] = charpoly.quasiintegral
    checks["charpoly.one_plus_i_bound"] = charpoly.relation_checked

    return {"seed": seed, "window": window, "facts": facts, "checks": checks}


def cmd_suite(args) -> int:
    report = build_suite_report(seed=args.seed, window=args.window)
    failures = [key for key, value in report["checks"].items() if value is not True]
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for key, value in sorted(report["checks"].items()):
            print(f"{'PASS' if value is True else 'FAIL'} {key}")
        print("suite PASS" if not failures else f"suite FAILED ({len(failures)})")
    return OK if not failures else FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idemval",
        description="exact computation in idempotent semirings and their valuations")
    sub = parser.add_subparsers(dest="command", required=True)

    def table_command(name, func, help_text):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("table", help="path to a .sr file or a corpus name")
        cmd.add_argument("--json", action="store_true")
        cmd.set_defaults(func=func)
        return cmd

    table_command("validate", cmd_validate, "check the semiring axioms")
    orders = table_command("orders", cmd_orders, "enumerate valuation orders")
    orders.add_argument("--degenerate", action="store_true",
                        help="also print degenerate orders")
    congs = table_command("congruences", cmd_congruences, "list congruences")
    congs.add_argument("--prime", action="store_true")
    congs.add_argument("--qc", action="store_true")
    congs.add_argument("--radical", action="store_true")
    table_command("reduce", cmd_reduce, "quotient by the intersection of primes")
    closure = table_command("closure", cmd_closure, "quasiintegral closure")
    closure.add_argument("--sub", required=True,
                         help="comma separated elements generating the subring")
    contract = table_command("contract", cmd_contract, "contraction classes")
    contract.add_argument("--sub", required=True,
                          help="comma separated elements generating the subring")
    adm = table_command("admissible", cmd_admissible,
                        "decide a strict constraint set")
    adm.add_argument("--pairs", required=True,
                     help='constraints like "x>y,z>w"')

    ext = sub.add_parser("extend", help="extend the p-adic valuation")
    ext.add_argument("--p", type=int, required=True)
    ext.add_argument("--d", type=int, required=True)
    ext.add_argument("--seed", type=int, default=0)
    ext.add_argument("--json", action="store_true")
    ext.set_defaults(func=cmd_extend)

    corpus = sub.add_parser("corpus", help="list the bundled tables")
    corpus.add_argument("--json", action="store_true")
    corpus.set_defaults(func=cmd_corpus)

    suite = sub.add_parser("suite", help="run the verification suite")
    suite.add_argument("--seed", type=int, default=0)
    suite.add_argument("--window", type=int, default=8)
    suite.add_argument("--json", action="store_true")
    suite.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SemiringError, fi.UnsupportedInstanceError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
