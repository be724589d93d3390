"""Command-line entry point.

Subcommands pipeline an input document through parsing, hypothesis checks,
the multiplicity solver, and the structure theorems; oracle-verification
subcommands re-derive the closed forms by brute force.  Reports go to
standard output (text or a canonical JSON document); diagnostics go to
standard error.  Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import group_algebra, groups, hypotheses, iwasawa, lmfdb, structure
from .rank_data import (
    EAlphaTable,
    InconsistentRankData,
    InputError,
    ProblemInstance,
    RankTable,
    growth_summary,
    parse_input,
    solve_e_alpha,
    synthesize_rank_table,
)


class ValidationFailure(Exception):
    """Raised by handlers to exit with code 1 and a diagnostic."""


def _emit(args, report: dict, text_lines) -> None:
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _load_instance(args) -> ProblemInstance:
    try:
        document = Path(args.input).read_text()
    except OSError as exc:
        raise ValidationFailure(f"cannot read {args.input}: {exc}") from None
    instance = parse_input(
        document, allow_repeated_primes=args.allow_repeated_primes
    )
    if args.max_level is not None:
        if args.max_level > instance.max_level:
            raise ValidationFailure(
                f"--max-level {args.max_level} exceeds the table's "
                f"{instance.max_level}"
            )
        table = RankTable(
            instance.group,
            args.max_level,
            {a: row[: args.max_level + 1] for a, row in instance.table.ranks.items()},
        )
        instance = ProblemInstance(
            instance.p,
            instance.group,
            instance.conductor,
            instance.curve,
            table,
            instance.assume_fine_sha_finite,
        )
    return instance


def _hypothesis_block(instance: ProblemInstance) -> dict:
    star = hypotheses.star_check(instance.group, instance.p)
    fields = hypotheses.field_hypotheses(instance.field, instance.p)
    block = {
        "star": star.to_dict(),
        "field": fields.to_dict(),
        "reduction": None,
    }
    if instance.curve is not None:
        block["reduction"] = {
            "label": instance.curve.label,
            "ap": instance.curve.ap_at(instance.p),
            "verdict": hypotheses.reduction_type(
                instance.curve.ap_at(instance.p), instance.p
            ),
        }
    return block


def _assumption_block(instance: ProblemInstance, signed: bool) -> dict:
    assumed = ["fine Tate-Shafarevich groups are finite at every level"]
    if signed:
        assumed.append("signed Tate-Shafarevich groups are finite at every level")
    return {
        "assume_fine_sha_finite": instance.assume_fine_sha_finite,
        "unverifiable": assumed,
        "note": "conclusions are conditional on the assumptions listed here",
    }


def _require_theorem_a(block: dict) -> None:
    if not block["star"]["passed"]:
        raise ValidationFailure(
            "the working prime splits in the cyclotomic field of the group "
            "exponent; the structure formulas do not apply"
        )
    fields = {c["name"]: c for c in block["field"]["checks"]}
    if not fields["disjoint_from_cyclotomic_tower"]["passed"]:
        raise ValidationFailure(
            "base field meets the cyclotomic tower of the rationals "
            "(conductor divisible by p^2)"
        )


def _require_theorem_b(block: dict) -> None:
    _require_theorem_a(block)
    fields = {c["name"]: c for c in block["field"]["checks"]}
    if not fields["unramified"]["passed"]:
        raise ValidationFailure("signed structure requires p unramified in the base field")
    red = block["reduction"]
    if red is None:
        raise ValidationFailure(
            "pm requires supersingular reduction (no curve data supplied)"
        )
    if red["verdict"] != hypotheses.SUPERSINGULAR:
        raise ValidationFailure("pm requires supersingular reduction")


def _solve(instance: ProblemInstance) -> EAlphaTable:
    try:
        return solve_e_alpha(instance.table, instance.p)
    except InconsistentRankData as exc:
        raise ValidationFailure(f"inconsistent rank table: {exc}") from None


def _ea_block(ea: EAlphaTable) -> dict:
    return ea.to_dict()


# -- subcommand handlers ------------------------------------------------------


def cmd_reps(args) -> int:
    instance = _load_instance(args)
    g = instance.group
    rows = [
        {"alpha": list(a), "dimension": groups.irrep_dim(g, a)}
        for a in groups.index_tuples(g)
    ]
    report = {
        "group": [list(f) for f in g.factors],
        "order": g.order,
        "exponent": g.exponent,
        "irreps": rows,
        "dimension_sum": sum(r["dimension"] for r in rows),
    }
    lines = [f"group of order {g.order}, exponent {g.exponent}"]
    lines += [
        f"  alpha={tuple(r['alpha'])}  dim={r['dimension']}" for r in rows
    ]
    lines.append(f"dimension sum = {report['dimension_sum']} (order {g.order})")
    _emit(args, report, lines)
    return 0


def cmd_check(args) -> int:
    instance = _load_instance(args)
    block = _hypothesis_block(instance)
    report = {
        "instance": instance.to_dict(),
        "hypotheses": block,
        "assumptions": _assumption_block(instance, signed=False),
    }
    lines = [
        f"p = {instance.p}, conductor = {instance.conductor}",
        f"star condition: {'pass' if block['star']['passed'] else 'FAIL'} "
        f"(m' = {block['star']['m_prime']}, order {block['star']['order']}, "
        f"totient {block['star']['totient']})",
    ]
    for check in block["field"]["checks"]:
        lines.append(f"{check['name']}: {'pass' if check['passed'] else 'FAIL'}")
    if block["reduction"]:
        lines.append(
            f"reduction at {instance.p}: {block['reduction']['verdict']} "
            f"(a_p = {block['reduction']['ap']})"
        )
    _emit(args, report, lines)
    ok = block["star"]["passed"] and all(
        c["passed"] for c in block["field"]["checks"]
    )
    return 0 if ok else 1


def cmd_fine(args) -> int:
    instance = _load_instance(args)
    block = _hypothesis_block(instance)
    _require_theorem_a(block)
    ea = _solve(instance)
    gs = growth_summary(ea, instance.p)
    fine = structure.fine_mw_structure(gs)
    report = {
        "instance": instance.to_dict(),
        "hypotheses": block,
        "assumptions": _assumption_block(instance, signed=False),
        "growth": gs.to_dict(),
        "e_alpha": _ea_block(ea),
        "fine": fine.to_dict(),
    }
    lines = [
        f"e     = {list(gs.e)}",
        f"theta = {list(gs.theta)}",
        f"s     = {list(gs.s)}",
        f"fine characteristic ideal: {fine.char_ideal.to_text()}",
        f"lambda = {fine.to_dict()['lambda']}, mu = {fine.to_dict()['mu']}",
    ]
    _emit(args, report, lines)
    return 0


def cmd_pm(args) -> int:
    instance = _load_instance(args)
    block = _hypothesis_block(instance)
    _require_theorem_b(block)
    ea = _solve(instance)
    gs = growth_summary(ea, instance.p)
    pm = structure.pm_mw_structure(gs)
    report = {
        "instance": instance.to_dict(),
        "hypotheses": block,
        "assumptions": _assumption_block(instance, signed=True),
        "growth": gs.to_dict(),
        "pm": pm.to_dict(),
        "kp_target": structure.kp_rhs(instance.p, gs.e).to_text(),
    }
    lines = [
        f"e     = {list(gs.e)}",
        f"theta = {list(gs.theta)}",
        f"r+    = {list(pm.r_plus)}",
        f"r-    = {list(pm.r_minus)}",
        f"char+ = {pm.char_plus.to_text()}",
        f"char- = {pm.char_minus.to_text()}",
        f"gcd   = {pm.gcd.to_text()}",
    ]
    _emit(args, report, lines)
    return 0


def cmd_equivariant(args) -> int:
    instance = _load_instance(args)
    block = _hypothesis_block(instance)
    ea = _solve(instance)
    if args.sign is None:
        _require_theorem_a(block)
        dec = structure.equivariant_fine(ea)
        kind = "fine"
    else:
        _require_theorem_b(block)
        dec = structure.equivariant_pm(ea, args.sign)
        kind = f"signed {args.sign}"
    report = {
        "instance": instance.to_dict(),
        "hypotheses": block,
        "assumptions": _assumption_block(instance, signed=args.sign is not None),
        "kind": kind,
        "decomposition": dec.to_dict(),
        "contraction": {str(k): v for k, v in sorted(dec.contraction().items())},
    }
    lines = [f"{kind} equivariant summands:"]
    if dec.summands:
        lines += [
            f"  alpha={a} level={k} multiplicity={m}" for a, k, m in dec.summands
        ]
    else:
        lines.append("  (none)")
    _emit(args, report, lines)
    return 0


def _growth_targets(args, maker) -> int:
    instance = _load_instance(args)
    ea = _solve(instance)
    gs = growth_summary(ea, instance.p)
    ideal = maker(instance.p, gs.e)
    report = {
        "instance": instance.to_dict(),
        "e": list(gs.e),
        "ideal": ideal.to_text(),
    }
    _emit(args, report, [f"e = {list(gs.e)}", f"target ideal: {ideal.to_text()}"])
    return 0


def cmd_greenberg(args) -> int:
    return _growth_targets(args, structure.greenberg_rhs)


def cmd_kp(args) -> int:
    return _growth_targets(args, structure.kp_rhs)


def cmd_selmer_validate(args) -> int:
    try:
        document = Path(args.input).read_text()
    except OSError as exc:
        raise ValidationFailure(f"cannot read {args.input}: {exc}") from None
    shape = structure.parse_shape(document)
    gs = None
    if args.growth:
        growth_instance = parse_input(
            Path(args.growth).read_text(),
            allow_repeated_primes=args.allow_repeated_primes,
        )
        ea = solve_e_alpha(growth_instance.table, growth_instance.p)
        gs = growth_summary(ea, growth_instance.p)
    result = structure.validate_selmer_shape(shape, gs)
    report = result.to_dict()
    lines = [f"shape ({shape.reduction}): {'ACCEPT' if result.accepted else 'REJECT'}"]
    for v in result.verdicts:
        lines.append(f"  {v.name}: {'pass' if v.passed else 'FAIL'} ({v.witness})")
    lines.append(f"  derived sha cyclotomic part: {list(result.sha_shape.cyclo)}")
    lines.append(f"  cyclotomic part cyclic: {result.cyclic}")
    _emit(args, report, lines)
    return 0 if result.accepted else 1


def cmd_fetch(args) -> int:
    cfg = lmfdb.ClientConfig(
        cache_dir=Path(args.cache_dir) if args.cache_dir else None,
        offline=args.offline,
    )
    try:
        curve = lmfdb.fetch_curve(cfg, args.label)
    except ValueError as exc:
        raise ValidationFailure(str(exc)) from None
    except lmfdb.LmfdbError as exc:
        raise ValidationFailure(str(exc)) from None
    report = lmfdb.curve_record(curve)
    report["source"] = curve.source
    lines = [
        f"{curve.label}: conductor {curve.conductor}, rank {curve.rank}, "
        f"a_p for {len(curve.ap)} primes ({curve.source})"
    ]
    _emit(args, report, lines)
    return 0


def cmd_verify_oracles(args) -> int:
    failures = []

    def suite(name, fn):
        try:
            detail = fn()
        except Exception as exc:  # noqa: BLE001 - report and continue
            failures.append(name)
            print(f"FAIL {name}: {exc}")
            return
        print(f"ok {name}: {detail}")

    suite("cyclotomic-products", _oracle_cyclotomic)
    suite("bezout-certificates", _oracle_bezout)
    suite("fixed-subspace-agreement", lambda: _oracle_fixed(args.max_order))
    suite("regular-decomposition", lambda: _oracle_regular(min(args.max_order, 30)))
    suite("star-classification", _oracle_star)
    suite("rank-roundtrip", _oracle_roundtrip)
    if failures:
        print(f"{len(failures)} oracle suite(s) failed", file=sys.stderr)
        return 1
    return 0


def _oracle_cyclotomic() -> str:
    from .polyarith import IntPoly, divide_exact

    checks = 0
    for p in (3, 5, 7):
        for n in range(1, 4):
            omega_n = iwasawa.omega_poly(p, n)
            omega_prev = iwasawa.omega_poly(p, n - 1)
            assert divide_exact(omega_n, omega_prev) == iwasawa.cyclotomic_poly(p, n)
            prod = IntPoly([1])
            for i in range(n + 1):
                prod = prod * iwasawa.cyclotomic_poly(p, i)
            assert prod == omega_n
            checks += 1
    return f"{checks} product/division identities"


def _oracle_bezout() -> str:
    checks = 0
    for p in (3, 5):
        for n in (1, 2, 3):
            iwasawa.bezout_p_power(p, n)  # re-expands internally
            checks += 1
    return f"{checks} certificates re-expanded"


def _iter_distinct_support_groups(max_order: int):
    from .numbertheory import factorize

    for m in range(1, max_order + 1):
        yield groups.FiniteAbelianGroup(factorize(m))


def _oracle_fixed(max_order: int) -> str:
    pairs = 0
    for g in _iter_distinct_support_groups(max_order):
        model = group_algebra.build_group_algebra_model(g)
        tuples = groups.index_tuples(g)
        for beta in tuples:
            for alpha in tuples:
                want = groups.fixed_subspace_dim(g, beta, alpha)
                got = group_algebra.oracle_fixed_subspace_dim(model, beta, alpha)
                assert want == got, (g, beta, alpha, want, got)
                pairs += 1
        for alpha in tuples:
            total = sum(
                groups.irrep_dim(g, beta)
                for beta in tuples
                if groups.tuple_leq(beta, alpha)
            )
            assert total == groups.fixed_field_degree(g, alpha)
    return f"{pairs} (beta, alpha) pairs agree up to order {max_order}"


def _oracle_regular(max_order: int) -> str:
    checked = 0
    for g in _iter_distinct_support_groups(max_order):
        report = group_algebra.verify_regular_decomposition(g)
        assert report.dimensions_match and report.all_irreducible, g
        checked += 1
    repeated = groups.FiniteAbelianGroup(
        [(3, 1), (3, 1)], allow_repeated_primes=True
    )
    report = group_algebra.verify_regular_decomposition(repeated)
    assert report.dimensions_match
    assert (1, 1) in report.reducible
    return f"{checked} groups irreducible; repeated-prime case flagged reducible"


def _oracle_star() -> str:
    from .numbertheory import euler_phi, factorize, naive_multiplicative_order

    count = 0
    for p in (3, 5, 7, 11, 13):
        for m in range(1, 501):
            m_prime = m
            while m_prime % p == 0:
                m_prime //= p
            if m_prime <= 2:
                expected = True
            else:
                expected = naive_multiplicative_order(p, m_prime) == euler_phi(m_prime)
            g = groups.FiniteAbelianGroup(factorize(m))
            got = hypotheses.star_check(g, p).passed
            assert got == expected, (m, p)
            count += 1
    return f"{count} (m, p) classifications agree with brute force"


def _oracle_roundtrip() -> str:
    import random

    rng = random.Random(7)
    count = 0
    for _ in range(50):
        g, ea, p = _random_ea(rng)
        table = synthesize_rank_table(ea, p)
        assert solve_e_alpha(table, p).values == ea.values
        count += 1
    return f"{count} synthesize/solve round trips exact"


def _random_ea(rng):
    primes = [2, 3, 5, 7, 11, 13]
    while True:
        factors = []
        size = 1
        for _ in range(rng.randint(0, 3)):
            q = rng.choice([q for q in primes if q not in [f[0] for f in factors]])
            n = rng.randint(1, 3)
            if size * (n + 1) > 8:
                continue
            factors.append((q, n))
            size *= n + 1
        g = groups.FiniteAbelianGroup(factors)
        break
    p = rng.choice([3, 5, 7])
    max_level = rng.randint(0, 4)
    values = {}
    for alpha in groups.index_tuples(g):
        for k in range(max_level + 1):
            e = rng.randint(0, 3)
            if e:
                values[(alpha, k)] = e
    return g, EAlphaTable(g, max_level, values), p


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finemw",
        description=(
            "Exact structure invariants of fine and signed Mordell-Weil "
            "growth over cyclotomic towers"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="problem document (JSON)")
        p.add_argument(
            "--format", choices=("text", "json"), default="text",
            help="output format (default text)",
        )
        p.add_argument("--max-level", type=int, default=None)
        p.add_argument(
            "--allow-repeated-primes", action="store_true",
            help="accept groups with repeated factor primes",
        )
        return p

    common(sub.add_parser("reps", help="enumerate index tuples and dimensions"))
    common(sub.add_parser("check", help="hypothesis report"))
    common(sub.add_parser("fine", help="fine structure ideal"))
    common(sub.add_parser("pm", help="signed structure ideals"))
    eq = common(sub.add_parser("equivariant", help="group-equivariant summands"))
    eq.add_argument("--sign", choices=("+", "-"), default=None)
    common(sub.add_parser("greenberg", help="rank-growth target ideal"))
    common(sub.add_parser("kp", help="signed rank-growth target ideal"))
    sv = common(sub.add_parser("selmer-validate", help="validate a Selmer shape"))
    sv.add_argument("--growth", default=None, help="problem document to cross-check")
    vo = sub.add_parser("verify-oracles", help="run the brute-force oracle suites")
    vo.add_argument("--max-order", type=int, default=60)
    vo.add_argument("--format", choices=("text", "json"), default="text")
    fe = sub.add_parser("fetch", help="fetch curve data by label")
    fe.add_argument("label")
    fe.add_argument("--format", choices=("text", "json"), default="text")
    fe.add_argument("--offline", action="store_true")
    fe.add_argument("--cache-dir", default=None)

    sub.choices["reps"].set_defaults(func=cmd_reps)
    sub.choices["check"].set_defaults(func=cmd_check)
    sub.choices["fine"].set_defaults(func=cmd_fine)
    sub.choices["pm"].set_defaults(func=cmd_pm)
    sub.choices["equivariant"].set_defaults(func=cmd_equivariant)
    sub.choices["greenberg"].set_defaults(func=cmd_greenberg)
    sub.choices["kp"].set_defaults(func=cmd_kp)
    sub.choices["selmer-validate"].set_defaults(func=cmd_selmer_validate)
    sub.choices["verify-oracles"].set_defaults(func=cmd_verify_oracles)
    sub.choices["fetch"].set_defaults(func=cmd_fetch)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except ValidationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputError, InconsistentRankData, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except lmfdb.LmfdbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
