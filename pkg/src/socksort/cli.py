"""Command line interface.

Every subcommand accepts --format text|json-lines.  Exit codes: 0 for a
completed command (membership verdicts of both kinds count as success),
1 when a verification or agreement check fails, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from math import comb

from . import core, image_membership, multipattern, preimage_fertility, stack_machine
from .core import format_sequence, parse_sequence, standardize
from .patterns import Mode, Pattern, PatternSet, parse_patterns

MAPS: dict[str, PatternSet] = {
    "aba": preimage_fertility.CLASSICAL_ABA,
    "cons-aba": preimage_fertility.CONS_ABA,
}

DIVIDER = "‖"  # double vertical bar

# Mixed pattern sets exercised by the unsortability suite: in each, one
# shape revisits its first sock after an excursion and the other does not.
UNSORTABLE_SETS: tuple[tuple[str, PatternSet], ...] = (
    (
        "abba,abab",
        frozenset({Pattern((0, 1, 1, 0), Mode.CLASSICAL), Pattern((0, 1, 0, 1), Mode.CLASSICAL)}),
    ),
    (
        "abca,abac",
        frozenset({Pattern((0, 1, 2, 0), Mode.CLASSICAL), Pattern((0, 1, 0, 2), Mode.CLASSICAL)}),
    ),
)


class Emitter:
    def __init__(self, fmt: str) -> None:
        self.json = fmt == "json-lines"

    def line(self, text: str, **record) -> None:
        if self.json:
            print(json.dumps(record, sort_keys=True))
        else:
            print(text)


def _parse_seq_arg(text: str) -> core.SockSeq:
    try:
        return parse_sequence(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_pats_arg(text: str) -> PatternSet:
    try:
        return parse_patterns(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# rendering


def render_dividers(seq: core.SockSeq, dividers, mark: int | None = None) -> str:
    """Sequence with divider bars, optionally highlighting one position
    (uppercase in letter form, brackets in integer form)."""
    div = set(dividers)
    letters = all(s < 26 for s in seq)
    out: list[str] = []
    for i, sock in enumerate(seq):
        if i > 0:
            out.append(DIVIDER if i in div else ("" if letters else ","))
        tok = core._LETTERS[sock] if letters else str(sock)
        if mark == i:
            tok = tok.upper() if letters else f"[{tok}]"
        out.append(tok)
    return "".join(out)


def _gamma_rows(trace: image_membership.GammaTrace):
    """Change-point rows: the start, every divider crossing, and every run
    that scores or has length >= 2; each rendered after its own edits."""
    layout = sorted(trace.initial_dividers)
    rows: list[tuple[int, int, tuple[int, ...]]] = [(0, 0, tuple(layout))]
    pending: tuple[int, int] | None = None

    def flush() -> None:
        nonlocal pending
        if pending is not None:
            rows.append((pending[0], pending[1], tuple(layout)))
            pending = None

    for st in trace.steps:
        if st.kind == "divider":
            flush()
            rows.append((st.position, st.gamma_after, tuple(layout)))
        elif st.kind == "run":
            flush()
            if (st.run_length or 0) >= 2 or st.score != 0:
                pending = (st.position, st.gamma_after)
        elif st.kind == "remove":
            for d in st.dividers:
                layout.remove(d)
        elif st.kind == "insert":
            layout.append(st.dividers[0])
            layout.sort()
    flush()
    return rows


# ---------------------------------------------------------------------------
# subcommands


def cmd_sort(args, emit: Emitter) -> int:
    seq = _parse_seq_arg(args.sequence)
    pats = _parse_pats_arg(args.pattern)
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    current = seq
    for i in range(1, args.k + 1):
        if args.trace:
            trace = stack_machine.phi_trace(current, pats)
            for ev in trace.events:
                side = "input" if ev.kind == "push" else "output"
                emit.line(
                    f"{ev.kind} {format_sequence((ev.sock,))} ({side} {ev.index})",
                    record="event", kind=ev.kind, sock=ev.sock, index=ev.index,
                    pass_index=i,
                )
            current = trace.output
        else:
            current = stack_machine.phi(current, pats)
        if args.k > 1:
            emit.line(f"pass {i}: {format_sequence(current)}", record="pass",
                      index=i, sequence=format_sequence(current))
        if core.is_sorted(current) and i < args.k:
            emit.line(f"sorted after {i} passes", record="sorted-early", passes=i)
            break
    emit.line(
        f"output: {format_sequence(current)}",
        record="output",
        sequence=format_sequence(current),
        sorted=core.is_sorted(current),
    )
    return 0


def cmd_image_check(args, emit: Emitter) -> int:
    seq = _parse_seq_arg(args.sequence)
    if args.map == "aba" and args.witness:
        raise UsageError("--witness applies to the cons-aba map only")
    if args.map == "cons-aba":
        res = image_membership.in_image_cons(seq)
        if args.trace:
            dec = image_membership.sandwich_decompose(seq)
            emit.line(
                f"extracted: {format_sequence(tuple(s for s, _ in dec.removed))}",
                record="extracted",
                socks=[s for s, _ in dec.removed],
                positions=[i for _, i in dec.removed],
            )
            emit.line(
                f"residual: {format_sequence(dec.residual)}",
                record="residual", sequence=format_sequence(dec.residual),
            )
        verdict = "MEMBER" if res.member else "NON-MEMBER"
        emit.line(f"verdict: {verdict}", record="verdict", member=res.member)
        if args.witness:
            witness = None if res.witness is None else format_sequence(res.witness)
            emit.line(f"witness: {witness or 'none'}", record="witness",
                      sequence=witness)
        return 0
    res = image_membership.in_image_aba(seq)
    trace = res.trace
    rendered = render_dividers(seq, trace.initial_dividers)
    emit.line(f"dividers: {rendered}", record="dividers",
              positions=list(trace.initial_dividers), rendered=rendered)
    if args.trace:
        for pos, gamma, layout in _gamma_rows(trace):
            row = render_dividers(seq, layout, mark=pos)
            emit.line(f"  {row}  gamma={gamma}", record="gamma-row",
                      position=pos, gamma=gamma, dividers=list(layout),
                      rendered=row)
    verdict = "MEMBER" if res.member else "NON-MEMBER"
    emit.line(f"verdict: {verdict} (gamma={trace.final_gamma})",
              record="verdict", member=res.member, gamma=trace.final_gamma)
    return 0


def cmd_preimages(args, emit: Emitter) -> int:
    seq = _parse_seq_arg(args.sequence)
    pats = MAPS[args.map]
    try:
        report = preimage_fertility.preimages_of(seq, pats, max_len=args.max_len)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for q in report.preimages:
        emit.line(f"preimage: {format_sequence(q)}", record="preimage",
                  sequence=format_sequence(q))
    emit.line(f"count: {report.count}", record="count",
              target=format_sequence(report.target), count=report.count)
    return 0


def cmd_fertility(args, emit: Emitter) -> int:
    pats = MAPS[args.map]
    try:
        witness = preimage_fertility.fertility_witness(args.m, args.n, pats)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.n <= preimage_fertility.DEFAULT_MAX_LEN:
        count = preimage_fertility.preimages_of(witness, pats).count
        ok = count == args.m
        emit.line(
            f"witness: {format_sequence(witness)} preimages={count} expected={args.m} "
            f"match={'yes' if ok else 'NO'}",
            record="fertility", witness=format_sequence(witness), count=count,
            expected=args.m, match=ok,
        )
        return 0 if ok else 1
    emit.line(f"witness: {format_sequence(witness)} (too long to count)",
              record="fertility", witness=format_sequence(witness), count=None,
              expected=args.m, match=None)
    return 0


def cmd_staircase(args, emit: Emitter) -> int:
    pats = MAPS[args.map]
    try:
        count = preimage_fertility.staircase_preimage_count(args.n, args.k, pats)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    expected = comb(args.k + args.n - 1, args.k - 1)
    ok = count == expected
    target = preimage_fertility.staircase_target(args.n, args.k)
    emit.line(
        f"target: {format_sequence(target)} preimages={count} "
        f"binomial=C({args.k + args.n - 1},{args.k - 1})={expected} "
        f"match={'yes' if ok else 'NO'}",
        record="staircase", target=format_sequence(target), count=count,
        expected=expected, match=ok,
    )
    return 0 if ok else 1


def cmd_count_1ss(args, emit: Emitter) -> int:
    try:
        table = multipattern.count_one_stack_sortable(args.n_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    all_ok = True
    for n in range(1, table.max_n + 1):
        row = table.by_distinct[n - 1]
        doubling = table.matches_doubling(n)
        shifted = table.row_matches_shifted_binomial(n)
        unshifted = table.row_matches_unshifted_binomial(n)
        all_ok = all_ok and doubling and shifted
        emit.line(
            f"n={n} total={table.totals[n - 1]} "
            f"pow2={'PASS' if doubling else 'FAIL'} "
            f"row={','.join(map(str, row))} "
            f"shifted_binomial={'PASS' if shifted else 'FAIL'} "
            f"unshifted_binomial={'PASS' if unshifted else 'FAIL'}",
            record="count", n=n, total=table.totals[n - 1], doubling=doubling,
            by_distinct=list(row), shifted_binomial=shifted,
            unshifted_binomial=unshifted,
        )
    for (aba_mode, aab_mode), counts in sorted(
        multipattern.mode_combination_survey(min(args.n_max, 7)).items()
    ):
        doubles = all(c == 2 ** i for i, c in enumerate(counts))
        emit.line(
            f"survey aba={aba_mode} aab={aab_mode} "
            f"totals={','.join(map(str, counts))} "
            f"doubling={'yes' if doubles else 'no'}",
            record="survey", aba=aba_mode, aab=aab_mode, totals=list(counts),
            doubling=doubles,
        )
    return 0 if all_ok else 1


def cmd_witness(args, emit: Emitter) -> int:
    pats = _parse_pats_arg(args.patterns)
    try:
        report = multipattern.unsortable_witness(pats, args.m, search_len=args.search_len)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    witness = None if report.witness is None else format_sequence(report.witness)
    emit.line(
        f"case: {report.case} witness: {witness or '-'} verdict: {report.verdict}",
        record="witness", case=report.case, witness=witness,
        verdict=report.verdict,
    )
    if report.witness is not None:
        current = report.witness
        for i in range(1, 4):
            current = stack_machine.phi(current, pats)
            emit.line(f"pass {i}: {format_sequence(current)}", record="pass",
                      index=i, sequence=format_sequence(current))
            if standardize(current) == standardize(report.witness):
                emit.line("cycle: output renames to the input", record="cycle",
                          after=i)
                break
            if core.is_sorted(current):
                break
    return 0 if report.verdict == "never-sorts" else 1


# ---------------------------------------------------------------------------
# verify


def _sweep(max_n: int):
    """All standardized sequences up to max_n with both one-pass outputs."""
    data: dict[int, list[tuple[core.SockSeq, core.SockSeq, core.SockSeq]]] = {}
    for n in range(max_n + 1):
        rows = []
        for q in core.enumerate_standardized(n):
            rows.append(
                (
                    q,
                    stack_machine.phi(q, preimage_fertility.CONS_ABA),
                    stack_machine.phi(q, preimage_fertility.CLASSICAL_ABA),
                )
            )
        data[n] = rows
    return data


def _verify_evaluators(sweep) -> tuple[str, bool, dict]:
    per_length = [len(sweep[n]) for n in sorted(sweep)]
    if any(len(sweep[n]) != core.count_standardized(n) for n in sweep):
        return "evaluator-identities", False, {
            "reason": "enumeration size mismatch", "per_length": per_length,
        }
    checked = 0
    for rows in sweep.values():
        for q, out_cons, out_aba in rows:
            if image_membership.phi_cons_via_sandwich(q) != out_cons:
                return "evaluator-identities", False, {"sequence": format_sequence(q)}
            if image_membership.phi_aba_via_decomposition(q) != out_aba:
                return "evaluator-identities", False, {"sequence": format_sequence(q)}
            checked += 1
    return "evaluator-identities", True, {
        "sequences": checked, "per_length": per_length,
    }


def _verify_image(sweep) -> tuple[str, bool, dict]:
    checked = 0
    members = {"cons-aba": 0, "aba": 0}
    mismatches: list[dict] = []
    for n, rows in sweep.items():
        image_cons = {standardize(row[1]) for row in rows}
        image_aba = {standardize(row[2]) for row in rows}
        for q, _, _ in rows:
            for name, test, image in (
                ("cons-aba", image_membership.in_image_cons, image_cons),
                ("aba", image_membership.in_image_aba, image_aba),
            ):
                got = test(q).member
                want = q in image
                if got != want:
                    if len(mismatches) < 5:
                        mismatches.append({
                            "map": name, "sequence": format_sequence(q),
                            "algorithm": got, "brute": want,
                        })
                else:
                    members[name] += got
            checked += 1
    if mismatches:
        return "image-membership", False, {"mismatches": mismatches}
    return "image-membership", True, {
        "sequences": checked,
        "members_cons": members["cons-aba"],
        "members_aba": members["aba"],
    }


def _verify_witnesses(sweep) -> tuple[str, bool, dict]:
    checked = 0
    for rows in sweep.values():
        for q, _, _ in rows:
            res = image_membership.in_image_cons(q)
            if not res.member:
                continue
            if standardize(stack_machine.phi(res.witness, preimage_fertility.CONS_ABA)) != q:
                return "witness-validity", False, {"sequence": format_sequence(q)}
            checked += 1
    return "witness-validity", True, {"witnesses": checked}


def _verify_fertility_staircase(max_n: int) -> tuple[str, bool, dict]:
    fert_cap = min(max_n, 7)
    fert_checked = 0
    for pats in (preimage_fertility.CONS_ABA, preimage_fertility.CLASSICAL_ABA):
        for n in range(2, fert_cap + 1):
            for m in range(1, n):
                w = preimage_fertility.fertility_witness(m, n, pats)
                count = preimage_fertility.preimages_of(w, pats).count
                if count != m:
                    return "fertility-staircase", False, {
                        "witness": format_sequence(w), "count": count, "expected": m,
                    }
                fert_checked += 1
    stair_cap = min(max_n, 8)
    stair_checked = 0
    cons_binomial_misses = 0
    for pats in (preimage_fertility.CONS_ABA, preimage_fertility.CLASSICAL_ABA):
        for n in range(1, stair_cap):
            for k in range(1, stair_cap - n + 1):
                count = preimage_fertility.staircase_preimage_count(n, k, pats)
                expected = preimage_fertility.staircase_count_formula(n, k, pats)
                if count != expected:
                    return "fertility-staircase", False, {
                        "n": n, "k": k, "count": count, "expected": expected,
                    }
                if pats is preimage_fertility.CONS_ABA:
                    cons_binomial_misses += count != comb(k + n - 1, k - 1)
                stair_checked += 1
    return "fertility-staircase", True, {
        "fertility_cases": fert_checked,
        "staircase_cases": stair_checked,
        "cons_binomial_misses": cons_binomial_misses,
    }


def _verify_sortable_counts(max_n: int) -> tuple[str, bool, dict]:
    table = multipattern.count_one_stack_sortable(max_n)
    for n in range(1, max_n + 1):
        if not table.matches_doubling(n):
            return "sortable-counts", False, {"n": n, "total": table.totals[n - 1]}
        if not table.row_matches_shifted_binomial(n):
            return "sortable-counts", False, {"n": n, "row": list(table.by_distinct[n - 1])}
        brute = tuple(
            q
            for q in core.enumerate_standardized(n)
            if stack_machine.is_one_stack_sortable(q, multipattern.ABA_AAB_PINNED)
        )
        if brute != multipattern.build_one_stack_sortable(n):
            return "sortable-counts", False, {"n": n, "mismatch": "construction"}
    survey = multipattern.mode_combination_survey(min(max_n, 7))
    doubling_modes = sorted(
        f"{aba}/{aab}"
        for (aba, aab), counts in survey.items()
        if all(c == 2 ** i for i, c in enumerate(counts))
    )
    return "sortable-counts", True, {
        "totals": list(table.totals), "doubling_modes": doubling_modes,
    }


def _verify_unsortability() -> tuple[str, bool, dict]:
    checked = 0
    for label, pats in UNSORTABLE_SETS:
        for m in range(2, 7):
            report = multipattern.unsortable_witness(pats, m)
            if report.verdict != "never-sorts" or report.witness is None:
                return "unsortability", False, {"patterns": label, "m": m,
                                                "verdict": report.verdict}
            out = stack_machine.phi(report.witness, pats)
            if standardize(out) != standardize(report.witness):
                return "unsortability", False, {
                    "patterns": label, "m": m, "reason": "pass output not equivalent",
                }
            res = stack_machine.phi_iterate(report.witness, pats, max_k=3)
            if res.outcome is not stack_machine.IterationOutcome.NEVER_SORTS:
                return "unsortability", False, {
                    "patterns": label, "m": m, "outcome": res.outcome.value,
                }
            checked += 1
    return "unsortability", True, {"witnesses": checked}


def cmd_verify(args, emit: Emitter) -> int:
    if not 3 <= args.max_n <= 9:
        raise UsageError("verify supports max_n between 3 and 9")
    sweep = _sweep(args.max_n)
    results = [
        _verify_evaluators(sweep),
        _verify_image(sweep),
        _verify_witnesses(sweep),
        _verify_fertility_staircase(args.max_n),
        _verify_sortable_counts(args.max_n),
        _verify_unsortability(),
    ]
    failed = 0
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        failed += not ok
        pretty = " ".join(f"{k}={v}" for k, v in detail.items())
        emit.line(f"{status} {name} {pretty}", record="check", name=name,
                  status=status, detail=detail)
    summary = "OK" if failed == 0 else "FAILED"
    emit.line(f"{summary}: {len(results) - failed}/{len(results)} checks passed",
              record="summary", status=summary, passed=len(results) - failed,
              failed=failed, max_n=args.max_n)
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# bench


BRUTE_HARD_CAP = 12
POLY_LENGTH_CAP = 10_000


def _brute_image_info(n: int, targets_cons, targets_aba):
    """One pass over every standardized length-n sequence, deciding brute
    membership for the given standardized targets under both maps."""
    hits_cons = {t: False for t in targets_cons}
    hits_aba = {t: False for t in targets_aba}
    enumerated = 0
    for q in core.enumerate_standardized(n):
        enumerated += 1
        oc = standardize(image_membership.phi_cons_via_sandwich(q))
        if oc in hits_cons:
            hits_cons[oc] = True
        oa = standardize(image_membership.phi_aba_via_decomposition(q))
        if oa in hits_aba:
            hits_aba[oa] = True
    return enumerated, hits_cons, hits_aba


def cmd_bench(args, emit: Emitter) -> int:
    try:
        lengths = [int(part) for part in args.lengths.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"bad lengths {args.lengths!r}") from exc
    if not lengths or any(n < 0 for n in lengths):
        raise UsageError("lengths must be non-negative integers")
    if any(n > POLY_LENGTH_CAP for n in lengths):
        raise UsageError(f"lengths above {POLY_LENGTH_CAP} are out of bounds")
    rng = random.Random(args.seed)
    brute_cap = min(args.brute_cap, BRUTE_HARD_CAP)
    ok = True
    for n in lengths:
        seq = core.random_standardized(n, rng)
        t0 = time.perf_counter()
        res_cons = image_membership.in_image_cons(seq)
        t1 = time.perf_counter()
        res_aba = image_membership.in_image_aba(seq)
        t2 = time.perf_counter()
        emit.line(
            f"length={n} cons-aba: member={'yes' if res_cons.member else 'no'} "
            f"time={t1 - t0:.6f}s",
            record="poly", length=n, map="cons-aba", member=res_cons.member,
            seconds=t1 - t0,
        )
        emit.line(
            f"length={n} aba: member={'yes' if res_aba.member else 'no'} "
            f"time={t2 - t1:.6f}s",
            record="poly", length=n, map="aba", member=res_aba.member,
            seconds=t2 - t1,
        )
        if args.brute and n <= brute_cap:
            target = standardize(seq)
            t3 = time.perf_counter()
            enumerated, hits_cons, hits_aba = _brute_image_info(n, {target}, {target})
            t4 = time.perf_counter()
            agree = (
                hits_cons[target] == res_cons.member
                and hits_aba[target] == res_aba.member
            )
            ok = ok and agree
            emit.line(
                f"length={n} brute: enumerated={enumerated} "
                f"agree={'yes' if agree else 'NO'} time={t4 - t3:.3f}s",
                record="brute", length=n, enumerated=enumerated, agree=agree,
                seconds=t4 - t3,
            )
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="socksort",
        description="Pattern-avoiding stack sorting of sock sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("text", "json-lines"), default="text")
        p.set_defaults(func=func)
        return p

    p = add("sort", cmd_sort, "apply one or more sorting passes")
    p.add_argument("sequence")
    p.add_argument("--pattern", required=True,
                   help="comma-separated patterns, ~ prefix for consecutive"
                        " (e.g. '~aba,~aab')")
    p.add_argument("--k", type=int, default=1, help="number of passes")
    p.add_argument("--trace", action="store_true")

    p = add("image-check", cmd_image_check, "membership in a sorting map image")
    p.add_argument("sequence")
    p.add_argument("--map", choices=sorted(MAPS), required=True)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--witness", action="store_true",
                   help="print a preimage when the cons-aba verdict is MEMBER")

    p = add("preimages", cmd_preimages, "enumerate preimages up to renaming")
    p.add_argument("sequence")
    p.add_argument("--map", choices=sorted(MAPS), required=True)
    p.add_argument("--max-len", type=int, default=preimage_fertility.DEFAULT_MAX_LEN)

    p = add("fertility", cmd_fertility, "witness with a prescribed preimage count")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--map", choices=sorted(MAPS), required=True)

    p = add("staircase", cmd_staircase, "preimage count of a staircase target")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--map", choices=sorted(MAPS), required=True)

    p = add("count-1ss", cmd_count_1ss, "count one-pass-sortable sequences")
    p.add_argument("--n-max", type=int, required=True)

    p = add("witness", cmd_witness, "find a sequence no number of passes sorts")
    p.add_argument("--patterns", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--search-len", type=int, default=6)

    p = add("verify", cmd_verify, "run the derived-value verification suite")
    p.add_argument("max_n", type=int)

    p = add("bench", cmd_bench, "time the membership algorithms")
    p.add_argument("--lengths", default="12,100,1000,10000")
    p.add_argument("--seed", type=int, default=20240801)
    p.add_argument("--brute", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--brute-cap", type=int, default=BRUTE_HARD_CAP)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    emit = Emitter(args.format)
    try:
        return args.func(args, emit)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
