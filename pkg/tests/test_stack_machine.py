from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from socksort.core import enumerate_standardized, is_sorted, standardize
from socksort.patterns import (
    ABA_CLASSICAL,
    ABA_CONSECUTIVE,
    AAB_CONSECUTIVE,
    avoids,
    parse_patterns,
)
from socksort.stack_machine import (
    IterationOutcome,
    is_one_stack_sortable,
    phi,
    phi_iterate,
    phi_trace,
)

CONS_ABA = frozenset({ABA_CONSECUTIVE})
CLASSICAL_ABA = frozenset({ABA_CLASSICAL})
BOTH_CONS = frozenset({ABA_CONSECUTIVE, AAB_CONSECUTIVE})

seqs = st.lists(st.integers(min_value=0, max_value=5), max_size=11).map(tuple)


@pytest.mark.parametrize(
    "p,pats,expected",
    [
        ("aab", CONS_ABA, "baa"),
        ("aba", CONS_ABA, "baa"),
        ("abca", CLASSICAL_ABA, "cbaa"),
        ("aab", BOTH_CONS, "aba"),
        ("", CONS_ABA, ""),
        ("a", CONS_ABA, "a"),
    ],
)
def test_phi_fixed_examples(p, pats, expected):
    from socksort.core import format_sequence, parse_sequence

    assert format_sequence(phi(parse_sequence(p), pats)) == expected


@given(seqs)
def test_phi_output_is_a_rearrangement(p):
    for pats in (CONS_ABA, CLASSICAL_ABA, BOTH_CONS):
        assert Counter(phi(p, pats)) == Counter(p)


@given(seqs)
def test_phi_deterministic(p):
    assert phi(p, CONS_ABA) == phi(p, CONS_ABA)


def test_sorted_inputs_with_cons_map_need_not_stay_sorted():
    # The machine must pop everything at the end in stack order, so even
    # a sorted input can come out unsorted under some pattern sets.
    assert phi((0, 0, 1), BOTH_CONS) == (0, 1, 0)


def test_trace_structure():
    tr = phi_trace((0, 0, 1), CONS_ABA)
    kinds = [ev.kind for ev in tr.events]
    assert kinds.count("push") == 3
    assert kinds.count("pop") == 3
    # Pops replay the output in order; pushes replay the input.
    pushes = [ev.sock for ev in tr.events if ev.kind == "push"]
    pops = [ev.sock for ev in tr.events if ev.kind == "pop"]
    assert tuple(pushes) == tr.input
    assert tuple(pops) == tr.output
    assert [ev.index for ev in tr.events if ev.kind == "push"] == [0, 1, 2]
    assert tr.output == phi(tr.input, CONS_ABA)


@given(seqs)
def test_trace_agrees_with_phi(p):
    tr = phi_trace(p, CLASSICAL_ABA)
    assert tr.output == phi(p, CLASSICAL_ABA)
    assert len(tr.events) == 2 * len(p)


def test_every_prefix_of_stack_avoids_patterns():
    # Reconstruct stack states from the event log and recheck the
    # machine's own invariant.
    for q in enumerate_standardized(6):
        tr = phi_trace(q, CONS_ABA)
        stack: list[int] = []
        for ev in tr.events:
            if ev.kind == "push":
                stack.append(ev.sock)
                assert avoids(tuple(stack), CONS_ABA), (q, tuple(stack))
            else:
                assert stack.pop() == ev.sock


def test_phi_iterate_sorts_quickly():
    res = phi_iterate((0, 1, 0), CONS_ABA)
    assert res.outcome is IterationOutcome.SORTED
    assert res.sorted_after == 1
    assert res.final == (1, 0, 0)


def test_phi_iterate_already_sorted():
    res = phi_iterate((0, 0, 1), CONS_ABA)
    assert res.outcome is IterationOutcome.SORTED
    assert res.sorted_after == 0


def test_phi_iterate_detects_cycle():
    # With the mixed classical set, the alternating witness renames to
    # itself after one pass and can never sort.
    pats = parse_patterns("abba,abab")
    res = phi_iterate((0, 1, 0, 2, 0), pats, max_k=3)
    assert res.outcome is IterationOutcome.NEVER_SORTS


def test_phi_iterate_budget_exhaustion_reported():
    pats = parse_patterns("abba,abab")
    res = phi_iterate((0, 1, 0, 2, 0), pats, max_k=0)
    assert res.outcome is IterationOutcome.NOT_SORTED_WITHIN


@given(seqs)
def test_iterated_sorting_terminates_for_classical_aba(p):
    res = phi_iterate(p, CLASSICAL_ABA, max_k=len(p) + 1)
    assert res.outcome is IterationOutcome.SORTED
    assert is_sorted(res.final)


def test_cons_map_has_unsorted_fixed_points():
    # The stack a b b a never holds three consecutive socks shaped like
    # aba, so the whole input is pushed and flushed back unchanged.
    p = (0, 1, 1, 0)
    assert phi(p, CONS_ABA) == p
    res = phi_iterate(p, CONS_ABA, max_k=5)
    assert res.outcome is IterationOutcome.NEVER_SORTS


def test_is_one_stack_sortable():
    assert is_one_stack_sortable((0, 1, 0), CONS_ABA)
    assert is_one_stack_sortable((), CONS_ABA)
    assert not is_one_stack_sortable((0, 1, 2, 0, 1, 2), CONS_ABA)


def test_one_pass_sortable_counts_for_cons_map():
    # Frozen from exhaustive runs.
    got = [
        sum(1 for q in enumerate_standardized(n) if is_one_stack_sortable(q, CONS_ABA))
        for n in range(1, 7)
    ]
    assert got == [1, 2, 5, 13, 35, 95]
