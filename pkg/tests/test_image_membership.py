import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socksort.core import (
    enumerate_standardized,
    format_sequence,
    parse_sequence,
    standardize,
)
from socksort.image_membership import (
    aba_decompose,
    in_image_aba,
    in_image_cons,
    phi_aba_via_decomposition,
    phi_cons_via_sandwich,
    sandwich_decompose,
)
from socksort.patterns import ABA_CLASSICAL, ABA_CONSECUTIVE
from socksort.stack_machine import phi

CONS_ABA = frozenset({ABA_CONSECUTIVE})
CLASSICAL_ABA = frozenset({ABA_CLASSICAL})

raw_seqs = st.lists(st.integers(min_value=0, max_value=5), max_size=12).map(
    lambda xs: standardize(tuple(xs))
)


# ---------------------------------------------------------------------------
# evaluators


def test_sandwich_decompose_example():
    dec = sandwich_decompose(parse_sequence("abacdca"))
    assert dec.removed == ((1, 1), (3, 4))
    assert format_sequence(dec.residual) == "aacca"


def test_sandwich_decompose_no_sandwich():
    dec = sandwich_decompose((0, 1, 1, 0))
    assert dec.removed == ()
    assert dec.residual == (0, 1, 1, 0)


def test_phi_cons_via_sandwich_examples():
    assert phi_cons_via_sandwich(parse_sequence("aab")) == parse_sequence("baa")
    assert phi_cons_via_sandwich(parse_sequence("aba")) == parse_sequence("baa")
    assert phi_cons_via_sandwich(()) == ()


def test_aba_decompose_example():
    x, runs, segs = aba_decompose(parse_sequence("abacbc"))
    assert x == 0
    assert runs == (1, 1, 0)
    assert segs == ((1,), (2, 1, 2))


def test_phi_aba_via_decomposition_example():
    assert phi_aba_via_decomposition(parse_sequence("abca")) == parse_sequence("cbaa")


@pytest.mark.parametrize("n", range(8))
def test_evaluators_match_stack_machine(n):
    for q in enumerate_standardized(n):
        assert phi_cons_via_sandwich(q) == phi(q, CONS_ABA), q
        assert phi_aba_via_decomposition(q) == phi(q, CLASSICAL_ABA), q


@given(raw_seqs)
@settings(max_examples=60)
def test_evaluators_match_on_random_sequences(q):
    assert phi_cons_via_sandwich(q) == phi(q, CONS_ABA)
    assert phi_aba_via_decomposition(q) == phi(q, CLASSICAL_ABA)


# ---------------------------------------------------------------------------
# membership, consecutive map


@pytest.mark.parametrize(
    "s,member,witness",
    [
        ("aba", False, None),
        ("baa", True, "aab"),
        ("abb", True, "bba"),
        ("abba", True, "abba"),
        ("abcc", True, "ccba"),
        ("abc", True, "cba"),
        ("", True, ""),
        ("a", True, "a"),
    ],
)
def test_in_image_cons_fixed_examples(s, member, witness):
    res = in_image_cons(parse_sequence(s))
    assert res.member is member
    got = None if res.witness is None else format_sequence(res.witness)
    assert got == witness


def test_in_image_cons_witness_maps_back():
    for n in range(8):
        for q in enumerate_standardized(n):
            res = in_image_cons(q)
            if res.member:
                assert standardize(phi(res.witness, CONS_ABA)) == q, q
            else:
                assert res.witness is None


@pytest.mark.parametrize("n", range(8))
def test_in_image_cons_matches_brute_force(n):
    image = {standardize(phi(q, CONS_ABA)) for q in enumerate_standardized(n)}
    for q in enumerate_standardized(n):
        assert in_image_cons(q).member == (q in image), q


# ---------------------------------------------------------------------------
# membership, classical map


@pytest.mark.parametrize(
    "s,member,gamma,dividers",
    [
        ("baa", True, 0, ()),
        ("aab", True, 0, ()),
        ("abab", False, -1, (2,)),
        ("abba", False, -1, (3,)),
        ("bcbabccdd", True, 0, (2, 4)),
        ("bcbcbaabcccdd", False, -1, (2, 4, 7)),
    ],
)
def test_in_image_aba_fixed_examples(s, member, gamma, dividers):
    res = in_image_aba(parse_sequence(s))
    assert res.member is member
    assert res.trace.final_gamma == gamma
    assert res.trace.initial_dividers == dividers


def test_in_image_aba_verdict_follows_gamma():
    for q in enumerate_standardized(6):
        res = in_image_aba(q)
        assert res.member == (res.trace.final_gamma >= 0)


@pytest.mark.parametrize("n", range(8))
def test_in_image_aba_matches_brute_force(n):
    image = {standardize(phi(q, CLASSICAL_ABA)) for q in enumerate_standardized(n)}
    for q in enumerate_standardized(n):
        assert in_image_aba(q).member == (q in image), q


def test_in_image_aba_block_start_runs():
    # Runs that open their block merge one more divider than interior
    # runs; these two length-9 sequences only pass with that rule.
    for s in ("abaccbadd", "abaccbcdd"):
        assert in_image_aba(parse_sequence(s)).member, s


def _check_gamma_bookkeeping(q):
    res = in_image_aba(q)
    # Gamma changes by -1 at divider crossings and by the recorded score
    # on runs; removals and insertions only edit the divider layout.
    gamma = 0
    for st_ in res.trace.steps:
        if st_.kind == "divider":
            gamma -= 1
        elif st_.kind == "run":
            gamma += st_.score
        assert st_.gamma_after == gamma, (q, st_)
    assert res.trace.final_gamma == gamma


def test_gamma_trace_step_bookkeeping():
    res = in_image_aba(parse_sequence("bcbcbaabcccdd"))
    assert res.trace.steps, "expected a non-trivial trace"
    _check_gamma_bookkeeping(parse_sequence("bcbcbaabcccdd"))
    for q in enumerate_standardized(7):
        _check_gamma_bookkeeping(q)


@given(raw_seqs)
@settings(max_examples=60)
def test_membership_decisions_are_pure(q):
    a = in_image_aba(q)
    b = in_image_aba(q)
    assert a.member == b.member
    assert a.trace.final_gamma == b.trace.final_gamma
    assert in_image_cons(q).member == in_image_cons(q).member
