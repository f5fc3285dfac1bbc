"""The pattern-avoiding stack sorting map.

Socks are pushed left to right.  Before each push, socks are popped to
the output while pushing the candidate would create a pattern occurrence
inside the stack (read bottom to top, candidate on top).  The stack is
flushed at the end.  Tie-free by construction: at most one move applies
at any moment, so the map is a function.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass

from .core import SockSeq, is_sorted, standardize
from .patterns import Pattern, _prepare, _violates


@dataclass(frozen=True)
class TraceEvent:
    kind: str  # "push" | "pop"
    sock: int
    index: int  # input index for pushes, output index for pops


@dataclass(frozen=True)
class SortTrace:
    input: SockSeq
    events: tuple[TraceEvent, ...]
    output: SockSeq


def _run(p: SockSeq, pats: frozenset[Pattern], events: list | None) -> SockSeq:
    prepared = _prepare(pats)
    stack: list[int] = []
    out: list[int] = []
    for i, sock in enumerate(p):
        while stack and _violates(stack, sock, prepared):
            top = stack.pop()
            if events is not None:
                events.append(TraceEvent("pop", top, len(out)))
            out.append(top)
        stack.append(sock)
        if events is not None:
            events.append(TraceEvent("push", sock, i))
    while stack:
        top = stack.pop()
        if events is not None:
            events.append(TraceEvent("pop", top, len(out)))
        out.append(top)
    return tuple(out)


def phi(p: Iterable[int], pats: Iterable[Pattern]) -> SockSeq:
    """One pass of the sorting map for the given pattern set."""
    pats_f = pats if isinstance(pats, frozenset) else frozenset(pats)
    return _run(tuple(p), pats_f, None)


def phi_trace(p: Iterable[int], pats: Iterable[Pattern]) -> SortTrace:
    """Like phi, but records every push and pop."""
    pats_f = pats if isinstance(pats, frozenset) else frozenset(pats)
    seq = tuple(p)
    events: list[TraceEvent] = []
    out = _run(seq, pats_f, events)
    return SortTrace(seq, tuple(events), out)


class IterationOutcome(enum.Enum):
    SORTED = "sorted"
    NEVER_SORTS = "never-sorts"
    NOT_SORTED_WITHIN = "not-sorted-within"


@dataclass(frozen=True)
class IterationResult:
    outcome: IterationOutcome
    sorted_after: int | None  # passes used, 0 when already sorted
    final: SockSeq


def phi_iterate(
    p: Iterable[int], pats: Iterable[Pattern], max_k: int = 100
) -> IterationResult:
    """Apply phi repeatedly, up to max_k passes.

    Stops early with NEVER_SORTS when an unsorted sequence repeats up to
    renaming: iteration is then trapped in a cycle of unsorted sequences.
    """
    if max_k < 0:
        raise ValueError("max_k must be >= 0")
    pats_f = pats if isinstance(pats, frozenset) else frozenset(pats)
    cur = tuple(p)
    if is_sorted(cur):
        return IterationResult(IterationOutcome.SORTED, 0, cur)
    seen = {standardize(cur)}
    for k in range(1, max_k + 1):
        cur = phi(cur, pats_f)
        if is_sorted(cur):
            return IterationResult(IterationOutcome.SORTED, k, cur)
        std = standardize(cur)
        if std in seen:
            return IterationResult(IterationOutcome.NEVER_SORTS, None, cur)
        seen.add(std)
    return IterationResult(IterationOutcome.NOT_SORTED_WITHIN, None, cur)


def is_one_stack_sortable(p: Iterable[int], pats: Iterable[Pattern]) -> bool:
    """True when a single pass of phi sorts p."""
    return is_sorted(phi(p, pats))
