"""Sock sequences and their set-partition view.

A sock sequence is a word over non-negative integer sock ids.  Two
sequences are equivalent when a consistent renaming of socks turns one
into the other; the canonical representative renames socks in order of
first appearance, which makes it a restricted growth string.  A sequence
is sorted when every sock's occurrences sit in one contiguous block.
"""

from __future__ import annotations

import random
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping

SockSeq = tuple[int, ...]

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def standardize(p: Iterable[int]) -> SockSeq:
    """Rename socks to 0, 1, 2, ... in order of first appearance."""
    names: dict[int, int] = {}
    out = []
    for sock in p:
        code = names.get(sock)
        if code is None:
            code = names[sock] = len(names)
        out.append(code)
    return tuple(out)


def is_standardized(p: Iterable[int]) -> bool:
    p = tuple(p)
    return p == standardize(p)


def equivalent(p: Iterable[int], q: Iterable[int]) -> bool:
    """True when p and q differ only by a renaming of socks."""
    return standardize(p) == standardize(q)


def is_sorted(p: Iterable[int]) -> bool:
    """True when every sock's occurrences are contiguous."""
    seen = set()
    prev = None
    for sock in p:
        if sock != prev:
            if sock in seen:
                return False
            seen.add(sock)
            prev = sock
    return True


def rev(p: Iterable[int]) -> SockSeq:
    return tuple(p)[::-1]


def seq_to_partition(p: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Blocks of 1-based positions that share a sock, ordered by first position."""
    blocks: dict[int, list[int]] = {}
    for i, sock in enumerate(p, start=1):
        blocks.setdefault(sock, []).append(i)
    return tuple(tuple(b) for b in sorted(blocks.values()))


def partition_to_seq(blocks: Iterable[Iterable[int]]) -> SockSeq:
    """Inverse of seq_to_partition.

    Blocks must be non-empty, pairwise disjoint, and cover 1..n exactly.
    The result is standardized (socks numbered by first position).
    """
    cells = [sorted(set(b)) for b in blocks]
    if any(not c for c in cells):
        raise ValueError("empty block")
    cells.sort()
    assign: dict[int, int] = {}
    for label, cell in enumerate(cells):
        for pos in cell:
            if not isinstance(pos, int) or pos < 1:
                raise ValueError(f"positions must be integers >= 1, got {pos!r}")
            if pos in assign:
                raise ValueError(f"position {pos} appears in two blocks")
            assign[pos] = label
    n = len(assign)
    if sorted(assign) != list(range(1, n + 1)):
        raise ValueError("blocks must cover positions 1..n exactly")
    return tuple(assign[i] for i in range(1, n + 1))


def enumerate_standardized(n: int) -> Iterator[SockSeq]:
    """All standardized sequences of length n, in lexicographic order."""
    if n < 0:
        raise ValueError("length must be >= 0")
    if n == 0:
        yield ()
        return
    prefix = [0]

    def extend(mx: int) -> Iterator[SockSeq]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(mx + 2):
            prefix.append(v)
            yield from extend(mx if v <= mx else v)
            prefix.pop()

    yield from extend(0)


def count_standardized(n: int) -> int:
    """Number of standardized sequences of length n (Bell number), via the
    Bell triangle so it does not depend on enumerate_standardized."""
    if n < 0:
        raise ValueError("length must be >= 0")
    if n == 0:
        return 1
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[-1]


def enumerate_multiset_arrangements(
    socks: Mapping[int, int] | Iterable[int],
) -> Iterator[SockSeq]:
    """Distinct arrangements of a sock multiset, one standardized
    representative per equivalence class, no duplicates.

    Accepts either a multiplicity mapping or any iterable of socks.
    """
    counts = Counter(socks) if not isinstance(socks, Mapping) else Counter(dict(socks))
    for sock, c in counts.items():
        if sock < 0 or c < 0:
            raise ValueError("socks and multiplicities must be non-negative")
    items = sorted(s for s, c in counts.items() if c > 0)
    n = sum(counts[s] for s in items)
    seen: set[SockSeq] = set()
    buf: list[int] = []

    def place() -> Iterator[SockSeq]:
        if len(buf) == n:
            std = standardize(buf)
            if std not in seen:
                seen.add(std)
                yield std
            return
        for s in items:
            if counts[s]:
                counts[s] -= 1
                buf.append(s)
                yield from place()
                buf.pop()
                counts[s] += 1

    yield from place()


def random_standardized(n: int, rng: random.Random) -> SockSeq:
    """Random standardized sequence built one sock at a time: each step
    repeats one of the socks seen so far or opens a new one."""
    if n < 0:
        raise ValueError("length must be >= 0")
    if n == 0:
        return ()
    seq = [0]
    mx = 0
    for _ in range(n - 1):
        v = rng.randint(0, mx + 1)
        if v > mx:
            mx = v
        seq.append(v)
    return tuple(seq)


def parse_sequence(text: str) -> SockSeq:
    """Parse 'abacb' (letters a-z) or '0,1,0,2,1' (comma-separated ints)."""
    text = text.strip()
    if text == "":
        return ()
    if "," in text or text.isdigit():
        parts = [part.strip() for part in text.split(",")]
        if any(not part.isdigit() for part in parts):
            raise ValueError(f"bad sock sequence {text!r}: expected non-negative integers")
        return tuple(int(part) for part in parts)
    if not all("a" <= ch <= "z" for ch in text):
        raise ValueError(
            f"bad sock sequence {text!r}: use letters a-z or comma-separated integers"
        )
    return tuple(ord(ch) - ord("a") for ch in text)


def format_sequence(p: Iterable[int]) -> str:
    """Letters when every sock id fits a-z, otherwise comma-separated ints."""
    p = tuple(p)
    if p and min(p) < 0:
        raise ValueError("sock ids must be non-negative")
    if all(s < 26 for s in p):
        return "".join(_LETTERS[s] for s in p)
    return ",".join(str(s) for s in p)
