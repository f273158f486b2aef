"""Range-of-bytes replacement policy.

Every cover byte value belongs to exactly one range, and the range fixes how
many low bits of that byte may carry secret data. Ranges must be aligned to
``2**depth`` on both ends, so overwriting the permitted bits can never push a
byte into a different range; the extractor relies on this to recover the
depth from the stego byte alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidTable
from .pyramid import BLOCK_SIZE

MAX_DEPTH = 4


@dataclass(frozen=True)
class RangeEntry:
    low: int
    high: int
    depth: int


@dataclass(frozen=True)
class RangeTable:
    entries: tuple[RangeEntry, ...] = field(default_factory=tuple)

    @classmethod
    def from_triples(cls, triples: Iterable[Sequence[int]]) -> "RangeTable":
        return cls(tuple(RangeEntry(int(lo), int(hi), int(d)) for lo, hi, d in triples))

    def triples(self) -> list[tuple[int, int, int]]:
        return [(e.low, e.high, e.depth) for e in self.entries]

    @cached_property
    def lut(self) -> np.ndarray:
        """Depth per byte value, as a read-only uint8 array of length 256.

        Only meaningful for a valid table.
        """
        out = np.zeros(256, dtype=np.uint8)
        for e in self.entries:
            out[max(e.low, 0):min(e.high, 255) + 1] = e.depth
        out.flags.writeable = False
        return out

    def depths(self, data) -> np.ndarray:
        return self.lut[np.frombuffer(bytes(data), dtype=np.uint8)]


def default_table() -> RangeTable:
    return RangeTable.from_triples(
        [
            (0, 15, 0),
            (16, 31, 1),
            (32, 63, 3),
            (64, 127, 2),
            (128, 255, 1),
        ]
    )


def classify(b: int, table: RangeTable) -> int:
    for e in table.entries:
        if e.low <= b <= e.high:
            return e.depth
    raise ValueError(f"byte value {b} not covered by table")


def validate(table: RangeTable) -> list[str]:
    """Return every violation found in ``table``; an empty list means valid."""
    problems = []
    if not table.entries:
        return ["table has no entries"]
    expected_low = 0
    for i, e in enumerate(table.entries):
        tag = f"entry {i} [{e.low},{e.high}]->{e.depth}"
        if e.low > e.high:
            problems.append(f"{tag}: low exceeds high")
        if e.low < expected_low:
            problems.append(f"{tag}: overlaps or is out of order (expected low {expected_low})")
        elif e.low > expected_low:
            problems.append(f"{tag}: gap, values {expected_low}..{e.low - 1} uncovered")
        if not 0 <= e.depth <= MAX_DEPTH:
            problems.append(f"{tag}: depth bound, must be within 0..{MAX_DEPTH}")
        elif e.depth > 0:
            step = 1 << e.depth
            if e.low % step or (e.high + 1) % step:
                problems.append(f"{tag}: closure alignment, bounds not aligned to {step}")
        expected_low = max(expected_low, e.high + 1)
    if expected_low != 256:
        if expected_low < 256:
            problems.append(f"values {expected_low}..255 uncovered")
        else:
            problems.append(f"table extends past 255 (to {expected_low - 1})")
    return problems


def ensure_valid(table: RangeTable) -> RangeTable:
    problems = validate(table)
    if problems:
        raise InvalidTable(problems)
    return table


def usable_length(data_len: int) -> int:
    return data_len - data_len % BLOCK_SIZE


def capacity_bits(data, table: RangeTable, usable_len: int | None = None) -> int:
    """Gross number of secret bits the first ``usable_len`` bytes can hold."""
    if usable_len is None:
        usable_len = usable_length(len(data))
    return int(table.depths(bytes(data[:usable_len])).sum(dtype=np.int64))


def parse_table(text: str) -> RangeTable:
    """Parse ``low high depth`` lines; ``#`` starts a comment."""
    triples = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InvalidTable([f"line {lineno}: expected 'low high depth'"])
        try:
            triples.append(tuple(int(p, 10) for p in parts))
        except ValueError:
            raise InvalidTable([f"line {lineno}: non-integer field"]) from None
    return ensure_valid(RangeTable.from_triples(triples))


def load_table(path) -> RangeTable:
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh.read())


def format_table(table: RangeTable) -> str:
    return "".join(f"{e.low} {e.high} {e.depth}\n" for e in table.entries)
