"""Pyramid blocks and the fixed visiting order inside each block.

The data region is cut into consecutive 21-byte blocks, each laid out as a
triangle with rows of 1..6 bytes. Bytes are visited down the left edge
first (local offsets 0, 1, 3, 6, 10, 15, whose gaps grow 1, 2, 3, 4, 5),
then along each following diagonal. The order is part of the stego format.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ROWS = 6
BLOCK_SIZE = ROWS * (ROWS + 1) // 2


@dataclass(frozen=True)
class PyramidBlock:
    base_offset: int

    def indices(self) -> list[int]:
        return [self.base_offset + i for i in TRAVERSAL]


def _row_start(r: int) -> int:
    return r * (r + 1) // 2


def _diagonal_order() -> tuple[int, ...]:
    order = []
    for col in range(ROWS):
        for row in range(col, ROWS):
            order.append(_row_start(row) + col)
    return tuple(order)


TRAVERSAL = _diagonal_order()


def traversal_order() -> list[int]:
    return list(TRAVERSAL)


def blocks(data_len: int) -> list[PyramidBlock]:
    return [PyramidBlock(off) for off in range(0, data_len - BLOCK_SIZE + 1, BLOCK_SIZE)]


def visit_indices(data_len: int) -> np.ndarray:
    """Global data-region offsets in embedding order; tail bytes excluded."""
    n = data_len // BLOCK_SIZE
    base = np.arange(n, dtype=np.int64)[:, None] * BLOCK_SIZE
    return (base + np.asarray(TRAVERSAL, dtype=np.int64)[None, :]).ravel()
