"""Embedding and extraction of framed secrets.

Stego format: the secret is prefixed with ``b"PYR1"`` and its length as a
little-endian u32. The framed bytes are expanded MSB-first into a bit
stream, and the stream is poured into the data region in pyramid order.
Each visited byte takes as many bits as its range allows, with the first
stream bit landing in the highest replaceable position. The last byte may
be only partly filled; its remaining low bits keep their cover values.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import BadMagic, CapacityExceeded, Truncated
from .pyramid import visit_indices
from .range_policy import RangeTable, capacity_bits, default_table, ensure_valid
from .wav_io import WavAudio

MAGIC = b"PYR1"
HEADER_LEN = 8
HEADER_BITS = HEADER_LEN * 8
MAX_SECRET_LEN = 2**32 - 1


@dataclass(frozen=True)
class FramedPayload:
    secret: bytes

    def __post_init__(self):
        if len(self.secret) > MAX_SECRET_LEN:
            raise ValueError("secret longer than 2**32 - 1 bytes")

    def to_bytes(self) -> bytes:
        return MAGIC + struct.pack("<I", len(self.secret)) + bytes(self.secret)

    @property
    def bit_length(self) -> int:
        return (HEADER_LEN + len(self.secret)) * 8


class BitStream:
    """An ordered bit sequence; bytes map to bits most significant first."""

    def __init__(self, bits=()):
        self.bits = np.asarray(bits, dtype=np.uint8)

    @classmethod
    def from_bytes(cls, data: bytes) -> "BitStream":
        return cls(np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8)))

    def to_bytes(self) -> bytes:
        if len(self.bits) % 8:
            raise ValueError("bit count is not a multiple of 8")
        return np.packbits(self.bits).tobytes()

    def __len__(self):
        return len(self.bits)


def frame_bits(secret_len: int) -> int:
    return (HEADER_LEN + secret_len) * 8


def embed_byte(b: int, bits, k: int) -> int:
    """Replace the ``k`` low bits of ``b`` with ``bits`` (first bit highest).

    ``bits`` is a sequence of 0/1 values or a string like ``"011"``.
    """
    if k == 0:
        return b
    bits = [int(c) for c in bits]
    if len(bits) != k:
        raise ValueError(f"expected {k} bits, got {len(bits)}")
    value = 0
    for bit in bits:
        value = (value << 1) | bit
    return (b & ~((1 << k) - 1) & 0xFF) | value


def _spread(depths: np.ndarray, n_bits: int):
    """Lay ``n_bits`` stream bits over bytes with the given depths.

    Returns ``(owner, shift)``: for stream bit ``i``, the index of the byte
    that holds it and its bit position within that byte.
    """
    ends = np.cumsum(depths, dtype=np.int64)
    n_bytes = int(np.searchsorted(ends, n_bits)) + 1
    d = depths[:n_bytes].astype(np.int64)
    owner = np.repeat(np.arange(n_bytes, dtype=np.int64), d)[:n_bits]
    starts = ends[:n_bytes] - d
    within = np.arange(n_bits, dtype=np.int64) - starts[owner]
    shift = d[owner] - 1 - within
    return owner, shift


def _write_bits(values: np.ndarray, depths: np.ndarray, bits: np.ndarray) -> np.ndarray:
    out = values.astype(np.int64)
    if len(bits) == 0:
        return out.astype(np.uint8)
    owner, shift = _spread(depths, len(bits))
    # shifts within one byte are distinct, so summing is the same as OR-ing
    clear = np.bincount(owner, weights=1 << shift, minlength=len(out)).astype(np.int64)
    setb = np.bincount(owner, weights=bits.astype(np.int64) << shift,
                       minlength=len(out)).astype(np.int64)
    out = (out & ~clear) | setb
    return out.astype(np.uint8)


def _read_bits(values: np.ndarray, depths: np.ndarray, n_bits: int) -> np.ndarray:
    owner, shift = _spread(depths, n_bits)
    return ((values[owner].astype(np.int64) >> shift) & 1).astype(np.uint8)


def _check_capacity(required: int, available: int) -> None:
    if required > available:
        raise CapacityExceeded(required, available)


def embed(cover: WavAudio, secret: bytes, table: RangeTable | None = None) -> WavAudio:
    table = ensure_valid(default_table() if table is None else table)
    data = np.frombuffer(cover.data_bytes, dtype=np.uint8)
    payload = FramedPayload(bytes(secret))
    _check_capacity(payload.bit_length, capacity_bits(cover.data_bytes, table))

    order = visit_indices(len(data))
    visited = data[order]
    bits = BitStream.from_bytes(payload.to_bytes()).bits
    stego = data.copy()
    stego[order] = _write_bits(visited, table.lut[visited], bits)
    return cover.with_data(stego.tobytes())


def _unframe(read, available: int) -> bytes:
    """Decode a frame given ``read(n_bits) -> bytes`` over ``available`` bits."""
    if available < HEADER_BITS:
        raise BadMagic(f"only {available} bits available, no room for a frame header")
    header = read(HEADER_BITS)
    if header[:4] != MAGIC:
        raise BadMagic(f"frame magic {header[:4]!r} != {MAGIC!r}")
    (length,) = struct.unpack("<I", header[4:])
    needed = frame_bits(length)
    if needed > available:
        raise Truncated(f"frame declares {length} secret bytes but only "
                        f"{(available - HEADER_BITS) // 8} fit in the stream")
    return read(needed)[HEADER_LEN:]


def extract(stego: WavAudio, table: RangeTable | None = None) -> bytes:
    table = ensure_valid(default_table() if table is None else table)
    data = np.frombuffer(stego.data_bytes, dtype=np.uint8)
    visited = data[visit_indices(len(data))]
    depths = table.lut[visited]
    available = int(depths.sum(dtype=np.int64))

    def read(n):
        return np.packbits(_read_bits(visited, depths, n)).tobytes()

    return _unframe(read, available)


def plain_capacity_bits(data_len: int) -> int:
    return data_len


def embed_plain_lsb(cover: WavAudio, secret: bytes) -> WavAudio:
    """Classic 1-bit LSB substitution, sequential over the whole data region."""
    data = np.frombuffer(cover.data_bytes, dtype=np.uint8)
    payload = FramedPayload(bytes(secret))
    _check_capacity(payload.bit_length, plain_capacity_bits(len(data)))
    bits = BitStream.from_bytes(payload.to_bytes()).bits
    stego = data.copy()
    n = len(bits)
    stego[:n] = (stego[:n] & 0xFE) | bits
    return cover.with_data(stego.tobytes())


def extract_plain_lsb(stego: WavAudio) -> bytes:
    data = np.frombuffer(stego.data_bytes, dtype=np.uint8)

    def read(n):
        return np.packbits(data[:n] & 1).tobytes()

    return _unframe(read, len(data))
