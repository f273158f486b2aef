"""Bit-exact WAV container handling.

A parsed file is split into three raw regions: everything before the
embeddable samples (``prefix``), the samples themselves (``data``) and
anything that follows them (``suffix``). Serializing simply concatenates
the three, so an untouched parse always reproduces the input byte for byte.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass, replace

from .errors import NoDataChunk, NotRiff, TooShort, UnsupportedFormat

COMPAT_HEADER_LEN = 44
PCM_FORMAT_TAG = 1
SUPPORTED_BITS = (8, 16)


class HeaderMode(enum.Enum):
    COMPAT44 = "compat44"
    RIFF_CHUNKS = "riff"


@dataclass(frozen=True)
class WavAudio:
    prefix_bytes: bytes
    data_bytes: bytes
    suffix_bytes: bytes
    bits_per_sample: int
    num_channels: int
    sample_rate: int

    def with_data(self, data: bytes) -> "WavAudio":
        """Return a copy carrying ``data`` as its sample region."""
        if len(data) != len(self.data_bytes):
            raise ValueError("data region length must not change")
        return replace(self, data_bytes=bytes(data))


@dataclass(frozen=True)
class _Fmt:
    format_tag: int
    num_channels: int
    sample_rate: int
    bits_per_sample: int


def _read_fmt(payload: bytes) -> _Fmt:
    if len(payload) < 16:
        raise UnsupportedFormat(f"fmt chunk too small ({len(payload)} bytes)")
    tag, channels, rate, _byte_rate, _align, bits = struct.unpack_from("<HHIIHH", payload)
    return _Fmt(tag, channels, rate, bits)


def _check_fmt(fmt: _Fmt) -> None:
    if fmt.format_tag != PCM_FORMAT_TAG:
        raise UnsupportedFormat(f"format tag {fmt.format_tag:#06x} is not PCM")
    if fmt.bits_per_sample not in SUPPORTED_BITS:
        raise UnsupportedFormat(f"{fmt.bits_per_sample}-bit samples are not supported")
    if fmt.num_channels < 1 or fmt.sample_rate < 1:
        raise UnsupportedFormat("channel count and sample rate must be positive")


def _parse_compat(raw: bytes) -> WavAudio:
    if len(raw) <= COMPAT_HEADER_LEN:
        raise TooShort(f"need more than {COMPAT_HEADER_LEN} bytes, got {len(raw)}")
    # canonical layout: fmt payload starts at offset 20
    fmt = _read_fmt(raw[20:36])
    _check_fmt(fmt)
    return WavAudio(
        prefix_bytes=raw[:COMPAT_HEADER_LEN],
        data_bytes=raw[COMPAT_HEADER_LEN:],
        suffix_bytes=b"",
        bits_per_sample=fmt.bits_per_sample,
        num_channels=fmt.num_channels,
        sample_rate=fmt.sample_rate,
    )


def iter_chunks(raw: bytes):
    """Yield ``(chunk_id, payload_start, payload_len)`` for each top-level chunk.

    The length is clamped to the bytes actually present so truncated files
    still parse.
    """
    pos = 12
    while pos + 8 <= len(raw):
        cid = raw[pos:pos + 4]
        (size,) = struct.unpack_from("<I", raw, pos + 4)
        start = pos + 8
        size = min(size, len(raw) - start)
        yield cid, start, size
        pos = start + size + (size & 1)


def _parse_riff(raw: bytes) -> WavAudio:
    if len(raw) < 12 or raw[:4] != b"RIFF" or raw[8:12] != b"WAVE":
        raise NotRiff("missing RIFF/WAVE magic")
    fmt = None
    for cid, start, size in iter_chunks(raw):
        if cid == b"fmt ":
            fmt = _read_fmt(raw[start:start + size])
        elif cid == b"data":
            if fmt is None:
                raise UnsupportedFormat("data chunk precedes fmt chunk")
            _check_fmt(fmt)
            return WavAudio(
                prefix_bytes=raw[:start],
                data_bytes=raw[start:start + size],
                suffix_bytes=raw[start + size:],
                bits_per_sample=fmt.bits_per_sample,
                num_channels=fmt.num_channels,
                sample_rate=fmt.sample_rate,
            )
    raise NoDataChunk("no data chunk found")


def parse_wav(raw: bytes, mode: HeaderMode = HeaderMode.RIFF_CHUNKS) -> WavAudio:
    raw = bytes(raw)
    if mode is HeaderMode.COMPAT44:
        return _parse_compat(raw)
    return _parse_riff(raw)


def serialize_wav(audio: WavAudio) -> bytes:
    return audio.prefix_bytes + audio.data_bytes + audio.suffix_bytes


def read_wav(path, mode: HeaderMode = HeaderMode.RIFF_CHUNKS) -> WavAudio:
    with open(path, "rb") as fh:
        return parse_wav(fh.read(), mode)


def build_wav(
    data: bytes,
    bits_per_sample: int = 16,
    num_channels: int = 1,
    sample_rate: int = 44100,
    extra_chunks: tuple = (),
    trailing_chunks: tuple = (),
) -> bytes:
    """Assemble a PCM WAV file.

    ``extra_chunks`` are ``(id, payload)`` pairs placed between ``fmt `` and
    ``data``; ``trailing_chunks`` go after ``data``. With neither, the
    result is the canonical 44-byte-header layout.
    """

    def chunk(cid: bytes, payload: bytes) -> bytes:
        pad = b"\x00" if len(payload) & 1 else b""
        return cid + struct.pack("<I", len(payload)) + payload + pad

    block_align = num_channels * bits_per_sample // 8
    fmt = struct.pack(
        "<HHIIHH",
        PCM_FORMAT_TAG,
        num_channels,
        sample_rate,
        sample_rate * block_align,
        block_align,
        bits_per_sample,
    )
    body = chunk(b"fmt ", fmt)
    body += b"".join(chunk(cid, p) for cid, p in extra_chunks)
    body += chunk(b"data", bytes(data))
    body += b"".join(chunk(cid, p) for cid, p in trailing_chunks)
    return b"RIFF" + struct.pack("<I", 4 + len(body)) + b"WAVE" + body
