"""Test helpers: independent reference codec, cover generators, random tables.

The reference codec is a deliberately naive bit-at-a-time loop that shares
no code with the vectorized implementation beyond the WAV container.
"""

import struct

import numpy as np

from pyramid_steg.range_policy import RangeTable
from pyramid_steg.wav_io import build_wav

# visiting order written out by hand, not derived from the pyramid module
REF_ORDER = [0, 1, 3, 6, 10, 15, 2, 4, 7, 11, 16, 5, 8, 12, 17, 9, 13, 18, 14, 19, 20]

DEFAULT_TRIPLES = [(0, 15, 0), (16, 31, 1), (32, 63, 3), (64, 127, 2), (128, 255, 1)]


def ref_depth(b, triples):
    for lo, hi, d in triples:
        if lo <= b <= hi:
            return d
    raise AssertionError(f"{b} uncovered")


def ref_frame_bits(secret):
    framed = b"PYR1" + struct.pack("<I", len(secret)) + bytes(secret)
    return [(byte >> (7 - i)) & 1 for byte in framed for i in range(8)]


def ref_visit(n):
    for base in range(0, n - 20, 21):
        for local in REF_ORDER:
            yield base + local


def ref_write_bits(data, bits, triples):
    """Pour ``bits`` into ``data`` in visiting order; returns (bytes, bits used)."""
    out = bytearray(data)
    pos = 0
    for idx in ref_visit(len(out)):
        if pos >= len(bits):
            break
        k = ref_depth(out[idx], triples)
        for j in range(k):
            if pos >= len(bits):
                break
            shift = k - 1 - j
            out[idx] = (out[idx] & ~(1 << shift)) | (bits[pos] << shift)
            pos += 1
    return bytes(out), pos


def ref_embed(data, secret, triples):
    bits = ref_frame_bits(secret)
    out, used = ref_write_bits(data, bits, triples)
    if used < len(bits):
        raise ValueError("does not fit")
    return out


def ref_extract_bits(data, triples, n_bits):
    bits = []
    for idx in ref_visit(len(data)):
        k = ref_depth(data[idx], triples)
        for j in range(k):
            bits.append((data[idx] >> (k - 1 - j)) & 1)
            if len(bits) == n_bits:
                return bits
    return bits


def random_triples(rng):
    """Draw a random table satisfying coverage, alignment and depth bounds."""
    triples = []
    pos = 0
    while pos < 256:
        max_d = 0
        while max_d < 4 and pos % (1 << (max_d + 1)) == 0:
            max_d += 1
        d = int(rng.integers(0, max_d + 1))
        step = 1 << d
        room = (256 - pos) // step
        length = step * int(rng.integers(1, min(room, max(1, 64 // step)) + 1))
        triples.append((pos, pos + length - 1, d))
        pos += length
    return triples


def random_table(rng):
    return RangeTable.from_triples(random_triples(rng))


def uniform_bytes(rng, n):
    return rng.integers(0, 256, n, dtype=np.uint8).tobytes()


def gaussian_bytes(rng, n, sigma=32.0):
    x = np.rint(rng.normal(127.5, sigma, n))
    return np.clip(x, 0, 255).astype(np.uint8).tobytes()


def audio_like_bytes(rng, n, bits):
    """A noisy mix of tones, quantized to unsigned 8-bit or signed 16-bit PCM."""
    n_samples = n if bits == 8 else n // 2
    t = np.arange(n_samples) / 8000.0
    f = rng.uniform(80, 2000, 3)
    sig = sum(np.sin(2 * np.pi * fi * t + rng.uniform(0, 6)) for fi in f) / 3
    sig = 0.6 * sig + rng.normal(0, 0.05, n_samples)
    sig = np.clip(sig, -1, 1)
    if bits == 8:
        return np.rint(sig * 127 + 128).astype(np.uint8).tobytes()
    pcm = np.rint(sig * 32767).astype("<i2").tobytes()
    return pcm + (b"\x00" if n % 2 else b"")


def wav_bytes(data, bits=16, **kw):
    return build_wav(data, bits_per_sample=bits, **kw)
