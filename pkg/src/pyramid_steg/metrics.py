"""Quality measures for cover/stego pairs.

MSE is computed on amplitudes normalized to [0, 1]. PSNR is reported two
ways: ``psnr_eq2`` uses a peak of 255 un-squared, the variant used in the
original evaluation, and ``psnr_standard`` uses the conventional 255**2.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import EmptySignal, FrameTooShort, LengthMismatch, ZeroCover

PEAK = 255.0
DEFAULT_FRAME_LEN = 256
IDENTICAL = "identical"


def normalized_samples(data: bytes, bits_per_sample: int) -> np.ndarray:
    """Decode PCM bytes to amplitudes in [0, 1].

    8-bit samples are unsigned; 16-bit samples are signed little-endian and
    are offset by 32768 before scaling. A dangling odd byte is ignored.
    """
    if bits_per_sample == 8:
        return np.frombuffer(data, dtype=np.uint8).astype(np.float64) / 255.0
    if bits_per_sample == 16:
        n = len(data) // 2
        s = np.frombuffer(data[: 2 * n], dtype="<i2").astype(np.float64)
        return (s + 32768.0) / 65535.0
    raise ValueError(f"unsupported sample width {bits_per_sample}")


def centered_samples(data: bytes, bits_per_sample: int) -> np.ndarray:
    """Decode PCM bytes to signed integers centred on zero."""
    if bits_per_sample == 8:
        return np.frombuffer(data, dtype=np.uint8).astype(np.int32) - 128
    if bits_per_sample == 16:
        n = len(data) // 2
        return np.frombuffer(data[: 2 * n], dtype="<i2").astype(np.int32)
    raise ValueError(f"unsupported sample width {bits_per_sample}")


def mse(x, y) -> float:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise LengthMismatch(f"signal lengths differ: {x.size} vs {y.size}")
    if x.size == 0:
        raise EmptySignal("cannot compute MSE of an empty signal")
    d = x - y
    return float(np.mean(d * d))


def psnr_eq2(mse_value: float) -> float:
    """``10 log10(255 / mse)``; +inf when the signals are identical."""
    if mse_value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK / mse_value)


def psnr_standard(mse_value: float) -> float:
    if mse_value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse_value)


psnr = psnr_eq2


def zcr(x, frame_len: int = DEFAULT_FRAME_LEN) -> np.ndarray:
    """Zero-crossing rate per frame, with sgn(0) taken as +1.

    Each full frame of N samples scores the sum of |sgn x[n] - sgn x[n-1]|
    over its N-1 interior steps, divided by 2N. A trailing partial frame is
    dropped.
    """
    if frame_len < 2:
        raise FrameTooShort(f"frame length must be at least 2, got {frame_len}")
    x = np.asarray(x)
    n_frames = x.size // frame_len
    if n_frames == 0:
        return np.zeros(0)
    frames = x[: n_frames * frame_len].reshape(n_frames, frame_len)
    sgn = np.where(frames >= 0, 1, -1)
    changes = np.abs(np.diff(sgn, axis=1)).sum(axis=1)
    return changes / (2.0 * frame_len)


def amplitude_histogram(data) -> np.ndarray:
    return np.bincount(np.frombuffer(bytes(data), dtype=np.uint8), minlength=256)


def payload_percent(secret_bytes: int, cover_bytes: int) -> float:
    if cover_bytes <= 0:
        raise ZeroCover("cover size must be positive")
    return 100.0 * secret_bytes / cover_bytes


@dataclass
class QualityReport:
    mse: float
    psnr_eq2_db: float
    psnr_standard_db: float
    payload_percent: float
    zcr_frames: list = field(default_factory=list)
    amplitude_histogram: list = field(default_factory=list)
    cover_zcr_frames: list = field(default_factory=list)
    cover_amplitude_histogram: list = field(default_factory=list)
    secret_bytes: int = 0
    cover_file_bytes: int = 0
    bits_per_sample: int = 16
    frame_len: int = DEFAULT_FRAME_LEN

    @property
    def identical(self) -> bool:
        return self.mse == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("psnr_eq2_db", "psnr_standard_db"):
            if math.isinf(d[key]):
                d[key] = IDENTICAL
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def summary_lines(self) -> list[str]:
        def db(v):
            return IDENTICAL if math.isinf(v) else f"{v:.3f} dB"

        return [
            f"MSE:            {self.mse:.6e}",
            f"PSNR (eq2):     {db(self.psnr_eq2_db)}",
            f"PSNR (255^2):   {db(self.psnr_standard_db)}",
            f"Payload:        {self.payload_percent:.2f} % "
            f"({self.secret_bytes} of {self.cover_file_bytes} bytes)",
        ]


def analyze(cover, stego, secret_bytes: int = 0, cover_file_bytes: int | None = None,
            frame_len: int = DEFAULT_FRAME_LEN) -> QualityReport:
    """Build a report for two parsed WAV files with matching layouts."""
    if cover.bits_per_sample != stego.bits_per_sample:
        raise LengthMismatch("cover and stego sample widths differ")
    bits = cover.bits_per_sample
    m = mse(normalized_samples(cover.data_bytes, bits),
            normalized_samples(stego.data_bytes, bits))
    if cover_file_bytes is None:
        cover_file_bytes = len(cover.prefix_bytes) + len(cover.data_bytes) + len(cover.suffix_bytes)
    return QualityReport(
        mse=m,
        psnr_eq2_db=psnr_eq2(m),
        psnr_standard_db=psnr_standard(m),
        payload_percent=payload_percent(secret_bytes, cover_file_bytes),
        zcr_frames=zcr(centered_samples(stego.data_bytes, bits), frame_len).tolist(),
        amplitude_histogram=amplitude_histogram(stego.data_bytes).tolist(),
        cover_zcr_frames=zcr(centered_samples(cover.data_bytes, bits), frame_len).tolist(),
        cover_amplitude_histogram=amplitude_histogram(cover.data_bytes).tolist(),
        secret_bytes=secret_bytes,
        cover_file_bytes=cover_file_bytes,
        bits_per_sample=bits,
        frame_len=frame_len,
    )


def histogram_csv(hist) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["value", "count"])
    w.writerows((v, int(c)) for v, c in enumerate(hist))
    return buf.getvalue()


def zcr_csv(values) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["frame_index", "zcr"])
    w.writerows((i, repr(float(z))) for i, z in enumerate(values))
    return buf.getvalue()
