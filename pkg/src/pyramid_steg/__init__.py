"""Hide files in PCM WAV audio using pyramid-ordered, range-of-bytes LSB embedding."""

from .codec import (
    BitStream,
    FramedPayload,
    embed,
    embed_byte,
    embed_plain_lsb,
    extract,
    extract_plain_lsb,
)
from .errors import (
    BadMagic,
    CapacityExceeded,
    EmptySignal,
    FrameTooShort,
    InvalidTable,
    LengthMismatch,
    NoDataChunk,
    NotRiff,
    StegError,
    TooShort,
    Truncated,
    UnsupportedFormat,
    ZeroCover,
)
from .metrics import (
    QualityReport,
    amplitude_histogram,
    analyze,
    mse,
    payload_percent,
    psnr_eq2,
    psnr_standard,
    zcr,
)
from .pyramid import PyramidBlock, blocks, traversal_order
from .range_policy import (
    RangeTable,
    capacity_bits,
    classify,
    default_table,
    load_table,
    validate,
)
from .wav_io import HeaderMode, WavAudio, parse_wav, serialize_wav

__version__ = "0.1.0"
