"""Exception hierarchy shared by every module in the package."""


class StegError(Exception):
    """Base class for all domain errors raised by pyramid_steg."""


class WavError(StegError):
    pass


class TooShort(WavError):
    pass


class NotRiff(WavError):
    pass


class NoDataChunk(WavError):
    pass


class UnsupportedFormat(WavError):
    pass


class InvalidTable(StegError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid range table: " + "; ".join(self.violations))


class CapacityExceeded(StegError):
    """The cover cannot hold the framed secret."""

    def __init__(self, required_bits: int, available_bits: int):
        self.required_bits = required_bits
        self.available_bits = available_bits
        super().__init__(
            f"secret does not fit: need {required_bits} bits, "
            f"cover provides {available_bits} bits"
        )


class BadMagic(StegError):
    pass


class Truncated(StegError):
    pass


class MetricError(StegError):
    pass


class LengthMismatch(MetricError):
    pass


class EmptySignal(MetricError):
    pass


class FrameTooShort(MetricError):
    pass


class ZeroCover(MetricError):
    pass
