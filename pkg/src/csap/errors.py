"""Exception types shared across the package."""


class CsapError(Exception):
    """Base class for every error raised by this package."""


# --- audio I/O and amplitude codec

class UnsupportedFormat(CsapError):
    """WAV file is not mono PCM at a supported bit depth."""


class SampleRateMismatch(CsapError):
    """WAV sample rate differs from the required 8000 Hz."""


class MalformedContainer(CsapError):
    """RIFF/WAVE container is structurally broken."""


class IoFailure(CsapError):
    """Underlying file write failed."""


class EmptySignal(CsapError):
    """Operation needs at least one sample."""


class OutOfRange(CsapError):
    """Amplitude outside [-1, +1] beyond the permitted slack."""


# --- dimensions and layouts

class InvalidDimension(CsapError):
    """Dimension argument out of the operation's domain."""


class DimensionMismatch(CsapError):
    """Operands have incompatible lengths."""


class LayoutMismatch(CsapError):
    """Data does not fit the packets-per-block x samples-per-packet layout."""


class DuplicateBlockIndex(CsapError):
    """The same sub-block index appears twice."""


# --- wire format and channel

class BadMagic(CsapError):
    """Packet does not start with the CSAP magic bytes."""


class UnsupportedVersion(CsapError):
    """Packet version or reserved framing byte is not supported."""


class TruncatedPacket(CsapError):
    """Packet byte length disagrees with its declared payload length."""


class IndexOutOfRange(CsapError):
    """packet_index is not below packets_per_block."""


class WrongBlockSize(CsapError):
    """apply_loss needs exactly the block's full packet set."""


class InconsistentHeaders(CsapError):
    """Packets of one block disagree on layout or permutation seed."""


# --- recovery

class EmptyMask(CsapError):
    """No received samples to build a sensing operator from."""


class EmptySystem(CsapError):
    """Solver invoked on a system with zero measurements."""


class DidNotConverge(CsapError):
    """Solver exhausted its iteration budget with an infeasible iterate."""


class TooLarge(CsapError):
    """Instance exceeds the exact oracle's combinatorial guards."""


class InfeasibleSystem(CsapError):
    """No candidate support solves the measurement equations."""


# --- metrics and reporting

class DegenerateInput(CsapError):
    """Correlation undefined (constant input sequence)."""


class EmptyInput(CsapError):
    """Summary requested over zero results."""
