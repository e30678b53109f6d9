"""PCM audio file I/O, framing, and the 8-bit amplitude codec.

Only RIFF/WAVE containers holding mono PCM at 8000 Hz are accepted
(8-bit unsigned or 16-bit signed little-endian); anything else is
rejected rather than converted.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    EmptySignal,
    InvalidDimension,
    IoFailure,
    MalformedContainer,
    OutOfRange,
    SampleRateMismatch,
    UnsupportedFormat,
)

EXPECTED_SAMPLE_RATE = 8000
DEFAULT_FRAME_LEN = 640

# tolerated float fuzz above |amplitude| = 1 before quantize() raises
RANGE_SLACK = 1e-9

_WAVE_FORMAT_PCM = 1


@dataclass(eq=False)
class AudioSignal:
    """Mono audio as float amplitudes in [-1, +1]."""

    samples: np.ndarray
    sample_rate_hz: int = EXPECTED_SAMPLE_RATE

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1:
            raise InvalidDimension("samples must be a 1-D sequence")
        if self.sample_rate_hz <= 0:
            raise InvalidDimension(f"sample rate must be positive, got {self.sample_rate_hz}")
        if self.samples.size and float(np.abs(self.samples).max()) > 1.0 + RANGE_SLACK:
            raise OutOfRange("amplitudes must lie in [-1, +1]")

    def __len__(self) -> int:
        return self.samples.size


@dataclass(eq=False)
class Frame:
    """One fixed-length slice of a signal; the unit the recovery operates on."""

    frame_index: int
    samples: np.ndarray

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.frame_index < 0:
            raise InvalidDimension(f"frame_index must be >= 0, got {self.frame_index}")

    def __len__(self) -> int:
        return self.samples.size


def load_wav(path: str | Path) -> AudioSignal:
    """Read a mono PCM WAV file into an AudioSignal.

    16-bit samples map to value/32768, 8-bit offset-binary codes to
    (code-128)/128; the sample count is preserved exactly.

    Raises:
        MalformedContainer: broken RIFF structure or missing chunks.
        UnsupportedFormat: compressed codec, stereo, or other bit depth.
        SampleRateMismatch: rate other than 8000 Hz (no resampling).
    """
    raw = Path(path).read_bytes()
    if len(raw) < 12 or raw[:4] != b"RIFF" or raw[8:12] != b"WAVE":
        raise MalformedContainer(f"{path}: not a RIFF/WAVE file")

    fmt_chunk: bytes | None = None
    data_chunk: bytes | None = None
    offset = 12
    while offset + 8 <= len(raw):
        chunk_id = raw[offset : offset + 4]
        (size,) = struct.unpack_from("<I", raw, offset + 4)
        body = raw[offset + 8 : offset + 8 + size]
        if len(body) < size:
            raise MalformedContainer(f"{path}: truncated {chunk_id!r} chunk")
        if chunk_id == b"fmt " and fmt_chunk is None:
            fmt_chunk = body
        elif chunk_id == b"data" and data_chunk is None:
            data_chunk = body
        offset += 8 + size + (size & 1)  # chunks are word-aligned

    if fmt_chunk is None or data_chunk is None:
        raise MalformedContainer(f"{path}: missing fmt or data chunk")
    if len(fmt_chunk) < 16:
        raise MalformedContainer(f"{path}: fmt chunk too short")

    audio_format, channels, rate, _, _, bits = struct.unpack_from("<HHIIHH", fmt_chunk)
    if audio_format != _WAVE_FORMAT_PCM:
        raise UnsupportedFormat(f"{path}: non-PCM format tag {audio_format}")
    if channels != 1:
        raise UnsupportedFormat(f"{path}: {channels} channels, only mono is supported")
    if bits not in (8, 16):
        raise UnsupportedFormat(f"{path}: {bits}-bit depth, only 8 or 16")
    if rate != EXPECTED_SAMPLE_RATE:
        raise SampleRateMismatch(f"{path}: {rate} Hz, required {EXPECTED_SAMPLE_RATE} Hz")

    if bits == 16:
        if len(data_chunk) % 2:
            raise MalformedContainer(f"{path}: odd data size for 16-bit samples")
        samples = np.frombuffer(data_chunk, dtype="<i2").astype(np.float64) / 32768.0
    else:
        samples = (np.frombuffer(data_chunk, dtype=np.uint8).astype(np.float64) - 128.0) / 128.0
    return AudioSignal(samples, int(rate))


def write_wav(signal: AudioSignal, path: str | Path, bit_depth: int = 16) -> None:
    """Write an AudioSignal as mono PCM WAV at the given bit depth (8 or 16).

    Reading the file back differs from the input by at most one
    quantization step per sample at the chosen depth.
    """
    if bit_depth not in (8, 16):
        raise UnsupportedFormat(f"bit depth must be 8 or 16, got {bit_depth}")
    a = signal.samples
    if bit_depth == 16:
        codes = np.clip(np.rint(a * 32768.0), -32768, 32767).astype("<i2")
    else:
        codes = np.clip(np.rint(a * 128.0) + 128.0, 0, 255).astype(np.uint8)
    payload = codes.tobytes()

    block_align = bit_depth // 8
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        4 + 24 + 8 + len(payload) + (len(payload) & 1),
        b"WAVE",
        b"fmt ",
        16,
        _WAVE_FORMAT_PCM,
        1,
        signal.sample_rate_hz,
        signal.sample_rate_hz * block_align,
        block_align,
        bit_depth,
        b"data",
        len(payload),
    )
    pad = b"\x00" if len(payload) & 1 else b""
    try:
        Path(path).write_bytes(header + payload + pad)
    except OSError as exc:
        raise IoFailure(f"could not write {path}: {exc}") from exc


def frame_signal(signal: AudioSignal, n: int = DEFAULT_FRAME_LEN) -> list[Frame]:
    """Slice a signal into ceil(len/n) frames of n samples, zero-padding the last."""
    if n <= 0:
        raise InvalidDimension(f"frame length must be positive, got {n}")
    total = len(signal)
    if total == 0:
        raise EmptySignal("cannot frame an empty signal")
    count = math.ceil(total / n)
    padded = np.zeros(count * n, dtype=np.float64)
    padded[:total] = signal.samples
    return [Frame(i, padded[i * n : (i + 1) * n].copy()) for i in range(count)]


def quantize(amplitudes):
    """Map amplitudes in [-1, +1] to 8-bit codes.

    code = clamp(round((a+1)/2 * 255), 0, 255), rounding half away from
    zero. Scalar in, int out; array in, uint8 array out.
    """
    a = np.asarray(amplitudes, dtype=np.float64)
    if a.size and float(np.abs(a).max()) > 1.0 + RANGE_SLACK:
        raise OutOfRange("amplitude outside [-1, +1]")
    a = np.clip(a, -1.0, 1.0)
    # the argument is >= 0, so floor(v + 0.5) rounds half away from zero
    codes = np.clip(np.floor((a + 1.0) / 2.0 * 255.0 + 0.5), 0, 255).astype(np.uint8)
    if codes.ndim == 0:
        return int(codes)
    return codes


def dequantize(codes):
    """Map 8-bit codes back to amplitudes: code/255 * 2 - 1."""
    c = np.asarray(codes)
    if c.size and (np.any(c < 0) or np.any(c > 255)):
        raise OutOfRange("quantization codes must lie in [0, 255]")
    a = c.astype(np.float64) / 255.0 * 2.0 - 1.0
    if a.ndim == 0:
        return float(a)
    return a
