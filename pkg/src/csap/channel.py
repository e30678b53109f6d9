"""Packet wire format, seeded loss simulation, and block reassembly.

Wire layout, all multi-byte fields big-endian:

    offset  size  field
    0       4     magic "CSAP"
    4       1     version (1)
    5       1     reserved (0)
    6       4     block_seq            frame index
    10      1     packet_index         0 .. packets_per_block-1
    11      1     packets_per_block
    12      2     payload_len          samples per packet
    14      8     perm_seed            master permutation seed
    22      L     payload              one 8-bit amplitude code per sample

Header is 22 bytes; a default packet is 22 + 160 = 182 bytes. A trace
file is just the surviving packets concatenated, ordered by
(block_seq, packet_index).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    BadMagic,
    DuplicateBlockIndex,
    InconsistentHeaders,
    IndexOutOfRange,
    LayoutMismatch,
    TruncatedPacket,
    UnsupportedVersion,
    WrongBlockSize,
)
from .rng import MASK64, SplitMix64, sample_without_replacement
from .signal_io import dequantize, quantize

MAGIC = b"CSAP"
VERSION = 1
_HEADER = struct.Struct(">4sBBIBBHQ")
HEADER_LEN = _HEADER.size  # 22


@dataclass(frozen=True)
class PacketRecord:
    """One interleaved sub-block with its routing header."""

    block_seq: int
    packet_index: int
    packets_per_block: int
    payload_len: int
    perm_seed: int
    payload: bytes

    def __post_init__(self) -> None:
        if not 0 <= self.block_seq < 2**32:
            raise IndexOutOfRange(f"block_seq {self.block_seq} outside u32")
        if not 0 <= self.packets_per_block < 2**8:
            raise IndexOutOfRange(f"packets_per_block {self.packets_per_block} outside u8")
        if not 0 <= self.packet_index < self.packets_per_block:
            raise IndexOutOfRange(
                f"packet_index {self.packet_index} not below {self.packets_per_block}"
            )
        if not 0 <= self.payload_len < 2**16:
            raise IndexOutOfRange(f"payload_len {self.payload_len} outside u16")
        if not 0 <= self.perm_seed < 2**64:
            raise IndexOutOfRange("perm_seed outside u64")
        if len(self.payload) != self.payload_len:
            raise TruncatedPacket(
                f"payload has {len(self.payload)} bytes, header says {self.payload_len}"
            )

    def amplitudes(self) -> np.ndarray:
        """Dequantized payload samples."""
        return dequantize(np.frombuffer(self.payload, dtype=np.uint8))


@dataclass(frozen=True)
class LossModel:
    """Per-block loss: either exactly loss_count packets or i.i.d. loss_prob."""

    rng_seed: int
    loss_count: int | None = None
    loss_prob: float | None = None

    def __post_init__(self) -> None:
        if (self.loss_count is None) == (self.loss_prob is None):
            raise ValueError("set exactly one of loss_count, loss_prob")
        if self.loss_count is not None and self.loss_count < 0:
            raise ValueError(f"loss_count must be >= 0, got {self.loss_count}")
        if self.loss_prob is not None and not 0.0 <= self.loss_prob <= 1.0:
            raise ValueError(f"loss_prob must be in [0, 1], got {self.loss_prob}")


@dataclass(eq=False)
class PacketTrace:
    """Ordered surviving packets; (block_seq, packet_index) pairs unique."""

    records: tuple[PacketRecord, ...]

    def __post_init__(self) -> None:
        self.records = tuple(self.records)
        keys = [(r.block_seq, r.packet_index) for r in self.records]
        if len(set(keys)) != len(keys):
            raise DuplicateBlockIndex("duplicate (block_seq, packet_index) in trace")

    def block_ids(self) -> list[int]:
        return sorted({r.block_seq for r in self.records})

    def to_file(self, path: str | Path) -> None:
        ordered = sorted(self.records, key=lambda r: (r.block_seq, r.packet_index))
        Path(path).write_bytes(b"".join(serialize(r) for r in ordered))

    @classmethod
    def from_file(cls, path: str | Path) -> "PacketTrace":
        buf = Path(path).read_bytes()
        records = []
        offset = 0
        while offset < len(buf):
            record, offset = _parse_at(buf, offset)
            records.append(record)
        return cls(tuple(records))


def packetize(
    frame_blocks: Sequence[np.ndarray],
    block_seq: int,
    perm_seed: int,
    ) -> list[PacketRecord]:
    """Quantize P equal-length sub-blocks into packets for one frame."""
    if not frame_blocks:
        raise LayoutMismatch("no sub-blocks given")
    length = len(frame_blocks[0])
    records = []
    for index, block in enumerate(frame_blocks):
        block = np.asarray(block, dtype=np.float64)
        if block.size != length:
            raise LayoutMismatch(f"sub-block {index} has {block.size} samples, expected {length}")
        records.append(
            PacketRecord(
                block_seq=block_seq,
                packet_index=index,
                packets_per_block=len(frame_blocks),
                payload_len=length,
                perm_seed=perm_seed & MASK64,
                payload=quantize(block).tobytes(),
            )
        )
    return records


def serialize(record: PacketRecord) -> bytes:
    """Record to wire bytes (22-byte header + payload)."""
    return (
        _HEADER.pack(
            MAGIC,
            VERSION,
            0,
            record.block_seq,
            record.packet_index,
            record.packets_per_block,
            record.payload_len,
            record.perm_seed,
        )
        + record.payload
    )


def parse(buf: bytes) -> PacketRecord:
    """Wire bytes to record; the buffer must hold exactly one packet."""
    record, end = _parse_at(buf, 0)
    if end != len(buf):
        raise TruncatedPacket(f"{len(buf) - end} trailing bytes after packet")
    return record


def _parse_at(buf: bytes, offset: int) -> tuple[PacketRecord, int]:
    if len(buf) - offset < HEADER_LEN:
        raise TruncatedPacket(f"{len(buf) - offset} bytes is shorter than the 22-byte header")
    magic, version, reserved, block_seq, packet_index, packets_per_block, payload_len, perm_seed = (
        _HEADER.unpack_from(buf, offset)
    )
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic!r}")
    if version != VERSION:
        raise UnsupportedVersion(f"version {version} not supported")
    if reserved != 0:
        raise UnsupportedVersion(f"reserved byte must be 0, got {reserved}")
    body_end = offset + HEADER_LEN + payload_len
    if len(buf) < body_end:
        raise TruncatedPacket(
            f"payload needs {payload_len} bytes, only {len(buf) - offset - HEADER_LEN} given"
        )
    if packet_index >= packets_per_block:
        raise IndexOutOfRange(f"packet_index {packet_index} not below {packets_per_block}")
    record = PacketRecord(
        block_seq=block_seq,
        packet_index=packet_index,
        packets_per_block=packets_per_block,
        payload_len=payload_len,
        perm_seed=perm_seed,
        payload=bytes(buf[offset + HEADER_LEN : body_end]),
    )
    return record, body_end


def apply_loss(packets: Sequence[PacketRecord], model: LossModel) -> list[PacketRecord]:
    """Delete packets of one block per the loss model; survivor order kept.

    FixedCount deletes a uniformly random k-subset (partial Fisher-Yates
    over the packet indices); Bernoulli deletes each packet independently.
    Deterministic in model.rng_seed.
    """
    if not packets:
        raise WrongBlockSize("no packets given")
    p = packets[0].packets_per_block
    if len(packets) != p:
        raise WrongBlockSize(f"got {len(packets)} packets, block declares {p}")
    if len({r.block_seq for r in packets}) != 1:
        raise WrongBlockSize("packets belong to different blocks")

    rng = SplitMix64(model.rng_seed)
    if model.loss_count is not None:
        if model.loss_count > p:
            raise WrongBlockSize(f"cannot lose {model.loss_count} of {p} packets")
        lost = set(sample_without_replacement(rng, p, model.loss_count))
        return [r for i, r in enumerate(packets) if i not in lost]
    # 53-bit uniform in [0, 1) per packet, drawn in packet order
    return [r for r in packets if (rng.next_u64() >> 11) * 2.0**-53 >= model.loss_prob]


def collect_block(
    trace: PacketTrace,
    block_seq: int,
    packets_per_block: int | None = None,
) -> list[tuple[int, np.ndarray | None]]:
    """Gather one block from a trace as P (packet_index, amplitudes|None) entries.

    Missing packet indices are inferred from the gaps. The block's packets
    must agree on layout and permutation seed. For a block absent from the
    trace entirely, P is taken from the other records (or the
    packets_per_block argument if the trace is empty).
    """
    records = sorted(
        (r for r in trace.records if r.block_seq == block_seq), key=lambda r: r.packet_index
    )
    if records:
        first = records[0]
        for r in records:
            if (
                r.packets_per_block != first.packets_per_block
                or r.payload_len != first.payload_len
                or r.perm_seed != first.perm_seed
            ):
                raise InconsistentHeaders(f"block {block_seq} packets disagree on layout or seed")
        p = first.packets_per_block
    elif trace.records:
        p = trace.records[0].packets_per_block
    elif packets_per_block is not None:
        p = packets_per_block
    else:
        raise WrongBlockSize("empty trace and no packets_per_block hint")

    by_index = {r.packet_index: r for r in records}
    return [
        (i, by_index[i].amplitudes() if i in by_index else None)
        for i in range(p)
    ]
