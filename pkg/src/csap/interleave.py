"""Random per-frame permutation and stride interleaving, with lossy inverses.

The sender permutes a frame with a seeded random permutation and then
deals it round-robin into P sub-blocks (position j of the permuted frame
lands in sub-block j mod P). Losing one sub-block therefore erases a
random scatter of samples instead of a contiguous gap. The receiver
inverts both steps, tracking which positions were actually received.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateBlockIndex,
    InvalidDimension,
    LayoutMismatch,
)
from .rng import MASK64, shuffled_indices


@dataclass(eq=False)
class PermutationSpec:
    """A seeded permutation: pi[j] is the source index placed at position j."""

    n: int
    seed: int
    pi: np.ndarray

    def __post_init__(self) -> None:
        self.pi = np.asarray(self.pi, dtype=np.int64)
        if self.pi.shape != (self.n,):
            raise DimensionMismatch(f"pi has length {self.pi.size}, expected {self.n}")
        if not np.array_equal(np.sort(self.pi), np.arange(self.n)):
            raise InvalidDimension("pi is not a bijection on 0..n-1")


@dataclass(frozen=True)
class InterleaveLayout:
    """P sub-blocks of L samples each; P*L must equal the frame length."""

    packets_per_block: int = 4
    samples_per_packet: int = 160

    def __post_init__(self) -> None:
        if self.packets_per_block < 1 or self.samples_per_packet < 1:
            raise InvalidDimension("layout dimensions must be positive")

    @property
    def frame_len(self) -> int:
        return self.packets_per_block * self.samples_per_packet


@dataclass(eq=False)
class MaskedFrame:
    """Frame samples plus a received-position mask; absent samples are 0."""

    samples: np.ndarray
    present: np.ndarray

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=np.float64)
        self.present = np.asarray(self.present, dtype=bool)
        if self.samples.shape != self.present.shape or self.samples.ndim != 1:
            raise DimensionMismatch("samples and present mask must be equal-length 1-D")
        self.samples = np.where(self.present, self.samples, 0.0)

    @property
    def received_count(self) -> int:
        return int(self.present.sum())

    def __len__(self) -> int:
        return self.samples.size


def frame_seed(master_seed: int, frame_index: int) -> int:
    """Per-frame permutation seed: master_seed XOR frame_index (64-bit)."""
    return (master_seed ^ frame_index) & MASK64


def gen_permutation(seed: int, n: int) -> PermutationSpec:
    """Seeded Fisher-Yates permutation of 0..n-1 (see rng module for the PRNG)."""
    if n < 1:
        raise InvalidDimension(f"permutation size must be >= 1, got {n}")
    return PermutationSpec(n, seed & MASK64, np.asarray(shuffled_indices(seed, n)))


def permute(samples: np.ndarray, spec: PermutationSpec) -> np.ndarray:
    """Gather: output[j] = samples[pi[j]]."""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.shape != (spec.n,):
        raise DimensionMismatch(f"frame length {samples.size} != permutation size {spec.n}")
    return samples[spec.pi]


def depermute(value, spec: PermutationSpec):
    """Scatter back: output[pi[j]] = input[j]; masks travel with their samples."""
    if isinstance(value, MaskedFrame):
        if len(value) != spec.n:
            raise DimensionMismatch(f"frame length {len(value)} != permutation size {spec.n}")
        samples = np.empty(spec.n, dtype=np.float64)
        present = np.empty(spec.n, dtype=bool)
        samples[spec.pi] = value.samples
        present[spec.pi] = value.present
        return MaskedFrame(samples, present)
    samples = np.asarray(value, dtype=np.float64)
    if samples.shape != (spec.n,):
        raise DimensionMismatch(f"frame length {samples.size} != permutation size {spec.n}")
    out = np.empty(spec.n, dtype=np.float64)
    out[spec.pi] = samples
    return out


def interleave(samples: np.ndarray, layout: InterleaveLayout) -> list[np.ndarray]:
    """Deal a frame into P sub-blocks: block i takes positions i, i+P, i+2P, ..."""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.size != layout.frame_len:
        raise LayoutMismatch(
            f"frame length {samples.size} != {layout.packets_per_block}x{layout.samples_per_packet}"
        )
    p = layout.packets_per_block
    return [samples[i::p].copy() for i in range(p)]


def deinterleave_partial(blocks, layout: InterleaveLayout) -> MaskedFrame:
    """Scatter received sub-blocks back to their stride positions.

    blocks is a sequence of (index, sub-block or None); positions covered
    by no received sub-block are flagged absent and zero-filled.
    """
    p = layout.packets_per_block
    n = layout.frame_len
    samples = np.zeros(n, dtype=np.float64)
    present = np.zeros(n, dtype=bool)
    seen: set[int] = set()
    for index, block in blocks:
        if not 0 <= index < p:
            raise LayoutMismatch(f"sub-block index {index} outside 0..{p - 1}")
        if index in seen:
            raise DuplicateBlockIndex(f"sub-block index {index} given twice")
        seen.add(index)
        if block is None:
            continue
        block = np.asarray(block, dtype=np.float64)
        if block.size != layout.samples_per_packet:
            raise LayoutMismatch(
                f"sub-block {index} has {block.size} samples, expected {layout.samples_per_packet}"
            )
        samples[index::p] = block
        present[index::p] = True
    return MaskedFrame(samples, present)
