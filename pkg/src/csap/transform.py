"""Orthonormal DCT-II sparsifying basis and sample/coefficient transforms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as _fft

from .errors import DimensionMismatch, InvalidDimension


@dataclass(eq=False)
class DctBasis:
    """Materialized orthonormal DCT-II basis; column i is basis vector psi_i.

    entry(k, 0) = 1/sqrt(n); entry(k, i) = sqrt(2/n) * cos(pi*(2k+1)*i/(2n))
    for i >= 1.
    """

    n: int
    matrix: np.ndarray


def build_dct_basis(n: int) -> DctBasis:
    if n < 1:
        raise InvalidDimension(f"basis dimension must be >= 1, got {n}")
    k = np.arange(n)[:, None]
    i = np.arange(n)[None, :]
    mat = np.sqrt(2.0 / n) * np.cos(np.pi * (2 * k + 1) * i / (2 * n))
    mat[:, 0] = 1.0 / np.sqrt(n)
    return DctBasis(n, mat)


def synthesize(x: np.ndarray, basis: DctBasis) -> np.ndarray:
    """Coefficients to samples: f = Psi x."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (basis.n,):
        raise DimensionMismatch(f"coefficient length {x.shape} != basis dimension {basis.n}")
    return basis.matrix @ x


def analyze(f: np.ndarray, basis: DctBasis) -> np.ndarray:
    """Samples to coefficients: x = Psi^T f."""
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (basis.n,):
        raise DimensionMismatch(f"sample length {f.shape} != basis dimension {basis.n}")
    return basis.matrix.T @ f


def fast_synthesize(x: np.ndarray) -> np.ndarray:
    """FFT-backed Psi x (orthonormal DCT-III); equal to synthesize() to ~1e-13."""
    return _fft.idct(x, type=2, norm="ortho")


def fast_analyze(f: np.ndarray) -> np.ndarray:
    """FFT-backed Psi^T f (orthonormal DCT-II); equal to analyze() to ~1e-13."""
    return _fft.dct(f, type=2, norm="ortho")


def coherence(n: int) -> float:
    """Largest spike-to-cosine correlation, scaled by sqrt(n).

    The sensing family here is the identity (one spike per sample), so the
    correlations are just the entries of the cosine table
    sqrt(2/n)*cos(pi*(2k+1)*i/(2n)) over all k, i in 0..n-1, taken at the
    uniform sqrt(2/n) amplitude (no separate DC normalization). The maximum
    sits in the DC column and equals sqrt(2/n) exactly, so the value is
    sqrt(2) for every n: the spike/DCT pair is as incoherent as a real
    basis pair gets.
    """
    if n < 2:
        raise InvalidDimension(f"coherence needs dimension >= 2, got {n}")
    k = np.arange(n)[:, None]
    i = np.arange(n)[None, :]
    table = np.sqrt(2.0 / n) * np.cos(np.pi * (2 * k + 1) * i / (2 * n))
    return float(np.sqrt(n) * np.abs(table).max())
