"""Sparse frame recovery from masked samples.

Measuring a frame at its received positions while modelling it in the DCT
coefficient domain gives the system A x = b where A keeps the rows of the
DCT synthesis basis at those positions. Because the basis is orthogonal,
A A^T = I, so the Euclidean projection onto {x : A x = b} is the
closed-form x + A^T (b - A x), and applying A or A^T costs one fast
transform each.

recover_l1 solves   min ||x||_1  s.t.  A x = b   by ADMM (Douglas-Rachford
splitting of the feasibility indicator and the L1 term): project, then
soft-threshold, then a dual update, with over-relaxation and
residual-balanced penalty adaptation. The iterate returned is the
projected one, so it is feasible to machine precision regardless of how
early the iteration stops. recover_l2 returns the minimum-energy solution
A^T b, which coincides with zero-filling the missing samples.
oracle_l1_small certifies the solver on small instances by exact support
enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    DidNotConverge,
    DimensionMismatch,
    EmptyMask,
    EmptySystem,
    InfeasibleSystem,
    InvalidDimension,
    TooLarge,
)
from .interleave import MaskedFrame
from .transform import DctBasis, fast_analyze, fast_synthesize

ORACLE_MAX_N = 14
ORACLE_MAX_M = 10


class SolverStatus(str, Enum):
    CONVERGED = "converged"
    MAX_ITER = "max_iter"
    DEGENERATE = "degenerate"


@dataclass(eq=False)
class SensingSet:
    """Received-sample positions: strictly increasing indices into 0..n-1."""

    n: int
    indices: np.ndarray

    def __post_init__(self) -> None:
        self.indices = np.asarray(self.indices, dtype=np.int64)
        if self.indices.size and (
            np.any(np.diff(self.indices) <= 0)
            or self.indices[0] < 0
            or self.indices[-1] >= self.n
        ):
            raise InvalidDimension("indices must be strictly increasing within 0..n-1")

    @property
    def m(self) -> int:
        return self.indices.size


@dataclass(eq=False)
class SensingOperator:
    """Row-selected basis A (m x n) together with the measurements b.

    A is materialized lazily from the stored basis; the solvers apply it
    through fast transforms instead.
    """

    sensing: SensingSet
    b: np.ndarray
    basis: DctBasis
    _a: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.b = np.asarray(self.b, dtype=np.float64)
        if self.b.shape != (self.sensing.m,):
            raise DimensionMismatch(f"b has length {self.b.size}, expected {self.sensing.m}")
        if self.sensing.n != self.basis.n:
            raise DimensionMismatch(
                f"sensing dimension {self.sensing.n} != basis dimension {self.basis.n}"
            )

    @property
    def n(self) -> int:
        return self.sensing.n

    @property
    def m(self) -> int:
        return self.sensing.m

    @property
    def A(self) -> np.ndarray:
        if self._a is None:
            self._a = self.basis.matrix[self.sensing.indices]
        return self._a

    def apply(self, x: np.ndarray) -> np.ndarray:
        """A x: synthesize, then gather the received positions."""
        return fast_synthesize(x)[self.sensing.indices]

    def apply_t(self, w: np.ndarray) -> np.ndarray:
        """A^T w: scatter to the received positions, then analyze."""
        full = np.zeros(self.n)
        full[self.sensing.indices] = w
        return fast_analyze(full)


@dataclass(frozen=True)
class SolverConfig:
    """L1 solver settings.

    eps_feas scales with ||b||_2 and bounds the accepted feasibility
    residual; obj_tol is the relative stopping tolerance. rho, over_relax
    and adapt_period steer the ADMM iteration (penalty start value,
    relaxation factor, and how often the penalty is rebalanced).
    """

    eps_feas: float = 1e-6
    max_iter: int = 5000
    obj_tol: float = 1e-6
    rho: float = 3.0
    over_relax: float = 1.7
    adapt_period: int = 50

    def __post_init__(self) -> None:
        if self.eps_feas < 0:
            raise InvalidDimension("eps_feas must be >= 0")
        if self.max_iter < 1 or self.obj_tol <= 0 or self.rho <= 0 or self.adapt_period < 1:
            raise InvalidDimension("solver settings must be positive")
        if not 0.0 < self.over_relax < 2.0:
            raise InvalidDimension("over_relax must lie in (0, 2)")


@dataclass(eq=False)
class RecoveryResult:
    """Solver output: coefficients, synthesized frame, and diagnostics."""

    x_star: np.ndarray
    f_star: np.ndarray
    iterations: int
    residual_l2: float
    status: SolverStatus


def build_sensing(mask: MaskedFrame, basis: DctBasis) -> SensingOperator:
    """Sensing operator whose rows are the basis rows at the received positions."""
    if len(mask) != basis.n:
        raise DimensionMismatch(f"mask length {len(mask)} != basis dimension {basis.n}")
    indices = np.flatnonzero(mask.present)
    if indices.size == 0:
        raise EmptyMask("no received samples")
    return SensingOperator(SensingSet(basis.n, indices), mask.samples[indices], basis)


def recover_l1(op: SensingOperator, cfg: SolverConfig | None = None) -> RecoveryResult:
    """Minimum-L1 coefficients consistent with the received samples."""
    cfg = cfg or SolverConfig()
    if op.m == 0:
        raise EmptySystem("no measurements")

    b_norm = float(np.linalg.norm(op.b))
    if b_norm == 0.0:
        # zero is feasible and has minimal norm
        zero = np.zeros(op.n)
        return RecoveryResult(zero, zero.copy(), 0, 0.0, SolverStatus.CONVERGED)
    if op.m == op.n:
        # the feasible set is a single point
        x = op.apply_t(op.b)
        return _finish(op, x, 0, cfg, converged=True)

    # ADMM on min ||x||_1 + I{Ax=bb} with x the projected (feasible) iterate,
    # run on bb = b/||b|| so the penalty is scale-free; x rescales linearly.
    bb = op.b / b_norm
    idx = op.sensing.indices
    scatter = np.zeros(op.n)

    def project(v: np.ndarray) -> np.ndarray:
        scatter[idx] = fast_synthesize(v)[idx] - bb
        return v - fast_analyze(scatter)

    rho = cfg.rho
    alpha = cfg.over_relax
    scatter[idx] = bb
    x = fast_analyze(scatter)  # A^T bb: feasible warm start
    z = x.copy()
    u = np.zeros(op.n)
    iterations = cfg.max_iter
    converged = False
    for it in range(1, cfg.max_iter + 1):
        x = project(z - u)
        x_relaxed = alpha * x + (1.0 - alpha) * z
        z_prev = z
        w = x_relaxed + u
        z = np.sign(w) * np.maximum(np.abs(w) - 1.0 / rho, 0.0)
        u += x_relaxed - z

        if it % 5 == 0 or it == cfg.max_iter:
            r_norm = float(np.linalg.norm(x - z))
            s_norm = rho * float(np.linalg.norm(z - z_prev))
            scale_pri = max(float(np.linalg.norm(x)), float(np.linalg.norm(z)), 1e-30)
            scale_dua = rho * max(float(np.linalg.norm(u)), 1e-30)
            if r_norm <= cfg.obj_tol * scale_pri and s_norm <= cfg.obj_tol * scale_dua:
                iterations = it
                converged = True
                break
            if it % cfg.adapt_period == 0:
                if r_norm > 10.0 * s_norm:
                    rho *= 2.0
                    u /= 2.0
                elif s_norm > 10.0 * r_norm:
                    rho /= 2.0
                    u *= 2.0

    return _finish(op, x * b_norm, iterations, cfg, converged)


def _finish(
    op: SensingOperator,
    x: np.ndarray,
    iterations: int,
    cfg: SolverConfig,
    converged: bool,
) -> RecoveryResult:
    f = fast_synthesize(x)
    residual = float(np.linalg.norm(f[op.sensing.indices] - op.b))
    if converged:
        status = SolverStatus.CONVERGED
    else:
        if residual > cfg.eps_feas * float(np.linalg.norm(op.b)):
            raise DidNotConverge(
                f"residual {residual:.3e} above tolerance after {iterations} iterations"
            )
        status = SolverStatus.MAX_ITER
    return RecoveryResult(x, f, iterations, residual, status)


def recover_l2(op: SensingOperator) -> RecoveryResult:
    """Minimum-energy solution A^T b; equals the zero-filled masked frame."""
    if op.m == 0:
        raise EmptySystem("no measurements")
    x = op.apply_t(op.b)
    f = fast_synthesize(x)
    residual = float(np.linalg.norm(f[op.sensing.indices] - op.b))
    return RecoveryResult(x, f, 0, residual, SolverStatus.CONVERGED)


def oracle_l1_small(op: SensingOperator, feas_tol: float = 1e-9) -> np.ndarray:
    """Exact minimum-L1 solution by support enumeration (small instances only).

    Some optimal solution is supported on at most m coordinates (a basic
    solution of the underlying linear program), so trying every support of
    size <= m and keeping the feasible candidate of least L1 norm yields a
    global minimizer. Guarded to n <= 14, m <= 10.
    """
    if op.n > ORACLE_MAX_N or op.m > ORACLE_MAX_M:
        raise TooLarge(f"oracle limited to n<={ORACLE_MAX_N}, m<={ORACLE_MAX_M}")
    if op.m == 0:
        raise EmptySystem("no measurements")

    A = op.A
    b = op.b
    b_scale = max(1.0, float(np.linalg.norm(b)))
    if float(np.linalg.norm(b)) <= feas_tol * b_scale:
        return np.zeros(op.n)

    best_obj = np.inf
    best: tuple[tuple[int, ...], np.ndarray] | None = None
    for size in range(1, op.m + 1):
        for support in itertools.combinations(range(op.n), size):
            a_sub = A[:, support]
            x_sub, *_ = np.linalg.lstsq(a_sub, b, rcond=None)
            if float(np.linalg.norm(a_sub @ x_sub - b)) > feas_tol * b_scale:
                continue
            obj = float(np.abs(x_sub).sum())
            if obj < best_obj:
                best_obj = obj
                best = (support, x_sub)
    if best is None:
        raise InfeasibleSystem("no support of size <= m solves the system")
    x = np.zeros(op.n)
    support, x_sub = best
    x[list(support)] = x_sub
    return x


def recover_frame(
    mask: MaskedFrame,
    basis: DctBasis,
    cfg: SolverConfig | None = None,
    method: str = "l1",
) -> tuple[np.ndarray, RecoveryResult]:
    """Recover a frame from its mask; received positions are kept verbatim.

    Returns the frame samples and the solver diagnostics. An all-absent
    mask yields silence with status DEGENERATE.
    """
    if len(mask) != basis.n:
        raise DimensionMismatch(f"mask length {len(mask)} != basis dimension {basis.n}")
    if method not in ("l1", "l2"):
        raise ValueError(f"method must be 'l1' or 'l2', got {method!r}")
    if mask.received_count == 0:
        zero = np.zeros(basis.n)
        result = RecoveryResult(zero, zero.copy(), 0, 0.0, SolverStatus.DEGENERATE)
        return np.zeros(basis.n), result

    op = build_sensing(mask, basis)
    result = recover_l1(op, cfg) if method == "l1" else recover_l2(op)
    samples = result.f_star.copy()
    samples[mask.present] = mask.samples[mask.present]  # received values are ground truth
    return samples, result
