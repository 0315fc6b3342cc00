"""Exact density-matrix oracle for two-qubit and two-pair states.

This module is the independent ground truth behind the analytic
purification formulas: it builds the full 16x16 state of two shared pairs,
runs one parity-check block gate-by-gate, and post-selects on coincident
measurement outcomes.  Everything is dense complex linear algebra; the
largest object is 16x16, so clarity wins over speed throughout.

The parity-check block targets phase disagreements, matching the
rank-2 input family ``F*|phi+><phi+| + (1-F)*|phi-><phi-|``: each party
conjugates into the Hadamard frame (phase flips become bit flips), applies
the shared-pair CNOT with the kept pair as control, measures the sacrificed
pair in the computational basis, and keeps the other pair only when the two
outcomes agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

HERMITIAN_ATOL = 1e-12
TRACE_ATOL = 1e-12
PSD_EIG_FLOOR = -1e-10
_NULL_EVENT_TOL = 1e-15

_SQRT_HALF = math.sqrt(0.5)

#: Columns are the Bell states (phi+, phi-, psi+, psi-) in the computational
#: basis |00>,|01>,|10>,|11>.
BELL_BASIS = np.array(
    [
        [_SQRT_HALF, _SQRT_HALF, 0.0, 0.0],
        [0.0, 0.0, _SQRT_HALF, _SQRT_HALF],
        [0.0, 0.0, _SQRT_HALF, -_SQRT_HALF],
        [_SQRT_HALF, -_SQRT_HALF, 0.0, 0.0],
    ],
    dtype=np.complex128,
)

BELL_LABELS = ("phi_plus", "phi_minus", "psi_plus", "psi_minus")


def _bell_basis_self_check() -> None:
    # Guards against a silent sign-convention slip in the constants above.
    deviation = np.abs(BELL_BASIS.conj().T @ BELL_BASIS - np.eye(4)).max()
    if deviation > 1e-14:
        raise RuntimeError(f"Bell change-of-basis matrix is not unitary ({deviation})")


_bell_basis_self_check()


@dataclass(frozen=True)
class DensityMatrix:
    """A validated quantum state: Hermitian, unit trace, positive semidefinite."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError(f"density matrix must be square, got shape {m.shape}")
        dim = m.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise DomainError(f"dimension must be a power of two >= 2, got {dim}")
        if np.abs(m - m.conj().T).max() > HERMITIAN_ATOL:
            raise DomainError("density matrix is not Hermitian")
        if abs(m.trace() - 1.0) > TRACE_ATOL:
            raise DomainError(f"density matrix trace is {m.trace()}, expected 1")
        if float(np.linalg.eigvalsh(m).min()) < PSD_EIG_FLOOR:
            raise DomainError("density matrix is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class BellDiagonal:
    """A two-qubit state diagonal in the Bell basis.

    ``coefficients`` are the weights on (phi+, phi-, psi+, psi-); they must
    be non-negative and sum to one within 1e-12.
    """

    coefficients: tuple[float, float, float, float]

    def __post_init__(self) -> None:
        c = tuple(float(x) for x in self.coefficients)
        if len(c) != 4:
            raise DomainError("BellDiagonal needs exactly 4 coefficients")
        if any(not math.isfinite(x) or x < -1e-12 for x in c):
            raise DomainError(f"coefficients must be non-negative, got {c}")
        if abs(sum(c) - 1.0) > 1e-12:
            raise DomainError(f"coefficients must sum to 1, got sum {sum(c)}")
        object.__setattr__(self, "coefficients", c)

    @property
    def fidelity_phi_plus(self) -> float:
        """Overlap with the phi+ target, i.e. the first coefficient."""
        return self.coefficients[0]

    def to_density_matrix(self) -> DensityMatrix:
        m = BELL_BASIS @ np.diag(np.clip(self.coefficients, 0.0, None)) @ BELL_BASIS.conj().T
        return DensityMatrix(m)


def make_input_state(F: float) -> BellDiagonal:
    """Rank-2 downlink noise model: weight F on phi+, 1-F on phi-."""
    if not 0.0 <= F <= 1.0:
        raise DomainError(f"fidelity must be in [0, 1], got {F}")
    return BellDiagonal((F, 1.0 - F, 0.0, 0.0))


def _clip_noise(vals: np.ndarray) -> np.ndarray:
    # Square roots amplify rounding noise around zero eigenvalues, so clamp
    # everything below the float64 resolution limit for unit-scale states.
    floor = vals.size * np.finfo(float).eps * max(float(vals.max(initial=0.0)), 1.0)
    out = vals.copy()
    out[out < floor] = 0.0
    return out


def _sqrtm_psd(m: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(m)
    vals = _clip_noise(vals)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """State fidelity ``(Tr sqrt(sqrt(sigma) rho sqrt(sigma)))**2``.

    Reduces to ``<psi|rho|psi>`` when ``sigma`` is the pure state
    ``|psi><psi|``; symmetric in its arguments.
    """
    if rho.dim != sigma.dim:
        raise DomainError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    s = _sqrtm_psd(sigma.matrix)
    inner = s @ rho.matrix @ s
    vals = np.linalg.eigvalsh((inner + inner.conj().T) / 2.0)
    root_sum = np.sqrt(_clip_noise(vals)).sum()
    return float(min(1.0, root_sum * root_sum))


# --------------------------------------------------------------------------
# Two-pair parity-check block
# --------------------------------------------------------------------------

_H2 = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) * _SQRT_HALF


def _single_qubit(n_qubits: int, qubit: int, gate: np.ndarray) -> np.ndarray:
    op = np.array([[1.0]], dtype=np.complex128)
    for q in range(n_qubits):
        op = np.kron(op, gate if q == qubit else np.eye(2, dtype=np.complex128))
    return op


def _cnot(n_qubits: int, control: int, target: int) -> np.ndarray:
    dim = 2**n_qubits
    op = np.zeros((dim, dim), dtype=np.complex128)
    for idx in range(dim):
        bits = [(idx >> (n_qubits - 1 - q)) & 1 for q in range(n_qubits)]
        out = bits.copy()
        out[target] ^= bits[control]
        jdx = 0
        for b in out:
            jdx = (jdx << 1) | b
        op[jdx, idx] = 1.0
    return op


# Qubit order (0..3) = (Alice-kept, Bob-kept, Alice-sacrificed, Bob-sacrificed).
_H_ALL = (
    _single_qubit(4, 0, _H2)
    @ _single_qubit(4, 1, _H2)
    @ _single_qubit(4, 2, _H2)
    @ _single_qubit(4, 3, _H2)
)
_H_KEPT = _single_qubit(4, 0, _H2) @ _single_qubit(4, 1, _H2)
_BLOCK_UNITARY = _H_KEPT @ _cnot(4, 1, 3) @ _cnot(4, 0, 2) @ _H_ALL


def parity_check_block(a: BellDiagonal, b: BellDiagonal) -> tuple[float, BellDiagonal]:
    """Run one 2->1 purification block exactly.

    Pair ``a`` is kept, pair ``b`` is measured.  Returns the coincidence
    (success) probability and the normalized surviving pair expressed in
    the Bell-diagonal basis.  Raises when the post-selected event has
    probability below 1e-15.
    """
    rho = np.kron(a.to_density_matrix().matrix, b.to_density_matrix().matrix)
    rho = _BLOCK_UNITARY @ rho @ _BLOCK_UNITARY.conj().T

    # Rows/columns factor as (kept-pair index) * 4 + (measured-pair index);
    # coincident outcomes on the measured pair are indices 0 (00) and 3 (11).
    blocks = rho.reshape(4, 4, 4, 4)
    kept = blocks[:, 0, :, 0] + blocks[:, 3, :, 3]
    success = float(kept.trace().real)
    if success < _NULL_EVENT_TOL:
        raise DomainError(
            f"post-selection probability {success} is below {_NULL_EVENT_TOL}"
        )
    kept = kept / success

    in_bell_basis = BELL_BASIS.conj().T @ kept @ BELL_BASIS
    off_diagonal = np.abs(in_bell_basis - np.diag(np.diag(in_bell_basis))).max()
    if off_diagonal > 1e-10:
        raise DomainError(
            f"surviving state is not Bell diagonal (off-diagonal {off_diagonal})"
        )
    coeffs = np.clip(np.diag(in_bell_basis).real, 0.0, None)
    coeffs = coeffs / coeffs.sum()
    return success, BellDiagonal(tuple(coeffs))
