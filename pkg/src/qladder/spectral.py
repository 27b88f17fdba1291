"""Dense exact diagonalization and spectral time evolution.

Evolution goes through the full eigendecomposition: the matrices here are
small (2N <= a few hundred) and many evaluation times are needed per
realization, so U(t) = V exp(-i L t) V^T is both exact and fastest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import Basis, BasisMismatchError, HermitianOperator, StateVector

__all__ = [
    "EigenSystem",
    "eigendecompose",
    "evolve",
    "evolve_series",
    "expectation",
    "NORM_TOL",
]

# fixed, asserted in tests, not user-configurable
NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of an operator."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    basis: Basis

    def __post_init__(self):
        for name in ("eigenvalues", "eigenvectors"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def dim(self) -> int:
        return self.eigenvalues.size


def eigendecompose(operator: HermitianOperator) -> EigenSystem:
    """Full symmetric eigendecomposition, eigenvalues sorted ascending."""
    eigenvalues, eigenvectors = np.linalg.eigh(operator.entries)
    return EigenSystem(eigenvalues, eigenvectors, operator.basis)


def _validate_input(system: EigenSystem, state: StateVector):
    if state.basis is not system.basis:
        raise BasisMismatchError(
            f"state basis {state.basis} does not match eigensystem basis {system.basis}"
        )
    if state.dim != system.dim:
        raise ValueError(f"dimension mismatch: state {state.dim}, eigensystem {system.dim}")
    if abs(state.norm_sq() - 1.0) > NORM_TOL:
        raise ValueError(f"initial state is not normalized: |psi|^2 = {state.norm_sq()!r}")


def _check_norm(amplitudes: np.ndarray):
    drift = abs(float(np.sum(np.abs(amplitudes) ** 2)) - 1.0)
    if drift > NORM_TOL:
        raise ArithmeticError(f"norm drift {drift:.3e} exceeds {NORM_TOL}")


def evolve(system: EigenSystem, psi0: StateVector, t: float) -> StateVector:
    """Apply exp(-i H t) to a normalized state."""
    _validate_input(system, psi0)
    if t == 0.0:  # exact identity, no rounding through the eigenbasis
        return StateVector(psi0.amplitudes, system.basis)
    coeffs = system.eigenvectors.T @ psi0.amplitudes
    amps = system.eigenvectors @ (np.exp(-1j * system.eigenvalues * t) * coeffs)
    _check_norm(amps)
    return StateVector(amps, system.basis)


def evolve_series(system: EigenSystem, psi0: StateVector, times) -> list[StateVector]:
    """States exp(-i H t)|psi0> on an ascending time grid.

    The projection onto the eigenbasis is done once and shared by all times.
    """
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1:
        raise ValueError("times must be a 1-d sequence")
    if times.size and np.any(np.diff(times) < 0):
        raise ValueError("times must be ascending")
    _validate_input(system, psi0)
    coeffs = system.eigenvectors.T @ psi0.amplitudes
    phases = np.exp(-1j * np.outer(system.eigenvalues, times))
    block = system.eigenvectors @ (phases * coeffs[:, None])
    states = []
    for k in range(times.size):
        if times[k] == 0.0:
            states.append(StateVector(psi0.amplitudes, system.basis))
            continue
        amps = block[:, k]
        _check_norm(amps)
        states.append(StateVector(amps, system.basis))
    return states


def expectation(operator: HermitianOperator, state: StateVector) -> float:
    """Real quadratic form <psi|H|psi>."""
    if state.basis is not operator.basis:
        raise BasisMismatchError(
            f"state basis {state.basis} does not match operator basis {operator.basis}"
        )
    return float(np.real(state.amplitudes.conj() @ (operator.entries @ state.amplitudes)))
