"""Small dense complex linear algebra used throughout the toolkit.

Everything here operates on plain ``numpy`` arrays of complex numbers.
Matrices are tiny (at most a few tens of rows), so clarity and strict
validation win over performance tricks.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

HERMITICITY_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-10


class EigenSystem(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; the columns of ``eigenvectors``
    are the matching orthonormal eigenvectors.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex array without copying when possible."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {m.ndim}")
    return m


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def require_square(m: np.ndarray) -> np.ndarray:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"square matrix required, got shape {m.shape}")
    return m


def hermiticity_defect(m) -> float:
    """Largest entrywise deviation of ``m`` from its own adjoint."""
    m = require_square(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def require_hermitian(m, tol: float = HERMITICITY_TOL) -> np.ndarray:
    m = require_square(m)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian (max defect {defect:.3e} > {tol:.1e})")
    # Symmetrize to suppress rounding drift before handing to the solver.
    return (m + m.conj().T) / 2.0


def herm_eig(m, tol: float = HERMITICITY_TOL) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    The input is validated against ``tol`` and symmetrized first.  The
    reconstruction ``V diag(w) V^dag`` agrees with the input to 1e-10
    relative Frobenius norm for the matrix sizes used here.
    """
    h = require_hermitian(m, tol)
    w, v = np.linalg.eigh(h)
    return EigenSystem(w, v)


def unitary_exp(generator, theta: float) -> np.ndarray:
    """exp(i * theta * G) for a Hermitian generator G.

    Computed through the eigendecomposition of G, never a power series:
    every exponent in this project is i * angle * Hermitian, so this is
    exact up to the solver's accuracy and always returns a unitary.
    """
    w, v = herm_eig(generator)
    phases = np.exp(1j * theta * w)
    return (v * phases) @ v.conj().T


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(joint, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Trace out one factor of a bipartite matrix on C^{d0} (x) C^{d1}.

    ``keep=0`` returns the reduced matrix on the first (d0) factor,
    ``keep=1`` on the second.
    """
    d0, d1 = dims
    joint = require_square(joint)
    if joint.shape[0] != d0 * d1:
        raise ValueError(f"joint dimension {joint.shape[0]} != {d0}*{d1}")
    if keep not in (0, 1):
        raise ValueError("keep must be 0 or 1")
    t = joint.reshape(d0, d1, d0, d1)
    if keep == 0:
        return np.einsum("ikjk->ij", t)
    return np.einsum("kikj->ij", t)


def trace_distance_to_identity(u) -> float:
    """Max-entry norm of U^dag U - 1; zero for a perfect unitary."""
    u = require_square(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def require_unitary(u, tol: float = 1e-10) -> np.ndarray:
    u = require_square(u)
    defect = trace_distance_to_identity(u)
    if defect > tol:
        raise ValueError(f"matrix is not unitary (max defect {defect:.3e} > {tol:.1e})")
    return u


def is_density_matrix(rho, eig_floor: float = -1e-10, trace_tol: float = 1e-10) -> bool:
    rho = require_square(rho)
    if hermiticity_defect(rho) > 1e-10:
        return False
    if abs(np.trace(rho).real - 1.0) > trace_tol or abs(np.trace(rho).imag) > trace_tol:
        return False
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)
    return bool(w.min() >= eig_floor)
