"""Kraus channels: depolarization, dephasing, amplitude damping, unitaries.

All constructors return :class:`KrausChannel` values whose operators satisfy
the completeness relation sum_l K_l^dag K_l = 1.  Channel application and
fixed-order (definite causal order) composition live here too; the coherent
superposition of orders is in :mod:`icoswitch.switch`.

Order convention: every public interface takes channels in *application
order*, first-applied first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .linalg import as_matrix, dagger, require_square, require_unitary, unitary_exp

COMPLETENESS_TOL = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class Axis:
    """Unit vector on the sphere given by polar and azimuthal angles."""

    polar: float
    azimuth: float

    def __post_init__(self):
        if not 0.0 <= self.polar <= np.pi:
            raise ValueError(f"polar angle {self.polar} outside [0, pi]")
        if not 0.0 <= self.azimuth < 2 * np.pi:
            raise ValueError(f"azimuth {self.azimuth} outside [0, 2*pi)")

    @property
    def cartesian(self) -> np.ndarray:
        st = np.sin(self.polar)
        return np.array([st * np.cos(self.azimuth), st * np.sin(self.azimuth), np.cos(self.polar)])


AXIS_X = Axis(np.pi / 2, 0.0)
AXIS_Y = Axis(np.pi / 2, np.pi / 2)
AXIS_Z = Axis(0.0, 0.0)


def pauli_along(axis: Axis) -> np.ndarray:
    n = axis.cartesian
    return n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z


@dataclass(frozen=True)
class KrausChannel:
    """A completely positive trace-preserving map as a finite Kraus family."""

    kraus_ops: tuple[np.ndarray, ...]
    label: str = ""

    def __post_init__(self):
        if not self.kraus_ops:
            raise ValueError("channel needs at least one Kraus operator")
        ops = tuple(require_square(k) for k in self.kraus_ops)
        d = ops[0].shape[0]
        if any(k.shape[0] != d for k in ops):
            raise ValueError("all Kraus operators must share one dimension")
        object.__setattr__(self, "kraus_ops", ops)
        total = sum(dagger(k) @ k for k in ops)
        defect = np.max(np.abs(total - np.eye(d)))
        if defect > COMPLETENESS_TOL:
            raise ValueError(
                f"Kraus completeness violated for {self.label or 'channel'}: "
                f"max defect {defect:.3e}"
            )

    @property
    def dim(self) -> int:
        return self.kraus_ops[0].shape[0]

    def __len__(self) -> int:
        return len(self.kraus_ops)

    def apply(self, rho) -> np.ndarray:
        rho = require_square(as_matrix(rho))
        if rho.shape[0] != self.dim:
            raise ValueError(f"state dim {rho.shape[0]} != channel dim {self.dim}")
        out = np.zeros_like(rho)
        for k in self.kraus_ops:
            out += k @ rho @ dagger(k)
        return out


def _check_probability(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    return float(p)


def unitary_channel(u, label: str = "U") -> KrausChannel:
    return KrausChannel((require_unitary(u),), label)


def spin_matrices(two_j: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Angular momentum matrices (Jx, Jy, Jz) for spin two_j/2.

    Basis ordering is descending magnetic quantum number, so Jz is
    diag(j, j-1, ..., -j).  For two_j = 1 these are the Pauli matrices
    over two.
    """
    if two_j < 1:
        raise ValueError("two_j must be >= 1")
    j = two_j / 2.0
    m = j - np.arange(two_j + 1)
    jz = np.diag(m).astype(complex)
    # J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>; row index is m+1 in
    # descending order, i.e. one above the column.
    ladder = np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1))
    jp = np.diag(ladder, k=1).astype(complex)
    jm = jp.conj().T
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2j
    return jx, jy, jz


def su2_unitary(theta: float, axis: Axis, two_j: int = 1) -> np.ndarray:
    """exp(i * theta * n.J) in the spin-(two_j/2) representation.

    For two_j = 1 and the z axis this is diag(e^{i theta/2}, e^{-i theta/2}).
    """
    jx, jy, jz = spin_matrices(two_j)
    n = axis.cartesian
    return unitary_exp(n[0] * jx + n[1] * jy + n[2] * jz, theta)


def depolarizing_channel(d: int, p: float) -> KrausChannel:
    """rho -> p*rho + (1-p) * 1/d via d^2+1 Kraus operators."""
    p = _check_probability(p)
    if d < 2:
        raise ValueError("dimension must be >= 2")
    ops = [np.sqrt(p) * np.eye(d, dtype=complex)]
    w = np.sqrt((1.0 - p) / d)
    for k in range(d):
        for l in range(d):
            op = np.zeros((d, d), dtype=complex)
            op[k, l] = w
            ops.append(op)
    return KrausChannel(tuple(ops), f"depol(d={d},p={p:g})")


def depolarizing_channel_pauli(p: float) -> KrausChannel:
    """Qubit depolarization as a mixture of the identity and the Paulis.

    Acts identically to ``depolarizing_channel(2, p)``; every operator is a
    real multiple of a unitary, which the probe-independence results rely on.
    """
    p = _check_probability(p)
    ops = (
        np.sqrt(1.0 + 3.0 * p) / 2.0 * np.eye(2, dtype=complex),
        np.sqrt(1.0 - p) / 2.0 * PAULI_X,
        np.sqrt(1.0 - p) / 2.0 * PAULI_Y,
        np.sqrt(1.0 - p) / 2.0 * PAULI_Z,
    )
    return KrausChannel(ops, f"depol-pauli(p={p:g})")


def dephasing_channel(p: float, v, label: str = "dephase") -> KrausChannel:
    """rho -> p*rho + (1-p) V rho V^dag for a unitary V."""
    p = _check_probability(p)
    v = require_unitary(v)
    d = v.shape[0]
    return KrausChannel(
        (np.sqrt(p) * np.eye(d, dtype=complex), np.sqrt(1.0 - p) * v),
        f"{label}(p={p:g})",
    )


def amplitude_damping_channel(p: float, sink: str = "ground") -> KrausChannel:
    """Qubit relaxation toward |0> (sink='ground') or |1> (sink='excited').

    Survival probability p: excited population is scaled by p and
    coherences by sqrt(p); at p = 0 every state collapses onto the sink.
    """
    p = _check_probability(p)
    if sink == "ground":
        k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(p)]], dtype=complex)
        k1 = np.array([[0.0, np.sqrt(1.0 - p)], [0.0, 0.0]], dtype=complex)
    elif sink == "excited":
        k0 = np.array([[np.sqrt(p), 0.0], [0.0, 1.0]], dtype=complex)
        k1 = np.array([[0.0, 0.0], [np.sqrt(1.0 - p), 0.0]], dtype=complex)
    else:
        raise ValueError(f"sink must be 'ground' or 'excited', got {sink!r}")
    return KrausChannel((k0, k1), f"ampdamp(p={p:g},{sink})")


def parallel_channel(base: KrausChannel, n: int) -> KrausChannel:
    """The same channel acting independently on n copies of the system."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(base) ** n > 10**6:
        raise ValueError(f"{len(base)}^{n} Kraus operators exceeds the 1e6 guard")
    if n == 1:
        return base
    ops = [np.array([[1.0]], dtype=complex)]
    for _ in range(n):
        ops = [np.kron(a, k) for a in ops for k in base.kraus_ops]
    return KrausChannel(tuple(ops), f"{base.label}^x{n}")


def joint_unitary_depol(u, p: float) -> KrausChannel:
    """Unitary evolution followed (or preceded) by depolarization.

    rho -> p U rho U^dag + (1-p) 1/d, with Kraus operators
    sqrt((1-p)/d) |k><l| U and sqrt(p) U.
    """
    p = _check_probability(p)
    u = require_unitary(u)
    d = u.shape[0]
    ops = [np.sqrt(p) * u]
    w = np.sqrt((1.0 - p) / d)
    for k in range(d):
        for l in range(d):
            op = np.zeros((d, d), dtype=complex)
            op[k, l] = w
            ops.append(op @ u)
    return KrausChannel(tuple(ops), f"U-depol(p={p:g})")


def apply_dco(channels: Sequence[KrausChannel], rho) -> np.ndarray:
    """Apply channels sequentially in a definite causal order.

    ``channels`` is in application order, first-applied first.  An empty
    sequence returns the state unchanged.
    """
    out = require_square(as_matrix(rho))
    for ch in channels:
        out = ch.apply(out)
    return out
