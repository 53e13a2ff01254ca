"""The quantum switch: coherently controlled causal orders of channels.

A control system of dimension D routes a probe through one permutation of
the channels per control basis state.  The interference traces R_{j1 j2}
are computed by exact brute-force summation over the Cartesian product of
per-channel Kraus indices; the same multi-index appears on both sides of
the probe state.  This brute-force path is the oracle that every analytic
scenario formula in :mod:`icoswitch.scenarios` is checked against.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel
from .linalg import as_matrix, kron, require_square

MULTI_INDEX_GUARD = 10**8
_CHUNK = 1 << 14


@dataclass(frozen=True)
class CausalOrder:
    """A permutation of channel indices in application order (first first)."""

    permutation: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(i) for i in self.permutation)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"{perm} is not a permutation of 0..{len(perm) - 1}")
        object.__setattr__(self, "permutation", perm)

    def __len__(self) -> int:
        return len(self.permutation)


def all_orders(n_channels: int) -> tuple[CausalOrder, ...]:
    """All n! causal orders, lexicographic by index sequence."""
    if not 1 <= n_channels <= 5:
        raise ValueError("n_channels must be in 1..5")
    return tuple(CausalOrder(p) for p in itertools.permutations(range(n_channels)))


@dataclass(frozen=True)
class SwitchSpec:
    """Channels, one causal order per control basis state, control amplitudes."""

    channels: tuple[KrausChannel, ...]
    orders: tuple[CausalOrder, ...]
    control_amplitudes: np.ndarray

    def __post_init__(self):
        channels = tuple(self.channels)
        orders = tuple(CausalOrder(o) if not isinstance(o, CausalOrder) else o for o in self.orders)
        amps = np.asarray(self.control_amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "channels", channels)
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "control_amplitudes", amps)
        if not channels:
            raise ValueError("need at least one channel")
        d = channels[0].dim
        if any(ch.dim != d for ch in channels):
            raise ValueError("all channels must share one probe dimension")
        n = len(channels)
        if not 1 <= len(orders) <= math.factorial(n):
            raise ValueError(f"number of orders must be in 1..{n}! for {n} channels")
        if any(len(o) != n for o in orders):
            raise ValueError("each order must permute all channels")
        if len(amps) != len(orders):
            raise ValueError("one control amplitude per causal order required")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"control amplitudes not normalized (sum |psi|^2 = {norm})")

    @property
    def probe_dim(self) -> int:
        return self.channels[0].dim

    @property
    def control_dim(self) -> int:
        return len(self.orders)

    @property
    def multi_index_count(self) -> int:
        return math.prod(len(ch) for ch in self.channels)


def equal_amplitudes(d: int) -> np.ndarray:
    return np.full(d, 1.0 / np.sqrt(d), dtype=complex)


def _check_guard(spec: SwitchSpec):
    if spec.multi_index_count > MULTI_INDEX_GUARD:
        raise ValueError(
            f"multi-index count {spec.multi_index_count} exceeds guard {MULTI_INDEX_GUARD}"
        )


def _order_products(spec: SwitchSpec, order: CausalOrder, lo: int, hi: int) -> np.ndarray:
    """Stacked operator products for multi-indices lo..hi (exclusive).

    Multi-index m enumerates one Kraus index per channel with channel 0
    slowest (itertools.product convention over channels in index order).
    The returned stack holds, per multi-index, the product of Kraus
    operators composed along ``order`` (first applied is the rightmost
    factor).
    """
    d = spec.probe_dim
    counts = [len(ch) for ch in spec.channels]
    strides = []
    s = 1
    for c in reversed(counts):
        strides.append(s)
        s *= c
    strides = list(reversed(strides))  # strides[c] for channel c

    flat = np.arange(lo, hi)
    out = np.broadcast_to(np.eye(d, dtype=complex), (len(flat), d, d)).copy()
    for c in order.permutation:  # first applied first: left-multiply in turn
        ops = np.stack(spec.channels[c].kraus_ops)
        idx = (flat // strides[c]) % counts[c]
        out = np.matmul(ops[idx], out)
    return out


def r_element(spec: SwitchSpec, j1: int, j2: int, probe) -> complex:
    """Interference trace R_{j1 j2} = Tr sum_m P_{j1,m} probe P_{j2,m}^dag."""
    if not (0 <= j1 < spec.control_dim and 0 <= j2 < spec.control_dim):
        raise IndexError("order index out of range")
    probe = require_square(as_matrix(probe))
    if probe.shape[0] != spec.probe_dim:
        raise ValueError("probe dimension mismatch")
    _check_guard(spec)
    total = 0.0 + 0.0j
    m = spec.multi_index_count
    for lo in range(0, m, _CHUNK):
        hi = min(lo + _CHUNK, m)
        p1 = _order_products(spec, spec.orders[j1], lo, hi)
        p2 = p1 if j2 == j1 else _order_products(spec, spec.orders[j2], lo, hi)
        total += complex(np.einsum("mij,jk,mik->", p1, probe, p2.conj(), optimize=True))
    return total


def r_matrix(spec: SwitchSpec, probe) -> np.ndarray:
    """The full D x D Hermitian matrix of interference traces."""
    d = spec.control_dim
    r = np.eye(d, dtype=complex)
    for j1 in range(d):
        r[j1, j1] = r_element(spec, j1, j1, probe)
        for j2 in range(j1 + 1, d):
            val = r_element(spec, j1, j2, probe)
            r[j1, j2] = val
            r[j2, j1] = np.conj(val)
    return r


def control_state(spec: SwitchSpec, probe) -> np.ndarray:
    """Evolved control state: psi_j1 psi_j2^* R_{j1 j2} entrywise."""
    amps = spec.control_amplitudes
    return np.outer(amps, amps.conj()) * r_matrix(spec, probe)


def switch_kraus_ops(spec: SwitchSpec):
    """Yield the joint control (x) probe Kraus operators of the switch."""
    _check_guard(spec)
    dc = spec.control_dim
    m = spec.multi_index_count
    for lo in range(0, m, _CHUNK):
        hi = min(lo + _CHUNK, m)
        stacks = [_order_products(spec, o, lo, hi) for o in spec.orders]
        for i in range(hi - lo):
            op = sum(
                kron(np.eye(dc)[:, [j]] @ np.eye(dc)[[j], :], stacks[j][i]) for j in range(dc)
            )
            yield op


def evolve_joint(spec: SwitchSpec, control_prep, probe) -> np.ndarray:
    """Full joint output of the switch channel on control_prep (x) probe."""
    control_prep = require_square(as_matrix(control_prep))
    probe = require_square(as_matrix(probe))
    if control_prep.shape[0] != spec.control_dim:
        raise ValueError("control preparation dimension mismatch")
    if probe.shape[0] != spec.probe_dim:
        raise ValueError("probe dimension mismatch")
    joint_in = kron(control_prep, probe)
    out = np.zeros_like(joint_in)
    for op in switch_kraus_ops(spec):
        out += op @ joint_in @ op.conj().T
    return out
