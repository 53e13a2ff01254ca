"""Fisher information from measurement statistics and from density matrices.

Classical Fisher information matrices are built from an outcome-probability
model by finite differences; quantum Fisher information matrices come from
symmetric logarithmic derivatives assembled in the eigenbasis of the state.
The POVMs used throughout (projections onto (|i> +/- |j>)/sqrt(2) and
(|i> +/- i|j>)/sqrt(2) pairs of control basis states) are provided here too.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .linalg import as_matrix, dagger, herm_eig, require_hermitian

ParamPoint = Mapping[str, float]

# Parameters whose domain is [0, 1]; everything else is treated as an
# unconstrained angle when choosing finite-difference stencils.
_PROB_PREFIX = "p"

_FD_STEP = 1e-5
_ZERO_PROB = 1e-14
_EXCLUDED_CONTRIBUTION = 1e-10
_SLD_CUTOFF = 1e-10


class SingularFisherError(ValueError):
    """Raised when a Fisher matrix cannot be inverted.

    Carries the null-space direction, i.e. the locally unidentifiable
    combination of parameters.
    """

    def __init__(self, names: Sequence[str], direction: np.ndarray):
        self.direction = direction
        combo = " + ".join(
            f"({c:+.3g})*{n}" for c, n in zip(direction, names) if abs(c) > 1e-12
        )
        super().__init__(f"singular Fisher matrix; null-space direction {combo}")


class ExcludedOutcomeError(ValueError):
    """A zero-probability outcome has a non-negligible derivative.

    This signals a boundary or otherwise degenerate parameter point where
    the finite-difference Fisher information is unreliable.
    """


@dataclass(frozen=True)
class FisherMatrix:
    param_names: tuple[str, ...]
    matrix: np.ndarray
    kind: str  # "classical" or "quantum"

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (len(self.param_names),) * 2:
            raise ValueError("Fisher matrix shape does not match parameter names")
        if np.max(np.abs(m - m.T), initial=0.0) > 1e-10:
            raise ValueError("Fisher matrix is not symmetric")
        object.__setattr__(self, "matrix", (m + m.T) / 2)

    def entry(self, a: str, b: str) -> float:
        i, j = self.param_names.index(a), self.param_names.index(b)
        return float(self.matrix[i, j])


@dataclass(frozen=True)
class Povm:
    elements: tuple[np.ndarray, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        elems = tuple(as_matrix(e) for e in self.elements)
        if len(elems) != len(self.labels):
            raise ValueError("one label per POVM element required")
        dim = elems[0].shape[0]
        total = sum(elems[1:], start=elems[0].copy())
        if np.max(np.abs(total - np.eye(dim))) > 1e-10:
            raise ValueError("POVM elements do not sum to the identity")
        for e in elems:
            if np.min(np.linalg.eigvalsh((e + dagger(e)) / 2)) < -1e-10:
                raise ValueError("POVM element is not positive semidefinite")
        object.__setattr__(self, "elements", elems)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]


def _pair_povm(dim: int, second_phase: complex, tag: str) -> Povm:
    if dim < 2:
        raise ValueError("POVM needs control dimension >= 2")
    norm = dim - 1
    elements, labels = [], []
    for i in range(dim):
        for j in range(i + 1, dim):
            for sign, sym in ((1.0, "+"), (-1.0, "-")):
                vec = np.zeros(dim, dtype=complex)
                vec[i] = 1.0
                vec[j] = sign * second_phase
                vec /= np.sqrt(2.0)
                elements.append(np.outer(vec, vec.conj()) / norm)
                labels.append(f"{tag}{i}{j}{sym}")
    return Povm(tuple(elements), tuple(labels))


def pm_basis_povm(dim: int) -> Povm:
    """Projections onto (|i> +/- |j>)/sqrt(2) over all pairs i < j.

    The D(D-1) elements are scaled by 1/(D-1) so they sum to the identity;
    outcome probabilities on an equal-amplitude control read off the real
    parts of the interference traces R_ij.
    """
    return _pair_povm(dim, 1.0, "re")


def imag_basis_povm(dim: int) -> Povm:
    """Projections onto (|i> +/- i|j>)/sqrt(2); sensitive to Im R_ij."""
    return _pair_povm(dim, 1.0j, "im")


def outcome_probs(povm: Povm, rho: np.ndarray) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape[0] != povm.dim:
        raise ValueError("state dimension does not match POVM")
    probs = np.array([np.trace(e @ rho).real for e in povm.elements])
    if np.min(probs) < -1e-12:
        raise ValueError("negative outcome probability")
    probs = np.clip(probs, 0.0, None)
    if abs(probs.sum() - 1.0) > 1e-10:
        raise ValueError("outcome probabilities do not sum to one")
    return probs


def _step_plan(name: str, value: float) -> tuple[float, bool]:
    """Choose a finite-difference step and whether to difference one-sided.

    Probability-type parameters live on [0, 1]; near a boundary the step
    shrinks, and exactly on one the symmetric stencil would leave the
    domain, so a one-sided stencil is used instead.
    """
    if not name.startswith(_PROB_PREFIX):
        return _FD_STEP, False
    h = min(_FD_STEP, value / 2, (1 - value) / 2)
    if h < 1e-9:
        return _FD_STEP, True
    return h, False


def _derivative(fn: Callable[[ParamPoint], np.ndarray],
                at: ParamPoint, name: str) -> np.ndarray:
    """d fn / d name with one Richardson extrapolation level.

    Both the central and the one-sided base stencils are second order, so
    the same (4 D(h/2) - D(h))/3 combination lifts either to fourth order.
    """
    x = at[name]
    h, one_sided = _step_plan(name, x)

    def shifted(delta: float) -> np.ndarray:
        point = dict(at)
        point[name] = x + delta
        return np.asarray(fn(point))

    if one_sided:
        sign = 1.0 if x < 0.5 else -1.0

        def base(step: float) -> np.ndarray:
            f0, f1, f2 = shifted(0.0), shifted(sign * step), shifted(2 * sign * step)
            return sign * (-3 * f0 + 4 * f1 - f2) / (2 * step)
    else:

        def base(step: float) -> np.ndarray:
            return (shifted(step) - shifted(-step)) / (2 * step)

    return (4 * base(h / 2) - base(h)) / 3


def classical_fisher(prob_model: Callable[[ParamPoint], np.ndarray],
                     at: ParamPoint,
                     params: Sequence[str]) -> FisherMatrix:
    """F_ij = sum_x P(x) d_i ln P(x) d_j ln P(x), by finite differences.

    Outcomes with probability below 1e-14 are dropped from the sum; if any
    dropped outcome has a derivative large enough to matter, the point is
    degenerate and an ExcludedOutcomeError is raised.
    """
    params = tuple(params)
    probs = np.asarray(prob_model(at))
    grads = {name: _derivative(prob_model, at, name) for name in params}

    keep = probs >= _ZERO_PROB
    for name in params:
        bad = np.abs(grads[name][~keep])
        if bad.size and np.max(bad) > _EXCLUDED_CONTRIBUTION:
            raise ExcludedOutcomeError(
                f"zero-probability outcome with d/d{name} = {np.max(bad):.3g}"
            )

    n = len(params)
    f = np.empty((n, n))
    for i, a in enumerate(params):
        for j, b in enumerate(params[: i + 1]):
            val = np.sum(grads[a][keep] * grads[b][keep] / probs[keep])
            f[i, j] = f[j, i] = val
    return FisherMatrix(params, f, "classical")


def _stencil_rank_stable(state_model, at: ParamPoint, name: str) -> bool:
    x = at[name]
    h, one_sided = _step_plan(name, x)
    deltas = (0.0, h, 2 * h) if one_sided else (-h, 0.0, h)
    ranks = set()
    for delta in deltas:
        point = dict(at)
        point[name] = x + (delta if not one_sided or x < 0.5 else -delta)
        vals = np.linalg.eigvalsh(as_matrix(state_model(point)))
        ranks.add(int(np.sum(vals > _SLD_CUTOFF)))
    return len(ranks) == 1


def qfi_matrix(state_model: Callable[[ParamPoint], np.ndarray],
               at: ParamPoint,
               params: Sequence[str]) -> FisherMatrix:
    """QFI matrix Q_ij = Tr(rho {L_i, L_j})/2 via symmetric log derivatives.

    Each SLD is assembled in the eigenbasis of rho as
    (L_i)_kl = 2 (d_i rho)_kl / (l_k + l_l), skipping eigenvalue pairs whose
    sum is below 1e-10 (support-restricted convention at rank deficiency).
    """
    params = tuple(params)
    rho = require_hermitian(as_matrix(state_model(at)))
    eigvals, eigvecs = herm_eig(rho)

    for name in params:
        if not _stencil_rank_stable(state_model, at, name):
            warnings.warn(
                f"state rank changes within the {name} difference stencil; "
                "QFI may be unreliable here",
                RuntimeWarning,
                stacklevel=2,
            )

    denom = eigvals[:, None] + eigvals[None, :]
    safe = denom > _SLD_CUTOFF
    slds = []
    for name in params:
        drho = _derivative(lambda pt: as_matrix(state_model(pt)), at, name)
        drho = (drho + dagger(drho)) / 2
        d_eig = dagger(eigvecs) @ drho @ eigvecs
        sld = np.where(safe, 2 * d_eig / np.where(safe, denom, 1.0), 0.0)
        slds.append(sld)

    n = len(params)
    q = np.empty((n, n))
    for i in range(n):
        for j in range(i + 1):
            anti = slds[i] @ slds[j] + slds[j] @ slds[i]
            # rho is diag(eigvals) in this basis
            q[i, j] = q[j, i] = 0.5 * float(eigvals @ np.diagonal(anti).real)
    return FisherMatrix(params, q, "quantum")


def qfi_single_eigenform(state_model: Callable[[ParamPoint], np.ndarray],
                         at: ParamPoint,
                         param: str) -> float:
    """Single-parameter QFI straight from the eigendecomposition.

    Q = 2 sum_{kl} |<k| d rho |l>|^2 / (l_k + l_l) over pairs with
    l_k + l_l above cutoff — an independent cross-check of qfi_matrix
    that never forms the SLDs.
    """
    rho = require_hermitian(as_matrix(state_model(at)))
    eigvals, eigvecs = herm_eig(rho)
    drho = _derivative(lambda pt: as_matrix(state_model(pt)), at, param)
    drho = (drho + dagger(drho)) / 2
    d_eig = dagger(eigvecs) @ drho @ eigvecs
    denom = eigvals[:, None] + eigvals[None, :]
    safe = denom > _SLD_CUTOFF
    terms = np.where(safe, np.abs(d_eig) ** 2 / np.where(safe, denom, 1.0), 0.0)
    return float(2 * np.sum(terms))


def invert_fisher(fisher: FisherMatrix) -> FisherMatrix:
    """Per-trial Cramér–Rao covariance bound: the inverse Fisher matrix."""
    vals, vecs = np.linalg.eigh(fisher.matrix)
    if vals[0] <= 1e-12 * max(vals[-1], 0.0) or vals[-1] <= 0:
        raise SingularFisherError(fisher.param_names, vecs[:, 0])
    inv = vecs @ np.diag(1.0 / vals) @ vecs.T
    return FisherMatrix(fisher.param_names, inv, fisher.kind)
