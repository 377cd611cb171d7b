"""Truncated qubit (x) Fock Hilbert space and dense operator algebra.

Basis ordering is QD-major and global for a run:
    index = qd_index * (n_fock + 1) + photon_number,  qd_index 0 = |g>, 1 = |e>.
Dense matrices throughout; D = 2(N+1) stays below ~50 for every experiment.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import SimpleNamespace

import numpy as np

from .errors import SpaceMismatchError, StateValidationError

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = -1e-9


@dataclass(frozen=True)
class HilbertSpace:
    """Truncated joint space of the two-level QD and the cavity mode."""

    n_fock: int

    @property
    def dim_qd(self) -> int:
        return 2

    @property
    def dim_cavity(self) -> int:
        return self.n_fock + 1

    @property
    def dim(self) -> int:
        return 2 * (self.n_fock + 1)

    def index(self, qd: int, photon: int) -> int:
        """Basis index of |qd, photon>, qd 0 = |g>, 1 = |e>."""
        return qd * self.dim_cavity + photon


def _require_same_space(x, y):
    if x.space != y.space:
        raise SpaceMismatchError(
            f"operators live on different spaces: {x.space} vs {y.space}"
        )


@dataclass(frozen=True)
class QOperator:
    """Dimension-labeled complex dense matrix on a HilbertSpace."""

    space: HilbertSpace
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.space.dim, self.space.dim):
            raise SpaceMismatchError(
                f"matrix shape {m.shape} does not match space dim {self.space.dim}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def dag(self) -> "QOperator":
        return QOperator(self.space, self.matrix.conj().T)

    def __add__(self, other: "QOperator") -> "QOperator":
        _require_same_space(self, other)
        return QOperator(self.space, self.matrix + other.matrix)

    def __sub__(self, other: "QOperator") -> "QOperator":
        _require_same_space(self, other)
        return QOperator(self.space, self.matrix - other.matrix)

    def __mul__(self, scalar) -> "QOperator":
        return QOperator(self.space, self.matrix * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other: "QOperator") -> "QOperator":
        _require_same_space(self, other)
        return QOperator(self.space, self.matrix @ other.matrix)


class DensityMatrix(QOperator):
    """Hermitian, unit-trace, positive-semidefinite state on a HilbertSpace."""

    def __post_init__(self):
        super().__post_init__()
        m = self.matrix
        herm_dev = np.max(np.abs(m - m.conj().T))
        if herm_dev > HERMITICITY_TOL:
            raise StateValidationError(f"not Hermitian: max deviation {herm_dev:.3e}")
        trace_dev = abs(np.trace(m) - 1.0)
        if trace_dev > TRACE_TOL:
            raise StateValidationError(f"trace deviates from 1 by {trace_dev:.3e}")
        min_eig = np.linalg.eigvalsh((m + m.conj().T) / 2).min()
        if min_eig < POSITIVITY_TOL:
            raise StateValidationError(f"negative eigenvalue {min_eig:.3e}")


def build_operators(space: HilbertSpace) -> SimpleNamespace:
    """System operators on `space`: sigma_plus/minus, a, a_dagger, identity.

    a acts as a|n> = sqrt(n)|n-1> on the cavity factor, truncated at N.
    """
    d = space.dim_cavity
    id_cav = np.eye(d)
    a_cav = np.diag(np.sqrt(np.arange(1, d, dtype=float)), 1)
    sp = np.kron(np.array([[0.0, 0.0], [1.0, 0.0]]), id_cav)  # |e><g| (x) 1
    a = np.kron(np.eye(2), a_cav)
    make = lambda m: QOperator(space, m)
    return SimpleNamespace(
        sigma_plus=make(sp),
        sigma_minus=make(sp.conj().T),
        a=make(a),
        a_dagger=make(a.conj().T),
        identity=make(np.eye(space.dim)),
    )


def expectation(op: QOperator, rho: DensityMatrix) -> complex:
    """<O> = Tr(O rho)."""
    _require_same_space(op, rho)
    return complex(np.trace(op.matrix @ rho.matrix))


def partial_trace_qd(rho: DensityMatrix) -> np.ndarray:
    """Trace out the QD factor; returns the (N+1)x(N+1) cavity density matrix."""
    d = rho.space.dim_cavity
    blocks = rho.matrix.reshape(2, d, 2, d)
    return blocks[0, :, 0, :] + blocks[1, :, 1, :]
