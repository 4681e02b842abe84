"""Core linear algebra and entropy primitives for N-qubit density matrices.

Conventions used throughout the package:

* qubit 0 is the slowest-varying tensor factor, i.e. the most significant
  bit of a computational-basis index;
* all logarithms are base 2, so entropies are reported in bits and
  ``0 * log2(0) = 0``;
* physical invariants (hermiticity, unit trace, positivity) are checked
  eagerly at construction time so that invalid states fail fast instead of
  surfacing as NaNs deep inside an optimization loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import entr

__all__ = [
    "HERMITICITY_TOL",
    "TRACE_TOL",
    "PSD_TOL",
    "UNIT_NORM_TOL",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "IDENTITY_2",
    "StateValidationError",
    "DensityMatrix",
    "BlochVector",
    "Spectrum",
    "tensor_product",
    "pauli_string",
    "partial_trace",
    "shannon_entropy",
    "binary_entropy",
    "von_neumann_entropy",
    "relative_entropy",
    "mutual_information",
    "bloch_rotation",
    "majorizes",
    "diagonal_pinch",
    "apply_single_qubit_operators",
    "maximally_mixed",
    "pure_state",
    "random_density_matrix",
    "random_unitary",
    "random_bloch_vector",
]

# Validation tolerances. Fixed here, on purpose: every DensityMatrix in the
# package is checked against the same bars.
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
UNIT_NORM_TOL = 1e-12

_LN2 = math.log(2.0)

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)
IDENTITY_2 = np.eye(2, dtype=np.complex128)

_PAULIS = {"x": PAULI_X, "y": PAULI_Y, "z": PAULI_Z}


class StateValidationError(ValueError):
    """A matrix failed one of the density-matrix invariants."""


def _as_square_complex(a, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class DensityMatrix:
    """A validated N-qubit density matrix.

    Parameters
    ----------
    matrix : array_like
        Square ``2**n x 2**n`` complex matrix. It must be Hermitian within
        1e-10, have unit trace within 1e-10, and have eigenvalues no lower
        than -1e-9.

    Raises
    ------
    StateValidationError
        If any invariant fails. The message names the failed invariant.
    """

    matrix: np.ndarray

    def __post_init__(self):
        arr = np.array(self.matrix, dtype=np.complex128, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise StateValidationError(
                f"density matrix must be square, got shape {arr.shape}"
            )
        dim = arr.shape[0]
        n = dim.bit_length() - 1
        if dim < 2 or 2**n != dim:
            raise StateValidationError(
                f"dimension {dim} is not a power of two >= 2"
            )
        herm = np.max(np.abs(arr - arr.conj().T))
        if herm > HERMITICITY_TOL:
            raise StateValidationError(
                f"not Hermitian: max |rho - rho^dagger| = {herm:.3e} "
                f"exceeds {HERMITICITY_TOL:.1e}"
            )
        tr = arr.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise StateValidationError(
                f"trace {tr:.12g} differs from 1 by more than {TRACE_TOL:.1e}"
            )
        eigs = np.linalg.eigvalsh(arr)
        if eigs[0] < -PSD_TOL:
            raise StateValidationError(
                f"not positive semidefinite: min eigenvalue {eigs[0]:.3e} "
                f"below -{PSD_TOL:.1e}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "matrix", arr)
        object.__setattr__(self, "_eigs_ascending", eigs)

    @property
    def n_qubits(self) -> int:
        return self.matrix.shape[0].bit_length() - 1

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in ascending order, as cached at validation time."""
        return self._eigs_ascending.copy()

    def spectrum(self) -> "Spectrum":
        return Spectrum(self._eigs_ascending)


@dataclass(frozen=True)
class BlochVector:
    """A unit vector on the Bloch sphere, the axis of a qubit measurement."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise ValueError(
                f"Bloch vector must have unit norm within {UNIT_NORM_TOL:.1e}, "
                f"got norm {norm!r}"
            )

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "BlochVector":
        """Direction at polar angle ``theta`` and azimuth ``phi``."""
        st = math.sin(theta)
        v = np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])
        v /= np.linalg.norm(v)
        return cls(float(v[0]), float(v[1]), float(v[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def antipode(self) -> "BlochVector":
        return BlochVector(-self.x, -self.y, -self.z)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue list of a state, stored sorted in descending order.

    Entries must lie in ``[-1e-9, 1 + 1e-9]`` and sum to 1 within 1e-9.
    """

    values: np.ndarray

    def __post_init__(self):
        vals = np.sort(np.asarray(self.values, dtype=float))[::-1].copy()
        if vals.size == 0:
            raise ValueError("spectrum must be non-empty")
        if vals[-1] < -PSD_TOL or vals[0] > 1.0 + PSD_TOL:
            raise ValueError(
                f"spectrum entries must lie in [-{PSD_TOL:.1e}, 1+{PSD_TOL:.1e}], "
                f"got range [{vals[-1]!r}, {vals[0]!r}]"
            )
        total = float(vals.sum())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"spectrum sums to {total!r}, expected 1 within 1e-9")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def entropy_bits(self) -> float:
        return shannon_entropy(self.values)


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two square matrices, ``a``'s index slower-varying."""
    return np.kron(_as_square_complex(a, "a"), _as_square_complex(b, "b"))


def pauli_string(axis: str, n_qubits: int) -> np.ndarray:
    """The n-fold tensor power of a single Pauli matrix.

    Parameters
    ----------
    axis : str
        One of ``"x"``, ``"y"``, ``"z"``.
    n_qubits : int
        Number of factors, at least 1.
    """
    if axis not in _PAULIS:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    out = _PAULIS[axis]
    for _ in range(n_qubits - 1):
        out = np.kron(out, _PAULIS[axis])
    return out


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state on a subset of qubits.

    Parameters
    ----------
    rho : DensityMatrix
    keep : iterable of int
        Qubit indices to retain. The result orders them ascending.

    Returns
    -------
    DensityMatrix
        State on ``len(keep)`` qubits.
    """
    n = rho.n_qubits
    kept = sorted(set(int(q) for q in keep))
    if not kept:
        raise ValueError("keep set must not be empty")
    if kept[0] < 0 or kept[-1] >= n:
        raise ValueError(f"keep indices {kept} out of range for {n} qubits")
    if len(kept) == n:
        return rho
    tensor = rho.matrix.reshape((2,) * (2 * n))
    # Trace out the complement, highest index first so axis positions of the
    # not-yet-traced qubits stay valid.
    remaining = n
    for q in sorted(set(range(n)) - set(kept), reverse=True):
        tensor = np.trace(tensor, axis1=q, axis2=q + remaining)
        remaining -= 1
    d = 2 ** len(kept)
    return DensityMatrix(tensor.reshape(d, d))


def shannon_entropy(weights) -> float:
    """Entropy in bits of a probability vector, with ``0 log2 0 = 0``.

    Entries in ``[-1e-9, 0)`` are clipped to zero; anything lower raises.
    """
    w = np.asarray(weights, dtype=float)
    if w.size and float(w.min()) < -PSD_TOL:
        raise ValueError(
            f"probability vector has entry {float(w.min())!r} below -{PSD_TOL:.1e}"
        )
    w = np.clip(w, 0.0, None)
    return float(entr(w).sum() / _LN2)


def binary_entropy(p: float) -> float:
    """Entropy in bits of the distribution ``(p, 1 - p)``."""
    return shannon_entropy([p, 1.0 - p])


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy in bits, from the cached eigenvalues of ``rho``."""
    return shannon_entropy(rho.eigenvalues())


# Eigenvalues of sigma below this are treated as zero when testing whether
# rho's support fits inside sigma's.
_SUPPORT_EIG_TOL = 1e-12
_SUPPORT_OVERLAP_TOL = 1e-10


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Quantum relative entropy ``S(rho || sigma)`` in bits.

    Returns ``math.inf`` when the support of ``rho`` is not contained in the
    support of ``sigma``. The infinity comes from this explicit support test,
    never from floating-point overflow.
    """
    if rho.dim != sigma.dim:
        raise ValueError(
            f"dimension mismatch: {rho.dim} vs {sigma.dim}"
        )
    evals_s, evecs_s = np.linalg.eigh(sigma.matrix)
    # <v_j| rho |v_j> for each eigenvector of sigma
    overlaps = np.real(np.einsum("ij,ik,kj->j", evecs_s.conj(), rho.matrix, evecs_s))
    overlaps = np.clip(overlaps, 0.0, None)
    null = evals_s <= _SUPPORT_EIG_TOL
    if float(overlaps[null].sum()) > _SUPPORT_OVERLAP_TOL:
        return math.inf
    tr_rho_log_rho = -von_neumann_entropy(rho)
    tr_rho_log_sigma = float(
        np.sum(overlaps[~null] * np.log2(evals_s[~null]))
    )
    return tr_rho_log_rho - tr_rho_log_sigma


def mutual_information(rho: DensityMatrix) -> float:
    """Total correlations ``sum_i S(rho_i) - S(rho)`` in bits.

    Requires at least two qubits.
    """
    n = rho.n_qubits
    if n < 2:
        raise ValueError(f"mutual information needs >= 2 qubits, got {n}")
    total = -von_neumann_entropy(rho)
    for q in range(n):
        total += von_neumann_entropy(partial_trace(rho, {q}))
    return total


def bloch_rotation(u) -> np.ndarray:
    """SO(3) rotation acting on Bloch vectors induced by a 2x2 unitary.

    Satisfies ``u (r . sigma) u^dagger = (R r) . sigma`` with
    ``R[j, k] = Re tr(sigma_j u sigma_k u^dagger) / 2`` and ``det R = 1``.
    """
    mat = _as_square_complex(u, "u")
    if mat.shape != (2, 2):
        raise ValueError(f"u must be 2x2, got shape {mat.shape}")
    dev = np.max(np.abs(mat @ mat.conj().T - IDENTITY_2))
    if dev > HERMITICITY_TOL:
        raise ValueError(f"u is not unitary: |u u^dagger - I| = {dev:.3e}")
    paulis = (PAULI_X, PAULI_Y, PAULI_Z)
    r = np.empty((3, 3))
    for k, sk in enumerate(paulis):
        conj = mat @ sk @ mat.conj().T
        for j, sj in enumerate(paulis):
            r[j, k] = 0.5 * np.real(np.trace(sj @ conj))
    return r


def majorizes(p, q) -> bool:
    """True if ``q`` majorizes ``p``.

    Both arguments are probability vectors; shorter input is zero-padded.
    After sorting in descending order, every partial sum of ``q`` must be at
    least the matching partial sum of ``p``.
    """
    pv = np.asarray(p, dtype=float)
    qv = np.asarray(q, dtype=float)
    for name, v in (("p", pv), ("q", qv)):
        if v.ndim != 1 or v.size == 0:
            raise ValueError(f"{name} must be a non-empty 1-D vector")
        if float(v.min()) < -1e-12:
            raise ValueError(f"{name} has negative entry {float(v.min())!r}")
        if abs(float(v.sum()) - 1.0) > 1e-9:
            raise ValueError(f"{name} sums to {float(v.sum())!r}, expected 1")
    size = max(pv.size, qv.size)
    pv = np.pad(np.sort(pv)[::-1], (0, size - pv.size))
    qv = np.pad(np.sort(qv)[::-1], (0, size - qv.size))
    return bool(np.all(np.cumsum(qv) - np.cumsum(pv) >= -1e-12))


def diagonal_pinch(a) -> np.ndarray:
    """Zero every off-diagonal element of a square matrix."""
    arr = _as_square_complex(a)
    return np.diag(np.diag(arr))


def apply_single_qubit_operators(matrix, ops, qubit: int, n_qubits: int) -> np.ndarray:
    """Apply ``sum_k (I x K_k x I) M (I x K_k x I)^dagger`` on one qubit.

    ``ops`` is a sequence of 2x2 matrices acting on qubit ``qubit`` of an
    ``n_qubits``-qubit operator ``M``; identity acts elsewhere.
    """
    if not 0 <= qubit < n_qubits:
        raise ValueError(f"qubit {qubit} out of range for {n_qubits} qubits")
    d = 2**n_qubits
    mat = np.asarray(matrix, dtype=np.complex128)
    if mat.shape != (d, d):
        raise ValueError(f"matrix shape {mat.shape} does not match n_qubits={n_qubits}")
    left = 2**qubit
    right = d // (2 * left)
    t = mat.reshape(left, 2, right, left, 2, right)
    out = np.zeros_like(t)
    for k in ops:
        kk = np.asarray(k, dtype=np.complex128)
        if kk.shape != (2, 2):
            raise ValueError(f"operators must be 2x2, got shape {kk.shape}")
        out += np.einsum("ab,ibjkcm,dc->iajkdm", kk, t, kk.conj())
    return out.reshape(d, d)


def maximally_mixed(n_qubits: int) -> DensityMatrix:
    """The state ``I / 2**n``."""
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    d = 2**n_qubits
    return DensityMatrix(np.eye(d, dtype=np.complex128) / d)


def pure_state(vector) -> DensityMatrix:
    """Projector onto a normalized state vector."""
    v = np.asarray(vector, dtype=np.complex128).ravel()
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("state vector must be nonzero")
    v = v / norm
    return DensityMatrix(np.outer(v, v.conj()))


def random_density_matrix(n_qubits: int, rng: np.random.Generator) -> DensityMatrix:
    """Random full-rank mixed state from a complex Ginibre matrix."""
    d = 2**n_qubits
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    # Fix the phase ambiguity of QR so the distribution is Haar.
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_bloch_vector(rng: np.random.Generator) -> BlochVector:
    """Uniformly random direction on the unit sphere."""
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * math.pi)
    s = math.sqrt(max(0.0, 1.0 - z * z))
    v = np.array([s * math.cos(phi), s * math.sin(phi), z])
    v /= np.linalg.norm(v)
    return BlochVector(float(v[0]), float(v[1]), float(v[2]))
