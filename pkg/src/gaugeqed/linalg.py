"""Dense Hermitian linear algebra with explicit invariants.

All operators in the package are finite complex matrices wrapped in
:class:`OperatorMatrix`.  Eigenproblems go through LAPACK (``numpy.linalg.eigh``)
behind :func:`hermitian_eig`, which adds a deterministic eigenvector phase
convention; matrix functions and unitaries are built from the spectral
decomposition.  Everything is plain double precision, checked against
tolerances that the tests enforce rather than assume.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

HERMITICITY_RTOL = 1e-12
UNITARITY_ATOL = 1e-8
DIM_CAP_DEFAULT = 4096


class LinalgError(Exception):
    """Base class for invariant violations in this module."""


class NonHermitianError(LinalgError):
    pass


class NotUnitaryError(LinalgError):
    pass


class ConvergenceFailureError(LinalgError):
    pass


class DimensionMismatchError(LinalgError):
    pass


class DimensionOverflowError(LinalgError):
    pass


@dataclass(frozen=True)
class OperatorMatrix:
    """Square complex matrix with an optional, verified Hermiticity tag.

    ``hermitian_hint`` is set only by constructors that guarantee it; the
    constructor re-checks the claim (max entry of M - M^dag within
    ``HERMITICITY_RTOL`` of the largest entry) so a wrong tag fails fast.
    The wrapped array is frozen to keep instances safe to share.
    """

    arr: np.ndarray
    hermitian_hint: bool = False

    def __post_init__(self):
        arr = np.asarray(self.arr, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionMismatchError(f"operator must be square, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise DimensionMismatchError("operator dimension must be >= 1")
        if self.hermitian_hint:
            scale = max(float(np.abs(arr).max()), 1.0)
            dev = float(np.abs(arr - arr.conj().T).max())
            if dev > HERMITICITY_RTOL * scale:
                raise NonHermitianError(
                    f"hermitian_hint set but max|M - M^dag| = {dev:.3e} (scale {scale:.3e})")
        arr = arr.copy() if arr.flags.writeable else arr
        arr.flags.writeable = False
        object.__setattr__(self, "arr", arr)

    @property
    def dim(self) -> int:
        return self.arr.shape[0]

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.arr.conj().T, self.hermitian_hint)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        _check_same_dim(self, other)
        return OperatorMatrix(self.arr + other.arr,
                              self.hermitian_hint and other.hermitian_hint)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        _check_same_dim(self, other)
        return OperatorMatrix(self.arr - other.arr,
                              self.hermitian_hint and other.hermitian_hint)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        _check_same_dim(self, other)
        return OperatorMatrix(self.arr @ other.arr, hermitian_hint=False)

    def __mul__(self, scalar: complex) -> "OperatorMatrix":
        scalar = complex(scalar)
        return OperatorMatrix(self.arr * scalar,
                              self.hermitian_hint and scalar.imag == 0.0)

    __rmul__ = __mul__

    def __neg__(self) -> "OperatorMatrix":
        return OperatorMatrix(-self.arr, self.hermitian_hint)


def _check_same_dim(a: OperatorMatrix, b: OperatorMatrix) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension mismatch: {a.dim} vs {b.dim}")


def identity(dim: int) -> OperatorMatrix:
    return OperatorMatrix(np.eye(dim, dtype=complex), hermitian_hint=True)


def as_hermitian(M: OperatorMatrix) -> OperatorMatrix:
    """Re-tag a matrix known to be Hermitian (e.g. a product X @ X of a
    Hermitian X with itself); the constructor verifies the claim."""
    return OperatorMatrix(M.arr, hermitian_hint=True)


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues, optional phase-fixed eigenvectors, provenance tags."""

    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray]
    model_id: str = ""
    cutoff: Optional[int] = None

    def transitions(self, k: Optional[int] = None) -> np.ndarray:
        """E_n - E_0 for n = 1..k (all levels when k is None)."""
        w = self.eigenvalues
        stop = None if k is None else k + 1
        return w[1:stop] - w[0]


def _verify_hermitian(M: OperatorMatrix) -> None:
    if M.hermitian_hint:
        return
    scale = max(float(np.abs(M.arr).max()), 1.0)
    dev = float(np.abs(M.arr - M.arr.conj().T).max())
    if dev > HERMITICITY_RTOL * scale:
        raise NonHermitianError(f"matrix is not Hermitian: max|M - M^dag| = {dev:.3e}")


def hermitian_eig(M: OperatorMatrix, vectors: bool = True,
                  model_id: str = "", cutoff: Optional[int] = None) -> Spectrum:
    """Full eigendecomposition of a Hermitian operator.

    Eigenvalues ascend.  Each eigenvector is phase-fixed so its
    largest-magnitude component is real and positive (ties resolved by the
    lowest index), which makes repeated runs byte-reproducible.

    Raises NonHermitianError if the matrix fails the Hermiticity check and
    ConvergenceFailureError if LAPACK does not converge.
    """
    _verify_hermitian(M)
    try:
        if vectors:
            w, v = np.linalg.eigh(M.arr)
        else:
            w = np.linalg.eigvalsh(M.arr)
            v = None
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(f"eigensolver did not converge: {exc}") from exc
    if v is not None:
        idx = np.argmax(np.abs(v), axis=0)
        lead = v[idx, np.arange(v.shape[1])]
        phase = lead / np.abs(lead)
        v = v * phase.conj()[np.newaxis, :]
        v = np.ascontiguousarray(v)
        v.flags.writeable = False
    w = np.ascontiguousarray(w)
    w.flags.writeable = False
    return Spectrum(eigenvalues=w, eigenvectors=v, model_id=model_id, cutoff=cutoff)


def matrix_function(M: OperatorMatrix, f: Callable[[np.ndarray], np.ndarray]) -> OperatorMatrix:
    """f(M) for Hermitian M via the spectral decomposition.

    ``f`` must accept a float array of eigenvalues.  When f is real-valued on
    the spectrum the result is re-symmetrised and tagged Hermitian.
    """
    spec = hermitian_eig(M)
    fw = np.asarray(f(spec.eigenvalues))
    v = spec.eigenvectors
    out = (v * fw) @ v.conj().T
    if np.isrealobj(fw) or np.abs(fw.imag).max() == 0.0:
        out = (out + out.conj().T) / 2.0
        return OperatorMatrix(out, hermitian_hint=True)
    return OperatorMatrix(out, hermitian_hint=False)


def unitary_exp(A: OperatorMatrix, theta: float) -> OperatorMatrix:
    """exp(i * theta * A) for Hermitian A; exactly unitary up to roundoff."""
    spec = hermitian_eig(A)
    v = spec.eigenvectors
    phases = np.exp(1j * theta * spec.eigenvalues)
    return OperatorMatrix((v * phases) @ v.conj().T, hermitian_hint=False)


def conjugate(U: OperatorMatrix, H: OperatorMatrix) -> OperatorMatrix:
    """U H U^dag after verifying that U is unitary to UNITARITY_ATOL."""
    _check_same_dim(U, H)
    gram = U.arr.conj().T @ U.arr
    dev = float(np.abs(gram - np.eye(U.dim)).max())
    if dev > UNITARITY_ATOL:
        raise NotUnitaryError(f"max|U^dag U - 1| = {dev:.3e} exceeds {UNITARITY_ATOL:.1e}")
    out = U.arr @ H.arr @ U.arr.conj().T
    if H.hermitian_hint:
        out = (out + out.conj().T) / 2.0
        return OperatorMatrix(out, hermitian_hint=True)
    return OperatorMatrix(out, hermitian_hint=False)


def kron(A: OperatorMatrix, B: OperatorMatrix, dim_cap: int = DIM_CAP_DEFAULT) -> OperatorMatrix:
    """Kronecker product A (x) B; the first factor indexes the slow axis."""
    dim = A.dim * B.dim
    if dim > dim_cap:
        raise DimensionOverflowError(f"kron dimension {dim} exceeds cap {dim_cap}")
    return OperatorMatrix(np.kron(A.arr, B.arr),
                          hermitian_hint=A.hermitian_hint and B.hermitian_hint)
