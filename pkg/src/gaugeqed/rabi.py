"""Single-dipole (quantum Rabi) Hamiltonians across gauges.

Builders return the matter (x) field matrix of each model, energies in units
of omega_c with hbar = 1:

* ``build_H_D``           dipole gauge, linear coupling i g_D (a^dag - a) sigma_x
* ``build_H_C_standard``  Coulomb gauge with naive two-level truncation
                          (g_C sigma_y (a + a^dag) plus a scalar diamagnetic term)
* ``build_H_C_correct``   Coulomb gauge with the truncation done on the
                          gauge-transformed projector: the qubit splitting is
                          dressed by cos/sin of 2 eta (a + a^dag)
* ``build_H_C_taylor``    the corrected model with cos/sin replaced by their
                          order-n Maclaurin polynomials
* ``build_H_alpha``       one-parameter gauge family interpolating D (alpha=0)
                          and corrected C (alpha=1)

Derived couplings: g_D = eta * omega_c and g_C = g_D * omega_10 / omega_c.
Every builder drops state-independent constants, so physical statements are
about transition energies E_n - E_0; raw eigenvalues of different gauges
differ by exactly those dropped scalars (for example spec(H_C) = spec(H_D)
+ eta^2 omega_c).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import mpmath as mp
import numpy as np

from .linalg import (OperatorMatrix, Spectrum, as_hermitian, conjugate, hermitian_eig,
                     identity, kron, matrix_function, unitary_exp)
from .qops import fock_ops, pauli

# largest |2 eta x| for which the alternating Maclaurin sums stay within
# double precision's cancellation budget; beyond it the scalar Horner loop
# runs in mpmath with enough digits to absorb the peak term ~ exp(|x|)
DOUBLE_SAFE_ARG = 18.0


@dataclass(frozen=True)
class RabiParams:
    """Model parameters; omega_10 = omega_c + detuning unless given explicitly."""

    eta: float
    cutoff: int = 60
    omega_c: float = 1.0
    detuning: Optional[float] = None
    omega_10: Optional[float] = None

    def __post_init__(self):
        if self.omega_c <= 0:
            raise ValueError(f"omega_c must be positive, got {self.omega_c}")
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")
        det, w10 = self.detuning, self.omega_10
        if det is None and w10 is None:
            det, w10 = 0.0, self.omega_c
        elif det is None:
            det = w10 - self.omega_c
        elif w10 is None:
            w10 = self.omega_c + det
        elif abs((self.omega_c + det) - w10) > 1e-12 * self.omega_c:
            raise ValueError("detuning and omega_10 are inconsistent")
        if w10 <= 0:
            raise ValueError(f"omega_10 must be positive, got {w10}")
        object.__setattr__(self, "detuning", float(det))
        object.__setattr__(self, "omega_10", float(w10))

    @property
    def g_d(self) -> float:
        return self.eta * self.omega_c

    @property
    def g_c(self) -> float:
        return self.g_d * self.omega_10 / self.omega_c

    @property
    def dim(self) -> int:
        return 2 * (self.cutoff + 1)


@dataclass(frozen=True)
class GaugeParam:
    """Interpolation parameter: alpha=0 is the dipole form, alpha=1 the Coulomb form."""

    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")


def _parts(p: RabiParams):
    a, adag, nph = fock_ops(p.cutoff)
    sx, sy, sz = pauli()
    return a, adag, nph, sx, sy, sz


def build_H_D(p: RabiParams) -> OperatorMatrix:
    """Dipole-gauge Rabi Hamiltonian (two-level truncation is exact here)."""
    a, adag, nph, sx, sy, sz = _parts(p)
    coupling = OperatorMatrix(1j * (adag.arr - a.arr), hermitian_hint=True)
    return (p.omega_c * embed_field(nph, p)
            + 0.5 * p.omega_10 * embed_matter(sz, p)
            + p.g_d * kron(sx, coupling))


def build_H_C_standard(p: RabiParams, diamagnetic: Optional[float] = None) -> OperatorMatrix:
    """Coulomb-gauge Rabi model from the naive two-level projection.

    ``diamagnetic`` is the coefficient of the scalar (a + a^dag)^2 term; the
    default g_C^2 / omega_10 saturates the oscillator-strength sum rule with
    the single retained transition.
    """
    a, adag, nph, sx, sy, sz = _parts(p)
    if diamagnetic is None:
        diamagnetic = p.g_c ** 2 / p.omega_10
    X = as_hermitian(a + adag)
    return (p.omega_c * embed_field(nph, p)
            + 0.5 * p.omega_10 * embed_matter(sz, p)
            + p.g_c * kron(sy, X)
            + diamagnetic * embed_field(as_hermitian(X @ X), p))


def build_H_C_correct(p: RabiParams, method: str = "closed_form") -> OperatorMatrix:
    """Coulomb-gauge Rabi model with the truncation-consistent light-matter block.

    ``method="conjugation"`` builds U = exp[i eta sigma_x (a + a^dag)] and
    conjugates the bare qubit splitting; ``method="closed_form"`` evaluates
    the equivalent sigma_z cos[2 eta (a+a^dag)] + sigma_y sin[...] form with
    matrix functions.  Both produce the same matrix to eigensolver roundoff
    on the truncated space (the rotation identity is exact there).
    """
    a, adag, nph, sx, sy, sz = _parts(p)
    X = a + adag
    if method == "conjugation":
        U = unitary_exp(kron(sx, X), p.eta)
        H0 = 0.5 * p.omega_10 * embed_matter(sz, p)
        return conjugate(U, H0) + p.omega_c * embed_field(nph, p)
    if method == "closed_form":
        two_eta = 2.0 * p.eta
        cosX = matrix_function(X, lambda w: np.cos(two_eta * w))
        sinX = matrix_function(X, lambda w: np.sin(two_eta * w))
        return (p.omega_c * embed_field(nph, p)
                + 0.5 * p.omega_10 * (kron(sz, cosX) + kron(sy, sinX)))
    raise ValueError(f"unknown method {method!r}")


def maclaurin_cos_sin(values: np.ndarray, order: int):
    """Order-n Maclaurin polynomials of cos and sin evaluated on real values.

    Scalar Horner on each value.  Double precision is used while the peak
    alternating term stays representable without catastrophic cancellation
    (|x| <= DOUBLE_SAFE_ARG); larger arguments switch to mpmath with the
    digit count scaled to the peak term, so the returned values are the
    mathematically exact polynomial values rounded once to double.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    values = np.asarray(values, dtype=float)
    kc = order // 2          # highest k with 2k <= order
    ks = (order - 1) // 2    # highest k with 2k+1 <= order
    vmax = float(np.max(np.abs(values))) if values.size else 0.0
    if vmax <= DOUBLE_SAFE_ARG:
        ccoef = [1.0]
        for k in range(1, kc + 1):
            ccoef.append(-ccoef[-1] / ((2 * k - 1) * (2 * k)))
        scoef = [1.0]
        for k in range(1, ks + 1):
            scoef.append(-scoef[-1] / ((2 * k) * (2 * k + 1)))
        y = values ** 2
        c = np.zeros_like(values)
        for k in range(kc, -1, -1):
            c = c * y + ccoef[k]
        s = np.zeros_like(values)
        for k in range(ks, -1, -1):
            s = s * y + scoef[k]
        s = s * values if order >= 1 else np.zeros_like(values)
        return c, s
    dps = int(0.4343 * vmax) + 25
    with mp.workdps(dps):
        ccoef = [mp.mpf(1)]
        for k in range(1, kc + 1):
            ccoef.append(-ccoef[-1] / ((2 * k - 1) * (2 * k)))
        scoef = [mp.mpf(1)]
        for k in range(1, ks + 1):
            scoef.append(-scoef[-1] / ((2 * k) * (2 * k + 1)))
        c = np.empty_like(values)
        s = np.empty_like(values)
        for i, v in enumerate(values):
            x = mp.mpf(v)
            y = x * x
            acc = mp.mpf(0)
            for k in range(kc, -1, -1):
                acc = acc * y + ccoef[k]
            c[i] = float(acc)
            acc = mp.mpf(0)
            for k in range(ks, -1, -1):
                acc = acc * y + scoef[k]
            s[i] = float(acc * x) if order >= 1 else 0.0
    return c, s


def build_H_C_taylor(p: RabiParams, order: int) -> OperatorMatrix:
    """Corrected Coulomb-gauge model with order-n Maclaurin cos/sin.

    At order 2 this reduces to the qubit splitting plus
    g_C sigma_y (a+a^dag) - (g_C^2/omega_10) sigma_z (a+a^dag)^2, i.e. the
    sum-rule-corrected quadratic model; as order grows the spectrum converges
    to ``build_H_C_correct`` at the same cutoff.
    """
    a, adag, nph, sx, sy, sz = _parts(p)
    X = a + adag
    spec = hermitian_eig(X)
    cvals, svals = maclaurin_cos_sin(2.0 * p.eta * spec.eigenvalues, order)
    v = spec.eigenvectors
    cosX = OperatorMatrix(_resym((v * cvals) @ v.conj().T), hermitian_hint=True)
    sinX = OperatorMatrix(_resym((v * svals) @ v.conj().T), hermitian_hint=True)
    return (p.omega_c * embed_field(nph, p)
            + 0.5 * p.omega_10 * (kron(sz, cosX) + kron(sy, sinX)))


def _resym(m: np.ndarray) -> np.ndarray:
    return (m + m.conj().T) / 2.0


def build_H_alpha(p: RabiParams, g) -> OperatorMatrix:
    """Gauge family interpolating the dipole (alpha=0) and corrected Coulomb
    (alpha=1) forms; transition energies are alpha-independent.

    ``g`` is a GaugeParam or a bare float in [0, 1].
    """
    alpha = g.alpha if isinstance(g, GaugeParam) else GaugeParam(float(g)).alpha
    a, adag, nph, sx, sy, sz = _parts(p)
    X = a + adag
    two_ae = 2.0 * alpha * p.eta
    cosX = matrix_function(X, lambda w: np.cos(two_ae * w))
    sinX = matrix_function(X, lambda w: np.sin(two_ae * w))
    coupling = OperatorMatrix(1j * (adag.arr - a.arr), hermitian_hint=True)
    return (p.omega_c * embed_field(nph, p)
            + (1.0 - alpha) * p.g_d * kron(sx, coupling)
            + 0.5 * p.omega_10 * (kron(sz, cosX) + kron(sy, sinX)))


def embed_matter(op: OperatorMatrix, p: RabiParams) -> OperatorMatrix:
    return kron(op, identity(p.cutoff + 1))


def embed_field(op: OperatorMatrix, p: RabiParams) -> OperatorMatrix:
    return kron(identity(2), op)


def spectrum_of(H: OperatorMatrix, model_id: str = "", cutoff: Optional[int] = None,
                vectors: bool = False) -> Spectrum:
    return hermitian_eig(H, vectors=vectors, model_id=model_id, cutoff=cutoff)


@dataclass(frozen=True)
class GaugeTheoremReport:
    """Deviation of U H_D U^dag from H_C on the truncated space.

    The comparison restores the scalar eta^2 omega_c that the dipole-gauge
    builder drops (the two-level projection of the quadratic field-coupling
    term), since without it the identity only holds up to that constant.
    ``max_dev_interior`` looks at rows and columns whose Fock index lies in
    the lowest ``interior_fraction`` of the cutoff; the remainder is boundary
    territory where truncation breaks the displacement algebra, reported in
    ``max_dev_full``.
    """

    eta: float
    cutoff: int
    interior_fraction: float
    max_dev_interior: float
    max_dev_full: float
    max_dev_full_rel: float
    tol: float
    passed: bool


def check_gauge_theorem(p: RabiParams, interior_fraction: float = 0.8,
                        tol: float = 1e-8) -> GaugeTheoremReport:
    """Verify U H_D U^dag = H_C as a matrix identity away from the boundary.

    The raw boundary deviation grows like sqrt(cutoff) (the displaced ladder
    operators lose their algebra at the top Fock level, and the matrix scale
    grows with the cutoff), so ``max_dev_full_rel`` normalizes the full-matrix
    deviation by the largest entry of H_C; that relative measure and the
    interior measure both decrease as the cutoff grows.
    """
    if not 0.0 < interior_fraction <= 1.0:
        raise ValueError(f"interior_fraction must be in (0, 1], got {interior_fraction}")
    a, adag, nph, sx, sy, sz = _parts(p)
    X = a + adag
    U = unitary_exp(kron(sx, X), p.eta)
    hd = build_H_D(p) + (p.eta ** 2 * p.omega_c) * identity(p.dim)
    hc = build_H_C_correct(p, method="closed_form")
    dev = conjugate(U, hd).arr - hc.arr
    nf = p.cutoff + 1
    keep = int(np.floor(interior_fraction * nf))
    mask = np.zeros(2 * nf, dtype=bool)
    mask[:keep] = True
    mask[nf:nf + keep] = True
    max_interior = float(np.abs(dev[np.ix_(mask, mask)]).max())
    max_full = float(np.abs(dev).max())
    scale = float(np.abs(hc.arr).max())
    return GaugeTheoremReport(eta=p.eta, cutoff=p.cutoff,
                              interior_fraction=interior_fraction,
                              max_dev_interior=max_interior, max_dev_full=max_full,
                              max_dev_full_rel=max_full / max(scale, 1e-300),
                              tol=tol * p.omega_c,
                              passed=max_interior <= tol * p.omega_c)
