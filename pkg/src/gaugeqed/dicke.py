"""N-dipole (Dicke) Hamiltonians in the collective spin-j representation.

Everything lives in the symmetric sector j = N/2 (dimension N+1); the full
2^N product space adds nothing to the spectrum there.  At N=1 the builders
reduce entry-for-entry to the Rabi builders (2 J_k = sigma_k at j=1/2).

The truncation-consistent construction conjugates the bare splitting
omega_10 J_z by U_N = exp[i 2 eta (a + a^dag) J_x]; the equivalent closed
form carries cos/sin of factor * eta * (a + a^dag) with factor 2 (the spin
rotation identity; a printed variant with factor 4 is accepted for
comparison and does not match the conjugation).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (OperatorMatrix, as_hermitian, conjugate, identity, kron,
                     matrix_function, unitary_exp)
from .qops import fock_ops, spin_ops
from .rabi import RabiParams


@dataclass(frozen=True)
class DickeParams(RabiParams):
    """Rabi parameters plus the number of dipoles; j = n_dipoles / 2."""

    n_dipoles: int = 1

    def __post_init__(self):
        super().__post_init__()
        if self.n_dipoles < 1:
            raise ValueError(f"n_dipoles must be >= 1, got {self.n_dipoles}")

    @property
    def j(self) -> float:
        return self.n_dipoles / 2.0

    @property
    def dim(self) -> int:
        return (self.n_dipoles + 1) * (self.cutoff + 1)


def _parts(p: DickeParams):
    a, adag, nph = fock_ops(p.cutoff)
    jx, jy, jz = spin_ops(p.n_dipoles)
    return a, adag, nph, jx, jy, jz


def _embed_field(op: OperatorMatrix, p: DickeParams) -> OperatorMatrix:
    return kron(identity(p.n_dipoles + 1), op)


def build_dicke_standard(p: DickeParams, diamagnetic=None) -> OperatorMatrix:
    """Naive two-level-per-dipole Coulomb-gauge Dicke model.

    The diamagnetic coefficient defaults to j * 2 g_C^2 / omega_10, the
    per-dipole sum-rule-saturated value (N times the Rabi default).
    """
    a, adag, nph, jx, jy, jz = _parts(p)
    if diamagnetic is None:
        diamagnetic = p.j * 2.0 * p.g_c ** 2 / p.omega_10
    X = as_hermitian(a + adag)
    return (p.omega_c * _embed_field(nph, p)
            + p.omega_10 * kron(jz, identity(p.cutoff + 1))
            + 2.0 * p.g_c * kron(jy, X)
            + diamagnetic * _embed_field(as_hermitian(X @ X), p))


def build_dicke_correct(p: DickeParams, method: str = "conjugation",
                        factor: int = 2) -> OperatorMatrix:
    """Truncation-consistent Coulomb-gauge Dicke model.

    ``method="conjugation"`` (the defining construction, hence the default):
    U_N (omega_10 J_z) U_N^dag + omega_c a^dag a.  ``method="closed_form"``
    evaluates J_z cos[factor * eta * (a+a^dag)] + J_y sin[...]; the rotation
    identity fixes factor=2, and factor=4 is accepted only so tests can
    document that it disagrees with the conjugation route.
    """
    a, adag, nph, jx, jy, jz = _parts(p)
    X = a + adag
    if method == "conjugation":
        U = unitary_exp(kron(jx, X), 2.0 * p.eta)
        H0 = p.omega_10 * kron(jz, identity(p.cutoff + 1))
        return conjugate(U, H0) + p.omega_c * _embed_field(nph, p)
    if method == "closed_form":
        if factor not in (2, 4):
            raise ValueError(f"factor must be 2 or 4, got {factor}")
        fe = float(factor) * p.eta
        cosX = matrix_function(X, lambda w: np.cos(fe * w))
        sinX = matrix_function(X, lambda w: np.sin(fe * w))
        return (p.omega_c * _embed_field(nph, p)
                + p.omega_10 * (kron(jz, cosX) + kron(jy, sinX)))
    raise ValueError(f"unknown method {method!r}")


def build_dicke_dipole(p: DickeParams) -> OperatorMatrix:
    """Dipole-gauge partner of the corrected Dicke model.

    Obtained by the inverse transformation U_N^dag H_C U_N, which evaluates to
    omega_c a^dag a + omega_10 J_z + 2 i g_D (a^dag - a) J_x
    + 4 eta^2 omega_c J_x^2.  The J_x^2 term is the collective analogue of the
    scalar the Rabi builder drops (at N=1 it is eta^2 omega_c times identity);
    here it is operator-valued and must be kept for spectral equivalence.
    """
    a, adag, nph, jx, jy, jz = _parts(p)
    coupling = OperatorMatrix(1j * (adag.arr - a.arr), hermitian_hint=True)
    return (p.omega_c * _embed_field(nph, p)
            + p.omega_10 * kron(jz, identity(p.cutoff + 1))
            + 2.0 * p.g_d * kron(jx, coupling)
            + 4.0 * p.eta ** 2 * p.omega_c * kron(as_hermitian(jx @ jx),
                                                  identity(p.cutoff + 1)))
