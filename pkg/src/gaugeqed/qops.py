"""Bosonic and collective-spin operators on truncated spaces.

Basis conventions (used everywhere in the package):

* Fock space keeps levels 0..cutoff, dimension cutoff + 1.
* Spin-j space is ordered by ascending m, so at j = 1/2 the qubit basis is
  (ground, excited) and 2*J_k reproduces the Pauli matrices with
  sigma_z = diag(-1, +1).
* Composite spaces are matter (x) field: the matter index varies slowest.

Truncation artefact worth remembering: on the truncated space
[a, a^dag] = 1 everywhere except the top Fock entry, where it is -cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import (DIM_CAP_DEFAULT, DimensionMismatchError, DimensionOverflowError,
                     OperatorMatrix, identity, kron)


@dataclass(frozen=True)
class FockSpace:
    """Photon mode truncated at Fock level ``cutoff`` (dimension cutoff + 1)."""

    cutoff: int

    def __post_init__(self):
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")

    @property
    def dim(self) -> int:
        return self.cutoff + 1

    def ops(self) -> "FockOps":
        return fock_ops(self.cutoff)


@dataclass(frozen=True)
class SpinSpace:
    """Collective spin j = two_j / 2 for two_j two-level dipoles."""

    two_j: int

    def __post_init__(self):
        if self.two_j < 1:
            raise ValueError(f"two_j must be >= 1, got {self.two_j}")

    @property
    def dim(self) -> int:
        return self.two_j + 1

    def ops(self) -> "SpinOps":
        return spin_ops(self.two_j)


class FockOps(NamedTuple):
    a: OperatorMatrix
    adag: OperatorMatrix
    n: OperatorMatrix


class SpinOps(NamedTuple):
    jx: OperatorMatrix
    jy: OperatorMatrix
    jz: OperatorMatrix


def fock_ops(cutoff: int) -> FockOps:
    """Annihilation, creation and number operators on dimension cutoff + 1."""
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    n = np.arange(cutoff + 1)
    a = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    a[np.arange(cutoff), np.arange(1, cutoff + 1)] = np.sqrt(n[1:])
    return FockOps(a=OperatorMatrix(a),
                   adag=OperatorMatrix(a.conj().T),
                   n=OperatorMatrix(np.diag(n.astype(complex)), hermitian_hint=True))


def spin_ops(two_j: int) -> SpinOps:
    """Collective spin operators J_x, J_y, J_z, ascending-m basis."""
    if two_j < 1:
        raise ValueError(f"two_j must be >= 1, got {two_j}")
    j = two_j / 2.0
    m = -j + np.arange(two_j + 1)
    jp = np.zeros((two_j + 1, two_j + 1), dtype=complex)
    jp[np.arange(1, two_j + 1), np.arange(two_j)] = np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1))
    jm = jp.conj().T
    return SpinOps(jx=OperatorMatrix((jp + jm) / 2.0, hermitian_hint=True),
                   jy=OperatorMatrix((jp - jm) / 2.0j, hermitian_hint=True),
                   jz=OperatorMatrix(np.diag(m.astype(complex)), hermitian_hint=True))


def embed(op: OperatorMatrix, slot: str, matter_dim: int, field_dim: int,
          dim_cap: int = DIM_CAP_DEFAULT) -> OperatorMatrix:
    """Lift a single-space operator into the matter (x) field product space."""
    if slot == "matter":
        if op.dim != matter_dim:
            raise DimensionMismatchError(
                f"matter operator has dim {op.dim}, expected {matter_dim}")
        return kron(op, identity(field_dim), dim_cap=dim_cap)
    if slot == "field":
        if op.dim != field_dim:
            raise DimensionMismatchError(
                f"field operator has dim {op.dim}, expected {field_dim}")
        return kron(identity(matter_dim), op, dim_cap=dim_cap)
    raise ValueError(f"slot must be 'matter' or 'field', got {slot!r}")


def pauli() -> SpinOps:
    """Pauli matrices in the (ground, excited) ordering: 2 * spin_ops(1)."""
    jx, jy, jz = spin_ops(1)
    return SpinOps(jx=2.0 * jx, jy=2.0 * jy, jz=2.0 * jz)
