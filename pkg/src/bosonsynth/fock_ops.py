"""Truncated-oscillator and qubit operator constructors.

A mode with cutoff L lives on the span of |0>..|L> (dimension L+1). The
annihilation matrix keeps the entries a[n, n+1] = sqrt(n+1); everything else
is built from it, so truncation artifacts are confined to the top state and
show up only where a commutator or product reaches |L>.
"""
from __future__ import annotations

import math

import numpy as np

from .tensor_core import HilbertLayout, Operator, identity

__all__ = [
    "annihilation",
    "creation",
    "number",
    "position",
    "momentum",
    "ladder_power_norm",
    "pauli",
    "qubit_gate",
    "embed",
    "vacuum_parity_flip",
    "interior_projector",
    "mode_identity",
]


def annihilation(cutoff: int) -> Operator:
    layout = HilbertLayout.single_mode(cutoff)
    mat = np.zeros((cutoff + 1, cutoff + 1), dtype=np.complex128)
    for n in range(cutoff):
        mat[n, n + 1] = math.sqrt(n + 1)
    return Operator(layout, mat)


def creation(cutoff: int) -> Operator:
    return annihilation(cutoff).dag()


def number(cutoff: int) -> Operator:
    layout = HilbertLayout.single_mode(cutoff)
    return Operator(layout, np.diag(np.arange(cutoff + 1, dtype=np.complex128)))


def position(cutoff: int) -> Operator:
    """x = (a + a^dag)/2, so [x, p] = i/2 away from the top state."""
    a = annihilation(cutoff)
    return 0.5 * (a + a.dag())


def momentum(cutoff: int) -> Operator:
    a = annihilation(cutoff)
    return -0.5j * (a - a.dag())


def ladder_power_norm(cutoff: int, k: int) -> float:
    """Spectral norm of a^k on cutoff L: sqrt(L! / (L-k)!)."""
    if k > cutoff:
        return 0.0
    acc = 1.0
    for j in range(cutoff, cutoff - k, -1):
        acc *= j
    return math.sqrt(acc)


_PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def pauli(name: str) -> Operator:
    try:
        mat = _PAULI[name.upper()]
    except KeyError:
        raise ValueError(f"unknown Pauli {name!r}") from None
    return Operator(HilbertLayout.single_qubit(), mat)


def qubit_gate(name: str) -> Operator:
    """Fixed single-qubit Clifford-frame gates used to steer block targets."""
    layout = HilbertLayout.single_qubit()
    if name == "X":
        return Operator(layout, _PAULI["X"])
    if name == "H":
        return Operator(layout, np.array([[1, 1], [1, -1]]) / math.sqrt(2))
    if name == "S":
        return Operator(layout, np.diag([1.0, 1.0j]))
    if name == "Sdg":
        return Operator(layout, np.diag([1.0, -1.0j]))
    raise ValueError(f"unknown gate {name!r}")


def embed(op: Operator, layout: HilbertLayout, at: int) -> Operator:
    """Lift a single-factor operator to a full layout, identity elsewhere.

    The factor at position `at` must match the operator's own dimension.
    """
    if op.layout.nfactors != 1:
        raise ValueError("embed expects a single-factor operator")
    if layout.dim_of(at) != op.dim:
        raise ValueError(
            f"factor {at} has dim {layout.dim_of(at)}, operator has dim {op.dim}"
        )
    mat = np.eye(1, dtype=np.complex128)
    for pos, (kind, d) in enumerate(layout.factors):
        mat = np.kron(mat, op.mat if pos == at else np.eye(d))
    return Operator(layout, mat)


def vacuum_parity_flip(cutoff: int) -> Operator:
    """R = I - 2|0><0| on one mode: flips the sign of the vacuum component."""
    diag = np.ones(cutoff + 1, dtype=np.complex128)
    diag[0] = -1.0
    return Operator(HilbertLayout.single_mode(cutoff), np.diag(diag))


def interior_projector(cutoff: int, weight: int) -> Operator:
    """Projector onto photon numbers <= cutoff - weight.

    States that a degree-`weight` ladder monomial cannot push past the cutoff.
    """
    diag = np.zeros(cutoff + 1, dtype=np.complex128)
    diag[: max(cutoff + 1 - weight, 0)] = 1.0
    return Operator(HilbertLayout.single_mode(cutoff), np.diag(diag))


def mode_identity(cutoff: int) -> Operator:
    return identity(HilbertLayout.single_mode(cutoff))
