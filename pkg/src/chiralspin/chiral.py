"""Classify operators as commuting or anticommuting with a Hamiltonian,
check spectra for mirror pairing and zero modes, map eigenstates across the
pairing, and search a finite family of rotation products for anticommuting
partners."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import linalg
from .rotations import (
    CompositeRotation,
    RotationSpec,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    composite_matrix,
    parse_angle,
    unit_axis,
)

__all__ = [
    "ChiralMapReport",
    "DEFAULT_SEARCH_ANGLES",
    "DEFAULT_SEARCH_AXES",
    "DEFAULT_TOL",
    "OddPowerTraceReport",
    "PairingReport",
    "Symmetry",
    "SymmetryVerdict",
    "chiral_map_check",
    "classify",
    "default_pairing_tol",
    "pairing_check",
    "search_partners",
    "trace_oddpower_check",
]

DEFAULT_TOL = 1e-10
DEFAULT_SEARCH_AXES = (X_AXIS, Y_AXIS, Z_AXIS)
DEFAULT_SEARCH_ANGLES = (math.pi, math.pi / 2.0)


class Symmetry(Enum):
    COMMUTING = "commuting"
    ANTICOMMUTING = "anticommuting"
    BOTH = "both"
    NEITHER = "neither"


@dataclass(frozen=True)
class SymmetryVerdict:
    kind: Symmetry
    residual_commute: float
    residual_anticommute: float


def classify(c, h, tol: float = DEFAULT_TOL) -> SymmetryVerdict:
    """Classify C against H by the relative Frobenius residuals of [C, H] and
    {C, H}. BOTH only occurs for trivial operators (either factor zero)."""
    comm = linalg.commutator(c, h)
    anti = linalg.anticommutator(c, h)
    denom = linalg.frobenius(c) * linalg.frobenius(h)
    if denom == 0.0:
        rc = ra = 0.0
    else:
        rc = linalg.frobenius(comm) / denom
        ra = linalg.frobenius(anti) / denom
    if rc < tol and ra < tol:
        kind = Symmetry.BOTH
    elif rc < tol:
        kind = Symmetry.COMMUTING
    elif ra < tol:
        kind = Symmetry.ANTICOMMUTING
    else:
        kind = Symmetry.NEITHER
    return SymmetryVerdict(kind, rc, ra)


def default_pairing_tol(h) -> float:
    """1e-9 * max(1, ||H||_F): default for pair mismatch and zero modes."""
    return 1e-9 * max(1.0, linalg.frobenius(h))


@dataclass(frozen=True)
class PairingReport:
    """Mirror pairing of a sorted spectrum: (lambda+, lambda-, |sum|) pairs
    plus the zero modes sitting outside the pairing."""

    pairs: tuple[tuple[float, float, float], ...]
    zero_modes: int
    is_chiral_paired: bool

    @property
    def max_mismatch(self) -> float:
        return max((m for _, _, m in self.pairs), default=0.0)


def pairing_check(eigenvalues, tol_pair: float, tol_zero: float) -> PairingReport:
    """Match sorted eigenvalues from opposite ends inward into +/- pairs.

    Eigenvalues with |lambda| < tol_zero count as zero modes; for a genuinely
    paired spectrum they occupy the centre of the sorted list, so
    2*len(pairs) + zero_modes = len(eigenvalues) whenever pairing holds.
    """
    values = [float(x) for x in eigenvalues]
    if any(values[i] > values[i + 1] for i in range(len(values) - 1)):
        raise ValueError("eigenvalues must be sorted ascending")
    n = len(values)
    zero_modes = sum(1 for x in values if abs(x) < tol_zero)
    pairs = tuple(
        (values[n - 1 - i], values[i], abs(values[i] + values[n - 1 - i]))
        for i in range((n - zero_modes) // 2)
    )
    paired = (n - zero_modes) % 2 == 0 and all(m < tol_pair for _, _, m in pairs)
    return PairingReport(pairs, zero_modes, paired)


@dataclass(frozen=True)
class ChiralMapReport:
    """Worst residual of H(C psi) + lambda (C psi) over nonzero eigenpairs."""

    checked: int
    max_residual: float
    bound: float
    ok: bool


def chiral_map_check(c, h, tol: float = DEFAULT_TOL, tol_zero: float | None = None) -> ChiralMapReport:
    """Verify that C maps each eigenvector at +lambda to one at -lambda."""
    verdict = classify(c, h, tol)
    if verdict.residual_anticommute >= tol:
        raise ValueError(
            "operator does not anticommute with the Hamiltonian "
            f"(residual {verdict.residual_anticommute:.3e})"
        )
    c = linalg.as_matrix(c)
    h = linalg.as_matrix(h)
    eig = linalg.hermitian_eigensolve(h)
    if tol_zero is None:
        tol_zero = default_pairing_tol(h)
    bound = 1e-9 * linalg.frobenius(h)
    worst = 0.0
    checked = 0
    for lam, vec in zip(eig.eigenvalues, eig.eigenvectors.T):
        if abs(lam) <= tol_zero:
            continue
        mapped = c @ vec
        worst = max(worst, float(np.linalg.norm(h @ mapped + lam * mapped)))
        checked += 1
    return ChiralMapReport(checked, worst, bound, worst <= bound)


def search_partners(h, dims, angles=None, axes=None, tol: float = DEFAULT_TOL) -> list[CompositeRotation]:
    """Return every composite rotation from the candidate family that
    anticommutes with H.

    Each slot independently takes no rotation or one (axis, angle) pair from
    the family; candidates are enumerated in a fixed lexicographic order, so
    the output order is deterministic. Phase-equivalent operators built from
    different factor lists are reported separately.
    """
    h = linalg.as_matrix(h)
    dims = tuple(int(d) for d in dims)
    if math.prod(dims) != h.shape[0]:
        raise ValueError(
            f"subsystem dims {dims} do not multiply to the matrix dimension {h.shape[0]}"
        )
    axes = DEFAULT_SEARCH_AXES if axes is None else tuple(unit_axis(a) for a in axes)
    angles = DEFAULT_SEARCH_ANGLES if angles is None else tuple(parse_angle(a) for a in angles)
    per_slot = [None] + [(axis, angle) for axis in axes for angle in angles]
    found = []
    for combo in itertools.product(per_slot, repeat=len(dims)):
        factors = []
        for slot, choice in enumerate(combo):
            if choice is not None:
                axis, angle = choice
                factors.append(RotationSpec(slot, axis, angle))
        if not factors:
            continue
        candidate = CompositeRotation(tuple(factors))
        verdict = classify(composite_matrix(candidate, dims), h, tol)
        if verdict.kind is Symmetry.ANTICOMMUTING:
            found.append(candidate)
    return found


@dataclass(frozen=True)
class OddPowerTraceReport:
    """(power, trace, allowed bound) rows; all traces vanish iff the spectrum
    is mirror symmetric."""

    traces: tuple[tuple[int, float, float], ...]
    all_vanish: bool


def trace_oddpower_check(h, max_power: int = 7) -> OddPowerTraceReport:
    """tr(H^k) for odd k <= max_power, each judged against 1e-9 ||H||_F^k."""
    h = linalg.require_hermitian(h)
    hnorm = linalg.frobenius(h)
    hsq = h @ h
    power = h
    rows = []
    k = 1
    while k <= max_power:
        rows.append((k, float(np.trace(power).real), 1e-9 * hnorm**k))
        power = power @ hsq
        k += 2
    ok = all(abs(value) <= bound for _, value, bound in rows)
    return OddPowerTraceReport(tuple(rows), ok)
