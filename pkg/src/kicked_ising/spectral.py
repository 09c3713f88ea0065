"""Quasi-energy spectra of Floquet operators.

Eigenvalues of a Floquet unitary lie on the unit circle, e^{-i*theta_k};
the phases theta_k in (-pi, pi] are the quasi-energies. This module
extracts them, clusters degeneracies, detects a common level spacing, and
finds stroboscopic periods (smallest n with U^n proportional to the
identity) directly from the spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .floquet import FloquetSpec, UnitaryMatrix, build_dense

CLUSTER_TOLERANCE = 1e-7
SPACING_TOLERANCE = 1e-6
PERIOD_TOLERANCE = 1e-7


@dataclass(frozen=True)
class QuasiSpectrum:
    """Sorted quasi-energies with degeneracy clusters.

    ``clusters`` is a list of (center, multiplicity) sorted by center;
    multiplicities add up to the Hilbert-space dimension 2^L.
    """

    thetas: np.ndarray = field(repr=False)
    cluster_tolerance: float
    clusters: list[tuple[float, int]]

    @property
    def dim(self) -> int:
        return self.thetas.size


@dataclass(frozen=True)
class SpacingResult:
    """A uniform ladder fit: centers sit at offset + m*delta for integers m."""

    delta: float
    offset: float
    max_residual: float


@dataclass(frozen=True)
class PeriodReport:
    """Projective and exact-identity recurrence of a Floquet operator.

    ``period`` is the smallest n <= max_n with U^n = phase * I within
    ``tolerance`` in Frobenius norm; ``exact_period`` additionally requires
    the phase to be 1. Either is None when no such n exists in range.
    """

    period: int | None
    phase: complex
    deviation: float
    exact_period: int | None
    exact_deviation: float
    tolerance: float


def _as_unitary_array(u: UnitaryMatrix | np.ndarray) -> np.ndarray:
    if isinstance(u, UnitaryMatrix):
        return u.matrix
    mat = np.asarray(u, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    dev = float(np.linalg.norm(mat.conj().T @ mat - np.eye(mat.shape[0])))
    if dev > 1e-10:
        raise ValueError(f"matrix is not unitary: ||U^H U - I|| = {dev:.3e}")
    return mat


def _cluster_circular(thetas: np.ndarray, tol: float) -> list[tuple[float, int]]:
    """Group sorted phases into clusters, merging across the +-pi seam."""
    groups: list[list[float]] = [[float(thetas[0])]]
    for t in thetas[1:]:
        if float(t) - groups[-1][-1] > tol:
            groups.append([float(t)])
        else:
            groups[-1].append(float(t))
    # theta is defined mod 2pi, so a level at exactly pi can split into
    # values near -pi and near +pi; fold the last group onto the first.
    if len(groups) > 1 and (groups[0][0] + 2 * np.pi) - groups[-1][-1] <= tol:
        folded = [t - 2 * np.pi for t in groups.pop()]
        groups[0] = folded + groups[0]
    clusters = []
    for g in groups:
        center = float(np.mean(g))
        if center <= -np.pi + tol / 2:
            center += 2 * np.pi
        clusters.append((center, len(g)))
    return sorted(clusters)


def quasi_energies(
    u: UnitaryMatrix | np.ndarray, cluster_tolerance: float = CLUSTER_TOLERANCE
) -> QuasiSpectrum:
    """Quasi-energies theta_k = -arg(lambda_k) in (-pi, pi], sorted ascending.

    Eigenvalues come from a complex Schur decomposition; because the input
    is normal its Schur form is diagonal and the Schur basis is an
    orthonormal eigenbasis. Residuals ||U v - lambda v|| are enforced.
    """
    mat = _as_unitary_array(u)
    t, z = scipy.linalg.schur(mat, output="complex")
    lam = np.diag(t)
    residuals = np.linalg.norm(mat @ z - z * lam[None, :], axis=0)
    worst = float(residuals.max())
    if worst > 1e-9:
        raise ValueError(f"eigenpair residual {worst:.3e} exceeds 1e-9")
    thetas = -np.angle(lam)
    thetas[thetas <= -np.pi + 1e-15] += 2 * np.pi
    thetas = np.sort(thetas)
    return QuasiSpectrum(
        thetas=thetas,
        cluster_tolerance=cluster_tolerance,
        clusters=_cluster_circular(thetas, cluster_tolerance),
    )


def degeneracy_histogram(spectrum: QuasiSpectrum) -> list[tuple[float, int]]:
    """(theta_center, count) pairs sorted by theta; counts sum to 2^L."""
    return list(spectrum.clusters)


def _real_gcd(a: float, b: float, tol: float) -> float:
    """Greatest common divisor of two positive reals up to ``tol``."""
    a, b = abs(a), abs(b)
    while b > tol:
        a, b = b, abs(a - b * round(a / b))
    return a


def detect_spacing(
    spectrum: QuasiSpectrum, tol: float = SPACING_TOLERANCE
) -> SpacingResult | None:
    """Fit cluster centers to a uniform ladder offset + m*delta.

    Returns None when no consistent spacing exists within ``tol``.
    """
    centers = np.array([c for c, _ in spectrum.clusters], dtype=float)
    if centers.size < 2:
        raise ValueError("spacing detection needs at least 2 distinct clusters")
    gaps = np.diff(centers)
    delta = gaps[0]
    for g in gaps[1:]:
        delta = _real_gcd(delta, float(g), tol)
    if delta <= tol:
        return None
    residues = centers % delta
    # Residues near 0 and near delta are the same offset; unwrap before
    # averaging.
    if residues.max() - residues.min() > delta / 2:
        residues = np.where(residues > delta / 2, residues - delta, residues)
    offset = float(np.mean(residues)) % delta
    steps = np.round((centers - offset) / delta)
    max_residual = float(np.abs(centers - offset - steps * delta).max())
    if max_residual > tol:
        return None
    return SpacingResult(delta=float(delta), offset=offset, max_residual=max_residual)


def detect_period_from_thetas(
    thetas: np.ndarray, max_n: int, tol: float = PERIOD_TOLERANCE
) -> PeriodReport:
    """Find recurrences of a spectrum: U^n = phase*I iff all n*theta_k agree.

    The Frobenius distance of U^n from phase*I equals
    sqrt(sum_k |e^{-i n theta_k} - phase|^2) because U is normal, so the
    scan needs only the quasi-energies, never a matrix power.
    """
    if max_n < 1:
        raise ValueError(f"max_n must be positive, got {max_n}")
    th = np.asarray(thetas, dtype=float)
    period = exact_period = None
    phase = complex(1.0)
    deviation = exact_deviation = float("inf")
    for n in range(1, max_n + 1):
        z = np.exp(-1j * n * th)
        mean = z.mean()
        if abs(mean) > 1e-12:
            best = mean / abs(mean)
            dev = float(np.sqrt(np.sum(np.abs(z - best) ** 2)))
            if period is None and dev < tol:
                period, phase, deviation = n, complex(best), dev
            dev1 = float(np.sqrt(np.sum(np.abs(z - 1.0) ** 2)))
            if exact_period is None and dev1 < tol:
                exact_period, exact_deviation = n, dev1
        if period is not None and exact_period is not None:
            break
    return PeriodReport(
        period=period,
        phase=phase,
        deviation=deviation,
        exact_period=exact_period,
        exact_deviation=exact_deviation,
        tolerance=tol,
    )


def detect_period(
    spec: FloquetSpec, max_n: int, tol: float = PERIOD_TOLERANCE
) -> PeriodReport:
    """Period detection for a Floquet operator built from ``spec`` (L <= 12)."""
    spectrum = quasi_energies(build_dense(spec))
    return detect_period_from_thetas(spectrum.thetas, max_n, tol)
