"""Basis conventions, state construction, single-site gates, partial trace.

Conventions fixed here and relied on everywhere else:

* Basis states are labeled by integers whose binary digits give the
  z-basis configuration, with site 1 stored in the most significant bit.
* Bit value b at a site means the sigma^z eigenvalue (-1)^b.
* sigma^y eigenvectors are |y+-> = (|0> +- i|1>)/sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

MAX_SITES = 14

_EIGENVECTORS = {
    ("x", +1): np.array([1, 1], dtype=complex) / np.sqrt(2),
    ("x", -1): np.array([1, -1], dtype=complex) / np.sqrt(2),
    ("y", +1): np.array([1, 1j], dtype=complex) / np.sqrt(2),
    ("y", -1): np.array([1, -1j], dtype=complex) / np.sqrt(2),
    ("z", +1): np.array([1, 0], dtype=complex),
    ("z", -1): np.array([0, 1], dtype=complex),
}

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"x": PAULI_X, "y": PAULI_Y, "z": PAULI_Z}


@dataclass(frozen=True)
class Axis:
    """A signed Pauli axis: one of x, y, z together with a +-1 sign."""

    letter: str
    sign: int = +1

    def __post_init__(self) -> None:
        if self.letter not in ("x", "y", "z"):
            raise ValueError(f"axis letter must be x, y or z, got {self.letter!r}")
        if self.sign not in (+1, -1):
            raise ValueError(f"axis sign must be +1 or -1, got {self.sign!r}")

    @classmethod
    def parse(cls, text: str) -> "Axis":
        """Parse strings like 'z', 'z+', 'y-' (case insensitive)."""
        t = text.strip().lower()
        if t and t[0] in "xyz":
            if len(t) == 1:
                return cls(t, +1)
            if len(t) == 2 and t[1] in "+-":
                return cls(t[0], +1 if t[1] == "+" else -1)
        raise ValueError(f"cannot parse axis from {text!r}")

    def eigenvector(self) -> np.ndarray:
        """The normalized single-qubit eigenvector of sigma^letter with this sign."""
        return _EIGENVECTORS[(self.letter, self.sign)].copy()

    def pauli(self) -> np.ndarray:
        return PAULI[self.letter].copy()

    def __neg__(self) -> "Axis":
        return Axis(self.letter, -self.sign)

    def __str__(self) -> str:
        return self.letter + ("+" if self.sign > 0 else "-")


@dataclass(frozen=True)
class StateVector:
    """Pure state of an L-site chain as 2^L complex amplitudes (z basis)."""

    num_sites: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if not 1 <= self.num_sites <= MAX_SITES:
            raise ValueError(f"num_sites must be in [1, {MAX_SITES}], got {self.num_sites}")
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2 ** self.num_sites,):
            raise ValueError(
                f"expected {2 ** self.num_sites} amplitudes, got shape {amps.shape}"
            )
        nrm2 = float(np.vdot(amps, amps).real)
        if abs(nrm2 - 1.0) > 1e-9:
            raise ValueError(f"state is not normalized: |psi|^2 = {nrm2!r}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2 ** self.num_sites


@dataclass(frozen=True)
class DensityMatrix:
    """Reduced state of l sites: Hermitian, unit-trace, PSD 2^l x 2^l matrix."""

    num_sites: int
    elements: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if not 1 <= self.num_sites <= MAX_SITES:
            raise ValueError(f"num_sites must be in [1, {MAX_SITES}], got {self.num_sites}")
        rho = np.asarray(self.elements, dtype=complex)
        d = 2 ** self.num_sites
        if rho.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix, got shape {rho.shape}")
        if np.abs(rho - rho.conj().T).max() > 1e-12:
            raise ValueError("density matrix is not Hermitian")
        tr = complex(np.trace(rho))
        if abs(tr - 1.0) > 1e-12:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        if float(np.linalg.eigvalsh(rho).min()) < -1e-10:
            raise ValueError("density matrix has a significantly negative eigenvalue")
        object.__setattr__(self, "elements", rho)


def _kron_power(v: np.ndarray, n: int) -> np.ndarray:
    out = np.array([1.0], dtype=complex)
    for _ in range(n):
        out = np.kron(out, v)
    return out


def make_polarized_state(num_sites: int, axis: Axis) -> StateVector:
    """Product state with every site in the chosen sigma^alpha eigenstate."""
    if not 1 <= num_sites <= MAX_SITES:
        raise ValueError(f"num_sites must be in [1, {MAX_SITES}], got {num_sites}")
    return StateVector(num_sites, _kron_power(axis.eigenvector(), num_sites))


def make_ghz(num_sites: int, axis: Axis) -> StateVector:
    """(|a+ ... a+> + |a- ... a->)/sqrt(2) in the z basis, a = axis.letter.

    The sign carried by ``axis`` is irrelevant here; both branches enter
    with a real positive coefficient.
    """
    if num_sites < 2:
        raise ValueError(f"GHZ state needs at least 2 sites, got {num_sites}")
    if num_sites > MAX_SITES:
        raise ValueError(f"num_sites must be at most {MAX_SITES}, got {num_sites}")
    plus = _kron_power(Axis(axis.letter, +1).eigenvector(), num_sites)
    minus = _kron_power(Axis(axis.letter, -1).eigenvector(), num_sites)
    return StateVector(num_sites, (plus + minus) / np.sqrt(2))


def make_psi_o(num_sites: int) -> StateVector:
    """Product of two z-basis GHZ blocks on sites 1..L/2 and L/2+1..L."""
    if num_sites % 2 != 0 or num_sites < 4:
        raise ValueError(f"num_sites must be even and >= 4, got {num_sites}")
    if num_sites > MAX_SITES:
        raise ValueError(f"num_sites must be at most {MAX_SITES}, got {num_sites}")
    half = num_sites // 2
    block = np.zeros(2 ** half, dtype=complex)
    block[0] = block[-1] = 1 / np.sqrt(2)
    return StateVector(num_sites, np.kron(block, block))


def apply_matrix_at_site(
    amplitudes: np.ndarray, num_sites: int, site: int, matrix: np.ndarray
) -> np.ndarray:
    """Apply a 2x2 matrix at one site of a (2^L,) or (2^L, batch) array.

    Site 1 is the most significant bit. The input is not modified.
    """
    if not 1 <= site <= num_sites:
        raise IndexError(f"site must be in [1, {num_sites}], got {site}")
    shape = amplitudes.shape
    left = 2 ** (site - 1)
    view = amplitudes.reshape(left, 2, -1)
    out = np.einsum("pq,aqc->apc", matrix, view)
    return np.ascontiguousarray(out).reshape(shape)


def apply_site_rotation(
    state: StateVector, site: int, axis: Axis, angle: float
) -> StateVector:
    """Apply exp(-i * angle * sigma^alpha) at one site."""
    rot = np.cos(angle) * np.eye(2, dtype=complex) - 1j * np.sin(angle) * axis.pauli()
    amps = apply_matrix_at_site(state.amplitudes, state.num_sites, site, rot)
    return StateVector(state.num_sites, amps)


def partial_trace(state: StateVector, kept_sites: Sequence[int]) -> DensityMatrix:
    """Reduced density matrix on ``kept_sites`` (1-based, strictly increasing)."""
    kept = list(kept_sites)
    L = state.num_sites
    if not kept:
        raise ValueError("kept_sites must be nonempty")
    if any(not 1 <= s <= L for s in kept):
        raise ValueError(f"kept_sites must lie in [1, {L}], got {kept}")
    if any(b <= a for a, b in zip(kept, kept[1:])):
        raise ValueError(f"kept_sites must be strictly increasing, got {kept}")
    kept0 = [s - 1 for s in kept]
    rest = [q for q in range(L) if q not in kept0]
    tensor = state.amplitudes.reshape((2,) * L)
    mat = np.transpose(tensor, kept0 + rest).reshape(2 ** len(kept0), -1)
    rho = mat @ mat.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(len(kept0), rho)


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2; equals 1 exactly when the states agree up to a global phase."""
    if a.num_sites != b.num_sites:
        raise ValueError(
            f"states live on different chains: {a.num_sites} vs {b.num_sites} sites"
        )
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)
