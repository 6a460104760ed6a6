"""Dense statevector simulation for the small circuits used by the encodings.

Bit ordering: qubit 0 is the most significant bit of the basis index, so the
amplitude array reshaped to ``(2,) * q`` has qubit k on axis k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .rng import SplitMix64

MAX_QUBITS = 24
MAX_OBSERVABLE_QUBITS = 12

_H = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


@dataclass(frozen=True)
class Statevector:
    num_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.sum(self.probabilities()))


@dataclass(frozen=True)
class ShotHistogram:
    """Sampled outcome counts, stored densely (index = basis state)."""

    num_qubits: int
    counts: np.ndarray = field(repr=False)

    @property
    def shots(self) -> int:
        return int(self.counts.sum())

    def as_dict(self) -> dict[int, int]:
        return {int(k): int(self.counts[k]) for k in np.flatnonzero(self.counts)}

    @classmethod
    def from_dict(cls, num_qubits: int, counts: dict[int, int]) -> "ShotHistogram":
        dense = np.zeros(1 << num_qubits, dtype=np.int64)
        for k, c in counts.items():
            if not 0 <= k < dense.size:
                raise ValueError(f"basis index {k} out of range for {num_qubits} qubits")
            if c < 0:
                raise ValueError("counts must be non-negative")
            dense[k] = c
        return cls(num_qubits, dense)


def new_state(q: int) -> Statevector:
    if not 1 <= q <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {q}")
    amps = np.zeros(1 << q, dtype=np.complex128)
    amps[0] = 1.0
    return Statevector(q, amps)


def _check_qubit(s: Statevector, k: int) -> None:
    if not 0 <= k < s.num_qubits:
        raise IndexError(f"qubit {k} out of range for {s.num_qubits} qubits")


def apply_1q(s: Statevector, target: int, gate: np.ndarray) -> Statevector:
    """Apply a 2x2 matrix to one qubit."""
    _check_qubit(s, target)
    psi = s.amplitudes.reshape(1 << target, 2, -1)
    return Statevector(s.num_qubits, np.matmul(gate, psi).reshape(-1))


def apply_h(s: Statevector, target: int) -> Statevector:
    return apply_1q(s, target, _H)


def ry_matrix(theta: float) -> np.ndarray:
    c, sn = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -sn], [sn, c]])


def apply_ry(s: Statevector, target: int, theta: float) -> Statevector:
    return apply_1q(s, target, ry_matrix(theta))


def apply_cnot(s: Statevector, control: int, target: int) -> Statevector:
    _check_qubit(s, control)
    _check_qubit(s, target)
    if control == target:
        raise ValueError("control and target must differ")
    psi = s.amplitudes.reshape((2,) * s.num_qubits).copy()
    sel = [slice(None)] * s.num_qubits
    sel[control] = 1
    sub = psi[tuple(sel)]
    # target axis shifts down by one once the control axis is indexed away
    t_axis = target - 1 if target > control else target
    psi[tuple(sel)] = np.flip(sub, axis=t_axis)
    return Statevector(s.num_qubits, psi.reshape(-1))


def apply_diagonal(s: Statevector, phases) -> Statevector:
    phases = np.asarray(phases, dtype=np.float64)
    if phases.shape != s.amplitudes.shape:
        raise ValueError(f"expected {s.amplitudes.size} phases, got {phases.size}")
    return Statevector(s.num_qubits, np.exp(1j * phases) * s.amplitudes)


def expectation(s: Statevector, m: np.ndarray) -> float:
    """<psi|m|psi> for a real symmetric observable."""
    m = np.asarray(m)
    dim = s.amplitudes.size
    if m.shape != (dim, dim):
        raise ValueError(f"observable shape {m.shape} does not match state dimension {dim}")
    if s.num_qubits > MAX_OBSERVABLE_QUBITS:
        raise ValueError(f"dense observables limited to {MAX_OBSERVABLE_QUBITS} qubits")
    val = np.vdot(s.amplitudes, m @ s.amplitudes)
    if abs(val.imag) > 1e-10:
        raise ValueError(f"observable is not Hermitian (imaginary part {val.imag:.3g})")
    return float(val.real)


def sample(s: Statevector, shots: int, seed: int) -> ShotHistogram:
    """Inverse-CDF sampling of ``shots`` outcomes with a SplitMix64 stream."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    cdf = np.cumsum(s.probabilities())
    cdf /= cdf[-1]
    u = np.sort(SplitMix64(seed).random(shots))
    # outcome of draw u is the first k with cdf[k] > u; count per outcome from the sorted draws
    below = np.searchsorted(u, cdf, side="left")
    below[-1] = shots
    return ShotHistogram(s.num_qubits, np.diff(below, prepend=0).astype(np.int64))
