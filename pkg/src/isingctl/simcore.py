"""Full Hilbert-space simulation of the all-to-all Ising model under global pulses.

Basis index ``k`` is read as an n-bit string; bit ``i`` (LSB = 0) is qubit
``i`` and a set bit is an excitation. ``|0>`` is the +1 eigenstate of sigma^z.

Every pulse is an instantaneous propagator ``exp(-i * angle * H)`` with ``H`` one
of

    H_zz = sum_{k<m} sz_k sz_m,   H_x = sum_k sx_k,   H_y = sum_k sy_k.

Pulses in a sequence are listed in time order, so the first pulse is the
rightmost factor of the total propagator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "ContractViolation",
    "PULSE_KINDS",
    "StateVector",
    "Pulse",
    "PulseSequence",
    "spin_up_count",
    "ising_eigenvalue",
    "ising_diagonal",
    "apply_zz",
    "apply_global_rotation",
    "apply_pulse",
    "apply_sequence",
    "zero_state",
    "ghz_state",
    "w_state",
    "fidelity",
]

PULSE_KINDS = ("ZZ", "X", "Y")
BASES = ("full", "symmetric", "block")


class ContractViolation(ValueError):
    """Raised when an operation receives inputs outside its contract."""


@dataclass(frozen=True)
class StateVector:
    """Normalized amplitudes of an ``n``-spin state over a labelled basis.

    ``basis`` is ``"full"`` (length 2**n), ``"symmetric"`` (Dicke basis,
    length n+1) or ``"block"`` (coordinates in one parity sector).
    """

    n: int
    basis: str
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        if self.basis not in BASES:
            raise ValueError(f"unknown basis tag {self.basis!r}")
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        expected = {"full": 2**self.n, "symmetric": self.n + 1}.get(self.basis)
        if expected is not None and amps.size != expected:
            raise ValueError(
                f"{self.basis} basis for n={self.n} needs {expected} amplitudes, "
                f"got {amps.size}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def with_amps(self, amps) -> "StateVector":
        return StateVector(self.n, self.basis, amps)


@dataclass(frozen=True)
class Pulse:
    kind: str
    angle: float

    def __post_init__(self):
        if self.kind not in PULSE_KINDS:
            raise ValueError(f"pulse kind must be one of {PULSE_KINDS}, got {self.kind!r}")
        angle = float(self.angle)
        if not np.isfinite(angle):
            raise ValueError(f"pulse angle must be finite, got {self.angle!r}")
        object.__setattr__(self, "angle", angle)

    def __str__(self):
        return f"{self.kind}({self.angle:.6g})"


@dataclass(frozen=True)
class PulseSequence:
    """Time-ordered pulses; ``pulses[0]`` acts first."""

    n: int
    pulses: tuple[Pulse, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        object.__setattr__(self, "pulses", tuple(self.pulses))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[str, float]]) -> "PulseSequence":
        return cls(n, tuple(Pulse(kind, angle) for kind, angle in pairs))

    def __len__(self) -> int:
        return len(self.pulses)

    def __iter__(self) -> Iterator[Pulse]:
        return iter(self.pulses)

    def __add__(self, other: "PulseSequence") -> "PulseSequence":
        if not isinstance(other, PulseSequence):
            return NotImplemented
        if other.n != self.n:
            raise ContractViolation(f"cannot join sequences for n={self.n} and n={other.n}")
        return PulseSequence(self.n, self.pulses + other.pulses)

    def __str__(self):
        return " - ".join(str(p) for p in self.pulses) or "<identity>"


def _check_index(k: int, n: int) -> None:
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    if not 0 <= k < 2**n:
        raise ValueError(f"basis index {k} out of range for n={n}")


def spin_up_count(k: int, n: int) -> int:
    """Number of excited qubits (set bits) in basis index ``k``."""
    _check_index(k, n)
    return int(k).bit_count()


def ising_eigenvalue(k: int, n: int) -> float:
    """Eigenvalue of H_zz on ``|k>``: n(n-1)/2 - 2 s (n - s)."""
    s = spin_up_count(k, n)
    return float(n * (n - 1) // 2 - 2 * s * (n - s))


def _popcounts(n: int) -> np.ndarray:
    k = np.arange(2**n, dtype=np.int64)
    counts = np.zeros_like(k)
    for i in range(n):
        counts += (k >> i) & 1
    return counts


def ising_diagonal(n: int) -> np.ndarray:
    """All 2**n eigenvalues of H_zz, indexed by basis state."""
    s = _popcounts(n)
    return (n * (n - 1) // 2 - 2 * s * (n - s)).astype(float)


def _require_full(state: StateVector) -> None:
    if state.basis != "full":
        raise ContractViolation(f"expected a full-basis state, got basis={state.basis!r}")


def apply_zz(state: StateVector, tau: float) -> StateVector:
    _require_full(state)
    phases = np.exp(-1j * tau * ising_diagonal(state.n))
    return state.with_amps(phases * state.amps)


def _single_qubit_rotation(axis: str, beta: float) -> np.ndarray:
    c, s = np.cos(beta), np.sin(beta)
    if axis == "X":
        return np.array([[c, -1j * s], [-1j * s, c]])
    if axis == "Y":
        return np.array([[c, -s], [s, c]], dtype=complex)
    raise ValueError(f"rotation axis must be 'X' or 'Y', got {axis!r}")


def apply_global_rotation(state: StateVector, axis: str, beta: float) -> StateVector:
    """Apply ``exp(-i beta H_axis)`` as n single-qubit rotations."""
    _require_full(state)
    rot = _single_qubit_rotation(axis, beta)
    n = state.n
    psi = np.array(state.amps)
    for i in range(n):
        # qubit i is the middle axis of (high bits, bit i, low bits)
        psi = np.einsum("ab,lbr->lar", rot, psi.reshape(2 ** (n - 1 - i), 2, 2**i))
    return state.with_amps(psi.reshape(-1))


def apply_pulse(state: StateVector, pulse: Pulse) -> StateVector:
    if pulse.kind == "ZZ":
        return apply_zz(state, pulse.angle)
    return apply_global_rotation(state, pulse.kind, pulse.angle)


def apply_sequence(state: StateVector, seq: PulseSequence) -> StateVector:
    """Evolve ``state`` through ``seq`` in time order.

    Full-basis states are simulated exactly in the 2**n space; symmetric-basis
    states are evolved in the (n+1)-dimensional Dicke representation.
    """
    if seq.n != state.n:
        raise ContractViolation(f"sequence is for n={seq.n} but state has n={state.n}")
    if state.basis == "symmetric":
        from .symmetry import parity_sector, evolve_symmetric

        rep = parity_sector(state.n, "symmetric")
        amps = state.amps
        for pulse in seq:
            amps = evolve_symmetric(amps, pulse, rep)
        return state.with_amps(amps)
    _require_full(state)
    for pulse in seq:
        state = apply_pulse(state, pulse)
    return state


def zero_state(n: int) -> StateVector:
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = 1.0
    return StateVector(n, "full", amps)


def _check_target_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"target states need n >= 2, got {n}")


def ghz_state(n: int) -> StateVector:
    _check_target_n(n)
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return StateVector(n, "full", amps)


def w_state(n: int) -> StateVector:
    _check_target_n(n)
    amps = np.zeros(2**n, dtype=complex)
    amps[[1 << i for i in range(n)]] = 1 / np.sqrt(n)
    return StateVector(n, "full", amps)


def fidelity(a: StateVector, b: StateVector) -> float:
    """Overlap modulus ``|<a|b>|``, blind to global phase."""
    if a.n != b.n or a.basis != b.basis or a.dim != b.dim:
        raise ContractViolation(
            f"cannot compare (n={a.n}, {a.basis}) with (n={b.n}, {b.basis})"
        )
    return float(min(1.0, abs(np.vdot(a.amps, b.amps))))

