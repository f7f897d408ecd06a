"""Dicke-basis and parity-sector representations of the global-control dynamics.

The symmetric (Dicke) basis vector ``phi_m`` (m = 1..n+1) is the normalized
sum of all computational states with ``m - 1`` excitations. Inside it the
X-parity ``prod sx`` pairs ``phi_k`` with ``phi_{n+2-k}``; the Y-parity
``prod sy`` does the same with an extra phase ``i**n * (-1)**(k-1)``. Their
eigenspaces give the four sectors ``Xplus``, ``Xminus``, ``Yplus``, ``Yminus``.

X sectors are invariant under {H_zz, H_x} and Y sectors under {H_zz, H_y}, so
each sector only carries the generator pair that preserves it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .simcore import ContractViolation, Pulse, StateVector, _popcounts

__all__ = [
    "SECTORS",
    "DickeBasis",
    "SubspaceRep",
    "BoundaryStates",
    "dicke_basis",
    "symmetric_hams",
    "parity_sector",
    "sector_dims",
    "propagator",
    "evolve_symmetric",
    "boundary_states",
    "to_full",
    "to_symmetric",
    "sector_weight",
]

SECTORS = ("Xplus", "Xminus", "Yplus", "Yminus")
_ALL_SECTORS = SECTORS + ("symmetric",)


@dataclass(frozen=True, eq=False)
class DickeBasis:
    """``vectors[:, m]`` holds ``phi_{m+1}`` in the full 2**n basis."""

    n: int
    vectors: np.ndarray

    def state(self, m: int) -> StateVector:
        """Dicke state with ``m`` excitations (0-based), as a full-basis state."""
        return StateVector(self.n, "full", self.vectors[:, m])

    def __len__(self):
        return self.n + 1


@lru_cache(maxsize=None)
def _dicke_matrix(n: int) -> np.ndarray:
    counts = _popcounts(n)
    vecs = np.zeros((2**n, n + 1), dtype=complex)
    for m in range(n + 1):
        mask = counts == m
        vecs[mask, m] = 1 / np.sqrt(comb(n, m))
    vecs.flags.writeable = False
    return vecs


def dicke_basis(n: int) -> DickeBasis:
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    return DickeBasis(n, _dicke_matrix(n))


def to_full(coords, n: int) -> StateVector:
    """Embed symmetric-basis coordinates into the 2**n space."""
    return StateVector(n, "full", _dicke_matrix(n) @ np.asarray(coords, dtype=complex))


def to_symmetric(state: StateVector) -> StateVector:
    """Project a full-basis state onto the Dicke basis (no renormalization)."""
    if state.basis != "full":
        raise ContractViolation(f"expected a full-basis state, got basis={state.basis!r}")
    coords = _dicke_matrix(state.n).conj().T @ state.amps
    return StateVector(state.n, "symmetric", coords)


@lru_cache(maxsize=None)
def _symmetric_hams(n: int):
    k = np.arange(1, n + 1)
    couplings = np.sqrt(k * (n - k + 1))
    h_x = np.diag(couplings, 1) + np.diag(couplings, -1)
    h_y = np.diag(-1j * couplings, 1) + np.diag(1j * couplings, -1)
    m = np.arange(1, n + 2)
    h_zz = np.diag(2 * (m - 1 - n / 2) ** 2 - n / 2)
    mats = (h_x.astype(complex), h_y, h_zz.astype(complex))
    for mat in mats:
        mat.flags.writeable = False
    return mats


def symmetric_hams(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(h_x, h_y, h_zz)`` in the (n+1)-dimensional Dicke basis."""
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    return _symmetric_hams(n)


@dataclass(frozen=True, eq=False)
class SubspaceRep:
    """Reduced generators of one sector plus its isometric embedding.

    ``embed`` maps sector coordinates to symmetric-basis coordinates, shape
    ``(n + 1, dim)``. Generators that do not preserve the sector are ``None``.
    """

    n: int
    sector: str
    dim: int
    h_zz: np.ndarray
    h_x: np.ndarray | None
    h_y: np.ndarray | None
    embed: np.ndarray

    def generator(self, kind: str) -> np.ndarray:
        mat = {"ZZ": self.h_zz, "X": self.h_x, "Y": self.h_y}.get(kind)
        if mat is None:
            raise ContractViolation(
                f"a {kind} pulse does not preserve the {self.sector} sector"
            )
        return mat

    @property
    def kinds(self) -> tuple[str, ...]:
        kinds = ["ZZ"]
        if self.h_x is not None:
            kinds.append("X")
        if self.h_y is not None:
            kinds.append("Y")
        return tuple(kinds)

    def lift(self, coords) -> np.ndarray:
        """Sector coordinates -> symmetric-basis coordinates."""
        return self.embed @ np.asarray(coords, dtype=complex)

    def restrict(self, sym_coords) -> np.ndarray:
        """Symmetric-basis coordinates -> sector coordinates (orthogonal projection)."""
        return self.embed.conj().T @ np.asarray(sym_coords, dtype=complex)


def sector_dims(n: int) -> dict[str, int]:
    plus = n // 2 + 1
    return {
        "Xplus": plus,
        "Xminus": n + 1 - plus,
        "Yplus": plus,
        "Yminus": n + 1 - plus,
        "symmetric": n + 1,
    }


def _pair_phase(n: int, kind: str, k: int) -> complex:
    if kind == "X":
        return 1.0
    return (1, 1j, -1, -1j)[(n + 2 * (k - 1)) % 4]


def _sector_pairing(n: int, sector: str) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized sector basis (entries 0, +-1, +-i) and squared column norms."""
    kind, sign = sector[0], (1 if sector.endswith("plus") else -1)
    cols, norms = [], []
    for k in range(1, n // 2 + 2):
        a, b = k - 1, n + 1 - k  # 0-based positions of phi_k and phi_{n+2-k}
        phase = _pair_phase(n, kind, k)
        col = np.zeros(n + 1, dtype=complex)
        if a == b:
            # self-paired middle vector belongs to whichever sign it is an eigenvector of
            if sign * phase == 1:
                col[a] = 1.0
                cols.append(col)
                norms.append(1.0)
            continue
        col[a] = 1.0
        col[b] = sign * phase
        cols.append(col)
        norms.append(2.0)
    if not cols:
        return np.zeros((n + 1, 0), dtype=complex), np.zeros(0)
    return np.column_stack(cols), np.array(norms)


def _frozen(mat):
    if mat is not None:
        mat.flags.writeable = False
    return mat


@lru_cache(maxsize=None)
def _parity_sector(n: int, sector: str) -> SubspaceRep:
    h_x, h_y, h_zz = _symmetric_hams(n)
    if sector == "symmetric":
        embed = np.eye(n + 1, dtype=complex)
        return SubspaceRep(n, sector, n + 1, h_zz, h_x, h_y, _frozen(embed))
    pairing, norms = _sector_pairing(n, sector)
    embed = pairing / np.sqrt(norms)
    scale = np.sqrt(np.outer(norms, norms))

    def reduce(mat):
        # divide after the product so paired-paired entries stay exact
        red = (pairing.conj().T @ mat @ pairing) / scale
        return (red + red.conj().T) / 2

    rx = reduce(h_x) if sector[0] == "X" else None
    ry = reduce(h_y) if sector[0] == "Y" else None
    rzz = np.diag(np.real(np.diag(reduce(h_zz)))).astype(complex)
    return SubspaceRep(
        n, sector, embed.shape[1], _frozen(rzz), _frozen(rx), _frozen(ry), _frozen(embed)
    )


def parity_sector(n: int, sector: str) -> SubspaceRep:
    """Reduced representation of ``sector`` for ``n`` spins.

    ``sector`` is one of ``Xplus``, ``Xminus``, ``Yplus``, ``Yminus`` or
    ``symmetric`` (the whole Dicke space with all three generators). A sector
    with no basis vectors comes back with ``dim == 0`` instead of raising.
    """
    if sector not in _ALL_SECTORS:
        raise ValueError(f"unknown sector {sector!r}; expected one of {_ALL_SECTORS}")
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    return _parity_sector(n, sector)


@lru_cache(maxsize=None)
def _eigh_cached(n: int, sector: str, kind: str):
    mat = parity_sector(n, sector).generator(kind)
    evals, evecs = np.linalg.eigh(mat)
    evals.flags.writeable = False
    evecs.flags.writeable = False
    return evals, evecs


def propagator(rep: SubspaceRep, kind: str, angle: float) -> np.ndarray:
    """``exp(-i * angle * h_kind)`` in the sector's coordinates."""
    if kind == "ZZ":
        return np.diag(np.exp(-1j * angle * np.real(np.diag(rep.h_zz))))
    rep.generator(kind)
    evals, evecs = _eigh_cached(rep.n, rep.sector, kind)
    return (evecs * np.exp(-1j * angle * evals)) @ evecs.conj().T


def evolve_symmetric(state, pulse: Pulse, rep: SubspaceRep) -> np.ndarray:
    """Apply one pulse to sector (or symmetric) coordinates."""
    coords = np.asarray(state.amps if isinstance(state, StateVector) else state, dtype=complex)
    if coords.shape != (rep.dim,):
        raise ContractViolation(
            f"coordinates have shape {coords.shape}, {rep.sector} rep needs ({rep.dim},)"
        )
    if pulse.kind == "ZZ":
        return np.exp(-1j * pulse.angle * np.real(np.diag(rep.h_zz))) * coords
    return propagator(rep, pulse.kind, pulse.angle) @ coords


def sector_weight(sym_coords, n: int, sector: str) -> float:
    """Squared norm of the component of a symmetric state inside ``sector``."""
    rep = parity_sector(n, sector)
    return float(np.linalg.norm(rep.restrict(sym_coords)) ** 2)


@dataclass(frozen=True, eq=False)
class BoundaryStates:
    """Opening and closing states of the reduced W-preparation problem.

    ``init_sym`` is ``Y(pi/4)|0...0>`` and ``target_sym`` is ``Y(-pi/4)|W>``
    (odd n) or ``X(-pi/4)|W>`` (even n), both in Dicke coordinates. The
    ``*_coords`` fields give the same states in their sector bases.
    """

    n: int
    init_sym: np.ndarray
    target_sym: np.ndarray
    init_sector: str
    target_sector: str
    init_coords: np.ndarray
    target_coords: np.ndarray


def boundary_states(n: int) -> BoundaryStates:
    if n < 2:
        raise ValueError(f"boundary states need n >= 2, got {n}")
    odd = n % 2 == 1
    half = (n - 1) // 2 + 1 if odd else n // 2

    init = [np.sqrt(comb(n, k) / 2 ** (n - 1)) for k in range(half)]
    if not odd:
        init.append(np.sqrt(comb(n, n // 2) / 2**n))
    init = np.array(init, dtype=complex)

    scale = [np.sqrt(comb(n, k) / (2 ** (n - 1) * n)) for k in range(half)]
    if odd:
        target = np.array([s * (-1) ** k * (n - 2 * k) for k, s in enumerate(scale)], dtype=complex)
        target_sector = "Xplus"
    else:
        target = np.array([s * 1j ** (k - 1) * (2 * k - n) for k, s in enumerate(scale)])
        target_sector = "Yminus"

    init_rep = parity_sector(n, "Xplus")
    target_rep = parity_sector(n, target_sector)
    return BoundaryStates(
        n=n,
        init_sym=init_rep.lift(init),
        target_sym=target_rep.lift(target),
        init_sector="Xplus",
        target_sector=target_sector,
        init_coords=init,
        target_coords=target,
    )
