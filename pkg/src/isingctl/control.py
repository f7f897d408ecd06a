"""Controllability and irreducibility checks for the parity sectors.

Within a sector the drift H_zz is diagonal and the control generator (H_x for
X sectors, H_y for Y sectors) is tridiagonal. Pure-state controllability
follows when the connectivity graph of the control's off-diagonal elements is
connected and every transition frequency is distinct.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .simcore import ContractViolation
from .symmetry import SECTORS, parity_sector

__all__ = [
    "ControllabilityReport",
    "sector_energies",
    "connectivity_report",
    "commutant_dimension",
]

EDGE_TOL = 1e-12


def sector_energies(n: int, dim: int) -> list[Fraction]:
    """Exact diagonal of H_zz in a sector: lambda_k = 2(k-1-n/2)^2 - n/2."""
    half = Fraction(n, 2)
    return [2 * (k - 1 - half) ** 2 - half for k in range(1, dim + 1)]


@dataclass(frozen=True)
class ControllabilityReport:
    n: int
    sector: str
    dim: int
    edges: list[tuple[int, int, float]]
    frequencies: list[int | float]
    connected: bool
    nondegenerate: bool
    commutant_dim: int
    nonadjacent_coincidences: list[tuple[tuple[int, int], tuple[int, int]]] = field(
        default_factory=list
    )

    @property
    def controllable(self) -> bool:
        return self.connected and self.nondegenerate

    def to_dict(self) -> dict:
        out = asdict(self)
        out["edges"] = [list(e) for e in self.edges]
        out["nonadjacent_coincidences"] = [
            [list(a), list(b)] for a, b in self.nonadjacent_coincidences
        ]
        out["controllable"] = self.controllable
        return out


def _as_number(q: Fraction) -> int | float:
    return int(q) if q.denominator == 1 else float(q)


def connectivity_report(n: int, sector: str) -> ControllabilityReport:
    """Connectivity graph, transition frequencies and commutant of one sector.

    Edges are 1-based vertex pairs ``(k, k+1, |coupling|)``. Frequencies are
    the adjacent differences ``lambda_k - lambda_{k+1} = 2(n+1) - 4k``, held
    exactly. Nondegeneracy asks for pairwise-distinct adjacent frequencies;
    coincidences among all other transitions are recorded separately and do
    not affect the flag.
    """
    if sector not in SECTORS:
        raise ValueError(f"sector must be one of {SECTORS}, got {sector!r}")
    rep = parity_sector(n, sector)
    if rep.dim == 0:
        raise ValueError(f"sector {sector} is empty for n={n}")
    control = rep.generator("X" if sector.startswith("X") else "Y")

    rows, cols = np.nonzero(np.triu(np.abs(control), 1) > EDGE_TOL)
    edges = [(int(r) + 1, int(c) + 1, float(abs(control[r, c]))) for r, c in zip(rows, cols)]
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(rep.dim, rep.dim))
    n_components, _ = connected_components(graph, directed=False)

    # diagonal entries are integers for every n; snap to exact rationals
    energies = [Fraction(float(x)).limit_denominator(2) for x in np.real(np.diag(rep.h_zz))]
    freqs = [energies[k] - energies[k + 1] for k in range(rep.dim - 1)]
    adjacent = [abs(f) for f in freqs]
    nondegenerate = len(set(adjacent)) == len(adjacent) and all(f != 0 for f in adjacent)

    transitions = {(a, b): abs(energies[a] - energies[b])
                   for a, b in combinations(range(rep.dim), 2)}
    coincidences = [
        ((a1 + 1, b1 + 1), (a2 + 1, b2 + 1))
        for ((a1, b1), f1), ((a2, b2), f2) in combinations(transitions.items(), 2)
        if f1 == f2 and not (b1 == a1 + 1 and b2 == a2 + 1)
    ]

    return ControllabilityReport(
        n=n,
        sector=sector,
        dim=rep.dim,
        edges=edges,
        frequencies=[_as_number(f) for f in freqs],
        connected=n_components == 1,
        nondegenerate=nondegenerate,
        commutant_dim=commutant_dimension([rep.h_zz, control]),
        nonadjacent_coincidences=coincidences,
    )


def commutant_dimension(mats, rtol: float = 1e-9) -> int:
    """Dimension of ``{A : [M, A] = 0 for every M in mats}``.

    Each commutator ``A -> M A - A M`` is written as the ``d^2 x d^2`` matrix
    ``M (x) I - I (x) M^T`` acting on the row-stacked ``A``; the commutant is
    the null space of all of them stacked. A value of 1 means the set acts
    irreducibly.
    """
    mats = [np.asarray(m, dtype=complex) for m in mats]
    if not mats:
        raise ContractViolation("need at least one matrix")
    d = mats[0].shape[0]
    for m in mats:
        if m.shape != (d, d):
            raise ContractViolation(f"expected {d}x{d} matrices, got {m.shape}")
    eye = np.eye(d)
    stacked = np.vstack([np.kron(m, eye) - np.kron(eye, m.T) for m in mats])
    sv = np.linalg.svd(stacked, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return d * d
    return int(d * d - np.count_nonzero(sv > rtol * sv[0]))
