"""Multistart simplex search for W-state pulse parameters.

The search runs in the (n+1)-dimensional Dicke representation. It starts from
``Y(pi/4)|0...0>`` and targets ``Y(-pi/4)|W>`` (odd n) or ``X(-pi/4)|W>``
(even n), so only the interior blocks carry free angles. In time order:

    odd n:   {ZZ - X}^i
    even n:  {ZZ - X}^i - {Y - ZZ}^j

X blocks start with the ZZ pulse because the opening state is an H_x
eigenstate, so a leading X would only add a global phase. Y blocks apply the
rotation first, matching ``U_y = prod ZZ(t) Y(t)`` as an operator product; the
four-spin analytic solution is then the i = j = 1 ansatz. The parameter vector
lists the interior angles in time order.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Iterator

import numpy as np
from scipy import optimize as spopt
from scipy import stats

from .simcore import ContractViolation, PulseSequence
from .symmetry import BoundaryStates, boundary_states, symmetric_hams

__all__ = [
    "Ansatz",
    "OptimizationConfig",
    "OptimizationResult",
    "ScanRecord",
    "ScanResult",
    "objective",
    "optimize",
    "ansatz_candidates",
    "find_min_ansatz",
    "min_params_scan",
    "wrap_angles",
]

log = logging.getLogger(__name__)


def wrap_angles(params) -> np.ndarray:
    """Map angles into [-pi, pi). All three propagators are 2*pi periodic."""
    return (np.asarray(params, dtype=float) + np.pi) % (2 * np.pi) - np.pi


@dataclass(frozen=True)
class Ansatz:
    n: int
    i: int
    j: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"W search needs n >= 2, got {self.n}")
        if self.i < 0 or self.j < 0 or self.i + self.j < 1:
            raise ValueError(f"need i, j >= 0 and at least one block, got i={self.i}, j={self.j}")
        if self.n % 2 and self.j:
            raise ValueError("odd n uses {ZZ-X} blocks only (j must be 0)")

    @property
    def param_count(self) -> int:
        return 2 * (self.i + self.j)

    def _check(self, params) -> np.ndarray:
        params = np.asarray(params, dtype=float)
        if params.shape != (self.param_count,):
            raise ContractViolation(
                f"ansatz (i={self.i}, j={self.j}) takes {self.param_count} angles, "
                f"got shape {params.shape}"
            )
        return params

    @property
    def pulse_kinds(self) -> tuple[str, ...]:
        """Kinds of the interior pulses, one per parameter, in time order."""
        return ("ZZ", "X") * self.i + ("Y", "ZZ") * self.j

    def interior(self, params) -> PulseSequence:
        params = self._check(params)
        return PulseSequence.from_pairs(self.n, zip(self.pulse_kinds, params))

    def full_sequence(self, params) -> PulseSequence:
        """Opener + interior + closer; prepares W from ``|0...0>``."""
        closer = "Y" if self.n % 2 else "X"
        opener = PulseSequence.from_pairs(self.n, [("Y", np.pi / 4)])
        closing = PulseSequence.from_pairs(self.n, [(closer, np.pi / 4)])
        return opener + self.interior(params) + closing


@dataclass(frozen=True)
class OptimizationConfig:
    """Settings for one multistart search (and for scans built from it).

    ``max_params`` bounds the ansatz enumeration in scans; ``None`` means 3n.
    ``stop_at_threshold`` ends the restart loop at the first restart that
    reaches ``threshold``.
    """

    restarts: int = 100
    seed: int = 0
    max_evals: int = 4000
    tol: float = 1e-10
    bound: float = np.pi
    threshold: float = 0.999
    max_params: int | None = None
    stop_at_threshold: bool = True
    workers: int = 1

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if not 0 < self.threshold < 1:
            raise ValueError(f"threshold must lie in (0, 1), got {self.threshold}")
        if self.max_evals < 1:
            raise ValueError(f"max_evals must be >= 1, got {self.max_evals}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")

    @classmethod
    def from_dict(cls, data: dict) -> "OptimizationConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown optimization config keys: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class OptimizationResult:
    ansatz: Ansatz
    best_params: np.ndarray = field(repr=False)
    best_fidelity: float
    evals_used: int
    restart_index: int
    restarts_run: int
    success: bool


class _Evaluator:
    """Precomputed propagator factors for fast repeated objective calls."""

    def __init__(self, ansatz: Ansatz, boundary: BoundaryStates):
        if boundary.n != ansatz.n:
            raise ContractViolation(
                f"boundary states are for n={boundary.n}, ansatz for n={ansatz.n}"
            )
        h_x, h_y, h_zz = symmetric_hams(ansatz.n)
        self.kinds = ansatz.pulse_kinds
        self.zz_diag = np.real(np.diag(h_zz))
        self.eig = {}
        for axis, mat in (("X", h_x), ("Y", h_y)):
            w, v = np.linalg.eigh(mat)
            self.eig[axis] = (w, v, v.conj().T)
        self.init = np.asarray(boundary.init_sym)
        self.target_conj = np.asarray(boundary.target_sym).conj()
        self.calls = 0

    def evolve(self, params) -> np.ndarray:
        psi = self.init
        for kind, angle in zip(self.kinds, params):
            if kind == "ZZ":
                psi = np.exp(-1j * angle * self.zz_diag) * psi
            else:
                w, v, vh = self.eig[kind]
                psi = v @ (np.exp(-1j * angle * w) * (vh @ psi))
        return psi

    def __call__(self, params) -> float:
        self.calls += 1
        return 1.0 - abs(self.target_conj @ self.evolve(params))


def objective(params, ansatz: Ansatz, boundary: BoundaryStates) -> float:
    """``1 - |<target| U(params) |init>|`` in the Dicke representation."""
    params = ansatz._check(params)
    return _Evaluator(ansatz, boundary)(params)


def _start_point(ansatz: Ansatz, config: OptimizationConfig, restart: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence([config.seed, ansatz.n, restart]))
    return rng.uniform(-config.bound, config.bound, ansatz.param_count)


def _local_search(ansatz: Ansatz, boundary: BoundaryStates, config: OptimizationConfig,
                  restart: int) -> tuple[float, np.ndarray, int]:
    f = _Evaluator(ansatz, boundary)
    x0 = _start_point(ansatz, config, restart)
    res = spopt.minimize(
        f,
        x0,
        method="Nelder-Mead",
        options={
            "maxfev": config.max_evals,
            "xatol": config.tol,
            "fatol": config.tol,
            "adaptive": ansatz.param_count > 4,
        },
    )
    x = wrap_angles(res.x)
    fid = 1.0 - f(x)
    return float(min(max(fid, 0.0), 1.0)), x, f.calls


def _search_task(args):
    ansatz, config, restart = args
    return _local_search(ansatz, boundary_states(ansatz.n), config, restart)


def optimize(ansatz: Ansatz, boundary: BoundaryStates | None = None,
             config: OptimizationConfig | None = None) -> OptimizationResult:
    """Best of ``config.restarts`` seeded Nelder-Mead runs.

    Restarts are reduced by (fidelity desc, restart index asc). With
    ``stop_at_threshold`` the loop ends at the lowest-index restart that meets
    the threshold; parallel runs evaluate in chunks and truncate at the same
    index, so serial and parallel results agree exactly.
    """
    config = config or OptimizationConfig()
    boundary = boundary or boundary_states(ansatz.n)
    outcomes = []
    todo = list(range(config.restarts))
    pool = ProcessPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        while todo:
            chunk, todo = todo[: config.workers], todo[config.workers:]
            if pool is None:
                done = [_local_search(ansatz, boundary, config, r) for r in chunk]
            else:
                done = list(pool.map(_search_task, [(ansatz, config, r) for r in chunk]))
            hit = None
            for r, out in zip(chunk, done):
                outcomes.append((r, out))
                if out[0] >= config.threshold and config.stop_at_threshold:
                    hit = r
                    break
            if hit is not None:
                break
    finally:
        if pool is not None:
            pool.shutdown()

    best_index, (best_fid, best_x, _) = min(outcomes, key=lambda o: (-o[1][0], o[0]))
    return OptimizationResult(
        ansatz=ansatz,
        best_params=best_x,
        best_fidelity=best_fid,
        evals_used=sum(out[2] for _, out in outcomes),
        restart_index=best_index,
        restarts_run=len(outcomes),
        success=best_fid >= config.threshold,
    )


def ansatz_candidates(n: int, max_params: int | None = None) -> Iterator[Ansatz]:
    """Ansatz shapes in increasing parameter count.

    Odd n and n = 2 use {ZZ-X}^i only (for n = 2 the target already lies in
    the X+ sector). Even n >= 4 tries every split i + j = b with i, j >= 1,
    larger i first.
    """
    limit = 3 * n if max_params is None else max_params
    blocks = 1
    while 2 * blocks <= limit:
        if n % 2 or n == 2:
            yield Ansatz(n, blocks)
        else:
            for i in range(blocks - 1, 0, -1):
                yield Ansatz(n, i, blocks - i)
        blocks += 1


def find_min_ansatz(n: int, config: OptimizationConfig | None = None) -> OptimizationResult | None:
    """Smallest ansatz that reaches the threshold, or ``None`` if the budget runs out."""
    config = config or OptimizationConfig()
    boundary = boundary_states(n)
    for ansatz in ansatz_candidates(n, config.max_params):
        result = optimize(ansatz, boundary, config)
        log.info("n=%d i=%d j=%d fidelity=%.6f restarts=%d", n, ansatz.i, ansatz.j,
                 result.best_fidelity, result.restarts_run)
        if result.success:
            return result
    return None


@dataclass(frozen=True)
class ScanRecord:
    n: int
    min_param_count: int | None
    fidelity: float | None
    seed: int
    result: OptimizationResult | None = field(default=None, repr=False, compare=False)

    @property
    def resolved(self) -> bool:
        return self.min_param_count is not None


@dataclass(frozen=True)
class ScanResult:
    records: tuple[ScanRecord, ...]
    slope: float
    intercept: float
    r: float

    @property
    def all_resolved(self) -> bool:
        return all(rec.resolved for rec in self.records)


def _fit(records) -> tuple[float, float, float]:
    pts = [(rec.n, rec.min_param_count) for rec in records if rec.resolved]
    if len(pts) < 2:
        return float("nan"), float("nan"), float("nan")
    x, y = np.array(pts, dtype=float).T
    if np.ptp(y) == 0:
        return 0.0, float(y[0]), float("nan")
    fit = stats.linregress(x, y)
    return float(fit.slope), float(fit.intercept), float(fit.rvalue)


def min_params_scan(n_from: int, n_to: int,
                    config: OptimizationConfig | None = None) -> ScanResult:
    """Minimum interior parameter count for each n in ``[n_from, n_to]``.

    Sizes that exhaust the budget are recorded as unresolved and the scan
    moves on. The line fit uses resolved rows only.
    """
    if n_from < 2 or n_to < n_from:
        raise ValueError(f"invalid scan range {n_from}..{n_to}")
    config = config or OptimizationConfig()
    records = []
    for n in range(n_from, n_to + 1):
        result = find_min_ansatz(n, config)
        if result is None:
            records.append(ScanRecord(n, None, None, config.seed))
        else:
            records.append(ScanRecord(n, result.ansatz.param_count, result.best_fidelity,
                                      config.seed, result))
    return ScanResult(tuple(records), *_fit(records))
