"""Derivative-free maximization of the circuit objective over layer angles.

The objective is pi-periodic in every coordinate, so the search space is
the torus [0, pi)^2p: every candidate point is reduced mod pi before
evaluation, while simplex arithmetic runs in the periodic lift so that
contraction behaves as in the Euclidean case. Local search is a
Nelder-Mead simplex; global coverage comes from grid multistart,
basin hopping with monotone acceptance, and a four-point canonical-start
rule.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .engine import AngleSchedule, _run_inplace
from .seeding import as_rng

PI = math.pi


class ObjectiveHandle:
    """Evaluates F_p for a fixed materialized diagonal, counting calls.

    Holds scratch buffers so the optimizer's many evaluations do not
    reallocate; evaluation is pure, the same angles always return the
    same value.
    """

    def __init__(self, diagonal: np.ndarray, p: int):
        if p < 1:
            raise ValueError("level must be positive")
        self.diagonal = np.asarray(diagonal, dtype=np.float64)
        self.p = p
        self.evaluations = 0
        n = len(self.diagonal)
        self._m = n.bit_length() - 1
        if 1 << self._m != n:
            raise ValueError(f"diagonal length {n} is not a power of two")
        self._amps = np.empty(n, dtype=np.complex128)
        self._sq = np.empty(n, dtype=np.float64)
        self._sq2 = np.empty(n, dtype=np.float64)
        self._fill = 2.0 ** (-self._m / 2.0)
        self.spectrum_max = float(self.diagonal.max())

    @property
    def dim(self) -> int:
        return 2 * self.p

    def __call__(self, x: np.ndarray) -> float:
        self.evaluations += 1
        x = np.asarray(x, dtype=np.float64) % PI
        self._amps.fill(self._fill)
        _run_inplace(self._amps, self._m, self.diagonal, x[: self.p], x[self.p :])
        np.multiply(self._amps.real, self._amps.real, out=self._sq)
        np.multiply(self._amps.imag, self._amps.imag, out=self._sq2)
        self._sq += self._sq2
        return float(self._sq @ self.diagonal)


@dataclass(frozen=True)
class StartTrace:
    label: str
    start: AngleSchedule
    value: float


@dataclass(frozen=True)
class OptimizerReport:
    """Outcome of one optimization call."""

    best: AngleSchedule
    best_value: float
    evaluations: int
    strategy: str
    trace: tuple[StartTrace, ...]
    history: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        for prev, cur in zip(self.history, self.history[1:]):
            if cur < prev - 1e-12:
                raise ValueError("best-so-far history decreased")


_INIT_STEP = PI / 16.0


def nelder_mead(
    obj: ObjectiveHandle,
    start: AngleSchedule,
    tol: float = 1e-6,
    max_iter: int | None = None,
) -> OptimizerReport:
    """Simplex ascent from one start; terminates on spread < tol or max_iter.

    Standard coefficients: reflection 1, expansion 2, contraction 1/2,
    shrink 1/2. Vertices move in the periodic lift of the torus: simplex
    arithmetic stays Euclidean while every evaluation and the reported
    best point are reduced mod pi.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    dim = obj.dim
    if max_iter is None:
        max_iter = 400 * dim
    before = obj.evaluations

    def f(x: np.ndarray) -> float:
        return -obj(x % PI)

    x0 = start.to_array() % PI
    sim = np.empty((dim + 1, dim))
    sim[0] = x0
    for i in range(dim):
        v = x0.copy()
        v[i] += _INIT_STEP
        sim[i + 1] = v
    # Internally minimize the negated objective.
    fsim = np.array([f(v) for v in sim])
    order = np.argsort(fsim, kind="stable")
    sim, fsim = sim[order], fsim[order]

    history = [-fsim[0]]
    iterations = 0
    while iterations < max_iter and np.abs(sim[1:] - sim[0]).max() >= tol:
        xbar = sim[:-1].mean(axis=0)
        xr = 2.0 * xbar - sim[-1]
        fxr = f(xr)
        if fxr < fsim[0]:
            xe = 3.0 * xbar - 2.0 * sim[-1]
            fxe = f(xe)
            if fxe < fxr:
                sim[-1], fsim[-1] = xe, fxe
            else:
                sim[-1], fsim[-1] = xr, fxr
        elif fxr < fsim[-2]:
            sim[-1], fsim[-1] = xr, fxr
        else:
            if fxr < fsim[-1]:
                xc = 1.5 * xbar - 0.5 * sim[-1]
                fxc = f(xc)
                shrink = fxc > fxr
            else:
                xc = 0.5 * xbar + 0.5 * sim[-1]
                fxc = f(xc)
                shrink = fxc >= fsim[-1]
            if shrink:
                for i in range(1, dim + 1):
                    sim[i] = sim[0] + 0.5 * (sim[i] - sim[0])
                    fsim[i] = f(sim[i])
            else:
                sim[-1], fsim[-1] = xc, fxc
        order = np.argsort(fsim, kind="stable")
        sim, fsim = sim[order], fsim[order]
        history.append(max(history[-1], -fsim[0]))
        iterations += 1

    best = AngleSchedule.from_array(sim[0] % PI)
    best_value = -float(fsim[0])
    ceiling = getattr(obj, "spectrum_max", None)
    if ceiling is not None and best_value > ceiling + 1e-9:
        raise RuntimeError(
            f"objective {best_value} exceeds the spectral maximum {ceiling}"
        )
    return OptimizerReport(
        best=best,
        best_value=best_value,
        evaluations=obj.evaluations - before,
        strategy="nelder_mead",
        trace=(StartTrace("start", start, best_value),),
        history=tuple(history),
    )


def grid_side(budget: int, dim: int) -> int:
    """Largest kappa with kappa^dim <= budget (at least 1)."""
    if budget < 1:
        raise ValueError("budget must be positive")
    kappa = 1
    while (kappa + 1) ** dim <= budget:
        kappa += 1
    return kappa


def multistart(
    obj: ObjectiveHandle,
    budget: int = 256,
    tol: float = 1e-6,
    max_iter: int | None = None,
) -> OptimizerReport:
    """Nelder-Mead from every cell center of the uniform kappa-per-axis grid."""
    before = obj.evaluations
    dim = obj.dim
    kappa = grid_side(budget, dim)
    axis = [(i + 0.5) * PI / kappa for i in range(kappa)]
    best_report: OptimizerReport | None = None
    traces: list[StartTrace] = []
    history: list[float] = []
    idx = [0] * dim
    for count in range(kappa**dim):
        rem = count
        for a in range(dim):
            idx[a] = rem % kappa
            rem //= kappa
        start = AngleSchedule.from_array([axis[i] for i in idx])
        rep = nelder_mead(obj, start, tol=tol, max_iter=max_iter)
        traces.append(StartTrace(f"grid[{count}]", start, rep.best_value))
        if best_report is None or rep.best_value > best_report.best_value:
            best_report = rep
        history.append(best_report.best_value)
    assert best_report is not None
    return OptimizerReport(
        best=best_report.best,
        best_value=best_report.best_value,
        evaluations=obj.evaluations - before,
        strategy=f"multistart[{kappa}^{dim}]",
        trace=tuple(traces),
        history=tuple(history),
    )


def basin_hopping(
    obj: ObjectiveHandle,
    start: AngleSchedule,
    hops: int = 5,
    step: float = PI / 4,
    seed: int | np.random.Generator = 0,
    tol: float = 1e-6,
    max_iter: int | None = None,
) -> OptimizerReport:
    """Local search plus uniformly perturbed restarts, keeping strict improvements."""
    if hops < 0:
        raise ValueError("hops must be nonnegative")
    if step <= 0:
        raise ValueError("step must be positive")
    before = obj.evaluations
    rng = as_rng(seed)
    best = nelder_mead(obj, start, tol=tol, max_iter=max_iter)
    traces = [StartTrace("hop[0]", start, best.best_value)]
    history = [best.best_value]
    for h in range(hops):
        perturbed = (best.best.to_array() + rng.uniform(-step, step, obj.dim)) % PI
        hop_start = AngleSchedule.from_array(perturbed)
        rep = nelder_mead(obj, hop_start, tol=tol, max_iter=max_iter)
        traces.append(StartTrace(f"hop[{h + 1}]", hop_start, rep.best_value))
        if rep.best_value > best.best_value:
            best = rep
        history.append(best.best_value)
    return OptimizerReport(
        best=best.best,
        best_value=best.best_value,
        evaluations=obj.evaluations - before,
        strategy="basin_hopping",
        trace=tuple(traces),
        history=tuple(history),
    )


def nm_with_canonical_starts(
    obj: ObjectiveHandle,
    p: int,
    seed: int = 0,
    hops: int = 5,
    step: float = PI / 4,
    tol: float = 1e-6,
    max_iter: int | None = None,
) -> OptimizerReport:
    """Basin hopping from (0,0), (pi/8,pi/8), (1,1) (all layers) and one random start.

    The winner is the start whose run achieved the largest objective;
    ties keep the earliest start.
    """
    if p != obj.p:
        raise ValueError(f"level {p} disagrees with objective level {obj.p}")
    before = obj.evaluations
    fixed = [0.0, PI / 8, 1.0]
    starts = [AngleSchedule((g,) * p, (b,) * p) for g, b in zip(fixed, fixed)]
    random_start = as_rng(seed, 0).uniform(0.0, PI, obj.dim)
    starts.append(AngleSchedule.from_array(random_start))

    best: OptimizerReport | None = None
    traces: list[StartTrace] = []
    history: list[float] = []
    for i, start in enumerate(starts):
        rep = basin_hopping(
            obj, start, hops=hops, step=step, seed=as_rng(seed, 1, i), tol=tol, max_iter=max_iter
        )
        traces.append(StartTrace(f"canonical[{i}]", start, rep.best_value))
        if best is None or rep.best_value > best.best_value:
            best = rep
        history.append(best.best_value)
    assert best is not None
    return OptimizerReport(
        best=best.best,
        best_value=best.best_value,
        evaluations=obj.evaluations - before,
        strategy="canonical_starts",
        trace=tuple(traces),
        history=tuple(history),
    )


# ---------------------------------------------------------------------------
# Angle archive: one JSON record per line, keyed by the decoding instance.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ArchiveEntry:
    code: str
    construction: str  # "gen" or "check"
    syndrome: str  # bitstring, coordinate 1 first
    p: int
    alpha: int | None
    eta: int | None
    gammas: tuple[float, ...]
    betas: tuple[float, ...]
    F_p: float
    strategy: str
    seed: int
    variant: str = "standard"

    def key(self) -> tuple:
        return (self.code, self.construction, self.variant, self.syndrome, self.p, self.alpha, self.eta)

    def schedule(self) -> AngleSchedule:
        return AngleSchedule(self.gammas, self.betas)


class AngleArchive:
    """In-memory archive of optimized schedules with JSONL persistence."""

    def __init__(self) -> None:
        self._entries: dict[tuple, ArchiveEntry] = {}

    def __len__(self) -> int:
        return len(self._entries)

    def add(self, entry: ArchiveEntry) -> None:
        self._entries[entry.key()] = entry

    def lookup(
        self,
        code: str,
        construction: str,
        syndrome: str,
        p: int,
        alpha: int | None = None,
        eta: int | None = None,
        variant: str = "standard",
    ) -> ArchiveEntry | None:
        return self._entries.get((code, construction, variant, syndrome, p, alpha, eta))

    def entries(self) -> list[ArchiveEntry]:
        return [self._entries[k] for k in sorted(self._entries, key=str)]

    def save(self, path: str | Path) -> None:
        with open(path, "w") as fh:
            for e in self.entries():
                fh.write(json.dumps(_entry_to_dict(e)) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "AngleArchive":
        archive = cls()
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    archive.add(_entry_from_dict(json.loads(line)))
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    raise ValueError(f"{path}:{lineno}: bad archive record ({exc})") from exc
        return archive


def _entry_to_dict(e: ArchiveEntry) -> dict:
    return {
        "code": e.code,
        "construction": e.construction,
        "variant": e.variant,
        "syndrome": e.syndrome,
        "p": e.p,
        "alpha": e.alpha,
        "eta": e.eta,
        "gammas": list(e.gammas),
        "betas": list(e.betas),
        "F_p": e.F_p,
        "strategy": e.strategy,
        "seed": e.seed,
    }


def _entry_from_dict(d: dict) -> ArchiveEntry:
    return ArchiveEntry(
        code=d["code"],
        construction=d["construction"],
        variant=d.get("variant", "standard"),
        syndrome=d["syndrome"],
        p=int(d["p"]),
        alpha=None if d.get("alpha") is None else int(d["alpha"]),
        eta=None if d.get("eta") is None else int(d["eta"]),
        gammas=tuple(float(g) for g in d["gammas"]),
        betas=tuple(float(b) for b in d["betas"]),
        F_p=float(d["F_p"]),
        strategy=d["strategy"],
        seed=int(d["seed"]),
    )
