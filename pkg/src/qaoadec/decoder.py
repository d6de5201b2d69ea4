"""End-to-end Monte-Carlo syndrome decoding.

Pipelines: sample a channel error, compute its syndrome, run the
level-p circuit at archived angles, draw T candidates, apply the
minimum-(generalized-)weight decision rule, and judge success. The
classical judge is equality; the quantum judge accepts any estimate that
differs from the truth by a stabilizer element.

Trials are independently seeded from (master seed, epsilon index, trial
index), so parallel evaluation or re-runs cannot change results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bits import BitVector, RowSpace
from .codes import (
    LinearCode,
    StabilizerCode,
    coset_representative,
    symplectic_syndrome,
    syndrome,
)
from .engine import AngleSchedule, run_circuit, sample, sample_indices
from .hamiltonian import (
    PenaltyParams,
    classical_check_cost,
    classical_generator_cost,
    quantum_check_cost,
    quantum_generator_cost,
)
from .optimize import AngleArchive
from .seeding import as_rng, spawn_rng


@dataclass(frozen=True)
class ChannelModel:
    """Memoryless symbol channel: 'bsc' on bits or 'depolarizing' on qubits."""

    kind: str
    epsilon: float

    def __post_init__(self) -> None:
        if self.kind == "bsc":
            hi = 0.5
        elif self.kind == "depolarizing":
            hi = 0.75
        else:
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if not 0.0 <= self.epsilon <= hi:
            raise ValueError(f"epsilon {self.epsilon} outside [0, {hi}] for {self.kind}")


def sample_bsc(n: int, epsilon: float, seed: int | np.random.Generator) -> BitVector:
    """n i.i.d. Bernoulli(epsilon) bits."""
    ChannelModel("bsc", epsilon)
    rng = as_rng(seed)
    flips = rng.random(n) < epsilon
    bits = 0
    for j in np.flatnonzero(flips):
        bits |= 1 << int(j)
    return BitVector(bits, n)


def sample_depolarizing(n: int, epsilon: float, seed: int | np.random.Generator) -> BitVector:
    """Per-qubit Pauli error as a 2n-bit (x-half | z-half) vector.

    Each qubit is hit with probability epsilon, the fault being X, Y, or
    Z with probability epsilon/3 each; Y sets both halves.
    """
    ChannelModel("depolarizing", epsilon)
    rng = as_rng(seed)
    hit = rng.random(n) < epsilon
    kind = rng.integers(0, 3, size=n)  # 0 -> X, 1 -> Y, 2 -> Z
    bits = 0
    for j in np.flatnonzero(hit):
        j = int(j)
        if kind[j] != 2:
            bits |= 1 << j
        if kind[j] != 0:
            bits |= 1 << (n + j)
    return BitVector(bits, 2 * n)


def depolarizing_probability(e: BitVector, epsilon: float) -> float:
    """Channel probability of one specific 2n-bit error."""
    n = e.n // 2
    g = e.gweight()
    return (epsilon / 3.0) ** g * (1.0 - epsilon) ** (n - g)


@dataclass(frozen=True)
class DecodingOutcome:
    """One decoding attempt: samples, decision, and (when known) the verdict."""

    syndrome: BitVector
    candidates: tuple[BitVector, ...]
    estimate: BitVector
    matched: bool
    true_error: BitVector | None = None
    failure: bool | None = None


def _first_min(values: list[int]) -> int:
    best = 0
    for i in range(1, len(values)):
        if values[i] < values[best]:
            best = i
    return best


def decode_generator_classical(
    code: LinearCode,
    s: BitVector,
    T: int,
    sched: AngleSchedule,
    seed: int | np.random.Generator,
) -> DecodingOutcome:
    """Sample message candidates u, map through e = uG + z, keep the lightest."""
    if s.is_zero():
        return DecodingOutcome(s, (), BitVector.zeros(code.n), True)
    z = coset_representative(code.H, s)
    diag = classical_generator_cost(code.G, z).materialize()
    state = run_circuit(diag, sched)
    us = sample(state, T, seed)
    candidates = tuple(code.G.left_mul(u) ^ z for u in us)
    est = candidates[_first_min([c.weight() for c in candidates])]
    return DecodingOutcome(s, candidates, est, True)


def decode_check_classical(
    code: LinearCode,
    s: BitVector,
    T: int,
    sched: AngleSchedule,
    penalty: PenaltyParams,
    seed: int | np.random.Generator,
) -> DecodingOutcome:
    """Sample error candidates directly, discard syndrome mismatches."""
    if s.is_zero():
        return DecodingOutcome(s, (), BitVector.zeros(code.n), True)
    diag = classical_check_cost(code.H, s, penalty).materialize()
    state = run_circuit(diag, sched)
    candidates = tuple(sample(state, T, seed))
    survivors = [c for c in candidates if syndrome(c, code.H).bits == s.bits]
    if not survivors:
        return DecodingOutcome(s, candidates, BitVector.zeros(code.n), False)
    est = survivors[_first_min([c.weight() for c in survivors])]
    return DecodingOutcome(s, candidates, est, True)


def decode_generator_quantum(
    code: StabilizerCode,
    s: BitVector,
    T: int,
    sched: AngleSchedule,
    seed: int | np.random.Generator,
    variant: str = "standard",
) -> DecodingOutcome:
    """Quantum analog of the generator pipeline, ranked by generalized weight."""
    if s.is_zero():
        return DecodingOutcome(s, (), BitVector.zeros(2 * code.n), True)
    G = code.generator(variant)
    z = coset_representative(code.H_S, s, symplectic=True)
    diag = quantum_generator_cost(G, z).materialize()
    state = run_circuit(diag, sched)
    us = sample(state, T, seed)
    candidates = tuple(G.left_mul(u) ^ z for u in us)
    est = candidates[_first_min([c.gweight() for c in candidates])]
    return DecodingOutcome(s, candidates, est, True)


def decode_check_quantum(
    code: StabilizerCode,
    s: BitVector,
    T: int,
    sched: AngleSchedule,
    penalty: PenaltyParams,
    seed: int | np.random.Generator,
) -> DecodingOutcome:
    """Check-based quantum pipeline on 2n qubits with syndrome filtering."""
    if s.is_zero():
        return DecodingOutcome(s, (), BitVector.zeros(2 * code.n), True)
    diag = quantum_check_cost(code.H_S, s, penalty).materialize()
    state = run_circuit(diag, sched)
    candidates = tuple(sample(state, T, seed))
    survivors = [c for c in candidates if symplectic_syndrome(c, code.H_S).bits == s.bits]
    if not survivors:
        return DecodingOutcome(s, candidates, BitVector.zeros(2 * code.n), False)
    est = survivors[_first_min([c.gweight() for c in survivors])]
    return DecodingOutcome(s, candidates, est, True)


def with_judgment(
    outcome: DecodingOutcome,
    true_error: BitVector,
    code: StabilizerCode | None = None,
) -> DecodingOutcome:
    """Completed outcome with the verdict for a known true error.

    Pass the stabilizer code for the degeneracy-aware quantum judgment;
    classical outcomes are judged by equality.
    """
    if code is None:
        failed = judge_classical(outcome.estimate, true_error)
    else:
        failed = judge_quantum(outcome.estimate, true_error, code)
    return DecodingOutcome(
        syndrome=outcome.syndrome,
        candidates=outcome.candidates,
        estimate=outcome.estimate,
        matched=outcome.matched,
        true_error=true_error,
        failure=failed,
    )


def judge_classical(estimate: BitVector, true_error: BitVector) -> bool:
    """Failure iff the estimate is not exactly the error."""
    if estimate.n != true_error.n:
        raise ValueError("length mismatch")
    return estimate.bits != true_error.bits


def judge_quantum(estimate: BitVector, true_error: BitVector, code: StabilizerCode) -> bool:
    """Failure iff the estimate is not a degenerate partner of the error."""
    se = symplectic_syndrome(estimate, code.H_S)
    st = symplectic_syndrome(true_error, code.H_S)
    if se.bits != st.bits:
        raise ValueError("estimate and error have different syndromes")
    return not RowSpace(code.stab_rows).contains(estimate ^ true_error)


def bdd_reference(n: int, d: int, epsilon: float) -> float:
    """Block error rate of a bounded-distance decoder correcting t = (d-1)/2."""
    t = (d - 1) // 2
    ok = sum(
        math.comb(n, j) * epsilon**j * (1.0 - epsilon) ** (n - j) for j in range(t + 1)
    )
    return 1.0 - ok


def wilson_ci(failures: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("need at least one trial")
    phat = failures / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if failures == 0 else max(0.0, center - half)
    hi = 1.0 if failures == trials else min(1.0, center + half)
    return lo, hi


# ---------------------------------------------------------------------------
# Block-error-rate curves.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecoderConfig:
    """Which pipeline to run and at what settings."""

    construction: str  # "gen" or "check"
    p: int
    T: int
    alpha: int | None = None
    eta: int | None = None
    variant: str = "standard"

    def __post_init__(self) -> None:
        if self.construction not in ("gen", "check"):
            raise ValueError(f"unknown construction {self.construction!r}")
        if self.p < 1 or self.T < 1:
            raise ValueError("p and T must be positive")
        if self.construction == "check" and (self.alpha is None or self.eta is None):
            raise ValueError("check-based decoding needs alpha and eta")

    def penalty(self) -> PenaltyParams | None:
        if self.alpha is None:
            return None
        return PenaltyParams(self.alpha, self.eta)


@dataclass(frozen=True)
class CurvePoint:
    epsilon: float
    trials: int
    failures: int
    rate: float
    ci_low: float
    ci_high: float
    decoder: str
    code: str
    p: int
    T: int


class _SyndromeSampler:
    """Per-syndrome sampling tables reused across Monte-Carlo trials."""

    def __init__(self, code, config: DecoderConfig, archive: AngleArchive, s: BitVector):
        quantum = isinstance(code, StabilizerCode)
        entry = archive.lookup(
            code.name,
            config.construction,
            s.to_string(),
            config.p,
            config.alpha,
            config.eta,
            config.variant,
        )
        if entry is None:
            raise KeyError(
                f"missing archived angles for {code.name}/{config.construction} "
                f"syndrome {s.to_string()} at p={config.p}"
            )
        sched = entry.schedule()
        if config.construction == "gen":
            if quantum:
                G = code.generator(config.variant)
                z = coset_representative(code.H_S, s, symplectic=True)
                ham = quantum_generator_cost(G, z)
            else:
                G = code.G
                z = coset_representative(code.H, s)
                ham = classical_generator_cost(G, z)
            emap = np.zeros(1 << G.nrows, dtype=np.uint32)
            for i, row in enumerate(G.rows):
                emap[1 << i : 2 << i] = emap[: 1 << i] ^ np.uint32(row)
            self.emap = emap ^ np.uint32(z.bits)
            self.match = None
        else:
            if quantum:
                ham = quantum_check_cost(code.H_S, s, config.penalty())
                twisted = code.H_S.swap_halves()
                width = 2 * code.n
            else:
                ham = classical_check_cost(code.H, s, config.penalty())
                twisted = code.H
                width = code.n
            self.emap = np.arange(1 << width, dtype=np.uint32)
            synd = np.zeros(1 << width, dtype=np.uint32)
            for i, row in enumerate(twisted.rows):
                par = np.bitwise_count(self.emap & np.uint32(row)) & np.uint32(1)
                synd |= par << np.uint32(i)
            self.match = synd == np.uint32(s.bits)
        if quantum:
            n = code.n
            half = np.uint32((1 << n) - 1)
            self.weights = np.bitwise_count((self.emap & half) | (self.emap >> np.uint32(n)))
        else:
            self.weights = np.bitwise_count(self.emap)
        state = run_circuit(ham.materialize(), sched)
        self.cumulative = np.cumsum(state.probabilities())

    def decode_bits(self, T: int, rng: np.random.Generator) -> tuple[int, bool]:
        """Sampled decision: (estimate bits, matched flag)."""
        idx = sample_indices(self.cumulative, T, rng)
        if self.match is None:
            weights = self.weights[idx]
            return int(self.emap[idx[int(np.argmin(weights))]]), True
        ok = self.match[idx]
        if not ok.any():
            return 0, False
        weights = np.where(ok, self.weights[idx], np.iinfo(np.int64).max)
        return int(self.emap[idx[int(np.argmin(weights))]]), True


def error_rate_curve(
    code,
    config: DecoderConfig,
    epsilons: list[float],
    archive: AngleArchive,
    seed: int,
    max_failures: int = 500,
    max_trials: int = 1_000_000,
) -> list[CurvePoint]:
    """Monte-Carlo block error rate per epsilon, with Wilson 95% bounds.

    Each epsilon point runs until max_failures decoding failures have
    been collected or max_trials trials have been spent.
    """
    quantum = isinstance(code, StabilizerCode)
    width = 2 * code.n if quantum else code.n
    samplers: dict[int, _SyndromeSampler] = {}
    stab = RowSpace(code.stab_rows) if quantum else None
    points = []
    for eps_idx, eps in enumerate(epsilons):
        ChannelModel("depolarizing" if quantum else "bsc", eps)
        trials = 0
        failures = 0
        while failures < max_failures and trials < max_trials:
            rng = spawn_rng(seed, eps_idx, trials)
            if quantum:
                e = sample_depolarizing(code.n, eps, rng)
                s = symplectic_syndrome(e, code.H_S)
            else:
                e = sample_bsc(code.n, eps, rng)
                s = syndrome(e, code.H)
            if s.is_zero():
                est_bits = 0
            else:
                sampler = samplers.get(s.bits)
                if sampler is None:
                    sampler = _SyndromeSampler(code, config, archive, s)
                    samplers[s.bits] = sampler
                est_bits, _ = sampler.decode_bits(config.T, rng)
            if quantum:
                failed = not stab.contains(BitVector(est_bits ^ e.bits, width))
            else:
                failed = est_bits != e.bits
            failures += failed
            trials += 1
        lo, hi = wilson_ci(failures, trials)
        points.append(
            CurvePoint(
                epsilon=eps,
                trials=trials,
                failures=failures,
                rate=failures / trials,
                ci_low=lo,
                ci_high=hi,
                decoder=config.construction,
                code=code.name,
                p=config.p,
                T=config.T,
            )
        )
    return points


CURVE_HEADER = "epsilon,trials,failures,block_error_rate,ci_low,ci_high,decoder,code,p,T"


def curve_rows(points: list[CurvePoint]) -> list[str]:
    rows = []
    for pt in points:
        rows.append(
            f"{pt.epsilon:.10g},{pt.trials},{pt.failures},{pt.rate:.10g},"
            f"{pt.ci_low:.10g},{pt.ci_high:.10g},{pt.decoder},{pt.code},{pt.p},{pt.T}"
        )
    return rows


def bdd_rows(code, epsilons: list[float]) -> list[str]:
    """Reference curve rows for the bounded-distance decoder."""
    if code.distance is None:
        raise ValueError(f"code {code.name} has no recorded distance")
    rows = []
    for eps in epsilons:
        rate = bdd_reference(code.n, code.distance, eps)
        rows.append(f"{eps:.10g},,,{rate:.10g},,,bdd,{code.name},,")
    return rows
