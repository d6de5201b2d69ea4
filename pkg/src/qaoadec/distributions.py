"""Coset posteriors, circuit output distributions, and divergence metrics.

Both distributions index the cosets of a stabilizer code by the message
vector u, sharing one coset representative z so that the labels agree:
P(u) is the depolarizing-channel posterior of the error u G_S + z, and
Q(u) is the measurement distribution of the level-p circuit built from
the same (G_S, z).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bits import BitMatrix, BitVector, row_combination
from .codes import StabilizerCode, coset_representative, symplectic_syndrome
from .engine import REGISTER_CAP, AngleSchedule, run_circuit
from .hamiltonian import quantum_generator_cost


@dataclass(frozen=True)
class CosetDistribution:
    """A probability vector over {0,1}^(n+k) coset labels."""

    syndrome: BitVector
    z: BitVector
    probs: np.ndarray

    def __post_init__(self) -> None:
        if abs(float(self.probs.sum()) - 1.0) > 1e-10:
            raise ValueError("probabilities do not sum to 1")
        if (self.probs < 0).any():
            raise ValueError("negative probability")


def coset_error_table(G: BitMatrix, z: BitVector) -> np.ndarray:
    """Bits of u G + z for every u, as a uint32 array indexed by u."""
    emap = np.zeros(1 << G.nrows, dtype=np.uint32)
    for i, row in enumerate(G.rows):
        emap[1 << i : 2 << i] = emap[: 1 << i] ^ np.uint32(row)
    return emap ^ np.uint32(z.bits)


def _gw_table(emap: np.ndarray, n: int) -> np.ndarray:
    half = np.uint32((1 << n) - 1)
    return np.bitwise_count((emap & half) | (emap >> np.uint32(n)))


def posterior(
    code: StabilizerCode,
    s: BitVector,
    epsilon: float,
    variant: str = "standard",
    cap: int = REGISTER_CAP,
) -> CosetDistribution:
    """Exact channel posterior P(u | s) over the syndrome coset."""
    if not 0.0 < epsilon < 0.75:
        raise ValueError(f"epsilon {epsilon} outside (0, 3/4)")
    G = code.generator(variant)
    if G.nrows > cap:
        raise ValueError(f"coset register {G.nrows} exceeds cap {cap}")
    z = coset_representative(code.H_S, s, symplectic=True)
    gw = _gw_table(coset_error_table(G, z), code.n).astype(np.float64)
    logp = gw * np.log(epsilon / 3.0) + (code.n - gw) * np.log1p(-epsilon)
    w = np.exp(logp - logp.max())
    return CosetDistribution(s, z, w / w.sum())


def qaoa_distribution(
    code: StabilizerCode,
    s: BitVector,
    sched: AngleSchedule,
    variant: str = "standard",
) -> CosetDistribution:
    """Measurement distribution Q(u | s) of the generator-based circuit."""
    G = code.generator(variant)
    z = coset_representative(code.H_S, s, symplectic=True)
    state = run_circuit(quantum_generator_cost(G, z).materialize(), sched)
    return CosetDistribution(s, z, state.probabilities())


def kl(p: np.ndarray, q: np.ndarray) -> float:
    """Kullback-Leibler divergence in bits, with 0 log 0 = 0.

    Raises when q vanishes somewhere p does not; use js for a metric
    that tolerates disjoint support.
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError("distributions have different sizes")
    support = p > 0
    if (q[support] <= 0).any():
        raise ValueError("absolute continuity violated: q = 0 where p > 0")
    return float(np.sum(p[support] * np.log2(p[support] / q[support])))


def js(p: np.ndarray, q: np.ndarray) -> float:
    """Jensen-Shannon divergence in bits; symmetric and bounded by [0, 1]."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    m = 0.5 * (p + q)
    return 0.5 * kl(p, m) + 0.5 * kl(q, m)


@dataclass(frozen=True)
class DistributionReport:
    """Posterior vs circuit output for one syndrome, with divergence summary."""

    code: str
    variant: str
    epsilon: float
    p: int
    schedule: AngleSchedule
    posterior: CosetDistribution
    qaoa: CosetDistribution
    js: float
    kl_pm: float
    kl_qm: float
    top: tuple[tuple[int, float, float], ...]  # (u decimal, P, Q), by Q desc


def distribution_report(
    code: StabilizerCode,
    s: BitVector,
    epsilon: float,
    sched: AngleSchedule,
    variant: str = "standard",
    top_k: int = 8,
) -> DistributionReport:
    P = posterior(code, s, epsilon, variant)
    Q = qaoa_distribution(code, s, sched, variant)
    m = 0.5 * (P.probs + Q.probs)
    order = np.argsort(-Q.probs, kind="stable")[:top_k]
    top = tuple((int(u), float(P.probs[u]), float(Q.probs[u])) for u in order)
    return DistributionReport(
        code=code.name,
        variant=variant,
        epsilon=epsilon,
        p=sched.p,
        schedule=sched,
        posterior=P,
        qaoa=Q,
        js=0.5 * kl(P.probs, m) + 0.5 * kl(Q.probs, m),
        kl_pm=kl(P.probs, m),
        kl_qm=kl(Q.probs, m),
        top=top,
    )


def coset_index_of_error(
    code: StabilizerCode, e: BitVector, s: BitVector, variant: str = "standard"
) -> int:
    """Decimal label u of an error within the coset of syndrome s."""
    if symplectic_syndrome(e, code.H_S).bits != s.bits:
        raise ValueError("error does not match the syndrome")
    z = coset_representative(code.H_S, s, symplectic=True)
    u = row_combination(e ^ z, code.generator(variant))
    if u is None:
        raise ValueError("error is outside the coset; generator rows incomplete")
    return u.bits


DIST_HEADER = "u_decimal,P,Q"


def write_distribution(report: DistributionReport, csv_path: str | Path, json_path: str | Path) -> None:
    """CSV of the two distributions plus a JSON divergence summary."""
    with open(csv_path, "w") as fh:
        fh.write(DIST_HEADER + "\n")
        for u in range(len(report.posterior.probs)):
            fh.write(f"{u},{report.posterior.probs[u]:.12g},{report.qaoa.probs[u]:.12g}\n")
    summary = {
        "code": report.code,
        "variant": report.variant,
        "syndrome": report.posterior.syndrome.to_string(),
        "js": report.js,
        "kl_PM": report.kl_pm,
        "kl_QM": report.kl_qm,
        "epsilon": report.epsilon,
        "p": report.p,
        "angles": {"gammas": list(report.schedule.gammas), "betas": list(report.schedule.betas)},
    }
    with open(json_path, "w") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
