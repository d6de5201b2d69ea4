"""Exact statevector simulation of the alternating-layer circuit.

Basis state x on m qubits is the amplitude index with qubit 1 as the
least significant bit. The circuit alternates a diagonal phase layer
exp(-i gamma C) with a transverse mixer exp(-i beta X) per qubit, p
times, starting from the uniform superposition.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import BinaryIO

import numpy as np

try:
    from numba import njit as _njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    _njit = None

from .bits import BitVector
from .seeding import as_rng

REGISTER_CAP = 24


@dataclass(frozen=True)
class AngleSchedule:
    """Layer angles (gamma_1..gamma_p, beta_1..beta_p), reduced mod pi."""

    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.gammas) != len(self.betas):
            raise ValueError("gamma and beta counts differ")
        if not self.gammas:
            raise ValueError("need at least one layer")
        object.__setattr__(self, "gammas", tuple(g % math.pi for g in self.gammas))
        object.__setattr__(self, "betas", tuple(b % math.pi for b in self.betas))

    @property
    def p(self) -> int:
        return len(self.gammas)

    @classmethod
    def from_array(cls, x) -> "AngleSchedule":
        x = list(x)
        if len(x) % 2:
            raise ValueError("angle array must hold p gammas then p betas")
        p = len(x) // 2
        return cls(tuple(x[:p]), tuple(x[p:]))

    def to_array(self) -> np.ndarray:
        return np.array(self.gammas + self.betas, dtype=np.float64)


@dataclass
class StateVector:
    """2^m complex amplitudes; treated as immutable once returned."""

    m: int
    amps: np.ndarray

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.amps.real**2 + self.amps.imag**2)))

    def probabilities(self) -> np.ndarray:
        return self.amps.real**2 + self.amps.imag**2


def plus_state(m: int, cap: int = REGISTER_CAP) -> StateVector:
    """Uniform superposition, the mixer's top eigenvector."""
    if not 1 <= m <= cap:
        raise ValueError(f"register size {m} outside 1..{cap}")
    amp = 2.0 ** (-m / 2.0)
    return StateVector(m, np.full(1 << m, amp, dtype=np.complex128))


def apply_cost_layer(state: StateVector, diagonal: np.ndarray, gamma: float) -> StateVector:
    """Multiply amplitude x by exp(-i gamma d_x)."""
    if len(diagonal) != len(state.amps):
        raise ValueError("diagonal length does not match the register")
    return StateVector(state.m, state.amps * np.exp(-1j * gamma * diagonal))


def apply_mixer_layer(state: StateVector, beta: float) -> StateVector:
    """Apply exp(-i beta X) on every qubit.

    Qubit j pairs amplitudes at stride 2^(j-1); each pair (a0, a1) maps to
    (cos(beta) a0 - i sin(beta) a1, -i sin(beta) a0 + cos(beta) a1).
    """
    amps = state.amps.copy()
    _mix_inplace(amps, state.m, beta, _Workspace(state.m))
    return StateVector(state.m, amps)


class _Workspace:
    """Scratch buffers so repeated circuit runs do not reallocate."""

    def __init__(self, m: int):
        n = 1 << m
        self.phase = np.empty(n, dtype=np.complex128)
        self.half_a = np.empty(n // 2, dtype=np.complex128)
        self.half_b = np.empty(n // 2, dtype=np.complex128)


def _mix_inplace(amps: np.ndarray, m: int, beta: float, work: _Workspace) -> None:
    c = math.cos(beta)
    s = -1j * math.sin(beta)
    for j in range(m):
        view = amps.reshape(-1, 2, 1 << j)
        a0 = view[:, 0, :]
        a1 = view[:, 1, :]
        t_sa1 = work.half_a.reshape(a0.shape)
        t_sa0 = work.half_b.reshape(a0.shape)
        np.multiply(a1, s, out=t_sa1)
        np.multiply(a0, s, out=t_sa0)
        a0 *= c
        a0 += t_sa1
        a1 *= c
        a1 += t_sa0


def _evolve_numpy(amps, m, diagonal, gammas, betas, work: _Workspace) -> None:
    for gamma, beta in zip(gammas, betas):
        np.multiply(diagonal, -1j * gamma, out=work.phase)
        np.exp(work.phase, out=work.phase)
        amps *= work.phase
        _mix_inplace(amps, m, beta, work)


def _evolve_loops(amps, m, diagonal, gammas, betas):
    # Compiled kernel body; small registers make per-call numpy dispatch
    # the bottleneck, so the layer loop runs as plain scalar code.
    n = amps.shape[0]
    for layer in range(gammas.shape[0]):
        g = gammas[layer]
        for i in range(n):
            amps[i] *= np.exp(-1j * g * diagonal[i])
        c = np.cos(betas[layer])
        s = -1j * np.sin(betas[layer])
        for j in range(m):
            stride = 1 << j
            step = stride << 1
            for base in range(0, n, step):
                for off in range(base, base + stride):
                    a0 = amps[off]
                    a1 = amps[off + stride]
                    amps[off] = c * a0 + s * a1
                    amps[off + stride] = s * a0 + c * a1


if _njit is not None:
    _evolve_compiled = _njit(cache=True)(_evolve_loops)
else:  # pragma: no cover
    _evolve_compiled = None


def _run_inplace(amps, m, diagonal, gammas, betas, work: _Workspace | None = None) -> None:
    if _evolve_compiled is not None:
        _evolve_compiled(
            amps, m, diagonal,
            np.asarray(gammas, dtype=np.float64),
            np.asarray(betas, dtype=np.float64),
        )
        return
    _evolve_numpy(amps, m, diagonal, gammas, betas, work or _Workspace(m))


def run_circuit(diagonal: np.ndarray, schedule: AngleSchedule, cap: int = REGISTER_CAP) -> StateVector:
    """Level-p circuit on plus_state: cost layer then mixer layer, p times."""
    m = _register_size(diagonal)
    diagonal = np.ascontiguousarray(diagonal, dtype=np.float64)
    state = plus_state(m, cap)
    _run_inplace(state.amps, m, diagonal, schedule.gammas, schedule.betas)
    return state


def expectation(state: StateVector, diagonal: np.ndarray) -> float:
    """<psi| C |psi> for a diagonal C."""
    if len(diagonal) != len(state.amps):
        raise ValueError("diagonal length does not match the register")
    return float(state.probabilities() @ diagonal)


def qaoa_expectation(diagonal: np.ndarray, schedule: AngleSchedule) -> float:
    """Objective value F_p at the given angles."""
    state = run_circuit(diagonal, schedule)
    return expectation(state, diagonal)


def sample(state: StateVector, T: int, seed: int | np.random.Generator) -> list[BitVector]:
    """T independent computational-basis draws, deterministic given seed."""
    if T < 1:
        raise ValueError("need at least one draw")
    rng = as_rng(seed)
    idx = sample_indices(np.cumsum(state.probabilities()), T, rng)
    return [BitVector(int(i), state.m) for i in idx]


def sample_indices(cumulative: np.ndarray, T: int, rng: np.random.Generator) -> np.ndarray:
    """Draw T indices from a cumulative distribution by inverse transform."""
    r = rng.random(T) * cumulative[-1]
    idx = np.searchsorted(cumulative, r, side="right")
    return np.minimum(idx, len(cumulative) - 1)


def _register_size(diagonal: np.ndarray) -> int:
    m = int(len(diagonal)).bit_length() - 1
    if (1 << m) != len(diagonal):
        raise ValueError(f"diagonal length {len(diagonal)} is not a power of two")
    return m


# ---------------------------------------------------------------------------
# State dump: little-endian uint64 register size, then 2^m (re, im) doubles.
# ---------------------------------------------------------------------------


def write_state(state: StateVector, fh: BinaryIO) -> None:
    fh.write(struct.pack("<Q", state.m))
    interleaved = np.empty(2 * len(state.amps), dtype="<f8")
    interleaved[0::2] = state.amps.real
    interleaved[1::2] = state.amps.imag
    fh.write(interleaved.tobytes())


def read_state(fh: BinaryIO) -> StateVector:
    (m,) = struct.unpack("<Q", fh.read(8))
    raw = np.frombuffer(fh.read(16 << m), dtype="<f8")
    if len(raw) != 2 << m:
        raise ValueError("truncated state dump")
    return StateVector(int(m), (raw[0::2] + 1j * raw[1::2]).astype(np.complex128))
