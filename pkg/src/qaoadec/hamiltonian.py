"""Diagonal cost operators for syndrome decoding.

Every construction yields a sum of signed products of Pauli-Z factors
plus a constant. A term is stored as (coefficient, support mask); the
eigenvalue at basis state x is

    constant + sum_t coeff_t * (-1)^popcount(x & mask_t).

Four builders are provided:

* ``classical_generator_cost``  -- k qubits, rewards closeness of uG to z,
  so the top eigenstates are the minimum-weight coset elements.
* ``classical_check_cost``      -- n qubits, eta-weighted parity-check
  satisfaction plus an alpha-weighted preference for low-weight errors.
* ``quantum_generator_cost``    -- n+k qubits, same idea driven by the
  generalized weight of u G_S + z.
* ``quantum_check_cost``        -- 2n qubits, twisted checks plus a
  per-qubit penalty whose eigenvalue is +1 only on the 00 pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import BitMatrix, BitVector

MATERIALIZE_CAP = 24


@dataclass(frozen=True)
class ZTerm:
    """One signed product of Z factors: coefficient and support mask."""

    coeff: float
    mask: int

    def __post_init__(self) -> None:
        if not np.isfinite(self.coeff) or self.coeff == 0.0:
            raise ValueError(f"coefficient must be finite and nonzero, got {self.coeff}")
        if self.mask < 0:
            raise ValueError("negative mask")


class _TermAccumulator:
    """Collects terms, merging equal masks and folding mask-0 into the constant."""

    def __init__(self) -> None:
        self._coeffs: dict[int, float] = {}
        self.constant = 0.0

    def add(self, coeff: float, mask: int) -> None:
        if coeff == 0.0:
            return
        if mask == 0:
            self.constant += coeff
            return
        self._coeffs[mask] = self._coeffs.get(mask, 0.0) + coeff

    def terms(self) -> tuple[ZTerm, ...]:
        return tuple(
            ZTerm(c, m) for m, c in sorted(self._coeffs.items()) if c != 0.0
        )


@dataclass(frozen=True)
class DiagonalHamiltonian:
    """A diagonal operator on m qubits in merged, mask-sorted canonical form."""

    m: int
    terms: tuple[ZTerm, ...]
    constant: float = 0.0

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("need at least one qubit")
        top = 1 << self.m
        for t in self.terms:
            if t.mask >= top:
                raise ValueError(f"term mask 0x{t.mask:x} exceeds register size {self.m}")

    def value(self, x: int) -> float:
        """Eigenvalue at basis state x, evaluated term by term."""
        acc = self.constant
        for t in self.terms:
            acc += t.coeff * (1.0 - 2.0 * ((x & t.mask).bit_count() & 1))
        return acc

    def materialize(self, cap: int = MATERIALIZE_CAP) -> np.ndarray:
        """Dense vector of all 2^m eigenvalues."""
        if self.m > cap:
            raise ValueError(f"m={self.m} exceeds materialization cap {cap}")
        idx = np.arange(1 << self.m, dtype=np.uint32)
        out = np.full(1 << self.m, self.constant, dtype=np.float64)
        for t in self.terms:
            parity = np.bitwise_count(idx & np.uint32(t.mask)) & 1
            out += t.coeff * (1.0 - 2.0 * parity.astype(np.float64))
        return out

    def spectrum_extrema(self, cap: int = MATERIALIZE_CAP) -> tuple[float, np.ndarray, float]:
        """Exact (max value, argmax states, min value) by full scan."""
        vals = self.materialize(cap)
        vmax = vals.max()
        return float(vmax), np.flatnonzero(vals == vmax), float(vals.min())


def classical_generator_cost(G: BitMatrix, z: BitVector) -> DiagonalHamiltonian:
    """Cost operator on k qubits whose eigenvalue at u is n - 2 wt(uG + z)."""
    if z.n != G.ncols:
        raise ValueError(f"z length {z.n} != generator width {G.ncols}")
    acc = _TermAccumulator()
    for j in range(1, G.ncols + 1):
        acc.add(1.0 - 2.0 * z.bit(j), G.column_mask(j))
    return DiagonalHamiltonian(m=G.nrows, terms=acc.terms(), constant=acc.constant)


def classical_check_cost(
    H: BitMatrix, s: BitVector, penalty: "PenaltyParams"
) -> DiagonalHamiltonian:
    """Cost operator on n qubits: eta-weighted checks plus alpha * sum_j Z_j."""
    if s.n != H.nrows:
        raise ValueError(f"syndrome length {s.n} != check count {H.nrows}")
    acc = _TermAccumulator()
    for j in range(1, H.nrows + 1):
        acc.add(penalty.eta * (1.0 - 2.0 * s.bit(j)), H.rows[j - 1])
    for j in range(H.ncols):
        acc.add(float(penalty.alpha), 1 << j)
    return DiagonalHamiltonian(m=H.ncols, terms=acc.terms(), constant=acc.constant)


def quantum_generator_cost(G_S: BitMatrix, z: BitVector) -> DiagonalHamiltonian:
    """Cost operator on n+k qubits whose eigenvalue at u is n - 2 gw(u G_S + z).

    Per qubit position j the pair of columns (j, n+j) contributes three
    half-weight terms and -1/2 to the constant; the identity

        (-1)^gw = ((-1)^a + (-1)^b + (-1)^(a+b) - 1) / 2

    for the pairwise mismatch indicators makes the sum count matching
    positions.
    """
    if G_S.ncols % 2:
        raise ValueError("generator width must be even")
    n = G_S.ncols // 2
    if z.n != G_S.ncols:
        raise ValueError(f"z length {z.n} != generator width {G_S.ncols}")
    acc = _TermAccumulator()
    for j in range(1, n + 1):
        sign_x = 1.0 - 2.0 * z.bit(j)
        sign_z = 1.0 - 2.0 * z.bit(n + j)
        mask_x = G_S.column_mask(j)
        mask_z = G_S.column_mask(n + j)
        acc.add(0.5 * sign_x, mask_x)
        acc.add(0.5 * sign_z, mask_z)
        acc.add(0.5 * sign_x * sign_z, mask_x ^ mask_z)
        acc.add(-0.5, 0)
    return DiagonalHamiltonian(m=G_S.nrows, terms=acc.terms(), constant=acc.constant)


def quantum_check_cost(
    H_S: BitMatrix, s: BitVector, penalty: "PenaltyParams"
) -> DiagonalHamiltonian:
    """Cost operator on 2n qubits: twisted checks plus the pairwise weight penalty.

    The penalty (Z_j + Z_{n+j} + Z_j Z_{n+j} - 1) / 2 per qubit position
    has eigenvalue +1 on the 00 pair and -1 on 01, 10, 11, so it scores
    the negated generalized weight.
    """
    if H_S.ncols % 2:
        raise ValueError("check width must be even")
    n = H_S.ncols // 2
    if s.n != H_S.nrows:
        raise ValueError(f"syndrome length {s.n} != check count {H_S.nrows}")
    twisted = H_S.swap_halves()
    acc = _TermAccumulator()
    for j in range(1, H_S.nrows + 1):
        acc.add(penalty.eta * (1.0 - 2.0 * s.bit(j)), twisted.rows[j - 1])
    half = penalty.alpha / 2.0
    for j in range(n):
        acc.add(half, 1 << j)
        acc.add(half, 1 << (n + j))
        acc.add(half, (1 << j) | (1 << (n + j)))
        acc.add(-half, 0)
    return DiagonalHamiltonian(m=2 * n, terms=acc.terms(), constant=acc.constant)


@dataclass(frozen=True)
class PenaltyParams:
    """Check-based construction weights: eta on checks, alpha on error weight."""

    alpha: int
    eta: int

    def __post_init__(self) -> None:
        if self.alpha < 1 or self.eta < 1:
            raise ValueError("alpha and eta must be positive integers")

    @property
    def favors_low_weight(self) -> bool:
        """Selection rule eta >= alpha: a weight-one error matching the
        syndrome scores above the all-zero vector."""
        return self.eta >= self.alpha


# ---------------------------------------------------------------------------
# Dump format: header "m <TAB> constant", then one "coeff <TAB> mask" line
# per term with the mask written coordinate-1 first.
# ---------------------------------------------------------------------------


def dump_hamiltonian(h: DiagonalHamiltonian) -> str:
    lines = [f"{h.m}\t{h.constant:.12g}"]
    for t in h.terms:
        lines.append(f"{t.coeff:.12g}\t{BitVector(t.mask, h.m).to_string()}")
    return "\n".join(lines) + "\n"


def parse_hamiltonian(text: str) -> DiagonalHamiltonian:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty Hamiltonian dump")
    head = lines[0].split("\t")
    if len(head) != 2:
        raise ValueError(f"malformed header {lines[0]!r}")
    m, constant = int(head[0]), float(head[1])
    terms = []
    for ln in lines[1:]:
        parts = ln.split("\t")
        if len(parts) != 2:
            raise ValueError(f"malformed term line {ln!r}")
        coeff = float(parts[0])
        mask = BitVector.from_string(parts[1]).bits
        if len(parts[1]) != m:
            raise ValueError(f"mask width {len(parts[1])} != m={m}")
        terms.append(ZTerm(coeff, mask))
    return DiagonalHamiltonian(m=m, terms=tuple(sorted(terms, key=lambda t: t.mask)), constant=constant)
