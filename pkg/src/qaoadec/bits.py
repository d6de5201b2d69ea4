"""GF(2) vectors and matrices packed into Python integer bitsets.

Coordinate 1 of a vector is the least significant bit of its integer
encoding; this convention is used consistently for vectors, matrix rows,
and basis-state indices of the simulator register.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class BitVector:
    """A fixed-length vector over GF(2), stored as an integer bitset."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"negative length {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits 0x{self.bits:x} out of range for length {self.n}")

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(0, n)

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BitVector":
        """Build from coordinates (v1, v2, ..., vn)."""
        bits = 0
        n = 0
        for v in values:
            if v not in (0, 1):
                raise ValueError(f"entry {v!r} is not a bit")
            bits |= v << n
            n += 1
        return cls(bits, n)

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        """Parse a bitstring written coordinate-1 first, e.g. '010'."""
        return cls.from_bits(int(c) for c in s)

    def bit(self, i: int) -> int:
        """Coordinate i, 1-indexed."""
        if not 1 <= i <= self.n:
            raise IndexError(f"coordinate {i} out of range 1..{self.n}")
        return (self.bits >> (i - 1)) & 1

    def to_tuple(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    def to_string(self) -> str:
        return "".join(str(b) for b in self.to_tuple())

    def weight(self) -> int:
        """Hamming weight (popcount)."""
        return self.bits.bit_count()

    def gweight(self) -> int:
        """Generalized weight of a length-2n vector.

        Counts positions j <= n with a 1 in coordinate j or n+j.
        """
        if self.n % 2:
            raise ValueError(f"generalized weight needs even length, got {self.n}")
        half = self.n // 2
        lo = self.bits & ((1 << half) - 1)
        hi = self.bits >> half
        return (lo | hi).bit_count()

    def halves(self) -> tuple["BitVector", "BitVector"]:
        if self.n % 2:
            raise ValueError(f"cannot split odd length {self.n}")
        half = self.n // 2
        mask = (1 << half) - 1
        return BitVector(self.bits & mask, half), BitVector(self.bits >> half, half)

    def swap_halves(self) -> "BitVector":
        lo, hi = self.halves()
        return BitVector((lo.bits << lo.n) | hi.bits, self.n)

    def is_zero(self) -> bool:
        return self.bits == 0

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError(f"length mismatch {self.n} != {other.n}")
        return BitVector(self.bits ^ other.bits, self.n)

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        return iter(self.to_tuple())

    def __str__(self) -> str:
        return self.to_string()


def dot(a: int, b: int) -> int:
    """Inner product of two bitsets over GF(2)."""
    return (a & b).bit_count() & 1


@dataclass(frozen=True)
class BitMatrix:
    """A binary matrix stored as one integer bitset per row."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        top = 1 << self.ncols
        for i, r in enumerate(self.rows):
            if not 0 <= r < top:
                raise ValueError(f"row {i} does not fit in {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "BitMatrix":
        """Build from row lists of 0/1 entries; rejects ragged input."""
        if not rows:
            if ncols is None:
                raise ValueError("cannot infer column count of an empty matrix")
            return cls((), ncols)
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ValueError(f"ragged rows: lengths {sorted(widths)}")
        width = widths.pop()
        if ncols is not None and ncols != width:
            raise ValueError(f"rows have {width} columns, expected {ncols}")
        packed = tuple(BitVector.from_bits(r).bits for r in rows)
        return cls(packed, width)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> BitVector:
        """Row i, 1-indexed."""
        if not 1 <= i <= self.nrows:
            raise IndexError(f"row {i} out of range 1..{self.nrows}")
        return BitVector(self.rows[i - 1], self.ncols)

    def column(self, j: int) -> BitVector:
        """Column j, 1-indexed, as a length-nrows vector."""
        if not 1 <= j <= self.ncols:
            raise IndexError(f"column {j} out of range 1..{self.ncols}")
        bits = 0
        for i, r in enumerate(self.rows):
            bits |= ((r >> (j - 1)) & 1) << i
        return BitVector(bits, self.nrows)

    def column_mask(self, j: int) -> int:
        return self.column(j).bits

    def to_lists(self) -> list[list[int]]:
        return [list(BitVector(r, self.ncols).to_tuple()) for r in self.rows]

    def swap_halves(self) -> "BitMatrix":
        """Swap the left and right halves of every row (the Lambda twist)."""
        if self.ncols % 2:
            raise ValueError(f"cannot split odd width {self.ncols}")
        return BitMatrix(
            tuple(BitVector(r, self.ncols).swap_halves().bits for r in self.rows),
            self.ncols,
        )

    def left_mul(self, u: BitVector) -> BitVector:
        """u . M : XOR of the rows selected by u."""
        if u.n != self.nrows:
            raise ValueError(f"vector length {u.n} != row count {self.nrows}")
        acc = 0
        sel = u.bits
        for r in self.rows:
            if sel & 1:
                acc ^= r
            sel >>= 1
        return BitVector(acc, self.ncols)

    def mul_transpose(self, v: BitVector) -> BitVector:
        """v . M^T : one parity bit per row."""
        if v.n != self.ncols:
            raise ValueError(f"vector length {v.n} != column count {self.ncols}")
        bits = 0
        for i, r in enumerate(self.rows):
            bits |= dot(r, v.bits) << i
        return BitVector(bits, self.nrows)

    def rank(self) -> int:
        return len(_eliminate(list(self.rows), self.ncols)[0])


def _eliminate(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form with leftmost-pivot order.

    Returns (reduced nonzero rows, pivot column indices 0-based), rows
    aligned with pivots.
    """
    reduced: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for piv, base in zip(pivots, reduced):
            if (r >> piv) & 1:
                r ^= base
        if r == 0:
            continue
        piv = (r & -r).bit_length() - 1
        # Back-substitute into earlier rows to keep the form reduced.
        for i, base in enumerate(reduced):
            if (base >> piv) & 1:
                reduced[i] = base ^ r
        pos = 0
        while pos < len(pivots) and pivots[pos] < piv:
            pos += 1
        pivots.insert(pos, piv)
        reduced.insert(pos, r)
    return reduced, pivots


def nullspace(m: BitMatrix) -> BitMatrix:
    """Basis of {v : M . v^T = 0}, one row per free column, deterministic."""
    reduced, pivots = _eliminate(list(m.rows), m.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for piv, row in zip(pivots, reduced):
            if (row >> free) & 1:
                v |= 1 << piv
        basis.append(v)
    return BitMatrix(tuple(basis), m.ncols)


def solve_transpose(m: BitMatrix, s: BitVector) -> BitVector:
    """Deterministic solution v of v . M^T = s.

    Gaussian elimination with leftmost pivots; free variables are set to
    zero, so the result is reproducible. Raises ValueError when the
    system is inconsistent.
    """
    if s.n != m.nrows:
        raise ValueError(f"syndrome length {s.n} != row count {m.nrows}")
    # Augment each row with its right-hand side in bit position ncols.
    aug = [r | (((s.bits >> i) & 1) << m.ncols) for i, r in enumerate(m.rows)]
    reduced: list[int] = []
    pivots: list[int] = []
    col_mask = (1 << m.ncols) - 1
    for r in aug:
        for piv, base in zip(pivots, reduced):
            if (r >> piv) & 1:
                r ^= base
        if (r & col_mask) == 0:
            if r:  # 0 = 1 row
                raise ValueError("inconsistent system: syndrome not achievable")
            continue
        body = r & col_mask
        piv = (body & -body).bit_length() - 1
        for i, base in enumerate(reduced):
            if (base >> piv) & 1:
                reduced[i] = base ^ r
        pos = 0
        while pos < len(pivots) and pivots[pos] < piv:
            pos += 1
        pivots.insert(pos, piv)
        reduced.insert(pos, r)
    v = 0
    for piv, row in zip(pivots, reduced):
        if row >> m.ncols:
            v |= 1 << piv
    return BitVector(v, m.ncols)


class RowSpace:
    """Row space of a matrix with a precomputed reduced basis for fast membership."""

    def __init__(self, m: BitMatrix):
        self.ncols = m.ncols
        self._reduced, self._pivots = _eliminate(list(m.rows), m.ncols)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def contains(self, v: BitVector) -> bool:
        if v.n != self.ncols:
            raise ValueError(f"vector length {v.n} != column count {self.ncols}")
        r = v.bits
        for piv, base in zip(self._pivots, self._reduced):
            if (r >> piv) & 1:
                r ^= base
        return r == 0


def in_rowspace(v: BitVector, m: BitMatrix) -> bool:
    """Whether v is a GF(2) combination of the rows of m."""
    return RowSpace(m).contains(v)


def row_combination(v: BitVector, m: BitMatrix) -> BitVector | None:
    """Coefficients u with u . M = v, or None when v is outside the row space.

    Uses the original rows in order, so u indexes m's rows directly.
    """
    if v.n != m.ncols:
        raise ValueError(f"vector length {v.n} != column count {m.ncols}")
    # Track which original rows make up each reduced row.
    reduced: list[int] = []
    pivots: list[int] = []
    combos: list[int] = []
    for idx, r in enumerate(m.rows):
        c = 1 << idx
        for piv, base, bc in zip(pivots, reduced, combos):
            if (r >> piv) & 1:
                r ^= base
                c ^= bc
        if r == 0:
            continue
        piv = (r & -r).bit_length() - 1
        for i, base in enumerate(reduced):
            if (base >> piv) & 1:
                reduced[i] = base ^ r
                combos[i] ^= c
        pos = 0
        while pos < len(pivots) and pivots[pos] < piv:
            pos += 1
        pivots.insert(pos, piv)
        reduced.insert(pos, r)
        combos.insert(pos, c)
    rem = v.bits
    u = 0
    for piv, base, c in zip(pivots, reduced, combos):
        if (rem >> piv) & 1:
            rem ^= base
            u ^= c
    if rem:
        return None
    return BitVector(u, m.nrows)
