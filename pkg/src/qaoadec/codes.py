"""Linear and stabilizer code definitions, syndrome maps, and the built-in catalog.

Binary 2n-tuples represent Pauli operators as (x-half | z-half); the
symplectic syndrome of e against a check matrix Hs is e . Lambda . Hs^T,
where Lambda swaps the two halves.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field
from pathlib import Path

from .bits import BitMatrix, BitVector, dot, in_rowspace, nullspace, solve_transpose


@dataclass(frozen=True)
class LinearCode:
    """An [n, k] binary linear code given by parity-check and generator matrices."""

    name: str
    n: int
    k: int
    H: BitMatrix
    G: BitMatrix
    distance: int | None = None

    def __post_init__(self) -> None:
        if self.H.ncols != self.n or self.G.ncols != self.n:
            raise ValueError("matrix widths disagree with block length")
        if self.G.nrows != self.k:
            raise ValueError(f"generator has {self.G.nrows} rows, expected k={self.k}")
        if self.H.rank() != self.n - self.k:
            raise ValueError(f"rank(H)={self.H.rank()} != n-k={self.n - self.k}")
        if self.G.rank() != self.k:
            raise ValueError("generator rows are dependent")
        for i in range(1, self.k + 1):
            if not syndrome(self.G.row(i), self.H).is_zero():
                raise ValueError(f"G row {i} violates the parity checks")

    @property
    def r(self) -> int:
        """Number of parity checks (may exceed n - k for redundant matrices)."""
        return self.H.nrows

    def all_syndromes(self) -> list[BitVector]:
        """The achievable syndromes, in increasing integer order."""
        seen: dict[int, BitVector] = {}
        for e in range(1 << self.n):
            s = syndrome(BitVector(e, self.n), self.H)
            seen.setdefault(s.bits, s)
        return [seen[b] for b in sorted(seen)]


@dataclass(frozen=True)
class StabilizerCode:
    """An [[n, k]] stabilizer code in binary symplectic representation.

    H_S holds the binary images of a generating set of checks, G_S a
    basis of the normalizer image (stabilizer block on top, logical
    operators below). G_S_sparse, when present, is an alternative
    normalizer basis with the same row space but sparser rows.
    """

    name: str
    n: int
    k: int
    H_S: BitMatrix
    G_S: BitMatrix
    stab_rows: BitMatrix = field(init=False)
    G_S_sparse: BitMatrix | None = None
    distance: int | None = None

    def __post_init__(self) -> None:
        if self.H_S.ncols != 2 * self.n or self.G_S.ncols != 2 * self.n:
            raise ValueError("matrix widths disagree with 2n")
        if self.H_S.rank() != self.n - self.k:
            raise ValueError(f"rank(H_S)={self.H_S.rank()} != n-k={self.n - self.k}")
        if self.G_S.nrows != self.n + self.k or self.G_S.rank() != self.n + self.k:
            raise ValueError("G_S must be a full-rank (n+k) x 2n matrix")
        twisted = self.H_S.swap_halves()
        for i in range(1, self.H_S.nrows + 1):
            for j in range(i + 1, self.H_S.nrows + 1):
                if dot(self.H_S.rows[i - 1], twisted.rows[j - 1]):
                    raise ValueError(f"checks {i} and {j} anticommute")
        for g in range(1, self.G_S.nrows + 1):
            if not symplectic_syndrome(self.G_S.row(g), self.H_S).is_zero():
                raise ValueError(f"G_S row {g} is outside the normalizer")
        object.__setattr__(self, "stab_rows", self.H_S)
        if self.G_S_sparse is not None:
            if self.G_S_sparse.nrows != self.n + self.k or self.G_S_sparse.rank() != self.n + self.k:
                raise ValueError("sparse generator must be full-rank (n+k) x 2n")
            for g in range(1, self.G_S_sparse.nrows + 1):
                if not in_rowspace(self.G_S_sparse.row(g), self.G_S):
                    raise ValueError(f"sparse generator row {g} changes the row space")

    @property
    def r(self) -> int:
        return self.H_S.nrows

    def generator(self, variant: str = "standard") -> BitMatrix:
        if variant == "standard":
            return self.G_S
        if variant == "sparse":
            if self.G_S_sparse is None:
                raise ValueError(f"code {self.name} has no sparse generator variant")
            return self.G_S_sparse
        raise ValueError(f"unknown generator variant {variant!r}")

    def all_syndromes(self) -> list[BitVector]:
        """All 2^(n-k) syndromes (full-rank checks make each achievable)."""
        return [BitVector(s, self.r) for s in range(1 << self.r)]


def syndrome(e: BitVector, H: BitMatrix) -> BitVector:
    """Classical syndrome e . H^T."""
    return H.mul_transpose(e)


def symplectic_syndrome(e: BitVector, H_S: BitMatrix) -> BitVector:
    """Symplectic syndrome e . Lambda . H_S^T."""
    return H_S.swap_halves().mul_transpose(e)


def coset_representative(Hlike: BitMatrix, s: BitVector, symplectic: bool = False) -> BitVector:
    """A deterministic z with syndrome(z) = s.

    Gaussian elimination with leftmost pivots and zero free variables,
    so repeated calls agree. Raises ValueError when s is unreachable.
    """
    m = Hlike.swap_halves() if symplectic else Hlike
    return solve_transpose(m, s)


def generator_from_checks(H: BitMatrix) -> BitMatrix:
    """Basis of {v : v . H^T = 0}."""
    return nullspace(H)


def normalizer_basis(H_S: BitMatrix) -> BitMatrix:
    """Basis of {v : v . Lambda . H_S^T = 0}, stabilizer rows first.

    When the input rows are independent they are returned verbatim as
    the leading rows; the remainder is completed deterministically from
    the nullspace of the twisted map.
    """
    twisted = H_S.swap_halves()
    for i in range(H_S.nrows):
        for j in range(i + 1, H_S.nrows):
            if dot(H_S.rows[i], twisted.rows[j]):
                raise ValueError(f"checks {i + 1} and {j + 1} are not symplectically orthogonal")
    kernel = nullspace(twisted)
    rows: list[int] = []
    if H_S.rank() == H_S.nrows:
        rows.extend(H_S.rows)
    taken = BitMatrix(tuple(rows), H_S.ncols)
    for cand in kernel.rows:
        if len(rows) == kernel.nrows:
            break
        v = BitVector(cand, H_S.ncols)
        if not in_rowspace(v, taken):
            rows.append(cand)
            taken = BitMatrix(tuple(rows), H_S.ncols)
    return taken


# ---------------------------------------------------------------------------
# Built-in code catalog, transcribed as literal matrices.
# ---------------------------------------------------------------------------

_H_743 = [
    [1, 1, 0, 1, 1, 0, 0],
    [1, 0, 1, 1, 0, 1, 0],
    [0, 1, 1, 1, 0, 0, 1],
]

_G_743 = [
    [1, 0, 0, 0, 1, 1, 0],
    [0, 1, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 1, 1],
]

# Circulant parity-check matrix of an equivalent [7,4,3] code: all seven
# cyclic shifts of (1,0,1,1,1,0,0). Rank 3, every bit equally protected.
_H_CIRC = [
    [1, 0, 1, 1, 1, 0, 0],
    [0, 1, 0, 1, 1, 1, 0],
    [0, 0, 1, 0, 1, 1, 1],
    [1, 0, 0, 1, 0, 1, 1],
    [1, 1, 0, 0, 1, 0, 1],
    [1, 1, 1, 0, 0, 1, 0],
    [0, 1, 1, 1, 0, 0, 1],
]

_HS_513 = [
    [1, 0, 0, 1, 0, 0, 1, 1, 0, 0],
    [0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
    [1, 0, 1, 0, 0, 0, 0, 0, 1, 1],
    [0, 1, 0, 1, 0, 1, 0, 0, 0, 1],
]

_GS_513_LOGICAL = [
    [0, 0, 0, 0, 0, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 0, 0, 0, 0, 0],
]

_GS_513_SPARSE_LOGICAL = [
    [1, 1, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 0, 1, 0, 1],
]

_GS_913 = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1],
    [1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1],
]

_GS_913_SPARSE = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1],
    [1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1],
]


@functools.cache
def hamming743() -> LinearCode:
    return LinearCode(
        name="hamming743",
        n=7,
        k=4,
        H=BitMatrix.from_rows(_H_743),
        G=BitMatrix.from_rows(_G_743),
        distance=3,
    )


@functools.cache
def hamming743_circ() -> LinearCode:
    H = BitMatrix.from_rows(_H_CIRC)
    return LinearCode(
        name="hamming743_circ",
        n=7,
        k=4,
        H=H,
        G=generator_from_checks(H),
        distance=3,
    )


@functools.cache
def five_one_three() -> StabilizerCode:
    H_S = BitMatrix.from_rows(_HS_513)
    return StabilizerCode(
        name="five_one_three",
        n=5,
        k=1,
        H_S=H_S,
        G_S=BitMatrix.from_rows(_HS_513 + _GS_513_LOGICAL),
        G_S_sparse=BitMatrix.from_rows(_HS_513 + _GS_513_SPARSE_LOGICAL),
        distance=3,
    )


@functools.cache
def shor913() -> StabilizerCode:
    G_S = BitMatrix.from_rows(_GS_913)
    H_S = BitMatrix(G_S.rows[:8], G_S.ncols)
    return StabilizerCode(
        name="shor913",
        n=9,
        k=1,
        H_S=H_S,
        G_S=G_S,
        G_S_sparse=BitMatrix.from_rows(_GS_913_SPARSE),
        distance=3,
    )


CATALOG = {
    "hamming743": hamming743,
    "hamming743_circ": hamming743_circ,
    "five_one_three": five_one_three,
    "shor913": shor913,
}


def get_code(name: str) -> LinearCode | StabilizerCode:
    try:
        return CATALOG[name]()
    except KeyError:
        raise KeyError(f"unknown code {name!r}; known: {', '.join(sorted(CATALOG))}") from None


# ---------------------------------------------------------------------------
# Code-definition files.
# ---------------------------------------------------------------------------


def code_from_definition(data: dict) -> LinearCode | StabilizerCode:
    """Build a code from a parsed definition document.

    Expected fields: name, type ('classical' or 'quantum'), n, k, rows_H,
    and optionally rows_G (classical) or rows_GS (quantum). Missing
    generators are derived from the checks.
    """
    for key in ("name", "type", "n", "k", "rows_H"):
        if key not in data:
            raise ValueError(f"code definition is missing field {key!r}")
    name, kind, n, k = data["name"], data["type"], int(data["n"]), int(data["k"])
    if kind == "classical":
        H = BitMatrix.from_rows(data["rows_H"], ncols=n)
        if "rows_G" in data and data["rows_G"] is not None:
            G = BitMatrix.from_rows(data["rows_G"], ncols=n)
        else:
            G = generator_from_checks(H)
        return LinearCode(name=name, n=n, k=k, H=H, G=G, distance=data.get("distance"))
    if kind == "quantum":
        H_S = BitMatrix.from_rows(data["rows_H"], ncols=2 * n)
        if "rows_GS" in data and data["rows_GS"] is not None:
            G_S = BitMatrix.from_rows(data["rows_GS"], ncols=2 * n)
        else:
            G_S = normalizer_basis(H_S)
        return StabilizerCode(
            name=name, n=n, k=k, H_S=H_S, G_S=G_S, distance=data.get("distance")
        )
    raise ValueError(f"unknown code type {kind!r} (expected 'classical' or 'quantum')")


def load_code_file(path: str | Path) -> LinearCode | StabilizerCode:
    with open(path) as fh:
        data = json.load(fh)
    return code_from_definition(data)


def code_to_definition(code: LinearCode | StabilizerCode) -> dict:
    if isinstance(code, LinearCode):
        return {
            "name": code.name,
            "type": "classical",
            "n": code.n,
            "k": code.k,
            "rows_H": code.H.to_lists(),
            "rows_G": code.G.to_lists(),
        }
    out = {
        "name": code.name,
        "type": "quantum",
        "n": code.n,
        "k": code.k,
        "rows_H": code.H_S.to_lists(),
        "rows_GS": code.G_S.to_lists(),
    }
    if code.G_S_sparse is not None:
        out["rows_GS_sparse"] = code.G_S_sparse.to_lists()
    return out
