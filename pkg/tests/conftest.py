"""Shared fixtures: catalog codes and session-wide optimized angle archives.

The archives are the expensive part of the suite (minutes of simplex
search at level 4), so they are computed once per session and shared by
the decoder, distribution, and acceptance tests.
"""

from __future__ import annotations

import pytest

from qaoadec import PenaltyParams, get_code
from qaoadec.codes import coset_representative
from qaoadec.hamiltonian import classical_check_cost, quantum_generator_cost
from qaoadec.optimize import AngleArchive, ArchiveEntry, ObjectiveHandle, nm_with_canonical_starts

OPT_SEED = 5
OPT_HOPS = 8


@pytest.fixture(scope="session")
def hamming743():
    return get_code("hamming743")


@pytest.fixture(scope="session")
def hamming743_circ():
    return get_code("hamming743_circ")


@pytest.fixture(scope="session")
def five_one_three():
    return get_code("five_one_three")


@pytest.fixture(scope="session")
def shor913():
    return get_code("shor913")


def optimize_check_archive(code, penalty: PenaltyParams, p: int) -> AngleArchive:
    """Optimized angles for every nonzero syndrome of a classical code."""
    archive = AngleArchive()
    for s in code.all_syndromes():
        if s.is_zero():
            continue
        ham = classical_check_cost(code.H, s, penalty)
        obj = ObjectiveHandle(ham.materialize(), p)
        rep = nm_with_canonical_starts(obj, p, seed=OPT_SEED, hops=OPT_HOPS)
        archive.add(
            ArchiveEntry(
                code=code.name,
                construction="check",
                syndrome=s.to_string(),
                p=p,
                alpha=penalty.alpha,
                eta=penalty.eta,
                gammas=rep.best.gammas,
                betas=rep.best.betas,
                F_p=rep.best_value,
                strategy=rep.strategy,
                seed=OPT_SEED,
            )
        )
    return archive


def optimize_quantum_gen_archive(code, variant: str, p: int) -> AngleArchive:
    """Optimized generator-construction angles for every nonzero syndrome."""
    archive = AngleArchive()
    for s in code.all_syndromes():
        if s.is_zero():
            continue
        z = coset_representative(code.H_S, s, symplectic=True)
        ham = quantum_generator_cost(code.generator(variant), z)
        obj = ObjectiveHandle(ham.materialize(), p)
        rep = nm_with_canonical_starts(obj, p, seed=OPT_SEED, hops=OPT_HOPS)
        archive.add(
            ArchiveEntry(
                code=code.name,
                construction="gen",
                syndrome=s.to_string(),
                p=p,
                alpha=None,
                eta=None,
                gammas=rep.best.gammas,
                betas=rep.best.betas,
                F_p=rep.best_value,
                strategy=rep.strategy,
                seed=OPT_SEED,
                variant=variant,
            )
        )
    return archive


@pytest.fixture(scope="session")
def circ_p4_archive(hamming743_circ):
    print("\n[fixture] optimizing hamming743_circ check p=4 angles (7 syndromes)")
    return optimize_check_archive(hamming743_circ, PenaltyParams(1, 1), 4)


@pytest.fixture(scope="session")
def h743_p4_archive(hamming743):
    print("\n[fixture] optimizing hamming743 check p=4 angles (7 syndromes)")
    return optimize_check_archive(hamming743, PenaltyParams(1, 4), 4)


@pytest.fixture(scope="session")
def c513_sparse_p4_archive(five_one_three):
    print("\n[fixture] optimizing five_one_three gen/sparse p=4 angles (15 syndromes)")
    return optimize_quantum_gen_archive(five_one_three, "sparse", 4)
