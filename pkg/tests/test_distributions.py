import json
import math

import numpy as np
import pytest

from qaoadec.bits import BitVector
from qaoadec.codes import coset_representative, symplectic_syndrome
from qaoadec.distributions import (
    DIST_HEADER,
    coset_error_table,
    coset_index_of_error,
    distribution_report,
    js,
    kl,
    posterior,
    qaoa_distribution,
    write_distribution,
)
from qaoadec.engine import AngleSchedule

FLAT = AngleSchedule((0.0,), (0.0,))
S_X1 = BitVector.from_string("0001")  # syndrome of an X fault on qubit 1


def test_posterior_is_distribution(five_one_three):
    P = posterior(five_one_three, S_X1, 0.32, variant="sparse")
    assert P.probs.shape == (64,)
    assert P.probs.sum() == pytest.approx(1.0, abs=1e-10)
    assert (P.probs >= 0).all()


def test_posterior_depends_only_on_gweight(five_one_three):
    P = posterior(five_one_three, S_X1, 0.4)
    z = coset_representative(five_one_three.H_S, S_X1, symplectic=True)
    emap = coset_error_table(five_one_three.G_S, z)
    gw = {}
    for u in range(64):
        g = BitVector(int(emap[u]), 10).gweight()
        gw.setdefault(g, []).append(P.probs[u])
    for g, vals in gw.items():
        assert np.allclose(vals, vals[0])


def test_posterior_low_noise_concentrates_on_leader(five_one_three):
    P = posterior(five_one_three, S_X1, 1e-4)
    z = coset_representative(five_one_three.H_S, S_X1, symplectic=True)
    emap = coset_error_table(five_one_three.G_S, z)
    gws = np.array([BitVector(int(b), 10).gweight() for b in emap])
    leaders = np.flatnonzero(gws == gws.min())
    assert P.probs[leaders].sum() > 0.999


def test_posterior_validation(five_one_three):
    with pytest.raises(ValueError):
        posterior(five_one_three, S_X1, 0.0)
    with pytest.raises(ValueError):
        posterior(five_one_three, S_X1, 0.75)


def test_qaoa_distribution_uniform_at_zero_angles(five_one_three):
    Q = qaoa_distribution(five_one_three, S_X1, FLAT)
    assert np.allclose(Q.probs, 1 / 64)
    assert Q.probs.sum() == pytest.approx(1.0, abs=1e-10)


def test_shared_coset_representative(five_one_three):
    P = posterior(five_one_three, S_X1, 0.2)
    Q = qaoa_distribution(five_one_three, S_X1, FLAT)
    assert P.z == Q.z
    assert symplectic_syndrome(P.z, five_one_three.H_S) == S_X1


def test_kl_basics():
    p = np.array([0.75, 0.25])
    assert kl(p, p) == 0.0
    # closed form: (3/4 - 1/4) log2 3
    q = np.array([0.25, 0.75])
    assert kl(p, q) == pytest.approx(0.5 * math.log2(3.0))
    with pytest.raises(ValueError):
        kl(np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    with pytest.raises(ValueError):
        kl(np.array([0.5, 0.5]), np.array([1.0]))
    # 0 log 0 = 0 on the p side
    assert kl(np.array([1.0, 0.0]), np.array([0.5, 0.5])) == pytest.approx(1.0)


def test_js_properties():
    p = np.array([1.0, 0.0])
    q = np.array([0.0, 1.0])
    assert js(p, p) == 0.0
    assert js(p, q) == pytest.approx(1.0)
    rng = np.random.default_rng(1)
    for _ in range(100):
        a = rng.dirichlet(np.ones(8))
        b = rng.dirichlet(np.ones(8))
        v = js(a, b)
        assert 0.0 <= v <= 1.0
        assert v == pytest.approx(js(b, a))


def test_coset_index_of_error(five_one_three, shor913):
    # z for this syndrome is exactly the X1 image, so X1 sits at label 0
    e_x1 = BitVector.from_string("1000000000")
    assert coset_index_of_error(five_one_three, e_x1, S_X1, "sparse") == 0
    # the three degenerate single-Z errors of the nine-qubit code
    z1, z2, z3 = (BitVector(1 << (9 + j), 18) for j in range(3))
    s = symplectic_syndrome(z2, shor913.H_S)
    idx = {coset_index_of_error(shor913, e, s, "sparse") for e in (z1, z2, z3)}
    assert len(idx) == 3
    with pytest.raises(ValueError, match="syndrome"):
        coset_index_of_error(five_one_three, BitVector.zeros(10), S_X1)


def test_distribution_report_and_dump(tmp_path, five_one_three):
    report = distribution_report(five_one_three, S_X1, 0.32, FLAT, variant="sparse", top_k=5)
    assert report.js == pytest.approx(js(report.posterior.probs, report.qaoa.probs))
    assert len(report.top) == 5
    # top entries sorted by Q descending
    qs = [q for _, _, q in report.top]
    assert qs == sorted(qs, reverse=True)
    csv_path = tmp_path / "dist.csv"
    json_path = tmp_path / "dist.json"
    write_distribution(report, csv_path, json_path)
    lines = csv_path.read_text().splitlines()
    assert lines[0] == DIST_HEADER
    assert len(lines) == 1 + 64
    u, pv, qv = lines[1].split(",")
    assert u == "0"
    summary = json.loads(json_path.read_text())
    assert summary["epsilon"] == 0.32
    assert summary["js"] == pytest.approx(report.js)
    assert summary["p"] == 1
    assert len(summary["angles"]["gammas"]) == 1
