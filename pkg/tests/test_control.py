from fractions import Fraction

import numpy as np
import pytest

from isingctl.control import commutant_dimension, connectivity_report, sector_energies
from isingctl.simcore import ContractViolation
from isingctl.symmetry import SECTORS, parity_sector

from oracles import random_state


def test_n5_xplus_example():
    rep = connectivity_report(5, "Xplus")
    assert rep.frequencies == [8, 4]
    assert [(a, b) for a, b, _ in rep.edges] == [(1, 2), (2, 3)]
    assert [c for _, _, c in rep.edges] == pytest.approx([np.sqrt(5), np.sqrt(8)])
    assert rep.controllable and rep.commutant_dim == 1


@pytest.mark.parametrize("n", range(2, 21))
def test_all_sectors_controllable(n):
    for sector in SECTORS:
        if parity_sector(n, sector).dim == 0:
            continue
        rep = connectivity_report(n, sector)
        assert rep.connected and rep.nondegenerate and rep.commutant_dim == 1
        assert len(rep.frequencies) == rep.dim - 1
        assert rep.frequencies == [2 * (n + 1) - 4 * k for k in range(1, rep.dim)]
        assert len(set(map(abs, rep.frequencies))) == len(rep.frequencies)


@pytest.mark.parametrize("n", range(2, 15))
def test_frequencies_match_exact_energies(n):
    for sector in SECTORS:
        dim = parity_sector(n, sector).dim
        lam = sector_energies(n, dim)
        assert all(isinstance(x, Fraction) for x in lam)
        diffs = [lam[k] - lam[k + 1] for k in range(dim - 1)]
        assert diffs == connectivity_report(n, sector).frequencies


def test_edge_couplings_follow_ladder():
    n = 7
    rep = connectivity_report(n, "Xplus")
    # away from the middle the paired basis keeps the Dicke couplings
    for a, b, c in rep.edges[:-1]:
        assert c == pytest.approx(np.sqrt(a * (n - a + 1)))


def test_odd_corner_self_element_is_not_an_edge():
    rep = connectivity_report(5, "Xplus")
    assert all(a != b for a, b, _ in rep.edges)


def test_identity_commutant():
    assert commutant_dimension([np.eye(3)]) == 9


def test_commutant_of_diagonal_nondegenerate():
    assert commutant_dimension([np.diag([1.0, 2.0, 5.0])]) == 3
    assert commutant_dimension([np.diag([1.0, 1.0, 5.0])]) == 5


@pytest.mark.parametrize("n", range(4, 13))
def test_yminus_irreducible(n):
    rep = parity_sector(n, "Yminus")
    assert commutant_dimension([rep.h_zz, rep.h_y]) == 1


def _brute_commutant(mats, rng, trials=4):
    # null space of the commutator map, assembled column by column from basis matrices
    d = mats[0].shape[0]
    cols = []
    for idx in range(d * d):
        e = np.zeros(d * d, dtype=complex)
        e[idx] = 1
        a = e.reshape(d, d)
        cols.append(np.concatenate([(m @ a - a @ m).ravel() for m in mats]))
    lin = np.array(cols).T
    _, s, vh = np.linalg.svd(lin)
    rank = int(np.sum(s > 1e-9 * s[0])) if s.size and s[0] > 0 else 0
    null = vh[rank:].conj()
    # every random combination of the null basis really commutes
    for _ in range(trials):
        a = (random_state(rng, len(null)) @ null).reshape(d, d) if len(null) else np.zeros((d, d))
        for m in mats:
            assert np.max(np.abs(m @ a - a @ m)) < 1e-9
    return d * d - rank


@pytest.mark.parametrize("d", range(1, 7))
def test_commutant_agrees_with_brute_force(d):
    rng = np.random.default_rng(d)
    herm = lambda: (lambda x: x + x.conj().T)(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    blocks = np.zeros((d, d), dtype=complex)
    half = d // 2
    blocks[:half, :half] = herm()[:half, :half]
    blocks[half:, half:] = herm()[half:, half:]
    cases = [[herm()], [herm(), herm()], [blocks], [np.eye(d)], [blocks, np.diag(np.arange(d))]]
    for mats in cases:
        assert commutant_dimension(mats) == _brute_commutant(mats, rng)


def test_commutant_dimension_mismatch():
    with pytest.raises(ContractViolation):
        commutant_dimension([np.eye(2), np.eye(3)])


def test_report_validation():
    with pytest.raises(ValueError):
        connectivity_report(4, "Zplus")


def test_report_serializes():
    data = connectivity_report(4, "Yminus").to_dict()
    assert data["controllable"] is True
    assert data["frequencies"] == [6]
    assert data["edges"][0][:2] == [1, 2]
