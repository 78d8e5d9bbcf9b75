"""End-to-end smoke checks for the _fiso extension module."""

import math

import pytest

import fiso


def test_group_basics():
    g = fiso.Group([4, 3])
    assert g.order == 12
    assert g.lcm == 12
    assert g.rank == 2
    assert g.element_at(5) == [1, 2]
    assert g.index_of([1, 2]) == 5
    with pytest.raises(fiso.FisoError):
        fiso.Group([6])  # not a prime power


def test_dft_constant():
    g = fiso.Group([4])
    coeffs = fiso.dft(g, [1, 1, 1, 1])
    assert abs(coeffs[0] - 1.0) < 1e-12
    assert all(abs(c) < 1e-12 for c in coeffs[1:])
    assert fiso.spectral_norm(g, [1, 1, 1, 1]) == pytest.approx(1.0)
    assert fiso.sparsity(g, [1, 1, 1, 1]) == 1


def test_parseval_random():
    g = fiso.Group([2, 2, 3])
    values = [1 if (i * 7 + 3) % 5 < 2 else -1 for i in range(g.order)]
    coeffs = fiso.dft(g, values)
    assert sum(abs(c) ** 2 for c in coeffs) == pytest.approx(1.0, abs=1e-9)


def test_exact_automorphism_distance():
    g = fiso.Group([3])
    f = [-1, 1, 1]
    h = [-1, 1, 1]
    dist, images = fiso.exact_automorphism_distance(g, f, h)
    assert dist == pytest.approx(0.0)
    assert len(images) == 1


def test_tester_accepts_identical_pair():
    g = fiso.Group([4])
    f = [-1, -1, 1, 1]  # 2-sparse
    verdict = fiso.test_isomorphism(
        g,
        f,
        f,
        epsilon=0.05,
        tau=0.4,
        seed=3,
        theta=0.5,
        m_tilde=100,
        sparse=2,
        eps_wt2=0.04,
        eps_proj=0.05,
        round_tol=0.7,
    )
    assert verdict["decision"] == "Accept"
    assert verdict["total_queries"] > 0
    assert "witness_generator_images" in verdict


def test_tester_rejects_negated_pair():
    g = fiso.Group([4])
    f = [-1, -1, 1, 1]
    neg = [-v for v in f]
    verdict = fiso.test_isomorphism(
        g,
        neg,
        f,
        epsilon=0.05,
        tau=0.4,
        seed=3,
        theta=0.5,
        m_tilde=100,
        sparse=2,
        eps_wt2=0.04,
        eps_proj=0.05,
        round_tol=0.7,
    )
    assert verdict["decision"] == "Reject"


def test_invalid_values_raise():
    g = fiso.Group([4])
    with pytest.raises(fiso.FisoError):
        fiso.dft(g, [1, 1, 1])  # wrong length
    with pytest.raises(fiso.FisoError):
        fiso.dft(g, [1, 1, 1, 2])  # wrong alphabet
