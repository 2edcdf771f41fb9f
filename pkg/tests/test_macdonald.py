from __future__ import annotations

import pytest

from kschur.bases import branch_k, hl_character, schur_peel
from kschur.charpoly import QTPoly, power_sum
from kschur.macdonald import (
    Filling,
    gh_character,
    macdonald_schur,
    modified_macdonald,
    qt_kostka,
    refined_expansion,
    refined_positivity,
    syt_count,
)
from kschur.partitions import PartitionError, conjugate, partitions_of

Q = QTPoly.monomial


def q(*coeffs: int) -> QTPoly:
    return QTPoly.from_q({e: c for e, c in enumerate(coeffs) if c})


def at_one(f):
    return f.map_coeffs(lambda c: QTPoly.const(c.evaluate(1, 1)))


# -- fillings formula


def test_single_box():
    f = modified_macdonald((1,), 3)
    assert f == power_sum(3)


def test_two_box_orientation():
    assert macdonald_schur((2,)) == {(2,): 1, (1, 1): Q(1, 0)}
    assert macdonald_schur((1, 1)) == {(2,): 1, (1, 1): Q(0, 1)}


def test_filling_stats():
    # (2,1): bottom row 1 2, top box 2 sits over the 1, so it is a descent with leg 0
    fill = Filling((2, 1), {(0, 0): 1, (1, 0): 2, (0, 1): 2})
    inv, maj = fill.stats()
    assert maj == 1
    assert inv >= 0
    with pytest.raises(PartitionError):
        Filling((2, 1), {(0, 0): 1}).stats()


def test_needs_enough_variables():
    with pytest.raises(PartitionError):
        modified_macdonald((2, 1), 2)


@pytest.mark.parametrize("m", range(1, 7))
def test_symmetric_and_regular(m):
    for mu in partitions_of(m):
        f = modified_macdonald(mu, m)
        assert f.is_symmetric()
        assert at_one(f) == power_sum(m) ** m


@pytest.mark.parametrize("m", range(1, 7))
def test_schur_positivity(m):
    for mu in partitions_of(m):
        assert macdonald_schur(mu).is_nonnegative()


@pytest.mark.parametrize("m", range(1, 5))
def test_dominant_peel_matches_full_peel(m):
    for mu in partitions_of(m):
        assert schur_peel(modified_macdonald(mu, m)) == macdonald_schur(mu)


@pytest.mark.parametrize("m", range(1, 6))
def test_conjugation_swaps_variables(m):
    for mu in partitions_of(m):
        swapped = {lam: c.swap() for lam, c in macdonald_schur(conjugate(mu)).items()}
        assert macdonald_schur(mu) == swapped


# -- graded characters


def test_gh_fixtures():
    assert gh_character((1,)).coeffs == {(1,): q(1)}
    assert gh_character((2, 1)).coeffs == {
        (2, 1): QTPoly({(0, 0): 1, (1, 1): 1}),
        (3,): Q(1, 0),
        (1, 1, 1): Q(0, 1),
    }
    assert gh_character((1, 1, 1)).coeffs == {
        (1, 1, 1): q(1),
        (2, 1): q(0, 1, 1),
        (3,): q(0, 0, 0, 1),
    }
    assert qt_kostka((2, 1), (2, 1)).evaluate(0, 0) == 1


def test_gh_latex_and_json():
    g = gh_character((2, 1))
    assert g.to_json()["m"] == 3
    assert r"\begin{tabular}" in g.to_latex()


@pytest.mark.parametrize("m", range(1, 6))
def test_qt_kostka_counts_tableaux(m):
    for lam in partitions_of(m):
        for mu in partitions_of(m):
            k = qt_kostka(lam, mu)
            assert k.is_nonnegative()
            assert k.evaluate(1, 1) == syt_count(lam)


def test_qt_kostka_size_mismatch():
    with pytest.raises(PartitionError):
        qt_kostka((2,), (1,))


@pytest.mark.parametrize("m", range(1, 6))
def test_t_zero_gives_hall_littlewood(m):
    for lam in partitions_of(m):
        at_t0 = gh_character(lam).expansion()
        at_t0 = {mu: c.specialize_t(0) for mu, c in at_t0.items()}
        assert hl_character(lam) == {mu: c for mu, c in at_t0.items() if c}


# -- refined positivity


def test_refined_examples():
    assert refined_expansion((2, 1), 2) == {(2, 1): 1, (1, 1, 1): Q(0, 1)}
    assert refined_expansion((1, 1, 1), 1) == {(1, 1, 1): 1}
    assert refined_expansion((1, 1, 1), 2) == {(1, 1, 1): 1, (2, 1): q(0, 0, 1)}
    assert refined_positivity((2, 1), 2).nonnegative


def test_refined_rejects_unbounded():
    with pytest.raises(PartitionError):
        refined_expansion((3,), 2)


@pytest.mark.parametrize("m", range(1, 6))
def test_monotone_refinement(m):
    for lam in partitions_of(m):
        for k in range(lam[0], m):
            lower = refined_expansion(lam, k)
            via_branch: dict = {}
            for mu, c in lower.items():
                for nu, b in branch_k(mu, k).items():
                    via_branch[nu] = via_branch.get(nu, QTPoly()) + c * b
            assert refined_expansion(lam, k + 1) == via_branch
