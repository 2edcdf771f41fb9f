from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kschur.partitions import (
    CorePair,
    PartitionError,
    RibbonData,
    boxes,
    conjugate,
    core_to_kbounded,
    d_k,
    dominance_leq,
    enumerate_kbounded,
    from_json,
    hook,
    is_kbounded,
    is_r_core,
    kbounded_to_core,
    m_stat,
    max_kbounded,
    n_stat,
    omega_k,
    parse_partition,
    partition,
    partitions_of,
    pieri_pairs,
    to_json,
)


@st.composite
def partitions(draw, max_size: int = 12):
    m = draw(st.integers(0, max_size))
    return draw(st.sampled_from(partitions_of(m)))


@st.composite
def kbounded(draw, max_size: int = 8):
    m = draw(st.integers(1, max_size))
    k = draw(st.integers(1, m))
    return draw(st.sampled_from(enumerate_kbounded(m, k))), k


# -- construction and parsing


def test_partition_normalizes_trailing_zeros():
    assert partition([3, 1, 0, 0]) == (3, 1)


@pytest.mark.parametrize("bad", [[1, 2], [2, -1]])
def test_partition_rejects_bad_input(bad):
    with pytest.raises(PartitionError):
        partition(bad)


def test_parse_and_json():
    assert parse_partition("6,5,5,3,1,1") == (6, 5, 5, 3, 1, 1)
    assert parse_partition("") == ()
    assert from_json(to_json((2, 1))) == (2, 1)


# -- fixtures


@pytest.mark.parametrize(
    "lam, want",
    [
        ((6, 1, 1), (3, 1, 1, 1, 1, 1)),
        ((1, 1, 1), (3,)),
        ((12, 6, 6, 3, 1, 1), (6, 4, 4, 3, 3, 3, 1, 1, 1, 1, 1, 1)),
    ],
)
def test_conjugate_examples(lam, want):
    assert conjugate(lam) == want


def test_hook_examples():
    assert hook((1,), 0, 0) == 1
    assert hook((2, 1), 0, 0) == 3
    assert hook((2, 1), 1, 0) == 1


def test_core_predicate():
    assert is_r_core((), 5)
    assert is_r_core((12, 6, 6, 3, 1, 1), 8)
    assert not is_r_core((2, 1), 3)


def test_statistics():
    assert n_stat((1, 1, 1)) == 0
    assert n_stat((3,)) == 3
    assert m_stat((2, 1)) == 1


def test_dominance_examples():
    assert dominance_leq((1, 1, 1), (3,))
    assert dominance_leq((2, 1), (2, 1))
    assert not dominance_leq((3,), (2, 1))


def test_enumerate_kbounded_examples():
    assert enumerate_kbounded(3, 2) == [(2, 1), (1, 1, 1)]
    assert enumerate_kbounded(3, 1) == [(1, 1, 1)]
    assert enumerate_kbounded(0, 4) == [()]


def test_kbounded_to_core_examples():
    pair = kbounded_to_core((6, 5, 5, 3, 1, 1), 7)
    assert (pair.core, pair.inner) == ((12, 6, 6, 3, 1, 1), (6, 1, 1))
    assert kbounded_to_core((), 3).core == ()
    assert kbounded_to_core((2, 1), 3) == CorePair((2, 1), (), 3)


def test_core_to_kbounded_examples():
    assert core_to_kbounded((12, 6, 6, 3, 1, 1), 7) == (6, 5, 5, 3, 1, 1)
    assert core_to_kbounded((), 2) == ()
    assert core_to_kbounded((2, 1), 3) == (2, 1)


def test_omega_examples():
    assert omega_k((6, 5, 5, 3, 1, 1), 7) == (3, 3, 3, 2, 2, 2, 1, 1, 1, 1, 1, 1)
    assert d_k((6, 5, 5, 3, 1, 1), 7) == 8
    assert omega_k((2, 1), 2) == (1, 1, 1)
    assert d_k((2, 1), 2) == 1


def test_not_kbounded_message():
    with pytest.raises(PartitionError, match="not k-bounded"):
        omega_k((3, 3), 2)


def test_max_kbounded():
    assert max_kbounded(7, 3) == (3, 3, 1)
    assert max_kbounded(2, 5) == (2,)


def test_pieri_examples():
    assert pieri_pairs((1,), 1) == [((), RibbonData(1, 1, (0,)))]
    got = {mu: data.spins for mu, data in pieri_pairs((2, 1), 2)}
    assert got == {(1, 1): (0,), (2,): (0, 1)}


def test_core_pair_check_rejects_bad_hooks():
    with pytest.raises(PartitionError):
        CorePair((3,), (), 2).check()


# -- invariants


@given(partitions())
def test_conjugate_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


@given(kbounded())
def test_omega_involution_and_d_symmetry(case):
    lam, k = case
    w = omega_k(lam, k)
    assert omega_k(w, k) == lam
    assert d_k(w, k) == d_k(lam, k)


@given(kbounded())
def test_core_roundtrip_and_hooks(case):
    lam, k = case
    pair = kbounded_to_core(lam, k)
    pair.check()
    assert core_to_kbounded(pair.core, k) == lam
    assert is_r_core(pair.core, k + 1)
    # a box of the core lies in the inner shape exactly when its hook exceeds k
    for x, y in boxes(pair.core):
        inner = y < len(pair.inner) and x < pair.inner[y]
        assert inner == (hook(pair.core, x, y) > k)


@given(kbounded())
def test_small_partitions_have_trivial_omega(case):
    lam, k = case
    if sum(lam) <= k:
        assert omega_k(lam, k) == conjugate(lam)
        assert d_k(lam, k) == 0


@given(partitions(8), partitions(8), st.integers(1, 8))
def test_dominance_preserves_kboundedness(lam, mu, k):
    if sum(lam) == sum(mu) and dominance_leq(mu, lam) and is_kbounded(lam, k):
        assert is_kbounded(mu, k)


@given(kbounded(6))
def test_pieri_spins_in_range(case):
    lam, k = case
    for mu, data in pieri_pairs(lam, k):
        data.check()
        c, h = data.ribbon_count, data.common_height
        assert len(data.spins) == c
        assert all(c * (h - 1) <= s <= c * h - 1 for s in data.spins)
        assert sum(mu) == sum(lam) - 1
