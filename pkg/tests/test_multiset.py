from math import comb

import pytest

from hhb.multiset import Multiset, submultiset_count


def test_of_is_canonical():
    assert Multiset.of([1, 1, 0]) == Multiset.of([0, 1, 1])
    assert Multiset.of([1, 1, 0]).entries == ((0, 1), (1, 2))
    assert hash(Multiset.of([2, 0])) == hash(Multiset.of([0, 2]))


def test_views():
    tau = Multiset.of([1, 1, 0])
    assert tau.size == 3
    assert tau.support == frozenset({0, 1})
    assert tau.multiplicity(1) == 2
    assert tau.multiplicity(5) == 0
    assert tau.elements() == (0, 1, 1)
    assert str(tau) == "[0,1,1]"
    assert sum(1 for _ in tau.orderings()) == 6


def test_rejects_negative_and_non_canonical():
    with pytest.raises(ValueError):
        Multiset.of([-1, 0])
    with pytest.raises(ValueError):
        Multiset(((1, 1), (0, 1)))
    with pytest.raises(ValueError):
        Multiset(((0, 0),))


def test_add_and_subtract():
    tau = Multiset.of([0, 1, 1])
    assert tau - Multiset.of([1]) == Multiset.of([0, 1])
    assert Multiset.of([1]) + Multiset.of([0, 1]) == tau
    assert tau - tau == Multiset.empty()
    with pytest.raises(ValueError):
        tau - Multiset.of([0, 0])


def test_contains():
    tau = Multiset.of([0, 1, 1])
    assert tau.contains(Multiset.of([1, 1]))
    assert not tau.contains(Multiset.of([0, 0]))
    assert tau.contains(Multiset.empty())


def test_submultiset_count():
    tau = Multiset.of([1, 1, 0])
    assert submultiset_count(Multiset.of([1]), tau) == 2
    assert submultiset_count(Multiset.of([0, 1]), tau) == 2
    assert submultiset_count(Multiset.of([1, 1]), tau) == 1
    assert submultiset_count(Multiset.of([0, 0]), tau) == 0
    assert submultiset_count(Multiset.empty(), tau) == 1


@pytest.mark.parametrize(
    "elements", [[0, 1, 1], [2, 2, 2, 2], [0, 1, 2, 3], [0, 0, 1, 2, 2]]
)
def test_submultisets_counts_sum_to_binomial(elements):
    tau = Multiset.of(elements)
    for size in range(tau.size + 1):
        subs = dict(tau.submultisets(size))
        assert sum(subs.values()) == comb(tau.size, size)
        for sub, count in subs.items():
            assert sub.size == size
            assert count == submultiset_count(sub, tau)


def test_submultisets_of_frankl_face():
    assert dict(Multiset.of([0, 1, 1]).submultisets(2)) == {
        Multiset.of([0, 1]): 2,
        Multiset.of([1, 1]): 1,
    }
    assert list(Multiset.of([0, 1]).submultisets(3)) == []


def test_ordering():
    faces = [Multiset.of([1, 1]), Multiset.of([0, 1]), Multiset.of([0, 0])]
    assert sorted(faces) == [faces[2], faces[1], faces[0]]
    assert Multiset.of([0, 2]) < Multiset.of([1, 1])
