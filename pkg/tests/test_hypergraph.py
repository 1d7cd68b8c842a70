import math

import pytest

from hhb.bound import hoffman_bound
from hhb.catalog import mantel_spec
from hhb.hypergraph import (
    HypergraphError,
    KPartiteSpec,
    WeightedHypergraph,
    from_kpartite,
    induced_measure,
    link,
    links_at_level,
    relabel,
    same_measure,
    skeleton,
)
from hhb.multiset import Multiset, submultiset_count
from tests.conftest import graph, random_hypergraph

M = Multiset.of


def test_build_merges_duplicates_and_drops_zeros():
    X = WeightedHypergraph.build(
        2,
        ["a", "b"],
        [(M([0, 1]), 0.25), (M([1, 0]), 0.25), (M([0, 0]), 0.5), (M([1, 1]), 0.0)],
    )
    assert dict(X.faces) == {M([0, 1]): 0.5, M([0, 0]): 0.5}


def test_build_rejects_bad_measures():
    with pytest.raises(HypergraphError):
        WeightedHypergraph.build(2, ["a", "b"], {M([0, 1]): -0.1, M([0, 0]): 1.1})
    with pytest.raises(HypergraphError):
        WeightedHypergraph.build(2, ["a", "b"], {M([0, 1]): 0.5})
    with pytest.raises(HypergraphError):
        WeightedHypergraph.build(2, ["a", "b"], {M([0, 1, 1]): 1.0})
    with pytest.raises(HypergraphError):
        WeightedHypergraph.build(2, ["a", "b"], {M([0, 2]): 1.0})
    with pytest.raises(HypergraphError):
        WeightedHypergraph.build(2, ["a", "a"], {M([0, 1]): 1.0})


def test_normalize():
    X = graph(3, {(0, 1): 2.0, (1, 2): 2.0})
    assert X.faces[M([0, 1])] == pytest.approx(0.5)
    assert X.index_of("2") == 2
    with pytest.raises(HypergraphError):
        X.index_of("7")


def test_induced_measures_of_frankl(frankl):
    mu1 = induced_measure(frankl, 1)
    assert mu1.mass(M([0])) == pytest.approx(0.4)
    assert mu1.mass(M([1])) == pytest.approx(0.6)
    mu2 = induced_measure(frankl, 2)
    assert mu2.mass(M([1, 1])) == pytest.approx(0.3)
    assert mu2.mass(M([0, 1])) == pytest.approx(0.6)
    assert mu2.mass(M([0, 0])) == pytest.approx(0.1)
    assert induced_measure(frankl, 0).masses == {Multiset.empty(): 1.0}
    with pytest.raises(HypergraphError):
        induced_measure(frankl, 4)


def test_links_of_frankl(frankl):
    assert same_measure(link(frankl, M([1])), graph(2, {(0, 1): 1.0}))
    X0 = link(frankl, M([0]))
    assert X0.faces[M([1, 1])] == pytest.approx(0.75)
    assert X0.faces[M([0, 0])] == pytest.approx(0.25)
    assert link(frankl, Multiset.empty()) is frankl


def test_link_errors(frankl):
    X = graph(3, {(0, 1): 1.0})
    with pytest.raises(HypergraphError):
        link(X, M([2]))
    with pytest.raises(HypergraphError):
        link(frankl, M([0, 1, 1]))


def test_top_level_links_are_vertex_measures(frankl):
    top = link(frankl, M([1, 1]))
    assert top.k == 1
    assert dict(top.faces) == pytest.approx({M([0]): 1.0})
    with pytest.raises(HypergraphError):
        hoffman_bound(top)


def test_skeleton():
    X = graph(3, {(0, 1): 1.0})
    assert skeleton(X) is X
    assert induced_measure(skeleton(graph(3, {(0, 1, 2): 1.0})), 2).mass(M([0, 2])) == (
        pytest.approx(1 / 3)
    )


@pytest.mark.parametrize("seed", range(100))
def test_pushdown_identity(seed):
    X = random_hypergraph(seed)
    for i in range(1, X.k + 1):
        mu_i = induced_measure(X, i)
        assert math.fsum(mu_i.masses.values()) == pytest.approx(1.0, abs=1e-12)
        for j in range(i, X.k + 1):
            mu_j = induced_measure(X, j)
            pushed = {}
            for rho, mass in mu_j.masses.items():
                for sigma, _ in rho.submultisets(i):
                    pushed[sigma] = pushed.get(sigma, 0.0) + mass * submultiset_count(
                        sigma, rho
                    ) / math.comb(j, i)
            for sigma, mass in pushed.items():
                assert mass == pytest.approx(mu_i.mass(sigma), abs=1e-12)


@pytest.mark.parametrize("seed", range(100))
def test_sampling_identity(seed):
    X = random_hypergraph(seed)
    mu1 = induced_measure(X, 1).vertex_masses(X.num_vertices)
    mu2 = induced_measure(X, 2)
    vertex_links = links_at_level(X, 1)

    def step(u, v):
        if mu1[u] == 0:
            return 0.0
        Xu = vertex_links[M([u])]
        return mu1[u] * induced_measure(Xu, 1).mass(M([v]))

    for u in range(X.num_vertices):
        for v in range(u, X.num_vertices):
            expected = step(u, u) if u == v else step(u, v) + step(v, u)
            assert mu2.mass(M([u, v])) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("seed", range(30))
def test_links_are_probability_measures(seed):
    X = random_hypergraph(seed)
    for i in range(X.k):
        for sigma, Xs in links_at_level(X, i).items():
            assert Xs.k == X.k - i
            assert math.fsum(Xs.faces.values()) == pytest.approx(1.0, abs=1e-12)
            assert induced_measure(X, i).mass(sigma) > 0
            if i:
                assert same_measure(Xs, link(X, sigma), tolerance=1e-12)


def test_relabel_and_same_measure():
    X = graph(3, {(0, 1): 1.0, (1, 2): 3.0})
    swapped = relabel(X, {0: 2, 1: 1, 2: 0}, X.vertices)
    assert swapped.faces[M([0, 1])] == pytest.approx(0.75)
    assert not same_measure(X, swapped)
    assert same_measure(X, relabel(swapped, {0: 2, 1: 1, 2: 0}, X.vertices))


def test_from_kpartite_mantel():
    X = from_kpartite(mantel_spec(2))
    assert X.k == 3
    assert X.num_vertices == 12
    assert len(X.faces) == 8
    assert all(w == pytest.approx(1 / 8) for w in X.faces.values())
    assert X.vertices[0] == "1-1@V1"
    assert X.vertices[4] == "1-1@V2"


def test_kpartite_validation():
    with pytest.raises(HypergraphError):
        KPartiteSpec((("a",),), {(0,): 1.0})
    with pytest.raises(HypergraphError):
        KPartiteSpec((("a",), ("b",)), {(0, 1): 1.0})
    with pytest.raises(HypergraphError):
        KPartiteSpec((("a",), ("b",)), {(0, 0): 0.5})
    spec = KPartiteSpec((("a", "b"), ("c",)), {(1, 0): 1.0})
    assert spec.offsets() == [0, 2]
    assert dict(from_kpartite(spec).faces) == {M([1, 2]): 1.0}
