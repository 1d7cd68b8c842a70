import pytest

from hhb.bound import hoffman_bound, symmetric_hoffman_bound
from hhb.catalog import kwise_intersecting, mantel, mantel_spec
from hhb.hypergraph import HypergraphError, WeightedHypergraph
from hhb.multiset import Multiset
from hhb.oracle import (
    CapExceededError,
    brute_force_alpha,
    brute_force_symmetric_cross,
    cross_independent,
    dictatorship,
    is_independent,
    set_measure,
)
from hhb.tensor import tensor_power
from tests.conftest import graph, random_hypergraph


def test_independence_uses_supports(frankl):
    assert is_independent(frankl, [1])
    assert not is_independent(frankl, [0])
    assert not is_independent(frankl, [0, 1])
    assert is_independent(frankl, [])


def test_loop_face_forbids_its_support():
    X = graph(3, {(0, 0, 1): 1.0, (1, 2, 2): 1.0})
    assert not is_independent(X, [0, 1])
    assert is_independent(X, [0, 2])


def test_set_measure(frankl):
    assert set_measure(frankl, [1]) == pytest.approx(0.6)
    assert set_measure(frankl, [0, 1, 1]) == pytest.approx(1.0)


def test_alpha_of_frankl(frankl):
    result = brute_force_alpha(frankl)
    assert result.alpha == pytest.approx(0.6)
    assert result.witness == (1,)


def test_alpha_of_triangle(triangle):
    result = brute_force_alpha(triangle)
    assert result.alpha == pytest.approx(1 / 3)
    assert result.witness == (0,)


def test_alpha_of_cycle5(cycle5):
    result = brute_force_alpha(cycle5)
    assert result.alpha == pytest.approx(0.4)
    assert result.witness == (0, 2)


def test_zero_mass_vertices_stay_out_of_the_witness():
    X = graph(4, {(0, 1): 1.0})
    result = brute_force_alpha(X)
    assert result.alpha == pytest.approx(0.5)
    assert result.witness == (0,)


def test_cap(cycle5):
    with pytest.raises(CapExceededError):
        brute_force_alpha(cycle5, cap=4)


@pytest.mark.parametrize("seed", range(500))
def test_hoffman_bound_is_sound(seed):
    X = random_hypergraph(seed, max_vertices=6)
    assert hoffman_bound(X).bound + 1e-7 >= brute_force_alpha(X).alpha


@pytest.mark.parametrize("seed", range(30))
def test_witness_is_independent_and_attains_alpha(seed):
    X = random_hypergraph(seed)
    result = brute_force_alpha(X)
    assert is_independent(X, result.witness)
    assert set_measure(X, result.witness) == pytest.approx(result.alpha, abs=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_adding_a_face_only_removes_independent_sets(seed):
    X = random_hypergraph(seed)
    extra = Multiset.of(range(min(X.k, X.num_vertices)))
    if extra.size < X.k:
        extra = Multiset.of([0] * X.k)
    weights = dict(X.faces)
    weights[extra] = weights.get(extra, 0.0) + 0.5
    bigger = WeightedHypergraph.build(X.k, X.vertices, weights, normalize=True)
    witness = brute_force_alpha(bigger).witness
    assert is_independent(X, witness)


@pytest.mark.parametrize("seed", range(10))
def test_alpha_never_drops_under_tensor_square(seed):
    X = random_hypergraph(seed, max_vertices=4)
    square = tensor_power(X, 2)
    assert brute_force_alpha(square).alpha >= brute_force_alpha(X).alpha - 1e-12


def test_kwise_dictatorship():
    X = kwise_intersecting(3, 0.6).hypergraph
    square = tensor_power(X, 2)
    for coordinate in range(2):
        chosen = dictatorship(X, [1], 2, coordinate)
        assert is_independent(square, chosen)
        assert set_measure(square, chosen) == pytest.approx(0.6, abs=1e-12)
    assert dictatorship(X, [1], 2, 0) == (2, 3)
    assert dictatorship(X, [1], 2, 1) == (1, 3)
    with pytest.raises(HypergraphError):
        dictatorship(X, [1], 2, 2)
    with pytest.raises(HypergraphError):
        dictatorship(X, [5], 2, 0)


def test_cross_independence():
    spec = mantel_spec(2)
    off_diagonal = [1, 2]
    assert cross_independent(spec, [off_diagonal] * 3)
    assert not cross_independent(spec, [range(4)] * 3)
    assert cross_independent(spec, [[], range(4), range(4)])
    with pytest.raises(HypergraphError):
        cross_independent(spec, [off_diagonal] * 2)
    with pytest.raises(HypergraphError):
        cross_independent(spec, [[4], [0], [0]])


@pytest.mark.parametrize("m", [2, 4])
def test_symmetric_cross_matches_the_symmetric_bound(m):
    entry = mantel(m)
    result = brute_force_symmetric_cross(entry.kpartite, entry.involution)
    assert result.alpha == pytest.approx(0.5, abs=1e-12)
    assert cross_independent(entry.kpartite, [result.witness] * 3)
    bound = symmetric_hoffman_bound(entry.hypergraph, entry.symmetry).bound
    assert result.alpha <= bound + 1e-9


def test_symmetric_cross_witness_for_mantel_2():
    entry = mantel(2)
    result = brute_force_symmetric_cross(entry.kpartite, entry.involution)
    assert result.witness == (1, 2)


def test_symmetric_cross_validation():
    spec = mantel_spec(2)
    with pytest.raises(HypergraphError):
        brute_force_symmetric_cross(spec, (1, 2, 0, 3))
    with pytest.raises(CapExceededError):
        brute_force_symmetric_cross(mantel_spec(8), cap=20)
