import numpy as np
import pytest

from kregular.defect import defect_space
from kregular.errors import DimensionMismatch, InvalidPartition, NotContraction
from kregular.factorization import (
    InvalidChain,
    Partition,
    adjoint_chain,
    aggregate,
    all_partitions,
    block_chains,
    build_chain,
    cascade_criterion,
    check_k_regular,
    intersection_criterion,
    verify_partition_identity,
    z_matrix,
)
from kregular.matrix_core import operator_norm, unitarity_defect
from kregular.sampling import random_contraction, random_isometry, random_unitary

from conftest import corpus_chains, random_chains

NILPOTENT = np.array([[0, 1], [0, 0]])


def test_scalar_chain_product():
    chain = build_chain([0.6, 0.8])
    assert chain.product.matrix[0, 0] == pytest.approx(0.48)
    assert chain.k == 2


def test_unitary_chain_has_trivial_defects():
    rng = np.random.default_rng(0)
    chain = build_chain([random_unitary(rng, 3) for _ in range(3)])
    assert chain.factor_dims == (0, 0, 0)
    Z = z_matrix(chain)
    assert Z.shape == (0, 0)
    assert check_k_regular(chain).regular


def test_build_chain_errors():
    with pytest.raises(DimensionMismatch):
        build_chain([np.zeros((2, 3)), np.zeros((2, 3))])
    with pytest.raises(InvalidChain):
        build_chain([np.eye(2)])
    with pytest.raises(NotContraction):
        build_chain([np.eye(2), 2 * np.eye(2)])


def test_z_matrix_of_nilpotent_square_is_swap():
    Z = z_matrix(build_chain([NILPOTENT, NILPOTENT]))
    # up to the sign/phase of each eigenvector the matrix is the swap
    np.testing.assert_allclose(np.abs(Z), [[0, 1], [1, 0]], atol=1e-14)
    assert max(unitarity_defect(Z)) < 1e-14


def test_z_matrix_of_zero_scalar_chain():
    chain = build_chain([0.0, 0.0])
    Z = z_matrix(chain)
    assert Z.shape == (2, 1)
    np.testing.assert_allclose(np.abs(Z[:, 0]), [0, 1], atol=1e-14)
    rep = check_k_regular(chain)
    assert rep.isometry_defect < 1e-14 and not rep.regular and rep.consistent


def test_corpus_chain_verdicts():
    kv, cd, par = corpus_chains()[:3]
    for chain, dims in ((kv, 5), (cd, 7), (par, 4)):
        rep = check_k_regular(chain)
        assert rep.dim_product == dims
        assert not rep.regular and rep.consistent
    assert not cascade_criterion(par)
    assert not intersection_criterion(kv)


def test_isometric_chain_is_regular():
    rng = np.random.default_rng(1)
    chain = build_chain([random_isometry(rng, 4, 2), random_unitary(rng, 4), random_isometry(rng, 5, 4)])
    assert check_k_regular(chain).regular


def test_intersection_examples():
    rng = np.random.default_rng(2)
    assert intersection_criterion(build_chain([random_unitary(rng, 2), random_unitary(rng, 2)]))
    assert not intersection_criterion(build_chain([0.0, 0.0]))


@pytest.mark.parametrize("seed", range(10))
def test_cascade_matches_verdict_on_two_chains(seed):
    rng = np.random.default_rng(seed)
    kind = ["generic", "partial", "mixed"][seed % 3]
    chain = build_chain([random_contraction(rng, 3, 3, kind=kind), random_contraction(rng, 2, 3, kind=kind)])
    assert cascade_criterion(chain) == check_k_regular(chain).regular


def test_criterion_equivalence(chain_population):
    regular = 0
    for chain in chain_population:
        rep = check_k_regular(chain)
        assert rep.consistent, rep.verdicts
        regular += rep.regular
    # the population exercises both verdicts
    assert 0 < regular < len(chain_population)


def test_z_is_isometric_on_random_vectors(chain_population):
    rng = np.random.default_rng(7)
    for chain in chain_population:
        Z = z_matrix(chain)
        pd = chain.product_defect
        n = chain.product.shape[1]
        H = rng.standard_normal((n, 200)) + 1j * rng.standard_normal((n, 200))
        coords = pd.coords(H)  # D_A h in the orthonormal basis of the defect space
        np.testing.assert_allclose(np.linalg.norm(Z @ coords, axis=0), np.linalg.norm(coords, axis=0),
                                   atol=1e-8)


def test_telescoping_identity():
    # ||D_A h||^2 = sum_i ||D_{A_i} A_{i-1}...A_1 h||^2, checked without Z
    rng = np.random.default_rng(11)
    for chain in random_chains(20, seed=5):
        h = rng.standard_normal(chain.product.shape[1])
        total = sum(np.linalg.norm(d.coords(P @ h)) ** 2 for d, P in zip(chain.defects, chain.partials))
        assert total == pytest.approx(np.linalg.norm(chain.product_defect.coords(h)) ** 2, abs=1e-8)


def test_partition_validation():
    with pytest.raises(InvalidPartition):
        Partition((3,)).validate(3)
    with pytest.raises(InvalidPartition):
        Partition((2, 2, 3)).validate(3)
    with pytest.raises(InvalidPartition):
        Partition((1, 2)).validate(3)
    assert Partition((1, 3)).blocks() == [(1,), (2, 3)]
    assert len(all_partitions(4)) == 7


def test_singleton_partition_is_the_chain_itself():
    chain = corpus_chains()[1]
    p = Partition((1, 2, 3))
    agg = aggregate(chain, p)
    for a, b in zip(agg.matrices, chain.matrices):
        np.testing.assert_array_equal(a, b)
    assert verify_partition_identity(chain, p) < 1e-14


def test_partition_identity_on_crabb_davie():
    assert verify_partition_identity(corpus_chains()[1], Partition((1, 3))) <= 1e-8


def test_partition_identity_on_random_three_chain():
    rng = np.random.default_rng(4)
    chain = build_chain([random_contraction(rng, 4, 4, kind="mixed") for _ in range(3)])
    for p in all_partitions(3):
        assert verify_partition_identity(chain, p) <= 1e-8


def test_partition_coherence():
    chains = corpus_chains() + random_chains(30, seed=99, max_size=4)
    for chain in chains:
        regular = check_k_regular(chain).regular
        for p in all_partitions(chain.k):
            agg_ok = check_k_regular(aggregate(chain, p)).regular
            blocks_ok = all(check_k_regular(c).regular for c in block_chains(chain, p))
            assert regular == (agg_ok and blocks_ok)


@pytest.mark.parametrize("seed", range(5))
def test_grouped_four_chain(seed):
    rng = np.random.default_rng(seed)
    kind = "partial" if seed % 2 else "mixed"
    chain = build_chain([random_contraction(rng, 3, 3, kind=kind) for _ in range(4)])
    p = Partition((2, 4))
    agg = aggregate(chain, p)
    assert agg.k == 2
    lower, upper = block_chains(chain, p)
    assert check_k_regular(chain).regular == (
        check_k_regular(agg).regular and check_k_regular(lower).regular and check_k_regular(upper).regular
    )


def test_adjoint_of_scalar_chain():
    adj = adjoint_chain(build_chain([0.3, 0.5, 0.7]))
    assert [m[0, 0].real for m in adj.matrices] == [0.7, 0.5, 0.3]


def test_adjoint_duality(chain_population):
    for chain in chain_population:
        if check_k_regular(chain, cross_check=False).regular:
            assert check_k_regular(adjoint_chain(chain)).regular


def test_adjoint_of_kaijser_varopoulos_is_recorded():
    rep = check_k_regular(adjoint_chain(corpus_chains()[0]))
    assert rep.consistent
    assert rep.dim_product == defect_space(corpus_chains()[0].product.matrix.conj().T).dim


@pytest.mark.parametrize("variant", ["isometric_tail", "coisometric_head"])
def test_isometric_factors_force_regularity(variant):
    from kregular.sampling import random_chain_factors

    rng = np.random.default_rng(17)
    for _ in range(50):
        chain = build_chain(random_chain_factors(rng, strategy=variant))
        assert check_k_regular(chain).regular


def test_unitary_product_regular_iff_factors_unitary():
    rng = np.random.default_rng(8)
    U = random_unitary(rng, 3)
    assert check_k_regular(build_chain([U, random_unitary(rng, 3)])).regular
    # product of a projection-like pair with unitary product is impossible, so
    # compare a unitary product of unitaries with a non-unitary splitting of I
    W = random_unitary(rng, 3)
    chain = build_chain([W, W.conj().T])
    assert operator_norm(chain.product.matrix - np.eye(3)) < 1e-12
    assert check_k_regular(chain).regular
    for _ in range(20):
        factors = [random_unitary(rng, 2) for _ in range(3)]
        assert check_k_regular(build_chain(factors)).regular
