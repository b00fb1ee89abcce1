"""Character verification, enumeration, and the product decomposition."""

import numpy as np
import pytest

from tpw.characters import (
    commutative_quotient,
    commutator_ideal,
    enumerate_characters,
    product_characters,
    verify_character,
)
from tpw.core import FiniteAlgebra
from tpw.corpus import algebra_cn, hom_identity, hom_zero
from tpw.errors import CharacterRejected
from tpw.linalg import max_abs
from tpw.product import AlgebraHom, build_product

from conftest import TOL


def oracle_cn_characters(n):
    """Solve lambda_i lambda_j = delta_ij lambda_i by hand: coordinate projections."""
    return [np.eye(n, dtype=complex)[:, i] for i in range(n)]


def zero_product_algebra(n):
    return FiniteAlgebra(
        name=f"zero{n}", basis_labels=tuple(f"z{i}" for i in range(n)), structure=np.zeros((n, n, n))
    )


def test_verify_accepts_projection(alg_c2):
    ch = verify_character(alg_c2, [1.0, 0.0], TOL)
    assert ch.residual <= TOL


def test_verify_rejects_sum_of_projections(alg_c2):
    # f(e1 e2) = 0 but f(e1) f(e2) = 1
    with pytest.raises(CharacterRejected) as info:
        verify_character(alg_c2, [1.0, 1.0], TOL)
    assert info.value.basis_pair in ((0, 1), (1, 0))


def test_verify_rejects_zero_product_functional(alg_null1):
    with pytest.raises(CharacterRejected):
        verify_character(alg_null1, [1.0], TOL)


def test_verify_rejects_zero_functional(alg_c2):
    with pytest.raises(CharacterRejected):
        verify_character(alg_c2, [0.0, 0.0], TOL)


def test_commutator_ideal_row2(alg_row2):
    # [E11, E12] = E12 generates span{E12}
    basis = commutator_ideal(alg_row2, TOL)
    assert basis.shape[1] == 1
    np.testing.assert_allclose(np.abs(basis[:, 0]), [0.0, 1.0], atol=TOL)


def test_commutator_ideal_m2_is_everything(alg_m2):
    assert commutator_ideal(alg_m2, TOL).shape[1] == 4
    assert commutative_quotient(alg_m2, TOL).quotient is None


def test_commutator_ideal_commutative_is_trivial(alg_c2, alg_z2):
    assert commutator_ideal(alg_c2, TOL).shape[1] == 0
    assert commutator_ideal(alg_z2, TOL).shape[1] == 0


@pytest.mark.parametrize("n", [2, 3])
def test_enumerate_pointwise(n):
    alg = algebra_cn(n)
    enum = enumerate_characters(alg, TOL, seed=0)
    assert enum.complete
    assert len(enum.characters) == n
    expected = oracle_cn_characters(n)
    for want in expected:
        assert any(max_abs(ch.functional - want) <= 10 * TOL for ch in enum.characters)


def test_enumerate_m2_empty(alg_m2):
    enum = enumerate_characters(alg_m2, TOL, seed=0)
    assert enum.complete
    assert len(enum.characters) == 0


def test_enumerate_row2(alg_row2):
    # mu^2 = 0, lam*mu = mu, lam^2 = lam force (lam, mu) = (1, 0)
    enum = enumerate_characters(alg_row2, TOL, seed=0)
    assert enum.complete
    assert len(enum.characters) == 1
    np.testing.assert_allclose(enum.characters[0].functional, [1.0, 0.0], atol=10 * TOL)


def test_enumerate_null1(alg_null1):
    enum = enumerate_characters(alg_null1, TOL, seed=0)
    assert enum.complete
    assert len(enum.characters) == 0


def test_enumerate_zero_product_dim2_incomplete():
    """All joint eigenspaces stay 2-dimensional, so the verdict is incomplete."""
    enum = enumerate_characters(zero_product_algebra(2), TOL, seed=0)
    assert not enum.complete
    assert len(enum.characters) == 0
    assert enum.notes


def test_enumerate_deterministic(alg_ut2):
    first = enumerate_characters(alg_ut2, TOL, seed=0)
    second = enumerate_characters(alg_ut2, TOL, seed=0)
    assert len(first.characters) == len(second.characters)
    for a, b in zip(first.characters, second.characters):
        assert max_abs(a.functional - b.functional) == 0.0


def test_enumerate_merges_declared_characters(alg_c2):
    declared = FiniteAlgebra(
        name="C2d",
        basis_labels=("e1", "e2"),
        structure=alg_c2.structure,
        declared_characters=(np.array([1.0 + 0j, 0.0]),),
    )
    enum = enumerate_characters(declared, TOL, seed=0)
    # the declared projection is already found; dedup keeps the count at 2
    assert len(enum.characters) == 2


def test_every_returned_character_verifies(corpus):
    for entry in corpus:
        for alg in (entry.algebra_a, entry.algebra_b):
            for ch in enumerate_characters(alg, TOL, seed=0).characters:
                assert ch.residual <= TOL
                assert max_abs(ch.functional) > TOL


def test_product_characters_identity_hom(alg_c):
    product = build_product(alg_c, alg_c, hom_identity(alg_c), TOL)
    pc = product_characters(product, TOL, seed=0)
    assert pc.complete
    assert pc.decomposition_ok
    assert len(pc.lifted) == 1 and len(pc.pure_b) == 1
    # (a, b) -> a + b and (a, b) -> b
    got = sorted(np.real(c.functional).tolist() for c in pc.lifted + pc.pure_b)
    assert got == [[0.0, 1.0], [1.0, 1.0]]


def test_product_characters_m2_factor(alg_m2, alg_c):
    # sigma(M2) is empty, so only the pure character survives, for any hom
    embed = np.zeros((4, 1))
    embed[0, 0] = 1.0  # 1 -> E11, an idempotent: a multiplicative hom C -> M2
    hom = AlgebraHom(source=alg_c, target=alg_m2, matrix=embed)
    product = build_product(alg_m2, alg_c, hom, TOL)
    pc = product_characters(product, TOL, seed=0)
    assert pc.decomposition_ok
    assert len(pc.lifted) == 0
    assert len(pc.pure_b) == 1


def test_product_characters_zero_hom(alg_c2, alg_c):
    product = build_product(alg_c2, alg_c, hom_zero(alg_c, alg_c2), TOL)
    pc = product_characters(product, TOL, seed=0)
    assert pc.decomposition_ok
    # lifted characters are (phi, phi o 0) = (phi, 0)
    for ch in pc.lifted:
        assert max_abs(ch.functional[2:]) <= TOL


def test_product_decomposition_corpus_wide(corpus):
    for entry in corpus:
        product = build_product(entry.algebra_a, entry.algebra_b, entry.hom, TOL)
        pc = product_characters(product, TOL, seed=0)
        assert pc.complete, entry.entry_id
        assert pc.decomposition_ok, entry.entry_id
        assert pc.disjoint, entry.entry_id


def test_pullback_lands_in_spectrum_or_zero(corpus):
    from tpw.characters import character_defect

    for entry in corpus:
        m = entry.hom.matrix
        for ch in enumerate_characters(entry.algebra_a, TOL, seed=0).characters:
            pullback = m.T @ ch.functional
            if max_abs(pullback) <= TOL:
                continue
            defect, _ = character_defect(entry.algebra_b, pullback)
            assert defect <= 10 * TOL
