"""Derivation spaces, invariant elements, inner means, and the decision procedures."""

import numpy as np
import pytest

from tpw.amenability import (
    commutation_residual,
    derivation_space,
    inner_amenability_suite,
    inner_derivation,
    is_character_amenable,
    is_character_inner_amenable,
    is_weakly_amenable,
    leibniz_residual,
    lift_derivation,
    solve_inner_mean,
    solve_tli,
    tli_product_characterization,
)
from tpw.corpus import hom_identity, hom_scaled_character, hom_zero
from tpw.errors import NotADerivation
from tpw.linalg import max_abs
from tpw.product import build_product

from conftest import TOL, random_element


def oracle_derivation_dims(alg):
    """Rank oracle built with explicit loops, independent of the solver path."""
    n = alg.dim
    c = alg.structure

    def f_dot_a(f, a):
        out = np.zeros(n, dtype=complex)
        for x in range(n):
            for i in range(n):
                for k in range(n):
                    out[x] += a[i] * c[i, x, k] * f[k]
        return out

    def a_dot_f(a, f):
        out = np.zeros(n, dtype=complex)
        for x in range(n):
            for j in range(n):
                for k in range(n):
                    out[x] += a[j] * c[x, j, k] * f[k]
        return out

    unit = lambda i: np.eye(n, dtype=complex)[:, i]
    rows = []
    for i in range(n):
        for j in range(n):
            for m in range(n):
                row = np.zeros((n, n), dtype=complex)
                for k in range(n):
                    row[m, k] += c[i, j, k]
                for p in range(n):
                    row[p, i] -= f_dot_a(unit(p), unit(j))[m]
                    row[p, j] -= a_dot_f(unit(i), unit(p))[m]
                rows.append(row.reshape(-1))
    system = np.array(rows)
    dim_der = n * n - np.linalg.matrix_rank(system, tol=1e-9)

    cols = []
    for p in range(n):
        adf = np.zeros((n, n), dtype=complex)
        for i in range(n):
            adf[:, i] = a_dot_f(unit(i), unit(p)) - f_dot_a(unit(p), unit(i))
        cols.append(adf.reshape(-1))
    dim_inner = np.linalg.matrix_rank(np.column_stack(cols), tol=1e-9)
    return int(dim_der), int(dim_inner)


@pytest.mark.parametrize(
    "fixture_name,expected",
    [
        ("alg_c", (0, 0)),
        ("alg_null1", (1, 0)),
        ("alg_m2", (3, 3)),
        ("alg_ut2", (1, 1)),
        ("alg_row2", (1, 1)),
    ],
)
def test_derivation_dims_against_oracle(request, fixture_name, expected):
    alg = request.getfixturevalue(fixture_name)
    assert oracle_derivation_dims(alg) == expected
    space = derivation_space(alg, TOL)
    assert (space.dim_der, space.dim_inner) == expected


def test_derivation_basis_satisfies_leibniz(corpus):
    for entry in corpus:
        for alg in (entry.algebra_a, entry.algebra_b):
            space = derivation_space(alg, TOL)
            for d in space.der_basis:
                assert leibniz_residual(alg, d) <= 10 * TOL
            for d in space.inner_basis:
                assert leibniz_residual(alg, d) <= 10 * TOL
            assert space.dim_inner <= space.dim_der


def test_every_ad_is_a_derivation(corpus, rng):
    for entry in corpus:
        alg = entry.algebra_a
        f = random_element(rng, alg.dim)
        assert leibniz_residual(alg, inner_derivation(alg, f)) <= 10 * TOL


def test_weak_amenability_decisions(alg_c, alg_m2, alg_null1):
    assert is_weakly_amenable(alg_c, TOL)
    assert is_weakly_amenable(alg_m2, TOL)
    assert not is_weakly_amenable(alg_null1, TOL)


def test_lift_zero_derivation(alg_c2):
    product = build_product(alg_c2, alg_c2, hom_zero(alg_c2, alg_c2), TOL)
    lifted = lift_derivation(np.zeros((2, 2)), "p1", product, TOL)
    assert max_abs(lifted) == 0.0


def test_lift_inner_derivation_zero_hom(alg_row2, alg_c):
    """With a zero hom, lifting ad_f gives ad of the embedded functional."""
    product = build_product(alg_row2, alg_c, hom_zero(alg_c, alg_row2), TOL)
    f = np.array([2.0, -1.5], dtype=complex)
    lifted = lift_derivation(inner_derivation(alg_row2, f), "p1", product, TOL)
    embedded = inner_derivation(product.algebra, np.r_[f, 0.0])
    np.testing.assert_allclose(lifted, embedded, atol=10 * TOL)


def test_lift_preserves_leibniz(corpus):
    for entry in corpus:
        product = build_product(entry.algebra_a, entry.algebra_b, entry.hom, TOL)
        for which, alg in (("p1", entry.algebra_a), ("p2", entry.algebra_b)):
            for d in derivation_space(alg, TOL).der_basis:
                lifted = lift_derivation(d, which, product, TOL)
                assert leibniz_residual(product.algebra, lifted) <= 10 * TOL


def test_lift_rejects_non_derivation(alg_c2):
    product = build_product(alg_c2, alg_c2, hom_zero(alg_c2, alg_c2), TOL)
    with pytest.raises(NotADerivation):
        lift_derivation(np.array([[1.0, 0.0], [0.0, 0.0]]), "p1", product, TOL)


def test_tli_c2_first_projection(alg_c2):
    sol = solve_tli(alg_c2, np.array([1.0, 0.0], dtype=complex), "left", TOL)
    assert sol.dim == 1
    assert sol.exists_nonvanishing
    got = sol.basis[:, 0] / sol.basis[0, 0]
    np.testing.assert_allclose(got, [1.0, 0.0], atol=10 * TOL)


def test_tli_row2_trivial(alg_row2):
    sol = solve_tli(alg_row2, np.array([1.0, 0.0], dtype=complex), "left", TOL)
    assert sol.dim == 0
    assert not sol.exists_nonvanishing


def test_tli_zero_solution_always_exists(alg_m2):
    # the zero functional is allowed; its solution space pairs to nothing
    sol = solve_tli(alg_m2, np.zeros(4), "left", TOL)
    assert not sol.exists_nonvanishing


def test_tli_characterization_pure_character_identity_hom(alg_c):
    """For A = B = C, T = id: solutions over (0, psi) are multiples of (-1, 1)."""
    product = build_product(alg_c, alg_c, hom_identity(alg_c), TOL)
    prod_sol = solve_tli(product.algebra, np.array([0.0, 1.0], dtype=complex), "left", TOL)
    assert prod_sol.dim == 1
    v = prod_sol.basis[:, 0]
    np.testing.assert_allclose(v / v[1], [-1.0, 1.0], atol=10 * TOL)

    report = tli_product_characterization(product, np.array([1.0 + 0j]), "pure", TOL, "left")
    assert report.all_pass


def test_tli_characterization_zero_hom(alg_c2, alg_c):
    product = build_product(alg_c2, alg_c, hom_zero(alg_c, alg_c2), TOL)
    # pure character: with T = 0 the solutions are (0, Psi)
    report = tli_product_characterization(product, np.array([1.0 + 0j]), "pure", TOL, "left")
    assert report.all_pass
    prod_sol = solve_tli(product.algebra, np.array([0.0, 0.0, 1.0], dtype=complex), "left", TOL)
    for k in range(prod_sol.dim):
        assert max_abs(prod_sol.basis[:2, k]) <= 10 * TOL
    # lifted character phi1: solutions are the embedded C2 ones
    report = tli_product_characterization(product, np.array([1.0, 0.0], dtype=complex), "lifted", TOL, "left")
    assert report.all_pass


def test_tli_characterization_corpus_wide(corpus):
    from tpw.characters import enumerate_characters

    for entry in corpus:
        product = build_product(entry.algebra_a, entry.algebra_b, entry.hom, TOL)
        for side in ("left", "right"):
            for ch in enumerate_characters(entry.algebra_a, TOL, 0).characters:
                assert tli_product_characterization(product, ch.functional, "lifted", TOL, side).all_pass
            for ch in enumerate_characters(entry.algebra_b, TOL, 0).characters:
                assert tli_product_characterization(product, ch.functional, "pure", TOL, side).all_pass


def test_character_amenability_m2(alg_m2):
    result = is_character_amenable(alg_m2, "left", TOL)
    assert result.verdict is True  # unital, empty character space


def test_character_amenability_row2_left_false(alg_row2):
    result = is_character_amenable(alg_row2, "left", TOL)
    assert result.verdict is False
    assert result.identity_exists  # left identity exists; the invariant element fails
    assert result.failing_character is not None


def test_character_amenability_null1_false(alg_null1):
    result = is_character_amenable(alg_null1, "left", TOL)
    assert result.verdict is False
    assert not result.identity_exists


def test_inner_mean_unital(alg_m2, alg_c2):
    # the identity is always a feasible mean for a character of a unital algebra
    phi = np.array([1.0, 0.0], dtype=complex)
    m = solve_inner_mean(alg_c2, phi, TOL)
    assert m is not None
    assert np.dot(m, phi) == pytest.approx(1.0)
    assert commutation_residual(alg_c2, m) <= 10 * TOL
    # minimal-norm witness for the first projection is (1, 0)
    np.testing.assert_allclose(m, [1.0, 0.0], atol=10 * TOL)


def test_inner_mean_row2_infeasible(alg_row2):
    assert solve_inner_mean(alg_row2, np.array([1.0, 0.0], dtype=complex), TOL) is None


def test_character_inner_amenability_decisions(alg_row2, alg_null1, alg_ut2):
    assert is_character_inner_amenable(alg_row2, TOL).verdict is False
    # no characters at all: vacuously inner amenable
    assert is_character_inner_amenable(alg_null1, TOL).verdict is True
    assert is_character_inner_amenable(alg_ut2, TOL).verdict is True


def test_inner_suite_identity_hom(alg_c):
    product = build_product(alg_c, alg_c, hom_identity(alg_c), TOL)
    report = inner_amenability_suite(product, TOL)
    assert report.all_pass
    claims = {v.claim: v.status for v in report.verdicts}
    # with an epi hom nothing is skipped for the first-factor character
    assert claims["inner/first-factor-character-0/witness-embedded-second-mean"] == "pass"


def test_inner_suite_explicit_witnesses_identity_hom(alg_c):
    """m = 1, n = 1 give the witnesses (1, 0) and (-1, 1) on the product."""
    product = build_product(alg_c, alg_c, hom_identity(alg_c), TOL)
    palg = product.algebra
    lifted_char = np.array([1.0, 1.0], dtype=complex)
    pure_char = np.array([0.0, 1.0], dtype=complex)
    m_embedded = np.array([1.0, 0.0], dtype=complex)
    graph = np.array([-1.0, 1.0], dtype=complex)
    assert np.dot(m_embedded, lifted_char) == pytest.approx(1.0)
    assert commutation_residual(palg, m_embedded) <= 10 * TOL
    assert np.dot(graph, pure_char) == pytest.approx(1.0)
    assert commutation_residual(palg, graph) <= 10 * TOL


def test_inner_suite_non_epi_branches_skipped(alg_c2, alg_c):
    hom = hom_scaled_character(alg_c, alg_c2, np.array([1.0 + 0j]), np.array([1.0, 1.0]))
    product = build_product(alg_c2, alg_c, hom, TOL)
    report = inner_amenability_suite(product, TOL)
    assert report.all_pass
    skipped = [v for v in report.verdicts if v.status == "skip"]
    assert any("not applicable: hom is not onto" in v.detail for v in skipped)


def test_inner_suite_row2_negative(alg_row2, alg_c):
    product = build_product(alg_row2, alg_c, hom_zero(alg_c, alg_row2), TOL)
    report = inner_amenability_suite(product, TOL)
    assert report.all_pass
    claims = {v.claim: v for v in report.verdicts}
    eq = claims["inner/first-factor-character-0/equivalence"]
    assert eq.status == "pass"  # both sides are False together
    final = claims["inner/character-inner-amenability-equivalence"]
    assert final.status == "pass"
    assert is_character_inner_amenable(product.algebra, TOL).verdict is False


def test_inner_suite_corpus_wide(corpus):
    for entry in corpus:
        product = build_product(entry.algebra_a, entry.algebra_b, entry.hom, TOL)
        report = inner_amenability_suite(product, TOL)
        assert report.all_pass, entry.entry_id
