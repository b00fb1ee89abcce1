"""Derivation spaces, invariant bidual elements, and the amenability decisions.

Three decision procedures live here, each the finite-dimensional reduction of
a Banach-algebra notion:

* weak amenability: every derivation into the dual module is inner, decided
  by comparing the dimensions of the derivation space and its inner subspace;
* character amenability: a one-sided identity (the finite-dimensional stand-in
  for a bounded one-sided approximate identity) plus, for every character, an
  invariant bidual element not annihilated by it;
* character inner amenability: for every character phi, a central element m
  with <m, phi> = 1 ("phi non-vanishing on the center").
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arens import arens_first
from .characters import CharacterEnumeration, enumerate_characters
from .core import FiniteAlgebra, LinearMap, center, find_left_identity, find_right_identity
from .errors import NotADerivation
from .linalg import column_space, max_abs, nullspace, orthonormalize, rank, subspaces_equal
from .product import MorphismProduct
from .report import CheckReport

BAI_CAVEAT = (
    "a bounded one-sided approximate identity reduces, in finite dimension, to an "
    "actual one-sided identity (any bounded net has a convergent subnet whose limit "
    "is one); the identity condition below is that reduction"
)
ZERO_CHARACTER_CAVEAT = (
    "for the zero functional the invariant-element condition is unsatisfiable and "
    "the notion reduces to the approximate-identity condition alone; the verdict "
    "treats it that way"
)
CENTER_REDUCTION_CAVEAT = (
    "an inner mean in finite dimension is a central element not annihilated by the "
    "character; feasibility is decided on the computed center"
)


@dataclass
class DerivationSpace:
    """Solutions of the Leibniz identity into the dual module, with the inner ones."""

    algebra: FiniteAlgebra
    der_basis: tuple[np.ndarray, ...]
    inner_basis: tuple[np.ndarray, ...]

    @property
    def dim_der(self) -> int:
        return len(self.der_basis)

    @property
    def dim_inner(self) -> int:
        return len(self.inner_basis)


def _leibniz_system(alg: FiniteAlgebra) -> np.ndarray:
    """Matrix of the Leibniz constraints on a map D: A -> A' (n^2 unknowns).

    Unknowns are D[m, k] (row-major), the m-th dual coordinate of D(e_k).
    Row (i, j, m) encodes the m-th coordinate of
    D(e_i e_j) - D(e_i).e_j - e_i.D(e_j) = 0.
    """
    n = alg.dim
    c = alg.structure
    eye = np.eye(n)
    # D(e_i e_j)_m = sum_k c[i,j,k] D[m,k]
    t1 = np.einsum("ijk,mq->ijmqk", c, eye)
    # (D(e_i).e_j)_m = (L_j^T D(:,i))_m = sum_q c[j,m,q] D[q,i]
    t2 = np.einsum("jmq,ik->ijmqk", c, eye)
    # (e_i.D(e_j))_m = (R_i^T D(:,j))_m = sum_q c[m,i,q] D[q,j]
    t3 = np.einsum("miq,jk->ijmqk", c, eye)
    return (t1 - t2 - t3).reshape(n * n * n, n * n)


def _inner_map(alg: FiniteAlgebra) -> np.ndarray:
    """Matrix of f -> ad_f (flattened), ad_f(a) = a.f - f.a."""
    c = alg.structure
    # column of ad_f at basis e_k: (R_k^T - L_k^T) f; entry (m, k, p)
    return (c - c.transpose(1, 0, 2)).reshape(-1, alg.dim)


def leibniz_residual(alg: FiniteAlgebra, d: np.ndarray) -> float:
    """Worst basis-pair violation of the Leibniz identity for D: A -> A'."""
    n = alg.dim
    d = np.asarray(d, dtype=complex).reshape(n, n)
    worst = 0.0
    for i in range(n):
        for j in range(n):
            lhs = d @ alg.structure[i, j, :]
            rhs = alg.left_mult_operator(alg.basis_vector(j)).T @ d[:, i]
            rhs = rhs + alg.right_mult_operator(alg.basis_vector(i)).T @ d[:, j]
            worst = max(worst, max_abs(lhs - rhs))
    return worst


def derivation_space(alg: FiniteAlgebra, tol: float) -> DerivationSpace:
    """Solve the stacked Leibniz system and the inner-derivation image.

    One linear system of n^3 equations in n^2 unknowns, ranks decided by the
    global singular-value cutoff; this avoids the conditioning problems of
    matching individual basis derivations.
    """
    n = alg.dim
    der_flat = nullspace(_leibniz_system(alg), tol, scale=max(1.0, max_abs(alg.structure)))
    inner_flat = column_space(_inner_map(alg), tol)
    der = tuple(der_flat[:, k].reshape(n, n) for k in range(der_flat.shape[1]))
    inner = tuple(inner_flat[:, k].reshape(n, n) for k in range(inner_flat.shape[1]))
    return DerivationSpace(algebra=alg, der_basis=der, inner_basis=inner)


def is_weakly_amenable(alg: FiniteAlgebra, tol: float) -> bool:
    """Every derivation into the dual is inner, as a rank equality."""
    space = derivation_space(alg, tol)
    return space.dim_der == space.dim_inner


def inner_derivation(alg: FiniteAlgebra, f) -> np.ndarray:
    """The matrix of ad_f : a -> a.f - f.a."""
    f = alg.coerce(f)
    return (_inner_map(alg) @ f).reshape(alg.dim, alg.dim)


def projection_maps(product: MorphismProduct) -> dict[str, LinearMap]:
    """The two multiplicative projections used to pull derivations back.

    p1(a, b) = a + T(b) onto the first factor and p2(a, b) = b onto the
    second; both are algebra homs of the product.
    """
    na, nb = product.dim_a, product.dim_b
    p1 = np.zeros((na, na + nb), dtype=complex)
    p1[:, :na] = np.eye(na)
    p1[:, na:] = product.hom.matrix
    p2 = np.zeros((nb, na + nb), dtype=complex)
    p2[:, na:] = np.eye(nb)
    return {
        "p1": LinearMap(source=product.algebra.name, target=product.a.name, matrix=p1),
        "p2": LinearMap(source=product.algebra.name, target=product.b.name, matrix=p2),
    }


def lift_derivation(d: np.ndarray, which: str, product: MorphismProduct, tol: float) -> np.ndarray:
    """Pull a factor derivation back to the product: D = P' o d o P.

    ``which`` selects p1 (a derivation of the first factor) or p2 (second
    factor).  Raises NotADerivation when the input fails the Leibniz identity
    on its own factor.
    """
    factor = product.a if which == "p1" else product.b
    d = np.asarray(d, dtype=complex).reshape(factor.dim, factor.dim)
    residual = leibniz_residual(factor, d)
    if residual > tol:
        raise NotADerivation(
            f"input map on {factor.name!r} violates the Leibniz identity (residual {residual:.3e})"
        )
    p = projection_maps(product)[which].matrix
    return p.T @ d @ p


@dataclass
class TliSolution:
    """Solution space of the invariant-element system for one character."""

    algebra: FiniteAlgebra
    phi: np.ndarray
    side: str
    basis: np.ndarray  # n x k orthonormal columns
    exists_nonvanishing: bool

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])


def solve_tli(alg: FiniteAlgebra, phi, side: str, tol: float) -> TliSolution:
    """Solve Phi [] a = phi(a) Phi (left) or a [] Phi = phi(a) Phi (right).

    ``phi`` may be a verified character or the zero functional.  The linear
    system is assembled through the first-Arens-product chain over the
    element basis.  ``exists_nonvanishing`` reports whether phi fails to
    annihilate the solution space (a rank test on the pairing row).
    """
    phi = alg.coerce(phi)
    n = alg.dim
    blocks = []
    for j in range(n):
        ej = alg.basis_vector(j)
        k = np.empty((n, n), dtype=complex)
        for i in range(n):
            probe = alg.basis_vector(i)
            if side == "left":
                k[:, i] = arens_first(alg, probe, ej) - phi[j] * probe
            else:
                k[:, i] = arens_first(alg, ej, probe) - phi[j] * probe
        blocks.append(k)
    scale = max(1.0, max_abs(alg.structure), max_abs(phi))
    basis = nullspace(np.vstack(blocks), tol, scale=scale)
    pairings = phi @ basis
    nonvanishing = bool(basis.shape[1] and max_abs(pairings) > tol * max(1.0, max_abs(phi)))
    return TliSolution(algebra=alg, phi=phi, side=side, basis=basis, exists_nonvanishing=nonvanishing)


def tli_product_characterization(
    product: MorphismProduct,
    factor_character,
    kind: str,
    tol: float,
    side: str = "left",
) -> CheckReport:
    """Verify the invariant-element characterization for one product character.

    For a character lifted from the first factor the invariant elements with
    nonzero pairing are exactly the embedded first-factor ones (second block
    zero); for a pure second-factor character they are exactly the graphs
    (-T''(Psi), Psi) over the second factor's invariant elements.  Both
    inclusions are checked at once as subspace equality, which is equivalent
    whenever the pairing does not vanish identically on either side; when it
    vanishes on both, the characterization is vacuous and the claim is
    skipped.
    """
    palg = product.algebra
    m = product.hom.matrix
    na = product.dim_a
    tag = "embedded-first-factor" if kind == "lifted" else "second-factor-graph"
    report = CheckReport(subject=f"invariant elements of {palg.name} ({kind}, {side})")

    if kind == "lifted":
        phi = product.a.coerce(factor_character)
        prod_char = np.concatenate([phi, m.T @ phi])
        factor_sol = solve_tli(product.a, phi, side, tol)
        claimed = np.zeros((palg.dim, factor_sol.dim), dtype=complex)
        claimed[:na, :] = factor_sol.basis
    else:
        psi = product.b.coerce(factor_character)
        prod_char = np.concatenate([np.zeros(na, dtype=complex), psi])
        factor_sol = solve_tli(product.b, psi, side, tol)
        claimed = np.vstack([-(m @ factor_sol.basis), factor_sol.basis])
    claimed = orthonormalize(claimed, tol) if claimed.size else claimed

    prod_sol = solve_tli(palg, prod_char, side, tol)
    nv_prod = prod_sol.exists_nonvanishing
    nv_factor = factor_sol.exists_nonvanishing

    report.add(
        f"tli/{side}/{tag}/nonvanishing-agreement",
        nv_prod == nv_factor,
        witness=None if nv_prod == nv_factor else {"product": nv_prod, "factor": nv_factor},
        detail="an invariant element with nonzero pairing exists on one level iff on the other",
    )
    if nv_prod or nv_factor:
        equal, residual = subspaces_equal(prod_sol.basis, claimed, 100 * tol)
        report.add(
            f"tli/{side}/{tag}/solution-space-equality",
            equal,
            residual=residual,
            witness=None if equal else {
                "product_dim": prod_sol.dim,
                "claimed_dim": int(claimed.shape[1]),
            },
            detail="product-level solutions coincide with the characterized family",
        )
    else:
        report.skip(
            f"tli/{side}/{tag}/solution-space-equality",
            detail="pairing vanishes on both solution spaces; the characterization is vacuous here",
        )
    return report


@dataclass
class CharacterAmenability:
    """Decision (True / False / None=unknown) with its supporting evidence."""

    algebra: FiniteAlgebra
    side: str
    verdict: bool | None
    identity_exists: bool
    enumeration: CharacterEnumeration
    failing_character: np.ndarray | None
    caveats: tuple[str, ...]


def is_character_amenable(alg: FiniteAlgebra, side: str, tol: float, seed: int = 0) -> CharacterAmenability:
    """One-sided identity plus a nonvanishing invariant element per character.

    When enumeration is incomplete the verdict degrades to None unless some
    verified character already fails, which refutes soundly.
    """
    enum = enumerate_characters(alg, tol, seed)
    ident = find_left_identity(alg, tol) if side == "left" else find_right_identity(alg, tol)
    caveats = (BAI_CAVEAT, ZERO_CHARACTER_CAVEAT)
    if ident is None:
        return CharacterAmenability(alg, side, False, False, enum, None, caveats)
    failing = None
    for ch in enum.characters:
        if not solve_tli(alg, ch.functional, side, tol).exists_nonvanishing:
            failing = ch.functional
            break
    if failing is not None:
        return CharacterAmenability(alg, side, False, True, enum, failing, caveats)
    if not enum.complete:
        return CharacterAmenability(alg, side, None, True, enum, None, caveats)
    return CharacterAmenability(alg, side, True, True, enum, None, caveats)


def commutation_residual(alg: FiniteAlgebra, m) -> float:
    """Worst deviation of m [] a from a [] m over the element basis."""
    m = alg.coerce(m)
    worst = 0.0
    for j in range(alg.dim):
        ej = alg.basis_vector(j)
        worst = max(worst, max_abs(arens_first(alg, m, ej) - arens_first(alg, ej, m)))
    return worst


def solve_inner_mean(alg: FiniteAlgebra, phi, tol: float) -> np.ndarray | None:
    """Minimal-norm central m with <m, phi> = 1, or None when infeasible."""
    phi = alg.coerce(phi)
    basis = center(alg, tol)
    if basis.shape[1] == 0:
        return None
    pair_row = phi @ basis
    if max_abs(pair_row) <= tol * max(1.0, max_abs(phi)):
        return None
    coeffs = pair_row.conj() / np.real(pair_row @ pair_row.conj())
    return basis @ coeffs


@dataclass
class CharacterInnerAmenability:
    algebra: FiniteAlgebra
    verdict: bool | None
    enumeration: CharacterEnumeration
    means: tuple[np.ndarray | None, ...]
    failing_character: np.ndarray | None
    caveats: tuple[str, ...]


def is_character_inner_amenable(alg: FiniteAlgebra, tol: float, seed: int = 0) -> CharacterInnerAmenability:
    """An inner mean for every character; unknown when enumeration is incomplete."""
    enum = enumerate_characters(alg, tol, seed)
    means = []
    failing = None
    for ch in enum.characters:
        m = solve_inner_mean(alg, ch.functional, tol)
        means.append(m)
        if m is None and failing is None:
            failing = ch.functional
    if failing is not None:
        verdict: bool | None = False
    elif not enum.complete:
        verdict = None
    else:
        verdict = True
    return CharacterInnerAmenability(
        algebra=alg,
        verdict=verdict,
        enumeration=enum,
        means=tuple(means),
        failing_character=failing,
        caveats=(CENTER_REDUCTION_CAVEAT,),
    )


def _mean_witness_checks(report: CheckReport, claim: str, alg: FiniteAlgebra, mean, char, tol: float):
    """Record pairing-equals-one and commutation residuals for a mean witness."""
    pairing = complex(np.dot(alg.coerce(mean), alg.coerce(char)))
    comm = commutation_residual(alg, mean)
    ok = abs(pairing - 1.0) <= 10 * tol and comm <= 10 * tol
    report.add(
        claim,
        ok,
        residual=max(abs(pairing - 1.0), comm),
        witness=None if ok else {"pairing": pairing, "commutation_residual": comm, "mean": mean},
        detail="mean pairs to 1 with the character and commutes with every element",
    )


def inner_amenability_suite(product: MorphismProduct, tol: float, seed: int = 0) -> CheckReport:
    """Verify the inner-mean transfer claims between the product and its factors.

    Per first-factor character phi (with its lift (phi, phi o T)):
      [a] the factor and the product are inner amenable together;
      [b] the explicit witnesses (m, 0) and m + T''(n) are means;
      [c] a product mean whose second block does not annihilate phi o T
          normalizes to a second-factor mean;
      [d] for onto homs, a second-factor mean embeds as (0, n).
    Per second-factor character psi (with its lift (0, psi)):
      [e] the product and the second factor are inner amenable together, with
          witnesses (-T''(n), n) and the mean's second block.
    Finally [f]: the product is character inner amenable iff both factors are.
    """
    palg = product.algebra
    m_hom = product.hom.matrix
    a_alg, b_alg = product.a, product.b
    report = CheckReport(subject=f"inner amenability transfer for {palg.name}")
    report.caveat(CENTER_REDUCTION_CAVEAT)
    report.caveat(BAI_CAVEAT)

    sigma_a = enumerate_characters(a_alg, tol, seed)
    sigma_b = enumerate_characters(b_alg, tol, seed)
    epi = rank(m_hom, tol) == a_alg.dim

    for idx, ch in enumerate(sigma_a.characters):
        phi = ch.functional
        phi_t = m_hom.T @ phi
        lifted = np.concatenate([phi, phi_t])
        label = f"inner/first-factor-character-{idx}"
        a_mean = solve_inner_mean(a_alg, phi, tol)
        p_mean = solve_inner_mean(palg, lifted, tol)

        report.add(
            f"{label}/equivalence",
            (a_mean is not None) == (p_mean is not None),
            witness=None if (a_mean is not None) == (p_mean is not None) else {
                "factor_amenable": a_mean is not None,
                "product_amenable": p_mean is not None,
            },
            detail="the factor has a mean for phi iff the product has one for the lifted character",
        )
        if a_mean is not None:
            _mean_witness_checks(
                report, f"{label}/witness-embedded-factor-mean", palg,
                np.concatenate([a_mean, np.zeros(product.dim_b)]), lifted, tol,
            )
        else:
            report.skip(f"{label}/witness-embedded-factor-mean", detail="factor has no mean to embed")
        if p_mean is not None:
            m_blk, n_blk = product.split(p_mean)
            _mean_witness_checks(
                report, f"{label}/witness-combined-blocks", a_alg, m_blk + m_hom @ n_blk, phi, tol,
            )
            n_pair = complex(np.dot(n_blk, phi_t))
            if abs(n_pair) > tol * max(1.0, max_abs(phi_t)):
                _mean_witness_checks(
                    report, f"{label}/witness-normalized-second-block", b_alg, n_blk / n_pair, phi_t, tol,
                )
            else:
                report.skip(
                    f"{label}/witness-normalized-second-block",
                    detail="second block annihilates the pulled-back character; claim not applicable",
                )
        else:
            report.skip(f"{label}/witness-combined-blocks", detail="product has no mean to split")
            report.skip(f"{label}/witness-normalized-second-block", detail="product has no mean to split")
        if epi:
            b_mean = solve_inner_mean(b_alg, phi_t, tol)
            if b_mean is not None:
                _mean_witness_checks(
                    report, f"{label}/witness-embedded-second-mean", palg,
                    np.concatenate([np.zeros(product.dim_a), b_mean]), lifted, tol,
                )
            else:
                report.skip(
                    f"{label}/witness-embedded-second-mean",
                    detail="second factor has no mean for the pulled-back character",
                )
        else:
            report.skip(f"{label}/witness-embedded-second-mean", detail="not applicable: hom is not onto")

    for idx, ch in enumerate(sigma_b.characters):
        psi = ch.functional
        pure = np.concatenate([np.zeros(product.dim_a), psi])
        label = f"inner/second-factor-character-{idx}"
        b_mean = solve_inner_mean(b_alg, psi, tol)
        p_mean = solve_inner_mean(palg, pure, tol)

        report.add(
            f"{label}/equivalence",
            (b_mean is not None) == (p_mean is not None),
            witness=None if (b_mean is not None) == (p_mean is not None) else {
                "factor_amenable": b_mean is not None,
                "product_amenable": p_mean is not None,
            },
            detail="the product has a mean for (0, psi) iff the second factor has one for psi",
        )
        if b_mean is not None:
            _mean_witness_checks(
                report, f"{label}/witness-graph-embedding", palg,
                np.concatenate([-(m_hom @ b_mean), b_mean]), pure, tol,
            )
        else:
            report.skip(f"{label}/witness-graph-embedding", detail="second factor has no mean to embed")
        if p_mean is not None:
            _, n_blk = product.split(p_mean)
            _mean_witness_checks(report, f"{label}/witness-second-block", b_alg, n_blk, psi, tol)
        else:
            report.skip(f"{label}/witness-second-block", detail="product has no mean to split")

    cia_a = is_character_inner_amenable(a_alg, tol, seed)
    cia_b = is_character_inner_amenable(b_alg, tol, seed)
    cia_p = is_character_inner_amenable(palg, tol, seed)
    if None in (cia_a.verdict, cia_b.verdict, cia_p.verdict):
        report.add("inner/character-inner-amenability-equivalence", None,
                   detail="some character enumeration is incomplete")
    else:
        ok = cia_p.verdict == (cia_a.verdict and cia_b.verdict)
        report.add(
            "inner/character-inner-amenability-equivalence",
            ok,
            witness=None if ok else {
                "product": cia_p.verdict, "first_factor": cia_a.verdict, "second_factor": cia_b.verdict,
            },
            detail="the product is character inner amenable iff both factors are",
        )
    if not (sigma_a.complete and sigma_b.complete):
        report.caveat("a factor character enumeration is incomplete; per-character claims cover only verified characters")
    return report
