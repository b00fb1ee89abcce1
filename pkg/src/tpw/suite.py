"""The executable theorem suite for a triple (A, B, T).

Each group of claims verifies one structural statement about the morphism
product at desk scale: construction facts, the bidual identification with
both Arens products, adjoint plumbing, topological-center transfer, the
character-space decomposition, and the amenability transfer theorems.
Claims are assembled in claim-id order; reports are deterministic for fixed
inputs, tolerance, and seed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .amenability import (
    BAI_CAVEAT,
    ZERO_CHARACTER_CAVEAT,
    derivation_space,
    inner_amenability_suite,
    is_character_amenable,
    is_weakly_amenable,
    leibniz_residual,
    lift_derivation,
    tli_product_characterization,
)
from .arens import (
    FINITE_DIM_CAVEAT,
    arens_first,
    arens_second,
    hom_adjoints,
    product_dual_actions,
    theta_homomorphism_residual,
    topological_center,
)
from .characters import character_defect, product_characters
from .core import FiniteAlgebra
from .errors import ValidationError
from .linalg import max_abs, rank, subspace_contains, subspaces_equal
from .product import AlgebraHom, MorphismProduct, build_product, check_hom, ideal_and_quotient
from .report import CheckReport


@dataclass(frozen=True)
class RunConfig:
    """Run parameters shared by the CLI and the suite."""

    tol: float = 1e-9
    seed: int = 0
    side: str = "both"
    format: str = "text"

    def __post_init__(self):
        if not self.tol > 0:
            raise ValidationError(f"tolerance must be positive, got {self.tol}")
        if self.side not in ("left", "right", "both"):
            raise ValidationError(f"side must be left, right, or both, got {self.side!r}")
        if self.format not in ("json", "text"):
            raise ValidationError(f"format must be json or text, got {self.format!r}")

    @property
    def sides(self) -> tuple[str, ...]:
        return ("left", "right") if self.side == "both" else (self.side,)


def _merge_prefixed(report: CheckReport, sub: CheckReport, prefix: str):
    for v in sub.verdicts:
        report.verdicts.append(replace(v, claim=prefix + v.claim))
    for c in sub.caveats:
        report.caveat(c)


def _check_construction(report: CheckReport, product: MorphismProduct, tol: float):
    hom = product.hom
    hom_report = check_hom(hom, tol)
    report.add(
        "01-construction/hom-multiplicative",
        hom_report.multiplicative,
        residual=hom.mult_residual,
        witness=None if hom_report.multiplicative else {"residual": hom.mult_residual},
    )
    for w in hom_report.warnings:
        report.caveat(w)

    residual = product.algebra.associativity_residual()
    report.add(
        "01-construction/product-associative",
        residual <= 10 * tol,
        residual=residual,
        witness=None if residual <= 10 * tol else {"residual": residual},
    )

    iq = ideal_and_quotient(product, tol)
    report.add(
        "01-construction/first-block-ideal",
        iq.ideal_ok,
        residual=iq.ideal_residual,
        detail="products against the first block never leak into the second block",
    )
    report.add(
        "01-construction/quotient-recovers-second-factor",
        iq.quotient_iso_ok,
        residual=iq.quotient_residual,
        detail="the block projection induces an algebra isomorphism onto the second factor",
    )

    palg = product.algebra
    worst = 0.0
    for i in range(product.dim_a):
        for j in range(product.dim_a):
            ei, ej = product.a.basis_vector(i), product.a.basis_vector(j)
            lhs = palg.multiply(product.embed_a(ei), product.embed_a(ej))
            worst = max(worst, max_abs(lhs - product.embed_a(product.a.multiply(ei, ej))))
    report.add(
        "01-construction/first-factor-embedding-multiplicative",
        worst <= 10 * tol,
        residual=worst,
        detail="a -> (a, 0) is an algebra monomorphism",
    )


def _check_bidual_identification(report: CheckReport, product: MorphismProduct, tol: float, seed: int):
    palg = product.algebra
    n = palg.dim
    # Theta in coordinates is the block concatenation; bijectivity is a rank fact
    report.add("02-bidual-identification/pairing-bijective", rank(np.eye(n), tol) == n)

    for which in ("first", "second"):
        residual = theta_homomorphism_residual(product, which)
        report.add(
            f"02-bidual-identification/product-{which}-arens",
            residual <= 10 * tol,
            residual=residual,
            detail="block bidual product formula matches the product algebra's Arens product",
        )

    worst = 0.0
    for i in range(n):
        fi = palg.basis_vector(i)
        fa, fb = product.split(fi)
        for j in range(n):
            xj = palg.basis_vector(j)
            xa, xb = product.split(xj)
            acts = product_dual_actions(product, fa, fb, xa, xb)
            worst = max(worst, acts.agreement_residual)
    report.add(
        "02-bidual-identification/dual-action-block-formulas",
        worst <= 10 * tol,
        residual=worst,
        detail="factor-level dual action formulas agree with the direct product computation",
    )

    rng = np.random.default_rng(seed)
    worst = 0.0
    for alg in (product.a, product.b, palg):
        for _ in range(100):
            x = rng.standard_normal(alg.dim) + 1j * rng.standard_normal(alg.dim)
            y = rng.standard_normal(alg.dim) + 1j * rng.standard_normal(alg.dim)
            direct = alg.multiply(x, y)
            worst = max(worst, max_abs(arens_first(alg, x, y) - direct))
            worst = max(worst, max_abs(arens_second(alg, x, y) - direct))
    report.add(
        "02-bidual-identification/arens-equals-multiplication",
        worst <= tol,
        residual=worst,
        detail="both Arens chains reproduce the multiplication under the canonical identification",
    )


def _check_adjoints(report: CheckReport, product: MorphismProduct, tol: float):
    adj = hom_adjoints(product.hom, tol)
    report.add(
        "03-adjoints/embedded-elements-agree",
        adj.embedding_residual <= 1e-12,
        residual=adj.embedding_residual,
        detail="the second adjoint restricted to embedded elements is the original map",
    )
    report.add(
        "03-adjoints/second-adjoint-multiplicative-first-arens",
        adj.mult_residual_first <= 10 * tol,
        residual=adj.mult_residual_first,
    )
    report.add(
        "03-adjoints/second-adjoint-multiplicative-second-arens",
        adj.mult_residual_second <= 10 * tol,
        residual=adj.mult_residual_second,
    )
    if adj.source_epi:
        report.add(
            "03-adjoints/surjectivity-passes-to-second-adjoint",
            adj.second_epi,
            witness=None if adj.second_epi else {"source_epi": True, "second_epi": False},
        )
    else:
        report.skip("03-adjoints/surjectivity-passes-to-second-adjoint", detail="not applicable: hom is not onto")


def _check_topological_centers(report: CheckReport, product: MorphismProduct, tol: float, sides: tuple[str, ...]):
    report.caveat(FINITE_DIM_CAVEAT)
    palg = product.algebra
    m = product.hom.matrix
    na = product.dim_a
    epi = rank(m, tol) == product.a.dim
    for side in sides:
        z_prod = topological_center(palg, side, tol)
        z_a = topological_center(product.a, side, tol)
        z_b = topological_center(product.b, side, tol)
        pair_basis = np.zeros((palg.dim, z_a.shape[1] + z_b.shape[1]), dtype=complex)
        pair_basis[:na, : z_a.shape[1]] = z_a
        pair_basis[na:, z_a.shape[1] :] = z_b

        shifted_fwd = z_prod.copy()
        shifted_fwd[:na, :] = z_prod[:na, :] + m @ z_prod[na:, :]
        ok_fwd, res_fwd = subspace_contains(pair_basis, shifted_fwd, 10 * tol)
        report.add(
            f"04-topological-centers/{side}/shift-into-factor-centers",
            ok_fwd,
            residual=res_fwd,
            detail="center members shifted by the second adjoint land in the factor centers",
        )

        shifted_bwd = pair_basis.copy()
        shifted_bwd[:na, :] = pair_basis[:na, :] - m @ pair_basis[na:, :]
        ok_bwd, res_bwd = subspace_contains(z_prod, shifted_bwd, 10 * tol)
        report.add(
            f"04-topological-centers/{side}/shift-from-factor-centers",
            ok_bwd,
            residual=res_bwd,
            detail="factor-center pairs shifted back land in the product center",
        )

        if epi:
            equal, res_eq = subspaces_equal(z_prod, pair_basis, 10 * tol)
            report.add(
                f"04-topological-centers/{side}/product-center-equals-factor-centers",
                equal,
                residual=res_eq,
                witness=None if equal else {
                    "product_center_dim": int(z_prod.shape[1]),
                    "factor_centers_dim": int(pair_basis.shape[1]),
                },
            )
        else:
            report.skip(
                f"04-topological-centers/{side}/product-center-equals-factor-centers",
                detail="not applicable: hom is not onto",
            )


def _check_characters(report: CheckReport, product: MorphismProduct, tol: float, seed: int):
    pc = product_characters(product, tol, seed)
    report.add(
        "05-characters/lifted-family-verified",
        all(ch.residual <= tol for ch in pc.lifted),
        residual=max((ch.residual for ch in pc.lifted), default=0.0),
        detail=f"{len(pc.lifted)} characters lifted from the first factor",
    )
    report.add(
        "05-characters/pure-family-verified",
        all(ch.residual <= tol for ch in pc.pure_b),
        residual=max((ch.residual for ch in pc.pure_b), default=0.0),
        detail=f"{len(pc.pure_b)} characters supported on the second factor",
    )
    report.add(
        "05-characters/families-disjoint",
        pc.disjoint,
        witness=None if pc.disjoint else {"overlap": True},
    )
    if pc.decomposition_ok is None:
        report.add(
            "05-characters/decomposition-exhaustive",
            None,
            detail="a character enumeration is incomplete; exhaustiveness is unknown",
        )
    else:
        report.add(
            "05-characters/decomposition-exhaustive",
            pc.decomposition_ok,
            witness=None if pc.decomposition_ok else {"mismatching_functional": pc.mismatch},
            detail=f"enumeration found {len(pc.enumerated.characters)} characters",
        )

    worst = 0.0
    for ch in pc.sigma_a.characters:
        pullback = product.hom.matrix.T @ ch.functional
        if max_abs(pullback) > tol:
            worst = max(worst, character_defect(product.b, pullback)[0])
    report.add(
        "05-characters/pullbacks-multiplicative",
        worst <= 10 * tol,
        residual=worst,
        detail="every first-factor character pulls back to a character of the second factor or to zero",
    )
    return pc


def _check_weak_amenability(report: CheckReport, product: MorphismProduct, tol: float):
    ds_a = derivation_space(product.a, tol)
    ds_b = derivation_space(product.b, tol)
    ds_p = derivation_space(product.algebra, tol)
    wa_a = ds_a.dim_der == ds_a.dim_inner
    wa_b = ds_b.dim_der == ds_b.dim_inner
    wa_p = ds_p.dim_der == ds_p.dim_inner
    ok = wa_p == (wa_a and wa_b)
    report.add(
        "06-weak-amenability/equivalence",
        ok,
        witness=None if ok else {
            "first_factor": {"dim_der": ds_a.dim_der, "dim_inner": ds_a.dim_inner},
            "second_factor": {"dim_der": ds_b.dim_der, "dim_inner": ds_b.dim_inner},
            "product": {"dim_der": ds_p.dim_der, "dim_inner": ds_p.dim_inner},
        },
        detail=(
            f"product {ds_p.dim_der}/{ds_p.dim_inner}, "
            f"factors {ds_a.dim_der}/{ds_a.dim_inner} and {ds_b.dim_der}/{ds_b.dim_inner} (der/inner)"
        ),
    )

    for which, space in (("p1", ds_a), ("p2", ds_b)):
        if not space.der_basis:
            report.add(f"06-weak-amenability/derivation-lift-{which}", True, residual=0.0,
                       detail="no nonzero derivations to lift")
            continue
        worst = 0.0
        for d in space.der_basis:
            lifted = lift_derivation(d, which, product, tol)
            worst = max(worst, leibniz_residual(product.algebra, lifted))
        report.add(
            f"06-weak-amenability/derivation-lift-{which}",
            worst <= 10 * tol,
            residual=worst,
            detail="pulled-back factor derivations satisfy the Leibniz identity on the product",
        )


def _check_tli(report: CheckReport, product: MorphismProduct, pc, tol: float, sides: tuple[str, ...]):
    if not (pc.sigma_a.complete and pc.sigma_b.complete):
        report.add(
            "07-invariant-elements/character-coverage",
            None,
            detail="factor character enumeration incomplete; characterization checked on verified characters only",
        )
    for idx, ch in enumerate(pc.sigma_a.characters):
        for side in sides:
            sub = tli_product_characterization(product, ch.functional, "lifted", tol, side)
            _merge_prefixed(report, sub, f"07-invariant-elements/first-factor-{idx}/")
    for idx, ch in enumerate(pc.sigma_b.characters):
        for side in sides:
            sub = tli_product_characterization(product, ch.functional, "pure", tol, side)
            _merge_prefixed(report, sub, f"07-invariant-elements/second-factor-{idx}/")


def _check_character_amenability(report: CheckReport, product: MorphismProduct, tol: float,
                                 seed: int, sides: tuple[str, ...]):
    report.caveat(BAI_CAVEAT)
    report.caveat(ZERO_CHARACTER_CAVEAT)
    for side in sides:
        ca_a = is_character_amenable(product.a, side, tol, seed)
        ca_b = is_character_amenable(product.b, side, tol, seed)
        ca_p = is_character_amenable(product.algebra, side, tol, seed)
        if None in (ca_a.verdict, ca_b.verdict, ca_p.verdict):
            report.add(
                f"08-character-amenability/{side}/equivalence",
                None,
                detail="a character enumeration is incomplete; equivalence undecidable",
            )
            continue
        ok = ca_p.verdict == (ca_a.verdict and ca_b.verdict)
        report.add(
            f"08-character-amenability/{side}/equivalence",
            ok,
            witness=None if ok else {
                "product": ca_p.verdict,
                "first_factor": ca_a.verdict,
                "second_factor": ca_b.verdict,
            },
            detail=(
                f"product={ca_p.verdict}, factors=({ca_a.verdict}, {ca_b.verdict})"
            ),
        )


def verify_theorems(algebra_a: FiniteAlgebra, algebra_b: FiniteAlgebra, hom: AlgebraHom,
                    config: RunConfig) -> CheckReport:
    """Run the full structural suite on one (A, B, T) triple."""
    product = build_product(algebra_a, algebra_b, hom, config.tol)
    report = CheckReport(subject=product.algebra.name)
    _check_construction(report, product, config.tol)
    _check_bidual_identification(report, product, config.tol, config.seed)
    _check_adjoints(report, product, config.tol)
    _check_topological_centers(report, product, config.tol, config.sides)
    pc = _check_characters(report, product, config.tol, config.seed)
    _check_weak_amenability(report, product, config.tol)
    _check_tli(report, product, pc, config.tol, config.sides)
    _check_character_amenability(report, product, config.tol, config.seed, config.sides)
    _merge_prefixed(report, inner_amenability_suite(product, config.tol, config.seed), "09-")
    return report
