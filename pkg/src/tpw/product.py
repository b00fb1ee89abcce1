"""Morphism products: the block algebra built from a pair (A, B) and a hom T: B -> A.

The product carries the multiplication

    (a1, b1) (a2, b2) = (a1 a2 + a1 T(b2) + T(b1) a2,  b1 b2)

on A + B coordinates (A-block first), with the summed l1 norm.  The A-block
is a two-sided ideal and the quotient by it recovers B.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import FiniteAlgebra, LinearMap
from .errors import HomInvalid, ShapeError, ValidationError
from .linalg import as_complex, max_abs, rank


@dataclass(frozen=True)
class AlgebraHom:
    """A linear map between algebras with its multiplicativity certificate.

    ``matrix`` maps source coordinates to target coordinates.  The
    multiplicativity residual and the l1-induced operator norm are computed
    once at construction; an operator norm above 1 is a warning, not an
    error, because nothing checked downstream depends on contractivity.
    """

    source: FiniteAlgebra
    target: FiniteAlgebra
    matrix: np.ndarray
    mult_residual: float = field(init=False)
    op_norm: float = field(init=False)

    def __post_init__(self):
        m = as_complex(self.matrix)
        expected = (self.target.dim, self.source.dim)
        if m.shape != expected:
            raise ShapeError(f"hom matrix has shape {m.shape}, expected {expected}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "mult_residual", self._mult_residual())
        object.__setattr__(self, "op_norm", self._op_norm())

    def _mult_residual(self) -> float:
        ca, cb, m = self.target.structure, self.source.structure, self.matrix
        t_of_products = np.einsum("km,ijm->ijk", m, cb)
        products_of_t = np.einsum("pi,qj,pqk->ijk", m, m, ca)
        return max_abs(t_of_products - products_of_t)

    def _op_norm(self) -> float:
        wa, wb = self.target.norm_weights, self.source.norm_weights
        column_norms = wa @ np.abs(self.matrix)
        return float(np.max(column_norms / wb))

    def apply(self, b) -> np.ndarray:
        return self.matrix @ self.source.coerce(b)

    def __repr__(self):
        return f"AlgebraHom({self.source.name!r} -> {self.target.name!r})"


@dataclass
class HomValidationReport:
    source: str
    target: str
    mult_residual: float
    op_norm: float
    multiplicative: bool
    surjective: bool
    injective: bool
    norm_rejected: bool = False
    warnings: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.multiplicative and not self.norm_rejected


def check_hom(hom: AlgebraHom, tol: float, strict_norm: bool = False) -> HomValidationReport:
    """Report multiplicativity, operator norm, and rank facts for a hom.

    An operator norm above 1 warns by default; with ``strict_norm`` it fails
    the report instead.
    """
    r = rank(hom.matrix, tol)
    not_contractive = hom.op_norm > 1 + tol
    warnings = []
    if not_contractive:
        warnings.append(f"operator norm {hom.op_norm:.6g} exceeds 1; the map is not contractive")
    return HomValidationReport(
        source=hom.source.name,
        target=hom.target.name,
        mult_residual=hom.mult_residual,
        op_norm=hom.op_norm,
        multiplicative=hom.mult_residual <= tol,
        surjective=(r == hom.target.dim),
        injective=(r == hom.source.dim),
        norm_rejected=strict_norm and not_contractive,
        warnings=warnings,
    )


@dataclass(frozen=True)
class MorphismProduct:
    """The block product algebra of (A, B, T), A-coordinates first."""

    a: FiniteAlgebra
    b: FiniteAlgebra
    hom: AlgebraHom
    algebra: FiniteAlgebra

    @property
    def dim_a(self) -> int:
        return self.a.dim

    @property
    def dim_b(self) -> int:
        return self.b.dim

    def embed_a(self, x) -> np.ndarray:
        v = np.zeros(self.algebra.dim, dtype=complex)
        v[: self.dim_a] = self.a.coerce(x)
        return v

    def embed_b(self, y) -> np.ndarray:
        v = np.zeros(self.algebra.dim, dtype=complex)
        v[self.dim_a :] = self.b.coerce(y)
        return v

    def join(self, x, y) -> np.ndarray:
        return np.concatenate([self.a.coerce(x), self.b.coerce(y)])

    def split(self, v) -> tuple[np.ndarray, np.ndarray]:
        v = self.algebra.coerce(v)
        return v[: self.dim_a].copy(), v[self.dim_a :].copy()


def build_product(a: FiniteAlgebra, b: FiniteAlgebra, hom: AlgebraHom, tol: float) -> MorphismProduct:
    """Construct the product algebra; the hom must pass check_hom at tol."""
    if hom.target is not a and hom.target.name != a.name:
        raise HomInvalid(f"hom targets {hom.target.name!r}, not {a.name!r}")
    if hom.source is not b and hom.source.name != b.name:
        raise HomInvalid(f"hom sources {hom.source.name!r}, not {b.name!r}")
    report = check_hom(hom, tol)
    if not report.valid:
        raise HomInvalid(
            f"hom {b.name!r} -> {a.name!r} fails multiplicativity (residual {hom.mult_residual:.3e})"
        )
    na, nb = a.dim, b.dim
    n = na + nb
    m = hom.matrix
    c = np.zeros((n, n, n), dtype=complex)
    c[:na, :na, :na] = a.structure
    # cross terms a1 T(b2) and T(b1) a2 land in the A-block; a pure B-by-B
    # product has no A-component at all
    c[:na, na:, :na] = np.einsum("qj,iqk->ijk", m, a.structure)
    c[na:, :na, :na] = np.einsum("pi,pjk->ijk", m, a.structure)
    c[na:, na:, na:] = b.structure

    labels = tuple(f"a:{s}" for s in a.basis_labels) + tuple(f"b:{s}" for s in b.basis_labels)
    weights = np.concatenate([a.norm_weights, b.norm_weights])
    product = FiniteAlgebra(
        name=f"prod({a.name},{b.name})",
        basis_labels=labels,
        structure=c,
        norm_weights=weights,
    )
    residual = product.associativity_residual()
    if residual > 10 * tol:
        raise ValidationError(f"product algebra fails associativity (residual {residual:.3e})")
    return MorphismProduct(a=a, b=b, hom=hom, algebra=product)


@dataclass
class IdealQuotientReport:
    ideal_ok: bool
    ideal_residual: float
    quotient_iso_ok: bool
    quotient_residual: float
    quotient_map: LinearMap


def ideal_and_quotient(product: MorphismProduct, tol: float) -> IdealQuotientReport:
    """Verify the A-block is a two-sided ideal and the quotient recovers B.

    The quotient map (a, b) + A -> b is realised by the block projection; it
    is an algebra isomorphism exactly when the B-block of B-by-B products
    reproduces B's structure tensor.
    """
    na = product.dim_a
    c = product.algebra.structure
    ideal_residual = max(max_abs(c[:na, :, na:]), max_abs(c[:, :na, na:]))

    quotient_residual = max_abs(c[na:, na:, na:] - product.b.structure)
    nb = product.dim_b
    qmatrix = np.zeros((nb, na + nb), dtype=complex)
    qmatrix[:, na:] = np.eye(nb)
    qmap = LinearMap(source=product.algebra.name, target=product.b.name, matrix=qmatrix)

    return IdealQuotientReport(
        ideal_ok=ideal_residual <= tol,
        ideal_residual=ideal_residual,
        quotient_iso_ok=quotient_residual <= tol,
        quotient_residual=quotient_residual,
        quotient_map=qmap,
    )
