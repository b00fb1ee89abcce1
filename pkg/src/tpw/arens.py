"""Dual and bidual calculus: module actions, both Arens products, adjoints.

Functionals pair bilinearly with elements, ``<f, x> = sum_i f_i x_i``, and in
finite dimension the bidual is identified with the algebra through the same
pairing.  Both Arens products are nevertheless computed through their literal
pairing chains,

    <P [] Q, f> = <P, Q . f>        (first)
    <P <> Q, f> = <Q, f . P>        (second)

never through the multiplication shortcut, so that agreement with the
original product is an actual check of the chain and not a definition.
Every finite-dimensional algebra is Arens regular, so topological-center
computations here are degenerate consistency checks by design.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FiniteAlgebra, LinearMap
from .linalg import max_abs, nullspace, rank
from .product import AlgebraHom, MorphismProduct

FINITE_DIM_CAVEAT = (
    "finite dimension forces Arens regularity: both Arens products coincide and "
    "every topological center is the whole bidual, so center verdicts are "
    "consistency checks, not deep confirmations"
)


def dual_pair(f, x) -> complex:
    """Bilinear pairing of a functional with an element (no conjugation)."""
    return complex(np.dot(np.asarray(f, dtype=complex), np.asarray(x, dtype=complex)))


def functional_times_element(alg: FiniteAlgebra, f, a) -> np.ndarray:
    """f . a, the functional x -> f(a x)."""
    return alg.left_mult_operator(a).T @ alg.coerce(f)


def element_times_functional(alg: FiniteAlgebra, a, f) -> np.ndarray:
    """a . f, the functional x -> f(x a)."""
    return alg.right_mult_operator(a).T @ alg.coerce(f)


def dual_actions(alg: FiniteAlgebra, f, a) -> tuple[np.ndarray, np.ndarray]:
    """Both module actions of a on the functional f: (f.a, a.f)."""
    return functional_times_element(alg, f, a), element_times_functional(alg, a, f)


def bidual_times_functional(alg: FiniteAlgebra, big_phi, f) -> np.ndarray:
    """Phi . f, the functional a -> <Phi, f . a>."""
    big_phi = alg.coerce(big_phi)
    f = alg.coerce(f)
    return np.array(
        [np.dot(big_phi, functional_times_element(alg, f, alg.basis_vector(i))) for i in range(alg.dim)]
    )


def functional_times_bidual(alg: FiniteAlgebra, f, big_phi) -> np.ndarray:
    """f . Phi, the functional a -> <Phi, a . f>."""
    big_phi = alg.coerce(big_phi)
    f = alg.coerce(f)
    return np.array(
        [np.dot(big_phi, element_times_functional(alg, alg.basis_vector(i), f)) for i in range(alg.dim)]
    )


def arens_first(alg: FiniteAlgebra, big_phi, big_psi) -> np.ndarray:
    """First Arens product, evaluated through <Phi, Psi . f> on the dual basis."""
    big_phi = alg.coerce(big_phi)
    out = np.empty(alg.dim, dtype=complex)
    for k in range(alg.dim):
        out[k] = np.dot(big_phi, bidual_times_functional(alg, big_psi, alg.basis_vector(k)))
    return out


def arens_second(alg: FiniteAlgebra, big_phi, big_psi) -> np.ndarray:
    """Second Arens product, evaluated through <Psi, f . Phi> on the dual basis."""
    big_psi = alg.coerce(big_psi)
    out = np.empty(alg.dim, dtype=complex)
    for k in range(alg.dim):
        out[k] = np.dot(big_psi, functional_times_bidual(alg, alg.basis_vector(k), big_phi))
    return out


@dataclass
class ProductDualActions:
    """Direct vs block-formula dual actions on a morphism product."""

    right_direct: np.ndarray
    right_block: np.ndarray
    left_direct: np.ndarray
    left_block: np.ndarray

    @property
    def agreement_residual(self) -> float:
        return max(
            max_abs(self.right_direct - self.right_block),
            max_abs(self.left_direct - self.left_block),
        )


def product_dual_actions(product: MorphismProduct, f, g, a, b) -> ProductDualActions:
    """Both actions of (a, b) on (f, g), computed two ways.

    The direct computation uses the product algebra's own multiplication
    operators; the block computation uses the factor-level formulas

        (f, g) . (a, b) = (f.a + f.T(b),  f o (L_a T) + g.b)
        (a, b) . (f, g) = (a.f + T(b).f,  f o (R_a T) + b.g)

    which must agree with it.
    """
    alg_a, alg_b, palg = product.a, product.b, product.algebra
    m = product.hom.matrix
    f = alg_a.coerce(f)
    g = alg_b.coerce(g)
    a = alg_a.coerce(a)
    b = alg_b.coerce(b)

    fg = np.concatenate([f, g])
    ab = np.concatenate([a, b])
    right_direct = functional_times_element(palg, fg, ab)
    left_direct = element_times_functional(palg, ab, fg)

    tb = m @ b
    right_a = functional_times_element(alg_a, f, a) + functional_times_element(alg_a, f, tb)
    # f o (L_a T) = T'(f . a)
    right_b = m.T @ functional_times_element(alg_a, f, a) + functional_times_element(alg_b, g, b)
    left_a = element_times_functional(alg_a, a, f) + element_times_functional(alg_a, tb, f)
    # f o (R_a T) = T'(a . f)
    left_b = m.T @ element_times_functional(alg_a, a, f) + element_times_functional(alg_b, b, g)

    return ProductDualActions(
        right_direct=right_direct,
        right_block=np.concatenate([right_a, right_b]),
        left_direct=left_direct,
        left_block=np.concatenate([left_a, left_b]),
    )


@dataclass
class HomAdjoints:
    """First and second adjoints of an algebra hom, with their certificates."""

    t_prime: LinearMap
    t_second: LinearMap
    embedding_residual: float
    mult_residual_first: float
    mult_residual_second: float
    source_epi: bool
    second_epi: bool


def hom_adjoints(hom: AlgebraHom, tol: float) -> HomAdjoints:
    """T' (f -> f o T) and T'' (F -> F o T') under canonical identifications.

    Also certifies that T'' restricted to the embedded copy of the source
    agrees with T, that T'' is multiplicative for both Arens products, and
    whether surjectivity carries over.
    """
    b_alg, a_alg = hom.source, hom.target
    m = hom.matrix
    t_prime = LinearMap(source=f"dual({a_alg.name})", target=f"dual({b_alg.name})", matrix=m.T)
    # <T''(F), f> = <F, T'(f)>, so T'' has matrix (T')^T = T's matrix again
    t_second = LinearMap(source=f"bidual({b_alg.name})", target=f"bidual({a_alg.name})", matrix=t_prime.matrix.T)

    embedding_residual = max_abs(t_second.matrix - m)

    res1 = 0.0
    res2 = 0.0
    for i in range(b_alg.dim):
        for j in range(b_alg.dim):
            u, v = b_alg.basis_vector(i), b_alg.basis_vector(j)
            res1 = max(
                res1,
                max_abs(t_second(arens_first(b_alg, u, v)) - arens_first(a_alg, t_second(u), t_second(v))),
            )
            res2 = max(
                res2,
                max_abs(t_second(arens_second(b_alg, u, v)) - arens_second(a_alg, t_second(u), t_second(v))),
            )

    source_epi = rank(m, tol) == a_alg.dim
    second_epi = rank(t_second.matrix, tol) == a_alg.dim
    return HomAdjoints(
        t_prime=t_prime,
        t_second=t_second,
        embedding_residual=embedding_residual,
        mult_residual_first=res1,
        mult_residual_second=res2,
        source_epi=source_epi,
        second_epi=second_epi,
    )


def theta_iso(product: MorphismProduct, big_phi, big_psi) -> np.ndarray:
    """The bidual identification pairing <Theta(Phi, Psi), (f, g)> = Phi(f) + Psi(g).

    In coordinates this is the concatenation of the two bidual vectors.
    """
    return product.join(big_phi, big_psi)


def theta_split(product: MorphismProduct, vec) -> tuple[np.ndarray, np.ndarray]:
    return product.split(vec)


def bidual_block_product(product: MorphismProduct, pair1, pair2, which: str) -> np.ndarray:
    """The bidual-level block formula for the product of Theta-preimages.

    Computes (P1 # P2 + P1 # T''(Q2) + T''(Q1) # P2,  Q1 # Q2) with # the
    chosen Arens product taken inside the factor biduals, then maps through
    Theta.
    """
    op = arens_first if which == "first" else arens_second
    m = product.hom.matrix
    phi1, psi1 = pair1
    phi2, psi2 = pair2
    phi1 = product.a.coerce(phi1)
    phi2 = product.a.coerce(phi2)
    psi1 = product.b.coerce(psi1)
    psi2 = product.b.coerce(psi2)
    a_part = (
        op(product.a, phi1, phi2)
        + op(product.a, phi1, m @ psi2)
        + op(product.a, m @ psi1, phi2)
    )
    b_part = op(product.b, psi1, psi2)
    return theta_iso(product, a_part, b_part)


def theta_homomorphism_residual(product: MorphismProduct, which: str) -> float:
    """Worst basis-pair deviation of Theta from multiplicativity.

    Compares the factor-level block formula against the Arens product formed
    inside the product algebra itself, over all pairs of block basis vectors.
    """
    op = arens_first if which == "first" else arens_second
    palg = product.algebra
    na, nb = product.dim_a, product.dim_b
    pairs = []
    for i in range(na):
        pairs.append((product.a.basis_vector(i), np.zeros(nb, dtype=complex)))
    for j in range(nb):
        pairs.append((np.zeros(na, dtype=complex), product.b.basis_vector(j)))
    worst = 0.0
    for p1 in pairs:
        v1 = theta_iso(product, *p1)
        for p2 in pairs:
            v2 = theta_iso(product, *p2)
            block = bidual_block_product(product, p1, p2, which)
            direct = op(palg, v1, v2)
            worst = max(worst, max_abs(block - direct))
    return worst


def topological_center_membership(alg: FiniteAlgebra, big_phi, side: str, tol: float) -> tuple[bool, float]:
    """Whether both Arens products agree against Phi over a bidual basis."""
    big_phi = alg.coerce(big_phi)
    worst = 0.0
    for j in range(alg.dim):
        other = alg.basis_vector(j)
        if side == "left":
            diff = arens_first(alg, big_phi, other) - arens_second(alg, big_phi, other)
        else:
            diff = arens_first(alg, other, big_phi) - arens_second(alg, other, big_phi)
        worst = max(worst, max_abs(diff))
    return worst <= tol, worst


def topological_center(alg: FiniteAlgebra, side: str, tol: float) -> np.ndarray:
    """Orthonormal basis of the requested topological center.

    Assembles the linear system Phi [] e_j = Phi <> e_j (left) or its mirror
    (right) over the bidual basis and solves by thresholded nullspace.  In
    finite dimension the answer is always the whole space; see
    FINITE_DIM_CAVEAT.
    """
    n = alg.dim
    blocks = []
    for j in range(n):
        other = alg.basis_vector(j)
        k = np.empty((n, n), dtype=complex)
        for i in range(n):
            probe = alg.basis_vector(i)
            if side == "left":
                k[:, i] = arens_first(alg, probe, other) - arens_second(alg, probe, other)
            else:
                k[:, i] = arens_first(alg, other, probe) - arens_second(alg, other, probe)
        blocks.append(k)
    # the difference system is a cancellation of product-scale quantities
    scale = max(1.0, max_abs(alg.structure))
    return nullspace(np.vstack(blocks), tol, scale=scale)
