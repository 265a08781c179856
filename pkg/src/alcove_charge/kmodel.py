"""Grothendieck-group models with charge polynomials and the central charge.

Two model kinds:

* ``kleinian`` (ADE only): basis [O_pt] and [O_{C_i}(-1)] for the
  exceptional curves; charge functionals are affine-linear, with
  d_{[O_pt]} = 1 and d_{[O_{C_i}(-1)]} = <x, coroot_i>.
* ``zero_section``: formal symbols [i_*O(mu)] over a finite set of integral
  weights; d is the Euler characteristic polynomial shifted by mu.  No
  linear relations among the symbols are asserted.

The central charge of a pair (lam, mu) against a class M is
Z = -d_M(mu) + i d_M(lam), the pairing of i(exp(lam) + i exp(mu)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .alcoves import (
    AffineWeylElement,
    Alcove,
    element_from_fundamental,
    in_Vreg,
    walls_and_adjacency,
)
from .errors import NotInVreg, NotSimplyLaced, UnsupportedModel
from .linalg import mat_identity
from .polynomials import Polynomial
from .rootsystem import RootSystem, Weight

KLEINIAN = "kleinian"
ZERO_SECTION = "zero_section"


@dataclass(frozen=True, eq=False)
class KModel:
    kind: str
    rs: RootSystem
    labels: tuple[str, ...]
    twists: tuple[Weight, ...] = ()  # zero-section twisting weights, per label

    @property
    def dimension(self) -> int:
        return len(self.labels)


def build_model(
    kind: str, rs: RootSystem, twists: Optional[Iterable[Weight]] = None
) -> KModel:
    """Construct a K-theory model over a root system."""
    if kind == KLEINIAN:
        if rs.datum.family not in ("A", "D", "E"):
            raise NotSimplyLaced(
                f"kleinian models need ADE input, got {rs.datum.family}{rs.rank}"
            )
        labels = ("[O_pt]",) + tuple(
            f"[O_C{i + 1}(-1)]" for i in range(rs.rank)
        )
        return KModel(kind=KLEINIAN, rs=rs, labels=labels)
    if kind == ZERO_SECTION:
        if twists is None:
            twists = [rs.zero_weight()] + [
                rs.fundamental_weight(i) for i in range(rs.rank)
            ]
        twists = tuple(twists)
        for t in twists:
            if not t.is_integral:
                raise ValueError("zero-section twists must be integral weights")
        labels = tuple(
            "[i*O(" + ",".join(str(c) for c in t.coords) + ")]" for t in twists
        )
        return KModel(kind=ZERO_SECTION, rs=rs, labels=labels, twists=twists)
    raise UnsupportedModel(f"unknown model kind {kind!r}")


@dataclass(frozen=True)
class KClass:
    model: KModel
    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, model: KModel, coeffs: Iterable[int]) -> "KClass":
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != model.dimension:
            raise ValueError("coefficient vector length must match the model")
        return cls(model, coeffs)

    @classmethod
    def basis_element(cls, model: KModel, index: int) -> "KClass":
        return cls.of(model, [1 if k == index else 0 for k in range(model.dimension)])

    def __add__(self, other: "KClass") -> "KClass":
        if other.model is not self.model:
            raise ValueError("classes from different models")
        return KClass(self.model, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "KClass") -> "KClass":
        return self + (-other)

    def __neg__(self) -> "KClass":
        return KClass(self.model, tuple(-c for c in self.coeffs))

    def __rmul__(self, n: int) -> "KClass":
        return KClass(self.model, tuple(int(n) * c for c in self.coeffs))

    def shift(self, n: int) -> "KClass":
        """Class of a homological shift by n: multiplies by (-1)^n."""
        return self if n % 2 == 0 else -self

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        bits = [
            f"{c}*{label}"
            for c, label in zip(self.coeffs, self.model.labels)
            if c != 0
        ]
        return "KClass(" + (" + ".join(bits) if bits else "0") + ")"


@dataclass(frozen=True)
class ChargePolynomial:
    """Charge functional d_M as an exact polynomial in weight coordinates.

    ``linear_factors`` carries a known factorization into linear forms (with
    the scalar), used by exact positivity certificates for product-shaped
    charges; None when no factorization is known.
    """

    poly: Polynomial
    linear_factors: Optional[tuple[Polynomial, ...]] = None
    scalar: Fraction = Fraction(1)

    def evaluate(self, lam: Weight) -> Fraction:
        return self.poly.evaluate(lam.coords)

    def degree(self) -> int:
        return self.poly.degree()

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero


def euler_chi_polynomial(rs: RootSystem, lam: Optional[Weight] = None):
    """Euler characteristic of the lam-twisted line bundle on the flag variety.

    Symbolically (lam None): the polynomial prod <x + rho, coroot> / prod
    <rho, coroot> with known linear factors.  With lam: its exact value.
    """
    rank = rs.rank
    factors = []
    denom = Fraction(1)
    for pr in rs.positive_roots:
        denom *= Fraction(pr.coroot.height)
        factors.append(
            Polynomial.linear_form(pr.coroot.coords, pr.coroot.height)
        )
    poly = Polynomial.constant(rank, Fraction(1, denom))
    for f in factors:
        poly = poly * f
    if lam is not None:
        return poly.evaluate(lam.coords)
    return ChargePolynomial(
        poly=poly, linear_factors=tuple(factors), scalar=Fraction(1, denom)
    )


def d_polynomial(model: KModel, m: KClass) -> ChargePolynomial:
    """Charge polynomial of a class, linear in the class."""
    if m.model is not model:
        raise ValueError("class does not belong to this model")
    rank = model.rs.rank
    if model.kind == KLEINIAN:
        poly = Polynomial.constant(rank, m.coeffs[0])
        for i in range(rank):
            if m.coeffs[i + 1]:
                simple = model.rs.coroot_index(
                    tuple(1 if j == i else 0 for j in range(rank))
                )
                coroot = model.rs.positive_roots[simple].coroot
                poly = poly + m.coeffs[i + 1] * Polynomial.linear_form(coroot.coords)
        factors = _affine_linear_factor(poly)
        return ChargePolynomial(poly=poly, linear_factors=factors)
    # zero-section: integer combination of shifted Euler polynomials
    chi = euler_chi_polynomial(model.rs)
    poly = Polynomial.zero(rank)
    nonzero = [k for k, c in enumerate(m.coeffs) if c]
    for k in nonzero:
        shifted = chi.poly.shift(model.twists[k].coords)
        poly = poly + m.coeffs[k] * shifted
    factors = None
    if len(nonzero) == 1:
        k = nonzero[0]
        factors = tuple(
            f.shift(model.twists[k].coords) for f in chi.linear_factors
        )
    return ChargePolynomial(poly=poly, linear_factors=factors)


def _affine_linear_factor(poly: Polynomial):
    return (poly,) if 0 < poly.degree() <= 1 else None


def class_from_charge(model: KModel, charge: Polynomial) -> KClass:
    """Inverse of d_polynomial for Kleinian models (affine-linear charges)."""
    if model.kind != KLEINIAN:
        raise UnsupportedModel("charge functionals determine classes only for kleinian")
    rank = model.rs.rank
    if charge.degree() > 1:
        raise ValueError("kleinian charges are affine-linear")
    # express the linear part over the simple coroot pairing coordinates
    constant = charge.coefficient((0,) * rank)
    coeffs = [constant]
    for i in range(rank):
        exp = tuple(1 if j == i else 0 for j in range(rank))
        coeffs.append(charge.coefficient(exp))
    out = []
    for c in coeffs:
        f = Fraction(c)
        if f.denominator != 1:
            raise ValueError("charge is not integral over the model basis")
        out.append(int(f))
    return KClass.of(model, out)


def central_charge_exact(
    model: KModel, lam: Weight, mu: Weight, m: KClass
) -> tuple[Fraction, Fraction]:
    """(Re Z, Im Z) = (-d_M(mu), d_M(lam)), exact."""
    d = d_polynomial(model, m)
    return -d.evaluate(mu), d.evaluate(lam)


def central_charge(
    model: KModel, lam: Weight, mu: Weight, m: KClass, strict: bool = False
) -> complex:
    """Central charge as a display complex; decisions belong to the exact form."""
    if strict and not in_Vreg(model.rs, lam, mu):
        raise NotInVreg(f"({lam}, {mu}) is outside V^reg")
    re, im = central_charge_exact(model, lam, mu, m)
    return complex(re, im)


def k_action(model: KModel, g: AffineWeylElement, m: KClass) -> KClass:
    """Pullback action on Kleinian classes: d_{g.M}(x) = d_M(g(x)).

    For a translation by nu this is the line-bundle twist
    [O_{C_i}(-1)] -> [O_{C_i}(-1)] + <nu, coroot_i> [O_pt]; for a reflection
    s it realizes d_{s.M}(x) = d_M(s^{-1} x).  Right action: composites
    apply left factors first.
    """
    if model.kind != KLEINIAN:
        raise UnsupportedModel("the Weyl shadow acts on kleinian models only")
    d = d_polynomial(model, m)
    finite = g.finite.matrix
    pulled = d.poly.compose_affine(finite, g.translation.coords)
    return class_from_charge(model, pulled)


def simple_classes(model: KModel, alcove: Alcove) -> list[KClass]:
    """Transported candidate simple classes over an alcove.

    Defined as the images of the base-alcove classes under the pullback
    along the inverse transport; their charge functionals are exactly the
    defining affine functionals of the alcove (positive inside, one per
    wall).
    """
    if model.kind != KLEINIAN:
        raise UnsupportedModel("simple classes are modeled for kleinian kinds only")
    rs = model.rs
    base = _base_simple_classes(model)
    g = element_from_fundamental(rs, alcove).inverse()
    return [k_action(model, g, m) for m in base]


def _base_simple_classes(model: KModel) -> list[KClass]:
    rs = model.rs
    rank = rs.rank
    out = []
    for i in range(rank):
        out.append(KClass.basis_element(model, i + 1))
    theta = rs.highest_coroot
    affine = [1] + [-c for c in theta.coords]
    out.append(KClass.of(model, affine))
    return out


def wall_functionals(model: KModel, alcove: Alcove) -> list[ChargePolynomial]:
    """Defining affine functionals of an alcove: positive inside, zero on one wall."""
    rs = model.rs
    out = []
    for h, neighbor in walls_and_adjacency(rs, alcove):
        coroot = rs.positive_roots[h.coroot_index].coroot
        sign = 1 if alcove.floors[h.coroot_index] >= h.level else -1
        poly = sign * Polynomial.linear_form(coroot.coords, -h.level)
        out.append(ChargePolynomial(poly=poly, linear_factors=(poly,)))
    return out
