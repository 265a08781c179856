"""Coinvariant algebra of the Weyl group, exponentials, and harmonicity.

Two polynomial pictures share the same variable count r = rank:

* functions on the Cartan dual, written in the coordinates c_i = <x, coroot_i>
  (charge polynomials live here);
* the symmetric algebra on the basis symbols y_i = omega_i (the coinvariant
  quotient and the invariant generators live here).

A Weyl element acts on the symbols by its matrix columns, and the invariant
generators act on functions as constant-coefficient operators by y_i ->
d/dc_i.  With these conventions a functional that factors through the
coinvariant quotient has a harmonic charge polynomial, and the group
average of any positive-degree harmonic function vanishes identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable

from .linalg import mat_transpose, rref
from .polynomials import Polynomial, monomials_of_degree
from .rootsystem import RootSystem, Weight, enumerate_weyl


def invariant_generators(rs: RootSystem) -> list[Polynomial]:
    """Spanning set of the positive-degree invariants, degree by degree.

    Group averages of all symbol monomials in degrees 2..h (h the Coxeter
    number, the top fundamental degree); each degree is row-reduced to an
    independent list.  Degree-1 averages vanish for irreducible systems.
    """
    rank = rs.rank
    elements = enumerate_weyl(rs)
    basis_actions = [mat_transpose(w.matrix) for w in elements]
    out: list[Polynomial] = []
    for degree in range(2, rs.coxeter_number + 1):
        monos = monomials_of_degree(rank, degree)
        index = {m: k for k, m in enumerate(monos)}
        rows = []
        for exp in monos:
            avg = Polynomial.zero(rank)
            mono = Polynomial.monomial(exp)
            for action in basis_actions:
                avg = avg + mono.compose_affine(action)
            if avg.is_zero:
                continue
            row = [Fraction(0)] * len(monos)
            for e, c in avg.terms.items():
                row[index[e]] = c
            rows.append(row)
        reduced, _ = rref(rows, len(monos))
        for row in reduced:
            terms = {monos[k]: c for k, c in enumerate(row) if c}
            out.append(Polynomial(rank, terms))
    return out


@dataclass(frozen=True)
class CoinvariantBasis:
    """Monomial basis of the coinvariant quotient with its reduction data.

    ``reductions`` rewrites each pivot monomial as a combination of free
    monomials of the same degree; monomials above the top degree reduce to
    zero.
    """

    rs: RootSystem
    free_by_degree: tuple[tuple[tuple[int, ...], ...], ...]
    reductions: dict[tuple[int, ...], "Polynomial"]
    top_degree: int

    @property
    def dimension(self) -> int:
        return sum(len(m) for m in self.free_by_degree)

    def hilbert_series(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.free_by_degree)

    @property
    def monomials(self) -> list[tuple[int, ...]]:
        return [m for degree in self.free_by_degree for m in degree]

    def reduce(self, poly: Polynomial) -> "CoinvariantElement":
        coeffs: dict[tuple[int, ...], Fraction] = {}
        for exp, c in poly.terms.items():
            if sum(exp) > self.top_degree:
                continue
            rewritten = self.reductions.get(exp)
            if rewritten is None:
                coeffs[exp] = coeffs.get(exp, Fraction(0)) + c
            else:
                for e2, c2 in rewritten.terms.items():
                    coeffs[e2] = coeffs.get(e2, Fraction(0)) + c * c2
        coeffs = {e: c for e, c in coeffs.items() if c != 0}
        return CoinvariantElement(self, coeffs)

    def zero(self) -> "CoinvariantElement":
        return CoinvariantElement(self, {})

    def one(self) -> "CoinvariantElement":
        return self.reduce(Polynomial.one(self.rs.rank))


def coinvariant_basis(rs: RootSystem) -> CoinvariantBasis:
    """Graded elimination of the invariant ideal up to the top degree.

    The ideal in degree d is spanned by g * m over invariant generators g
    and monomials m of complementary degree; the free monomials of each
    degree survive into the quotient basis.  Total dimension |W|, top
    degree = number of positive roots.
    """
    rank = rs.rank
    top = rs.num_positive_roots
    gens = invariant_generators(rs)
    free_by_degree: list[tuple[tuple[int, ...], ...]] = []
    reductions: dict[tuple[int, ...], Polynomial] = {}
    for degree in range(top + 1):
        monos = monomials_of_degree(rank, degree)
        index = {m: k for k, m in enumerate(monos)}
        rows = []
        for g in gens:
            gdeg = g.degree()
            if gdeg > degree:
                continue
            for exp in monomials_of_degree(rank, degree - gdeg):
                prod = g * Polynomial.monomial(exp)
                row = [Fraction(0)] * len(monos)
                for e, c in prod.terms.items():
                    row[index[e]] = c
                rows.append(row)
        reduced, pivots = rref(rows, len(monos))
        pivot_set = set(pivots)
        free = tuple(m for k, m in enumerate(monos) if k not in pivot_set)
        free_by_degree.append(free)
        for row, pcol in zip(reduced, pivots):
            # pivot monomial = - sum of free-column entries
            terms = {
                monos[k]: -row[k]
                for k in range(len(monos))
                if k != pcol and row[k] != 0
            }
            reductions[monos[pcol]] = Polynomial(rank, terms)
    return CoinvariantBasis(
        rs=rs,
        free_by_degree=tuple(free_by_degree),
        reductions=reductions,
        top_degree=top,
    )


@dataclass(frozen=True)
class CoinvariantElement:
    """Element of the coinvariant quotient over the monomial basis."""

    basis: CoinvariantBasis
    coeffs: dict[tuple[int, ...], Fraction]

    def lift(self) -> Polynomial:
        return Polynomial(self.basis.rs.rank, self.coeffs)

    def __add__(self, other: "CoinvariantElement") -> "CoinvariantElement":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e, Fraction(0)) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return CoinvariantElement(self.basis, out)

    def __sub__(self, other: "CoinvariantElement") -> "CoinvariantElement":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "CoinvariantElement":
        s = Fraction(scalar)
        return CoinvariantElement(
            self.basis, {e: s * c for e, c in self.coeffs.items() if s * c != 0}
        )

    def __mul__(self, other: "CoinvariantElement") -> "CoinvariantElement":
        return self.basis.reduce(self.lift() * other.lift())

    def __eq__(self, other) -> bool:
        return isinstance(other, CoinvariantElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        return f"Coinv({Polynomial(self.basis.rs.rank, self.coeffs)!r})"


@dataclass(frozen=True)
class ComplexCoinvariant:
    """Complexified element re + i*im of the coinvariant quotient."""

    re: CoinvariantElement
    im: CoinvariantElement

    def __add__(self, other: "ComplexCoinvariant") -> "ComplexCoinvariant":
        return ComplexCoinvariant(self.re + other.re, self.im + other.im)

    def scale_real(self, s) -> "ComplexCoinvariant":
        return ComplexCoinvariant(s * self.re, s * self.im)

    def mul_element(self, real_elt: CoinvariantElement) -> "ComplexCoinvariant":
        return ComplexCoinvariant(real_elt * self.re, real_elt * self.im)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ComplexCoinvariant)
            and self.re == other.re
            and self.im == other.im
        )


def _linear_symbol(basis: CoinvariantBasis, lam: Weight) -> Polynomial:
    return Polynomial.linear_form(lam.coords)


def exp_class(basis: CoinvariantBasis, lam: Weight) -> CoinvariantElement:
    """Truncated exponential of a weight in the quotient; exp(0) = 1."""
    rank = basis.rs.rank
    linear = _linear_symbol(basis, lam)
    total = Polynomial.zero(rank)
    power = Polynomial.one(rank)
    for k in range(basis.top_degree + 1):
        if k:
            power = power * linear
        total = total + Fraction(1, factorial(k)) * power
    return basis.reduce(total)


def quasi_exponential(
    basis: CoinvariantBasis, lam: Weight, mu: Weight
) -> ComplexCoinvariant:
    """exp(lam) + i exp(mu); in x+iy coordinates this is exp(x)(1 + i exp(y))."""
    return ComplexCoinvariant(exp_class(basis, lam), exp_class(basis, mu))


def is_harmonic(rs: RootSystem, poly: Polynomial) -> bool:
    """True iff every invariant generator, as an operator, kills the function.

    Products of generators act as composites of the generator operators, so
    annihilation by the finite spanning list decides annihilation by the
    whole positive-degree invariant ideal in the relevant degrees.
    """
    for g in invariant_generators(rs):
        if g.degree() > poly.degree():
            continue
        if not poly.apply_operator(g).is_zero:
            return False
    return True


def weyl_sum(rs: RootSystem, poly: Polynomial, lam: Weight) -> Fraction:
    """Exact sum of poly over the Weyl orbit of lam."""
    total = Fraction(0)
    for w in enumerate_weyl(rs):
        total += poly.evaluate(w.act(lam).coords)
    return total
