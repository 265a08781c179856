"""Exact multivariate polynomials with rational coefficients.

Terms are stored as a dict mapping exponent tuples to nonzero Fractions.
The variable count is fixed per polynomial; mixing arities raises.
These polynomials do double duty: functions on the real Cartan space in
fundamental-weight coordinates, and elements of the symmetric algebra on
basis symbols (for the coinvariant quotient).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

Exponent = tuple


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction] | None = None):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                c = Fraction(coeff)
                if c != 0:
                    if len(exp) != nvars:
                        raise ValueError("exponent arity mismatch")
                    clean[tuple(exp)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {exp: Fraction(1)})

    @classmethod
    def linear_form(cls, coeffs: Iterable, constant=0) -> "Polynomial":
        coeffs = tuple(coeffs)
        n = len(coeffs)
        terms: dict[Exponent, Fraction] = {}
        for i, c in enumerate(coeffs):
            if c:
                terms[tuple(1 if j == i else 0 for j in range(n))] = Fraction(c)
        if constant:
            terms[(0,) * n] = Fraction(constant)
        return cls(n, terms)

    @classmethod
    def monomial(cls, exp: Exponent, coeff=1) -> "Polynomial":
        return cls(len(exp), {tuple(exp): Fraction(coeff)})

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials in different variable counts")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + c
        return Polynomial(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.nvars, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        return self.terms == Polynomial.constant(self.nvars, other).terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = []
        for exp in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[exp]
            mono = "*".join(
                f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(exp) if k
            )
            bits.append(f"{c}" if not mono else f"{c}*{mono}")
        return "Poly(" + " + ".join(bits) + ")"

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict[Exponent, Fraction]] = {}
        for exp, c in self.terms.items():
            parts.setdefault(sum(exp), {})[exp] = c
        return {d: Polynomial(self.nvars, t) for d, t in sorted(parts.items())}

    def coefficient(self, exp: Exponent) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point: Iterable) -> Fraction:
        pt = tuple(Fraction(x) for x in point)
        if len(pt) != self.nvars:
            raise ValueError("point arity mismatch")
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for x, k in zip(pt, exp):
                if k:
                    v *= x**k
            total += v
        return total

    def partial(self, i: int) -> "Polynomial":
        terms: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            k = exp[i]
            if k:
                e = exp[:i] + (k - 1,) + exp[i + 1 :]
                terms[e] = terms.get(e, Fraction(0)) + c * k
        return Polynomial(self.nvars, terms)

    def compose_affine(self, matrix, offset=None) -> "Polynomial":
        """Substitute x_i -> sum_j matrix[i][j] x_j + offset[i]."""
        n = self.nvars
        if offset is None:
            offset = (0,) * n
        images = [
            Polynomial.linear_form([matrix[i][j] for j in range(n)], offset[i])
            for i in range(n)
        ]
        # cache powers of each substituted variable
        powers: list[list[Polynomial]] = [[Polynomial.one(n)] for _ in range(n)]
        result = Polynomial.zero(n)
        for exp, c in self.terms.items():
            term = Polynomial.constant(n, c)
            for i, k in enumerate(exp):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * images[i])
                if k:
                    term = term * powers[i][k]
            result = result + term
        return result

    def shift(self, offset) -> "Polynomial":
        """Substitute x -> x + offset."""
        from .linalg import mat_identity

        return self.compose_affine(mat_identity(self.nvars), tuple(offset))

    def apply_operator(self, op: "Polynomial") -> "Polynomial":
        """Apply the constant-coefficient operator op(d/dx) to self."""
        self._check(op)
        result = Polynomial.zero(self.nvars)
        for exp, c in op.terms.items():
            p = self
            for i, k in enumerate(exp):
                for _ in range(k):
                    p = p.partial(i)
                    if p.is_zero:
                        break
                if p.is_zero:
                    break
            result = result + c * p
        return result

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict[str, str]:
        return {
            ",".join(str(k) for k in exp): _frac_str(c)
            for exp, c in sorted(self.terms.items())
        }

    @classmethod
    def from_json(cls, nvars: int, data: Mapping[str, str]) -> "Polynomial":
        terms = {}
        for key, val in data.items():
            exp = tuple(int(k) for k in key.split(",")) if key else (0,) * nvars
            terms[exp] = Fraction(val)
        return cls(nvars, terms)


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def monomials_of_degree(nvars: int, degree: int) -> list[Exponent]:
    """All exponent tuples of the given total degree, lexicographic order."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out
