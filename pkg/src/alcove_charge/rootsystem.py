"""Exact root-system and finite Weyl-group arithmetic.

Conventions used throughout the package:

* Weights live in the real Cartan dual and are written in fundamental-weight
  coordinates, so the pairing with a simple coroot reads off a coordinate:
  ``<omega_i, coroot_j> = delta_ij``.
* Coroots are integer vectors in the simple-coroot basis; the pairing of a
  weight with a coroot is the plain dot product of the two coordinate
  vectors.
* ``cartan[i][j] = <alpha_j, coroot_i>``, so column j of the Cartan matrix is
  the fundamental-weight coordinate vector of the simple root alpha_j.
* Weyl elements are integer matrices acting on fundamental-weight
  coordinates (left action on column vectors).

All arithmetic is exact; floats never appear here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Optional

from .errors import RankMismatch, UnsupportedFamily, WeylGroupTooLarge
from .linalg import Vec, mat_identity, mat_int, mat_inverse, mat_mul, mat_transpose, mat_vec, vec

DEFAULT_WEYL_BOUND = 1_200_000  # covers F4 and rank <= 6 classical groups

_FAMILY_RANKS = {
    "A": range(1, 9),
    "B": range(2, 9),
    "C": range(2, 9),
    "D": range(4, 9),
    "E": (6, 7, 8),
    "F": (4,),
    "G": (2,),
}


def weyl_order(family: str, rank: int) -> int:
    """Order of the finite Weyl group, from the classical formulas."""
    if family == "A":
        return factorial(rank + 1)
    if family in ("B", "C"):
        return 2**rank * factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * factorial(rank)
    if family == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[rank]
    if family == "F":
        return 1152
    if family == "G":
        return 12
    raise UnsupportedFamily(family)


def cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Standard Cartan matrix with cartan[i][j] = <alpha_j, coroot_i>."""
    if family not in _FAMILY_RANKS or rank not in _FAMILY_RANKS[family]:
        raise UnsupportedFamily(f"{family}{rank} is not supported")
    m = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        m[i][i] = 2

    def bond(i: int, j: int, down: int = -1, up: int = -1) -> None:
        # down = <alpha_j, coroot_i>, up = <alpha_i, coroot_j>
        m[i][j] = down
        m[j][i] = up

    if family in ("A", "B", "C"):
        for i in range(rank - 1):
            bond(i, i + 1)
        if family == "B" and rank >= 2:
            # last simple root short: <alpha_{r-1}, coroot_r> = -2
            m[rank - 1][rank - 2] = -2
        if family == "C" and rank >= 2:
            # last simple root long: <alpha_r, coroot_{r-1}> = -2
            m[rank - 2][rank - 1] = -2
    elif family == "D":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 3, rank - 1)
    elif family == "E":
        # Bourbaki: chain 1-3-4-5-6(-7-8), node 2 attached to 4 (1-indexed)
        chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
        for a, b in zip(chain, chain[1:]):
            bond(a, b)
        bond(1, 3)
    elif family == "F":
        bond(0, 1)
        bond(2, 3)
        m[1][2] = -1  # <alpha_3, coroot_2>
        m[2][1] = -2  # <alpha_2, coroot_3>
    elif family == "G":
        m[0][1] = -3  # <alpha_2, coroot_1>, alpha_1 short
        m[1][0] = -1
    return tuple(tuple(row) for row in m)


@dataclass(frozen=True)
class CartanDatum:
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, family: str, rank: int) -> "CartanDatum":
        return cls(family, rank, cartan_matrix(family, rank))

    def __post_init__(self):
        expected = cartan_matrix(self.family, self.rank)
        if self.cartan != expected:
            raise UnsupportedFamily(
                f"Cartan matrix does not match the {self.family}{self.rank} table"
            )


@dataclass(frozen=True)
class Weight:
    """Point of the real Cartan dual in fundamental-weight coordinates."""

    coords: tuple[Fraction, ...]

    @classmethod
    def of(cls, entries: Iterable) -> "Weight":
        return cls(vec(entries))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords, strict=True)))

    def __rmul__(self, c) -> "Weight":
        c = Fraction(c)
        return Weight(tuple(c * a for a in self.coords))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def __repr__(self):
        return "Weight(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Coroot:
    """Coroot written in the simple-coroot basis.

    The pairing row <omega_i, coroot> coincides with the coordinate vector,
    so it is exposed as a property instead of being stored twice.
    """

    coords: tuple[int, ...]

    @property
    def pairing_row(self) -> tuple[int, ...]:
        return self.coords

    def pairing(self, weight: Weight) -> Fraction:
        if len(self.coords) != weight.rank:
            raise RankMismatch("coroot and weight ranks differ")
        total = 0
        for c, x in zip(self.coords, weight.coords):
            if c:
                total = x * c if total == 0 else total + x * c
        return Fraction(total)

    @property
    def height(self) -> int:
        return sum(self.coords)


_COROOT_MATRIX_CACHE: dict = {}


@dataclass(frozen=True)
class WeylElement:
    """Finite Weyl group element as an integer matrix on weight coordinates."""

    matrix: tuple[tuple[int, ...], ...]
    word: Optional[tuple[int, ...]] = field(default=None, compare=False)

    def act(self, weight: Weight) -> Weight:
        return Weight(mat_vec(self.matrix, weight.coords))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        w = None
        if self.word is not None and other.word is not None:
            w = self.word + other.word
        return WeylElement(mat_int(mat_mul(self.matrix, other.matrix)), w)

    def inverse(self) -> "WeylElement":
        w = tuple(reversed(self.word)) if self.word is not None else None
        return WeylElement(mat_int(mat_inverse(self.matrix)), w)

    @property
    def is_identity(self) -> bool:
        n = len(self.matrix)
        return self.matrix == mat_identity(n)

    def coroot_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Matrix of the action on simple-coroot coordinates.

        Adjoint to the inverse weight action: <w.lam, c> = <lam, w^-1.c>.
        """
        cached = _COROOT_MATRIX_CACHE.get(self.matrix)
        if cached is None:
            cached = mat_int(mat_transpose(mat_inverse(self.matrix)))
            _COROOT_MATRIX_CACHE[self.matrix] = cached
        return cached

    def act_coroot(self, coroot: Coroot) -> Coroot:
        return Coroot(tuple(int(x) for x in mat_vec(self.coroot_matrix(), coroot.coords)))


@dataclass(frozen=True, eq=False)
class PositiveRoot:
    """A positive root together with its coroot, in all three coordinate systems."""

    index: int
    root_simple: tuple[int, ...]  # coefficients over simple roots
    root_weight: tuple[int, ...]  # fundamental-weight coordinates
    coroot: Coroot


@dataclass(eq=False)
class RootSystem:
    """Immutable container for the exact data of an irreducible root system.

    Instances are shared via :func:`root_system`; equality is identity.
    """

    datum: CartanDatum
    positive_roots: tuple[PositiveRoot, ...]
    simple_reflections: tuple[WeylElement, ...]
    weyl_bound: int = DEFAULT_WEYL_BOUND
    _weyl_cache: Optional[tuple[WeylElement, ...]] = field(default=None, repr=False)

    # -- basic data ----------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        return self.datum.cartan

    @property
    def rho(self) -> Weight:
        return Weight.of([1] * self.rank)

    def fundamental_weight(self, i: int) -> Weight:
        return Weight.of([1 if j == i else 0 for j in range(self.rank)])

    def zero_weight(self) -> Weight:
        return Weight.of([0] * self.rank)

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    @property
    def highest_coroot_index(self) -> int:
        heights = [pr.coroot.height for pr in self.positive_roots]
        return heights.index(max(heights))

    @property
    def highest_coroot(self) -> Coroot:
        return self.positive_roots[self.highest_coroot_index].coroot

    @property
    def highest_coroot_root_weight(self) -> tuple[int, ...]:
        """Weight coordinates of the root paired with the highest coroot."""
        return self.positive_roots[self.highest_coroot_index].root_weight

    @property
    def coxeter_number(self) -> int:
        return 1 + self.highest_coroot.height

    @property
    def weyl_group_order(self) -> int:
        return weyl_order(self.datum.family, self.datum.rank)

    # -- actions -------------------------------------------------------------

    def pairing(self, weight: Weight, coroot: Coroot) -> Fraction:
        return coroot.pairing(weight)

    def pairing_by_index(self, weight: Weight, coroot_index: int) -> Fraction:
        return self.positive_roots[coroot_index].coroot.pairing(weight)

    def root_weight_of(self, coroot_index: int) -> Weight:
        return Weight.of(self.positive_roots[coroot_index].root_weight)

    def reflect(self, weight: Weight, coroot_index: int, level: int = 0) -> Weight:
        """Reflection in the hyperplane <x, coroot> = level."""
        pr = self.positive_roots[coroot_index]
        t = pr.coroot.pairing(weight) - level
        return weight - t * Weight.of(pr.root_weight)

    def coroot_index(self, coords: Iterable[int]) -> Optional[int]:
        lookup = getattr(self, "_coroot_lookup", None)
        if lookup is None:
            lookup = {pr.coroot.coords: pr.index for pr in self.positive_roots}
            object.__setattr__(self, "_coroot_lookup", lookup)
        return lookup.get(tuple(coords))

    # -- Weyl group enumeration -----------------------------------------------

    def weyl_elements(self) -> tuple[WeylElement, ...]:
        if self._weyl_cache is None:
            order = self.weyl_group_order
            if order > self.weyl_bound:
                raise WeylGroupTooLarge(
                    f"|W| = {order} exceeds configured bound {self.weyl_bound}"
                )
            identity = WeylElement(mat_identity(self.rank), ())
            seen = {identity.matrix: identity}
            frontier = [identity]
            while frontier:
                nxt = []
                for w in frontier:
                    for i, s in enumerate(self.simple_reflections):
                        prod = WeylElement(
                            mat_int(mat_mul(w.matrix, s.matrix)), w.word + (i,)
                        )
                        if prod.matrix not in seen:
                            seen[prod.matrix] = prod
                            nxt.append(prod)
                frontier = nxt
            elements = tuple(sorted(seen.values(), key=lambda w: (len(w.word), w.matrix)))
            if len(elements) != order:
                raise AssertionError(
                    f"Weyl enumeration produced {len(elements)} elements, expected {order}"
                )
            self._weyl_cache = elements
        return self._weyl_cache


def _simple_reflection_matrix(cartan, i: int) -> tuple[tuple[int, ...], ...]:
    # s_i(lam) = lam - <lam, coroot_i> alpha_i;  (alpha_i)_k = cartan[k][i]
    rank = len(cartan)
    rows = []
    for k in range(rank):
        row = [1 if k == j else 0 for j in range(rank)]
        row[i] -= cartan[k][i]
        rows.append(tuple(row))
    return tuple(rows)


def _generate_positive_roots(cartan) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Closure of the simple (root, coroot) pairs under simple reflections."""
    rank = len(cartan)
    simples = []
    for i in range(rank):
        root = tuple(1 if j == i else 0 for j in range(rank))
        coroot = tuple(1 if j == i else 0 for j in range(rank))
        simples.append((root, coroot))

    def reflect_pair(pair, i):
        root, coroot = pair
        # <root, coroot_i> with root in simple-root coordinates
        pr = sum(root[j] * cartan[i][j] for j in range(rank))
        new_root = tuple(
            root[j] - (pr if j == i else 0) for j in range(rank)
        )
        pc = sum(coroot[j] * cartan[j][i] for j in range(rank))
        new_coroot = tuple(
            coroot[j] - (pc if j == i else 0) for j in range(rank)
        )
        return (new_root, new_coroot)

    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for pair in frontier:
            for i in range(rank):
                img = reflect_pair(pair, i)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    positives = [p for p in seen if all(c >= 0 for c in p[0])]
    # sort by coroot height, then coordinates: deterministic indexing
    positives.sort(key=lambda p: (sum(p[1]), p[1]))
    return positives


def build_root_system(datum: CartanDatum, weyl_bound: int = DEFAULT_WEYL_BOUND) -> RootSystem:
    """Construct the root system for a supported Cartan datum.

    Returns positive roots and coroots (height-sorted), simple reflections,
    and lazy access to the full Weyl group enumeration subject to the bound.
    """
    cartan = datum.cartan
    rank = datum.rank
    pairs = _generate_positive_roots(cartan)
    roots = []
    for idx, (root_simple, coroot) in enumerate(pairs):
        root_weight = tuple(
            sum(cartan[i][j] * root_simple[j] for j in range(rank)) for i in range(rank)
        )
        roots.append(
            PositiveRoot(
                index=idx,
                root_simple=root_simple,
                root_weight=root_weight,
                coroot=Coroot(coroot),
            )
        )
    simple_refs = tuple(
        WeylElement(_simple_reflection_matrix(cartan, i), (i,)) for i in range(rank)
    )
    return RootSystem(
        datum=datum,
        positive_roots=tuple(roots),
        simple_reflections=simple_refs,
        weyl_bound=weyl_bound,
    )


@lru_cache(maxsize=32)
def root_system(family: str, rank: int) -> RootSystem:
    """Shared, cached root system instance for a family/rank pair."""
    return build_root_system(CartanDatum.of(family, rank))


# -- spec-level operations ----------------------------------------------------


def coroot_pairing(weight: Weight, coroot: Coroot) -> Fraction:
    """Exact pairing <weight, coroot>; linear in the weight."""
    return coroot.pairing(weight)


def finite_act(w: WeylElement, weight: Weight) -> Weight:
    return w.act(weight)


def enumerate_weyl(rs: RootSystem) -> tuple[WeylElement, ...]:
    """Complete duplicate-free list of Weyl elements (raises beyond bound)."""
    return rs.weyl_elements()
