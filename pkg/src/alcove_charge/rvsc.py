"""Verifier for charge positivity, wall dichotomy, and wall-crossing shifts.

The checks are the K-theoretic shadow of a stability-variation structure:
per alcove, every candidate simple class must have a charge polynomial
positive on the alcove; on each wall the charge is either positive or
identically zero; and crossing a wall upward multiplies by (-1)^n where n
is the vanishing order of the charge on the wall.

Positivity decisions form a cascade ordered by decisiveness: exact vertex
evaluation for affine-linear charges, exact sign checks of known linear
factorizations, and rational grid sampling that can only produce witnesses
or "undecided" (never a pass).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .alcoves import (
    AffineHyperplane,
    Alcove,
    alcoves_within,
    fundamental_alcove,
    is_above,
    vertices,
    walls_and_adjacency,
)
from .errors import NotAbove, NotAdjacent, ZeroClass, ZeroPolynomial
from .kmodel import ChargePolynomial, KClass, KModel, d_polynomial, simple_classes
from .polynomials import Polynomial, monomials_of_degree
from .rootsystem import RootSystem, Weight

POSITIVE = "positive"
NONPOSITIVE = "nonpositive-witness"
UNDECIDED = "undecided"
IDENTICALLY_ZERO = "identically-zero"
MIXED = "mixed"


@dataclass(frozen=True)
class PositivityResult:
    verdict: str
    method: str  # "vertices" | "factorization" | "sampling"
    witness: Optional[Weight] = None

    @property
    def is_positive(self) -> bool:
        return self.verdict == POSITIVE


def _barycenter(points: Sequence[Weight]) -> Weight:
    total = points[0]
    for p in points[1:]:
        total = total + p
    return Fraction(1, len(points)) * total


def _linear_sign_on_simplex(
    poly: Polynomial, verts: Sequence[Weight], inner: Weight
) -> tuple[str, Optional[Weight]]:
    """Sign of an affine-linear form on the open simplex: pos/neg/zero/mixed.

    For "mixed" a point of the open simplex where the form vanishes exactly
    is returned (rational: linear root along a segment to the barycenter).
    """
    values = [poly.evaluate(v.coords) for v in verts]
    center = poly.evaluate(inner.coords)
    if all(v >= 0 for v in values):
        return ("pos", None) if center > 0 else ("zero", inner)
    if all(v <= 0 for v in values):
        return ("neg", None) if center < 0 else ("zero", inner)
    # strict sign change: locate an exact interior zero
    k = min(range(len(values)), key=lambda i: values[i])
    witness = _inward_witness(poly, verts[k], inner)
    a, b = poly.evaluate(witness.coords), center
    if b == 0:
        return ("mixed", inner)
    t = Fraction(a, a - b)
    return ("mixed", witness + t * (inner - witness))


def _positivity_on_simplex(
    poly: Polynomial,
    verts: Sequence[Weight],
    factors: Optional[Sequence[Polynomial]],
    resolution: int,
) -> PositivityResult:
    """Cascade decision for strict positivity on the open simplex hull."""
    inner = _barycenter(verts)
    if poly.degree() <= 1:
        sign, witness = _linear_sign_on_simplex(poly, verts, inner)
        if sign == "pos":
            return PositivityResult(POSITIVE, "vertices")
        if sign in ("zero", "mixed"):
            return PositivityResult(NONPOSITIVE, "vertices", witness)
        return PositivityResult(NONPOSITIVE, "vertices", inner)
    if factors and all(f.degree() <= 1 for f in factors):
        negatives = 0
        for f in factors:
            sign, witness = _linear_sign_on_simplex(f, verts, inner)
            if sign in ("zero", "mixed"):
                # the product vanishes at the exact interior zero of a factor
                return PositivityResult(NONPOSITIVE, "factorization", witness)
            if sign == "neg":
                negatives += 1
        if poly.evaluate(inner.coords) > 0:
            return PositivityResult(POSITIVE, "factorization")
        return PositivityResult(NONPOSITIVE, "factorization", inner)
    # rational grid sampling: witnesses only, never a positive verdict
    for point in _grid_points(verts, resolution):
        if poly.evaluate(point.coords) <= 0:
            return PositivityResult(NONPOSITIVE, "sampling", point)
    return PositivityResult(UNDECIDED, "sampling")


def _inward_witness(poly: Polynomial, vertex: Weight, inner: Weight) -> Weight:
    eps = Fraction(1, 2)
    for _ in range(64):
        candidate = vertex + eps * (inner - vertex)
        if poly.evaluate(candidate.coords) < 0:
            return candidate
        eps /= 2
    raise AssertionError("no interior negativity witness found near a negative vertex")


def _grid_points(verts: Sequence[Weight], resolution: int) -> Iterable[Weight]:
    n = len(verts)
    if resolution < n:
        resolution = n
    for combo in _compositions(resolution, n):
        acc = None
        for w, v in zip(combo, verts):
            part = Fraction(w, resolution) * v
            acc = part if acc is None else acc + part
        yield acc


def _compositions(total: int, parts: int):
    """Positive integer compositions of total into parts (interior points)."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def check_positivity(
    model: KModel, alcove: Alcove, m: KClass, resolution: int = 16
) -> PositivityResult:
    """Strict positivity of the charge polynomial of m on the open alcove."""
    if m.is_zero:
        raise ZeroClass("positivity is undefined for the zero class")
    d = d_polynomial(model, m)
    verts = vertices(model.rs, alcove)
    return _positivity_on_simplex(d.poly, verts, d.linear_factors, resolution)


def _wall_linear_form(rs: RootSystem, h: AffineHyperplane) -> Polynomial:
    coroot = rs.positive_roots[h.coroot_index].coroot
    return Polynomial.linear_form(coroot.coords, -h.level)


def vanishing_order(rs: RootSystem, d: ChargePolynomial, h: AffineHyperplane) -> int:
    """Maximal n with (the wall's linear form)^n dividing the charge.

    Computed exactly via an affine substitution that turns the wall form
    into a coordinate; the order is the minimal degree in that coordinate.
    """
    poly = d.poly if isinstance(d, ChargePolynomial) else d
    if poly.is_zero:
        raise ZeroPolynomial("vanishing order of the zero polynomial")
    return _order_along(rs, poly, h)


def _order_along(rs: RootSystem, poly: Polynomial, h: AffineHyperplane) -> int:
    coroot = rs.positive_roots[h.coroot_index].coroot
    rank = rs.rank
    j = next(k for k in range(rank) if coroot.coords[k] != 0)
    a_j = coroot.coords[j]
    # substitute x_j = (u - sum_{k != j} a_k x_k + level) / a_j, slot j = u
    matrix = []
    offset = []
    for i in range(rank):
        if i != j:
            matrix.append([1 if k == i else 0 for k in range(rank)])
            offset.append(Fraction(0))
        else:
            row = [
                Fraction(1, a_j) if k == j else Fraction(-coroot.coords[k], a_j)
                for k in range(rank)
            ]
            matrix.append(row)
            offset.append(Fraction(h.level, a_j))
    composed = poly.compose_affine(tuple(tuple(r) for r in matrix), tuple(offset))
    return min(exp[j] for exp in composed.terms)


def restrict_to_wall(rs: RootSystem, poly: Polynomial, h: AffineHyperplane) -> Polynomial:
    """The charge restricted to the wall hyperplane (wall coordinate = 0)."""
    coroot = rs.positive_roots[h.coroot_index].coroot
    rank = rs.rank
    j = next(k for k in range(rank) if coroot.coords[k] != 0)
    a_j = coroot.coords[j]
    matrix = []
    offset = []
    for i in range(rank):
        if i != j:
            matrix.append([1 if k == i else 0 for k in range(rank)])
            offset.append(Fraction(0))
        else:
            row = [
                Fraction(0) if k == j else Fraction(-coroot.coords[k], a_j)
                for k in range(rank)
            ]
            matrix.append(row)
            offset.append(Fraction(h.level, a_j))
    return poly.compose_affine(tuple(tuple(r) for r in matrix), tuple(offset))


@dataclass(frozen=True)
class WallVerdict:
    wall: AffineHyperplane
    verdict: str  # "positive" | "identically-zero" | "mixed" | "undecided"
    witness: Optional[Weight] = None


def prop1_dichotomy(
    model: KModel, alcove: Alcove, m: KClass, resolution: int = 16
) -> list[WallVerdict]:
    """Per-wall dichotomy: the charge is positive on the open face or zero on it.

    A "mixed" verdict (both signs on a face) would violate the dichotomy
    and is reported with a witness.
    """
    rs = model.rs
    d = d_polynomial(model, m)
    verts = vertices(rs, alcove)
    out = []
    for h, _neighbor in walls_and_adjacency(rs, alcove):
        restricted = restrict_to_wall(rs, d.poly, h)
        if restricted.is_zero:
            out.append(WallVerdict(h, IDENTICALLY_ZERO))
            continue
        level = Fraction(h.level)
        face = [
            v
            for v in verts
            if rs.pairing_by_index(v, h.coroot_index) == level
        ]
        if len(face) != rs.rank:
            raise AssertionError("wall face should have rank many vertices")
        result = _positivity_on_simplex(d.poly, face, d.linear_factors, resolution)
        if result.is_positive:
            out.append(WallVerdict(h, POSITIVE))
        elif result.verdict == NONPOSITIVE:
            out.append(WallVerdict(h, MIXED, result.witness))
        else:
            out.append(WallVerdict(h, UNDECIDED))
    return out


@dataclass(frozen=True)
class ClassShiftReport:
    class_index: int
    order: int
    sign_rule_ok: bool
    stays_positive: Optional[bool]  # order-0 classes: strict positivity across


@dataclass(frozen=True)
class WallReport:
    wall: AffineHyperplane
    below: Alcove
    above: Alcove
    classes: tuple[ClassShiftReport, ...]

    @property
    def passed(self) -> bool:
        return all(c.sign_rule_ok for c in self.classes)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(c.order for c in self.classes)


def check_wall_shift(
    model: KModel,
    below: Alcove,
    above: Alcove,
    h: AffineHyperplane,
    simples: Sequence[KClass],
    resolution: int = 16,
) -> WallReport:
    """Sign rule across a wall: order-n charges satisfy (-1)^n d > 0 above.

    Order-0 classes are additionally reported on whether strict positivity
    persists (informational; hearts may legitimately lose positivity of
    non-simple objects elsewhere).
    """
    rs = model.rs
    try:
        above_is_above = is_above(rs, below, above, h)
    except NotAdjacent:
        raise
    if not above_is_above:
        raise NotAbove(f"{above} is not above {below} across {h}")
    reports = []
    for k, m in enumerate(simples):
        d = d_polynomial(model, m)
        order = vanishing_order(rs, d, h)
        flipped = m if order % 2 == 0 else -m
        result = check_positivity(model, above, flipped, resolution)
        stays = None
        if order == 0:
            stays = result.is_positive
        reports.append(
            ClassShiftReport(
                class_index=k,
                order=order,
                sign_rule_ok=result.is_positive,
                stays_positive=stays,
            )
        )
    return WallReport(wall=h, below=below, above=above, classes=tuple(reports))


@dataclass(frozen=True, eq=False)
class RVSCInstance:
    """A model plus candidate simple classes per alcove.

    The default instance transports the base-alcove classes, whose charges
    are the defining wall functionals; callers may supply their own map to
    audit alternative candidates.
    """

    model: KModel
    alcove_to_simples: Mapping[Alcove, Sequence[KClass]]

    @classmethod
    def transported(cls, model: KModel, radius: int) -> "RVSCInstance":
        table = {}
        for alcove in alcoves_within(model.rs, radius):
            table[alcove] = simple_classes(model, alcove)
        return cls(model=model, alcove_to_simples=table)


@dataclass
class RVSCReport:
    passed: bool
    radius: int
    alcove_count: int
    positivity_failures: list[tuple[Alcove, int, Optional[Weight]]]
    dichotomy_failures: list[tuple[Alcove, int, AffineHyperplane, str]]
    shift_failures: list[tuple[Alcove, Alcove, AffineHyperplane, int]]
    undecided: int
    max_order: int
    method_counts: dict[str, int]
    wall_reports: list[WallReport] = field(default_factory=list)

    @property
    def sampling_fallbacks(self) -> int:
        return self.method_counts.get("sampling", 0)

    def to_json(self) -> dict:
        pairs = []
        for below, above, h, idx in self.shift_failures:
            pairs.append(
                {
                    "below": list(below.floors),
                    "above": list(above.floors),
                    "wall": [h.coroot_index, h.level],
                    "class": idx,
                }
            )
        return {
            "schema": 1,
            "pass": self.passed,
            "radius": self.radius,
            "alcoves": self.alcove_count,
            "max_vanishing_order": self.max_order,
            "sampling_fallbacks": self.sampling_fallbacks,
            "undecided": self.undecided,
            "positivity_failures": [
                {"alcove": list(a.floors), "class": k} for a, k, _ in self.positivity_failures
            ],
            "dichotomy_failures": [
                {
                    "alcove": list(a.floors),
                    "class": k,
                    "wall": [h.coroot_index, h.level],
                    "verdict": v,
                }
                for a, k, h, v in self.dichotomy_failures
            ],
            "shift_failures": pairs,
        }


def check_rvsc(instance: RVSCInstance, radius: int, resolution: int = 16) -> RVSCReport:
    """Full audit: positivity, wall dichotomy, and the crossing sign rule.

    Runs over every alcove of floor radius <= radius and every adjacent
    pair inside that set with the second alcove above the first.
    """
    model = instance.model
    rs = model.rs
    alcove_list = [a for a in alcoves_within(rs, radius) if a in instance.alcove_to_simples]
    alcove_set = set(alcove_list)
    positivity_failures = []
    dichotomy_failures = []
    shift_failures = []
    wall_reports = []
    undecided = 0
    max_order = 0
    methods: dict[str, int] = {}

    for alcove in alcove_list:
        simples = list(instance.alcove_to_simples[alcove])
        for k, m in enumerate(simples):
            result = check_positivity(model, alcove, m, resolution)
            methods[result.method] = methods.get(result.method, 0) + 1
            if result.verdict == UNDECIDED:
                undecided += 1
            elif not result.is_positive:
                positivity_failures.append((alcove, k, result.witness))
                continue
            for verdict in prop1_dichotomy(model, alcove, m, resolution):
                if verdict.verdict == MIXED:
                    dichotomy_failures.append((alcove, k, verdict.wall, verdict.verdict))
                elif verdict.verdict == UNDECIDED:
                    undecided += 1
        for h, neighbor in walls_and_adjacency(rs, alcove):
            if neighbor not in alcove_set:
                continue
            if not is_above(rs, alcove, neighbor, h):
                continue
            report = check_wall_shift(model, alcove, neighbor, h, simples, resolution)
            wall_reports.append(report)
            max_order = max(max_order, max(report.orders, default=0))
            for cls in report.classes:
                if not cls.sign_rule_ok:
                    shift_failures.append((alcove, neighbor, h, cls.class_index))

    passed = not positivity_failures and not dichotomy_failures and not shift_failures and undecided == 0
    return RVSCReport(
        passed=passed,
        radius=radius,
        alcove_count=len(alcove_list),
        positivity_failures=positivity_failures,
        dichotomy_failures=dichotomy_failures,
        shift_failures=shift_failures,
        undecided=undecided,
        max_order=max_order,
        method_counts=methods,
        wall_reports=wall_reports,
    )
