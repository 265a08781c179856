"""Covering points over the regular pair locus: transport, phases, sanity.

A covering point is a braid word (homotopy class of a path from the base
alcove) together with a base pair in the fundamental domain S; it projects
to the pair obtained by applying the word's affine Weyl image diagonally.
Transport continues a covering point along a piecewise-linear path in pair
space: each transversal wall crossing of the first component appends one
letter (the chart label of the crossed hyperplane) whose sign is the
crossing direction times the side on which the second component passes the
wall (the dominant-side convention resolves the degenerate on-wall case).

Phases are tracked as continuous lifts of arg(Z)/pi; window bookkeeping is
exact, driven by the rational zeros of the imaginary part along the path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .alcoves import (
    AffineHyperplane,
    AffineWeylElement,
    affine_simple_reflection,
    alcove_of_point,
    fundamental_alcove,
    fundamental_wall_label,
    hyperplanes_through,
    in_S,
    in_Vreg,
    is_regular,
    normalize_to_S,
    walls_and_adjacency,
)
from .braid import BraidWord, project_to_affine_weyl
from .errors import (
    NonTransversalCrossing,
    NotInS,
    PathLeavesVreg,
    VanishingCharge,
)
from .kmodel import KClass, KModel, central_charge_exact, d_polynomial, simple_classes
from .rootsystem import RootSystem, Weight


@dataclass(frozen=True)
class CoveringPoint:
    word: BraidWord
    lam: Weight
    mu: Weight


@dataclass(frozen=True)
class TransportPath:
    """Waypoints in pair space; segments interpolate both components."""

    waypoints: tuple[tuple[Weight, Weight], ...]

    @classmethod
    def of(cls, pairs: Iterable[tuple[Weight, Weight]]) -> "TransportPath":
        return cls(tuple(pairs))

    def reversed(self) -> "TransportPath":
        return TransportPath(tuple(reversed(self.waypoints)))


@dataclass(frozen=True)
class TransportEvent:
    segment: int
    time: Fraction
    hyperplane: AffineHyperplane
    direction: int
    side: int  # sign of <mu - lam, coroot> at the event; 0 = on-wall (degenerate)
    letter: tuple[int, int]


def make_covering_point(
    rs: RootSystem, word: BraidWord, lam: Weight, mu: Weight
) -> CoveringPoint:
    if not in_S(rs, lam, mu):
        raise NotInS(f"base pair ({lam}, {mu}) is not in the fundamental domain")
    return CoveringPoint(word=word, lam=lam, mu=mu)


def project(rs: RootSystem, pt: CoveringPoint) -> tuple[Weight, Weight]:
    g = project_to_affine_weyl(rs, pt.word)
    return g.act_diagonal(pt.lam, pt.mu)


def deck_act(rs: RootSystem, b: BraidWord, pt: CoveringPoint) -> CoveringPoint:
    """Deck transformation: prepend the acting word; the base is unchanged."""
    return CoveringPoint(word=b.compose(pt.word), lam=pt.lam, mu=pt.mu)


def _lambda_crossings(
    rs: RootSystem, lam0: Weight, lam1: Weight
) -> list[tuple[Fraction, AffineHyperplane, int]]:
    events = []
    for i in range(rs.num_positive_roots):
        a = rs.pairing_by_index(lam0, i)
        b = rs.pairing_by_index(lam1, i)
        if a == b:
            continue
        lo, hi = (a, b) if a < b else (b, a)
        direction = 1 if b > a else -1
        n = lo.numerator // lo.denominator + 1
        while n < hi:
            events.append((Fraction(n - a, b - a), AffineHyperplane(i, n), direction))
            n += 1
    events.sort(key=lambda e: e[0])
    return events


def transport(
    rs: RootSystem, pt: CoveringPoint, path: TransportPath
) -> tuple[CoveringPoint, list[TransportEvent]]:
    """Continue a covering point along a path in pair space.

    The path must start at the projection of the point; the first-component
    crossings must be simple and transversal, with the pair staying inside
    V^reg at and between events (the second component may sit exactly on
    the crossed wall, the degenerate convention used by real paths).
    """
    lam, mu = project(rs, pt)
    first_lam, first_mu = path.waypoints[0]
    if first_lam != lam or first_mu != mu:
        raise ValueError("path must start at the projection of the covering point")
    for k, (wl, _) in enumerate(path.waypoints):
        if not is_regular(rs, wl):
            raise NonTransversalCrossing(f"waypoint {k} has its first component on a wall")
    word = pt.word
    frame = project_to_affine_weyl(rs, word)
    inv = frame.inverse()
    log: list[TransportEvent] = []
    for seg, ((lam0, mu0), (lam1, mu1)) in enumerate(
        zip(path.waypoints, path.waypoints[1:])
    ):
        events = _lambda_crossings(rs, lam0, lam1)
        for (t1, h1, _), (t2, h2, _) in zip(events, events[1:]):
            if t1 == t2:
                raise NonTransversalCrossing(
                    f"first component meets {h1} and {h2} simultaneously"
                )
        for t, h, direction in events:
            lam_t = lam0 + t * (lam1 - lam0)
            mu_t = mu0 + t * (mu1 - mu0)
            others = [hh for hh in hyperplanes_through(rs, lam_t) if hh != h]
            if others:
                raise NonTransversalCrossing(
                    f"crossing of {h} meets {others[0]} at the same point"
                )
            side_val = rs.pairing_by_index(mu_t, h.coroot_index) - h.level
            side = 0 if side_val == 0 else (1 if side_val > 0 else -1)
            on_wall_only = hyperplanes_through(rs, mu_t) == [h]
            if side == 0 and not on_wall_only:
                raise NonTransversalCrossing(
                    f"second component sits on a foreign wall at the {h} crossing"
                )
            if side != 0 and not in_Vreg(rs, lam_t, mu_t):
                raise PathLeavesVreg(
                    f"second component is outside the adjacent alcoves at the {h} crossing"
                )
            pulled = inv.act_hyperplane(rs, h)
            label = fundamental_wall_label(rs, pulled)
            if label is None:
                raise AssertionError(f"{h} is not a wall of the current chart")
            sign = direction * (side if side != 0 else 1)
            letter = (label, sign)
            word = word.compose(BraidWord((letter,)))
            refl = affine_simple_reflection(rs, label)
            frame = frame.compose(refl)
            inv = refl.compose(inv)
            log.append(
                TransportEvent(
                    segment=seg,
                    time=t,
                    hyperplane=h,
                    direction=direction,
                    side=side,
                    letter=letter,
                )
            )
    end_lam, end_mu = path.waypoints[-1]
    inv = frame.inverse()
    base_lam, base_mu = inv.act_diagonal(end_lam, end_mu)
    if not in_S(rs, base_lam, base_mu):
        raise AssertionError("transport frame did not return the base into S")
    out = CoveringPoint(word=word.free_reduce(), lam=base_lam, mu=base_mu)
    return out, log


# -- phases -----------------------------------------------------------------------


@dataclass(frozen=True)
class PhaseSample:
    time: float
    re: float
    im: float
    phase: float


@dataclass
class PhaseRecord:
    """Continuous lift of arg(Z)/pi for one class along a transport path."""

    kclass: KClass
    start_phase: float
    end_phase: float
    window_shift: int
    samples: list[PhaseSample] = field(default_factory=list)
    events: list[tuple[int, Fraction, int]] = field(default_factory=list)


def phase(model: KModel, pt: CoveringPoint, m: KClass) -> float:
    """Principal phase in (0, 1]: arg(Z)/pi at the covering point's projection."""
    lam, mu = project(model.rs, pt)
    re, im = central_charge_exact(model, lam, mu, m)
    if re == 0 and im == 0:
        raise VanishingCharge(f"central charge of {m} vanishes at the covering point")
    value = math.atan2(float(im), float(re)) / math.pi
    if value <= 0:
        value += 2
    return value


def _segment_im_zeros(
    model: KModel, m: KClass, lam0: Weight, lam1: Weight
) -> list[Fraction]:
    """Exact zeros in (0,1) of t -> d_M(lam(t)) for affine-linear charges."""
    d = d_polynomial(model, m)
    if d.degree() > 1:
        raise NotImplementedError("exact phase events are implemented for degree <= 1")
    a = d.evaluate(lam0)
    b = d.evaluate(lam1)
    if a == b:
        return []
    t = Fraction(a, a - b)
    return [t] if 0 < t < 1 else []


def phase_track(
    model: KModel, pt: CoveringPoint, path: TransportPath, m: KClass
) -> PhaseRecord:
    """Track the lifted phase of a class along a path, with exact windows.

    The lift changes window exactly when Im Z = d_M(lambda(t)) crosses zero
    with Re Z nonzero; the change is +-1 per crossing, with sign equal to
    the product of the crossing direction of Im and the sign of Re there.
    Window bookkeeping is fully exact; the float lift is for display.
    Raises VanishingCharge if Z = 0 anywhere on the path.
    """
    rs = model.rs
    lam, mu = project(rs, pt)
    if (lam, mu) != path.waypoints[0]:
        raise ValueError("path must start at the projection of the covering point")
    d = d_polynomial(model, m)

    def z_at(lam_t: Weight, mu_t: Weight) -> tuple[Fraction, Fraction]:
        return -d.evaluate(mu_t), d.evaluate(lam_t)

    re0, im0 = z_at(*path.waypoints[0])
    if re0 == 0 and im0 == 0:
        raise VanishingCharge("central charge vanishes at the start")
    start = math.atan2(float(im0), float(re0)) / math.pi
    if start <= 0:
        start += 2
    lift = start
    window_shift = 0
    samples = [PhaseSample(0.0, float(re0), float(im0), lift)]
    events: list[tuple[int, Fraction, int]] = []
    prev_angle = math.atan2(float(im0), float(re0))
    prev_im_sign = 0 if im0 == 0 else (1 if im0 > 0 else -1)
    pending_re_sign = 0 if im0 != 0 else (1 if re0 > 0 else -1)

    nseg = len(path.waypoints) - 1
    for seg, ((lam0, mu0), (lam1, mu1)) in enumerate(
        zip(path.waypoints, path.waypoints[1:])
    ):
        a, b = d.evaluate(lam0), d.evaluate(lam1)
        if a == 0 and b == 0:
            # Im identically zero: Re must keep its sign or the charge vanishes
            ra, rb = -d.evaluate(mu0), -d.evaluate(mu1)
            if ra == 0 or rb == 0 or (ra > 0) != (rb > 0):
                raise VanishingCharge(f"central charge vanishes on segment {seg}")
        zeros = _segment_im_zeros(model, m, lam0, lam1)
        ticks: list[Fraction] = []
        cursor = Fraction(0)
        for t in sorted(zeros):
            ticks.append((cursor + t) / 2)
            ticks.append(t)
            cursor = t
        ticks.append((cursor + 1) / 2)
        ticks.append(Fraction(1))
        for t in ticks:
            lam_t = lam0 + t * (lam1 - lam0)
            mu_t = mu0 + t * (mu1 - mu0)
            re, im = z_at(lam_t, mu_t)
            if re == 0 and im == 0:
                raise VanishingCharge(f"central charge vanishes at t={t} of segment {seg}")
            angle = math.atan2(float(im), float(re))
            delta = angle - prev_angle
            while delta > math.pi:
                delta -= 2 * math.pi
            while delta < -math.pi:
                delta += 2 * math.pi
            lift += delta / math.pi
            prev_angle = angle
            im_sign = 0 if im == 0 else (1 if im > 0 else -1)
            if im_sign == 0:
                pending_re_sign = 1 if re > 0 else -1
            else:
                if (
                    prev_im_sign != 0
                    and im_sign != prev_im_sign
                    and pending_re_sign != 0
                ):
                    shift = im_sign * pending_re_sign
                    window_shift += shift
                    events.append((seg, t, shift))
                pending_re_sign = 0
                prev_im_sign = im_sign
            samples.append(
                PhaseSample((seg + float(t)) / nseg, float(re), float(im), lift)
            )
    return PhaseRecord(
        kclass=m,
        start_phase=start,
        end_phase=lift,
        window_shift=window_shift,
        samples=samples,
        events=events,
    )


# -- stability sanity ----------------------------------------------------------------


@dataclass(frozen=True)
class SanityVerdict:
    kclass: KClass
    expected: str  # "upper-half-plane" | "negative-real"
    ok: bool
    re: Fraction
    im: Fraction


@dataclass(frozen=True)
class SanityReport:
    verdicts: tuple[SanityVerdict, ...]

    @property
    def passed(self) -> bool:
        return all(v.ok for v in self.verdicts)


def stability_sanity(
    model: KModel, pt: CoveringPoint, classes: Sequence[KClass]
) -> SanityReport:
    """Half-plane positions of charges at a covering point's projection.

    Interior first component: every class must land strictly in the upper
    half plane.  On-wall first component with the second inside an adjacent
    alcove: classes vanishing on that wall must land on the strictly
    negative real axis, all others strictly above it.
    """
    rs = model.rs
    lam, mu = project(rs, pt)
    walls = hyperplanes_through(rs, lam)
    verdicts = []
    for m in classes:
        re, im = central_charge_exact(model, lam, mu, m)
        if not walls:
            verdicts.append(
                SanityVerdict(m, "upper-half-plane", im > 0, re, im)
            )
            continue
        d = d_polynomial(model, m)
        wall = walls[0]
        from .rvsc import restrict_to_wall

        vanishes = restrict_to_wall(rs, d.poly, wall).is_zero
        if vanishes:
            verdicts.append(
                SanityVerdict(m, "negative-real", im == 0 and re < 0, re, im)
            )
        else:
            verdicts.append(SanityVerdict(m, "upper-half-plane", im > 0, re, im))
    return SanityReport(tuple(verdicts))


def covering_point_simples(model: KModel, pt: CoveringPoint) -> list[KClass]:
    """Simple classes of the alcove at (or beside) the projection's first leg."""
    rs = model.rs
    lam, mu = project(rs, pt)
    if is_regular(rs, lam):
        return simple_classes(model, alcove_of_point(rs, lam))
    return simple_classes(model, alcove_of_point(rs, mu))
