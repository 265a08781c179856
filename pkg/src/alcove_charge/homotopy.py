"""Exact planar homotopy sweeps for rank-2 braid word equality.

Two piecewise-linear paths between the same regular endpoints represent the
same braid element iff one can be swept onto the other through generic
paths; the word changes only at finitely many events, each a free
cancellation (the moving vertex crosses a line) or a local braid move (a
moving wing crosses an intersection point of the arrangement).  In rank 2
all strata are rational points and every event parameter solves a linear
equation, so the full sweep is exact.

The certificate produced is the list of words seen between events; each
consecutive pair is re-verified through the bounded rewriting engine, so a
successful sweep is a sound equality proof (a chain of relation-preserving
moves), not a heuristic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .braid import BraidWord, equal_up_to_braid_moves, word_of_segments
from .errors import DegenerateSegment
from .rootsystem import RootSystem, Weight

_STEP_BOUND = 50_000  # rewriting budget per certificate step


@dataclass
class SweepCertificate:
    """Chain of words, consecutive entries one verified move apart."""

    words: list[BraidWord]

    @property
    def start(self) -> BraidWord:
        return self.words[0]

    @property
    def end(self) -> BraidWord:
        return self.words[-1]


class SweepFailure(Exception):
    """Homotopy sweep could not be completed generically."""


def _cross(u: tuple[Fraction, Fraction], v: tuple[Fraction, Fraction]) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _pt(w: Weight) -> tuple[Fraction, Fraction]:
    return (w.coords[0], w.coords[1])


def _lines_in_box(rs: RootSystem, corners: Sequence[Weight]) -> list[tuple[int, int]]:
    """(coroot index, level) pairs whose hyperplane meets the corner hull box."""
    out = []
    for i in range(rs.num_positive_roots):
        values = [rs.pairing_by_index(c, i) for c in corners]
        lo, hi = min(values), max(values)
        n = lo.numerator // lo.denominator
        while n <= hi:
            if lo <= n <= hi:
                out.append((i, n))
            n += 1
    return out


def _strata_points(rs: RootSystem, corners: Sequence[Weight]) -> list[tuple[Fraction, Fraction]]:
    """Pairwise intersections of arrangement lines near the corner hull."""
    lines = _lines_in_box(rs, corners)
    points = set()
    for a in range(len(lines)):
        ia, na = lines[a]
        ca = rs.positive_roots[ia].coroot.coords
        for b in range(a + 1, len(lines)):
            ib, nb = lines[b]
            cb = rs.positive_roots[ib].coroot.coords
            det = ca[0] * cb[1] - ca[1] * cb[0]
            if det == 0:
                continue
            x = Fraction(na * cb[1] - nb * ca[1], det)
            y = Fraction(ca[0] * nb - cb[0] * na, det)
            points.add((x, y))
    return sorted(points)


def _events_for_wing(
    fixed: Weight, moving_from: Weight, moving_to: Weight, z: tuple[Fraction, Fraction]
) -> Optional[Fraction]:
    """Sweep parameter where z crosses the wing fixed..b(s), if interior."""
    f = _pt(fixed)
    b0, b1 = _pt(moving_from), _pt(moving_to)
    zf = (z[0] - f[0], z[1] - f[1])
    d0 = (b0[0] - f[0], b0[1] - f[1])
    d1 = (b1[0] - f[0], b1[1] - f[1])
    # cross(b(s) - f, z - f) is linear in s
    c0 = _cross(d0, zf)
    c1 = _cross(d1, zf)
    if c0 == c1:
        return None
    s = Fraction(c0, c0 - c1)
    if not (0 < s < 1):
        return None
    # containment: z strictly between f and b(s)
    bs = (d0[0] + s * (d1[0] - d0[0]), d0[1] + s * (d1[1] - d0[1]))
    dot_dir = zf[0] * bs[0] + zf[1] * bs[1]
    len2 = bs[0] ** 2 + bs[1] ** 2
    z2 = zf[0] ** 2 + zf[1] ** 2
    if dot_dir <= 0 or z2 == 0 or z2 >= len2:
        return None
    return s


def _vertex_crossing_events(
    rs: RootSystem, moving_from: Weight, moving_to: Weight
) -> list[Fraction]:
    """Sweep parameters where the moving vertex itself crosses a line."""
    out = []
    for i in range(rs.num_positive_roots):
        a = rs.pairing_by_index(moving_from, i)
        b = rs.pairing_by_index(moving_to, i)
        if a == b:
            continue
        lo, hi = (a, b) if a < b else (b, a)
        n = lo.numerator // lo.denominator + 1
        while n < hi:
            out.append(Fraction(n - a, b - a))
            n += 1
    return out


def _interpolate(a: Weight, b: Weight, s: Fraction) -> Weight:
    return a + s * (b - a)


def sweep_vertex(
    rs: RootSystem,
    prefix: Sequence[Weight],
    left: Weight,
    start: Weight,
    target: Weight,
    right: Weight,
    suffix: Sequence[Weight],
) -> SweepCertificate:
    """Certificate for moving one interior vertex of a PL path.

    Compares words of prefix + [left, start, right] + suffix against the
    path with `start` replaced by `target`, sweeping linearly.  Raises
    SweepFailure on event collisions (caller perturbs and retries).
    """
    if rs.rank != 2:
        raise SweepFailure("homotopy sweeps are implemented for rank 2 only")
    corners = [left, right, start, target]
    events = set(_vertex_crossing_events(rs, start, target))
    for z in _strata_points(rs, corners):
        for fixed in (left, right):
            s = _events_for_wing(fixed, start, target, z)
            if s is not None:
                events.add(s)
    schedule = sorted(events)
    for s1, s2 in zip(schedule, schedule[1:]):
        if s1 == s2:  # set already dedupes; kept for clarity
            raise SweepFailure("coincident sweep events")
    samples = []
    cuts = [Fraction(0)] + schedule + [Fraction(1)]
    for lo, hi in zip(cuts, cuts[1:]):
        samples.append((lo + hi) / 2)
    words = []
    for s in [Fraction(0)] + samples + [Fraction(1)]:
        b = _interpolate(start, target, s)
        try:
            words.append(word_of_segments(rs, list(prefix) + [left, b, right] + list(suffix)))
        except DegenerateSegment as exc:
            raise SweepFailure(f"degenerate sample at s={s}: {exc}") from exc
    chain = [words[0]]
    for w in words[1:]:
        if w.letters != chain[-1].letters:
            chain.append(w)
    for u, v in zip(chain, chain[1:]):
        if equal_up_to_braid_moves(rs, u, v, _STEP_BOUND) != "equal":
            raise SweepFailure(f"unverifiable sweep step {u} -> {v}")
    return SweepCertificate(chain)


def _generic_point_between(
    rs: RootSystem, a: Weight, c: Weight, salt: int
) -> Weight:
    """Regular rational point on the open segment a..c, avoiding crossings."""
    from .alcoves import is_regular
    from .braid import segment_crossings

    crossing_ts = {t for t, _, _ in segment_crossings(rs, a, c)}
    for k in range(200):
        q = 64 << (k // 8)
        p = q // 2 + 1 + 2 * (salt + k % 8)
        t = Fraction(p, q)
        if not (0 < t < 1) or t in crossing_ts:
            continue
        candidate = _interpolate(a, c, t)
        if is_regular(rs, candidate):
            return candidate
    raise SweepFailure("no generic point found on segment")


def _random_generic_point(
    rs: RootSystem, a: Weight, b: Weight, rng
) -> Weight:
    """Random regular rational point in a disk around the midpoint of a..b."""
    from .alcoves import is_regular

    mid = _interpolate(a, b, Fraction(1, 2))
    d = b - a
    perp = Weight.of((d.coords[1], -d.coords[0]))
    for _ in range(200):
        q = rng.randrange(211, 4001)
        u = Fraction(rng.randrange(-q, q + 1), 2 * q)
        v = Fraction(rng.randrange(-q, q + 1), 2 * q)
        candidate = mid + u * d + v * perp
        if is_regular(rs, candidate):
            return candidate
    raise SweepFailure("no random generic point found")


def _move_corner(
    rs: RootSystem, pts: list[Weight], i: int, target: Weight, seed: str
) -> list[Weight]:
    """Move interior corner i of a generic PL path onto target, via sweeps.

    Retries through random intermediate hops when the direct sweep hits a
    degenerate configuration.  Every applied sweep is verified, so the word
    of the returned path equals the word of the input path in the group.
    """
    if pts[i] == target:
        return pts
    last_error: Exception | None = None
    for attempt in range(16):
        hops = [target]
        if attempt > 0:
            rng = random.Random(f"hop:{seed}:{attempt}")
            hops = [_random_generic_point(rs, pts[i], target, rng), target]
        try:
            current = list(pts)
            for hop in hops:
                sweep_vertex(
                    rs,
                    current[: i - 1],
                    current[i - 1],
                    current[i],
                    hop,
                    current[i + 1],
                    current[i + 2 :],
                )
                current[i] = hop
            return current
        except (SweepFailure, DegenerateSegment) as exc:
            last_error = exc
    raise SweepFailure(f"corner move failed after retries: {last_error}")


def _refine_to(rs: RootSystem, path: Sequence[Weight], interior: int) -> list[Weight]:
    """Insert generic on-segment corners until the interior count is reached.

    Insertion on an existing (generic) segment does not change the crossing
    word, so refinement is literally word-preserving.
    """
    pts = [p for k, p in enumerate(path) if k == 0 or p != path[k - 1]]
    salt = 0
    while len(pts) - 2 < interior:
        lengths = [
            sum((bc - ac) ** 2 for ac, bc in zip(a.coords, b.coords))
            for a, b in zip(pts, pts[1:])
        ]
        k = lengths.index(max(lengths))
        mid = _generic_point_between(rs, pts[k], pts[k + 1], salt)
        salt += 1
        pts.insert(k + 1, mid)
    return pts


def paths_give_equal_words(
    rs: RootSystem, path1: Sequence[Weight], path2: Sequence[Weight]
) -> bool:
    """Sound equality check for words of two PL paths with equal endpoints.

    Both paths are refined to the same corner count; the corners of the
    first are then swept one at a time onto the corners of the second.
    Every sweep step is re-verified by the rewriting engine, so True means
    the words are provably equal in the affine braid group.  Failures raise
    SweepFailure; the check never silently passes.  Rank 2 only.
    """
    if path1[0] != path2[0] or path1[-1] != path2[-1]:
        raise ValueError("paths must share endpoints")
    w1 = word_of_segments(rs, list(path1))
    w2 = word_of_segments(rs, list(path2))
    if w1.letters == w2.letters:
        return True
    interior = max(len(path1), len(path2), 3) - 2
    pts = _refine_to(rs, path1, interior)
    goal = _refine_to(rs, path2, interior)
    for i in range(1, interior + 1):
        last_error: Exception | None = None
        for attempt in range(6):
            try:
                pts = _move_corner(rs, pts, i, goal[i], seed=f"zip:{i}:{attempt}")
                last_error = None
                break
            except SweepFailure as exc:
                last_error = exc
                if i + 1 > interior:
                    continue
                # unstick by wiggling the next corner out of the way
                rng = random.Random(f"jiggle:{i}:{attempt}")
                wiggle = _random_generic_point(rs, pts[i + 1], goal[i + 1], rng)
                try:
                    pts = _move_corner(rs, pts, i + 1, wiggle, seed=f"jig:{i}:{attempt}")
                except SweepFailure:
                    continue
        if last_error is not None:
            raise SweepFailure(f"could not zip corner {i}: {last_error}")
    final = word_of_segments(rs, pts)
    check = word_of_segments(rs, goal)
    if final.letters != check.letters:
        raise SweepFailure("zipped path word does not match the target path word")
    return True


def words_equal_via_homotopy(
    rs: RootSystem,
    word1: BraidWord,
    path1: Sequence[Weight],
    word2: BraidWord,
    path2: Sequence[Weight],
) -> bool:
    """Verify word1 == word2 in the braid group via their witnessing paths.

    Both words must be the gallery words of their paths (checked); the paths
    must start in a common alcove and end in a common alcove.  Bridging
    segments inside those alcoves are crossing-free, so path2 is extended to
    path1's endpoints without changing its word, and the two paths are then
    swept onto each other.
    """
    from .alcoves import alcove_of_point
    from .braid import segment_crossings

    if word_of_segments(rs, list(path1)).letters != word1.letters:
        raise ValueError("word1 does not match path1")
    if word_of_segments(rs, list(path2)).letters != word2.letters:
        raise ValueError("word2 does not match path2")
    if alcove_of_point(rs, path1[0]) != alcove_of_point(rs, path2[0]):
        raise ValueError("paths start in different alcoves")
    if alcove_of_point(rs, path1[-1]) != alcove_of_point(rs, path2[-1]):
        raise ValueError("paths end in different alcoves")
    if segment_crossings(rs, path1[0], path2[0]):
        raise AssertionError("start witnesses should share an alcove")
    if segment_crossings(rs, path2[-1], path1[-1]):
        raise AssertionError("end witnesses should share an alcove")
    bridged = [path1[0]] + list(path2) + [path1[-1]]
    if word_of_segments(rs, bridged).letters != word2.letters:
        raise AssertionError("bridging inside alcoves changed the word")
    return paths_give_equal_words(rs, list(path1), bridged)
