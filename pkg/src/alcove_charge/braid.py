"""Affine braid words: positive lifts of alcove pairs and bounded rewriting.

A braid word is a signed sequence of generator indices 0..rank (0 is the
affine node); the leftmost letter is the first wall crossed.  The word of a
gallery records, per crossing, the fundamental-alcove label of the crossed
hyperplane pulled back by the running frame, with sign +1 for a crossing
into the dominant side.  The projection to the affine Weyl group multiplies
the corresponding simple affine reflections in letter order (so the last
letter acts first on points, and the projection of a lift composed with the
transport of its source alcove reaches its target alcove).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal, Optional, Sequence

from .alcoves import (
    AffineHyperplane,
    AffineWeylElement,
    Alcove,
    affine_simple_reflection,
    alcove_of_point,
    element_from_fundamental,
    element_to_fundamental,
    fundamental_wall_label,
    hyperplanes_through,
    interior_point,
    is_regular,
    vertices,
    wall_of_fundamental,
)
from .errors import DegenerateSegment
from .rootsystem import RootSystem, Weight

Letter = tuple[int, int]  # (generator index, sign)
Verdict = Literal["equal", "distinct", "unknown"]


@dataclass(frozen=True)
class BraidWord:
    letters: tuple[Letter, ...]

    @classmethod
    def of(cls, letters: Iterable[Sequence[int]]) -> "BraidWord":
        out = []
        for item in letters:
            idx, sign = int(item[0]), int(item[1])
            if sign not in (1, -1):
                raise ValueError(f"letter sign must be +-1, got {sign}")
            out.append((idx, sign))
        return cls(tuple(out))

    @classmethod
    def empty(cls) -> "BraidWord":
        return cls(())

    def __len__(self) -> int:
        return len(self.letters)

    def compose(self, other: "BraidWord") -> "BraidWord":
        """Concatenation: self's letters are crossed first."""
        return BraidWord(self.letters + other.letters)

    def invert(self) -> "BraidWord":
        return BraidWord(tuple((i, -s) for i, s in reversed(self.letters)))

    def free_reduce(self) -> "BraidWord":
        return BraidWord(_free_reduce(self.letters))

    def to_json(self) -> list[list[int]]:
        return [[i, s] for i, s in self.letters]

    @classmethod
    def from_json(cls, data: Iterable[Sequence[int]]) -> "BraidWord":
        return cls.of(data)

    def __repr__(self):
        body = " ".join(f"s{i}" + ("" if s > 0 else "'") for i, s in self.letters)
        return f"BraidWord({body})" if self.letters else "BraidWord(e)"


def compose_words(a: BraidWord, b: BraidWord) -> BraidWord:
    return a.compose(b)


def invert_word(a: BraidWord) -> BraidWord:
    return a.invert()


def free_reduce(a: BraidWord) -> BraidWord:
    return a.free_reduce()


def _free_reduce(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for letter in letters:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@dataclass(frozen=True)
class Gallery:
    """Alcove chain with its wall crossings.

    Each crossing carries the hyperplane, the direction (+1 when entering
    the dominant side), and the generator label of the wall relative to the
    alcove it is crossed from.
    """

    alcoves: tuple[Alcove, ...]
    crossings: tuple[tuple[AffineHyperplane, int, int], ...]


@dataclass(frozen=True)
class LiftPath:
    """A positive lift together with the witness segment that produced it."""

    word: BraidWord
    start: Weight
    end: Weight


# -- Coxeter data for the affine diagram ------------------------------------------


def _bond_order(product: int) -> Optional[int]:
    # product of the two off-diagonal Cartan entries -> order of s_i s_j
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(product)


def affine_coxeter_matrix(rs: RootSystem) -> tuple[tuple[Optional[int], ...], ...]:
    """Orders m(i,j) of products of affine simple reflections; None is infinity.

    Index 0 is the affine node.  Finite bonds come from the Cartan matrix;
    affine bonds pair the highest coroot's root with the simple coroots.
    """
    rank = rs.rank
    theta = rs.highest_coroot.coords
    theta_root = rs.highest_coroot_root_weight  # weight coords of its root
    size = rank + 1
    m: list[list[Optional[int]]] = [[None] * size for _ in range(size)]
    for i in range(size):
        m[i][i] = 1
    for i in range(1, size):
        for j in range(i + 1, size):
            prod = rs.cartan[i - 1][j - 1] * rs.cartan[j - 1][i - 1]
            m[i][j] = m[j][i] = _bond_order(prod)
    for j in range(1, size):
        # <theta_root, coroot_j> * <alpha_j, theta_coroot>
        a = theta_root[j - 1]
        b = sum(
            rs.cartan[k][j - 1] * theta[k] for k in range(rank)
        )
        m[0][j] = m[j][0] = _bond_order(a * b)
    return tuple(tuple(row) for row in m)


# -- wall labels --------------------------------------------------------------------


def chart_label(rs: RootSystem, frame: AffineWeylElement, h: AffineHyperplane) -> int:
    """Label of h as a wall of the chart frame(A0); raises if it is not one."""
    pulled = frame.inverse().act_hyperplane(rs, h)
    label = fundamental_wall_label(rs, pulled)
    if label is None:
        raise AssertionError(f"{h} is not a wall of the current chart")
    return label


def wall_type(rs: RootSystem, h: AffineHyperplane) -> int:
    """Generator index of a hyperplane, via a canonical adjacent alcove.

    The two alcoves sharing a codimension-one face on h assign it the same
    label, so the choice below (the alcove just below a deterministic
    generic point of h) is only a tie-breaking device.
    """
    point = _generic_point_on(rs, h)
    floors = []
    for i in range(rs.num_positive_roots):
        v = rs.pairing_by_index(point, i)
        floors.append((v.numerator // v.denominator) - (1 if v.denominator == 1 else 0))
    below = Alcove(tuple(floors))
    return chart_label(rs, element_from_fundamental(rs, below), h)


def _generic_point_on(rs: RootSystem, h: AffineHyperplane) -> Weight:
    """Deterministic rational point lying on h and on no other hyperplane."""
    coroot = rs.positive_roots[h.coroot_index].coroot
    rho = rs.rho
    base = Fraction(h.level, coroot.pairing(rho)) * rho
    if hyperplanes_through(rs, base) == [h]:
        return base
    # slide along h using directions with zero pairing against its coroot
    for j in range(rs.rank):
        omega = rs.fundamental_weight(j)
        direction = coroot.pairing(rho) * omega - coroot.pairing(omega) * rho
        if all(c == 0 for c in direction.coords):
            continue
        denom = 16
        for _ in range(60):
            candidate = base + Fraction(1, denom) * direction
            if hyperplanes_through(rs, candidate) == [h]:
                return candidate
            denom *= 2
    raise AssertionError(f"could not find a generic point on {h}")


# -- crossings of straight segments ----------------------------------------------


def segment_crossings(
    rs: RootSystem, start: Weight, end: Weight
) -> list[tuple[Fraction, AffineHyperplane, int]]:
    """Ordered transversal wall crossings of the open segment start..end.

    Raises DegenerateSegment when an endpoint is on a wall, the segment runs
    inside a wall, or two crossings coincide (a codimension->=2 touch).
    """
    events: list[tuple[Fraction, AffineHyperplane, int]] = []
    for i in range(rs.num_positive_roots):
        a = rs.pairing_by_index(start, i)
        b = rs.pairing_by_index(end, i)
        if a.denominator == 1 or b.denominator == 1:
            raise DegenerateSegment(f"segment endpoint on coroot {i} wall")
        if a == b:
            continue
        lo, hi = (a, b) if a < b else (b, a)
        direction = 1 if b > a else -1
        n = lo.numerator // lo.denominator + 1
        while n < hi:
            t = Fraction(n - a, b - a)
            events.append((t, AffineHyperplane(i, n), direction))
            n += 1
    events.sort(key=lambda e: e[0])
    for (t1, h1, _), (t2, h2, _) in zip(events, events[1:]):
        if t1 == t2:
            raise DegenerateSegment(f"segment meets {h1} and {h2} simultaneously")
    return events


def word_of_segments(rs: RootSystem, points: Sequence[Weight]) -> BraidWord:
    """Braid word of a piecewise-linear path through regular rational points."""
    if len(points) < 2:
        return BraidWord.empty()
    # maintain the inverse frame: (v s)^-1 = s v^-1 for involutive generators
    inv = element_to_fundamental(rs, alcove_of_point(rs, points[0]))
    letters: list[Letter] = []
    for a, b in zip(points, points[1:]):
        for _, h, direction in segment_crossings(rs, a, b):
            pulled = inv.act_hyperplane(rs, h)
            label = fundamental_wall_label(rs, pulled)
            if label is None:
                raise AssertionError(f"{h} is not a wall of the current chart")
            letters.append((label, direction))
            inv = affine_simple_reflection(rs, label).compose(inv)
    return BraidWord(tuple(letters))


def gallery_between(rs: RootSystem, a: Alcove, b: Alcove) -> Gallery:
    """Gallery along a generic witness segment from a to b."""
    lift = positive_lift_path(rs, a, b)
    events = segment_crossings(rs, lift.start, lift.end)
    times = [t for t, _, _ in events] + [Fraction(1)]
    chain = [a]
    crossings = []
    for k, ((t, h, direction), (label, _)) in enumerate(zip(events, lift.word.letters)):
        mid = (t + times[k + 1]) / 2
        chain.append(alcove_of_point(rs, lift.start + mid * (lift.end - lift.start)))
        crossings.append((h, direction, label))
    return Gallery(tuple(chain), tuple(crossings))


# -- positive lifts ----------------------------------------------------------------


def witness_sample(rs: RootSystem, alcove: Alcove, rng: random.Random) -> Weight:
    """Random rational interior point: a convex combination of the vertices."""
    vs = vertices(rs, alcove)
    weights = [1 + rng.randrange(7) for _ in vs]
    total = sum(weights)
    point = rs.zero_weight()
    for w, v in zip(weights, vs):
        point = point + Fraction(w, total) * v
    return point


def positive_lift_path(
    rs: RootSystem, a: Alcove, b: Alcove, attempt_seed: Optional[str] = None
) -> LiftPath:
    """Positive lift of the pair (a, b) along a generic witness segment.

    The first attempt joins the deterministic interior witnesses; later
    attempts resample witnesses from a seeded generator.  One retry loop
    lives here so callers see DegenerateSegment only when resampling failed
    repeatedly (which indicates a bug, not bad luck).
    """
    if a == b:
        p = interior_point(rs, a)
        return LiftPath(BraidWord.empty(), p, p)
    seed = attempt_seed or f"lift:{a.floors}:{b.floors}"
    for attempt in range(40):
        if attempt == 0 and attempt_seed is None:
            start, end = interior_point(rs, a), interior_point(rs, b)
        else:
            rng = random.Random(f"{seed}:{attempt}")
            start = witness_sample(rs, a, rng)
            end = witness_sample(rs, b, rng)
        try:
            word = word_of_segments(rs, [start, end])
        except DegenerateSegment:
            continue
        return LiftPath(word, start, end)
    raise DegenerateSegment(f"no generic witness segment found for {a} -> {b}")


def positive_lift(rs: RootSystem, a: Alcove, b: Alcove) -> BraidWord:
    return positive_lift_path(rs, a, b).word


def composed_lift_paths(
    rs: RootSystem, a: Alcove, mid: Alcove, b: Alcove, seed: str = ""
) -> tuple[LiftPath, LiftPath]:
    """Lifts a -> mid and mid -> b sharing the same generic mid witness.

    Their concatenated word is the word of the broken path through all
    three witnesses, which makes homotopy comparisons against the straight
    lift a -> b well posed.
    """
    base = f"compose:{a.floors}:{mid.floors}:{b.floors}:{seed}"
    for attempt in range(60):
        rng = random.Random(f"{base}:{attempt}")
        wa = witness_sample(rs, a, rng)
        wm = witness_sample(rs, mid, rng)
        wb = witness_sample(rs, b, rng)
        try:
            first = word_of_segments(rs, [wa, wm])
            second = word_of_segments(rs, [wm, wb])
        except DegenerateSegment:
            continue
        return LiftPath(first, wa, wm), LiftPath(second, wm, wb)
    raise DegenerateSegment(f"no generic broken witness path for {a}->{mid}->{b}")


def project_to_affine_weyl(rs: RootSystem, word: BraidWord) -> AffineWeylElement:
    """Quotient map to the affine Weyl group: signs forgotten, letters in order."""
    g = AffineWeylElement.identity(rs)
    for idx, _ in word.letters:
        g = g.compose(affine_simple_reflection(rs, idx))
    return g


# -- bounded word problem -----------------------------------------------------------


def _relator_patterns(m: int, i: int, j: int) -> list[tuple[tuple[Letter, ...], tuple[Letter, ...]]]:
    """Length-preserving rewrites derived from the braid relation of order m.

    The relator (i j i ...)_m (j i j ...)_m^{-1} of length 2m yields, for each
    cyclic rotation, the rule "first half -> inverse of reversed second
    half"; both orientations are included.
    """

    def alternating(x: int, y: int, length: int) -> list[Letter]:
        return [((x, 1) if k % 2 == 0 else (y, 1)) for k in range(length)]

    def inverse(ws: list[Letter]) -> list[Letter]:
        return [(g, -s) for g, s in reversed(ws)]

    relator = alternating(i, j, m) + inverse(alternating(j, i, m))
    patterns = []
    for base in (relator, inverse(relator)):
        for r in range(2 * m):
            cyc = base[r:] + base[:r]
            u, w = cyc[:m], cyc[m:]
            v = inverse(w)
            if u != v:
                patterns.append((tuple(u), tuple(v)))
    return sorted(set(patterns))


class _MoveTable:
    def __init__(self, rs: RootSystem):
        self.coxeter = affine_coxeter_matrix(rs)
        size = rs.rank + 1
        self.commuting = {
            (i, j)
            for i in range(size)
            for j in range(size)
            if i != j and self.coxeter[i][j] == 2
        }
        patterns: dict[int, list] = {}
        for i in range(size):
            for j in range(i + 1, size):
                m = self.coxeter[i][j]
                if m is not None and m >= 3:
                    for u, v in _relator_patterns(m, i, j):
                        patterns.setdefault(len(u), []).append((u, v))
        self.patterns = patterns
        # odd-bond components of the diagram determine the abelianization
        parent = list(range(size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(size):
            for j in range(size):
                mij = self.coxeter[i][j]
                if i != j and mij is not None and mij % 2 == 1:
                    parent[find(i)] = find(j)
        self.component = [find(i) for i in range(size)]

    def neighbors(self, letters: tuple[Letter, ...]):
        n = len(letters)
        for pos in range(n - 1):
            a, b = letters[pos], letters[pos + 1]
            if (a[0], b[0]) in self.commuting:
                yield _free_reduce(letters[:pos] + (b, a) + letters[pos + 2 :])
        for size, rules in self.patterns.items():
            if size > n:
                continue
            for pos in range(n - size + 1):
                window = letters[pos : pos + size]
                for u, v in rules:
                    if window == u:
                        yield _free_reduce(letters[:pos] + v + letters[pos + size :])


_MOVE_TABLES: dict[int, _MoveTable] = {}


def _moves(rs: RootSystem) -> _MoveTable:
    table = _MOVE_TABLES.get(id(rs))
    if table is None:
        table = _MoveTable(rs)
        _MOVE_TABLES[id(rs)] = table
    return table


def _abelianized(rs: RootSystem, word: BraidWord) -> tuple[int, ...]:
    table = _moves(rs)
    totals = [0] * (rs.rank + 1)
    for idx, sign in word.letters:
        totals[table.component[idx]] += sign
    return tuple(totals)


def equal_up_to_braid_moves(
    rs: RootSystem, w1: BraidWord, w2: BraidWord, bound: int = 100_000
) -> Verdict:
    """Three-valued bounded word problem for the affine braid group.

    Bidirectional breadth-first search over free reduction, commutations,
    and the length-preserving consequences of the braid relations.
    "distinct" is only returned when an invariant separates the words
    (abelianization per odd-bond diagram component, or the affine Weyl
    projections); exhausting the node budget yields "unknown".
    """
    r1, r2 = _free_reduce(w1.letters), _free_reduce(w2.letters)
    if r1 == r2:
        return "equal"
    if _abelianized(rs, BraidWord(r1)) != _abelianized(rs, BraidWord(r2)):
        return "distinct"
    p1 = project_to_affine_weyl(rs, BraidWord(r1))
    p2 = project_to_affine_weyl(rs, BraidWord(r2))
    if (p1.finite.matrix, p1.translation.coords) != (p2.finite.matrix, p2.translation.coords):
        return "distinct"

    table = _moves(rs)
    side = ({r1}, {r2})
    frontier = ([r1], [r2])
    explored = 2
    while frontier[0] or frontier[1]:
        pick = 0 if 0 < len(frontier[0]) <= len(frontier[1]) or not frontier[1] else 1
        new: list[tuple[Letter, ...]] = []
        for letters in frontier[pick]:
            for image in table.neighbors(letters):
                if image in side[1 - pick]:
                    return "equal"
                if image not in side[pick]:
                    side[pick].add(image)
                    new.append(image)
                    explored += 1
                    if explored > bound:
                        return "unknown"
        frontier = (new, frontier[1]) if pick == 0 else (frontier[0], new)
    return "unknown"
