"""Affine hyperplane arrangement: alcoves, faces, and the affine Weyl action.

An alcove is stored canonically by its floor vector over the positive
coroots: ``k[i] < <x, coroot_i> < k[i] + 1`` on the alcove.  Adjacent
alcoves differ in exactly one floor entry, which makes adjacency and wall
bookkeeping purely combinatorial once an interior witness point is known.

Witness points are produced constructively: the fundamental alcove has the
witness rho/h (h the Coxeter number), and every other alcove within reach is
discovered by breadth-first reflection of witnesses across walls.  This
doubles as the nonemptiness certificate for floor vectors: a vector is a
valid alcove iff the search (which is complete out to the vector's own floor
radius) reaches it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .errors import NotAdjacent, NotInVreg, PointOnWall
from .linalg import mat_identity, mat_int, mat_inverse, mat_mul, mat_vec
from .rootsystem import RootSystem, Weight, WeylElement


@dataclass(frozen=True)
class AffineHyperplane:
    """The hyperplane <x, coroot> = level, with coroot indexed positively."""

    coroot_index: int
    level: int

    def __repr__(self):
        return f"H(c{self.coroot_index}={self.level})"


@dataclass(frozen=True)
class Alcove:
    """Open alcove given by floors over the positive coroots (index order)."""

    floors: tuple[int, ...]

    def __repr__(self):
        return f"Alcove{self.floors}"


@dataclass(frozen=True)
class Face:
    """Stratum of the hyperplane stratification.

    ``equalities`` lists the hyperplanes containing the face; ``floors``
    holds the ambient floor data, with the equality positions pinned at the
    exact level.  Alcoves are exactly the faces with no equalities.
    """

    equalities: tuple[AffineHyperplane, ...]
    floors: tuple[int, ...]


@dataclass(frozen=True)
class AffineWeylElement:
    """Affine transformation x -> finite(x) + translation.

    Composition follows (w1,t1) o (w2,t2) = (w1 w2, w1 t2 + t1), i.e. the
    right factor acts first on points.  Translations are integral weights;
    those outside the root lattice give elements of the extended affine
    group used for line-bundle twists.
    """

    finite: WeylElement
    translation: Weight

    @classmethod
    def identity(cls, rs: RootSystem) -> "AffineWeylElement":
        return cls(WeylElement(mat_identity(rs.rank), ()), rs.zero_weight())

    def act(self, weight: Weight) -> Weight:
        return self.finite.act(weight) + self.translation

    def compose(self, other: "AffineWeylElement") -> "AffineWeylElement":
        return AffineWeylElement(
            self.finite * other.finite,
            self.finite.act(other.translation) + self.translation,
        )

    def inverse(self) -> "AffineWeylElement":
        inv = self.finite.inverse()
        return AffineWeylElement(inv, -inv.act(self.translation))

    def act_diagonal(self, lam: Weight, mu: Weight) -> tuple[Weight, Weight]:
        return self.act(lam), self.act(mu)

    def act_complex(self, x: Weight, y: Weight) -> tuple[Weight, Weight]:
        """Action on x + iy: affine on the real part, linear on the imaginary."""
        return self.act(x), self.finite.act(y)

    @property
    def is_identity(self) -> bool:
        return self.finite.is_identity and all(c == 0 for c in self.translation.coords)

    def act_hyperplane(self, rs: RootSystem, h: AffineHyperplane) -> AffineHyperplane:
        """Image hyperplane, normalized to a positive coroot index."""
        coroot = rs.positive_roots[h.coroot_index].coroot
        cm = self.finite.coroot_matrix()
        image = tuple(int(v) for v in mat_vec(cm, coroot.coords))
        level = h.level + sum(
            t * c for t, c in zip(self.translation.coords, image)
        )
        if Fraction(level).denominator != 1:
            raise AssertionError("hyperplane image has non-integral level")
        level = int(level)
        idx = rs.coroot_index(image)
        if idx is not None:
            return AffineHyperplane(idx, level)
        neg = rs.coroot_index(tuple(-c for c in image))
        if neg is None:
            raise AssertionError("image coroot not found in the root system")
        return AffineHyperplane(neg, -level)


def reflection(rs: RootSystem, h: AffineHyperplane) -> AffineWeylElement:
    """Affine reflection in h: x -> x - (<x,coroot> - level) * root."""
    pr = rs.positive_roots[h.coroot_index]
    rank = rs.rank
    rows = []
    for k in range(rank):
        row = [1 if k == j else 0 for j in range(rank)]
        for j in range(rank):
            row[j] -= pr.root_weight[k] * pr.coroot.coords[j]
        rows.append(tuple(row))
    finite = WeylElement(tuple(rows))
    translation = Weight.of([h.level * c for c in pr.root_weight])
    return AffineWeylElement(finite, translation)


def translation_element(rs: RootSystem, nu: Weight) -> AffineWeylElement:
    """Translation by an integral weight (extended affine element)."""
    if not nu.is_integral:
        raise ValueError("translations must be by integral weights")
    return AffineWeylElement(WeylElement(mat_identity(rs.rank), ()), nu)


_WALL_TABLE: dict[int, tuple[tuple[AffineHyperplane, ...], dict, tuple]] = {}


def _wall_data(rs: RootSystem):
    data = _WALL_TABLE.get(id(rs))
    if data is None:
        walls = [AffineHyperplane(rs.highest_coroot_index, 1)]
        for i in range(rs.rank):
            idx = rs.coroot_index(tuple(1 if j == i else 0 for j in range(rs.rank)))
            if idx is None:
                raise AssertionError("simple coroot missing")
            walls.append(AffineHyperplane(idx, 0))
        labels = {h: i for i, h in enumerate(walls)}
        reflections = tuple(reflection(rs, h) for h in walls)
        data = (tuple(walls), labels, reflections)
        _WALL_TABLE[id(rs)] = data
    return data


def affine_simple_reflection(rs: RootSystem, i: int) -> AffineWeylElement:
    """Generator i of the affine Weyl group; index 0 is the affine node."""
    return _wall_data(rs)[2][i]


def wall_of_fundamental(rs: RootSystem, i: int) -> AffineHyperplane:
    """Wall i of the fundamental alcove: simple walls 1..rank, affine wall 0."""
    return _wall_data(rs)[0][i]


def fundamental_wall_label(rs: RootSystem, h: AffineHyperplane) -> Optional[int]:
    """Index of h among the walls of the fundamental alcove, if it is one."""
    return _wall_data(rs)[1].get(h)


# -- points and alcoves --------------------------------------------------------


def fundamental_alcove(rs: RootSystem) -> Alcove:
    return Alcove((0,) * rs.num_positive_roots)


def fundamental_witness(rs: RootSystem) -> Weight:
    """Interior point rho/h of the fundamental alcove."""
    h = rs.coxeter_number
    return Fraction(1, h) * rs.rho


def is_regular(rs: RootSystem, lam: Weight) -> bool:
    return all(
        rs.pairing_by_index(lam, i).denominator != 1
        for i in range(rs.num_positive_roots)
    )


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def hyperplanes_through(rs: RootSystem, lam: Weight) -> list[AffineHyperplane]:
    out = []
    for i in range(rs.num_positive_roots):
        v = rs.pairing_by_index(lam, i)
        if v.denominator == 1:
            out.append(AffineHyperplane(i, int(v)))
    return out


def alcove_of_point(rs: RootSystem, lam: Weight) -> Alcove:
    """Alcove containing a regular point; raises PointOnWall otherwise."""
    floors = []
    for i in range(rs.num_positive_roots):
        v = rs.pairing_by_index(lam, i)
        if v.denominator == 1:
            raise PointOnWall(AffineHyperplane(i, int(v)))
        floors.append(_floor(v))
    return Alcove(tuple(floors))


def face_of_point(rs: RootSystem, lam: Weight) -> Face:
    equalities = []
    floors = []
    for i in range(rs.num_positive_roots):
        v = rs.pairing_by_index(lam, i)
        if v.denominator == 1:
            equalities.append(AffineHyperplane(i, int(v)))
            floors.append(int(v))
        else:
            floors.append(_floor(v))
    return Face(tuple(equalities), tuple(floors))


def preceq(rs: RootSystem, lam: Weight, mu: Weight) -> bool:
    """True iff lam lies in the closure of the face containing mu."""
    for i in range(rs.num_positive_roots):
        vl = rs.pairing_by_index(lam, i)
        vm = rs.pairing_by_index(mu, i)
        if vm.denominator == 1:
            if vl != vm:
                return False
        else:
            lo = _floor(vm)
            if not (lo <= vl <= lo + 1):
                return False
    return True


# -- witness bookkeeping ---------------------------------------------------------


class _Atlas:
    """Witness points and fundamental-alcove transports, grown by BFS.

    A BFS step reflects the current witness across each candidate bounding
    hyperplane; the reflection is a wall exactly when the image floor vector
    differs in a single entry.  Minimal galleries are floor-monotone, so a
    search capped at radius R is complete for all alcoves of floor radius
    <= R.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        a0 = fundamental_alcove(rs)
        self.witness: dict[tuple[int, ...], Weight] = {a0.floors: fundamental_witness(rs)}
        self.to_fund: dict[tuple[int, ...], AffineWeylElement] = {
            a0.floors: AffineWeylElement.identity(rs)
        }
        self.from_fund: dict[tuple[int, ...], AffineWeylElement] = {}
        self.explored_radius = 0

    def ensure_radius(self, radius: int) -> None:
        if radius <= self.explored_radius:
            return
        rs = self.rs
        frontier = list(self.witness.keys())
        while frontier:
            nxt = []
            for floors in frontier:
                for h, neighbor in walls_and_adjacency(rs, Alcove(floors)):
                    if max(abs(k) for k in neighbor.floors) > radius:
                        continue
                    if neighbor.floors in self.witness:
                        continue
                    refl = reflection(rs, h)
                    self.witness[neighbor.floors] = refl.act(self.witness[floors])
                    # gallery step: crossing h from `floors` prepends the
                    # actual reflection on the way back to the fundamental one
                    self.to_fund[neighbor.floors] = self.to_fund[floors].compose(refl)
                    nxt.append(neighbor.floors)
            frontier = nxt
        self.explored_radius = radius


_ATLASES: dict[int, _Atlas] = {}


def _atlas(rs: RootSystem) -> _Atlas:
    atlas = _ATLASES.get(id(rs))
    if atlas is None:
        atlas = _Atlas(rs)
        _ATLASES[id(rs)] = atlas
    return atlas


def _walk_to_fundamental(rs: RootSystem, lam: Weight) -> tuple[AffineWeylElement, Weight]:
    """Greedy gallery walk of a regular point into the fundamental alcove.

    Returns (element g, g(lam)) with g a product of actual wall reflections.
    Each crossing of a separating wall reduces the separation count by one.
    """
    g = AffineWeylElement.identity(rs)
    point = lam
    a0 = fundamental_alcove(rs)
    while True:
        alc = alcove_of_point(rs, point)
        if alc == a0:
            return g, point
        crossed = False
        for h, neighbor in walls_and_adjacency(rs, alc, witness=point):
            if _separates(h, alc, a0):
                refl = reflection(rs, h)
                point = refl.act(point)
                g = refl.compose(g)
                crossed = True
                break
        if not crossed:
            raise AssertionError("no separating wall found; walk is stuck")


def _separates(h: AffineHyperplane, a: Alcove, b: Alcove) -> bool:
    ka, kb = a.floors[h.coroot_index], b.floors[h.coroot_index]
    return (ka >= h.level > kb) or (kb >= h.level > ka)


def interior_point(rs: RootSystem, alcove: Alcove) -> Weight:
    """Exact rational interior point; validates the floor vector."""
    atlas = _atlas(rs)
    if alcove.floors not in atlas.witness:
        radius = max((abs(k) for k in alcove.floors), default=0)
        atlas.ensure_radius(radius)
    try:
        return atlas.witness[alcove.floors]
    except KeyError:
        raise ValueError(f"floor vector {alcove.floors} does not describe an alcove")


def alcove_from_floors(rs: RootSystem, floors: Iterable[int]) -> Alcove:
    """Validated alcove constructor; raises ValueError on empty regions."""
    alcove = Alcove(tuple(int(k) for k in floors))
    if len(alcove.floors) != rs.num_positive_roots:
        raise ValueError("floor vector length must match the positive coroot count")
    interior_point(rs, alcove)
    return alcove


def walls_and_adjacency(
    rs: RootSystem, alcove: Alcove, witness: Weight | None = None
) -> list[tuple[AffineHyperplane, Alcove]]:
    """The codimension-one walls of an alcove with their neighbors.

    A bounding hyperplane supports a wall exactly when reflecting the alcove
    across it changes a single floor entry.
    """
    if witness is None:
        witness = interior_point(rs, alcove)
    out = []
    for i in range(rs.num_positive_roots):
        k = alcove.floors[i]
        for level in (k, k + 1):
            h = AffineHyperplane(i, level)
            image = reflection(rs, h).act(witness)
            neighbor = alcove_of_point(rs, image)
            diffs = [
                j
                for j in range(rs.num_positive_roots)
                if neighbor.floors[j] != alcove.floors[j]
            ]
            if diffs == [i]:
                out.append((h, neighbor))
    return out


def is_above(rs: RootSystem, a: Alcove, b: Alcove, h: AffineHyperplane) -> bool:
    """True iff b is on the dominant side of h, for alcoves adjacent across h.

    The positive half space of <x,coroot> = n is <x,coroot> > n since the
    coroot is positive.
    """
    diffs = [i for i in range(len(a.floors)) if a.floors[i] != b.floors[i]]
    if diffs != [h.coroot_index]:
        raise NotAdjacent(f"{a} and {b} are not adjacent across {h}")
    ka, kb = a.floors[h.coroot_index], b.floors[h.coroot_index]
    if {ka, kb} != {h.level - 1, h.level}:
        raise NotAdjacent(f"{a} and {b} do not share a face on {h}")
    return kb == h.level


def vertices(rs: RootSystem, alcove: Alcove) -> tuple[Weight, ...]:
    """Exact vertices of the closed alcove simplex.

    The fundamental alcove has vertices 0 and omega_j / m_j with m_j the
    j-th coefficient of the highest coroot; a general alcove is the image of
    those under the transport from the fundamental alcove.
    """
    theta = rs.highest_coroot.coords
    base = [rs.zero_weight()]
    for j in range(rs.rank):
        base.append(Fraction(1, theta[j]) * rs.fundamental_weight(j))
    g = element_from_fundamental(rs, alcove)
    return tuple(g.act(v) for v in base)


def element_to_fundamental(rs: RootSystem, alcove: Alcove) -> AffineWeylElement:
    """The unique affine Weyl element mapping this alcove to the fundamental one."""
    atlas = _atlas(rs)
    if alcove.floors not in atlas.to_fund:
        interior_point(rs, alcove)  # grows the atlas or raises
    return atlas.to_fund[alcove.floors]


def element_from_fundamental(rs: RootSystem, alcove: Alcove) -> AffineWeylElement:
    """The unique affine Weyl element mapping the fundamental alcove to this one."""
    atlas = _atlas(rs)
    cached = atlas.from_fund.get(alcove.floors)
    if cached is None:
        cached = element_to_fundamental(rs, alcove).inverse()
        atlas.from_fund[alcove.floors] = cached
    return cached


def element_mapping(rs: RootSystem, a: Alcove, b: Alcove) -> AffineWeylElement:
    """The unique element with g(a) = b, via transports through the base alcove."""
    return element_from_fundamental(rs, b).compose(element_to_fundamental(rs, a))


def apply_to_alcove(rs: RootSystem, g: AffineWeylElement, alcove: Alcove) -> Alcove:
    return alcove_of_point(rs, g.act(interior_point(rs, alcove)))


def alcoves_within(rs: RootSystem, radius: int) -> list[Alcove]:
    """All alcoves with every |floor| <= radius, in stable order."""
    atlas = _atlas(rs)
    atlas.ensure_radius(radius)
    floors = [
        f for f in atlas.witness if max((abs(k) for k in f), default=0) <= radius
    ]
    return [Alcove(f) for f in sorted(floors)]


# -- stabilizers and the regular neighborhoods -----------------------------------


def stabilizer_order(rs: RootSystem, lam: Weight) -> int:
    """Order of the affine Weyl stabilizer of a point.

    Point stabilizers are generated by the reflections in the hyperplanes
    through the point, so the closure of that finite reflection set is the
    whole stabilizer.
    """
    gens = [reflection(rs, h) for h in hyperplanes_through(rs, lam)]
    if not gens:
        return 1
    identity = AffineWeylElement.identity(rs)

    def key(g: AffineWeylElement):
        return (g.finite.matrix, g.translation.coords)

    seen = {key(identity): identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                prod = g.compose(s)
                k = key(prod)
                if k not in seen:
                    seen[k] = prod
                    nxt.append(prod)
        frontier = nxt
    return len(seen)


def in_almost_regular(rs: RootSystem, lam: Weight) -> bool:
    """Stabilizer has at most two elements: at most one wall through the point."""
    count = 0
    for i in range(rs.num_positive_roots):
        if rs.pairing_by_index(lam, i).denominator == 1:
            count += 1
            if count > 1:
                return False
    return True


def in_V(rs: RootSystem, lam: Weight, mu: Weight) -> bool:
    if not in_almost_regular(rs, lam):
        return False
    return is_regular(rs, lam) or preceq(rs, lam, mu)


def in_Vreg(rs: RootSystem, lam: Weight, mu: Weight) -> bool:
    if not in_almost_regular(rs, lam):
        return False
    if is_regular(rs, lam):
        return True
    return is_regular(rs, mu) and preceq(rs, lam, mu)


def in_S(rs: RootSystem, lam: Weight, mu: Weight) -> bool:
    """Fundamental domain: lam interior to the base alcove, or on its
    boundary with mu inside."""
    if not in_Vreg(rs, lam, mu):
        return False
    a0 = fundamental_alcove(rs)
    if is_regular(rs, lam):
        if alcove_of_point(rs, lam) == a0:
            return True
        # regular lam outside the closed base alcove is not in S
        return False
    # lam on a single wall: need lam in the closure of the base alcove
    if not _in_closure_of_fundamental(rs, lam):
        return False
    return alcove_of_point(rs, mu) == a0


def _in_closure_of_fundamental(rs: RootSystem, lam: Weight) -> bool:
    for i in range(rs.num_positive_roots):
        v = rs.pairing_by_index(lam, i)
        if not (0 <= v <= 1):
            return False
    return True


def normalize_to_S(
    rs: RootSystem, lam: Weight, mu: Weight
) -> tuple[AffineWeylElement, Weight, Weight]:
    """The unique diagonal transport of a V^reg pair into the domain S.

    For regular lam the element carries lam's alcove onto the base alcove;
    for lam on a wall the at-most-two-element stabilizer ambiguity is
    resolved by requiring mu to land inside the base alcove.  Idempotent.
    """
    if not in_Vreg(rs, lam, mu):
        raise NotInVreg(f"({lam}, {mu}) is not in V^reg")
    a0 = fundamental_alcove(rs)
    if is_regular(rs, lam):
        g, image = _walk_to_fundamental(rs, lam)
        return g, image, g.act(mu)
    # lam lies on exactly one wall; mu is regular and adjacent
    g, mu_image = _walk_to_fundamental(rs, mu)
    lam_image = g.act(lam)
    if _in_closure_of_fundamental(rs, lam_image):
        return g, lam_image, mu_image
    # resolve the stabilizer: reflect once more in the wall through lam_image
    walls = hyperplanes_through(rs, lam_image)
    if len(walls) != 1:
        raise AssertionError("almost-regular point should sit on one wall")
    refl = reflection(rs, walls[0])
    g2 = refl.compose(g)
    lam2, mu2 = g2.act(lam), g2.act(mu)
    if not in_S(rs, lam2, mu2):
        raise AssertionError("stabilizer resolution failed to reach S")
    return g2, lam2, mu2
