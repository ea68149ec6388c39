"""Bratteli diagrams and the maximal-UHF invariant of unital AF algebras.

A diagram is a leveled multigraph described by multiplicity matrices:
level 0 has a single vertex, and the matrix M_n records how many edges
join each level-(n-1) vertex to each level-n vertex.  Every vertex
emits at least one edge and, past level 0, receives at least one.  An
optional "repeat-last" tail extends a diagram with a square final
matrix to infinite depth.

The product M_n * ... * M_1 counts paths from the root, giving the
height vector at level n.  Its gcd h_n divides h_{n+1}, and the ratio
sequence r_n = h_n / h_{n-1} drives everything else: the single-vertex
odometer diagram with matrices [r_n] describes the maximal UHF
subalgebra that admits a unital embedding, and the supernatural product
of the r_n is its isomorphism class.

Infinite tails are handled exactly.  Once the normalized height vector
(heights divided by their gcd) revisits an earlier value while the
repeating matrix applies, the ratio sequence is provably periodic, the
primes in the cycle acquire infinite exponent, and results are reported
"certified"; otherwise they carry the "truncated-at-depth" flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .primes import factorize, first_primes
from .supernatural import OMEGA, Exponent, SupernaturalNumber

Matrix = tuple[tuple[int, ...], ...]

REPEAT_LAST = "repeat-last"
CERTIFIED = "certified"
TRUNCATED = "truncated-at-depth"


class DiagramError(ValueError):
    """A structural rule was broken by a diagram or a depth request."""


def _as_matrix(rows) -> Matrix:
    out = []
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, bool) or not isinstance(cell, int):
                raise ValueError("matrix entries must be integers, got %r" % (cell,))
            cells.append(cell)
        out.append(tuple(cells))
    return tuple(out)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not b or len(a[0]) != len(b):
        raise ValueError("matrix shape mismatch: %dx%d by %dx%d"
                         % (len(a), len(a[0]) if a else 0, len(b), len(b[0]) if b else 0))
    width = len(b[0])
    return tuple(
        tuple(sum(arow[k] * b[k][j] for k in range(len(b))) for j in range(width))
        for arow in a
    )


def _mat_vec(a: Matrix, v: tuple[int, ...]) -> tuple[int, ...]:
    if any(len(row) != len(v) for row in a):
        raise ValueError("matrix/vector shape mismatch")
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def _identity(k: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


@dataclass(frozen=True)
class Violation:
    """One broken structural rule, anchored to a level and position."""

    kind: str
    level: int
    position: Optional[int]
    message: str


@dataclass(frozen=True)
class BratteliDiagram:
    """Levels, multiplicity matrices, optional repeating tail."""

    levels: tuple[int, ...]
    matrices: tuple[Matrix, ...]
    tail: Optional[str] = None
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(int(k) for k in self.levels))
        object.__setattr__(self, "matrices", tuple(_as_matrix(m) for m in self.matrices))
        if self.tail not in (None, REPEAT_LAST):
            raise ValueError("tail must be absent or %r, got %r" % (REPEAT_LAST, self.tail))

    @property
    def given_depth(self) -> int:
        """Number of explicitly listed matrices."""
        return len(self.matrices)

    @property
    def is_infinite(self) -> bool:
        return self.tail == REPEAT_LAST

    def width_at(self, n: int) -> int:
        if n <= self.given_depth:
            return self.levels[n]
        if self.is_infinite:
            return self.levels[self.given_depth]
        raise DiagramError("level %d exceeds the %d levels of a finite diagram"
                           % (n, self.given_depth))

    def matrix_at(self, n: int) -> Matrix:
        """Multiplicity matrix feeding level n (1-based)."""
        if n < 1:
            raise DiagramError("matrix index must be >= 1, got %d" % n)
        if n <= self.given_depth:
            return self.matrices[n - 1]
        if self.is_infinite:
            return self.matrices[-1]
        raise DiagramError("level %d exceeds the %d levels of a finite diagram"
                           % (n, self.given_depth))

    def violations(self) -> list[Violation]:
        """All broken structural rules, shallowest first.  Never raises."""
        found: list[Violation] = []
        if not self.levels or self.levels[0] != 1:
            found.append(Violation("root", 0, None, "level 0 must hold exactly one vertex"))
        if len(self.levels) != len(self.matrices) + 1:
            found.append(Violation("shape", 0, None,
                                   "%d levels need %d matrices, got %d"
                                   % (len(self.levels), len(self.levels) - 1, len(self.matrices))))
            return found
        for n, m in enumerate(self.matrices, start=1):
            rows, cols = self.levels[n], self.levels[n - 1]
            if len(m) != rows or any(len(row) != cols for row in m):
                found.append(Violation("shape", n, None,
                                       "matrix %d must be %dx%d" % (n, rows, cols)))
                continue
            for i, row in enumerate(m):
                if any(cell < 0 for cell in row):
                    found.append(Violation("entry", n, i, "negative multiplicity in row %d" % i))
            for i, row in enumerate(m):
                if all(cell == 0 for cell in row):
                    found.append(Violation("zero-row", n, i,
                                           "vertex %d at level %d receives no edge" % (i, n)))
            for j in range(cols):
                if all(row[j] == 0 for row in m):
                    found.append(Violation("zero-column", n, j,
                                           "vertex %d at level %d emits no edge" % (j, n - 1)))
        if self.is_infinite:
            if not self.matrices:
                found.append(Violation("tail", 0, None, "a repeating tail needs a last matrix"))
            elif self.levels[-1] != self.levels[-2]:
                found.append(Violation("tail", len(self.matrices), None,
                                       "a repeating tail needs a square last matrix"))
        return found

    def check(self) -> "BratteliDiagram":
        problems = self.violations()
        if problems:
            v = problems[0]
            raise DiagramError("invalid diagram: %s" % v.message)
        return self

    def to_data(self) -> dict[str, object]:
        data: dict[str, object] = {}
        if self.name is not None:
            data["name"] = self.name
        data["levels"] = list(self.levels)
        data["matrices"] = [[list(row) for row in m] for m in self.matrices]
        data["tail"] = self.tail if self.tail else "none"
        return data

    @classmethod
    def from_data(cls, data) -> "BratteliDiagram":
        if not isinstance(data, dict):
            raise ValueError("diagram must be an object, got %r" % (data,))
        try:
            levels = list(data["levels"])
            matrices = list(data["matrices"])
        except (KeyError, TypeError) as exc:
            raise ValueError("diagram needs levels and matrices: %s" % exc) from None
        tail = data.get("tail")
        if tail in (None, "none", ""):
            tail = None
        name = data.get("name")
        if name is not None:
            name = str(name)
        return cls(tuple(levels), tuple(matrices), tail, name)


@dataclass(frozen=True)
class TowerProfile:
    """Heights, their gcds, and the multiplicity ratios, level by level.

    heights[n] is the path-count vector at level n; gcds[n] divides
    gcds[n+1]; ratios[n-1] = gcds[n] / gcds[n-1] for n >= 1.
    """

    heights: tuple[tuple[int, ...], ...]
    gcds: tuple[int, ...]
    ratios: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.heights) - 1

    def height(self, n: int) -> tuple[int, ...]:
        return self.heights[n]

    def gcd(self, n: int) -> int:
        return self.gcds[n]

    def ratio(self, n: int) -> int:
        """r_n = gcds[n] / gcds[n-1]; n >= 1."""
        if n < 1:
            raise ValueError("ratios start at level 1")
        return self.ratios[n - 1]


@dataclass(frozen=True)
class DimensionVector:
    """An integer vector attached to a diagram level."""

    stage: int
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))


@dataclass(frozen=True)
class MuResult:
    """A supernatural value plus how much of it is settled."""

    value: SupernaturalNumber
    exactness: str


@dataclass(frozen=True)
class Premorphism:
    """A level map plus connecting matrices from one diagram to another.

    level_map[n] is the target level assigned to source level n; it
    starts at 0 and never decreases.  matrices[n] connects source level
    n into target level level_map[n]; matrices[0] is the 1x1 identity.
    """

    level_map: tuple[int, ...]
    matrices: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "level_map", tuple(int(f) for f in self.level_map))
        object.__setattr__(self, "matrices", tuple(_as_matrix(m) for m in self.matrices))
        if not self.level_map or self.level_map[0] != 0:
            raise ValueError("level map must start at 0")
        if any(b < a for a, b in zip(self.level_map, self.level_map[1:])):
            raise ValueError("level map must be nondecreasing")
        if len(self.level_map) != len(self.matrices):
            raise ValueError("need one matrix per mapped level")
        if self.matrices[0] != ((1,),):
            raise ValueError("the level-0 matrix must be [[1]]")

    @property
    def depth(self) -> int:
        return len(self.level_map) - 1

    def to_data(self) -> dict[str, object]:
        return {
            "level_map": list(self.level_map),
            "matrices": [[list(row) for row in m] for m in self.matrices],
        }

    @classmethod
    def from_data(cls, data) -> "Premorphism":
        if not isinstance(data, dict):
            raise ValueError("premorphism must be an object, got %r" % (data,))
        try:
            return cls(tuple(data["level_map"]), tuple(data["matrices"]))
        except (KeyError, TypeError) as exc:
            raise ValueError("premorphism needs level_map and matrices: %s" % exc) from None


@dataclass(frozen=True)
class PremorphismReport:
    """Outcome of checking the commuting squares of a premorphism."""

    ok: bool
    level: Optional[int] = None
    kind: Optional[str] = None  # "shape" or "commutativity"


def _validated_depth(diagram: BratteliDiagram, depth: int) -> int:
    if isinstance(depth, bool) or not isinstance(depth, int) or depth < 0:
        raise DiagramError("depth must be a nonnegative integer, got %r" % (depth,))
    if not diagram.is_infinite and depth > diagram.given_depth:
        raise DiagramError("depth %d exceeds the %d levels of a finite diagram"
                           % (depth, diagram.given_depth))
    return depth


def tower_profile(diagram: BratteliDiagram, depth: int) -> TowerProfile:
    """Heights, gcds, and ratios down to `depth`."""
    diagram.check()
    depth = _validated_depth(diagram, depth)
    heights: list[tuple[int, ...]] = [(1,)]
    gcds = [1]
    ratios: list[int] = []
    for n in range(1, depth + 1):
        v = _mat_vec(diagram.matrix_at(n), heights[-1])
        h = math.gcd(*v)
        heights.append(v)
        ratios.append(h // gcds[-1])
        gcds.append(h)
    return TowerProfile(tuple(heights), tuple(gcds), tuple(ratios))


def _normalized_heights(profile: TowerProfile) -> list[tuple[int, ...]]:
    return [tuple(x // h for x in v) for v, h in zip(profile.heights, profile.gcds)]


def _find_tail_cycle(diagram: BratteliDiagram, profile: TowerProfile) -> Optional[tuple[int, int]]:
    """First revisit (s, t) of the normalized height vector inside the
    repeating-tail region, where the level dynamics are autonomous.

    A revisit proves the ratio sequence repeats with period t - s from
    level s + 1 onward.
    """
    if not diagram.is_infinite:
        return None
    window_start = max(diagram.given_depth - 1, 0)
    normalized = _normalized_heights(profile)
    seen: dict[tuple[int, ...], int] = {}
    for level in range(window_start, profile.depth + 1):
        c = normalized[level]
        if c in seen:
            return (seen[c], level)
        seen[c] = level
    return None


def maximal_uhf(diagram: BratteliDiagram, depth: int) -> MuResult:
    """The supernatural number of the maximal UHF subalgebra.

    The value is the product of the ratios r_1 ... r_depth.  It is
    certified exact when the diagram is finite and fully consumed
    (the algebra is finite-dimensional with a full matrix summand of
    size gcds[depth]) or when the repeating tail exhibits a ratio
    cycle, in which case every prime dividing the cycle product gets
    exponent OMEGA.  Anything else is a truncation.
    """
    profile = tower_profile(diagram, depth)
    truncation = SupernaturalNumber.from_int(profile.gcds[depth])
    if not diagram.is_infinite:
        if depth == diagram.given_depth:
            return MuResult(truncation, CERTIFIED)
        return MuResult(truncation, TRUNCATED)
    cycle = _find_tail_cycle(diagram, profile)
    if cycle is None:
        return MuResult(truncation, TRUNCATED)
    s, t = cycle
    cycle_product = 1
    for n in range(s + 1, t + 1):
        cycle_product *= profile.ratio(n)
    exps: dict[int, Exponent] = {p: e for p, e in truncation.items()}
    for p in factorize(cycle_product):
        exps[p] = OMEGA
    return MuResult(SupernaturalNumber(exps), CERTIFIED)


def odometer(diagram: BratteliDiagram, depth: int) -> BratteliDiagram:
    """The single-vertex diagram of the ratios r_1 ... r_depth.

    It describes the maximal UHF subalgebra's own tower.  The result
    keeps a repeating tail only when the ratio is provably constant
    from the last emitted level onward, which a length-1 cycle of the
    normalized height vector establishes.
    """
    profile = tower_profile(diagram, depth)
    tail = None
    cycle = _find_tail_cycle(diagram, profile)
    if cycle is not None and cycle[1] - cycle[0] == 1:
        tail = REPEAT_LAST
    if depth == 0:
        tail = None
    return BratteliDiagram(
        levels=(1,) * (depth + 1),
        matrices=tuple(((r,),) for r in profile.ratios),
        tail=tail,
    )


def uhf_diagram(number: SupernaturalNumber, stages: int) -> BratteliDiagram:
    """The canonical single-vertex diagram of the UHF algebra M_N.

    Stage j has size ell(j), so the matrices are the successive ratios
    ell(j) / ell(j-1).  The tail repeats exactly when the ratio has
    stabilized: past all finite exponents and all support primes the
    ratio is the product of the OMEGA primes forever.
    """
    if stages < 1:
        raise ValueError("stages must be >= 1, got %r" % (stages,))
    omega_product = 1
    horizon = 1
    for p, e in number.items():
        index = _prime_index(p)
        if e is OMEGA:
            omega_product *= p
            horizon = max(horizon, index + 1)
        else:
            horizon = max(horizon, index + 1, e + 1)
    ells = [1] + [number.ell(j) for j in range(1, max(stages, horizon) + 1)]
    ratios = [ells[j] // ells[j - 1] for j in range(1, len(ells))]
    stable = all(r == omega_product for r in ratios[stages - 1:horizon])
    return BratteliDiagram(
        levels=(1,) * (stages + 1),
        matrices=tuple(((r,),) for r in ratios[:stages]),
        tail=REPEAT_LAST if stable else None,
    )


def _prime_index(p: int) -> int:
    # 1-based position of a prime in the increasing prime sequence
    count = 8
    while True:
        primes = first_primes(count)
        if primes[-1] >= p:
            return primes.index(p) + 1
        count *= 2


def canonical_premorphism(diagram: BratteliDiagram, depth: int) -> Premorphism:
    """The premorphism from the odometer into the diagram.

    Level n of the odometer lands on level n of the diagram through the
    column of normalized heights, so each square commutes: multiplying
    the column at level n+1 by r_{n+1} equals M_{n+1} times the column
    at level n.
    """
    profile = tower_profile(diagram, depth)
    normalized = _normalized_heights(profile)
    matrices = tuple(tuple((c,) for c in column) for column in normalized)
    return Premorphism(tuple(range(depth + 1)), matrices)


def _interval_product(diagram: BratteliDiagram, a: int, b: int) -> Matrix:
    product = _identity(diagram.width_at(a))
    for n in range(a + 1, b + 1):
        product = _mat_mul(diagram.matrix_at(n), product)
    return product


def verify_premorphism(
    premorphism: Premorphism,
    source: BratteliDiagram,
    target: BratteliDiagram,
    depth: Optional[int] = None,
) -> PremorphismReport:
    """Check every commuting square the premorphism provides.

    Square n demands matrices[n+1] * E_{n+1} = S * matrices[n], where
    E_{n+1} is the source matrix into level n+1 and S is the product of
    target matrices from level level_map[n] to level_map[n+1].  Shape
    problems and failed equalities are reported separately, each with
    the first offending level.
    """
    source.check()
    target.check()
    if depth is None:
        depth = premorphism.depth
    depth = min(depth, premorphism.depth)
    for n in range(depth + 1):
        m = premorphism.matrices[n]
        rows, cols = target.width_at(premorphism.level_map[n]), source.width_at(n)
        if len(m) != rows or any(len(row) != cols for row in m):
            return PremorphismReport(False, n, "shape")
    for n in range(depth):
        lhs = _mat_mul(premorphism.matrices[n + 1], source.matrix_at(n + 1))
        bridge = _interval_product(target, premorphism.level_map[n], premorphism.level_map[n + 1])
        rhs = _mat_mul(bridge, premorphism.matrices[n])
        if lhs != rhs:
            return PremorphismReport(False, n, "commutativity")
    return PremorphismReport(True)


def k0_unit_divisor(diagram: BratteliDiagram, n: int, depth: int) -> Optional[DimensionVector]:
    """A stage witness that n divides the class of the unit.

    Returns the first stage s <= depth where n divides the height gcd,
    together with heights/n, or None when no stage works within depth.
    """
    if n < 1:
        raise ValueError("divisor must be a positive integer, got %r" % (n,))
    profile = tower_profile(diagram, depth)
    for s in range(depth + 1):
        if profile.gcds[s] % n == 0:
            return DimensionVector(s, tuple(x // n for x in profile.heights[s]))
    return None


def uhf_embeds(number: SupernaturalNumber, diagram: BratteliDiagram, depth: int) -> str:
    """Whether M_number embeds unitally, per the invariant at `depth`.

    "yes" is exact: the truncation only ever grows.  A negative answer
    is "no-certified" when the invariant is certified and
    "no-within-depth" otherwise.
    """
    result = maximal_uhf(diagram, depth)
    if number.divides(result.value):
        return "yes"
    return "no-certified" if result.exactness == CERTIFIED else "no-within-depth"


def _push_vector(diagram: BratteliDiagram, entries: tuple[int, ...], stage: int, to_stage: int) -> tuple[int, ...]:
    v = entries
    for n in range(stage + 1, to_stage + 1):
        v = _mat_vec(diagram.matrix_at(n), v)
    return v


def _check_stage_vector(diagram: BratteliDiagram, entries: Sequence[int], stage: int, depth: int) -> tuple[int, ...]:
    if stage < 0 or stage > depth:
        raise DiagramError("stage %d outside 0..%d" % (stage, depth))
    entries = tuple(int(e) for e in entries)
    if len(entries) != diagram.width_at(stage):
        raise DiagramError("vector length %d does not match the %d vertices at level %d"
                           % (len(entries), diagram.width_at(stage), stage))
    return entries


def rational_subgroup_witness(
    diagram: BratteliDiagram, entries: Sequence[int], stage: int, depth: int
) -> Optional[tuple[Fraction, int]]:
    """Search for a stage where the pushed vector is a rational multiple
    of the height vector.

    Such a multiple lambda = q/m witnesses m*g = q*[unit] in K0, so g
    lies in the rational subgroup of the unit.  Returns (lambda, stage)
    at the first hit, or None if no stage up to `depth` works; absence
    within depth is not a certificate.
    """
    diagram.check()
    _validated_depth(diagram, depth)
    entries = _check_stage_vector(diagram, entries, stage, depth)
    profile = tower_profile(diagram, depth)
    v = entries
    for s in range(stage, depth + 1):
        if s > stage:
            v = _mat_vec(diagram.matrix_at(s), v)
        ref = profile.heights[s]
        if all(v[i] * ref[0] == v[0] * ref[i] for i in range(len(v))):
            return (Fraction(v[0], ref[0]), s)
    return None


def scale_unit_stage(diagram: BratteliDiagram, x: Fraction, depth: int) -> DimensionVector:
    """Represent x * [unit] as a concrete stage vector.

    x must lie in the rational group of the invariant at `depth`; the
    result appears at the first stage whose height gcd absorbs the
    denominator, as x times the height vector there.
    """
    x = Fraction(x)
    profile = tower_profile(diagram, depth)
    invariant = maximal_uhf(diagram, depth)
    if not invariant.value.contains(x):
        raise ValueError("%s lies outside the rational group of the invariant" % (x,))
    for s in range(depth + 1):
        if profile.gcds[s] % x.denominator == 0:
            return DimensionVector(s, tuple(h * x.numerator // x.denominator for h in profile.heights[s]))
    raise DiagramError("denominator of %s not yet divisible at depth %d" % (x, depth))


def divide_element(
    diagram: BratteliDiagram, entries: Sequence[int], stage: int, m: int, depth: int
) -> Optional[DimensionVector]:
    """Divide a nonnegative stage vector by m inside the dimension group.

    Pushing forward never destroys divisibility, so the first stage
    s <= depth where every entry divides by m gives the witness y with
    m*y = g.  None means no stage within depth worked.
    """
    if m < 1:
        raise ValueError("divisor must be a positive integer, got %r" % (m,))
    diagram.check()
    _validated_depth(diagram, depth)
    entries = _check_stage_vector(diagram, entries, stage, depth)
    if any(e < 0 for e in entries):
        raise ValueError("entries must be nonnegative")
    v = entries
    for s in range(stage, depth + 1):
        if s > stage:
            v = _mat_vec(diagram.matrix_at(s), v)
        if all(e % m == 0 for e in v):
            return DimensionVector(s, tuple(e // m for e in v))
    return None


def telescope(diagram: BratteliDiagram, cut_points: Sequence[int]) -> BratteliDiagram:
    """Compose the multiplicity matrices between consecutive cut points.

    The cuts must be strictly increasing levels past 0.  The telescoped
    diagram has the same path-count data at the surviving levels, hence
    the same invariant.  A repeating tail survives when the final
    segment lies entirely inside the repeating region: the new last
    matrix is a power of the old tail matrix and repeating it continues
    the original diagram in equal chunks.
    """
    diagram.check()
    cuts = tuple(int(c) for c in cut_points)
    if not cuts:
        raise ValueError("at least one cut point is required")
    if cuts[0] < 1 or any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise ValueError("cut points must be strictly increasing and >= 1, got %r" % (cut_points,))
    if not diagram.is_infinite and cuts[-1] > diagram.given_depth:
        raise DiagramError("cut %d exceeds the %d levels of a finite diagram"
                           % (cuts[-1], diagram.given_depth))
    bounds = (0,) + cuts
    matrices = tuple(_interval_product(diagram, a, b) for a, b in zip(bounds, bounds[1:]))
    levels = (1,) + tuple(diagram.width_at(c) for c in cuts)
    tail = None
    if diagram.is_infinite and bounds[-2] >= diagram.given_depth - 1:
        tail = REPEAT_LAST
    return BratteliDiagram(levels, matrices, tail)
