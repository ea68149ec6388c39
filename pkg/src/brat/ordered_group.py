"""Ordered abelian groups with order unit, and unit divisibility.

Two presentations are supported.

* Cyclic: the integers ordered by the numerical semigroup generated by
  a finite set of positive integers, with a chosen unit inside the
  semigroup.  These model K0 of certain unital algebras whose positive
  cone can fail to be all of the nonnegative integers.

* Quadratic irrational: Q(N) + sqrt(d) * Z inside the reals, ordered by
  the real order, where Q(N) is the rational group of a supernatural
  number N and d >= 2 is square-free.  All arithmetic is exact; signs
  of q + z*sqrt(d) are decided by integer comparisons, never floats.

An integer n divides the unit u when n*x = u for some positive x in the
group.  The central computation is the maximum supernatural number
whose finite divisors all divide the unit.  It exists exactly when
coprime divisors of the unit always compose, which the cyclic
presentation can fail (the semigroup generated by 2 and 3 with unit 6
divides by 2 and by 3 but not by 6) and the quadratic presentation
never does, being weakly unperforated.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional, Union

from .primes import factorize, valuation
from .supernatural import OMEGA, Exponent, SupernaturalNumber

QNRational = Fraction


@lru_cache(maxsize=256)
def _residue_minima(gens: tuple[int, ...]) -> tuple[int, ...]:
    # smallest member of the semigroup in each residue class mod gens[0],
    # by shortest paths on the residue graph; gcd(gens) == 1 is assumed,
    # so every class is reached
    a = gens[0]
    minima = [0] + [-1] * (a - 1)
    frontier = [(0, 0)]
    while frontier:
        value, residue = heapq.heappop(frontier)
        if minima[residue] != -1 and value > minima[residue]:
            continue
        for g in gens[1:]:
            nxt = value + g
            r = nxt % a
            if minima[r] == -1 or nxt < minima[r]:
                minima[r] = nxt
                heapq.heappush(frontier, (nxt, r))
    return tuple(minima)


def semigroup_member(generators: tuple[int, ...], x: int) -> bool:
    """Whether x is a nonnegative integer combination of the generators.

    Negative x is never a member.  After reducing by the gcd, membership
    is read off the minimal semigroup member in each residue class
    modulo the smallest generator, which makes the test exact at any
    magnitude.
    """
    gens = sorted(set(generators))
    if not gens or any(g < 1 for g in gens):
        raise ValueError("generators must be positive integers, got %r" % (generators,))
    if x < 0:
        return False
    if x == 0:
        return True
    g = math.gcd(*gens) if len(gens) > 1 else gens[0]
    if x % g:
        return False
    x //= g
    gens = [a // g for a in gens]
    if gens[0] == 1:
        return True
    minima = _residue_minima(tuple(gens))
    return x >= minima[x % gens[0]]


@dataclass(frozen=True)
class CyclicOrderedGroup:
    """The integers with the cone generated by `generators`, unit inside."""

    generators: tuple[int, ...]
    unit: int

    def __post_init__(self):
        gens = tuple(sorted(set(int(g) for g in self.generators)))
        if not gens or gens[0] < 1:
            raise ValueError("generators must be positive integers, got %r" % (self.generators,))
        object.__setattr__(self, "generators", gens)
        if self.unit < 1 or not semigroup_member(gens, self.unit):
            raise ValueError("unit %r is not in the positive cone" % (self.unit,))


@dataclass(frozen=True)
class QuadraticElement:
    """The real number q + z*sqrt(d), with d carried by the group."""

    q: Fraction
    z: int

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        if isinstance(self.z, bool) or not isinstance(self.z, int):
            raise ValueError("integer coefficient expected, got %r" % (self.z,))

    def to_data(self) -> dict[str, object]:
        return {"k": str(self.q), "z": self.z}

    @classmethod
    def from_data(cls, data) -> "QuadraticElement":
        try:
            return cls(Fraction(str(data["k"])), int(data["z"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError("bad quadratic element %r: %s" % (data, exc)) from None


def quadratic_sign(q: Fraction, z: int, d: int) -> int:
    """Exact sign of q + z*sqrt(d) for square-free d >= 2.

    When q and z disagree in sign the comparison reduces to q*q versus
    d*z*z, flipped by the sign of z; equality cannot occur because
    sqrt(d) is irrational.
    """
    if z == 0:
        return (q > 0) - (q < 0)
    if q == 0:
        return 1 if z > 0 else -1
    if q > 0 and z > 0:
        return 1
    if q < 0 and z < 0:
        return -1
    lhs, rhs = q * q, d * z * z
    if z > 0:
        return 1 if rhs > lhs else -1
    return 1 if lhs > rhs else -1


def _is_squarefree(d: int) -> bool:
    return all(e == 1 for e in factorize(d).values())


@dataclass(frozen=True)
class QuadraticIrrationalGroup:
    """Q(h_number) + sqrt(alpha_square) * Z with the real-line order."""

    h_number: SupernaturalNumber
    alpha_square: int
    unit: QuadraticElement

    def __post_init__(self):
        if self.alpha_square < 2 or not _is_squarefree(self.alpha_square):
            raise ValueError("alpha_square must be square-free and >= 2, got %r" % (self.alpha_square,))
        if self.unit.q == 0:
            raise ValueError("unit must have a nonzero rational part")
        if not self.h_number.contains(self.unit.q):
            raise ValueError("unit rational part %s lies outside Q(h)" % (self.unit.q,))
        if quadratic_sign(self.unit.q, self.unit.z, self.alpha_square) <= 0:
            return_value = "unit %s + %s*sqrt(%d) is not positive" % (self.unit.q, self.unit.z, self.alpha_square)
            raise ValueError(return_value)

    def sign(self, element: QuadraticElement) -> int:
        return quadratic_sign(element.q, element.z, self.alpha_square)

    def is_member(self, element: QuadraticElement) -> bool:
        return self.h_number.contains(element.q)


OrderedGroup = Union[CyclicOrderedGroup, QuadraticIrrationalGroup]
GroupElement = Union[int, QuadraticElement]


def unit_divisor(group: OrderedGroup, n: int) -> Optional[GroupElement]:
    """A positive witness x with n*x = unit, or None.

    Cyclic: x = unit/n must be an integer in the cone.  Quadratic:
    both coordinates of the unit must divide by n inside the group,
    and the quotient is automatically positive.
    """
    if n < 1:
        raise ValueError("divisor must be a positive integer, got %r" % (n,))
    if isinstance(group, CyclicOrderedGroup):
        if group.unit % n:
            return None
        x = group.unit // n
        return x if semigroup_member(group.generators, x) else None
    q, z = group.unit.q, group.unit.z
    if z % n:
        return None
    candidate = QuadraticElement(q / n, z // n)
    if not group.h_number.contains(candidate.q):
        return None
    if group.sign(candidate) <= 0:
        return None
    return candidate


@dataclass(frozen=True)
class DivisorClosureReport:
    """Outcome of the coprime-composition check on unit divisors."""

    holds: bool
    counterexample: Optional[tuple[int, int]] = None


def coprime_divisor_property(group: OrderedGroup) -> DivisorClosureReport:
    """Check that coprime unit divisors compose.

    Whenever coprime n and m both divide the unit, n*m must too; this
    is exactly the condition for a maximum supernatural divisor to
    exist.  Cyclic groups are searched exhaustively over integer
    divisors of the unit, in increasing (n, m) order, and the first
    failing pair is reported.  Quadratic groups are weakly
    unperforated, where the property always holds, so no search runs.
    """
    if isinstance(group, QuadraticIrrationalGroup):
        return DivisorClosureReport(True)
    if semigroup_member(group.generators, 1):
        # full nonnegative cone: n | u is plain integer divisibility,
        # which composes over coprime factors unconditionally
        return DivisorClosureReport(True)
    u = group.unit
    divisors = [n for n in range(1, u + 1) if u % n == 0 and unit_divisor(group, n) is not None]
    for n, m in combinations(divisors, 2):
        if math.gcd(n, m) == 1 and unit_divisor(group, n * m) is None:
            return DivisorClosureReport(False, (n, m))
    return DivisorClosureReport(True)


def _rational_valuation(x: Fraction, p: int) -> int:
    # p-adic valuation of a nonzero rational
    return valuation(x.numerator, p) - valuation(x.denominator, p)


def max_supernatural(group: OrderedGroup) -> Optional[SupernaturalNumber]:
    """The maximum supernatural number all of whose finite divisors
    divide the unit, or None when coprime divisors fail to compose.

    Exponent of p = sup of k with p**k dividing the unit.  Cyclic
    groups scan prime powers of the unit directly.  Quadratic groups
    admit a closed form: with unit q + z*sqrt(d), the p-exponent is
    capped by the valuation of z when z is nonzero, and is infinite
    exactly when z = 0 and the rational group already has an infinite
    p-exponent.
    """
    report = coprime_divisor_property(group)
    if not report.holds:
        return None
    exps: dict[int, Exponent] = {}
    if isinstance(group, CyclicOrderedGroup):
        for p, cap in factorize(group.unit).items():
            k = 0
            while k < cap and unit_divisor(group, p ** (k + 1)) is not None:
                k += 1
            if k:
                exps[p] = k
        return SupernaturalNumber(exps)
    q, z = group.unit.q, group.unit.z
    if z == 0:
        support = set(group.h_number.primes) | set(factorize(q.numerator).keys())
        for p in support:
            e = group.h_number.exponent(p)
            if e is OMEGA:
                exps[p] = OMEGA
            else:
                k = _rational_valuation(q, p) + e
                if k > 0:
                    exps[p] = k
    else:
        for p, vz in factorize(abs(z)).items():
            e = group.h_number.exponent(p)
            k = vz if e is OMEGA else min(vz, _rational_valuation(q, p) + e)
            if k > 0:
                exps[p] = k
    return SupernaturalNumber(exps)


def rational_subgroup_member(
    group: OrderedGroup, element: GroupElement
) -> Optional[tuple[int, int]]:
    """Membership of `element` in the rational subgroup of the unit.

    An element g belongs when m*g = q*unit for some positive integer m
    and integer q; the reduced witness (m, q) is returned.  Every
    integer belongs in the cyclic presentation.  In the quadratic
    presentation g = h + w*sqrt(d) belongs exactly when the irrational
    coordinates match the rational ones, that is w * unit.q = h * unit.z.
    """
    if isinstance(group, CyclicOrderedGroup):
        g = int(element)
        if g == 0:
            return (1, 0)
        d = math.gcd(abs(g), group.unit)
        return (group.unit // d, g // d)
    if not isinstance(element, QuadraticElement):
        raise ValueError("quadratic group element expected, got %r" % (element,))
    if not group.is_member(element):
        raise ValueError("element %r lies outside the group" % (element,))
    h, w = element.q, element.z
    if w * group.unit.q != h * group.unit.z:
        return None
    ratio = h / group.unit.q
    if ratio.numerator * group.unit.z != w * ratio.denominator:
        return None
    return (ratio.denominator, ratio.numerator)


def is_unperforated(group: OrderedGroup) -> bool:
    """Weak unperforation.  A cyclic cone is unperforated exactly when
    it is all of the nonnegative integers; quadratic groups always are."""
    if isinstance(group, QuadraticIrrationalGroup):
        return True
    return semigroup_member(group.generators, 1)


def scale_unit(group: CyclicOrderedGroup, x: Fraction) -> int:
    """The image of a rational x under the order isomorphism sending
    Q(max_supernatural(group)) onto the rational subgroup of the unit;
    concretely x * unit, an integer whenever x is admissible.

    Only available for the full nonnegative cone, where the group is a
    dimension group and the isomorphism is valid.
    """
    if not isinstance(group, CyclicOrderedGroup) or not is_unperforated(group):
        raise ValueError("unsupported: the unit-scaling map needs the full nonnegative cone")
    x = Fraction(x)
    divisor = max_supernatural(group)
    assert divisor is not None
    if not divisor.contains(x):
        raise ValueError("%s lies outside the rational group of the unit" % (x,))
    value = x * group.unit
    return int(value)


def representable_with_denominator(m: int, q: int, p: int) -> bool:
    """Whether the reduced ratio q/m can be rewritten with denominator
    dividing p, i.e. whether p*q/m is an integer.

    With (m, q) a rational-subgroup witness for g, this decides whether
    g is the image of some fraction with denominator p under the
    unit-scaling map.
    """
    if m < 1 or p < 1:
        raise ValueError("m and p must be positive integers")
    return (p * q) % m == 0
