"""Monomial curves with a torus action, and their equivariant submodules.

The ambient object is C[x, y]/I for a monomial ideal I, with the torus
acting through integer weights wx > 0 > wy on x and y.  Standard monomials
(those outside I) form a basis; the multiplicity of a weight w is the
number of standard monomials on the line a*wx + b*wy = w, and for a
nonzero ideal that count is finite and eventually constant on both sides.

Submodules considered here are the monomial ones whose generators live in
a prescribed finite set of negative weights; together they form a finite
lattice once the generating set of available monomials is finite.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import DMinus, HilbertFunction, Weight, hf_sub
from .errors import DomainError, InvariantViolation, ValidationError


@dataclass(frozen=True, order=True)
class Monomial:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValidationError(f"monomial exponents must be nonnegative, got {self.as_pair}")

    @property
    def as_pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    def divides(self, other: "Monomial") -> bool:
        return self.a <= other.a and self.b <= other.b

    def weight(self, wx: int, wy: int) -> Weight:
        return self.a * wx + self.b * wy

    def __str__(self):
        return f"x^{self.a} y^{self.b}"


def _as_monomial(m) -> Monomial:
    if isinstance(m, Monomial):
        return m
    a, b = m
    return Monomial(int(a), int(b))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal, stored through its unique minimal generating set."""

    gens: tuple[Monomial, ...]

    @staticmethod
    def of(monomials: Iterable) -> "MonomialIdeal":
        ms = sorted({_as_monomial(m) for m in monomials})
        minimal = tuple(m for m in ms
                        if not any(o != m and o.divides(m) for o in ms))
        return MonomialIdeal(minimal)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)


# ---------------------------------------------------------------------------
# weight census
#
# Any standard monomial (a, b) falls into one of two finite families:
# rows b < bmin (no ideal generator reaches them, so the whole row is
# standard) and the box b >= bmin, a < acap, where acap is the staircase
# cutoff min{g.a : g.b <= bmin}.  On a fixed weight line each family
# contributes at most one exponent pair per row/column index, so counting
# is a short loop, valid for every weight.


def _census_bounds(ideal: MonomialIdeal) -> tuple[int, int]:
    bmin = min(g.b for g in ideal.gens)
    acap = min(g.a for g in ideal.gens if g.b <= bmin)
    return bmin, acap


def _census(ideal: MonomialIdeal, wx: int, wy: int, w: Weight,
            member: Callable[[Monomial], bool]) -> int:
    bmin, acap = _census_bounds(ideal)
    n = 0
    for b in range(bmin):
        num = w - b * wy
        if num >= 0 and num % wx == 0 and member(Monomial(num // wx, b)):
            n += 1
    for a in range(acap):
        num = a * wx - w
        if num >= 0 and num % (-wy) == 0:
            b = num // (-wy)
            if b >= bmin and member(Monomial(a, b)):
                n += 1
    return n


def _monomials_at(ideal: MonomialIdeal, wx: int, wy: int, w: Weight,
                  member: Callable[[Monomial], bool]) -> list[Monomial]:
    bmin, acap = _census_bounds(ideal)
    found = []
    for b in range(bmin):
        num = w - b * wy
        if num >= 0 and num % wx == 0:
            m = Monomial(num // wx, b)
            if member(m):
                found.append(m)
    for a in range(acap):
        num = a * wx - w
        if num >= 0 and num % (-wy) == 0:
            b = num // (-wy)
            if b >= bmin:
                m = Monomial(a, b)
                if member(m):
                    found.append(m)
    return sorted(found)


def _hilbert_from_census(ideal: MonomialIdeal, wx: int, wy: int,
                         member: Callable[[Monomial], bool],
                         extra_a: int = 0, extra_b: int = 0) -> HilbertFunction:
    """Count members per weight and certify both constant tails.

    Beyond wx * Amax on the right (and symmetrically on the left) the count
    is periodic with period wx (resp. -wy), because membership of the
    surviving family depends only on the row (resp. column) index.  A
    constant tail therefore only needs the count to agree across one full
    period; if it does not, the Hilbert function is not representable here
    and the input is rejected with the offending weight.
    """
    amax = max([g.a for g in ideal.gens] + [extra_a, 1])
    bmax = max([g.b for g in ideal.gens] + [extra_b, 1])
    r0 = wx * amax
    l0 = wy * bmax
    count = lambda w: _census(ideal, wx, wy, w, member)
    right_value = count(r0)
    for w in range(r0, r0 + wx + 1):
        if count(w) != right_value:
            raise ValidationError(
                f"multiplicities do not settle to a constant on the right:"
                f" weight {w} has {count(w)}, weight {r0} has {right_value}")
    left_value = count(l0)
    for w in range(l0 - (-wy), l0 + 1):
        if count(w) != left_value:
            raise ValidationError(
                f"multiplicities do not settle to a constant on the left:"
                f" weight {w} has {count(w)}, weight {l0} has {left_value}")
    middle = {w: count(w) for w in range(l0, r0 + 1)}
    return HilbertFunction.make(middle, left_value, l0, right_value, r0)


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class ConstellationModel:
    """C[x, y]/I with torus weights (wx, wy) and its cached Hilbert function."""

    ideal: MonomialIdeal
    wx: int
    wy: int
    hilbert: HilbertFunction

    def weight_of(self, m: Monomial) -> Weight:
        return m.weight(self.wx, self.wy)

    def is_standard(self, m: Monomial) -> bool:
        return not self.ideal.contains(m)


def build_model(ideal_gens: Iterable, weights: tuple[int, int] = (1, -1)) -> ConstellationModel:
    wx, wy = weights
    if not (wx > 0 > wy):
        raise ValidationError(f"weights must satisfy wx > 0 > wy, got ({wx}, {wy})")
    ideal = MonomialIdeal.of(ideal_gens)
    if ideal.is_zero:
        # every (k*(-wy), k*wx) is standard of weight 0, so the
        # multiplicity there is already infinite
        raise ValidationError("zero ideal: weight 0 has infinite multiplicity")
    if ideal.contains(Monomial(0, 0)):
        raise ValidationError("unit ideal: the quotient ring is zero")
    h = _hilbert_from_census(ideal, wx, wy, lambda m: not ideal.contains(m))
    return ConstellationModel(ideal, wx, wy, h)


def model_hf(model: ConstellationModel) -> HilbertFunction:
    return model.hilbert


def standard_monomials_of_weight(model: ConstellationModel, w: Weight) -> list[Monomial]:
    return _monomials_at(model.ideal, model.wx, model.wy, w, model.is_standard)


# ---------------------------------------------------------------------------
# submodules


@dataclass(frozen=True)
class Submodule:
    """A monomial submodule, generated in negative weights, of the full module.

    gens is the unique minimal generating set; the Hilbert function of the
    span (all standard monomials divisible by some generator) is cached.
    """

    model: ConstellationModel
    gens: tuple[Monomial, ...]
    hilbert: HilbertFunction

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_full(self) -> bool:
        return self.gens == (Monomial(0, 0),)

    def contains_monomial(self, m: Monomial) -> bool:
        return self.model.is_standard(m) and any(g.divides(m) for g in self.gens)

    def contains(self, other: "Submodule") -> bool:
        return all(self.contains_monomial(g) for g in other.gens)

    def gen_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(g.as_pair for g in self.gens)

    def __str__(self):
        return "0" if self.is_zero else "<" + ", ".join(map(str, self.gens)) + ">"


def submodule_from_generators(model: ConstellationModel, gens: Iterable,
                              dminus: DMinus) -> Submodule:
    """Span of the given standard monomials; generators must sit in D_-.

    Redundant generators (divisible by another one) are dropped, so the
    stored generating set is minimal.
    """
    ms = sorted({_as_monomial(g) for g in gens})
    for m in ms:
        if model.ideal.contains(m):
            raise ValidationError(f"generator {m} vanishes in the quotient ring")
        w = model.weight_of(m)
        if w not in dminus:
            raise ValidationError(f"generator {m} has weight {w}, which is not in D_-")
    minimal = MonomialIdeal.of(ms).gens
    if not minimal:
        return Submodule(model, (), HilbertFunction.constant(0))
    member = lambda m: model.is_standard(m) and any(g.divides(m) for g in minimal)
    h = _hilbert_from_census(model.ideal, model.wx, model.wy, member,
                             extra_a=max(g.a for g in minimal),
                             extra_b=max(g.b for g in minimal))
    return Submodule(model, minimal, h)


def quotient_hf(model: ConstellationModel, inner: Submodule, outer: Submodule) -> HilbertFunction:
    """Hilbert function of outer/inner; requires inner to sit inside outer."""
    if not outer.contains(inner):
        raise DomainError(f"{inner} is not contained in {outer}")
    return hf_sub(outer.hilbert, inner.hilbert)


# ---------------------------------------------------------------------------
# the submodule lattice

MAX_GENERATOR_POOL = 14


@dataclass(frozen=True)
class SubmoduleLattice:
    """All monomial submodules generated in D_-, zero and full included.

    elements are sorted by (dimension over D_-, generator list); the
    inclusion relation is precomputed.
    """

    model: ConstellationModel
    dminus: DMinus
    elements: tuple[Submodule, ...]
    order: tuple[tuple[bool, ...], ...]

    def index(self, sub: Submodule) -> int:
        for i, e in enumerate(self.elements):
            if e.gens == sub.gens:
                return i
        raise DomainError(f"{sub} is not a lattice element")

    def leq(self, inner: Submodule, outer: Submodule) -> bool:
        return self.order[self.index(inner)][self.index(outer)]

    @property
    def zero(self) -> Submodule:
        return self.elements[0]

    @property
    def full(self) -> Submodule:
        for e in self.elements:
            if e.is_full:
                return e
        raise InvariantViolation("lattice lost the full module")

    def proper_nonzero(self) -> tuple[Submodule, ...]:
        return tuple(e for e in self.elements if not e.is_zero and not e.is_full)

    def r(self, sub: Submodule) -> int:
        return sum(sub.hilbert.value(w) for w in self.dminus)


def enumerate_lattice(model: ConstellationModel, dminus: DMinus) -> SubmoduleLattice:
    if 0 not in dminus:
        raise ValidationError(
            "the full module is generated at weight 0, so D_- must contain 0")
    pool: list[Monomial] = []
    for w in dminus:
        pool.extend(standard_monomials_of_weight(model, w))
    pool = sorted(set(pool))
    if len(pool) > MAX_GENERATOR_POOL:
        raise ValidationError(
            f"{len(pool)} candidate generators in D_-; lattice enumeration is"
            f" capped at {MAX_GENERATOR_POOL}")
    seen: dict[tuple[Monomial, ...], Submodule] = {}
    for k in range(len(pool) + 1):
        for combo in itertools.combinations(pool, k):
            key = MonomialIdeal.of(combo).gens
            if key not in seen:
                seen[key] = submodule_from_generators(model, key, dminus)
    def rank(s: Submodule) -> int:
        return sum(s.hilbert.value(w) for w in dminus)
    elements = tuple(sorted(seen.values(), key=lambda s: (rank(s), s.gens)))
    order = tuple(tuple(outer.contains(inner) for outer in elements)
                  for inner in elements)
    for i, inner in enumerate(elements):
        for j, outer in enumerate(elements):
            if order[i][j] and inner.gens != outer.gens and rank(inner) >= rank(outer):
                raise InvariantViolation(
                    f"nested distinct submodules {inner} in {outer} without"
                    f" a strict jump in dimension over D_-")
    return SubmoduleLattice(model, dminus, elements, order)


# ---------------------------------------------------------------------------
# randomized probe for non-monomial generators
#
# The lattice above only sees monomial submodules.  As a sanity check (not
# a proof) that this loses nothing, the probe below takes random linear
# combinations of same-weight standard monomials, closes them under
# multiplication by x and y up to an exponent cutoff, measures graded
# dimensions by exact Gaussian elimination, and looks for a monomial
# lattice element with the same counts on the inspected weight window.


@dataclass(frozen=True)
class ProbeRecord:
    weight: Weight
    combination: tuple[tuple[tuple[int, int], Fraction], ...]
    dims: tuple[tuple[Weight, int], ...]
    matched_gens: tuple[tuple[int, int], ...] | None


def _rank(rows: list[dict[Monomial, Fraction]]) -> int:
    rank = 0
    rows = [dict(r) for r in rows if r]
    while rows:
        pivot_mon = min(min(r) for r in rows)
        with_pivot = [r for r in rows if pivot_mon in r]
        rest = [r for r in rows if pivot_mon not in r]
        lead = with_pivot[0]
        rank += 1
        for r in with_pivot[1:]:
            c = r[pivot_mon] / lead[pivot_mon]
            for m, v in lead.items():
                nv = r.get(m, Fraction(0)) - c * v
                if nv == 0:
                    r.pop(m, None)
                else:
                    r[m] = nv
            if r:
                rest.append(r)
        rows = rest
    return rank


def nonmonomial_slope_probe(model: ConstellationModel, lattice: SubmoduleLattice,
                            trials: int = 12, seed: int = 0) -> list[ProbeRecord]:
    rng = random.Random(seed)
    dminus = lattice.dminus
    groups = {w: standard_monomials_of_weight(model, w) for w in dminus}
    crowded = [w for w, ms in groups.items() if len(ms) >= 2]
    if not crowded:
        return []
    bmin, acap = _census_bounds(model.ideal)
    lo = model.wy * (max(g.b for g in model.ideal.gens) + 1)
    hi = model.wx * (max(g.a for g in model.ideal.gens) + 1)
    window = range(lo, hi + 1)
    cutoff = (acap + bmin + (hi - lo) + 8) * max(model.wx, -model.wy)
    records = []
    for _ in range(trials):
        w0 = rng.choice(crowded)
        pair = rng.sample(groups[w0], 2)
        vec = {m: Fraction(rng.choice([1, 2, 3, -1])) for m in pair}
        by_weight: dict[Weight, list[dict[Monomial, Fraction]]] = {}
        for i in range(cutoff):
            for j in range(cutoff):
                image = {}
                for m, c in vec.items():
                    shifted = Monomial(m.a + i, m.b + j)
                    if model.is_standard(shifted):
                        image[shifted] = c
                if image:
                    wt = w0 + i * model.wx + j * model.wy
                    if lo <= wt <= hi:
                        by_weight.setdefault(wt, []).append(image)
        dims = {w: _rank(by_weight.get(w, [])) for w in window}
        matched = None
        for elem in lattice.elements:
            if all(elem.hilbert.value(w) == dims[w] for w in window):
                matched = elem.gen_pairs()
                break
        records.append(ProbeRecord(w0,
                                   tuple(sorted((m.as_pair, c) for m, c in vec.items())),
                                   tuple(sorted(dims.items())),
                                   matched))
    return records
