"""Canonical filtrations and their polygons.

Both filtrations are built greedily from the maximal destabilizer: the
lattice element maximising the factor slope above the current term, with
ties broken by the pointwise-largest Hilbert function.  Strictly dropping
factor slopes give the unique slope-decreasing filtration; constant-slope
refinements with no intermediate equal-slope element give composition
chains, which are not unique, though their graded pieces are.

A filtration draws as a concave polygon: x is the dimension in negative
weights, y accumulates factor slope times factor dimension.  Distances
between polygons are sup-norm distances of the piecewise-linear graphs,
computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .core import DMinus, HilbertFunction, StabilityFunction, hf_compare, hf_sub, r_of
from .errors import DomainError, InvariantViolation, ValidationError
from .scheme import ConstellationModel, Submodule, SubmoduleLattice, enumerate_lattice
from .stability import (DWindow, epsilon0, find_D_for_epsilon, mu_D, mu_theta,
                        validate_window)


# ---------------------------------------------------------------------------
# slope evaluators


@dataclass(frozen=True)
class ThetaSlope:
    theta: StabilityFunction

    @property
    def dminus(self) -> DMinus:
        return DMinus.from_theta(self.theta)

    def of(self, hf: HilbertFunction) -> Fraction:
        return mu_theta(hf, self.theta, self.dminus)

    def label(self) -> str:
        return "theta"


@dataclass(frozen=True)
class DSlope:
    theta: StabilityFunction
    h: HilbertFunction
    window: DWindow

    @property
    def dminus(self) -> DMinus:
        return DMinus.from_theta(self.theta)

    def of(self, hf: HilbertFunction) -> Fraction:
        return mu_D(hf, self.theta, self.h, self.window)

    def label(self) -> str:
        return f"D{self.window.label()}"


SlopeKind = Union[ThetaSlope, DSlope]


# ---------------------------------------------------------------------------
# filtrations


@dataclass(frozen=True)
class Filtration:
    """A strictly increasing chain of submodules above a fixed bottom.

    terms excludes the bottom and ends at the top of the segment (for the
    canonical filtrations: bottom zero, top the full module).  length
    counts nodes including the bottom.
    """

    slope: SlopeKind
    bottom: Submodule
    terms: tuple[Submodule, ...]

    def __post_init__(self):
        if not self.terms:
            raise DomainError("a filtration needs at least one term")
        prev = self.bottom
        for t in self.terms:
            if t.gens == prev.gens or not t.contains(prev):
                raise DomainError(f"filtration is not strictly increasing at {t}")
            prev = t

    @property
    def length(self) -> int:
        return len(self.terms) + 1

    @property
    def top(self) -> Submodule:
        return self.terms[-1]

    def nodes(self) -> tuple[Submodule, ...]:
        return (self.bottom,) + self.terms

    def term_slopes(self) -> tuple[Fraction, ...]:
        return tuple(self.slope.of(hf_sub(t.hilbert, self.bottom.hilbert))
                     for t in self.terms)

    def factor_slopes(self) -> tuple[Fraction, ...]:
        nodes = self.nodes()
        return tuple(self.slope.of(hf_sub(b.hilbert, a.hilbert))
                     for a, b in zip(nodes, nodes[1:]))

    def term_gens(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        return tuple(t.gen_pairs() for t in self.terms)


def max_destabilizer(lattice: SubmoduleLattice, slope: SlopeKind,
                     above: Submodule) -> Submodule:
    """The slope-maximal lattice element strictly containing `above`.

    Among elements realising the maximal factor slope, the one with the
    pointwise-largest Hilbert function is returned; the choice is
    re-verified to contain every other maximizer.  Returns the full module
    exactly when everything above is semistable.
    """
    i = lattice.index(above)
    if above.is_full:
        raise DomainError("nothing lies strictly above the full module")
    scored = []
    for j, cand in enumerate(lattice.elements):
        if j != i and lattice.order[i][j]:
            factor = hf_sub(cand.hilbert, above.hilbert)
            scored.append((slope.of(factor), cand))
    best = max(s for s, _ in scored)
    maximizers = [c for s, c in scored if s == best]
    maximal = [m for m in maximizers
               if not any(o.gens != m.gens and hf_compare(m.hilbert, o.hilbert) == "le"
                          for o in maximizers)]
    if len(maximal) != 1:
        raise InvariantViolation(
            "maximal destabilizer is not unique above "
            f"{above}: {[str(m) for m in maximal]}")
    winner = maximal[0]
    for m in maximizers:
        if not winner.contains(m):
            raise InvariantViolation(
                f"maximizer {m} is not contained in the chosen destabilizer {winner}")
    return winner


def hn_over(lattice: SubmoduleLattice, slope: SlopeKind) -> Filtration:
    """Greedy slope-decreasing filtration of the full module."""
    terms = []
    current = lattice.zero
    while not current.is_full:
        current = max_destabilizer(lattice, slope, current)
        terms.append(current)
    filt = Filtration(slope, lattice.zero, tuple(terms))
    fs = filt.factor_slopes()
    for a, b in zip(fs, fs[1:]):
        if not a > b:
            raise InvariantViolation(
                f"factor slopes fail to decrease strictly: {fs}")
    return filt


def hn(model: ConstellationModel, theta: StabilityFunction,
       slope: SlopeKind) -> Filtration:
    dminus = DMinus.from_theta(theta)
    lattice = enumerate_lattice(model, dminus)
    return hn_over(lattice, slope)


def jh(lattice: SubmoduleLattice, segment: tuple[Submodule, Submodule],
       slope: SlopeKind, enumerate_all: bool = False):
    """Composition chain(s) with constant-slope stable factors on a segment.

    The segment (inner, outer) must be semistable: no intermediate element
    may beat the segment slope.  Steps go to a minimal equal-slope
    extension; at forks the lexicographically smallest minimal generator
    list wins, or every branch is followed when enumerate_all is set.
    """
    inner, outer = segment
    ii, io = lattice.index(inner), lattice.index(outer)
    if ii == io or not lattice.order[ii][io]:
        raise DomainError(f"{inner} must sit strictly inside {outer}")
    mu0 = slope.of(hf_sub(outer.hilbert, inner.hilbert))
    for k, elem in enumerate(lattice.elements):
        if k not in (ii, io) and lattice.order[ii][k] and lattice.order[k][io]:
            if slope.of(hf_sub(elem.hilbert, inner.hilbert)) > mu0:
                raise DomainError(
                    f"segment is not semistable: {elem} has slope above {mu0}")

    def steps(cur: int) -> list[int]:
        cands = [k for k, elem in enumerate(lattice.elements)
                 if k != cur and lattice.order[cur][k] and lattice.order[k][io]
                 and slope.of(hf_sub(elem.hilbert,
                                     lattice.elements[cur].hilbert)) == mu0]
        minimal = [k for k in cands
                   if not any(o != k and lattice.order[o][k] for o in cands)]
        return sorted(minimal, key=lambda k: lattice.elements[k].gens)

    chains: list[tuple[Submodule, ...]] = []

    def dfs(cur: int, prefix: tuple[Submodule, ...]):
        if cur == io:
            chains.append(prefix)
            return
        for k in steps(cur):
            dfs(k, prefix + (lattice.elements[k],))
            if not enumerate_all:
                return

    dfs(ii, ())
    built = []
    for chain in sorted(chains, key=lambda ch: tuple(t.gens for t in ch)):
        filt = Filtration(slope, inner, chain)
        if any(s != mu0 for s in filt.factor_slopes()):
            raise InvariantViolation("composition factors drifted off the segment slope")
        built.append(filt)
    if enumerate_all:
        return tuple(built)
    return built[0]


# ---------------------------------------------------------------------------
# subfiltration verdicts


@dataclass(frozen=True)
class SubfiltrationVerdict:
    contained: bool
    index_map: tuple[int, ...] | None
    slopes_match: bool | None
    detail: str = ""


def is_subfiltration(inner: Filtration, outer: Filtration,
                     theta_slope: ThetaSlope | None = None) -> SubfiltrationVerdict:
    """Decide whether every proper term of `inner` occurs inside `outer`.

    On success the 1-based positions of the inner terms among the outer
    terms are returned.  When a slope evaluator is supplied, each outer
    term falling between consecutive inner terms is additionally required
    to produce the same factor slope as the inner factor it refines.
    """
    if inner.bottom.gens != outer.bottom.gens:
        raise DomainError("filtrations start at different bottoms")
    if inner.top.gens != outer.top.gens:
        raise DomainError("filtrations end at different tops")
    outer_keys = [t.gens for t in outer.terms]
    index_map = []
    for t in inner.terms[:-1]:
        if t.gens not in outer_keys:
            return SubfiltrationVerdict(False, None, None,
                                        detail=f"{t} missing from the outer chain")
        index_map.append(outer_keys.index(t.gens) + 1)
    if index_map != sorted(index_map):
        return SubfiltrationVerdict(False, None, None, detail="order scrambled")
    if theta_slope is None:
        return SubfiltrationVerdict(True, tuple(index_map), None)
    inner_nodes = inner.nodes()
    outer_nodes = outer.nodes()
    stops = [0] + index_map + [len(outer.terms)]
    for j in range(1, len(inner_nodes)):
        target = theta_slope.of(hf_sub(inner_nodes[j].hilbert,
                                       inner_nodes[j - 1].hilbert))
        lo, hi = stops[j - 1], stops[j]
        for k in range(lo + 1, hi + 1):
            got = theta_slope.of(hf_sub(outer_nodes[k].hilbert,
                                        outer_nodes[lo].hilbert))
            if got != target:
                return SubfiltrationVerdict(True, tuple(index_map), False,
                                            detail=f"slope {got} != {target} at outer index {k}")
    return SubfiltrationVerdict(True, tuple(index_map), True)


# ---------------------------------------------------------------------------
# polygons


@dataclass(frozen=True)
class Polygon:
    """Concave piecewise-linear graph through filtration breakpoints."""

    points: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        xs = [x for x, _ in self.points]
        if len(xs) < 2 or any(a >= b for a, b in zip(xs, xs[1:])):
            raise InvariantViolation(f"polygon abscissae must strictly increase: {xs}")
        slopes = [(y1 - y0) / (x1 - x0)
                  for (x0, y0), (x1, y1) in zip(self.points, self.points[1:])]
        for a, b in zip(slopes, slopes[1:]):
            if a < b:
                raise InvariantViolation(f"polygon is not concave: slopes {slopes}")

    @property
    def xs(self) -> tuple[int, ...]:
        return tuple(x for x, _ in self.points)

    def value(self, x: Fraction) -> Fraction:
        pts = self.points
        if not pts[0][0] <= x <= pts[-1][0]:
            raise DomainError(f"abscissa {x} outside polygon range")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (Fraction(x) - x0) / (x1 - x0)
        raise InvariantViolation("interpolation fell through")


def polygon(filt: Filtration) -> Polygon:
    dminus = filt.slope.dminus
    points = [(0, Fraction(0))]
    x = 0
    y = Fraction(0)
    nodes = filt.nodes()
    for a, b in zip(nodes, nodes[1:]):
        factor = hf_sub(b.hilbert, a.hilbert)
        dr = r_of(factor, dminus)
        y += dr * filt.slope.of(factor)
        x += dr
        points.append((x, y))
    poly = Polygon(tuple(points))
    if filt.bottom.is_zero and filt.top.is_full and points[-1][1] != 0:
        raise InvariantViolation(
            f"full-module polygon must close at height 0, got {points[-1][1]}")
    return poly


def polygon_distance(p: Polygon, q: Polygon) -> Fraction:
    """Exact sup-norm distance; attained at a breakpoint of either polygon."""
    if p.points[0][0] != q.points[0][0] or p.points[-1][0] != q.points[-1][0]:
        raise DomainError("polygons span different ranges")
    grid = sorted(set(p.xs) | set(q.xs))
    return max(abs(p.value(x) - q.value(x)) for x in grid)


# ---------------------------------------------------------------------------
# window sweeps


@dataclass(frozen=True)
class SweepRow:
    n: int
    window_ok: bool
    reason: str = ""
    filtration: Filtration | None = None
    poly: Polygon | None = None
    distance: Fraction | None = None


@dataclass(frozen=True)
class SweepResult:
    theta_filtration: Filtration
    theta_polygon: Polygon
    eps0: Fraction
    threshold_n: int
    rows: tuple[SweepRow, ...]


def convergence_sweep(model: ConstellationModel, theta: StabilityFunction,
                      n_from: int, n_to: int) -> SweepResult:
    """Windowed filtrations and polygon distances for N in [n_from, n_to].

    Rows with inadmissible windows carry the failed clause instead of data.
    The threshold window from find_D_for_epsilon at the lattice gap eps0
    is included for context: beyond it the windowed chain refines the
    intrinsic one.
    """
    if n_from > n_to or n_from < 1:
        raise DomainError(f"bad sweep range [{n_from}, {n_to}]")
    h = model.hilbert
    dminus = DMinus.from_theta(theta)
    lattice = enumerate_lattice(model, dminus)
    tslope = ThetaSlope(theta)
    tfilt = hn_over(lattice, tslope)
    tpoly = polygon(tfilt)
    eps = epsilon0(lattice, theta)
    threshold = find_D_for_epsilon(theta, h, eps)
    rows = []
    for n in range(n_from, n_to + 1):
        window = DWindow.symmetric_in_support(n, h)
        try:
            validate_window(theta, h, window)
        except ValidationError as e:
            rows.append(SweepRow(n, False, reason=str(e)))
            continue
        dslope = DSlope(theta, h, window)
        dfilt = hn_over(lattice, dslope)
        dpoly = polygon(dfilt)
        rows.append(SweepRow(n, True, filtration=dfilt, poly=dpoly,
                             distance=polygon_distance(tpoly, dpoly)))
    return SweepResult(tfilt, tpoly, eps, threshold.n, rows=tuple(rows))
