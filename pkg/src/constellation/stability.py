"""Slope stability and its finite-window GIT comparison.

Two slopes live here.  The intrinsic one, mu_theta, pairs a stability
function against the Hilbert function of a submodule and divides by the
dimension in negative weights.  The windowed one, mu_D, truncates the
pairing to a finite window D and adds a correction so that the ample
GIT linearisation built from (kappa, chi) detects exactly the same
inequalities; the discrepancy between the two slopes is controlled by the
tail weight S_D left outside the window, which can be made as small as
desired by enlarging D.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .core import (DMinus, HilbertFunction, StabilityFunction, Weight, hf_compare,
                   hf_sub, r_of, theta_dot_h, theta_eval, validate_theta)
from .errors import DomainError, InvariantViolation, ValidationError
from .scheme import (ConstellationModel, Monomial, SubmoduleLattice, Submodule,
                     enumerate_lattice, standard_monomials_of_weight,
                     submodule_from_generators)


# ---------------------------------------------------------------------------
# windows


@dataclass(frozen=True)
class DWindow:
    """A finite set of weights used to truncate the stability pairing."""

    weights: frozenset[Weight]
    n: Weight | None = field(default=None, compare=False)

    @staticmethod
    def symmetric(n: int) -> "DWindow":
        return DWindow(frozenset(range(-n, n + 1)), n)

    @staticmethod
    def symmetric_in_support(n: int, h: HilbertFunction) -> "DWindow":
        return DWindow(frozenset(w for w in range(-n, n + 1) if h.value(w) != 0), n)

    @staticmethod
    def explicit(weights) -> "DWindow":
        return DWindow(frozenset(int(w) for w in weights))

    @property
    def sorted_weights(self) -> tuple[Weight, ...]:
        return tuple(sorted(self.weights))

    def __contains__(self, w: Weight) -> bool:
        return w in self.weights

    def label(self) -> str:
        if self.n is not None:
            return f"[-{self.n},{self.n}]"
        return "{" + ",".join(map(str, self.sorted_weights)) + "}"


def validate_window(theta: StabilityFunction, h: HilbertFunction, window: DWindow):
    """Admit a window on the three checkable clauses, else raise naming one.

    The clauses: the window contains every negative weight of theta, it
    meets the positive part, and h does not vanish anywhere on it.
    """
    dminus = DMinus.from_theta(theta)
    for w in dminus:
        if w not in window:
            raise ValidationError(
                f"window-contains-negative-weights fails: weight {w} is missing")
    if not any(theta_eval(theta, w) > 0 for w in window.weights):
        raise ValidationError(
            "window-meets-positive-weights fails: theta is nowhere positive on the window")
    for w in window.sorted_weights:
        if h.value(w) == 0:
            raise ValidationError(
                f"window-inside-support fails: h vanishes at weight {w}")


def _window_tail(theta: StabilityFunction, h: HilbertFunction,
                 window: DWindow) -> tuple[Fraction, int, DMinus]:
    """Tail weight S_D and the count d of non-negative window weights."""
    dminus = DMinus.from_theta(theta)
    inside = sum((theta_eval(theta, w) * h.value(w) for w in window.weights), Fraction(0))
    s_d = theta_dot_h(theta, h) - inside
    d = sum(1 for w in window.weights if w not in dminus)
    return s_d, d, dminus


# ---------------------------------------------------------------------------
# slopes


def mu_theta(hf: HilbertFunction, theta: StabilityFunction,
             dminus: DMinus | None = None) -> Fraction:
    """Intrinsic slope -<theta, hf> / r(hf); undefined when r(hf) = 0."""
    if dminus is None:
        dminus = DMinus.from_theta(theta)
    r = r_of(hf, dminus)
    if r == 0:
        raise DomainError("slope is undefined: no multiplicity in negative weights")
    return -theta_dot_h(theta, hf) / r


def mu_D(hf: HilbertFunction, theta: StabilityFunction, h: HilbertFunction,
         window: DWindow) -> Fraction:
    """Windowed slope of a sub-Hilbert-function hf <= h.

    Equals -(sum_D theta*hf + (S_D/d) * sum_{D nonnegative} hf/h) / r(hf).
    Agrees with the linearised form built from git_params for every choice
    of the free negative-weight kappa values.
    """
    validate_window(theta, h, window)
    if hf_compare(hf, h) not in ("le", "eq"):
        raise DomainError("windowed slope needs hf <= h pointwise")
    s_d, d, dminus = _window_tail(theta, h, window)
    r = r_of(hf, dminus)
    if r == 0:
        raise DomainError("slope is undefined: no multiplicity in negative weights")
    inside = sum((theta_eval(theta, w) * hf.value(w) for w in window.weights), Fraction(0))
    correction = (s_d / d) * sum((Fraction(hf.value(w), h.value(w))
                                  for w in window.weights if w not in dminus), Fraction(0))
    return -(inside + correction) / r


# ---------------------------------------------------------------------------
# GIT parameters


@dataclass(frozen=True)
class GitParams:
    """The linearisation data attached to a window.

    kappa is strictly positive on the window (free on negative weights,
    pinned to theta plus the spread-out tail weight elsewhere); chi shifts
    the negative weights so that the total pairing against h vanishes.
    """

    window: DWindow
    dminus: DMinus
    kappa: Mapping[Weight, Fraction]
    chi: Mapping[Weight, Fraction]
    s_d: Fraction
    d: int
    kappa_h: Fraction
    r_h: int


def git_params(theta: StabilityFunction, h: HilbertFunction, window: DWindow,
               kappa_neg: Mapping[Weight, Fraction] | None = None) -> GitParams:
    validate_theta(theta, h).require()
    validate_window(theta, h, window)
    s_d, d, dminus = _window_tail(theta, h, window)
    if s_d <= 0:
        raise ValidationError(f"tail weight S_D = {s_d} must be positive")
    r_h = r_of(h, dminus)
    if r_h == 0:
        raise ValidationError("h carries no multiplicity in negative weights")
    kn = dict(kappa_neg or {})
    kappa: dict[Weight, Fraction] = {}
    for w in window.sorted_weights:
        if w in dminus:
            kappa[w] = Fraction(kn.get(w, 1))
            if kappa[w] <= 0:
                raise ValidationError(f"kappa must be positive, got {kappa[w]} at weight {w}")
        else:
            kappa[w] = theta_eval(theta, w) + s_d / (d * h.value(w))
            if kappa[w] <= 0:
                raise InvariantViolation(f"kappa came out nonpositive at weight {w}")
    kappa_h = sum((kappa[w] * h.value(w) for w in window.weights), Fraction(0))
    chi = {w: theta_eval(theta, w) - kappa[w] + kappa_h / r_h for w in dminus}
    balance = sum((chi[w] * h.value(w) for w in dminus), Fraction(0))
    if balance != theta_dot_h(theta, h):
        raise InvariantViolation("chi does not rebalance the pairing against h")
    return GitParams(window, dminus, kappa, chi, s_d, d, kappa_h, r_h)


def mu_D_from_params(hf: HilbertFunction, params: GitParams) -> Fraction:
    """The windowed slope computed through (kappa, chi) instead of theta."""
    r = r_of(hf, params.dminus)
    if r == 0:
        raise DomainError("slope is undefined: no multiplicity in negative weights")
    kappa_f = sum((params.kappa[w] * hf.value(w) for w in params.window.weights), Fraction(0))
    chi_f = sum((params.chi[w] * hf.value(w) for w in params.dminus), Fraction(0))
    return (-kappa_f - chi_f) / r + params.kappa_h / params.r_h


# ---------------------------------------------------------------------------
# graded subspaces and the numerical weight


@dataclass(frozen=True)
class GradedSubspace:
    """A choice of standard monomials in finitely many weights."""

    parts: tuple[tuple[Weight, tuple[Monomial, ...]], ...]

    @staticmethod
    def of(parts: Mapping[Weight, object]) -> "GradedSubspace":
        packed = []
        for w, ms in sorted(parts.items()):
            ms = tuple(sorted({m if isinstance(m, Monomial) else Monomial(*m) for m in ms}))
            if ms:
                packed.append((w, ms))
        return GradedSubspace(tuple(packed))

    @staticmethod
    def from_submodule(model: ConstellationModel, sub: Submodule,
                       dminus: DMinus) -> "GradedSubspace":
        parts = {}
        for w in dminus:
            ms = [m for m in standard_monomials_of_weight(model, w)
                  if sub.contains_monomial(m)]
            if ms:
                parts[w] = ms
        return GradedSubspace.of(parts)

    @property
    def dim(self) -> int:
        return sum(len(ms) for _, ms in self.parts)

    def dims(self) -> dict[Weight, int]:
        return {w: len(ms) for w, ms in self.parts}

    def monomials(self) -> tuple[Monomial, ...]:
        return tuple(m for _, ms in self.parts for m in ms)

    @property
    def is_empty(self) -> bool:
        return not self.parts


def hm_weight(model: ConstellationModel, subspace: GradedSubspace,
              params: GitParams) -> Fraction:
    """Numerical weight of the one-parameter subgroup attached to a subspace.

    Negative exactly when the subspace destabilises in the GIT sense for
    this window's linearisation; 0 on the full subspace.
    """
    if subspace.is_empty:
        raise DomainError("numerical weight needs a nonzero subspace")
    for w, ms in subspace.parts:
        if w not in params.dminus:
            raise DomainError(f"subspace weight {w} lies outside D_-")
        for m in ms:
            if not model.is_standard(m):
                raise DomainError(f"{m} is not a standard monomial")
    span = submodule_from_generators(model, subspace.monomials(), params.dminus)
    kappa_f = sum((params.kappa[w] * span.hilbert.value(w)
                   for w in params.window.weights), Fraction(0))
    chi_a = sum((params.chi[w] * len(ms) for w, ms in subspace.parts), Fraction(0))
    return params.r_h * (kappa_f + chi_a) - subspace.dim * params.kappa_h


def saturate(model: ConstellationModel, subspace: GradedSubspace,
             dminus: DMinus) -> GradedSubspace:
    """Fill the subspace out to everything its span contains over D_-.

    The result is the largest graded subspace generating the same
    submodule; it always contains the input.
    """
    if subspace.is_empty:
        return subspace
    span = submodule_from_generators(model, subspace.monomials(), dminus)
    saturated = GradedSubspace.from_submodule(model, span, dminus)
    before = set(subspace.monomials())
    if not before <= set(saturated.monomials()):
        raise InvariantViolation("saturation dropped part of the subspace")
    return saturated


# ---------------------------------------------------------------------------
# thresholds


def epsilon0(lattice: SubmoduleLattice, theta: StabilityFunction) -> Fraction:
    """A quarter of the smallest gap between slopes of lattice subquotients.

    Returns 1 when fewer than two distinct slopes exist, so the value is
    always a usable positive threshold.
    """
    dminus = lattice.dminus
    slopes = set()
    for i, inner in enumerate(lattice.elements):
        for j, outer in enumerate(lattice.elements):
            if i != j and lattice.order[i][j]:
                q = hf_sub(outer.hilbert, inner.hilbert)
                slopes.add(mu_theta(q, theta, dminus))
    distinct = sorted(slopes)
    if len(distinct) < 2:
        return Fraction(1)
    gap = min(b - a for a, b in zip(distinct, distinct[1:]))
    return gap / 4


_FIND_D_CAP = 10000


def find_D_for_epsilon(theta: StabilityFunction, h: HilbertFunction,
                       eps: Fraction) -> DWindow:
    """Smallest symmetric admissible window whose tail weight beats eps.

    Scans [-N, N] intersected with the support of h upward in N and stops
    at the first window that passes validation with 2 * S_D < eps.
    """
    if eps <= 0:
        raise DomainError(f"threshold must be positive, got {eps}")
    dminus = DMinus.from_theta(theta)
    start = max([1] + [abs(w) for w in dminus])
    for n in range(start, _FIND_D_CAP):
        window = DWindow.symmetric_in_support(n, h)
        try:
            validate_window(theta, h, window)
        except ValidationError:
            continue
        s_d, _, _ = _window_tail(theta, h, window)
        if 2 * s_d < eps:
            return window
    raise InvariantViolation(f"no admissible window found below N = {_FIND_D_CAP}")


# ---------------------------------------------------------------------------
# classification report


@dataclass(frozen=True)
class ElementReport:
    gens: tuple[tuple[int, int], ...]
    r: int
    theta_value: Fraction
    mu_theta: Fraction
    mu_D: Fraction
    is_full: bool


@dataclass(frozen=True)
class StabilityReport:
    window: DWindow
    theta_stable: bool
    theta_semistable: bool
    mu_theta_stable: bool
    mu_theta_semistable: bool
    mu_D_stable: bool
    mu_D_semistable: bool
    witnesses: tuple[tuple[str, tuple[tuple[int, int], ...] | None], ...]
    arrows: tuple[tuple[str, bool], ...]
    elements: tuple[ElementReport, ...]

    @property
    def flags(self) -> dict[str, bool]:
        return {
            "theta_stable": self.theta_stable,
            "theta_semistable": self.theta_semistable,
            "mu_theta_stable": self.mu_theta_stable,
            "mu_theta_semistable": self.mu_theta_semistable,
            "mu_D_stable": self.mu_D_stable,
            "mu_D_semistable": self.mu_D_semistable,
        }

    @property
    def classification(self) -> str:
        if self.mu_theta_stable:
            theta_part = "mu_theta-stable"
        elif self.mu_theta_semistable:
            theta_part = "strictly mu_theta-semistable"
        else:
            theta_part = "mu_theta-unstable"
        if self.mu_D_stable:
            d_part = "mu_D-stable"
        elif self.mu_D_semistable:
            d_part = "strictly mu_D-semistable"
        else:
            d_part = "mu_D-unstable"
        return f"{theta_part}, {d_part}"


def stability_report(model: ConstellationModel, theta: StabilityFunction,
                     window: DWindow) -> StabilityReport:
    """Classify the full module under both slopes and cross-check the
    implication diagram between the four stability notions.

    The equivalences that hold for every admissible input (theta against
    mu_theta, stable implies semistable) are enforced as hard invariants;
    the window-dependent implications are reported as booleans.
    """
    h = model.hilbert
    validate_theta(theta, h).require()
    validate_window(theta, h, window)
    dminus = DMinus.from_theta(theta)
    lattice = enumerate_lattice(model, dminus)
    mu_t_full = mu_theta(h, theta, dminus)
    mu_d_full = mu_D(h, theta, h, window)

    rows = []
    for sub in lattice.elements:
        if sub.is_zero:
            continue
        rows.append(ElementReport(
            gens=sub.gen_pairs(),
            r=lattice.r(sub),
            theta_value=theta_dot_h(theta, sub.hilbert),
            mu_theta=mu_theta(sub.hilbert, theta, dminus),
            mu_D=mu_D(sub.hilbert, theta, h, window),
            is_full=sub.is_full,
        ))
    proper = [row for row in rows if not row.is_full]

    def first_witness(bad) -> tuple[tuple[int, int], ...] | None:
        for row in proper:
            if bad(row):
                return row.gens
        return None

    flags = {
        "theta_stable": all(row.theta_value > 0 for row in proper),
        "theta_semistable": all(row.theta_value >= 0 for row in proper),
        "mu_theta_stable": all(row.mu_theta < mu_t_full for row in proper),
        "mu_theta_semistable": all(row.mu_theta <= mu_t_full for row in proper),
        "mu_D_stable": all(row.mu_D < mu_d_full for row in proper),
        "mu_D_semistable": all(row.mu_D <= mu_d_full for row in proper),
    }
    witnesses = (
        ("theta_stable", first_witness(lambda r: r.theta_value <= 0)),
        ("theta_semistable", first_witness(lambda r: r.theta_value < 0)),
        ("mu_theta_stable", first_witness(lambda r: r.mu_theta >= mu_t_full)),
        ("mu_theta_semistable", first_witness(lambda r: r.mu_theta > mu_t_full)),
        ("mu_D_stable", first_witness(lambda r: r.mu_D >= mu_d_full)),
        ("mu_D_semistable", first_witness(lambda r: r.mu_D > mu_d_full)),
    )

    hard = {
        "theta_stable_iff_mu_theta_stable":
            flags["theta_stable"] == flags["mu_theta_stable"],
        "theta_semistable_iff_mu_theta_semistable":
            flags["theta_semistable"] == flags["mu_theta_semistable"],
        "theta_stable_implies_theta_semistable":
            (not flags["theta_stable"]) or flags["theta_semistable"],
        "mu_theta_stable_implies_mu_theta_semistable":
            (not flags["mu_theta_stable"]) or flags["mu_theta_semistable"],
        "mu_D_stable_implies_mu_D_semistable":
            (not flags["mu_D_stable"]) or flags["mu_D_semistable"],
    }
    for name, ok in hard.items():
        if not ok:
            raise InvariantViolation(f"stability diagram arrow broke: {name}")
    window_dependent = {
        "mu_theta_stable_implies_mu_D_stable":
            (not flags["mu_theta_stable"]) or flags["mu_D_stable"],
        "mu_D_semistable_implies_mu_theta_semistable":
            (not flags["mu_D_semistable"]) or flags["mu_theta_semistable"],
        "theta_stable_implies_mu_D_stable":
            (not flags["theta_stable"]) or flags["mu_D_stable"],
    }
    arrows = tuple(sorted(hard.items())) + tuple(sorted(window_dependent.items()))
    return StabilityReport(window=window, witnesses=witnesses, arrows=arrows,
                           elements=tuple(rows), **flags)
