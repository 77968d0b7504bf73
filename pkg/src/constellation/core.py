"""Weight-space primitives: stability functions and Hilbert functions on Z.

Everything here lives on the character lattice of a one-dimensional torus,
so a "function" is a map Z -> Q (or Z -> Z>=0) that is eventually simple on
both sides.  Two shapes of eventual behaviour are supported:

* periodic-geometric tails for stability functions (a repeating block of
  rational values damped by a ratio 0 <= q < 1 per period), which keeps
  every infinite pairing sum exactly computable in closed form;
* constant tails for Hilbert functions, which is what quotients of a
  polynomial ring in two torus-weighted variables by a monomial ideal
  actually produce.

All arithmetic is exact via fractions.Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainError, ValidationError

Weight = int


# ---------------------------------------------------------------------------
# tails


@dataclass(frozen=True)
class TailSpec:
    """One infinite tail of a stability function.

    The tail covers weights w >= start (direction "right") or w <= start
    (direction "left").  Writing i for the distance from start, the value is

        base[i % p] * ratio**(i // p),      p = len(base),

    so the base block repeats and each full period is damped by ratio.
    ratio = 0 means the block appears once and the tail is 0 afterwards
    (0**0 counts as 1, so the first period survives).
    """

    direction: str
    start: int
    base: tuple[Fraction, ...]
    ratio: Fraction

    def __post_init__(self):
        if self.direction not in ("left", "right"):
            raise ValidationError(f"tail direction must be left or right, got {self.direction!r}")
        if not self.base:
            raise ValidationError("tail needs a nonempty base block")
        if not 0 <= self.ratio < 1:
            raise ValidationError(f"tail ratio must satisfy 0 <= ratio < 1, got {self.ratio}")
        object.__setattr__(self, "base", tuple(Fraction(b) for b in self.base))
        object.__setattr__(self, "ratio", Fraction(self.ratio))

    @property
    def period(self) -> int:
        return len(self.base)

    @property
    def is_zero(self) -> bool:
        return all(b == 0 for b in self.base)

    def covers(self, w: Weight) -> bool:
        return w >= self.start if self.direction == "right" else w <= self.start

    def _index(self, w: Weight) -> int:
        return w - self.start if self.direction == "right" else self.start - w

    def value(self, w: Weight) -> Fraction:
        if not self.covers(w):
            raise DomainError(f"weight {w} is outside the {self.direction} tail region")
        i = self._index(w)
        m, s = divmod(i, self.period)
        return self.base[s] * self.ratio**m

    def sum_from_index(self, i0: int) -> Fraction:
        """Exact sum of all tail values at distance >= i0 from start."""
        if i0 < 0:
            i0 = 0
        if self.is_zero:
            return Fraction(0)
        p = self.period
        m, s = divmod(i0, p)
        rest_of_block = sum(self.base[s:], Fraction(0))
        if self.ratio == 0:
            return rest_of_block if m == 0 else Fraction(0)
        whole_block = sum(self.base, Fraction(0))
        return self.ratio**m * (rest_of_block + self.ratio * whole_block / (1 - self.ratio))


def tail_sum(tail: TailSpec, beyond: Weight) -> Fraction:
    """Sum of the tail strictly beyond `beyond`, in the tail's direction."""
    if tail.direction == "right":
        return tail.sum_from_index(beyond + 1 - tail.start)
    return tail.sum_from_index(tail.start - beyond + 1)


# ---------------------------------------------------------------------------
# Hilbert functions


def _absorb(middle: dict[int, int], left_value: int, left_end: int,
            right_value: int, right_start: int):
    e, s = left_end, right_start
    while e + 1 < s and middle.get(e + 1, 0) == left_value:
        e += 1
    while s - 1 > e and middle.get(s - 1, 0) == right_value:
        s -= 1
    exceptional = tuple(sorted((w, v) for w, v in middle.items() if e < w < s and v != 0))
    if e + 1 == s and left_value == right_value:
        return left_value, 0, right_value, 1, ()
    return left_value, e, right_value, s, exceptional


@dataclass(frozen=True)
class HilbertFunction:
    """A map Z -> Z>=0 that is constant far enough left and far enough right.

    Instances are kept in a canonical form (tail thresholds pulled as tight
    as possible, zero entries implicit), so dataclass equality agrees with
    pointwise equality of the underlying functions.  Build through `make`,
    `constant` or `from_finite` rather than the raw constructor.
    """

    left_value: int
    left_end: int
    right_value: int
    right_start: int
    exceptional: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def make(exceptional: Mapping[int, int], left_value: int, left_end: int,
             right_value: int, right_start: int) -> "HilbertFunction":
        if left_end >= right_start:
            raise ValidationError("left tail must end before the right tail starts")
        if left_value < 0 or right_value < 0:
            raise ValidationError("Hilbert function values must be nonnegative")
        middle: dict[int, int] = {}
        for w, v in exceptional.items():
            if v < 0:
                raise ValidationError(f"Hilbert function value at weight {w} is negative")
            if w <= left_end or w >= right_start:
                tailv = left_value if w <= left_end else right_value
                if v != tailv:
                    raise ValidationError(f"entry at weight {w} contradicts the constant tail")
                continue
            middle[w] = v
        return HilbertFunction(*_absorb(middle, left_value, left_end, right_value, right_start))

    @staticmethod
    def constant(c: int) -> "HilbertFunction":
        return HilbertFunction.make({}, c, 0, c, 1)

    @staticmethod
    def from_finite(values: Mapping[int, int]) -> "HilbertFunction":
        vals = {w: v for w, v in values.items() if v != 0}
        if not vals:
            return HilbertFunction.constant(0)
        lo, hi = min(vals), max(vals)
        return HilbertFunction.make(vals, 0, lo - 1, 0, hi + 1)

    def value(self, w: Weight) -> int:
        if w <= self.left_end:
            return self.left_value
        if w >= self.right_start:
            return self.right_value
        return dict(self.exceptional).get(w, 0)

    @property
    def is_finitely_supported(self) -> bool:
        return self.left_value == 0 and self.right_value == 0

    @property
    def is_zero(self) -> bool:
        return self.is_finitely_supported and not self.exceptional

    def support_weights_within(self, lo: Weight, hi: Weight) -> list[Weight]:
        return [w for w in range(lo, hi + 1) if self.value(w) != 0]


def _scan_range(h1: HilbertFunction, h2: HilbertFunction) -> range:
    lo = min(h1.left_end, h2.left_end)
    hi = max(h1.right_start, h2.right_start)
    return range(lo, hi + 1)


def hf_add(h1: HilbertFunction, h2: HilbertFunction) -> HilbertFunction:
    span = _scan_range(h1, h2)
    middle = {w: h1.value(w) + h2.value(w) for w in span}
    return HilbertFunction.make(middle,
                                h1.left_value + h2.left_value, span.start,
                                h1.right_value + h2.right_value, span.stop - 1)


def hf_sub(h1: HilbertFunction, h2: HilbertFunction) -> HilbertFunction:
    """Pointwise h1 - h2; DomainError naming a weight where h2 exceeds h1."""
    if h2.left_value > h1.left_value:
        raise DomainError(f"subtraction fails at weight {min(h1.left_end, h2.left_end)}:"
                          f" {h2.left_value} > {h1.left_value}")
    if h2.right_value > h1.right_value:
        raise DomainError(f"subtraction fails at weight {max(h1.right_start, h2.right_start)}:"
                          f" {h2.right_value} > {h1.right_value}")
    span = _scan_range(h1, h2)
    middle = {}
    for w in span:
        d = h1.value(w) - h2.value(w)
        if d < 0:
            raise DomainError(f"subtraction fails at weight {w}: {h2.value(w)} > {h1.value(w)}")
        middle[w] = d
    return HilbertFunction.make(middle,
                                h1.left_value - h2.left_value, span.start,
                                h1.right_value - h2.right_value, span.stop - 1)


def hf_compare(h1: HilbertFunction, h2: HilbertFunction) -> str:
    """Pointwise partial order: one of "eq", "le", "ge", "incomparable"."""
    le = h1.left_value <= h2.left_value and h1.right_value <= h2.right_value
    ge = h1.left_value >= h2.left_value and h1.right_value >= h2.right_value
    for w in _scan_range(h1, h2):
        a, b = h1.value(w), h2.value(w)
        le = le and a <= b
        ge = ge and a >= b
        if not (le or ge):
            break
    if le and ge:
        return "eq"
    if le:
        return "le"
    if ge:
        return "ge"
    return "incomparable"


# ---------------------------------------------------------------------------
# stability functions


@dataclass(frozen=True)
class StabilityFunction:
    """A rational function theta on Z: finitely many exceptional values
    bracketed by two periodic-geometric tails.

    Tails must be nonnegative, so all negative values (the weights that can
    carry generators of destabilising submodules) sit in the exceptional
    block.  Zero exceptional entries are dropped at construction.
    """

    exceptional: tuple[tuple[int, Fraction], ...]
    left_tail: TailSpec
    right_tail: TailSpec

    def __post_init__(self):
        if self.left_tail.direction != "left" or self.right_tail.direction != "right":
            raise ValidationError("stability function needs one left and one right tail")
        if self.left_tail.start >= self.right_tail.start:
            raise ValidationError("tail regions overlap")
        for t in (self.left_tail, self.right_tail):
            if any(b < 0 for b in t.base):
                raise ValidationError("tail values of a stability function must be nonnegative")
        cleaned = []
        for w, v in sorted(dict(self.exceptional).items()):
            if not self.left_tail.start < w < self.right_tail.start:
                raise ValidationError(f"exceptional weight {w} lies inside a tail region")
            v = Fraction(v)
            if v != 0:
                cleaned.append((w, v))
        object.__setattr__(self, "exceptional", tuple(cleaned))

    @staticmethod
    def make(exceptional: Mapping[int, Fraction | int], left_tail: TailSpec,
             right_tail: TailSpec) -> "StabilityFunction":
        return StabilityFunction(tuple((w, Fraction(v)) for w, v in exceptional.items()),
                                 left_tail, right_tail)

    def exceptional_map(self) -> dict[int, Fraction]:
        return dict(self.exceptional)


def theta_eval(theta: StabilityFunction, w: Weight) -> Fraction:
    exc = theta.exceptional_map()
    if w in exc:
        return exc[w]
    if theta.right_tail.covers(w):
        return theta.right_tail.value(w)
    if theta.left_tail.covers(w):
        return theta.left_tail.value(w)
    return Fraction(0)


def theta_dot_h(theta: StabilityFunction, h: HilbertFunction) -> Fraction:
    """The pairing sum_w theta(w) * h(w), evaluated in closed form.

    The sum converges absolutely because h is eventually constant while
    theta decays geometrically; both infinite ends reduce to tail_sum.
    """
    total = sum((v * h.value(w) for w, v in theta.exceptional), Fraction(0))
    right = theta.right_tail
    far_r = max(right.start, h.right_start)
    for w in range(right.start, far_r + 1):
        total += right.value(w) * h.value(w)
    total += h.right_value * tail_sum(right, far_r)
    left = theta.left_tail
    far_l = min(left.start, h.left_end)
    for w in range(far_l, left.start + 1):
        total += left.value(w) * h.value(w)
    total += h.left_value * tail_sum(left, far_l)
    return total


# ---------------------------------------------------------------------------
# the admissibility report


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witness: Weight | None = None
    detail: str = ""


@dataclass(frozen=True)
class ThetaValidation:
    """Outcome of the four admissibility axioms for a stability function.

    Failures are carried in the report rather than raised; call `require`
    to turn the first failure into a ValidationError.
    """

    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.ok)

    def require(self):
        for c in self.checks:
            if not c.ok:
                where = "" if c.witness is None else f" (witness weight {c.witness})"
                raise ValidationError(f"stability data fails {c.name}{where}: {c.detail}")
        return self


def _tail_infinitely_positive(t: TailSpec) -> bool:
    return t.ratio > 0 and any(b > 0 for b in t.base)


def _tail_support_check(t: TailSpec, h: HilbertFunction) -> Weight | None:
    """First weight where the tail is nonzero but h vanishes, else None."""
    if t.direction == "right":
        far = max(t.start + t.period, h.right_start)
        sweep: Iterable[int] = range(t.start, far + 1)
    else:
        far = min(t.start - t.period, h.left_end)
        sweep = range(t.start, far - 1, -1)
    for w in sweep:
        if t.value(w) != 0 and h.value(w) == 0:
            return w
    const = h.right_value if t.direction == "right" else h.left_value
    if const == 0 and not t.is_zero and t.ratio > 0:
        step = 1 if t.direction == "right" else -1
        w = far + step
        while t.value(w) == 0:
            w += step
        return w
    return None


def validate_theta(theta: StabilityFunction, h: HilbertFunction) -> ThetaValidation:
    """Check the four admissibility axioms of a stability function against h.

    finitely-many-negative  negatives confined to the exceptional block
    infinitely-many-positive  at least one tail is positive infinitely often
    vanishes-off-support    theta(w) = 0 wherever h(w) = 0
    pairs-to-zero           sum_w theta(w) h(w) = 0
    """
    checks = []

    neg = [w for w, v in theta.exceptional if v < 0]
    checks.append(Check("finitely-many-negative", True,
                        detail=f"{len(neg)} negative weights"))

    inf_pos = _tail_infinitely_positive(theta.left_tail) or \
        _tail_infinitely_positive(theta.right_tail)
    checks.append(Check("infinitely-many-positive", inf_pos,
                        detail="" if inf_pos else "both tails are eventually zero"))

    witness = None
    for w, v in theta.exceptional:
        if v != 0 and h.value(w) == 0:
            witness = w
            break
    if witness is None:
        witness = _tail_support_check(theta.right_tail, h)
    if witness is None:
        witness = _tail_support_check(theta.left_tail, h)
    checks.append(Check("vanishes-off-support", witness is None, witness))

    pairing = theta_dot_h(theta, h)
    checks.append(Check("pairs-to-zero", pairing == 0,
                        detail=f"<theta,h> = {pairing}"))

    return ThetaValidation(tuple(checks))


# ---------------------------------------------------------------------------
# D_-


@dataclass(frozen=True)
class DMinus:
    """The finite set of weights where theta is strictly negative."""

    weights: frozenset[Weight]

    @staticmethod
    def from_theta(theta: StabilityFunction) -> "DMinus":
        return DMinus(frozenset(w for w, v in theta.exceptional if v < 0))

    @property
    def sorted_weights(self) -> tuple[Weight, ...]:
        return tuple(sorted(self.weights))

    def __contains__(self, w: Weight) -> bool:
        return w in self.weights

    def __iter__(self):
        return iter(self.sorted_weights)


def r_of(h: HilbertFunction, dminus: DMinus) -> int:
    """Total dimension of h over the negative weights."""
    return sum(h.value(w) for w in dminus.weights)
