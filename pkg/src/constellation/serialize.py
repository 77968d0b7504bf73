"""JSON wire formats and run-configuration parsing.

Rationals travel as strings "p/q" in lowest terms with the sign on the
numerator (bare "p" when the denominator is 1).  Parse errors carry a
locator path like $.theta.exceptional[0][1] so the CLI can point at the
offending spot in the input file.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from .core import DMinus, HilbertFunction, StabilityFunction, TailSpec, r_of
from .errors import ConfigError
from .filtration import Filtration, Polygon, SweepResult
from .scheme import ConstellationModel, Submodule, build_model
from .stability import DWindow, GitParams, StabilityReport


def frac_str(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_frac(raw: Any, path: str) -> Fraction:
    if isinstance(raw, bool):
        raise ConfigError("expected a rational, got a boolean", path)
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigError(f"bad rational {raw!r}: {e}", path) from None
    raise ConfigError(f"expected a rational string, got {type(raw).__name__}", path)


def _expect_dict(obj: Any, path: str) -> Mapping:
    if not isinstance(obj, Mapping):
        raise ConfigError(f"expected an object, got {type(obj).__name__}", path)
    return obj


def _expect_list(obj: Any, path: str) -> list:
    if not isinstance(obj, list):
        raise ConfigError(f"expected a list, got {type(obj).__name__}", path)
    return obj


def _expect_int(obj: Any, path: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise ConfigError(f"expected an integer, got {obj!r}", path)
    return obj


def _get(obj: Mapping, key: str, path: str) -> Any:
    if key not in obj:
        raise ConfigError(f"missing key {key!r}", path)
    return obj[key]


# ---------------------------------------------------------------------------
# tails and stability functions


def tail_to_json(t: TailSpec) -> dict:
    return {"start": t.start, "period": t.period,
            "base": [frac_str(b) for b in t.base], "ratio": frac_str(t.ratio)}


def tail_from_json(obj: Any, direction: str, path: str) -> TailSpec:
    obj = _expect_dict(obj, path)
    start = _expect_int(_get(obj, "start", path), f"{path}.start")
    base_raw = _expect_list(_get(obj, "base", path), f"{path}.base")
    if not base_raw:
        raise ConfigError("base block must be nonempty", f"{path}.base")
    base = tuple(parse_frac(b, f"{path}.base[{i}]") for i, b in enumerate(base_raw))
    if "period" in obj and _expect_int(obj["period"], f"{path}.period") != len(base):
        raise ConfigError(f"period {obj['period']} does not match base length {len(base)}",
                          f"{path}.period")
    ratio = parse_frac(_get(obj, "ratio", path), f"{path}.ratio")
    return TailSpec(direction, start, base, ratio)


def theta_to_json(theta: StabilityFunction) -> dict:
    return {"exceptional": [[w, frac_str(v)] for w, v in theta.exceptional],
            "left_tail": tail_to_json(theta.left_tail),
            "right_tail": tail_to_json(theta.right_tail)}


def theta_from_json(obj: Any, path: str = "$.theta") -> StabilityFunction:
    obj = _expect_dict(obj, path)
    exc = {}
    for i, pair in enumerate(_expect_list(_get(obj, "exceptional", path),
                                          f"{path}.exceptional")):
        here = f"{path}.exceptional[{i}]"
        pair = _expect_list(pair, here)
        if len(pair) != 2:
            raise ConfigError("expected a [weight, value] pair", here)
        w = _expect_int(pair[0], f"{here}[0]")
        exc[w] = parse_frac(pair[1], f"{here}[1]")
    left = tail_from_json(_get(obj, "left_tail", path), "left", f"{path}.left_tail")
    right = tail_from_json(_get(obj, "right_tail", path), "right", f"{path}.right_tail")
    return StabilityFunction.make(exc, left, right)


# ---------------------------------------------------------------------------
# Hilbert functions, models, submodules


def hf_to_json(h: HilbertFunction) -> dict:
    return {"exceptional": [[w, v] for w, v in h.exceptional],
            "left_tail": {"value": h.left_value, "end": h.left_end},
            "right_tail": {"value": h.right_value, "start": h.right_start}}


def hf_from_json(obj: Any, path: str = "$.hilbert") -> HilbertFunction:
    obj = _expect_dict(obj, path)
    left = _expect_dict(_get(obj, "left_tail", path), f"{path}.left_tail")
    right = _expect_dict(_get(obj, "right_tail", path), f"{path}.right_tail")
    exc = {}
    for i, pair in enumerate(_expect_list(_get(obj, "exceptional", path),
                                          f"{path}.exceptional")):
        here = f"{path}.exceptional[{i}]"
        pair = _expect_list(pair, here)
        exc[_expect_int(pair[0], f"{here}[0]")] = _expect_int(pair[1], f"{here}[1]")
    return HilbertFunction.make(
        exc,
        _expect_int(_get(left, "value", f"{path}.left_tail"), f"{path}.left_tail.value"),
        _expect_int(_get(left, "end", f"{path}.left_tail"), f"{path}.left_tail.end"),
        _expect_int(_get(right, "value", f"{path}.right_tail"), f"{path}.right_tail.value"),
        _expect_int(_get(right, "start", f"{path}.right_tail"), f"{path}.right_tail.start"))


def model_to_json(model: ConstellationModel) -> dict:
    return {"ideal": [[g.a, g.b] for g in model.ideal.gens],
            "weights": [model.wx, model.wy]}


def model_from_json(obj: Any, path: str = "$.model") -> ConstellationModel:
    obj = _expect_dict(obj, path)
    ideal_raw = _expect_list(_get(obj, "ideal", path), f"{path}.ideal")
    if not ideal_raw:
        raise ConfigError("ideal needs at least one generator", f"{path}.ideal")
    gens = []
    for i, pair in enumerate(ideal_raw):
        here = f"{path}.ideal[{i}]"
        pair = _expect_list(pair, here)
        if len(pair) != 2:
            raise ConfigError("expected an [a, b] exponent pair", here)
        gens.append((_expect_int(pair[0], f"{here}[0]"),
                     _expect_int(pair[1], f"{here}[1]")))
    weights_raw = obj.get("weights", [1, -1])
    weights_raw = _expect_list(weights_raw, f"{path}.weights")
    if len(weights_raw) != 2:
        raise ConfigError("weights must be a [wx, wy] pair", f"{path}.weights")
    wx = _expect_int(weights_raw[0], f"{path}.weights[0]")
    wy = _expect_int(weights_raw[1], f"{path}.weights[1]")
    return build_model(gens, (wx, wy))


def submodule_to_json(sub: Submodule, dminus: DMinus) -> dict:
    return {"generators": [[a, b] for a, b in sub.gen_pairs()],
            "r": r_of(sub.hilbert, dminus),
            "hilbert": hf_to_json(sub.hilbert)}


# ---------------------------------------------------------------------------
# derived objects


def window_to_json(w: DWindow) -> dict:
    out: dict[str, Any] = {"weights": list(w.sorted_weights)}
    if w.n is not None:
        out["N"] = w.n
    return out


def gitparams_to_json(p: GitParams) -> dict:
    return {"window": window_to_json(p.window),
            "kappa": [[w, frac_str(p.kappa[w])] for w in sorted(p.kappa)],
            "chi": [[w, frac_str(p.chi[w])] for w in sorted(p.chi)],
            "S_D": frac_str(p.s_d),
            "d": p.d,
            "kappa_h": frac_str(p.kappa_h),
            "r_h": p.r_h}


def filtration_to_json(filt: Filtration) -> list[dict]:
    dminus = filt.slope.dminus
    out = []
    factors = filt.factor_slopes()
    for term, fs in zip(filt.terms, factors):
        out.append({"generators": [[a, b] for a, b in term.gen_pairs()],
                    "r": r_of(term.hilbert, dminus),
                    "slope": frac_str(filt.slope.of(term.hilbert)),
                    "factor_slope": frac_str(fs)})
    return out


def polygon_to_json(poly: Polygon) -> list[list]:
    return [[x, frac_str(y)] for x, y in poly.points]


def report_to_json(rep: StabilityReport) -> dict:
    return {
        "window": window_to_json(rep.window),
        "classification": rep.classification,
        "flags": rep.flags,
        "witnesses": {name: ([list(g) for g in gens] if gens is not None else None)
                      for name, gens in rep.witnesses},
        "arrows": dict(rep.arrows),
        "elements": [{"generators": [list(g) for g in e.gens],
                      "r": e.r,
                      "is_full": e.is_full,
                      "theta_value": frac_str(e.theta_value),
                      "mu_theta": frac_str(e.mu_theta),
                      "mu_D": frac_str(e.mu_D)}
                     for e in rep.elements],
    }


def sweep_to_json(res: SweepResult) -> dict:
    rows = []
    for row in res.rows:
        if not row.window_ok:
            rows.append({"N": row.n, "window_ok": False, "reason": row.reason})
            continue
        rows.append({"N": row.n, "window_ok": True,
                     "chain": filtration_to_json(row.filtration),
                     "chain_length": row.filtration.length,
                     "polygon": polygon_to_json(row.poly),
                     "distance": frac_str(row.distance)})
    return {"eps0": frac_str(res.eps0),
            "threshold_N": res.threshold_n,
            "theta_chain": filtration_to_json(res.theta_filtration),
            "theta_polygon": polygon_to_json(res.theta_polygon),
            "rows": rows}


# ---------------------------------------------------------------------------
# run configurations


@dataclass(frozen=True)
class RunConfig:
    model: ConstellationModel
    theta: StabilityFunction
    window_n: int | None = None
    window_weights: tuple[int, ...] | None = None
    sweep: tuple[int, int] | None = None
    kappa_neg: tuple[tuple[int, Fraction], ...] | None = None


def parse_config(obj: Any, path: str = "$") -> RunConfig:
    obj = _expect_dict(obj, path)
    model = model_from_json(_get(obj, "model", path), f"{path}.model")
    theta = theta_from_json(_get(obj, "theta", path), f"{path}.theta")
    window_n = None
    window_weights = None
    if "window" in obj:
        wobj = _expect_dict(obj["window"], f"{path}.window")
        if "N" in wobj:
            window_n = _expect_int(wobj["N"], f"{path}.window.N")
        elif "weights" in wobj:
            ws = _expect_list(wobj["weights"], f"{path}.window.weights")
            window_weights = tuple(sorted(
                _expect_int(w, f"{path}.window.weights[{i}]") for i, w in enumerate(ws)))
        else:
            raise ConfigError("window needs either N or weights", f"{path}.window")
    sweep = None
    if "sweep" in obj:
        sobj = _expect_dict(obj["sweep"], f"{path}.sweep")
        sweep = (_expect_int(_get(sobj, "from", f"{path}.sweep"), f"{path}.sweep.from"),
                 _expect_int(_get(sobj, "to", f"{path}.sweep"), f"{path}.sweep.to"))
    kappa_neg = None
    if "kappa_neg" in obj:
        pairs = []
        for i, pair in enumerate(_expect_list(obj["kappa_neg"], f"{path}.kappa_neg")):
            here = f"{path}.kappa_neg[{i}]"
            pair = _expect_list(pair, here)
            if len(pair) != 2:
                raise ConfigError("expected a [weight, value] pair", here)
            pairs.append((_expect_int(pair[0], f"{here}[0]"),
                          parse_frac(pair[1], f"{here}[1]")))
        kappa_neg = tuple(sorted(pairs))
    return RunConfig(model, theta, window_n, window_weights, sweep, kappa_neg)


def emit_config(cfg: RunConfig) -> dict:
    out: dict[str, Any] = {"model": model_to_json(cfg.model),
                           "theta": theta_to_json(cfg.theta)}
    if cfg.window_n is not None:
        out["window"] = {"N": cfg.window_n}
    elif cfg.window_weights is not None:
        out["window"] = {"weights": list(cfg.window_weights)}
    if cfg.sweep is not None:
        out["sweep"] = {"from": cfg.sweep[0], "to": cfg.sweep[1]}
    if cfg.kappa_neg is not None:
        out["kappa_neg"] = [[w, frac_str(v)] for w, v in cfg.kappa_neg]
    return out
