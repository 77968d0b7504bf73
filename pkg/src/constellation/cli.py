"""Command line front end.

    constellation report --example ex4.1 --N 3
    constellation hn --example ex4.3 --N 6 --slope both
    constellation sweep --example ex4.2 --N-from 2 --N-to 12 --emit svg

Input is either a builtin example id or a JSON config file; output goes
to stdout or --out.  Exit codes: 0 success, 2 bad configuration, 3
mathematically invalid input, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import ConfigError, DomainError, InvariantViolation, ValidationError
from .filtration import DSlope, ThetaSlope, convergence_sweep, hn, is_subfiltration
from .registry import builtin_config, example_ids
from .render import polygons_svg
from .serialize import (RunConfig, filtration_to_json, gitparams_to_json,
                        parse_config, report_to_json, sweep_to_json, window_to_json)
from .stability import DWindow, git_params, stability_report, validate_window


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="constellation",
        description="stability slopes, windowed GIT comparisons, and canonical"
                    " filtrations for equivariant modules on monomial curves")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("report", "classify the full module under both slopes"),
                            ("hn", "compute slope-decreasing filtrations"),
                            ("sweep", "windowed filtrations across a range of N")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", metavar="CFG", help="path to a JSON run configuration")
        p.add_argument("--example", metavar="ID",
                       help=f"builtin example id ({', '.join(example_ids())})")
        p.add_argument("--emit", choices=("json", "svg", "text"), default="json")
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        if name in ("report", "hn"):
            p.add_argument("--N", type=int, dest="n", help="symmetric window half-width")
        if name == "hn":
            p.add_argument("--slope", choices=("theta", "D", "both"), default="both")
        if name == "sweep":
            p.add_argument("--N-from", type=int, dest="n_from")
            p.add_argument("--N-to", type=int, dest="n_to")
    return parser


def _load_config(args) -> RunConfig:
    if args.input and args.example:
        raise ConfigError("give either --input or --example, not both", "$")
    if args.example:
        return builtin_config(args.example)
    if args.input:
        try:
            raw = json.loads(Path(args.input).read_text())
        except OSError as e:
            raise ConfigError(f"cannot read {args.input}: {e}", "$") from None
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON: {e}", "$") from None
        return parse_config(raw)
    raise ConfigError("one of --input or --example is required", "$")


def _resolve_window(cfg: RunConfig, args) -> DWindow:
    n = getattr(args, "n", None)
    if n is None:
        n = cfg.window_n
    if n is not None:
        window = DWindow.symmetric_in_support(n, cfg.model.hilbert)
    elif cfg.window_weights is not None:
        window = DWindow.explicit(cfg.window_weights)
    else:
        raise ConfigError("a window is required: pass --N or configure one", "$.window")
    validate_window(cfg.theta, cfg.model.hilbert, window)
    return window


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_report(cfg: RunConfig, args) -> str:
    window = _resolve_window(cfg, args)
    params = git_params(cfg.theta, cfg.model.hilbert, window,
                        dict(cfg.kappa_neg) if cfg.kappa_neg else None)
    rep = stability_report(cfg.model, cfg.theta, window)
    if args.emit == "json":
        payload = report_to_json(rep)
        payload["git_params"] = gitparams_to_json(params)
        return _dumps(payload)
    if args.emit == "text":
        lines = [f"window {window.label()}",
                 f"classification: {rep.classification}", "flags:"]
        witness = dict(rep.witnesses)
        for name, value in rep.flags.items():
            note = ""
            if not value and witness.get(name) is not None:
                note = f"  (witness {list(map(list, witness[name]))})"
            lines.append(f"  {name}: {'yes' if value else 'no'}{note}")
        lines.append(f"S_D = {params.s_d}, d = {params.d},"
                     f" kappa(h) = {params.kappa_h}, r(h) = {params.r_h}")
        lines.append("elements:")
        for e in rep.elements:
            tag = "full module" if e.is_full else str([list(g) for g in e.gens])
            lines.append(f"  {tag}: r={e.r} theta={e.theta_value}"
                         f" mu_theta={e.mu_theta} mu_D={e.mu_D}")
        return "\n".join(lines) + "\n"
    raise ConfigError("report supports --emit json or text", "$.emit")


def cmd_hn(cfg: RunConfig, args) -> str:
    want_theta = args.slope in ("theta", "both")
    want_d = args.slope in ("D", "both")
    payload: dict = {}
    tfilt = dfilt = None
    if want_theta:
        tfilt = hn(cfg.model, cfg.theta, ThetaSlope(cfg.theta))
        payload["theta_chain"] = filtration_to_json(tfilt)
        payload["theta_chain_length"] = tfilt.length
    if want_d:
        window = _resolve_window(cfg, args)
        dslope = DSlope(cfg.theta, cfg.model.hilbert, window)
        dfilt = hn(cfg.model, cfg.theta, dslope)
        payload["window"] = window_to_json(window)
        payload["D_chain"] = filtration_to_json(dfilt)
        payload["D_chain_length"] = dfilt.length
    if tfilt is not None and dfilt is not None:
        verdict = is_subfiltration(tfilt, dfilt, ThetaSlope(cfg.theta))
        payload["subfiltration"] = {
            "contained": verdict.contained,
            "index_map": list(verdict.index_map) if verdict.index_map is not None else None,
            "slopes_match": verdict.slopes_match,
            "detail": verdict.detail,
        }
    if args.emit == "json":
        return _dumps(payload)
    if args.emit == "text":
        lines = []
        for key, filt in (("theta", tfilt), ("D", dfilt)):
            if filt is None:
                continue
            lines.append(f"{key} chain (length {filt.length}):")
            lines.append("  0")
            for term, fs in zip(filt.terms, filt.factor_slopes()):
                lines.append(f"  {term}  factor slope {fs}")
        if "subfiltration" in payload:
            lines.append(f"subfiltration: {payload['subfiltration']}")
        return "\n".join(lines) + "\n"
    raise ConfigError("hn supports --emit json or text", "$.emit")


def cmd_sweep(cfg: RunConfig, args) -> str:
    n_from, n_to = args.n_from, args.n_to
    if n_from is None and cfg.sweep is not None:
        n_from = cfg.sweep[0]
    if n_to is None and cfg.sweep is not None:
        n_to = cfg.sweep[1]
    if n_from is None or n_to is None:
        raise ConfigError("sweep needs --N-from/--N-to or a configured range", "$.sweep")
    res = convergence_sweep(cfg.model, cfg.theta, n_from, n_to)
    if args.emit == "json":
        return _dumps(sweep_to_json(res))
    if args.emit == "svg":
        items = [("theta", res.theta_polygon)]
        items += [(f"N={row.n}", row.poly) for row in res.rows if row.window_ok]
        return polygons_svg(items, title="filtration polygons")
    lines = [f"eps0 = {res.eps0}, threshold N = {res.threshold_n}"]
    for row in res.rows:
        if not row.window_ok:
            lines.append(f"N={row.n}: window rejected ({row.reason})")
            continue
        chain = " < ".join(str(t) for t in row.filtration.terms)
        lines.append(f"N={row.n}: distance {row.distance}  chain 0 < {chain}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
        if args.command == "report":
            text = cmd_report(cfg, args)
        elif args.command == "hn":
            text = cmd_hn(cfg, args)
        else:
            text = cmd_sweep(cfg, args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except (ValidationError, DomainError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return 3
    except InvariantViolation as e:
        print(f"internal invariant violation: {e}", file=sys.stderr)
        return 4
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
