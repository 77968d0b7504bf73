"""Bundled example configurations.

Four built-in runs exercise the whole pipeline on the coordinate cross
C[x,y]/(xy) and on a thickened variant, with stability functions chosen
so that each classical phenomenon appears: a strictly semistable module
that a window refines to stable (ex4.1), one it refines to unstable with
a two-step chain (ex4.2), a window-parity-dependent chain (ex4.3), and a
module with a rich lattice, equal intrinsic slopes on all five proper
submodules, and two distinct composition chains (ex4.4).
"""

from __future__ import annotations

from .errors import ConfigError
from .serialize import RunConfig, parse_config

EXAMPLES: dict[str, dict] = {
    "ex4.1": {
        "model": {"ideal": [[1, 1]], "weights": [1, -1]},
        "theta": {
            "exceptional": [[-2, "0"], [-1, "0"], [0, "-1"], [1, "-1"]],
            "left_tail": {"start": -3, "base": ["1/2"], "ratio": "1/2"},
            "right_tail": {"start": 2, "base": ["1/2"], "ratio": "1/2"},
        },
        "window": {"N": 3},
        "sweep": {"from": 2, "to": 12},
    },
    "ex4.2": {
        "model": {"ideal": [[1, 1]], "weights": [1, -1]},
        "theta": {
            "exceptional": [[-1, "1"], [0, "-1"], [1, "-1"]],
            "left_tail": {"start": -2, "base": ["0"], "ratio": "0"},
            "right_tail": {"start": 2, "base": ["1/2"], "ratio": "1/2"},
        },
        "window": {"N": 2},
        "sweep": {"from": 2, "to": 12},
    },
    "ex4.3": {
        "model": {"ideal": [[1, 1]], "weights": [1, -1]},
        "theta": {
            "exceptional": [[-2, "1"], [-1, "1"], [0, "-1"], [1, "-1"], [2, "-2"]],
            "left_tail": {"start": -3, "base": ["0", "1/2"], "ratio": "1/2"},
            "right_tail": {"start": 3, "base": ["1/2", "0"], "ratio": "1/2"},
        },
        "window": {"N": 6},
        "sweep": {"from": 3, "to": 13},
    },
    "ex4.4": {
        "model": {"ideal": [[1, 2], [3, 1]], "weights": [1, -1]},
        "theta": {
            "exceptional": [[-1, "5"], [0, "-1"], [1, "-1"], [2, "-2"]],
            "left_tail": {"start": -2, "base": ["0"], "ratio": "0"},
            "right_tail": {"start": 3, "base": ["1/2"], "ratio": "1/2"},
        },
        "window": {"N": 5},
        "sweep": {"from": 3, "to": 12},
    },
}


def example_ids() -> tuple[str, ...]:
    return tuple(sorted(EXAMPLES))


def builtin_config(example_id: str) -> RunConfig:
    if example_id not in EXAMPLES:
        raise ConfigError(f"unknown example {example_id!r};"
                          f" available: {', '.join(example_ids())}", "$.example")
    return parse_config(EXAMPLES[example_id])
