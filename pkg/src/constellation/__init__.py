"""Slope stability for torus-equivariant modules on monomial curves.

Exact-arithmetic computations of intrinsic and windowed stability slopes,
GIT linearisation data, numerical weights, canonical filtrations, and
their convergence polygons.
"""

from .core import (Check, DMinus, HilbertFunction, StabilityFunction, TailSpec,
                   ThetaValidation, Weight, hf_add, hf_compare, hf_sub, r_of,
                   tail_sum, theta_dot_h, theta_eval, validate_theta)
from .errors import ConfigError, DomainError, InvariantViolation, ValidationError
from .filtration import (DSlope, Filtration, Polygon, SubfiltrationVerdict,
                         SweepResult, SweepRow, ThetaSlope, convergence_sweep,
                         hn, hn_over, is_subfiltration, jh, max_destabilizer,
                         polygon, polygon_distance)
from .registry import EXAMPLES, builtin_config, example_ids
from .scheme import (ConstellationModel, Monomial, MonomialIdeal, ProbeRecord,
                     Submodule, SubmoduleLattice, build_model, enumerate_lattice,
                     model_hf, nonmonomial_slope_probe, quotient_hf,
                     standard_monomials_of_weight, submodule_from_generators)
from .serialize import RunConfig, emit_config, frac_str, parse_config
from .stability import (DWindow, ElementReport, GitParams, GradedSubspace,
                        StabilityReport, epsilon0, find_D_for_epsilon, git_params,
                        hm_weight, mu_D, mu_D_from_params, mu_theta, saturate,
                        stability_report, validate_window)

__version__ = "0.1.0"
