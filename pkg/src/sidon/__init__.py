"""Sidon, weak Sidon and l-thin sets: constructions, bounds, diagnostics and exact search."""

from .core import (Cyclic, DifferenceHistogram, IntegerSet, Interval, UNBOUNDED,
                   difference_histogram, is_sidon, is_thin, is_weak_sidon,
                   parse_set_text, format_set_text, repeated_distances, thinness)
from .constructions import (bose_chowla, greedy_sidon, powers_of_two,
                            thin_direct, thin_from_bose_chowla)
from .bounds import (closed_form_bound, feasible_translate_count, johnson_min_ground,
                     parameter_feasibility, FeasibilityParams)
from .solver import (PruneConfig, SearchProblem, brute_force, extremal_table, maximize)

__all__ = [
    "Cyclic", "DifferenceHistogram", "IntegerSet", "Interval", "UNBOUNDED",
    "difference_histogram", "is_sidon", "is_thin", "is_weak_sidon", "parse_set_text",
    "format_set_text", "repeated_distances", "thinness", "bose_chowla", "greedy_sidon",
    "powers_of_two", "thin_direct", "thin_from_bose_chowla", "closed_form_bound",
    "feasible_translate_count", "johnson_min_ground", "parameter_feasibility",
    "FeasibilityParams", "PruneConfig", "SearchProblem", "brute_force",
    "extremal_table", "maximize",
]
