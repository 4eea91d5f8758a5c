"""Spin measurement amplitude engine.

Computes spin projection operators for arbitrary j, probability amplitude
tables between quantization directions, and Born-rule samples of sequential
Stern-Gerlach measurement chains. The heavy lifting lives in the C++
extension module.
"""

from ._core import (
    DEFAULT_SEED,
    analytic_chain_probabilities,
    casimir,
    eigenbasis,
    general_closed_form,
    general_table,
    probability_table,
    projection_operator,
    run_chain,
    spin_components,
    standard_closed_form,
    standard_table,
    verify_closed_forms,
)

__all__ = [
    "DEFAULT_SEED",
    "analytic_chain_probabilities",
    "casimir",
    "eigenbasis",
    "general_closed_form",
    "general_table",
    "probability_table",
    "projection_operator",
    "run_chain",
    "spin_components",
    "standard_closed_form",
    "standard_table",
    "verify_closed_forms",
]

__version__ = "0.1.0"
