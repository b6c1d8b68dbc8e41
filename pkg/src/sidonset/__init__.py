"""Exact toolkit for h-Sidon (B_h) sets of rationals."""

__version__ = "0.1.0"

from .errors import SidonError  # noqa: E402
from .field_abs import AbsoluteValue, abs_value, parse_rational  # noqa: E402
from .perturb import PerturbationPlan, forbidden_set, perturb_point, perturb_sequence, perturb_stream  # noqa: E402
from .sidon_core import (  # noqa: E402
    CollisionWitness,
    PointConfiguration,
    Verdict,
    validate_configuration,
    verify_bruteforce,
    verify_hyperplane,
    weight_to_witness,
    witness_to_weight,
)
from .weights import WeightVector, enumerate_weight_vectors  # noqa: E402
