"""Elastic half-space under a capillary line load."""
from .errors import (ConvergenceError, DegenerateMetricError, DomainError, FitError,
                     IdentityViolation, InconsistentLoadError, InfeasibleError,
                     SingularDenominatorError, SlopeSignError)
from .fields import (FieldSample, ScaledProblem, apply_scaling, contact_angle, eval_fields,
                     field_arrays, ray_limit)
from .kernels import BACKEND
from .potentials import Divergent, Material, eval_F_chain, eval_F_closed, eval_g_chain

__all__ = [
    "BACKEND", "ConvergenceError", "DegenerateMetricError", "Divergent", "DomainError",
    "FieldSample", "FitError", "IdentityViolation", "InconsistentLoadError",
    "InfeasibleError", "Material", "ScaledProblem", "SingularDenominatorError",
    "SlopeSignError", "apply_scaling", "contact_angle", "eval_F_chain", "eval_F_closed",
    "eval_fields", "eval_g_chain", "field_arrays", "ray_limit",
]
