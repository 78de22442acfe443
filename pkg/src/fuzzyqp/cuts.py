"""Extraction of the two crisp parametric QPs from a fuzzy QP at a level alpha.

The lower instance takes every coefficient at the left endpoint of its
alpha-cut, the upper instance at the right endpoint.  At alpha = 1 both
collapse to the modal (crisp core) problem.
"""
from __future__ import annotations

import numpy as np

from .fuzzy import check_alpha
from .problem import CrispQP, FuzzyQP, ValidationError, validate


def _endpoints(p: FuzzyQP, alpha: float, side: int):
    """Stack the chosen cut endpoint (side 0 = lower, 1 = upper) of all coefficients."""
    cut = lambda t: (
        t.a1 + alpha * (t.a2 - t.a1) if side == 0 else t.a3 - alpha * (t.a3 - t.a2)
    )
    c = np.array([cut(t) for t in p.c])
    Q = np.array([[cut(t) for t in row] for row in p.Q])
    A = np.array([[cut(t) for t in row] for row in p.A])
    b = np.array([cut(t) for t in p.b])
    return c, Q, A, b


def _checked(p: FuzzyQP, alpha: float) -> float:
    alpha = check_alpha(alpha)
    violations = validate(p)
    if violations:
        raise ValidationError(violations)
    return alpha


def lower_qp(p: FuzzyQP, alpha: float) -> CrispQP:
    """Crisp QP with every coefficient at its lower cut endpoint."""
    alpha = _checked(p, alpha)
    return CrispQP(*_endpoints(p, alpha, 0))


def upper_qp(p: FuzzyQP, alpha: float) -> CrispQP:
    """Crisp QP with every coefficient at its upper cut endpoint."""
    alpha = _checked(p, alpha)
    return CrispQP(*_endpoints(p, alpha, 1))
