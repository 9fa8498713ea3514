"""Assembly of ln A by each route, with cross-validation and error budgets.

Routes:
  classical      ln A = 1/12 - 2 * int_0^inf x ln x / (e^{2 pi x} - 1) dx
  binet          ln A = (1/9) ln 2 + 1/24 + (2/3) * I_theta
  malmsten       ln A = 1/3 + (7/36) ln 2 - (1/6) ln pi + (2/3) * I_M
  direct_lgamma  ln A = (2/3) [int_0^{1/2} ln Gamma(x+1) dx
                               + 1/2 + (7/24) ln 2 - (1/4) ln pi]
  limit_sequence the defining limit term, optionally Richardson-accelerated

All closed-form constants are assembled from ln 2 and ln pi at import time,
never as decimal literals.  The frozen reference value of ln A was produced
by two disjoint routes (Richardson-extrapolated limit sequence at
n = 200/400/800 and compactified quadrature of the classical integral at
tol 1e-13); construct_reference() reruns that procedure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import specfun
from .integrands import get_integrand, lngamma_direct_integrand
from .quadrature import (
    DEFAULT_MAX_EVALS,
    QuadratureResult,
    TruncationPolicy,
    integrate_finite,
    integrate_semi_infinite,
)

__all__ = [
    "ConstantEstimate",
    "LN_A_REFERENCE",
    "METHODS",
    "BINET_FIRST_INTEGRAL_CONSTANT",
    "BINET_SECOND_INTEGRAL_CONSTANT",
    "MALMSTEN_PREFIX",
    "ln_a_classical",
    "ln_a_binet",
    "ln_a_malmsten",
    "ln_a_direct_lgamma",
    "ln_a_limit_sequence",
    "ln_a",
    "identity_residual_eq4",
    "construct_reference",
]

LN2 = math.log(2.0)
LNPI = math.log(math.pi)

# int_0^{1/2} (x ln x - x) dx = -(1/8)(ln 2 + 3/2)
BINET_FIRST_INTEGRAL_CONSTANT = -(LN2 + 1.5) / 8.0
# int_0^{1/2} ln(2 pi x) dx = (1/2)(ln pi - 1)
BINET_SECOND_INTEGRAL_CONSTANT = 0.5 * (LNPI - 1.0)
# closed-form prefix of the Binet route
BINET_PREFIX = LN2 / 9.0 + 1.0 / 24.0
# closed-form prefix of the Malmsten route
MALMSTEN_PREFIX = 1.0 / 3.0 + 7.0 / 36.0 * LN2 - LNPI / 6.0
# constants of the shared definite-integral identity
EQ4_CONSTANT = -0.5 - 7.0 / 24.0 * LN2 + 0.25 * LNPI

# Frozen reference value of ln A (dual-path construction; see module docstring).
LN_A_REFERENCE = 0.2487544770337843

METHODS = ("classical", "binet", "malmsten", "direct_lgamma", "limit_sequence")


@dataclass(frozen=True)
class ConstantEstimate:
    method: str
    ln_A: float
    discretization_error: float
    truncation_error: float
    evaluations: int
    converged: bool
    truncation_T: float = 0.0
    truncation_mode: str = "none"


def _check_tol(tol: float) -> None:
    if not 1e-12 <= tol <= 1e-4:
        raise ValueError(f"tol {tol} outside [1e-12, 1e-4]")


def _from_quadrature(
    method: str, res: QuadratureResult, scale: float, offset: float
) -> ConstantEstimate:
    """offset + scale * integral, with the error budget scaled alongside."""
    s = abs(scale)
    return ConstantEstimate(
        method=method,
        ln_A=offset + scale * res.value,
        discretization_error=s * (res.error_estimate - res.truncation_error),
        truncation_error=s * res.truncation_error,
        evaluations=res.evaluations,
        converged=res.converged,
        truncation_T=res.truncation_T,
        truncation_mode=res.truncation_mode,
    )


def ln_a_classical(
    tol: float = 1e-10,
    policy: Optional[TruncationPolicy] = None,
    max_evals: int = DEFAULT_MAX_EVALS,
    strict: bool = True,
) -> ConstantEstimate:
    _check_tol(tol)
    res = integrate_semi_infinite(
        get_integrand("classical"), tol / 2.0, policy, max_evals, strict
    )
    return _from_quadrature("classical", res, -2.0, 1.0 / 12.0)


def ln_a_binet(
    tol: float = 1e-10,
    policy: Optional[TruncationPolicy] = None,
    max_evals: int = DEFAULT_MAX_EVALS,
    strict: bool = True,
) -> ConstantEstimate:
    _check_tol(tol)
    res = integrate_semi_infinite(
        get_integrand("binet_form13"), tol * 1.5, policy, max_evals, strict
    )
    return _from_quadrature("binet", res, 2.0 / 3.0, BINET_PREFIX)


def ln_a_malmsten(
    tol: float = 1e-10,
    policy: Optional[TruncationPolicy] = None,
    max_evals: int = DEFAULT_MAX_EVALS,
    strict: bool = True,
) -> ConstantEstimate:
    _check_tol(tol)
    res = integrate_semi_infinite(
        get_integrand("malmsten_form19"), tol * 1.5, policy, max_evals, strict
    )
    return _from_quadrature("malmsten", res, 2.0 / 3.0, MALMSTEN_PREFIX)


def ln_a_direct_lgamma(
    tol: float = 1e-10, max_evals: int = DEFAULT_MAX_EVALS
) -> ConstantEstimate:
    _check_tol(tol)
    res = integrate_finite(
        lngamma_direct_integrand, 0.0, 0.5, tol * 1.5, None, max_evals
    )
    offset = (2.0 / 3.0) * (0.5 + 7.0 / 24.0 * LN2 - 0.25 * LNPI)
    return _from_quadrature("direct_lgamma", res, 2.0 / 3.0, offset)


def ln_a_limit_sequence(n_max: int = 1000, richardson: bool = True) -> ConstantEstimate:
    """ln A from the defining limit sequence; no quadrature code involved.

    With richardson=True one extrapolation step in 1/n^2 is applied across
    (n_max/2, n_max); the step size |extrapolated - raw| is reported as the
    (certainly conservative) error estimate.
    """
    if not 1 <= n_max <= 100_000:
        raise ValueError(f"n_max {n_max} outside [1, 1e5]")
    raw = specfun.glaisher_seq_log_term(n_max)
    if richardson and n_max >= 2:
        half = specfun.glaisher_seq_log_term(n_max // 2)
        value = (4.0 * raw - half) / 3.0
        err = abs(value - raw)
        evals = n_max + n_max // 2
    else:
        value = raw
        # leading error is ~1/(240 n^2); double it for headroom
        err = 1.0 / (120.0 * n_max * n_max)
        evals = n_max
    return ConstantEstimate(
        method="limit_sequence",
        ln_A=value,
        discretization_error=err,
        truncation_error=0.0,
        evaluations=evals,
        converged=True,
    )


def ln_a(method: str, tol: float = 1e-10, **kwargs) -> ConstantEstimate:
    """Dispatch by method name."""
    if method == "classical":
        return ln_a_classical(tol, **kwargs)
    if method == "binet":
        return ln_a_binet(tol, **kwargs)
    if method == "malmsten":
        return ln_a_malmsten(tol, **kwargs)
    if method == "direct_lgamma":
        return ln_a_direct_lgamma(tol, **kwargs)
    if method == "limit_sequence":
        return ln_a_limit_sequence(**kwargs)
    raise ValueError(f"unknown method {method!r}; known: {', '.join(METHODS)}")


def identity_residual_eq4(tol: float = 1e-10) -> float:
    """LHS-minus-RHS residual of the shared definite-integral identity.

    LHS: direct quadrature of int_0^{1/2} ln Gamma(x+1) dx.
    RHS: the closed form -1/2 - (7/24) ln 2 + (1/4) ln pi + (3/2) ln A,
    with ln A taken from the Malmsten route at the same tolerance.
    """
    _check_tol(tol)
    lhs = integrate_finite(lngamma_direct_integrand, 0.0, 0.5, tol).value
    rhs = EQ4_CONSTANT + 1.5 * ln_a_malmsten(tol).ln_A
    return lhs - rhs


def construct_reference() -> tuple[float, float]:
    """Recompute ln A by the two disjoint oracle-construction paths.

    Returns (sequence_path, quadrature_path): a two-level Richardson
    extrapolation in 1/n^2 of the limit sequence at n = 200, 400, 800, and
    1/12 - 2x the compactified classical integral at tol 1e-13.
    """
    t200 = specfun.glaisher_seq_log_term(200)
    t400 = specfun.glaisher_seq_log_term(400)
    t800 = specfun.glaisher_seq_log_term(800)
    r1 = (4.0 * t400 - t200) / 3.0
    r2 = (4.0 * t800 - t400) / 3.0
    seq_path = (16.0 * r2 - r1) / 15.0

    res = integrate_semi_infinite(
        get_integrand("classical"), 1e-13, TruncationPolicy.compactify(5.0)
    )
    quad_path = 1.0 / 12.0 - 2.0 * res.value
    return seq_path, quad_path
