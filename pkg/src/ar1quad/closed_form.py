"""Exact conditional transform L_t(alpha, x) and its ergodic constants.

For alpha in the validity domain D, the exponential transform of the
partial sum S_t = sum_{s=0..t} X_s^2 given X_0 = x is

    L_t(alpha, x) = E[exp(alpha*S_t) | X_0 = x] = pi_t^(-1/2) * exp(alpha*Sigma_t)

with

    Sigma_t = A*t + x^2 + B*(theta - psi_t/psi_{t+1}) + C*(theta - 1/psi_{t+1})

and constants (mu = -2*alpha)

    nu = m*(1-theta) / (mu + (1-theta)^2)
    A  = m*(1-theta)*nu
    B  = (theta/mu)*(x - (1-theta)*nu)^2 - theta*nu^2
    C  = 2*nu*(x - (1-theta)*nu).

As t grows, exp(-t*Lambda(alpha)) * L_t(alpha, x) converges to
f_check(alpha, x) at geometric speed |theta/lambda_+|^t, where

    Lambda(alpha)  = alpha*m^2*(1-theta)^2/(mu + (1-theta)^2) - (1/2)*log(lambda_+)
    f_check(alpha, x) = (beta_+*lambda_+)^(-1/2)
                        * exp(alpha*(x^2 + B*(theta - theta/lambda_+) + C*theta)).

All exponentials are assembled in log domain and exponentiated last, so
horizons up to 10^6 neither overflow nor lose the normalized limit.
alpha == 0 is special-cased (L_t = 1, Lambda = 0, f_check = 1): the B
constant has a 1/(-2*alpha) pole there although the limit exists.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass

from .errors import DomainError, SingularConstantError
from .model import ModelParams
from .spectral import SpectralData, TransformPoint, raw_psi, roots, sequence_ratios

_LOG_MAX = math.log(sys.float_info.max)  # ~709.78
_LOG_MIN = -745.0  # below the smallest subnormal's log

# sigma_via_recursion forms raw psi values, which overflow beyond this.
RECURSION_MAX_T = 50


@dataclass(frozen=True)
class ClosedFormConstants:
    """The constants nu, A, B, C entering Sigma_t, for one (alpha, x)."""

    nu: complex
    A: complex
    B: complex
    C: complex


@dataclass(frozen=True)
class TransformValue:
    """L_t(alpha, x) with its log-domain representation.

    `value` is exp(log_value); when Re(log_value) leaves the double
    exponent range, value is +/-inf or 0 and `overflow` is set.  sigma_t
    is None at alpha == 0, where only alpha*Sigma_t (which vanishes) is
    defined.  For tiny |alpha| the sigma_t field loses relative precision
    like eps/|alpha| through the B*(theta - r_t) product; log_value and
    value are unaffected because the alpha factor cancels B's growth.
    """

    log_value: complex
    value: complex
    sigma_t: complex | None
    overflow: bool = False


@dataclass(frozen=True)
class ErgodicConstants:
    """Growth rate Lambda(alpha), limit function f_check(alpha, x), and the
    geometric convergence factor rate = |theta/lambda_+| in (0, 1)."""

    lambda_of_alpha: complex
    f_check: complex
    rate: float


@dataclass(frozen=True)
class RateFit:
    """Least-squares estimate of the geometric error-decay ratio."""

    ratio: float
    n_points: int


def _exp_checked(log_value: complex) -> tuple[complex, bool]:
    re = log_value.real
    if re > _LOG_MAX:
        return cmath.rect(math.inf, log_value.imag), True
    if re < _LOG_MIN:
        return complex(0.0), True
    return cmath.exp(log_value), False


def _in_domain_roots(params: ModelParams, point: TransformPoint) -> SpectralData:
    spectral = roots(params, point)
    if not spectral.in_domain:
        raise DomainError(f"alpha={point.alpha} is outside the validity domain")
    return spectral


def constants(params: ModelParams, point: TransformPoint, x: float) -> ClosedFormConstants:
    """Evaluate nu, A, B, C at (alpha, x).  Requires alpha != 0."""
    alpha = point.alpha
    if alpha == 0:
        raise SingularConstantError("B has a 1/(-2*alpha) pole at alpha == 0")
    theta, m = params.theta, params.m
    mu = point.mu
    nu = m * (1.0 - theta) / (mu + (1.0 - theta) ** 2)
    a_const = m * (1.0 - theta) * nu
    centred = x - (1.0 - theta) * nu
    b_const = theta / mu * centred * centred - theta * nu * nu
    c_const = 2.0 * nu * centred
    return ClosedFormConstants(nu=nu, A=a_const, B=b_const, C=c_const)


def transform(params: ModelParams, point: TransformPoint, x: float, t: int) -> TransformValue:
    """Exact L_t(alpha, x), assembled as exp(-log(pi_t)/2 + alpha*Sigma_t).

    alpha == 0 returns exactly 1.  Raises DomainError for alpha outside D.
    """
    if t < 0:
        raise ValueError(f"horizon t must be >= 0, got {t}")
    if point.alpha == 0:
        return TransformValue(log_value=complex(0.0), value=complex(1.0), sigma_t=None)
    spectral = _in_domain_roots(params, point)
    seq = sequence_ratios(spectral, params, t)
    cf = constants(params, point, x)
    theta = params.theta
    sigma = cf.A * t + x * x + cf.B * (theta - seq.r) + cf.C * (theta - seq.inv_psi)
    log_value = -0.5 * seq.log_pi + point.alpha * sigma
    value, overflow = _exp_checked(log_value)
    return TransformValue(log_value=log_value, value=value, sigma_t=sigma, overflow=overflow)


def sigma_via_recursion(params: ModelParams, point: TransformPoint, x: float, t: int) -> complex:
    """Sigma_t rebuilt from the one-step weighted recursion (cross-check).

    Iterates z_s = (psi_{s-1}/psi_s)*z_{s-1} + (1-theta)*m from z_0 = x and
    sums psi_s/(theta*psi_{s+1}) * z_s^2, using raw psi values throughout.
    Independent of the A, B, C telescoping, so agreement with
    transform(...).sigma_t validates the closed form.  Capped at t <= 50
    (raw psi overflows beyond).
    """
    if not 0 <= t <= RECURSION_MAX_T:
        raise ValueError(f"recursion cross-check requires 0 <= t <= {RECURSION_MAX_T}, got {t}")
    spectral = _in_domain_roots(params, point)
    theta, m = params.theta, params.m
    psi = [raw_psi(spectral, params, s) for s in range(t + 2)]
    z_s = complex(x)
    total = psi[0] / (theta * psi[1]) * z_s * z_s
    for s in range(1, t + 1):
        z_s = (psi[s - 1] / psi[s]) * z_s + (1.0 - theta) * m
        total += psi[s] / (theta * psi[s + 1]) * z_s * z_s
    return total


def ergodic_constants(params: ModelParams, point: TransformPoint, x: float) -> ErgodicConstants:
    """Lambda(alpha), f_check(alpha, x) and the convergence factor.

    alpha == 0 is the degenerate limit (Lambda = 0, f_check = 1,
    rate = |theta| since lambda_+ -> 1).
    """
    theta, m = params.theta, params.m
    if point.alpha == 0:
        return ErgodicConstants(lambda_of_alpha=complex(0.0), f_check=complex(1.0), rate=abs(theta))
    spectral = _in_domain_roots(params, point)
    alpha = point.alpha
    lam_plus = spectral.lambda_plus
    drift = alpha * (m * (1.0 - theta)) ** 2 / (-2.0 * alpha + (1.0 - theta) ** 2) - 0.5 * cmath.log(
        lam_plus
    )
    cf = constants(params, point, x)
    # log split as in normalized_transform so the two stay branch-consistent
    log_f = -0.5 * (cmath.log(spectral.beta_plus) + cmath.log(lam_plus)) + alpha * (
        x * x + cf.B * (theta - theta / lam_plus) + cf.C * theta
    )
    return ErgodicConstants(
        lambda_of_alpha=drift, f_check=cmath.exp(log_f), rate=abs(theta / lam_plus)
    )


def normalized_transform(params: ModelParams, point: TransformPoint, x: float, t: int) -> complex:
    """exp(-t*Lambda(alpha)) * L_t(alpha, x), assembled in log domain.

    The t-proportional parts of log(L_t) and t*Lambda cancel analytically
    and are never formed, so the result stays accurate to full precision
    at any horizon (subtracting two O(t) logs would lose ~t*eps absolute).
    """
    if t < 0:
        raise ValueError(f"horizon t must be >= 0, got {t}")
    if point.alpha == 0:
        return complex(1.0)
    spectral = _in_domain_roots(params, point)
    seq = sequence_ratios(spectral, params, t)
    cf = constants(params, point, x)
    theta = params.theta
    rho = spectral.lambda_minus / spectral.lambda_plus
    correction = spectral.beta_plus + spectral.beta_minus * cmath.exp((t + 1) * cmath.log(rho))
    log_norm = -0.5 * (cmath.log(spectral.lambda_plus) + cmath.log(correction)) + point.alpha * (
        x * x + cf.B * (theta - seq.r) + cf.C * (theta - seq.inv_psi)
    )
    return cmath.exp(log_norm)


def fit_convergence_rate(
    params: ModelParams,
    point: TransformPoint,
    x: float,
    t_start: int = 20,
    t_end: int = 80,
    noise_floor: float = 1e-13,
) -> RateFit:
    """Fit the geometric ratio of |normalized_transform(t) - f_check|.

    Least squares on log|error| over t in [t_start, t_end], discarding
    points whose absolute error is below `noise_floor` (they sit on the
    floating-point plateau and carry no rate information).  The fitted
    ratio should match ErgodicConstants.rate.
    """
    target = ergodic_constants(params, point, x).f_check
    points = []
    for t in range(t_start, t_end + 1):
        err = abs(normalized_transform(params, point, x, t) - target)
        if err > noise_floor:
            points.append((t, math.log(err)))
    if len(points) < 2:
        raise ValueError(
            "fewer than two error points above the noise floor; widen the window "
            "or lower the floor"
        )
    n = len(points)
    mean_t = sum(p[0] for p in points) / n
    mean_y = sum(p[1] for p in points) / n
    sxy = sum((p[0] - mean_t) * (p[1] - mean_y) for p in points)
    sxx = sum((p[0] - mean_t) ** 2 for p in points)
    return RateFit(ratio=math.exp(sxy / sxx), n_points=n)
