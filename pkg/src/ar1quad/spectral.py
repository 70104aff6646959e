"""Characteristic roots, validity domain, and stable sequence-ratio machinery.

Everything downstream rests on the quadratic

    lambda^2 - (-2*alpha + theta^2 + 1)*lambda + theta^2 = 0,

whose roots lambda_plus, lambda_minus (labelled by modulus) define the
weights beta_+/- and the auxiliary sequences

    pi_t  = beta_+ * lambda_+^(t+1) + beta_- * lambda_-^(t+1)
    psi_t = beta_+ * (lambda_+/theta)^t + beta_- * (lambda_-/theta)^t.

pi and psi grow geometrically, so raw values overflow long before the
horizons of interest (t up to 10^6).  Public code therefore only ever forms

    r_t     = psi_t / psi_{t+1}
    inv_psi = 1 / psi_{t+1}
    log_pi  = log(pi_t)

The ratio r obeys the continued-fraction recurrence r_s = 1/(K - r_{s-1})
with K = (lambda_+ + lambda_-)/theta and r_0 = theta, which is used for
moderate horizons; for large horizons the equivalent closed ratio form in
the contracting variable (lambda_-/lambda_+)^t is used, which costs O(1).
Raw psi/pi evaluation is provided for cross-checks only and is capped at
small indices.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import DomainBoundaryError, DomainError, SingularSequenceError
from .model import ModelParams

# Strict-inequality margin for the root-modulus tests; boundary points are
# rejected rather than guessed.
DOMAIN_MARGIN = 1e-12

# Above this horizon the O(t) continued fraction is replaced by the O(1)
# closed ratio form (a pure-Python loop would blow the latency budget at
# t ~ 10^6); both paths agree to ~1e-14 and are cross-checked in tests.
RECURRENCE_MAX_T = 32768

# Raw psi/pi values overflow like |lambda_+/theta|^t; cross-checks at
# horizon <= 50 need indices up to 51.
RAW_INDEX_MAX = 51


@dataclass(frozen=True)
class TransformPoint:
    """A transform argument alpha together with its alias mu = -2*alpha."""

    alpha: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))

    @property
    def mu(self) -> complex:
        return -2.0 * self.alpha


@dataclass(frozen=True)
class SpectralData:
    """Roots and weights of the characteristic quadratic at one alpha.

    lambda_plus is the root of larger modulus; beta_+/- satisfy
    beta_plus + beta_minus = 1 (since pi_0 = 1).  in_domain records whether
    |lambda_minus| < |theta| < |lambda_plus| holds strictly.
    """

    lambda_plus: complex
    lambda_minus: complex
    beta_plus: complex
    beta_minus: complex
    in_domain: bool


@dataclass(frozen=True)
class SequenceRatios:
    """Stably computed sequence quantities at horizon t.

    r = psi_t/psi_{t+1}, inv_psi = 1/psi_{t+1}, log_pi = log(pi_t) as the
    principal logarithm of the dominant factor plus a bounded correction:
    log_pi = (t+1)*log(lambda_+) + log(beta_+ + beta_-*(lambda_-/lambda_+)^(t+1)).
    For alpha on the real-negative axis both log arguments are positive
    reals; branch continuation off the principal branch is not attempted.
    """

    t: int
    r: complex
    inv_psi: complex
    log_pi: complex


def roots(params: ModelParams, point: TransformPoint) -> SpectralData:
    """Solve the characteristic quadratic and label the roots by modulus.

    The discriminant is evaluated in the factored form
    (-2*alpha + (theta+1)^2) * (-2*alpha + (theta-1)^2) and the smaller
    root comes from the product relation lambda_+*lambda_- = theta^2, which
    avoids cancellation.  Raises DomainBoundaryError when the two moduli
    coincide within DOMAIN_MARGIN (labelling would be arbitrary there).
    """
    theta = params.theta
    theta2 = theta * theta
    alpha = point.alpha
    b = -2.0 * alpha + theta2 + 1.0
    disc = (-2.0 * alpha + (theta + 1.0) ** 2) * (-2.0 * alpha + (theta - 1.0) ** 2)
    s = cmath.sqrt(disc)
    if (b.conjugate() * s).real < 0.0:
        s = -s
    lam_plus = 0.5 * (b + s)
    lam_minus = theta2 / lam_plus
    if abs(lam_plus) - abs(lam_minus) <= DOMAIN_MARGIN * abs(lam_plus):
        raise DomainBoundaryError(
            f"|lambda_+| == |lambda_-| at alpha={alpha}: root labelling is ambiguous "
            "(boundary of the validity domain)"
        )
    denom = lam_plus - lam_minus
    beta_plus = (1.0 - lam_minus) / denom
    # lam_plus - 1 == mu/(1 - lam_minus) by the quadratic; the direct
    # subtraction cancels catastrophically as alpha -> 0 (lam_plus -> 1)
    beta_minus = -2.0 * alpha / ((1.0 - lam_minus) * denom)
    abs_theta = abs(theta)
    in_domain = (
        abs(lam_minus) < (1.0 - DOMAIN_MARGIN) * abs_theta
        and abs(lam_plus) > (1.0 + DOMAIN_MARGIN) * abs_theta
    )
    return SpectralData(
        lambda_plus=lam_plus,
        lambda_minus=lam_minus,
        beta_plus=beta_plus,
        beta_minus=beta_minus,
        in_domain=in_domain,
    )


def domain_check(params: ModelParams, point: TransformPoint) -> bool:
    """True iff |lambda_-|/|theta| < 1 < |lambda_+|/|theta| strictly.

    Every alpha on the real interval (-inf, 0] passes.  Boundary points
    (including equal-modulus root pairs) return False rather than raising.
    """
    try:
        return roots(params, point).in_domain
    except DomainBoundaryError:
        return False


def _int_power(base: complex, n: int) -> complex:
    """base**n for integer n via exp(n*log): single-valued, and underflows
    gracefully to 0 for |base| < 1 and large n."""
    if base == 0:
        return complex(0.0)
    return cmath.exp(n * cmath.log(base))


def sequence_ratios(spectral: SpectralData, params: ModelParams, t: int) -> SequenceRatios:
    """Compute r_t = psi_t/psi_{t+1}, 1/psi_{t+1} and log(pi_t) at horizon t.

    Raw psi/pi are never formed.  For t <= RECURRENCE_MAX_T the ratio runs
    the continued fraction r_s = 1/(K - r_{s-1}) from r_0 = theta and
    accumulates inv_psi as the product of the ratios (1/psi_1 = theta);
    beyond that the closed ratio form in w = (theta/lambda_+)^2 is used.
    A vanishing denominator means psi itself has a zero at the requested
    index and raises SingularSequenceError.
    """
    if t < 0:
        raise ValueError(f"horizon t must be >= 0, got {t}")
    if not spectral.in_domain:
        raise DomainError("sequence ratios are only defined inside the validity domain")
    theta = params.theta
    lam_plus, lam_minus = spectral.lambda_plus, spectral.lambda_minus

    correction = spectral.beta_plus + spectral.beta_minus * _int_power(lam_minus / lam_plus, t + 1)
    if correction == 0:
        raise SingularSequenceError(f"pi_{t} vanishes at alpha with roots {lam_plus}, {lam_minus}")
    log_pi = (t + 1) * cmath.log(lam_plus) + cmath.log(correction)

    if t <= RECURRENCE_MAX_T:
        cont = (lam_plus + lam_minus) / theta
        r = complex(theta)
        inv_psi = complex(theta)
        for _ in range(t):
            d = cont - r
            if d == 0:
                raise SingularSequenceError("psi vanishes along the continued fraction")
            r = 1.0 / d
            inv_psi *= r
        if not (cmath.isfinite(r) and cmath.isfinite(inv_psi)):
            raise SingularSequenceError("psi vanishes at the requested horizon")
    else:
        z = lam_plus / theta
        log_z = cmath.log(z)
        w_t = cmath.exp(-2.0 * t * log_z)
        w_t1 = cmath.exp(-2.0 * (t + 1) * log_z)
        denom = spectral.beta_plus + spectral.beta_minus * w_t1
        if denom == 0:
            raise SingularSequenceError(f"psi_{t + 1} vanishes")
        r = (spectral.beta_plus + spectral.beta_minus * w_t) / (z * denom)
        inv_psi = cmath.exp(-(t + 1) * log_z) / denom
    return SequenceRatios(t=t, r=r, inv_psi=inv_psi, log_pi=log_pi)


def raw_psi(spectral: SpectralData, params: ModelParams, s: int) -> complex:
    """psi_s evaluated directly; cross-check use only, capped at small s."""
    if not 0 <= s <= RAW_INDEX_MAX:
        raise ValueError(f"raw psi evaluation is capped at index {RAW_INDEX_MAX}, got {s}")
    z = spectral.lambda_plus / params.theta
    return spectral.beta_plus * _int_power(z, s) + spectral.beta_minus * _int_power(z, -s)


def raw_pi(spectral: SpectralData, params: ModelParams, s: int) -> complex:
    """pi_s evaluated directly; cross-check use only, capped at small s."""
    if not 0 <= s <= RAW_INDEX_MAX:
        raise ValueError(f"raw pi evaluation is capped at index {RAW_INDEX_MAX}, got {s}")
    return spectral.beta_plus * _int_power(spectral.lambda_plus, s + 1) + spectral.beta_minus * _int_power(
        spectral.lambda_minus, s + 1
    )
