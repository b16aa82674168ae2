"""The z-parameterized family of metric solutions.

For H = 2*omega*K0 + 2*alpha*Km + 2*beta*Kp with alpha != beta and
omega**2 - 4*alpha*beta > 0, a one-parameter family of Hermitian
exponents A(z) = 2*eps*K0 + 2*eta*(Km + Kp), z in [-1, 1], makes
h = rho H rho^{-1} Hermitian for rho = exp(A).  This module solves the
Hermiticity condition for eps(z) (eta = z*eps/2), evaluates the
conjugated coefficients (U, V, W), the oscillator weights (mu, nu) of h,
the positive base Lambda of the power form of rho, and the commuting
observable fixed by rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import AlgebraElement, _cosh_sinhc, conjugate
from .errors import InvalidParams, TrigRegime, ZOutOfDomain

# mu and nu have 1/(1 -+ z) poles; they are only reported away from the
# endpoints and the endpoint Hamiltonian is assembled by conjugation.
_EDGE = 1e-9


@dataclass(frozen=True)
class SwansonParams:
    """Oscillator frequency and the two non-Hermitian couplings."""

    omega: float
    alpha: float
    beta: float


@dataclass(frozen=True)
class MetricSolution:
    """All derived quantities of the metric family at one (params, z)."""

    params: SwansonParams
    z: float
    epsilon: float
    eta: float
    theta: float
    mu: float
    nu: float
    lambda_base: float
    u: float
    v: float
    w: float


def validate_params(p: SwansonParams) -> SwansonParams:
    """Check the constraints that keep the spectrum real and the family
    nontrivial; returns the parameters unchanged when valid."""
    if not (p.omega > 0.0):
        raise InvalidParams(f"omega must be positive (got omega = {p.omega:g})")
    if p.alpha == p.beta:
        raise InvalidParams(
            f"alpha and beta must differ (got alpha = beta = {p.alpha:g})")
    gap = p.omega * p.omega - 4.0 * p.alpha * p.beta
    if not (gap > 0.0):
        raise InvalidParams(
            f"omega^2 - 4*alpha*beta must be positive (got {gap:g})")
    return p


def swanson_element(p: SwansonParams) -> AlgebraElement:
    """H as an algebra element: (2*omega, 2*alpha, 2*beta)."""
    return AlgebraElement(2.0 * p.omega, 2.0 * p.alpha, 2.0 * p.beta)


def _stability_poly(p: SwansonParams, z: float) -> float:
    """(alpha+beta-omega*z)**2 - (alpha-beta)**2 (1-z**2), expanded.

    Positive exactly where the arctanh argument of eps(z) has modulus
    below one (equivalently where the mu/nu square root is real).
    """
    a = p.omega * p.omega + (p.alpha - p.beta) ** 2
    b = -2.0 * (p.alpha + p.beta) * p.omega
    c = 4.0 * p.alpha * p.beta
    return (a * z + b) * z + c


def is_admissible(p: SwansonParams, z: float) -> bool:
    """True when z in [-1, 1] gives a finite real solution eps(z)."""
    validate_params(p)
    if abs(z) > 1.0:
        return False
    return _stability_poly(p, z) > 0.0


def z_domain(p: SwansonParams) -> list[tuple[float, float]]:
    """Admissible subset of [-1, 1] as a list of intervals.

    The excluded set is the closed band between the two real roots of the
    stability polynomial (the discriminant (alpha-beta)**2 (omega**2 -
    4 alpha beta) is positive for valid parameters).  Interval endpoints
    are the closure; use is_admissible for the strict pointwise test
    (relevant only at z = +-1 when omega = -+(alpha+beta)).
    """
    validate_params(p)
    a = p.omega * p.omega + (p.alpha - p.beta) ** 2
    b = -2.0 * (p.alpha + p.beta) * p.omega
    c = 4.0 * p.alpha * p.beta
    disc = b * b - 4.0 * a * c
    root = math.sqrt(disc)
    z1 = (-b - root) / (2.0 * a)
    z2 = (-b + root) / (2.0 * a)
    intervals = []
    if min(z1, 1.0) > -1.0:
        intervals.append((-1.0, min(z1, 1.0)))
    if max(z2, -1.0) < 1.0:
        intervals.append((max(z2, -1.0), 1.0))
    return intervals


def solve_epsilon(p: SwansonParams, z: float) -> float:
    """Scale eps of the metric exponent at family parameter z.

        eps = arctanh( (alpha-beta)*sqrt(1-z^2) / (alpha+beta-z*omega) )
              / (2*sqrt(1-z^2))

    on the principal real branch; at |z| = 1 the analytic limit
    (alpha-beta) / (2*(alpha+beta-z*omega)) is returned.
    """
    validate_params(p)
    if abs(z) > 1.0:
        raise ZOutOfDomain(f"z must lie in [-1, 1] (got z = {z:g})")
    den = p.alpha + p.beta - z * p.omega
    if abs(z) == 1.0:
        if den == 0.0:
            raise ZOutOfDomain(
                f"alpha + beta - omega*z vanishes at z = {z:g}")
        return (p.alpha - p.beta) / (2.0 * den)
    if _stability_poly(p, z) <= 0.0:
        raise ZOutOfDomain(
            f"z = {z:g} is inadmissible: |arctanh argument| >= 1 "
            f"(alpha + beta - omega*z = {den:g})")
    root = math.sqrt(1.0 - z * z)
    return math.atanh((p.alpha - p.beta) * root / den) / (2.0 * root)


def conjugated_coeffs(p: SwansonParams, epsilon: float,
                      eta: complex) -> tuple[complex, complex, complex]:
    """(U, V, W) with rho H rho^{-1} = 2U K0 + 2V Km + 2W Kp.

    Evaluated from the closed adjoint-action forms; for eps solved by
    solve_epsilon (and eta = z*eps/2 real) U is real and W equals V.
    """
    validate_params(p)
    eta = complex(eta)
    abs2 = (eta * eta.conjugate()).real
    theta_sq = epsilon * epsilon - 4.0 * abs2
    if theta_sq < 0.0:
        raise TrigRegime(f"theta^2 = {theta_sq:.6g} < 0")
    c, s = _cosh_sinhc(theta_sq)
    cm_ = c - epsilon * s
    cp_ = c + epsilon * s
    etc = eta.conjugate()
    om, al, be = p.omega, p.alpha, p.beta
    u = om * (1.0 - 8.0 * abs2 * s * s) - 4.0 * al * etc * s * cm_ \
        + 4.0 * be * eta * s * cp_
    v = 2.0 * om * eta * s * cm_ + al * cm_ * cm_ + 4.0 * be * eta * eta * s * s
    w = -2.0 * om * etc * s * cp_ + 4.0 * al * etc * etc * s * s + be * cp_ * cp_
    return complex(u), complex(v), complex(w)


def mu_nu(p: SwansonParams, z: float) -> tuple[float, float]:
    """Oscillator weights (mu, nu) of the Hermitian equivalent.

    mu scales the (2K0 - Kp - Km) part and nu the (2K0 + Kp + Km) part of
    2*omega*h.  Their product equals omega**2 - 4*alpha*beta for every
    admissible z; both formulas have poles at z = -+1 and are refused
    within 1e-9 of the endpoints.
    """
    validate_params(p)
    if abs(z) >= 1.0 - _EDGE:
        raise ZOutOfDomain(
            f"mu/nu formulas degenerate at |z| = 1 (got z = {z:g}); "
            "assemble the endpoint Hamiltonian by conjugation instead")
    if _stability_poly(p, z) <= 0.0:
        raise ZOutOfDomain(f"z = {z:g} is inadmissible")
    den = p.alpha + p.beta - z * p.omega
    diff = p.alpha - p.beta
    s = math.sqrt(1.0 - diff * diff * (1.0 - z * z) / (den * den))
    term = den * s
    g = p.omega - (p.alpha + p.beta) * z
    mu = (g - term) / ((1.0 + z) * p.omega)
    nu = p.omega * (g + term) / (1.0 - z)
    return mu, nu


def hermitian_equivalent(p: SwansonParams, z: float) -> AlgebraElement:
    """Coefficients of h = rho H rho^{-1}, exactly symmetric in Kp/Km.

    Away from the endpoints h = ((nu + mu*omega^2)/omega) K0
    + ((nu - mu*omega^2)/(2*omega)) (Km + Kp); at |z| = 1 the element is
    obtained by conjugating H with the solved exponent.
    """
    if abs(z) < 1.0 - _EDGE:
        mu, nu = mu_nu(p, z)
        c0 = (nu + mu * p.omega * p.omega) / p.omega
        c = (nu - mu * p.omega * p.omega) / (2.0 * p.omega)
        return AlgebraElement(c0, c, c)
    conj = conjugate(metric_exponent(p, z), swanson_element(p))
    c0 = complex(conj.c0).real
    c = (complex(conj.cm) + complex(conj.cp)).real / 2.0
    return AlgebraElement(c0, c, c)


def metric_exponent(p: SwansonParams, z: float) -> AlgebraElement:
    """Exponent A with rho = exp(A): A = eps * (2 K0 + z Km + z Kp).

    A is proportional to the commuting observable, so [rho, O] = 0 holds
    at the coefficient level.
    """
    eps = solve_epsilon(p, z)
    return AlgebraElement(2.0 * eps, z * eps, z * eps)


def power_base(p: SwansonParams, z: float) -> float:
    """Positive base Lambda of the power form of rho.

    rho = Lambda ** (O / (4*sqrt(1-z^2))) with

        Lambda = (alpha+beta-omega*z + (alpha-beta)*sqrt(1-z^2))
               / (alpha+beta-omega*z - (alpha-beta)*sqrt(1-z^2)),

    equivalent to eps = ln(Lambda) / (4*sqrt(1-z^2)); degenerate (0/0)
    at |z| = 1.
    """
    validate_params(p)
    if abs(z) >= 1.0 - _EDGE:
        raise ZOutOfDomain(f"power base degenerates at |z| = 1 (got z = {z:g})")
    if _stability_poly(p, z) <= 0.0:
        raise ZOutOfDomain(f"z = {z:g} is inadmissible")
    den = p.alpha + p.beta - z * p.omega
    shift = (p.alpha - p.beta) * math.sqrt(1.0 - z * z)
    return (den + shift) / (den - shift)


def commuting_observable(z: float) -> AlgebraElement:
    """O = 2 K0 + z (Kp + Km); Hermitian for real z, |z| <= 1."""
    if abs(z) > 1.0:
        raise InvalidParams(f"observable parameter z must lie in [-1, 1] (got {z:g})")
    return AlgebraElement(2.0, z, z)


def solve_metric(p: SwansonParams, z: float) -> MetricSolution:
    """Solve the full family at one z away from the endpoints."""
    eps = solve_epsilon(p, z)
    eta = z * eps / 2.0
    theta = abs(eps) * math.sqrt(max(0.0, 1.0 - z * z))
    mu, nu = mu_nu(p, z)
    lam = power_base(p, z)
    u, v, w = conjugated_coeffs(p, eps, eta)
    return MetricSolution(params=p, z=z, epsilon=eps, eta=eta, theta=theta,
                          mu=mu, nu=nu, lambda_base=lam,
                          u=u.real, v=v.real, w=w.real)
