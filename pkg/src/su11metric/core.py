"""su(1,1) coefficient algebra and its faithful 2x2 representation.

The basis (K0, Km, Kp) obeys [K0, K+-] = +-K+- and [Kp, Km] = -2 K0, with
K0 Hermitian and Kp, Km mutual adjoints in any unitary realization.  An
element is stored as the complex coefficient triple of

    X = c0*K0 + cm*Km + cp*Kp

and its exponential is handled through the 2x2 matrices

    sigma(K0) = [[1/2, 0], [0, -1/2]]
    sigma(Kp) = [[0, 1], [0, 0]]
    sigma(Km) = [[0, 0], [-1, 0]]

which realize the same commutators faithfully.  For a Hermitian exponent
A = 2*eps*K0 + 2*eta*Km + 2*conj(eta)*Kp everything reduces to hyperbolic
functions of theta, where theta**2 = eps**2 - 4*|eta|**2: exponentials,
the normally / antinormally ordered (Gauss) factorizations, and the
adjoint action rho X rho^{-1} with rho = exp(A).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DecompositionSingular, InvalidParams, TrigRegime

SIGMA_K0 = np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex)
SIGMA_KP = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_KM = np.array([[0.0, 0.0], [-1.0, 0.0]], dtype=complex)

# pivots smaller than this are treated as singular factorizations
PIVOT_TOL = 1e-14

# metric-form (Hermitian exponent) validation tolerance
_HERM_TOL = 1e-12


@dataclass(frozen=True)
class AlgebraElement:
    """Coefficient triple (c0, cm, cp) of c0*K0 + cm*Km + cp*Kp."""

    c0: complex
    cm: complex
    cp: complex

    def casimir(self) -> complex:
        """Quadratic form c0**2 - 4*cp*cm, invariant under conjugation."""
        return self.c0 * self.c0 - 4.0 * self.cp * self.cm

    def as_vector(self) -> np.ndarray:
        return np.array([self.c0, self.cm, self.cp])

    def is_hermitian_form(self, tol: float = _HERM_TOL) -> bool:
        """True when the element represents a Hermitian operator in a
        unitary realization: real c0 and cp = conj(cm)."""
        scale = max(1.0, abs(self.c0), abs(self.cm), abs(self.cp))
        return (abs(complex(self.c0).imag) <= tol * scale
                and abs(self.cp - complex(self.cm).conjugate()) <= tol * scale)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.c0 + other.c0, self.cm + other.cm,
                              self.cp + other.cp)

    def __mul__(self, scalar) -> "AlgebraElement":
        return AlgebraElement(scalar * self.c0, scalar * self.cm,
                              scalar * self.cp)

    __rmul__ = __mul__


@dataclass(frozen=True)
class Factorization:
    """Ordered-product parameters of a group element.

    ordering "normal":      exp(p Kp) exp(q K0) exp(r Km)
    ordering "antinormal":  exp(r Km) exp(q K0) exp(p Kp)
    """

    p: complex
    q: complex
    r: complex
    ordering: str = "normal"


def _cosh_sinhc(theta_sq):
    """cosh(theta) and sinh(theta)/theta as even functions of theta.

    Takes theta**2 (real or complex) so no branch of the square root is
    ever distinguished; small arguments use a series to avoid
    cancellation near theta = 0.
    """
    if abs(theta_sq) < 1e-8:
        c = 1.0 + theta_sq * (0.5 + theta_sq * (1.0 / 24.0 + theta_sq / 720.0))
        s = 1.0 + theta_sq * (1.0 / 6.0 + theta_sq * (1.0 / 120.0 + theta_sq / 5040.0))
        return c, s
    if isinstance(theta_sq, complex) or theta_sq < 0.0:
        th = cmath.sqrt(theta_sq)
        return cmath.cosh(th), cmath.sinh(th) / th
    th = math.sqrt(theta_sq)
    return math.cosh(th), math.sinh(th) / th


def defining_rep(x: AlgebraElement) -> np.ndarray:
    """2x2 matrix sigma(x); linear in the coefficients."""
    return x.c0 * SIGMA_K0 + x.cm * SIGMA_KM + x.cp * SIGMA_KP


def exp_defining(x: AlgebraElement) -> np.ndarray:
    """exp(sigma(x)) in closed form.

    sigma(x) is traceless, so by Cayley-Hamilton

        exp(M) = cosh(theta) I + sinh(theta)/theta * M,
        theta**2 = -det(M).

    Imaginary theta (oscillatory regime) is evaluated through the same
    even functions, i.e. cos and sin(phi)/phi.
    """
    m = defining_rep(x)
    theta_sq = -(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    c, s = _cosh_sinhc(theta_sq)
    return c * np.eye(2, dtype=complex) + s * m


def reconstruct_defining(f: Factorization) -> np.ndarray:
    """Multiply the 2x2 factor matrices of a factorization back together."""
    e_half = cmath.exp(0.5 * f.q)
    upper = np.array([[1.0, f.p], [0.0, 1.0]], dtype=complex)
    mid = np.array([[e_half, 0.0], [0.0, 1.0 / e_half]], dtype=complex)
    lower = np.array([[1.0, 0.0], [-f.r, 1.0]], dtype=complex)
    if f.ordering == "normal":
        return upper @ mid @ lower
    if f.ordering == "antinormal":
        return lower @ mid @ upper
    raise InvalidParams(f"unknown ordering {f.ordering!r}")


def gauss_decompose(m: np.ndarray, ordering: str = "normal") -> Factorization:
    """Factor a 2x2 unimodular group matrix into ordered exponentials.

    Normal ordering pivots on m[1,1] (e^{-q/2} = m22, p = m12/m22,
    r = -m21/m22); antinormal ordering pivots on m[0,0] (e^{q'/2} = m11,
    p' = m12/m11, r' = -m21/m11).  The signs follow sigma(Km) having the
    entry -1.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise InvalidParams(f"expected a 2x2 matrix, got shape {m.shape}")
    if ordering == "normal":
        pivot = m[1, 1]
        if abs(pivot) < PIVOT_TOL:
            raise DecompositionSingular(
                f"normal-ordering pivot |m22| = {abs(pivot):.3e} is below {PIVOT_TOL:g}")
        return Factorization(p=m[0, 1] / pivot, q=-2.0 * cmath.log(pivot),
                             r=-m[1, 0] / pivot, ordering="normal")
    if ordering == "antinormal":
        pivot = m[0, 0]
        if abs(pivot) < PIVOT_TOL:
            raise DecompositionSingular(
                f"antinormal-ordering pivot |m11| = {abs(pivot):.3e} is below {PIVOT_TOL:g}")
        return Factorization(p=m[0, 1] / pivot, q=2.0 * cmath.log(pivot),
                             r=-m[1, 0] / pivot, ordering="antinormal")
    raise InvalidParams(f"unknown ordering {ordering!r}")


def disentangle_closed_form(epsilon: float, eta: complex) -> tuple[Factorization, Factorization]:
    """Both ordered factorizations of exp(2 eps K0 + 2 eta Km + 2 conj(eta) Kp).

    Requires theta**2 = eps**2 - 4|eta|**2 >= 0.  With s = sinh(theta)/theta:

        normal:      e^{-q/2} = cosh(theta) - eps*s,  r = 2 eta s / e^{-q/2},  p = conj(r)-like
        antinormal:  e^{q'/2} = cosh(theta) + eps*s,  r' = 2 eta s / e^{q'/2}

    For real eps the factorized operators inherit Hermiticity: q is real
    and r = conj(p).
    """
    eta = complex(eta)
    theta_sq = epsilon * epsilon - 4.0 * (eta * eta.conjugate()).real
    if theta_sq < 0.0:
        raise TrigRegime(f"theta^2 = {theta_sq:.6g} < 0; no real-theta factorization")
    c, s = _cosh_sinhc(theta_sq)
    piv_n = c - epsilon * s
    piv_a = c + epsilon * s
    if abs(piv_n) < PIVOT_TOL:
        raise DecompositionSingular(
            f"cosh(theta) - eps*sinh(theta)/theta = {piv_n:.3e} vanishes")
    if abs(piv_a) < PIVOT_TOL:
        raise DecompositionSingular(
            f"cosh(theta) + eps*sinh(theta)/theta = {piv_a:.3e} vanishes")
    normal = Factorization(p=2.0 * eta.conjugate() * s / piv_n,
                           q=-2.0 * cmath.log(complex(piv_n)),
                           r=2.0 * eta * s / piv_n,
                           ordering="normal")
    antinormal = Factorization(p=2.0 * eta.conjugate() * s / piv_a,
                               q=2.0 * cmath.log(complex(piv_a)),
                               r=2.0 * eta * s / piv_a,
                               ordering="antinormal")
    return normal, antinormal


def adjoint_matrix(epsilon: float, eta: complex) -> np.ndarray:
    """3x3 matrix of the adjoint action of rho = exp(A) on coefficients.

    A = 2 eps K0 + 2 eta Km + 2 conj(eta) Kp with real eps and
    theta**2 = eps**2 - 4|eta|**2 >= 0.  Conjugating X = (c0, cm, cp)
    by rho gives coefficients M @ (c0, cm, cp), where with
    s = sinh(theta)/theta and Cmp = cosh(theta) -+ eps*s:

        rho K0 rho^-1 = (1 - 8|eta|^2 s^2) K0 + 2 eta s Cm Km - 2 conj(eta) s Cp Kp
        rho Km rho^-1 = -4 conj(eta) s Cm K0 + Cm^2 Km + 4 conj(eta)^2 s^2 Kp
        rho Kp rho^-1 =  4 eta s Cp K0 + 4 eta^2 s^2 Km + Cp^2 Kp
    """
    eta = complex(eta)
    abs2 = (eta * eta.conjugate()).real
    theta_sq = epsilon * epsilon - 4.0 * abs2
    if theta_sq < 0.0:
        raise TrigRegime(f"theta^2 = {theta_sq:.6g} < 0; adjoint closed form unavailable")
    c, s = _cosh_sinhc(theta_sq)
    cm_ = c - epsilon * s
    cp_ = c + epsilon * s
    etc = eta.conjugate()
    return np.array([
        [1.0 - 8.0 * abs2 * s * s, -4.0 * etc * s * cm_, 4.0 * eta * s * cp_],
        [2.0 * eta * s * cm_, cm_ * cm_, 4.0 * eta * eta * s * s],
        [-2.0 * etc * s * cp_, 4.0 * etc * etc * s * s, cp_ * cp_],
    ], dtype=complex)


def conjugate(a_exponent: AlgebraElement, x: AlgebraElement) -> AlgebraElement:
    """Coefficients of rho x rho^{-1} for rho = exp(a_exponent).

    The exponent must be of Hermitian metric form (real c0, cp = conj(cm)),
    i.e. a_exponent = (2 eps, 2 eta, 2 conj(eta)).
    """
    if not a_exponent.is_hermitian_form():
        raise InvalidParams(
            "conjugation exponent must be Hermitian: real c0 and cp = conj(cm)")
    eps = complex(a_exponent.c0).real / 2.0
    eta = complex(a_exponent.cm) / 2.0
    m = adjoint_matrix(eps, eta)
    vec = m @ x.as_vector().astype(complex)
    return AlgebraElement(complex(vec[0]), complex(vec[1]), complex(vec[2]))
