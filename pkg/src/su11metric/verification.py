"""Materialize the operator bundle and verify identities numerically.

Everything spectral goes through the Hermitian equivalent h: spectra of
the non-Hermitian H are never computed with a nonsymmetric eigensolver.
Residual diagnostics (Hermiticity of the conjugated Hamiltonian, direct
vs conjugated assembly, intertwining, quasi-Hermiticity, metric/observable
commutation) are measured in the spectral norm of the leading trusted
block, normalized by the operand norms, because the metric amplifies
truncation error at the top of the basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import disentangle_closed_form
from .errors import InvalidParams, NoConvergence, NotSymmetric, TruncationTooSmall, ZOutOfDomain
from .metric import (SwansonParams, commuting_observable, hermitian_equivalent,
                     is_admissible, solve_epsilon, swanson_element,
                     validate_params)
from .realizations import RealizationMatrices, materialize

DEFAULT_TRUSTED = 50


@dataclass
class OperatorBundle:
    """Materialized operators and their residual diagnostics."""

    params: SwansonParams
    z: float
    realization: str
    trusted: int
    hamiltonian: np.ndarray
    rho: np.ndarray
    rho_inv: np.ndarray
    zeta_plus: np.ndarray
    h_conj: np.ndarray
    h_direct: np.ndarray
    observable: np.ndarray
    residuals: dict[str, float] = field(default_factory=dict)
    spectrum_h: np.ndarray = field(default_factory=lambda: np.empty(0))


def symmetric_eigs(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthogonal eigenvectors of a real
    symmetric matrix; the reconstruction Q diag(w) Q^T reproduces the
    input to rounding."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {m.shape}")
    scale = np.linalg.norm(m)
    if np.linalg.norm(m - m.T) > 1e-10 * max(scale, 1e-300):
        raise NotSymmetric("symmetry residual exceeds 1e-10 of the matrix norm")
    try:
        w, q = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"symmetric eigensolve failed: {exc}") from exc
    return w, q


def exp_symmetric(m: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """exp(scale * m) of a real symmetric matrix via its eigensystem."""
    w, q = symmetric_eigs(m)
    with np.errstate(over="ignore", under="ignore"):
        e = np.exp(scale * w)
        return (q * e) @ q.T


def _exp_raising(sub: np.ndarray, band: int, coeff: float, n: int) -> np.ndarray:
    """exp(coeff * B) for B holding the single lower diagonal `sub` at
    offset -band (a truncated raising operator).

    The series terminates after n // band orders; each diagonal follows
    from the previous one by a single multiplication, so every entry is
    a product of its path factors and carries full relative precision.
    """
    out = np.eye(n)
    if coeff == 0.0 or sub.size == 0:
        return out
    d = coeff * sub
    order = 1
    while d.size > 0:
        out += np.diag(d, -band * order)
        order += 1
        new_len = n - band * order
        if new_len <= 0:
            break
        d = d[band:new_len + band] * (coeff * sub[:new_len]) / order
    return out


def _metric_factors(p: SwansonParams, z: float, sign: int):
    """Ordered-factorization parameters for exp(sign * A).

    The ordering whose diagonal factor decays is selected (normal for a
    nonpositive scale, antinormal otherwise); its pivot is then >= 1, so
    the parameters are well conditioned.
    """
    eps = sign * solve_epsilon(p, z)
    eta = z * eps / 2.0
    normal, anti = disentangle_closed_form(eps, eta)
    return eps, (normal if eps <= 0.0 else anti)


def _ladder_band(realization: RealizationMatrices) -> tuple[int, np.ndarray, np.ndarray]:
    n = realization.dim
    band = n - realization.trusted
    sub = np.diag(realization.kp, -band)
    if not np.array_equal(np.diag(sub, -band), realization.kp):
        raise InvalidParams(
            "factored exponentials need a single-band raising operator")
    return band, sub, np.diag(realization.k0)


def materialize_metric_root(p: SwansonParams, z: float,
                            realization: RealizationMatrices,
                            sign: int = 1) -> np.ndarray:
    """rho (sign=+1) or rho^{-1} (sign=-1) through the ordered factorization.

    Exponentiating the materialized exponent through its eigensystem
    loses the far entries of the result once the eigenvalue spread is
    large, because eigenvector tails below rounding get amplified
    exponentially.  The factored product

        exp(a Kp) diag(e^{q k0}) exp(b Km)

    has no such failure mode: for fixed (i, j) every term of the entry
    contraction carries the same sign, and because the triangular factors
    close the sum below min(i, j) (decaying ordering) or make it converge
    geometrically (growing ordering), the truncated product reproduces
    the matrix elements of the untruncated operator itself.
    """
    eps, f = _metric_factors(p, z, sign)
    n = realization.dim
    band, sub, k0_diag = _ladder_band(realization)
    with np.errstate(over="ignore", under="ignore"):
        mid = np.exp(f.q.real * k0_diag)
        left = _exp_raising(sub, band, f.p.real, n)
        right = _exp_raising(sub, band, f.r.real, n)
        if eps <= 0.0:
            # exp(p Kp) exp(q K0) exp(r Km)
            return (left * mid) @ right.T
        # exp(r Km) exp(q K0) exp(p Kp)
        return (right.T * mid) @ left


def _band_project(m: np.ndarray, band: int) -> np.ndarray:
    """Restrict a matrix to the diagonals 0 and +-band.

    Conjugating a generator-linear operator by the one-parameter ladder
    or diagonal subgroups keeps it generator-linear, so its materialized
    form is exactly this band; entries outside it are truncation and
    rounding debris.
    """
    out = np.diag(np.diag(m))
    out += np.diag(np.diag(m, band), band)
    out += np.diag(np.diag(m, -band), -band)
    return out


def conjugated_hamiltonian_matrix(p: SwansonParams, z: float,
                                  realization: RealizationMatrices) -> np.ndarray:
    """rho H rho^{-1} materialized through the ordered factors.

    The plain triple product rho @ H @ rho_inv contracts terms that grow
    like the square of the metric's dynamic range before cancelling, so
    it loses all significance once |eps| * dim is large.  Conjugating
    factor by factor avoids that: the inner ladder conjugation and the
    diagonal scaling keep the operator on its exact generator band with
    moderate entries, leaving two triangular sandwiches whose sums are
    bounded by the band.
    """
    eps, f = _metric_factors(p, z, +1)
    n = realization.dim
    band, sub, k0_diag = _ladder_band(realization)
    h_mat = materialize(swanson_element(p), realization)

    def _exp(x: float) -> np.ndarray:
        return _exp_raising(sub, band, x, n)

    def _scale(m: np.ndarray, q: float) -> np.ndarray:
        out = np.zeros_like(m)
        with np.errstate(over="ignore", under="ignore"):
            out += np.diag(np.diag(m))
            upper = np.exp(q * (k0_diag[:n - band] - k0_diag[band:]))
            lower = np.exp(q * (k0_diag[band:] - k0_diag[:n - band]))
            out += np.diag(np.diag(m, band) * upper, band)
            out += np.diag(np.diag(m, -band) * lower, -band)
        return out

    if eps <= 0.0:
        # rho = E(p) D E(r)^T, so conjugate by E(r)^T, then D, then E(p)
        inner = _exp(f.r.real).T @ h_mat @ _exp(-f.r.real).T
        scaled = _scale(_band_project(inner, band), f.q.real)
        return _exp(f.p.real) @ scaled @ _exp(-f.p.real)
    # rho = E(r)^T D E(p), so conjugate by E(p), then D, then E(r)^T
    inner = _exp(f.p.real) @ h_mat @ _exp(-f.p.real)
    scaled = _scale(_band_project(inner, band), f.q.real)
    return _exp(f.r.real).T @ scaled @ _exp(-f.r.real).T


def spectrum_prediction(p: SwansonParams, k: float, count: int) -> np.ndarray:
    """Closed-form spectrum 2*sqrt(omega^2 - 4*alpha*beta) * (n + k).

    A linear element with positive-definite Casimir form is conjugate to
    a multiple of K0, so its spectrum on a lowest-weight realization is
    harmonic with effective frequency sqrt(omega^2 - 4*alpha*beta).
    """
    validate_params(p)
    if k <= 0.0:
        raise InvalidParams(f"lowest weight k must be positive (got {k:g})")
    if count < 1:
        raise InvalidParams("count must be at least 1")
    freq = 2.0 * np.sqrt(p.omega ** 2 - 4.0 * p.alpha * p.beta)
    return freq * (np.arange(count) + k)


def _block_norm(m: np.ndarray, t: int) -> float:
    b = np.asarray(m)[:t, :t]
    if not np.isfinite(b).all():
        return float("inf")
    return float(np.linalg.norm(b, 2))


def _relative(diff: np.ndarray, operands: list[np.ndarray], t: int) -> float:
    d = _block_norm(diff, t)
    base = max(_block_norm(o, t) for o in operands)
    if not np.isfinite(d) or not np.isfinite(base):
        return float("inf")
    if base == 0.0:
        return d
    return d / base


def build_bundle(p: SwansonParams, z: float, realization: RealizationMatrices,
                 trusted: int = DEFAULT_TRUSTED,
                 spectrum_count: int | None = None) -> OperatorBundle:
    """Materialize H, rho, rho^{-1}, zeta_+, h (both routes) and O.

    Residuals, all spectral norms of the leading trusted x trusted block
    normalized by the operand norms:

        r_herm        h_conj vs its transpose
        r_eq10        h_conj vs the directly assembled h
        r_intertwine  h rho - rho H
        r_quasi       zeta_+ H - H^T zeta_+
        r_commute     rho O - O rho

    The spectrum is taken from the exactly symmetric direct assembly.
    """
    validate_params(p)
    n = realization.dim
    if trusted >= n or trusted < 2:
        raise TruncationTooSmall(
            f"need 2 <= trusted < dim (got trusted = {trusted}, dim = {n})")
    if not is_admissible(p, z):
        raise ZOutOfDomain(f"z = {z:g} is not admissible for these parameters")

    h_mat = materialize(swanson_element(p), realization)
    o_mat = materialize(commuting_observable(z), realization)
    rho = materialize_metric_root(p, z, realization, sign=1)
    rho_inv = materialize_metric_root(p, z, realization, sign=-1)
    h_conj = conjugated_hamiltonian_matrix(p, z, realization)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        zeta = rho @ rho
    h_direct = materialize(hermitian_equivalent(p, z), realization)

    t = trusted
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        lhs_i = h_direct @ rho
        rhs_i = rho @ h_mat
        lhs_q = zeta @ h_mat
        rhs_q = h_mat.T @ zeta
        lhs_c = rho @ o_mat
        rhs_c = o_mat @ rho
        residuals = {
            "r_herm": _relative(h_conj - h_conj.T, [h_conj], t),
            "r_eq10": _relative(h_conj - h_direct, [h_direct], t),
            "r_intertwine": _relative(lhs_i - rhs_i, [lhs_i, rhs_i], t),
            "r_quasi": _relative(lhs_q - rhs_q, [lhs_q, rhs_q], t),
            "r_commute": _relative(lhs_c - rhs_c, [lhs_c, rhs_c], t),
        }

    count = spectrum_count if spectrum_count is not None else max(1, t // 2)
    w, _ = symmetric_eigs(h_direct)
    spectrum = w[:count].copy()

    return OperatorBundle(params=p, z=z, realization=realization.kind,
                          trusted=t, hamiltonian=h_mat, rho=rho,
                          rho_inv=rho_inv, zeta_plus=zeta, h_conj=h_conj,
                          h_direct=h_direct, observable=o_mat,
                          residuals=residuals, spectrum_h=spectrum)


def metric_block_definite(bundle: OperatorBundle) -> float:
    """Smallest eigenvalue of the diagonally rescaled trusted block of
    zeta_+, certified through the metric root.

    The block equals R R^T for R the leading trusted rows of rho, so it
    is positive-definite exactly when those rows are independent, which
    the invertibility of rho guarantees.  Quantitatively, the square of
    the smallest singular value of the row-normalized R is the smallest
    eigenvalue of the correspondingly rescaled block (a congruence, so
    definiteness is preserved); going through the singular values of R
    instead of the eigenvalues of R R^T avoids squaring the dynamic
    range, which would drown the small end in rounding.
    """
    t = bundle.trusted
    rows = bundle.rho[:t, :]
    norms = np.linalg.norm(rows, axis=1)
    if not np.all(np.isfinite(norms)) or np.any(norms <= 0.0):
        return float("-inf")
    sigma = np.linalg.svd(rows / norms[:, None], compute_uv=False)
    return float(sigma.min() ** 2)


def eigvec_residuals(bundle: OperatorBundle, count: int = 5) -> np.ndarray:
    """Certify reconstructed eigenvectors of H on the trusted block.

    Eigenvectors psi of h map to phi = rho^{-1} psi of H with the same
    eigenvalue; returns |((H - lambda) phi)[:T]| / |phi[:T]| for the
    lowest `count` pairs.  Components of psi below the eigensolver's
    noise floor are zeroed first: they carry no information and rho^{-1}
    can amplify them exponentially.  The certificate degrades once the
    metric's dynamic range is such that even the retained rounding noise
    outruns the certified vector, which is a property of the similarity
    itself, not of the algorithm.
    """
    w, q = symmetric_eigs(bundle.h_direct)
    t = bundle.trusted
    n = bundle.h_direct.shape[0]
    floor = n * np.finfo(float).eps
    out = np.empty(count)
    for i in range(count):
        psi = q[:, i].copy()
        psi[np.abs(psi) < floor * np.abs(psi).max()] = 0.0
        phi = bundle.rho_inv @ psi
        res = bundle.hamiltonian @ phi - w[i] * phi
        out[i] = np.linalg.norm(res[:t]) / np.linalg.norm(phi[:t])
    return out
