"""Concrete settings: line, circle and orthogonal-polynomial constants.

Each setting reduces to the parametric pair (N, tau*M) against a concrete
measure: Lebesgue density on the line, unit weights on the integer lattice
for the circle, and atoms (n, F_n(t)^2) for the polynomial expansions.
``taikov_constants`` evaluates the classical closed forms for derivative
functionals on the line; the parametric curve produced by
:func:`line_constants` matches them after the Fourier-normalization factor
(2*pi)^((1+gamma)/2) is accounted for (see :func:`taikov_law_constant`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Union

import numpy as np

from .core import DEFAULT_RTOL, _denom
from .errors import AdmissibilityError, NonConvergenceError
from .numerics import integrate, sum_lattice
from .orthopoly import OrthogonalFamily, evaluate_all
from .spectral import Symbol, check_admissibility, SpectralMeasure, effective_growth


@dataclass(frozen=True)
class TaikovParams:
    """Derivative orders k < r and the trade-off parameter h > 0."""

    k: int
    r: int
    h: float = 1.0

    def __post_init__(self):
        if not (0 < self.k < self.r):
            raise ValueError("need 0 < k < r")
        if not self.h > 0:
            raise ValueError("need h > 0")


@dataclass(frozen=True)
class TaikovConstants:
    a: float
    b: float
    N: float
    E: float


@dataclass(frozen=True)
class PointConstants:
    """Constants of one concrete setting; ``t`` is None for shift-invariant ones."""

    N_pt: float
    E_pt: float
    tau: float
    t: Optional[float] = None
    truncation: Optional[int] = None
    tail_bound: float = 0.0


def taikov_constants(params: TaikovParams) -> TaikovConstants:
    """Sharp constants for bounding the k-th derivative's uniform norm.

    a = {(r-k-1/2) / (2 r^2 sin(pi (2k+1)/(2r)))}^(1/2),
    b = {(k+1/2)   / (2 r^2 sin(pi (2k+1)/(2r)))}^(1/2),
    and at budget N = a h^(-k-1/2) the best approximation error is
    E = b h^(r-k-1/2).

    The b numerator is (k+1/2): it is pinned down by the parametric
    integrals (which reproduce a exactly) and by the classical k=0, r=1
    bound |x(0)|^2 <= ||x|| * ||x'|| with constant 1.
    """
    k, r, h = params.k, params.r, params.h
    s = math.sin(math.pi * (2 * k + 1) / (2 * r))
    a = math.sqrt((r - k - 0.5) / (2.0 * r * r) / s)
    b = math.sqrt((k + 0.5) / (2.0 * r * r) / s)
    return TaikovConstants(a=a, b=b, N=a * h ** (-(k + 0.5)), E=b * h ** (r - k - 0.5))


def taikov_exponent(k: int, r: int) -> float:
    """gamma = (r-k-1/2)/(k+1/2): E(N) ~ N^(-gamma) along the sharp curve."""
    return (r - k - 0.5) / (k + 0.5)


def taikov_law_constant(k: int, r: int) -> float:
    """The tau-free product E_pt * N_pt^gamma of :func:`line_constants`.

    line_constants carries the plain (unnormalized) frequency integrals, so
    the product equals (2*pi)^((1+gamma)/2) * b * a^gamma.
    """
    c = taikov_constants(TaikovParams(k=k, r=r, h=1.0))
    g = taikov_exponent(k, r)
    return (2.0 * math.pi) ** (0.5 * (1.0 + g)) * c.b * c.a ** g


# ----------------------------------------------------------------------
# line (Lebesgue density)


def _require_l2(phi: Symbol, psi: Symbol, measure: SpectralMeasure) -> None:
    report = check_admissibility(phi, psi, measure)
    if report.condition_holds is False:
        raise AdmissibilityError(
            "|phi|/(1+|psi|^2)^(1/2) is unbounded; the constants are infinite"
        )
    if report.l2_condition_holds is False:
        raise AdmissibilityError(
            "square-integrability hypothesis fails: |phi|/(1+|psi|^2)^(1/2) "
            "is not square-summable/integrable on this measure"
        )
    if report.condition_holds is None or report.l2_condition_holds is None:
        raise AdmissibilityError(
            f"admissibility undecidable: {report.notes or 'missing growth metadata'}"
        )


def line_constants(phi: Symbol, psi: Symbol, tau: float,
                   rel_tol: float = DEFAULT_RTOL) -> PointConstants:
    """N and E for pointwise bounds on the line:

    N^2 = integral over R of |phi(s)|^2/(1+tau|psi(s)|^2)^2 ds,
    E = tau * {integral of |phi psi|^2/(1+tau|psi|^2)^2 ds}^(1/2).
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    lebesgue = SpectralMeasure.density()
    _require_l2(phi, psi, lebesgue)
    d = _denom(psi, tau)

    n2 = integrate(lambda s: float(phi.abs2(s) / d(s) ** 2), (-math.inf, math.inf),
                   rel_tol=rel_tol)
    m2 = integrate(lambda s: float(phi.abs2(s) * psi.abs2(s) / d(s) ** 2),
                   (-math.inf, math.inf), rel_tol=rel_tol)
    err = n2.abs_error_estimate / max(2.0 * math.sqrt(max(n2.value, 1e-300)), 1e-300) \
        + tau * m2.abs_error_estimate / max(2.0 * math.sqrt(max(m2.value, 1e-300)), 1e-300)
    return PointConstants(N_pt=math.sqrt(max(n2.value, 0.0)),
                          E_pt=tau * math.sqrt(max(m2.value, 0.0)),
                          tau=tau, tail_bound=err)


def line_extremal_functional(phi: Symbol, psi: Symbol, tau: float,
                             xhat,
                             support=(-math.inf, math.inf),
                             rel_tol: float = 1e-9) -> complex:
    """Apply the optimal bounded functional to a frequency profile ``xhat``:

    g(x) = integral of phi(s) * xhat(s) / (1 + tau |psi(s)|^2) ds.

    ``xhat`` is a callable, or a sampled profile as an (s_grid, values) pair
    which is interpolated linearly and treated as zero outside the grid.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    if isinstance(xhat, tuple):
        grid, values = (np.asarray(xhat[0], dtype=float), np.asarray(xhat[1]))
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError("sampled profile needs matching 1-d grid and values")
        support = (float(grid[0]), float(grid[-1]))
        re = lambda s: float(np.interp(s, grid, np.real(values)))
        im = lambda s: float(np.interp(s, grid, np.imag(values)))
        xhat = lambda s: complex(re(s), im(s))
    d = _denom(psi, tau)

    def f(s: float) -> complex:
        return complex(phi(s)) * complex(xhat(s)) / float(d(s))

    return integrate(f, support, rel_tol=rel_tol).value


# ----------------------------------------------------------------------
# circle (unit lattice)


def circle_constants(phi: Symbol, psi: Symbol, tau: float,
                     rel_tol: float = 1e-8) -> PointConstants:
    """Lattice analog of :func:`line_constants` over integer frequencies:

    N^2 = sum over n in Z of |phi(n)|^2/(1+tau|psi(n)|^2)^2, and
    E = tau * {sum of |phi(n) psi(n)|^2/(1+tau|psi(n)|^2)^2}^(1/2).
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    lattice = SpectralMeasure.lattice("Z", uniform=1.0)
    _require_l2(phi, psi, lattice)
    d = _denom(psi, tau)

    n_res = sum_lattice(lambda n: np.real(phi.abs2(n) / d(n) ** 2), "Z", rel_tol=rel_tol)
    m_res = sum_lattice(lambda n: np.real(phi.abs2(n) * psi.abs2(n) / d(n) ** 2), "Z",
                        rel_tol=rel_tol)
    n2 = float(np.real(n_res.value))
    m2 = float(np.real(m_res.value))
    err = n_res.tail_bound / max(2.0 * math.sqrt(max(n2, 1e-300)), 1e-300) \
        + tau * m_res.tail_bound / max(2.0 * math.sqrt(max(m2, 1e-300)), 1e-300)
    return PointConstants(N_pt=math.sqrt(max(n2, 0.0)), E_pt=tau * math.sqrt(max(m2, 0.0)),
                          tau=tau, truncation=n_res.terms_used + m_res.terms_used,
                          tail_bound=err)


def circle_extremal_functional(phi: Symbol, psi: Symbol, tau: float,
                               xhat,
                               rel_tol: float = 1e-9) -> complex:
    """g(x) = sum over n in Z of phi(n) * xhat(n) / (1 + tau |psi(n)|^2).

    ``xhat`` maps integers to coefficients; a finite mapping is summed
    exactly, a callable is summed under the tail-bound policy.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    d = _denom(psi, tau)
    if isinstance(xhat, Mapping):
        return complex(sum(
            complex(phi(float(n))) * complex(c) / float(d(float(n)))
            for n, c in sorted(xhat.items())
        ))

    def term(n):
        return complex(phi(float(n))) * complex(xhat(int(n))) / float(d(float(n)))

    res = sum_lattice(term, "Z", rel_tol=rel_tol)
    return complex(res.value)


# ----------------------------------------------------------------------
# orthogonal polynomial expansions


def _opoly_tail_exponents(phi: Symbol, psi: Symbol):
    """Tail exponents of the two sums; requires decidable growth."""
    g_phi = effective_growth(phi)
    g_psi = effective_growth(psi)
    if g_phi is None or g_psi is None:
        raise AdmissibilityError("orthogonal-polynomial sums need symbol growth metadata")
    gp = max(g_psi, 0.0)
    expo_n = 2.0 * g_phi - 4.0 * gp          # |phi|^2 / (1+tau|psi|^2)^2
    expo_e = 2.0 * g_phi + 2.0 * g_psi - 4.0 * gp  # |phi psi|^2 / (...)^2
    if expo_e >= -1.0 and not psi.is_zero and not phi.is_zero:
        raise AdmissibilityError(
            "uniform-convergence condition fails: the weighted coefficient "
            "sequence is not square-summable (need alpha_psi - alpha_phi > 1/2)"
        )
    return expo_n, expo_e


def _sym_tail(c2: float, g_num: float, g_psi: float, tau: float, n0: int) -> float:
    """Bound sum_{n>n0} c2 * n^(2 g_num) / (1 + tau n^(2 g_psi))^2.

    Valid once tau * n0^(2 g_psi) >= 1 (then the denominator is at least
    (tau n^(2 g_psi))^2); returns inf while the bound is not yet applicable
    or the exponent does not decay.
    """
    if c2 == 0.0:
        return 0.0
    if g_psi <= 0.0:
        expo = 2.0 * g_num
        if expo >= -1.0:
            return math.inf
        return c2 * n0 ** (expo + 1.0) / (-(expo + 1.0))
    if tau * float(n0) ** (2.0 * g_psi) < 1.0:
        return math.inf
    expo = 2.0 * g_num - 4.0 * g_psi
    if expo >= -1.0:
        return math.inf
    return (c2 / tau ** 2) * n0 ** (expo + 1.0) / (-(expo + 1.0))


def opoly_constants(family: OrthogonalFamily, phi: Symbol, psi: Symbol, tau: float,
                    t: float, max_n: int = 10000,
                    rel_tol: float = 1e-8) -> PointConstants:
    """Pointwise constants of the eigenfunction expansion at t:

    N^2 = sum over n >= 0 of |phi(n) F_n(t)|^2 / (1 + tau |psi(n)|^2)^2,
    E analogous with the extra |psi(n)|^2 factor; the spectral measure is
    discrete with atoms (n, F_n(t)^2).  The truncation grows until the
    envelope tail bound falls below ``rel_tol`` or the ``max_n`` cap is
    reached; the reported ``tail_bound`` is authoritative either way (for
    slowly decaying pairs the oscillatory factor admits no integral
    acceleration, so the cap limits the reachable bound).
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    lo, hi = family.interval()
    if not (lo <= t <= hi):
        raise ValueError("t outside the family interval")
    _opoly_tail_exponents(phi, psi)  # raises when the sums cannot converge
    g_phi = effective_growth(phi)
    g_psi = max(effective_growth(psi), 0.0)

    cutoff = 64
    while True:
        n_arr = np.arange(0, cutoff + 1)
        F = evaluate_all(family, cutoff, float(t))
        phi_n = np.asarray([complex(phi(float(n))) for n in n_arr])
        psi_n = np.asarray([complex(psi(float(n))) for n in n_arr])
        den = (1.0 + tau * np.abs(psi_n) ** 2) ** 2
        terms_n = np.abs(phi_n) ** 2 * F ** 2 / den
        terms_e = np.abs(phi_n * psi_n) ** 2 * F ** 2 / den
        n2 = math.fsum(terms_n.tolist())
        e2 = math.fsum(terms_e.tolist())

        # envelope: recent |F_n(t)| values bound the tail factor; the power
        # tail of the symbols does the rest
        window = np.abs(F[max(0, cutoff - 32):])
        c2_env = (2.0 * float(np.max(window))) ** 2 if window.size else 0.0
        if phi.is_zero:
            tail_n = tail_e = 0.0
        else:
            tail_n = _sym_tail(c2_env, g_phi, g_psi, tau, cutoff)
            tail_e = 0.0 if psi.is_zero else _sym_tail(c2_env, g_phi + g_psi, g_psi, tau, cutoff)
            if psi.is_zero and math.isinf(tail_n):
                raise AdmissibilityError(
                    "with psi = 0 the coefficient sum needs a decaying phi for convergence"
                )

        ok_n = tail_n <= rel_tol * max(n2, 1e-300)
        ok_e = tail_e <= rel_tol * max(e2, 1e-300)
        if (ok_n and ok_e) or cutoff >= max_n:
            if math.isinf(tail_n) or math.isinf(tail_e):
                raise NonConvergenceError(
                    f"orthogonal expansion shows no bounded tail at the {max_n}-term cap"
                )
            tail = tail_n / max(2.0 * math.sqrt(max(n2, 1e-300)), 1e-300) + \
                tau * tail_e / max(2.0 * math.sqrt(max(e2, 1e-300)), 1e-300)
            return PointConstants(N_pt=math.sqrt(n2), E_pt=tau * math.sqrt(e2), tau=tau,
                                  t=float(t), truncation=cutoff, tail_bound=tail)
        cutoff = min(2 * cutoff, max_n)


def induced_measure(family: OrthogonalFamily, t: float, cutoff: int) -> SpectralMeasure:
    """Discrete measure with atoms (n, F_n(t)^2), n = 0..cutoff."""
    F = evaluate_all(family, cutoff, float(t))
    return SpectralMeasure.discrete([(float(n), float(F[n] ** 2)) for n in range(cutoff + 1)])


def opoly_extremal_functional(family: OrthogonalFamily, phi: Symbol, psi: Symbol,
                              tau: float, t: float,
                              x_coeffs: Union[Callable[[int], float], Mapping[int, float]],
                              max_n: int = 10000,
                              rel_tol: float = 1e-10) -> float:
    """g(x) = sum over n >= 0 of phi(n) x_n F_n(t) / (1 + tau |psi(n)|^2).

    ``x_coeffs`` is a mapping (finite support: summed exactly) or a callable
    with square-summable values (truncated under the envelope policy).
    """
    if tau <= 0:
        raise ValueError("tau must be positive")

    if isinstance(x_coeffs, Mapping):
        if not x_coeffs:
            return 0.0
        top = max(x_coeffs)
        F = evaluate_all(family, top, float(t))
        return float(np.real(math.fsum(
            np.real(complex(phi(float(n))) * x_coeffs[n] * F[n]
                    / (1.0 + tau * abs(complex(psi(float(n)))) ** 2))
            for n in sorted(x_coeffs)
        )))

    g_phi = effective_growth(phi)
    g_psi_raw = effective_growth(psi)
    if g_phi is None or g_psi_raw is None:
        raise AdmissibilityError("truncation policy needs symbol growth metadata")
    g_psi = max(g_psi_raw, 0.0)

    cutoff = 64
    while True:
        n_arr = np.arange(0, cutoff + 1)
        F = evaluate_all(family, cutoff, float(t))
        terms = [
            float(np.real(complex(phi(float(n))) * float(x_coeffs(int(n))) * F[n]
                          / (1.0 + tau * abs(complex(psi(float(n)))) ** 2)))
            for n in n_arr
        ]
        val = math.fsum(terms)
        # Cauchy-Schwarz split: |tail| <= {sym tail}^(1/2) * x-envelope * sqrt(window)
        window_F = np.abs(np.asarray(F[max(0, cutoff - 32):]))
        c2_env = (2.0 * float(np.max(window_F))) ** 2 if window_F.size else 0.0
        x_win = [abs(float(x_coeffs(int(n)))) for n in range(max(0, cutoff - 32), cutoff + 1)]
        x_env = 2.0 * max(x_win) if x_win else 0.0
        sym2 = _sym_tail(c2_env, g_phi, g_psi, tau, cutoff)  # tail of |phi F/(1+tau psi^2)|^2
        tail = math.inf if math.isinf(sym2) else x_env * math.sqrt(sym2) * math.sqrt(cutoff)
        if x_env == 0.0 or tail <= rel_tol * max(abs(val), 1e-12):
            return val
        if cutoff >= max_n:
            raise NonConvergenceError(
                f"extremal-functional sum not converged at the {max_n}-term cap"
            )
        cutoff = min(2 * cutoff, max_n)
