"""Asymptotic side: Gaussian-weight moment integrals, the limit law of the
cyclic-element count, closed-form growth constants, empirical constant
fitting, and the window diagnostics behind the remainder bound.

The growth hypothesis everything rests on is

    B(k) = c·k^alpha·(1 + O(k^-beta)),   alpha = rho + 1,

where rho is the density of the allowed cycle-length set. Under it the
scaled mapping count S(n) = sum a(k,n)·b(k) behaves like
c·(1+rho)·I_rho·n^((1+rho)/2)·(1 + O(n^-beta/2)), with
I_mu = int_0^inf x^mu·exp(-x^2/2) dx, and lambda_n/sqrt(n) converges to
the generalized Rayleigh law with density x^rho·exp(-x^2/2)/I_rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
from scipy.special import gammainc

from .counting import CountTable, scaled_sum
from .cycle_sets import CycleSet

# fitted models must still have alpha ~ rho + 1; this is the acceptance slack
FITTED_ALPHA_TOL = 0.25


class EmptyWindowError(ValueError):
    """r(n) >= s(n): the summation window contains no integers."""


@dataclass(frozen=True)
class AsymptoticModel:
    """Constants (rho, alpha, beta, c) of the growth law, plus I_rho.

    ``provenance`` records whether the constants are proved closed forms
    or least-squares estimates; ``C`` is the coefficient of the per-term
    law p(k) ~ C·k^(rho-1) when that law holds (it does not for mult:a,
    where p vanishes off the lattice).
    """

    rho: float
    alpha: float
    beta: Optional[float]
    c: float
    i_rho: float
    provenance: str  # "closed_form" | "fitted"
    C: Optional[float] = None

    def __post_init__(self):
        if self.provenance not in ("closed_form", "fitted"):
            raise ValueError("unknown provenance %r" % (self.provenance,))
        if not self.rho > 0:
            raise ValueError("rho must be positive (density-zero sets unsupported)")
        if not (self.c > 0 and self.i_rho > 0):
            raise ValueError("c and I_rho must be positive")
        if self.provenance == "closed_form":
            if self.alpha != self.rho + 1:
                raise ValueError("closed-form models require alpha = rho + 1 exactly")
            if self.beta is None or not 0 < self.beta <= 1:
                raise ValueError("closed-form beta must lie in (0, 1]")
        else:
            if abs(self.alpha - self.rho - 1) > FITTED_ALPHA_TOL:
                raise ValueError(
                    "fitted alpha=%g too far from rho+1=%g"
                    % (self.alpha, self.rho + 1)
                )
            # a fitted remainder exponent may overshoot 1 from noise; keep it raw
            if self.beta is not None and not self.beta > 0:
                raise ValueError("fitted beta must be positive when reported")

    def leading_term(self, n: int) -> float:
        """c·(1+rho)·I_rho·n^((1+rho)/2), the predicted scaled count S(n)."""
        return self.c * (1 + self.rho) * self.i_rho * n ** ((1 + self.rho) / 2)


@dataclass(frozen=True)
class DiagnosticWindow:
    """Window [r+1, s] with r = [ln n], s = [n^(2/(3+beta))], and the
    exponent nu = 2/(3+beta) - 1/2 > 0 that makes the upper tail negligible."""

    n: int
    r: int
    s: int
    nu: float


@dataclass(frozen=True)
class DiagnosticsReport:
    """Window sums vs. the matching integral, with the sandwich bounds."""

    mu: float
    n: int
    beta_eff: float
    window: DiagnosticWindow
    psi: float          # sum of exp(-k^2/2n)·k^mu over the window
    sigma: float        # n^(-(1+mu)/2) · psi
    integral: float     # int over [(r+1)/sqrt(n), (s+1)/sqrt(n)]
    lower_bound: float  # -(overshoot sum); lower_bound <= sigma - integral
    upper_bound: float  # (2/sqrt(n))·sigma; sigma - integral <= upper_bound
    lower_ok: bool
    upper_ok: bool

    @property
    def passed(self) -> bool:
        return self.lower_ok and self.upper_ok


def gamma_fn(x: float) -> float:
    """Gamma function on the positive half-line."""
    if not x > 0:
        raise ValueError("gamma_fn requires x > 0, got %r" % (x,))
    return math.gamma(x)


def i_mu(mu: float) -> float:
    """I_mu = int_0^inf x^mu exp(-x^2/2) dx = 2^((mu-1)/2)·Gamma((mu+1)/2)."""
    if not mu > -1:
        raise ValueError("I_mu diverges for mu <= -1, got %r" % (mu,))
    return 2 ** ((mu - 1) / 2) * gamma_fn((mu + 1) / 2)


def i_mu_window(mu: float, lo: float, hi: float) -> float:
    """int_lo^hi x^mu exp(-x^2/2) dx for 0 <= lo <= hi."""
    if lo < 0 or hi < lo:
        raise ValueError("need 0 <= lo <= hi")
    a = (mu + 1) / 2
    return i_mu(mu) * float(gammainc(a, hi * hi / 2) - gammainc(a, lo * lo / 2))


def limit_cdf(rho: float, z: float) -> float:
    """Generalized Rayleigh CDF: int_0^z x^rho e^(-x^2/2) dx / I_rho.

    Equals the regularized incomplete gamma P((rho+1)/2, z^2/2).
    """
    if not rho > 0:
        raise ValueError("limit law needs rho > 0, got %r" % (rho,))
    if z < 0:
        raise ValueError("z must be nonnegative")
    return float(gammainc((rho + 1) / 2, z * z / 2))


def an_model(a: int) -> AsymptoticModel:
    """Closed-form constants for the set of multiples of a:
    rho = 1/a, alpha = 1/a + 1, beta = 1,
    c = 1 / (a^(1/a)·(1/a + 1)·Gamma(1/a))."""
    if not isinstance(a, int) or a < 2:
        raise ValueError("need an integer a >= 2, got %r" % (a,))
    rho = 1 / a
    c = 1.0 / (a**rho * (rho + 1) * gamma_fn(rho))
    return AsymptoticModel(
        rho=rho,
        alpha=rho + 1,
        beta=1.0,
        c=c,
        i_rho=i_mu(rho),
        provenance="closed_form",
        C=None,  # the per-term law fails off the lattice a·N
    )


def all_model() -> AsymptoticModel:
    """Unrestricted mappings: p(k) = 1, B(k) = k(k+1)/2, so
    rho = 1, alpha = 2, beta = 1, c = 1/2 (and C = 1)."""
    return AsymptoticModel(
        rho=1.0,
        alpha=2.0,
        beta=1.0,
        c=0.5,
        i_rho=1.0,
        provenance="closed_form",
        C=1.0,
    )


def closed_form_model(A: CycleSet) -> AsymptoticModel:
    """The proved model for a set, where one exists."""
    if A.kind == "all":
        return all_model()
    if A.kind == "mult":
        return an_model(A.params[0])
    raise ValueError("no closed-form constants for kind %r; fit instead" % (A.kind,))


class FitError(ValueError):
    """The fitting window is unusable."""


def fit_model(
    table: CountTable,
    rho: float,
    window: Optional[Tuple[int, int]] = None,
) -> AsymptoticModel:
    """Least-squares estimates of (alpha, c, beta) from a float-mode table.

    alpha-hat is the slope of ln B(k) against ln k on the window;
    c-hat the geometric mean of B(k)/k^alpha-hat; beta-hat the negated
    slope of ln|B(k)/(c-hat·k^alpha-hat) - 1|. The window defaults to the
    upper half of the table, where the remainder no longer dominates.
    beta is omitted when the remainder sits at double-precision rounding
    level, i.e. the table is indistinguishable from a pure power law.
    """
    if table.mode != "float":
        raise FitError("fitting requires a float-mode table")
    K = table.order
    if window is None:
        window = (K // 2, K)
    lo, hi = window
    if not 2 <= lo < hi <= K:
        raise FitError("window (%r, %r) not inside [2, %d]" % (lo, hi, K))
    if hi - lo + 1 < 50:
        raise FitError("window has %d points; need at least 50" % (hi - lo + 1))
    ks = np.arange(lo, hi + 1, dtype=float)
    Bs = np.asarray(table.B[lo : hi + 1], dtype=float)
    if np.any(Bs <= 0):
        raise FitError("B(k) vanishes on the window; enlarge the order")
    x = np.log(ks)
    y = np.log(Bs)
    alpha_hat, _ = np.polyfit(x, y, 1)
    c_hat = float(np.exp(np.mean(y - alpha_hat * x)))
    rem = Bs / (c_hat * ks**alpha_hat) - 1.0
    beta_hat: Optional[float] = None
    good = np.abs(rem) > 1e-13  # below this the remainder is rounding noise
    if good.sum() >= 50 and np.max(np.abs(rem)) > 1e-12:
        slope, _ = np.polyfit(x[good], np.log(np.abs(rem[good])), 1)
        beta_hat = float(-slope)
        if beta_hat <= 0:
            beta_hat = None  # remainder not decaying: report nothing
    big_c = None
    if table.set.kind in ("all", "f1", "f2"):
        big_c = c_hat * (1 + rho)  # per-term coefficient, where that law holds
    return AsymptoticModel(
        rho=rho,
        alpha=float(alpha_hat),
        beta=beta_hat,
        c=c_hat,
        i_rho=i_mu(rho),
        provenance="fitted",
        C=big_c,
    )


def exact_over_asym_ratio(
    A: CycleSet,
    model: AsymptoticModel,
    n: int,
    table: Optional[CountTable] = None,
    mode: str = "float",
) -> float:
    """S(n) divided by its predicted leading term; tends to 1 at rate
    n^(-beta/2) when the model is right.

    mode="exact" evaluates both sides in rational arithmetic; it requires
    the model constants to be exact rationals and (1+rho)/2 integral,
    which holds for the unrestricted-mapping model.
    """
    if not model.rho > 0:
        raise ValueError("ratio needs rho > 0")
    if mode == "exact":
        expo = Fraction(1 + Fraction(model.rho), 2)
        if expo.denominator != 1:
            raise ValueError(
                "exact ratio needs integral (1+rho)/2; got exponent %s" % (expo,)
            )
        s = scaled_sum(A, n, mode="exact", table=table)
        lead = (
            Fraction(model.c)
            * (1 + Fraction(model.rho))
            * Fraction(model.i_rho)
            * n ** int(expo)
        )
        ratio = s / lead
        return ratio if ratio.denominator > 1 else int(ratio)
    s = scaled_sum(A, n, mode="float", table=table)
    return float(s / model.leading_term(n))


def lemma4_coeff(lam, n: int):
    """[s^n](1-s)^(-lam): the exact generalized binomial coefficient
    prod_{j<n}(lam+j)/n! next to its asymptote n^(lam-1)/Gamma(lam).

    Rational lam gives an exact Fraction; float lam stays in doubles.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(lam, float):
        if not lam > 0:
            raise ValueError("lam must be positive")
        exact = 1.0
        for j in range(n):
            exact *= (lam + j) / (j + 1)
        lam_f = lam
    else:
        lam = Fraction(lam)
        if not lam > 0:
            raise ValueError("lam must be positive")
        exact = Fraction(1)
        for j in range(n):
            exact = exact * (lam + j) / (j + 1)
        lam_f = float(lam)
    asym = n ** (lam_f - 1) / gamma_fn(lam_f)
    return exact, asym


def diagnostic_window(n: int, beta: float) -> DiagnosticWindow:
    """r = [ln n], s = [n^(2/(3+beta))]; raises when no integer lies between."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0 < beta < 1:
        raise ValueError("window needs beta in (0,1), got %r" % (beta,))
    r = int(math.log(n))
    s = int(n ** (2 / (3 + beta)))
    nu = 2 / (3 + beta) - 0.5
    if r >= s:
        raise EmptyWindowError(
            "window empty at n=%d, beta=%g (r=%d >= s=%d)" % (n, beta, r, s)
        )
    return DiagnosticWindow(n, r, s, nu)


def diagnostics(mu: float, n: int, beta: float) -> DiagnosticsReport:
    """Window sum vs. integral comparison with both sandwich bounds.

    The lower bound charges each lattice term its overshoot factor
    (1+1/k)^mu - 1; the upper bound is 2/sqrt(n) of the sum itself.
    Only mu >= 0 is supported: that is the regime the bounds hold in,
    and the only one the remainder analysis uses.
    """
    if mu < 0:
        raise ValueError("diagnostics require mu >= 0, got %r" % (mu,))
    if not 0 < beta <= 1:
        raise ValueError("beta must lie in (0, 1], got %r" % (beta,))
    beta_eff = min(beta, 0.999)  # beta = 1 would collapse nu to 0
    win = diagnostic_window(n, beta_eff)
    ks = np.arange(win.r + 1, win.s + 1, dtype=float)
    weights = np.exp(-(ks**2) / (2 * n)) * ks**mu
    psi = float(weights.sum())
    sigma = n ** (-(1 + mu) / 2) * psi
    integral = i_mu_window(mu, (win.r + 1) / math.sqrt(n), (win.s + 1) / math.sqrt(n))
    overshoot = float(
        np.sum(
            (1 / math.sqrt(n))
            * (ks / math.sqrt(n)) ** mu
            * np.exp(-(ks**2) / (2 * n))
            * ((1 + 1 / ks) ** mu - 1)
        )
    )
    lower = -overshoot
    upper = 2 / math.sqrt(n) * sigma
    diff = sigma - integral
    # the bounds are exact real inequalities; the epsilon only absorbs
    # double-precision rounding of both sides
    eps = 1e-12 * max(1.0, abs(sigma), abs(integral))
    return DiagnosticsReport(
        mu=mu,
        n=n,
        beta_eff=beta_eff,
        window=win,
        psi=psi,
        sigma=sigma,
        integral=integral,
        lower_bound=lower,
        upper_bound=upper,
        lower_ok=bool(lower <= diff + eps),
        upper_ok=bool(diff <= upper + eps),
    )
