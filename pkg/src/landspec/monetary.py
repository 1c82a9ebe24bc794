"""Closed economy with fiat money: the interest rate is endogenous.

Money is the safe asset. On a balanced path its real return 1+r* is
tied to growth by 1+g* = (1+r*)(1+mu), and the land share solves a
quadratic once the rate-dependent leverage and downpayment terms are
substituted out. The reduced dynamics live in two jump variables
(phi, 1+r), so local determinacy requires the steady state to be a
source: both eigenvalue moduli above one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .core import (
    ScenarioParams,
    check_assumptions,
    derive_constants,
    positive_root,
    saving_rate,
)
from .errors import (
    AssumptionViolated,
    DomainError,
    MissingParameter,
    NoEquilibrium,
    RootNotBracketed,
)

_BRACKET_PAD = 1e-12
_UNIT_BAND = 1e-9  # eigen modulus closer to 1 than this is inconclusive


@dataclass(frozen=True)
class ReturnOrdering:
    """Gross returns lined up for the low-rate comparison: Rc, 1+g*, 1+r*."""

    Rc: float
    g: float
    r: float


@dataclass(frozen=True)
class MonetaryBgp:
    """Balanced growth path of the monetary economy.

    q0_times_M0_per_K0 is the real-balance coefficient in units of
    A*K (real balances = coefficient * A * K0); nan when the worker
    endowment coefficient e is not configured. min_e is the smallest
    e for which that coefficient is positive.
    """

    phi_star: float
    gross_r: float
    gross_growth: float
    ordering: ReturnOrdering
    q0_times_M0_per_K0: float
    min_e: float
    credit_gdp: float


@dataclass(frozen=True)
class MonetaryDynState:
    """The two jump variables of the reduced dynamics."""

    phi: float
    gross_r: float


@dataclass(frozen=True)
class LandlessBgp:
    """Benchmark without land: money and capital only."""

    gross_r: float
    gross_growth: float


@dataclass(frozen=True)
class MoneyPriceReport:
    """Positivity check for the price of money."""

    q0M0_per_K0: float
    min_e: float


@dataclass(frozen=True)
class DeterminacyReport:
    """Local analysis of the two-dimensional dynamics at the steady state."""

    jacobian: tuple[tuple[float, float], tuple[float, float]]
    eigen_moduli: tuple[float, float]
    locally_determinate: bool
    inconclusive: bool


def _rate_pieces(params: ScenarioParams, z: float):
    """Leverage, leveraged return, land return, downpayment at rate z."""
    c = derive_constants(params, "monetary")
    if z <= params.theta * c.Rc:
        raise DomainError(
            f"gross rate {z} at or below theta*Rc={params.theta * c.Rc}: "
            "leverage unbounded"
        )
    lev = 1.0 / (1.0 - params.theta * c.Rc / z)
    lam = c.Rc * (1.0 - params.theta) * lev
    W = (1.0 - params.theta_x) * z + c.Rc * (params.theta_x - params.theta)
    rx = c.Rc * (1.0 - params.theta) * z / W
    dp = 1.0 - params.theta_x * rx / z
    return c, lev, lam, rx, dp


def _growth_at(params: ScenarioParams, z: float, phi: float) -> float:
    c, lev, _, _, dp = _rate_pieces(params, z)
    s_beta1 = saving_rate(params) * params.eta * (1.0 - params.alpha)
    return c.A * lev * (s_beta1 - dp * phi)


def _brace(params: ScenarioParams, z: float, phi: float, e: float) -> float:
    """Real-balance coefficient (units of A*K) at rate z and share phi."""
    c = derive_constants(params, "monetary")
    growth = _growth_at(params, z, phi)
    return (
        (1.0 - params.alpha)
        + (1.0 - params.eta) * e * c.a_pow_alpha
        - growth / c.A
        - phi
    )


def quadratic_coefficients(params: ScenarioParams) -> tuple[float, float, float]:
    """Coefficients (c2, c1, c0) of the land-share quadratic.

    Derived by eliminating the endogenous rate from the growth
    equation, the money-return parity, and land no-arbitrage. At
    epsilon = 0 the roots are 0 and the closed-form positive share.
    """
    c = derive_constants(params, "monetary")
    s_beta1 = saving_rate(params) * params.eta * (1.0 - params.alpha)
    gm = params.gross_mu
    ca = params.epsilon * c.a_pow_alpha
    G = 1.0 - params.theta_x * gm
    H = params.theta_x * gm
    cR = c.Rc * (1.0 - params.theta)
    if params.theta_x >= 1.0:
        raise DomainError("theta_x = 1 leaves no unlevered land payoff")
    k = cR / (1.0 - params.theta_x)
    c2 = c.A * G
    c1 = k * G + c.A * ca * (G - H) - c.A * s_beta1
    c0 = -ca * (k * H + c.A * H * ca + c.A * s_beta1)
    return c2, c1, c0


def quadratic_residual(params: ScenarioParams, phi: float) -> float:
    """Relative residual of the land-share quadratic at phi."""
    c2, c1, c0 = quadratic_coefficients(params)
    value = c2 * phi * phi + c1 * phi + c0
    scale = max(abs(c2 * phi * phi), abs(c1 * phi), abs(c0), 1e-300)
    return abs(value) / scale


def solve_bgp_monetary(params: ScenarioParams) -> MonetaryBgp:
    """Solve the monetary balanced growth path.

    Takes the unique positive root of the land-share quadratic, backs
    the gross rate out of land no-arbitrage, and validates the
    self-referential collateral bound afterwards.

    Raises:
        AssumptionViolated: the positive-share condition fails at the
            outset.
        NoEquilibrium: no admissible positive root, rate outside
            (theta*Rc, Rc], or the post-hoc collateral bound fails.
    """
    c = derive_constants(params, "monetary")
    gm = params.gross_mu
    reports = check_assumptions(
        params.with_changes(epsilon=0.0), "monetary"
    )
    a4 = next(rep for rep in reports if rep.id == "A4")
    if not a4.holds:
        raise AssumptionViolated("positive-share condition fails", [a4])
    G = 1.0 - params.theta_x * gm
    if G <= 0.0:
        raise NoEquilibrium(
            f"theta_x*(1+mu) = {params.theta_x * gm} >= 1: the collateral "
            "bound cannot hold for any positive land share"
        )
    ca = params.epsilon * c.a_pow_alpha
    cR = c.Rc * (1.0 - params.theta)
    s_beta1 = saving_rate(params) * params.eta * (1.0 - params.alpha)
    if params.epsilon == 0.0:
        # closed forms: the quadratic factors as phi * (c2*phi + c1)
        phi = s_beta1 / G - cR / (c.A * (1.0 - params.theta_x))
        if phi <= 0.0:
            raise NoEquilibrium(f"land share {phi} not positive")
        z = (
            c.Rc
            / (1.0 - params.theta_x)
            * ((1.0 - params.theta) / gm - (params.theta_x - params.theta))
        )
    else:
        c2, c1, c0 = quadratic_coefficients(params)
        try:
            phi = positive_root(c2, c1, c0)
        except DomainError as exc:
            raise NoEquilibrium(f"no positive land share: {exc}")
        z = (
            cR * phi / (gm * (phi + ca))
            - c.Rc * (params.theta_x - params.theta)
        ) / (1.0 - params.theta_x)
    if not params.theta * c.Rc < z <= c.Rc * (1.0 + 1e-12):
        raise NoEquilibrium(
            f"gross rate {z} outside (theta*Rc, Rc] = "
            f"({params.theta * c.Rc}, {c.Rc}]"
        )
    growth = z * gm
    post = check_assumptions(params, "monetary", phi_star=phi)
    a3 = next(rep for rep in post if rep.id == "A3")
    if not a3.holds:
        raise NoEquilibrium(
            f"collateral bound fails at the solved share (slack {a3.slack})"
        )
    min_e = (growth / c.A + phi - (1.0 - params.alpha)) / (
        (1.0 - params.eta) * c.a_pow_alpha
    )
    if params.e is not None:
        coeff = _brace(params, z, phi, params.e)
    else:
        coeff = float("nan")
    return MonetaryBgp(
        phi_star=phi,
        gross_r=z,
        gross_growth=growth,
        ordering=ReturnOrdering(Rc=c.Rc, g=growth, r=z),
        q0_times_M0_per_K0=coeff,
        min_e=min_e,
        credit_gdp=_credit_share(params, phi),
    )


def solve_landless(params: ScenarioParams) -> LandlessBgp:
    """Benchmark balanced path with money and capital but no land.

    Raises:
        ValueError: epsilon > 0 (the benchmark prices land at zero).
        DomainError: implied rate at or below theta*Rc.
    """
    if params.epsilon != 0.0:
        raise ValueError("the landless benchmark requires epsilon = 0")
    c = derive_constants(params, "monetary")
    s_beta1 = saving_rate(params) * params.eta * (1.0 - params.alpha)
    growth = s_beta1 * c.A + params.theta * c.Rc * params.gross_mu
    z = growth / params.gross_mu
    if z <= params.theta * c.Rc:
        raise DomainError(
            f"implied gross rate {z} at or below theta*Rc={params.theta * c.Rc}"
        )
    return LandlessBgp(gross_r=z, gross_growth=growth)


def money_price_coefficient(
    params: ScenarioParams, bgp: MonetaryBgp
) -> MoneyPriceReport:
    """Real-balance coefficient at the configured e, plus the minimum e.

    The coefficient is in units of A*K; it is linear in e with slope
    (1-eta)*a**alpha and crosses zero at min_e. A negative value means
    money is worthless at that e (no monetary equilibrium).

    Raises:
        MissingParameter: params.e unset.
    """
    if params.e is None:
        raise MissingParameter("e is required to evaluate the money price")
    coeff = _brace(params, bgp.gross_r, bgp.phi_star, params.e)
    return MoneyPriceReport(q0M0_per_K0=coeff, min_e=bgp.min_e)


def _credit_share(params: ScenarioParams, phi: float) -> float:
    c = derive_constants(params, "monetary")
    gm = params.gross_mu
    ca = params.epsilon * c.a_pow_alpha
    return params.theta * c.Rc * gm / ((1.0 + ca) * c.A) + params.theta_x * (
        phi + ca
    ) * gm / (1.0 + ca)


def credit_gdp(params: ScenarioParams, bgp: MonetaryBgp) -> float:
    """Credit over output on the balanced path."""
    return _credit_share(params, bgp.phi_star)


def dynamics_step(
    state: MonetaryDynState, params: ScenarioParams
) -> MonetaryDynState:
    """Advance the reduced two-variable dynamics by one period.

    The next share follows from land no-arbitrage in closed form; the
    next rate clears the money market, found by a bracketed root
    search (the real-balance coefficient is strictly increasing in the
    rate on the admissible interval).

    Raises:
        MissingParameter: params.e unset.
        DomainError: nonpositive growth or real-balance coefficient at
            the current state.
        RootNotBracketed: no admissible next rate clears the market.
    """
    if params.e is None:
        raise MissingParameter("e is required to iterate the money-price map")
    c, _, _, rx, _ = _rate_pieces(params, state.gross_r)
    growth = _growth_at(params, state.gross_r, state.phi)
    if growth <= 0.0:
        raise DomainError(f"growth factor {growth} not positive at this state")
    brace_now = _brace(params, state.gross_r, state.phi, params.e)
    if brace_now <= 0.0:
        raise DomainError(
            f"real-balance coefficient {brace_now} not positive; e too small"
        )
    ca = params.epsilon * c.a_pow_alpha
    phi_next = state.phi * rx / growth - ca
    target = state.gross_r * params.gross_mu * brace_now

    def gap(z: float) -> float:
        return _brace(params, z, phi_next, params.e) * growth - target

    lo = params.theta * c.Rc * (1.0 + _BRACKET_PAD)
    hi = c.Rc
    if not gap(lo) < 0.0 < gap(hi):
        raise RootNotBracketed(
            "money market does not clear for any gross rate in "
            f"({lo}, {hi}) at phi={phi_next}"
        )
    z_next = brentq(gap, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    return MonetaryDynState(phi=phi_next, gross_r=z_next)


def determinacy_report(params: ScenarioParams) -> DeterminacyReport:
    """Eigenvalue test of the steady state of the reduced dynamics.

    Central-difference Jacobian with relative step 1e-6 at the solved
    balanced path. Both variables are jumps, so local determinacy
    requires both eigen moduli strictly above one; moduli within 1e-9
    of one are flagged inconclusive.

    Raises:
        MissingParameter: params.e unset (the money-price map needs it).
    """
    bgp = solve_bgp_monetary(params)
    phi0, z0 = bgp.phi_star, bgp.gross_r

    def step(phi: float, z: float) -> tuple[float, float]:
        nxt = dynamics_step(MonetaryDynState(phi=phi, gross_r=z), params)
        return nxt.phi, nxt.gross_r

    h_phi = 1e-6 * max(1.0, abs(phi0))
    h_z = 1e-6 * max(1.0, abs(z0))
    jac = np.empty((2, 2))
    for col, (dp_, dz_) in enumerate(((h_phi, 0.0), (0.0, h_z))):
        plus = step(phi0 + dp_, z0 + dz_)
        minus = step(phi0 - dp_, z0 - dz_)
        denom = 2.0 * (dp_ + dz_)
        jac[0, col] = (plus[0] - minus[0]) / denom
        jac[1, col] = (plus[1] - minus[1]) / denom
    moduli = tuple(sorted(abs(np.linalg.eigvals(jac))))
    inconclusive = any(abs(m - 1.0) <= _UNIT_BAND for m in moduli)
    determinate = (not inconclusive) and moduli[0] > 1.0
    return DeterminacyReport(
        jacobian=(
            (float(jac[0, 0]), float(jac[0, 1])),
            (float(jac[1, 0]), float(jac[1, 1])),
        ),
        eigen_moduli=(float(moduli[0]), float(moduli[1])),
        locally_determinate=determinate,
        inconclusive=inconclusive,
    )
