"""Model variants: alternative saving, land labor, exogenous rents, valuation.

Four extensions of the open-economy model live here:

* a log-utility saving rate that scales the income term of every solver
  (re-exported from core, where the solvers pick it up);
* a labor margin in real estate, splitting the workforce between the
  production and rent sectors;
* unbalanced dynamics where rents grow at an exogenous rate d instead
  of being a fixed share of output, which adds the dividend share n as
  a second state variable;
* fundamental-value accounting that prices land by truncated discounted
  dividends and measures the transversality tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from scipy.optimize import brentq

from .core import ScenarioParams, check_assumptions, saving_rate
from .errors import (
    AssumptionViolated,
    DomainError,
    MissingParameter,
    RootNotBracketed,
    ShootingFailed,
)
from .monetary import MonetaryBgp
from .open_economy import OpenBgp, _env

__all__ = [
    "saving_rate",
    "LaborSplit",
    "real_estate_labor",
    "UnbalancedState",
    "UnbalancedPath",
    "unbalanced_path",
    "StabilityReport",
    "stability_matrix",
    "unbalanced_jacobian_numerical",
    "BubbleReport",
    "fundamental_value",
    "bubble_detect_unbalanced",
]

_TAIL_CUTOFF = 1e-10
_HORIZON_CAP = 10 ** 6


@dataclass(frozen=True)
class LaborSplit:
    """Workforce division between production and the rent sector."""

    NX: float
    NK: float
    income_multiplier: float
    mobile: bool


@dataclass(frozen=True)
class UnbalancedState:
    """One period of the rent-share dynamics: land share and dividend share."""

    phi: float
    n: float


@dataclass(frozen=True)
class UnbalancedPath:
    path: list[UnbalancedState]
    phi0: float
    converged: bool


@dataclass(frozen=True)
class StabilityReport:
    """Trace/determinant test of the two-state rent dynamics."""

    trace: float
    det: float
    locally_determinate: bool


@dataclass(frozen=True)
class BubbleReport:
    """Land price versus discounted dividends.

    V_over_D is the value-to-current-dividend ratio (nan when dividends
    are zero); tv_tail is the discounted price remaining beyond the
    horizon, the quantity whose vanishing separates pricing by
    dividends from a pure store of value.
    """

    V_over_D: float
    P_exceeds_V: bool
    tv_tail: float
    horizon: int


def real_estate_labor(
    params: ScenarioParams, nx_fixed: Optional[float] = None
) -> LaborSplit:
    """Split labor between goods production and real-estate services.

    With mobile labor the split equates wages across sectors; the
    production wage rises as labor leaves for real estate while the
    rent-sector wage falls, so the crossing is unique. The income
    multiplier rescales the entrepreneurial income term of the BGP
    solvers. Passing nx_fixed pins the real-estate share instead
    (immobile labor) and evaluates the blended multiplier at it.

    Raises:
        MissingParameter: rho unset.
        ValueError: epsilon = 0 (no rent sector to staff), or nx_fixed
            outside (0, 1).
        RootNotBracketed: the wage gap does not change sign (cannot
            happen for valid parameters).
    """
    if params.rho is None:
        raise MissingParameter("rho is required for the real-estate labor margin")
    if params.epsilon <= 0.0:
        raise ValueError("the labor margin requires epsilon > 0")
    A = params.a ** (1.0 - params.alpha)
    wage_prod = (1.0 - params.alpha) * A
    scale = params.rho * params.epsilon * params.a

    if nx_fixed is not None:
        if not 0.0 < nx_fixed < 1.0:
            raise ValueError(f"nx_fixed must lie in (0, 1), got {nx_fixed}")
        nx, nk = nx_fixed, 1.0 - nx_fixed
        multiplier = (
            scale * nx ** params.rho + wage_prod * nk ** (1.0 - params.alpha)
        ) / wage_prod
        return LaborSplit(NX=nx, NK=nk, income_multiplier=multiplier, mobile=False)

    def wage_gap(nx: float) -> float:
        return wage_prod * (1.0 - nx) ** (-params.alpha) - scale * nx ** (
            params.rho - 1.0
        )

    lo, hi = 1e-12, 1.0 - 1e-12
    if not wage_gap(lo) < 0.0 < wage_gap(hi):
        raise RootNotBracketed(
            "wage gap does not change sign on (0, 1); check rho and epsilon"
        )
    nx = brentq(wage_gap, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    nk = 1.0 - nx
    return LaborSplit(
        NX=nx, NK=nk, income_multiplier=nk ** (-params.alpha), mobile=True
    )


def _unbalanced_env(params: ScenarioParams, d: float):
    """Constants of the rent dynamics; validates the maintained assumptions."""
    reports = check_assumptions(params.with_changes(d=d), "open")
    failing = [rep for rep in reports if rep.id in ("A2", "A5") and not rep.holds]
    if failing:
        if any(rep.id == "A5" for rep in failing):
            # rents outrun the land return: discounted dividends diverge
            raise DomainError(
                "rent growth 1+d reaches the land return; valuation is infinite"
            )
        raise AssumptionViolated("rent dynamics assumptions fail", failing)
    return _rest_point(params)


def _growth_of(phi: float, env) -> float:
    dp = env.constants.land_downpayment
    return env.m * (env.s_beta1 - dp * phi)


def _manifold_phi(n: float, env, d: float, phi_ss: float, rx: float) -> float:
    """Land share on the convergent branch at dividend share n.

    Bisection on the divergence classification of the true map: shares
    above the branch blow past the growth ceiling, shares below drift
    under it. Once n has shrunk to noise the candidate is compared to
    the local linearization of the branch instead.
    """
    if n == 0.0:
        return phi_ss
    a_slope = env.s_beta1 * env.m / rx
    b_slope = (1.0 + d) / rx
    line_slope = b_slope / (a_slope - b_slope)

    def too_high(phi0: float) -> bool:
        phi, nn = phi0, n
        for _ in range(200):
            g = _growth_of(phi, env)
            if g <= 0.0 or phi >= env.phi_bar:
                return True
            nn = (1.0 + d) * nn / g
            phi = phi * rx / g - nn
            if phi < 0.0:
                return False
            if nn < 1e-30:
                return phi > phi_ss + line_slope * nn
        return phi > phi_ss + line_slope * nn

    lo, hi = phi_ss, env.phi_bar * (1.0 - 1e-12)
    if too_high(lo) or not too_high(hi):
        raise ShootingFailed(
            f"divergence classification is not monotone at n={n}; "
            "no convergent share found"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if too_high(mid):
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-16 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def unbalanced_path(
    params: ScenarioParams, d: float, n0: float, T: int
) -> UnbalancedPath:
    """Simulate the rent dynamics from dividend share n0 for T periods.

    Rents grow at the exogenous gross rate 1+d in place of the fruit
    share, so params.epsilon plays no role here. The land share is a
    jump variable: each period it is re-anchored onto the convergent
    branch at the current dividend share, which keeps the path on the
    saddle despite the explosive unstable direction. converged reports
    whether the distance to the rest point shrank monotonically over
    the last quarter of the horizon.

    Raises:
        ValueError: n0 < 0 or T < 1.
        AssumptionViolated: positive-share condition fails.
        DomainError: rent growth reaches the land return.
        ShootingFailed: no convergent share exists at some visited n.
    """
    if n0 < 0.0:
        raise ValueError(f"n0 must be nonnegative, got {n0}")
    if T < 1:
        raise ValueError(f"T must be at least 1, got {T}")
    env, rx, phi_ss = _unbalanced_env(params, d)
    n = n0
    phi = _manifold_phi(n, env, d, phi_ss, rx)
    states = [UnbalancedState(phi=phi, n=n)]
    for _ in range(T):
        g = _growth_of(phi, env)
        if g <= 0.0:
            raise ShootingFailed(f"growth factor {g} not positive along the path")
        n = (1.0 + d) * n / g
        phi = _manifold_phi(n, env, d, phi_ss, rx)
        states.append(UnbalancedState(phi=phi, n=n))
    tail = states[-max(T // 4 + 1, 2):]
    dist = [max(abs(s.phi - phi_ss), s.n) for s in tail]
    converged = all(b <= a + 1e-15 for a, b in zip(dist, dist[1:]))
    return UnbalancedPath(path=states, phi0=states[0].phi, converged=converged)


def _rest_point(params: ScenarioParams):
    env = _env(params, epsilon=0.0)
    rx = env.constants.Rx_star
    dp = env.constants.land_downpayment
    phi_ss = (env.m * env.s_beta1 - rx) / (env.m * dp)
    return env, rx, phi_ss


def unbalanced_jacobian_numerical(
    params: ScenarioParams, d: float
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Central-difference Jacobian of the rent dynamics at the rest point."""
    env, rx, phi_ss = _rest_point(params)

    def step(phi: float, n: float) -> tuple[float, float]:
        g = _growth_of(phi, env)
        n_next = (1.0 + d) * n / g
        return phi * rx / g - n_next, n_next

    h_phi = 1e-7 * max(1.0, abs(phi_ss))
    h_n = 1e-7
    out = [[0.0, 0.0], [0.0, 0.0]]
    for col, (dp_, dn_) in enumerate(((h_phi, 0.0), (0.0, h_n))):
        plus = step(phi_ss + dp_, 0.0 + dn_)
        minus = step(phi_ss - dp_, 0.0 - dn_)
        denom = 2.0 * (dp_ + dn_)
        out[0][col] = (plus[0] - minus[0]) / denom
        out[1][col] = (plus[1] - minus[1]) / denom
    return ((out[0][0], out[0][1]), (out[1][0], out[1][1]))


def stability_matrix(params: ScenarioParams, d: float) -> StabilityReport:
    """Closed-form trace and determinant of the rent dynamics.

    The Jacobian at the rest point is triangular with diagonal entries
    a = s*eta*(1-alpha)*A*lev/R^x and b = (1+d)/R^x; local determinacy
    of the single jump variable requires det > 0 and det < trace - 1,
    which factors as (a-1)(b-1) < 0. The closed form is cross-checked
    against a numerical Jacobian and must agree to 1e-8.

    Raises:
        ArithmeticError: closed form and numerical Jacobian disagree.
    """
    env, rx, _ = _rest_point(params)
    a_slope = env.s_beta1 * env.m / rx
    b_slope = (1.0 + d) / rx
    trace = a_slope + b_slope
    det = a_slope * b_slope
    num = unbalanced_jacobian_numerical(params, d)
    num_trace = num[0][0] + num[1][1]
    num_det = num[0][0] * num[1][1] - num[0][1] * num[1][0]
    if abs(num_trace - trace) > 1e-8 * max(1.0, abs(trace)) or abs(
        num_det - det
    ) > 1e-8 * max(1.0, abs(det)):
        raise ArithmeticError(
            f"numerical Jacobian (trace {num_trace}, det {num_det}) disagrees "
            f"with closed form (trace {trace}, det {det})"
        )
    return StabilityReport(
        trace=trace,
        det=det,
        locally_determinate=det > 0.0 and det < trace - 1.0,
    )


def _discount_factor(
    params: ScenarioParams, bgp: Union[OpenBgp, MonetaryBgp]
) -> float:
    """Land return used to discount rents on a balanced path."""
    if isinstance(bgp, MonetaryBgp):
        ca = params.epsilon * params.a ** params.alpha
        if params.epsilon == 0.0:
            return bgp.gross_growth
        return bgp.gross_growth * (bgp.phi_star + ca) / bgp.phi_star
    env = _env(params)
    return env.constants.Rx_star


def fundamental_value(
    params: ScenarioParams,
    bgp: Union[OpenBgp, MonetaryBgp],
    N: Optional[int] = None,
) -> BubbleReport:
    """Price land by a truncated sum of discounted dividends.

    On a balanced path dividends grow at 1+g* and are discounted at the
    land return, so the sum is geometric with ratio (1+g*)/R^x < 1 for
    epsilon > 0. The default horizon is the smallest N whose remaining
    tail ratio falls under 1e-10, capped at 10^6 terms. With epsilon = 0
    dividends vanish while the price stays positive: the report flags
    the price as exceeding fundamentals with V_over_D undefined.

    Raises:
        DomainError: ratio >= 1 with epsilon > 0 (no convergence), or
            the horizon cap cannot reach the tail target.
    """
    growth, phi = bgp.gross_growth, bgp.phi_star
    A = params.a ** (1.0 - params.alpha)
    price_per_k = phi * A
    if params.epsilon == 0.0:
        return BubbleReport(
            V_over_D=float("nan"),
            P_exceeds_V=True,
            tv_tail=price_per_k,
            horizon=0 if N is None else N,
        )
    ratio = growth / _discount_factor(params, bgp)
    if not 0.0 < ratio < 1.0:
        raise DomainError(
            f"dividend growth to land return ratio {ratio} not in (0, 1); "
            "the discounted sum does not converge"
        )
    if N is None:
        N = math.ceil(math.log(_TAIL_CUTOFF) / math.log(ratio))
    if N > _HORIZON_CAP:
        raise DomainError(
            f"horizon {N} exceeds the {_HORIZON_CAP}-term cap"
        )
    tail = ratio ** N
    v_over_d = ratio * (1.0 - tail) / (1.0 - ratio)
    return BubbleReport(
        V_over_D=v_over_d,
        P_exceeds_V=False,
        tv_tail=tail * price_per_k,
        horizon=N,
    )


def bubble_detect_unbalanced(
    params: ScenarioParams,
    d: float,
    n0: float = 0.01,
    T: int = 60,
) -> BubbleReport:
    """Value land along the rent dynamics and test for a bubble.

    With rents growing at 1+d below the land return R^x, the
    value-to-dividend ratio is (1+d)/(R^x - (1+d)) while the price
    grows at R^x asymptotically, so the discounted price does not
    vanish: the land price carries a component beyond its dividends.
    tv_tail is the discounted price at the end of a simulated path
    (per unit of initial capital), which stabilizes at a positive
    constant.

    Raises:
        AssumptionViolated: positive-share condition fails.
        DomainError: rent growth reaches the land return (value infinite).
        ShootingFailed: as for unbalanced_path.
    """
    env, rx, _ = _unbalanced_env(params, d)
    result = unbalanced_path(params, d, n0, T)
    A = env.constants.A
    capital = 1.0
    discount = 1.0
    tail = result.path[0].phi * A
    for state, nxt in zip(result.path, result.path[1:]):
        g = _growth_of(state.phi, env)
        capital *= g
        discount *= rx
        tail = nxt.phi * A * capital / discount
    return BubbleReport(
        V_over_D=(1.0 + d) / (rx - (1.0 + d)),
        P_exceeds_V=rx > 1.0 + d,
        tv_tail=tail,
        horizon=T,
    )
