"""Comparative statics: finite-difference derivatives and sign structure.

The growth effects of collateral and rate changes switch sign as the
land fruit share grows, so everything here is organized around epsilon:
a derivative engine robust near the feasible boundary, sign maps over
an epsilon grid, bisection for the critical share where a derivative
flips, and a regression suite for the model's sign claims.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import monetary as _monetary
from . import open_economy as _open
from .core import Mode, ScenarioParams
from .errors import (
    AssumptionViolated,
    DomainError,
    MissingParameter,
    NoEquilibrium,
    RegionTooNarrow,
)

SIGN_TOLERANCE = 1e-9
_MIN_STEP = 1e-10
_EPS_LO = 1e-6
_MONETARY_EPS_SCAN = 10.0

_TARGETS = ("g", "phi", "r", "credit")
_WRT = ("theta", "theta_x", "r", "mu", "epsilon")


@dataclass(frozen=True)
class DerivativeDetail:
    """Extrapolated derivative with the raw central differences behind it."""

    value: float
    raw_h: float
    raw_half: float
    h_used: float


@dataclass(frozen=True)
class SweepRecord:
    """One epsilon grid point of a sign map."""

    epsilon: float
    param_values: dict[str, float]
    g_star: float
    phi_star: float
    gross_r: float
    derivative: float
    derivative_target: str
    sign: str
    feasible: bool
    reason: str


@dataclass(frozen=True)
class PropositionResult:
    id: str
    claim: str
    holds: bool
    details: dict[str, float] = field(default_factory=dict)


def _validate_target(economy: Mode, target: str) -> None:
    if target not in _TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {_TARGETS}")
    if economy == "open" and target == "credit":
        raise ValueError("credit target is defined for the monetary economy")


def _evaluate(params: ScenarioParams, economy: Mode, target: str) -> float:
    _validate_target(economy, target)
    if economy == "open":
        bgp = _open.solve_bgp(params)
        if target == "g":
            return bgp.gross_growth
        if target == "phi":
            return bgp.phi_star
        return params.gross_r
    bgp = _monetary.solve_bgp_monetary(params)
    if target == "g":
        return bgp.gross_growth
    if target == "phi":
        return bgp.phi_star
    if target == "r":
        return bgp.gross_r
    return bgp.credit_gdp


def derivative_detail(
    params: ScenarioParams,
    economy: Mode,
    wrt: str,
    h: Optional[float] = None,
    target: str = "g",
) -> DerivativeDetail:
    """Central-difference derivative with one Richardson step.

    Evaluates the target at wrt +- h and +- h/2 and reports the
    extrapolant (4*D(h/2) - D(h))/3. When an evaluation point leaves
    the solvable region the step shrinks by 10 and the stencil is
    retried.

    Raises:
        MissingParameter: wrt names a rate parameter that is unset.
        ValueError: unknown wrt or target, or target/economy mismatch.
        RegionTooNarrow: no admissible step of at least 1e-10 exists.
    """
    if wrt not in _WRT:
        raise ValueError(f"unknown wrt {wrt!r}; expected one of {_WRT}")
    # argument errors must surface as such, not as a shrunken region
    _validate_target(economy, target)
    x0 = getattr(params, wrt)
    if x0 is None:
        raise MissingParameter(f"{wrt} is unset on this scenario")
    step = 1e-5 * max(1.0, abs(x0)) if h is None else h

    def at(x: float) -> float:
        return _evaluate(params.with_changes(**{wrt: x}), economy, target)

    while step >= _MIN_STEP:
        try:
            d_h = (at(x0 + step) - at(x0 - step)) / (2.0 * step)
            d_half = (at(x0 + step / 2.0) - at(x0 - step / 2.0)) / step
        except (AssumptionViolated, NoEquilibrium, DomainError, ValueError):
            step /= 10.0
            continue
        return DerivativeDetail(
            value=(4.0 * d_half - d_h) / 3.0,
            raw_h=d_h,
            raw_half=d_half,
            h_used=step,
        )
    raise RegionTooNarrow(
        f"no step of at least {_MIN_STEP} keeps {wrt} inside the solvable "
        f"region around {x0}"
    )


def derivative(
    params: ScenarioParams,
    economy: Mode,
    wrt: str,
    h: Optional[float] = None,
    target: str = "g",
) -> float:
    """Extrapolated derivative of the target quantity; see derivative_detail."""
    return derivative_detail(params, economy, wrt, h=h, target=target).value


def _sign_of(value: float) -> str:
    if value > SIGN_TOLERANCE:
        return "pos"
    if value < -SIGN_TOLERANCE:
        return "neg"
    return "zero"


_REASONS = {
    NoEquilibrium: "no_equilibrium",
    AssumptionViolated: "assumption_violated",
    DomainError: "domain_error",
    RegionTooNarrow: "region_too_narrow",
}


def _reason_for(exc: Exception) -> str:
    for klass, code in _REASONS.items():
        if isinstance(exc, klass):
            return code
    return "error"


def _core_values(params: ScenarioParams) -> dict[str, float]:
    values = {
        "theta": params.theta,
        "theta_x": params.theta_x,
        "eta": params.eta,
        "alpha": params.alpha,
        "a": params.a,
        "delta": params.delta,
        "epsilon": params.epsilon,
    }
    for name in ("r", "mu", "beta", "rho", "d", "e"):
        value = getattr(params, name)
        if value is not None:
            values[name] = value
    return values


def sign_map(
    params: ScenarioParams,
    economy: Mode,
    wrt: str,
    eps_grid: Sequence[float],
) -> list[SweepRecord]:
    """Derivative sign at every epsilon on the grid, sorted by epsilon.

    Points where the model has no equilibrium, an assumption fails, or
    growth falls under the depreciation floor are flagged with a reason
    code and nan values rather than dropped.
    """
    records: list[SweepRecord] = []
    nan = float("nan")
    for eps in sorted(eps_grid):
        p = params.with_changes(epsilon=eps)
        values = _core_values(p)
        g = phi = gross_r = deriv = nan
        sign = ""
        feasible = True
        reason = ""
        try:
            if economy == "open":
                bgp = _open.solve_bgp(p)
                g, phi = bgp.gross_growth, bgp.phi_star
                gross_r = p.gross_r
            else:
                mbgp = _monetary.solve_bgp_monetary(p)
                g, phi, gross_r = (
                    mbgp.gross_growth,
                    mbgp.phi_star,
                    mbgp.gross_r,
                )
                if g < 1.0 - p.delta:
                    feasible = False
                    reason = "growth_below_floor"
        except (AssumptionViolated, NoEquilibrium, DomainError) as exc:
            feasible = False
            reason = _reason_for(exc)
        if feasible:
            try:
                deriv = derivative(p, economy, wrt)
                sign = _sign_of(deriv)
            except (RegionTooNarrow, MissingParameter) as exc:
                deriv = nan
                sign = ""
                reason = _reason_for(exc)
        records.append(
            SweepRecord(
                epsilon=eps,
                param_values=values,
                g_star=g,
                phi_star=phi,
                gross_r=gross_r,
                derivative=deriv,
                derivative_target="g",
                sign=sign,
                feasible=feasible,
                reason=reason,
            )
        )
    return records


def feasible_epsilon_ceiling(params: ScenarioParams, economy: Mode) -> float:
    """Upper end of the epsilon range used for grids and flip searches.

    Open economy: 99% of the share at which growth hits the
    depreciation floor, capped at 1. Monetary economy: the largest
    solvable-and-feasible share located by bisection up to 10, with
    the same 99%/cap treatment.
    """

    def feasible(eps: float) -> bool:
        p = params.with_changes(epsilon=eps)
        try:
            if economy == "open":
                _open.solve_bgp(p)
                return True
            bgp = _monetary.solve_bgp_monetary(p)
            return bgp.gross_growth >= 1.0 - p.delta
        except (AssumptionViolated, NoEquilibrium, DomainError):
            return False

    if economy == "open":
        edge = _open.epsilon_bar(params)
        if math.isinf(edge):
            return 1.0
        return min(0.99 * edge, 1.0)
    if feasible(_MONETARY_EPS_SCAN):
        return min(0.99 * _MONETARY_EPS_SCAN, 1.0)
    lo, hi = 0.0, _MONETARY_EPS_SCAN
    if not feasible(lo):
        raise NoEquilibrium("no feasible epsilon at the base parameters")
    while hi - lo > 1e-10 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return min(0.99 * lo, 1.0)


def default_epsilon_grid(
    params: ScenarioParams, economy: Mode, points: int = 200
) -> list[float]:
    """Evenly spaced epsilon grid from 0 to the feasible ceiling."""
    ceiling = feasible_epsilon_ceiling(params, economy)
    return [float(x) for x in np.linspace(0.0, ceiling, points)]


def critical_epsilon(params: ScenarioParams, economy: Mode, wrt: str) -> float:
    """Fruit share at which the growth derivative changes sign.

    Bisects between epsilon = 1e-6 and the feasible ceiling until the
    bracket is 1e-8 wide. Returns +inf when the derivative has the same
    sign at both ends (no flip in the feasible range).
    """
    lo = _EPS_LO
    hi = feasible_epsilon_ceiling(params, economy)
    if hi <= lo:
        return float("inf")

    def d_at(eps: float) -> float:
        return derivative(params.with_changes(epsilon=eps), economy, wrt)

    d_lo = d_at(lo)
    d_hi = d_at(hi)
    if d_lo * d_hi > 0.0:
        return float("inf")
    while hi - lo > 1e-8:
        mid = 0.5 * (lo + hi)
        if d_at(mid) * d_lo > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


_PROP_EPS = 1e-6


def _expect(value: float, positive: bool) -> bool:
    return value > SIGN_TOLERANCE if positive else value < -SIGN_TOLERANCE


def _sign_rule(value: float, driver: float) -> bool:
    if driver > 0.0:
        return value > SIGN_TOLERANCE
    if driver < 0.0:
        return value < -SIGN_TOLERANCE
    return abs(value) <= SIGN_TOLERANCE


def proposition_suite(
    params_open: Optional[ScenarioParams] = None,
    params_monetary: Optional[ScenarioParams] = None,
) -> list[PropositionResult]:
    """Regression suite over the model's comparative-statics sign claims.

    Every claim is evaluated at epsilon = 1e-6 (the small-fruit regime
    the claims are stated for). Pass an open-economy parameter set, a
    monetary one, or both; claims for a missing economy are skipped.
    """
    if params_open is None and params_monetary is None:
        raise ValueError("at least one parameter set is required")
    out: list[PropositionResult] = []

    if params_open is not None:
        po = params_open.with_changes(epsilon=_PROP_EPS)
        gap = po.theta_x - po.theta
        d_g_tx = derivative(po, "open", "theta_x")
        d_g_th = derivative(po, "open", "theta")
        d_g_r = derivative(po, "open", "r")
        d_phi_tx = derivative(po, "open", "theta_x", target="phi")
        d_phi_r = derivative(po, "open", "r", target="phi")
        d_phi_th = derivative(po, "open", "theta", target="phi")
        d_phi_eps = derivative(po, "open", "epsilon", target="phi")
        out.extend(
            [
                PropositionResult(
                    "open-growth-down-in-land-collateral",
                    "growth falls as land collateral rises (small fruit share)",
                    _expect(d_g_tx, positive=False),
                    {"d_g_dtheta_x": d_g_tx},
                ),
                PropositionResult(
                    "open-growth-up-in-capital-collateral",
                    "growth rises as capital collateral rises",
                    _expect(d_g_th, positive=True),
                    {"d_g_dtheta": d_g_th},
                ),
                PropositionResult(
                    "open-growth-rate-sign-rule",
                    "sign of growth response to the rate matches "
                    "sign(theta_x - theta)",
                    _sign_rule(d_g_r, gap),
                    {"d_g_dr": d_g_r, "theta_gap": gap},
                ),
                PropositionResult(
                    "open-share-up-in-land-collateral",
                    "land share rises in land collateral",
                    _expect(d_phi_tx, positive=True),
                    {"d_phi_dtheta_x": d_phi_tx},
                ),
                PropositionResult(
                    "open-share-down-in-rate",
                    "land share falls in the rate",
                    _expect(d_phi_r, positive=False),
                    {"d_phi_dr": d_phi_r},
                ),
                PropositionResult(
                    "open-share-up-in-capital-collateral",
                    "land share rises in capital collateral",
                    _expect(d_phi_th, positive=True),
                    {"d_phi_dtheta": d_phi_th},
                ),
                PropositionResult(
                    "open-share-up-in-fruit",
                    "land share rises in the fruit share",
                    _expect(d_phi_eps, positive=True),
                    {"d_phi_depsilon": d_phi_eps},
                ),
            ]
        )

    if params_monetary is not None:
        pm = params_monetary.with_changes(epsilon=_PROP_EPS)
        gap_m = pm.theta - pm.theta_x
        d_g_tx = derivative(pm, "monetary", "theta_x")
        d_phi_tx = derivative(pm, "monetary", "theta_x", target="phi")
        d_r_tx = derivative(pm, "monetary", "theta_x", target="r")
        d_g_th = derivative(pm, "monetary", "theta")
        d_phi_th = derivative(pm, "monetary", "theta", target="phi")
        d_r_th = derivative(pm, "monetary", "theta", target="r")
        d_g_mu = derivative(pm, "monetary", "mu")
        d_phi_mu = derivative(pm, "monetary", "mu", target="phi")
        d_r_mu = derivative(pm, "monetary", "mu", target="r")
        d_cr_th = derivative(pm, "monetary", "theta", target="credit")
        d_cr_tx = derivative(pm, "monetary", "theta_x", target="credit")
        d_cr_mu = derivative(pm, "monetary", "mu", target="credit")
        out.extend(
            [
                PropositionResult(
                    "monetary-growth-down-in-land-collateral",
                    "growth falls as land collateral rises",
                    _expect(d_g_tx, positive=False),
                    {"d_g_dtheta_x": d_g_tx},
                ),
                PropositionResult(
                    "monetary-share-up-in-land-collateral",
                    "land share rises in land collateral",
                    _expect(d_phi_tx, positive=True),
                    {"d_phi_dtheta_x": d_phi_tx},
                ),
                PropositionResult(
                    "monetary-rate-down-in-land-collateral",
                    "the rate falls in land collateral",
                    _expect(d_r_tx, positive=False),
                    {"d_r_dtheta_x": d_r_tx},
                ),
                PropositionResult(
                    "monetary-growth-up-in-capital-collateral",
                    "growth rises in capital collateral",
                    _expect(d_g_th, positive=True),
                    {"d_g_dtheta": d_g_th},
                ),
                PropositionResult(
                    "monetary-share-up-in-capital-collateral",
                    "land share rises in capital collateral",
                    _expect(d_phi_th, positive=True),
                    {"d_phi_dtheta": d_phi_th},
                ),
                PropositionResult(
                    "monetary-rate-up-in-capital-collateral",
                    "the rate rises in capital collateral",
                    _expect(d_r_th, positive=True),
                    {"d_r_dtheta": d_r_th},
                ),
                PropositionResult(
                    "monetary-money-growth-sign-rule",
                    "sign of growth response to money growth matches "
                    "sign(theta - theta_x)",
                    _sign_rule(d_g_mu, gap_m),
                    {"d_g_dmu": d_g_mu, "theta_gap": gap_m},
                ),
                PropositionResult(
                    "monetary-share-up-in-money-growth",
                    "land share rises in money growth",
                    _expect(d_phi_mu, positive=True),
                    {"d_phi_dmu": d_phi_mu},
                ),
                PropositionResult(
                    "monetary-rate-down-in-money-growth",
                    "the rate falls in money growth",
                    _expect(d_r_mu, positive=False),
                    {"d_r_dmu": d_r_mu},
                ),
                PropositionResult(
                    "credit-gdp-up-in-capital-collateral",
                    "credit to output rises in capital collateral",
                    _expect(d_cr_th, positive=True),
                    {"d_credit_dtheta": d_cr_th},
                ),
                PropositionResult(
                    "credit-gdp-up-in-land-collateral",
                    "credit to output rises in land collateral",
                    _expect(d_cr_tx, positive=True),
                    {"d_credit_dtheta_x": d_cr_tx},
                ),
                PropositionResult(
                    "credit-gdp-up-in-money-growth",
                    "credit to output rises in money growth",
                    _expect(d_cr_mu, positive=True),
                    {"d_credit_dmu": d_cr_mu},
                ),
            ]
        )
        out.extend(_landless_results(pm))
        out.append(_ordering_result(pm))
    return out


def _landless_results(pm: ScenarioParams) -> list[PropositionResult]:
    base = pm.with_changes(epsilon=0.0)
    h = 1e-5 * max(1.0, abs(base.mu))

    def landless(mu: float):
        return _monetary.solve_landless(base.with_changes(mu=mu))

    up, down = landless(base.mu + h), landless(base.mu - h)
    d_g = (up.gross_growth - down.gross_growth) / (2.0 * h)
    d_r = (up.gross_r - down.gross_r) / (2.0 * h)
    applicable = base.theta > 0.0
    return [
        PropositionResult(
            "landless-growth-up-in-money-growth",
            "without land, growth rises in money growth when capital "
            "collateral is positive",
            _expect(d_g, positive=True) if applicable else True,
            {"d_g_dmu": d_g, "theta": base.theta},
        ),
        PropositionResult(
            "landless-rate-down-in-money-growth",
            "without land, the rate falls in money growth",
            _expect(d_r, positive=False),
            {"d_r_dmu": d_r},
        ),
    ]


def _ordering_result(pm: ScenarioParams) -> PropositionResult:
    applicable = pm.theta_x > pm.theta and pm.mu is not None and pm.mu > 0.0
    if not applicable:
        return PropositionResult(
            "return-ordering-low-rate",
            "capital return exceeds growth exceeds the rate when land "
            "collateral dominates and money grows",
            True,
            {"applicable": 0.0},
        )
    bgp = _monetary.solve_bgp_monetary(pm)
    holds = bgp.ordering.Rc > bgp.ordering.g > bgp.ordering.r
    return PropositionResult(
        "return-ordering-low-rate",
        "capital return exceeds growth exceeds the rate when land "
        "collateral dominates and money grows",
        holds,
        {
            "Rc": bgp.ordering.Rc,
            "gross_growth": bgp.ordering.g,
            "gross_r": bgp.ordering.r,
        },
    )
