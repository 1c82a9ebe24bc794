"""Small-open-economy solver: fixed safe rate, endogenous land share.

The balanced growth path pins down one number, the land-value share
phi = P/(A*K). Everything else (growth, wages, output, prices) follows
from phi in closed form. The one-period map for phi is unstable around
its positive fixed point, so the jump path IS the equilibrium path:
any other initial phi diverges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from scipy.optimize import brentq

from .core import (
    DerivedConstants,
    ScenarioParams,
    check_assumptions,
    derive_constants,
    positive_root,
    saving_rate,
)
from .errors import (
    AssumptionViolated,
    DomainError,
    NoEquilibrium,
    RootNotBracketed,
)

EPSILON_CEILING = 10.0


@dataclass(frozen=True)
class OpenBgp:
    """Balanced growth path of the open economy.

    Attributes:
        phi_star: land value relative to production, P/(A*K).
        gross_growth: 1+g on the balanced path.
        phi_bar: blow-up bound for phi; growth hits zero there.
        residual: |phi_star - map(phi_star)|, a fixed-point check.
        land_gdp_ratio: land value over total output including rents.
    """

    phi_star: float
    gross_growth: float
    phi_bar: float
    residual: float
    land_gdp_ratio: float


@dataclass(frozen=True)
class PathState:
    """One period of a simulated path.

    g is the growth factor minus one realized between t and t+1, as
    implied by phi at t.
    """

    t: int
    K: float
    P: float
    phi: float
    g: float
    w: float
    Y: float


@dataclass(frozen=True)
class GrowthDecomposition:
    """Split of a growth change into partial and general channels."""

    PE1: float
    PE2: float
    GE: float
    total: float


@dataclass(frozen=True)
class ShockPaths:
    """Shocked and no-shock paths from a one-period land boom."""

    shocked: list[PathState]
    baseline: list[PathState]


@dataclass(frozen=True)
class _Env:
    """Cached per-parameter quantities used by every operation."""

    constants: DerivedConstants
    s_beta1: float  # saving rate times eta*(1-alpha)
    m: float  # A times capital leverage
    ca: float  # epsilon * a**alpha, the rent coefficient
    phi_bar: float


def _env(params: ScenarioParams, epsilon: Optional[float] = None) -> _Env:
    constants = derive_constants(params, "open")
    s_beta1 = saving_rate(params) * params.eta * (1.0 - params.alpha)
    m = constants.A * constants.capital_leverage
    eps = params.epsilon if epsilon is None else epsilon
    ca = eps * constants.a_pow_alpha
    phi_bar = s_beta1 / constants.land_downpayment
    return _Env(constants, s_beta1, m, ca, phi_bar)


def _growth(phi: float, env: _Env) -> float:
    return env.m * (env.s_beta1 - env.constants.land_downpayment * phi)


def growth_given_phi(phi: float, params: ScenarioParams) -> float:
    """Gross growth factor implied by a land share.

    Strictly decreasing in phi: a larger land share absorbs more of
    the young entrepreneurs' funds, crowding out capital.

    Raises:
        DomainError: phi at or beyond the blow-up bound (growth <= 0).
    """
    env = _env(params)
    if phi >= env.phi_bar:
        raise DomainError(
            f"phi={phi} is at or beyond the blow-up bound {env.phi_bar}"
        )
    return _growth(phi, env)


def phi_map(phi: float, params: ScenarioParams) -> float:
    """Next-period land share implied by no-arbitrage.

    Convex and increasing on [0, phi_bar), diverging at phi_bar.
    Negative inputs are accepted so explicit paths can be iterated
    faithfully below zero.

    Raises:
        DomainError: phi at or beyond the blow-up bound.
    """
    env = _env(params)
    if phi >= env.phi_bar:
        raise DomainError(
            f"phi={phi} is at or beyond the blow-up bound {env.phi_bar}"
        )
    return phi * env.constants.Rx_star / _growth(phi, env) - env.ca


def _require_assumptions(params: ScenarioParams) -> None:
    reports = check_assumptions(params, "open")
    failed = [rep for rep in reports if rep.id in ("A1", "A2") and not rep.holds]
    if failed:
        ids = ", ".join(rep.id for rep in failed)
        raise AssumptionViolated(f"assumption(s) {ids} violated", failed)


def solve_bgp(params: ScenarioParams, landless: bool = False) -> OpenBgp:
    """Solve the balanced growth path.

    The fixed-point condition for phi is quadratic; the unique positive
    root is returned. With epsilon = 0 there is also a trivial root at
    phi = 0 (no land value); pass landless=True to get that branch.

    Raises:
        AssumptionViolated: finite-leverage or positive-land-share
            assumption fails.
        NoEquilibrium: growth would fall below 1-delta (epsilon too
            large for a balanced path with positive land value).
        ValueError: landless=True with epsilon > 0.
    """
    _require_assumptions(params)
    env = _env(params)
    if landless:
        if params.epsilon > 0.0:
            raise ValueError("the landless branch exists only for epsilon = 0")
        growth = _growth(0.0, env)
        return OpenBgp(
            phi_star=0.0,
            gross_growth=growth,
            phi_bar=env.phi_bar,
            residual=0.0,
            land_gdp_ratio=0.0,
        )
    dp = env.constants.land_downpayment
    c2 = env.m * dp
    c1 = env.constants.Rx_star + env.m * dp * env.ca - env.m * env.s_beta1
    c0 = -env.m * env.s_beta1 * env.ca
    try:
        phi = positive_root(c2, c1, c0)
    except DomainError as exc:
        raise NoEquilibrium(f"no positive land share solves the fixed point: {exc}")
    growth = _growth(phi, env)
    if growth < 1.0 - params.delta:
        raise NoEquilibrium(
            f"growth {growth} below the feasibility floor {1.0 - params.delta}; "
            "epsilon exceeds its admissible ceiling"
        )
    residual = abs(phi - (phi * env.constants.Rx_star / growth - env.ca))
    return OpenBgp(
        phi_star=phi,
        gross_growth=growth,
        phi_bar=env.phi_bar,
        residual=residual,
        land_gdp_ratio=phi / (1.0 + env.ca),
    )


def epsilon_bar(params: ScenarioParams, ceiling: float = EPSILON_CEILING) -> float:
    """Largest land productivity consistent with feasible growth.

    Finds the epsilon where balanced growth equals 1-delta by bisection
    (growth falls monotonically in epsilon). Returns +inf when there is
    no crossing below the ceiling, and 0.0 when even epsilon = 0 is
    infeasible.
    """
    target = 1.0 - params.delta

    def growth_at(eps: float) -> float:
        return solve_bgp(params.with_changes(epsilon=eps)).gross_growth

    if growth_at(0.0) <= target:
        return 0.0

    def feasible(eps: float) -> bool:
        try:
            return growth_at(eps) > target
        except NoEquilibrium:
            return False

    if feasible(ceiling):
        return math.inf
    lo, hi = 0.0, ceiling
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def simulate(
    params: ScenarioParams,
    K0: float,
    T: int,
    phi0_mode: str = "jump_to_bgp",
    phi0: Optional[float] = None,
) -> list[PathState]:
    """Simulate a path of length T+1 (t = 0..T).

    jump_to_bgp: phi jumps to its balanced value immediately and stays
    there; this is the unique equilibrium path. explicit: iterate the
    phi map faithfully from the supplied phi0; off-equilibrium paths
    diverge, and crossing the blow-up bound raises.

    Raises:
        ValueError: bad arguments (K0 <= 0, T < 1, missing phi0).
        DomainError: an explicit path reaches the blow-up bound.
    """
    if K0 <= 0.0:
        raise ValueError(f"K0 must be positive, got {K0}")
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    env = _env(params)
    A = env.constants.A
    wage_coeff = (1.0 - params.alpha) * A
    output_coeff = (1.0 + env.ca) * A

    if phi0_mode == "jump_to_bgp":
        bgp = solve_bgp(params)
        phis = [bgp.phi_star] * (T + 1)
    elif phi0_mode == "explicit":
        if phi0 is None:
            raise ValueError("phi0 is required when phi0_mode='explicit'")
        phis = [phi0]
        for _ in range(T):
            phis.append(phi_map(phis[-1], params))
    else:
        raise ValueError(f"unknown phi0_mode {phi0_mode!r}")

    path: list[PathState] = []
    K = K0
    for t in range(T + 1):
        phi = phis[t]
        if phi >= env.phi_bar:
            raise DomainError(
                f"path reached the blow-up bound at t={t} (phi={phi})"
            )
        g = _growth(phi, env)
        path.append(
            PathState(
                t=t,
                K=K,
                P=phi * A * K,
                phi=phi,
                g=g - 1.0,
                w=wage_coeff * K,
                Y=output_coeff * K,
            )
        )
        K *= g
    return path


_DECOMPOSABLE = ("theta", "theta_x", "r", "epsilon")
_FIXED_FOR_DECOMPOSITION = ("a", "alpha", "eta", "delta", "beta", "saving_mode", "mu")


def decompose(
    params_base: ScenarioParams, params_new: ScenarioParams
) -> GrowthDecomposition:
    """Split a growth change into leverage, downpayment, and land channels.

    PE1 substitutes the new capital leverage only; PE2 additionally the
    new land downpayment; GE additionally the new equilibrium land
    share. The three add up to the total change exactly.

    Only changes in theta, theta_x, r, and epsilon are decomposable
    this way; the channels do not span changes in technology or
    population parameters.

    Raises:
        ValueError: the parameter sets differ outside the allowed set.
    """
    changed_fixed = [
        name
        for name in _FIXED_FOR_DECOMPOSITION
        if getattr(params_base, name) != getattr(params_new, name)
    ]
    if changed_fixed:
        raise ValueError(
            "decomposition is only defined for changes in "
            f"{_DECOMPOSABLE}; also changed: {changed_fixed}"
        )
    env0 = _env(params_base)
    env1 = _env(params_new)
    phi0 = solve_bgp(params_base).phi_star
    phi1 = solve_bgp(params_new).phi_star
    A = env0.constants.A
    s_beta1 = env0.s_beta1
    lev0 = env0.constants.capital_leverage
    lev1 = env1.constants.capital_leverage
    dp0 = env0.constants.land_downpayment
    dp1 = env1.constants.land_downpayment

    def g(lev: float, dp: float, phi: float) -> float:
        return A * lev * (s_beta1 - dp * phi)

    base = g(lev0, dp0, phi0)
    pe1 = g(lev1, dp0, phi0) - base
    pe2 = g(lev1, dp1, phi0) - g(lev1, dp0, phi0)
    ge = g(lev1, dp1, phi1) - g(lev1, dp1, phi0)
    return GrowthDecomposition(PE1=pe1, PE2=pe2, GE=ge, total=pe1 + pe2 + ge)


def temporary_shock(
    params: ScenarioParams,
    eps_high: float,
    s: int,
    K0: float,
    T: int,
    belief: str = "believed_permanent",
) -> ShockPaths:
    """One-period land productivity boom at date s.

    believed_permanent: at s agents price land as if eps_high lasted
    forever (phi jumps to its high balanced value); at s+1 the belief
    is corrected and the path re-jumps to the base balanced value.
    anticipated_temporary: agents know at s that the boom lasts one
    period; the date-s land price is pinned by backward induction from
    the date-s+1 balanced path, via a bracketed root search.

    Rents realized at t+1 reflect the productivity applied to date-t
    holdings, so output is elevated at s+1 only; this convention does
    not affect K, P, phi, or g.

    Raises:
        ValueError: bad arguments (eps_high below base epsilon, s
            outside (0, T), unknown belief).
        RootNotBracketed: the backward condition has no admissible
            date-s price.
    """
    if eps_high < params.epsilon:
        raise ValueError(
            f"eps_high ({eps_high}) must not be below epsilon ({params.epsilon})"
        )
    if not 0 < s < T:
        raise ValueError(f"s must satisfy 0 < s < T, got s={s}, T={T}")
    if belief not in ("believed_permanent", "anticipated_temporary"):
        raise ValueError(f"unknown belief {belief!r}")

    baseline = simulate(params, K0, T)
    env = _env(params)
    A = env.constants.A
    dp = env.constants.land_downpayment
    rx = env.constants.Rx_star
    phi_base = solve_bgp(params).phi_star
    ca_high = eps_high * env.constants.a_pow_alpha
    wage_coeff = (1.0 - params.alpha) * A
    out_low = (1.0 + env.ca) * A
    out_high = (1.0 + ca_high) * A

    if belief == "believed_permanent":
        phi_s = solve_bgp(params.with_changes(epsilon=eps_high)).phi_star
    else:
        K_s = baseline[s].K

        def gap(P_s: float) -> float:
            phi = P_s / (A * K_s)
            K_next = _growth(phi, env) * K_s
            return rx * P_s - (phi_base + ca_high) * A * K_next

        hi = env.phi_bar * A * K_s
        lo = hi * 1e-14
        if not gap(lo) < 0.0 < gap(hi * (1.0 - 1e-12)):
            raise RootNotBracketed(
                "no admissible date-s land price in (0, phi_bar*A*K_s)"
            )
        P_s = brentq(gap, lo, hi * (1.0 - 1e-12), xtol=1e-14, rtol=8.9e-16)
        phi_s = P_s / (A * K_s)

    shocked: list[PathState] = list(baseline[:s])
    K = baseline[s].K
    # date s: elevated land price, inherited capital
    g_s = _growth(phi_s, env)
    shocked.append(
        PathState(
            t=s, K=K, P=phi_s * A * K, phi=phi_s, g=g_s - 1.0,
            w=wage_coeff * K, Y=out_low * K,
        )
    )
    K *= g_s
    # dates s+1..T: back on the base balanced path, lower capital level
    g_base = _growth(phi_base, env)
    for t in range(s + 1, T + 1):
        out = out_high if t == s + 1 else out_low
        shocked.append(
            PathState(
                t=t, K=K, P=phi_base * A * K, phi=phi_base, g=g_base - 1.0,
                w=wage_coeff * K, Y=out * K,
            )
        )
        K *= g_base
    return ShockPaths(shocked=shocked, baseline=baseline)
