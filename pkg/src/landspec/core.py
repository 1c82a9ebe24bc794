"""Shared parameter set, derived constants, and assumption checks.

Every solver in this package works off the same exogenous parameter
record (ScenarioParams) and the closed-form constants derived from it
(DerivedConstants). Two economy modes exist:

* ``open``: the safe interest rate ``r`` is exogenous and fixed.
* ``monetary``: fiat money is the safe asset and the interest rate is
  determined in equilibrium; only the money growth rate ``mu`` is
  exogenous.

Rates are stored net in ScenarioParams (as they appear in scenario
files) and converted to gross factors inside the math.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import Literal, Optional

from .errors import DomainError, MissingParameter

Mode = Literal["open", "monetary"]

SAVING_MODES = ("linear_old_only", "log_utility")

_REQUIRED_KEYS = ("theta", "theta_x", "eta", "alpha", "a", "delta")


@dataclass(frozen=True)
class ScenarioParams:
    """Exogenous parameters of one scenario.

    Attributes:
        theta: collateral fraction on capital returns, in [0, 1].
        theta_x: collateral fraction on land returns, in [0, 1].
        r: net safe interest rate (open economy only); gross is 1+r.
        mu: money growth rate (monetary economy only).
        eta: population share of entrepreneurs, in (0, 1).
        alpha: capital share of the productive sector, in (0, 1).
        a: labor productivity coefficient of the productive sector.
        delta: capital depreciation rate, in [0, 1].
        epsilon: land productivity (spillover) level, >= 0.
        beta: discount factor, only used when saving_mode="log_utility".
        rho: labor exponent of the real estate sector, in (0, 1).
        d: rent growth rate for the unbalanced-growth variant, >= 0.
        e: worker endowment coefficient (endowment = e * a * K).
        saving_mode: "linear_old_only" (save everything when young) or
            "log_utility" (save beta/(1+beta) of income).
    """

    theta: float
    theta_x: float
    eta: float
    alpha: float
    a: float
    delta: float
    epsilon: float = 0.0
    r: Optional[float] = None
    mu: Optional[float] = None
    beta: Optional[float] = None
    rho: Optional[float] = None
    d: Optional[float] = None
    e: Optional[float] = None
    saving_mode: str = "linear_old_only"

    def __post_init__(self) -> None:
        def _finite(name: str, value: float) -> None:
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")

        for name in ("theta", "theta_x", "eta", "alpha", "a", "delta", "epsilon"):
            _finite(name, getattr(self, name))
        for name in ("r", "mu", "beta", "rho", "d", "e"):
            value = getattr(self, name)
            if value is not None:
                _finite(name, value)

        if not 0.0 <= self.theta <= 1.0:
            raise ValueError(f"theta must lie in [0, 1], got {self.theta}")
        if not 0.0 <= self.theta_x <= 1.0:
            raise ValueError(f"theta_x must lie in [0, 1], got {self.theta_x}")
        if not 0.0 < self.eta < 1.0:
            raise ValueError(f"eta must lie in (0, 1), got {self.eta}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.a <= 0.0:
            raise ValueError(f"a must be positive, got {self.a}")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError(f"delta must lie in [0, 1], got {self.delta}")
        if self.epsilon < 0.0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.r is not None and self.r <= -1.0:
            raise ValueError(f"r must exceed -1, got {self.r}")
        if self.mu is not None and self.mu < 0.0:
            raise ValueError(f"mu must be >= 0, got {self.mu}")
        if self.beta is not None and self.beta <= 0.0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.rho is not None and not 0.0 < self.rho < 1.0:
            raise ValueError(f"rho must lie in (0, 1), got {self.rho}")
        if self.d is not None and self.d < 0.0:
            raise ValueError(f"d must be >= 0, got {self.d}")
        if self.e is not None and self.e < 0.0:
            raise ValueError(f"e must be >= 0, got {self.e}")
        if self.saving_mode not in SAVING_MODES:
            raise ValueError(
                f"saving_mode must be one of {SAVING_MODES}, got {self.saving_mode!r}"
            )

    @property
    def gross_r(self) -> float:
        """Gross exogenous interest rate 1+r (open economy)."""
        if self.r is None:
            raise MissingParameter("r is required in open-economy mode")
        return 1.0 + self.r

    @property
    def gross_mu(self) -> float:
        """Gross money growth factor 1+mu (monetary economy)."""
        if self.mu is None:
            raise MissingParameter("mu is required in monetary-economy mode")
        return 1.0 + self.mu

    def with_changes(self, **kwargs) -> "ScenarioParams":
        """Return a copy with the given fields replaced."""
        return replace(self, **kwargs)


@dataclass(frozen=True)
class DerivedConstants:
    """Closed-form constants implied by a parameter set.

    In monetary mode the last four fields stay None: leverage, the
    leveraged return and the land terms all depend on the endogenous
    interest rate and are recomputed by the monetary solver.

    Attributes:
        A: productivity constant, a**(1-alpha).
        R: rental rate of capital, alpha*A.
        Rc: gross return on capital, alpha*A + 1 - delta.
        a_pow_alpha: a**alpha, the coefficient scaling land rents.
        lambda_: leveraged return on capital per unit of own funds.
        Rx_star: equilibrium unleveraged gross return on land.
        capital_leverage: 1 / (1 - theta*Rc/(1+r)).
        land_downpayment: 1 - theta_x*Rx_star/(1+r), own funds per
            unit of land purchased.
    """

    A: float
    R: float
    Rc: float
    a_pow_alpha: float
    lambda_: Optional[float] = None
    Rx_star: Optional[float] = None
    capital_leverage: Optional[float] = None
    land_downpayment: Optional[float] = None


@dataclass(frozen=True)
class AssumptionReport:
    """Outcome of one maintained-assumption check.

    The inequality is always oriented as lhs < rhs, so that
    slack = rhs - lhs and holds is equivalent to slack > 0.
    """

    id: str
    holds: bool
    lhs: float
    rhs: float
    slack: float


def _report(id_: str, lhs: float, rhs: float) -> AssumptionReport:
    slack = rhs - lhs
    return AssumptionReport(id=id_, holds=slack > 0.0, lhs=lhs, rhs=rhs, slack=slack)


def saving_rate(params: ScenarioParams) -> float:
    """Fraction of young income saved.

    Returns 1 in the baseline (consumption only when old) and
    beta/(1+beta) under log utility.

    Raises:
        MissingParameter: log_utility selected but beta unset.
    """
    if params.saving_mode == "linear_old_only":
        return 1.0
    if params.beta is None:
        raise MissingParameter("beta is required when saving_mode='log_utility'")
    return params.beta / (1.0 + params.beta)


def derive_constants(params: ScenarioParams, mode: Mode) -> DerivedConstants:
    """Compute the closed-form constants for one parameter set.

    Args:
        params: validated scenario parameters.
        mode: "open" (fixed r) or "monetary" (endogenous r; the
            rate-dependent fields are left unset).

    Returns:
        DerivedConstants with all fields set in open mode, and only
        the rate-free fields (A, R, Rc, a_pow_alpha) in monetary mode.

    Raises:
        DomainError: open mode with 1+r <= theta*Rc, where leverage
            would be infinite or negative.
        MissingParameter: the rate required by the mode is unset.
    """
    A = params.a ** (1.0 - params.alpha)
    R = params.alpha * A
    Rc = R + 1.0 - params.delta
    a_pow_alpha = params.a ** params.alpha
    if mode == "monetary":
        params.gross_mu  # fail fast when mu is missing
        return DerivedConstants(A=A, R=R, Rc=Rc, a_pow_alpha=a_pow_alpha)
    if mode != "open":
        raise ValueError(f"unknown mode {mode!r}")

    gross_r = params.gross_r
    denom = 1.0 - params.theta * Rc / gross_r
    if denom <= 0.0:
        raise DomainError(
            "1+r <= theta*Rc: capital leverage is unbounded "
            f"(1+r={gross_r}, theta*Rc={params.theta * Rc})"
        )
    leverage = 1.0 / denom
    lam = Rc * (1.0 - params.theta) * leverage
    rx = lam / (1.0 - params.theta_x + params.theta_x * lam / gross_r)
    downpayment = 1.0 - params.theta_x * rx / gross_r
    return DerivedConstants(
        A=A,
        R=R,
        Rc=Rc,
        a_pow_alpha=a_pow_alpha,
        lambda_=lam,
        Rx_star=rx,
        capital_leverage=leverage,
        land_downpayment=downpayment,
    )


def check_assumptions(
    params: ScenarioParams,
    mode: Mode,
    phi_star: Optional[float] = None,
) -> list[AssumptionReport]:
    """Evaluate the maintained assumptions applicable to a mode.

    Open economy: A1 (finite leverage), A2 (positive land share on the
    balanced path), plus A5 (rent growth below the land return) when a
    rent growth rate d is configured. Monetary economy: A3 and A4. A3
    references the solved land share when epsilon > 0, so phi_star must
    then be supplied; with epsilon = 0 it reduces to theta_x*(1+mu) < 1.

    Violations are reported, never raised.

    Raises:
        MissingParameter: A3 requested with epsilon > 0 and no phi_star,
            or the mode's rate parameter is unset.
    """
    s = saving_rate(params)
    beta1 = s * params.eta * (1.0 - params.alpha)
    reports: list[AssumptionReport] = []
    if mode == "open":
        A = params.a ** (1.0 - params.alpha)
        Rc = params.alpha * A + 1.0 - params.delta
        gross_r = params.gross_r
        reports.append(_report("A1", params.theta, gross_r / Rc))
        if reports[-1].holds:
            constants = derive_constants(params, "open")
            rhs = beta1 * A * constants.capital_leverage
            reports.append(_report("A2", constants.Rx_star, rhs))
            if params.d is not None:
                reports.append(_report("A5", 1.0 + params.d, constants.Rx_star))
        else:
            # leverage undefined, downstream assumptions not evaluable
            nan = float("nan")
            reports.append(AssumptionReport("A2", False, nan, nan, nan))
            if params.d is not None:
                reports.append(AssumptionReport("A5", False, nan, nan, nan))
        return reports

    if mode != "monetary":
        raise ValueError(f"unknown mode {mode!r}")
    A = params.a ** (1.0 - params.alpha)
    Rc = params.alpha * A + 1.0 - params.delta
    gross_mu = params.gross_mu
    a_pow_alpha = params.a ** params.alpha
    if params.epsilon > 0.0:
        if phi_star is None:
            raise MissingParameter(
                "phi_star is required to check A3 when epsilon > 0"
            )
        lhs3 = params.theta_x * gross_mu * (
            1.0 + params.epsilon * a_pow_alpha / phi_star
        )
    else:
        lhs3 = params.theta_x * gross_mu
    reports.append(_report("A3", lhs3, 1.0))
    denom = 1.0 - params.theta_x * gross_mu
    if params.theta_x < 1.0:
        lhs4 = Rc * (1.0 - params.theta) / (A * (1.0 - params.theta_x))
    else:
        lhs4 = float("inf")
    rhs4 = beta1 / denom if denom != 0.0 else -float("inf")
    reports.append(_report("A4", lhs4, rhs4))
    return reports


def positive_root(c2: float, c1: float, c0: float) -> float:
    """Largest real root of c2*x**2 + c1*x + c0 = 0, which must be > 0.

    Uses the cancellation-free quadratic formula. The solvers call this
    on polynomials known to have one positive root (the product of
    roots is <= 0), so a missing or nonpositive root signals that no
    admissible balanced path exists.

    Raises:
        DomainError: no real root, or no positive root.
    """
    if c2 == 0.0:
        if c1 == 0.0:
            raise DomainError("degenerate polynomial: both leading coefficients zero")
        root = -c0 / c1
        if root <= 0.0:
            raise DomainError(f"no positive root (linear root {root})")
        return root
    disc = c1 * c1 - 4.0 * c2 * c0
    if disc < 0.0:
        raise DomainError("quadratic has no real root")
    sq = math.sqrt(disc)
    if c1 >= 0.0:
        q = -0.5 * (c1 + sq)
    else:
        q = -0.5 * (c1 - sq)
    roots = []
    if c2 != 0.0:
        roots.append(q / c2)
    if q != 0.0:
        roots.append(c0 / q)
    positive = [x for x in roots if x > 0.0]
    if not positive:
        if c0 == 0.0 and any(x == 0.0 for x in roots):
            # zero root acceptable only for callers that ask for it explicitly
            raise DomainError("only the zero root exists")
        raise DomainError("quadratic has no positive root")
    return max(positive)


class ScenarioFormatError(ValueError):
    """A scenario file failed to parse; message carries the line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


_FLOAT_FIELDS = {
    f.name
    for f in fields(ScenarioParams)
    if f.name != "saving_mode"
}


def load_scenario(path: str) -> ScenarioParams:
    """Parse a flat key=value scenario file.

    One ``key = value`` pair per line; blank lines and ``#`` comments
    (full line or trailing) are ignored. Keys are exactly the
    ScenarioParams field names; rates are net. Unknown or repeated keys
    are rejected.

    Raises:
        ScenarioFormatError: malformed line, unknown key, bad value,
            duplicate key, missing required key, or invalid ranges.
    """
    values: dict[str, object] = {}
    seen_lines: dict[str, int] = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise ScenarioFormatError(f"cannot read scenario file: {exc}") from exc

    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ScenarioFormatError("expected 'key = value'", lineno)
        key, _, value_text = text.partition("=")
        key = key.strip()
        value_text = value_text.strip()
        if key in seen_lines:
            raise ScenarioFormatError(
                f"duplicate key {key!r} (first seen on line {seen_lines[key]})",
                lineno,
            )
        seen_lines[key] = lineno
        if key == "saving_mode":
            values[key] = value_text
            continue
        if key not in _FLOAT_FIELDS:
            raise ScenarioFormatError(f"unknown key {key!r}", lineno)
        try:
            values[key] = float(value_text)
        except ValueError:
            raise ScenarioFormatError(
                f"invalid number {value_text!r} for key {key!r}", lineno
            ) from None

    missing = [k for k in _REQUIRED_KEYS if k not in values]
    if missing:
        raise ScenarioFormatError(f"missing required keys: {', '.join(missing)}")
    try:
        return ScenarioParams(**values)  # type: ignore[arg-type]
    except (TypeError, ValueError) as exc:
        raise ScenarioFormatError(str(exc)) from exc
