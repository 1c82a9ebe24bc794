"""Independent fixed-point route to the open-economy land share.

The package solves a quadratic. This module gets to the same number a
different way: rearrange the stationarity condition

    phi * rx = (1 + g(phi)) * (phi + ca),   1 + g(phi) = m*(s*b1 - dp*phi)

into the damped inverse map

    x <- (x + ca) * m * s * b1 / (rx + (x + ca) * m * dp)

whose fixed point is the stationary share. Pure stdlib on purpose; it
must not import the package under test.
"""

import math


def solve_share(
    theta: float,
    theta_x: float,
    r: float,
    eta: float,
    alpha: float,
    a: float,
    delta: float,
    epsilon: float,
    beta: float | None = None,
) -> tuple[float, float]:
    """Return (share, gross growth) by fixed-point iteration.

    Raises ArithmeticError if the iteration leaves (0, phi_bar) or does
    not settle to 1e-13 relative within 100000 sweeps.
    """
    A = a ** (1.0 - alpha)
    Rc = alpha * A + 1.0 - delta
    z = 1.0 + r
    lev = 1.0 / (1.0 - theta * Rc / z)
    lam = Rc * (1.0 - theta) * lev
    rx = lam / (1.0 - theta_x + theta_x * lam / z)
    dp = 1.0 - theta_x * rx / z
    s = 1.0 if beta is None else beta / (1.0 + beta)
    b1 = eta * (1.0 - alpha)
    m = A * lev
    ca = epsilon * a**alpha
    phi_bar = s * b1 / dp

    x = 0.5 * phi_bar
    for _ in range(100000):
        nxt = (x + ca) * m * s * b1 / (rx + (x + ca) * m * dp)
        if not (0.0 < nxt < phi_bar) or not math.isfinite(nxt):
            raise ArithmeticError("iteration left the admissible band")
        if abs(nxt - x) <= 1e-13 * max(1.0, abs(x)):
            x = nxt
            break
        x = nxt
    else:
        raise ArithmeticError("iteration did not settle")
    growth = m * (s * b1 - dp * x)
    return x, growth
