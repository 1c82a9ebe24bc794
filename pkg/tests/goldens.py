"""Frozen reference values for the two baseline scenarios.

Computed by an independent implementation (closed forms evaluated
directly, fixed points found by damped iteration and bracketed root
searches, derivatives by plain central differences) before the package
was written, and frozen here. Solver results are compared against
these, not the other way round.
"""

# open baseline: theta=0.5, theta_x=0.6, r=0.55, eta=0.4, alpha=0.33,
# a=15, delta=0.2
OPEN = {
    "A": 6.13735357092629,
    "Rc": 2.8253266784056756,
    "a_pow_alpha": 2.444050163747711,
    "leverage": 11.286134314050747,
    "lambda": 15.943508186778658,
    "Rx_star": 2.4260929867540226,
    "downpayment": 0.060867230933926764,
    "phi_bar": 4.403025994248401,
    "a1_rhs": 0.5486091261045469,
    "a2_rhs": 18.563555124790543,
    "phi_star_eps0": 3.8275893166652204,
    "growth_eps0": 2.4260929867540226,
    "phi_star_eps1e8": 3.827589320339585,
    "phi_star_eps001": 3.8279564835172586,
    "growth_eps001": 2.4245449781556854,
    "phi_star_eps005": 3.8453132049590146,
    "growth_eps005": 2.3513674734826355,
    "land_gdp_eps005": 3.426576911835705,
    "map_at_zero_eps005": -0.12220250818738554,
    "epsilon_bar": 3.5040093770294334,
}

# monetary baseline: theta=0.2, theta_x=0.6, mu=0.5, eta=0.4,
# alpha=0.33, a=15, delta=0.9
MONETARY = {
    "Rc": 2.1253266784056757,
    "gross_r_eps0": 0.7084422261352255,
    "growth_eps0": 1.0626633392028382,
    "phi_star_eps0": 1.9874126644833607,
    "gross_r_eps1e8": 0.7084421912865385,
    "phi_star_eps1e8": 1.987412969619815,
    "gross_r_eps005": 0.6081963681489561,
    "phi_star_eps005": 3.332241143796202,
    "gross_r_eps02": 0.5196475381816379,
    "phi_star_eps02": 6.848126647236899,
    "credit_gdp_eps0": 1.8925594983625202,
    "min_e": 1.0164545177725903,
    "coeff_at_2min_e": 1.4905594983625199,
    "a4_lhs": 0.6925873355166362,
    "a4_rhs": 2.679999999999997,
    "landless_growth": 2.2824087605299486,
    "landless_gross_r": 1.521605840353299,
    # reduced dynamics at e = 2*min_e, eps = 0
    "jacobian": (
        (3.869548088120541, 24.424539271761248),
        (2.2134692890367664, 20.1107290735969),
    ),
    "eigen_moduli": (1.035369869121098, 22.944907292596348),
    "eigen_moduli_10min_e": (1.0702540873708557, 100.4349100999617),
}

# rent dynamics on the open baseline with d = 0.02
UNBALANCED = {
    "trace": 8.072054629279585,
    "det": 3.216965763764917,
    "phi_rest": 3.8275893166652204,
    "phi0_n001": 3.8281707267572713,
    "v_over_d": 0.725414328645987,
    "manifold_slope": 0.058141009205064306,
    "tail_T60": 23.450316037775565,
}

# valuation on the open baseline with eps = 0.05
VALUATION = {
    "horizon_auto": 737,
    "v_over_d": 31.46672896999808,
}

# labor split on the open baseline with rho = 0.5, eps = 0.1
LABOR = {
    "NX": 0.032548128200718826,
    "NK": 0.9674518717992812,
    "multiplier": 1.010979404154375,
}

# log-utility saving (beta = 1) on the open baseline with eps = 0.05;
# equals the linear mode with the entrepreneur share halved
LOG_UTILITY = {
    "phi_star": 1.6654135174050715,
    "growth": 2.2602438089481196,
}

# central-difference growth derivatives (step 1e-6), compared loosely
# since the package extrapolates
DERIVATIVES = {
    "open_dtheta_x_eps1e6": -3.428189888854405,
    "open_dtheta_x_eps1e3": -3.4196296816446647,
    "open_dr_eps1e6": 0.489971032857639,
    "open_dtheta_eps1e6": 2.7425885686938045,
    "monetary_dmu_eps1e6": -2.1252843855901205,
    "monetary_dtheta_x_eps1e6": -5.313228586545371,
    "monetary_dtheta_eps1e6": 2.6566671588179602,
}

CRITICAL_EPSILON = {
    "open_theta_x": 0.9332404599071777,
    "open_r": 0.04175560100876513,
    "monetary_mu": 0.5003091547482146,
    # open economy at the rate implied by the monetary baseline
    "open_analog_theta_x": 0.4538112888089376,
    "open_analog_r": -0.29155777386477455,
}
