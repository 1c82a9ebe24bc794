"""Shared fixtures: tables produced by the solver CLI, built once.

The renderer consumes the solver only through its CSV artifacts, so
every input here is generated by invoking the installed landspec
command entry point and reading back what it wrote.
"""

import os

import pytest

from landspec.cli import main as landspec_main

P2 = {"theta": 0.5, "theta_x": 0.6, "r": 0.55, "eta": 0.4,
      "alpha": 0.33, "a": 15, "delta": 0.2}
P3 = {"theta": 0.2, "theta_x": 0.6, "mu": 0.5, "eta": 0.4,
      "alpha": 0.33, "a": 15, "delta": 0.9}

# the six headline sweeps: scenario, economy, differentiated parameter,
# and whether the derivative changes sign inside the feasible grid
SWEEPS = {
    "open_theta_x": (P2, "open", "theta_x", True),
    "open_r": (P2, "open", "r", True),
    "open_theta_x_low_rate": ({**P2, "r": 0.44}, "open", "theta_x", False),
    "monetary_theta": (P3, "monetary", "theta", False),
    "monetary_mu": (P3, "monetary", "mu", True),
    "monetary_theta_x": (P3, "monetary", "theta_x", False),
}


def write_scenario(path, **keys):
    path.write_text("".join(f"{k} = {v}\n" for k, v in keys.items()))
    return str(path)


@pytest.fixture(scope="session")
def sweep_tables(tmp_path_factory):
    """name -> (sweep.csv path, flip expected) for the six sweeps."""
    os.environ.pop("LANDSPEC_OUTDIR", None)
    root = tmp_path_factory.mktemp("sweeps")
    out = {}
    for name, (params, economy, wrt, has_flip) in SWEEPS.items():
        scen = write_scenario(root / f"{name}.cfg", **params)
        dest = root / name
        code = landspec_main([
            "sweep", "--scenario", scen, "--economy", economy,
            "--wrt", wrt, "--out", str(dest),
        ])
        assert code == 0, f"sweep {name} failed"
        out[name] = (str(dest / "sweep.csv"), has_flip)
    return out


@pytest.fixture(scope="session")
def path_tables(tmp_path_factory):
    """name -> path.csv for the simulate flavors the plots consume."""
    os.environ.pop("LANDSPEC_OUTDIR", None)
    root = tmp_path_factory.mktemp("paths")
    plain = write_scenario(root / "p2.cfg", **P2)
    fruit = write_scenario(root / "p2f.cfg", epsilon=0.05, **P2)
    runs = {
        "jump": ["--scenario", fruit, "--T", "12", "--K0", "1.0"],
        "shock": ["--scenario", plain, "--T", "10", "--shock-eps", "0.05",
                  "--shock-at", "3", "--belief", "believed_permanent"],
        "rent": ["--scenario", plain, "--T", "30", "--d", "0.02",
                 "--n0", "0.01"],
        "decay": ["--scenario", plain, "--T", "15", "--phi0", "1.0"],
    }
    out = {}
    for name, args in runs.items():
        dest = root / name
        code = landspec_main(["simulate", *args, "--out", str(dest)])
        assert code == 0, f"simulate {name} failed"
        out[name] = str(dest / "path.csv")
    return out
