"""Synthetic Ni absorption table from the Lorentz-Drude parametrization.

Stands in for measured optical data in tests: Im eps(omega) of Ni built
from the standard LD oscillator fit (plasma 15.92 eV with Drude weight
0.096 and damping 0.048 eV, plus four interband oscillators).  The Drude
weight of the fit, sqrt(0.096)*15.92 = 4.93 eV, is consistent with the
free-electron plasma frequency 4.89 eV used by the models, so the
Drude-subtracted excess isolates the interband structure.

Each Lorentz term decays as 1/omega^3 at high frequency, matching the
extrapolation convention of the Kramers-Kronig ingestion.
"""

import numpy as np

OMEGA_P_LD = 15.92   # eV
F0, GAMMA0 = 0.096, 0.048
OSCILLATORS = (      # (strength, damping eV, center eV)
    (0.100, 4.511, 0.174),
    (0.135, 1.334, 0.582),
    (0.106, 2.178, 1.597),
    (0.729, 6.292, 6.089),
)


def im_eps(omega_ev):
    """Im eps of Ni at a real photon energy in eV (LD model)."""
    w = np.asarray(omega_ev, dtype=float)
    out = F0 * OMEGA_P_LD**2 * GAMMA0 / (w * (w * w + GAMMA0**2))
    for f, g, w0 in OSCILLATORS:
        out = out + f * OMEGA_P_LD**2 * g * w / ((w0 * w0 - w * w) ** 2
                                                 + (g * w) ** 2)
    return out


def rows(n: int = 600, lo_ev: float = 0.01, hi_ev: float = 5000.0):
    """(omega_ev, im_eps) rows on a log grid."""
    grid = np.geomspace(lo_ev, hi_ev, n)
    return [(float(w), float(im_eps(w))) for w in grid]


def write_csv(path, n: int = 600, lo_ev: float = 0.01,
              hi_ev: float = 5000.0) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("omega_ev,im_eps\n")
        for w, v in rows(n, lo_ev, hi_ev):
            fh.write(f"{w:.9e},{v:.9e}\n")
