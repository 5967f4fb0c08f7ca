"""Pure-NumPy evaluation of the pressure-integrand kernel.

Reference implementation of the hot kernel; semantics must match the
compiled twin in ``_kernel.pyx`` exactly (same formulas, same variant
codes).  Selected at import time by ``casimag.backend`` when the compiled
extension is unavailable or disabled.

Variant codes: 0 = dissipative local, 1 = dissipationless local,
2 = wavevector-dependent, 3 = fixed reflection coefficients (test hook).
"""

import numpy as np

VARIANT_DRUDE = 0
VARIANT_PLASMA = 1
VARIANT_NONLOCAL = 2
VARIANT_FIXED = 3


def lifshitz_summand(y, xi, a, c, variant, omega_p, gamma, mu,
                     v_t, v_l, eps_core, r_tm_fixed, r_te_fixed):
    """Integrand factor y^2 sum_pol x/(1-x), x = r^2 exp(-y), at y = 2 a q_l.

    ``y`` is an array of quadrature nodes (all > 0); ``xi`` is the
    Matsubara frequency (0.0 selects the static-term coefficients); ``mu``
    is the permeability at this l.  Returns an array of the same shape.
    """
    y = np.asarray(y, dtype=float)
    q = y / (2.0 * a)
    if variant == VARIANT_FIXED:
        r_tm = np.full_like(y, r_tm_fixed)
        r_te = np.full_like(y, r_te_fixed)
    elif xi == 0.0:
        k = q
        if variant == VARIANT_DRUDE:
            r_tm = np.ones_like(y)
            r_te = np.full_like(y, (mu - 1.0) / (mu + 1.0))
        elif variant == VARIANT_PLASMA:
            r_tm = np.ones_like(y)
            root = np.sqrt(k * k + mu * (omega_p / c) ** 2)
            r_te = (mu * k - root) / (mu * k + root)
        else:
            wp2 = omega_p * omega_p
            r_tm = wp2 / (2.0 * v_l * gamma * k + wp2)
            b = mu * wp2 * v_t / (gamma * c * c)
            sk = np.sqrt(k)
            skb = np.sqrt(k + b)
            r_te = (mu * sk - skb) / (mu * sk + skb)
    else:
        xi_c2 = (xi / c) ** 2
        k = np.sqrt(np.maximum(q * q - xi_c2, 0.0))
        if variant == VARIANT_NONLOCAL:
            w = omega_p * omega_p / (xi * (xi + gamma))
            eps_tr = eps_core + w * (1.0 + v_t * k / xi)
            eps_l = eps_core + w / (1.0 + v_l * k / xi)
        else:
            if variant == VARIANT_DRUDE:
                w = omega_p * omega_p / (xi * (xi + gamma))
            else:
                w = omega_p * omega_p / (xi * xi)
            eps_tr = eps_core + w
            eps_l = eps_tr
        k_mu = np.sqrt(k * k + mu * eps_tr * xi_c2)
        cross = k * (eps_tr - eps_l) / eps_l
        r_tm = (q * eps_tr - k_mu - cross) / (q * eps_tr + k_mu + cross)
        r_te = (q * mu - k_mu) / (q * mu + k_mu)

    damp = np.exp(-y)
    x_tm = r_tm * r_tm * damp
    x_te = r_te * r_te * damp
    return y * y * (x_tm / (1.0 - x_tm) + x_te / (1.0 - x_te))
