"""Amplitude reflection coefficients at (i xi_l, k_perp) for all variants.

On the imaginary frequency axis all permittivities, permeabilities and
impedances are real, so every reflection coefficient here is real with
|r| <= 1; complex arithmetic is never needed.

The static (l = 0) coefficients are supplied as exact limits per variant
rather than by evaluating permittivities at xi = 0, which would be
singular.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .impedance import ImpedancePair, z_te_closed, z_tm_closed
from .response import DRUDE, NONLOCAL, PLASMA, MaterialModel, \
    MatsubaraContext, eps_core_at, eps_pair, matsubara_xi, mu_at


@dataclass(frozen=True)
class ReflectionPair:
    """TM and TE reflection coefficients at one (l, k_perp) point."""

    r_tm: float
    r_te: float
    l: int
    k_perp: float


def refl_from_impedance(z: ImpedancePair, l: int, k_perp: float,
                        ctx: MatsubaraContext) -> ReflectionPair:
    """Reflection coefficients from surface impedances:

    r_TM = (c q - xi Z_TM)/(c q + xi Z_TM),
    r_TE = (c q Z_TE - xi)/(c q Z_TE + xi),   q = sqrt(k_perp^2 + xi^2/c^2).
    """
    if l < 1:
        raise ValueError("impedance route requires l >= 1")
    xi = matsubara_xi(l, ctx)
    cq = ctx.c * math.sqrt(k_perp**2 + (xi / ctx.c) ** 2)
    r_tm = (cq - xi * z.z_tm) / (cq + xi * z.z_tm)
    r_te = (cq * z.z_te - xi) / (cq * z.z_te + xi)
    return ReflectionPair(r_tm=r_tm, r_te=r_te, l=l, k_perp=k_perp)


def refl_nonlocal_closed(l: int, k_perp: float, m: MaterialModel,
                         ctx: MatsubaraContext,
                         mu_l: float | None = None) -> ReflectionPair:
    """Closed-form coefficients for a k_perp-only response.

    With k_mu = sqrt(k_perp^2 + mu eps_tr xi^2/c^2):

    r_TM = (q eps_tr - k_mu - k_perp (eps_tr - eps_l)/eps_l)
         / (q eps_tr + k_mu + k_perp (eps_tr - eps_l)/eps_l),
    r_TE = (q mu - k_mu) / (q mu + k_mu).

    For a local variant (eps_tr = eps_l) this reduces to the Fresnel form.
    """
    if l < 1:
        raise ValueError("closed-form route requires l >= 1; use "
                         "refl_zero_freq / refl_zero_freq_local at l = 0")
    if k_perp < 0.0:
        raise ValueError("k_perp must be >= 0")
    xi = matsubara_xi(l, ctx)
    mu = mu_at(l, m) if mu_l is None else mu_l
    eps_tr, eps_l = eps_pair(xi, k_perp, m, eps_core_at(xi, m))
    xi_c2 = (xi / ctx.c) ** 2
    q = math.sqrt(k_perp**2 + xi_c2)
    k_mu = math.sqrt(k_perp**2 + mu * eps_tr * xi_c2)
    cross = k_perp * (eps_tr - eps_l) / eps_l
    r_tm = (q * eps_tr - k_mu - cross) / (q * eps_tr + k_mu + cross)
    r_te = (q * mu - k_mu) / (q * mu + k_mu)
    return ReflectionPair(r_tm=r_tm, r_te=r_te, l=l, k_perp=k_perp)


def refl_zero_freq(k_perp: float, m: MaterialModel,
                   ctx: MatsubaraContext) -> ReflectionPair:
    """Static-term coefficients of the wavevector-dependent response:

    r_TM(0, k) = wp^2 / (2 v_l gamma k + wp^2),
    r_TE(0, k) = (mu0 sqrt(k) - sqrt(k + B)) / (mu0 sqrt(k) + sqrt(k + B)),
    B = mu0 wp^2 v_t / (gamma c^2).

    Only the TE coefficient feels the magnetic permeability.  Requires
    gamma > 0 (for a dissipationless model use the plasma variant).
    At k_perp = 0 the TE limit is returned: -1 for B > 0.
    """
    if m.variant != NONLOCAL:
        raise ValueError("refl_zero_freq applies to the nonlocal variant; "
                         "use refl_zero_freq_local for local models")
    if m.gamma <= 0.0:
        raise ValueError("static nonlocal coefficients are singular at "
                         "gamma = 0; use the plasma variant instead")
    if k_perp < 0.0:
        raise ValueError("k_perp must be >= 0")
    wp2 = m.omega_p**2
    r_tm = wp2 / (2.0 * m.v_l * m.gamma * k_perp + wp2)
    b = m.mu0 * wp2 * m.v_t / (m.gamma * ctx.c**2)
    if k_perp == 0.0:
        r_te = -1.0 if b > 0.0 else (m.mu0 - 1.0) / (m.mu0 + 1.0)
    else:
        sk = math.sqrt(k_perp)
        skb = math.sqrt(k_perp + b)
        r_te = (m.mu0 * sk - skb) / (m.mu0 * sk + skb)
    return ReflectionPair(r_tm=r_tm, r_te=r_te, l=0, k_perp=k_perp)


def refl_zero_freq_local(k_perp: float, m: MaterialModel,
                         ctx: MatsubaraContext) -> ReflectionPair:
    """Static-term coefficients of the local variants.

    Dissipative (drude): xi^2 eps -> 0, so r_TM = 1 and
    r_TE = (mu0 - 1)/(mu0 + 1).

    Dissipationless (plasma): xi^2 eps -> wp^2, so r_TM = 1 and
    r_TE = (mu0 k - sqrt(k^2 + mu0 wp^2/c^2))
         / (mu0 k + sqrt(k^2 + mu0 wp^2/c^2)).
    """
    if k_perp < 0.0:
        raise ValueError("k_perp must be >= 0")
    if m.variant == DRUDE:
        r_te = (m.mu0 - 1.0) / (m.mu0 + 1.0)
    elif m.variant == PLASMA:
        root = math.sqrt(k_perp**2 + m.mu0 * (m.omega_p / ctx.c) ** 2)
        r_te = (m.mu0 * k_perp - root) / (m.mu0 * k_perp + root)
    else:
        raise ValueError("refl_zero_freq_local applies to local variants; "
                         "use refl_zero_freq for the nonlocal model")
    return ReflectionPair(r_tm=1.0, r_te=r_te, l=0, k_perp=k_perp)


def refl_static(k_perp: float, m: MaterialModel,
                ctx: MatsubaraContext) -> ReflectionPair:
    """Static coefficients dispatched on the model variant."""
    if m.variant == NONLOCAL:
        return refl_zero_freq(k_perp, m, ctx)
    return refl_zero_freq_local(k_perp, m, ctx)


def refl_fresnel(l: int, k_perp: float, eps_l: float, mu_l: float,
                 ctx: MatsubaraContext) -> ReflectionPair:
    """Fresnel coefficients of a local medium:

    r_TM = (q eps - k_mu)/(q eps + k_mu),
    r_TE = (q mu - k_mu)/(q mu + k_mu),
    k_mu = sqrt(k_perp^2 + mu eps xi^2/c^2).
    """
    if l < 1:
        raise ValueError("Fresnel route requires l >= 1")
    if eps_l < 1.0 or mu_l < 1.0:
        raise ValueError("eps_l and mu_l must be >= 1 on the imaginary axis")
    xi = matsubara_xi(l, ctx)
    xi_c2 = (xi / ctx.c) ** 2
    q = math.sqrt(k_perp**2 + xi_c2)
    k_mu = math.sqrt(k_perp**2 + mu_l * eps_l * xi_c2)
    r_tm = (q * eps_l - k_mu) / (q * eps_l + k_mu)
    r_te = (q * mu_l - k_mu) / (q * mu_l + k_mu)
    return ReflectionPair(r_tm=r_tm, r_te=r_te, l=l, k_perp=k_perp)


def refl_pair(l: int, k_perp: float, m: MaterialModel,
              ctx: MatsubaraContext) -> ReflectionPair:
    """Reflection coefficients at any l >= 0, dispatching the static term."""
    if l == 0:
        return refl_static(k_perp, m, ctx)
    return refl_nonlocal_closed(l, k_perp, m, ctx)


def refl_via_impedance(l: int, k_perp: float, m: MaterialModel,
                       ctx: MatsubaraContext,
                       mu_l: float | None = None) -> ReflectionPair:
    """Coefficients through the closed-form impedances (algebraically
    identical to refl_nonlocal_closed; kept as an independent code path)."""
    z = ImpedancePair(z_tm=z_tm_closed(l, k_perp, m, ctx, mu_l),
                      z_te=z_te_closed(l, k_perp, m, ctx, mu_l),
                      l=l, k_perp=k_perp)
    return refl_from_impedance(z, l, k_perp, ctx)
