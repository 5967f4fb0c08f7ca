"""Sphere-plate force gradient from the plate-plate pressure, and
comparison against measured force-gradient data.

For a sphere of radius R at separation a << R the force gradient follows
from the proximity-force approximation F' = -2 pi R P(a, T); it is then
multiplied by a perturbative surface-roughness factor
1 + 10 (delta_s^2 + delta_p^2)/a^2 and by the leading PFA correction
1 + theta(a, T) a / R.  That composition order is canonical; swapping the
two corrections changes the result only at second order in the small
corrections.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .lifshitz import PressureQuery, pressure
from .response import MatsubaraContext


@dataclass(frozen=True)
class GeometryParams:
    """Sphere radius, rms roughnesses and optional PFA-correction table.

    ``theta_table`` rows are (a [m], theta) with |theta| <= 1; absent
    table means theta = 0 (the correction is below 0.1% at a/R < 1e-2).
    """

    radius: float
    delta_s: float = 0.0
    delta_p: float = 0.0
    theta_table: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError("radius must be > 0")
        if self.delta_s < 0.0 or self.delta_p < 0.0:
            raise ValueError("roughness must be >= 0")
        if self.theta_table is not None:
            a_prev = 0.0
            for a, theta in self.theta_table:
                if a <= a_prev:
                    raise ValueError("theta_table separations must be "
                                     "strictly increasing and positive")
                if abs(theta) > 1.0:
                    raise ValueError("|theta| must not exceed 1")
                a_prev = a


@dataclass(frozen=True)
class ExperimentDataset:
    """Measured force-gradient points (a_i, F'_expt, total error at 67% CL)."""

    a: tuple[float, ...]
    grad_expt: tuple[float, ...]
    err_expt: tuple[float, ...]

    def __post_init__(self):
        n = len(self.a)
        if n == 0 or len(self.grad_expt) != n or len(self.err_expt) != n:
            raise ValueError("dataset columns empty or of differing length")
        if any(a2 <= a1 for a1, a2 in zip(self.a, self.a[1:])):
            raise ValueError("separations must be strictly increasing")
        if any(e <= 0.0 for e in self.err_expt):
            raise ValueError("experimental errors must be > 0")

    @classmethod
    def from_csv(cls, path) -> "ExperimentDataset":
        """Read a CSV with header ``a_nm,grad_uN_per_m,err_uN_per_m``."""
        rows = _read_numeric_csv(path, "a_nm,grad_uN_per_m,err_uN_per_m", 3)
        return cls(a=tuple(r[0] * 1e-9 for r in rows),
                   grad_expt=tuple(r[1] * 1e-6 for r in rows),
                   err_expt=tuple(r[2] * 1e-6 for r in rows))


@dataclass(frozen=True)
class ComparisonRow:
    """Experiment-theory difference at one separation.

    ``inside_ci`` is |delta| <= ci_halfwidth, with delta = F'_theor -
    F'_expt and the half-width combining experimental and theoretical
    errors in quadrature.
    """

    a: float
    grad_theory: float
    delta: float
    ci_halfwidth: float
    inside_ci: bool


def _read_numeric_csv(path, expected_header: str, ncols: int) -> list[list[float]]:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0].replace(" ", "") != expected_header:
        raise ValueError(f"{path}: expected header '{expected_header}'")
    rows = []
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split(",")
        if len(parts) != ncols:
            raise ValueError(f"{path}: row {i}: expected {ncols} columns")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise ValueError(f"{path}: row {i}: non-numeric value") from None
    return rows


def read_theta_table(path) -> tuple[tuple[float, float], ...]:
    """Read a PFA-correction table CSV with header ``a_nm,theta``."""
    rows = _read_numeric_csv(path, "a_nm,theta", 2)
    return tuple((r[0] * 1e-9, r[1]) for r in rows)


def gradient_pfa(a: float, temperature: float, model,
                 geom: GeometryParams, ctx: MatsubaraContext,
                 quad_tol: float = 1e-9, series_tol: float = 1e-8) -> float:
    """Sphere-plate force gradient F' = -2 pi R P(a, T), in N/m.

    Positive for an attractive pressure.  Valid only well inside the
    proximity regime; separations above radius/10 are rejected.
    """
    if a >= geom.radius / 10.0:
        raise ValueError("separation too large for the proximity-force "
                         f"regime (need a < R/10 = {geom.radius / 10.0:.3e} m)")
    res = pressure(PressureQuery(separation=a, temperature=temperature,
                                 model=model, quad_tol=quad_tol,
                                 series_tol=series_tol), ctx)
    return -2.0 * math.pi * geom.radius * res.pressure


def roughness_factor(a: float, geom: GeometryParams) -> float:
    """1 + 10 (delta_s^2 + delta_p^2) / a^2."""
    return 1.0 + 10.0 * (geom.delta_s**2 + geom.delta_p**2) / a**2


def apply_roughness(grad: float, a: float, geom: GeometryParams) -> float:
    """Multiply by the perturbative roughness factor.

    Valid while the roughnesses stay small against the separation;
    a <= 10 max(delta_s, delta_p) is rejected.
    """
    if a <= 10.0 * max(geom.delta_s, geom.delta_p):
        raise ValueError("roughness correction is perturbative: need "
                         "a > 10 max(delta_s, delta_p)")
    return grad * roughness_factor(a, geom)


def theta_at(a: float, geom: GeometryParams) -> float:
    """theta(a) by linear interpolation of the table; 0 without a table.

    Outside the table range the nearest endpoint is used with a warning.
    """
    if geom.theta_table is None:
        return 0.0
    xs = [row[0] for row in geom.theta_table]
    ys = [row[1] for row in geom.theta_table]
    if a < xs[0] or a > xs[-1]:
        warnings.warn(f"separation {a:.3e} m outside theta table range "
                      f"[{xs[0]:.3e}, {xs[-1]:.3e}]; using nearest endpoint",
                      stacklevel=2)
        return ys[0] if a < xs[0] else ys[-1]
    for (x1, y1), (x2, y2) in zip(geom.theta_table, geom.theta_table[1:]):
        if x1 <= a <= x2:
            return y1 + (y2 - y1) * (a - x1) / (x2 - x1)
    return ys[-1]


def apply_pfa_correction(grad: float, a: float, geom: GeometryParams) -> float:
    """Multiply by the leading proximity-approximation correction
    1 + theta(a) a / R."""
    return grad * (1.0 + theta_at(a, geom) * a / geom.radius)


def gradient_theory(a: float, temperature: float, model,
                    geom: GeometryParams, ctx: MatsubaraContext,
                    quad_tol: float = 1e-9, series_tol: float = 1e-8) -> float:
    """Full theoretical force gradient: PFA, then roughness, then the
    PFA correction, in N/m."""
    grad = gradient_pfa(a, temperature, model, geom, ctx, quad_tol, series_tol)
    grad = apply_roughness(grad, a, geom)
    return apply_pfa_correction(grad, a, geom)


def compare(data: ExperimentDataset, temperature: float, model,
            geom: GeometryParams, ctx: MatsubaraContext,
            err_theory_rel: float = 0.0, quad_tol: float = 1e-9,
            series_tol: float = 1e-8) -> list[ComparisonRow]:
    """Per-point differences between theory and the measured gradients.

    ci_halfwidth combines the experimental error with err_theory_rel *
    F'_theor in quadrature; inside_ci flags |delta| <= ci_halfwidth.
    """
    if err_theory_rel < 0.0:
        raise ValueError("err_theory_rel must be >= 0")
    rows = []
    for a, g_expt, e_expt in zip(data.a, data.grad_expt, data.err_expt):
        g_th = gradient_theory(a, temperature, model, geom, ctx,
                               quad_tol, series_tol)
        delta = g_th - g_expt
        ci = math.hypot(e_expt, err_theory_rel * g_th)
        rows.append(ComparisonRow(a=a, grad_theory=g_th, delta=delta,
                                  ci_halfwidth=ci,
                                  inside_ci=abs(delta) <= ci))
    return rows
