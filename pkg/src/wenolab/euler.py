"""Compressible Euler state algebra, Roe eigensystems, and an exact Riemann
solver for reference solutions.

States are plain arrays: conserved (rho, rho*u, E) or primitive (rho, u, p),
with an optional transverse momentum slot in 2D sweeps.  Functions are
vectorized over leading axes where it makes sense.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PositivityFailure

GAMMA_DEFAULT = 1.4


def prim_to_cons(prim, gamma=GAMMA_DEFAULT):
    """(rho, u, p) -> (rho, rho*u, E) with E = p/(gamma-1) + rho*u^2/2."""
    prim = np.asarray(prim, dtype=float)
    rho, u, p = prim[..., 0], prim[..., 1], prim[..., 2]
    out = np.empty_like(prim)
    out[..., 0] = rho
    out[..., 1] = rho * u
    out[..., 2] = p / (gamma - 1.0) + 0.5 * rho * u * u
    return out


def cons_to_prim(cons, gamma=GAMMA_DEFAULT):
    """(rho, rho*u, E) -> (rho, u, p); raises PositivityFailure for bad states."""
    cons = np.asarray(cons, dtype=float)
    rho, mom, E = cons[..., 0], cons[..., 1], cons[..., 2]
    if np.any(rho <= 0):
        raise PositivityFailure("non-positive density", where=_first_bad(rho <= 0))
    u = mom / rho
    p = (gamma - 1.0) * (E - 0.5 * mom * u)
    if np.any(p <= 0):
        raise PositivityFailure("non-positive pressure", where=_first_bad(p <= 0))
    out = np.empty_like(cons)
    out[..., 0] = rho
    out[..., 1] = u
    out[..., 2] = p
    return out


def _first_bad(mask):
    idx = np.argwhere(np.asarray(mask))
    return tuple(idx[0]) if idx.size else None


def euler_flux(cons, gamma=GAMMA_DEFAULT):
    """x-flux (rho*u, rho*u^2 + p, u*(E + p)) of a conserved state."""
    cons = np.asarray(cons, dtype=float)
    rho, mom, E = cons[..., 0], cons[..., 1], cons[..., 2]
    u = mom / rho
    p = (gamma - 1.0) * (E - 0.5 * mom * u)
    out = np.empty_like(cons)
    out[..., 0] = mom
    out[..., 1] = mom * u + p
    out[..., 2] = u * (E + p)
    return out


def sound_speed(rho, p, gamma=GAMMA_DEFAULT):
    return np.sqrt(gamma * p / rho)


def max_wavespeed(cons, gamma=GAMMA_DEFAULT):
    """max |u| + a over all cells of a conserved field (..., 3)."""
    prim = cons_to_prim(cons, gamma)
    a = sound_speed(prim[..., 0], prim[..., 2], gamma)
    return float(np.max(np.abs(prim[..., 1]) + a))


@dataclass(frozen=True)
class EigenSystem:
    """Left/right eigenvector matrices and eigenvalues at an averaged state."""

    left: np.ndarray
    right: np.ndarray
    eigenvalues: np.ndarray


def roe_eigensystem(cons_l, cons_r, gamma=GAMMA_DEFAULT) -> EigenSystem:
    """Roe-averaged eigensystem of the 1D Euler flux Jacobian.

    Accepts batched states (..., 3); matrices get shape (..., 3, 3) and
    eigenvalues (..., 3) ordered (u - a, u, u + a).
    """
    ql = np.asarray(cons_l, dtype=float)
    qr = np.asarray(cons_r, dtype=float)
    gm1 = gamma - 1.0
    rl, rr = ql[..., 0], qr[..., 0]
    sl, sr = np.sqrt(rl), np.sqrt(rr)
    w = 1.0 / (sl + sr)
    ul, ur = ql[..., 1] / rl, qr[..., 1] / rr
    u = (sl * ul + sr * ur) * w
    pl = gm1 * (ql[..., 2] - 0.5 * rl * ul * ul)
    pr = gm1 * (qr[..., 2] - 0.5 * rr * ur * ur)
    Hl = (ql[..., 2] + pl) / rl
    Hr = (qr[..., 2] + pr) / rr
    H = (sl * Hl + sr * Hr) * w
    q2 = 0.5 * u * u
    a2 = gm1 * (H - q2)
    if np.any(a2 <= 0):
        raise PositivityFailure("Roe-averaged sound speed lost positivity",
                                where=_first_bad(a2 <= 0))
    a = np.sqrt(a2)

    shape = u.shape
    R = np.empty(shape + (3, 3))
    L = np.empty(shape + (3, 3))
    one = np.ones(shape)
    R[..., 0, 0] = one
    R[..., 0, 1] = one
    R[..., 0, 2] = one
    R[..., 1, 0] = u - a
    R[..., 1, 1] = u
    R[..., 1, 2] = u + a
    R[..., 2, 0] = H - u * a
    R[..., 2, 1] = q2
    R[..., 2, 2] = H + u * a
    b2 = gm1 / a2
    b1 = b2 * q2
    L[..., 0, 0] = 0.5 * (b1 + u / a)
    L[..., 0, 1] = -0.5 * (b2 * u + 1.0 / a)
    L[..., 0, 2] = 0.5 * b2
    L[..., 1, 0] = 1.0 - b1
    L[..., 1, 1] = b2 * u
    L[..., 1, 2] = -b2
    L[..., 2, 0] = 0.5 * (b1 - u / a)
    L[..., 2, 1] = -0.5 * (b2 * u - 1.0 / a)
    L[..., 2, 2] = 0.5 * b2
    lam = np.stack([u - a, u, u + a], axis=-1)
    return EigenSystem(L, R, lam)


def flux_jacobian(cons, gamma=GAMMA_DEFAULT):
    """Analytic d(flux)/d(state) of the 1D Euler equations."""
    rho, mom, E = (float(v) for v in np.asarray(cons, dtype=float))
    gm1 = gamma - 1.0
    u = mom / rho
    p = gm1 * (E - 0.5 * rho * u * u)
    H = (E + p) / rho
    return np.array(
        [
            [0.0, 1.0, 0.0],
            [0.5 * (gamma - 3.0) * u * u, (3.0 - gamma) * u, gm1],
            [u * (0.5 * gm1 * u * u - H), H - gm1 * u * u, gamma * u],
        ]
    )


# --- exact Riemann solver ----------------------------------------------------


@dataclass(frozen=True)
class RiemannSolution:
    """Star state and wave structure of a 1D Riemann problem."""

    left: np.ndarray  # primitive (rho, u, p)
    right: np.ndarray
    gamma: float
    p_star: float
    u_star: float
    left_is_shock: bool
    right_is_shock: bool


def _pressure_fn(p, rho_k, p_k, a_k, gamma):
    """Toro's f_K(p) and its derivative for one side of the fan."""
    if p > p_k:  # shock
        A = 2.0 / ((gamma + 1.0) * rho_k)
        B = (gamma - 1.0) / (gamma + 1.0) * p_k
        f = (p - p_k) * math.sqrt(A / (p + B))
        df = math.sqrt(A / (p + B)) * (1.0 - 0.5 * (p - p_k) / (p + B))
    else:  # rarefaction
        f = 2.0 * a_k / (gamma - 1.0) * ((p / p_k) ** ((gamma - 1.0) / (2.0 * gamma)) - 1.0)
        df = 1.0 / (rho_k * a_k) * (p / p_k) ** (-(gamma + 1.0) / (2.0 * gamma))
    return f, df


def exact_riemann(prim_l, prim_r, gamma=GAMMA_DEFAULT, max_newton=50) -> RiemannSolution:
    """Solve the Riemann problem for (rho, u, p) left/right states.

    Newton iteration from the two-rarefaction guess, to
    |dp| < 1e-12 * max(p_l, p_r); falls back to bisection if Newton fails.
    """
    prim_l = np.asarray(prim_l, dtype=float)
    prim_r = np.asarray(prim_r, dtype=float)
    rho_l, u_l, p_l = prim_l
    rho_r, u_r, p_r = prim_r
    if min(rho_l, rho_r, p_l, p_r) <= 0:
        raise PositivityFailure("Riemann states must have positive rho and p")
    a_l = math.sqrt(gamma * p_l / rho_l)
    a_r = math.sqrt(gamma * p_r / rho_r)
    du = u_r - u_l
    if 2.0 * (a_l + a_r) / (gamma - 1.0) <= du:
        raise PositivityFailure("vacuum is generated; no solution with positive p")

    # two-rarefaction initial guess
    z = (gamma - 1.0) / (2.0 * gamma)
    p0 = ((a_l + a_r - 0.5 * (gamma - 1.0) * du) /
          (a_l / p_l**z + a_r / p_r**z)) ** (1.0 / z)
    p0 = max(p0, 1e-14 * max(p_l, p_r))

    tol = 1e-12 * max(p_l, p_r)

    def total(p):
        fl, dfl = _pressure_fn(p, rho_l, p_l, a_l, gamma)
        fr, dfr = _pressure_fn(p, rho_r, p_r, a_r, gamma)
        return fl + fr + du, dfl + dfr

    p = p0
    converged = False
    for _ in range(max_newton):
        f, df = total(p)
        dp = f / df
        p_new = p - dp
        if p_new <= 0:
            p_new = 0.5 * p
        if abs(p_new - p) < tol:
            p = p_new
            converged = True
            break
        p = p_new
    if not converged:
        # bracketed bisection fallback
        lo, hi = 1e-14 * max(p_l, p_r), max(p_l, p_r)
        while total(hi)[0] < 0:
            hi *= 2.0
        for _ in range(200):
            p = 0.5 * (lo + hi)
            if total(p)[0] > 0:
                hi = p
            else:
                lo = p
            if hi - lo < tol:
                break
        p = 0.5 * (lo + hi)

    fl, _ = _pressure_fn(p, rho_l, p_l, a_l, gamma)
    fr, _ = _pressure_fn(p, rho_r, p_r, a_r, gamma)
    u_star = 0.5 * (u_l + u_r) + 0.5 * (fr - fl)
    return RiemannSolution(
        prim_l.copy(), prim_r.copy(), gamma, p, u_star,
        left_is_shock=p > p_l, right_is_shock=p > p_r,
    )


def sample_riemann(sol: RiemannSolution, xi):
    """Sample primitive (rho, u, p) at similarity coordinates xi = x/t."""
    xi = np.asarray(xi, dtype=float)
    scalar = xi.ndim == 0
    xi = np.atleast_1d(xi)
    out = np.empty(xi.shape + (3,))
    g = sol.gamma
    gp1, gm1 = g + 1.0, g - 1.0
    rho_l, u_l, p_l = sol.left
    rho_r, u_r, p_r = sol.right
    a_l = math.sqrt(g * p_l / rho_l)
    a_r = math.sqrt(g * p_r / rho_r)
    ps, us = sol.p_star, sol.u_star

    for i, s in enumerate(xi):
        if s <= us:  # left of the contact
            if sol.left_is_shock:
                r = ps / p_l
                S = u_l - a_l * math.sqrt(gp1 / (2 * g) * r + gm1 / (2 * g))
                if s <= S:
                    out[i] = (rho_l, u_l, p_l)
                else:
                    rho = rho_l * (r + gm1 / gp1) / (gm1 / gp1 * r + 1.0)
                    out[i] = (rho, us, ps)
            else:
                head = u_l - a_l
                a_star = a_l * (ps / p_l) ** (gm1 / (2 * g))
                tail = us - a_star
                if s <= head:
                    out[i] = (rho_l, u_l, p_l)
                elif s >= tail:
                    rho = rho_l * (ps / p_l) ** (1.0 / g)
                    out[i] = (rho, us, ps)
                else:  # inside the fan
                    u = 2.0 / gp1 * (a_l + 0.5 * gm1 * u_l + s)
                    a = 2.0 / gp1 * (a_l + 0.5 * gm1 * (u_l - s))
                    rho = rho_l * (a / a_l) ** (2.0 / gm1)
                    p = p_l * (a / a_l) ** (2.0 * g / gm1)
                    out[i] = (rho, u, p)
        else:  # right of the contact
            if sol.right_is_shock:
                r = ps / p_r
                S = u_r + a_r * math.sqrt(gp1 / (2 * g) * r + gm1 / (2 * g))
                if s >= S:
                    out[i] = (rho_r, u_r, p_r)
                else:
                    rho = rho_r * (r + gm1 / gp1) / (gm1 / gp1 * r + 1.0)
                    out[i] = (rho, us, ps)
            else:
                head = u_r + a_r
                a_star = a_r * (ps / p_r) ** (gm1 / (2 * g))
                tail = us + a_star
                if s >= head:
                    out[i] = (rho_r, u_r, p_r)
                elif s <= tail:
                    rho = rho_r * (ps / p_r) ** (1.0 / g)
                    out[i] = (rho, us, ps)
                else:
                    u = 2.0 / gp1 * (-a_r + 0.5 * gm1 * u_r + s)
                    a = 2.0 / gp1 * (a_r - 0.5 * gm1 * (u_r - s))
                    rho = rho_r * (a / a_r) ** (2.0 / gm1)
                    p = p_r * (a / a_r) ** (2.0 * g / gm1)
                    out[i] = (rho, u, p)
    return out[0] if scalar else out
