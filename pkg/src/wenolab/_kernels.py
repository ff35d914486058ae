"""Numba-compiled hot paths used by the time-stepping solver.

The numpy implementations in :mod:`wenolab.kernel` are the readable
reference; tests pin these twins to them.  Scheme dispatch uses the integer
ids from ``kernel.SCHEME_IDS``.
"""

import numpy as np
from numba import njit

# scheme ids (keep in sync with kernel.SCHEMES)
JS, JSC, M, Z, ZPLUS, D, C, ZC, ZCPLUS, IDEAL = range(10)

D0, D1, D2 = 0.1, 0.6, 0.3


@njit(cache=True, inline="always")
def _gmap(om, d):
    return om * (d + d * d - 3.0 * d * om + om * om) / (d * d + om * (1.0 - 2.0 * d))


@njit(cache=True, inline="always")
def _pw(x, p):
    if p == 2.0:
        return x * x
    return x**p


@njit(cache=True)
def weno_value(w0, w1, w2, w3, w4, scheme, eps, p, eta, c0, c1, c2):
    """Upwind-biased WENO value at the right interface of the center sample."""
    f0 = (2.0 * w0 - 7.0 * w1 + 11.0 * w2) / 6.0
    f1 = (-w1 + 5.0 * w2 + 2.0 * w3) / 6.0
    f2 = (2.0 * w2 + 5.0 * w3 - w4) / 6.0
    if scheme == IDEAL:
        return D0 * f0 + D1 * f1 + D2 * f2

    k = 13.0 / 12.0
    b0 = 0.25 * (w0 - 4.0 * w1 + 3.0 * w2) ** 2 + k * (w0 - 2.0 * w1 + w2) ** 2
    b1 = 0.25 * (w3 - w1) ** 2 + k * (w1 - 2.0 * w2 + w3) ** 2
    b2 = 0.25 * (3.0 * w2 - 4.0 * w3 + w4) ** 2 + k * (w2 - 2.0 * w3 + w4) ** 2
    tau = abs(b2 - b0)

    if scheme == JS:
        a0 = D0 / _pw(b0 + eps, p)
        a1 = D1 / _pw(b1 + eps, p)
        a2 = D2 / _pw(b2 + eps, p)
    elif scheme == JSC:
        a0 = c0 * D0 / _pw(b0 + eps, p)
        a1 = c1 * D1 / _pw(b1 + eps, p)
        a2 = c2 * D2 / _pw(b2 + eps, p)
    elif scheme == M:
        a0 = D0 / _pw(b0 + eps, p)
        a1 = D1 / _pw(b1 + eps, p)
        a2 = D2 / _pw(b2 + eps, p)
        s = a0 + a1 + a2
        a0 = _gmap(a0 / s, D0)
        a1 = _gmap(a1 / s, D1)
        a2 = _gmap(a2 / s, D2)
    elif scheme == Z:
        a0 = D0 * (1.0 + _pw(tau / (b0 + eps), p))
        a1 = D1 * (1.0 + _pw(tau / (b1 + eps), p))
        a2 = D2 * (1.0 + _pw(tau / (b2 + eps), p))
    elif scheme == ZPLUS:
        a0 = D0 * (1.0 + _pw(tau / (b0 + eps), p) + eta * b0 / (tau + eps))
        a1 = D1 * (1.0 + _pw(tau / (b1 + eps), p) + eta * b1 / (tau + eps))
        a2 = D2 * (1.0 + _pw(tau / (b2 + eps), p) + eta * b2 / (tau + eps))
    elif scheme == D:
        phi = np.sqrt(abs(b0 - 2.0 * b1 + b2))
        if phi > 1.0:
            phi = 1.0
        a0 = D0 * (1.0 + phi * _pw(tau / (b0 + eps), p))
        a1 = D1 * (1.0 + phi * _pw(tau / (b1 + eps), p))
        a2 = D2 * (1.0 + phi * _pw(tau / (b2 + eps), p))
    elif scheme == C:
        a0 = D0 * (1.0 + c0 * _pw(tau / (b0 + eps), p))
        a1 = D1 * (1.0 + c1 * _pw(tau / (b1 + eps), p))
        a2 = D2 * (1.0 + c2 * _pw(tau / (b2 + eps), p))
    else:
        bbar = (b0 + b1 + b2) / 3.0
        zeta = _pw(tau / (tau + bbar + eps), p)
        if scheme == ZC:
            a0 = D0 * (1.0 + c0 * _pw(tau / (b0 + eps), p) * zeta)
            a1 = D1 * (1.0 + c1 * _pw(tau / (b1 + eps), p) * zeta)
            a2 = D2 * (1.0 + c2 * _pw(tau / (b2 + eps), p) * zeta)
        else:  # ZCPLUS
            den = tau + bbar + eps
            a0 = D0 * (1.0 + c0 * _pw(tau / (b0 + eps), p) * zeta + b0 / den)
            a1 = D1 * (1.0 + c1 * _pw(tau / (b1 + eps), p) * zeta + b1 / den)
            a2 = D2 * (1.0 + c2 * _pw(tau / (b2 + eps), p) * zeta + b2 / den)
    s = a0 + a1 + a2
    return (a0 * f0 + a1 * f1 + a2 * f2) / s


@njit(cache=True)
def advection_rhs(u, g, dx, speed, scheme, eps, p, eta, c0, c1, c2):
    """du/dt for linear advection on a ghost-filled 1D field.

    Global Lax-Friedrichs splitting with alpha = |speed| (pure upwinding for
    the respective sign).  Interior entries of the result are filled; ghost
    entries are zero.
    """
    m = u.shape[0]
    n_int = m - 2 * g + 1
    fhat = np.empty(n_int)
    a = abs(speed)
    for k in range(g - 1, m - g):
        # plus-split flux, left-biased window
        vp = weno_value(
            0.5 * (speed * u[k - 2] + a * u[k - 2]),
            0.5 * (speed * u[k - 1] + a * u[k - 1]),
            0.5 * (speed * u[k] + a * u[k]),
            0.5 * (speed * u[k + 1] + a * u[k + 1]),
            0.5 * (speed * u[k + 2] + a * u[k + 2]),
            scheme, eps, p, eta, c0, c1, c2,
        )
        # minus-split flux, mirrored window
        vm = weno_value(
            0.5 * (speed * u[k + 3] - a * u[k + 3]),
            0.5 * (speed * u[k + 2] - a * u[k + 2]),
            0.5 * (speed * u[k + 1] - a * u[k + 1]),
            0.5 * (speed * u[k] - a * u[k]),
            0.5 * (speed * u[k - 1] - a * u[k - 1]),
            scheme, eps, p, eta, c0, c1, c2,
        )
        fhat[k - (g - 1)] = vp + vm
    rhs = np.zeros(m)
    for i in range(g, m - g):
        kk = i - (g - 1)
        rhs[i] = -(fhat[kk] - fhat[kk - 1]) / dx
    return rhs


@njit(cache=True)
def euler_rhs_lines(q, gam, dx, alpha, characteristic,
                    scheme, eps, p, eta, c0, c1, c2):
    """d(conserved)/dt for batched 1D Euler lines, x-direction.

    q has shape (B, M, nv) with nv = 3 (rho, rho*u, E) or 4
    (rho, rho*u, rho*v, E), ghosts filled.  ``alpha`` holds the global
    Lax-Friedrichs speeds, one per characteristic family (componentwise mode
    uses alpha[0] for every component).  Ghost entries of the result are 0.
    """
    B, m, nv = q.shape
    g = 3
    gm1 = gam - 1.0
    rhs = np.zeros_like(q)
    n_int = m - 2 * g + 1
    f = np.empty((m, nv))
    fhat = np.empty((n_int, nv))
    L = np.empty((nv, nv))
    R = np.empty((nv, nv))
    wc = np.empty((6, nv))
    fc = np.empty((6, nv))
    fh = np.empty(nv)

    for b in range(B):
        # physical flux along the line
        for j in range(m):
            rho = q[b, j, 0]
            mu = q[b, j, 1]
            uu = mu / rho
            if nv == 3:
                E = q[b, j, 2]
                pres = gm1 * (E - 0.5 * mu * uu)
                f[j, 0] = mu
                f[j, 1] = mu * uu + pres
                f[j, 2] = uu * (E + pres)
            else:
                mv = q[b, j, 2]
                E = q[b, j, 3]
                vv = mv / rho
                pres = gm1 * (E - 0.5 * (mu * uu + mv * vv))
                f[j, 0] = mu
                f[j, 1] = mu * uu + pres
                f[j, 2] = mv * uu
                f[j, 3] = uu * (E + pres)

        for kk in range(n_int):
            kcell = kk + g - 1
            if characteristic:
                # Roe average of the (kcell, kcell+1) pair
                rl = q[b, kcell, 0]
                rr = q[b, kcell + 1, 0]
                sl = np.sqrt(rl)
                sr = np.sqrt(rr)
                wsum = 1.0 / (sl + sr)
                ul = q[b, kcell, 1] / rl
                ur = q[b, kcell + 1, 1] / rr
                u = (sl * ul + sr * ur) * wsum
                if nv == 3:
                    El = q[b, kcell, 2]
                    Er = q[b, kcell + 1, 2]
                    pl = gm1 * (El - 0.5 * rl * ul * ul)
                    pr = gm1 * (Er - 0.5 * rr * ur * ur)
                    Hl = (El + pl) / rl
                    Hr = (Er + pr) / rr
                    H = (sl * Hl + sr * Hr) * wsum
                    q2 = 0.5 * u * u
                    a2 = gm1 * (H - q2)
                    if a2 <= 0.0:
                        # transient stage undershoot: keep L/R invertible;
                        # the split speeds come from the global alpha anyway
                        a2 = 1e-10 * (q2 + 1.0)
                    aa = np.sqrt(a2)
                    b2 = gm1 / a2
                    b1c = b2 * q2
                    R[0, 0] = 1.0
                    R[0, 1] = 1.0
                    R[0, 2] = 1.0
                    R[1, 0] = u - aa
                    R[1, 1] = u
                    R[1, 2] = u + aa
                    R[2, 0] = H - u * aa
                    R[2, 1] = q2
                    R[2, 2] = H + u * aa
                    L[0, 0] = 0.5 * (b1c + u / aa)
                    L[0, 1] = -0.5 * (b2 * u + 1.0 / aa)
                    L[0, 2] = 0.5 * b2
                    L[1, 0] = 1.0 - b1c
                    L[1, 1] = b2 * u
                    L[1, 2] = -b2
                    L[2, 0] = 0.5 * (b1c - u / aa)
                    L[2, 1] = -0.5 * (b2 * u - 1.0 / aa)
                    L[2, 2] = 0.5 * b2
                else:
                    vl = q[b, kcell, 2] / rl
                    vr = q[b, kcell + 1, 2] / rr
                    v = (sl * vl + sr * vr) * wsum
                    El = q[b, kcell, 3]
                    Er = q[b, kcell + 1, 3]
                    pl = gm1 * (El - 0.5 * rl * (ul * ul + vl * vl))
                    pr = gm1 * (Er - 0.5 * rr * (ur * ur + vr * vr))
                    Hl = (El + pl) / rl
                    Hr = (Er + pr) / rr
                    H = (sl * Hl + sr * Hr) * wsum
                    q2 = 0.5 * (u * u + v * v)
                    a2 = gm1 * (H - q2)
                    if a2 <= 0.0:
                        a2 = 1e-10 * (q2 + 1.0)
                    aa = np.sqrt(a2)
                    b2 = gm1 / a2
                    b1c = b2 * q2
                    R[0, 0] = 1.0
                    R[0, 1] = 1.0
                    R[0, 2] = 0.0
                    R[0, 3] = 1.0
                    R[1, 0] = u - aa
                    R[1, 1] = u
                    R[1, 2] = 0.0
                    R[1, 3] = u + aa
                    R[2, 0] = v
                    R[2, 1] = v
                    R[2, 2] = 1.0
                    R[2, 3] = v
                    R[3, 0] = H - u * aa
                    R[3, 1] = q2
                    R[3, 2] = v
                    R[3, 3] = H + u * aa
                    L[0, 0] = 0.5 * (b1c + u / aa)
                    L[0, 1] = -0.5 * (b2 * u + 1.0 / aa)
                    L[0, 2] = -0.5 * b2 * v
                    L[0, 3] = 0.5 * b2
                    L[1, 0] = 1.0 - b1c
                    L[1, 1] = b2 * u
                    L[1, 2] = b2 * v
                    L[1, 3] = -b2
                    L[2, 0] = -v
                    L[2, 1] = 0.0
                    L[2, 2] = 1.0
                    L[2, 3] = 0.0
                    L[3, 0] = 0.5 * (b1c - u / aa)
                    L[3, 1] = -0.5 * (b2 * u - 1.0 / aa)
                    L[3, 2] = -0.5 * b2 * v
                    L[3, 3] = 0.5 * b2
                # project the 6-point window onto characteristic space
                for j in range(6):
                    jj = kcell - 2 + j
                    for mm in range(nv):
                        sw = 0.0
                        sf = 0.0
                        for nn in range(nv):
                            sw += L[mm, nn] * q[b, jj, nn]
                            sf += L[mm, nn] * f[jj, nn]
                        wc[j, mm] = sw
                        fc[j, mm] = sf
            else:
                for j in range(6):
                    jj = kcell - 2 + j
                    for mm in range(nv):
                        wc[j, mm] = q[b, jj, mm]
                        fc[j, mm] = f[jj, mm]

            for mm in range(nv):
                am = alpha[mm] if characteristic else alpha[0]
                vp = weno_value(
                    0.5 * (fc[0, mm] + am * wc[0, mm]),
                    0.5 * (fc[1, mm] + am * wc[1, mm]),
                    0.5 * (fc[2, mm] + am * wc[2, mm]),
                    0.5 * (fc[3, mm] + am * wc[3, mm]),
                    0.5 * (fc[4, mm] + am * wc[4, mm]),
                    scheme, eps, p, eta, c0, c1, c2,
                )
                vm = weno_value(
                    0.5 * (fc[5, mm] - am * wc[5, mm]),
                    0.5 * (fc[4, mm] - am * wc[4, mm]),
                    0.5 * (fc[3, mm] - am * wc[3, mm]),
                    0.5 * (fc[2, mm] - am * wc[2, mm]),
                    0.5 * (fc[1, mm] - am * wc[1, mm]),
                    scheme, eps, p, eta, c0, c1, c2,
                )
                fh[mm] = vp + vm

            if characteristic:
                for nn in range(nv):
                    s = 0.0
                    for mm in range(nv):
                        s += R[nn, mm] * fh[mm]
                    fhat[kk, nn] = s
            else:
                for nn in range(nv):
                    fhat[kk, nn] = fh[nn]

        for i in range(g, m - g):
            kk = i - (g - 1)
            for nn in range(nv):
                rhs[b, i, nn] = -(fhat[kk, nn] - fhat[kk - 1, nn]) / dx
    return rhs
