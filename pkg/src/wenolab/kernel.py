"""Pointwise WENO-5 machinery: candidate reconstructions, smoothness
indicators, the nine weighting strategies, and weight diagnostics.

All functions are vectorized over leading axes; the window/substencil index
is always the last axis.  Window samples are ordered left to right,
``(f[i-2], f[i-1], f[i], f[i+1], f[i+2])``.  ``Side.PLUS`` reconstructs the
upwind value at the right interface of the center cell; ``Side.MINUS``
reconstructs the left interface using the mirror-symmetric (right-biased)
formulas, obtained by reflecting the window and swapping substencils 0 and 2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError

#: Ideal weights of the 5th-order upwind combination.
IDEAL_WEIGHTS = np.array([0.1, 0.6, 0.3])

#: Centered coefficient triples.
C_CENTERED = (0.75, 1.5, 0.75)
C_CENTERED_PLUS = (1.125, 2.25, 1.125)

SCHEMES = ("js", "jsc", "m", "z", "z+", "d", "c", "zc", "zc+", "ideal")
_ALIASES = {"zplus": "z+", "zcplus": "zc+", "weno-z+": "z+", "weno-zc+": "zc+"}
SCHEME_IDS = {name: i for i, name in enumerate(SCHEMES)}

_CENTERED_DEFAULTS = {
    "jsc": C_CENTERED,
    "c": C_CENTERED,
    "zc": C_CENTERED,
    "zc+": C_CENTERED_PLUS,
}
_EPS_DEFAULTS = {"js": 1e-6, "jsc": 1e-6, "m": 1e-6}


class Side(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


def canonical_scheme(name: str) -> str:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in SCHEMES:
        raise ConfigError(f"unknown scheme {name!r}; valid ids: {', '.join(SCHEMES)}")
    return key


@dataclass(frozen=True)
class SchemeConfig:
    """Weighting strategy plus its free parameters.

    ``epsilon`` defaults to 1e-6 for the js family and 1e-40 otherwise;
    ``eta`` (z+ only) defaults to dx**(2/3) at evaluation time; ``c`` defaults
    to the centered triple of the scheme.
    """

    scheme: str
    epsilon: float | None = None
    p: float = 2.0
    eta: float | None = None
    c: tuple[float, float, float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "scheme", canonical_scheme(self.scheme))
        if self.epsilon is None:
            object.__setattr__(self, "epsilon", _EPS_DEFAULTS.get(self.scheme, 1e-40))
        if self.epsilon < 0 or not np.isfinite(self.epsilon):
            raise ConfigError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.p <= 0:
            raise ConfigError(f"p must be positive, got {self.p}")
        if self.c is None and self.scheme in _CENTERED_DEFAULTS:
            object.__setattr__(self, "c", _CENTERED_DEFAULTS[self.scheme])
        if self.c is not None and len(self.c) != 3:
            raise ConfigError("c must be a triple")

    def with_overrides(self, **kw) -> "SchemeConfig":
        return replace(self, **kw)

    @property
    def scheme_id(self) -> int:
        return SCHEME_IDS[self.scheme]

    def c_array(self) -> np.ndarray:
        return np.asarray(self.c if self.c is not None else (1.0, 1.0, 1.0))

    def eta_value(self, dx: float) -> float:
        return self.eta if self.eta is not None else dx ** (2.0 / 3.0)


@dataclass(frozen=True)
class StencilWindow:
    """Five flux samples feeding one interface reconstruction."""

    values: np.ndarray
    side: Side = Side.PLUS

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape[-1] != 5:
            raise ConfigError("stencil window needs 5 samples on the last axis")
        if not np.all(np.isfinite(v)):
            raise ConfigError("stencil window contains non-finite samples")
        object.__setattr__(self, "values", v)


@dataclass
class WeightSet:
    """Diagnostics of one weighting evaluation (arrays share leading shape)."""

    beta: np.ndarray
    tau: np.ndarray
    alpha: np.ndarray
    omega: np.ndarray
    lam: np.ndarray
    zeta: np.ndarray
    xi: np.ndarray


def _oriented(values, side):
    v = np.asarray(values, dtype=float)
    return v if side is Side.PLUS else v[..., ::-1]


def candidate_reconstructions(values, side=Side.PLUS) -> np.ndarray:
    """Substencil interface values (f^0, f^1, f^2), shape (..., 3)."""
    w = _oriented(values, side)
    c0 = (2 * w[..., 0] - 7 * w[..., 1] + 11 * w[..., 2]) / 6.0
    c1 = (-w[..., 1] + 5 * w[..., 2] + 2 * w[..., 3]) / 6.0
    c2 = (2 * w[..., 2] + 5 * w[..., 3] - w[..., 4]) / 6.0
    out = np.stack([c0, c1, c2], axis=-1)
    return out if side is Side.PLUS else out[..., ::-1]


def smoothness_indicators(values, side=Side.PLUS) -> np.ndarray:
    """Jiang-Shu quadratic-form indicators (beta_0, beta_1, beta_2).

    For Side.MINUS (mirror convention) the indicators are those of the
    reflected window, relabeled so index k still refers to substencil S_k.
    The one-point-left-shifted indicators of the minus-side derivative
    analysis are obtained by passing the shifted window with Side.PLUS.
    """
    w = _oriented(values, side)
    b0 = 0.25 * (w[..., 0] - 4 * w[..., 1] + 3 * w[..., 2]) ** 2 + (13.0 / 12.0) * (
        w[..., 0] - 2 * w[..., 1] + w[..., 2]
    ) ** 2
    b1 = 0.25 * (w[..., 3] - w[..., 1]) ** 2 + (13.0 / 12.0) * (
        w[..., 1] - 2 * w[..., 2] + w[..., 3]
    ) ** 2
    b2 = 0.25 * (3 * w[..., 2] - 4 * w[..., 3] + w[..., 4]) ** 2 + (13.0 / 12.0) * (
        w[..., 2] - 2 * w[..., 3] + w[..., 4]
    ) ** 2
    out = np.stack([b0, b1, b2], axis=-1)
    return out if side is Side.PLUS else out[..., ::-1]


def tau_global(beta) -> np.ndarray:
    """Global smoothness indicator |beta_2 - beta_0|."""
    beta = np.asarray(beta)
    return np.abs(beta[..., 2] - beta[..., 0])


def ideal_combination(values, side=Side.PLUS) -> np.ndarray:
    """Linear 5th-order upwind interface value, sum_k d_k f^k."""
    cand = candidate_reconstructions(values, side)
    return cand @ IDEAL_WEIGHTS


def mapped_g(omega, k: int):
    """Henrick-Aslam-Powers mapping; fixed point at d_k with g' = g'' = 0."""
    om = np.asarray(omega, dtype=float)
    if np.any(om < 0) or np.any(om > 1):
        raise ConfigError("mapped_g expects omega in [0, 1]")
    d = IDEAL_WEIGHTS[k]
    return om * (d + d * d - 3 * d * om + om * om) / (d * d + om * (1 - 2 * d))


def _powp(x, p):
    return x * x if p == 2.0 else x**p


def unnormalized_weights(cfg: SchemeConfig, beta, tau, dx: float):
    """Evaluate the selected weighting formula.

    Returns (alpha, zeta, xi) where zeta = tau/(tau + mean(beta) + eps) and
    xi_k = beta_k/(tau + mean(beta) + eps) are diagnostics (xi is the zc+
    anti-dissipative term).
    """
    beta = np.asarray(beta, dtype=float)
    tau = np.asarray(tau, dtype=float)
    eps, p = cfg.epsilon, cfg.p
    if eps == 0.0 and (np.any(beta == 0.0) or np.any(tau + beta.mean(axis=-1) == 0.0)):
        raise ConfigError("epsilon = 0 requires strictly positive indicators")
    d = IDEAL_WEIGHTS
    t = tau[..., None]
    bbar = beta.mean(axis=-1, keepdims=True)
    zeta = t / (t + bbar + eps)
    xi = beta / (t + bbar + eps)
    scheme = cfg.scheme
    if scheme == "js":
        alpha = d / _powp(beta + eps, p)
    elif scheme == "jsc":
        alpha = cfg.c_array() * d / _powp(beta + eps, p)
    elif scheme == "m":
        a_js = d / _powp(beta + eps, p)
        om = a_js / a_js.sum(axis=-1, keepdims=True)
        alpha = np.stack([mapped_g(om[..., k], k) for k in range(3)], axis=-1)
    elif scheme == "z":
        alpha = d * (1 + _powp(t / (beta + eps), p))
    elif scheme == "z+":
        eta = cfg.eta_value(dx)
        alpha = d * (1 + _powp(t / (beta + eps), p) + eta * beta / (t + eps))
    elif scheme == "d":
        phi = np.minimum(
            1.0, np.sqrt(np.abs(beta[..., 0] - 2 * beta[..., 1] + beta[..., 2]))
        )[..., None]
        alpha = d * (1 + phi * _powp(t / (beta + eps), p))
    elif scheme == "c":
        alpha = d * (1 + cfg.c_array() * _powp(t / (beta + eps), p))
    elif scheme == "zc":
        alpha = d * (1 + cfg.c_array() * _powp(t / (beta + eps), p) * _powp(zeta, p))
    elif scheme == "zc+":
        alpha = d * (
            1 + cfg.c_array() * _powp(t / (beta + eps), p) * _powp(zeta, p) + xi
        )
    elif scheme == "ideal":
        alpha = np.broadcast_to(d, beta.shape).copy()
    else:  # pragma: no cover - guarded by canonical_scheme
        raise ConfigError(f"unknown scheme {scheme!r}")
    return alpha, zeta[..., 0], xi


def normalize(alpha) -> np.ndarray:
    """omega_k = alpha_k / sum_j alpha_j."""
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha < 0):
        raise ConfigError("weights must be nonnegative")
    s = alpha.sum(axis=-1, keepdims=True)
    if np.any(s <= 0):
        raise ConfigError("weight sum must be positive")
    return alpha / s


def lambda_distribution(alpha) -> np.ndarray:
    """Ideal-weight-normalized weight triple (the distribution-map variables)."""
    lam_star = np.asarray(alpha, dtype=float) / IDEAL_WEIGHTS
    return lam_star / lam_star.sum(axis=-1, keepdims=True)


def weight_diagnostics(values, cfg: SchemeConfig, dx: float, side=Side.PLUS) -> WeightSet:
    """Full WeightSet for windows of samples (vectorized)."""
    w = _oriented(values, side)
    beta = smoothness_indicators(w, Side.PLUS)
    tau = tau_global(beta)
    alpha, zeta, xi = unnormalized_weights(cfg, beta, tau, dx)
    omega = normalize(alpha)
    lam = lambda_distribution(alpha)
    if side is Side.MINUS:
        beta, alpha, omega, lam, xi = (
            a[..., ::-1] for a in (beta, alpha, omega, lam, xi)
        )
    return WeightSet(beta, tau, alpha, omega, lam, zeta, xi)


def reconstruct_interface(values, cfg: SchemeConfig, dx: float, side=Side.PLUS):
    """WENO interface value plus diagnostics for one (batch of) window(s)."""
    if isinstance(values, StencilWindow):
        side = values.side
        values = values.values
    diag = weight_diagnostics(values, cfg, dx, side)
    cand = candidate_reconstructions(values, side)
    value = (diag.omega * cand).sum(axis=-1)
    return value, diag


def reconstruct_batch(values, cfg: SchemeConfig, dx: float, side=Side.PLUS) -> np.ndarray:
    """Interface values only (no diagnostics) for windows (..., 5)."""
    w = _oriented(values, side)
    if cfg.scheme == "ideal":
        omega = IDEAL_WEIGHTS
    else:
        beta = smoothness_indicators(w, Side.PLUS)
        alpha, _, _ = unnormalized_weights(cfg, beta, tau_global(beta), dx)
        omega = normalize(alpha)
    return (omega * candidate_reconstructions(w, Side.PLUS)).sum(axis=-1)
