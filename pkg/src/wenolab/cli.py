"""Config-driven command-line front end.

``weno-lab <command> [--key value]... [--config path]`` with commands
solve, accuracy, adr, weights, ek-table, distribution.  Config files are
flat ``key = value`` lines (UTF-8, '#' comments); CLI flags override file
values.  Runs are fully deterministic; every CSV embeds its generating
config in a leading comment line.  Exit codes: 0 success, 1 numerical
failure, 2 config error.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, fields

import numpy as np

from . import analysis
from .errors import ConfigError, NumericalFailure, PositivityFailure, WenoLabError
from .euler import cons_to_prim
from .kernel import SchemeConfig, canonical_scheme
from .problems import (
    cons_to_prim_2d,
    build_grid,
    build_grid2d,
    get_problem,
    initial_state,
)
from .solver import (
    Euler1D,
    Euler2D,
    LinearAdvection,
    RHSContext,
    TimeControls,
    integrate,
)

COMMANDS = ("solve", "accuracy", "adr", "weights", "ek-table", "distribution")

EK_SCHEMES = ("js", "jsc", "z+", "z", "c", "zc", "zc+")


@dataclass
class RunConfig:
    command: str = None
    problem: str = None
    scheme: str = None
    function: str = None
    n: int = None
    nx: int = None
    ny: int = None
    cfl: float = None
    t_final: float = None
    epsilon: float = None
    p: float = None
    eta: float = None
    c0: float = None
    c1: float = None
    c2: float = None
    dt: float = None
    dx_exponent: float = None
    reconstruction: str = None
    resolutions: tuple = None
    times: tuple = None
    output: str = None


_INT_KEYS = {"n", "nx", "ny"}
_FLOAT_KEYS = {"cfl", "t_final", "epsilon", "p", "eta", "c0", "c1", "c2", "dt", "dx_exponent"}
_TUPLE_KEYS = {"resolutions", "times"}
_STR_KEYS = {"command", "problem", "scheme", "function", "reconstruction", "output"}

_KEYS_BY_COMMAND = {
    "solve": {"problem", "scheme", "n", "nx", "ny", "cfl", "t_final", "epsilon", "p",
              "eta", "c0", "c1", "c2", "dt", "dx_exponent", "reconstruction", "output"},
    "accuracy": {"scheme", "function", "resolutions", "epsilon", "p", "eta",
                 "c0", "c1", "c2", "output"},
    "adr": {"scheme", "n", "cfl", "dt", "epsilon", "p", "eta", "c0", "c1", "c2", "output"},
    "weights": {"problem", "scheme", "n", "cfl", "t_final", "times", "epsilon", "p",
                "eta", "c0", "c1", "c2", "dx_exponent", "output"},
    "ek-table": {"n", "cfl", "t_final", "output"},
    "distribution": {"problem", "scheme", "n", "cfl", "t_final", "times", "epsilon",
                     "p", "eta", "c0", "c1", "c2", "output"},
}


def _fmt(v) -> str:
    if isinstance(v, (bool, int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def _convert(key: str, raw: str):
    raw = raw.strip()
    try:
        if key in _INT_KEYS:
            value = int(raw)
            if value <= 0:
                raise ValueError
            return value
        if key in _FLOAT_KEYS:
            value = float(raw)
            if not np.isfinite(value):
                raise ValueError
            if key != "eta" and value < 0:
                raise ValueError
            return value
        if key in _TUPLE_KEYS:
            parts = tuple(p.strip() for p in raw.split(",") if p.strip())
            if key == "resolutions":
                return tuple(int(p) for p in parts)
            return tuple(float(p) for p in parts)
        return raw
    except ValueError:
        raise ConfigError(f"malformed value for {key!r}: {raw!r}") from None


def _validate(kv: dict) -> RunConfig:
    command = kv.pop("command", None)
    if command is None:
        raise ConfigError("missing required key 'command'")
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}; valid: {', '.join(COMMANDS)}")
    allowed = _KEYS_BY_COMMAND[command]
    unknown = set(kv) - allowed
    if unknown:
        raise ConfigError(
            f"unknown keys for command {command!r}: {', '.join(sorted(unknown))}"
        )
    cfg = RunConfig(command=command, **kv)
    if cfg.scheme is not None:
        cfg.scheme = canonical_scheme(cfg.scheme)  # raises with valid ids listed
    if cfg.cfl is not None and not (0.0 < cfg.cfl <= 1.0):
        raise ConfigError(f"cfl must lie in (0, 1], got {cfg.cfl}")
    given_c = [c for c in (cfg.c0, cfg.c1, cfg.c2) if c is not None]
    if given_c and len(given_c) != 3:
        raise ConfigError("c0, c1, c2 must be given together")
    if cfg.reconstruction is not None and cfg.reconstruction not in (
        "characteristic",
        "componentwise",
    ):
        raise ConfigError(f"bad reconstruction {cfg.reconstruction!r}")
    if cfg.function is not None and cfg.function not in ("f0", "f1", "f2"):
        raise ConfigError(f"unknown function {cfg.function!r}; valid: f0, f1, f2")
    if cfg.command == "solve" and cfg.problem is None:
        raise ConfigError("command 'solve' requires a problem id")
    return cfg


def parse_config(text: str) -> RunConfig:
    """Parse flat ``key = value`` config text into a validated RunConfig."""
    kv = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in _STR_KEYS | _INT_KEYS | _FLOAT_KEYS | _TUPLE_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        kv[key] = _convert(key, raw)
    return _validate(kv)


def config_text(cfg: RunConfig) -> str:
    """Serialize a RunConfig; parse_config round-trips it."""
    parts = []
    for f in fields(cfg):
        v = getattr(cfg, f.name)
        if v is None:
            continue
        if isinstance(v, tuple):
            parts.append(f"{f.name}={','.join(_fmt(x) for x in v)}")
        else:
            parts.append(f"{f.name}={_fmt(v)}")
    return "\n".join(parts)


def write_csv(path: str, columns, rows, cfg: RunConfig):
    lines = ["# " + config_text(cfg).replace("\n", " ")]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join("" if v is None else _fmt(v) for v in row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _scheme_config(cfg: RunConfig) -> SchemeConfig:
    scheme = cfg.scheme if cfg.scheme is not None else "zc"
    kw = {}
    if cfg.epsilon is not None:
        kw["epsilon"] = cfg.epsilon
    if cfg.p is not None:
        kw["p"] = cfg.p
    if cfg.eta is not None:
        kw["eta"] = cfg.eta
    if cfg.c0 is not None:
        kw["c"] = (cfg.c0, cfg.c1, cfg.c2)
    return SchemeConfig(scheme, **kw)


def _default_output(cfg: RunConfig) -> str:
    if cfg.output is not None:
        return cfg.output
    scheme = (cfg.scheme or "zc").replace("+", "plus")
    if cfg.command == "solve":
        return f"{cfg.problem}_{scheme}.csv"
    if cfg.command == "accuracy":
        return f"accuracy_{cfg.function or 'f0'}_{scheme}.csv"
    if cfg.command == "adr":
        return f"adr_{scheme}.csv"
    if cfg.command == "weights":
        return f"weights_{cfg.problem or 'gste'}_{scheme}.csv"
    if cfg.command == "ek-table":
        return "ek_table.csv"
    return f"distribution_{cfg.problem or 'titarev_toro'}_{scheme}.csv"


def _solve_context(cfg: RunConfig, prob):
    scheme = _scheme_config(cfg)
    recon = cfg.reconstruction or "characteristic"
    if prob.kind == "scalar":
        grid = build_grid(prob, cfg.n)
        ctx = RHSContext(grid=grid, scheme=scheme, flux=LinearAdvection(1.0), bc=prob.bc)
    elif prob.kind == "euler1d":
        grid = build_grid(prob, cfg.n)
        ctx = RHSContext(
            grid=grid, scheme=scheme, flux=Euler1D(prob.gamma), bc=prob.bc,
            reconstruction=recon,
        )
    elif prob.kind == "euler2d":
        grid = build_grid2d(prob, cfg.nx, cfg.ny)
        ctx = RHSContext(
            grid=grid, scheme=scheme, flux=Euler2D(prob.gamma), bc=prob.bc,
            reconstruction=recon, source=prob.source,
            fill_override=prob.fill_override,
        )
    else:
        raise ConfigError(f"problem {prob.pid!r} cannot be solved directly")
    controls = TimeControls(
        cfl=cfg.cfl if cfg.cfl is not None else prob.cfl,
        t_final=cfg.t_final if cfg.t_final is not None else prob.t_final,
        fixed_dt=cfg.dt,
        dx_exponent=cfg.dx_exponent if cfg.dx_exponent is not None else 1.0,
    )
    return grid, ctx, controls


def _run_solve(cfg: RunConfig):
    prob = get_problem(cfg.problem)
    grid, ctx, controls = _solve_context(cfg, prob)
    U0 = initial_state(prob, grid)
    result = integrate(U0, ctx, controls)
    out = _default_output(cfg)
    if prob.kind == "scalar":
        u = grid.interior(result.state)
        cols = ["x", "u"]
        data = [grid.x, u]
        if prob.exact is not None:
            cols.append("u_exact")
            data.append(prob.exact(grid.x, result.t))
        write_csv(out, cols, np.column_stack(data), cfg)
    elif prob.kind == "euler1d":
        prim = cons_to_prim(grid.interior(result.state), prob.gamma)
        cols = ["x", "rho", "u", "p"]
        data = [grid.x, prim[:, 0], prim[:, 1], prim[:, 2]]
        if prob.exact is not None:
            ref = prob.exact(grid.x, result.t)
            cols.append("rho_exact")
            data.append(ref[:, 0])
        write_csv(out, cols, np.column_stack(data), cfg)
    else:
        gx, gy = grid.gx, grid.gy
        g = gx.ghost
        interior = result.state[g : g + gx.n, g : g + gy.n, :]
        prim = cons_to_prim_2d(interior, prob.gamma)
        X, Y = np.meshgrid(gx.x, gy.x, indexing="ij")
        rows = np.column_stack(
            [X.ravel(), Y.ravel()] + [prim[..., k].ravel() for k in range(4)]
        )
        write_csv(out, ["x", "y", "rho", "u", "v", "p"], rows, cfg)
    return out


def _run_accuracy(cfg: RunConfig):
    fid = cfg.function or "f0"
    resolutions = cfg.resolutions or analysis.DEFAULT_RESOLUTIONS
    report = analysis.derivative_accuracy_table(_scheme_config(cfg), fid, resolutions)
    out = _default_output(cfg)
    write_csv(out, ["inv_dx", "l1_error", "l1_order"], report.rows, cfg)
    return out


def _run_adr(cfg: RunConfig):
    result = analysis.adr_sweep(
        _scheme_config(cfg),
        n_points=cfg.n or 422,
        cfl=cfg.cfl if cfg.cfl is not None else 0.5,
        dt_probe=cfg.dt if cfg.dt is not None else 1e-10,
    )
    out = _default_output(cfg)
    write_csv(out, ["omega", "re_phi", "im_phi"], result.rows, cfg)
    return out


def _run_trace(cfg: RunConfig, lam_only: bool):
    pid = cfg.problem or ("titarev_toro" if lam_only else "gste")
    prob = get_problem(pid)
    cfg2 = RunConfig(**{f.name: getattr(cfg, f.name) for f in fields(cfg)})
    cfg2.problem = pid
    grid, ctx, controls = _solve_context(cfg2, prob)
    times = cfg.times or (controls.t_final,)
    controls.t_final = max(max(times), controls.t_final)
    U0 = initial_state(prob, grid)
    trace = analysis.collect_weight_trace(U0, ctx, controls, times)
    out = _default_output(cfg)
    if lam_only:
        rows = [(r[0], r[1], r[5], r[6]) for r in trace.rows]
        write_csv(out, ["t", "x", "l0", "l2"], rows, cfg)
    else:
        write_csv(out, ["t", "x", "w0", "w1", "w2", "l0", "l2"], trace.rows, cfg)
    return out


def _run_ek_table(cfg: RunConfig):
    grid, frozen = analysis.frozen_gste_field(
        n=cfg.n or 400,
        cfl=cfg.cfl if cfg.cfl is not None else 0.45,
        t_final=cfg.t_final if cfg.t_final is not None else 2.0,
    )
    rows = []
    for scheme in EK_SCHEMES:
        sc = SchemeConfig(scheme, epsilon=1e-40, p=2.0)
        e0, e1, e2, tot = analysis.weight_relative_error(sc, frozen, grid.dx)
        rows.append((scheme, e0, e1, e2, tot))
    out = _default_output(cfg)
    write_csv(out, ["scheme", "e0", "e1", "e2", "total"], rows, cfg)
    return out


def run(cfg: RunConfig) -> str:
    """Dispatch a validated config; returns the artifact path."""
    if cfg.command == "solve":
        return _run_solve(cfg)
    if cfg.command == "accuracy":
        return _run_accuracy(cfg)
    if cfg.command == "adr":
        return _run_adr(cfg)
    if cfg.command == "weights":
        return _run_trace(cfg, lam_only=False)
    if cfg.command == "distribution":
        return _run_trace(cfg, lam_only=True)
    if cfg.command == "ek-table":
        return _run_ek_table(cfg)
    raise ConfigError(f"unknown command {cfg.command!r}")


def parse_argv(argv) -> RunConfig:
    """CLI arguments: <command> [--key value]... [--config path]."""
    if not argv:
        raise ConfigError(
            f"usage: weno-lab <command> [--key value]...; commands: {', '.join(COMMANDS)}"
        )
    kv = {}
    command = argv[0]
    i = 1
    config_path = None
    while i < len(argv):
        arg = argv[i]
        if not arg.startswith("--"):
            raise ConfigError(f"expected --key, got {arg!r}")
        key = arg[2:]
        if i + 1 >= len(argv):
            raise ConfigError(f"missing value for --{key}")
        value = argv[i + 1]
        i += 2
        if key == "config":
            config_path = value
            continue
        kv[key] = value
    merged = {}
    if config_path is not None:
        try:
            with open(config_path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {config_path!r}: {exc}") from None
        file_cfg = parse_config(text)
        for f in fields(file_cfg):
            v = getattr(file_cfg, f.name)
            if v is not None:
                merged[f.name] = v
    merged["command"] = command
    for key, raw in kv.items():
        if key not in _STR_KEYS | _INT_KEYS | _FLOAT_KEYS | _TUPLE_KEYS:
            raise ConfigError(f"unknown key {key!r}")
        merged[key] = _convert(key, raw)
    return _validate(merged)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_argv(argv)
        out = run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (PositivityFailure, NumericalFailure) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1
    except WenoLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
