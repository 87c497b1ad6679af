"""Run configuration: defaults, file parsing, flag overrides.

The config file is a plain INI-style text file with one section per suite
plus a [run] section; every value is a scalar or a delimited list.  Command
line flags always win over file values.

    [run]
    k_grid = 0.2, 0.5, 0.8
    format = csv
    jobs = 1

    [verify]
    norm_k_grid = 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99
    u_grid = -0.9,-0.9; -0.45,0.45; 0,0; 0.45,-0.45; 0.9,0.9
    v_grid = -0.9, -0.7, -0.5, -0.3, -0.1, 0.1, 0.3, 0.5, 0.7, 0.9

    [moments]
    moments_max = 6

    [weights]
    x_min = -50
    x_max = 50
    points = 200
    params = 0,1; 1,0.5; -2,3

    [theta-chain]
    v_grid = -0.9, -0.45, 0.45, 0.9

u_grid entries are quarter-period fractions: the pair a,b denotes the
evaluation point u = a K + i b K'.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace

from .errors import ConfigError

SUITES = ("verify", "moments", "weights", "theta-chain")

_DEF_NORM_K = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99)
_DEF_U_FRACS = tuple(
    (a, b)
    for a in (-0.9, -0.45, 0.0, 0.45, 0.9)
    for b in (-0.9, -0.45, 0.0, 0.45, 0.9)
)
_DEF_V = (-0.9, -0.7, -0.5, -0.3, -0.1, 0.1, 0.3, 0.5, 0.7, 0.9)
_DEF_CHAIN_V = (-0.9, -0.45, 0.45, 0.9)
_DEF_PARAMS = ((0.0, 1.0), (1.0, 0.5), (-2.0, 3.0))

# Default pass tolerances per check family; a --tol override replaces all
# of them at once.
DEFAULT_TOLS = {
    "norm": 1e-10,
    "theorem1": 1e-8,
    "residue": 1e-9,
    "chain": 1e-11,
    "chain_sncd": 1e-10,
    "theorem2": 1e-7,
    "invariance": 1e-7,
    "moments": 1e-7,
    "weights": 1e-12,
}


@dataclass(frozen=True)
class RunConfig:
    k_grid: tuple = (0.2, 0.5, 0.8)
    norm_k_grid: tuple = _DEF_NORM_K
    u_fractions: tuple = _DEF_U_FRACS
    v_grid: tuple = _DEF_V
    chain_v_grid: tuple = _DEF_CHAIN_V
    moments_max: int = 6
    weight_params: tuple = _DEF_PARAMS
    x_min: float = -50.0
    x_max: float = 50.0
    points: int = 200
    theorem2_k: float = 0.6
    invariance_n_max: int = 6
    tols: dict = field(default_factory=lambda: dict(DEFAULT_TOLS))
    fmt: str = "csv"
    out: str | None = None
    jobs: int = 1
    figures: bool = True
    figures_dir: str | None = None

    def validated(self) -> "RunConfig":
        for k in tuple(self.k_grid) + tuple(self.norm_k_grid) + (self.theorem2_k,):
            if not 0.0 < k < 1.0:
                raise ConfigError(f"modulus k must lie in (0, 1), got {k}")
        for a, b in self.u_fractions:
            if not (abs(a) < 1.0 and abs(b) < 1.0):
                raise ConfigError(
                    f"u fraction ({a}, {b}) outside the open unit square"
                )
        for v in tuple(self.v_grid) + tuple(self.chain_v_grid):
            if not abs(v) < 1.0:
                raise ConfigError(f"v must lie in (-1, 1), got {v}")
        if not 0 <= self.moments_max <= 12:
            raise ConfigError(f"moments_max must lie in [0, 12], got {self.moments_max}")
        if not 0 <= self.invariance_n_max <= 8:
            raise ConfigError(
                f"invariance n_max must lie in [0, 8], got {self.invariance_n_max}"
            )
        for t, g in self.weight_params:
            if not g > 0.0:
                raise ConfigError(f"weight parameter gamma must be positive, got {g}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.fmt!r}")
        if self.points < 2:
            raise ConfigError(f"weights grid needs at least 2 points, got {self.points}")
        if not self.x_min < self.x_max:
            raise ConfigError(f"empty weights interval [{self.x_min}, {self.x_max}]")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        for tol in self.tols.values():
            if not tol > 0.0:
                raise ConfigError(f"tolerances must be positive, got {tol}")
        return self


def _floats(text: str, sep: str = ",") -> tuple:
    try:
        return tuple(float(p) for p in text.split(sep) if p.strip())
    except ValueError as exc:
        raise ConfigError(f"expected a list of numbers, got {text!r}") from exc


def _pairs(text: str) -> tuple:
    out = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        pair = _floats(chunk)
        if len(pair) != 2:
            raise ConfigError(f"expected number pairs 'a,b; c,d', got {text!r}")
        out.append(pair)
    return tuple(out)


def load_config_file(path: str, base: RunConfig | None = None) -> RunConfig:
    cfg = base or RunConfig()
    # '#' only: ';' separates pairs in u_grid/params values
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc

    updates: dict = {}
    tols = dict(cfg.tols)

    def grab(section: str, key: str, conv, dest: str) -> None:
        if parser.has_option(section, key):
            try:
                updates[dest] = conv(parser.get(section, key))
            except ConfigError:
                raise
            except ValueError as exc:
                raise ConfigError(
                    f"bad value for [{section}] {key}: {parser.get(section, key)!r}"
                ) from exc

    grab("run", "k_grid", _floats, "k_grid")
    grab("run", "format", lambda s: s.strip().lower(), "fmt")
    grab("run", "out", lambda s: s.strip(), "out")
    grab("run", "jobs", int, "jobs")
    grab("verify", "norm_k_grid", _floats, "norm_k_grid")
    grab("verify", "u_grid", _pairs, "u_fractions")
    grab("verify", "v_grid", _floats, "v_grid")
    grab("verify", "theorem2_k", float, "theorem2_k")
    grab("verify", "invariance_n_max", int, "invariance_n_max")
    grab("moments", "moments_max", int, "moments_max")
    grab("weights", "x_min", float, "x_min")
    grab("weights", "x_max", float, "x_max")
    grab("weights", "points", int, "points")
    grab("weights", "params", _pairs, "weight_params")
    grab("theta-chain", "v_grid", _floats, "chain_v_grid")

    for section, names in (
        ("verify", ("norm", "theorem1", "residue", "theorem2", "invariance")),
        ("moments", ("moments",)),
        ("weights", ("weights",)),
        ("theta-chain", ("chain", "chain_sncd")),
    ):
        for name in names:
            if parser.has_option(section, f"tol_{name}"):
                try:
                    tols[name] = float(parser.get(section, f"tol_{name}"))
                except ValueError as exc:
                    raise ConfigError(f"bad tolerance tol_{name}") from exc
    updates["tols"] = tols
    return replace(cfg, **updates)


def apply_flag_overrides(cfg: RunConfig, args) -> RunConfig:
    """Command line flags win over everything read from a file."""
    updates: dict = {}
    if args.k is not None:
        updates["k_grid"] = _floats(args.k)
    if args.moments_max is not None:
        updates["moments_max"] = args.moments_max
    if args.tol is not None:
        if not args.tol > 0.0:
            raise ConfigError(f"--tol must be positive, got {args.tol}")
        updates["tols"] = {name: args.tol for name in cfg.tols}
    if args.format is not None:
        updates["fmt"] = args.format
    if args.out is not None:
        updates["out"] = args.out
    if args.jobs is not None:
        updates["jobs"] = args.jobs
    if args.no_figures:
        updates["figures"] = False
    if args.figures_dir is not None:
        updates["figures_dir"] = args.figures_dir
    return replace(cfg, **updates)
