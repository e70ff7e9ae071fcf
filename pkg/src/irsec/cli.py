"""Experiment driver: config ingestion, seeded sweep orchestration, CSV
output.

Config files are INI-style `key = value` lines under [scenario], [sweep]
and [output] sections; an empty file reproduces the reference small-scale
experiment. Radio quantities are given in engineering units (dBm, dBm/Hz,
GHz, mm) and converted to linear SI at load time. See README for the full
key list.
"""

import argparse
import configparser
import logging
import math
import sys
from dataclasses import dataclass, replace

from .channel import build_channels
from .errors import (IllConditioned, Infeasible, IrsecError, ParseError,
                     ValidationError)
from .geometry import ScenarioTemplate, compute_angles, random_scenario
from .link import compute_all_metrics
from .strategy import (SchedulePolicy, enumerate_permutations, select_best_rate,
                       select_random, select_uniform_irs, sweep_point)

log = logging.getLogger("irsec")

CSV_HEADER = "seed,method,set_size,tau,ue,avg_rate,sr_static,sr_dynamic,sr_combined,max_usage,feasible"

METHODS = ("best_rate", "uniform_irs", "random")

_SELECTORS = {
    "best_rate": lambda pm, size, seed: select_best_rate(pm, size),
    "uniform_irs": lambda pm, size, seed: select_uniform_irs(pm, size),
    "random": lambda pm, size, seed: select_random(pm, size, seed),
}


def dbm_to_watt(dbm: float) -> float:
    return 10 ** (dbm / 10) * 1e-3


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment description (all values linear SI)."""

    template: ScenarioTemplate = ScenarioTemplate()
    seeds: tuple[int, ...] = tuple(range(1, 21))
    tau_grid: tuple[int, ...] = tuple(range(1, 31))
    set_sizes: tuple[int, ...] = (5, 10, 20)
    methods: tuple[str, ...] = METHODS
    delta: int | None = None  # None = auto (number of IRSs)
    r_min: float = 0.0
    output_path: str = "results.csv"
    allow_weighted_q: bool = False

    def resolved_delta(self) -> int:
        return self.template.num_irs if self.delta is None else self.delta


@dataclass(frozen=True)
class ResultRow:
    """One CSV row: metrics of (seed, method, set size, tau) for one UE.
    The secrecy columns repeat the victim-UE values across the K rows."""

    seed: int
    method: str
    set_size: int
    tau: int
    ue: int  # 1-based in the CSV
    avg_rate: float
    sr_static: float
    sr_dynamic: float
    sr_combined: float
    max_usage: float
    feasible: bool


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    """Accepts 'a..b' ranges or comma-separated integers."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..")
            values = tuple(range(int(lo), int(hi) + 1))
        else:
            values = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ParseError(f"{what}: expected 'a..b' or comma-separated integers, got {text!r}") from exc
    if not values:
        raise ValidationError(f"{what} must be non-empty")
    return values


def _parse_methods(text: str) -> tuple[str, ...]:
    methods = tuple(m.strip() for m in text.split(",") if m.strip())
    for m in methods:
        if m not in METHODS:
            raise ValidationError(f"unknown method {m!r}; choose from {METHODS}")
    if not methods:
        raise ValidationError("methods must be non-empty")
    return methods


_SCENARIO_KEYS = {
    "m_bs", "m_ue", "m_mn", "num_ue", "num_irs", "irs_side", "wavelength_mm",
    "bandwidth_ghz", "tx_power_dbm", "noise_psd_dbm_hz", "room_size_m",
    "victim", "mn_radius_m", "q_weights", "allow_weighted_q",
}
_SWEEP_KEYS = {"seeds", "tau", "sizes", "methods", "delta", "r_min"}
_OUTPUT_KEYS = {"path"}


def load_config(path: str | None) -> ExperimentConfig:
    """Read and validate a config file; `None` or an empty file yields the
    default experiment. Raises ParseError on malformed input and
    ValidationError on invariant breaches."""
    parser = configparser.ConfigParser()
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise ParseError(f"cannot read config {path!r}: {exc}") from exc
        except configparser.Error as exc:
            raise ParseError(f"config parse failure: {exc}") from exc

    for section, allowed in (("scenario", _SCENARIO_KEYS), ("sweep", _SWEEP_KEYS),
                             ("output", _OUTPUT_KEYS)):
        if parser.has_section(section):
            for key in parser[section]:
                if key not in allowed:
                    raise ValidationError(f"unknown key {key!r} in [{section}]")
    for section in parser.sections():
        if section not in ("scenario", "sweep", "output"):
            raise ValidationError(f"unknown section [{section}]")

    scen = parser["scenario"] if parser.has_section("scenario") else {}
    sweep = parser["sweep"] if parser.has_section("sweep") else {}
    out = parser["output"] if parser.has_section("output") else {}

    def geti(src, key, default):
        try:
            return int(src.get(key, default))
        except ValueError as exc:
            raise ParseError(f"{key}: expected integer, got {src.get(key)!r}") from exc

    def getf(src, key, default):
        try:
            return float(src.get(key, default))
        except ValueError as exc:
            raise ParseError(f"{key}: expected number, got {src.get(key)!r}") from exc

    defaults = ScenarioTemplate()
    q_weights = None
    if "q_weights" in scen:
        try:
            q_weights = tuple(float(v) for v in scen["q_weights"].split(","))
        except ValueError as exc:
            raise ParseError(f"q_weights: expected comma-separated numbers") from exc
    victim = geti(scen, "victim", defaults.victim_index + 1)  # 1-based on disk
    template = ScenarioTemplate(
        num_ue=geti(scen, "num_ue", defaults.num_ue),
        num_irs=geti(scen, "num_irs", defaults.num_irs),
        m_bs=geti(scen, "m_bs", defaults.m_bs),
        m_ue=geti(scen, "m_ue", defaults.m_ue),
        m_mn=geti(scen, "m_mn", defaults.m_mn),
        irs_side=geti(scen, "irs_side", defaults.irs_side),
        wavelength=getf(scen, "wavelength_mm", defaults.wavelength * 1e3) * 1e-3,
        bandwidth=getf(scen, "bandwidth_ghz", defaults.bandwidth / 1e9) * 1e9,
        tx_power=dbm_to_watt(getf(scen, "tx_power_dbm", 30.0)),
        noise_psd=dbm_to_watt(getf(scen, "noise_psd_dbm_hz", -174.0)),
        q_weights=q_weights,
        victim_index=victim - 1,
        room_size=getf(scen, "room_size_m", defaults.room_size),
        mn_radius=getf(scen, "mn_radius_m", defaults.mn_radius),
    )
    allow_weighted = str(scen.get("allow_weighted_q", "false")).lower() in ("1", "true", "yes")

    delta_text = str(sweep.get("delta", "auto")).strip().lower()
    if delta_text == "auto":
        delta = None
    else:
        try:
            delta = int(delta_text)
        except ValueError as exc:
            raise ParseError(f"delta: expected integer or 'auto', got {delta_text!r}") from exc

    cfg = ExperimentConfig(
        template=template,
        seeds=_parse_int_list(str(sweep.get("seeds", "1..20")), "seeds"),
        tau_grid=_parse_int_list(str(sweep.get("tau", "1..30")), "tau"),
        set_sizes=_parse_int_list(str(sweep.get("sizes", "5,10,20")), "sizes"),
        methods=_parse_methods(str(sweep.get("methods", ",".join(METHODS)))),
        delta=delta,
        r_min=getf(sweep, "r_min", 0.0),
        output_path=str(out.get("path", "results.csv")),
        allow_weighted_q=allow_weighted,
    )
    validate_config(cfg)
    return cfg


def validate_config(cfg: ExperimentConfig):
    t = cfg.template
    for name, value in (("bandwidth", t.bandwidth), ("wavelength", t.wavelength),
                        ("tx_power", t.tx_power), ("noise_psd", t.noise_psd),
                        ("room_size", t.room_size), ("mn_radius", t.mn_radius)):
        if value <= 0:
            raise ValidationError(f"{name} must be positive, got {value}")
    if t.num_ue < 1 or t.num_irs < t.num_ue:
        raise ValidationError(f"need 1 <= K <= N, got K={t.num_ue}, N={t.num_irs}")
    if not (0 <= t.victim_index < t.num_ue):
        raise ValidationError(f"victim must be in 1..{t.num_ue}")
    if t.q_weights is not None:
        if len(t.q_weights) != t.num_ue or any(q <= 0 for q in t.q_weights):
            raise ValidationError("q_weights must be K positive numbers")
        if not cfg.allow_weighted_q and any(q != 1.0 for q in t.q_weights):
            raise ValidationError("non-uniform q_weights require allow_weighted_q = true")
    total = math.perm(t.num_irs, t.num_ue)
    for size in cfg.set_sizes:
        if not (1 <= size <= total):
            raise ValidationError(f"set size {size} outside 1..|P|={total}")
    for tau in cfg.tau_grid:
        if tau < 1:
            raise ValidationError(f"tau must be >= 1, got {tau}")
    if cfg.delta is not None and cfg.delta < 1:
        raise ValidationError(f"delta must be >= 1 or 'auto', got {cfg.delta}")
    if cfg.r_min < 0:
        raise ValidationError(f"r_min must be nonnegative, got {cfg.r_min}")
    if not cfg.seeds:
        raise ValidationError("seeds must be non-empty")


def run_experiment(cfg: ExperimentConfig) -> list[ResultRow]:
    """Per seed: sample a scenario, evaluate all permutations once, then
    sweep (method, set size, tau). Scenarios whose effective channels are
    ill-conditioned are skipped with a warning. Deterministic per config."""
    delta = cfg.resolved_delta()
    rows: list[ResultRow] = []
    perms = enumerate_permutations(cfg.template.num_irs, cfg.template.num_ue)
    for seed in cfg.seeds:
        scenario = random_scenario(seed, cfg.template)
        try:
            angles = compute_angles(scenario)
            channels = build_channels(scenario, angles)
            pmetrics = compute_all_metrics(scenario, channels, angles, perms,
                                           allow_weighted_q=cfg.allow_weighted_q)
        except IllConditioned as exc:
            log.warning("seed %d skipped: %s", seed, exc)
            continue
        victim = scenario.victim_index
        for method in cfg.methods:
            for size in cfg.set_sizes:
                pset = _SELECTORS[method](pmetrics, size, seed)
                for tau in cfg.tau_grid:
                    policy = SchedulePolicy(tau=tau, delta=delta, r_min=cfg.r_min)
                    point = sweep_point(pset, pmetrics, victim, policy)
                    for k in range(scenario.num_ue):
                        rows.append(ResultRow(
                            seed=seed, method=method, set_size=size, tau=tau,
                            ue=k + 1, avg_rate=float(point.avg_rate[k]),
                            sr_static=point.sr_static, sr_dynamic=point.sr_dynamic,
                            sr_combined=point.sr_combined, max_usage=point.max_usage,
                            feasible=point.feasible))
        log.info("seed %d done (%d permutations)", seed, len(perms))
    rows.sort(key=lambda r: (r.seed, r.method, r.set_size, r.tau, r.ue))
    return rows


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def write_csv(rows, path: str):
    """Write rows under the fixed header; floats carry 9 significant digits."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in rows:
            fh.write(",".join([
                str(r.seed), r.method, str(r.set_size), str(r.tau), str(r.ue),
                _fmt(r.avg_rate), _fmt(r.sr_static), _fmt(r.sr_dynamic),
                _fmt(r.sr_combined), _fmt(r.max_usage),
                "true" if r.feasible else "false",
            ]) + "\n")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irsec",
        description="IRS permutation-switching secrecy sweep; emits one CSV row "
                    "per (seed, method, set size, tau, UE).")
    parser.add_argument("--config", help="INI config file (defaults reproduce the reference setup)")
    parser.add_argument("--output", help="output CSV path (overrides config)")
    parser.add_argument("--seeds", help="seed range 'a..b' or comma list (overrides config)")
    parser.add_argument("--tau", help="dwell-time grid 'a..b' or comma list")
    parser.add_argument("--sizes", help="comma-separated permutation-set sizes")
    parser.add_argument("--methods", help="comma-separated subset of " + ",".join(METHODS))
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = build_arg_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        overrides = {}
        if args.output:
            overrides["output_path"] = args.output
        if args.seeds:
            overrides["seeds"] = _parse_int_list(args.seeds, "seeds")
        if args.tau:
            overrides["tau_grid"] = _parse_int_list(args.tau, "tau")
        if args.sizes:
            overrides["set_sizes"] = _parse_int_list(args.sizes, "sizes")
        if args.methods:
            overrides["methods"] = _parse_methods(args.methods)
        if overrides:
            cfg = replace(cfg, **overrides)
            validate_config(cfg)
        rows = run_experiment(cfg)
        write_csv(rows, cfg.output_path)
        log.info("wrote %d rows to %s", len(rows), cfg.output_path)
        if rows and not any(r.feasible for r in rows):
            log.error("objective infeasible: no (set, tau) pair reaches r_min = %g", cfg.r_min)
            return 2
        return 0
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Infeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IrsecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
