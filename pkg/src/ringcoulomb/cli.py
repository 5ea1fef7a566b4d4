"""Command-line interface: spectrum tables, density grids, verification, reductions.

Output is deterministic: fixed column order, shortest round-trip float
formatting (repr), no timestamps.  Exit codes: 0 success, 1 a verification or
reduction check failed, 2 invalid configuration (one diagnostic line per
offending field on stderr).
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, oracle, spectrum, wavefunctions
from .quadrature import decay_cutoff


class ConfigError(Exception):
    """Carries (field, message) pairs for every offending config entry."""

    def __init__(self, problems):
        super().__init__("invalid configuration")
        self.problems = list(problems)


def _diagnose(message: str) -> None:
    color = sys.stderr.isatty() and not os.environ.get("NO_COLOR")
    prefix = "\x1b[31merror:\x1b[0m" if color else "error:"
    print(prefix, message, file=sys.stderr)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _parse_range(text: str, field: str, problems: list) -> list:
    s = str(text).strip()
    try:
        if ".." in s:
            lo_s, hi_s = s.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(s)
    except ValueError:
        problems.append((field, "expected an integer or lo..hi range, got %r" % text))
        return []
    if lo < 0:
        problems.append((field, "indices must be nonnegative, got %r" % text))
        return []
    return list(range(lo, hi + 1))


_GLOBAL_FLAGS = ("a", "b", "c", "beta", "D", "mu", "hbar", "format", "out")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a", type=float, default=None)
    parser.add_argument("--b", type=float, default=None)
    parser.add_argument("--c", type=float, default=None)
    parser.add_argument("--beta", type=float, default=None)
    parser.add_argument("--D", type=int, default=None)
    parser.add_argument("--mu", type=float, default=None)
    parser.add_argument("--hbar", type=float, default=None)
    parser.add_argument("--format", choices=("csv", "json"), default=None)
    parser.add_argument("--out", type=str, default=None)
    parser.add_argument("--config", type=str, default=None)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringcoulomb",
        description="Bound states of the pseudo-Coulomb plus ring-shaped "
                    "potential in D dimensions")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="energy table over quantum-number ranges")
    _add_common(p)
    p.add_argument("--N", type=str, default=None)
    p.add_argument("--n", type=str, default=None)
    p.add_argument("--m", type=str, default=None)

    p = sub.add_parser("wavefunction", help="density grid of one state")
    _add_common(p)
    p.add_argument("--N", type=str, default=None)
    p.add_argument("--n", type=str, default=None)
    p.add_argument("--m", type=str, default=None)
    p.add_argument("--nr", type=int, default=None)
    p.add_argument("--ntheta", type=int, default=None)
    p.add_argument("--r-max", dest="r_max", type=float, default=None)

    p = sub.add_parser("verify", help="finite-difference cross-check of states")
    _add_common(p)
    p.add_argument("--N", type=str, default=None)
    p.add_argument("--n", type=str, default=None)
    p.add_argument("--m", type=str, default=None)
    p.add_argument("--tol-energy", dest="tol_energy", type=float, default=None)
    p.add_argument("--tol-lambda", dest="tol_lambda", type=float, default=None)
    p.add_argument("--tol-residual", dest="tol_residual", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--levels", type=int, default=None)
    p.add_argument("--perturb-energy", dest="perturb_energy", type=float, default=None)

    p = sub.add_parser("reduce", help="limiting-case formulas vs the general one")
    _add_common(p)
    p.add_argument("--case", choices=("cheng-dai", "kratzer", "ddim", "coulomb-ring"),
                   default=None)
    p.add_argument("--negative-control", dest="negative_control", type=int,
                   default=None)

    return parser


_KNOWN_KEYS = frozenset([
    "a", "b", "c", "beta", "D", "mu", "hbar", "format", "out",
    "N", "n", "m", "nr", "ntheta", "r_max",
    "tol_energy", "tol_lambda", "tol_residual", "points", "levels",
    "perturb_energy", "case", "negative_control",
])


def _merge_config(args: argparse.Namespace, problems: list) -> dict:
    """File values fill in unset flags; explicit flags always win.

    Config keys may use dashes or underscores; keys matching no flag of any
    subcommand are reported (typo protection), keys belonging to other
    subcommands are simply ignored by the one that runs.
    """
    merged = {}
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                loaded = json.load(fh)
        except OSError as exc:
            problems.append(("config", "cannot read %r: %s" % (args.config, exc)))
            loaded = {}
        except json.JSONDecodeError as exc:
            problems.append(("config", "not valid JSON: %s" % exc))
            loaded = {}
        if not isinstance(loaded, dict):
            problems.append(("config", "top level must be a flat JSON object"))
            loaded = {}
        for key, value in loaded.items():
            name = str(key).replace("-", "_")
            if name not in _KNOWN_KEYS:
                problems.append((str(key), "unknown configuration key"))
                continue
            merged[name] = value
    for key, value in vars(args).items():
        if key in ("command", "config"):
            continue
        if value is not None:
            merged[key] = value
    return merged


def _physics(cfg: dict, problems: list):
    a = float(cfg.get("a", 1.0))
    b = float(cfg.get("b", 0.0))
    c = float(cfg.get("c", 0.0))
    beta = float(cfg.get("beta", 0.0))
    D = cfg.get("D", 3)
    mu = float(cfg.get("mu", 1.0))
    hbar = float(cfg.get("hbar", 1.0))
    if a <= 0:
        problems.append(("a", "must be positive for bound states, got %r" % a))
    if b < 0:
        problems.append(("b", "must be nonnegative, got %r" % b))
    if beta < 0:
        problems.append(("beta", "must be nonnegative, got %r" % beta))
    try:
        D = int(D)
    except (TypeError, ValueError):
        problems.append(("D", "must be an integer, got %r" % D))
        D = 3
    if D < 2:
        problems.append(("D", "must be at least 2, got %r" % D))
        D = 3
    if mu <= 0:
        problems.append(("mu", "must be positive, got %r" % mu))
        mu = 1.0
    if hbar <= 0:
        problems.append(("hbar", "must be positive, got %r" % hbar))
        hbar = 1.0
    params = None
    if not problems:
        params = spectrum.PotentialParams(a=a, b=b, c=c, beta=beta, D=D)
    consts = spectrum.PhysicalConstants(mu=mu, hbar=hbar)
    return params, consts, {"a": a, "b": b, "c": c, "beta": beta, "D": D,
                            "mu": mu, "hbar": hbar}


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_table(meta: dict, columns: list, rows: list) -> str:
    lines = []
    for key, value in meta.items():
        lines.append("# %s=%s" % (key, _fmt(value)))
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(row.get(col)) for col in columns))
    return "\n".join(lines) + "\n"


def _json_table(meta: dict, rows: list) -> str:
    return json.dumps({"meta": meta, "rows": rows}, indent=2) + "\n"


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

_SPECTRUM_COLUMNS = ["N", "n", "m", "m_prime", "ell_prime", "L", "N_prime",
                     "epsilon", "E", "status"]


def _cmd_spectrum(cfg: dict, problems: list) -> int:
    params, consts, meta_phys = _physics(cfg, problems)
    N_range = _parse_range(cfg.get("N", "0"), "N", problems)
    n_range = _parse_range(cfg.get("n", "0"), "n", problems)
    m_range = _parse_range(cfg.get("m", "0"), "m", problems)
    if problems:
        raise ConfigError(problems)

    rows = []
    for N, n, m in itertools.product(N_range, n_range, m_range):
        q = spectrum.QuantumNumbers(N=N, n=n, m=m)
        try:
            entry = spectrum.energy(params, consts, q)
        except spectrum.FallToCenter:
            rows.append({"N": N, "n": n, "m": m, "m_prime": None,
                         "ell_prime": None, "L": None, "N_prime": None,
                         "epsilon": None, "E": None, "status": "fall-to-center"})
            continue
        eff = entry.eff
        rows.append({"N": N, "n": n, "m": m, "m_prime": eff.m_prime,
                     "ell_prime": eff.ell_prime, "L": eff.L,
                     "N_prime": eff.N_prime, "epsilon": entry.epsilon,
                     "E": entry.E, "status": "ok"})
    rows.sort(key=lambda r: (r["E"] is None, r["E"] if r["E"] is not None else 0.0,
                             r["N"], r["n"], r["m"]))

    meta = {"command": "spectrum", **meta_phys,
            "N": cfg.get("N", "0"), "n": cfg.get("n", "0"), "m": cfg.get("m", "0")}
    if cfg.get("format", "csv") == "json":
        _emit(_json_table(meta, rows), cfg.get("out"))
    else:
        _emit(_csv_table(meta, _SPECTRUM_COLUMNS, rows), cfg.get("out"))
    return 0


# ---------------------------------------------------------------------------
# wavefunction
# ---------------------------------------------------------------------------

def _single_index(cfg, key, problems) -> int:
    values = _parse_range(cfg.get(key, "0"), key, problems)
    if len(values) != 1:
        problems.append((key, "wavefunction needs a single index, got %r" % cfg.get(key)))
        return 0
    return values[0]


def _cmd_wavefunction(cfg: dict, problems: list) -> int:
    params, consts, meta_phys = _physics(cfg, problems)
    N = _single_index(cfg, "N", problems)
    n = _single_index(cfg, "n", problems)
    m = _single_index(cfg, "m", problems)
    nr = int(cfg.get("nr", 100))
    ntheta = int(cfg.get("ntheta", 50))
    if nr < 2:
        problems.append(("nr", "need at least 2 radial samples"))
    if ntheta < 2:
        problems.append(("ntheta", "need at least 2 polar samples"))
    if problems:
        raise ConfigError(problems)

    state = wavefunctions.bound_state(params, consts,
                                      spectrum.QuantumNumbers(N=N, n=n, m=m))
    r_max = cfg.get("r_max")
    if r_max is None:
        power = 2.0 * state.radial.L + 2.0 + 2.0 * N
        r_max = decay_cutoff(power, 2.0 * state.radial.epsilon, drop=1e-12)
    r_max = float(r_max)
    r_grid = np.linspace(0.0, r_max, nr)
    theta_grid = np.linspace(0.0, math.pi, ntheta)

    eff = state.entry.eff
    meta = {"command": "wavefunction", **meta_phys, "N": N, "n": n, "m": m,
            "E": state.entry.E, "epsilon": state.entry.epsilon,
            "m_prime": eff.m_prime, "ell_prime": eff.ell_prime, "L": eff.L,
            "N_prime": eff.N_prime, "C": state.radial.C,
            "angular_norm": state.angular.norm,
            "angular_norm_adjusted": str(state.angular.adjusted).lower(),
            "nr": nr, "ntheta": ntheta, "r_max": r_max,
            "density": "abs(psi)^2 * r^(D-1) * sin(theta)"}
    rows = []
    for r in r_grid:
        dens = state.density(float(r), theta_grid)
        for theta, d in zip(theta_grid, dens):
            rows.append({"r": float(r), "theta": float(theta), "density": float(d)})
    if cfg.get("format", "csv") == "json":
        _emit(_json_table(meta, rows), cfg.get("out"))
    else:
        _emit(_csv_table(meta, ["r", "theta", "density"], rows), cfg.get("out"))
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _cmd_verify(cfg: dict, problems: list) -> int:
    params, consts, meta_phys = _physics(cfg, problems)
    N_range = _parse_range(cfg.get("N", "0"), "N", problems)
    n_range = _parse_range(cfg.get("n", "0"), "n", problems)
    m_range = _parse_range(cfg.get("m", "0"), "m", problems)
    tol = oracle.VerifyTolerances(
        energy_rel=float(cfg.get("tol_energy", 1e-4)),
        lambda_abs=float(cfg.get("tol_lambda", 1e-4)),
        residual_rel=float(cfg.get("tol_residual", 1e-6)))
    n_points = int(cfg.get("points", 1500))
    levels = int(cfg.get("levels", 3))
    offset = float(cfg.get("perturb_energy", 0.0))
    if problems:
        raise ConfigError(problems)

    states = [spectrum.QuantumNumbers(N=N, n=n, m=m)
              for N, n, m in itertools.product(N_range, n_range, m_range)]

    def run(q):
        report = oracle.verify_state(params, consts, q, tol,
                                     n_points=n_points, refinement_levels=levels,
                                     energy_offset=offset)
        return q, report

    if len(states) > 1:
        with ThreadPoolExecutor(max_workers=min(4, len(states))) as pool:
            results = list(pool.map(run, states))
    else:
        results = [run(q) for q in states]
    results.sort(key=lambda item: (item[0].N, item[0].n, item[0].m))

    checks = []
    for q, report in results:
        tag = "N%d_n%d_m%d" % (q.N, q.n, q.m)
        for check in report.checks:
            entry = check.as_dict()
            entry["name"] = "%s.%s" % (tag, entry["name"])
            checks.append(entry)
    all_passed = all(c["status"] == "pass" for c in checks)
    meta = {"command": "verify", **meta_phys,
            "N": cfg.get("N", "0"), "n": cfg.get("n", "0"), "m": cfg.get("m", "0"),
            "tol_energy": tol.energy_rel, "tol_lambda": tol.lambda_abs,
            "tol_residual": tol.residual_rel, "points": n_points,
            "levels": levels, "perturb_energy": offset}
    # the verification report is JSON-first; CSV mirrors the same fields
    if cfg.get("format", "json") == "csv":
        cols = ["name", "status", "value", "target", "tolerance", "error_estimate"]
        _emit(_csv_table(meta, cols, checks), cfg.get("out"))
    else:
        _emit(json.dumps({"meta": meta, "checks": checks}, indent=2) + "\n",
              cfg.get("out"))
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# reduce
# ---------------------------------------------------------------------------

_REL_TOL_REDUCE = 1e-12


def _reduce_rows(case: str, consts, beta_override):
    De_axis = (0.5, 1.0, 2.0)
    re_axis = (0.6, 1.0, 1.4)
    beta_axis = (0.0, 1.0, 2.0) if beta_override is None else (beta_override,)
    rows = []
    if case == "cheng-dai":
        q = spectrum.QuantumNumbers(N=1, n=1, m=1)
        for De, re, beta in itertools.product(De_axis, re_axis, beta_axis):
            general = spectrum.reduce_cheng_dai(De, re, beta, consts, q).E
            literal = spectrum.cheng_dai_literal(De, re, beta, consts, q)
            rows.append({"De": De, "re": re, "beta": beta,
                         "N": q.N, "n": q.n, "m": q.m,
                         "literal": literal, "general": general})
    elif case == "kratzer":
        for De, re, ell in itertools.product(De_axis, re_axis, (0, 1, 2)):
            general = spectrum.reduce_kratzer(De, re, consts, 1, ell).E
            literal = spectrum.kratzer_literal(De, re, consts, 1, ell)
            rows.append({"De": De, "re": re, "ell": ell, "N": 1,
                         "literal": literal, "general": general})
    elif case == "ddim":
        q = spectrum.QuantumNumbers(N=1, n=1, m=1)
        beta = 1.0 if beta_override is None else beta_override
        for De, re, D in itertools.product(De_axis, re_axis, (3, 4, 5)):
            general = spectrum.reduce_ddim(De, re, beta, consts, q, D).E
            literal = spectrum.ddim_literal(De, re, beta, consts, q, D)
            rows.append({"De": De, "re": re, "D": D, "beta": beta,
                         "N": q.N, "n": q.n, "m": q.m,
                         "literal": literal, "general": general})
    elif case == "coulomb-ring":
        # equal N + n + m compositions expose the beta = 0 degeneracy
        q_axis = (spectrum.QuantumNumbers(2, 0, 0),
                  spectrum.QuantumNumbers(1, 1, 0),
                  spectrum.QuantumNumbers(0, 0, 2))
        for Z, beta, q in itertools.product((1.0, 2.0, 3.0), beta_axis, q_axis):
            general = spectrum.reduce_coulomb_ring(Z, 1.0, beta, consts, q).E
            literal = spectrum.coulomb_ring_literal(Z, 1.0, beta, consts, q)
            rows.append({"Z": Z, "beta": beta, "N": q.N, "n": q.n, "m": q.m,
                         "literal": literal, "general": general})
    return rows


def _cmd_reduce(cfg: dict, problems: list) -> int:
    case = cfg.get("case")
    if case not in ("cheng-dai", "kratzer", "ddim", "coulomb-ring"):
        problems.append(("case", "must be one of cheng-dai, kratzer, ddim, "
                                 "coulomb-ring; got %r" % case))
    beta_override = cfg.get("beta")
    if beta_override is not None:
        beta_override = float(beta_override)
        if case == "kratzer" and beta_override != 0.0:
            problems.append(("beta", "must be 0 for the kratzer case (the ring "
                                     "term is absent there)"))
    mu = float(cfg.get("mu", 1.0))
    hbar = float(cfg.get("hbar", 1.0))
    if mu <= 0:
        problems.append(("mu", "must be positive"))
    if hbar <= 0:
        problems.append(("hbar", "must be positive"))
    if problems:
        raise ConfigError(problems)

    consts = spectrum.PhysicalConstants(mu=mu, hbar=hbar)
    rows = _reduce_rows(case, consts, beta_override)

    seed = cfg.get("negative_control")
    if seed is not None:
        # deliberately corrupt one pseudo-randomly chosen literal value so the
        # comparator provably trips; used by the exit-code contract tests
        idx = random.Random(int(seed)).randrange(len(rows))
        rows[idx]["literal"] *= 1.0 + 1e-9

    worst = 0.0
    for row in rows:
        diff = abs(row["literal"] - row["general"])
        row["abs_diff"] = diff
        limit = _REL_TOL_REDUCE * abs(row["general"])
        row["status"] = "ok" if diff <= limit else "mismatch"
        worst = max(worst, diff / abs(row["general"]))

    meta = {"command": "reduce", "case": case, "mu": mu, "hbar": hbar,
            "rel_tol": _REL_TOL_REDUCE, "worst_rel_diff": worst}
    first_cols = [c for c in ("De", "re", "Z", "D", "beta", "ell", "N", "n", "m")
                  if c in rows[0]]
    columns = first_cols + ["literal", "general", "abs_diff", "status"]
    if cfg.get("format", "csv") == "json":
        _emit(_json_table(meta, rows), cfg.get("out"))
    else:
        _emit(_csv_table(meta, columns, rows), cfg.get("out"))
    return 0 if all(r["status"] == "ok" for r in rows) else 1


# ---------------------------------------------------------------------------

_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "wavefunction": _cmd_wavefunction,
    "verify": _cmd_verify,
    "reduce": _cmd_reduce,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    problems: list = []
    cfg = _merge_config(args, problems)
    try:
        return _COMMANDS[args.command](cfg, problems)
    except ConfigError as exc:
        for field_name, message in exc.problems:
            _diagnose("%s: %s" % (field_name, message))
        return 2
    except (spectrum.SpectrumError, oracle.OracleError) as exc:
        _diagnose(str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
