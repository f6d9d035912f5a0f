"""Command-line front end.

Each command builds one or more verification reports, prints a short table,
and optionally writes the fixed-column CSV summary and the JSON report.
The exit code is 0 when every report passed, 1 when any failed or lies
outside the theorem's scope, and 2 on usage errors.

Examples
--------
::

    th-det bogc --symbol '{"form":"log-coeffs","entries":{"1":[0.3,0],"-1":[0.3,0]}}' \\
        --realization I --N 8
    th-det shifted --symbol sym.json --k 2 --sign + --N 10
    th-det mc --ensemble oplus --symbol '{"form":"coeffs","entries":{"1":[1,0],"-1":[1,0]}}' \\
        --lambda 0.3 --N 4 --samples 200000 --seed 7
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from dataclasses import dataclass, field

import numpy as np

from .constants import CONVENTIONS, szego_constants
from .determinants import LogDet, det_lu
from .ensemble import NORMALIZATIONS, verify_cue_identity, verify_oplus_identity
from .errors import SymbolSpecError, ToeplitzHankelError
from .generalm import PerturbationVector, check_compatibility, k_of_tn, random_trig_poly
from .identities import (
    ASYMPTOTIC_TOL,
    EXACT_TOL,
    SHIFTED_TOL,
    predict_shifted,
    verify_bogc_even,
    verify_bogc_general,
    verify_szego,
)
from .operators import REALIZATIONS, Realization, m_section, shifted_section
from .precise import verify_szego_mp
from .reports import VerificationReport, reports_to_csv, reports_to_json, symbol_hash
from .symbol import symbol_from_spec

__all__ = ["RunConfig", "parse_symbol_spec", "build_parser", "run", "main"]

COMMANDS = ("constants", "det", "bogc", "szego", "shifted", "general", "mc")


class UsageError(Exception):
    """Bad or missing flag; maps to exit code 2."""


@dataclass
class RunConfig:
    command: str
    symbol: str | None = None
    realization: str | None = None
    k: int | None = None
    sign: int | None = None
    N: int | None = None
    N_list: list = field(default_factory=list)
    tol: float | None = None
    seed: int = 0
    samples: int = 200_000
    lam: float = 0.0
    x: str | None = None
    ensemble: str = "cue"
    normalization: str = "halved_first_row"
    convention: str = "from_n0"
    precision: str = "double"
    dps: int = 50
    instances: int = 50

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        needs_symbol = self.command != "general"
        if needs_symbol and not self.symbol:
            raise UsageError(f"--symbol is required for {self.command}")
        if self.command in ("det", "shifted", "general", "mc") and self.N is None:
            raise UsageError(f"--N is required for {self.command}")
        if self.command == "shifted" and (self.k is None or self.sign is None):
            raise UsageError("--k and --sign are required for shifted")
        if self.command == "szego" and not self.N_list:
            raise UsageError("--N-list is required for szego")
        if self.command == "bogc" and self.N is None and not self.N_list:
            raise UsageError("--N or --N-list is required for bogc")
        if any(b <= a for a, b in zip(self.N_list, self.N_list[1:])):
            raise UsageError("--N-list must be strictly increasing")
        if self.N is not None and self.N < 1 or any(n < 1 for n in self.N_list):
            raise UsageError("--N values must be positive")
        if self.samples < 2:
            raise UsageError("--samples must be at least 2")
        if self.realization is not None and self.realization.lower() != "all":
            Realization.parse(self.realization)


def _read_text(text):
    """Inline JSON, or the contents of a file when ``text`` names one."""
    stripped = text.strip()
    if not stripped.startswith("{") and os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            return fh.read()
    return text


def parse_symbol_spec(text):
    """Parse a symbol given as JSON text or as a path to a JSON file."""
    return symbol_from_spec(_read_text(text))


def _log_symbol_of_spec(text):
    """The exact logarithm when the JSON symbol uses the ``log-coeffs`` form, else ``None``."""
    spec = json.loads(_read_text(text))
    if spec.get("form") != "log-coeffs":
        return None
    return symbol_from_spec(dict(spec, form="coeffs"))


def _realizations(cfg):
    if cfg.realization is None or cfg.realization.lower() == "all":
        return list(REALIZATIONS)
    return [Realization.parse(cfg.realization)]


def _parse_sign(text):
    text = str(text).strip()
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")


def _parse_n_list(text):
    try:
        return [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad N list {text!r}") from None


def build_parser():
    p = argparse.ArgumentParser(prog="th-det", description="Toeplitz+Hankel determinant identities.")
    p.add_argument("command", nargs="?", choices=COMMANDS)
    p.add_argument("--symbol", help="symbol JSON or path to a JSON file")
    p.add_argument("--realization", help="I, II, III, IV or all")
    p.add_argument("--k", type=int)
    p.add_argument("--sign", type=_parse_sign)
    p.add_argument("--N", type=int)
    p.add_argument("--N-list", dest="N_list", type=_parse_n_list, default=[])
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--x", help='perturbation vector JSON {"x": [[re, im], ...]}')
    p.add_argument("--ensemble", choices=("cue", "oplus"), default="cue")
    p.add_argument("--normalization", choices=NORMALIZATIONS, default="halved_first_row")
    p.add_argument("--convention", choices=CONVENTIONS, default="from_n0")
    p.add_argument("--precision", choices=("double", "extended"), default="double",
                   help="szego only; extended needs a log-coeffs symbol")
    p.add_argument("--dps", type=int, default=50)
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--csv", help="write the CSV summary here")
    p.add_argument("--json", help="write the JSON report here")
    p.add_argument("--config", help="JSON array of run configurations")
    return p


_CONFIG_KEYS = {f for f in RunConfig.__dataclass_fields__}


def _config_from_namespace(ns):
    return RunConfig(**{k: getattr(ns, k) for k in _CONFIG_KEYS if hasattr(ns, k)})


def _config_from_dict(d):
    d = dict(d)
    if "lambda" in d:
        d["lam"] = d.pop("lambda")
    if "sign" in d and d["sign"] is not None:
        d["sign"] = _parse_sign(d["sign"])
    unknown = set(d) - _CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    if "command" not in d:
        raise UsageError("config entry without 'command'")
    return RunConfig(**d)


# command implementations ---------------------------------------------------

def _constants_rows(cfg):
    a = parse_symbol_spec(cfg.symbol)
    rows = []
    for r in _realizations(cfg):
        for name, value in szego_constants(a, r).as_dict().items():
            if value is not None:
                rows.append((f"{name}[{r}]" if cfg.realization in (None, "all") else name, value))
    return rows


def _run_det(cfg, a):
    """Dense LU determinant cross-checked against numpy's slogdet."""
    out = []
    tol = cfg.tol or EXACT_TOL
    if cfg.k is not None:
        mats = [("Shifted", shifted_section(a, cfg.N, cfg.k, cfg.sign or 1))]
    else:
        mats = [(str(r), m_section(a, cfg.N, r)) for r in _realizations(cfg)]
    for label, m in mats:
        lhs = det_lu(m)
        sgn, logabs = np.linalg.slogdet(m)
        rhs = LogDet.zero() if sgn == 0 else LogDet(float(logabs), float(np.angle(sgn)))
        rel = lhs.rel_err(rhs)
        ok = bool(rel <= tol) or (lhs.zero_flag and _negligible(m, sgn, logabs))
        out.append(VerificationReport("det", lhs, rhs, rel, ok,
                                      {"N": cfg.N, "realization": label, "k": cfg.k,
                                       "sign": cfg.sign, "tolerance": tol}))
    return out


def _negligible(m, sgn, logabs):
    """``|det| <= 1e-12 * prod of row norms``, the scale-aware meaning of a zero determinant."""
    if sgn == 0:
        return True
    return bool(logabs <= np.log(1e-12) + np.sum(np.log(np.linalg.norm(m, axis=1))))


def _run_bogc(cfg, a):
    ns = cfg.N_list or [cfg.N]
    out = []
    for r in _realizations(cfg):
        for n in ns:
            if a.is_even():
                out.append(verify_bogc_even(a, n, r, tol=cfg.tol or EXACT_TOL))
            else:
                out.append(verify_bogc_general(a, n, r, tol=cfg.tol or 1e-9))
    return out


def _run_szego(cfg, a):
    tol = cfg.tol or ASYMPTOTIC_TOL
    out = []
    b = _log_symbol_of_spec(cfg.symbol) if cfg.precision == "extended" else None
    if cfg.precision == "extended" and b is None:
        raise UsageError("--precision extended needs a symbol in log-coeffs form")
    for r in _realizations(cfg):
        if b is not None:
            out.extend(verify_szego_mp(b, r, cfg.N_list, tol=tol, dps=cfg.dps))
        else:
            out.extend(verify_szego(a, r, cfg.N_list, tol=tol))
    return out


def _run_shifted(cfg, a):
    return [predict_shifted(a, cfg.k, cfg.sign, cfg.N, convention=cfg.convention,
                            tol=cfg.tol or SHIFTED_TOL)]


def _run_general(cfg):
    """Random compatibility instances plus the row-support property of ``K(t^n)``."""
    x = PerturbationVector.from_json(_read_text(cfg.x)) if cfg.x else PerturbationVector.unit(0)
    tol = cfg.tol or 1e-12
    rng = np.random.default_rng(cfg.seed)
    out = []
    for i in range(cfg.instances):
        da, db, dc = (int(v) for v in rng.integers(0, 5, size=3))
        a = random_trig_poly(rng, da, "minus")
        b = random_trig_poly(rng, db)
        c = random_trig_poly(rng, dc, "even")
        dev = check_compatibility(x, a, b, c, cfg.N)
        out.append(_deviation_report("general", dev, tol, {"N": cfg.N, "instance": i, "check": "compatibility"}))
    for n in range(0, min(16, cfg.N - 1) + 1):
        k = k_of_tn(x, n, cfg.N)
        dev = float(np.max(np.abs(k[n:, :]))) if n < cfg.N else 0.0
        out.append(_deviation_report("general", dev, 0.0, {"N": cfg.N, "n": n, "check": "row_support"}))
    return out


def _deviation_report(command, dev, tol, params):
    """Report for a quantity that should vanish: ``lhs = dev``, ``rhs = 0``."""
    lhs = LogDet.from_complex(dev)
    return VerificationReport(command, lhs, LogDet.zero(), dev, bool(dev <= tol),
                              dict(params, tolerance=tol))


def _run_mc(cfg, f):
    if cfg.ensemble == "cue":
        return [verify_cue_identity(f, cfg.lam, cfg.N, cfg.samples, cfg.seed)]
    return [verify_oplus_identity(f, cfg.lam, cfg.N, cfg.samples, cfg.seed, cfg.normalization)]


def execute(cfg):
    """Run one validated configuration and return its reports (``constants`` returns none)."""
    cfg.validate()
    if cfg.command == "general":
        return _run_general(cfg)
    a = parse_symbol_spec(cfg.symbol)
    runner = {"det": _run_det, "bogc": _run_bogc, "szego": _run_szego,
              "shifted": _run_shifted, "mc": _run_mc}[cfg.command]
    reports = runner(cfg, a)
    digest = symbol_hash(a)
    for rep in reports:
        rep.params.setdefault("symbol_hash", digest)
    return reports


def _print_table(reports, stream):
    stream.write(f"{'command':<9}{'realization':<26}{'N':>5}  {'rel_err':>11}  passed\n")
    for r in reports:
        p = r.params
        label = p.get("realization") or p.get("check") or p.get("ensemble") or ""
        n = p.get("N", "")
        passed = "n/a" if r.passed is None else ("yes" if r.passed else "NO")
        stream.write(f"{r.command:<9}{label!s:<26}{n!s:>5}  {r.rel_err:>11.3e}  {passed}")
        if r.notes:
            stream.write(f"  ({r.notes})")
        stream.write("\n")


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def run(argv, stdout=None, stderr=None):
    """Execute the CLI with ``argv`` (without the program name); returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if ns.config:
            entries = json.loads(_read_text(ns.config))
            if not isinstance(entries, list):
                raise UsageError("--config must hold a JSON array")
            configs = [_config_from_dict(e) for e in entries]
        elif ns.command is None:
            raise UsageError("a command or --config is required")
        else:
            configs = [_config_from_namespace(ns)]
        for cfg in configs:
            cfg.validate()
    except (UsageError, argparse.ArgumentTypeError, TypeError, ValueError) as exc:
        stderr.write(f"th-det: usage error: {exc}\n")
        return 2

    reports = []
    try:
        for cfg in configs:
            if cfg.command == "constants":
                stdout.write("name,re,im\n")
                for name, value in _constants_rows(cfg):
                    stdout.write(f"{name},{value.real!r},{value.imag!r}\n")
                continue
            reports.extend(execute(cfg))
    except (UsageError, SymbolSpecError) as exc:
        stderr.write(f"th-det: usage error: {exc}\n")
        return 2
    except ToeplitzHankelError as exc:
        origin = os.path.splitext(os.path.basename(traceback.extract_tb(exc.__traceback__)[-1].filename))[0]
        stderr.write(f"th-det: error in {origin}: {type(exc).__name__}: {exc}\n")
        return 1

    if reports:
        _print_table(reports, stdout)
    if ns.csv:
        _write(ns.csv, reports_to_csv(reports))
    if ns.json:
        _write(ns.json, reports_to_json(reports))
    return 0 if all(r.passed is True for r in reports) else 1


def main():
    sys.exit(run(sys.argv[1:]))
