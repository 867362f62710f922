"""Command-line front end: ``bkl`` / ``python -m bergman_levi``.

Commands
--------
eval       kernel and Levi form at one point
levi       Levi form only (finite differences, plus closed forms if known)
probe      Levi form along a geometric path towards a boundary point
reproduce  claim table for one of the six boundary theorems
sweep      grid data for plotting (kernel/Levi grids, slit profile, tail curve)
selftest   oracle cross-checks and identity suites

Output is JSON (a ``header`` holding the full run configuration and a list of
``records``) or CSV with fixed columns.  The JSON header can be fed back with
``--config``.  Output is assembled completely before anything is written, so
a configuration error (exit 2) never leaves a partial file behind.

Exit codes: 0 success, 1 failed claim/check rows, 2 configuration or domain
errors.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .errors import BergmanLeviError
from .families import (
    DELTA,
    Family,
    ThetaSpec,
    bergman_kernel,
    contains,
    FamilyPoint,
    zeta_admissible,
)
from .levi import (
    geometric_path,
    levi_annulus_analytic,
    levi_annulus_exact,
    levi_disc,
    levi_fd,
    levi_slit_boundary,
    probe_limit,
)
from .selftest import run_selftest
from .theorems import (
    ProbeSettings,
    halfstrip_tail_limit,
    reproduce_theorem,
    slit_boundary_value,
    tail_probe,
)

__all__ = ["RunConfig", "ConfigError", "main", "build_parser"]

CSV_COLUMNS = ("family", "zeta_re", "zeta_im", "z_re", "z_im", "kernel", "levi",
               "method", "h", "rich_err", "claim", "target", "pass")
COMMANDS = ("eval", "levi", "probe", "reproduce", "sweep", "selftest")
QUANTITIES = ("kernel", "levi", "slit-profile", "tail")


class ConfigError(ValueError):
    """Bad configuration; maps to exit code 2."""


# ---------------------------------------------------------------------------
# configuration


def parse_complex(text) -> complex:
    """Parse ``0.5``, ``1+2j``, ``1+2i``, ``(1+2j)`` or ``[re, im]``."""
    if isinstance(text, (list, tuple)):
        if len(text) != 2:
            raise ConfigError(f"complex pair must have two entries: {text!r}")
        return complex(float(text[0]), float(text[1]))
    if isinstance(text, (int, float, complex)) and not isinstance(text, bool):
        return complex(text)
    s = str(text).strip().replace(" ", "").replace("i", "j")
    try:
        v = complex(s)
    except ValueError:
        raise ConfigError(f"malformed complex number {text!r}") from None
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise ConfigError(f"complex number must be finite: {text!r}")
    return v


def parse_range(text) -> Optional[List[float]]:
    """``a:b:n`` -> ``[a, b, n]``; ``n = 0`` is an empty axis."""
    if text is None:
        return None
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(f"range must look like start:stop:count, got {text!r}")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(float(parts[2]))
    except ValueError:
        raise ConfigError(f"malformed range {text!r}") from None
    if n < 0:
        raise ConfigError("range count must be >= 0")
    return [a, b, n]


def _axis(spec: Optional[List[float]]) -> List[float]:
    if spec is None:
        return []
    a, b, n = spec
    n = int(n)
    if n == 1:
        return [a]
    return [a + (b - a) * j / (n - 1) for j in range(n)]


@dataclass
class RunConfig:
    """Everything a run depends on; serialises to the JSON output header.

    ``h`` is a single base step or ``None`` (automatic), ``eta`` the offset of
    ``zeta`` from its limit in theorem probes, ``tol`` overrides the claim
    tolerances of the reproduction tables.
    """

    command: str = "eval"
    family: Optional[str] = None
    zeta: Optional[complex] = None
    z: Optional[complex] = None
    theta: List[complex] = field(default_factory=lambda: [1 + 0j])
    target: Optional[complex] = None
    direction: Optional[complex] = None
    start: float = 0.5
    ratio: float = 0.5
    steps: int = 12
    h: Optional[float] = None
    eta: float = 1e-6
    tol: Optional[float] = None
    theorem: Optional[int] = None
    quantity: str = "kernel"
    re: Optional[List[float]] = None
    im: Optional[List[float]] = None
    angles: Optional[List[float]] = None
    workers: Optional[int] = None
    seed: int = 0
    format: str = "json"

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.format!r}")
        if self.family is not None:
            try:
                self.family = Family.parse(self.family).value
            except BergmanLeviError as exc:
                raise ConfigError(str(exc)) from None
        for name in ("zeta", "z", "target", "direction"):
            v = getattr(self, name)
            if v is not None:
                setattr(self, name, parse_complex(v))
        self.theta = [parse_complex(a) for a in (self.theta or [])]
        if not self.theta:
            raise ConfigError("theta needs at least one coefficient")
        if self.h is not None and not (self.h > 0 and math.isfinite(self.h)):
            raise ConfigError("h must be a positive number")
        if not (self.eta > 0 and math.isfinite(self.eta)):
            raise ConfigError("eta must be a positive number")
        if self.tol is not None and not self.tol > 0:
            raise ConfigError("tol must be positive")
        if not (0 < self.ratio < 1) or self.start <= 0 or self.steps < 1:
            raise ConfigError("path needs start > 0, 0 < ratio < 1 and steps >= 1")
        if self.quantity not in QUANTITIES:
            raise ConfigError(f"quantity must be one of {QUANTITIES}")
        for name in ("re", "im", "angles"):
            setattr(self, name, parse_range(getattr(self, name)))
        if self.workers is not None and self.workers < 1:
            raise ConfigError("workers must be >= 1")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return _jsonable(asdict(self))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names - {"tool", "version"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kw = {k: v for k, v in data.items() if k in names}
        if "theta" in kw and kw["theta"] is not None:
            kw["theta"] = list(kw["theta"])
        return cls(**kw).validate()

    @property
    def theta_spec(self) -> ThetaSpec:
        return ThetaSpec(tuple(self.theta))

    def probe_settings(self) -> ProbeSettings:
        return ProbeSettings(eta=self.eta, h=self.h, start=self.start, ratio=self.ratio,
                             steps=self.steps, workers=self.workers, tol=self.tol)


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, complex):
        return [_jsonable(obj.real), _jsonable(obj.imag)]
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return float(obj)


# ---------------------------------------------------------------------------
# commands


def _need(cfg: RunConfig, *names):
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise ConfigError(f"{cfg.command} needs --{' --'.join(missing)}")


def _check_point(cfg: RunConfig):
    try:
        ok = contains(FamilyPoint(cfg.family, cfg.zeta, cfg.z, cfg.theta_spec), delta=DELTA)
    except BergmanLeviError as exc:
        raise ConfigError(str(exc)) from None
    if not ok:
        raise ConfigError(f"z={cfg.z} is not in the {cfg.family} domain for zeta={cfg.zeta}")


def _analytic(family: str, zeta, z, theta):
    """Closed-form Levi values known for the family, or an empty dict."""
    if family == "annulus":
        return {"levi_analytic": levi_annulus_analytic(zeta, z).value,
                "levi_exact": levi_annulus_exact(zeta, z).value}
    if family == "disc":
        return {"levi_analytic": levi_disc(zeta, z, theta).value}
    return {}


def _point_record(cfg: RunConfig, with_kernel: bool) -> dict:
    _need(cfg, "family", "zeta", "z")
    _check_point(cfg)
    th = cfg.theta_spec
    try:
        rec = {"family": cfg.family, "zeta": cfg.zeta, "z": cfg.z}
        if with_kernel:
            rec["kernel"] = bergman_kernel(cfg.family, cfg.zeta, cfg.z, th)
        est = levi_fd(cfg.family, cfg.zeta, cfg.z, th, h=cfg.h)
        rec.update(levi_fd=est.value, h=est.h, richardson_error=est.richardson_error,
                   method=est.method)
        rec.update(_analytic(cfg.family, cfg.zeta, cfg.z, th))
    except BergmanLeviError as exc:
        raise ConfigError(f"{type(exc).__name__}: {exc}") from None
    return rec


def cmd_eval(cfg: RunConfig):
    return [_point_record(cfg, True)], 0


def cmd_levi(cfg: RunConfig):
    return [_point_record(cfg, False)], 0


def cmd_probe(cfg: RunConfig):
    _need(cfg, "family", "zeta", "target", "direction")
    if not zeta_admissible(cfg.family, cfg.zeta, DELTA):
        raise ConfigError(f"zeta={cfg.zeta} is not admissible for {cfg.family}")
    path = geometric_path(cfg.family, cfg.zeta, cfg.target, cfg.direction, cfg.start,
                          cfg.ratio, cfg.steps, "probe", cfg.theta_spec)
    try:
        rep = probe_limit(path, h_schedule=cfg.h, workers=cfg.workers)
    except BergmanLeviError as exc:
        raise ConfigError(f"{type(exc).__name__}: {exc}") from None
    recs = []
    used = iter(rep.estimates)
    for j, (zeta, z, d) in enumerate(zip(path.zeta_path, path.z_path, path.distances)):
        rec = {"family": cfg.family, "zeta": zeta, "z": z, "distance": d}
        if j in rep.skipped:
            rec.update(levi_fd=math.nan, method="FD", note="skipped")
        else:
            e = next(used)
            rec.update(levi_fd=e.value, h=e.h, richardson_error=e.richardson_error,
                       method=e.method)
        recs.append(rec)
    recs.append({"family": cfg.family, "zeta": cfg.zeta, "z": cfg.target, "claim": "fit",
                 "estimate": math.inf if rep.diverged else rep.fitted_limit,
                 "diverged": rep.diverged, "order": rep.fitted_order,
                 "order_stderr": rep.slope_stderr, "limit_error": rep.limit_error})
    return recs, 0


def _claim_record(row) -> dict:
    return {"theorem": row.theorem, "claim": row.claim, "family": row.family,
            "description": row.description, "zeta": row.zeta,
            "z": row.z if cmath.isfinite(row.z) else [row.z.real, "inf"],
            "kind": row.kind, "target": row.target, "estimate": row.estimate,
            "diverged": row.diverged, "order": row.order, "tol": row.tol,
            "pass": row.passed, "note": row.note}


def cmd_reproduce(cfg: RunConfig):
    if cfg.theorem is None or cfg.theorem not in range(1, 7):
        raise ConfigError("reproduce needs --theorem N with N in 1..6")
    rows = reproduce_theorem(cfg.theorem, cfg.probe_settings())
    recs = [_claim_record(r) for r in rows]
    return recs, 0 if all(r.passed for r in rows) else 1


def cmd_selftest(cfg: RunConfig):
    rows = run_selftest(cfg.seed)
    recs = [{"claim": r.name, "estimate": r.error, "target": 0.0, "tol": r.tol,
             "pass": r.passed} for r in rows]
    return recs, 0 if all(r.passed for r in rows) else 1


def _grid_record(cfg, th, zeta, z):
    rec = {"family": cfg.family, "zeta": zeta, "z": z}
    try:
        if not contains(FamilyPoint(cfg.family, zeta, z, th), delta=DELTA):
            raise ValueError("point outside the domain")
        if cfg.quantity == "kernel":
            rec["kernel"] = bergman_kernel(cfg.family, zeta, z, th)
        else:
            e = levi_fd(cfg.family, zeta, z, th, h=cfg.h)
            rec.update(levi_fd=e.value, h=e.h, richardson_error=e.richardson_error,
                       method=e.method)
        rec["pass"] = True
    except (ArithmeticError, ValueError) as exc:
        rec.update(skipped=True, note=f"{type(exc).__name__}: {exc}")
        rec["pass"] = False
    return rec


def _profile_record(cfg, st, phi):
    zeta = 1.0 - st.eta
    rec = {"family": "slit", "zeta": zeta, "z": cmath.exp(1j * phi), "angle": phi,
           "claim": "slit.profile"}
    try:
        rep = slit_boundary_value(phi, st)
        rec.update(estimate=math.inf if rep.diverged else rep.fitted_limit,
                   diverged=rep.diverged, order=rep.fitted_order, method="FD")
    except (ArithmeticError, ValueError) as exc:
        rec.update(estimate=math.nan, diverged=False, skipped=True,
                   note=f"{type(exc).__name__}: {exc}")
    try:
        rec["target"] = levi_slit_boundary(phi)
    except (ArithmeticError, ValueError):
        rec["target"] = math.inf
    tol = 1e-3 if st.tol is None else st.tol
    rec["pass"] = bool(math.isfinite(rec["estimate"]) and math.isfinite(rec["target"])
                       and abs(rec["estimate"] - rec["target"]) <= tol)
    return rec


def _tail_record(cfg, st, x):
    rec = {"family": "halfstrip", "zeta": 1.0 + st.eta, "z": [x, "inf"], "claim": "tail"}
    if not 0.0 < x < 1.0:
        rec.update(estimate=math.nan, target=math.nan, skipped=True,
                   note="Re z must lie in (0, 1)")
        rec["pass"] = False
        return rec
    rep = tail_probe(x, st)
    target = halfstrip_tail_limit(x)
    tol = 1e-3 if st.tol is None else st.tol
    rec.update(estimate=rep.fitted_limit, target=target, diverged=rep.diverged,
               order=rep.fitted_order, method="FD")
    rec["pass"] = bool(not rep.diverged and abs(rep.fitted_limit - target) <= tol)
    return rec


def cmd_sweep(cfg: RunConfig):
    st = cfg.probe_settings()
    if cfg.quantity == "slit-profile":
        return [_profile_record(cfg, st, a) for a in _axis(cfg.angles)], 0
    if cfg.quantity == "tail":
        return [_tail_record(cfg, st, x) for x in _axis(cfg.re)], 0
    _need(cfg, "family", "zeta")
    th = cfg.theta_spec
    xs, ys = _axis(cfg.re), _axis(cfg.im)
    if cfg.re is not None and cfg.im is None:
        ys = [0.0]
    if cfg.im is not None and cfg.re is None:
        xs = [0.0]
    # row-major: the real part is the slow index
    return [_grid_record(cfg, th, cfg.zeta, complex(x, y)) for x in xs for y in ys], 0


_DISPATCH = {"eval": cmd_eval, "levi": cmd_levi, "probe": cmd_probe,
             "reproduce": cmd_reproduce, "sweep": cmd_sweep, "selftest": cmd_selftest}


# ---------------------------------------------------------------------------
# output


def _csv_value(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


def _split(v):
    if v is None:
        return None, None
    if isinstance(v, list):
        return v[0], v[1]
    v = complex(v)
    return v.real, v.imag


def to_csv_rows(records: Sequence[dict]) -> List[List[str]]:
    rows = []
    for r in records:
        zr, zi = _split(r.get("zeta"))
        xr, xi = _split(r.get("z"))
        levi = r.get("levi_fd", r.get("estimate"))
        vals = {"family": r.get("family"), "zeta_re": zr, "zeta_im": zi, "z_re": xr,
                "z_im": xi, "kernel": r.get("kernel"), "levi": levi,
                "method": r.get("method"), "h": r.get("h"),
                "rich_err": r.get("richardson_error"), "claim": r.get("claim"),
                "target": r.get("target"), "pass": r.get("pass")}
        rows.append([_csv_value(vals[c]) for c in CSV_COLUMNS])
    return rows


def render(cfg: RunConfig, records: Sequence[dict]) -> str:
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        w.writerows(to_csv_rows(records))
        return buf.getvalue()
    header = {"tool": "bergman_levi", "version": __version__}
    header.update(cfg.to_dict())
    doc = {"header": header, "records": _jsonable(list(records))}
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("run options")
    g.add_argument("--format", choices=("json", "csv"), default=None)
    g.add_argument("--out", default=None, help="output file (default: stdout)")
    g.add_argument("--config", default=None, help="JSON config (a previous output header)")
    g.add_argument("--h", type=float, default=None, help="finite-difference base step")
    g.add_argument("--eta", type=float, default=None,
                   help="offset of zeta from its limit in theorem probes")
    g.add_argument("--tol", type=float, default=None, help="claim tolerance override")
    g.add_argument("--workers", type=int, default=None)

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--family", default=None, choices=[f.value for f in Family])
    point.add_argument("--zeta", default=None)
    point.add_argument("--theta", default=None,
                       help="comma separated coefficients a_1,a_2,... of Re(sum a_n zeta^n)")

    p = argparse.ArgumentParser(prog="bkl", description="Bergman kernels of planar "
                                "domain families and the Levi form of log K in the parameter.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    for name, hlp in (("eval", "kernel and Levi form at a point"),
                      ("levi", "Levi form at a point")):
        s = sub.add_parser(name, parents=[common, point], help=hlp)
        s.add_argument("--z", default=None)

    s = sub.add_parser("probe", parents=[common, point], help="Levi form along a path")
    s.add_argument("--target", default=None, help="boundary point approached")
    s.add_argument("--direction", default=None, help="direction from the target into the domain")
    s.add_argument("--start", type=float, default=None)
    s.add_argument("--ratio", type=float, default=None)
    s.add_argument("--steps", type=int, default=None)

    s = sub.add_parser("reproduce", parents=[common], help="theorem claim table")
    s.add_argument("--theorem", type=int, default=None)
    s.add_argument("--steps", type=int, default=None)

    s = sub.add_parser("sweep", parents=[common, point], help="grid data")
    s.add_argument("--quantity", choices=QUANTITIES, default=None)
    s.add_argument("--re", default=None, help="start:stop:count for Re z")
    s.add_argument("--im", default=None, help="start:stop:count for Im z")
    s.add_argument("--angles", default=None, help="start:stop:count for the slit profile")

    sub.add_parser("selftest", parents=[common], help="oracle and identity checks")
    return p


def config_from_args(ns: argparse.Namespace, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    base: Dict[str, Any] = {}
    if getattr(ns, "config", None):
        try:
            with open(ns.config, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {ns.config!r}: {exc}") from None
        if isinstance(data, dict) and "header" in data:
            data = data["header"]
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        base = {k: v for k, v in data.items() if k not in ("tool", "version")}
    if "BKL_SEED" in environ:
        try:
            base["seed"] = int(environ["BKL_SEED"])
        except ValueError:
            raise ConfigError(f"BKL_SEED must be an integer, got {environ['BKL_SEED']!r}") from None
    base["command"] = ns.command
    names = {f.name for f in fields(RunConfig)}
    for k, v in vars(ns).items():
        if k in names and v is not None and k != "command":
            base[k] = v
    if isinstance(base.get("theta"), str):
        base["theta"] = [t for t in base["theta"].split(",") if t.strip()]
    try:
        return RunConfig.from_dict(base)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        records, code = _DISPATCH[cfg.command](cfg)
        text = render(cfg, records)
    except ConfigError as exc:
        print(f"bkl: error: {exc}", file=sys.stderr)
        return 2
    out = getattr(ns, "out", None)
    if out:
        tmp = out + ".tmp"
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
