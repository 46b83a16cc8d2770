"""Command-line front end.

Subcommands
-----------
eqmeasure   equilibrium density, Euler-Lagrange constant, regularity check
predict     expansion values per n with the full constant breakdown
oracle      exact extended-precision log-determinants per n
compare     prediction vs oracle with residual decay fit
thinning    thinned-spectrum gap probabilities (optional Monte Carlo)

Configuration is a flat JSON object (see CONFIG_KEYS); command-line flags
override file values. Complex numbers are serialised as {"re":, "im":} and
phases are radians in (-pi, pi]. Exit codes: 0 success, 2 invalid or
hypothesis-violating input, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import predict_log_hankel
from .chebyshev import ChebSeries
from .equilibrium import Potential, equilibrium_measure, rescale
from .errors import ConvergenceError, HankelFHError, RegularityError
from .montecarlo import mc_gap_probability
from .oracle import (
    WeightSpec,
    default_precision_bits,
    oracle_log_det,
    _wrap_phase,
)
from .singularities import Singularity, SingularityConfig, ThinningSpec
from .thinning import gap_probability_log, thinning_to_betas

PRECISION_ENV = "HANKEL_FH_PRECISION"

CONFIG_KEYS = {
    "potential": "ascending monomial coefficients of V (required)",
    "support": "[a, b] original support when not [-1, 1] (optional)",
    "field_cheb": "Chebyshev coefficients of W on the support (optional)",
    "field_poly": "monomial coefficients of W on the support (optional)",
    "singularities": "list of {t, alpha_re, alpha_im, beta_re, beta_im}",
    "n_list": "matrix sizes to evaluate",
    "precision_bits": "oracle working precision (optional)",
    "output_format": "json or csv",
    "seed": "RNG seed for Monte Carlo",
    "mc_samples": "Monte Carlo sample count (0 disables)",
    "thinning_boundaries": "sector boundaries t_1 < ... < t_m",
    "thinning_sectors": "1-based indices of thinned sectors",
    "thinning_s": "removal probabilities, one per thinned sector",
}


class ConfigError(HankelFHError, ValueError):
    pass


@dataclass
class ExperimentConfig:
    potential: list
    support: list = field(default_factory=lambda: [-1.0, 1.0])
    field_cheb: list = field(default_factory=list)
    field_poly: list = field(default_factory=list)
    singularities: list = field(default_factory=list)
    n_list: list = field(default_factory=list)
    precision_bits: int = 0
    output_format: str = "json"
    seed: int = 0
    mc_samples: int = 0
    thinning_boundaries: list = field(default_factory=list)
    thinning_sectors: list = field(default_factory=list)
    thinning_s: list = field(default_factory=list)

    def to_dict(self):
        return {
            "potential": list(self.potential),
            "support": list(self.support),
            "field_cheb": list(self.field_cheb),
            "field_poly": list(self.field_poly),
            "singularities": [dict(s) for s in self.singularities],
            "n_list": list(self.n_list),
            "precision_bits": self.precision_bits,
            "output_format": self.output_format,
            "seed": self.seed,
            "mc_samples": self.mc_samples,
            "thinning_boundaries": list(self.thinning_boundaries),
            "thinning_sectors": list(self.thinning_sectors),
            "thinning_s": list(self.thinning_s),
        }


def _require(cond, key, message):
    if not cond:
        raise ConfigError(f"config key '{key}': {message}")


def parse_config(data) -> ExperimentConfig:
    """Validate a flat config mapping with field-precise errors."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - set(CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    cfg = ExperimentConfig(potential=[])
    _require("potential" in data, "potential", "required")
    pot = data["potential"]
    _require(
        isinstance(pot, list) and len(pot) >= 3 and all(
            isinstance(v, (int, float)) for v in pot
        ),
        "potential",
        "needs a numeric coefficient list of length >= 3",
    )
    cfg.potential = [float(v) for v in pot]
    if "support" in data:
        sup = data["support"]
        _require(
            isinstance(sup, list) and len(sup) == 2 and sup[0] < sup[1],
            "support",
            "needs [a, b] with a < b",
        )
        cfg.support = [float(sup[0]), float(sup[1])]
    for key in ("field_cheb", "field_poly"):
        if key in data:
            vals = data[key]
            _require(
                isinstance(vals, list)
                and all(isinstance(v, (int, float)) for v in vals),
                key,
                "needs a numeric list",
            )
            setattr(cfg, key, [float(v) for v in vals])
    _require(
        not (cfg.field_cheb and cfg.field_poly),
        "field_poly",
        "give the field as Chebyshev or monomial coefficients, not both",
    )
    if "singularities" in data:
        sings = data["singularities"]
        _require(isinstance(sings, list), "singularities", "needs a list")
        parsed = []
        for i, entry in enumerate(sings):
            _require(
                isinstance(entry, dict) and "t" in entry,
                "singularities",
                f"entry {i} needs at least a 't' field",
            )
            allowed = {"t", "alpha_re", "alpha_im", "beta_re", "beta_im"}
            _require(
                set(entry) <= allowed,
                "singularities",
                f"entry {i} has unknown fields {sorted(set(entry) - allowed)}",
            )
            parsed.append({k: float(entry.get(k, 0.0)) for k in allowed})
        cfg.singularities = parsed
    if "n_list" in data:
        ns = data["n_list"]
        _require(
            isinstance(ns, list)
            and all(isinstance(v, int) and v >= 1 for v in ns),
            "n_list",
            "needs a list of integers >= 1",
        )
        cfg.n_list = sorted(set(ns))
    for key, typ in (
        ("precision_bits", int),
        ("seed", int),
        ("mc_samples", int),
    ):
        if key in data:
            _require(isinstance(data[key], int) and data[key] >= 0, key,
                     "needs a non-negative integer")
            setattr(cfg, key, typ(data[key]))
    if "output_format" in data:
        _require(data["output_format"] in ("json", "csv"), "output_format",
                 "must be 'json' or 'csv'")
        cfg.output_format = data["output_format"]
    if "thinning_boundaries" in data:
        cfg.thinning_boundaries = [float(v) for v in data["thinning_boundaries"]]
    if "thinning_sectors" in data:
        cfg.thinning_sectors = [int(v) for v in data["thinning_sectors"]]
    if "thinning_s" in data:
        cfg.thinning_s = [float(v) for v in data["thinning_s"]]
    _require(
        len(cfg.thinning_sectors) == len(cfg.thinning_s),
        "thinning_s",
        "needs one removal probability per thinned sector",
    )
    return cfg


def _c(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


@dataclass
class _Problem:
    """Domain objects built from a config, rescaled to [-1, 1] if needed."""

    V: Potential
    measure: object
    W: ChebSeries
    cfg: SingularityConfig
    rescaled: bool
    log_half_width: float

    def correction(self, n):
        if not self.rescaled:
            return 0.0 + 0.0j
        A = self.cfg.alpha_sum
        return (n * n + n * A) * self.log_half_width


def _build_problem(cfg: ExperimentConfig, with_measure=True) -> _Problem:
    a, b = cfg.support
    t_raw = [s["t"] for s in cfg.singularities]
    rescaled = not (a == -1.0 and b == 1.0)
    if rescaled:
        if cfg.field_poly:
            mid, half = 0.5 * (a + b), 0.5 * (b - a)
            comp = np.polynomial.polynomial.Polynomial(cfg.field_poly)(
                np.polynomial.polynomial.Polynomial([mid, half])
            )
            w_series = ChebSeries.from_monomials(comp.coef)
        elif cfg.field_cheb:
            w_series = ChebSeries(cfg.field_cheb)
        else:
            w_series = ChebSeries.zero()
        res = rescale(Potential(cfg.potential), a, b, w_series, t_raw)
        V, W, ts = res.V, res.W, list(res.t)
        log_half_width = res.log_half_width
    else:
        V = Potential(cfg.potential)
        if cfg.field_poly:
            W = ChebSeries.from_monomials(cfg.field_poly)
        elif cfg.field_cheb:
            W = ChebSeries(cfg.field_cheb)
        else:
            W = ChebSeries.zero()
        ts = t_raw
        log_half_width = 0.0
    order = np.argsort(ts) if ts else []
    sings = tuple(
        Singularity(
            ts[i],
            complex(cfg.singularities[i]["alpha_re"], cfg.singularities[i]["alpha_im"]),
            complex(cfg.singularities[i]["beta_re"], cfg.singularities[i]["beta_im"]),
        )
        for i in order
    )
    sing_cfg = SingularityConfig(sings)
    measure = equilibrium_measure(V) if with_measure else None
    return _Problem(
        V=V,
        measure=measure,
        W=W,
        cfg=sing_cfg,
        rescaled=rescaled,
        log_half_width=log_half_width,
    )


def _precision(cfg: ExperimentConfig, n):
    if cfg.precision_bits:
        return cfg.precision_bits
    env = os.environ.get(PRECISION_ENV)
    if env:
        return int(env)
    return default_precision_bits(n)


# ----------------------------------------------------------------- commands


def cmd_eqmeasure(cfg: ExperimentConfig):
    prob = _build_problem(cfg)
    cert = prob.measure.regularity
    report = {
        "psi_coeffs": [float(c) for c in np.real(prob.measure.psi.coeffs)],
        "ell": prob.measure.ell,
        "certificate": {
            "psi_min_on_support": cert.psi_min_on_support,
            "psi_min_location": cert.psi_min_location,
            "psi_at_endpoints": list(cert.psi_at_endpoints),
            "exterior_margin": cert.exterior_margin,
            "exterior_margin_location": cert.exterior_margin_location,
            "grid_size": cert.grid_size,
            "exterior_grid_size": cert.exterior_grid_size,
            "x_max": cert.x_max,
            "tail_increasing": cert.tail_increasing,
        },
    }
    if prob.rescaled:
        report["rescale"] = {
            "support": list(cfg.support),
            "log_half_width": prob.log_half_width,
        }
    return {"config": cfg.to_dict(), "rows": [], "summary": report}, 0


def _predict_rows(cfg: ExperimentConfig, prob: _Problem):
    rows = []
    for n in cfg.n_list:
        pred = predict_log_hankel(prob.V, prob.measure, prob.W, prob.cfg, n)
        value = pred.value + prob.correction(n)
        coeffs = pred.coefficients
        rows.append(
            {
                "n": n,
                "log_abs": value.real,
                "phase": _wrap_phase(value.imag),
                "error_scale": pred.error_scale,
                "terms": {
                    "C1": _c(coeffs.C1),
                    "C2": _c(coeffs.C2),
                    "C3": _c(coeffs.C3),
                    "C4": _c(coeffs.C4),
                },
                "rescale_correction": _c(prob.correction(n)),
            }
        )
    return rows


def cmd_predict(cfg: ExperimentConfig):
    prob = _build_problem(cfg)
    rows = _predict_rows(cfg, prob)
    summary = {"beta_max": prob.cfg.beta_max}
    return {"config": cfg.to_dict(), "rows": rows, "summary": summary}, 0


def _oracle_payload(cfg: ExperimentConfig, prob: _Problem, n):
    return {
        "v_coeffs": [float(c) for c in prob.V.coeffs],
        "w_coeffs": [float(c) for c in np.real(prob.W.coeffs)],
        "sings": [
            (s.t, s.alpha.real, s.alpha.imag, s.beta.real, s.beta.imag)
            for s in prob.cfg
        ],
        "n": n,
        "precision_bits": _precision(cfg, n),
    }


def _oracle_row(payload):
    """Worker for one exact determinant; takes/returns primitives only."""
    V = Potential(payload["v_coeffs"])
    W = ChebSeries(payload["w_coeffs"])
    sings = tuple(
        Singularity(t, complex(ar, ai), complex(br, bi))
        for (t, ar, ai, br, bi) in payload["sings"]
    )
    ws = WeightSpec(V, W, SingularityConfig(sings), payload["n"])
    result = oracle_log_det(ws, payload["precision_bits"])
    return {
        "n": payload["n"],
        "log_abs": result.log_abs,
        "phase": result.phase,
        "precision_bits": result.precision_bits,
        "method": result.method,
        "converged": result.converged,
        "is_zero": result.is_zero,
    }


def _run_oracle_rows(cfg: ExperimentConfig, prob: _Problem):
    payloads = [_oracle_payload(cfg, prob, n) for n in cfg.n_list]
    rows = None
    if len(payloads) > 1:
        try:
            with ProcessPoolExecutor(
                max_workers=min(len(payloads), os.cpu_count() or 1)
            ) as pool:
                rows = list(pool.map(_oracle_row, payloads))
        except (OSError, RuntimeError):
            rows = None  # fall back to in-process evaluation
    if rows is None:
        rows = [_oracle_row(p) for p in payloads]
    for row in rows:
        corr = prob.correction(row["n"])
        row["log_abs"] += corr.real
        row["phase"] = _wrap_phase(row["phase"] + corr.imag)
        row["rescale_correction"] = _c(corr)
    return sorted(rows, key=lambda r: r["n"])


def cmd_oracle(cfg: ExperimentConfig):
    prob = _build_problem(cfg, with_measure=False)
    rows = _run_oracle_rows(cfg, prob)
    code = 3 if any(not r["converged"] for r in rows) else 0
    return {"config": cfg.to_dict(), "rows": rows, "summary": {}}, code


def _fit_decay(ns, residuals):
    """Least-squares slope of log residual against log n: residual ~ c n^-p."""
    pairs = [(n, r) for n, r in zip(ns, residuals) if r > 0]
    if len(pairs) < 3:
        return None
    x = np.log([p[0] for p in pairs])
    y = np.log([p[1] for p in pairs])
    slope = np.polyfit(x, y, 1)[0]
    return float(-slope)


def cmd_compare(cfg: ExperimentConfig):
    prob = _build_problem(cfg)
    pred_rows = {r["n"]: r for r in _predict_rows(cfg, prob)}
    oracle_rows = _run_oracle_rows(cfg, prob)
    rows = []
    for orc in oracle_rows:
        n = orc["n"]
        pred = pred_rows[n]
        res_abs = abs(pred["log_abs"] - orc["log_abs"])
        res_phase = abs(_wrap_phase(pred["phase"] - orc["phase"]))
        rows.append(
            {
                "n": n,
                "predicted": {"log_abs": pred["log_abs"], "phase": pred["phase"]},
                "oracle": {"log_abs": orc["log_abs"], "phase": orc["phase"]},
                "residual": {"log_abs": res_abs, "phase": res_phase},
                "error_scale": pred["error_scale"],
                "converged": orc["converged"],
                "is_zero": orc["is_zero"],
                "terms": pred["terms"],
            }
        )
    ns = [r["n"] for r in rows]
    fit = _fit_decay(ns, [r["residual"]["log_abs"] for r in rows])
    summary = {
        "decay_exponent": fit,
        "theoretical_exponent": 1.0 - 4.0 * prob.cfg.beta_max,
        "beta_max": prob.cfg.beta_max,
    }
    code = 3 if any(not r["converged"] for r in rows) else 0
    return {"config": cfg.to_dict(), "rows": rows, "summary": summary}, code


def cmd_thinning(cfg: ExperimentConfig):
    prob = _build_problem(cfg)
    spec = ThinningSpec(
        tuple(cfg.thinning_boundaries),
        dict(zip(cfg.thinning_sectors, cfg.thinning_s)),
    )
    is_gaussian = prob.V.degree == 2 and np.allclose(prob.V.coeffs, [0.0, 0.0, 2.0])
    if cfg.mc_samples > 0 and not is_gaussian:
        raise ConfigError(
            "the Monte Carlo reference samples the Gaussian ensemble only; "
            "drop --mc-samples for other potentials"
        )
    tmap = thinning_to_betas(spec)
    rows = []
    for n in cfg.n_list:
        pred = gap_probability_log(prob.V, prob.measure, spec, n)
        row = {
            "n": n,
            "gap_log_probability": pred.value,
            "gap_probability": float(np.exp(pred.value)),
            "error_scale": pred.error_scale,
        }
        if cfg.mc_samples > 0:
            est = mc_gap_probability(spec, n, cfg.mc_samples, cfg.seed)
            row["mc"] = {"estimate": est.estimate, "stderr": est.stderr}
        rows.append(row)
    summary = {
        "betas": [_c(b) for b in tmap.betas],
        "log_prefactor_per_point": tmap.log_prefactor,
    }
    return {"config": cfg.to_dict(), "rows": rows, "summary": summary}, 0


# ------------------------------------------------------------------- output


def _flatten(prefix, value, out):
    if isinstance(value, dict):
        for k, v in sorted(value.items()):
            _flatten(f"{prefix}{k}." if prefix else f"{k}.", v, out)
        return
    out[prefix.rstrip(".")] = value


def _to_csv(result):
    rows = result["rows"]
    buf = io.StringIO()
    if not rows:
        flat = {}
        _flatten("", result.get("summary", {}), flat)
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        for k in sorted(flat):
            writer.writerow([k, flat[k]])
        return buf.getvalue()
    flat_rows = []
    for row in rows:
        flat = {}
        _flatten("", row, flat)
        flat_rows.append(flat)
    headers = sorted({k for fr in flat_rows for k in fr})
    writer = csv.DictWriter(buf, fieldnames=headers, lineterminator="\n")
    writer.writeheader()
    for fr in flat_rows:
        writer.writerow(fr)
    return buf.getvalue()


def _emit(result, cfg, out_path):
    if cfg.output_format == "csv":
        text = _to_csv(result)
    else:
        text = json.dumps(result, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------- main


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="hankel-fh",
        description="Hankel determinant asymptotics with Fisher-Hartwig "
        "singularities: predictions, exact oracles, and thinning "
        "experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("eqmeasure", "equilibrium measure and regularity certificate"),
        ("predict", "asymptotic log-determinants"),
        ("oracle", "exact log-determinants"),
        ("compare", "prediction vs oracle residuals"),
        ("thinning", "thinned-spectrum gap probabilities"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", help="path to a JSON config file")
        p.add_argument("--n", help="comma-separated list of matrix sizes")
        p.add_argument("--precision", type=int, help="oracle precision bits")
        p.add_argument("--format", choices=("json", "csv"), help="output format")
        p.add_argument("--seed", type=int, help="RNG seed")
        p.add_argument("--mc-samples", type=int, help="Monte Carlo samples")
        p.add_argument("--out", help="output path (default stdout)")
    return parser


def _load_config(args) -> ExperimentConfig:
    data = {}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {args.config}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {args.config}:{exc.lineno}: {exc.msg}")
    if args.n:
        try:
            data["n_list"] = [int(v) for v in args.n.split(",") if v]
        except ValueError:
            raise ConfigError("--n needs a comma-separated integer list")
    if args.precision is not None:
        data["precision_bits"] = args.precision
    if args.format:
        data["output_format"] = args.format
    if args.seed is not None:
        data["seed"] = args.seed
    if args.mc_samples is not None:
        data["mc_samples"] = args.mc_samples
    data.setdefault("potential", [0.0, 0.0, 2.0])
    return parse_config(data)


_COMMANDS = {
    "eqmeasure": cmd_eqmeasure,
    "predict": cmd_predict,
    "oracle": cmd_oracle,
    "compare": cmd_compare,
    "thinning": cmd_thinning,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
        result, code = _COMMANDS[args.command](cfg)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except RegularityError as exc:
        print(f"error: condition {exc.condition} violated: {exc}", file=sys.stderr)
        return 2
    except (HankelFHError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(result, cfg, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
