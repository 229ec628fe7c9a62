"""Command-line experiment runner.

Each subcommand builds a scenario from flags (optionally seeded from a
``key=value`` config file; explicit flags win), runs one estimator and
writes CSV artifacts plus a JSON sidecar with the resolved configuration.
Seeding is explicit: every run requires ``--seed`` and re-running the
same configuration reproduces the CSV bytes exactly, independent of
``--threads``.

Exit codes: 0 success, 2 configuration error, 3 runtime estimator error
(the error name is printed on stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .errors import AdglabError
from .gains import (
    adg_from_kappa,
    adg_horizontal_shift,
    adg_table_to_csv,
    ergodic_rate_from_adg,
    ergodic_rate_mc,
    mean_sinr_mc,
    outage_slope,
)
from .geometry import Window
from .point_process import (
    MaternCluster,
    MaternHardCore,
    Poisson,
    TriangularLattice,
    empirical_contact_ccdf,
    intensity_of,
    pattern_to_csv,
    sample,
)
from .ppp import ppp_success_rayleigh
from .propagation import Composite, LogNormal, Nakagami, PathLoss
from .sinr import (
    Scenario,
    SuccessCurve,
    curve_to_csv,
    estimate_kappa,
    estimate_success_curve,
    noise_from_mean_snr_db,
)

EXPERIMENTS = {
    "sample-pp": "draw one point pattern and dump it as x,y rows",
    "success-curve": "estimate P(SINR > theta) over a threshold grid",
    "adg": "asymptotic deployment gain vs the Poisson baseline",
    "slope": "asymptotic outage slope in dB per decade",
    "rate": "average ergodic rate E[ln(1+SINR)] in nats",
    "mean-sinr": "mean SINR (non-singular path loss only)",
    "contact-ccdf": "empirical contact-distance CCDF",
    "kappa": "asymptotic outage coefficient kappa with stderr",
}


def _version_string() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=5,
        )
        if out.returncode == 0 and out.stdout.strip():
            return f"{__version__}+g{out.stdout.strip()}"
    except OSError:
        pass
    return __version__


def _add_scenario_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("scenario")
    g.add_argument("--process", choices=["ppp", "mcp", "mhp", "lattice"], default="ppp")
    g.add_argument("--lam", type=float, default=0.1, help="intensity for ppp/lattice (pts/m^2)")
    g.add_argument("--parent-lam", type=float, default=0.01, help="mcp parent intensity")
    g.add_argument("--mean-daughters", type=float, default=10.0, help="mcp mean cluster size")
    g.add_argument("--cluster-radius", type=float, default=5.0, help="mcp cluster radius (m)")
    g.add_argument("--base-lam", type=float, default=0.263, help="mhp base intensity")
    g.add_argument("--hardcore-radius", type=float, default=1.7, help="mhp hard-core radius (m)")
    g.add_argument(
        "--fading", choices=["rayleigh", "nakagami", "lognormal", "composite"], default="rayleigh"
    )
    g.add_argument("--m", type=float, default=1.0, help="Nakagami shape (nakagami/composite)")
    g.add_argument("--sigma", type=float, default=2.0, help="shadowing std dev in dB")
    g.add_argument("--path-loss", choices=["nonsingular", "singular"], default="nonsingular")
    g.add_argument("--alpha", type=float, default=4.0, help="path loss exponent (> 2)")
    g.add_argument("--noise-w", type=float, default=0.0, help="noise power W")
    g.add_argument(
        "--snr-db", type=float, default=None,
        help="mean SNR at unit distance in dB; overrides --noise-w",
    )
    g.add_argument("--window-width", type=float, default=100.0)
    g.add_argument("--window-height", type=float, default=100.0)
    g.add_argument("--topology", choices=["torus", "plane-with-guard"], default="torus")
    g.add_argument("--seed", type=int, required=True, help="RNG seed (no wall-clock seeding)")
    r = p.add_argument_group("run control")
    r.add_argument("--n", type=int, default=None, help="Monte Carlo sample count")
    r.add_argument(
        "--probes-per-pattern", type=int, default=1,
        help="probe locations per pattern (>1 is faster but samples are correlated "
        "and confidence intervals lose their guarantee)",
    )
    r.add_argument(
        "--threads", type=int, default=None,
        help="worker processes (default: ADGLAB_THREADS or 1); results do not depend on it",
    )
    r.add_argument("--out", type=str, default=None, help="output CSV path")
    r.add_argument("--config", type=str, default=None, help="key=value defaults file")


def _add_theta_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("threshold grid (dB)")
    g.add_argument("--theta-start", type=float, default=-40.0)
    g.add_argument("--theta-stop", type=float, default=20.0)
    g.add_argument("--theta-step", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adglab",
        description="SINR / outage / deployment-gain experiments for cellular "
        "networks whose base stations follow Poisson, Matérn cluster, Matérn "
        "hard-core or triangular-lattice models.",
    )
    parser.add_argument("--version", action="version", version=f"adglab {_version_string()}")
    sub = parser.add_subparsers(dest="experiment", required=True)

    sp = {}
    for name, descr in EXPERIMENTS.items():
        sp[name] = sub.add_parser(name, help=descr, description=descr)
        _add_scenario_args(sp[name])

    _add_theta_args(sp["success-curve"])
    sp["success-curve"].add_argument(
        "--analytic", action="store_true",
        help="emit the analytic Poisson/Rayleigh/singular curve instead of sampling",
    )

    _add_theta_args(sp["adg"])
    sp["adg"].add_argument("--method", choices=["kappa", "shift", "both"], default="both")
    sp["adg"].add_argument("--p-lo", type=float, default=0.99, help="shift window lower p_t")
    sp["adg"].add_argument("--p-hi", type=float, default=0.9999, help="shift window upper p_t")

    _add_theta_args(sp["slope"])
    sp["slope"].add_argument("--fit-lo", type=float, default=-30.0, help="fit range lower edge, dB")
    sp["slope"].add_argument("--fit-hi", type=float, default=-15.0, help="fit range upper edge, dB")

    sp["rate"].add_argument(
        "--g-hat", type=float, default=None,
        help="also emit the ADG-shift approximation for this gain value",
    )

    sp["contact-ccdf"].add_argument("--r-max", type=float, default=15.0)
    sp["contact-ccdf"].add_argument("--r-step", type=float, default=0.5)
    return parser


def _read_config_file(path: str) -> list[str]:
    """Turn key=value lines into an argv fragment (flags still override)."""
    args: list[str] = []
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        flag = "--" + key.replace("_", "-")
        if value.lower() in ("true", "yes"):
            args.append(flag)
        elif value.lower() in ("false", "no"):
            pass
        else:
            args.extend([flag, value])
    return args


def _apply_config_file(argv: list[str]) -> list[str]:
    if "--config" not in argv:
        return argv
    path = argv[argv.index("--config") + 1]
    # insert the file's flags right after the subcommand so that explicit
    # command-line flags (later occurrences) override them
    return argv[:1] + _read_config_file(path) + argv[1:]


def _build_process(opts):
    if opts.process == "ppp":
        return Poisson(opts.lam)
    if opts.process == "mcp":
        return MaternCluster(opts.parent_lam, opts.mean_daughters, opts.cluster_radius)
    if opts.process == "mhp":
        return MaternHardCore(opts.base_lam, opts.hardcore_radius)
    return TriangularLattice(opts.lam)


def _build_fading(opts):
    if opts.fading == "rayleigh":
        return Nakagami(1.0)
    if opts.fading == "nakagami":
        return Nakagami(opts.m)
    if opts.fading == "lognormal":
        return LogNormal(opts.sigma)
    return Composite(opts.m, opts.sigma)


def _fading_label(opts) -> str:
    if opts.fading == "rayleigh":
        return "rayleigh"
    if opts.fading == "nakagami":
        return f"nakagami({opts.m:g})"
    if opts.fading == "lognormal":
        return f"lognormal({opts.sigma:g})"
    return f"composite({opts.m:g},{opts.sigma:g})"


def _build_scenario(opts) -> Scenario:
    path = PathLoss(opts.path_loss, opts.alpha)
    noise = opts.noise_w
    if opts.snr_db is not None:
        noise = noise_from_mean_snr_db(path, opts.snr_db)
    window = Window(opts.window_width, opts.window_height, opts.topology)
    return Scenario(
        process=_build_process(opts),
        path_loss=path,
        fading=_build_fading(opts),
        noise_w=noise,
        window=window,
        seed=opts.seed,
    )


def _resolve_threads(opts) -> int:
    if opts.threads is not None:
        return max(1, opts.threads)
    env = os.environ.get("ADGLAB_THREADS")
    return max(1, int(env)) if env else 1


def _theta_grid(opts) -> np.ndarray:
    if opts.theta_step <= 0 or opts.theta_stop < opts.theta_start:
        raise ValueError("invalid theta grid")
    return np.arange(opts.theta_start, opts.theta_stop + opts.theta_step / 2, opts.theta_step)


def _default_n(opts, fallback: int) -> int:
    return opts.n if opts.n is not None else fallback


def _write_rows(path, header: str, rows) -> None:
    with open(path, "w", newline="") as f:
        f.write(header + "\n")
        for row in rows:
            f.write(",".join(row) + "\n")


def _run_experiment(opts) -> list[str]:
    """Execute one experiment; returns the list of files written."""
    out = Path(opts.out) if opts.out else Path(f"{opts.experiment}.csv")
    threads = _resolve_threads(opts)
    probes = opts.probes_per_pattern
    proc_label = opts.process
    fad_label = _fading_label(opts)

    if opts.experiment == "sample-pp":
        window = Window(opts.window_width, opts.window_height, opts.topology)
        pattern = sample(_build_process(opts), window, opts.seed)
        pattern_to_csv(pattern, out)
        return [str(out)]

    if opts.experiment == "success-curve":
        grid = _theta_grid(opts)
        if opts.analytic:
            if (
                opts.process != "ppp"
                or opts.fading != "rayleigh"
                or opts.noise_w != 0
                or opts.snr_db is not None
            ):
                raise ValueError(
                    "--analytic covers the Poisson/Rayleigh/no-noise baseline only"
                )
            p = ppp_success_rayleigh(10 ** (grid / 10.0), opts.alpha)
            curve = SuccessCurve(theta_db=grid, p_hat=p, ci_lo=p, ci_hi=p, n=0)
        else:
            scenario = _build_scenario(opts)
            curve = estimate_success_curve(
                scenario, grid, _default_n(opts, 100_000), probes, threads
            )
        curve_to_csv(curve, out)
        return [str(out)]

    if opts.experiment == "adg":
        scenario = _build_scenario(opts)
        n = _default_n(opts, 200_000)
        rows = []
        if opts.method in ("kappa", "both"):
            est = adg_from_kappa(scenario, n, probes_per_pattern=probes, threads=threads)
            rows.append((proc_label, fad_label, opts.alpha, est))
        if opts.method in ("shift", "both"):
            grid = _theta_grid(opts)
            curve = estimate_success_curve(scenario, grid, n, probes, threads)
            ref_scenario = Scenario(
                process=Poisson(intensity_of(scenario.process)),
                path_loss=scenario.path_loss,
                fading=scenario.fading,
                noise_w=scenario.noise_w,
                window=scenario.window,
                seed=scenario.seed + 1,
            )
            ref = estimate_success_curve(ref_scenario, grid, n, probes, threads)
            est = adg_horizontal_shift(curve, ref, (opts.p_lo, opts.p_hi))
            rows.append((proc_label, fad_label, opts.alpha, est))
        adg_table_to_csv(rows, out)
        return [str(out)]

    if opts.experiment == "slope":
        scenario = _build_scenario(opts)
        curve = estimate_success_curve(
            scenario, _theta_grid(opts), _default_n(opts, 200_000), probes, threads
        )
        s = outage_slope(curve, (opts.fit_lo, opts.fit_hi))
        _write_rows(
            out,
            "process,fading,alpha,theta_lo_db,theta_hi_db,slope_db_per_decade,n",
            [(proc_label, fad_label, repr(opts.alpha), repr(opts.fit_lo), repr(opts.fit_hi),
              repr(s), str(curve.n))],
        )
        return [str(out)]

    if opts.experiment == "rate":
        scenario = _build_scenario(opts)
        val, se = ergodic_rate_mc(scenario, _default_n(opts, 100_000), probes, threads)
        rows = [(proc_label, fad_label, repr(opts.alpha), "mc", repr(val), repr(se),
                 str(_default_n(opts, 100_000)))]
        if opts.g_hat is not None:
            approx = ergodic_rate_from_adg(opts.g_hat, opts.alpha)
            rows.append((proc_label, fad_label, repr(opts.alpha), "adg_shift", repr(approx),
                         "", ""))
        _write_rows(out, "process,fading,alpha,method,rate_nats,stderr,n", rows)
        return [str(out)]

    if opts.experiment == "mean-sinr":
        scenario = _build_scenario(opts)
        n = _default_n(opts, 100_000)
        val, se = mean_sinr_mc(scenario, n, probes, threads)
        _write_rows(
            out,
            "process,fading,alpha,mean_sinr,stderr,n",
            [(proc_label, fad_label, repr(opts.alpha), repr(val), repr(se), str(n))],
        )
        return [str(out)]

    if opts.experiment == "contact-ccdf":
        window = Window(opts.window_width, opts.window_height, opts.topology)
        radii = np.arange(0.0, opts.r_max + opts.r_step / 2, opts.r_step)
        reps = _default_n(opts, 10_000)
        ccdf = empirical_contact_ccdf(_build_process(opts), window, radii, reps, opts.seed)
        _write_rows(
            out, "x,ccdf,reps",
            [(repr(float(x)), repr(float(c)), str(reps)) for x, c in zip(radii, ccdf)],
        )
        return [str(out)]

    if opts.experiment == "kappa":
        scenario = _build_scenario(opts)
        n = _default_n(opts, 100_000)
        k, se = estimate_kappa(scenario, n, probes, threads)
        _write_rows(
            out,
            "process,fading,alpha,kappa,stderr,n",
            [(proc_label, fad_label, repr(opts.alpha), repr(k), repr(se), str(n))],
        )
        return [str(out)]

    raise ValueError(f"unknown experiment {opts.experiment!r}")


def _write_meta(opts, outputs: list[str], wall_time: float) -> None:
    config = {k: v for k, v in sorted(vars(opts).items())}
    meta = {
        "experiment": opts.experiment,
        "version": _version_string(),
        "seed": opts.seed,
        "threads": _resolve_threads(opts),
        "wall_time_s": wall_time,
        "outputs": outputs,
        "config": config,
    }
    sidecar = Path(outputs[0]).with_suffix(".meta.json")
    sidecar.write_text(json.dumps(meta, indent=2, default=str) + "\n")


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        argv = _apply_config_file(argv)
    except (OSError, ValueError, IndexError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    opts = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        outputs = _run_experiment(opts)
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except AdglabError as exc:
        print(type(exc).__name__, file=sys.stderr)
        return 3
    _write_meta(opts, outputs, time.perf_counter() - t0)
    return 0


def main(argv: list[str] | None = None) -> int:
    return run(list(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    sys.exit(main())
