"""Command-line front end.

    hgtf analyze     --gen chirp:rate=2,span=10 --order 2 --delta-t 0.5 --out run1
    hgtf gabor       --input sig.csv --out run2
    hgtf wigner      --gen two_tones --out run3 --scale log
    hgtf marginals   --gen gaussian --order 1 --delta-t 0.25 --out run4
    hgtf reconstruct --input sig.f64le --order 3 --delta-t 0.5 --out run5
    hgtf moments     --gen harmonic_gaussian:n=2,delta_t=1 --out run6

Exit status: 0 success, 1 usage error, 2 input-data or output error,
3 numerical diagnostic failure under ``--strict``.
"""

import argparse
import math
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import io
from .baselines import gabor_transform, wigner_ville
from .diagnostics import HGTFWarning
from .hgf import TFPoint, WindowSpec
from .reconstruct import coefficients_at, reconstruct_integral, reconstruct_series, relative_l2_error
from .signal import default_freq_axis, default_time_axis, generate, moments, uniform_axis
from .transform import analyze, energy_density, energy_of_grid, marginal_freq, marginal_time

COMMANDS = {"analyze": "hgf", "hgf": "hgf", "wigner": "wigner", "gabor": "gabor",
            "marginals": "marginals", "reconstruct": "reconstruct", "moments": "moments"}
NEEDS_DELTA_T = {"hgf", "marginals", "reconstruct"}
FORMATS = ("csv", "f64le", "ppm")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class AxisSpec:
    lo: float
    hi: float
    count: int

    def values(self):
        return uniform_axis(self.lo, (self.hi - self.lo) / (self.count - 1), self.count)


@dataclass
class RunConfig:
    kind: str
    out: Path
    input: Path = None
    input_format: str = None
    gen: tuple = None  # (kind, params, grid)
    order: int = 0
    delta_t: float = None
    t_axis: AxisSpec = None
    omega_axis: AxisSpec = None
    formats: tuple = ("csv", "ppm")
    scale: str = "linear"
    floor: float = 1e-6
    strict: bool = False
    tolerance: float = 1e-3
    route: str = "integral"
    n_max: int = None
    at: tuple = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_common(p, kind):
    src = p.add_argument_group("input (exactly one)")
    src.add_argument("--input", metavar="PATH", help="signal file (csv or f64le)")
    src.add_argument("--format", choices=("csv", "f64le"), help="input format; default from the file suffix")
    src.add_argument(
        "--gen",
        metavar="KIND[:k=v,...]",
        help="generated signal, e.g. chirp:rate=2,span=10. Kinds: gaussian_pulse, linear_chirp "
        "(chirp), two_tones, harmonic_gaussian, impulse_like. Grid keys: span [s] (default 32), "
        "dt [s] (default 1/32), t0 [s] (default -span/2); frequencies in rad/s, times in s",
    )
    p.add_argument("--out", metavar="DIR", required=True, help="output directory (created if missing)")
    if kind in ("hgf", "marginals", "reconstruct"):
        p.add_argument("--order", type=int, default=0, help="harmonic Gaussian order n >= 0 (default 0)")
        p.add_argument("--delta-t", type=float, help="window width parameter delta_t [s] > 0; delta_omega = 1/(2 delta_t) [rad/s]")
    if kind != "moments":
        p.add_argument("--t-axis", metavar="MIN,MAX,COUNT", help="T axis [s]; default: signal grid decimated to <= 512 points")
        p.add_argument("--omega-axis", metavar="MIN,MAX,COUNT", help="Omega axis [rad/s]; default: centred frequency grid decimated to <= 512 points")
    p.add_argument("--formats", default=None, help="comma list of csv, f64le, ppm (default csv,ppm; reconstruct: csv,f64le)")
    p.add_argument("--scale", choices=("linear", "log"), default="linear", help="heatmap color scale")
    p.add_argument("--floor", type=float, default=1e-6, help="log-scale clamp, fraction of the maximum (default 1e-6)")
    p.add_argument("--strict", action="store_true", help="exit 3 on any numerical diagnostic or residual above --tolerance")
    p.add_argument("--tolerance", type=float, default=1e-3, help="relative energy/reconstruction residual allowed under --strict (default 1e-3)")
    if kind == "reconstruct":
        p.add_argument("--route", choices=("integral", "series"), default="integral", help="plane integral over one order, or basis series at one point")
        p.add_argument("--n-max", type=int, help="series route: highest order (default: tail rule, capped at 256)")
        p.add_argument("--at", metavar="T,OMEGA", help="series route: expansion point [s, rad/s] (default: signal moment centre)")


def build_parser():
    parser = _Parser(prog="hgtf", description="Harmonic Gaussian time-frequency analysis.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    helps = {
        "analyze": "order-n harmonic Gaussian grid and energy density",
        "wigner": "Wigner-Ville distribution",
        "gabor": "Gabor transform and energy density",
        "marginals": "time and frequency marginals p_n, rho_n",
        "reconstruct": "recover the signal from its representation",
        "moments": "energy, means, standard deviations",
    }
    for name, text in helps.items():
        _add_common(sub.add_parser(name, help=text, description=text), COMMANDS[name])
    return parser


def _parse_axis(text, flag, errors):
    try:
        lo, hi, count = text.split(",")
        ax = AxisSpec(float(lo), float(hi), int(count))
    except ValueError:
        errors.append(f"{flag}: expected MIN,MAX,COUNT, got {text!r}")
        return None
    if ax.count < 2:
        errors.append(f"{flag}: COUNT must be >= 2")
    if not ax.hi > ax.lo:
        errors.append(f"{flag}: MAX must exceed MIN")
    if not (math.isfinite(ax.lo) and math.isfinite(ax.hi)):
        errors.append(f"{flag}: bounds must be finite")
    return ax


def _parse_value(text):
    try:
        return int(text)
    except ValueError:
        return float(text)


def parse_gen(text):
    """``kind:k=v,k=v`` into ``(kind, params, (t0, dt, count))``."""
    kind, _, rest = text.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--gen: expected key=value, got {item!r}")
        try:
            params[key.strip()] = _parse_value(val.strip())
        except ValueError:
            raise UsageError(f"--gen: value of {key!r} is not a number") from None
    span = float(params.pop("span", 32.0))
    dt = float(params.pop("dt", 1.0 / 32.0))
    if not (span > 0 and dt > 0):
        raise UsageError("--gen: span and dt must be positive")
    t0 = float(params.pop("t0", -span / 2.0))
    count = int(round(span / dt))
    if count < 2:
        raise UsageError("--gen: span/dt gives fewer than 2 samples")
    return kind.strip(), params, (t0, dt, count)


_LIST_FLAGS = ("--t-axis", "--omega-axis", "--at")


def _join_list_values(argv):
    # "--t-axis -1,1,21" would otherwise read the value as an option
    out, it = [], iter(argv)
    for arg in it:
        if arg in _LIST_FLAGS:
            nxt = next(it, None)
            out.append(arg if nxt is None else f"{arg}={nxt}")
        else:
            out.append(arg)
    return out


def parse_args(argv):
    """Validate `argv` into a :class:`RunConfig`; raises :class:`UsageError` listing every problem."""
    ns = build_parser().parse_args(_join_list_values(list(argv)))
    if ns.command is None:
        raise UsageError("hgtf: a command is required (analyze, wigner, gabor, marginals, reconstruct, moments)")
    kind = COMMANDS[ns.command]
    errors = []
    if (ns.input is None) == (ns.gen is None):
        errors.append("exactly one of --input or --gen is required")
    gen = None
    if ns.gen is not None:
        try:
            gen = parse_gen(ns.gen)
        except UsageError as exc:
            errors.append(str(exc))
    cfg = RunConfig(kind=kind, out=Path(ns.out), input=Path(ns.input) if ns.input else None,
                    input_format=ns.format, gen=gen, scale=ns.scale, floor=ns.floor,
                    strict=ns.strict, tolerance=ns.tolerance)
    if kind in NEEDS_DELTA_T:
        cfg.order = ns.order
        cfg.delta_t = ns.delta_t
        if ns.order < 0:
            errors.append(f"--order must be >= 0, got {ns.order}")
        if ns.delta_t is None:
            errors.append("--delta-t is required")
        elif not (math.isfinite(ns.delta_t) and ns.delta_t > 0):
            errors.append(f"--delta-t must be > 0, got {ns.delta_t}")
    if kind != "moments":
        if ns.t_axis:
            cfg.t_axis = _parse_axis(ns.t_axis, "--t-axis", errors)
        if ns.omega_axis:
            cfg.omega_axis = _parse_axis(ns.omega_axis, "--omega-axis", errors)
    default_formats = "csv,f64le" if kind == "reconstruct" else "csv,ppm"
    formats = tuple(f.strip() for f in (ns.formats or default_formats).split(",") if f.strip())
    bad = [f for f in formats if f not in FORMATS]
    if bad or not formats:
        errors.append(f"--formats: unknown {bad}; choose from {', '.join(FORMATS)}")
    cfg.formats = formats
    if not 0 < ns.floor < 1:
        errors.append("--floor must lie in (0, 1)")
    if not ns.tolerance > 0:
        errors.append("--tolerance must be > 0")
    if kind == "reconstruct":
        cfg.route = ns.route
        cfg.n_max = ns.n_max
        if ns.n_max is not None and ns.n_max < 0:
            errors.append("--n-max must be >= 0")
        if ns.at:
            try:
                T, W = (float(x) for x in ns.at.split(","))
                cfg.at = (T, W)
            except ValueError:
                errors.append(f"--at: expected T,OMEGA, got {ns.at!r}")
    if errors:
        raise UsageError("hgtf " + ns.command + ": " + "; ".join(errors))
    return cfg


# --------------------------------------------------------------------------
# running


def load_signal(cfg):
    if cfg.input is not None:
        return io.read_signal(cfg.input, cfg.input_format)
    kind, params, grid = cfg.gen
    try:
        return generate(kind, params, grid)
    except (ValueError, TypeError) as exc:
        raise io.InputDataError(f"--gen: {exc}") from None


def _axes(cfg, signal):
    T = cfg.t_axis.values() if cfg.t_axis else default_time_axis(signal)
    W = cfg.omega_axis.values() if cfg.omega_axis else default_freq_axis(signal)
    return T, W


def _moment_items(signal):
    try:
        m = moments(signal)
    except ValueError:
        return {}
    return m.as_dict()


def _emit_density(grid, density, cfg, name):
    out = cfg.out
    if "csv" in cfg.formats:
        io.write_grid_csv(grid.T_axis, grid.Omega_axis, grid.values, out / f"{name}.csv")
        io.write_grid_csv(density.T_axis, density.Omega_axis, density.values, out / "density.csv")
    if "ppm" in cfg.formats:
        io.write_ppm(density.values, out / "density.ppm", cfg.scale, cfg.floor)


def _run_grid(cfg, signal, report):
    T, W = _axes(cfg, signal)
    if cfg.kind == "hgf":
        spec = WindowSpec(cfg.order, cfg.delta_t)
        grid = analyze(signal, spec, T, W)
        name = "psi"
        report.update(order=spec.n, delta_t=spec.delta_t, delta_omega=spec.delta_omega)
    else:
        grid = gabor_transform(signal, T, W)
        name = "gabor"
    density = energy_density(grid)
    e_sig = signal.energy
    e_grid = float(np.sum(density.values) * density.dT * density.dOmega)
    energy_of_grid(density)  # coverage diagnostic only
    residual = abs(e_grid - e_sig) / e_sig if e_sig > 0 else abs(e_grid)
    report.update(signal_energy=e_sig, energy=e_grid, energy_residual=residual)
    _emit_density(grid, density, cfg, name)
    return residual


def _run_wigner(cfg, signal, report):
    T, W = _axes(cfg, signal)
    grid, residue = wigner_ville(signal, T, W, return_residue=True)
    e_sig = signal.energy
    e_grid = float(np.sum(grid.values) * grid.dT * grid.dOmega)
    residual = abs(e_grid - e_sig) / e_sig if e_sig > 0 else abs(e_grid)
    report.update(
        signal_energy=e_sig,
        energy=e_grid,
        energy_residual=residual,
        max_w=float(grid.values.max()),
        min_w=float(grid.values.min()),
        bound=e_sig / math.pi,
        imag_residue=residue,
    )
    if "csv" in cfg.formats:
        io.write_grid_csv(grid.T_axis, grid.Omega_axis, grid.values, cfg.out / "wigner.csv")
    if "ppm" in cfg.formats:
        io.write_ppm(grid.values, cfg.out / "wigner.ppm", cfg.scale, cfg.floor)
    return residual


def _run_marginals(cfg, signal, report):
    T, W = _axes(cfg, signal)
    spec = WindowSpec(cfg.order, cfg.delta_t)
    p = marginal_time(signal, spec, T)
    rho = marginal_freq(signal, spec, W)
    e_sig = signal.energy
    ip, ir = p.integral(), rho.integral()
    res = max(abs(ip - e_sig), abs(ir - e_sig)) / e_sig if e_sig > 0 else max(abs(ip), abs(ir))
    report.update(order=spec.n, delta_t=spec.delta_t, delta_omega=spec.delta_omega,
                  signal_energy=e_sig, time_integral=ip, freq_integral=ir, energy_residual=res)
    if "csv" in cfg.formats:
        for m, head, fname in ((p, "T,p", "marginal_time.csv"), (rho, "omega,rho", "marginal_freq.csv")):
            lines = [head] + [f"{io.fmt(a)},{io.fmt(v)}" for a, v in zip(m.axis, m.values)]
            (cfg.out / fname).write_text("\n".join(lines) + "\n")
    return res


def _run_reconstruct(cfg, signal, report):
    spec = WindowSpec(cfg.order, cfg.delta_t)
    if cfg.route == "integral":
        T, W = _axes(cfg, signal)
        rec = reconstruct_integral(analyze(signal, spec, T, W))
        report.update(route="integral", order=spec.n, delta_t=spec.delta_t)
    else:
        if cfg.at is not None:
            point = TFPoint(*cfg.at)
        else:
            m = moments(signal)
            point = TFPoint(m.mu_t, m.mu_omega)
        coeffs = coefficients_at(signal, point, spec.delta_t, cfg.n_max)
        rec = reconstruct_series(coeffs, point, spec.delta_t, signal.grid())
        report.update(route="series", delta_t=spec.delta_t, T=point.T, Omega=point.Omega,
                      n_max=coeffs.size - 1, series_energy=float(np.sum(np.abs(coeffs) ** 2)))
    err = relative_l2_error(rec, signal)
    report.update(signal_energy=signal.energy, l2_error=err)
    if "csv" in cfg.formats:
        io.write_signal_csv(rec, cfg.out / "reconstructed.csv")
    if "f64le" in cfg.formats:
        io.write_signal_f64le(rec, cfg.out / "reconstructed.f64le")
    return err


def run(cfg):
    """Execute `cfg`; returns the exit status."""
    try:
        signal = load_signal(cfg)
    except (io.InputDataError, OSError) as exc:
        print(f"hgtf: input error: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        cfg.out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"hgtf: cannot create output directory: {exc}", file=sys.stderr)
        return EXIT_DATA
    report = {"kind": cfg.kind}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", HGTFWarning)
        try:
            if cfg.kind in ("hgf", "gabor"):
                residual = _run_grid(cfg, signal, report)
            elif cfg.kind == "wigner":
                residual = _run_wigner(cfg, signal, report)
            elif cfg.kind == "marginals":
                residual = _run_marginals(cfg, signal, report)
            elif cfg.kind == "reconstruct":
                residual = _run_reconstruct(cfg, signal, report)
            else:
                residual = None
        except OSError as exc:
            print(f"hgtf: cannot write output: {exc}", file=sys.stderr)
            return EXIT_DATA
        except ValueError as exc:
            print(f"hgtf: {exc}", file=sys.stderr)
            return EXIT_NUMERIC if cfg.strict else EXIT_DATA
    diags = [str(w.message) for w in caught if issubclass(w.category, HGTFWarning)]
    for k, v in _moment_items(signal).items():
        report.setdefault(k, v)
    report["diagnostics"] = len(diags)
    for i, msg in enumerate(diags):
        report[f"diagnostic_{i}"] = msg
        print(f"hgtf: warning: {msg}", file=sys.stderr)
    try:
        io.write_report(report, cfg.out / "report.txt")
    except OSError as exc:
        print(f"hgtf: cannot write output: {exc}", file=sys.stderr)
        return EXIT_DATA
    if cfg.strict and (diags or (residual is not None and residual > cfg.tolerance)):
        return EXIT_NUMERIC
    return EXIT_OK


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        print("run 'hgtf COMMAND --help' for the flags", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
