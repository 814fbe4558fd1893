"""Command-line surface: observables to CSV files, plus reproduction presets.

Exit codes: 0 success, 2 bad arguments, 3 numerical-domain failure.
CSV files carry ``# key=value`` metadata lines, a header row (``T,value``
for series, ``m,P`` for distributions) and values printed with 17
significant digits so they round-trip to the exact float64.
"""

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import compare_series
from .dynamics import JCMConfig, TimeSeries, atomic_inversion
from .errors import NumericalDomainError, ParameterError
from .squeezing import q_rescaled_series, squeezing_series, w_rescaled_series
from .states import (
    CoherentSpec,
    OrthogonalEvenBSSpec,
    SBSSpec,
    build_state,
    mean_photon,
    photon_distribution,
    sbs_amplitudes,
    state_label,
)

_EPSILON_TOKENS = {"0": 0, "1": 1, "+1": 1, "-1": -1, "i": 1j}


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _eta_value(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"must be a number, got {text!r}")
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"eta must lie in (0, 1], got {text}")
    return value


def _epsilon_token(text):
    if text not in _EPSILON_TOKENS:
        raise argparse.ArgumentTypeError(f"epsilon must be one of 0, 1, -1, i; got {text!r}")
    return _EPSILON_TOKENS[text]


def _nonneg_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"must be a number, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {text}")
    return value


def _positive_float(text):
    value = _nonneg_float(text)
    if value == 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


@dataclass
class RunConfig:
    """Everything one invocation needs: state spec, grid, observable, output."""

    observable: str
    out: Path
    state: object = None
    jcm: JCMConfig = None
    n_order: int = 1
    factor: str = "F"
    epsilon: complex = 0
    threads: int = 1
    compare_a: Path = None
    compare_b: Path = None
    meta: dict = field(default_factory=dict)


def write_series_csv(path, header, columns, meta):
    """Write one series: '#'-prefixed metadata, a header row, 17-digit values."""
    lines = [f"# {key}={value}" for key, value in meta.items()]
    lines.append(header)
    for row in zip(*columns):
        lines.append(",".join(format(float(v), ".17g") for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_series_csv(path):
    """Read a CSV written by this tool: (meta dict, header, list of columns)."""
    meta = {}
    header = None
    rows = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                meta[key.strip()] = value.strip()
            continue
        if header is None:
            header = line.strip()
            continue
        rows.append([float(part) for part in line.split(",")])
    if header is None or not rows:
        raise ParameterError(f"{path} contains no data rows")
    columns = [np.array(col) for col in zip(*rows)]
    return meta, header, columns


def _chunked_grid_eval(evaluate, grid, threads):
    """evaluate(sub_grid) -> array, chunked by index when threads > 1.

    Per-point sums are independent, so the chunked result is bit-identical
    to the sequential one; chunks are reassembled in index order.
    """
    if threads <= 1 or len(grid) < 2 * threads:
        return evaluate(grid)
    edges = np.linspace(0, len(grid), threads + 1).astype(int)
    chunks = [grid[a:b] for a, b in zip(edges[:-1], edges[1:]) if b > a]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(evaluate, chunks))
    return np.concatenate(parts)


def _base_meta(config: RunConfig):
    meta = {"artifact": f"jcmbinom {__version__}", "observable": config.observable}
    if config.state is not None:
        meta["state"] = state_label(build_state(config.state))
    if config.jcm is not None:
        meta.update(k=config.jcm.k, t_max=format(config.jcm.t_max, "g"), steps=config.jcm.steps)
    meta.update(config.meta)
    return meta


def run(config: RunConfig) -> int:
    """Execute one configuration and write its CSV artifact."""
    obs = config.observable
    if obs == "pnd":
        state = build_state(config.state)
        P = photon_distribution(state)
        meta = _base_meta(config)
        meta["label"] = f"pnd {state_label(state)}"
        write_series_csv(config.out, "m,P", [np.arange(len(P)), P], meta)
    elif obs == "inversion":
        state = build_state(config.state)
        grid = config.jcm.grid
        values = _chunked_grid_eval(
            lambda sub: atomic_inversion(state, config.jcm.k, sub), grid, config.threads
        )
        meta = _base_meta(config)
        meta["label"] = f"inversion k={config.jcm.k} {state_label(state)}"
        write_series_csv(config.out, "T,value", [grid, values], meta)
    elif obs == "squeezing":
        if config.factor not in ("F", "S"):
            raise ParameterError(f"factor must be F or S, got {config.factor!r}")
        state = build_state(config.state)
        grid = config.jcm.grid
        pick = (lambda sub: getattr(squeezing_series(state, config.jcm.k, sub, config.n_order),
                                    config.factor))
        values = _chunked_grid_eval(pick, grid, config.threads)
        meta = _base_meta(config)
        meta.update(N=config.n_order, factor=config.factor)
        meta["label"] = f"{config.factor}_{config.n_order} k={config.jcm.k} {state_label(state)}"
        write_series_csv(config.out, "T,value", [grid, values], meta)
    elif obs == "rescaled_w":
        spec = config.state
        oebs = build_state(OrthogonalEvenBSSpec(spec.M, spec.eta))
        bs = sbs_amplitudes(spec.M, spec.eta, 0)
        grid = config.jcm.grid
        values = _chunked_grid_eval(
            lambda sub: w_rescaled_series(oebs, bs, sub, config.n_order), grid, config.threads
        )
        meta = _base_meta(config)
        meta.update(N=config.n_order, state=state_label(oebs))
        meta["label"] = f"W_{config.n_order} {state_label(oebs)}"
        write_series_csv(config.out, "T,value", [grid, values], meta)
    elif obs == "rescaled_q":
        spec = config.state
        if not isinstance(spec, SBSSpec):
            raise ParameterError("rescaled_q requires a binomial-superposition state (epsilon token)")
        state = build_state(spec)
        n_bar = mean_photon(sbs_amplitudes(spec.M, spec.eta, 0))
        grid = config.jcm.grid
        values = _chunked_grid_eval(
            lambda sub: q_rescaled_series(state, sub, config.n_order, spec.epsilon, n_bar),
            grid, config.threads,
        )
        meta = _base_meta(config)
        meta.update(N=config.n_order, n_bar_bs=format(n_bar, ".17g"))
        meta["label"] = f"Q_{config.n_order} {state_label(state)}"
        write_series_csv(config.out, "T,value", [grid, values], meta)
    elif obs == "compare":
        series = []
        for path in (config.compare_a, config.compare_b):
            meta, header, columns = read_series_csv(path)
            if len(columns) != 2:
                raise ParameterError(f"{path}: expected two columns, found {len(columns)}")
            series.append(TimeSeries(columns[0], columns[1], label=meta.get("label", str(path))))
        report = compare_series(series[0], series[1])
        lines = [
            f"sup_norm,{report.sup_norm:.17g}",
            f"rms,{report.rms:.17g}",
            f"pearson,{report.pearson:.17g}",
            f"grid_size,{report.grid_size}",
        ]
        print("\n".join(lines))
        if config.out is not None:
            Path(config.out).write_text("metric,value\n" + "\n".join(lines) + "\n")
    else:
        raise ParameterError(f"unknown observable {obs!r}")
    return 0


def _state_spec_from_args(args):
    family = getattr(args, "family", "sbs")
    if family == "sbs":
        if args.M is None:
            raise ParameterError("field M is required for the sbs family")
        return SBSSpec(args.M, args.eta, args.epsilon)
    if family == "oebs":
        if args.M is None:
            raise ParameterError("field M is required for the oebs family")
        return OrthogonalEvenBSSpec(args.M, args.eta)
    if family == "coherent":
        if args.alpha is None:
            raise ParameterError("field alpha is required for the coherent family")
        return CoherentSpec(args.alpha, args.parity, args.cutoff)
    raise ParameterError(f"unknown family {family!r}")


def _add_state_options(sub, families=("sbs", "oebs", "coherent")):
    sub.add_argument("--family", choices=families, default="sbs")
    sub.add_argument("--M", type=_positive_int, default=None)
    sub.add_argument("--eta", type=_eta_value, default=0.5)
    sub.add_argument("--epsilon", type=_epsilon_token, default=0)
    sub.add_argument("--alpha", type=_nonneg_float, default=None)
    sub.add_argument("--parity", choices=("none", "even", "odd"), default="none")
    sub.add_argument("--cutoff", type=_positive_int, default=None)


def _add_grid_options(sub):
    sub.add_argument("--k", type=_positive_int, default=1)
    sub.add_argument("--tmax", type=_positive_float, default=50.0)
    sub.add_argument("--steps", type=_positive_int, default=4000)
    sub.add_argument("--threads", type=_positive_int, default=1)


def _cmd_pnd(args):
    config = RunConfig(observable="pnd", out=args.out, state=_state_spec_from_args(args))
    return run(config)


def _cmd_inversion(args):
    config = RunConfig(
        observable="inversion",
        out=args.out,
        state=_state_spec_from_args(args),
        jcm=JCMConfig(args.k, args.tmax, args.steps),
        threads=args.threads,
    )
    return run(config)


def _cmd_squeezing(args):
    config = RunConfig(
        observable="squeezing",
        out=args.out,
        state=_state_spec_from_args(args),
        jcm=JCMConfig(args.k, args.tmax, args.steps),
        n_order=args.N,
        factor=args.factor,
        threads=args.threads,
    )
    return run(config)


def _cmd_rescaled_w(args):
    config = RunConfig(
        observable="rescaled_w",
        out=args.out,
        state=OrthogonalEvenBSSpec(args.M, args.eta),
        jcm=JCMConfig(1, args.tmax, args.steps),
        n_order=args.N,
        threads=args.threads,
    )
    return run(config)


def _cmd_rescaled_q(args):
    config = RunConfig(
        observable="rescaled_q",
        out=args.out,
        state=SBSSpec(args.M, args.eta, args.epsilon),
        jcm=JCMConfig(3, args.tmax, args.steps),
        n_order=args.N,
        threads=args.threads,
    )
    return run(config)


def _cmd_compare(args):
    config = RunConfig(observable="compare", out=args.out,
                       compare_a=args.a, compare_b=args.b)
    return run(config)


def _preset_jobs(name, tmax, steps):
    """Parameter tuples behind each reproduction preset, one CSV per curve."""
    inv = lambda spec, fname: ("inversion", spec, fname, {})
    pnd = lambda spec, fname: ("pnd", spec, fname, {})
    presets = {
        "fig1a": [
            pnd(SBSSpec(50, 0.1, 0), "fig1a_bs_M50.csv"),
            pnd(SBSSpec(100, 0.1, 0), "fig1a_bs_M100.csv"),
            pnd(SBSSpec(370, 0.1, 0), "fig1a_bs_M370.csv"),
        ],
        "fig1b": [
            pnd(SBSSpec(100, 0.3, 0), "fig1b_bs_eta0.3_M100.csv"),
            pnd(SBSSpec(200, 0.3, 0), "fig1b_bs_eta0.3_M200.csv"),
            pnd(SBSSpec(200, 0.6, 0), "fig1b_bs_eta0.6_M200.csv"),
            pnd(SBSSpec(200, 0.6, 1), "fig1b_even_eta0.6_M200.csv"),
        ],
        "fig2a": [
            inv(SBSSpec(370, 0.1, 0), "fig2a_curveA.csv"),
            inv(SBSSpec(100, 0.3, 0), "fig2a_curveB.csv"),
            inv(OrthogonalEvenBSSpec(370, 0.7), "fig2a_curveC.csv"),
        ],
        "fig2b": [
            inv(SBSSpec(200, 0.6, 1), "fig2b_curveA.csv"),
            inv(SBSSpec(200, 0.6, 0), "fig2b_curveB.csv"),
            inv(SBSSpec(200, 0.3, 0), "fig2b_curveC.csv"),
        ],
        "fig3": [
            ("rescaled_w", OrthogonalEvenBSSpec(370, 0.7), "fig3_w1.csv", {"N": 1}),
        ],
        "fig4a": [
            ("rescaled_q", SBSSpec(370, 0.1, 0), "fig4a_curveA.csv", {"N": 1}),
            ("rescaled_q", SBSSpec(100, 0.3, 0), "fig4a_curveB.csv", {"N": 1}),
        ],
        "fig4b": [
            ("rescaled_q", SBSSpec(200, 0.6, 1), "fig4b_curveA.csv", {"N": 1}),
            ("rescaled_q", SBSSpec(200, 0.6, 0), "fig4b_curveB.csv", {"N": 1}),
            ("rescaled_q", SBSSpec(200, 0.3, 0), "fig4b_curveC.csv", {"N": 1}),
        ],
        "fig4c": [
            ("rescaled_q", SBSSpec(200, 0.3, 0), "fig4c_curveA.csv", {"N": 2}),
            ("rescaled_q", SBSSpec(370, 0.3, 0), "fig4c_curveB.csv", {"N": 2}),
        ],
    }
    return presets[name]


PRESET_NAMES = ("fig1a", "fig1b", "fig2a", "fig2b", "fig3", "fig4a", "fig4b", "fig4c")


def _cmd_reproduce(args):
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for observable, spec, fname, extra in _preset_jobs(args.preset, args.tmax, args.steps):
        k = 3 if observable == "rescaled_q" else 1
        config = RunConfig(
            observable=observable,
            out=outdir / fname,
            state=spec,
            jcm=None if observable == "pnd" else JCMConfig(k, args.tmax, args.steps),
            n_order=extra.get("N", 1),
            threads=args.threads,
        )
        run(config)
        print(outdir / fname)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jcmbinom",
        description="k-photon Jaynes-Cummings observables for binomial field states (CSV output)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pnd", help="photon-number distribution P(m)")
    _add_state_options(p)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=_cmd_pnd)

    p = sub.add_parser("inversion", help="atomic inversion time series")
    _add_state_options(p)
    _add_grid_options(p)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=_cmd_inversion)

    p = sub.add_parser("squeezing", help="Nth-order squeezing factor time series")
    _add_state_options(p)
    _add_grid_options(p)
    p.add_argument("--N", type=_positive_int, default=1)
    p.add_argument("--factor", choices=("F", "S"), default="F")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=_cmd_squeezing)

    p = sub.add_parser("rescaled-w", help="rescaled odd-order factor W_N (k=1, mod-4 state)")
    p.add_argument("--M", type=_positive_int, required=True)
    p.add_argument("--eta", type=_eta_value, required=True)
    p.add_argument("--N", type=_positive_int, default=1)
    p.add_argument("--tmax", type=_positive_float, default=50.0)
    p.add_argument("--steps", type=_positive_int, default=4000)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=_cmd_rescaled_w)

    p = sub.add_parser("rescaled-q", help="rescaled squeezing factor Q_N (k=3 internally)")
    p.add_argument("--M", type=_positive_int, required=True)
    p.add_argument("--eta", type=_eta_value, required=True)
    p.add_argument("--epsilon", type=_epsilon_token, default=0)
    p.add_argument("--N", type=_positive_int, default=1)
    p.add_argument("--tmax", type=_positive_float, default=50.0)
    p.add_argument("--steps", type=_positive_int, default=4000)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=_cmd_rescaled_q)

    p = sub.add_parser("compare", help="sup-norm, RMS and Pearson metrics of two series files")
    p.add_argument("--a", type=Path, required=True)
    p.add_argument("--b", type=Path, required=True)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("reproduce", help="write the CSV curves behind a bundled preset")
    p.add_argument("preset", choices=PRESET_NAMES)
    p.add_argument("--outdir", type=Path, default=Path("reproduced"))
    p.add_argument("--tmax", type=_positive_float, default=50.0)
    p.add_argument("--steps", type=_positive_int, default=4000)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.set_defaults(handler=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalDomainError as exc:
        print(f"numerical domain error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
