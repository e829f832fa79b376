"""Command line interface.

Subcommands:

* ``predict``   closed-form entropy and Renyi-trace values
* ``ising``     transverse-field Ising chain sweeps (dense or free fermion)
* ``boson``     harmonic chain sweeps
* ``fit``       central-charge / slope fits of a previously written table
* ``figure``    entropy against coupling for the lambda curve

Every command emits a self-describing table (CSV by default, JSON with
--format json) whose metadata echoes the full parameter set; rerunning the
echoed command reproduces the output byte for byte, independent of the
--parallel worker count.

Exit codes: 0 success, 2 validation error, 3 resource limit, 4 fit flagged
poor under --strict.
"""
from __future__ import annotations

import argparse
import shlex
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, analysis, boson, cft, ising
from .errors import EntScaleError, ResourceLimitError, SchemaError
from .tables import ResultTable, read_table

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3
EXIT_STRICT_FIT = 4


def _base_meta(command: str, argv: list[str]) -> dict:
    return {
        "command": command,
        "argv": " ".join(shlex.quote(a) for a in argv),
        "library": f"entscale {__version__}",
    }


def _emit(table: ResultTable, args) -> None:
    text = table.dump(args.format)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", default="-", help="output path, '-' for stdout")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument(
        "--parallel",
        type=int,
        default=0,
        help="worker cap for sweep evaluation (0 = all cores); output is identical at any setting",
    )


def _workers(args, n_jobs: int) -> int:
    import os

    cap = args.parallel if args.parallel > 0 else (os.cpu_count() or 1)
    return max(1, min(cap, n_jobs))


def _parallel_map(fn, items, args) -> list:
    """Evaluate fn over items concurrently, restoring input order."""
    n = len(items)
    if n == 0:
        return []
    workers = _workers(args, n)
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _parse_constants(args) -> cft.ScalingConstants:
    cn = None
    if getattr(args, "cn", None):
        cn = {}
        for piece in args.cn.split(","):
            key, _, value = piece.partition("=")
            cn[int(key)] = float(value)
    return cft.ScalingConstants(
        k1=getattr(args, "k1", None),
        k1b=getattr(args, "k1b", None),
        cn=cn,
    )


def _parse_intervals(text: str) -> cft.IntervalSet:
    pairs = []
    for piece in text.split(";"):
        u, _, v = piece.partition(",")
        pairs.append((float(u), float(v)))
    return cft.IntervalSet(tuple(pairs))


# --- predict ----------------------------------------------------------------

_GEOMETRIES = (
    "interval",
    "thermal",
    "periodic",
    "boundary",
    "boundary-thermal",
    "boundary-finite",
    "off-critical",
    "intervals",
)


def _cmd_predict(args, argv) -> int:
    consts = _parse_constants(args)
    columns = ["geometry", "quantity", "n", "ell", "beta", "L", "xi", "A", "a", "c", "value", "constants_defaulted"]
    rows = []

    def add(quantity: str, value: float, n="", ell="", beta="", length="", xi="", bpts=""):
        rows.append(
            (args.geometry, quantity, n, ell, beta, length, xi, bpts, args.a, args.c, value, consts.defaulted)
        )

    if args.geometry in ("thermal", "boundary-thermal") and args.beta is None:
        raise SchemaError(f"geometry {args.geometry!r} needs --beta")
    if args.geometry in ("periodic", "boundary-finite") and args.L is None:
        raise SchemaError(f"geometry {args.geometry!r} needs --L")
    ells = args.ell or []
    for ell in ells:
        if args.geometry == "interval":
            add("entropy", cft.entropy_interval(ell, args.a, args.c, consts), ell=ell)
        elif args.geometry == "thermal":
            add("entropy", cft.entropy_thermal(ell, args.beta, args.a, args.c, consts), ell=ell, beta=args.beta)
        elif args.geometry == "periodic":
            add("entropy", cft.entropy_periodic(ell, args.L, args.a, args.c, consts), ell=ell, length=args.L)
        elif args.geometry == "boundary":
            add("entropy", cft.entropy_boundary(ell, args.a, args.c, consts), ell=ell)
        elif args.geometry == "boundary-thermal":
            add("entropy", cft.entropy_boundary_thermal(ell, args.beta, args.a, args.c, consts), ell=ell, beta=args.beta)
        elif args.geometry == "boundary-finite":
            add("entropy", cft.entropy_boundary_finite(ell, args.L, args.a, args.c, consts), ell=ell, length=args.L)
        else:
            raise SchemaError(f"--ell does not apply to geometry {args.geometry!r}")
        for n in args.renyi or []:
            if args.geometry == "interval":
                add("renyi_trace", cft.renyi_trace_interval(n, ell, args.a, args.c, consts), n=n, ell=ell)
            else:
                raise SchemaError("Renyi traces are implemented for the 'interval' geometry only")
    if args.geometry == "off-critical":
        if args.xi is None:
            raise SchemaError("off-critical prediction needs --xi")
        add(
            "entropy",
            cft.entropy_off_critical(args.xi, args.boundary_points, args.a, args.c),
            xi=args.xi,
            bpts=args.boundary_points,
        )
    if args.geometry == "intervals":
        if not args.intervals:
            raise SchemaError("multi-interval prediction needs --intervals 'u,v;u,v;...'")
        iset = _parse_intervals(args.intervals)
        add("entropy", cft.entropy_intervals(iset, args.a, args.c, consts), ell=sum(iset.lengths))
    if not rows:
        raise SchemaError("nothing to predict: pass --ell, --xi, or --intervals")

    meta = _base_meta("predict", argv)
    meta.update(geometry=args.geometry, a=args.a, c=args.c, constants_defaulted=consts.defaulted)
    _emit(ResultTable(columns=columns, rows=rows, meta=meta), args)
    return EXIT_OK


# --- ising ------------------------------------------------------------------


def _cmd_ising(args, argv) -> int:
    lams = args.lam
    ells = [args.N // 2] if args.half_block else (args.ell or [])
    if not ells:
        raise SchemaError("pass --ell (one or more) or --half-block")
    if args.solver == "dense" and args.N > ising.DENSE_SITE_LIMIT:
        raise ResourceLimitError(
            f"dense solver requested for N={args.N} > {ising.DENSE_SITE_LIMIT}; "
            "use --solver freefermion"
        )
    renyi = args.renyi or []
    for ell in ells:
        ising.BlockSpec(args.block_start, ell).validate_for(
            ising.TFIParams(lam=lams[0], n_sites=args.N, bc=args.bc)
        )

    def solve(lam: float):
        params = ising.TFIParams(lam=lam, n_sites=args.N, bc=args.bc)
        out = []
        if args.solver == "dense":
            state = ising.dense_ground_state(params)
            for ell in ells:
                spec = ising.reduced_density_matrix(state, ising.BlockSpec(args.block_start, ell))
                out.append(
                    (
                        ising.entropy_from_spectrum(spec),
                        [ising.renyi_from_spectrum(spec, n) for n in renyi],
                        state.degenerate,
                    )
                )
        else:
            cov = ising.ground_covariance(params)
            for ell in ells:
                fspec = ising.fermion_spectrum(
                    ising.block_majorana_correlations(params, ising.BlockSpec(args.block_start, ell), cov)
                )
                out.append(
                    (
                        ising.ff_entropy(fspec),
                        [ising.ff_renyi(fspec, n) for n in renyi],
                        cov.degenerate,
                    )
                )
        return out

    results = _parallel_map(solve, lams, args)
    columns = ["lam", "xi", "start", "ell", "entropy"]
    columns += [f"renyi_{n}" for n in renyi]
    columns += ["solver", "degenerate"]
    rows = []
    for lam, per_lam in zip(lams, results):
        xi = ising.correlation_length(lam)
        for ell, (entropy, traces, degenerate) in zip(ells, per_lam):
            rows.append((lam, xi, args.block_start, ell, entropy, *traces, args.solver, degenerate))

    meta = _base_meta("ising", argv)
    meta.update(n_sites=args.N, bc=args.bc, solver=args.solver, block_start=args.block_start, boundary_points=_ising_boundary_points(args))
    _emit(ResultTable(columns=columns, rows=rows, meta=meta), args)
    return EXIT_OK


def _block_boundary_points(bc: str, start: int, length: int, n_sites: int) -> int:
    """Entangling points the block shares with its complement."""
    if bc == "periodic":
        return 2
    return 2 - int(start == 0) - int(start + length == n_sites)


def _ising_boundary_points(args) -> int:
    length = args.N // 2 if args.half_block else max(args.ell or [0])
    return _block_boundary_points(args.bc, args.block_start, length, args.N)


# --- boson ------------------------------------------------------------------


def _cmd_boson(args, argv) -> int:
    masses = args.mass
    ells = [args.N // 2] if args.half_block else (args.ell or [])
    if not ells:
        raise SchemaError("pass --ell (one or more) or --half-block")

    def solve(mass: float):
        params = boson.BosonParams(mass=mass, n_sites=args.N, bc=args.bc)
        full = boson.chain_correlators(params)
        out = []
        for ell in ells:
            sites = np.arange(args.block_start, args.block_start + ell)
            out.append(boson.block_entropy(params, sites, full))
        return out

    results = _parallel_map(solve, masses, args)
    rows = []
    for mass, per_mass in zip(masses, results):
        for ell, entropy in zip(ells, per_mass):
            rows.append((mass, 1.0 / mass, args.block_start, ell, entropy))

    meta = _base_meta("boson", argv)
    meta.update(
        n_sites=args.N,
        bc=args.bc,
        block_start=args.block_start,
        boundary_points=_block_boundary_points(args.bc, args.block_start, max(ells), args.N),
    )
    table = ResultTable(
        columns=["mass", "xi", "start", "ell", "entropy"], rows=rows, meta=meta
    )
    _emit(table, args)
    return EXIT_OK


# --- fit --------------------------------------------------------------------


def _dataset_from_table(table: ResultTable, model: str) -> analysis.ScalingDataset:
    abscissa_column = "xi" if model == "off_critical" else "ell"
    x = np.asarray(table.column(abscissa_column), dtype=float)
    s = np.asarray(table.column("entropy"), dtype=float)
    order = np.argsort(x)
    x, s = x[order], s[order]
    keep = np.concatenate([[True], np.diff(x) > 0])
    if not np.all(keep):
        # collapse duplicate abscissae (e.g. both branches of a coupling sweep)
        uniq = np.unique(x)
        s = np.array([s[x == value].mean() for value in uniq])
        x = uniq
    size = table.meta.get("n_sites")
    bpts = table.meta.get("boundary_points")
    return analysis.ScalingDataset(
        abscissa=x,
        entropy=s,
        model=model,
        system_size=float(size) if size is not None else None,
        boundary_points=int(bpts) if bpts is not None else None,
    )


def _cmd_fit(args, argv) -> int:
    table = read_table(args.input)
    ds = _dataset_from_table(table, args.model)
    window = tuple(args.window) if args.window else None
    if args.model == "off_critical" and args.slope_only:
        slope = analysis.off_critical_slope(ds, window)
        meta = _base_meta("fit", argv)
        meta.update(model=args.model, input=args.input, slope_only=True)
        out = ResultTable(columns=["model", "slope", "n_points"], rows=[(args.model, slope, len(ds))], meta=meta)
        _emit(out, args)
        return EXIT_OK
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fit = analysis.fit_central_charge(ds, args.model, window)
    meta = _base_meta("fit", argv)
    meta.update(model=args.model, input=args.input)
    out = ResultTable(
        columns=["model", "c_est", "intercept", "rms_residual", "n_points", "poor_fit"],
        rows=[(fit.model, fit.c_est, fit.intercept, fit.rms_residual, fit.n_points, fit.poor_fit)],
        meta=meta,
    )
    _emit(out, args)
    if args.strict and fit.poor_fit:
        print(f"strict mode: rms residual {fit.rms_residual:.3g} flagged poor", file=sys.stderr)
        return EXIT_STRICT_FIT
    return EXIT_OK


# --- figure -----------------------------------------------------------------


def _cmd_figure(args, argv) -> int:
    lams = np.round(np.arange(args.lam_min, args.lam_max + 0.5 * args.lam_step, args.lam_step), 12)

    def solve(lam: float) -> float:
        bc = "periodic" if args.policy == "periodic_half" else "open"
        params = ising.TFIParams(lam=float(lam), n_sites=args.N, bc=bc)
        return ising.block_entropy(params, ising.BlockSpec(0, args.N // 2))

    entropies = _parallel_map(solve, list(lams), args)
    rows = [
        (float(lam), ising.correlation_length(float(lam)), entropy)
        for lam, entropy in zip(lams, entropies)
    ]
    meta = _base_meta("figure", argv)
    meta.update(
        n_sites=args.N,
        policy=args.policy,
        lam_min=args.lam_min,
        lam_max=args.lam_max,
        lam_step=args.lam_step,
        boundary_points=2 if args.policy == "periodic_half" else 1,
    )
    _emit(ResultTable(columns=["lam", "xi", "entropy"], rows=rows, meta=meta), args)
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entscale",
        description="Entanglement entropy scaling: predictions, lattice solvers, fits.",
    )
    parser.add_argument("--version", action="version", version=f"entscale {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="evaluate closed-form entropy laws")
    p.add_argument("--geometry", choices=_GEOMETRIES, required=True)
    p.add_argument("--ell", type=float, action="append", help="interval length (repeatable)")
    p.add_argument("--beta", type=float, help="inverse temperature")
    p.add_argument("--L", type=float, help="system size")
    p.add_argument("--xi", type=float, help="correlation length (off-critical)")
    p.add_argument("--boundary-points", type=int, default=1, help="A for off-critical")
    p.add_argument("--intervals", help="multi-interval set as 'u,v;u,v;...'")
    p.add_argument("--a", type=float, default=1.0, help="short-distance cutoff")
    p.add_argument("--c", type=float, required=True, help="central charge")
    p.add_argument("--k1", type=float, help="bulk additive constant")
    p.add_argument("--k1b", type=float, help="boundary additive constant")
    p.add_argument("--cn", help="Renyi prefactors as 'n=value,n=value'")
    p.add_argument("--renyi", type=int, action="append", help="also emit Tr rho^n (repeatable)")
    _add_common(p)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("ising", help="transverse-field Ising chain sweep")
    p.add_argument("--N", type=int, required=True, help="number of sites")
    p.add_argument("--lam", type=float, action="append", required=True, help="coupling (repeatable)")
    p.add_argument("--ell", type=int, action="append", help="block length (repeatable)")
    p.add_argument("--half-block", action="store_true", help="use the N/2 block")
    p.add_argument("--block-start", type=int, default=0)
    p.add_argument("--bc", choices=("periodic", "open"), default="periodic")
    p.add_argument("--solver", choices=("freefermion", "dense"), default="freefermion")
    p.add_argument("--renyi", type=int, action="append", help="also emit Tr rho^n (repeatable)")
    _add_common(p)
    p.set_defaults(func=_cmd_ising)

    p = sub.add_parser("boson", help="harmonic chain sweep")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--mass", type=float, action="append", required=True, help="oscillator gap (repeatable)")
    p.add_argument("--ell", type=int, action="append")
    p.add_argument("--half-block", action="store_true")
    p.add_argument("--block-start", type=int, default=0)
    p.add_argument("--bc", choices=("open", "periodic"), default="open")
    _add_common(p)
    p.set_defaults(func=_cmd_boson)

    p = sub.add_parser("fit", help="fit a previously written sweep table")
    p.add_argument("--input", required=True)
    p.add_argument("--model", choices=analysis.FIT_MODELS, required=True)
    p.add_argument("--window", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--slope-only", action="store_true", help="report d S / d ln xi instead of c")
    p.add_argument("--strict", action="store_true", help="exit 4 when the fit is flagged poor")
    _add_common(p)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("figure", help="entropy against coupling (lambda curve)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--lam-min", type=float, default=0.0)
    p.add_argument("--lam-max", type=float, default=2.0)
    p.add_argument("--lam-step", type=float, default=0.05)
    p.add_argument("--policy", choices=("periodic_half", "open_half"), default="periodic_half")
    _add_common(p)
    p.set_defaults(func=_cmd_figure)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args, argv)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (EntScaleError, ValueError) as exc:
        print(f"invalid request: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
