"""Command-line interface.

Subcommands: ``eval``, ``quantile``, ``sample`` (thin wrappers over the
distribution), ``fit`` (JSON report), ``compare`` (information-criterion
ranking), ``curves`` (fitted pdf/cdf over a data-driven grid plus histogram)
and ``shapes`` (pdf/hazard columns for one or more parameter sets).

Exit codes: 0 success, 1 usage or I/O error, 2 numerical non-convergence.

A model spec is one string: the baseline family tag followed by name=value
pairs, where ``m``, ``n``, ``theta``, ``alpha`` are the family shapes and the
rest belong to the baseline, e.g. ``"weibull m=2 n=1 theta=1 alpha=1
lambda=0.5 beta=2"``.  In ``fit``/``compare`` specs, supplied family values
are held fixed and everything else is estimated.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .baselines import BASELINE_FAMILIES, PARAM_ALIASES, make_baseline
from .datasets import BUILTIN_NAMES, Dataset, builtin_dataset, load_dataset
from .family import BgmoDistribution, BgmoParams
from .fitting import FitConfig, FitError, ModelTemplate, fit_mle

FAMILY_NAMES = ("m", "n", "theta", "alpha")

# shown by ``shapes`` when no spec is given; spans monotone and bathtub hazards
DEFAULT_GALLERY = (
    "exponential m=1 n=1 theta=1 alpha=1 lambda=1",
    "exponential m=2 n=1.5 theta=0.8 alpha=2 lambda=1",
    "weibull m=0.5 n=2 theta=1.5 alpha=0.3 lambda=1 beta=0.5",
    "weibull m=3 n=0.4 theta=0.6 alpha=1.5 lambda=1 beta=2",
    "lomax m=1.5 n=1 theta=2 alpha=0.5 beta=2 delta=1",
    "frechet m=1 n=2 theta=1 alpha=3 lambda=2 delta=1",
)


class CliError(Exception):
    """Usage or I/O problem; reported on stderr with exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse defaults to exit code 2, which this tool reserves for
        # numerical non-convergence
        self.print_usage(sys.stderr)
        raise CliError(message)


def _parse_pairs(tokens):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise CliError(f"expected name=value, got {tok!r}")
        name, _, value = tok.partition("=")
        out[name.strip()] = value.strip()
    return out


def parse_model_spec(text: str):
    """Split a spec string into (baseline_tag, family dict, baseline dict)."""
    tokens = text.split()
    if not tokens:
        raise CliError("empty model spec")
    tag = tokens[0].lower()
    if tag not in BASELINE_FAMILIES:
        known = ", ".join(sorted(BASELINE_FAMILIES))
        raise CliError(f"unknown baseline family {tag!r} (known: {known})")
    pairs = _parse_pairs(tokens[1:])
    family = {}
    baseline = {}
    for name, value in pairs.items():
        if name in FAMILY_NAMES:
            family[name] = float(value)
        elif name == "z":
            baseline[name] = value
        else:
            baseline[name] = float(value)
    return tag, family, baseline


def build_distribution(spec: str) -> BgmoDistribution:
    tag, family, baseline = parse_model_spec(spec)
    missing = [n for n in FAMILY_NAMES if n not in family]
    if missing:
        raise CliError(f"model spec must set {missing} (got {spec!r})")
    try:
        return BgmoDistribution(BgmoParams(**family), make_baseline(tag, **baseline))
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _load_data(ref: str) -> Dataset:
    if ref.startswith("builtin:"):
        name = ref.split(":", 1)[1]
        if name not in BUILTIN_NAMES:
            raise CliError(f"unknown builtin dataset {name!r} (known: {BUILTIN_NAMES})")
        return builtin_dataset(name)
    try:
        return load_dataset(ref)
    except FileNotFoundError:
        raise CliError(f"no such data file: {ref}") from None
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _parse_values(text: str) -> np.ndarray:
    toks = [tok for piece in text.split(",") for tok in piece.split()]
    try:
        return np.array([float(tok) for tok in toks])
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _emit(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _fmt(x: float) -> str:
    return repr(float(x))


def _fit_config(args) -> FitConfig:
    return FitConfig(
        starts=args.starts,
        max_iter=args.max_iter,
        seed=args.seed,
        level=args.level,
    )


def _fit_template(spec: str):
    tag, family, baseline = parse_model_spec(spec)
    fixed = dict(family)
    for name, value in baseline.items():
        if name == "z":
            continue  # hazard-shape selectors are not fittable parameters
        fixed[PARAM_ALIASES.get(name, name)] = value
    return ModelTemplate(tag, fixed=fixed)


# --- subcommand bodies -------------------------------------------------------


def _cmd_eval(args) -> int:
    dist = build_distribution(args.dist)
    fn = getattr(dist, args.fn)
    for t in _parse_values(args.t):
        print(_fmt(fn(float(t))))
    return 0


def _cmd_quantile(args) -> int:
    dist = build_distribution(args.dist)
    for u in _parse_values(args.u):
        if not 0.0 < u < 1.0:
            raise CliError(f"quantile level must be in (0, 1), got {u}")
        print(_fmt(dist.quantile(float(u))))
    return 0


def _cmd_sample(args) -> int:
    dist = build_distribution(args.dist)
    if args.count < 1:
        raise CliError("--count must be positive")
    for v in dist.sample(args.count, args.seed):
        print(_fmt(v))
    return 0


def _cmd_fit(args) -> int:
    data = _load_data(args.data)
    spec = args.dist or args.baseline or "weibull"
    template = _fit_template(spec)
    try:
        result = fit_mle(template, data.values, _fit_config(args))
    except (FitError, ValueError) as exc:
        raise CliError(str(exc)) from None
    _emit(args.out, result.to_json() + "\n")
    return 0 if result.converged else 2


def _cmd_compare(args) -> int:
    if len(args.candidates) < 2:
        raise CliError("compare needs at least two --candidate specs")
    data = _load_data(args.data)
    rows = []
    any_bad = False
    for spec in args.candidates:
        label = spec
        try:
            result = fit_mle(_fit_template(spec), data.values, _fit_config(args))
            rows.append(
                (
                    result.aic,
                    result.bic,
                    label,
                    result.caic,
                    result.hqic,
                    result.log_likelihood,
                    "yes" if result.converged else "no",
                )
            )
            any_bad = any_bad or not result.converged
        except (FitError, ValueError) as exc:
            rows.append((float("inf"), float("inf"), label, float("nan"), float("nan"), float("nan"), f"failed: {exc}"))
            any_bad = True
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    lines = ["# model\taic\tbic\tcaic\thqic\tlogLik\tconverged"]
    for aic, bic, label, caic, hqic, ll, conv in rows:
        lines.append(
            "\t".join([label, _fmt(aic), _fmt(bic), _fmt(caic), _fmt(hqic), _fmt(ll), conv])
        )
    _emit(args.out, "\n".join(lines) + "\n")
    return 2 if any_bad else 0


def _grid(data: np.ndarray, points: int, pad: float) -> np.ndarray:
    lo, hi = float(np.min(data)), float(np.max(data))
    span = hi - lo
    return np.linspace(lo - pad * span, hi + pad * span, points)


def _cmd_curves(args) -> int:
    data = _load_data(args.data)
    if args.fit:
        template = _fit_template(args.dist)
        result = fit_mle(template, data.values, _fit_config(args))
        dist = template.build(result.estimates)
    else:
        dist = build_distribution(args.dist)
    grid = _grid(data.values, args.grid_points, args.pad)
    pdf = dist.pdf(grid)
    cdf = dist.cdf(grid)
    edges = np.histogram_bin_edges(data.values, bins="fd")
    dens, _ = np.histogram(data.values, bins=edges, density=True)
    lines = ["# t\tpdf\tcdf\tbin_left\tbin_right\tbin_density"]
    nbins = len(dens)
    for i, t in enumerate(grid):
        row = [_fmt(t), _fmt(pdf[i]), _fmt(cdf[i])]
        if i < nbins:
            row += [_fmt(edges[i]), _fmt(edges[i + 1]), _fmt(dens[i])]
        else:
            row += ["nan", "nan", "nan"]
        lines.append("\t".join(row))
    _emit(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_shapes(args) -> int:
    specs = args.dists or list(DEFAULT_GALLERY)
    dists = [build_distribution(s) for s in specs]
    if args.t_max is not None:
        t_hi = args.t_max
    else:
        t_hi = max(float(d.quantile(0.99)) for d in dists)
    t_lo = max(float(max(d.support_low for d in dists)), 0.0)
    grid = np.linspace(t_lo, t_hi, args.grid_points + 1)[1:]  # skip the edge point
    cols = []
    for d in dists:
        fn = d.pdf if args.fn == "pdf" else d.hrf
        cols.append(fn(grid))
    header = "# t\t" + "\t".join(specs)
    lines = [header]
    for i, t in enumerate(grid):
        lines.append("\t".join([_fmt(t)] + [_fmt(c[i]) for c in cols]))
    _emit(args.out, "\n".join(lines) + "\n")
    return 0


# --- argument wiring ---------------------------------------------------------


def _add_fit_flags(sub):
    sub.add_argument("--starts", type=int, default=24, help="multi-start restarts")
    sub.add_argument("--max-iter", type=int, default=2000, help="simplex iteration cap")
    sub.add_argument("--seed", type=int, default=0, help="restart sampling seed")
    sub.add_argument("--level", type=float, default=0.05, help="1 - confidence level")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bgmo", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("eval", help="evaluate pdf/cdf/sf/hrf/rhrf/chrf at points")
    p.add_argument("--dist", required=True, help="full model spec")
    p.add_argument("--fn", default="pdf", choices=("pdf", "cdf", "sf", "hrf", "rhrf", "chrf"))
    p.add_argument("--t", required=True, help="comma or space separated points")
    p.set_defaults(run=_cmd_eval)

    p = subs.add_parser("quantile", help="evaluate the quantile function")
    p.add_argument("--dist", required=True)
    p.add_argument("--u", required=True, help="levels in (0,1)")
    p.set_defaults(run=_cmd_quantile)

    p = subs.add_parser("sample", help="draw an inverse-transform sample")
    p.add_argument("--dist", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=_cmd_sample)

    p = subs.add_parser("fit", help="maximum-likelihood fit; JSON report")
    p.add_argument("--data", required=True, help="file path or builtin:<name>")
    p.add_argument(
        "--dist",
        default=None,
        help="baseline tag plus any parameters to hold fixed",
    )
    p.add_argument("--model", default="bgmo", choices=("bgmo",), help="model family")
    p.add_argument("--baseline", default=None, help="baseline spec (alias for --dist)")
    p.add_argument("--out", default=None, help="report path (default stdout)")
    _add_fit_flags(p)
    p.set_defaults(run=_cmd_fit)

    p = subs.add_parser("compare", help="fit several specs, rank by AIC")
    p.add_argument("--data", required=True)
    p.add_argument(
        "--candidate",
        dest="candidates",
        action="append",
        default=[],
        help="model spec; repeat for each candidate",
    )
    p.add_argument("--out", default=None)
    _add_fit_flags(p)
    p.set_defaults(run=_cmd_compare)

    p = subs.add_parser("curves", help="fitted pdf/cdf columns plus data histogram")
    p.add_argument("--data", required=True)
    p.add_argument("--dist", required=True, help="model spec (full, unless --fit)")
    p.add_argument("--fit", action="store_true", help="fit the spec to the data first")
    p.add_argument("--grid-points", type=int, default=400)
    p.add_argument("--pad", type=float, default=0.05, help="grid margin as a range fraction")
    p.add_argument("--out", default=None)
    _add_fit_flags(p)
    p.set_defaults(run=_cmd_curves)

    p = subs.add_parser("shapes", help="pdf or hazard columns for parameter sets")
    p.add_argument(
        "--dist",
        dest="dists",
        action="append",
        default=[],
        help="model spec; repeat per column (default: built-in gallery)",
    )
    p.add_argument("--fn", default="pdf", choices=("pdf", "hrf"))
    p.add_argument("--grid-points", type=int, default=200)
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(run=_cmd_shapes)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.run(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
