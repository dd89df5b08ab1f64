"""Command line front end; every subcommand emits CSV.

Numbers are printed with 17 significant digits so curves can be compared
byte for byte between runs.  Each output starts with a ``#`` comment line
echoing the subcommand and its full parameter set.

SNR grids are given in dB as ``start:step:stop`` (stop inclusive) or as a
single value.  Patterns are accepted as a decimal index (``102``), a bit
string (``01100110``), or comma-separated bits (``0,1,1,0,0,1,1,0``).
Labelings are accepted by name (brgc, nbc, fbc, bsgc, ag) or as
comma-separated pattern indices (``15,60,102``).
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager

import numpy as np

from . import __version__, analytic, labeling_space, montecarlo, pattern_classes, verify
from .constellation import (
    BitPattern,
    Labeling,
    make_pam,
    named_labeling,
    pattern_from_index,
)
from .demod import ChannelParams, exact_llr, maxlog_llr, pattern_exact_llr, pattern_maxlog_llr
from .thresholds import (
    NoSignChangeError,
    bd_thresholds,
    midpoint_thresholds,
    transition_mask,
)

_NAMES = ("brgc", "nbc", "fbc", "bsgc", "ag")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def parse_grid(text: str) -> np.ndarray:
    """Parse ``start:step:stop`` (inclusive) or a single value."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) == 3:
            start, step, stop = (float(p) for p in parts)
            if step <= 0:
                raise ValueError
            if stop < start:
                raise ValueError
            count = int(round((stop - start) / step)) + 1
            grid = start + step * np.arange(count)
            return grid[grid <= stop + 1e-9]
        raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a value or start:step:stop, got {text!r}"
        ) from None


def parse_pattern(text: str, m_points: int) -> BitPattern:
    """Decimal index, contiguous bit string, or comma-separated bits."""
    text = text.strip()
    if "," in text:
        bits = tuple(int(b) for b in text.split(","))
        return BitPattern(bits)
    if len(text) == m_points and set(text) <= {"0", "1"}:
        return BitPattern(tuple(int(c) for c in text))
    return pattern_from_index(m_points, int(text))


def parse_labeling(text: str, m_points: int) -> Labeling:
    """Labeling name or comma-separated pattern indices."""
    text = text.strip()
    if text.lower() in _NAMES:
        return named_labeling(text, m_points)
    indices = [int(p) for p in text.split(",")]
    return Labeling.from_indices(m_points, indices)


@contextmanager
def _open_out(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _provenance(args: argparse.Namespace) -> str:
    skip = {"func", "out", "command"}
    fields = " ".join(
        f"{key}={value}"
        for key, value in sorted(vars(args).items())
        if key not in skip and value is not None
    )
    return f"# pamber {args.command} {fields}".rstrip()


def _emit(args, header: list[str], rows) -> None:
    with _open_out(args.out) as fh:
        fh.write(_provenance(args) + "\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _cmd_ber(args) -> int:
    grid = parse_grid(args.snr)
    constellation = make_pam(args.M)
    rows = []
    if args.labeling is not None:
        target = parse_labeling(args.labeling, args.M)
        for snr_db in grid:
            params = ChannelParams.from_db(snr_db)
            value = analytic.labeling_ber(target, constellation, params, args.demod)
            rows.append((_fmt(snr_db), _fmt(value)))
    else:
        pattern = parse_pattern(args.pattern, args.M)
        for snr_db in grid:
            params = ChannelParams.from_db(snr_db)
            if args.demod == "bd":
                thr = bd_thresholds(pattern, constellation, params)
            else:
                thr = midpoint_thresholds(constellation)
            value = analytic.pber_general(pattern, constellation, thr, params)
            rows.append((_fmt(snr_db), _fmt(value)))
    _emit(args, ["snr_db", "ber"], rows)
    return 0


def _cmd_llr(args) -> int:
    grid = parse_grid(args.snr)
    if grid.size != 1:
        print("usage: pamber llr expects a single --snr value", file=sys.stderr)
        return 2
    params = ChannelParams.from_db(float(grid[0]))
    constellation = make_pam(args.M)
    y = parse_grid(args.y)
    rows = []
    if args.labeling is not None:
        target = parse_labeling(args.labeling, args.M)
        exact = exact_llr(y, target, constellation, params)
        approx = maxlog_llr(y, target, constellation, params)
        header = (
            ["y"]
            + [f"exact_{j + 1}" for j in range(target.n_bits)]
            + [f"maxlog_{j + 1}" for j in range(target.n_bits)]
        )
        for i, yv in enumerate(y):
            rows.append(
                (_fmt(yv),)
                + tuple(_fmt(v) for v in exact[i])
                + tuple(_fmt(v) for v in approx[i])
            )
    else:
        pattern = parse_pattern(args.pattern, args.M)
        exact = pattern_exact_llr(y, pattern, constellation, params)
        approx = pattern_maxlog_llr(y, pattern, constellation, params)
        header = ["y", "exact", "maxlog"]
        for yv, e, a in zip(y, exact, approx):
            rows.append((_fmt(yv), _fmt(e), _fmt(a)))
    _emit(args, header, rows)
    return 0


def _cmd_thresholds(args) -> int:
    grid = parse_grid(args.snr)
    constellation = make_pam(args.M)
    pattern = parse_pattern(args.pattern, args.M)
    relevant = np.nonzero(transition_mask(pattern))[0]
    rows = []
    for snr_db in grid:
        params = ChannelParams.from_db(snr_db)
        thr = bd_thresholds(pattern, constellation, params)
        for k in relevant:
            rows.append((_fmt(snr_db), str(k + 1), _fmt(thr.betas[k])))
    _emit(args, ["snr_db", "k", "beta"], rows)
    return 0


def _cmd_classes(args) -> int:
    rows = []
    for cls in pattern_classes.enumerate_classes(args.M):
        rows.append(
            (
                str(cls.representative.index),
                " ".join(str(w) for w in cls.members),
                cls.symmetry,
                " ".join(str(a) for a in cls.coefficients),
            )
        )
    _emit(args, ["representative", "members", "symmetry", "coefficients"], rows)
    return 0


def _cmd_labelings(args) -> int:
    census = labeling_space.labeling_census(args.M)
    named = {}
    for name in _NAMES:
        try:
            lab = named_labeling(name, args.M)
        except ValueError:
            continue
        alpha = tuple(int(x) for x in analytic.labeling_coefficients(lab))
        named.setdefault(alpha, name.upper())
    rows = []
    for rank, cls in enumerate(census, start=1):
        rows.append(
            (
                str(rank),
                named.get(cls.alpha, ""),
                " ".join(str(w) for w in sorted(cls.witness.pattern_set)),
                " ".join(str(a) for a in cls.alpha),
                str(cls.population),
            )
        )
    _emit(args, ["rank", "name", "witness_patterns", "coefficients", "population"], rows)
    return 0


def _cmd_simulate(args) -> int:
    grid = parse_grid(args.snr)
    constellation = make_pam(args.M)
    if args.labeling is not None:
        target = parse_labeling(args.labeling, args.M)
    else:
        target = parse_pattern(args.pattern, args.M)
    config = montecarlo.SimConfig(
        trials=args.trials,
        seed=args.seed,
        snr_db_grid=tuple(float(s) for s in grid),
        demodulator=args.demod,
    )
    rows = [
        (
            _fmt(est.snr_db),
            est.demodulator,
            _fmt(est.ber),
            _fmt(est.stderr),
            str(args.trials),
            str(args.seed),
        )
        for est in montecarlo.simulate(target, constellation, config)
    ]
    _emit(args, ["snr_db", "demod", "ber", "stderr", "trials", "seed"], rows)
    return 0


def _cmd_verify(args) -> int:
    results = verify.run_all()
    width = max(len(r.name) for r in results)
    failures = 0
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status}  {result.name:<{width}}  ({result.seconds:6.2f}s)  {result.detail}")
        failures += not result.passed
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 1 if failures else 0


def _add_common(parser, *, m_default=None) -> None:
    parser.add_argument("--M", type=int, default=m_default, required=m_default is None,
                        help="constellation size")
    parser.add_argument("--out", default=None, help="output path (default stdout)")


def _add_target(parser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--pattern", help="pattern index, bit string, or comma bits")
    group.add_argument("--labeling", help="labeling name or comma-separated indices")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pamber",
        description="Exact and simulated bit-error rates for PAM constellations.",
    )
    parser.add_argument("--version", action="version", version=f"pamber {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ber", help="analytic BER or PBER curve")
    _add_common(p)
    _add_target(p)
    p.add_argument("--snr", required=True, help="dB grid start:step:stop")
    p.add_argument("--demod", choices=("sd", "abd", "bd"), default="abd")
    p.set_defaults(func=_cmd_ber)

    p = sub.add_parser("llr", help="exact and max-log L-values over a y grid")
    _add_common(p)
    _add_target(p)
    p.add_argument("--snr", required=True, help="single dB value")
    p.add_argument("--y", required=True, help="observation grid start:step:stop")
    p.set_defaults(func=_cmd_llr)

    p = sub.add_parser("thresholds", help="exact-L-value decision boundaries vs SNR")
    _add_common(p)
    p.add_argument("--pattern", required=True)
    p.add_argument("--snr", required=True, help="dB grid start:step:stop")
    p.set_defaults(func=_cmd_thresholds)

    p = sub.add_parser("classes", help="pattern equivalence classes")
    _add_common(p)
    p.set_defaults(func=_cmd_classes)

    p = sub.add_parser("labelings", help="census of labelings by BER curve")
    _add_common(p)
    p.set_defaults(func=_cmd_labelings)

    p = sub.add_parser("simulate", help="seeded Monte-Carlo BER estimates")
    _add_common(p)
    _add_target(p)
    p.add_argument("--snr", required=True, help="dB grid start:step:stop")
    p.add_argument("--demod", choices=("sd", "abd", "bd"), default="abd")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify", help="run the full self-check suite")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, NoSignChangeError) as exc:
        print(f"pamber: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
