"""Command-line front end for the three experiments plus codec verification.

Subcommands: ``ber-sweep`` (BER curves per codec), ``energy-distance``
(per-bit energy vs distance with crossover and sensitivity report),
``route-sim`` (multi-hop route energy trials) and ``codec-test``
(pass/fail codec verification).  Exit codes: 0 success, 1 usage or
configuration error, 2 runtime failure.  Diagnostics go to stderr; stdout
and output files carry data only.  Every output is reproducible
byte-for-byte from (config, seed): files are fully computed first, then
written through an atomic rename.
"""

from __future__ import annotations

import argparse
import dataclasses
import itertools
import math
import os
import sys
import tempfile

import numpy as np

from .energy import (CodedVariant, total_energy_coded, total_energy_uncoded,
                     crossover_distance)
from .errors import ConfigError, RoutingError
from .fec import (CodeSpec, conv_spec, golay, golay_spec, none_spec, rs_spec,
                  ReedSolomon, conv_encode, viterbi_decode)
from .link import StopRule, SweepSpec, run_sweep
from .netsim import EnsembleSpec, compare_coded_uncoded
from .params import load_config

_EXIT_OK = 0
_EXIT_USAGE = 1
_EXIT_RUNTIME = 2

_GNUPLOT_TEMPLATE = """\
# BER vs Eb/N0 curves; run: gnuplot plot_ber.gnuplot
set terminal pngcairo size 900,600
set output 'ber_curves.png'
set datafile separator ','
set logscale y
set xlabel 'Eb/N0 per information bit (dB)'
set ylabel 'BER'
set grid
set key bottom left
plot {plots}
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(_EXIT_USAGE)


def _codec_by_name(name: str, g_code_db: float) -> CodeSpec:
    if name == "none":
        return none_spec()
    if name == "golay":
        return golay_spec(g_code_db)
    if name == "reed_solomon":
        return rs_spec(g_code_db)
    if name == "convolutional":
        return conv_spec(g_code_db=g_code_db)
    raise ConfigError(f"unknown codec {name!r}")


def _write_atomic(path: str, text: str):
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-gmsklink-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _variants(selection: str):
    if selection == "both":
        return (CodedVariant.LITERAL, CodedVariant.CIRCUIT_UNSCALED)
    return (CodedVariant(selection),)


def _float_grid(start: float, stop: float, step: float):
    if step <= 0 or stop < start:
        raise ConfigError("grid needs step > 0 and stop >= start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


# ---------------------------------------------------------------- ber-sweep


def cmd_ber_sweep(cfg, out_dir: str, quick: bool) -> int:
    codecs = cfg["run.codecs"]
    if quick:
        grid = [0.0, 3.0, 6.0]
        stop = StopRule(min_bit_errors=50, max_bits=100_000)
    else:
        grid = _float_grid(cfg["sweep.ebno_start_db"], cfg["sweep.ebno_stop_db"],
                           cfg["sweep.ebno_step_db"])
        stop = StopRule(min_bit_errors=cfg["sweep.min_bit_errors"],
                        max_bits=cfg["sweep.max_bits"])
    modem = cfg.modem_config()
    seed = cfg["run.seed"]
    g_code = cfg["codec.g_code_db"]

    curves = {}
    for name in codecs:
        spec = SweepSpec(ebno_points=tuple(grid),
                         codec=_codec_by_name(name, g_code),
                         modem=modem, stop_rule=stop, seed=seed)
        curves[name] = run_sweep(spec)
        print(f"swept {name}: {len(grid)} points", file=sys.stderr)

    outputs = {}
    for name, points in curves.items():
        rows = [(name, p) for p in points]
        outputs[f"ber_{name}.csv"] = _ber_csv_text(rows)
    merged = [(name, p) for name in codecs for p in curves[name]]
    outputs["ber_comparison.csv"] = _ber_csv_text(merged)
    plots = ", \\\n     ".join(
        f"'ber_{name}.csv' skip 1 using 1:3 with linespoints title '{name}'"
        for name in codecs
    )
    outputs["plot_ber.gnuplot"] = _GNUPLOT_TEMPLATE.format(plots=plots)

    for fname, text in outputs.items():
        _write_atomic(os.path.join(out_dir, fname), text)
    return _EXIT_OK


def _ber_csv_text(rows) -> str:
    lines = ["ebno_db,codec,ber,errors,bits,ci_low,ci_high,low_confidence_flag"]
    for codec_name, p in rows:
        lines.append(
            f"{p.ebno_db!r},{codec_name},{p.measured_ber!r},{p.bit_errors},"
            f"{p.bits_simulated},{p.ci_low!r},{p.ci_high!r},{int(p.low_confidence)}"
        )
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------- energy-distance


def cmd_energy_distance(cfg, out_dir: str, quick: bool) -> int:
    power = cfg.power_profile()
    timing = cfg.timing_profile()
    budget = cfg.link_budget()
    codec_power = cfg.codec_power()
    spec = golay_spec(cfg["codec.g_code_db"])
    pe = cfg["link.target_pe"]
    alpha = cfg.alpha()
    step = max(cfg["scan.d_step_m"], 5.0) if quick else cfg["scan.d_step_m"]
    grid = _float_grid(cfg["scan.d_start_m"], cfg["scan.d_stop_m"], step)

    crossovers = {}
    for variant in CodedVariant:
        crossovers[variant] = crossover_distance(
            power, timing, budget, pe, alpha, spec, codec_power, variant)

    distances = sorted(set(grid) | {d for d in crossovers.values() if d is not None})
    lines = ["d_m,e_uncoded,e_coded_literal,e_coded_circuit_unscaled,"
             "savings_literal,savings_circuit_unscaled"]
    for d in distances:
        link = dataclasses.replace(budget, distance_m=d)
        unc = total_energy_uncoded(power, timing, link, pe, alpha).e_per_info_bit
        row = [repr(float(d)), repr(unc)]
        savings = []
        for variant in CodedVariant:
            coded = total_energy_coded(power, timing, link, pe, alpha, spec,
                                       codec_power, variant).e_per_info_bit
            row.append(repr(coded))
            savings.append(repr(1.0 - coded / unc))
        lines.append(",".join(row + savings))
    scan_text = "\n".join(lines) + "\n"

    # sensitivity: savings at 100 m per (variant, alpha), distance from the
    # 47% published target, and the crossover distance per combination
    target = 0.47
    sens = ["variant,alpha,savings_at_100m,crossover_m,abs_diff_from_0.47,selected"]
    best = None
    rows = []
    for variant, a in itertools.product(CodedVariant, cfg["scan.alpha_list"]):
        link = dataclasses.replace(budget, distance_m=100.0)
        unc = total_energy_uncoded(power, timing, link, pe, a).e_per_info_bit
        coded = total_energy_coded(power, timing, link, pe, a, spec,
                                   codec_power, variant).e_per_info_bit
        saving = 1.0 - coded / unc
        d_star = crossover_distance(power, timing, budget, pe, a, spec,
                                    codec_power, variant)
        diff = abs(saving - target)
        rows.append((variant.value, a, saving, d_star, diff))
        if best is None or diff < best[4]:
            best = (variant.value, a, saving, d_star, diff)
    for variant_name, a, saving, d_star, diff in rows:
        selected = int((variant_name, a) == (best[0], best[1]))
        d_text = repr(d_star) if d_star is not None else "none"
        sens.append(f"{variant_name},{a!r},{saving!r},{d_text},{diff!r},{selected}")
    sens_text = "\n".join(sens) + "\n"

    _write_atomic(os.path.join(out_dir, "energy_distance.csv"), scan_text)
    _write_atomic(os.path.join(out_dir, "sensitivity.csv"), sens_text)
    for variant, d in crossovers.items():
        print(f"crossover [{variant.value}]: {d if d is not None else 'none'} m",
              file=sys.stderr)
    return _EXIT_OK


def selected_variant(cfg) -> CodedVariant:
    """The (variant, alpha) sensitivity winner's variant; used by route-sim."""
    power = cfg.power_profile()
    timing = cfg.timing_profile()
    budget = cfg.link_budget(100.0)
    codec_power = cfg.codec_power()
    spec = golay_spec(cfg["codec.g_code_db"])
    pe = cfg["link.target_pe"]
    best = None
    for variant, a in itertools.product(CodedVariant, cfg["scan.alpha_list"]):
        unc = total_energy_uncoded(power, timing, budget, pe, a).e_per_info_bit
        coded = total_energy_coded(power, timing, budget, pe, a, spec,
                                   codec_power, variant).e_per_info_bit
        diff = abs((1.0 - coded / unc) - 0.47)
        if best is None or diff < best[0]:
            best = (diff, variant)
    return best[1]


# ----------------------------------------------------------------- route-sim


def cmd_route_sim(cfg, out_dir: str, quick: bool, variant_selection: str) -> int:
    power = cfg.power_profile()
    timing = cfg.timing_profile()
    budget = cfg.link_budget()
    codec_power = cfg.codec_power()
    spec = golay_spec(cfg["codec.g_code_db"])
    pe = cfg["link.target_pe"]
    alpha = cfg.alpha()
    trials = 100 if quick else cfg["route.trials"]
    seed = cfg["run.seed"]

    ensembles = {
        "replication": EnsembleSpec(
            mode="replication", n_relays=cfg["route.n_relays"],
            hop_range=(cfg["route.hop_min_m"], cfg["route.hop_max_m"]),
            seed=seed),
        "geometry": EnsembleSpec(
            mode="geometry", n_nodes=cfg["route.n_nodes"],
            field_width=cfg["route.field_m"], field_height=cfg["route.field_m"],
            max_hop_m=cfg["route.max_hop_m"], seed=seed),
    }

    outputs = {}
    for mode, ens in ensembles.items():
        for variant in _variants(variant_selection):
            stats = compare_coded_uncoded(ens, trials, power, timing, budget,
                                          pe, alpha, spec, codec_power, variant)
            lines = ["trial,e_uncoded_J,e_coded_J,savings_fraction"]
            for i, (e_u, e_c, s) in enumerate(stats.samples):
                lines.append(f"{i},{e_u!r},{e_c!r},{s!r}")
            mean_u = sum(s[0] for s in stats.samples) / stats.n_trials
            mean_c = sum(s[1] for s in stats.samples) / stats.n_trials
            lines.append(f"mean,{mean_u!r},{mean_c!r},{stats.mean!r}")
            name = f"route_{mode}_{variant.value.replace('-', '_')}.csv"
            outputs[name] = "\n".join(lines) + "\n"
            print(f"{mode}/{variant.value}: mean savings {stats.mean:+.4f} "
                  f"over {stats.n_trials} trials", file=sys.stderr)

    for fname, text in outputs.items():
        _write_atomic(os.path.join(out_dir, fname), text)
    return _EXIT_OK


# ---------------------------------------------------------------- codec-test


def cmd_codec_test(quick: bool, inject_fault: bool) -> int:
    rng = np.random.default_rng(2024)
    report = []
    all_ok = True

    # Golay codeword weights: every codeword weight must be 0, 8, 12, 16 or 24
    n_msgs = 256 if quick else 4096
    msgs = np.arange(n_msgs, dtype=np.uint32)
    words = golay.encode_words(msgs)
    if inject_fault:
        # message 1's codeword is a generator row; flipping one of its bits
        # is exactly a flipped generator-matrix entry
        words = words.copy()
        words[1] ^= 1
    weights = np.bitwise_count(words)
    ok = bool(np.isin(weights, (0, 8, 12, 16, 24)).all())
    report.append(("golay-weights", ok))
    all_ok &= ok

    # Golay correction radius
    patterns = [0] + [1 << a for a in range(24)]
    patterns += [(1 << a) | (1 << b) for a in range(24) for b in range(a + 1, 24)]
    if not quick:
        patterns += [(1 << a) | (1 << b) | (1 << c)
                     for a in range(24) for b in range(a + 1, 24)
                     for c in range(b + 1, 24)]
    ok = True
    for e in patterns:
        decoded, _, failed = golay.decode_words(words ^ np.uint32(e))
        if failed.any() or not np.array_equal(decoded, msgs):
            ok = False
            break
    report.append(("golay-radius", ok))
    all_ok &= ok

    # Reed-Solomon randomized correction
    rs = ReedSolomon()
    trials = 200 if quick else 5000
    ok = True
    for _ in range(trials):
        msg = rng.integers(0, 16, rs.k)
        word = rs.encode(msg)
        nerr = int(rng.integers(1, rs.t + 1))
        pos = rng.choice(rs.n, nerr, replace=False)
        corrupted = word.copy()
        for p in pos:
            corrupted[p] ^= int(rng.integers(1, 16))
        got, _, failed = rs.decode_word(corrupted)
        if failed or not np.array_equal(got, word):
            ok = False
            break
    report.append(("rs-correction", ok))
    all_ok &= ok

    # Viterbi roundtrip
    trials = 100 if quick else 2000
    ok = True
    for _ in range(trials):
        bits = rng.integers(0, 2, 97).astype(np.uint8)
        if not np.array_equal(viterbi_decode(conv_encode(bits)), bits):
            ok = False
            break
    report.append(("viterbi-roundtrip", ok))
    all_ok &= ok

    for name, passed in report:
        print(f"{name}: {'PASS' if passed else 'FAIL'}")
    print(f"codec-test: {'PASS' if all_ok else 'FAIL'}")
    return _EXIT_OK if all_ok else _EXIT_RUNTIME


# --------------------------------------------------------------------- main


def _build_parser() -> _Parser:
    parser = _Parser(prog="gmsklink", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="parameter file")
    common.add_argument("--seed", type=int, metavar="N", help="override run.seed")
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--quick", action="store_true",
                        help="reduced trial counts (still deterministic)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ber-sweep", parents=[common],
                       help="Monte Carlo BER curves per codec")
    p.add_argument("--codecs", metavar="LIST",
                   help="comma-separated subset of none,golay,reed_solomon,convolutional")

    sub.add_parser("energy-distance", parents=[common],
                   help="per-bit energy vs distance scan with crossover")

    p = sub.add_parser("route-sim", parents=[common],
                       help="multi-hop route energy comparison")
    p.add_argument("--variant", choices=("literal", "circuit-unscaled", "both"),
                   help="coded-energy interpretation variant")

    p = sub.add_parser("codec-test", parents=[common],
                       help="codec verification; exit 0 iff all pass")
    p.add_argument("--inject-fault", action="store_true",
                   help="flip a generator entry to prove the tests catch faults")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "codec-test":
            return cmd_codec_test(args.quick, args.inject_fault)

        cfg = load_config(args.config)
        overrides = {}
        if args.seed is not None:
            overrides["run.seed"] = args.seed
        if args.out is not None:
            overrides["run.out_dir"] = args.out
        if getattr(args, "codecs", None):
            overrides["run.codecs"] = tuple(
                s.strip() for s in args.codecs.split(",") if s.strip())
            for name in overrides["run.codecs"]:
                if name not in ("none", "golay", "reed_solomon", "convolutional"):
                    raise ConfigError(f"unknown codec {name!r}")
        if getattr(args, "variant", None):
            overrides["run.variant"] = args.variant
        cfg = cfg.with_overrides(overrides)
        out_dir = cfg["run.out_dir"]
        os.makedirs(out_dir, exist_ok=True)

        if args.command == "ber-sweep":
            return cmd_ber_sweep(cfg, out_dir, args.quick)
        if args.command == "energy-distance":
            return cmd_energy_distance(cfg, out_dir, args.quick)
        if args.command == "route-sim":
            return cmd_route_sim(cfg, out_dir, args.quick, cfg["run.variant"])
        parser.error(f"unknown command {args.command!r}")
    except (ConfigError, FileNotFoundError) as exc:
        print(f"gmsklink: config error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except (RoutingError, OSError, ValueError) as exc:
        print(f"gmsklink: runtime failure: {exc}", file=sys.stderr)
        return _EXIT_RUNTIME
    return _EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
