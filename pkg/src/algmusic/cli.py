"""Command line: ``algmusic {cpt,mod,nr,fixtures} <verb> ...``.

Exit codes: 0 success, 1 fixture mismatch, 2 input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import figures
from .config import Config, ConfigError, load_config
from .counterpoint import (
    CounterpointInterval,
    CounterpointWorld,
    PolarityVariant,
    admissible_successors,
    analyze_sequence,
    counterpoint_symmetries,
    little_theorem_report,
)
from .fixtures import COUNTERPOINT_FIXTURES, run_fixture_suite
from .modulation import (
    CADENCES,
    QuantumNotFound,
    SweepEntry,
    cadential_sets,
    find_modulators,
    major_tonality,
    modulation_quantum,
    modulation_sweep,
)
from .neo_riemannian import Triad, format_word, parse_word, verify_group_properties, word_apply
from .pitch_algebra import AffineMap
from .report import (
    FORMATS,
    AnalysisReport,
    cadences_report,
    counterpoint_report,
    group_report,
    modulation_report,
    plr_report,
    render_report,
    successors_report,
    sweep_report,
    theorem_report,
)
from .scores import ChordEvent, VoiceEvent, extract_intervals, parse_events

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("algmusic")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse already exits 2; keep it explicit
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, help="output format (default from config, else md)")
    p.add_argument("--config", metavar="FILE", help="key=value config file")
    return p


def _world_opts() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument(
        "--variant",
        choices=[v.value for v in PolarityVariant],
        help="reading of the polarity condition (overrides polarity_variant)",
    )
    return p


def _figure_opts() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--figures", metavar="DIR", help="also write PNG figures into DIR")
    return p


def build_parser() -> argparse.ArgumentParser:
    common, world, figs = _common(), _world_opts(), _figure_opts()
    parser = _Parser(
        prog="algmusic",
        description="Counterpoint symmetries, modulation quanta and PLR/TI triad groups over Z/12Z.",
        epilog="Exit codes: 0 success, 1 fixture mismatch, 2 input error.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    cpt = groups.add_parser("cpt", help="counterpoint symmetries").add_subparsers(dest="verb", required=True)
    p = cpt.add_parser("analyze", parents=[common, world, figs], help="symmetry table for an interval or two-voice file")
    p.add_argument("file", help="interval list or onset,lower,upper file ('-' for stdin)")
    p.set_defaults(func=cmd_cpt_analyze)
    p = cpt.add_parser("successors", parents=[common, world], help="admissible successors of one consonance")
    p.add_argument("interval", help="e.g. 0+e.7")
    p.set_defaults(func=cmd_cpt_successors)
    p = cpt.add_parser("theorem", parents=[common, world, figs], help="successor counts for all 72 consonances")
    p.set_defaults(func=cmd_cpt_theorem)

    mod = groups.add_parser("mod", help="modulation quanta").add_subparsers(dest="verb", required=True)
    p = mod.add_parser("quantum", parents=[common], help="minimal modulation quantum")
    p.add_argument("--from", dest="source", required=True, metavar="KEY")
    p.add_argument("--to", dest="target", required=True, metavar="KEY")
    p.add_argument("--cadence", required=True, choices=sorted(CADENCES))
    p.add_argument("--modulator", help="e.g. e6*11 or e6*-1; default: every modulator")
    p.set_defaults(func=cmd_mod_quantum)
    p = mod.add_parser("cadences", parents=[common], help="cadential sets of a major key")
    p.add_argument("--key", required=True)
    p.set_defaults(func=cmd_mod_cadences)
    p = mod.add_parser("sweep", parents=[common], help="all modulators x all cadences")
    p.add_argument("--from", dest="source", required=True, metavar="KEY")
    p.add_argument("--to", dest="target", required=True, metavar="KEY")
    p.set_defaults(func=cmd_mod_sweep)

    nr = groups.add_parser("nr", help="PLR/TI groups").add_subparsers(dest="verb", required=True)
    p = nr.add_parser("apply", parents=[common], help="apply a word such as R,T7 to a triad")
    p.add_argument("--word", required=True)
    p.add_argument("--triad", required=True, help="C, c, F#, bb or deg:V@D")
    p.set_defaults(func=cmd_nr_apply)
    p = nr.add_parser("verify", parents=[common], help="orders, duality and regularity")
    p.set_defaults(func=cmd_nr_verify)

    fx = groups.add_parser("fixtures", help="embedded golden corpus").add_subparsers(dest="verb", required=True)
    p = fx.add_parser("run", parents=[common, world, figs], help="recompute and diff every fixture")
    p.set_defaults(func=cmd_fixtures_run)
    return parser


def _world(args, cfg: Config) -> CounterpointWorld:
    variant = getattr(args, "variant", None) or cfg.polarity_variant
    return CounterpointWorld(polarity_variant=PolarityVariant(variant))


def _emit(report: AnalysisReport, args, cfg: Config) -> None:
    sys.stdout.write(render_report(report, args.format or cfg.default_format))


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _announce(paths) -> None:
    for p in paths:
        print(f"wrote {p}", file=sys.stderr)


def cmd_cpt_analyze(args, cfg: Config) -> int:
    events = parse_events(_read(args.file))
    if not events:
        raise ValueError(f"{args.file}: no intervals")
    if isinstance(events[0], ChordEvent):
        raise ValueError(f"{args.file}: chord streams cannot be analysed as counterpoint")
    intervals = extract_intervals(events) if isinstance(events[0], VoiceEvent) else events
    world = _world(args, cfg)
    analysis = analyze_sequence(world, intervals)
    name = Path(args.file).stem if args.file != "-" else "stdin"
    _emit(counterpoint_report(analysis, world, name=name), args, cfg)
    if args.figures:
        _announce([figures.plot_parsimony(analysis, Path(args.figures) / f"{name}_parsimony.png", title=name)])
    return EXIT_OK


def cmd_cpt_successors(args, cfg: Config) -> int:
    world = _world(args, cfg)
    xi = CounterpointInterval.parse(args.interval)
    gs = counterpoint_symmetries(world, xi)
    _emit(successors_report(world, xi, gs, admissible_successors(world, xi)), args, cfg)
    return EXIT_OK


def cmd_cpt_theorem(args, cfg: Config) -> int:
    world = _world(args, cfg)
    report = little_theorem_report(world)
    _emit(theorem_report(world, report), args, cfg)
    if args.figures:
        _announce([figures.plot_successor_counts(report, Path(args.figures) / "successor_counts.png")])
    return EXIT_OK


def cmd_mod_quantum(args, cfg: Config) -> int:
    source, target = major_tonality(args.source), major_tonality(args.target)
    if args.modulator:
        modulators = [AffineMap.parse(args.modulator)]
        if modulators[0] not in find_modulators(source, target):
            raise ValueError(f"{modulators[0]} does not map {source} onto {target}")
    else:
        modulators = sorted(find_modulators(source, target), key=lambda m: (m.scale, m.shift))
    cadence = CADENCES[args.cadence]
    found, missing = [], []
    for m in modulators:
        try:
            found.append(modulation_quantum(source, target, m, cadence))
        except QuantumNotFound:
            missing.append(SweepEntry(m, cadence, None))
    if found and not missing:
        _emit(modulation_report(found), args, cfg)
    else:
        entries = [SweepEntry(r.modulator, cadence, r) for r in found] + missing
        _emit(sweep_report(source, target, entries), args, cfg)
    return EXIT_OK


def cmd_mod_cadences(args, cfg: Config) -> int:
    key = major_tonality(args.key)
    _emit(cadences_report(key, cadential_sets(key)), args, cfg)
    return EXIT_OK


def cmd_mod_sweep(args, cfg: Config) -> int:
    source, target = major_tonality(args.source), major_tonality(args.target)
    _emit(sweep_report(source, target, modulation_sweep(source, target)), args, cfg)
    return EXIT_OK


def cmd_nr_apply(args, cfg: Config) -> int:
    word = parse_word(args.word)
    start = Triad.parse(args.triad)
    _emit(plr_report(format_word(word), start, word_apply(word, start)), args, cfg)
    return EXIT_OK


def cmd_nr_verify(args, cfg: Config) -> int:
    report = verify_group_properties()
    _emit(group_report(report), args, cfg)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_fixtures_run(args, cfg: Config) -> int:
    world = _world(args, cfg)
    report = run_fixture_suite(world)
    _emit(report, args, cfg)
    if args.figures:
        out = Path(args.figures)
        paths = [figures.plot_fixture_summary(report, out / "fixtures_summary.png")]
        analyses = []
        for fx in COUNTERPOINT_FIXTURES:
            try:
                analyses.append((fx.name, analyze_sequence(world, fx.sequence())))
            except ValueError:
                continue
        paths += figures.write_sequence_figures(analyses, out)
        _announce(paths)
    mismatches = report.metadata["mismatches"]
    if mismatches:
        print(f"{mismatches} fixture mismatches", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except (ConfigError, ValueError, KeyError, OSError) as exc:
        print(f"algmusic: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
