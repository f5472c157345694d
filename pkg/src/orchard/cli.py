"""Command-line interface: ``orchard <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from math import comb
from pathlib import Path
from typing import Sequence

from .arrangement import (
    ArrangementError,
    Profile,
    TripleSystem,
    green_tao_bound,
    melchior_feasible,
    pair_count_identity,
    profile_of,
)
from .boroczky import ClusterInstability, expected_profile, generate, intersection_profile, triple_system_of
from .canonical import are_isomorphic, canonical_labeling, dedupe
from .catalog import KNOWN_PROFILES, catalog_verdict, reference_classes
from .faces import face_vector
from .formats import (
    ClassRecord,
    TripleParseError,
    emit_records,
    format_coefficients,
    format_triples,
    load_systems,
    looks_like_records,
    parse_records,
)
from .realizer import PlanError, realize
from .svg import render_lines_svg, render_wiring_svg
from .sweep import SweepError, StartPairing, SweepWord, default_jobs, enumerate_words, find_word, pairing_for, parse_pairs, triples_of

log = logging.getLogger("orchard")


class CliError(Exception):
    """Failure with a message meant for the user."""


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc


def _reference_name(ts: TripleSystem) -> str | None:
    if ts.n != 12:
        return None
    for i, ref in reference_classes().items():
        if are_isomorphic(ts, ref)[0]:
            return f"C{i}"
    return None


# -- enumerate -----------------------------------------------------------------


def cmd_enumerate(args) -> int:
    pairing = parse_pairs(args.pairs, args.n) if args.pairs is not None else StartPairing.default(args.n)
    words = enumerate_words(pairing, args.target_t3, jobs=args.jobs,
                            normal_form=not args.all_orders)
    systems = [triples_of(w) for w in words]
    first_word: dict[TripleSystem, SweepWord] = {}
    for ts, w in zip(systems, words):
        first_word.setdefault(ts, w)
    records = []
    for c in dedupe(systems):
        w = first_word[c.representative]
        sweep = {"pairs": str(w.pairing), "moves": str(w),
                 "triples": format_triples(c.representative)}
        records.append(ClassRecord(c.key, c.representative.n, c.multiplicity,
                                   evidence={"sweep": sweep}))
    meta = {"command": "enumerate", "n": args.n, "pairs": str(pairing),
            "target_t3": args.target_t3, "words": len(words)}
    _write(emit_records(records, meta), args.out)
    if args.out not in (None, "-"):
        print(f"{len(records)} classes from {len(words)} sweep words -> {args.out}")
    return 0


# -- classify ------------------------------------------------------------------


def _face_check(ts: TripleSystem, word: SweepWord | None = None) -> tuple[bool | None, str]:
    """Melchior identity on the faces of a sweep realizing ``ts``, when one is found."""
    if word is None:
        pairing = pairing_for(ts)
        word = find_word(ts, pairing) if pairing is not None else None
    if word is None:
        return None, "no sweep word from line 1 in this labeling; face census skipped"
    f = face_vector(word)
    p = profile_of(ts)
    lhs = sum((3 - r) * k for r, k in p.t.items())
    rhs = 3 + sum((j - 3) * k for j, k in f.p.items())
    return lhs == rhs, f"faces {dict(sorted(f.p.items()))}, Melchior {lhs} = {rhs}"


def _word_from_record(rec: ClassRecord) -> SweepWord:
    sweep = rec.evidence.get("sweep")
    if not sweep:
        return None
    w = SweepWord.parse(parse_pairs(sweep["pairs"], rec.n), sweep["moves"])
    if canonical_labeling(triples_of(w))[0] != rec.key:
        raise CliError(f"stored sweep word does not produce key {format_triples(rec.triples)}")
    return w


def cmd_classify(args) -> int:
    text = _read(args.file)
    if looks_like_records(text):
        recs = parse_records(text)[0]
        items = [(r.triples, _word_from_record(r)) for r in recs]
    else:
        items = [(ts, None) for ts in load_systems(text)]
    if not items:
        raise CliError(f"{args.file} holds no triple lists")
    ok = True
    records = []
    for idx, (ts, word) in enumerate(items, 1):
        key, _ = canonical_labeling(ts)
        prof = profile_of(ts)
        pc = pair_count_identity(prof)
        mel = melchior_feasible(prof)
        faces_ok, faces_msg = _face_check(triples_of(word) if word else ts, word)
        name = _reference_name(ts)
        print(f"#{idx}: n={ts.n} {prof}" + (f" [{name}]" if name else ""))
        print(f"  key {format_triples(TripleSystem(ts.n, key))}")
        print(f"  pair count: {comb(ts.n, 2)} = {sum(comb(r, 2) * k for r, k in prof.t.items())}"
              f" {'ok' if pc else 'FAILED'}")
        print(f"  Melchior bound: {'feasible' if mel.feasible else f'infeasible (deficit {mel.deficit})'}")
        print(f"  {faces_msg}")
        ok &= pc and mel.feasible and faces_ok is not False
        records.append(ClassRecord(key, ts.n))
    if args.out:
        merged: dict = {}
        for r in records:
            slot = merged.setdefault(r.key, r)
            if slot is not r:
                slot.multiplicity += 1
        _write(emit_records(merged.values(), {"command": "classify"}), args.out)
    return 0 if ok else 1


# -- check-profile ---------------------------------------------------------------


def _parse_counts(text: str) -> dict[int, int]:
    counts: dict[int, int] = {}
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        r, sep, k = chunk.partition(":")
        try:
            r_i, k_i = int(r), int(k)
        except ValueError:
            raise CliError(f"bad count {chunk!r}; expected r:count, e.g. 3:19") from None
        if not sep or r_i < 2 or k_i < 0:
            raise CliError(f"bad count {chunk!r}; expected r:count with r >= 2")
        counts[r_i] = counts.get(r_i, 0) + k_i
    return counts


def profile_report(n: int, counts: dict[int, int]) -> tuple[bool, list[str]]:
    """(feasible, report lines) for point counts, inferring t2 when omitted."""
    lines = []
    counts = dict(counts)
    if 2 not in counts:
        t2 = comb(n, 2) - sum(comb(r, 2) * k for r, k in counts.items())
        if t2 < 0:
            lines.append(f"pair count: points use {comb(n, 2) - t2} pairs > C({n},2) = {comb(n, 2)}")
            return False, lines + ["infeasible (pair count)"]
        counts[2] = t2
        lines.append(f"t2={t2} inferred from the pair count")
    prof = Profile(n, counts)
    used = sum(comb(r, 2) * k for r, k in prof.t.items())
    if not pair_count_identity(prof):
        lines.append(f"pair count: {used} != C({n},2) = {comb(n, 2)}")
        return False, lines + ["infeasible (pair count)"]
    lines.append(f"pair count: {comb(n, 2)} = {used} ok")
    if prof.t3 > green_tao_bound(n):
        lines.append(f"advisory: t3={prof.t3} exceeds 1 + floor(n(n-3)/6) = {green_tao_bound(n)}")
    v = melchior_feasible(prof)
    if v.feasible:
        return True, lines + [f"feasible (Melchior slack {-v.deficit})"]
    return False, lines + [f"infeasible (Melchior deficit {v.deficit})"]


def cmd_check_profile(args) -> int:
    if args.catalog:
        for entry in KNOWN_PROFILES:
            feasible, reason = catalog_verdict(entry)
            print(f"{entry.name}: n={entry.profile.n} {entry.profile}: "
                  f"{'feasible' if feasible else 'infeasible'} ({reason})")
        return 0
    if args.n is None or args.t is None:
        raise CliError("check-profile needs --n and --t (or --catalog)")
    if args.n < 3:
        raise CliError("need at least 3 lines")
    feasible, lines = profile_report(args.n, _parse_counts(args.t))
    for line in lines[:-1]:
        print(f"  {line}")
    print(lines[-1])
    return 0


# -- boroczky ------------------------------------------------------------------


def cmd_boroczky(args) -> int:
    lines = generate(args.n)
    prof, found = intersection_profile(lines, args.eps)
    expected = expected_profile(args.n)
    print(f"B_{args.n}: {len(lines)} lines")
    for i, l in enumerate(format_coefficients(lines), 1):
        print(f"  line {i}: {l[0]:+.15g} {l[1]:+.15g} {l[2]:+.15g}")
    print(f"profile {prof}")
    print(f"expected {expected}")
    ts = triple_system_of(lines, args.eps)
    print(f"triples {format_triples(ts)}")
    if args.n == 12:
        iso = [name for i, ref in reference_classes().items()
               if are_isomorphic(ts, ref)[0] for name in [f"C{i}"]]
        print(f"isomorphic to {', '.join(iso) if iso else 'no reference class'}")
    if args.out:
        _write(format_triples(ts, header=True) + "\n", args.out)
    if args.svg:
        Path(args.svg).write_text(render_lines_svg(lines, ts, seed=0))
    return 0 if prof == expected else 1


# -- realize -------------------------------------------------------------------


def _realize_one(job) -> ClassRecord:
    ts, seed, samples, restarts = job
    v = realize(ts, seed=seed, samples=samples, restarts=restarts)
    coords = format_coefficients(v.lines) if v.lines is not None else None
    return ClassRecord(ts.triples, ts.n, verdict=v.kind, evidence=v.evidence, coordinates=coords)


def cmd_realize(args) -> int:
    text = _read(args.file)
    if looks_like_records(text):
        recs, _ = parse_records(text)
        systems = [r.triples for r in recs]
        mult = [r.multiplicity for r in recs]
    else:
        systems = load_systems(text)
        mult = [1] * len(systems)
    if args.only:
        wanted = {int(x) for x in args.only.split(",")}
        keep = [i for i in range(len(systems)) if i + 1 in wanted]
        systems, mult = [systems[i] for i in keep], [mult[i] for i in keep]
    jobs = [(ts, args.seed, args.samples, args.restarts) for ts in systems]
    if args.jobs > 1 and len(jobs) > 1:
        from multiprocessing import get_context

        with get_context("spawn").Pool(args.jobs) as pool:
            out = pool.map(_realize_one, jobs, chunksize=1)
    else:
        out = [_realize_one(j) for j in jobs]
    for rec, m, ts in zip(out, mult, systems):
        rec.multiplicity = m
        name = _reference_name(ts)
        detail = ""
        if rec.verdict == "Realizable":
            detail = f" (max residual {rec.evidence['max_residual']:.1e})"
        elif rec.verdict == "Obstructed":
            detail = f" ({rec.evidence['forced_incidences'][0]}; {rec.evidence['certificate']})"
        print(f"{name or format_triples(ts)}: {rec.verdict}{detail}")
    if args.out:
        meta = {"command": "realize", "seed": args.seed, "samples": args.samples,
                "restarts": args.restarts}
        _write(emit_records(out, meta), args.out)
    return 0


# -- render --------------------------------------------------------------------


def cmd_render(args) -> int:
    text = _read(args.file)
    coords = stored = None
    if looks_like_records(text):
        recs, _ = parse_records(text)
        if not recs:
            raise CliError(f"{args.file} holds no records")
        rec = _pick(recs, args.index)
        ts, coords = rec.triples, rec.coordinates
        stored = _word_from_record(rec)
    else:
        ts = _pick(load_systems(text), args.index)
    kind = args.kind
    if kind == "auto":
        kind = "lines" if coords is not None else "wiring"
    if kind == "lines":
        if coords is None:
            raise CliError("no coordinates to draw; run `orchard realize --out` first")
        svg = render_lines_svg(coords, ts, seed=args.seed)
    else:
        word = stored
        for cand in () if word is not None else (ts, TripleSystem(ts.n, canonical_labeling(ts)[0])):
            p = pairing_for(cand)
            word = find_word(cand, p) if p is not None else None
            if word is not None:
                break
        if word is None:
            raise CliError("no sweep word reproduces this triple list from line 1; "
                           "relabel so that line 1 meets (2,3), (4,5), ... in order")
        svg = render_wiring_svg(word)
    Path(args.svg).write_text(svg)
    print(f"wrote {kind} drawing to {args.svg}")
    return 0


def _pick(items, index: int):
    if not 1 <= index <= len(items):
        raise CliError(f"--index {index} out of range 1..{len(items)}")
    return items[index - 1]


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orchard", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="sweep, deduplicate and emit class records")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--pairs", help='pairs met by line 1 first, e.g. "2-3,4-5" (default: all)')
    e.add_argument("--target-t3", type=int, required=True)
    e.add_argument("--jobs", type=int, default=default_jobs(),
                   help="worker processes (default: $ORCHARD_JOBS or 1)")
    e.add_argument("--all-orders", action="store_true",
                   help="list every move order instead of one per wiring diagram")
    e.add_argument("--out")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("classify", help="canonical key, profile and identity checks")
    c.add_argument("file")
    c.add_argument("--out")
    c.set_defaults(func=cmd_classify)

    p = sub.add_parser("check-profile", help="pair-count and Melchior feasibility")
    p.add_argument("--n", type=int)
    p.add_argument("--t", help='point counts by multiplicity, e.g. "2:9,3:19"')
    p.add_argument("--catalog", action="store_true", help="report the built-in catalog")
    p.set_defaults(func=cmd_check_profile)

    b = sub.add_parser("boroczky", help="build B_n and count its intersection points")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--eps", type=float, default=1e-9)
    b.add_argument("--out", help="write the triple list here")
    b.add_argument("--svg", help="write a line drawing here")
    b.set_defaults(func=cmd_boroczky)

    r = sub.add_parser("realize", help="straight-line realizability per class")
    r.add_argument("file")
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--restarts", type=int, default=200)
    r.add_argument("--samples", type=int, default=1000)
    r.add_argument("--only", help="comma-separated 1-based indices of classes to process")
    r.add_argument("--jobs", type=int, default=default_jobs())
    r.add_argument("--out")
    r.set_defaults(func=cmd_realize)

    d = sub.add_parser("render", help="SVG of a wiring diagram or line drawing")
    d.add_argument("file")
    d.add_argument("--svg", required=True)
    d.add_argument("--index", type=int, default=1)
    d.add_argument("--kind", choices=("auto", "wiring", "lines"), default="auto")
    d.add_argument("--seed", type=int, default=0)
    d.set_defaults(func=cmd_render)
    return ap


def cli(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (CliError, TripleParseError, ArrangementError, SweepError, PlanError,
            ClusterInstability, ValueError) as exc:
        print(f"orchard {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"orchard {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
