"""On-disk formats: bracketed triple lists and JSON class records."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .arrangement import ArrangementError, Profile, TripleSystem, profile_of

RECORD_FORMAT = "orchard-classes"
RECORD_VERSION = 1


class TripleParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.pos = pos
        self.line = line
        self.column = col


_TOKEN = re.compile(r"\s*(?:(\[)|(\])|(,)|(\d+)|(n\s*=\s*\d+)|(#[^\n]*)|(\S))")


class _Scanner:
    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def peek(self) -> tuple[str, str, int] | None:
        pos = self.pos
        while True:
            m = _TOKEN.match(self.text, pos)
            if m is None or m.end() == m.start() or not self.text[m.start():].strip():
                return None
            if m.group(6) is not None:
                pos = m.end()
                continue
            start = m.start(m.lastindex)
            kind = ["[", "]", ",", "int", "header", "comment", "junk"][m.lastindex - 1]
            return kind, m.group(m.lastindex), start

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise TripleParseError("unexpected end of input", self.text, len(self.text))
        m = _TOKEN.match(self.text, tok[2])
        self.pos = m.end()
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.take()
        if tok[0] != kind:
            raise TripleParseError(f"expected '{kind}', found {tok[1]!r}", self.text, tok[2])
        return tok


def _parse_one(sc: _Scanner) -> TripleSystem:
    text = sc.text
    n = None
    head = sc.peek()
    if head is not None and head[0] == "header":
        sc.take()
        n = int(head[1].split("=")[1])
    open_tok = sc.expect("[")
    triples: list[list[int]] = []
    positions: list[int] = []
    tok = sc.peek()
    if tok is not None and tok[0] == "]":
        sc.take()
    else:
        while True:
            start = sc.expect("[")[2]
            members = []
            for k in range(3):
                _, value, _ = sc.expect("int")
                members.append(int(value))
                if k < 2:
                    sc.expect(",")
            sc.expect("]")
            triples.append(members)
            positions.append(start)
            sep = sc.take()
            if sep[0] == "]":
                break
            if sep[0] != ",":
                raise TripleParseError(f"expected ',' or ']', found {sep[1]!r}", text, sep[2])
    labels = [x for t in triples for x in t]
    if n is None:
        n = max(labels, default=0)
        if n == 0:
            raise TripleParseError("empty list needs an explicit n= header", text, open_tok[2])
    for t, pos in zip(triples, positions):
        if min(t) < 1 or max(t) > n:
            raise TripleParseError(f"label outside 1..{n} in {t}", text, pos)
    seen: dict[tuple[int, int], int] = {}
    for t, pos in zip(triples, positions):
        if len(set(t)) != 3:
            raise TripleParseError(f"repeated label in {t}", text, pos)
        s = sorted(t)
        for p in ((s[0], s[1]), (s[0], s[2]), (s[1], s[2])):
            if p in seen:
                raise TripleParseError(
                    f"pair {{{p[0]},{p[1]}}} occurs in two triples "
                    f"(pseudolines would cross twice)", text, pos)
            seen[p] = pos
    return TripleSystem(n, triples)


def parse_triples(text: str) -> TripleSystem:
    """Parse one list such as ``[[1,2,3],[1,4,5]]``, optionally preceded by ``n=12``."""
    sc = _Scanner(text)
    ts = _parse_one(sc)
    rest = sc.peek()
    if rest is not None:
        raise TripleParseError(f"trailing input {rest[1]!r}", text, rest[2])
    return ts


def parse_triple_file(text: str) -> list[TripleSystem]:
    """Parse any number of lists; ``#`` starts a comment."""
    sc = _Scanner(text)
    out = []
    while sc.peek() is not None:
        out.append(_parse_one(sc))
    return out


def format_triples(ts: TripleSystem, header: bool = False) -> str:
    body = "[" + ",".join(f"[{a},{b},{c}]" for a, b, c in ts.triples) + "]"
    return f"n={ts.n}\n{body}" if header else body


# -- class records ---------------------------------------------------------


@dataclass
class ClassRecord:
    key: tuple[tuple[int, int, int], ...]
    n: int
    multiplicity: int = 1
    verdict: str | None = None
    evidence: dict[str, Any] = field(default_factory=dict)
    coordinates: list[tuple[float, float, float]] | None = None

    @property
    def triples(self) -> TripleSystem:
        return TripleSystem(self.n, self.key)

    @property
    def profile(self) -> Profile:
        return profile_of(self.triples)


def _round15(x: float) -> float:
    return float(f"{float(x):.15g}")


def _record_to_json(r: ClassRecord) -> dict[str, Any]:
    prof = r.profile
    doc: dict[str, Any] = {
        "key": format_triples(r.triples),
        "n": r.n,
        "profile": {f"t{k}": v for k, v in prof.t.items()},
        "multiplicity": r.multiplicity,
        "verdict": r.verdict,
    }
    if r.evidence:
        doc["evidence"] = r.evidence
    if r.coordinates is not None:
        doc["coordinates"] = [[_round15(c) for c in line] for line in r.coordinates]
    return doc


def emit_records(records: Iterable[ClassRecord], meta: dict[str, Any] | None = None) -> str:
    ordered = sorted(records, key=lambda r: (r.n, r.key))
    doc = {
        "format": RECORD_FORMAT,
        "version": RECORD_VERSION,
        "meta": meta or {},
        "count": len(ordered),
        "records": [_record_to_json(r) for r in ordered],
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def parse_records(text: str) -> tuple[list[ClassRecord], dict[str, Any]]:
    doc = json.loads(text)
    if doc.get("format") != RECORD_FORMAT:
        raise ValueError(f"not an {RECORD_FORMAT} document")
    out = []
    for item in doc["records"]:
        ts = parse_triples(f"n={item['n']}\n{item['key']}")
        rec = ClassRecord(
            key=ts.triples,
            n=ts.n,
            multiplicity=int(item.get("multiplicity", 1)),
            verdict=item.get("verdict"),
            evidence=item.get("evidence", {}),
            coordinates=[tuple(c) for c in item["coordinates"]] if "coordinates" in item else None,
        )
        declared = {int(k[1:]): v for k, v in item.get("profile", {}).items()}
        if declared and declared != dict(rec.profile.t):
            raise ArrangementError(f"profile {declared} inconsistent with key {item['key']}")
        out.append(rec)
    if len(out) != doc.get("count", len(out)):
        raise ValueError("record count mismatch")
    return out, doc.get("meta", {})


def looks_like_records(text: str) -> bool:
    return text.lstrip().startswith("{")


def load_systems(text: str) -> list[TripleSystem]:
    """Triple systems from either a record document or a triple-list file."""
    if looks_like_records(text):
        return [r.triples for r in parse_records(text)[0]]
    return parse_triple_file(text)


def format_coefficients(lines: Sequence[Sequence[float]]) -> list[tuple[float, float, float]]:
    return [tuple(_round15(c) for c in line) for line in lines]
