from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from orchard.boroczky import generate, triple_system_of
from orchard.sweep import StartPairing, SweepError, SweepWord, enumerate_words, parse_pairs
from orchard.svg import render_lines_svg, render_wiring_svg

NS = "{http://www.w3.org/2000/svg}"


def _count(svg: str, tag: str, cls: str) -> int:
    root = ET.fromstring(svg.encode())
    return sum(1 for e in root.iter(NS + tag) if e.get("class") == cls)


def test_wiring_12_19(words_12_19):
    svg = render_wiring_svg(words_12_19[0])
    assert _count(svg, "polyline", "wire") == 12
    assert _count(svg, "circle", "triple") == 19


def test_wiring_three_lines_no_triples():
    w = enumerate_words(parse_pairs("", 3), 0)[0]
    svg = render_wiring_svg(w)
    assert _count(svg, "polyline", "wire") == 3
    assert _count(svg, "circle", "triple") == 0


def test_incomplete_word_rejected():
    with pytest.raises(SweepError):
        render_wiring_svg(SweepWord(StartPairing.default(5), ()))


def test_lines_drawing():
    lines = generate(12)
    svg = render_lines_svg(lines, triple_system_of(lines))
    assert _count(svg, "line", "line") == 12
    assert _count(svg, "circle", "triple") == 19
    assert render_lines_svg(lines, seed=1) == render_lines_svg(lines, seed=1)
