"""Readers and writers for the plain-text input formats.

All readers raise ``ParseError`` carrying the path, 1-based line number and
the expected token. Blank lines and ``#`` comments are ignored everywhere.
"""
from __future__ import annotations

import re
from pathlib import Path

from .errors import ParseError, QtwistError, StructuralError
from .homology import Cocycle
from .knots import MarkedPresentation, PDCode, pd_to_presentation
from .quandle import FiniteQuandle, FreeQuandleElement, Presentation
from .ring import parse_group


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(path, None, "a readable file", exc.strerror) from exc


def _ints(path, n, line, expected):
    try:
        return [int(tok) for tok in line.replace(",", " ").split()]
    except ValueError:
        raise ParseError(path, n, expected, line) from None


# --- quandle tables ---------------------------------------------------------


def parse_table(text: str, path="<string>") -> list[list[int]]:
    """Square table with in-range entries; the quandle axioms are not checked."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError(path, 1, "the quandle order n", "end of file")
    n0, first = lines[0]
    try:
        order = int(first)
    except ValueError:
        raise ParseError(path, n0, "the quandle order n", first) from None
    if order < 1:
        raise ParseError(path, n0, "a positive order", first)
    rows = []
    for k in range(order):
        if 1 + k >= len(lines):
            raise ParseError(path, lines[-1][0] + 1, f"table row {k}", "end of file")
        n, line = lines[1 + k]
        row = _ints(path, n, line, f"{order} integers")
        if len(row) != order:
            raise ParseError(path, n, f"{order} integers", line)
        if any(not 0 <= v < order for v in row):
            raise ParseError(path, n, f"entries in 0..{order - 1}", line)
        rows.append(row)
    if len(lines) > 1 + order:
        n, line = lines[1 + order]
        raise ParseError(path, n, "end of file", line)
    return rows


def parse_quandle(text: str, path="<string>", name=None) -> FiniteQuandle:
    rows = parse_table(text, path)
    try:
        return FiniteQuandle(rows, name=name or Path(str(path)).stem)
    except StructuralError as exc:
        raise ParseError(path, None, "a table satisfying the quandle axioms", str(exc)) from exc


def read_table(path) -> list[list[int]]:
    return parse_table(_read(path), path)


def read_quandle(path) -> FiniteQuandle:
    return parse_quandle(_read(path), path)


def format_quandle(X: FiniteQuandle) -> str:
    rows = [" ".join(str(int(v)) for v in row) for row in X.table]
    return "\n".join([str(X.order), *rows]) + "\n"


# --- presentations ----------------------------------------------------------

_WORD = re.compile(r"^\s*([^\s^\[\]']+)\s*(?:\^\s*\[([^\]]*)\])?\s*$")


def parse_word(text: str, names, path="<string>", line=None) -> FreeQuandleElement:
    m = _WORD.match(text)
    if not m:
        raise ParseError(path, line, "a word 'base' or 'base^[items]'", text.strip())
    index = {nm: i for i, nm in enumerate(names)}

    def lookup(tok):
        if tok not in index:
            raise ParseError(path, line, "a generator name", tok)
        return index[tok]

    base = lookup(m.group(1))
    letters = []
    if m.group(2) is not None:
        items = m.group(2).split()
        if not items:
            raise ParseError(path, line, "at least one item inside ^[ ]", text.strip())
        for item in items:
            sign = -1 if item.endswith("'") else 1
            letters.append((lookup(item.rstrip("'")), sign))
    return FreeQuandleElement(base, tuple(letters))


def parse_letters(text: str, names, path="<string>", line=None):
    index = {nm: i for i, nm in enumerate(names)}
    out = []
    for item in text.split():
        nm = item.rstrip("'")
        if nm not in index:
            raise ParseError(path, line, "a generator name", nm)
        out.append((index[nm], -1 if item.endswith("'") else 1))
    return tuple(out)


def parse_marked(text: str, path="<string>") -> MarkedPresentation | Presentation:
    """Presentation text; returns a ``MarkedPresentation`` when ``base:`` is present."""
    names = None
    rels, loops, base = [], [], None
    first_loop = None
    for n, line in _lines(text):
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "rel", "base", "loop"):
            raise ParseError(path, n, "'gens:', 'rel:', 'base:' or 'loop:'", line)
        if key == "gens":
            if names is not None:
                raise ParseError(path, n, "a single 'gens:' line", line)
            names = rest.split()
            if len(set(names)) != len(names):
                raise ParseError(path, n, "distinct generator names", rest.strip())
            continue
        if names is None:
            raise ParseError(path, n, "'gens:' before other lines", line)
        if key == "rel":
            if rest.count("=") != 1:
                raise ParseError(path, n, "'<word> = <word>'", rest.strip())
            lhs, rhs = rest.split("=")
            rels.append((parse_word(lhs, names, path, n), parse_word(rhs, names, path, n)))
        elif key == "base":
            if base is not None:
                raise ParseError(path, n, "a single 'base:' line", line)
            tok = rest.strip()
            if tok not in names:
                raise ParseError(path, n, "a generator name", tok)
            base = names.index(tok)
        else:
            first_loop = first_loop or n
            loops.append(parse_letters(rest, names, path, n))
    if names is None:
        raise ParseError(path, None, "a 'gens:' line", "end of file")
    P = Presentation(tuple(names), tuple(rels))
    if base is None:
        if loops:
            raise ParseError(path, first_loop, "a 'base:' line before using loops", "no 'base:' line")
        return P
    return MarkedPresentation(P, base, tuple(loops))


def parse_presentation(text: str, path="<string>") -> Presentation:
    parsed = parse_marked(text, path)
    return parsed.presentation if isinstance(parsed, MarkedPresentation) else parsed


def read_marked(path) -> MarkedPresentation:
    parsed = parse_marked(_read(path), path)
    if not isinstance(parsed, MarkedPresentation):
        raise ParseError(path, None, "a 'base:' line", "end of file")
    return parsed


def read_presentation(path) -> Presentation:
    """A presentation file, or a Wirtinger presentation when ``path`` ends in ``.pd``."""
    if str(path).endswith(".pd"):
        return pd_to_presentation(read_pd(path))
    return parse_presentation(_read(path), path)


# --- cocycles ---------------------------------------------------------------


def parse_cocycle(text: str, size: int, path="<string>") -> Cocycle:
    """Cocycle table for a quandle of order ``size``; unlisted pairs are 0."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError(path, 1, "a group such as 'Z/3'", "end of file")
    n0, first = lines[0]
    try:
        group = parse_group(first)
    except QtwistError:
        raise ParseError(path, n0, "a group such as 'Z/3' or 'Z/2 x Z/4'", first) from None
    values = [[group.zero] * size for _ in range(size)]
    seen = set()
    for n, line in lines[1:]:
        nums = _ints(path, n, line, f"'x y' and {group.ncoords} coordinates")
        if len(nums) != 2 + group.ncoords:
            raise ParseError(path, n, f"'x y' and {group.ncoords} coordinates", line)
        x, y = nums[:2]
        if not (0 <= x < size and 0 <= y < size):
            raise ParseError(path, n, f"quandle elements in 0..{size - 1}", line)
        if (x, y) in seen:
            raise ParseError(path, n, f"a single value for ({x}, {y})", line)
        seen.add((x, y))
        values[x][y] = group.reduce(nums[2:])
    return Cocycle(group, values)


def read_cocycle(path, size: int) -> Cocycle:
    return parse_cocycle(_read(path), size, path)


def format_cocycle(theta: Cocycle) -> str:
    return theta.format() + "\n"


# --- PD codes ---------------------------------------------------------------


def parse_pd(text: str, path="<string>") -> PDCode:
    crossings = []
    for n, line in _lines(text):
        nums = _ints(path, n, line.strip("[]X() "), "four arc labels 'i j k l'")
        if len(nums) != 4:
            raise ParseError(path, n, "four arc labels 'i j k l'", line)
        crossings.append(tuple(nums))
    try:
        return PDCode(tuple(crossings))
    except StructuralError as exc:
        raise ParseError(path, None, "each label 1..2c exactly twice", str(exc)) from exc


def read_pd(path) -> PDCode:
    return parse_pd(_read(path), path)


def format_pd(pd: PDCode) -> str:
    return "".join(" ".join(map(str, x)) + "\n" for x in pd.crossings)


def format_marked(mp: MarkedPresentation) -> str:
    names = mp.presentation.generators
    lines = [str(mp.presentation), f"base: {names[mp.base]}"]
    for w in mp.loops:
        lines.append("loop: " + " ".join(names[g] + ("'" if s < 0 else "") for g, s in w))
    return "\n".join(lines) + "\n"
