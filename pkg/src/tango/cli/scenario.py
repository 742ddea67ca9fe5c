"""Parser for the scenario DSL.

Statements end with ``;``; ``#`` starts a comment.

    ring P6 = GF(2)[z0..z6];
    ring R = GF(2)[z0..z6] / (z0^2 + z1*z2 + z3*z4 + z5*z6);
    matrix A over R twists [0,0,...] = [[z0^2, 0, ...], ...];
    map f : R -> P5 scale 2 = (x0*x1 + x2*x3 + x4*x5, x0^2, ...);
    exterior beta = [[e0, e4e5], ...];
    job coh T -8 5;

Values form a DAG: every name must be defined before it is referenced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..module import GradedMatrix, ModuleError
from ..ring import ExteriorAlgebra, GradedRing, RingError, RingMap

JOB_KINDS = ("gb", "res", "coh", "chern", "bbw", "monad", "pushforward", "verify-paper")

#: Sheaves built from the fixtures (see ``objects``) that jobs may name.
DERIVED = ("H", "C1", "C", "T", "S", "W", "Sym2C", "C2", "SC", "TM")


class ScenarioError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, col {col}: {msg}" if line else msg)
        self.line = line
        self.col = col


@dataclass
class Job:
    kind: str
    args: Tuple[str, ...]
    line: int = 0


@dataclass
class Scenario:
    rings: Dict[str, GradedRing] = field(default_factory=dict)
    matrices: Dict[str, GradedMatrix] = field(default_factory=dict)
    maps: Dict[str, RingMap] = field(default_factory=dict)
    exteriors: Dict[str, List[List]] = field(default_factory=dict)
    jobs: List[Job] = field(default_factory=list)

    def names(self) -> List[str]:
        return [*self.rings, *self.matrices, *self.maps, *self.exteriors]

    def is_empty(self) -> bool:
        return not self.names() and not self.jobs


def _strip_comments(text: str) -> str:
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group(0)), text)


def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _statements(text: str):
    """Yield (statement text, start offset) split on top-level ';'."""
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == ";" and depth == 0:
            yield text[start:i], start
            start = i + 1
    if text[start:].strip():
        yield text[start:], start


def _split_top(s: str, sep: str = ",") -> List[Tuple[str, int]]:
    """Split on ``sep`` at bracket depth 0; returns (piece, offset)."""
    out = []
    depth = 0
    start = 0
    for i, ch in enumerate(s):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((s[start:i], start))
            start = i + 1
    out.append((s[start:], start))
    return out


def _expand_vars(spec: str) -> List[str]:
    names: List[str] = []
    for part in spec.split(","):
        part = part.strip()
        m = re.fullmatch(r"([A-Za-z_]+)(\d+)\s*\.\.\s*\1(\d+)", part)
        if m:
            base, a, b = m.group(1), int(m.group(2)), int(m.group(3))
            names.extend(f"{base}{i}" for i in range(a, b + 1))
        elif re.fullmatch(r"[A-Za-z_]\w*", part):
            names.append(part)
        else:
            raise ValueError(f"bad variable list entry {part!r}")
    return names


def _parse_int_list(s: str) -> List[int]:
    s = s.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"expected [..], got {s!r}")
    body = s[1:-1].strip()
    return [int(x) for x in body.split(",")] if body else []


def _parse_rows(s: str) -> List[List[Tuple[str, int]]]:
    """'[[a, b], [c, d]]' -> rows of (cell text, offset within s)."""
    s_stripped = s.strip()
    lead = len(s) - len(s.lstrip())
    if not (s_stripped.startswith("[") and s_stripped.endswith("]")):
        raise ValueError("matrix literal must be [[...], ...]")
    inner = s_stripped[1:-1]
    rows = []
    for piece, off in _split_top(inner):
        p = piece.strip()
        if not p:
            continue
        poff = lead + 1 + off + (len(piece) - len(piece.lstrip()))
        if not (p.startswith("[") and p.endswith("]")):
            raise ValueError(f"matrix row must be [...], got {p!r}")
        cells = [(c, poff + 1 + o) for c, o in _split_top(p[1:-1])]
        rows.append(cells)
    return rows


_RING_RE = re.compile(r"ring\s+(\w+)\s*=\s*GF\((\d+)\)\s*\[([^\]]*)\]\s*(?:/\s*\((.*)\))?\s*$", re.S)
_MATRIX_RE = re.compile(r"matrix\s+(\w+)\s+over\s+(\w+)\s+twists\s*(\[[^\]]*\])\s*(?:src\s*(\[[^\]]*\]))?\s*=\s*(.*)$", re.S)
_MAP_RE = re.compile(r"map\s+(\w+)\s*:\s*(\w+)\s*->\s*(\w+)\s+scale\s+(\d+)\s*=\s*\((.*)\)\s*$", re.S)
_EXT_RE = re.compile(r"exterior\s+(\w+)\s*=\s*(.*)$", re.S)
_JOB_RE = re.compile(r"job\s+([\w-]+)(.*)$", re.S)


def parse_scenario(text: str) -> Scenario:
    sc = Scenario()
    clean = _strip_comments(text)
    defined: Dict[str, str] = {}
    exterior = ExteriorAlgebra()

    def err(msg, offset):
        line, col = _position(clean, offset)
        raise ScenarioError(msg, line, col)

    def define(name, kind, offset):
        if name in defined:
            err(f"{name!r} is already defined", offset)
        defined[name] = kind

    def need(name, kind, offset):
        if defined.get(name) != kind:
            err(f"unknown {kind} {name!r}", offset)

    for stmt, start in _statements(clean):
        body = stmt.strip()
        if not body:
            continue
        off = start + (len(stmt) - len(stmt.lstrip()))
        head = body.split(None, 1)[0]
        if head == "ring":
            m = _RING_RE.match(body)
            if not m:
                err("malformed ring declaration", off)
            name, p, vars_, rel = m.groups()
            define(name, "ring", off)
            try:
                ring = GradedRing(_expand_vars(vars_), int(p), name=name)
                if rel is not None:
                    ring = ring.quotient(ring.parse(rel), name=name)
            except (RingError, ValueError) as e:
                err(str(e), off)
            sc.rings[name] = ring
        elif head == "matrix":
            m = _MATRIX_RE.match(body)
            if not m:
                err("malformed matrix declaration", off)
            name, rname, tw, src, lit = m.groups()
            need(rname, "ring", off + body.find(rname, 6))
            define(name, "matrix", off)
            ring = sc.rings[rname]
            lit_off = off + m.start(5)
            try:
                rows = _parse_rows(lit)
                twists = _parse_int_list(tw)
                srcs = _parse_int_list(src) if src else None
            except ValueError as e:
                err(str(e), lit_off)
            if len(twists) != len(rows):
                err(f"{len(twists)} row twists for {len(rows)} rows", off)
            polys = []
            for i, row in enumerate(rows):
                prow = []
                for j, (cell, coff) in enumerate(row):
                    try:
                        p = ring.parse(cell)
                    except RingError as e:
                        err(f"cell ({i},{j}): {e}", lit_off + coff)
                    if not p.is_homogeneous():
                        err(f"cell ({i},{j}) is not homogeneous", lit_off + coff)
                    prow.append(p)
                polys.append(prow)
            try:
                mat = GradedMatrix.from_rows(ring, polys, twists, srcs)
            except ModuleError as e:
                cell = re.search(r"\((\d+),(\d+)\)", str(e))
                if cell:
                    i, j = int(cell.group(1)), int(cell.group(2))
                    err(f"cell ({i},{j}): {e}", lit_off + rows[i][j][1])
                err(str(e), lit_off)
            sc.matrices[name] = mat
        elif head == "map":
            m = _MAP_RE.match(body)
            if not m:
                err("malformed map declaration", off)
            name, a, b, s, ims = m.groups()
            need(a, "ring", off)
            need(b, "ring", off)
            define(name, "map", off)
            tgt = sc.rings[b]
            try:
                images = [tgt.parse(x) for x, _ in _split_top(ims)]
                sc.maps[name] = RingMap(sc.rings[a], tgt, images, int(s), name=name)
            except RingError as e:
                err(str(e), off + m.start(5))
        elif head == "exterior":
            m = _EXT_RE.match(body)
            if not m:
                err("malformed exterior matrix", off)
            name, lit = m.groups()
            define(name, "exterior", off)
            try:
                rows = _parse_rows(lit)
                sc.exteriors[name] = [[exterior.parse(c) for c, _ in row] for row in rows]
            except (ValueError, RingError) as e:
                err(str(e), off + m.start(2))
        elif head == "job":
            m = _JOB_RE.match(body)
            kind, rest = m.group(1), m.group(2).split()
            if kind not in JOB_KINDS:
                err(f"unknown job kind {kind!r}", off)
            for a in rest:
                if re.fullmatch(r"-?\d+", a) or re.fullmatch(r"-?\d+\.\.-?\d+", a) or a in ("quick", "full"):
                    continue
                if a not in defined and a not in DERIVED:
                    err(f"job argument {a!r} is not defined", off + body.find(a))
            sc.jobs.append(Job(kind, tuple(rest), _position(clean, off)[0]))
        else:
            err(f"unknown statement {head!r}", off)
    return sc


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def default_scenario_path():
    from importlib import resources
    return resources.files("tango.data").joinpath("tango.scn")


def load_default() -> Scenario:
    return parse_scenario(default_scenario_path().read_text(encoding="utf-8"))
