"""Text formats: Hamiltonian files, per-R Hamiltonian tables and the
delimiter-separated result tables written by the command line tool.

Hamiltonian file: one ``<PauliString> <weight>`` per line, ``#`` starts a
comment, blank lines are ignored, repeated strings are summed.

Hamiltonian table: CSV with header ``R,<string1>,<string2>,...`` and one row
of weights per scan value R.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

from .pauli import Hamiltonian, PauliTerm, parse_pauli_string


class ParseError(ValueError):
    def __init__(self, msg, line=None, source=None):
        where = f"{source or '<text>'}" + (f":{line}" if line is not None else "")
        super().__init__(f"{where}: {msg}")
        self.line = line
        self.source = source


def _float(text, line, source, what="weight"):
    try:
        v = float(text)
    except ValueError:
        raise ParseError(f"invalid {what} {text!r}", line, source) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite {what} {text!r}", line, source)
    return v


def parse_hamiltonian(text: str, label: str = "", source=None) -> Hamiltonian:
    terms = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected '<PauliString> <weight>'", n, source)
        try:
            s = parse_pauli_string(parts[0])
        except ValueError as e:
            raise ParseError(str(e), n, source) from None
        if terms and len(s) != len(terms[0].string):
            raise ParseError(f"{s} has length {len(s)}, expected {len(terms[0].string)}", n, source)
        terms.append(PauliTerm(s, _float(parts[1], n, source)))
    if not terms:
        raise ParseError("no terms found", None, source)
    return Hamiltonian.from_terms(terms, label=label)


def load_hamiltonian(path) -> Hamiltonian:
    path = Path(path)
    return parse_hamiltonian(path.read_text(), label=path.stem, source=str(path))


def format_hamiltonian(h: Hamiltonian) -> str:
    return "".join(f"{t.string} {t.weight!r}\n" for t in h.terms)


@dataclass(frozen=True)
class HamiltonianTable:
    """Hamiltonians sharing one Pauli string set, keyed by scan value R."""

    strings: tuple
    rows: tuple  # (R, weights tuple) in file order

    def __post_init__(self):
        if len(set(self.strings)) != len(self.strings):
            raise ValueError("duplicate strings in table header")
        for r, w in self.rows:
            if len(w) != len(self.strings):
                raise ValueError(f"row R={r} has {len(w)} weights for {len(self.strings)} strings")

    def hamiltonian(self, r) -> Hamiltonian:
        for rr, w in self.rows:
            if rr == r:
                return Hamiltonian.from_terms(zip(self.strings, w), label=f"R={r!r}")
        raise KeyError(r)

    def items(self):
        return [(r, self.hamiltonian(r)) for r, _ in self.rows]


def parse_table(text: str, source=None) -> HamiltonianTable:
    lines = [(n, l) for n, l in enumerate(text.splitlines(), 1) if l.strip() and not l.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty table", None, source)
    rows = list(csv.reader([l for _, l in lines]))
    head_line, header = lines[0][0], [c.strip() for c in rows[0]]
    if len(header) < 2 or header[0] != "R":
        raise ParseError("header must be 'R,<string1>,...'", head_line, source)
    strings = []
    for c in header[1:]:
        try:
            strings.append(parse_pauli_string(c))
        except ValueError as e:
            raise ParseError(str(e), head_line, source) from None
    if len({len(s) for s in strings}) != 1:
        raise ParseError("header strings differ in length", head_line, source)
    if len(set(strings)) != len(strings):
        raise ParseError("duplicate strings in header", head_line, source)
    out, seen = [], set()
    for (n, _), row in zip(lines[1:], rows[1:]):
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(row)}", n, source)
        r = _float(row[0].strip(), n, source, "R")
        if r in seen:
            raise ParseError(f"duplicate R={r!r}", n, source)
        seen.add(r)
        out.append((r, tuple(_float(c.strip(), n, source) for c in row[1:])))
    if not out:
        raise ParseError("table has no rows", None, source)
    return HamiltonianTable(tuple(strings), tuple(out))


def load_table(path) -> HamiltonianTable:
    path = Path(path)
    return parse_table(path.read_text(), source=str(path))


def format_table(table: HamiltonianTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["R"] + [s.label for s in table.strings])
    for r, ws in table.rows:
        w.writerow([repr(r)] + [repr(x) for x in ws])
    return buf.getvalue()


# ----------------------------------------------------------- result tables


def format_records(header, rows) -> str:
    """CSV with a header; floats are written with ``repr`` so they round-trip."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def parse_records(text: str, types) -> tuple[list, list]:
    """Inverse of :func:`format_records`; ``types`` converts each column."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ParseError("empty record table")
    header, body = rows[0], rows[1:]
    if len(types) != len(header):
        raise ValueError("one converter per column required")
    out = []
    for n, row in enumerate(body, 2):
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} fields", n)
        out.append(tuple(t(v) for t, v in zip(types, row)))
    return header, out
