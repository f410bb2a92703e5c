"""Polynomial expressions and the key/value input document.

Expression grammar (whitespace insignificant, no implicit multiplication)::

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*        # '/' only by a nonzero constant
    factor := base ['^' integer]
    base   := integer | var | '(' expr ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import ParseError
from .field import CoefficientField
from .poly import Polynomial
from .truncation import DEFAULT_SCHEDULE

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class _Parser:
    def __init__(self, text: str, names: Sequence[str], field: CoefficientField, line: int, col0: int):
        self.text = text
        self.field = field
        self.nvars = len(names)
        self.names = {n: i for i, n in enumerate(names)}
        self.line = line
        self.col0 = col0
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            if m.group(1) is not None:
                self.toks.append(("int", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.toks.append(("name", m.group(2), m.start(2)))
            elif m.group(3) is not None:
                ch = m.group(3)
                if ch.isspace():
                    pos = m.end()
                    continue
                if ch not in "+-*/^()":
                    self.error(f"unexpected character {ch!r}", m.start(3))
                self.toks.append((ch, ch, m.start(3)))
            pos = m.end()
        self.i = 0

    def error(self, msg, pos=None):
        if pos is None:
            pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise ParseError(msg, line=self.line, column=self.col0 + pos + 1)

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def const(self, c):
        return Polynomial.constant(self.field, self.nvars, c)

    def parse(self) -> Polynomial:
        if not self.toks:
            self.error("empty expression")
        p = self.expr()
        if self.i < len(self.toks):
            kind = self.peek()
            if kind in ("int", "name", "("):
                self.error("implicit multiplication is not allowed; use '*'")
            self.error(f"unexpected {self.toks[self.i][1]!r}")
        return p

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek() in ("*", "/"):
            op, _, pos = self.take()
            q = self.factor()
            if op == "*":
                p = p * q
            else:
                if q.total_degree() > 0:
                    self.error("division is only allowed by a nonzero constant", pos)
                c = q.constant_term()
                if not c:
                    self.error("division by zero", pos)
                p = p * self.field.div(1, c)
        return p

    def factor(self):
        p = self.base()
        if self.peek() == "^":
            self.take()
            if self.peek() == "-":
                self.error("negative exponent")
            if self.peek() != "int":
                self.error("exponent must be a nonnegative integer")
            e = int(self.take()[1])
            p = p ** e
        return p

    def base(self):
        kind = self.peek()
        if kind is None:
            self.error("unexpected end of expression")
        if kind == "int":
            return self.const(int(self.take()[1]))
        if kind == "name":
            _, name, pos = self.take()
            if name not in self.names:
                self.error(f"unknown variable {name!r}", pos)
            return Polynomial.var(self.field, self.nvars, self.names[name])
        if kind == "(":
            self.take()
            p = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.take()
            return p
        self.error(f"unexpected {self.toks[self.i][1]!r}")


def parse_polynomial(text: str, names: Sequence[str], field: CoefficientField | None = None,
                     line: int = 1, column: int = 1) -> Polynomial:
    if field is None:
        field = CoefficientField.rationals()
    return _Parser(text, list(names), field, line, column - 1).parse()


def format_polynomial(f: Polynomial, names: Sequence[str]) -> str:
    return f.to_string(names)


# documents

@dataclass
class InputDocument:
    field: CoefficientField
    variables: list
    relations: list                     # Polynomial
    relation_text: list
    complete_intersection: bool = True
    declared_dim: int | None = None
    schedule: tuple = DEFAULT_SCHEDULE
    seed: int = 0
    n_max: int | None = None
    module: list = dc_field(default_factory=list)      # rows of Polynomial
    sequence: list = dc_field(default_factory=list)    # Polynomial
    order: int | None = None
    name: str | None = None

    def presentation(self):
        from .invariants import RingPresentation
        return RingPresentation(self.field, len(self.variables), tuple(self.relations),
                                declared_dim=self.declared_dim,
                                complete_intersection=self.complete_intersection,
                                var_names=tuple(self.variables), schedule=self.schedule)


def _bool(text, line):
    t = text.strip().lower()
    if t in ("true", "yes", "1"):
        return True
    if t in ("false", "no", "0"):
        return False
    raise ParseError(f"expected a boolean, got {text!r}", line=line)


def _int(text, line):
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"expected an integer, got {text!r}", line=line) from None


def parse_int_list(text: str, line: int = 1) -> tuple:
    items = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not items:
        raise ParseError("empty list", line=line)
    return tuple(_int(t, line) for t in items)


def split_top_level(text: str, sep: str = ",") -> list[tuple[str, int]]:
    """Split on ``sep`` outside parentheses; returns (piece, offset) pairs."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


SECTIONS = ("relations", "options", "module")
OPTION_KEYS = ("complete_intersection", "dim", "schedule", "seed", "n_max", "order")


def parse_document(text: str, name: str | None = None,
                   field: CoefficientField | None = None) -> InputDocument:
    """Parse the ``format: 1`` key/value document; ``field`` overrides the declared one."""
    override = field
    raw = {}
    sections: dict[str, list] = {s: [] for s in SECTIONS}
    current = None
    seen_format = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        indented = body[0].isspace()
        if indented and current is not None:
            stripped = body.strip()
            col = len(body) - len(body.lstrip()) + 1
            sections[current].append((stripped, lineno, col))
            continue
        if indented:
            raise ParseError("indented line outside a section", line=lineno)
        if ":" not in body:
            raise ParseError("expected 'key: value'", line=lineno)
        key, value = body.split(":", 1)
        key = key.strip()
        if key in SECTIONS:
            current = key
            if value.strip():
                col = body.index(":") + 2 + (len(value) - len(value.lstrip()))
                sections[key].append((value.strip(), lineno, col))
            continue
        current = None
        if key == "format":
            if value.strip() != "1":
                raise ParseError(f"unsupported format {value.strip()!r}", line=lineno)
            seen_format = True
        elif key in ("field", "vars", "sequence") or key in OPTION_KEYS:
            col = body.index(":") + 2 + (len(value) - len(value.lstrip()))
            raw[key] = (value.strip(), lineno, col)
        else:
            raise ParseError(f"unknown key {key!r}", line=lineno)
    if not seen_format:
        raise ParseError("missing 'format: 1' header", line=1)
    for entry, lineno, _ in sections["options"]:
        if ":" not in entry:
            raise ParseError("expected 'option: value'", line=lineno)
        k, v = entry.split(":", 1)
        k = k.strip()
        if k not in OPTION_KEYS:
            raise ParseError(f"unknown option {k!r}", line=lineno)
        raw[k] = (v.strip(), lineno, 1)

    if override is not None:
        field = override
    elif "field" not in raw:
        field = CoefficientField.rationals()
    else:
        v, lineno, _ = raw["field"]
        try:
            field = CoefficientField.parse(v)
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
    if "vars" not in raw:
        raise ParseError("missing 'vars'", line=1)
    v, lineno, _ = raw["vars"]
    names = [t.strip() for t in v.split(",") if t.strip()]
    if not names:
        raise ParseError("no variables declared", line=lineno)
    for n in names:
        if not _IDENT.match(n) or not n.isascii():
            raise ParseError(f"bad variable name {n!r}", line=lineno)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable names", line=lineno)

    rels, rel_text = [], []
    for entry, lineno, col in sections["relations"]:
        rels.append(parse_polynomial(entry, names, field, lineno, col))
        rel_text.append(entry)

    doc = InputDocument(field=field, variables=names, relations=rels, relation_text=rel_text, name=name)
    if "dim" in raw:
        doc.declared_dim = _int(raw["dim"][0], raw["dim"][1])
        doc.complete_intersection = False
    if "complete_intersection" in raw:
        doc.complete_intersection = _bool(*raw["complete_intersection"][:2])
    if "schedule" in raw:
        doc.schedule = parse_int_list(*raw["schedule"][:2])
    if "seed" in raw:
        doc.seed = _int(*raw["seed"][:2])
    if "n_max" in raw:
        doc.n_max = _int(*raw["n_max"][:2])
    if "order" in raw:
        doc.order = _int(*raw["order"][:2])
    for entry, lineno, col in sections["module"]:
        doc.module.append(parse_row(entry, names, field, lineno, col))
    if "sequence" in raw:
        v, lineno, col = raw["sequence"]
        doc.sequence = parse_row(v, names, field, lineno, col)
    return doc


def parse_row(text: str, names, field, line: int = 1, column: int = 1) -> list[Polynomial]:
    """Comma-separated polynomials; the empty string gives the empty list."""
    if not text.strip():
        return []
    return [parse_polynomial(piece, names, field, line, column + off)
            for piece, off in split_top_level(text)]


def parse_module_spec(text: str, names, field) -> list[list[Polynomial]]:
    """Matrix rows separated by ';', entries by ','."""
    rows = [r for r in text.split(";") if r.strip()]
    if not rows:
        raise ParseError("empty module matrix")
    return [parse_row(r, names, field, 1, 1) for r in rows]


def format_document(doc: InputDocument) -> str:
    lines = ["format: 1", f"field: {doc.field.name}", "vars: " + ", ".join(doc.variables), "relations:"]
    lines += ["  " + f.to_string(doc.variables) for f in doc.relations]
    lines.append("options:")
    if doc.declared_dim is not None:
        lines.append(f"  dim: {doc.declared_dim}")
    lines.append(f"  complete_intersection: {'true' if doc.complete_intersection else 'false'}")
    lines.append("  schedule: " + ", ".join(str(n) for n in doc.schedule))
    lines.append(f"  seed: {doc.seed}")
    if doc.n_max is not None:
        lines.append(f"  n_max: {doc.n_max}")
    return "\n".join(lines) + "\n"
