"""Line-oriented input format for presentations of bound quiver algebras.

A presentation file looks like::

    # anything after a hash is a comment
    field Q            # or: field F 5
    vertices 3
    arrow a v1 v2
    arrow b v1 v2
    arrow c v2 v3
    relations
    c*a
    2*c*a - 1/3*c*b

``vertices 3`` names the vertices v1, v2, v3; a ``vertices x y z`` form with
explicit names is also accepted.  Paths multiply function-style, so ``c*a``
traverses a first.  Every path in a relation needs length at least two.
Relation lines are sums of integer- or fraction-scaled paths; each line is
one relation, and relations mixing several (source, target) pairs are split
into their uniform components.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .linalg import QQ, Field, GF, field_name
from .quiver import Path, Quiver


class ParseError(ValueError):
    """Input rejection with 1-based line and column information."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Relation:
    """A uniform relation: all terms share one (source, target) pair.

    Terms are (coefficient, path) with rational coefficients; the field is
    applied when an algebra is built, so the same presentation can be read
    over Q or mod p.
    """

    source: int
    target: int
    terms: tuple[tuple[Fraction, Path], ...]

    def max_length(self) -> int:
        return max(p.length for _, p in self.terms)

    def min_length(self) -> int:
        return min(p.length for _, p in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    field: Field
    relations: tuple[Relation, ...]

    def with_field(self, field: Field) -> "Presentation":
        return replace(self, field=field)

    def describe(self) -> str:
        q = self.quiver
        return (
            f"{q.n_vertices} vertices, {q.n_arrows} arrows, "
            f"{len(self.relations)} relations over {field_name(self.field)}"
        )


_TOKEN = re.compile(r"\s*(?P<tok>[A-Za-z_][A-Za-z_0-9]*|\d+(?:/\d+)?|[*+-])")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")
_NUMBER = re.compile(r"\d+(?:/\d+)?$")


def _tokenize(text: str, lineno: int) -> list[tuple[str, int]]:
    """Tokens of one relation line with 1-based column positions."""
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", lineno, pos + 1)
        out.append((m.group("tok"), m.start("tok") + 1))
        pos = m.end()
    return out


def split_uniform(
    quiver: Quiver, terms: Sequence[tuple[Fraction, Path]]
) -> list[Relation]:
    """Split a relation into its uniform (source, target) components.

    Like terms are combined, zero terms dropped, empty components dropped.
    """
    buckets: dict[tuple[int, int], dict[Path, Fraction]] = {}
    order: list[tuple[int, int]] = []
    for coeff, path in terms:
        key = (path.source, path.target)
        if key not in buckets:
            buckets[key] = {}
            order.append(key)
        bucket = buckets[key]
        bucket[path] = bucket.get(path, Fraction(0)) + coeff
    out = []
    for key in order:
        kept = tuple(
            (c, p) for p, c in buckets[key].items() if c != 0
        )
        if kept:
            out.append(Relation(source=key[0], target=key[1], terms=kept))
    return out


def make_presentation(
    quiver: Quiver,
    field: Field,
    relations: Sequence[Sequence[tuple[Fraction | int, Path]]],
) -> Presentation:
    """Programmatic constructor: splits relations into uniform components and
    validates that every path has length at least two."""
    rels: list[Relation] = []
    for terms in relations:
        fixed = []
        for coeff, path in terms:
            if path.length < 2:
                raise ValueError(
                    f"relation path {quiver.path_str(path)} has length {path.length};"
                    " admissible relations need length at least 2"
                )
            fixed.append((Fraction(coeff), path))
        rels.extend(split_uniform(quiver, fixed))
    return Presentation(quiver=quiver, field=field, relations=tuple(rels))


def _parse_relation_line(
    quiver: Quiver, text: str, lineno: int
) -> list[tuple[Fraction, Path]]:
    tokens = _tokenize(text, lineno)
    if not tokens:
        return []
    terms: list[tuple[Fraction, Path]] = []
    i = 0
    sign = Fraction(1)
    # optional leading sign
    if tokens[0][0] in "+-":
        sign = Fraction(-1) if tokens[0][0] == "-" else Fraction(1)
        i = 1
    while i < len(tokens):
        tok, col = tokens[i]
        coeff = sign
        names: list[tuple[str, int]] = []
        if _NUMBER.match(tok):
            coeff = sign * Fraction(tok)
            i += 1
            if i >= len(tokens) or tokens[i][0] != "*":
                raise ParseError("coefficient must be followed by '*'", lineno, col)
            i += 1
            if i >= len(tokens):
                raise ParseError("dangling '*' at end of term", lineno, tokens[i - 1][1])
            tok, col = tokens[i]
        if not _NAME.match(tok):
            raise ParseError(f"expected an arrow name, got {tok!r}", lineno, col)
        names.append((tok, col))
        i += 1
        while i < len(tokens) and tokens[i][0] == "*":
            i += 1
            if i >= len(tokens):
                raise ParseError("dangling '*' at end of term", lineno, tokens[i - 1][1])
            tok, col = tokens[i]
            if not _NAME.match(tok):
                raise ParseError(f"expected an arrow name, got {tok!r}", lineno, col)
            names.append((tok, col))
            i += 1
        # resolve the path
        for name, ncol in names:
            if name not in quiver.arrow_index:
                raise ParseError(f"unknown arrow {name!r}", lineno, ncol)
        if len(names) < 2:
            raise ParseError(
                f"path {names[0][0]!r} has length 1; relation paths need length"
                " at least 2",
                lineno,
                names[0][1],
            )
        idxs = [quiver.arrow_index[n] for n, _ in names]
        for k in range(len(idxs) - 1):
            later = quiver.arrows[idxs[k]]
            earlier = quiver.arrows[idxs[k + 1]]
            if later.source != earlier.target:
                raise ParseError(
                    f"arrows {names[k][0]!r} and {names[k + 1][0]!r} do not compose"
                    f" (target of {names[k + 1][0]!r} is"
                    f" {quiver.vertices[earlier.target]!r}, source of"
                    f" {names[k][0]!r} is {quiver.vertices[later.source]!r})",
                    lineno,
                    names[k + 1][1],
                )
        path = Path(
            source=quiver.arrows[idxs[-1]].source,
            target=quiver.arrows[idxs[0]].target,
            arrows=tuple(idxs),
        )
        terms.append((coeff, path))
        # separator
        if i < len(tokens):
            tok, col = tokens[i]
            if tok == "+":
                sign = Fraction(1)
            elif tok == "-":
                sign = Fraction(-1)
            else:
                raise ParseError(f"expected '+' or '-', got {tok!r}", lineno, col)
            i += 1
            if i >= len(tokens):
                raise ParseError("dangling sign at end of line", lineno, col)
    return terms


def parse_presentation(text: str, field: Field | None = None) -> Presentation:
    """Parse the presentation format; ``field`` overrides the file's field line."""
    # strip comments, keep line numbers
    lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            lines.append((lineno, body))
    if not lines:
        raise ParseError("empty input", 1, 1)

    pos = 0

    def current() -> tuple[int, str]:
        return lines[pos]

    def words(s: str) -> list[str]:
        return s.split()

    # field line
    lineno, body = current()
    w = words(body)
    if w[0] != "field":
        raise ParseError("expected a 'field' line first", lineno, body.index(w[0]) + 1)
    if len(w) == 2 and w[1].upper() == "Q":
        file_field: Field = QQ
    elif len(w) == 3 and w[1].upper() == "F" and w[2].isdigit():
        try:
            file_field = GF(int(w[2]))
        except ValueError as exc:
            raise ParseError(str(exc), lineno, body.index(w[2]) + 1) from None
    else:
        raise ParseError(
            "field line must be 'field Q' or 'field F <prime>'", lineno, 1
        )
    pos += 1

    # vertices line
    if pos >= len(lines):
        raise ParseError("expected a 'vertices' line", lineno, 1)
    lineno, body = current()
    w = words(body)
    if w[0] != "vertices" or len(w) < 2:
        raise ParseError("expected 'vertices <count>' or 'vertices <names...>'", lineno, 1)
    if len(w) == 2 and w[1].isdigit():
        n = int(w[1])
        if n < 1:
            raise ParseError("vertex count must be positive", lineno, body.index(w[1]) + 1)
        vertex_names = [f"v{i + 1}" for i in range(n)]
    else:
        vertex_names = w[1:]
        for name in vertex_names:
            if not _NAME.match(name):
                raise ParseError(
                    f"bad vertex name {name!r}", lineno, body.index(name) + 1
                )
        if len(set(vertex_names)) != len(vertex_names):
            raise ParseError("duplicate vertex names", lineno, 1)
    pos += 1

    # arrow lines
    arrows: list[tuple[str, str, str]] = []
    seen_arrow_names = set()
    while pos < len(lines) and words(lines[pos][1])[0] == "arrow":
        lineno, body = current()
        w = words(body)
        if len(w) != 4:
            raise ParseError("expected 'arrow <name> <source> <target>'", lineno, 1)
        _, name, src, tgt = w
        if not _NAME.match(name):
            raise ParseError(f"bad arrow name {name!r}", lineno, body.index(name) + 1)
        if name in seen_arrow_names:
            raise ParseError(f"duplicate arrow name {name!r}", lineno, body.index(name) + 1)
        if src not in vertex_names:
            raise ParseError(f"unknown vertex {src!r}", lineno, body.index(src) + 1)
        if tgt not in vertex_names:
            raise ParseError(
                f"unknown vertex {tgt!r}", lineno, body.rindex(tgt) + 1
            )
        seen_arrow_names.add(name)
        arrows.append((name, src, tgt))
        pos += 1

    quiver = Quiver(vertex_names, arrows)

    # optional relations block
    relations: list[Relation] = []
    if pos < len(lines):
        lineno, body = current()
        if words(body)[0] != "relations":
            raise ParseError(
                f"expected 'relations' or end of input, got {words(body)[0]!r}",
                lineno,
                1,
            )
        pos += 1
        while pos < len(lines):
            lineno, body = current()
            terms = _parse_relation_line(quiver, body, lineno)
            relations.extend(split_uniform(quiver, terms))
            pos += 1

    chosen = field if field is not None else file_field
    return Presentation(quiver=quiver, field=chosen, relations=tuple(relations))
