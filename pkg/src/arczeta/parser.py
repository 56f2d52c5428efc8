"""Recursive-descent parser for the germ expression language.

The surface syntax mirrors the report notation::

    germ   := family "(+)" "Q(" int "," int ")"
    family := "A(" k ("," sign)? ")"
            | "D(" k "," sign "," sign ")"
            | "E6(" sign ")" | "E7" | "E8"
            | "CUBE" | "G" | "Q"
            | "J(" k "," i (";" name "=" value ("," name "=" value)*)? ")"
    sign   := "+" | "-"

The sign of an A-germ may be omitted for even k (where both choices
name the same class) and defaults to "+".  ``Q`` as a family token is
accepted so corank-0 germs are expressible; it renders back the same
way.  Values are integers, fractions ("3/4"), or decimals ("0.25"),
kept exact.

Errors carry a 0-based ``position`` into the source text and a
``kind`` of either "syntax" (malformed token stream) or "semantic"
(well-formed but invalid germ data, e.g. ``D(3,+,+)``).
"""

from __future__ import annotations

from fractions import Fraction

from .germs import GermSpec

__all__ = ["GermParseError", "parse_germ"]

_FAMILY_TOKENS = {"A", "D", "E6", "E7", "E8", "CUBE", "G", "J", "Q"}


class GermParseError(ValueError):
    """Raised for any rejection of a germ expression."""

    def __init__(self, message: str, position: int, kind: str = "syntax") -> None:
        super().__init__(f"{kind} error at position {position}: {message}")
        self.position = position
        self.kind = kind


class _Scanner:
    __slots__ = ("text", "pos")

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def expect(self, literal: str) -> None:
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            raise GermParseError(f"expected {literal!r}", self.pos)
        self.pos += len(literal)

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalnum():
            self.pos += 1
        if self.pos == start:
            raise GermParseError("expected a name", start)
        return self.text[start : self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise GermParseError("expected an integer", start)
        return int(self.text[start : self.pos])

    def sign(self) -> int:
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            s = 1 if self.text[self.pos] == "+" else -1
            self.pos += 1
            return s
        raise GermParseError("expected '+' or '-'", self.pos)

    def value(self) -> Fraction:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits_before = self._digits()
        if self.pos < len(self.text) and self.text[self.pos] in "./":
            self.pos += 1
            if not self._digits():
                raise GermParseError("expected digits after separator", self.pos)
        if not digits_before:
            raise GermParseError("expected a number", start)
        try:
            return Fraction(self.text[start : self.pos])
        except (ValueError, ZeroDivisionError) as exc:
            raise GermParseError(str(exc), start) from exc

    def _digits(self) -> bool:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.pos > start

    def peek_is(self, ch: str) -> bool:
        self.skip_ws()
        return self.pos < len(self.text) and self.text[self.pos] == ch


def _parse_family(s: _Scanner) -> dict:
    s.skip_ws()
    start = s.pos
    name = s.word()
    if name not in _FAMILY_TOKENS:
        raise GermParseError(f"unknown family {name!r}", start)
    if name == "A":
        s.expect("(")
        k = s.integer()
        sgn = None
        if s.peek_is(","):
            s.expect(",")
            sgn = s.sign()
        s.expect(")")
        if sgn is None:
            if k % 2:
                raise GermParseError(
                    f"A({k}) is ambiguous for odd k: give a sign", start, "semantic"
                )
            sgn = 1
        return {"family": "AK", "k": k, "signs": (sgn,)}
    if name == "D":
        s.expect("(")
        k = s.integer()
        s.expect(",")
        e1 = s.sign()
        s.expect(",")
        e2 = s.sign()
        s.expect(")")
        return {"family": "DK", "k": k, "signs": (e1, e2)}
    if name == "E6":
        s.expect("(")
        sgn = s.sign()
        s.expect(")")
        return {"family": "E6", "signs": (sgn,)}
    if name == "J":
        s.expect("(")
        k = s.integer()
        s.expect(",")
        i = s.integer()
        params: list[tuple[str, Fraction]] = []
        if s.peek_is(";"):
            s.expect(";")
            while True:
                pname = s.word()
                s.expect("=")
                params.append((pname, s.value()))
                if not s.peek_is(","):
                    break
                s.expect(",")
        s.expect(")")
        return {"family": "JKI", "k": k, "i": i, "params": tuple(params)}
    return {"family": {"E7": "E7", "E8": "E8", "CUBE": "CUBE", "G": "G", "Q": "Q"}[name]}


def parse_germ(text: str) -> GermSpec:
    """Parse one germ expression; raise :class:`GermParseError` otherwise."""
    s = _Scanner(text)
    s.skip_ws()
    family_start = s.pos
    fields = _parse_family(s)
    s.expect("(+)")
    s.expect("Q")
    s.expect("(")
    p = s.integer()
    s.expect(",")
    q = s.integer()
    s.expect(")")
    if not s.at_end():
        raise GermParseError("unexpected trailing input", s.pos)
    try:
        return GermSpec(sig=(p, q), **fields)
    except ValueError as exc:
        raise GermParseError(str(exc), family_start, "semantic") from exc
