"""A small text format for group presentations.

    group Ceva {
      gens e0 e1 e2 e3 e4 e5;
      rel [e1, e2];
      rel comm3(e3, e5, e1);     # three relators [abc,a], [abc,b], [abc,c]
      rel e4 e3 e5 e2 e1 e0;
      rel a b = b a;             # lhs = rhs becomes lhs rhs^-1
      degrees 1 1 1 1 1 1;
    }

Words are juxtaposed factors; a factor is a generator name, ``1``,
``(word)``, or ``[word, word]``, optionally followed by ``^k`` with k a
nonzero integer.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .words import GroupPresentation, Word, commutator


class DSLParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<int>-?\d+) | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[{}\[\](),;=^*])
""", re.VERBOSE)


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise DSLParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.gens: dict[str, int] = {}

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.cur
        raise DSLParseError(msg, tok.line, tok.col)

    def take(self, text: str | None = None, kind: str | None = None) -> _Tok:
        t = self.cur
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.kind != "eof" else "end of input"
            self.error(f"expected {want}, found {got}")
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.cur.text == text and self.cur.kind in ("punct", "name"):
            self.i += 1
            return True
        return False

    def parse(self) -> tuple[str, GroupPresentation]:
        self.take("group")
        name = self.take(kind="name").text
        self.take("{")
        names: list[str] = []
        relators: list[Word] = []
        degrees = None
        seen_gens = False
        while not self.accept("}"):
            kw = self.take(kind="name")
            if kw.text == "gens":
                if seen_gens:
                    self.error("generators declared twice", kw)
                seen_gens = True
                while self.cur.kind == "name":
                    t = self.take()
                    if t.text in self.gens:
                        self.error(f"duplicate generator {t.text!r}", t)
                    self.gens[t.text] = len(names)
                    names.append(t.text)
                self.take(";")
            elif kw.text == "rel":
                if not seen_gens:
                    self.error("relators must come after the gens statement", kw)
                relators.extend(self.relator())
                self.take(";")
            elif kw.text == "degrees":
                degrees = []
                while self.cur.kind == "int":
                    t = self.take()
                    if int(t.text) < 0:
                        self.error("degree labels must be nonnegative", t)
                    degrees.append(int(t.text))
                if len(degrees) != len(names):
                    self.error(f"expected {len(names)} degree labels, found {len(degrees)}", kw)
                self.take(";")
            else:
                self.error(f"unknown statement {kw.text!r}", kw)
        self.take(kind="eof")
        return name, GroupPresentation(tuple(names), tuple(relators), tuple(degrees) if degrees else None)

    def relator(self) -> list[Word]:
        if self.cur.text == "comm3":
            start = self.take()
            self.take("(")
            a = self.word(stop=(",",))
            self.take(",")
            b = self.word(stop=(",",))
            self.take(",")
            c = self.word(stop=(")",))
            self.take(")")
            if self.cur.text != ";":
                self.error("comm3(...) must stand alone as a relator", start)
            abc = a * b * c
            return [commutator(abc, a), commutator(abc, b), commutator(abc, c)]
        lhs = self.word(stop=("=", ";"))
        if self.accept("="):
            rhs = self.word(stop=(";",))
            return [lhs * rhs.inverse()]
        return [lhs]

    def word(self, stop: tuple[str, ...]) -> Word:
        out = Word()
        empty = True
        while self.cur.text not in stop and self.cur.kind != "eof":
            if self.cur.text in (")", "]", ",", "}", ";", "="):
                self.error(f"unexpected {self.cur.text!r}")
            out = out * self.factor()
            empty = False
            self.accept("*")
        if empty:
            self.error("empty word")
        return out

    def factor(self) -> Word:
        t = self.cur
        if t.kind == "name":
            self.i += 1
            if t.text not in self.gens:
                self.error(f"unknown generator {t.text!r}", t)
            base = Word.gen(self.gens[t.text])
        elif t.kind == "int" and t.text == "1":
            self.i += 1
            base = Word()
        elif t.text == "(":
            self.i += 1
            base = self.word(stop=(")",))
            self.take(")")
        elif t.text == "[":
            self.i += 1
            a = self.word(stop=(",",))
            self.take(",")
            b = self.word(stop=("]",))
            self.take("]")
            base = commutator(a, b)
        else:
            self.error(f"unexpected {t.text!r}" if t.kind != "eof" else "unexpected end of input")
        if self.accept("^"):
            e = self.cur
            if e.kind != "int":
                self.error("malformed exponent", e)
            self.i += 1
            k = int(e.text)
            if k == 0:
                self.error("zero exponent", e)
            base = base ** k
        return base


def parse_group_dsl(text: str) -> GroupPresentation:
    return _Parser(text).parse()[1]


def parse_group_dsl_named(text: str) -> tuple[str, GroupPresentation]:
    return _Parser(text).parse()


def render_group_dsl(P: GroupPresentation, name: str = "G") -> str:
    lines = [f"group {name} {{", "  gens " + " ".join(P.names) + ";"]
    for r in P.relators:
        lines.append(f"  rel {r.render(P.names)};")
    if P.degrees is not None:
        lines.append("  degrees " + " ".join(map(str, P.degrees)) + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["DSLParseError", "parse_group_dsl", "parse_group_dsl_named", "render_group_dsl"]
