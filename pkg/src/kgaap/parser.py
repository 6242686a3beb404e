"""Parsers for N-Triples and a Turtle subset.

The Turtle subset covers prefix/base directives, IRIs, prefixed names, blank
nodes (labelled and bracketed property lists), quoted literals with datatype
or language tag, predicate-object lists, object lists, the ``a`` keyword and
bare integer/boolean shorthand. Collections, quoted triples and the remaining
W3C grammar are rejected with a position-carrying ParseError.

Blank-node labels are rewritten to fresh labels on every parse call, so two
parses of the same document never share labels.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

from .errors import ParseError, RelativeIriError
from .model import BlankNode, Graph, Iri, Literal, Term, Triple
from .vocab import RDF_TYPE, XSD

_XSD_INTEGER = Iri(XSD + "integer")
_XSD_BOOLEAN = Iri(XSD + "boolean")
_XSD_DECIMAL = Iri(XSD + "decimal")

_parse_counter = itertools.count()

_ESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_PN_LOCAL_EXTRA = "_-."


def parse_graph(data: bytes | str, format: str = "turtle", label: Optional[Iri] = None) -> Graph:
    """Parse a document in the given format ("ntriples" or "turtle")."""
    if isinstance(data, bytes):
        text = data.decode("utf-8")
    else:
        text = data
    if format == "ntriples":
        triples = list(_parse_ntriples(text))
    elif format == "turtle":
        triples = list(_TurtleParser(text).parse())
    else:
        raise ValueError(f"unsupported format: {format!r}")
    return Graph(triples, label=label)


def _fresh_blank_prefix() -> str:
    return f"g{next(_parse_counter)}b"


# -- N-Triples ---------------------------------------------------------------


class _LineScanner:
    def __init__(self, line: str, lineno: int):
        self.s = line
        self.i = 0
        self.lineno = lineno

    def error(self, message: str):
        raise ParseError(self.lineno, self.i + 1, message)

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def skip_ws(self):
        while self.i < len(self.s) and self.s[self.i] in " \t":
            self.i += 1

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.i += 1

    def read_iriref(self) -> Iri:
        self.expect("<")
        out = []
        while True:
            if self.i >= len(self.s):
                self.error("unterminated IRI")
            ch = self.s[self.i]
            if ch == ">":
                self.i += 1
                break
            if ch == "\\":
                out.append(self._read_escape(unicode_only=True))
            else:
                self.i += 1
                out.append(ch)
        try:
            return Iri("".join(out))
        except RelativeIriError as exc:
            self.error(str(exc))

    def _read_escape(self, unicode_only: bool = False) -> str:
        # positioned at the backslash
        self.i += 1
        if self.i >= len(self.s):
            self.error("dangling escape")
        code = self.s[self.i]
        self.i += 1
        if code == "u" or code == "U":
            width = 4 if code == "u" else 8
            hexpart = self.s[self.i : self.i + width]
            if len(hexpart) != width or not all(c in "0123456789abcdefABCDEF" for c in hexpart):
                self.error("malformed unicode escape")
            self.i += width
            return chr(int(hexpart, 16))
        if unicode_only:
            self.error(f"illegal escape \\{code} in IRI")
        if code not in _ESCAPES:
            self.error(f"illegal escape \\{code}")
        return _ESCAPES[code]

    def read_blank_label(self) -> str:
        self.expect("_")
        self.expect(":")
        start = self.i
        while self.i < len(self.s) and (self.s[self.i].isalnum() or self.s[self.i] in "_-"):
            self.i += 1
        if self.i == start:
            self.error("empty blank node label")
        return self.s[start : self.i]

    def read_literal(self) -> Literal:
        self.expect('"')
        out = []
        while True:
            if self.i >= len(self.s):
                self.error("unterminated string literal")
            ch = self.s[self.i]
            if ch == '"':
                self.i += 1
                break
            if ch == "\\":
                out.append(self._read_escape())
            else:
                self.i += 1
                out.append(ch)
        lexical = "".join(out)
        if self.peek() == "^":
            self.i += 1
            self.expect("^")
            dt = self.read_iriref()
            return Literal(lexical, datatype=dt)
        if self.peek() == "@":
            self.i += 1
            start = self.i
            while self.i < len(self.s) and (self.s[self.i].isalnum() or self.s[self.i] == "-"):
                self.i += 1
            if self.i == start:
                self.error("empty language tag")
            return Literal(lexical, language=self.s[start : self.i])
        return Literal(lexical)


def _parse_ntriples(text: str) -> Iterator[Triple]:
    blank_prefix = _fresh_blank_prefix()
    labels: dict[str, BlankNode] = {}

    def blank(label: str) -> BlankNode:
        if label not in labels:
            labels[label] = BlankNode(f"{blank_prefix}{len(labels)}")
        return labels[label]

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        sc = _LineScanner(raw, lineno)
        sc.skip_ws()
        ch = sc.peek()
        if ch == "<":
            subject: Iri | BlankNode = sc.read_iriref()
        elif ch == "_":
            subject = blank(sc.read_blank_label())
        else:
            sc.error("expected IRI or blank node subject")
        sc.skip_ws()
        predicate = sc.read_iriref()
        sc.skip_ws()
        ch = sc.peek()
        obj: Term
        if ch == "<":
            obj = sc.read_iriref()
        elif ch == "_":
            obj = blank(sc.read_blank_label())
        elif ch == '"':
            obj = sc.read_literal()
        else:
            sc.error("expected IRI, blank node or literal object")
        sc.skip_ws()
        sc.expect(".")
        sc.skip_ws()
        rest = sc.s[sc.i :].strip()
        if rest and not rest.startswith("#"):
            sc.error("trailing content after '.'")
        yield Triple(subject, predicate, obj)


# -- Turtle subset -----------------------------------------------------------


class _TurtleParser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0
        self.line = 1
        self.col = 1
        self.prefixes: dict[str, str] = {}
        self.base: Optional[str] = None
        self.blank_prefix = _fresh_blank_prefix()
        self.labels: dict[str, BlankNode] = {}
        self.anon = itertools.count()
        self.triples: list[Triple] = []

    # - low-level scanning -

    def error(self, message: str):
        raise ParseError(self.line, self.col, message)

    def _advance(self, n: int = 1):
        for _ in range(n):
            if self.i < len(self.s):
                if self.s[self.i] == "\n":
                    self.line += 1
                    self.col = 1
                else:
                    self.col += 1
                self.i += 1

    def peek(self, k: int = 0) -> str:
        j = self.i + k
        return self.s[j] if j < len(self.s) else ""

    def at_end(self) -> bool:
        return self.i >= len(self.s)

    def skip_ws(self):
        while not self.at_end():
            ch = self.s[self.i]
            if ch in " \t\r\n":
                self._advance()
            elif ch == "#":
                while not self.at_end() and self.s[self.i] != "\n":
                    self._advance()
            else:
                break

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}, found {self.peek()!r}")
        self._advance()

    def _match_keyword(self, word: str) -> bool:
        end = self.i + len(word)
        if self.s[self.i : end] != word:
            return False
        nxt = self.s[end] if end < len(self.s) else ""
        if nxt and (nxt.isalnum() or nxt in "_:"):
            return False
        self._advance(len(word))
        return True

    # - terms -

    def read_iriref(self) -> Iri:
        self.expect("<")
        out = []
        while True:
            if self.at_end():
                self.error("unterminated IRI")
            ch = self.s[self.i]
            if ch == ">":
                self._advance()
                break
            if ch == "\\":
                self._advance()
                code = self.peek()
                if code not in ("u", "U"):
                    self.error(f"illegal escape \\{code} in IRI")
                width = 4 if code == "u" else 8
                self._advance()
                hexpart = self.s[self.i : self.i + width]
                if len(hexpart) != width or not all(c in "0123456789abcdefABCDEF" for c in hexpart):
                    self.error("malformed unicode escape")
                self._advance(width)
                out.append(chr(int(hexpart, 16)))
            elif ch in " \n\t\r":
                self.error("whitespace inside IRI")
            else:
                self._advance()
                out.append(ch)
        value = "".join(out)
        return self.resolve_iri(value)

    def resolve_iri(self, value: str) -> Iri:
        try:
            return Iri(value)
        except RelativeIriError:
            if self.base is None:
                raise RelativeIriError(
                    f"relative IRI {value!r} at line {self.line} and no base directive in effect"
                )
            return Iri(self._resolve_against_base(value))

    def _resolve_against_base(self, value: str) -> str:
        base = self.base or ""
        if value.startswith("#"):
            return base.split("#", 1)[0] + value
        if value.startswith("//"):
            scheme = base.partition(":")[0]
            return f"{scheme}:{value}"
        if value.startswith("/"):
            head = base
            for sep in ("#", "?"):
                head = head.split(sep, 1)[0]
            marker = head.find("://")
            if marker >= 0:
                authority_end = head.find("/", marker + 3)
                root = head if authority_end < 0 else head[:authority_end]
            else:
                root = head.rstrip("/")
            return root + value
        return base.rsplit("/", 1)[0] + "/" + value

    def read_pname(self) -> Iri:
        start_line, start_col = self.line, self.col
        start = self.i
        while not self.at_end() and (self.s[self.i].isalnum() or self.s[self.i] in "_-"):
            self._advance()
        prefix = self.s[start : self.i]
        if self.peek() != ":":
            self.line, self.col = start_line, start_col
            self.error(f"expected prefixed name near {prefix!r}")
        self._advance()
        local_start = self.i
        while not self.at_end():
            ch = self.s[self.i]
            if ch.isalnum() or ch in _PN_LOCAL_EXTRA or ch == "%":
                # a trailing dot terminates the statement, not the name
                if ch == "." and not (self.peek(1).isalnum() or self.peek(1) in "_-%"):
                    break
                self._advance()
            else:
                break
        local = self.s[local_start : self.i]
        if prefix not in self.prefixes:
            self.line, self.col = start_line, start_col
            self.error(f"undeclared prefix {prefix + ':'!r}")
        return self.resolve_iri(self.prefixes[prefix] + local)

    def read_blank(self) -> BlankNode:
        self.expect("_")
        self.expect(":")
        start = self.i
        while not self.at_end() and (self.s[self.i].isalnum() or self.s[self.i] in "_-"):
            self._advance()
        if self.i == start:
            self.error("empty blank node label")
        label = self.s[start : self.i]
        if label not in self.labels:
            self.labels[label] = BlankNode(f"{self.blank_prefix}{len(self.labels)}")
        return self.labels[label]

    def fresh_blank(self) -> BlankNode:
        return BlankNode(f"{self.blank_prefix}a{next(self.anon)}")

    def read_string(self) -> str:
        self.expect('"')
        out = []
        while True:
            if self.at_end():
                self.error("unterminated string literal")
            ch = self.s[self.i]
            if ch == '"':
                self._advance()
                return "".join(out)
            if ch == "\\":
                self._advance()
                code = self.peek()
                if code in ("u", "U"):
                    width = 4 if code == "u" else 8
                    self._advance()
                    hexpart = self.s[self.i : self.i + width]
                    if len(hexpart) != width or not all(c in "0123456789abcdefABCDEF" for c in hexpart):
                        self.error("malformed unicode escape")
                    self._advance(width)
                    out.append(chr(int(hexpart, 16)))
                elif code in _ESCAPES:
                    self._advance()
                    out.append(_ESCAPES[code])
                else:
                    self.error(f"illegal escape \\{code}")
            elif ch == "\n":
                self.error("newline inside string literal")
            else:
                self._advance()
                out.append(ch)

    def read_literal(self) -> Literal:
        lexical = self.read_string()
        if self.peek() == "^" and self.peek(1) == "^":
            self._advance(2)
            if self.peek() == "<":
                dt = self.read_iriref()
            else:
                dt = self.read_pname()
            return Literal(lexical, datatype=dt)
        if self.peek() == "@":
            self._advance()
            start = self.i
            while not self.at_end() and (self.s[self.i].isalnum() or self.s[self.i] == "-"):
                self._advance()
            if self.i == start:
                self.error("empty language tag")
            return Literal(lexical, language=self.s[start : self.i])
        return Literal(lexical)

    def read_numeric(self) -> Literal:
        start = self.i
        if self.peek() in "+-":
            self._advance()
        digits = 0
        while not self.at_end() and self.s[self.i].isdigit():
            self._advance()
            digits += 1
        if digits == 0:
            self.error("malformed number")
        if self.peek() == "." and self.peek(1).isdigit():
            self._advance()
            while not self.at_end() and self.s[self.i].isdigit():
                self._advance()
            return Literal(self.s[start : self.i], datatype=_XSD_DECIMAL)
        return Literal(self.s[start : self.i], datatype=_XSD_INTEGER)

    # - productions -

    def parse(self) -> list[Triple]:
        self.skip_ws()
        while not self.at_end():
            if self.peek() == "@":
                self._directive()
            else:
                self._triples_block()
            self.skip_ws()
        return self.triples

    def _directive(self):
        self.expect("@")
        if self._match_keyword("prefix"):
            self.skip_ws()
            start = self.i
            while not self.at_end() and (self.s[self.i].isalnum() or self.s[self.i] in "_-"):
                self._advance()
            prefix = self.s[start : self.i]
            self.expect(":")
            self.skip_ws()
            iri = self.read_iriref()
            self.prefixes[prefix] = iri.value
            self.skip_ws()
            self.expect(".")
        elif self._match_keyword("base"):
            self.skip_ws()
            self.expect("<")
            out = []
            while self.peek() != ">":
                if self.at_end():
                    self.error("unterminated base IRI")
                out.append(self.peek())
                self._advance()
            self._advance()
            base = "".join(out)
            try:
                Iri(base)
            except RelativeIriError:
                raise RelativeIriError(f"base directive must be absolute: {base!r}")
            self.base = base
            self.skip_ws()
            self.expect(".")
        else:
            self.error("unknown directive (only @prefix and @base are supported)")

    def _triples_block(self):
        subject, bracketed = self._subject()
        self.skip_ws()
        if bracketed and self.peek() == ".":
            # "[ p o ] ." already emitted its triples
            self._advance()
            return
        self._predicate_object_list(subject)
        self.skip_ws()
        self.expect(".")

    def _subject(self):
        self.skip_ws()
        ch = self.peek()
        if ch == "<":
            return self.read_iriref(), False
        if ch == "_":
            return self.read_blank(), False
        if ch == "[":
            return self._bracketed_blank(), True
        if ch == "(":
            self.error("collections are not supported by this grammar")
        if ch == "":
            self.error("unexpected end of input")
        return self.read_pname(), False

    def _verb(self) -> Iri:
        self.skip_ws()
        ch = self.peek()
        if ch == "<":
            return self.read_iriref()
        if ch == "a" and not (self.peek(1).isalnum() or self.peek(1) in "_:-"):
            self._advance()
            return RDF_TYPE
        return self.read_pname()

    def _object(self) -> Term:
        self.skip_ws()
        ch = self.peek()
        if ch == "<":
            return self.read_iriref()
        if ch == "_":
            return self.read_blank()
        if ch == "[":
            return self._bracketed_blank()
        if ch == "(":
            self.error("collections are not supported by this grammar")
        if ch == '"':
            return self.read_literal()
        if ch.isdigit() or ch in "+-":
            return self.read_numeric()
        if ch == "t" and self._match_keyword("true"):
            return Literal("true", datatype=_XSD_BOOLEAN)
        if ch == "f" and self._match_keyword("false"):
            return Literal("false", datatype=_XSD_BOOLEAN)
        if ch == "":
            self.error("unexpected end of input")
        return self.read_pname()

    def _bracketed_blank(self) -> BlankNode:
        self.expect("[")
        node = self.fresh_blank()
        self.skip_ws()
        if self.peek() == "]":
            self._advance()
            return node
        self._predicate_object_list(node)
        self.skip_ws()
        self.expect("]")
        return node

    def _predicate_object_list(self, subject):
        while True:
            predicate = self._verb()
            while True:
                obj = self._object()
                self.triples.append(Triple(subject, predicate, obj))
                self.skip_ws()
                if self.peek() == ",":
                    self._advance()
                    continue
                break
            if self.peek() == ";":
                self._advance()
                self.skip_ws()
                if self.peek() in (".", "]", ";", ""):
                    # trailing semicolon
                    while self.peek() == ";":
                        self._advance()
                        self.skip_ws()
                    return
                continue
            return
