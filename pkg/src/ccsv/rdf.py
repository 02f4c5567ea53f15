"""Minimal RDF data model, a Turtle-subset reader/writer, and an in-memory
triple store with pattern matching.

The supported Turtle subset covers: ``@prefix`` directives, prefixed names,
the ``a`` keyword, absolute and relative IRIs in angle brackets, plain /
typed / language-tagged string literals, bare numeric literals (integer and
decimal shorthand), predicate lists (``;``), object lists (``,``), blank
node labels, and ``#`` comments.  Collections ``( )``, anonymous blank
nodes ``[ ]`` and ``@base`` are rejected as unsupported, never silently
dropped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

__all__ = [
    "Iri",
    "Literal",
    "BlankNode",
    "Triple",
    "Graph",
    "GraphBuilder",
    "TurtleParseError",
    "parse_turtle",
    "serialize_turtle",
    "match",
    "RDF",
    "RDFS",
    "XSD",
    "DEFAULT_PREFIXES",
]


class TurtleParseError(ValueError):
    """Syntax or resolution error while reading Turtle; carries position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self):
        if not self.value:
            raise ValueError("IRI must be non-empty")
        if any(c in self.value for c in " \t\r\n<>"):
            raise ValueError(f"IRI contains forbidden character: {self.value!r}")

    def is_absolute(self) -> bool:
        return bool(_SCHEME_RE.match(self.value))

    def resolve(self, reference: str) -> "Iri":
        """Resolve a (possibly relative) reference against this base."""
        if _SCHEME_RE.match(reference):
            return Iri(reference)
        return Iri(self.value + reference)

    def __str__(self) -> str:
        return self.value


# Namespaces used throughout; the ontology prefixes bind to placeholder
# namespace IRIs fixed here for determinism (see data/namespaces notes).
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"

DEFAULT_PREFIXES: dict[str, str] = {
    "rdf": RDF,
    "rdfs": RDFS,
    "xsd": XSD,
    "prov": "http://www.w3.org/ns/prov#",
    "time": "http://www.w3.org/2006/time#",
    "geo": "http://www.w3.org/2003/01/geo/wgs84_pos#",
    "oboe": "http://ecoinformatics.org/oboe/oboe.1.0/oboe-core.owl#",
    "vstoi": "http://hadatac.org/ont/vstoi#",
    "hasneto": "http://hadatac.org/ont/hasneto#",
    "hasneto-sc": "http://hadatac.org/ont/hasneto-sc#",
    "ccsv": "http://hadatac.org/ont/ccsv#",
    "pmf": "http://purl.org/fortaleza/pmf#",
}

RDF_TYPE = Iri(RDF + "type")
XSD_STRING = Iri(XSD + "string")
XSD_INTEGER = Iri(XSD + "integer")
XSD_DECIMAL = Iri(XSD + "decimal")
XSD_DATETIME = Iri(XSD + "dateTime")
XSD_ANYURI = Iri(XSD + "anyURI")
LANG_STRING = Iri(RDF + "langString")


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: Iri = XSD_STRING
    language: str | None = None

    def __post_init__(self):
        if self.language is not None and self.datatype != LANG_STRING:
            object.__setattr__(self, "datatype", LANG_STRING)

    def __str__(self) -> str:
        return self.lexical


@dataclass(frozen=True, order=True)
class BlankNode:
    label: str


Term = Iri | Literal | BlankNode


@dataclass(frozen=True)
class Triple:
    subject: Iri | BlankNode
    predicate: Iri
    object: Term


def _term_key(t: Term) -> str:
    """Canonical serialization used for deterministic ordering."""
    if isinstance(t, Iri):
        return f"<{t.value}>"
    if isinstance(t, BlankNode):
        return f"_:{t.label}"
    if t.language:
        return f'"{t.lexical}"@{t.language}'
    return f'"{t.lexical}"^^<{t.datatype.value}>'


def _triple_key(t: Triple) -> tuple[str, str, str]:
    return (_term_key(t.subject), _term_key(t.predicate), _term_key(t.object))


class Graph:
    """An immutable set of triples plus the prefixes seen while parsing.

    Equality is set equality on the triples; prefixes are carried as
    annotation only.
    """

    __slots__ = ("_triples", "prefixes")

    def __init__(self, triples=(), prefixes: dict[str, str] | None = None):
        self._triples: frozenset[Triple] = frozenset(triples)
        self.prefixes: dict[str, str] = dict(prefixes or {})

    @property
    def triples(self) -> frozenset[Triple]:
        return self._triples

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self):
        return iter(self._triples)

    def __contains__(self, t: Triple) -> bool:
        return t in self._triples

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self):
        return hash(self._triples)

    def __repr__(self):
        return f"Graph({len(self._triples)} triples)"

    def union(self, other: "Graph") -> "Graph":
        prefixes = dict(self.prefixes)
        prefixes.update(other.prefixes)
        return Graph(self._triples | other.triples, prefixes)


class GraphBuilder:
    """Mutable accumulator; ``freeze`` produces the immutable Graph."""

    def __init__(self, prefixes: dict[str, str] | None = None):
        self.triples: set[Triple] = set()
        self.prefixes: dict[str, str] = dict(prefixes or {})

    def add(self, s, p, o) -> None:
        self.triples.add(Triple(s, p, o))

    def freeze(self) -> Graph:
        return Graph(self.triples, self.prefixes)


def match(graph: Graph, s=None, p=None, o=None) -> list[Triple]:
    """All triples matching the given positions; None matches anything.

    Result order is deterministic: lexicographic on the canonical
    serialization of (subject, predicate, object).
    """
    out = [
        t
        for t in graph
        if (s is None or t.subject == s)
        and (p is None or t.predicate == p)
        and (o is None or t.object == o)
    ]
    out.sort(key=_triple_key)
    return out


# ---------------------------------------------------------------------------
# Tokenizer

_PNAME_RE = re.compile(
    r"(?P<prefix>[A-Za-z][A-Za-z0-9_\-]*|)\:"
    r"(?P<local>[A-Za-z0-9_][A-Za-z0-9_\-]*(?:\.[A-Za-z0-9_\-]+)*|)"
)
_NUMBER_RE = re.compile(r"[+-]?(?:\d+\.\d+|\.\d+|\d+)")
_LANG_RE = re.compile(r"@[A-Za-z]+(?:-[A-Za-z0-9]+)*")
_BLANK_RE = re.compile(r"_:(?P<label>[A-Za-z0-9][A-Za-z0-9_\-.]*)")

_ESCAPES = {"t": "\t", "n": "\n", "r": "\r", '"': '"', "\\": "\\", "b": "\b", "f": "\f"}


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind  # iriref | pname | blank | string | number | punct | a | prefix_directive | eof
        self.value = value
        self.line = line
        self.col = col


class _Lexer:
    def __init__(self, source: str):
        self.src = source
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, msg: str) -> TurtleParseError:
        return TurtleParseError(msg, self.line, self.col)

    def _advance(self, n: int) -> str:
        text = self.src[self.pos : self.pos + n]
        for c in text:
            if c == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return text

    def _skip_ws(self) -> None:
        while self.pos < len(self.src):
            c = self.src[self.pos]
            if c in " \t\r\n":
                self._advance(1)
            elif c == "#":
                end = self.src.find("\n", self.pos)
                self._advance((end if end != -1 else len(self.src)) - self.pos)
            else:
                return

    def next(self) -> _Token:
        self._skip_ws()
        line, col = self.line, self.col
        if self.pos >= len(self.src):
            return _Token("eof", "", line, col)
        c = self.src[self.pos]

        if c == "<":
            end = self.src.find(">", self.pos)
            if end == -1:
                raise self.error("unterminated IRI reference")
            raw = self.src[self.pos + 1 : end]
            if any(ch in raw for ch in " \t\r\n<"):
                raise self.error(f"invalid character inside IRI reference: {raw!r}")
            self._advance(end + 1 - self.pos)
            return _Token("iriref", raw, line, col)

        if c == '"':
            return self._string(line, col)

        if c in ".;,":
            self._advance(1)
            return _Token("punct", c, line, col)

        if c in "([":
            raise self.error(
                "collections and anonymous blank nodes are not supported by this Turtle subset"
            )

        if c == "@":
            if self.src.startswith("@prefix", self.pos):
                self._advance(len("@prefix"))
                return _Token("prefix_directive", "@prefix", line, col)
            if self.src.startswith("@base", self.pos):
                raise self.error("@base is not supported; supply the base to the parser")
            raise self.error("unknown directive")

        if self.src.startswith("_:", self.pos):
            m = _BLANK_RE.match(self.src, self.pos)
            if not m:
                raise self.error("malformed blank node label")
            self._advance(m.end() - self.pos)
            return _Token("blank", m.group("label"), line, col)

        m = _NUMBER_RE.match(self.src, self.pos)
        if m and (c.isdigit() or c in "+-."):
            self._advance(m.end() - self.pos)
            return _Token("number", m.group(0), line, col)

        # bare `a` keyword (must not be the start of a prefixed name)
        if c == "a" and not _PNAME_RE.match(self.src, self.pos):
            nxt = self.src[self.pos + 1 : self.pos + 2]
            if nxt == "" or nxt in " \t\r\n<#":
                self._advance(1)
                return _Token("a", "a", line, col)

        m = _PNAME_RE.match(self.src, self.pos)
        if m:
            self._advance(m.end() - self.pos)
            return _Token("pname", (m.group("prefix"), m.group("local")), line, col)

        raise self.error(f"unexpected character {c!r}")

    def _string(self, line, col) -> _Token:
        # only short double-quoted strings in the subset
        i = self.pos + 1
        out = []
        while True:
            if i >= len(self.src):
                raise TurtleParseError("unterminated string literal", line, col)
            c = self.src[i]
            if c == '"':
                i += 1
                break
            if c == "\n":
                raise TurtleParseError("newline inside string literal", line, col)
            if c == "\\":
                esc = self.src[i + 1 : i + 2]
                if esc in _ESCAPES:
                    out.append(_ESCAPES[esc])
                    i += 2
                elif esc == "u":
                    hexpart = self.src[i + 2 : i + 6]
                    if len(hexpart) != 4:
                        raise TurtleParseError("truncated \\u escape", line, col)
                    try:
                        out.append(chr(int(hexpart, 16)))
                    except ValueError:
                        raise TurtleParseError("invalid \\u escape", line, col) from None
                    i += 6
                else:
                    raise TurtleParseError(f"unknown escape \\{esc}", line, col)
            else:
                out.append(c)
                i += 1
        self._advance(i - self.pos)
        lexical = "".join(out)
        # optional @lang or ^^datatype suffix handled by the parser
        return _Token("string", lexical, line, col)


# ---------------------------------------------------------------------------
# Parser

class _Parser:
    def __init__(self, source: str, base: Iri):
        self.lexer = _Lexer(source)
        self.base = base
        self.builder = GraphBuilder()
        self.defaults = dict(DEFAULT_PREFIXES)
        self.tok = self.lexer.next()

    def _next(self) -> None:
        self.tok = self.lexer.next()

    def _err(self, msg: str) -> TurtleParseError:
        return TurtleParseError(msg, self.tok.line, self.tok.col)

    def _expect_punct(self, ch: str) -> None:
        if self.tok.kind != "punct" or self.tok.value != ch:
            raise self._err(f"expected {ch!r}")
        self._next()

    def parse(self) -> Graph:
        while self.tok.kind != "eof":
            if self.tok.kind == "prefix_directive":
                self._prefix_directive()
            else:
                self._statement()
        return self.builder.freeze()

    def _prefix_directive(self) -> None:
        self._next()
        if self.tok.kind != "pname" or self.tok.value[1] != "":
            raise self._err("expected prefix name ending in ':'")
        prefix = self.tok.value[0]
        self._next()
        if self.tok.kind != "iriref":
            raise self._err("expected namespace IRI")
        ns = self.base.resolve(self.tok.value).value
        self._next()
        self._expect_punct(".")
        self.builder.prefixes[prefix] = ns

    def _resolve_pname(self, prefix: str, local: str) -> Iri:
        ns = self.builder.prefixes.get(prefix) or self.defaults.get(prefix)
        if ns is None:
            raise self._err(f"unknown prefix {prefix!r}")
        if prefix not in self.builder.prefixes:
            self.builder.prefixes[prefix] = ns
        return Iri(ns + local)

    def _iri(self) -> Iri:
        if self.tok.kind == "iriref":
            iri = self.base.resolve(self.tok.value)
            self._next()
            return iri
        if self.tok.kind == "pname":
            prefix, local = self.tok.value
            iri = self._resolve_pname(prefix, local)
            self._next()
            return iri
        raise self._err("expected IRI")

    def _subject(self):
        if self.tok.kind == "blank":
            node = BlankNode(self.tok.value)
            self._next()
            return node
        return self._iri()

    def _object(self) -> Term:
        if self.tok.kind == "blank":
            node = BlankNode(self.tok.value)
            self._next()
            return node
        if self.tok.kind == "number":
            lexical = self.tok.value
            dt = XSD_DECIMAL if "." in lexical else XSD_INTEGER
            self._next()
            return Literal(lexical, dt)
        if self.tok.kind == "string":
            return self._literal()
        return self._iri()

    def _literal(self) -> Literal:
        lexical = self.tok.value
        # inspect the raw source right after the closing quote before
        # lexing ahead: ^^ and @lang bind tighter than the next token
        src, pos = self.lexer.src, self.lexer.pos
        if src.startswith("^^", pos):
            self.lexer._advance(2)
            self._next()
            dt = self._iri_token_only()
            return Literal(lexical, dt)
        m = _LANG_RE.match(src, pos)
        if m:
            self.lexer._advance(m.end() - pos)
            tag = m.group(0)[1:]
            self._next()
            return Literal(lexical, LANG_STRING, tag)
        self._next()
        return Literal(lexical)

    def _iri_token_only(self) -> Iri:
        if self.tok.kind not in ("iriref", "pname"):
            raise self._err("expected datatype IRI after '^^'")
        return self._iri()

    def _statement(self) -> None:
        subject = self._subject()
        while True:
            if self.tok.kind == "a":
                predicate = RDF_TYPE
                self._next()
            else:
                predicate = self._iri()
            while True:
                obj = self._object()
                self.builder.add(subject, predicate, obj)
                if self.tok.kind == "punct" and self.tok.value == ",":
                    self._next()
                    continue
                break
            if self.tok.kind == "punct" and self.tok.value == ";":
                self._next()
                # trailing ';' before '.' is legal
                if self.tok.kind == "punct" and self.tok.value == ".":
                    self._next()
                    return
                continue
            self._expect_punct(".")
            return


def parse_turtle(source: str, base: Iri) -> Graph:
    """Parse Turtle-subset text into a Graph.

    Relative IRIs are resolved against ``base``; prefixed names expand via
    document ``@prefix`` declarations, falling back to the well-known
    default prefixes.
    """
    return _Parser(source, base).parse()


# ---------------------------------------------------------------------------
# Serializer

def _escape(lexical: str) -> str:
    out = lexical.replace("\\", "\\\\").replace('"', '\\"')
    return out.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")


_LOCAL_OK_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_\-]*(?:\.[A-Za-z0-9_\-]+)*$")


def _format_iri(iri: Iri, by_ns: list[tuple[str, str]]) -> str:
    for ns, prefix in by_ns:
        if iri.value.startswith(ns):
            local = iri.value[len(ns):]
            if local and _LOCAL_OK_RE.fullmatch(local):
                return f"{prefix}:{local}"
    return f"<{iri.value}>"


def serialize_turtle(graph: Graph) -> str:
    """Emit the graph as Turtle within the supported subset.

    Re-parsing the output yields a graph with an identical triple set.
    """
    prefixes = dict(graph.prefixes)
    # longest namespace wins when namespaces nest
    by_ns = sorted(((ns, p) for p, ns in prefixes.items()), key=lambda x: -len(x[0]))

    def fmt_term(t: Term) -> str:
        if isinstance(t, Iri):
            return _format_iri(t, by_ns)
        if isinstance(t, BlankNode):
            return f"_:{t.label}"
        if t.language:
            return f'"{_escape(t.lexical)}"@{t.language}'
        if t.datatype == XSD_STRING:
            return f'"{_escape(t.lexical)}"'
        return f'"{_escape(t.lexical)}"^^{_format_iri(t.datatype, by_ns)}'

    lines = [f"@prefix {p}: <{ns}> ." for p, ns in sorted(prefixes.items())]
    if lines:
        lines.append("")

    triples = sorted(graph, key=_triple_key)
    current_subject = None
    for i, t in enumerate(triples):
        pred = "a" if t.predicate == RDF_TYPE else fmt_term(t.predicate)
        if t.subject != current_subject:
            if current_subject is not None:
                lines[-1] += " ."
            current_subject = t.subject
            lines.append(fmt_term(t.subject))
            lines.append(f"    {pred} {fmt_term(t.object)}")
        else:
            lines[-1] += " ;"
            lines.append(f"    {pred} {fmt_term(t.object)}")
    if current_subject is not None:
        lines[-1] += " ."
    return "\n".join(lines) + "\n"
