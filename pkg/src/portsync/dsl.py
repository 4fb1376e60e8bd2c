"""Concrete syntax for system models (.bip-lite files).

    system modulo8 {
      atom B1 {
        ports p, q;
        states l1 init, l2;
        trans l1 -[ p ]-> l2;
        trans l2 -[ p, q ]-> l1;
      }
      connector x = p' [[q r]' [[s t]' u]];
      priority maximal_progress;
    }

Declaration order is atoms, then connectors, then one optional priority
clause (either `maximal_progress` or juxtaposed `{low} < {high}` pairs).
An apostrophe marks a trigger; brackets group.  `#` starts a comment.
The constants 0/1 of the connector algebra have no surface syntax.

Parsing is total: any input either yields a validated SystemModel or a
DslError carrying line/column diagnostics.  `serialize` inverts `parse`
up to whitespace: parse(serialize(m)) == m for any valid model.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .connectors import AcTerm, Factor, Fusion, PortLeaf, fusion
from .model import (
    AtomicBehavior,
    Connector,
    ExplicitPairs,
    MaximalProgress,
    SystemModel,
    Transition,
    validate,
)

FILE_EXTENSION = ".bip-lite"

KEYWORDS = frozenset((
    "system", "atom", "ports", "states", "init", "trans",
    "connector", "priority", "maximal_progress",
))

_PUNCT = frozenset(("{", "}", "[", "]", ";", ",", "'", "=", "<", "-[", "]->"))


@dataclass(frozen=True)
class DslDiagnostic:
    line: int
    col: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: {self.message}"


class DslError(Exception):
    def __init__(self, diagnostics: list[DslDiagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class Token:
    kind: str  # "name" | "punct" | "eof"
    text: str
    line: int
    col: int


@dataclass
class SourceModel:
    """Parse result with enough source info to locate later diagnostics."""

    text: str
    system: SystemModel
    locations: dict[str, tuple[int, int]] = field(default_factory=dict)


def _lex(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("name", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if ch == "-":
            if i + 1 < n and text[i + 1] == "[":
                tokens.append(Token("punct", "-[", start_line, start_col))
                i += 2
                col += 2
                continue
            raise DslError([DslDiagnostic(start_line, start_col, "stray '-' (expected '-[')")])
        if ch == "]":
            if text[i + 1:i + 3] == "->":
                tokens.append(Token("punct", "]->", start_line, start_col))
                i += 3
                col += 3
                continue
            tokens.append(Token("punct", "]", start_line, start_col))
            i += 1
            col += 1
            continue
        if ch in "{}[;,'=<":
            tokens.append(Token("punct", ch, start_line, start_col))
            i += 1
            col += 1
            continue
        raise DslError([DslDiagnostic(start_line, start_col, f"unexpected character {ch!r}")])
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.locations: dict[str, tuple[int, int]] = {}

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, tok: Token, message: str) -> None:
        raise DslError([DslDiagnostic(tok.line, tok.col, message)])

    def expect_punct(self, text: str) -> Token:
        tok = self.next()
        if tok.kind != "punct" or tok.text != text:
            self.fail(tok, f"expected {text!r}, found {tok.text!r}" if tok.kind != "eof"
                      else f"expected {text!r}, found end of input")
        return tok

    def expect_keyword(self, word: str) -> Token:
        tok = self.next()
        if tok.kind != "name" or tok.text != word:
            self.fail(tok, f"expected keyword {word!r}, found {tok.text!r}" if tok.kind != "eof"
                      else f"expected keyword {word!r}, found end of input")
        return tok

    def expect_name(self) -> Token:
        tok = self.next()
        if tok.kind != "name":
            self.fail(tok, f"expected a name, found {tok.text!r}" if tok.kind != "eof"
                      else "expected a name, found end of input")
        if tok.text in KEYWORDS:
            self.fail(tok, f"{tok.text!r} is a reserved word")
        return tok

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "name" and tok.text == word

    def namelist(self) -> list[Token]:
        names = [self.expect_name()]
        while self.peek().text == ",":
            self.next()
            names.append(self.expect_name())
        return names

    # -- grammar ------------------------------------------------------

    def system(self) -> SystemModel:
        self.expect_keyword("system")
        name_tok = self.expect_name()
        self.expect_punct("{")
        atoms: list[AtomicBehavior] = []
        while self.at_keyword("atom"):
            atoms.append(self.atom())
        connectors: list[Connector] = []
        while self.at_keyword("connector"):
            connectors.append(self.connector())
        priority = None
        if self.at_keyword("priority"):
            priority = self.priority()
        self.expect_punct("}")
        tok = self.peek()
        if tok.kind != "eof":
            self.fail(tok, f"trailing input after the system block: {tok.text!r}")
        return SystemModel(
            name=name_tok.text,
            atoms=tuple(atoms),
            connectors=tuple(connectors),
            priority=priority,
        )

    def atom(self) -> AtomicBehavior:
        kw = self.expect_keyword("atom")
        name_tok = self.expect_name()
        self.locations[f"atom:{name_tok.text}"] = (kw.line, kw.col)
        self.expect_punct("{")
        self.expect_keyword("ports")
        port_toks = self.namelist()
        self.expect_punct(";")
        for t in port_toks:
            self.locations.setdefault(f"port:{t.text}", (t.line, t.col))
        self.expect_keyword("states")
        states: list[str] = []
        init: str | None = None
        while True:
            st = self.expect_name()
            states.append(st.text)
            if self.at_keyword("init"):
                mark = self.next()
                if init is not None:
                    raise DslError([DslDiagnostic(
                        mark.line, mark.col,
                        f"atom {name_tok.text!r} marks more than one init state")])
                init = st.text
            if self.peek().text != ",":
                break
            self.next()
        self.expect_punct(";")
        if init is None:
            self.fail(name_tok, f"atom {name_tok.text!r} marks no state as init")
        assert init is not None
        transitions: list[Transition] = []
        while self.at_keyword("trans"):
            transitions.append(self.trans())
        self.expect_punct("}")
        return AtomicBehavior(
            name=name_tok.text,
            states=tuple(states),
            init=init,
            ports=tuple(t.text for t in port_toks),
            transitions=tuple(transitions),
        )

    def trans(self) -> Transition:
        self.expect_keyword("trans")
        src = self.expect_name()
        self.expect_punct("-[")
        label = self.namelist()
        self.expect_punct("]->")
        dst = self.expect_name()
        self.expect_punct(";")
        return Transition(source=src.text, label=frozenset(t.text for t in label), target=dst.text)

    def connector(self) -> Connector:
        kw = self.expect_keyword("connector")
        name_tok = self.expect_name()
        self.locations[f"connector:{name_tok.text}"] = (kw.line, kw.col)
        self.expect_punct("=")
        term = self.acterm()
        self.expect_punct(";")
        return Connector(name=name_tok.text, term=term)

    def acterm(self) -> AcTerm:
        factors = [self.factor()]
        while True:
            tok = self.peek()
            if (tok.kind == "name" and tok.text not in KEYWORDS) or tok.text == "[":
                factors.append(self.factor())
            else:
                break
        return fusion(factors)

    def factor(self) -> Factor:
        tok = self.peek()
        if tok.text == "[":
            self.next()
            inner = self.acterm()
            self.expect_punct("]")
            trigger = self.peek().text == "'"
            if trigger:
                self.next()
            return Factor(inner, trigger)
        name = self.expect_name()
        trigger = self.peek().text == "'"
        if trigger:
            self.next()
        return Factor(PortLeaf(name.text), trigger)

    def priority(self) -> MaximalProgress | ExplicitPairs:
        kw = self.expect_keyword("priority")
        self.locations["priority"] = (kw.line, kw.col)
        if self.at_keyword("maximal_progress"):
            self.next()
            self.expect_punct(";")
            return MaximalProgress()
        pairs: list[tuple[frozenset[str], frozenset[str]]] = []
        while self.peek().text == "{":
            self.next()
            low = frozenset(t.text for t in self.namelist())
            self.expect_punct("}")
            self.expect_punct("<")
            self.expect_punct("{")
            high = frozenset(t.text for t in self.namelist())
            self.expect_punct("}")
            pairs.append((low, high))
        if not pairs:
            self.fail(self.peek(), "expected 'maximal_progress' or at least one '{...} < {...}' pair")
        self.expect_punct(";")
        return ExplicitPairs(frozenset(pairs))


def parse_source(text: str) -> SourceModel:
    """Parse and validate; raises DslError with located diagnostics."""
    parser = _Parser(_lex(text))
    system = parser.system()
    diags = validate(system)
    if diags:
        located = []
        for d in diags:
            key = d.location.replace(" ", ":", 1)
            line, col = parser.locations.get(key, (0, 0))
            located.append(DslDiagnostic(line, col, str(d)))
        raise DslError(located)
    return SourceModel(text=text, system=system, locations=parser.locations)


def parse(text: str) -> SystemModel:
    return parse_source(text).system


def load(path: str) -> SystemModel:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


# -- serialization ----------------------------------------------------


def _term_text(term: AcTerm) -> str:
    if isinstance(term, PortLeaf):
        return term.port
    if isinstance(term, Fusion):
        return " ".join(_factor_text(f) for f in term.factors)
    raise DslError([DslDiagnostic(0, 0, f"term {term!r} has no surface syntax")])


def _factor_text(f: Factor) -> str:
    mark = "'" if f.trigger else ""
    if isinstance(f.term, PortLeaf):
        return f.term.port + mark
    return f"[{_term_text(f.term)}]{mark}"


def _priority_text(priority) -> str:
    if isinstance(priority, MaximalProgress):
        return "  priority maximal_progress;"
    pairs = sorted(priority.pairs, key=lambda ab: (sorted(ab[0]), sorted(ab[1])))
    rendered = " ".join(
        "{ %s } < { %s }" % (", ".join(sorted(lo)), ", ".join(sorted(hi)))
        for lo, hi in pairs
    )
    return f"  priority {rendered};"


def serialize(system: SystemModel) -> str:
    lines = [f"system {system.name} {{"]
    for atom in system.atoms:
        lines.append(f"  atom {atom.name} {{")
        lines.append(f"    ports {', '.join(atom.ports)};")
        marked = ", ".join(s + " init" if s == atom.init else s for s in atom.states)
        lines.append(f"    states {marked};")
        for t in atom.transitions:
            label = ", ".join(sorted(t.label))
            lines.append(f"    trans {t.source} -[ {label} ]-> {t.target};")
        lines.append("  }")
    for conn in system.connectors:
        lines.append(f"  connector {conn.name} = {_term_text(conn.term)};")
    if system.priority is not None:
        lines.append(_priority_text(system.priority))
    lines.append("}")
    return "\n".join(lines) + "\n"


def save(system: SystemModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(system))
