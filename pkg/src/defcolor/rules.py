"""A line-oriented language for discharging rules.

One rule per line::

    [phase <int>] rule <name>: <sender> [with <pred> {and <pred>}]
        (gives <amount> to <receiver> | averages <receiver>)

    sender   := (vertex | face) deg(=|>=|<=)<int>
    receiver := adjacent vertex <deg>      (vertex senders)
              | incident vertex <deg>      (face senders)
    pred     := count(<relation> vertex <deg>) (==|>=|<=|<|>) <int>
              | not adjacent vertex <deg>
    amount   := <int> | <int>/<int>

``#`` starts a comment.  A rule without ``phase`` inherits the phase of the
previous rule (1 at the start).  An ``averages`` rule must be a face rule
carrying ``count(incident vertex <deg>)==N`` for its own receiver pattern;
``N`` is the group size it levels.

Within a phase every ``gives`` rule fires at once from the static degree
data, then the ``averages`` rules level their groups.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .discharging import FACE, VERTEX, ChargeMap, DischargeResult, Element, _Ledger, initial_charges
from .graph import EmbeddedGraph


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class DegreeRange:
    lo: int
    hi: int | None = None

    def __contains__(self, d: int) -> bool:
        return self.lo <= d and (self.hi is None or d <= self.hi)

    def overlaps(self, other: DegreeRange) -> bool:
        lo = max(self.lo, other.lo)
        his = [h for h in (self.hi, other.hi) if h is not None]
        return not his or lo <= min(his)

    def __str__(self) -> str:
        if self.hi is None:
            return f"deg>={self.lo}"
        if self.lo == self.hi:
            return f"deg={self.lo}"
        return f"deg<={self.hi}" if self.lo == 0 else f"deg {self.lo}..{self.hi}"


@dataclass(frozen=True)
class CountPredicate:
    """``count(relation vertex target) op value`` with op in ``==``, ``>=``, ``<=``."""

    relation: str
    target: DegreeRange
    op: str
    value: int

    def holds(self, count: int) -> bool:
        if self.op == "==":
            return count == self.value
        if self.op == ">=":
            return count >= self.value
        return count <= self.value

    def value_range(self) -> DegreeRange:
        if self.op == "==":
            return DegreeRange(self.value, self.value)
        if self.op == ">=":
            return DegreeRange(max(self.value, 0), None)
        return DegreeRange(0, self.value)

    def satisfiable(self) -> bool:
        return self.value >= 0 or self.op == ">="


@dataclass(frozen=True)
class Rule:
    phase: int
    name: str
    sender: str
    sender_deg: DegreeRange
    predicates: tuple[CountPredicate, ...]
    relation: str
    receiver_deg: DegreeRange
    amount: Fraction | None = None
    group_size: int | None = None
    line: int = 0

    @property
    def averages(self) -> bool:
        return self.amount is None


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...] = ()

    def phases(self) -> list[int]:
        return sorted({r.phase for r in self.rules})


# -- lexer ------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<word>[A-Za-z_][A-Za-z0-9_\-]*)|(?P<op>>=|<=|==|[=<>():/]))")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(line: str, lineno: int) -> list[_Tok]:
    toks = []
    pos = 0
    stripped_len = len(line.rstrip())
    while pos < stripped_len:
        m = _TOKEN.match(line, pos)
        if not m or m.end() == pos:
            col = pos + len(line[pos:]) - len(line[pos:].lstrip()) + 1
            raise ParseError(lineno, col, f"unexpected character {line[col - 1]!r}")
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return toks


# -- parser -----------------------------------------------------------------------

_CMP = {"==", ">=", "<=", "<", ">"}


class _LineParser:
    def __init__(self, toks: list[_Tok], lineno: int, line_len: int):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.end_col = line_len + 1

    def error(self, message: str, tok: _Tok | None = None) -> ParseError:
        if tok is None:
            tok = self.peek()
        col = tok.col if tok else self.end_col
        return ParseError(self.lineno, col, message)

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self, what: str) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise self.error(f"expected {what}, found end of line")
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.next(repr(text))
        if tok.text != text:
            raise self.error(f"expected {text!r}, found {tok.text!r}", tok)
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok and tok.text == text:
            self.i += 1
            return True
        return False

    def integer(self, what: str = "integer") -> int:
        tok = self.next(what)
        if tok.kind != "int":
            raise self.error(f"expected {what}, found {tok.text!r}", tok)
        return int(tok.text)

    def kind(self) -> str:
        tok = self.next("'vertex' or 'face'")
        if tok.text not in (VERTEX, FACE):
            raise self.error(f"expected 'vertex' or 'face', found {tok.text!r}", tok)
        return tok.text

    def degree(self) -> DegreeRange:
        self.expect("deg")
        tok = self.next("'=', '>=' or '<='")
        if tok.text not in ("=", ">=", "<="):
            raise self.error(f"expected '=', '>=' or '<=', found {tok.text!r}", tok)
        k = self.integer("degree")
        if tok.text == "=":
            return DegreeRange(k, k)
        if tok.text == ">=":
            return DegreeRange(k, None)
        return DegreeRange(0, k)

    def neighbourhood(self, sender: str) -> tuple[str, DegreeRange]:
        tok = self.next("'adjacent' or 'incident'")
        wanted = "adjacent" if sender == VERTEX else "incident"
        if tok.text not in ("adjacent", "incident"):
            raise self.error(f"expected 'adjacent' or 'incident', found {tok.text!r}", tok)
        if tok.text != wanted:
            raise self.error(f"a {sender} rule looks at {wanted} vertices, not {tok.text} ones", tok)
        self.expect("vertex")
        return tok.text, self.degree()

    def predicate(self, sender: str) -> CountPredicate:
        tok = self.peek()
        if self.accept("not"):
            if sender != VERTEX:
                raise self.error("'not adjacent' applies to vertex rules only", tok)
            relation, target = self.neighbourhood(sender)
            return CountPredicate(relation, target, "==", 0)
        self.expect("count")
        self.expect("(")
        relation, target = self.neighbourhood(sender)
        self.expect(")")
        op_tok = self.next("comparison")
        if op_tok.text not in _CMP:
            raise self.error(f"expected comparison, found {op_tok.text!r}", op_tok)
        value = self.integer("count")
        op = op_tok.text
        if op == "<":
            op, value = "<=", value - 1
        elif op == ">":
            op, value = ">=", value + 1
        return CountPredicate(relation, target, op, value)

    def amount(self) -> Fraction:
        num = self.integer("amount")
        if self.accept("/"):
            den_tok = self.peek()
            den = self.integer("denominator")
            if den == 0:
                raise self.error("zero denominator", den_tok)
            return Fraction(num, den)
        return Fraction(num)

    def rule(self, phase: int) -> Rule:
        if self.accept("phase"):
            phase = self.integer("phase number")
        self.expect("rule")
        name_tok = self.next("rule name")
        if name_tok.kind not in ("word", "int"):
            raise self.error(f"expected rule name, found {name_tok.text!r}", name_tok)
        self.expect(":")
        sender = self.kind()
        sender_deg = self.degree()
        preds = []
        if self.accept("with"):
            preds.append(self.predicate(sender))
            while self.accept("and"):
                preds.append(self.predicate(sender))
        verb = self.next("'gives' or 'averages'")
        amount = None
        if verb.text == "gives":
            amount = self.amount()
            self.expect("to")
        elif verb.text != "averages":
            raise self.error(f"expected 'gives' or 'averages', found {verb.text!r}", verb)
        relation, receiver_deg = self.neighbourhood(sender)
        extra = self.peek()
        if extra is not None:
            raise self.error(f"unexpected {extra.text!r} after receiver", extra)
        group_size = None
        if amount is None:
            if sender != FACE:
                raise self.error("only face rules can average", verb)
            sizes = [p.value for p in preds if p.relation == relation and p.target == receiver_deg and p.op == "=="]
            if not sizes or sizes[0] < 2:
                raise self.error(
                    f"'averages' needs a predicate count({relation} vertex {receiver_deg})==N with N >= 2", verb
                )
            group_size = sizes[0]
        return Rule(
            phase, name_tok.text, sender, sender_deg, tuple(preds), relation, receiver_deg, amount, group_size, self.lineno
        )


def parse_rules(text: str) -> RuleSet:
    """Parse a rule file; raises :class:`ParseError` at the first problem."""
    rules: list[Rule] = []
    phase = 1
    names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks = _tokenize(line, lineno)
        parser = _LineParser(toks, lineno, len(line.rstrip()))
        rule = parser.rule(phase)
        if rule.phase < phase:
            raise ParseError(lineno, toks[1].col, f"phase {rule.phase} after phase {phase}; phases must not decrease")
        if rule.name in names:
            raise ParseError(lineno, toks[0].col, f"duplicate rule name {rule.name!r}")
        names.add(rule.name)
        phase = rule.phase
        rules.append(rule)
    return RuleSet(tuple(rules))


def lint(rs: RuleSet) -> list[str]:
    """Warn about pairs of same-phase rules that can fire on the same sender and receiver."""
    warnings = []
    for i, a in enumerate(rs.rules):
        for b in rs.rules[i + 1 :]:
            if (a.phase, a.sender, a.relation, a.averages) != (b.phase, b.sender, b.relation, b.averages):
                continue
            if not (a.sender_deg.overlaps(b.sender_deg) and a.receiver_deg.overlaps(b.receiver_deg)):
                continue
            exclusive = any(
                p.relation == q.relation and p.target == q.target and not p.value_range().overlaps(q.value_range())
                for p in a.predicates
                for q in b.predicates
            )
            if not exclusive:
                warnings.append(f"rules {a.name} (line {a.line}) and {b.name} (line {b.line}) may both fire")
    return warnings


# -- evaluation -----------------------------------------------------------------------


def _neighbourhood(eg: EmbeddedGraph, kind: str, i: int) -> tuple[int, ...]:
    return eg.graph.adjacency[i] if kind == VERTEX else eg.faces[i].boundary_walk


def _senders(eg: EmbeddedGraph, rule: Rule) -> Iterator[tuple[int, tuple[int, ...]]]:
    deg = eg.graph.degrees
    if rule.sender == VERTEX:
        candidates = ((v, deg[v]) for v in range(eg.n))
    else:
        candidates = ((f.id, f.degree) for f in eg.faces)
    for i, d in candidates:
        if d not in rule.sender_deg:
            continue
        around = _neighbourhood(eg, rule.sender, i)
        if all(p.holds(sum(1 for w in around if deg[w] in p.target)) for p in rule.predicates):
            yield i, around


def evaluate(eg: EmbeddedGraph, rs: RuleSet) -> DischargeResult:
    """Run a rule set phase by phase with exact arithmetic."""
    initial = initial_charges(eg)
    ledger = _Ledger(initial.copy())
    diagnostics: list[str] = []
    deg = eg.graph.degrees
    for phase in rs.phases():
        in_phase = [r for r in rs.rules if r.phase == phase]
        for rule in in_phase:
            if rule.averages:
                continue
            for i, around in _senders(eg, rule):
                for w in around:
                    if deg[w] in rule.receiver_deg:
                        ledger.pay(rule.name, (rule.sender, i), (VERTEX, w), rule.amount)
        ledger.settle()
        for rule in in_phase:
            if rule.averages:
                _average(eg, rule, ledger, diagnostics)
    return DischargeResult(initial, ledger.cm, ledger.transfers, diagnostics)


def _average(eg: EmbeddedGraph, rule: Rule, ledger: _Ledger, diagnostics: list[str]) -> None:
    deg = eg.graph.degrees
    groups = []
    for i, around in _senders(eg, rule):
        members = list(dict.fromkeys(w for w in around if deg[w] in rule.receiver_deg))
        if len(members) < 2:
            diagnostics.append(f"{rule.name}: {rule.sender} {i} has fewer than two distinct receivers; skipped")
            continue
        groups.append((i, members))
    seen: dict[int, int] = {}
    for _, members in groups:
        for w in members:
            seen[w] = seen.get(w, 0) + 1
    for i, members in groups:
        shared = [w for w in members if seen[w] > 1]
        if shared:
            diagnostics.append(f"{rule.name}: {rule.sender} {i} skipped; vertices {shared} lie in several groups")
            continue
        level_group(ledger, rule.name, [(VERTEX, w) for w in members])


def level_group(ledger: _Ledger, rule: str, members: list[Element]) -> None:
    """Equalise the charges of ``members`` with zero-sum transfers."""
    cm: ChargeMap = ledger.cm
    mean = sum((cm[x] for x in members), Fraction(0)) / len(members)
    givers = [[x, cm[x] - mean] for x in members if cm[x] > mean]
    takers = [[x, mean - cm[x]] for x in members if cm[x] < mean]
    gi = ti = 0
    while gi < len(givers) and ti < len(takers):
        amount = min(givers[gi][1], takers[ti][1])
        ledger.pay(rule, givers[gi][0], takers[ti][0], amount)
        givers[gi][1] -= amount
        takers[ti][1] -= amount
        if givers[gi][1] == 0:
            gi += 1
        if takers[ti][1] == 0:
            ti += 1
    ledger.settle()


def builtin_rules_text() -> str:
    from importlib.resources import files

    return files("defcolor").joinpath("data/builtin_r1_r7.drules").read_text(encoding="utf-8")


def load_builtin_rules() -> RuleSet:
    return parse_rules(builtin_rules_text())
