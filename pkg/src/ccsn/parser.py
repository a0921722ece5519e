"""Recursive-descent parser for the concrete program syntax.

    program := {"chan" ident+ ";"} {"let" ident "=" stmt ";"} "run" stmt

Operators from loosest to tightest: ``+``; the parallel family ``||``,
``|``, ``||-``, ``|-`` (one level, not mixable without parentheses); ``;``
(right-associative); postfix restriction ``\\c``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Set

from . import syntax as s
from .syntax import Calculus, Program

RESERVED = {"chan", "let", "run", "stop", "tau"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>\|\|-|\|\||\|-|\||;|\+|\\|\(|\)|@|&|~|=)
""", re.VERBOSE)

_PARALLEL = {"||": s.Merge, "|": s.SyncMerge, "||-": s.LeftMerge, "|-": s.LeftSyncMerge}


class ParseError(ValueError):
    """Base class for every rejection of program text."""

    def __init__(self, message: str, pos: Optional[int] = None, text: str = "") -> None:
        if pos is not None and text:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            message = f"{line}:{col}: {message}"
        super().__init__(message)
        self.pos = pos


class ProgramSyntaxError(ParseError):
    pass


class UnboundVariable(ParseError):
    pass


class UnknownChannel(ParseError):
    pass


class JointTooLong(ParseError):
    pass


class WrongCalculusConstruct(ParseError):
    pass


class MixedParallelOps(ParseError):
    pass


class UnguardedRecursion(ParseError, s.UnguardedRecursion):
    pass


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ProgramSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, calculus: Calculus, nbar: int, allow_holes: bool) -> None:
        self.text = text
        self.calculus = calculus
        self.nbar = nbar
        self.allow_holes = allow_holes
        self.tokens = tokenize(text)
        self.i = 0
        self.channels: Set[str] = set()
        self.variables: Set[str] = set()

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, cls, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        return cls(message, tok.pos, self.text)

    def at(self, text: str) -> bool:
        return self.tok.kind != "eof" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(ProgramSyntaxError, f"expected {text!r}, found {found!r}")
        return self.advance()

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def ident(self) -> Token:
        if self.tok.kind != "ident" or self.tok.text in RESERVED:
            found = self.tok.text or "end of input"
            raise self.error(ProgramSyntaxError, f"expected identifier, found {found!r}")
        return self.advance()

    # grammar
    def program(self) -> Program:
        self.variables = {self.tokens[k + 1].text for k, t in enumerate(self.tokens[:-1])
                          if t.kind == "ident" and t.text == "let"}
        while self.at("chan"):
            self.advance()
            self.channels.add(self.ident().text)
            while not self.at(";"):
                self.channels.add(self.ident().text)
            self.advance()
        clash = self.channels & self.variables
        if clash:
            raise ProgramSyntaxError(f"{sorted(clash)[0]!r} declared as both channel and variable")
        decls: Dict[str, s.Statement] = {}
        while self.at("let"):
            self.advance()
            name_tok = self.ident()
            if name_tok.text in decls:
                raise self.error(ProgramSyntaxError, f"duplicate declaration of {name_tok.text!r}", name_tok)
            self.expect("=")
            body = self.statement()
            if self.at(";"):
                self.advance()
            elif not (self.at("let") or self.at("run")):
                raise self.error(ProgramSyntaxError, "expected ';' after declaration")
            if not s.is_guarded(body):
                raise self.error(UnguardedRecursion, f"declaration of {name_tok.text!r} is not guarded", name_tok)
            decls[name_tok.text] = body
        self.expect("run")
        main = self.statement()
        if self.tok.kind != "eof":
            raise self.error(ProgramSyntaxError, f"unexpected {self.tok.text!r}")
        return Program(main, decls, frozenset(self.channels), self.calculus, self.nbar)

    def statement(self) -> s.Statement:
        left = self.parallel()
        while self.at("+"):
            self.advance()
            left = s.Choice(left, self.parallel())
        return left

    def parallel(self) -> s.Statement:
        left = self.sequence()
        first = None
        while self.tok.kind == "op" and self.tok.text in _PARALLEL:
            op = self.advance()
            if first is not None and op.text != first:
                raise self.error(MixedParallelOps, f"mixing {first!r} and {op.text!r} needs parentheses", op)
            first = op.text
            left = _PARALLEL[op.text](left, self.sequence())
        return left

    def sequence(self) -> s.Statement:
        left = self.restriction()
        if self.at(";") and not (self.peek().text in ("let", "run") or self.peek().kind == "eof"):
            self.advance()
            return s.Seq(left, self.sequence())
        return left

    def restriction(self) -> s.Statement:
        x = self.atom()
        while self.at("\\"):
            self.advance()
            tok = self.ident()
            if tok.text not in self.channels:
                raise self.error(UnknownChannel, f"restriction on undeclared channel {tok.text!r}", tok)
            x = s.Restrict(x, tok.text)
        return x

    def atom(self) -> s.Statement:
        if self.at("("):
            self.advance()
            x = self.statement()
            self.expect(")")
            return x
        if self.at("@"):
            tok = self.advance()
            if not self.allow_holes:
                raise self.error(ProgramSyntaxError, "context hole '@' outside a context", tok)
            return s.HOLE
        if self.at("stop"):
            self.advance()
            return s.Act(s.STOP)
        if self.at("tau"):
            self.advance()
            return s.Act(s.Internal(s.TAU))
        return self.joint_or_action()

    def _item(self):
        start = self.tok
        negated = False
        if self.at("~"):
            self.advance()
            negated = True
        tok = self.ident()
        return start, negated, tok.text

    def joint_or_action(self) -> s.Statement:
        items = [self._item()]
        while self.at("&"):
            self.advance()
            items.append(self._item())
        start = items[0][0]
        if len(items) == 1 and not items[0][1]:
            name = items[0][2]
            if name in self.variables:
                return s.Var(name)
            if name not in self.channels:
                return s.Act(s.Internal(name))
        for tok, _, name in items:
            if name not in self.channels:
                raise self.error(UnknownChannel, f"{name!r} is not a declared channel", tok)
        if len(items) > self.nbar:
            raise self.error(JointTooLong, f"joint construct of length {len(items)} exceeds nbar={self.nbar}", start)
        if self.calculus is Calculus.CCSNPLUS:
            return s.Act(s.JointPrefix(tuple(s.SyncAction(name, neg) for _, neg, name in items)))
        if len(items) == 1 and items[0][1]:
            return s.Act(s.Output(items[0][2]))
        if any(neg for _, neg, _ in items):
            raise self.error(WrongCalculusConstruct, "outputs cannot be joined with '&' in ccsn", start)
        return s.Act(s.JointInput(tuple(name for _, _, name in items)))


def parse_program(text: str, calculus: Calculus = Calculus.CCSN, nbar: int = 2) -> Program:
    if nbar < 1:
        raise ValueError("nbar must be at least 1")
    return _Parser(text, calculus, nbar, allow_holes=False).program()


def parse_statement(text: str, program: Program, allow_holes: bool = True) -> s.Statement:
    """Parse a statement against the declarations of an existing program."""
    p = _Parser(text, program.calculus, program.nbar, allow_holes)
    p.channels = set(program.channels)
    p.variables = set(program.decls)
    x = p.statement()
    if p.tok.kind != "eof":
        raise p.error(ProgramSyntaxError, f"unexpected {p.tok.text!r}")
    return x


def validate_program(program: Program) -> Program:
    """Check a program built in code against the rules the parser enforces."""
    calculus, nbar = program.calculus, program.nbar
    statements = [program.main, *program.decls.values()]
    for x in statements:
        for y in s.variables(x):
            if y not in program.decls:
                raise UnboundVariable(f"variable {y!r} is not declared")
        for a in s.actions(x):
            _check_action(a, program.channels, calculus, nbar)
    for name, body in program.decls.items():
        if not s.is_guarded(body):
            raise UnguardedRecursion(f"declaration of {name!r} is not guarded")
    return program


def _check_action(a: s.Action, channels, calculus: Calculus, nbar: int) -> None:
    if isinstance(a, s.Output):
        names, ok = [a.channel], calculus is Calculus.CCSN
    elif isinstance(a, s.JointInput):
        names, ok = list(a.names), calculus is Calculus.CCSN
    elif isinstance(a, s.JointPrefix):
        names, ok = [item.channel for item in a.items], calculus is Calculus.CCSNPLUS
    else:
        return
    if not ok:
        raise WrongCalculusConstruct(f"{a} is not an action of {calculus.value}")
    if len(names) > nbar:
        raise JointTooLong(f"joint construct of length {len(names)} exceeds nbar={nbar}")
    for c in names:
        if c not in channels:
            raise UnknownChannel(f"channel {c!r} is not declared")
