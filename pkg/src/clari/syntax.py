"""Surface syntax: tokenizer, parser to de Bruijn terms, and printer.

Scripts are sequences of declarations terminated by ``.``::

    def id : Pi (A : Type0), A -> A := fun (A : Type0) => fun (x : A) => x.
    #normalize elimB (b. Bool, true, false, true).

Binder groups may list several names, ``(x y : A)``, and ``fun``/``Pi``/``Sig``
accept several groups before ``=>`` or ``,``. Identifiers not bound locally
become global constants, resolved when the declaration is checked.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .diagnostics import E_PARSE, SourceSpan, error
from .term import (
    App, BoolElim, BoolTy, Const, FF, Inl, Inr, LEAVES, Lam, SHAPE, NatElim, NatTy, Pair, Pi,
    SigElim, Sigma, Succ, Sum, SumElim, TT, Term, UnitTy, UnitVal, Univ, Var, VoidElim,
    VoidTy, Zero, as_numeral, constants, numeral, occurs, shift,
)

# -- declarations -------------------------------------------------------------


@dataclass(frozen=True)
class Decl:
    span: SourceSpan | None = field(default=None, compare=False, kw_only=True)


@dataclass(frozen=True)
class Def(Decl):
    name: str
    type: Term
    body: Term
    type_span: SourceSpan | None = field(default=None, compare=False, kw_only=True)
    body_span: SourceSpan | None = field(default=None, compare=False, kw_only=True)
    keyword = "def"


@dataclass(frozen=True)
class Theorem(Def):
    keyword = "theorem"


@dataclass(frozen=True)
class StatementOnly(Decl):
    name: str
    type: Term
    type_span: SourceSpan | None = field(default=None, compare=False, kw_only=True)


@dataclass(frozen=True)
class CheckCmd(Decl):
    term: Term


@dataclass(frozen=True)
class NormalizeCmd(Decl):
    term: Term


@dataclass(frozen=True)
class StableCmd(Decl):
    formula: Term


@dataclass(frozen=True)
class HintCmd(Decl):
    kind: str
    name: str


@dataclass(frozen=True)
class ImportCmd(Decl):
    path: str


# -- tokens -------------------------------------------------------------------

IDENT_RE = r"[A-Za-z_][A-Za-z0-9_']*"
_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>--[^\n]*)"
    r"|(?P<string>\"[^\"\n]*\")"
    r"|(?P<cmd>#[A-Za-z]+)"
    rf"|(?P<ident>{IDENT_RE})"
    r"|(?P<nat>[0-9]+)"
    r"|(?P<sym>:=|->|=>|[(),:.;])"
)

KEYWORDS = frozenset("""
    def theorem statement hint import fun Pi Sig pair inl inr elimB elimN elimS elimSig elimV
    Type0 Type1 Type2 Unit unit Void Bool true false Nat zero succ Sum
""".split())
COMMANDS = frozenset({"#check", "#normalize", "#stable"})
_ATOM_KEYWORDS = {
    "Type0": Univ(0), "Type1": Univ(1), "Type2": Univ(2), "Unit": UnitTy(), "unit": UnitVal(),
    "Void": VoidTy(), "Bool": BoolTy(), "true": TT(), "false": FF(), "Nat": NatTy(), "zero": Zero(),
}
_ATOM_START = frozenset(_ATOM_KEYWORDS) | {
    "(", "pair", "inl", "inr", "elimB", "elimN", "elimS", "elimSig", "elimV", "succ", "Sum",
}


@dataclass(frozen=True)
class Token:
    kind: str  # ident, keyword, nat, string, cmd, sym, eof
    text: str
    line: int
    col: int

    @property
    def end_col(self) -> int:
        return self.col + max(len(self.text), 1) - 1


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    out: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            col = pos - line_start + 1
            span = SourceSpan(file, line, col, line, col)
            raise error(E_PARSE, f"unexpected character {text[pos]!r}", location=span)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            word = m.group()
            if kind == "ident" and word in KEYWORDS:
                kind = "keyword"
            if kind == "cmd" and word not in COMMANDS:
                span = SourceSpan(file, line, col, line, col + len(word) - 1)
                raise error(E_PARSE, f"unknown command {word}", location=span)
            out.append(Token(kind, word, line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# -- parser -------------------------------------------------------------------


class Parser:
    def __init__(self, text: str, file: str = "<input>"):
        self.file = file
        self.toks = tokenize(text, file)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def span_from(self, start: Token) -> SourceSpan:
        last = self.toks[max(self.i - 1, 0)]
        if (last.line, last.col) < (start.line, start.col):
            last = start
        return SourceSpan(self.file, start.line, start.col, last.line, last.end_col)

    def fail(self, expected) -> None:
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        exp = sorted(expected)
        span = SourceSpan(self.file, t.line, t.col, t.line, t.end_col)
        raise error(E_PARSE, f"expected one of {', '.join(exp)}; found {found}", location=span)

    def at(self, *texts: str) -> bool:
        t = self.tok
        return t.kind in ("sym", "keyword", "cmd") and t.text in texts

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail({repr(text)})
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> str:
        t = self.tok
        if t.kind != "ident":
            self.fail({"identifier"})
        self.i += 1
        return t.text

    # declarations

    def script(self) -> list[Decl]:
        out = []
        while self.tok.kind != "eof":
            out.append(self.decl())
        return out

    def decl(self) -> Decl:
        start = self.tok
        if self.at("def", "theorem"):
            cls = Def if self.tok.text == "def" else Theorem
            self.i += 1
            name = self.ident()
            self.expect(":")
            ty_start = self.tok
            ty = self.term([])
            ty_span = self.span_from(ty_start)
            self.expect(":=")
            body_start = self.tok
            body = self.term([])
            body_span = self.span_from(body_start)
            self.expect(".")
            return cls(name, ty, body, span=self.span_from(start), type_span=ty_span, body_span=body_span)
        if self.at("statement"):
            self.i += 1
            name = self.ident()
            self.expect(":")
            ty_start = self.tok
            ty = self.term([])
            ty_span = self.span_from(ty_start)
            self.expect(".")
            return StatementOnly(name, ty, span=self.span_from(start), type_span=ty_span)
        if self.at(*COMMANDS):
            cmd = self.tok.text
            self.i += 1
            t = self.term([])
            self.expect(".")
            cls = {"#check": CheckCmd, "#normalize": NormalizeCmd, "#stable": StableCmd}[cmd]
            return cls(t, span=self.span_from(start))
        if self.at("hint"):
            self.i += 1
            kind = self.tok.text if self.tok.kind == "ident" else None
            if kind not in ("stable", "decidable"):
                self.fail({"'stable'", "'decidable'"})
            self.i += 1
            name = self.ident()
            self.expect(".")
            return HintCmd(kind, name, span=self.span_from(start))
        if self.at("import"):
            self.i += 1
            if self.tok.kind != "string":
                self.fail({"string literal"})
            path = self.tok.text[1:-1]
            self.i += 1
            self.expect(".")
            return ImportCmd(path, span=self.span_from(start))
        self.fail({"'def'", "'theorem'", "'statement'", "'hint'", "'import'", "'#check'",
                   "'#normalize'", "'#stable'"})

    # terms; ``scope`` lists bound names, innermost last

    def term(self, scope: list) -> Term:
        if self.at("fun", "Pi", "Sig"):
            kw = self.tok.text
            self.i += 1
            groups = [self.binder_group(scope)]
            while self.at("("):
                groups.append(self.binder_group(scope + [n for g in groups for n in g[0]]))
            self.expect("=>" if kw == "fun" else ",")
            names = [n for g in groups for n in g[0]]
            body = self.term(scope + names)
            node = {"fun": Lam, "Pi": Pi, "Sig": Sigma}[kw]
            binders = [(n, shift(ty, 0, k)) for g in groups for k, n in enumerate(g[0]) for ty in [g[1]]]
            for name, ty in reversed(binders):
                body = node(ty, body, name)
            return body
        lhs = self.application(scope)
        if self.at("->"):
            self.i += 1
            rhs = self.term(scope)
            return Pi(lhs, shift(rhs, 0, 1), "_")
        return lhs

    def binder_group(self, scope: list) -> tuple[list, Term]:
        self.expect("(")
        names = [self.ident()]
        while self.tok.kind == "ident":
            names.append(self.ident())
        self.expect(":")
        ty = self.term(scope)
        self.expect(")")
        return names, ty

    def starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("ident", "nat") or (t.kind in ("sym", "keyword") and t.text in _ATOM_START)

    def application(self, scope: list) -> Term:
        if not self.starts_atom():
            self.fail({"term"})
        head = self.atom(scope)
        while self.starts_atom():
            head = App(head, self.atom(scope))
        return head

    def bound(self, scope: list, count: int) -> tuple[list, Term]:
        names = [self.ident() for _ in range(count)]
        self.expect(".")
        return names, self.term(scope + names)

    def atom(self, scope: list) -> Term:
        t = self.tok
        if t.kind == "ident":
            self.i += 1
            for k, name in enumerate(reversed(scope)):
                if name == t.text:
                    return Var(k)
            return Const(t.text)
        if t.kind == "nat":
            self.i += 1
            return numeral(int(t.text))
        if t.text in _ATOM_KEYWORDS:
            self.i += 1
            return _ATOM_KEYWORDS[t.text]
        self.i += 1
        kw = t.text
        if kw == "(":
            inner = self.term(scope)
            self.expect(")")
            return inner
        if kw == "succ":
            if not self.starts_atom():
                self.fail({"term"})
            return Succ(self.atom(scope))
        self.expect("(")
        if kw == "Sum":
            left = self.term(scope)
            self.expect(",")
            right = self.term(scope)
            out = Sum(left, right)
        elif kw == "pair":
            a = self.term(scope)
            self.expect(",")
            b = self.term(scope)
            self.expect(":")
            out = Pair(a, b, self.term(scope))
        elif kw in ("inl", "inr"):
            payload = self.term(scope)
            self.expect(";")
            other = self.term(scope)
            out = (Inl if kw == "inl" else Inr)(payload, other)
        else:
            (mname,), motive = self.bound(scope, 1)
            self.expect(",")
            scrut = self.term(scope)
            if kw == "elimV":
                out = VoidElim(motive, scrut, (mname,))
            elif kw == "elimB":
                self.expect(",")
                x = self.term(scope)
                self.expect(",")
                y = self.term(scope)
                out = BoolElim(motive, scrut, x, y, (mname,))
            elif kw == "elimN":
                self.expect(",")
                z = self.term(scope)
                self.expect(",")
                (k, ih), f = self.bound(scope, 2)
                out = NatElim(motive, scrut, z, f, (mname, k, ih))
            elif kw == "elimS":
                self.expect(",")
                (x,), left = self.bound(scope, 1)
                self.expect(",")
                (y,), right = self.bound(scope, 1)
                out = SumElim(motive, scrut, left, right, (mname, x, y))
            else:  # elimSig
                self.expect(",")
                (a, b), branch = self.bound(scope, 2)
                out = SigElim(motive, scrut, branch, (mname, a, b))
        self.expect(")")
        return out


def parse_script(text: str, file: str = "<input>") -> list[Decl]:
    return Parser(text, file).script()


def parse_term(text: str, file: str = "<input>", scope=()) -> Term:
    p = Parser(text, file)
    t = p.term(list(scope))
    if p.tok.kind != "eof":
        p.fail({"end of input"})
    return t


# -- printer ------------------------------------------------------------------

_TERM, _APP, _ATOM = 0, 1, 2
_LEAF_WORDS = {
    UnitTy: "Unit", UnitVal: "unit", VoidTy: "Void", BoolTy: "Bool", TT: "true", FF: "false",
    NatTy: "Nat", Zero: "0",
}
_TERM_TYPES = tuple(LEAVES) + tuple(SHAPE)


class _Printer:
    def __init__(self, taken: set):
        self.taken = taken  # constant names and keywords; binders must avoid them

    def fresh(self, hint: str, stack: list) -> str:
        used = set(stack) | self.taken
        base = hint if hint and hint != "_" and re.fullmatch(IDENT_RE, hint) else "x"
        if base not in used:
            return base
        stem = base.rstrip("0123456789'") or "x"
        n = 1
        while f"{stem}{n}" in used:
            n += 1
        return f"{stem}{n}"

    def paren(self, s: str, need: bool) -> str:
        return f"({s})" if need else s

    def show(self, t: Term, stack: list, prec: int) -> str:
        match t:
            case Var(k):
                return stack[-1 - k] if k < len(stack) else f"#{k - len(stack)}"
            case Const(name):
                return name
            case Succ(pred):
                n = as_numeral(t)
                if n is not None:
                    return str(n)
                return self.paren(f"succ {self.show(pred, stack, _ATOM)}", prec > _APP)
            case App(fn, arg):
                s = f"{self.show(fn, stack, _APP)} {self.show(arg, stack, _ATOM)}"
                return self.paren(s, prec > _APP)
            case Pi(dom, cod) if not occurs(cod, 0):
                s = f"{self.show(dom, stack, _APP)} -> {self.show(cod, stack + ['_'], _TERM)}"
                return self.paren(s, prec > _TERM)
            case Pi(dom, cod) | Lam(dom, cod) | Sigma(dom, cod):
                x = self.fresh(t.name, stack)
                kw, sep = {Pi: ("Pi", ","), Lam: ("fun", " =>"), Sigma: ("Sig", ",")}[type(t)]
                s = f"{kw} ({x} : {self.show(dom, stack, _TERM)}){sep} {self.show(cod, stack + [x], _TERM)}"
                return self.paren(s, prec > _TERM)
            case Pair(a, b, ann):
                return f"pair({self.show(a, stack, _TERM)}, {self.show(b, stack, _TERM)} : {self.show(ann, stack, _TERM)})"
            case Sum(left, right):
                return f"Sum({self.show(left, stack, _TERM)}, {self.show(right, stack, _TERM)})"
            case Inl(a, other) | Inr(a, other):
                kw = "inl" if isinstance(t, Inl) else "inr"
                return f"{kw}({self.show(a, stack, _TERM)}; {self.show(other, stack, _TERM)})"
            case SigElim(m, s, br):
                mot = self.binders(t.names[:1], m, stack)
                branch = self.binders(t.names[1:], br, stack)
                return f"elimSig({mot}, {self.show(s, stack, _TERM)}, {branch})"
            case SumElim(m, s, left, right):
                mot = self.binders(t.names[:1], m, stack)
                lb = self.binders(t.names[1:2], left, stack)
                rb = self.binders(t.names[2:3], right, stack)
                return f"elimS({mot}, {self.show(s, stack, _TERM)}, {lb}, {rb})"
            case VoidElim(m, s):
                return f"elimV({self.binders(t.names[:1], m, stack)}, {self.show(s, stack, _TERM)})"
            case BoolElim(m, s, x, y):
                mot = self.binders(t.names[:1], m, stack)
                parts = ", ".join(self.show(u, stack, _TERM) for u in (s, x, y))
                return f"elimB({mot}, {parts})"
            case NatElim(m, s, z, f):
                mot = self.binders(t.names[:1], m, stack)
                step = self.binders(t.names[1:3], f, stack)
                return f"elimN({mot}, {self.show(s, stack, _TERM)}, {self.show(z, stack, _TERM)}, {step})"
            case Univ(level):
                return f"Type{level}"
        word = _LEAF_WORDS.get(type(t))
        if word is None:
            raise TypeError(f"cannot print {t!r}")
        return word

    def binders(self, hints, body: Term, stack: list) -> str:
        names = []
        for h in hints:
            names.append(self.fresh(h, stack + names))
        return f"{' '.join(names)}. {self.show(body, stack + names, _TERM)}"


def show(t: Term, names=()) -> str:
    """Render ``t`` in surface syntax; ``names`` are context names, innermost last."""
    if not isinstance(t, _TERM_TYPES):
        return repr(t)
    p = _Printer(constants(t) | KEYWORDS | {"_"})
    return p.show(t, list(names), _TERM)


def show_decl(d: Decl) -> str:
    match d:
        case Def(name, ty, body):
            return f"{d.keyword} {name} : {show(ty)} := {show(body)}."
        case StatementOnly(name, ty):
            return f"statement {name} : {show(ty)}."
        case CheckCmd(t):
            return f"#check {show(t)}."
        case NormalizeCmd(t):
            return f"#normalize {show(t)}."
        case StableCmd(t):
            return f"#stable {show(t)}."
        case HintCmd(kind, name):
            return f"hint {kind} {name}."
        case ImportCmd(path):
            return f'import "{path}".'
    raise TypeError(f"not a declaration: {d!r}")

