"""First-order formulas over the signature {tau, lam, sig, =}.

Atoms carry a :class:`RelSet`, so a negated atom such as ``x ntau y`` is
still a single atom.  Text grammar (whitespace insensitive)::

    formula  := disj
    disj     := conj ('|' conj)*
    conj     := unary (('&' | ',') unary)*
    unary    := '!' unary | quant | '(' formula ')' | atom
    quant    := ('exists' | 'forall') var+ unary
    atom     := var rels var+           (chained: one var per relation)
    rels     := rel (',' rel)*
    rel      := tau | lam | sig | eq | ntau | nlam | nsig | neq   [ '_ne' ]
              | '=' | '!='
              | letters such as T, ~T, T_ne, ~T_ne, TT~T  (E = equality)
              | set literal {T,L} with optional ~ prefix / _ne suffix

``x T~T p q`` is ``x tau p & x ntau q``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .minkowski import (
    ALL,
    EMPTY,
    EQ,
    LAM,
    NE,
    SIG,
    TAU,
    Point,
    RelKind,
    RelSet,
    relate,
)

__all__ = [
    "Formula",
    "Atom",
    "Not",
    "And",
    "Or",
    "Exists",
    "Forall",
    "FormulaSyntaxError",
    "UnknownRelation",
    "UnboundVariable",
    "UnknownName",
    "NotQuantifierFree",
    "parse",
    "to_text",
    "free_vars",
    "variables",
    "count_variables",
    "eval_qf",
    "evaluate",
    "nnf",
    "matrix",
    "PrefixClass",
    "classify_prefix",
    "swap_time_space",
    "rel_name",
    "Regime",
    "NamedFormula",
    "builtin",
    "builtin_names",
]


class FormulaSyntaxError(SyntaxError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        super().__init__(f"{message} at position {pos}")
        self.text = text


class UnknownRelation(FormulaSyntaxError):
    pass


class UnboundVariable(KeyError):
    pass


class UnknownName(KeyError):
    pass


class NotQuantifierFree(ValueError):
    pass


# ---------------------------------------------------------------------------
# AST

class Formula:
    __slots__ = ()

    def __and__(self, other):
        return And((self, other))

    def __or__(self, other):
        return Or((self, other))

    def __invert__(self):
        return Not(self)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    left: str
    rel: RelSet
    right: str

    def __repr__(self):
        return f"Atom({self.left!r}, {self.rel!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    body: Formula

    def __repr__(self):
        return f"Not({self.body!r})"


def _flatten(cls, parts):
    out = []
    for p in parts:
        if isinstance(p, cls):
            out.extend(p.parts)
        else:
            out.append(p)
    return tuple(out)


@dataclass(frozen=True, repr=False)
class And(Formula):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", _flatten(And, self.parts))

    def __repr__(self):
        return f"And({list(self.parts)!r})"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", _flatten(Or, self.parts))

    def __repr__(self):
        return f"Or({list(self.parts)!r})"


@dataclass(frozen=True, repr=False)
class Exists(Formula):
    var: str
    body: Formula

    def __repr__(self):
        return f"Exists({self.var!r}, {self.body!r})"


@dataclass(frozen=True, repr=False)
class Forall(Formula):
    var: str
    body: Formula

    def __repr__(self):
        return f"Forall({self.var!r}, {self.body!r})"


def exists(vars_: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(vars_)):
        body = Exists(v, body)
    return body


def forall(vars_: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(vars_)):
        body = Forall(v, body)
    return body


# ---------------------------------------------------------------------------
# relation names

_WORDS = {
    "tau": TAU,
    "lam": LAM,
    "sig": SIG,
    "eq": EQ,
    "ntau": ~TAU,
    "nlam": ~LAM,
    "nsig": ~SIG,
    "neq": NE,
}
_LETTER = {"E": EQ, "T": TAU, "L": LAM, "S": SIG}

# canonical printing names, preferred over set literals
_PRINT = {}
for _w in ("tau", "lam", "sig", "ntau", "nlam", "nsig"):
    _PRINT.setdefault(_WORDS[_w].mask, _w)
    _PRINT.setdefault((_WORDS[_w] & NE).mask, _w + "_ne")
_PRINT[EQ.mask] = "="
_PRINT[NE.mask] = "!="


def rel_name(rel: RelSet) -> str:
    """Canonical text for a relation set."""
    if rel.mask in _PRINT:
        return _PRINT[rel.mask]
    return "{" + ",".join(k.letter for k in rel) + "}"


# ---------------------------------------------------------------------------
# lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<set>~?\{[^}]*\}(?:_ne)?)
  | (?P<letters>(?:~?[TLSE](?:_ne)?)+)
  | (?P<ident>[a-z_][a-z0-9_]*)
  | (?P<op>!=|[=&,|!()])
    """,
    re.VERBOSE,
)
_KEYWORDS = {"exists", "forall"}
_REL_WORD_RE = re.compile(r"^(n?(?:tau|lam|sig)|eq|neq)(_ne)?$")
_LETTER_RE = re.compile(r"~?[TLSE](?:_ne)?")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        val = m.group()
        if kind != "ws":
            if kind == "ident":
                if val in _KEYWORDS:
                    kind = "kw"
                elif _REL_WORD_RE.match(val):
                    kind = "relword"
            elif kind == "op" and val in ("=", "!="):
                kind = "relword"
            out.append((kind, val, pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


def _letter_rel(tok: str, pos: int, text: str) -> RelSet:
    neg = tok.startswith("~")
    core = tok[1:] if neg else tok
    ne = core.endswith("_ne")
    if ne:
        core = core[:-3]
    rel = _LETTER[core]
    if neg:
        rel = ~rel
    if ne:
        rel = rel & NE
    return rel


def _set_rel(tok: str, pos: int, text: str) -> RelSet:
    neg = tok.startswith("~")
    body = tok[1:] if neg else tok
    ne = body.endswith("_ne")
    if ne:
        body = body[:-3]
    inner = body[1:-1]
    rel = EMPTY
    for part in inner.split(","):
        part = part.strip()
        if not part:
            continue
        if part not in _LETTER:
            raise UnknownRelation(f"unknown relation letter {part!r}", pos, text)
        rel = rel | _LETTER[part]
    if neg:
        rel = ~rel
    if ne:
        rel = rel & NE
    return rel


def _word_rel(tok: str, pos: int, text: str) -> RelSet:
    if tok == "=":
        return EQ
    if tok == "!=":
        return NE
    m = _REL_WORD_RE.match(tok)
    if not m:
        raise UnknownRelation(f"unknown relation {tok!r}", pos, text)
    rel = _WORDS[m.group(1)]
    if m.group(2):
        rel = rel & NE
    return rel


# ---------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[1] != val:
            raise FormulaSyntaxError(f"expected {val!r}, found {t[1] or 'end of input'!r}", t[2], self.text)
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return FormulaSyntaxError(msg, tok[2], self.text)

    def parse(self) -> Formula:
        f = self.disj()
        if self.peek()[0] != "eof":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return f

    def disj(self):
        parts = [self.conj()]
        while self.peek()[1] == "|":
            self.take()
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conj(self):
        parts = [self.unary()]
        while self.peek()[1] in ("&", ","):
            self.take()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self):
        kind, val, pos = self.peek()
        if val == "!" and kind == "op":
            self.take()
            return Not(self.unary())
        if kind == "kw":
            self.take()
            names = []
            while self.peek()[0] == "ident":
                names.append(self.take()[1])
            if not names:
                raise self.error(f"'{val}' needs at least one variable")
            body = self.unary()
            return exists(names, body) if val == "exists" else forall(names, body)
        if val == "(":
            self.take()
            f = self.disj()
            self.expect(")")
            return f
        if kind == "ident":
            return self.atom()
        if kind in ("letters", "set", "relword"):
            raise self.error(f"relation {val!r} without a left variable")
        raise self.error(f"unexpected {val or 'end of input'!r}")

    def _rel_token(self):
        kind, val, pos = self.take()
        if kind == "letters":
            return [_letter_rel(t, pos, self.text) for t in _LETTER_RE.findall(val)]
        if kind == "set":
            return [_set_rel(val, pos, self.text)]
        if kind == "relword":
            return [_word_rel(val, pos, self.text)]
        if kind == "ident":
            raise UnknownRelation(f"unknown relation {val!r}", pos, self.text)
        raise FormulaSyntaxError(f"expected a relation, found {val or 'end of input'!r}", pos, self.text)

    def atom(self):
        left = self.take()[1]
        rels = self._rel_token()
        # ',' continues the relation list only when a relation follows it
        while True:
            if self.peek()[0] in ("letters", "set", "relword"):
                rels.extend(self._rel_token())
            elif self.peek()[1] == "," and self.peek(1)[0] in ("letters", "set", "relword"):
                self.take()
                rels.extend(self._rel_token())
            else:
                break
        rights = []
        for _ in rels:
            kind, val, pos = self.peek()
            if kind != "ident":
                raise self.error(f"chained atom needs {len(rels)} right-hand variables")
            self.take()
            rights.append(val)
        atoms = tuple(Atom(left, r, v) for r, v in zip(rels, rights))
        return atoms[0] if len(atoms) == 1 else And(atoms)


def parse(text: str) -> Formula:
    """Parse formula text into an AST."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printer

_PREC = {Or: 1, And: 2}


def to_text(f: Formula) -> str:
    return _show(f, 0)


def _show(f: Formula, ctx: int) -> str:
    if isinstance(f, Atom):
        return f"{f.left} {rel_name(f.rel)} {f.right}"
    if isinstance(f, Not):
        return "!" + _show(f.body, 3)
    if isinstance(f, (And, Or)):
        sep = " & " if isinstance(f, And) else " | "
        s = sep.join(_show(p, _PREC[type(f)] + 1) for p in f.parts)
        return f"({s})" if ctx > _PREC[type(f)] else s
    if isinstance(f, (Exists, Forall)):
        kw = "exists" if isinstance(f, Exists) else "forall"
        names = [f.var]
        body = f.body
        while type(body) is type(f):
            names.append(body.var)
            body = body.body
        inner = _show(body, 0)
        return f"{kw} {' '.join(names)} ({inner})"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# variables

def free_vars(f: Formula) -> tuple:
    """Free variables in order of first occurrence."""
    out: list = []

    def walk(g, bound):
        if isinstance(g, Atom):
            for v in (g.left, g.right):
                if v not in bound and v not in out:
                    out.append(v)
        elif isinstance(g, Not):
            walk(g.body, bound)
        elif isinstance(g, (And, Or)):
            for p in g.parts:
                walk(p, bound)
        else:
            walk(g.body, bound | {g.var})

    walk(f, frozenset())
    return tuple(out)


def variables(f: Formula) -> tuple:
    """All variable names, free or bound, in order of first occurrence."""
    out: list = []

    def add(v):
        if v not in out:
            out.append(v)

    def walk(g):
        if isinstance(g, Atom):
            add(g.left)
            add(g.right)
        elif isinstance(g, Not):
            walk(g.body)
        elif isinstance(g, (And, Or)):
            for p in g.parts:
                walk(p)
        else:
            add(g.var)
            walk(g.body)

    walk(f)
    return tuple(out)


def count_variables(f: Formula) -> int:
    return len(variables(f))


# ---------------------------------------------------------------------------
# evaluation

def eval_qf(f: Formula, env: Mapping[str, Point]) -> bool:
    """Truth value of a quantifier-free formula under ``env``."""
    if isinstance(f, Atom):
        try:
            a, b = env[f.left], env[f.right]
        except KeyError as e:
            raise UnboundVariable(e.args[0]) from None
        return relate(a, b) in f.rel
    if isinstance(f, Not):
        return not eval_qf(f.body, env)
    if isinstance(f, And):
        return all(eval_qf(p, env) for p in f.parts)
    if isinstance(f, Or):
        return any(eval_qf(p, env) for p in f.parts)
    raise NotQuantifierFree(f"quantifier over {f.var!r} in eval_qf")


def evaluate(f: Formula, env: Mapping[str, Point], domain: Iterable[Point]) -> bool:
    """Evaluate with quantifiers ranging over a finite ``domain``."""
    dom = list(domain)

    def ev(g, e):
        if isinstance(g, Atom):
            try:
                return relate(e[g.left], e[g.right]) in g.rel
            except KeyError as err:
                raise UnboundVariable(err.args[0]) from None
        if isinstance(g, Not):
            return not ev(g.body, e)
        if isinstance(g, And):
            return all(ev(p, e) for p in g.parts)
        if isinstance(g, Or):
            return any(ev(p, e) for p in g.parts)
        test = any if isinstance(g, Exists) else all
        return test(ev(g.body, {**e, g.var: d}) for d in dom)

    return ev(f, dict(env))


# ---------------------------------------------------------------------------
# normal forms and prefix classes

def nnf(f: Formula, negate: bool = False) -> Formula:
    """Negation normal form; negated atoms become complemented atoms."""
    if isinstance(f, Atom):
        return Atom(f.left, ~f.rel, f.right) if negate else f
    if isinstance(f, Not):
        return nnf(f.body, not negate)
    if isinstance(f, (And, Or)):
        flip = isinstance(f, And) == negate
        cls = Or if flip else And
        return cls(tuple(nnf(p, negate) for p in f.parts))
    if isinstance(f, Exists):
        return (Forall if negate else Exists)(f.var, nnf(f.body, negate))
    return (Exists if negate else Forall)(f.var, nnf(f.body, negate))


def matrix(f: Formula) -> Formula:
    """Strip the leading quantifier chain."""
    while isinstance(f, (Exists, Forall)):
        f = f.body
    return f


def _push(q: str, blocks: tuple) -> tuple:
    if blocks and blocks[0][0] == q:
        return ((q, blocks[0][1] + 1),) + blocks[1:]
    return ((q, 1),) + blocks


def _merge(a: tuple, b: tuple) -> tuple:
    """Shortest interleaving of two block sequences (shortest common
    supersequence on the quantifier letters, counts added on shared blocks)."""
    la, lb = len(a), len(b)
    # best[i][j] = shortest merged sequence of a[i:], b[j:]
    best = [[None] * (lb + 1) for _ in range(la + 1)]
    for i in range(la, -1, -1):
        for j in range(lb, -1, -1):
            if i == la:
                best[i][j] = b[j:]
                continue
            if j == lb:
                best[i][j] = a[i:]
                continue
            cands = []
            if a[i][0] == b[j][0]:
                cands.append(((a[i][0], a[i][1] + b[j][1]),) + best[i + 1][j + 1])
            cands.append(_prepend(a[i], best[i + 1][j]))
            cands.append(_prepend(b[j], best[i][j + 1]))
            best[i][j] = min(cands, key=lambda s: (len(s), s))
    return best[0][0]


def _prepend(block, rest):
    if rest and rest[0][0] == block[0]:
        return ((block[0], block[1] + rest[0][1]),) + rest[1:]
    return (block,) + rest


def _blocks(f: Formula) -> tuple:
    if isinstance(f, Atom):
        return ()
    if isinstance(f, (And, Or)):
        out: tuple = ()
        for p in f.parts:
            out = _merge(out, _blocks(p))
        return out
    if isinstance(f, Exists):
        return _push("E", _blocks(f.body))
    if isinstance(f, Forall):
        return _push("A", _blocks(f.body))
    raise TypeError(f"unexpected node in NNF: {f!r}")


@dataclass(frozen=True)
class PrefixClass:
    """Quantifier blocks of a prenex form, e.g. ``(("A", 1), ("E", 1))``."""

    blocks: tuple

    @property
    def signature(self) -> str:
        return "".join(f"{q}{k}" for q, k in self.blocks) or "QF"

    @property
    def name(self) -> str:
        return self.signature if len(self.blocks) <= 2 else "Other"

    @property
    def quantifiers(self) -> int:
        return sum(k for _, k in self.blocks)

    def __str__(self):
        return self.name


def classify_prefix(f: Formula) -> PrefixClass:
    """Prefix class of the best prenex form reachable by the standard rewrites
    (NNF, then pulling quantifiers out of conjunctions and disjunctions)."""
    return PrefixClass(_blocks(nnf(f)))


# ---------------------------------------------------------------------------
# transforms

def swap_time_space(f: Formula) -> Formula:
    """Exchange tau and sig in every atom."""
    if isinstance(f, Atom):
        return Atom(f.left, f.rel.swap_time_space(), f.right)
    if isinstance(f, Not):
        return Not(swap_time_space(f.body))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(swap_time_space(p) for p in f.parts))
    return type(f)(f.var, swap_time_space(f.body))


def rename(f: Formula, mapping: Mapping[str, str]) -> Formula:
    if isinstance(f, Atom):
        return Atom(mapping.get(f.left, f.left), f.rel, mapping.get(f.right, f.right))
    if isinstance(f, Not):
        return Not(rename(f.body, mapping))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(rename(p, mapping) for p in f.parts))
    return type(f)(mapping.get(f.var, f.var), rename(f.body, mapping))


# ---------------------------------------------------------------------------
# named formulas

@dataclass(frozen=True)
class Regime:
    """Where a definition is claimed to work.

    ``field``: ``"any"`` (any ordered field), ``"eucl-or-n2"`` or ``"eucl"``.
    """

    min_n: int = 2
    max_n: int | None = None
    field: str = "any"

    def admits_dimension(self, n: int) -> bool:
        return n >= self.min_n and (self.max_n is None or n <= self.max_n)

    def needs_roots(self, n: int) -> bool:
        return self.field == "eucl" or (self.field == "eucl-or-n2" and n > 2)

    def describe(self) -> str:
        if self.max_n == self.min_n:
            dims = f"n={self.min_n}"
        elif self.max_n is None:
            dims = f"n>={self.min_n}"
        else:
            dims = f"{self.min_n}<=n<={self.max_n}"
        field = {"any": "any ordered field", "eucl-or-n2": "Euclidean field or n=2", "eucl": "Euclidean field"}[
            self.field
        ]
        return f"{dims}; {field}"


@dataclass(frozen=True)
class NamedFormula:
    name: str
    formula: Formula
    free: tuple
    source: RelKind
    target: RelKind
    claimed_vars: int
    claimed_prefix: str
    regime: Regime

    @property
    def vars(self) -> int:
        return count_variables(self.formula)

    @property
    def prefix(self) -> PrefixClass:
        return classify_prefix(self.formula)

    def matches_claim(self) -> bool:
        return self.vars == self.claimed_vars and self.prefix.name == self.claimed_prefix

    def holds(self, p: Point, q: Point, **assignment) -> bool:
        """Evaluate the quantifier-free matrix on ``p, q`` plus ``assignment``."""
        env = dict(zip(self.free, (p, q)))
        env.update(assignment)
        return eval_qf(matrix(self.formula), env)

    def text(self) -> str:
        return to_text(self.formula)


_T, _S, _L = RelKind.TIMELIKE, RelKind.SPACELIKE, RelKind.LIGHTLIKE

_EUCL_N2 = Regime(2, None, "eucl-or-n2")
_EUCL_N3 = Regime(3, None, "eucl")
_ONLY_N2 = Regime(2, 2, "any")

_PSI_TS = "x != y & forall z (z = x | z = y | exists u (u tau z & u ntau x & u ntau y))"
_PSI_LS = "x nlam y & exists z (x lam z & y nlam z & !exists u (u lam x & u lam y & u lam z))"
_ETS = "exists r x s z (r TT p q, x T~T p q, s ~T~T p q, z ~TT p q, r ~TT~T x s z)"
_ETS_HAT = (
    "exists x y z (x TT~T_ne~T_ne p y q z, y ~T_ne~T_ne T p q z, z ~T_ne T p q)"
)
_WSL = (
    "x nsig y & x != y & forall u v exists zu zv "
    "(zu ~SSS u x y | zv ~SSS v x y | u nsig v)"
)


def _complement(base: Formula, free: tuple, rel: RelSet) -> Formula:
    a, b = free
    return And((Not(base), Atom(a, rel, b), Atom(a, NE, b)))


def _build_registry() -> dict:
    reg = {}

    def add(name, f, free, src, tgt, nvars, prefix, regime):
        reg[name] = NamedFormula(name, f, free, src, tgt, nvars, prefix, regime)

    xy, pq = ("x", "y"), ("p", "q")
    psi_ts = parse(_PSI_TS)
    psi_tl = And((Not(psi_ts), Atom("x", ~TAU, "y"), Atom("x", NE, "y")))
    add("PsiTS", psi_ts, xy, _T, _S, 4, "A1E1", _EUCL_N2)
    add("PsiTL", psi_tl, xy, _T, _L, 4, "E1A1", _EUCL_N2)
    add("PsiST", swap_time_space(psi_ts), xy, _S, _T, 4, "A1E1", _EUCL_N2)
    add("PsiSL", swap_time_space(psi_tl), xy, _S, _L, 4, "E1A1", _EUCL_N2)

    psi_ls = parse(_PSI_LS)
    psi_lt = And((Not(psi_ls), Atom("x", ~LAM, "y"), Atom("x", NE, "y")))
    add("PsiLS", psi_ls, xy, _L, _S, 4, "E1A1", _EUCL_N3)
    add("PsiLT", psi_lt, xy, _L, _T, 4, "A1E1", _EUCL_N3)

    ets = parse(_ETS)
    utl = And((Not(ets), Atom("p", NE, "q"), Atom("p", ~TAU, "q")))
    add("Ets", ets, pq, _T, _S, 6, "E4", _EUCL_N2)
    add("Utl", utl, pq, _T, _L, 6, "A4", _EUCL_N2)
    add("Est", swap_time_space(ets), pq, _S, _T, 6, "E4", _ONLY_N2)
    add("Usl", swap_time_space(utl), pq, _S, _L, 6, "A4", _ONLY_N2)

    ets_hat = parse(_ETS_HAT)
    utl_hat = And((Not(ets_hat), Atom("p", NE, "q"), Atom("p", ~TAU, "q")))
    add("EtsHat", ets_hat, pq, _T, _S, 5, "E3", _EUCL_N2)
    add("UtlHat", utl_hat, pq, _T, _L, 5, "A3", _EUCL_N2)
    add("EstHat", swap_time_space(ets_hat), pq, _S, _T, 5, "E3", _ONLY_N2)
    add("UslHat", swap_time_space(utl_hat), pq, _S, _L, 5, "A3", _ONLY_N2)

    wsl = parse(_WSL)
    wst = And((Not(wsl), Atom("x", ~SIG, "y"), Atom("x", NE, "y")))
    add("Wsl", wsl, xy, _S, _L, 6, "A2E2", _EUCL_N2)
    add("Wst", wst, xy, _S, _T, 6, "E2A2", _EUCL_N2)
    add("WslMirror", swap_time_space(wsl), xy, _T, _L, 6, "A2E2", _ONLY_N2)
    add("WstMirror", swap_time_space(wst), xy, _T, _S, 6, "E2A2", _ONLY_N2)
    return reg


_REGISTRY = _build_registry()


def builtin_names() -> list:
    return list(_REGISTRY)


def builtin(name: str) -> NamedFormula:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownName(name) from None
