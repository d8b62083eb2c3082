"""Surface syntax: tokenizer, recursive-descent parser and printers.

Kinds of input:

* ``magma``: ``x >[a] (y >[(1,0)] z)``, right associative;
* ``genidx``: ``z{l; (1,0),(1,0)} * z{m;}``, optional ``^k`` exponents;
* ``spde``: a word ``d0.D(1,0)`` (``1`` is the empty word), or a monomial
  ``z{l; (1,0).d0} * z{l;}``;
* ``tree``: ``I((1),T[l|;]) X0 T[l|;]``: factors written before ``T[...]``
  are prepended to that node's factor list; inside the brackets, factors
  ``X<i>`` and ``I(letter, tree)`` in any order, ``;`` is a separator.

Letters are identifiers or tuples of naturals.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from .exactalg import MultiIdx, Poly

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<tri>>\[)
  | (?P<zopen>z\{)
  | (?P<topen>T\[)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<nat>[0-9]+)
  | (?P<punct>[()\[\]{},;.|*^])
    """,
    re.VERBOSE,
)

KINDS = ("magma", "genidx", "spde", "tree")


class ParseError(ValueError):
    def __init__(self, line: int, col: int, expected, found: str):
        self.line = line
        self.col = col
        self.expected = sorted(set(expected))
        self.found = found
        super().__init__(
            f"line {line}, column {col}: expected one of {', '.join(self.expected)}; found {found}"
        )


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r})"


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    line, col = 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(line, col, ["a token"], repr(text[pos]))
        kind = m.lastgroup
        s = m.group()
        if kind != "ws":
            out.append(Token(kind if kind != "punct" else s, s, line, col))
        for ch in s:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


_SMALL_D = re.compile(r"d([0-9]+)$")
_X_FACTOR = re.compile(r"X([0-9]+)$")


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, expected):
        t = self.tok
        raise ParseError(t.line, t.col, expected, repr(t.text) if t.text else "end of input")

    def at(self, kind, text=None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def eat(self, kind, text=None) -> Token:
        if not self.at(kind, text):
            self.fail([text or kind])
        t = self.tok
        self.i += 1
        return t

    def end(self):
        if not self.at("eof"):
            self.fail(["end of input"])

    # -- shared pieces -------------------------------------------------------
    def nat(self) -> int:
        return int(self.eat("nat").text)

    def letter(self):
        if self.at("ident"):
            return self.eat("ident").text
        if self.at("("):
            self.eat("(")
            xs = [self.nat()]
            while self.at(","):
                self.eat(",")
                xs.append(self.nat())
            self.eat(")")
            return tuple(xs)
        self.fail(["identifier", "("])

    # -- magma ---------------------------------------------------------------
    def magma(self):
        from .magnov import Leaf, Node

        if self.at("ident"):
            left = Leaf(self.eat("ident").text)
        elif self.at("("):
            self.eat("(")
            left = self.magma()
            self.eat(")")
        else:
            self.fail(["identifier", "("])
        if self.at("tri"):
            self.eat("tri")
            a = self.letter()
            self.eat("]")
            return Node(a, left, self.magma())
        return left

    # -- genidx --------------------------------------------------------------
    def gen_monomial(self) -> MultiIdx:
        from .genidx import GenVar

        if self.at("nat", "1"):
            self.eat("nat")
            return MultiIdx()
        acc = {}
        while True:
            self.eat("zopen")
            label = self.eat("ident").text
            self.eat(";")
            ls = []
            if not self.at("}"):
                ls.append(self.letter())
                while self.at(","):
                    self.eat(",")
                    ls.append(self.letter())
            self.eat("}")
            v = GenVar(label, MultiIdx(ls))
            acc[v] = acc.get(v, 0) + self.exponent()
            if not self.at("*"):
                return MultiIdx(acc)
            self.eat("*")

    def exponent(self) -> int:
        if self.at("^"):
            self.eat("^")
            return self.nat()
        return 1

    # -- spde ----------------------------------------------------------------
    def wletter(self):
        if self.at("ident", "D"):
            self.eat("ident")
            return ("D", self._tuple_letter())
        if self.at("("):
            return ("D", self._tuple_letter())
        if self.at("ident"):
            m = _SMALL_D.match(self.tok.text)
            if m:
                self.eat("ident")
                return ("d", int(m.group(1)))
        self.fail(["D", "(", "d<i>"])

    def _tuple_letter(self):
        a = self.letter()
        if not isinstance(a, tuple):
            self.i -= 1
            self.fail(["("])
        return a

    def word(self) -> List:
        if self.at("nat", "1"):
            self.eat("nat")
            return []
        ws = [self.wletter()]
        while self.at("."):
            self.eat(".")
            ws.append(self.wletter())
        return ws

    def spde_monomial(self) -> List:
        """List of ``(label, letter sequence, exponent)``; words are not normalised."""
        if self.at("nat", "1"):
            self.eat("nat")
            return []
        out = []
        while True:
            self.eat("zopen")
            label = self.eat("ident").text
            self.eat(";")
            w = [] if self.at("}") else self.word()
            self.eat("}")
            out.append((label, w, self.exponent()))
            if not self.at("*"):
                return out
            self.eat("*")

    # -- trees ---------------------------------------------------------------
    def tree_factor(self):
        if self.at("ident", "I"):
            self.eat("ident")
            self.eat("(")
            a = self.letter()
            self.eat(",")
            t = self.tree()
            self.eat(")")
            return ("I", a, t)
        if self.at("ident"):
            m = _X_FACTOR.match(self.tok.text)
            if m:
                self.eat("ident")
                return ("X", int(m.group(1)))
        self.fail(["X<i>", "I"])

    def tree(self):
        from .dectree import RawTree

        prefix = []
        while not self.at("topen"):
            if self.at(";"):
                self.eat(";")
                continue
            if not self.at("ident"):
                self.fail(["T[", "X<i>", "I"])
            prefix.append(self.tree_factor())
        self.eat("topen")
        label = self.eat("ident").text
        self.eat("|")
        fs = []
        while not self.at("]"):
            if self.at(";"):
                self.eat(";")
                continue
            if not self.at("ident"):
                self.fail(["]", ";", "X<i>", "I"])
            fs.append(self.tree_factor())
        self.eat("]")
        return RawTree(label, prefix + fs)


def parse(text: str, kind: str):
    """Parse ``text`` as ``kind``; see the module docstring for the syntax."""
    p = Parser(text)
    if kind == "magma":
        out = p.magma()
    elif kind == "genidx":
        out = p.gen_monomial()
    elif kind == "spde":
        if p.at("zopen"):
            out = ("monomial", p.spde_monomial())
        else:
            out = ("word", p.word())
    elif kind == "tree":
        out = p.tree()
    else:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    p.end()
    return out


def parse_letter(text: str):
    p = Parser(text)
    a = p.letter()
    p.end()
    return a


# ---------------------------------------------------------------------------
# printers

def format_letter(a) -> str:
    if isinstance(a, tuple):
        return "(" + ",".join(str(c) for c in a) + ")"
    return str(a)


def format_term(t) -> str:
    from .magnov import Leaf

    if isinstance(t, Leaf):
        return str(t.gen)
    left = format_term(t.left)
    if not isinstance(t.left, Leaf):
        left = f"({left})"
    return f"{left} >[{format_letter(t.letter)}] {format_term(t.right)}"


def format_genvar(v) -> str:
    return "z{" + str(v.label) + ";" + ",".join(format_letter(a) for a in v.w.elements()) + "}"


def format_monomial(m: MultiIdx, fmt_var) -> str:
    if not m:
        return "1"
    return " * ".join(fmt_var(v) + (f"^{k}" if k > 1 else "") for v, k in m.items())


def format_gen_monomial(m: MultiIdx) -> str:
    return format_monomial(m, format_genvar)


def format_word(w) -> str:
    parts = [format_letter(n) for n in w.ns] + [f"d{i}" for i in w.ds]
    return ".".join(parts) if parts else "1"


def format_letter_seq(seq) -> str:
    parts = ["D" + format_letter(x) if k == "D" else f"d{x}" for k, x in seq]
    return ".".join(parts) if parts else "1"


def format_spdevar(v) -> str:
    from .spdeidx import EMPTY

    return "z{" + str(v.label) + ";" + ("" if v.word == EMPTY else format_word(v.word)) + "}"


def format_spde_monomial(m: MultiIdx) -> str:
    return format_monomial(m, format_spdevar)


def format_tree(t) -> str:
    xs = " ".join(f"X{i}" for i in t.xexp.elements())
    kids = " ".join(f"I({format_letter(a)},{format_tree(c)})" for a, c in t.children)
    return f"T[{t.noise}|{xs};{kids}]"


def format_raw_tree(t) -> str:
    parts = []
    for f in t.factors:
        if f[0] == "X":
            parts.append(f"X{f[1]}")
        else:
            parts.append(f"I({format_letter(f[1])},{format_raw_tree(f[2])})")
    return f"T[{t.noise}|{' '.join(parts) if parts else ';'}]"


def format_coeff(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly, fmt) -> str:
    """Human-readable ``c * b + ...`` in basis order."""
    if not p:
        return "0"
    out = []
    for b, c in p.items():
        s = fmt(b)
        if c == 1:
            term = s
        elif c == -1:
            term = f"-{s}"
        else:
            term = f"{format_coeff(c)}*{s}"
        if out and term.startswith("-"):
            out.append(f"- {term[1:]}")
        elif out:
            out.append(f"+ {term}")
        else:
            out.append(term)
    return " ".join(out)


def poly_json(p: Poly, fmt) -> List[dict]:
    return [{"coeff": format_coeff(c), "term": fmt(b)} for b, c in p.items()]
