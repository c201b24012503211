"""Recursive-descent parser for the bundle expression language.

Grammar (ASCII only)::

    expr   := term { "+" term } ;
    term   := factor { "*" factor } ;
    factor := "O" [ "(" int { "," int } ")" ]
            | block [ "*" ]
            | "S" "[" int { "," int } "]" "(" blockref ")"
            | "wedge" "[" int "]" "(" blockref ")"
            | "symwedge2" "[" int "]" "(" blockref ")"
            | "symsym2" "[" int "]" "(" blockref ")"
            | "dual" "(" expr ")"
            | "(" expr ")" ;
    block  := ("U" | "Q") [ int ] [ "@" int ] ;

``U i`` is the i-th tautological subquotient ``U_i/U_{i-1}`` and ``Q i`` the
block right after step ``i``.  A bare ``U`` means ``U1`` and a bare ``Q`` the
last block.  A ``*`` right after a block is a dual marker when it is followed
by the end of input, ``)``, ``,``, ``+`` or another ``*``; otherwise it is the
tensor operator, so ``U1*O(1)`` is a tensor product and ``U1**O(1)`` tensors
the dual.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List

from .bundles import BlockRef, Dual, DirectSum, Plethysm, Schur, Tensor, Twist
from .flags import ProductVariety

__all__ = ["BundleSyntaxError", "UnknownBlockError", "TwistArityError", "parse_bundle"]


class BundleSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))


class UnknownBlockError(BundleSyntaxError):
    pass


class TwistArityError(BundleSyntaxError):
    pass


@dataclass
class _Tok:
    kind: str  # INT, NAME, or the punctuation character itself
    value: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(?P<INT>-?\d+)|(?P<NAME>[A-Za-z][A-Za-z0-9]*)|(?P<P>[()\[\],*+@]))")
_BLOCK_RE = re.compile(r"^(U|Q)(\d+)?$")


def _tokenize(text: str) -> List[_Tok]:
    toks, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise BundleSyntaxError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        toks.append(_Tok(value if kind == "P" else kind, value, start))
        pos = m.end()
    toks.append(_Tok("END", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, variety: ProductVariety):
        self.text = text
        self.variety = variety
        self.toks = _tokenize(text)
        self.i = 0

    # token helpers
    def peek(self, offset: int = 0) -> _Tok:
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def next(self) -> _Tok:
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            shown = tok.value or "end of input"
            raise BundleSyntaxError(f"expected {kind!r}, found {shown!r}", tok.pos, self.text)
        return self.next()

    def error(self, message: str, tok: _Tok, cls=BundleSyntaxError):
        raise cls(message, tok.pos, self.text)

    # grammar
    def parse(self):
        e = self.expr()
        if self.peek().kind != "END":
            self.error(f"unexpected {self.peek().value!r}", self.peek())
        return e

    def expr(self):
        e = self.term()
        while self.peek().kind == "+":
            self.next()
            e = DirectSum(e, self.term())
        return e

    def term(self):
        e = self.factor()
        while self.peek().kind == "*":
            self.next()
            e = Tensor(e, self.factor())
        return e

    def int_list(self, close: str):
        values = [int(self.expect("INT").value)]
        while self.peek().kind == ",":
            self.next()
            values.append(int(self.expect("INT").value))
        self.expect(close)
        return values

    def factor(self):
        tok = self.peek()
        if tok.kind == "(":
            self.next()
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind != "NAME":
            self.error(f"expected a bundle, found {tok.value or 'end of input'!r}", tok)
        name = tok.value
        if name == "O":
            self.next()
            if self.peek().kind != "(":
                return Twist((0,) * self.variety.picard_rank)
            self.next()
            coeffs = self.int_list(")")
            if len(coeffs) != self.variety.picard_rank:
                self.error(
                    f"O(...) needs {self.variety.picard_rank} coefficients for {self.variety}, got {len(coeffs)}",
                    tok, TwistArityError,
                )
            return Twist(tuple(coeffs))
        if name == "dual":
            self.next()
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return Dual(e)
        if name in ("S", "wedge", "symwedge2", "symsym2"):
            self.next()
            self.expect("[")
            args = self.int_list("]")
            self.expect("(")
            ref = self.blockref(argument_of=name)
            self.expect(")")
            if name == "S":
                if any(args[i] < args[i + 1] for i in range(len(args) - 1)):
                    self.error(f"Schur weight {args} is not weakly decreasing", tok)
                return Schur(tuple(args), ref)
            if len(args) != 1 or args[0] < 0:
                self.error(f"{name}[...] takes one non-negative integer", tok)
            if name == "wedge":
                return Schur((1,) * args[0], ref)
            return Plethysm("wedge2" if name == "symwedge2" else "sym2", args[0], ref)
        if _BLOCK_RE.match(name):
            return self.block()
        self.error(f"unknown name {name!r}", tok, UnknownBlockError)

    def blockref(self, argument_of: str):
        tok = self.peek()
        if tok.kind != "NAME" or not _BLOCK_RE.match(tok.value):
            self.error(f"{argument_of}[...] applies only to a tautological block or its dual", tok)
        ref = self.block()
        if self.peek().kind not in (")",):
            self.error(f"{argument_of}[...] applies only to a tautological block or its dual", self.peek())
        return ref

    def block(self) -> BlockRef:
        tok = self.next()
        m = _BLOCK_RE.match(tok.value)
        letter, index = m.group(1), m.group(2)
        factor = 1
        if self.peek().kind == "@":
            self.next()
            factor = int(self.expect("INT").value)
        if not 1 <= factor <= len(self.variety.factors):
            self.error(f"factor index {factor} out of range for {self.variety}", tok, UnknownBlockError)
        flag = self.variety.factors[factor - 1]
        s = flag.picard_rank
        if letter == "U":
            i = 1 if index is None else int(index)
            if not 1 <= i <= s + 1:
                self.error(f"unknown block U{i} on {flag}", tok, UnknownBlockError)
            block = i - 1
        else:
            i = s if index is None else int(index)
            if not 1 <= i <= s:
                self.error(f"unknown block Q{i} on {flag}", tok, UnknownBlockError)
            block = i
        dual = False
        if self.peek().kind == "*" and self.peek(1).kind in ("END", ")", ",", "+", "*"):
            self.next()
            dual = True
        return BlockRef(factor - 1, block, dual)


def parse_bundle(text: str, variety: ProductVariety):
    """Parse ``text`` into a validated bundle expression on ``variety``."""
    return _Parser(text, variety).parse()
