"""Expression parser and canonical JSON forms for the polynomial carriers.

Grammar (whitespace insignificant):

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ['^' exponent]
    atom     := integer | integer '/' integer | variable | '(' expr ')'
    exponent := signed integer | '(' signed integer ['/' integer] ')'
    variable := 'X' | 'x' | 'y' | 'X<k>' (k = 1, 2, ...)

Which carrier a string denotes is inferred from the variables used:

    {X}          -> UniPoly
    {x, y}       -> BivariateLocalFactor  (x alone or y alone also allowed)
    {X1..Xn}     -> MultiPoly

``parse_poly`` accepts an optional ``kind`` to force the target type.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Union

from .poly import BivariateLocalFactor, MultiPoly, UniPoly

Q = Fraction

__all__ = ["ParseError", "parse_poly", "poly_to_json", "poly_from_json", "canonical_str"]


class ParseError(ValueError):
    """Syntax or semantic error in a polynomial expression, with position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>X\d+|X|x|y)|(?P<op>[-+*^/()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("num"):
            tokens.append(("num", int(m.group("num")), m.start("num")))
        elif m.group("var"):
            tokens.append(("var", m.group("var"), m.start("var")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over the tokens; produces {var-exponent dict: coef}."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self):
        result = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return result

    # each node is a dict {frozen exponent-map: Fraction coefficient}
    def expr(self):
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.next()
            negate = val == "-"
        acc = self.term()
        if negate:
            acc = {k: -c for k, c in acc.items()}
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                sign = 1 if val == "+" else -1
                for k, c in rhs.items():
                    acc[k] = acc.get(k, Q(0)) + sign * c
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                rhs = self.factor()
                acc = _poly_mul(acc, rhs)
            else:
                return acc

    def factor(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            e = self.exponent()
            base = _poly_pow(base, e, self)
        return base

    def atom(self):
        kind, val, pos = self.next()
        if kind == "num":
            coef = Q(val)
            # rational literal p/q
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.next()
                k3, v3, p3 = self.next()
                if k3 != "num":
                    raise ParseError("expected denominator", p3)
                if v3 == 0:
                    raise ParseError("zero denominator", p3)
                coef = Q(val, v3)
            return {frozenset(): coef}
        if kind == "var":
            return {frozenset({(val, Q(1))}): Q(1)}
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError("expected a number, variable, or parenthesis", pos)

    def exponent(self) -> Fraction:
        kind, val, pos = self.peek()
        if kind == "num":
            self.next()
            return Q(val)
        if kind == "op" and val == "-":
            self.next()
            k2, v2, p2 = self.next()
            if k2 != "num":
                raise ParseError("expected exponent digits", p2)
            return Q(-v2)
        if kind == "op" and val == "(":
            self.next()
            sign = 1
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 in "+-":
                self.next()
                sign = -1 if v2 == "-" else 1
            k2, v2, p2 = self.next()
            if k2 != "num":
                raise ParseError("expected exponent numerator", p2)
            num = v2
            den = 1
            k3, v3, _ = self.peek()
            if k3 == "op" and v3 == "/":
                self.next()
                k4, v4, p4 = self.next()
                if k4 != "num":
                    raise ParseError("expected exponent denominator", p4)
                if v4 == 0:
                    raise ParseError("zero exponent denominator", p4)
                den = v4
            self.expect_op(")")
            return Q(sign * num, den)
        raise ParseError("expected an exponent", pos)


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        ea = dict(ka)
        for kb, cb in b.items():
            e = dict(ea)
            for var, p in kb:
                e[var] = e.get(var, Q(0)) + p
            key = frozenset((v, p) for v, p in e.items() if p != 0)
            out[key] = out.get(key, Q(0)) + ca * cb
    return {k: c for k, c in out.items() if c != 0}


def _poly_pow(base: dict, e: Fraction, parser: _Parser) -> dict:
    if len(base) == 1:
        # monomial: exponent may be rational or negative
        (key, coef), = base.items()
        if coef != 1 or not key:
            # numeric or scaled base: only integer powers >= 0 make sense
            if e.denominator != 1 or e < 0:
                raise ParseError("rational exponent requires a bare variable", 0)
        if key and coef == 1:
            new = frozenset((v, p * e) for v, p in key)
            return {new: Q(1)}
    if e.denominator != 1 or e < 0:
        raise ParseError("rational or negative exponent requires a bare variable", 0)
    out = {frozenset(): Q(1)}
    for _ in range(int(e)):
        out = _poly_mul(out, base)
    return out


def _collect_vars(node: dict) -> set:
    vs: set = set()
    for key in node:
        for var, _ in key:
            vs.add(var)
    return vs


def _infer_kind(vars_used: set) -> str:
    if not vars_used or vars_used <= {"X"}:
        return "uni"
    if vars_used <= {"x", "y"}:
        return "bivariate"
    if all(re.fullmatch(r"X\d+", v) for v in vars_used):
        return "multi"
    raise ParseError(f"cannot mix variables {sorted(vars_used)}", 0)


Poly = Union[UniPoly, BivariateLocalFactor, MultiPoly]


def parse_poly(text: str, kind: str | None = None, vars: set | None = None) -> Poly:
    """Parse an expression into the carrier its variables indicate.

    ``kind`` may force "uni", "bivariate", or "multi"; ``vars`` optionally
    declares the allowed variable set (unknown variables raise).
    """
    node = _Parser(text).parse()
    used = _collect_vars(node)
    if vars is not None and not used <= set(vars):
        unknown = sorted(used - set(vars))
        raise ParseError(f"unknown variable(s) {unknown}", 0)
    kind = kind or _infer_kind(used)

    if kind == "uni":
        if not used <= {"X"}:
            raise ParseError("univariate expressions use the variable X", 0)
        coeffs: dict = {}
        for key, c in node.items():
            e = dict(key).get("X", Q(0))
            if e.denominator != 1 or e < 0:
                raise ParseError("univariate exponents must be non-negative integers", 0)
            if c.denominator != 1:
                raise ParseError("univariate coefficients must be integers", 0)
            coeffs[int(e)] = coeffs.get(int(e), 0) + int(c)
        n = max(coeffs, default=0)
        return UniPoly([coeffs.get(k, 0) for k in range(n + 1)])

    if kind == "bivariate":
        if not used <= {"x", "y"}:
            raise ParseError("bivariate expressions use the variables x, y", 0)
        terms: dict = {}
        for key, c in node.items():
            e = dict(key)
            uv = (e.get("x", Q(0)), e.get("y", Q(0)))
            terms[uv] = terms.get(uv, Q(0)) + c
        return BivariateLocalFactor(terms)

    if kind == "multi":
        idxs = set()
        for v in used:
            m = re.fullmatch(r"X(\d+)", v)
            if not m:
                raise ParseError("multivariate expressions use variables X1, X2, ...", 0)
            idxs.add(int(m.group(1)))
        n = max(idxs, default=1)
        terms = {}
        for key, c in node.items():
            e = dict(key)
            vec = [0] * n
            for var, p in e.items():
                if p.denominator != 1 or p < 0:
                    raise ParseError("multivariate exponents must be non-negative integers", 0)
                vec[int(var[1:]) - 1] = int(p)
            if c.denominator != 1:
                raise ParseError("multivariate coefficients must be integers", 0)
            vec = tuple(vec)
            terms[vec] = terms.get(vec, 0) + int(c)
        return MultiPoly(n, terms)

    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# canonical text and JSON
# ---------------------------------------------------------------------------


def canonical_str(p: Poly) -> str:
    return str(p)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _exp_json(e: Fraction):
    return int(e) if e.denominator == 1 else _frac_str(e)


def poly_to_json(p: Poly) -> str:
    """Canonical JSON: {"vars": [...], "terms": [{"exp": [...], "coef": "num/den"}]}."""
    if isinstance(p, UniPoly):
        vars_, rows = ["X"], [
            {"exp": [k], "coef": str(c)} for k, c in enumerate(p.coeffs) if c
        ]
    elif isinstance(p, BivariateLocalFactor):
        vars_ = ["x", "y"]
        rows = [
            {"exp": [_exp_json(u), _exp_json(v)], "coef": _frac_str(c)}
            for u, v, c in p.terms
        ]
    elif isinstance(p, MultiPoly):
        vars_ = [f"X{i+1}" for i in range(p.nvars)]
        rows = [{"exp": list(e), "coef": str(c)} for e, c in p.terms]
    else:
        raise TypeError(f"not a polynomial carrier: {type(p).__name__}")
    return json.dumps({"vars": vars_, "terms": rows}, separators=(",", ":"))


def poly_from_json(text: str) -> Poly:
    doc = json.loads(text)
    vars_ = doc["vars"]
    rows = doc["terms"]
    if vars_ == ["X"]:
        coeffs: dict = {}
        for row in rows:
            coeffs[int(row["exp"][0])] = int(row["coef"])
        n = max(coeffs, default=0)
        return UniPoly([coeffs.get(k, 0) for k in range(n + 1)])
    if vars_ == ["x", "y"]:
        return BivariateLocalFactor(
            {(Q(str(r["exp"][0])), Q(str(r["exp"][1]))): Q(r["coef"]) for r in rows}
        )
    return MultiPoly(len(vars_), {tuple(r["exp"]): int(r["coef"]) for r in rows})
