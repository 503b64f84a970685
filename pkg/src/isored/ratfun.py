"""Exact arithmetic in the edge-weight field: rational functions of one
variable with Gaussian-rational coefficients.

Representation
--------------
GaussianRational   a + b*i with a, b exact ``fractions.Fraction`` values.
Poly               coefficient tuple in ascending degree; the last entry is
                   nonzero, the zero polynomial is the empty tuple.
RatFun             a quotient num/den of two Poly values kept in canonical
                   form: gcd(num, den) = 1, den monic, zero is 0/1.

Because the denominator is monic and common factors are always removed,
every field element has exactly one representation, so ``==`` on RatFun is
field equality.  All three types are immutable and hashable.

The weight grammar accepted by :func:`parse_weight` (whitespace ignored)::

    expr     := term (('+'|'-') term)*
    term     := factor (('*'|'/') factor)*
    factor   := ('-')? atom ('^' uint)?
    atom     := rational | rational 'i' | 'i' | var | '(' expr ')'
    rational := uint ('/' uint)? | decimal-with-finite-digits
    var      := 'l' | 'lambda'

``rational`` is lexed greedily, so ``3/2`` is a single rational atom and
``3/2i`` means (3/2)*i.  The unicode variable name is also accepted on
input; :func:`format_weight` always emits ``l``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Sequence

NEG_INF = float("-inf")

_F0 = Fraction(0)
_F1 = Fraction(1)


class ParseError(ValueError):
    """Malformed weight expression; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c, _F0)
        return GaussianRational(a * c - b * d, a * d + b * c)

    def __truediv__(self, other):
        if not other:
            raise ZeroDivisionError("division by zero Gaussian rational")
        c, d = other.re, other.im
        if not d:
            return GaussianRational(self.re / c, self.im / c)
        n = c * c + d * d
        a, b = self.re, self.im
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def inverse(self):
        return GR_ONE / self

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


GR_ZERO = GaussianRational(0, 0)
GR_ONE = GaussianRational(1, 0)
GR_I = GaussianRational(0, 1)


class Poly:
    """Univariate polynomial over the Gaussian rationals.

    ``coeffs`` is an ascending-degree tuple with nonzero leading entry;
    the zero polynomial is the empty tuple and has degree ``NEG_INF``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[GaussianRational] = ()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return _P_ZERO

    @staticmethod
    def one() -> "Poly":
        return _P_ONE

    @staticmethod
    def var() -> "Poly":
        return _P_VAR

    @staticmethod
    def const(c) -> "Poly":
        if not isinstance(c, GaussianRational):
            c = GaussianRational(c)
        return Poly((c,))

    @staticmethod
    def from_ints(ints: Sequence[int]) -> "Poly":
        return Poly(tuple(GaussianRational(k) for k in ints))

    # -- structure ----------------------------------------------------

    @property
    def degree(self):
        """Degree as an int; ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def leading(self) -> GaussianRational:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return _P_ZERO
        out = [GR_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for ia, ca in enumerate(self.coeffs):
            if not ca:
                continue
            for ib, cb in enumerate(other.coeffs):
                if cb:
                    out[ia + ib] = out[ia + ib] + ca * cb
        return Poly(out)

    def scale(self, c: GaussianRational) -> "Poly":
        if not c:
            return _P_ZERO
        return Poly(tuple(k * c for k in self.coeffs))

    def shift(self, n: int) -> "Poly":
        """Multiply by the n-th power of the variable."""
        if not self.coeffs:
            return _P_ZERO
        return Poly((GR_ZERO,) * n + self.coeffs)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = _P_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Poly"):
        """Exact Euclidean division; ``other`` must be nonzero."""
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dv = other.coeffs
        dd = len(dv) - 1
        lead_inv = dv[-1].inverse()
        if len(rem) - 1 < dd:
            return _P_ZERO, self
        q = [GR_ZERO] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if not c:
                continue
            f = c * lead_inv
            q[k - dd] = f
            for j in range(dd + 1):
                rem[k - dd + j] = rem[k - dd + j] - f * dv[j]
        return Poly(q), Poly(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r.coeffs:
            raise ValueError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == GR_ONE:
            return self
        return self.scale(lead.inverse())

    def derivative(self) -> "Poly":
        return Poly(
            tuple(c * GaussianRational(k) for k, c in enumerate(self.coeffs) if k)
        )

    def eval_complex(self, z: complex) -> complex:
        out = 0j
        for c in reversed(self.coeffs):
            out = out * z + c.to_complex()
        return out

    def eval_exact(self, z: GaussianRational) -> GaussianRational:
        out = GR_ZERO
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    def __repr__(self):
        return f"Poly({poly_to_string(self)!r})"


_P_ZERO = Poly.__new__(Poly)
_P_ZERO.coeffs = ()
_P_ONE = Poly.__new__(Poly)
_P_ONE.coeffs = (GR_ONE,)
_P_VAR = Poly.__new__(Poly)
_P_VAR.coeffs = (GR_ZERO, GR_ONE)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    while b.coeffs:
        a, b = b, (a % b)
        if b.coeffs:
            b = b.monic()
    return a.monic() if a.coeffs else a


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if not a.coeffs or not b.coeffs:
        return _P_ZERO
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def squarefree_decompose(p: Poly):
    """Yun decomposition ``p = lead * prod f_i^(m_i)``.

    Returns a list of (monic squarefree factor, multiplicity) pairs with
    pairwise-coprime factors; constants decompose to the empty list.
    """
    if p.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return []
    out = []
    dp = p.derivative()
    g = poly_gcd(p, dp)
    c = p.exact_div(g)
    d = dp.exact_div(g) - c.derivative()
    i = 1
    while c.degree > 0:
        f = poly_gcd(c, d)
        if f.degree > 0:
            out.append((f, i))
        c = c.exact_div(f)
        d = d.exact_div(f) - c.derivative()
        i += 1
    return out


class RatFun:
    """Canonical rational function num/den over the Gaussian rationals."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = _P_ONE):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num = _P_ZERO
            self.den = _P_ONE
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lead = den.leading()
        if lead != GR_ONE:
            inv = lead.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "RatFun":
        return RF_ZERO

    @staticmethod
    def one() -> "RatFun":
        return RF_ONE

    @staticmethod
    def var() -> "RatFun":
        return RF_VAR

    @staticmethod
    def const(c) -> "RatFun":
        return RatFun(Poly.const(c))

    @staticmethod
    def from_int(k: int) -> "RatFun":
        return RatFun(Poly.const(GaussianRational(k)))

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num.coeffs)

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        return self.num.coeffs[0] if self.num.coeffs else GR_ZERO

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    # -- field operations ---------------------------------------------

    def __add__(self, other):
        if not self.num.coeffs:
            return other
        if not other.num.coeffs:
            return self
        return RatFun(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = RatFun.__new__(RatFun)
        out.num = -self.num
        out.den = self.den
        return out

    def __mul__(self, other):
        if not self.num.coeffs or not other.num.coeffs:
            return RF_ZERO
        return RatFun(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        if not self.num.coeffs:
            return RF_ZERO
        return RatFun(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int):
        if n < 0:
            return RF_ONE / (self ** (-n))
        out = RF_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "RatFun":
        return RF_ONE / self

    # -- analysis -----------------------------------------------------

    def pi(self):
        """deg(num) - deg(den); ``NEG_INF`` for the zero function."""
        if not self.num.coeffs:
            return NEG_INF
        return self.num.degree - self.den.degree

    def eval(self, z: complex, tol: float = 1e-12):
        """Evaluate at a complex point; ``None`` marks an undefined value.

        The denominator test is tolerance based and scale aware, so exact
        poles of moderate a magnitude resolve to ``None`` rather than a
        huge float.
        """
        dz = self.den.eval_complex(z)
        scale = max(
            1.0, max((abs(c.to_complex()) for c in self.den.coeffs), default=1.0)
        ) * max(1.0, abs(z)) ** max(0, len(self.den.coeffs) - 1)
        if abs(dz) <= tol * scale:
            return None
        return self.num.eval_complex(z) / dz

    def __repr__(self):
        return f"RatFun({format_weight(self)!r})"

    def __str__(self):
        return format_weight(self)


RF_ZERO = RatFun.__new__(RatFun)
RF_ZERO.num = _P_ZERO
RF_ZERO.den = _P_ONE
RF_ONE = RatFun.__new__(RatFun)
RF_ONE.num = _P_ONE
RF_ONE.den = _P_ONE
RF_VAR = RatFun.__new__(RatFun)
RF_VAR.num = _P_VAR
RF_VAR.den = _P_ONE


# ----------------------------------------------------------------------
# Formatting
# ----------------------------------------------------------------------


def _integer_cleared(r: RatFun):
    """Rescale num and den so all coefficients are Gaussian integers with
    content 1 and the den's leading coefficient is sign normalized."""
    denoms = [1]
    for p in (r.num, r.den):
        for c in p.coeffs:
            denoms.append(c.re.denominator)
            denoms.append(c.im.denominator)
    m = 1
    for d in denoms:
        m = m * d // int_gcd(m, d)
    num = r.num.scale(GaussianRational(m))
    den = r.den.scale(GaussianRational(m))
    content = 0
    for p in (num, den):
        for c in p.coeffs:
            content = int_gcd(content, int(c.re))
            content = int_gcd(content, int(c.im))
    if content > 1:
        inv = GaussianRational(Fraction(1, content))
        num = num.scale(inv)
        den = den.scale(inv)
    lead = den.leading()
    if lead.re < 0 or (lead.re == 0 and lead.im < 0):
        num = num.scale(GaussianRational(-1))
        den = den.scale(GaussianRational(-1))
    return num, den


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _term_str(c: GaussianRational, k: int):
    """Render one monomial; returns (sign, body) with sign '+' or '-'."""
    var = "" if k == 0 else ("l" if k == 1 else f"l^{k}")
    if c.re and c.im:
        inner = f"{_frac_str(c.re)}{'+' if c.im > 0 else '-'}{_frac_str(abs(c.im))}i"
        return "+", f"({inner})*{var}" if var else f"({inner})"
    if c.im:
        sign = "+" if c.im > 0 else "-"
        body = f"{_frac_str(abs(c.im))}i"
    else:
        sign = "+" if c.re > 0 else "-"
        body = _frac_str(abs(c.re))
    if var:
        body = var if body == "1" else f"{body}*{var}"
    return sign, body


def poly_to_string(p: Poly) -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        sign, body = _term_str(c, k)
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign}{body}")
    return "".join(parts)


def _top_level_ops(s: str) -> set:
    found = set()
    depth = 0
    for k, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-*/" and k > 0:
            found.add(ch)
    return found


def _wrap_num(s: str) -> str:
    # '/' binds left to right, so a product numerator needs no parens
    return s if not (_top_level_ops(s) & {"+", "-"}) else f"({s})"


def _wrap_den(s: str) -> str:
    return s if not _top_level_ops(s) else f"({s})"


def format_weight(r: RatFun) -> str:
    """Normalized ``num/den`` string with integer-cleared coefficients."""
    if r.is_zero():
        return "0"
    num, den = _integer_cleared(r)
    ns = poly_to_string(num)
    if den == _P_ONE or (den.degree == 0 and den.coeffs[0] == GR_ONE):
        return ns
    return f"{_wrap_num(ns)}/{_wrap_den(poly_to_string(den))}"


# ----------------------------------------------------------------------
# Parsing
# ----------------------------------------------------------------------

_VAR_NAMES = ("lambda", "l", "λ")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.idx = 0

    def _scan(self):
        text, n = self.text, len(self.text)
        i = 0
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in "+-*/^()":
                self.tokens.append((ch, None, i))
                i += 1
                continue
            if ch.isdigit():
                start = i
                while i < n and text[i].isdigit():
                    i += 1
                if i < n and text[i] == "." and i + 1 < n and text[i + 1].isdigit():
                    i += 1
                    fstart = i
                    while i < n and text[i].isdigit():
                        i += 1
                    whole = int(text[start : fstart - 1])
                    frac = text[fstart:i]
                    val = Fraction(whole) + Fraction(int(frac), 10 ** len(frac))
                elif i < n and text[i] == "/" and i + 1 < n and text[i + 1].isdigit():
                    numer = int(text[start:i])
                    i += 1
                    dstart = i
                    while i < n and text[i].isdigit():
                        i += 1
                    denom = int(text[dstart:i])
                    if denom == 0:
                        raise ParseError("zero denominator in rational", dstart)
                    val = Fraction(numer, denom)
                else:
                    val = Fraction(int(text[start:i]))
                self.tokens.append(("num", val, start))
                continue
            if ch.isalpha() or ch == "λ":
                start = i
                while i < n and (text[i].isalpha() or text[i] == "λ"):
                    i += 1
                word = text[start:i]
                if word == "i":
                    self.tokens.append(("imag", None, start))
                elif word in _VAR_NAMES:
                    self.tokens.append(("var", None, start))
                else:
                    raise ParseError(f"unknown name {word!r}", start)
                continue
            raise ParseError(f"unexpected character {ch!r}", i)
        self.tokens.append(("end", None, n))

    def peek(self):
        return self.tokens[self.idx]

    def next(self):
        t = self.tokens[self.idx]
        self.idx += 1
        return t


class _Parser:
    def __init__(self, text: str):
        self.lex = _Lexer(text)

    def parse(self) -> RatFun:
        value = self.expr()
        kind, _, pos = self.lex.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return value

    def expr(self) -> RatFun:
        value = self.term()
        while True:
            kind, _, _ = self.lex.peek()
            if kind == "+":
                self.lex.next()
                value = value + self.term()
            elif kind == "-":
                self.lex.next()
                value = value - self.term()
            else:
                return value

    def term(self) -> RatFun:
        value = self.factor()
        while True:
            kind, _, pos = self.lex.peek()
            if kind == "*":
                self.lex.next()
                value = value * self.factor()
            elif kind == "/":
                self.lex.next()
                rhs = self.factor()
                if rhs.is_zero():
                    raise ParseError("division by zero", pos)
                value = value / rhs
            else:
                return value

    def factor(self) -> RatFun:
        kind, _, _ = self.lex.peek()
        negate = False
        if kind == "-":
            self.lex.next()
            negate = True
        value = self.atom()
        kind, _, pos = self.lex.peek()
        if kind == "^":
            self.lex.next()
            ekind, eval_, epos = self.lex.next()
            if ekind != "num" or eval_.denominator != 1 or eval_ < 0:
                raise ParseError("exponent must be an unsigned integer", epos)
            value = value ** int(eval_)
        return -value if negate else value

    def atom(self) -> RatFun:
        kind, val, pos = self.lex.next()
        if kind == "num":
            nkind, _, _ = self.lex.peek()
            if nkind == "imag":
                self.lex.next()
                return RatFun.const(GaussianRational(0, val))
            return RatFun.const(GaussianRational(val))
        if kind == "imag":
            return RatFun.const(GR_I)
        if kind == "var":
            return RF_VAR
        if kind == "(":
            value = self.expr()
            ckind, _, cpos = self.lex.next()
            if ckind != ")":
                raise ParseError("expected ')'", cpos)
            return value
        raise ParseError("expected a number, 'i', variable, or '('", pos)


def parse_weight(text: str) -> RatFun:
    """Parse a weight expression into a canonical RatFun."""
    return _Parser(text).parse()
