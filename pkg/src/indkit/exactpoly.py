"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` lives in a fixed number of variables ``n`` and stores a
mapping from exponent tuples to coefficients.  Coefficients are kept as Python
``int`` whenever they are integral and as :class:`fractions.Fraction`
otherwise; both compare equal to the corresponding rational, so callers never
need to care.  Zero coefficients are never stored.

Monomials are ordered graded-lexicographically (total degree first, then
lexicographic with ``x1 > x2 > ...``).  That order drives iteration,
serialization and every echelon form built on top of this module.

Text grammar (shared with the CLI)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" integer)?
    atom   := integer ("/" integer)? | variable | "(" expr ")"

Variables are ``x``, ``y`` for two variables and ``x1``, ..., ``xn`` otherwise.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

try:  # GMP multiplies huge integers far faster than CPython
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover
    _bigint = int

Scalar = Union[int, Fraction]
Monomial = tuple[int, ...]

__all__ = [
    "Monomial",
    "ParseError",
    "Polynomial",
    "grlex_key",
    "parse_polynomial",
    "poly_arith",
    "to_fraction",
    "variable_names",
]


class ParseError(ValueError):
    """Raised when polynomial text does not follow the grammar."""


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def _norm(value) -> Scalar:
    # ints stay ints; integral fractions collapse to ints
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    return _norm(to_fraction(value))


def grlex_key(mono: Monomial) -> tuple:
    """Sort key: larger key means larger monomial in graded-lex order."""
    return (sum(mono), mono)


def variable_names(n: int) -> list[str]:
    if n == 2:
        return ["x", "y"]
    return [f"x{i + 1}" for i in range(n)]


# --- multiplication kernels -------------------------------------------------


def _mul_dict(a: Mapping, b: Mapping, n: int, max_degree: int | None = None) -> dict:
    out: dict = {}
    get = out.get
    if n == 2:
        for (a0, a1), ca in a.items():
            for (b0, b1), cb in b.items():
                if max_degree is not None and a0 + a1 + b0 + b1 > max_degree:
                    continue
                key = (a0 + b0, a1 + b1)
                out[key] = get(key, 0) + ca * cb
    else:
        for ma, ca in a.items():
            for mb, cb in b.items():
                key = tuple(i + j for i, j in zip(ma, mb))
                if max_degree is not None and sum(key) > max_degree:
                    continue
                out[key] = get(key, 0) + ca * cb
    return {m: _norm(c) for m, c in out.items() if c != 0}


def _pack(terms: Mapping, strides: Sequence[int], slot_bytes: int, total: int) -> int:
    """Big integer with the coefficient of each monomial in its own slot (signed)."""
    pos = bytearray(total * slot_bytes)
    neg = bytearray(total * slot_bytes)
    for mono, c in terms.items():
        idx = 0
        for e, st in zip(mono, strides):
            idx += e * st
        off = idx * slot_bytes
        if c >= 0:
            pos[off:off + slot_bytes] = c.to_bytes(slot_bytes, "little")
        else:
            neg[off:off + slot_bytes] = (-c).to_bytes(slot_bytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _mul_kronecker_int(a: Mapping, b: Mapping, n: int) -> dict:
    """Product of two polynomials with integer coefficients.

    Packs each operand into one big integer (Kronecker substitution) and lets
    CPython's big-int multiply do the convolution.  Signed slots are decoded
    by adding half a slot everywhere, which turns them into non-negative digits.
    """
    bound = [0] * n
    for terms in (a, b):
        for i in range(n):
            bound[i] += max(m[i] for m in terms)
    strides = [1] * n
    for i in range(n - 2, -1, -1):
        strides[i] = strides[i + 1] * (bound[i + 1] + 1)
    total = strides[0] * (bound[0] + 1)
    cmax = max(abs(c) for c in a.values()).bit_length() + max(abs(c) for c in b.values()).bit_length()
    cmax += min(len(a), len(b)).bit_length() + 2
    slot_bytes = (cmax + 7) // 8
    half_slot = bytes(slot_bytes - 1) + b"\x80"
    offset = int.from_bytes(half_slot * total, "little")
    prod = _bigint(_pack(a, strides, slot_bytes, total)) * _bigint(_pack(b, strides, slot_bytes, total))
    raw = int(prod + offset).to_bytes(total * slot_bytes, "little")
    half = 1 << (8 * slot_bytes - 1)
    out = {}
    from_bytes = int.from_bytes
    if n == 2:
        # only monomials up to the sum of the total degrees can be nonzero
        top = max(sum(m) for m in a) + max(sum(m) for m in b)
        row = strides[0]
        for i in range(bound[0] + 1):
            base = i * row
            for j in range(min(bound[1], top - i) + 1):
                off = (base + j) * slot_bytes
                chunk = raw[off:off + slot_bytes]
                if chunk != half_slot:
                    out[(i, j)] = from_bytes(chunk, "little") - half
        return out
    for idx in range(total):
        off = idx * slot_bytes
        chunk = raw[off:off + slot_bytes]
        if chunk == half_slot:  # empty slot
            continue
        mono = []
        rem = idx
        for st in strides:
            q, rem = divmod(rem, st)
            mono.append(q)
        out[tuple(mono)] = from_bytes(chunk, "little") - half
    return out


def _clear_denominators(terms: Mapping) -> tuple[Mapping, int]:
    den = 1
    for c in terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // _gcd(den, c.denominator)
    if den == 1:
        return terms, 1
    return {m: int(c * den) for m, c in terms.items()}, den


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _dense_enough(a: Mapping, b: Mapping, n: int) -> bool:
    work = len(a) * len(b)
    if work < 4096:
        return False
    slots = 1
    for i in range(n):
        slots *= max(m[i] for m in a) + max(m[i] for m in b) + 1
    return slots <= 16 * work


def _multiply(a: Mapping, b: Mapping, n: int, max_degree: int | None = None) -> dict:
    if not a or not b:
        return {}
    ia, da = _clear_denominators(a)
    ib, db = _clear_denominators(b)
    if max_degree is None and _dense_enough(ia, ib, n):
        out = _mul_kronecker_int(ia, ib, n)
    else:
        out = _mul_dict(ia, ib, n, max_degree)
    scale = da * db
    if scale == 1:
        return {m: c for m, c in out.items() if c != 0}
    return {m: _norm(Fraction(c, scale)) for m, c in out.items() if c != 0}


# --- the polynomial type ----------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables over the rationals."""

    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        clean: dict[Monomial, Scalar] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} does not have {nvars} exponents")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = _norm(coeff)
            if c != 0:
                clean[mono] = _norm(clean.get(mono, 0) + c)
                if clean[mono] == 0:
                    del clean[mono]
        self._n = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> Polynomial:
        # trusted constructor: terms already normalized, no zeros
        obj = cls.__new__(cls)
        obj._n = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # construction helpers

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value) -> Polynomial:
        c = _norm(value)
        return cls._raw(nvars, {(0,) * nvars: c} if c != 0 else {})

    @classmethod
    def one(cls, nvars: int) -> Polynomial:
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int) -> Polynomial:
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        mono = [0] * nvars
        mono[index] = 1
        return cls._raw(nvars, {tuple(mono): 1})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff=1) -> Polynomial:
        return cls(len(exponents), {tuple(exponents): coeff})

    @classmethod
    def gens(cls, nvars: int) -> tuple[Polynomial, ...]:
        return tuple(cls.variable(nvars, i) for i in range(nvars))

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> Polynomial:
        return parse_polynomial(text, nvars)

    # basic accessors

    @property
    def nvars(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[Monomial, Scalar]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Scalar]]:
        """Iterate ``(monomial, coefficient)`` in descending graded-lex order."""
        for mono in sorted(self._terms, key=grlex_key, reverse=True):
            yield mono, self._terms[mono]

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms, key=grlex_key, reverse=True)

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return Fraction(self._terms.get(tuple(mono), 0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self._n)

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def degree_in(self, index: int) -> int:
        if not self._terms:
            return -1
        return max(m[index] for m in self._terms)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=grlex_key)

    def leading_coefficient(self) -> Fraction:
        return Fraction(self._terms[self.leading_monomial()])

    def homogeneous_part(self, degree: int) -> Polynomial:
        return Polynomial._raw(self._n, {m: c for m, c in self._terms.items() if sum(m) == degree})

    def leading_form(self) -> Polynomial:
        return self.homogeneous_part(self.degree())

    def truncate(self, max_degree: int) -> Polynomial:
        """Drop every term of total degree above ``max_degree``."""
        return Polynomial._raw(self._n, {m: c for m, c in self._terms.items() if sum(m) <= max_degree})

    def has_nonnegative_integer_coefficients(self) -> bool:
        return all(isinstance(c, int) and c >= 0 for c in self._terms.values())

    # arithmetic

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other._n != self._n:
                raise ValueError(f"dimension mismatch: {self._n} vs {other._n}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self._n, other)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = _norm(v)
            else:
                out.pop(m, None)
        return Polynomial._raw(self._n, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self._n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def scale(self, factor) -> Polynomial:
        c = _norm(factor)
        if c == 0:
            return Polynomial.zero(self._n)
        if c == 1:
            return self
        return Polynomial._raw(self._n, {m: _norm(v * c) for m, v in self._terms.items()})

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Polynomial._raw(self._n, _multiply(self._terms, other._terms, self._n))

    __rmul__ = __mul__

    def __truediv__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self.scale(Fraction(1) / to_fraction(other))
        return NotImplemented

    def mul_truncated(self, other: Polynomial, max_degree: int) -> Polynomial:
        """Product with all terms above ``max_degree`` discarded."""
        other = self._coerce(other)
        return Polynomial._raw(self._n, _multiply(self._terms, other._terms, self._n, max_degree))

    def __pow__(self, exponent: int) -> Polynomial:
        return self.power(exponent)

    def power(self, exponent: int, max_degree: int | None = None) -> Polynomial:
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.one(self._n)
        base = self
        mul = (lambda p, q: p * q) if max_degree is None else (lambda p, q: p.mul_truncated(q, max_degree))
        if max_degree is not None:
            result = result.truncate(max_degree)
            base = base.truncate(max_degree)
        while exponent:
            if exponent & 1:
                result = mul(result, base)
            exponent >>= 1
            if exponent:
                base = mul(base, base)
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._n == other._n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self._n, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, frozenset(self._terms.items())))
        return self._hash

    # calculus and substitution

    def partial(self, index: int) -> Polynomial:
        """Exact partial derivative with respect to variable ``index``."""
        if not 0 <= index < self._n:
            raise IndexError(f"variable index {index} out of range for {self._n} variables")
        out = {}
        for m, c in self._terms.items():
            e = m[index]
            if e:
                mm = list(m)
                mm[index] = e - 1
                out[tuple(mm)] = _norm(c * e)
        return Polynomial._raw(self._n, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self._n:
            raise ValueError(f"point has {len(point)} coordinates, expected {self._n}")
        pt = [to_fraction(v) for v in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            v = Fraction(c)
            for x, e in zip(pt, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def substitute(self, images: Sequence[Polynomial], max_degree: int | None = None) -> Polynomial:
        """Replace ``x_i`` by ``images[i]`` and expand.

        With ``max_degree`` the result is only correct up to that total
        degree; this is exact whenever every image vanishes at the origin.
        """
        if len(images) != self._n:
            raise ValueError(f"expected {self._n} images, got {len(images)}")
        if not images:
            raise ValueError("no images given")
        target = images[0].nvars
        for img in images:
            if img.nvars != target:
                raise ValueError("images live in rings of different dimension")
        if not self._terms:
            return Polynomial.zero(target)
        if max_degree is not None:
            images = [img.truncate(max_degree) for img in images]
        return _horner(self._terms, 0, list(images), target, {}, max_degree)

    def __call__(self, *args):
        if len(args) == 1 and isinstance(args[0], (list, tuple)):
            args = tuple(args[0])
        if args and all(isinstance(a, Polynomial) for a in args):
            return self.substitute(list(args))
        return self.evaluate(args)

    # text

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({self._n}, {str(self)!r})"

    def to_string(self, names: Sequence[str] | None = None) -> str:
        return format_polynomial(self, names)


def _power_cache(cache: dict, base: Polynomial, key, e: int, max_degree) -> Polynomial:
    powers = cache.setdefault(key, [Polynomial.one(base.nvars), base])
    while len(powers) <= e:
        if max_degree is None:
            powers.append(powers[-1] * base)
        else:
            powers.append(powers[-1].mul_truncated(base, max_degree))
    return powers[e]


def _horner(terms: Mapping, var: int, images: list, target: int, cache: dict, max_degree) -> Polynomial:
    # recursive expansion: p = sum_e x_var^e * p_e(x_{var+1}, ...)
    n = len(images)
    if var == n:
        (c,) = terms.values()
        return Polynomial.constant(target, c)
    groups: dict[int, dict] = {}
    for m, c in terms.items():
        groups.setdefault(m[var], {})[m] = c
    result = Polynomial.zero(target)
    for e in sorted(groups):
        sub = groups[e]
        if var == n - 1:
            inner = Polynomial.constant(target, next(iter(sub.values())))
        else:
            # strip nothing: deeper levels ignore the fixed exponent of var
            inner = _horner(sub, var + 1, images, target, cache, max_degree)
        if e == 0:
            result = result + inner
            continue
        pw = _power_cache(cache, images[var], var, e, max_degree)
        if max_degree is None:
            result = result + inner * pw
        else:
            result = result + inner.mul_truncated(pw, max_degree)
    return result


# --- formatting and parsing -------------------------------------------------


def _format_scalar(c: Fraction) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_monomial(mono: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial, names: Sequence[str] | None = None) -> str:
    """Canonical text: descending graded-lex, signs folded into ``+``/``-``."""
    names = list(names) if names is not None else variable_names(p.nvars)
    if p.is_zero():
        return "0"
    pieces = []
    for i, (mono, c) in enumerate(p):
        c = Fraction(c)
        negative = c < 0
        mag = -c if negative else c
        body = _format_monomial(mono, names)
        if not body:
            text = _format_scalar(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{_format_scalar(mag)}*{body}"
        if i == 0:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f"- {text}" if negative else f"+ {text}")
    return " ".join(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        if m.group(1) is not None:
            tokens.append(("num", m.group(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}")
            tokens.append(("op", ch))
    return tokens


def _infer_nvars(names: Iterable[str]) -> int:
    names = set(names)
    plain = names & {"x", "y"}
    indexed = {n for n in names if re.fullmatch(r"x[1-9]\d*", n)}
    unknown = names - plain - indexed
    if unknown:
        raise ParseError(f"unknown variable(s): {', '.join(sorted(unknown))}")
    if plain and indexed:
        raise ParseError("cannot mix x, y with x1..xn")
    if indexed:
        return max(int(n[1:]) for n in indexed)
    return 2


class _Parser:
    def __init__(self, tokens: list, names: dict[str, int], nvars: int):
        self.tokens = tokens
        self.i = 0
        self.names = names
        self.n = nvars

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val!r}")

    def expr(self) -> Polynomial:
        result = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            result = result * self.unary()
        return result

    def unary(self) -> Polynomial:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            return base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            value = Fraction(int(val))
            if self.peek() == ("op", "/"):
                self.take()
                k2, v2 = self.take()
                if k2 != "num":
                    raise ParseError("denominator must be an integer")
                if int(v2) == 0:
                    raise ParseError("zero denominator")
                value = Fraction(int(val), int(v2))
            return Polynomial.constant(self.n, value)
        if kind == "name":
            if val not in self.names:
                raise ParseError(f"unknown variable {val!r} for {self.n} variables")
            return Polynomial.variable(self.n, self.names[val])
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError("unexpected end of input" if val is None else f"unexpected token {val!r}")


def parse_polynomial(text: str, nvars: int | None = None) -> Polynomial:
    """Parse the text grammar; ``nvars`` is inferred from variable names if omitted."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    used = [v for k, v in tokens if k == "name"]
    if nvars is None:
        nvars = _infer_nvars(used)
    names = {name: i for i, name in enumerate(variable_names(nvars))}
    if nvars == 2:
        # x1, x2 are accepted as aliases in the plane
        names.update({"x1": 0, "x2": 1})
    parser = _Parser(tokens, names, nvars)
    result = parser.expr()
    if parser.i != len(tokens):
        raise ParseError(f"trailing input at token {parser.peek()[1]!r}")
    return result


def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    """Apply ``op`` in {"add", "sub", "mul"} to two polynomials of equal dimension."""
    if p.nvars != q.nvars:
        raise ValueError(f"dimension mismatch: {p.nvars} vs {q.nvars}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")
