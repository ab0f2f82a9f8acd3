"""Polynomial endomorphisms and automorphisms of affine n-space."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactpoly import ParseError, Polynomial, parse_polynomial
from . import linalg

__all__ = [
    "Automorphism",
    "NotAnAutomorphism",
    "PolyMap",
    "apply_point",
    "compose",
    "degree",
    "jacobian",
    "linear_part",
    "parse_map",
]


class NotAnAutomorphism(ValueError):
    """A map failed an invertibility certificate."""


class PolyMap:
    """The map ``x -> (f1(x), ..., fn(x))`` of affine n-space."""

    __slots__ = ("components", "_hash")

    def __init__(self, components: Sequence[Polynomial]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a map needs at least one component")
        n = len(comps)
        for c in comps:
            if c.nvars != n:
                raise ValueError(f"component {c} lives in {c.nvars} variables, expected {n}")
        self.components = comps
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> PolyMap:
        return cls(Polynomial.gens(n))

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> PolyMap:
        return parse_map(text, nvars)

    @classmethod
    def linear(cls, matrix, translation=None) -> PolyMap:
        """The affine map ``x -> A x + b``."""
        n = len(matrix)
        gens = Polynomial.gens(n)
        b = translation or [0] * n
        comps = []
        for i in range(n):
            p = Polynomial.constant(n, b[i])
            for j in range(n):
                p = p + gens[j] * Fraction(matrix[i][j])
            comps.append(p)
        return cls(comps)

    @property
    def n(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> Polynomial:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMap) and self.components == other.components

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.components)
        return self._hash

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self) -> str:
        return f"PolyMap({str(self)!r})"

    def __matmul__(self, other: PolyMap) -> PolyMap:
        return compose(self, other)

    def is_identity(self) -> bool:
        return self == PolyMap.identity(self.n)

    def pullback(self, p: Polynomial, max_degree: int | None = None) -> Polynomial:
        """``g*(p) = p o g``."""
        return p.substitute(self.components, max_degree)

    def degree(self) -> int:
        return degree(self)

    def truncate(self, max_degree: int) -> PolyMap:
        return PolyMap([c.truncate(max_degree) for c in self.components])

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = tuple(point[0])
        return apply_point(self, point)


def compose(g: PolyMap, h: PolyMap, max_degree: int | None = None) -> PolyMap:
    """``g o h``, i.e. ``x -> g(h(x))``.

    ``max_degree`` keeps only terms up to that total degree, which is exact
    for maps fixing the origin.
    """
    if g.n != h.n:
        raise ValueError(f"dimension mismatch: {g.n} vs {h.n}")
    return PolyMap([c.substitute(h.components, max_degree) for c in g.components])


def power(g: PolyMap, k: int, max_degree: int | None = None) -> PolyMap:
    if k < 0:
        raise ValueError("use an Automorphism for negative powers")
    result = PolyMap.identity(g.n)
    for _ in range(k):
        result = compose(g, result, max_degree)
    return result


def jacobian(g: PolyMap) -> tuple[list[list[Polynomial]], Polynomial]:
    """The matrix of partials ``d g_i / d x_j`` and its determinant."""
    n = g.n
    mat = [[g.components[i].partial(j) for j in range(n)] for i in range(n)]
    return mat, _poly_det(mat)


def _poly_det(mat: list[list[Polynomial]]) -> Polynomial:
    # cofactor expansion; only used for small n
    n = len(mat)
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = Polynomial.zero(mat[0][0].nvars)
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def linear_part(g: PolyMap) -> list[list[Fraction]]:
    """Matrix of degree-one coefficients (the differential at the origin when g(0) = 0)."""
    n = g.n
    rows = []
    for comp in g.components:
        row = []
        for j in range(n):
            mono = [0] * n
            mono[j] = 1
            row.append(comp.coefficient(mono))
        rows.append(row)
    return rows


def translation_part(g: PolyMap) -> list[Fraction]:
    return [c.constant_term() for c in g.components]


def apply_point(g: PolyMap, point: Sequence) -> tuple[Fraction, ...]:
    if len(point) != g.n:
        raise ValueError(f"point has {len(point)} coordinates, expected {g.n}")
    return tuple(c.evaluate(point) for c in g.components)


def degree(g: PolyMap) -> int:
    return max(c.degree() for c in g.components)


def is_affine(g: PolyMap) -> bool:
    return degree(g) <= 1


class Automorphism:
    """A polynomial automorphism together with a verified inverse."""

    __slots__ = ("forward", "inverse")

    def __init__(self, forward: PolyMap, inverse: PolyMap, check: bool = True):
        if forward.n != inverse.n:
            raise ValueError("forward and inverse have different dimensions")
        if check:
            # inverse o forward = id makes forward injective, hence bijective
            # (Ax-Grothendieck), so the left inverse is the inverse
            if compose(inverse, forward) != PolyMap.identity(forward.n):
                raise NotAnAutomorphism(f"{inverse} is not an inverse of {forward}")
        self.forward = forward
        self.inverse = inverse

    @classmethod
    def identity(cls, n: int) -> Automorphism:
        ident = PolyMap.identity(n)
        return cls(ident, ident, check=False)

    @classmethod
    def affine(cls, matrix, translation=None) -> Automorphism:
        a = linalg.to_matrix(matrix)
        b = [Fraction(v) for v in (translation or [0] * len(a))]
        try:
            ainv = linalg.inverse(a)
        except linalg.SingularMatrixError as exc:
            raise NotAnAutomorphism("singular linear part") from exc
        binv = [-sum((ainv[i][j] * b[j] for j in range(len(a))), Fraction(0)) for i in range(len(a))]
        return cls(PolyMap.linear(a, b), PolyMap.linear(ainv, binv), check=False)

    @property
    def n(self) -> int:
        return self.forward.n

    def inverted(self) -> Automorphism:
        return Automorphism(self.inverse, self.forward, check=False)

    def __matmul__(self, other: Automorphism) -> Automorphism:
        return Automorphism(compose(self.forward, other.forward), compose(other.inverse, self.inverse), check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Automorphism) and self.forward == other.forward

    def __hash__(self) -> int:
        return hash(self.forward)

    def __repr__(self) -> str:
        return f"Automorphism({str(self.forward)!r})"

    def __str__(self) -> str:
        return str(self.forward)


def split_top_level(text: str, open_ch: str, close_ch: str) -> list[str]:
    """Split ``(a, b, ...)`` at top-level commas."""
    s = text.strip()
    if not (s.startswith(open_ch) and s.endswith(close_ch)):
        raise ParseError(f"expected text wrapped in {open_ch}{close_ch}: {text!r}")
    body = s[1:-1]
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses")
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    if depth:
        raise ParseError("unbalanced parentheses")
    parts.append(body[start:])
    if any(not p.strip() for p in parts):
        raise ParseError(f"empty component in {text!r}")
    return parts


def parse_map(text: str, nvars: int | None = None) -> PolyMap:
    """Parse ``(p1, p2, ..., pn)``."""
    parts = split_top_level(text, "(", ")")
    n = len(parts) if nvars is None else nvars
    if n != len(parts):
        raise ParseError(f"map has {len(parts)} components but uses {n} variables")
    return PolyMap([parse_polynomial(p, n) for p in parts])
