"""Automorphisms of the affine plane and the free group generated by u and v.

Here ``u = (x + y^2, y)``, ``v = (x, y + x^2)`` and ``tau = (y, x)``, so
``v = tau u tau``.  Factorizations rely on degree reduction: for an
automorphism ``(f, h)`` of degree > 1 the leading form of the component of
higher degree is a constant times a power of the other leading form, and
subtracting that power lowers the degree.  Each subtraction peels off an
elementary map ``(x + c y^k, y)`` or ``(x, y + c x^k)``.

The order-3 group ``S = {(z x, z^2 y) : z^3 = 1}`` is never built (cube roots
of unity are not rational).  Conjugation by ``(z x, z^2 y)`` multiplies the
monomial ``x^a y^b`` of the ``m``-th component by ``z^(a + 2b - m)``, so
S-invariance is the congruence ``a + 2b = m (mod 3)`` on every monomial.
"""

from __future__ import annotations

import random
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .exactpoly import Polynomial
from .polymap import Automorphism, NotAnAutomorphism, PolyMap, compose, linear_part, translation_part

__all__ = [
    "AffineFactor",
    "AmalgamWord",
    "JonqFactor",
    "NoLimit",
    "NotInUnipotentInvariant",
    "PHI",
    "SFactor",
    "SWord",
    "TAU",
    "U",
    "V",
    "check_y_term",
    "free_word_eval",
    "invert",
    "is_member_f_closure",
    "jvk_factorize",
    "phi_power",
    "phi_power_jet",
    "s_generators",
    "s_normal_form",
    "torus_conjugation_limit",
]

X, Y = Polynomial.gens(2)
U = PolyMap([X + Y ** 2, Y])
V = PolyMap([X, Y + X ** 2])
TAU = PolyMap([Y, X])
U_INV = PolyMap([X - Y ** 2, Y])
V_INV = PolyMap([X, Y - X ** 2])
PHI = compose(U, V)
IDENTITY = PolyMap.identity(2)


class NoLimit(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInUnipotentInvariant(ValueError):
    """The map is not in the S-invariant part of the unipotent-at-origin group."""


# --- factors -----------------------------------------------------------------


@dataclass(frozen=True)
class JonqFactor:
    """``(a x + h(y), c y + d)``."""

    a: Fraction
    c: Fraction
    d: Fraction
    h: Polynomial

    def __post_init__(self):
        for name in ("a", "c", "d"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a == 0 or self.c == 0:
            raise ValueError("a and c must be nonzero")
        if any(m[0] for m in self.h.terms):
            raise ValueError("h must be a polynomial in y only")

    @classmethod
    def from_map(cls, g: PolyMap) -> JonqFactor:
        f, k = g.components
        a = f.coefficient((1, 0))
        h = f - X.scale(a)
        if k.degree() > 1 or k.coefficient((1, 0)) != 0 or any(m[0] for m in h.terms):
            raise ValueError(f"{g} is not triangular")
        return cls(a, k.coefficient((0, 1)), k.constant_term(), h)

    def to_map(self) -> PolyMap:
        return PolyMap([X.scale(self.a) + self.h, Y.scale(self.c) + self.d])

    def inverse(self) -> JonqFactor:
        yinv = (Y - self.d).scale(1 / self.c)
        hh = self.h.substitute([X, yinv])
        return JonqFactor(1 / self.a, 1 / self.c, -self.d / self.c, hh.scale(-1 / self.a))

    @property
    def degree(self) -> int:
        return max(1, self.h.degree())

    def in_base(self) -> bool:
        """Also affine, i.e. in the intersection of the two factors."""
        return self.h.degree() <= 1

    def to_json(self) -> dict:
        return {"a": str(self.a), "c": str(self.c), "d": str(self.d), "h": str(self.h), "map": str(self.to_map())}


@dataclass(frozen=True)
class AffineFactor:
    """``x -> A x + b``."""

    matrix: tuple[tuple[Fraction, ...], ...]
    translation: tuple[Fraction, ...]

    def __post_init__(self):
        if linalg.determinant([list(r) for r in self.matrix]) == 0:
            raise NotAnAutomorphism("singular affine factor")

    @classmethod
    def from_map(cls, g: PolyMap) -> AffineFactor:
        if g.degree() > 1:
            raise ValueError(f"{g} is not affine")
        return cls(tuple(tuple(r) for r in linear_part(g)), tuple(translation_part(g)))

    def to_map(self) -> PolyMap:
        return PolyMap.linear(self.matrix, self.translation)

    def inverse(self) -> AffineFactor:
        auto = Automorphism.affine(self.matrix, self.translation)
        return AffineFactor.from_map(auto.inverse)

    @property
    def degree(self) -> int:
        return 1

    def in_base(self) -> bool:
        return self.matrix[1][0] == 0

    def to_json(self) -> dict:
        return {
            "matrix": [[str(v) for v in row] for row in self.matrix],
            "translation": [str(v) for v in self.translation],
            "map": str(self.to_map()),
        }


Factor = JonqFactor | AffineFactor


def _kind(f: Factor) -> str:
    return "jonq" if isinstance(f, JonqFactor) else "affine"


def _as_kind(g: PolyMap, kind: str) -> Factor:
    return JonqFactor.from_map(g) if kind == "jonq" else AffineFactor.from_map(g)


@dataclass(frozen=True)
class AmalgamWord:
    """Reduced word alternating between triangular and affine factors."""

    factors: tuple[Factor, ...]

    def recompose(self) -> PolyMap:
        # right to left: substituting the growing map into a small factor is cheap
        result = IDENTITY
        for f in reversed(self.factors):
            result = compose(f.to_map(), result)
        return result

    @property
    def length(self) -> int:
        return len(self.factors)

    @property
    def kinds(self) -> tuple[str, ...]:
        return tuple(_kind(f) for f in self.factors)

    @property
    def jonq_degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.factors if isinstance(f, JonqFactor))

    def inverse(self) -> AmalgamWord:
        return AmalgamWord(tuple(f.inverse() for f in reversed(self.factors)))

    def to_json(self, source: PolyMap | None = None) -> dict:
        out = {"factors": [{"kind": _kind(f), "data": f.to_json()} for f in self.factors]}
        if source is not None:
            out["recomposition_check"] = self.recompose() == source
        return out


# --- degree reduction --------------------------------------------------------


def _proportional(top: Polynomial, base: Polynomial) -> Fraction | None:
    """``c`` with ``top == c * base``, or None."""
    if len(top) != len(base):
        return None
    mono = base.leading_monomial()
    c = top.coefficient(mono) / base.coefficient(mono)
    if c == 0 or top != base.scale(c):
        return None
    return c


def elementary_reduction(g: PolyMap) -> tuple[list[tuple[str, Fraction, int]], PolyMap]:
    """Write ``g = e_1 o ... o e_m o r`` with elementary ``e_i`` and affine ``r``.

    ``("x", c, k)`` stands for ``(x + c y^k, y)`` and ``("y", c, k)`` for
    ``(x, y + c x^k)``.  Raises :class:`NotAnAutomorphism` when no peeling
    step applies, which happens exactly for non-automorphisms.
    """
    if g.n != 2:
        raise ValueError("degree reduction is implemented for the plane only")
    f, h = g.components
    steps: list[tuple[str, Fraction, int]] = []
    cache: dict[str, list[Polynomial]] = {}
    while max(f.degree(), h.degree()) > 1:
        df, dh = f.degree(), h.degree()
        if df >= dh:
            side, big, small = "x", f, h
        else:
            side, big, small = "y", h, f
        dbig, dsmall = big.degree(), small.degree()
        if dsmall < 1 or dbig % dsmall:
            raise NotAnAutomorphism(f"{g} is not an automorphism: degrees {df}, {dh} admit no reduction")
        k = dbig // dsmall
        powers = cache.get(side)
        if powers is None or powers[1] != small:
            powers = [Polynomial.one(2), small]
            cache[side] = powers
        while len(powers) <= k:
            powers.append(powers[-1] * small)
        c = _proportional(big.leading_form(), powers[k].leading_form())
        if c is None:
            raise NotAnAutomorphism(f"{g} is not an automorphism: leading forms are not related by a power")
        reduced = big - powers[k].scale(c)
        steps.append((side, c, k))
        if side == "x":
            f = reduced
            cache.pop("y", None)
        else:
            h = reduced
            cache.pop("x", None)
    residual = PolyMap([f, h])
    if linalg.determinant(linear_part(residual)) == 0:
        raise NotAnAutomorphism(f"{g} is not an automorphism: degenerate affine remainder")
    return steps, residual


def _elementary_map(side: str, c: Fraction, k: int) -> PolyMap:
    if side == "x":
        return PolyMap([X + Y.power(k).scale(c), Y])
    return PolyMap([X, Y + X.power(k).scale(c)])


def jvk_factorize(g: PolyMap) -> AmalgamWord:
    """Reduced amalgamated-product word for an automorphism of the plane.

    Factors alternate between triangular (``jonq``) and ``affine``; interior
    factors never lie in their intersection.  The length, the kind pattern
    and the triangular degrees depend on ``g`` only.
    """
    steps, residual = elementary_reduction(g)
    raw: list[tuple[str, PolyMap]] = []
    for side, c, k in steps:
        if side == "x":
            raw.append(("jonq" if k >= 2 else "affine", _elementary_map("x", c, k)))
        elif k >= 2:
            raw.extend([("affine", TAU), ("jonq", _elementary_map("x", c, k)), ("affine", TAU)])
        else:
            raw.append(("affine", _elementary_map("y", c, k)))
    raw.append(("affine", residual))
    return AmalgamWord(tuple(_as_kind(m, kind) for kind, m in _normalize(raw)))


def _normalize(raw: list[tuple[str, PolyMap]]) -> list[tuple[str, PolyMap]]:
    word = list(raw)
    while True:
        changed = False
        # merge neighbours of the same kind
        merged: list[tuple[str, PolyMap]] = []
        for kind, m in word:
            if merged and merged[-1][0] == kind:
                merged[-1] = (kind, compose(merged[-1][1], m))
                changed = True
            else:
                merged.append((kind, m))
        word = merged
        # absorb base elements (both affine and triangular) into a neighbour
        if len(word) > 1:
            for i, (kind, m) in enumerate(word):
                if _in_base(m):
                    j = i - 1 if i > 0 else i + 1
                    other_kind, other = word[j]
                    combined = compose(other, m) if j < i else compose(m, other)
                    word[min(i, j)] = (other_kind, combined)
                    del word[max(i, j)]
                    changed = True
                    break
        if not changed:
            return word


def _in_base(m: PolyMap) -> bool:
    f, h = m.components
    return h.degree() <= 1 and h.coefficient((1, 0)) == 0 and f.degree_in(0) <= 1 and \
        all(e[0] == 0 or e == (1, 0) for e in f.terms) and f.degree() <= 1


def invert(g: PolyMap) -> Automorphism:
    """Exact inverse through the factorization; fails on non-automorphisms.

    The certificate ``inverse o g = id`` is evaluated by cancelling the factors
    of ``g`` one at a time from the left, so intermediate degrees only shrink.
    A left inverse of a polynomial endomorphism of affine space is two-sided.
    """
    word = jvk_factorize(g)
    rest = g
    for f in word.factors:
        rest = compose(f.inverse().to_map(), rest)
    if rest != IDENTITY:
        raise NotAnAutomorphism(f"factor cancellation left {rest}, not the identity")
    return Automorphism(g, word.inverse().recompose(), check=False)


# --- the S-invariant free product -------------------------------------------


def s_weight_violation(g: PolyMap) -> str | None:
    """First monomial breaking S-invariance, described in words, or None."""
    for m, comp in enumerate(g.components, start=1):
        for a, b in comp.monomials():
            if (a + 2 * b - m) % 3:
                return f"component {m} has monomial x^{a}*y^{b} with a + 2b = {a + 2 * b} not congruent to {m} mod 3"
    return None


def is_s_invariant(g: PolyMap) -> bool:
    return s_weight_violation(g) is None


def _as_violation(g: PolyMap) -> str | None:
    if g.n != 2:
        return "not a map of the plane"
    if any(v != 0 for v in translation_part(g)):
        return "origin is not fixed"
    if linear_part(g) != [[1, 0], [0, 1]]:
        return "linear part is not the identity"
    return s_weight_violation(g)


@dataclass(frozen=True)
class SFactor:
    """``(x + p(y), y)`` (kind ``J``) or ``(x, y + p(x))`` (kind ``Jminus``) with ``p(t) = t^2 f(t^3)``."""

    kind: str
    p: Polynomial

    @property
    def f_coefficients(self) -> tuple[Fraction, ...]:
        var = 1 if self.kind == "J" else 0
        top = max(((m[var] - 2) // 3 for m in self.p.terms), default=-1)
        coeffs = [Fraction(0)] * (top + 1)
        for m, c in self.p.terms.items():
            coeffs[(m[var] - 2) // 3] = Fraction(c)
        return tuple(coeffs)

    def to_map(self) -> PolyMap:
        if self.kind == "J":
            return PolyMap([X + self.p, Y])
        return PolyMap([X, Y + self.p])

    def to_json(self) -> dict:
        return {"kind": self.kind, "data": {"map": str(self.to_map()), "f": [str(c) for c in self.f_coefficients]}}


@dataclass(frozen=True)
class SWord:
    factors: tuple[SFactor, ...]

    @property
    def length(self) -> int:
        return len(self.factors)

    def recompose(self) -> PolyMap:
        # right to left: substituting the growing map into a small factor is cheap
        result = IDENTITY
        for f in reversed(self.factors):
            result = compose(f.to_map(), result)
        return result

    def to_json(self, source: PolyMap | None = None) -> dict:
        out = {"factors": [f.to_json() for f in self.factors]}
        if source is not None:
            out["recomposition_check"] = self.recompose() == source
        return out


def s_normal_form(g: PolyMap) -> SWord:
    """Unique alternating word over ``J = {(x + y^2 f(y^3), y)}`` and its swap conjugate."""
    reason = _as_violation(g)
    if reason:
        raise NotInUnipotentInvariant(reason)
    steps, residual = elementary_reduction(g)
    if residual != IDENTITY:
        raise NotInUnipotentInvariant(f"affine remainder {residual} is not the identity")
    factors: list[SFactor] = []
    current_side, acc = None, None
    for side, c, k in steps:
        if k % 3 != 2:
            raise NotInUnipotentInvariant(f"elementary factor of degree {k} is not of the form t^2 f(t^3)")
        term = (Y if side == "x" else X).power(k).scale(c)
        if side == current_side:
            acc = acc + term
        else:
            if current_side is not None:
                factors.append(SFactor("J" if current_side == "x" else "Jminus", acc))
            current_side, acc = side, term
    if current_side is not None:
        factors.append(SFactor("J" if current_side == "x" else "Jminus", acc))
    return SWord(tuple(f for f in factors if not f.p.is_zero()))


def is_member_f_closure(g: PolyMap) -> tuple[bool, str]:
    """Membership in the closure of <u, v>: fixes 0, unipotent linear part, S-invariant automorphism."""
    reason = _as_violation(g)
    if reason:
        return False, reason
    try:
        elementary_reduction(g)
    except NotAnAutomorphism as exc:
        return False, str(exc)
    return True, "fixes the origin, linear part is the identity, S-invariant"


# --- words in u and v --------------------------------------------------------

_LETTERS = {"u": U, "u^-1": U_INV, "v": V, "v^-1": V_INV}
_INVERSE_LETTER = {"u": "u^-1", "u^-1": "u", "v": "v^-1", "v^-1": "v"}


def _canon_letter(tok: str) -> str:
    t = tok.strip().replace(" ", "").replace("⁻¹", "^-1")
    aliases = {"U": "u^-1", "V": "v^-1", "u-1": "u^-1", "v-1": "v^-1"}
    t = aliases.get(t, t)
    if t not in _LETTERS:
        raise ValueError(f"unknown letter {tok!r}; use u, u^-1, v, v^-1")
    return t


def free_word_eval(word: Sequence[str]) -> PolyMap:
    """Compose the letters left to right: ``[u, v]`` gives ``u o v``."""
    result = IDENTITY
    for tok in word:
        result = compose(result, _LETTERS[_canon_letter(tok)])
    return result


def free_reduce(word: Sequence[str]) -> list[str]:
    out: list[str] = []
    for tok in map(_canon_letter, word):
        if out and out[-1] == _INVERSE_LETTER[tok]:
            out.pop()
        else:
            out.append(tok)
    return out


def syllables(word: Sequence[str]) -> list[tuple[str, int]]:
    """Blocks ``(generator, exponent)`` of a freely reduced word."""
    out: list[tuple[str, int]] = []
    for tok in free_reduce(word):
        gen, e = tok[0], (1 if len(tok) == 1 else -1)
        if out and out[-1][0] == gen:
            out[-1] = (gen, out[-1][1] + e)
        else:
            out.append((gen, e))
    return out


def reduced_words(max_length: int) -> list[list[str]]:
    """All nonempty freely reduced words over u, u^-1, v, v^-1 up to ``max_length``."""
    letters = list(_LETTERS)
    out, frontier = [], [[]]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for a in letters:
                if w and w[-1] == _INVERSE_LETTER[a]:
                    continue
                nxt.append(w + [a])
        out.extend(nxt)
        frontier = nxt
    return out


# --- powers of phi = u o v ---------------------------------------------------


def phi_power(k: int) -> PolyMap:
    """``phi^k`` by iterated composition ``phi o phi^(k-1)``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    result = PHI
    for _ in range(k - 1):
        result = compose(PHI, result)
    return result


def phi_power_recurrence(k: int) -> PolyMap:
    """Same map from ``f' = f + h^2 + 2 f^2 h + f^4``, ``h' = h + f^2`` (independent check)."""
    f, h = X, Y
    for _ in range(k):
        f2 = f * f
        f, h = f + h * h + f2.scale(2) * h + f2 * f2, h + f2
    return PolyMap([f, h])


def phi_power_jet(k: int, order: int) -> PolyMap:
    """``phi^k`` modulo terms of total degree above ``order`` (exact there, phi fixes 0)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    phi = PHI.truncate(order)
    result = phi
    for _ in range(k - 1):
        result = compose(phi, result, max_degree=order)
    return result


def check_y_term(k: int) -> Fraction:
    """Coefficient of ``y^(3k-1)`` in the first component of ``phi^k``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    n = 3 * k - 1
    return phi_power_jet(k, n).components[0].coefficient((0, n))


def phi_power_degree(k: int) -> int:
    """Degree of ``phi^k`` read off its restriction to the diagonal ``x = y = t``.

    All coefficients of ``phi^k`` are non-negative, so restricting to the
    diagonal cannot cancel the top-degree terms.
    """
    t = Polynomial.variable(1, 0)
    f, h = t, t
    for _ in range(k):
        f2 = f * f
        f, h = f + h * h + f2.scale(2) * h + f2 * f2, h + f2
    return max(f.degree(), h.degree())


# --- torus actions -----------------------------------------------------------


def torus_conjugate(g: PolyMap, t1, t2) -> PolyMap:
    """``(x / t1, y / t2) o g o (t1 x, t2 y)`` for nonzero rationals."""
    t1, t2 = Fraction(t1), Fraction(t2)
    if t1 == 0 or t2 == 0:
        raise ValueError("torus elements are nonzero")
    inner = PolyMap([X.scale(t1), Y.scale(t2)])
    outer = PolyMap([X.scale(1 / t1), Y.scale(1 / t2)])
    return compose(outer, compose(g, inner))


def torus_conjugation_limit(g: PolyMap, weights: tuple[int, int], jet_order: int | None = None) -> PolyMap:
    """Limit ``t -> 0`` of ``(t^-a x, t^-b y) o g o (t^a x, t^b y)``.

    In component ``m`` the monomial ``x^i y^j`` picks up ``t^(a i + b j - w_m)``
    with ``w = (a, b)``.  If any exponent is negative there is no limit.

    ``jet_order`` declares that ``g`` is only known modulo terms of total
    degree above it; this is accepted when ``a, b > 0`` and the jet is long
    enough to contain every term whose exponent could be zero or negative.
    """
    a, b = weights
    if jet_order is not None:
        if a <= 0 or b <= 0:
            raise ValueError("a truncated map needs positive weights")
        needed = max(a, b) // min(a, b)
        if jet_order < needed:
            raise ValueError(f"jet of order {jet_order} is too short; need {needed}")
    out = []
    for w, comp in zip((a, b), g.components):
        kept = {}
        for (i, j), c in comp.terms.items():
            e = a * i + b * j - w
            if e < 0:
                raise NoLimit(f"monomial x^{i}*y^{j} has t-exponent {e} < 0", witness=(i, j))
            if e == 0:
                kept[(i, j)] = c
        out.append(Polynomial(2, kept))
    return PolyMap(out)


def degeneration_witness(k: int) -> tuple[list[Fraction], PolyMap]:
    """Correct ``phi^(k+1)`` by ``(x + sum c_j y^(3j-1), y)`` and degenerate it.

    The ``c_j`` are solved one at a time (the system is unitriangular) so that
    the first component restricted to ``x = 0`` starts at ``y^(3k+2)``; the
    torus limit with weights ``(3k+2, 1)`` is then ``(x + c y^(3k+2), y)``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    top = 3 * k + 2
    power = phi_power_jet(k + 1, top)
    coeffs: list[Fraction] = []
    psi = power
    for j in range(1, k + 1):
        corr = Polynomial.zero(2)
        for i, c in enumerate(coeffs, start=1):
            corr = corr + Y.power(3 * i - 1).scale(c)
        psi = compose(power, PolyMap([X + corr, Y]), max_degree=top)
        coeffs.append(-psi.components[0].coefficient((0, 3 * j - 1)))
    corr = Polynomial.zero(2)
    for i, c in enumerate(coeffs, start=1):
        corr = corr + Y.power(3 * i - 1).scale(c)
    psi = compose(power, PolyMap([X + corr, Y]), max_degree=top)
    return coeffs, torus_conjugation_limit(psi, (top, 1), jet_order=top)


# --- constants -----------------------------------------------------------------

SGenerators = namedtuple("SGenerators", "u v tau s_weight_check t_action")


def s_generators() -> SGenerators:
    """``u``, ``v``, ``tau``, the S-invariance test and the torus conjugation."""
    return SGenerators(U, V, TAU, is_s_invariant, torus_conjugate)


# --- random tame automorphisms ---------------------------------------------------

CORPUS_SEED = 20240611


def random_jonq(rng: random.Random, max_degree: int = 5, coeff_range: int = 3) -> JonqFactor:
    deg = rng.randint(2, max_degree)
    terms = {}
    for e in range(deg + 1):
        if e == deg or rng.random() < 0.5:
            c = 0
            while c == 0:
                c = rng.randint(-coeff_range, coeff_range)
            terms[(0, e)] = c
    a = rng.choice([1, -1, 2, Fraction(1, 2)])
    c = rng.choice([1, -1, 3])
    d = rng.randint(-2, 2)
    return JonqFactor(Fraction(a), Fraction(c), Fraction(d), Polynomial(2, terms))


def random_affine_outside_base(rng: random.Random, coeff_range: int = 3) -> AffineFactor:
    while True:
        m = [[rng.randint(-coeff_range, coeff_range) for _ in range(2)] for _ in range(2)]
        if m[1][0] != 0 and m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0:
            break
    t = (Fraction(rng.randint(-2, 2)), Fraction(rng.randint(-2, 2)))
    return AffineFactor(tuple(tuple(Fraction(v) for v in r) for r in m), t)


def random_tame_word(rng: random.Random, max_length: int = 4, max_degree: int = 3) -> AmalgamWord:
    length = rng.randint(1, max_length)
    start_jonq = rng.random() < 0.5
    factors = []
    for i in range(length):
        if (i % 2 == 0) == start_jonq:
            factors.append(random_jonq(rng, max_degree))
        else:
            factors.append(random_affine_outside_base(rng))
    return AmalgamWord(tuple(factors))


def random_s_word(
    rng: random.Random, max_length: int = 5, max_f_degree: int = 3, degree_budget: int = 128
) -> SWord:
    """Random alternating word; the product of factor degrees stays within ``degree_budget``."""
    length = rng.randint(1, max_length)
    kind = rng.choice(["J", "Jminus"])
    factors = []
    total = 1
    for _ in range(length):
        allowed = [m for m in range(max_f_degree + 1) if total * (3 * m + 2) <= degree_budget]
        if not allowed:
            break
        deg = rng.choice(allowed)
        total *= 3 * deg + 2
        var = Y if kind == "J" else X
        p = Polynomial.zero(2)
        for m in range(deg + 1):
            if m == deg or rng.random() < 0.5:
                c = 0
                while c == 0:
                    c = Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2]))
                p = p + var.power(3 * m + 2).scale(c)
        factors.append(SFactor(kind, p))
        kind = "Jminus" if kind == "J" else "J"
    return SWord(tuple(factors))
