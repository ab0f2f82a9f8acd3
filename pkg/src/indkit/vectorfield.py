"""Polynomial vector fields on affine n-space, viewed as derivations.

``VectorField([f1, ..., fn])`` is the derivation ``sum_i f_i d/dx_i``.  A
derivation of the polynomial ring is determined by its values on the
coordinates, so every operation here works on those values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .exactpoly import ParseError, Polynomial, grlex_key, parse_polynomial
from .polymap import Automorphism, PolyMap, split_top_level

__all__ = [
    "NonzeroDivergence",
    "VectorField",
    "apply",
    "bracket",
    "divergence",
    "expand_in_partial_basis",
    "in_lambda",
    "is_locally_nilpotent",
    "parse_field",
    "partial_basis_field",
    "pushforward",
]


class NonzeroDivergence(ValueError):
    pass


class VectorField:
    __slots__ = ("coefficients", "_hash")

    def __init__(self, coefficients: Sequence[Polynomial]):
        coeffs = tuple(coefficients)
        if not coeffs:
            raise ValueError("a vector field needs at least one coefficient")
        n = len(coeffs)
        for c in coeffs:
            if c.nvars != n:
                raise ValueError(f"coefficient {c} lives in {c.nvars} variables, expected {n}")
        self.coefficients = coeffs
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> VectorField:
        return cls([Polynomial.zero(n)] * n)

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> VectorField:
        return parse_field(text, nvars)

    @classmethod
    def from_vector(cls, n: int, vec: Mapping[tuple[int, tuple], object]) -> VectorField:
        """Inverse of :meth:`to_vector`."""
        buckets: list[dict] = [{} for _ in range(n)]
        for (i, mono), c in vec.items():
            buckets[i][mono] = c
        return cls([Polynomial(n, b) for b in buckets])

    @property
    def n(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, i: int) -> Polynomial:
        return self.coefficients[i]

    def to_vector(self) -> dict[tuple[int, tuple], Fraction]:
        """Flatten to a sparse vector keyed by ``(coordinate index, monomial)``."""
        return {
            (i, mono): Fraction(c)
            for i, poly in enumerate(self.coefficients)
            for mono, c in poly.terms.items()
        }

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def degree(self) -> int:
        return max(c.degree() for c in self.coefficients)

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply(self, p)

    def _check(self, other: VectorField) -> None:
        if not isinstance(other, VectorField):
            raise TypeError("expected a VectorField")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: VectorField) -> VectorField:
        self._check(other)
        return VectorField([a + b for a, b in zip(self.coefficients, other.coefficients)])

    def __sub__(self, other: VectorField) -> VectorField:
        self._check(other)
        return VectorField([a - b for a, b in zip(self.coefficients, other.coefficients)])

    def __neg__(self) -> VectorField:
        return VectorField([-a for a in self.coefficients])

    def scale(self, c) -> VectorField:
        return VectorField([a.scale(c) for a in self.coefficients])

    def __mul__(self, c) -> VectorField:
        if isinstance(c, Polynomial):
            return VectorField([a * c for a in self.coefficients])
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorField) and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coefficients)
        return self._hash

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coefficients) + "]"

    def __repr__(self) -> str:
        return f"VectorField({str(self)!r})"

    def at(self, point: Sequence) -> tuple[Fraction, ...]:
        """Value of the field at a point."""
        return tuple(c.evaluate(point) for c in self.coefficients)


def parse_field(text: str, nvars: int | None = None) -> VectorField:
    """Parse ``[p1, ..., pn]`` meaning ``p1 d/dx1 + ... + pn d/dxn``."""
    parts = split_top_level(text, "[", "]")
    n = len(parts) if nvars is None else nvars
    if n != len(parts):
        raise ParseError(f"field has {len(parts)} coefficients but {n} variables")
    return VectorField([parse_polynomial(p, n) for p in parts])


def apply(delta: VectorField, p: Polynomial) -> Polynomial:
    """``delta(p) = sum_i f_i dp/dx_i``."""
    if p.nvars != delta.n:
        raise ValueError(f"dimension mismatch: field on {delta.n}, polynomial in {p.nvars}")
    out = Polynomial.zero(p.nvars)
    for i, f in enumerate(delta.coefficients):
        if f.is_zero():
            continue
        d = p.partial(i)
        if not d.is_zero():
            out = out + f * d
    return out


def bracket(delta: VectorField, eta: VectorField) -> VectorField:
    """Commutator ``[delta, eta] = delta o eta - eta o delta``."""
    delta._check(eta)
    return VectorField([apply(delta, b) - apply(eta, a) for a, b in zip(delta.coefficients, eta.coefficients)])


def divergence(delta: VectorField) -> Polynomial:
    out = Polynomial.zero(delta.n)
    for i, f in enumerate(delta.coefficients):
        out = out + f.partial(i)
    return out


def pushforward(g: Automorphism | PolyMap, delta: VectorField, inverse: PolyMap | None = None) -> VectorField:
    """Conjugate ``delta`` by ``g``: the field ``p -> (g^-1)*( delta(g*(p)) )``.

    ``g`` is normally an :class:`Automorphism`; a bare map is accepted together
    with an explicit ``inverse``.
    """
    if isinstance(g, Automorphism):
        fwd, inv = g.forward, g.inverse
    else:
        if inverse is None:
            raise ValueError("pushforward by a bare map needs its inverse")
        fwd, inv = g, inverse
    if fwd.n != delta.n:
        raise ValueError(f"dimension mismatch: map on {fwd.n}, field on {delta.n}")
    return VectorField([inv.pullback(apply(delta, comp)) for comp in fwd.components])


def is_locally_nilpotent(delta: VectorField, bound: int) -> bool | None:
    """Decide local nilpotency from the iterates ``delta^k(x_i)``, ``k <= bound``.

    Returns True when every coordinate is killed within ``bound`` steps (the
    coordinates generate the ring).  Returns False when some coordinate's
    iterates become linearly dependent without reaching zero: their span is
    then a finite invariant subspace on which ``delta`` is not nilpotent.
    Returns None (inconclusive) otherwise.
    """
    from .linalg import SparseEchelon

    if bound < 1:
        raise ValueError("bound must be at least 1")
    verdict: bool | None = True
    for x in Polynomial.gens(delta.n):
        span = SparseEchelon(grlex_key)
        q = x
        killed = False
        for _ in range(bound + 1):
            if q.is_zero():
                killed = True
                break
            if not span.insert(q.terms):
                # q in span of earlier nonzero iterates: finite, non-nilpotent orbit
                return False
            q = apply(delta, q)
        if not killed:
            verdict = None
    return verdict


# --- the divergence-free basis of the plane --------------------------------


def in_lambda(i: int, j: int) -> bool:
    return i >= -1 and j >= -1 and (i, j) != (-1, -1)


def partial_basis_field(i: int, j: int) -> VectorField:
    """``(j+1) x^(i+1) y^j d/dx - (i+1) x^i y^(j+1) d/dy``."""
    if not in_lambda(i, j):
        raise ValueError(f"({i}, {j}) is not in the index set: need i, j >= -1, not both -1")
    first = Polynomial(2, {(i + 1, j): j + 1}) if j + 1 else Polynomial.zero(2)
    second = Polynomial(2, {(i, j + 1): -(i + 1)}) if i + 1 else Polynomial.zero(2)
    return VectorField([first, second])


def expand_in_partial_basis(delta: VectorField) -> dict[tuple[int, int], Fraction]:
    """Coefficients ``c_ij`` with ``delta = sum c_ij d_ij`` for a divergence-free plane field."""
    if delta.n != 2:
        raise ValueError("the partial basis lives in the plane")
    if not divergence(delta).is_zero():
        raise NonzeroDivergence(f"divergence of {delta} is {divergence(delta)}")
    coeffs: dict[tuple[int, int], Fraction] = {}
    # x^a y^b d/dx only appears in d_(a-1, b), with weight b + 1
    for (a, b), c in delta.coefficients[0].terms.items():
        coeffs[(a - 1, b)] = Fraction(c) / (b + 1)
    rest = delta
    for (i, j), c in coeffs.items():
        rest = rest - partial_basis_field(i, j).scale(c)
    # what is left is h(x) d/dy; x^a d/dy is -(a+1)^-1 d_(a, -1)
    for (a, b), c in rest.coefficients[1].terms.items():
        if b != 0:
            raise AssertionError("divergence-free remainder must not depend on y")
        coeffs[(a, -1)] = coeffs.get((a, -1), 0) - Fraction(c) / (a + 1)
    return {k: v for k, v in sorted(coeffs.items()) if v != 0}


def weight_support(delta: VectorField) -> set[tuple[int, int]]:
    return set(expand_in_partial_basis(delta))


def is_s_invariant_field(delta: VectorField) -> bool:
    """Invariance under conjugation by ``(zeta x, zeta^2 y)``, ``zeta^3 = 1``.

    The monomial ``x^a y^b`` in the ``m``-th coefficient picks up
    ``zeta^(a + 2b - m)``, so invariance is ``a + 2b = m (mod 3)``.
    """
    if delta.n != 2:
        raise ValueError("S acts on the plane")
    for m, comp in enumerate(delta.coefficients, start=1):
        for a, b in comp.terms:
            if (a + 2 * b - m) % 3:
                return False
    return True


def sort_fields(fields: Sequence[VectorField]) -> list[VectorField]:
    """Deterministic order used when batches of candidates are reduced."""
    def key(f: VectorField):
        vec = f.to_vector()
        lead = max(vec, key=lambda k: (grlex_key(k[1]), -k[0])) if vec else None
        return (lead is None, (grlex_key(lead[1]), -lead[0]) if lead else (), str(f))
    return sorted(fields, key=key)
