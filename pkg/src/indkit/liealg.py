"""Finite-dimensional Lie algebras of polynomial vector fields.

Fields are flattened into sparse vectors keyed by ``(coordinate, monomial)``
and kept in reduced echelon form, so a span has exactly one basis and two
spans are equal iff their bases are.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .exactpoly import Polynomial, grlex_key
from .vectorfield import VectorField, bracket, is_locally_nilpotent

__all__ = [
    "ClosureReport",
    "LieSpan",
    "NotClosed",
    "NotJSaturated",
    "NotSolvable",
    "TheoremBVerdict",
    "check_theorem_b",
    "derived_series",
    "is_solvable",
    "j_saturate",
    "lie_closure",
    "orbit_tangent_dim",
    "split_solvable",
]

DEFAULT_DIM_CAP = 64
DEFAULT_DEPTH_CAP = 12


class NotClosed(ValueError):
    """The span is not known to be closed under the bracket."""


class NotSolvable(ValueError):
    pass


class NotJSaturated(ValueError):
    """A Jordan part of an element lies outside the algebra."""

    def __init__(self, message: str, fields: Sequence[VectorField] = ()):
        super().__init__(message)
        self.fields = list(fields)


def field_key(k: tuple[int, tuple]) -> tuple:
    # graded-lex on the monomial, then smaller coordinate index first
    coord, mono = k
    return (grlex_key(mono), -coord)


class LieSpan:
    """A linear span of vector fields in reduced echelon form.

    ``closed`` records whether the span is known to be a Lie subalgebra.
    """

    def __init__(self, n: int, fields: Iterable[VectorField] = (), closed: bool = False):
        self.n = n
        self._ech = linalg.SparseEchelon(field_key)
        for f in fields:
            self.add(f)
        self.closed = closed

    @classmethod
    def zero(cls, n: int) -> LieSpan:
        return cls(n, closed=True)

    def add(self, f: VectorField) -> bool:
        if f.n != self.n:
            raise ValueError(f"dimension mismatch: span in {self.n}, field in {f.n}")
        return self._ech.insert(f.to_vector())

    def reduce(self, f: VectorField) -> VectorField:
        rem, _ = self._ech.reduce(f.to_vector())
        return VectorField.from_vector(self.n, rem)

    def contains(self, f: VectorField) -> bool:
        return self._ech.contains(f.to_vector())

    def __contains__(self, f: VectorField) -> bool:
        return self.contains(f)

    def contains_span(self, other: LieSpan) -> bool:
        return all(self.contains(f) for f in other.basis)

    @property
    def basis(self) -> list[VectorField]:
        return [VectorField.from_vector(self.n, row) for row in self._ech.sorted_rows()]

    @property
    def dimension(self) -> int:
        return len(self._ech)

    def __len__(self) -> int:
        return self.dimension

    def __eq__(self, other) -> bool:
        return isinstance(other, LieSpan) and self.n == other.n and self.basis == other.basis

    def __repr__(self) -> str:
        return f"LieSpan(dim={self.dimension}, basis={[str(b) for b in self.basis]})"

    def coordinates(self, f: VectorField) -> list[Fraction] | None:
        """Coefficients of ``f`` on :attr:`basis`, or None if ``f`` is outside."""
        basis = self.basis
        vec = f.to_vector()
        rem, _ = self._ech.reduce(vec)
        if rem:
            return None
        # rows have leading one and are mutually reduced: read off pivots
        pivots = [self._ech.pivot(b.to_vector()) for b in basis]
        return [Fraction(vec.get(p, 0)) for p in pivots]

    def is_bracket_closed(self) -> bool:
        basis = self.basis
        return all(self.contains(bracket(a, b)) for i, a in enumerate(basis) for b in basis[i + 1:])


@dataclass
class ClosureReport:
    span: LieSpan
    status: str
    depth_reached: int

    @property
    def dimension(self) -> int:
        return self.span.dimension

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "dimension": self.dimension,
            "depth": self.depth_reached,
            "basis": [str(b) for b in self.span.basis],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def lie_closure(generators: Sequence[VectorField], dim_cap: int = DEFAULT_DIM_CAP,
                depth_cap: int = DEFAULT_DEPTH_CAP) -> ClosureReport:
    """Bracket until nothing new appears, or until a cap is hit.

    Each pass brackets the fields found in the previous pass against every
    field found so far; remainders are inserted in a fixed order.
    """
    if not generators:
        raise ValueError("need at least one generator")
    if dim_cap < 1 or depth_cap < 1:
        raise ValueError("caps must be at least 1")
    n = generators[0].n
    span = LieSpan(n)
    found: list[VectorField] = []
    for g in generators:
        rem = span.reduce(g)
        if not rem.is_zero():
            span.add(rem)
            found.append(rem)
    if span.dimension > dim_cap:
        return ClosureReport(span, "dim_cap_exceeded", 0)
    new = list(found)
    depth = 0
    while new:
        if depth == depth_cap:
            return ClosureReport(span, "depth_cap_exceeded", depth)
        depth += 1
        added = []
        for a in new:
            for b in found:
                if a is b:
                    continue
                rem = span.reduce(bracket(a, b))
                if rem.is_zero():
                    continue
                span.add(rem)
                added.append(rem)
                if span.dimension > dim_cap:
                    return ClosureReport(span, "dim_cap_exceeded", depth)
        found.extend(added)
        new = added
    span.closed = True
    return ClosureReport(span, "closed", depth)


def _require_closed(span: LieSpan) -> None:
    if not span.closed:
        if not span.is_bracket_closed():
            raise NotClosed("span is not closed under the bracket")
        span.closed = True


def bracket_span(a: LieSpan, b: LieSpan) -> LieSpan:
    """``[A, B]`` as a span (closed when A and B are ideals of a common algebra)."""
    out = LieSpan(a.n)
    for x in a.basis:
        for y in b.basis:
            out.add(bracket(x, y))
    return out


def derived_series(span: LieSpan, max_steps: int = 16) -> list[LieSpan]:
    """``L, [L, L], [[L, L], [L, L]], ...`` until zero, stabilization or ``max_steps``."""
    _require_closed(span)
    series = [span]
    current = span
    for _ in range(max_steps):
        if current.dimension == 0:
            break
        nxt = bracket_span(current, current)
        nxt.closed = True
        series.append(nxt)
        if nxt.dimension == current.dimension:
            # derived subalgebra is contained in current: equal dims means equal
            break
        current = nxt
    return series


def is_solvable(span: LieSpan) -> bool:
    return derived_series(span, max_steps=span.dimension + 1)[-1].dimension == 0


def orbit_tangent_dim(generators: Sequence[VectorField] | LieSpan, point: Sequence,
                      dim_cap: int = DEFAULT_DIM_CAP, depth_cap: int = DEFAULT_DEPTH_CAP) -> int:
    """Rank of the closed span's basis evaluated at ``point``."""
    if isinstance(generators, LieSpan):
        span = generators
        _require_closed(span)
    else:
        report = lie_closure(list(generators), dim_cap, depth_cap)
        if report.status != "closed":
            raise NotClosed(f"closure did not terminate: {report.status}")
        span = report.span
    pt = [Fraction(v) for v in point]
    rows = [list(f.at(pt)) for f in span.basis]
    return linalg.rank(rows) if rows else 0


# --- solvable algebras: Jordan parts, splitting, saturation -----------------


def _jordan_parts_in(span: LieSpan, degree_cap: int):
    from .spectral import common_invariant_subspace, jordan_on_subspace

    space = common_invariant_subspace(span.basis, degree_cap)
    parts = [jordan_on_subspace(b, space) for b in span.basis]
    return space, parts


def split_solvable(span: LieSpan, degree_cap: int = 6) -> tuple[LieSpan, LieSpan]:
    """Split ``L = S + L_n`` with ``S`` toral and ``L_n`` the nilpotent ideal.

    ``L`` must be closed, solvable and contain the Jordan parts of its
    elements (see :func:`j_saturate`).  ``S`` is grown one semisimple part at
    a time inside the centralizer of what has been found so far; it stops
    being extendable exactly when every element of that centralizer has its
    semisimple part in ``S``.
    """
    from .spectral import common_invariant_subspace, jordan_on_subspace

    _require_closed(span)
    if not is_solvable(span):
        raise NotSolvable("the algebra is not solvable")
    n = span.n
    space = common_invariant_subspace(span.basis, degree_cap)
    toral = LieSpan(n)
    toral_list: list[VectorField] = []
    while True:
        cent = centralizer(span, toral_list)
        grew = False
        for mu in cent.basis:
            pair = jordan_on_subspace(mu, space)
            if not span.contains(pair.semisimple_part) or not span.contains(pair.nilpotent_part):
                raise NotJSaturated(f"Jordan parts of {mu} are not in the algebra; j_saturate first",
                                    [pair.semisimple_part, pair.nilpotent_part])
            if not toral.contains(pair.semisimple_part):
                toral.add(pair.semisimple_part)
                toral_list.append(pair.semisimple_part)
                grew = True
                break
        if not grew:
            break
    cent = centralizer(span, toral_list)
    nil = bracket_span(span, span)
    for mu in cent.basis:
        nil.add(jordan_on_subspace(mu, space).nilpotent_part)
    toral.closed = True
    nil.closed = True
    if toral.dimension + nil.dimension != span.dimension:
        raise AssertionError("toral part and nilpotent ideal do not span the algebra")
    for f in nil.basis:
        if not linalg.is_nilpotent_matrix(space.matrix_of(f)):
            raise AssertionError(f"{f} is not nilpotent on the invariant subspace")
    return toral, nil


def centralizer(span: LieSpan, fields: Sequence[VectorField]) -> LieSpan:
    """Elements of ``span`` commuting with every field in ``fields``."""
    basis = span.basis
    if not fields:
        out = LieSpan(span.n, basis)
        out.closed = True
        return out
    # solve sum c_k [f, b_k] = 0 for all f, over all (coordinate, monomial) keys
    keys: dict = {}
    columns = []
    for b in basis:
        col = {}
        for idx, f in enumerate(fields):
            for k, v in bracket(f, b).to_vector().items():
                col[(idx, k)] = v
                keys.setdefault((idx, k), len(keys))
        columns.append(col)
    rows = [[Fraction(0)] * len(basis) for _ in keys]
    for j, col in enumerate(columns):
        for k, v in col.items():
            rows[keys[k]][j] = v
    sols = linalg.nullspace(rows) if rows else [[Fraction(int(i == j)) for j in range(len(basis))] for i in range(len(basis))]
    out = LieSpan(span.n)
    for s in sols:
        acc = VectorField.zero(span.n)
        for c, b in zip(s, basis):
            if c:
                acc = acc + b.scale(c)
        out.add(acc)
    out.closed = True
    return out


def j_saturate(span: LieSpan, degree_cap: int = 6, dim_cap: int = DEFAULT_DIM_CAP,
               depth_cap: int = DEFAULT_DEPTH_CAP) -> LieSpan:
    """Smallest bracket-closed span containing ``span`` and all Jordan parts of its elements."""
    _require_closed(span)
    if not is_solvable(span):
        raise NotSolvable("the algebra is not solvable")
    current = span
    while True:
        _, parts = _jordan_parts_in(current, degree_cap)
        extra = []
        for pair in parts:
            for f in (pair.semisimple_part, pair.nilpotent_part):
                if not current.contains(f):
                    extra.append(f)
        if not extra:
            try:
                split_solvable(current, degree_cap)
                return current
            except NotJSaturated as exc:
                extra = [f for f in exc.fields if not current.contains(f)]
        report = lie_closure(current.basis + extra, dim_cap, depth_cap)
        if report.status != "closed":
            raise NotClosed(f"saturation did not close: {report.status}")
        current = report.span
        if not is_solvable(current):
            raise NotSolvable("saturation produced a non-solvable algebra")


# --- Theorem B witness ---------------------------------------------------------


@dataclass
class TheoremBVerdict:
    verdict: str
    dimension: int | None
    closure: ClosureReport
    witness_dimension: int | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "dimension": self.dimension,
            "witness_dimension": self.witness_dimension,
            "closure": self.closure.to_json(),
            "detail": self.detail,
        }


class NotCertifiedLND(ValueError):
    pass


def check_theorem_b(lnd_generators: Sequence[VectorField], dim_cap: int = DEFAULT_DIM_CAP,
                    depth_cap: int = DEFAULT_DEPTH_CAP, nilpotency_bound: int = 32,
                    degree_cap: int = 8) -> TheoremBVerdict:
    """Closure-based evidence that LND generators span a unipotent algebraic group.

    Verdicts: ``unipotent-algebraic`` (closed, solvable, and every basis field
    is nilpotent on one invariant generating subspace), ``algebraic-not-solvable``
    (closed but not solvable) and ``undetermined`` (a cap was hit).
    """
    from .spectral import CapExceeded, common_invariant_subspace

    for g in lnd_generators:
        if is_locally_nilpotent(g, nilpotency_bound) is not True:
            raise NotCertifiedLND(f"{g} is not certified locally nilpotent within {nilpotency_bound} steps")
    report = lie_closure(list(lnd_generators), dim_cap, depth_cap)
    if report.status != "closed":
        return TheoremBVerdict("undetermined", None, report, detail=report.status)
    span = report.span
    if not is_solvable(span):
        return TheoremBVerdict("algebraic-not-solvable", span.dimension, report)
    try:
        space = common_invariant_subspace(span.basis, degree_cap)
    except CapExceeded as exc:
        return TheoremBVerdict("undetermined", span.dimension, report, detail=str(exc))
    for f in span.basis:
        if not linalg.is_nilpotent_matrix(space.matrix_of(f)):
            return TheoremBVerdict("undetermined", span.dimension, report,
                                   detail=f"{f} is not nilpotent on the invariant subspace")
    return TheoremBVerdict("unipotent-algebraic", span.dimension, report, witness_dimension=len(space.basis))
