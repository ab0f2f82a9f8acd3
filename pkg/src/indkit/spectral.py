"""Locally finite vector fields: invariant subspaces, Jordan parts, exp/log, tori.

A field is locally finite when it preserves a finite-dimensional subspace
``V`` containing the coordinates.  Everything here reduces to linear algebra
on such a ``V``; because the coordinates generate the polynomial ring, a
linear map on ``V`` that comes from a derivation is pinned down by what it
does to the coordinates, which is how Jordan parts are lifted back to fields.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import linalg
from .exactpoly import Polynomial, grlex_key
from .polymap import Automorphism, PolyMap, compose
from .vectorfield import VectorField, apply, bracket, is_locally_nilpotent, pushforward

__all__ = [
    "CapExceeded",
    "InvariantSubspace",
    "JordanPair",
    "NotCertified",
    "TorusData",
    "common_invariant_subspace",
    "exp_lnd",
    "find_invariant_subspace",
    "jordan_decompose",
    "log_unipotent",
    "minimal_torus",
]


class CapExceeded(ValueError):
    """No invariant subspace was found below the degree cap."""


class NotCertified(ValueError):
    """A nilpotency or unipotency certificate could not be produced."""


class NotDiagonal(ValueError):
    pass


@dataclass
class InvariantSubspace:
    """A finite set of polynomials, starting with the coordinates, spanning an invariant subspace."""

    basis: list[Polynomial]
    fields: list[VectorField]
    _ech: linalg.SparseEchelon = field(repr=False, default=None)

    def __post_init__(self):
        if self._ech is None:
            self._ech = linalg.SparseEchelon(grlex_key, track=True)
            for p in self.basis:
                if not self._ech.insert(p.terms):
                    raise ValueError("basis polynomials are linearly dependent")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coordinates(self, p: Polynomial) -> list[Fraction] | None:
        combo = self._ech.express(p.terms)
        if combo is None:
            return None
        return [Fraction(combo.get(i, 0)) for i in range(len(self.basis))]

    def matrix_of(self, delta: VectorField) -> linalg.Matrix:
        """Matrix of ``delta`` on the basis (column j holds ``delta(basis[j])``)."""
        cols = []
        for b in self.basis:
            c = self.coordinates(apply(delta, b))
            if c is None:
                raise ValueError(f"{delta} does not preserve this subspace")
            cols.append(c)
        return [list(row) for row in zip(*cols)] if cols else []

    @property
    def matrix(self) -> linalg.Matrix:
        if len(self.fields) != 1:
            raise ValueError("matrix is only defined for a single field; use matrix_of")
        return self.matrix_of(self.fields[0])

    def field_from_matrix(self, mat: linalg.Matrix) -> VectorField:
        """The derivation whose values on the coordinates are read from ``mat``."""
        n = self.basis[0].nvars
        coeffs = []
        for i in range(n):
            p = Polynomial.zero(n)
            for k, b in enumerate(self.basis):
                if mat[k][i]:
                    p = p + b.scale(mat[k][i])
            coeffs.append(p)
        return VectorField(coeffs)


def common_invariant_subspace(fields: Sequence[VectorField], degree_cap: int) -> InvariantSubspace:
    """Smallest subspace containing the coordinates and stable under every field.

    Raises :class:`CapExceeded` as soon as a new independent polynomial has
    degree above ``degree_cap``.
    """
    if not fields:
        raise ValueError("need at least one field")
    n = fields[0].n
    ech = linalg.SparseEchelon(grlex_key)
    basis: list[Polynomial] = []
    for x in Polynomial.gens(n):
        ech.insert(x.terms)
        basis.append(x)
    i = 0
    while i < len(basis):
        p = basis[i]
        i += 1
        for f in fields:
            q = apply(f, p)
            if q.is_zero() or ech.contains(q.terms):
                continue
            if q.degree() > degree_cap:
                raise CapExceeded(f"{f} maps {p} to a polynomial of degree {q.degree()} > {degree_cap}")
            ech.insert(q.terms)
            basis.append(q)
    return InvariantSubspace(basis, list(fields))


def find_invariant_subspace(delta: VectorField, degree_cap: int) -> InvariantSubspace:
    return common_invariant_subspace([delta], degree_cap)


@dataclass
class JordanPair:
    semisimple_part: VectorField
    nilpotent_part: VectorField
    space: InvariantSubspace = field(repr=False)
    semisimple_matrix: linalg.Matrix = field(repr=False)
    nilpotent_matrix: linalg.Matrix = field(repr=False)

    def to_json(self) -> dict:
        return {
            "semisimple": str(self.semisimple_part),
            "nilpotent": str(self.nilpotent_part),
            "subspace": [str(b) for b in self.space.basis],
            "semisimple_matrix": [[str(v) for v in row] for row in self.semisimple_matrix],
            "nilpotent_matrix": [[str(v) for v in row] for row in self.nilpotent_matrix],
        }


def jordan_on_subspace(delta: VectorField, space: InvariantSubspace) -> JordanPair:
    a = space.matrix_of(delta)
    s, nmat = linalg.jordan_chevalley(a)
    ds = space.field_from_matrix(s)
    dn = delta - ds
    # the lifts are derivations by construction; check they act on all of V
    # exactly as the matrices say (this exercises Leibniz on basis products)
    if space.matrix_of(ds) != s or space.matrix_of(dn) != nmat:
        raise AssertionError("lifted Jordan parts disagree with the matrix decomposition")
    return JordanPair(ds, dn, space, s, nmat)


def jordan_decompose(delta: VectorField, degree_cap: int = 6) -> JordanPair:
    """``delta = delta_s + delta_n`` with commuting semisimple and nilpotent parts."""
    space = find_invariant_subspace(delta, degree_cap)
    return jordan_on_subspace(delta, space)


def exp_lnd(delta: VectorField, certify_bound: int = 32) -> Automorphism:
    """The time-one flow ``x_i -> sum_k delta^k(x_i) / k!`` of a locally nilpotent field."""
    if is_locally_nilpotent(delta, certify_bound) is not True:
        raise NotCertified(f"{delta} is not certified locally nilpotent within {certify_bound} steps")
    return Automorphism(_exp_map(delta), _exp_map(-delta), check=True)


def _exp_map(delta: VectorField) -> PolyMap:
    comps = []
    for x in Polynomial.gens(delta.n):
        total = Polynomial.zero(delta.n)
        term = x
        k = 0
        while not term.is_zero():
            total = total + term.scale(Fraction(1, factorial(k)))
            term = apply(delta, term)
            k += 1
        comps.append(total)
    return PolyMap(comps)


def log_unipotent(g: Automorphism | PolyMap, certify_bound: int = 32) -> VectorField:
    """Inverse of :func:`exp_lnd`: ``x_i -> sum_k (-1)^(k+1) (g* - id)^k (x_i) / k``."""
    fwd = g.forward if isinstance(g, Automorphism) else g
    n = fwd.n
    coeffs = []
    for x in Polynomial.gens(n):
        total = Polynomial.zero(n)
        term = fwd.pullback(x) - x
        k = 1
        while not term.is_zero():
            if k > certify_bound:
                raise NotCertified(f"(g* - id)^k(x) does not vanish for k <= {certify_bound}")
            total = total + term.scale(Fraction((-1) ** (k + 1), k))
            term = fwd.pullback(term) - term
            k += 1
        coeffs.append(total)
    delta = VectorField(coeffs)
    if is_locally_nilpotent(delta, certify_bound) is not True or _exp_map(delta) != fwd:
        raise NotCertified(f"{fwd} is not the flow of a locally nilpotent field")
    return delta


# --- adjoint action ----------------------------------------------------------


def ad_invariant_span(delta: VectorField, eta: VectorField, dim_cap: int = 64) -> list[VectorField]:
    """Basis ``eta, ad(delta) eta, ad(delta)^2 eta, ...`` up to the first dependence."""
    from .liealg import LieSpan

    span = LieSpan(delta.n)
    out = []
    current = eta
    while span.add(current):
        out.append(current)
        if len(out) > dim_cap:
            raise CapExceeded("ad-orbit exceeded the dimension cap")
        current = bracket(delta, current)
    return out


def ad_matrix(delta: VectorField, basis: Sequence[VectorField]) -> linalg.Matrix:
    """Matrix of ``ad delta`` on the span of ``basis`` (columns are images)."""
    from .liealg import LieSpan

    span = LieSpan(delta.n, basis)
    # express via a tracked echelon on flattened vectors
    ech = linalg.SparseEchelon(lambda k: (grlex_key(k[1]), -k[0]), track=True)
    for b in basis:
        ech.insert(b.to_vector())
    cols = []
    for b in basis:
        img = bracket(delta, b)
        if not span.contains(img):
            raise ValueError("span is not ad-invariant")
        combo = ech.express(img.to_vector())
        cols.append([Fraction(combo.get(i, 0)) for i in range(len(basis))])
    return [list(r) for r in zip(*cols)]


# --- minimal tori --------------------------------------------------------------


@dataclass
class TorusData:
    """Smallest torus whose Lie algebra contains a diagonal toral algebra.

    ``weight_matrix[j][i]`` is the weight of coordinate ``i`` under torus
    factor ``j``; ``generators[j]`` is the corresponding diagonal field and
    ``input_coordinates[k]`` writes input field ``k`` on those generators.
    """

    rank: int
    weight_matrix: list[list[int]]
    lattice_basis: list[list[Fraction]]
    generators: list[VectorField]
    input_coordinates: list[list[Fraction]]

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "weight_matrix": self.weight_matrix,
            "lattice_basis": [[str(v) for v in row] for row in self.lattice_basis],
            "generators": [str(g) for g in self.generators],
            "input_coordinates": [[str(v) for v in row] for row in self.input_coordinates],
        }


def diagonal_weights(delta: VectorField) -> list[Fraction]:
    """``c_i`` with ``delta(x_i) = c_i x_i``; raises if the field is not diagonal."""
    out = []
    for i, (x, c) in enumerate(zip(Polynomial.gens(delta.n), delta.coefficients)):
        if c.is_zero():
            out.append(Fraction(0))
            continue
        mono = [0] * delta.n
        mono[i] = 1
        if set(c.terms) != {tuple(mono)}:
            raise NotDiagonal(f"{delta} does not act diagonally on the monomials")
        out.append(c.coefficient(mono))
    return out


def minimal_torus(toral_basis: Sequence[VectorField], degree_cap: int = 6,
                  conjugator: Automorphism | None = None) -> TorusData:
    """Rank and weights of the smallest torus containing a diagonal toral algebra.

    The weights of all monomials up to ``degree_cap`` generate a lattice; its
    Hermite basis ``mu_1..mu_k`` gives the torus ``(G_m)^k`` acting on the
    coordinate ``x_i`` with the integer weights of ``x_i`` on that basis.
    For diagonal fields the lattice is already generated in degree one.
    """
    fields = list(toral_basis)
    if not fields:
        raise ValueError("need at least one field")
    n = fields[0].n
    if conjugator is not None:
        fields = [pushforward(conjugator, f) for f in fields]
    for a, b in itertools.combinations(fields, 2):
        if not bracket(a, b).is_zero():
            raise ValueError("toral fields must commute")
    m = len(fields)
    rows = [diagonal_weights(f) for f in fields]
    coord_w = [[rows[k][i] for k in range(m)] for i in range(n)]
    weights = set()
    for d in range(1, degree_cap + 1):
        for mono in _monomials(n, d):
            w = tuple(sum((e * coord_w[i][k] for i, e in enumerate(mono)), Fraction(0)) for k in range(m))
            weights.add(w)
    den = 1
    for w in weights:
        for v in w:
            den = den * v.denominator // _gcd(den, v.denominator)
    hnf = linalg.hermite_normal_form([[int(v * den) for v in w] for w in sorted(weights)])
    lattice = [[Fraction(v, den) for v in row] for row in hnf]
    rank = len(lattice)
    # integer coordinates of each coordinate weight on the lattice basis
    wmat = [[0] * n for _ in range(rank)]
    basis_cols = [list(col) for col in zip(*lattice)] if lattice else []
    for i in range(n):
        if rank == 0:
            continue
        sol = linalg.solve(basis_cols, coord_w[i])
        if sol is None or any(s.denominator != 1 for s in sol):
            raise AssertionError("coordinate weight outside its own lattice")
        for j in range(rank):
            wmat[j][i] = int(sol[j])
    gens = []
    for j in range(rank):
        coeffs = [x.scale(wmat[j][i]) for i, x in enumerate(Polynomial.gens(n))]
        gens.append(VectorField(coeffs))
    if conjugator is not None:
        gens = [pushforward(conjugator.inverted(), g) for g in gens]
    input_coords = [[lattice[j][k] for j in range(rank)] for k in range(m)]
    return TorusData(rank, wmat, lattice, gens, input_coords)


def torus_contains(torus: TorusData, delta: VectorField) -> list[Fraction] | None:
    """Coefficients writing ``delta`` on the torus generators, or None."""
    if not torus.generators:
        return [] if delta.is_zero() else None
    ech = linalg.SparseEchelon(lambda k: (grlex_key(k[1]), -k[0]), track=True)
    for g in torus.generators:
        ech.insert(g.to_vector())
    combo = ech.express(delta.to_vector())
    if combo is None:
        return None
    return [Fraction(combo.get(i, 0)) for i in range(len(torus.generators))]


def _monomials(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _monomials(n - 1, d - first):
            yield (first,) + rest


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
