import random
from fractions import Fraction

import pytest

from indkit.acceptance import random_lnd, random_locally_finite
from indkit.exactpoly import Polynomial
from indkit.linalg import identity, is_nilpotent_matrix, is_semisimple_matrix, jordan_chevalley
from indkit.plane import U
from indkit.polymap import Automorphism, PolyMap, compose, parse_map
from indkit.spectral import (
    CapExceeded,
    NotCertified,
    NotDiagonal,
    ad_invariant_span,
    ad_matrix,
    exp_lnd,
    find_invariant_subspace,
    jordan_decompose,
    log_unipotent,
    minimal_torus,
    torus_contains,
)
from indkit.vectorfield import VectorField, bracket, parse_field, pushforward

F = parse_field


class TestInvariantSubspace:
    def test_nilpotent(self):
        space = find_invariant_subspace(F("[y, 0]"), 4)
        assert space.dimension == 2
        m = space.matrix_of(F("[y, 0]"))
        assert is_nilpotent_matrix(m) and any(any(r) for r in m)

    def test_euler(self):
        space = find_invariant_subspace(F("[x, y]"), 4)
        assert space.matrix_of(F("[x, y]")) == identity(2)

    def test_growth_hits_cap(self):
        with pytest.raises(CapExceeded):
            find_invariant_subspace(F("[2*x^2*y, -2*x*y^2]"), 6)


class TestJordan:
    def test_examples(self):
        pair = jordan_decompose(F("[x + y, y]"))
        assert pair.semisimple_part == F("[x, y]") and pair.nilpotent_part == F("[y, 0]")
        pair = jordan_decompose(F("[y, 0]"))
        assert pair.semisimple_part.is_zero() and pair.nilpotent_part == F("[y, 0]")
        pair = jordan_decompose(F("[x, 0]"))
        assert pair.semisimple_part == F("[x, 0]") and pair.nilpotent_part.is_zero()

    def test_resonant_quadratic(self):
        d = F("[2*x + y^2, y]")
        pair = jordan_decompose(d)
        assert pair.nilpotent_part == F("[y^2, 0]")
        assert bracket(pair.semisimple_part, pair.nilpotent_part).is_zero()

    def test_random_corpus(self):
        rng = random.Random(4)
        for _ in range(15):
            d = random_locally_finite(rng)
            pair = jordan_decompose(d, 4)
            assert pair.semisimple_part + pair.nilpotent_part == d
            assert bracket(pair.semisimple_part, pair.nilpotent_part).is_zero()
            assert is_semisimple_matrix(pair.semisimple_matrix)
            assert is_nilpotent_matrix(pair.nilpotent_matrix)

    def test_adjoint_compatibility(self):
        d = F("[2*x + y^2, y]")
        pair = jordan_decompose(d)
        eta = F("[x*y, x + y^2]")
        basis = ad_invariant_span(d, eta)
        a = ad_matrix(d, basis)
        s, n = jordan_chevalley(a)
        assert ad_matrix(pair.semisimple_part, basis) == s
        assert ad_matrix(pair.nilpotent_part, basis) == n


class TestExpLog:
    def test_examples(self):
        assert exp_lnd(F("[y, 0]")).forward == parse_map("(x + y, y)")
        assert exp_lnd(F("[y^2, 0]")).forward == U
        assert exp_lnd(VectorField.zero(2)).forward == PolyMap.identity(2)
        assert log_unipotent(U) == F("[y^2, 0]")
        assert log_unipotent(PolyMap.identity(2)).is_zero()
        assert log_unipotent(parse_map("(x + y, y)")) == F("[y, 0]")

    def test_not_nilpotent(self):
        with pytest.raises(NotCertified):
            exp_lnd(F("[x, 0]"))
        with pytest.raises(NotCertified):
            log_unipotent(parse_map("(2*x, y)"))

    def test_roundtrips_and_flow_law(self):
        rng = random.Random(8)
        for _ in range(10):
            d = random_lnd(rng)
            g = exp_lnd(d)
            assert log_unipotent(g) == d
            for s, t in ((Fraction(1, 3), Fraction(2)), (Fraction(-1), Fraction(5, 2))):
                lhs = exp_lnd(d.scale(s + t)).forward
                assert lhs == compose(exp_lnd(d.scale(s)).forward, exp_lnd(d.scale(t)).forward)

    def test_three_variables(self):
        d = F("[x2^2, x3, 0]")
        g = exp_lnd(d)
        assert log_unipotent(g) == d


class TestTorus:
    def test_examples(self):
        t = minimal_torus([F("[x, y]")])
        assert t.rank == 1 and t.weight_matrix == [[1, 1]]
        t = minimal_torus([F("[2*x, 3*y]")])
        assert t.rank == 1 and t.weight_matrix == [[2, 3]]
        t = minimal_torus([F("[x, 0]"), F("[0, y]")])
        assert t.rank == 2 and sorted(t.weight_matrix) == [[0, 1], [1, 0]]

    def test_rational_weights_rescaled(self):
        t = minimal_torus([F("[1/2*x, 1/3*y]")])
        assert t.rank == 1 and t.weight_matrix == [[3, 2]]

    def test_minimality(self):
        inputs = [F("[2*x, 3*y]"), F("[4*x, 6*y]")]
        t = minimal_torus(inputs)
        for f in inputs:
            assert torus_contains(t, f) is not None

    def test_non_diagonal(self):
        with pytest.raises(NotDiagonal):
            minimal_torus([F("[x + y, y]")])

    def test_non_commuting(self):
        with pytest.raises(ValueError):
            minimal_torus([F("[x, 0]"), F("[y, 0]")])

    def test_conjugated(self):
        g = Automorphism(U, parse_map("(x - y^2, y)"))
        diag = F("[2*x, y]")
        field = pushforward(g.inverted(), diag)
        t = minimal_torus([field], conjugator=g)
        assert t.rank == 1 and t.weight_matrix == [[2, 1]]
        assert t.generators[0] == field
