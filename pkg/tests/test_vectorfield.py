import pytest
from hypothesis import given

from indkit.exactpoly import Polynomial
from indkit.plane import PHI, TAU, U, V
from indkit.polymap import Automorphism, parse_map
from indkit.vectorfield import (
    NonzeroDivergence,
    VectorField,
    apply,
    bracket,
    divergence,
    expand_in_partial_basis,
    in_lambda,
    is_locally_nilpotent,
    is_s_invariant_field,
    parse_field,
    partial_basis_field,
    pushforward,
)
from strategies import fields, polynomials

X, Y = Polynomial.gens(2)
F = parse_field


class TestApply:
    def test_examples(self):
        assert apply(F("[y, 0]"), X) == Y
        assert apply(F("[y, 0]"), Y).is_zero()
        assert apply(partial_basis_field(-1, 2), X) == Polynomial.parse("3*y^2")

    @given(fields(), polynomials(2, 3, 3), polynomials(2, 3, 3))
    def test_leibniz(self, d, p, q):
        assert apply(d, p * q) == p * apply(d, q) + q * apply(d, p)


class TestBracket:
    def test_sl2(self):
        assert bracket(F("[y, 0]"), F("[0, x]")) == F("[-x, y]")

    def test_graded_pair(self):
        b = bracket(partial_basis_field(-1, 2), partial_basis_field(2, -1))
        assert expand_in_partial_basis(b) == {(1, 1): 9}

    @given(fields())
    def test_alternating(self, d):
        assert bracket(d, d).is_zero()

    @given(fields(2, 3, 2), fields(2, 3, 2), fields(2, 3, 2))
    def test_jacobi(self, a, b, c):
        total = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
        assert total.is_zero()

    @given(fields(2, 3, 2), fields(2, 3, 2), fields(2, 3, 2))
    def test_bilinear(self, a, b, c):
        assert bracket(a + b.scale(3), c) == bracket(a, c) + bracket(b, c).scale(3)

    def test_bracket_acts_as_commutator(self):
        a, b = F("[x*y, y^2]"), F("[1, x^3]")
        p = Polynomial.parse("x^2*y + y^3")
        assert apply(bracket(a, b), p) == apply(a, apply(b, p)) - apply(b, apply(a, p))


class TestDivergence:
    def test_examples(self):
        assert divergence(F("[x, y]")) == Polynomial.constant(2, 2)
        assert divergence(F("[y, 0]")).is_zero()

    def test_partial_basis(self):
        for i in range(-1, 9):
            for j in range(-1, 9):
                if in_lambda(i, j):
                    assert divergence(partial_basis_field(i, j)).is_zero()


class TestPushforward:
    def test_swap(self):
        tau = Automorphism(TAU, TAU)
        assert pushforward(tau, F("[y, 0]")) == F("[0, x]")

    def test_identity(self):
        d = F("[x^2*y, 3]")
        assert pushforward(Automorphism.identity(2), d) == d

    def test_bare_map_needs_inverse(self):
        with pytest.raises(ValueError):
            pushforward(U, F("[y, 0]"))
        assert pushforward(U, F("[0, 1]"), inverse=parse_map("(x - y^2, y)")) == F("[2*y, 1]")

    def test_group_action_and_equivariance(self):
        g = Automorphism(U, parse_map("(x - y^2, y)"))
        h = Automorphism(V, parse_map("(x, y - x^2)"))
        d, e = F("[y, x^2]"), F("[x*y, 1]")
        assert pushforward(g @ h, d) == pushforward(g, pushforward(h, d))
        assert pushforward(g, bracket(d, e)) == bracket(pushforward(g, d), pushforward(g, e))

    def test_s_invariance_as_weights(self):
        assert is_s_invariant_field(partial_basis_field(-1, 2))
        assert is_s_invariant_field(partial_basis_field(2, -1))
        assert not is_s_invariant_field(partial_basis_field(0, 1))


class TestNilpotency:
    def test_examples(self):
        assert is_locally_nilpotent(F("[y, 0]"), 5) is True
        assert is_locally_nilpotent(F("[x, 0]"), 5) is False
        assert is_locally_nilpotent(partial_basis_field(1, 1), 8) in (False, None)

    def test_graded_basis_criterion(self):
        assert is_locally_nilpotent(partial_basis_field(-1, 4), 8) is True
        assert is_locally_nilpotent(partial_basis_field(5, -1), 8) is True


class TestPartialBasis:
    def test_examples(self):
        assert partial_basis_field(-1, 2) == F("[3*y^2, 0]")
        assert partial_basis_field(2, -1) == F("[0, -3*x^2]")
        assert partial_basis_field(0, 0) == F("[x, -y]")

    def test_outside_index_set(self):
        with pytest.raises(ValueError):
            partial_basis_field(-1, -1)
        with pytest.raises(ValueError):
            partial_basis_field(-2, 3)

    def test_expansion_examples(self):
        assert expand_in_partial_basis(F("[3*y^2, 0]")) == {(-1, 2): 1}
        assert expand_in_partial_basis(F("[x, -y]")) == {(0, 0): 1}
        b = bracket(partial_basis_field(-1, 2), partial_basis_field(0, 0))
        exp = expand_in_partial_basis(b)
        assert set(exp) == {(-1, 2)} and exp[(-1, 2)] != 0

    def test_expansion_rejects_divergence(self):
        with pytest.raises(NonzeroDivergence):
            expand_in_partial_basis(F("[x, y]"))

    def test_expansion_reconstructs(self):
        d = partial_basis_field(3, 1).scale(2) - partial_basis_field(-1, 5) + partial_basis_field(4, -1)
        exp = expand_in_partial_basis(d)
        rebuilt = VectorField.zero(2)
        for (i, j), c in exp.items():
            rebuilt = rebuilt + partial_basis_field(i, j).scale(c)
        assert rebuilt == d

    def test_grading_of_brackets(self):
        up, right = partial_basis_field(-1, 2), partial_basis_field(2, -1)
        for i in range(7):
            for j in range(7):
                a = expand_in_partial_basis(bracket(up, partial_basis_field(i, j)))
                assert set(a) == {(i - 1, j + 2)}
                b = expand_in_partial_basis(bracket(right, partial_basis_field(i, j)))
                assert set(b) == {(i + 2, j - 1)}

    def test_bracket_words_stay_in_graded_span(self):
        up, right = partial_basis_field(-1, 2), partial_basis_field(2, -1)
        layer = [up, right]
        for _ in range(3):
            layer = [bracket(a, b) for a in layer for b in (up, right)]
            for f in layer:
                for i, j in expand_in_partial_basis(f):
                    assert (i - j) % 3 == 0 and (i, j) != (0, 0)


def test_field_text_round_trip():
    d = F("[x^2 - 1/3*y, 4]")
    assert F(str(d)) == d
