import random
from fractions import Fraction

import pytest

from indkit.exactpoly import Polynomial
from indkit.plane import (
    CORPUS_SEED,
    IDENTITY,
    PHI,
    TAU,
    U,
    V,
    AffineFactor,
    JonqFactor,
    NoLimit,
    NotInUnipotentInvariant,
    SFactor,
    check_y_term,
    degeneration_witness,
    elementary_reduction,
    free_reduce,
    free_word_eval,
    invert,
    is_member_f_closure,
    is_s_invariant,
    jvk_factorize,
    phi_power,
    phi_power_degree,
    phi_power_jet,
    phi_power_recurrence,
    random_s_word,
    random_tame_word,
    reduced_words,
    s_generators,
    s_normal_form,
    syllables,
    torus_conjugate,
    torus_conjugation_limit,
)
from indkit.polymap import NotAnAutomorphism, PolyMap, compose, parse_map

M = parse_map
X, Y = Polynomial.gens(2)


class TestFactorization:
    def test_triangular_is_one_factor(self):
        word = jvk_factorize(U)
        assert word.kinds == ("jonq",) and word.recompose() == U

    def test_phi_pattern(self):
        word = jvk_factorize(PHI)
        assert word.kinds == ("jonq", "affine", "jonq", "affine")
        assert word.jonq_degrees == (2, 2)
        assert word.recompose() == PHI
        assert word.factors[1].to_map() == TAU

    def test_two_triangular_pieces(self):
        w = M("(x + y^3 + y, y)")
        g = compose(V, w)
        word = jvk_factorize(g)
        assert word.recompose() == g
        assert word.jonq_degrees == (2, 3)

    def test_affine_only(self):
        g = M("(2*x + y + 1, x - 3)")
        word = jvk_factorize(g)
        assert word.kinds == ("affine",) and word.recompose() == g

    def test_not_automorphisms(self):
        for text in ("(x + y^2, x + y^2)", "(x^2, y)", "(x + y^2 + x*y, y)", "(x, x)"):
            with pytest.raises(NotAnAutomorphism, match="not an automorphism"):
                jvk_factorize(M(text))

    def test_json(self):
        data = jvk_factorize(PHI).to_json(PHI)
        assert data["recomposition_check"] is True
        assert [f["kind"] for f in data["factors"]] == ["jonq", "affine", "jonq", "affine"]
        assert all(M(f["data"]["map"]) for f in data["factors"])

    def test_random_words_are_reduced_and_unique(self):
        rng = random.Random(CORPUS_SEED + 1)
        for _ in range(25):
            word = random_tame_word(rng, 4, 4)
            g = word.recompose()
            found = jvk_factorize(g)
            assert found.recompose() == g
            assert (found.length, found.kinds, found.jonq_degrees) == (word.length, word.kinds, word.jonq_degrees)
            for f in found.factors[1:-1]:
                assert not f.in_base()

    def test_elementary_steps(self):
        steps, residual = elementary_reduction(PHI)
        rebuilt = residual
        for side, c, k in reversed(steps):
            e = M("(x, y)")
            e = PolyMap([X + Y.power(k).scale(c), Y]) if side == "x" else PolyMap([X, Y + X.power(k).scale(c)])
            rebuilt = compose(e, rebuilt)
        assert rebuilt == PHI


class TestInvert:
    def test_examples(self):
        assert invert(U).inverse == M("(x - y^2, y)")
        assert invert(TAU).inverse == TAU
        inv = invert(PHI).inverse
        assert inv == compose(M("(x, y - x^2)"), M("(x - y^2, y)"))
        assert compose(PHI, inv) == IDENTITY and compose(inv, PHI) == IDENTITY

    def test_random(self):
        rng = random.Random(3)
        for _ in range(10):
            g = random_tame_word(rng, 3, 3).recompose()
            inv = invert(g).inverse
            assert compose(inv, g) == IDENTITY and compose(g, inv) == IDENTITY

    def test_factors_invert(self):
        j = JonqFactor(Fraction(2), Fraction(-1), Fraction(3), Y.power(3) - Y)
        assert compose(j.to_map(), j.inverse().to_map()) == IDENTITY
        a = AffineFactor(((1, 2), (3, 4)), (5, 6))
        assert compose(a.to_map(), a.inverse().to_map()) == IDENTITY

    def test_factor_validation(self):
        with pytest.raises(ValueError):
            JonqFactor(0, 1, 0, Y)
        with pytest.raises(ValueError):
            JonqFactor(1, 1, 0, X * Y)
        with pytest.raises(NotAnAutomorphism):
            AffineFactor(((1, 2), (2, 4)), (0, 0))


class TestNormalForm:
    def test_examples(self):
        nf = s_normal_form(U)
        assert [f.kind for f in nf.factors] == ["J"] and nf.factors[0].f_coefficients == (1,)
        nf = s_normal_form(PHI)
        assert [f.kind for f in nf.factors] == ["J", "Jminus"]
        assert nf.recompose() == PHI

    def test_rejections_name_the_condition(self):
        with pytest.raises(NotInUnipotentInvariant, match="x\\^0\\*y\\^3"):
            s_normal_form(M("(x + y^3, y)"))
        with pytest.raises(NotInUnipotentInvariant, match="origin"):
            s_normal_form(M("(x + 1, y)"))
        with pytest.raises(NotInUnipotentInvariant, match="linear part"):
            s_normal_form(M("(x + y, y)"))

    def test_identity_is_empty_word(self):
        assert s_normal_form(IDENTITY).length == 0

    def test_uniqueness_on_random_words(self):
        rng = random.Random(CORPUS_SEED + 2)
        for _ in range(30):
            word = random_s_word(rng, 4, 2, degree_budget=64)
            nf = s_normal_form(word.recompose())
            assert nf == word
            assert s_normal_form(nf.recompose()) == nf

    def test_factor_groups_commute(self):
        a = SFactor("J", Y.power(2) + Y.power(5).scale(3))
        b = SFactor("J", Y.power(8).scale(Fraction(-1, 2)) + Y.power(2))
        assert compose(a.to_map(), b.to_map()) == compose(b.to_map(), a.to_map())
        a = SFactor("Jminus", X.power(5))
        b = SFactor("Jminus", X.power(2).scale(7))
        assert compose(a.to_map(), b.to_map()) == compose(b.to_map(), a.to_map())

    def test_json(self):
        data = s_normal_form(PHI).to_json(PHI)
        assert data["recomposition_check"] is True
        assert [f["kind"] for f in data["factors"]] == ["J", "Jminus"]


class TestMembership:
    @pytest.mark.parametrize("g", [U, V, PHI, M("(x + y^5, y)")])
    def test_members(self, g):
        ok, reason = is_member_f_closure(g)
        assert ok, reason

    def test_non_member(self):
        ok, reason = is_member_f_closure(M("(x + y^3, y)"))
        assert not ok and "component 1" in reason

    def test_weight_check(self):
        gens = s_generators()
        assert gens.s_weight_check(gens.u) and gens.s_weight_check(gens.v)
        assert not is_s_invariant(M("(x + y, y)"))
        assert gens.u(0, 0) == (0, 0)
        assert compose(gens.tau, gens.tau) == IDENTITY

    def test_torus_action(self):
        g = torus_conjugate(U, 2, 3)
        assert g == M("(x + 9/2*y^2, y)")
        assert torus_conjugate(U, 1, 1) == U


class TestFreeWords:
    def test_examples(self):
        assert free_word_eval(["u", "v"]) == PHI
        assert free_word_eval(["u", "u^-1"]) == IDENTITY
        comm = free_word_eval(["u", "v", "u^-1", "v^-1"])
        assert comm != IDENTITY and comm.degree() == 16

    def test_reduction_helpers(self):
        assert free_reduce(["u", "v", "v^-1", "u"]) == ["u", "u"]
        assert syllables(["u", "u", "v^-1", "u"]) == [("u", 2), ("v", -1), ("u", 1)]
        assert len(reduced_words(2)) == 4 + 12

    def test_unknown_letter(self):
        with pytest.raises(ValueError):
            free_word_eval(["w"])

    def test_short_words_nontrivial(self):
        for w in reduced_words(4):
            g = free_word_eval(w)
            assert g != IDENTITY
            assert s_normal_form(g).length == len(syllables(w))


class TestPhiPowers:
    def test_first_power(self):
        assert phi_power(1) == M("(x + y^2 + 2*x^2*y + x^4, y + x^2)")

    def test_recurrence_agrees(self):
        for k in range(1, 4):
            assert phi_power(k) == phi_power_recurrence(k)

    def test_y5_in_second_power(self):
        c = phi_power(2).components[0].coefficient((0, 5))
        assert c > 0 and c.denominator == 1

    def test_nonnegative_integer_coefficients(self):
        for k in range(1, 5):
            assert all(c.has_nonnegative_integer_coefficients() for c in phi_power(k).components)
        for k in (5, 6):
            jet = phi_power_jet(k, 24)
            assert all(c.has_nonnegative_integer_coefficients() for c in jet.components)

    def test_jet_matches_full_power(self):
        assert phi_power_jet(3, 10) == phi_power(3).truncate(10)

    def test_y_terms(self):
        assert check_y_term(1) == 1
        assert check_y_term(2) > 0 and check_y_term(3) > 0
        assert check_y_term(2) == phi_power(2).components[0].coefficient((0, 5))

    def test_degrees(self):
        assert [phi_power_degree(k) for k in range(1, 4)] == [phi_power(k).degree() for k in range(1, 4)]


class TestTorusLimits:
    def test_examples(self):
        assert torus_conjugation_limit(M("(x + y^5 + y^8, y)"), (5, 1)) == M("(x + y^5, y)")
        with pytest.raises(NoLimit) as err:
            torus_conjugation_limit(M("(x + y^2 + y^5, y)"), (5, 1))
        assert err.value.witness == (0, 2)
        g = M("(x + y^2 + 3, y - x^3)")
        assert torus_conjugation_limit(g, (0, 0)) == g

    def test_agrees_with_substitution(self):
        # at t = 1 the conjugation is the identity, so the kept terms come from g
        g = M("(x + 2*y^3 + x*y^2, y + x^2)")
        limit = torus_conjugation_limit(g, (3, 1))
        assert limit == M("(x + 2*y^3, y)")

    def test_jet_order_guard(self):
        with pytest.raises(ValueError):
            torus_conjugation_limit(PHI, (5, 1), jet_order=3)
        with pytest.raises(ValueError):
            torus_conjugation_limit(PHI, (0, 1), jet_order=9)

    def test_degeneration(self):
        for k in (1, 2):
            coeffs, limit = degeneration_witness(k)
            top = 3 * k + 2
            c = limit.components[0].coefficient((0, top))
            assert c != 0 and limit == PolyMap([X + Y.power(top).scale(c), Y])
            assert len(coeffs) == k
