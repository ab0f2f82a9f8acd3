import pytest

from indkit.liealg import (
    LieSpan,
    NotClosed,
    NotSolvable,
    check_theorem_b,
    derived_series,
    is_solvable,
    j_saturate,
    lie_closure,
    orbit_tangent_dim,
    split_solvable,
)
from indkit.spectral import exp_lnd
from indkit.vectorfield import bracket, parse_field, partial_basis_field, pushforward

F = parse_field
E, H, FF = F("[y, 0]"), F("[0, x]"), F("[x, -y]")


def span(*texts, closed=False):
    return LieSpan(2, [F(t) for t in texts], closed=closed)


class TestClosure:
    def test_sl2(self):
        rep = lie_closure([E, H])
        assert rep.status == "closed" and rep.dimension == 3
        assert rep.span.contains(FF)

    def test_commuting(self):
        rep = lie_closure([E, F("[y^2, 0]")])
        assert rep.status == "closed" and rep.dimension == 2

    def test_graded_pair_hits_cap(self):
        rep = lie_closure([partial_basis_field(-1, 2), partial_basis_field(2, -1)], dim_cap=40, depth_cap=10)
        assert rep.status == "dim_cap_exceeded" and rep.dimension > 40

    def test_depth_cap(self):
        rep = lie_closure([partial_basis_field(-1, 2), partial_basis_field(2, -1)], dim_cap=1000, depth_cap=2)
        assert rep.status == "depth_cap_exceeded"

    def test_order_independent(self):
        gens = [E, H, F("[y^2, 0]")]
        a = lie_closure(gens, dim_cap=30)
        b = lie_closure(list(reversed(gens)), dim_cap=30)
        assert a.status == b.status
        if a.status == "closed":
            assert a.span.basis == b.span.basis
        c = lie_closure([E, H])
        d = lie_closure([H, E])
        assert c.span.basis == d.span.basis

    def test_contains_generators(self):
        gens = [F("[x, 0]"), F("[y, 0]")]
        rep = lie_closure(gens)
        assert all(rep.span.contains(g) for g in gens)

    def test_report_json(self):
        data = lie_closure([E, H]).to_json()
        assert data["status"] == "closed" and data["dimension"] == 3
        assert all(F(b) for b in data["basis"])


class TestStructure:
    def test_sl2_perfect(self):
        sl2 = lie_closure([E, H]).span
        series = derived_series(sl2)
        assert series[1].dimension == 3
        assert not is_solvable(sl2)

    def test_borel(self):
        b = span("[x, 0]", "[y, 0]", closed=True)
        dims = [s.dimension for s in derived_series(b)]
        assert dims == [2, 1, 0]
        assert derived_series(b)[1].contains(E)
        assert is_solvable(b)

    def test_abelian_and_zero(self):
        assert [s.dimension for s in derived_series(span("[y, 0]", closed=True))] == [1, 0]
        assert is_solvable(LieSpan.zero(2))

    def test_unclosed_input(self):
        with pytest.raises(NotClosed):
            derived_series(span("[y, 0]", "[0, x]"))

    def test_split_examples(self):
        tor, nil = split_solvable(span("[x, -y]", "[y, 0]", closed=True))
        assert tor.dimension == 1 and tor.contains(FF)
        assert nil.dimension == 1 and nil.contains(E)
        tor, nil = split_solvable(span("[y, 0]", "[y^2, 0]", closed=True))
        assert tor.dimension == 0 and nil.dimension == 2
        tor, nil = split_solvable(span("[x, y]", closed=True))
        assert tor.dimension == 1 and nil.dimension == 0

    def test_split_properties(self):
        alg = span("[x, 0]", "[y, 0]", "[y^2, 0]", "[0, y]", closed=True)
        alg = lie_closure(alg.basis).span
        tor, nil = split_solvable(alg)
        assert tor.dimension + nil.dimension == alg.dimension
        for a in tor.basis:
            for b in tor.basis:
                assert bracket(a, b).is_zero()
        for a in nil.basis:
            for b in alg.basis:
                assert nil.contains(bracket(b, a))

    def test_split_needs_solvable(self):
        with pytest.raises(NotSolvable):
            split_solvable(lie_closure([E, H]).span)

    def test_j_saturate(self):
        sat = j_saturate(span("[x + y, y]", closed=True))
        assert sat.dimension == 2
        assert sat.contains(F("[x, y]")) and sat.contains(E)
        for t in ("[x, 0]", "[y, 0]"):
            s = span(t, closed=True)
            assert j_saturate(s).basis == s.basis

    def test_j_saturate_idempotent(self):
        sat = j_saturate(span("[x + y, y]", closed=True))
        assert j_saturate(sat).basis == sat.basis


class TestOrbitsAndVerdicts:
    def test_orbit_dims(self):
        sl2 = lie_closure([E, H]).span
        assert orbit_tangent_dim(sl2, (1, 0)) == 2
        assert orbit_tangent_dim(sl2, (0, 0)) == 0
        assert orbit_tangent_dim([E], (0, 1)) == 1

    def test_theorem_b(self):
        v = check_theorem_b([E, F("[y^2, 0]")])
        assert v.verdict == "unipotent-algebraic" and v.dimension == 2
        assert check_theorem_b([E, H]).verdict == "algebraic-not-solvable"
        assert check_theorem_b([partial_basis_field(-1, 2), partial_basis_field(2, -1)]).verdict == "undetermined"

    def test_theorem_b_rejects_non_lnd(self):
        from indkit.liealg import NotCertifiedLND

        with pytest.raises(NotCertifiedLND):
            check_theorem_b([F("[x, 0]")])

    def test_closure_stable_under_flows(self):
        sl2 = lie_closure([E, H]).span
        for gen in (E, H):
            for t in (1, -1, 2):
                g = exp_lnd(gen.scale(t))
                assert all(sl2.contains(pushforward(g, b)) for b in sl2.basis)
