import itertools

import pytest
from hypothesis import given, strategies as st

from lamdist import lambda_core as lc
from lamdist.errors import InvalidStepError, NotCoinitialError
from lamdist.parsing import parse_lambda

import oracles
from generators import lambda_instances, lambda_terms
from known_terms import DEFS, DUP, DUP_R, DUP_S


def p(text):
    return parse_lambda(text, DEFS)


def d(source, *positions):
    return lc.LamDerivation.from_positions(source, positions)


def step(source, pos):
    return lc.LamStep(source, pos)


# names of the steps in the reduction graph of (\x.x x)(K z)
R = d(DUP, DUP_R)
S = d(DUP, DUP_S)
DUP_SR1 = d(DUP, DUP_S, (1,))
DUP_SR2 = d(DUP, DUP_S, (0,))
DUP_RS1 = d(DUP, DUP_R, ())
DUP_SR1R2 = d(DUP, DUP_S, (1,), (0,))
DUP_RS1T1 = d(DUP, DUP_R, (), ())


class TestRedexesAndSteps:
    def test_variable_has_no_redex(self):
        assert lc.beta_redexes(lc.Var("x")) == ()

    def test_duplicating_term_has_two_redexes(self):
        assert [s.redex for s in lc.beta_redexes(DUP)] == [(), (1,)]

    def test_nested_identity_redexes_match_brute_force_scan(self):
        t = p(r"(\x. x) ((\y. y) z)")
        scan = [q for q in lc.positions(t) if lc.is_redex(lc.subterm(t, q))]
        assert [s.redex for s in lc.beta_redexes(t)] == scan == [(), (1,)]

    def test_identity_step(self):
        assert lc.apply_step(step(p(r"(\x. x) y"), ())) == lc.Var("y")

    def test_contracting_the_argument(self):
        assert lc.apply_step(step(DUP, DUP_R)) == p(r"(\x. x x) (\y. z)")

    def test_contracting_the_root_copies_the_argument(self):
        assert lc.apply_step(step(DUP, DUP_S)) == p("(K z) (K z)")

    def test_substitution_avoids_capture(self):
        t = p(r"(\x. \y. x) y")
        target = lc.apply_step(step(t, ()))
        assert target == lc.lam("w", lc.Var("y"))
        assert target != lc.lam("y", lc.Var("y"))

    def test_step_must_point_at_a_redex(self):
        with pytest.raises(InvalidStepError):
            step(DUP, (0,))

    def test_derivation_steps_must_compose(self):
        other = step(p(r"(\x. x) y"), ())
        with pytest.raises(NotCoinitialError):
            lc.LamDerivation(DUP, (other,))


class TestResiduals:
    def test_a_step_has_no_residual_after_itself(self):
        for s in lc.beta_redexes(DUP):
            assert lc.residuals(s, s) == ()

    def test_duplication_gives_two_residuals(self):
        res = lc.residuals(step(DUP, DUP_R), step(DUP, DUP_S))
        assert sorted(r.redex for r in res) == [(0,), (1,)]

    def test_erasing_step_leaves_no_residual(self):
        u = p(r"(\y. z) (K z)")
        assert lc.residuals(step(u, (1,)), step(u, ())) == ()

    def test_non_coinitial_steps_are_rejected(self):
        with pytest.raises(NotCoinitialError):
            lc.residuals(step(DUP, ()), step(p(r"(\x. x) y"), ()))

    @given(lambda_terms())
    def test_residuals_agree_with_marking(self, t):
        ps = lc.redex_positions(t)
        for a, b in itertools.product(ps, repeat=2):
            mine = {r.redex for r in lc.residuals(step(t, a), step(t, b))}
            assert mine == oracles.residual_positions(t, a, b)

    @given(lambda_terms())
    def test_steps_agree_with_named_substitution(self, t):
        for q in lc.redex_positions(t):
            assert lc.contract(t, q) == oracles.from_named(oracles.step(oracles.to_named(t), q))


class TestDevelopments:
    def test_empty_set(self):
        assert len(lc.develop(DUP, [])) == 0

    def test_single_step(self):
        assert lc.develop(DUP, [DUP_S]).positions == (DUP_S,)

    def test_both_steps_of_the_duplicating_term(self):
        dev = lc.develop(DUP, [DUP_R, DUP_S])
        assert len(dev) == 3
        assert dev.target == p(r"(\y. z) (\y. z)")
        assert set(oracles.all_complete_developments(DUP, [DUP_R, DUP_S])) == {dev.target}

    @given(lambda_terms(), st.data())
    def test_every_development_order_reaches_the_same_term(self, t, data):
        ps = lc.redex_positions(t)
        chosen = data.draw(st.sets(st.sampled_from(ps), max_size=3)) if ps else set()
        targets = set(oracles.all_complete_developments(t, sorted(chosen)))
        assert targets == {lc.develop(t, chosen).target}


class TestProjection:
    def test_projection_over_empty(self):
        assert lc.project(DUP_SR1R2, lc.empty(DUP)).positions == DUP_SR1R2.positions

    def test_projection_over_itself(self):
        assert len(lc.project(DUP_SR1R2, DUP_SR1R2)) == 0

    def test_permutation_equivalent_derivations(self):
        assert len(lc.project(DUP_RS1, DUP_SR1R2)) == 0
        assert lc.perm_equiv(DUP_RS1, DUP_SR1R2)
        assert DUP_RS1.positions != DUP_SR1R2.positions

    def test_prefix_through_erasure(self):
        assert lc.is_prefix(DUP_SR2, DUP_RS1T1)
        assert not lc.is_prefix(DUP_RS1T1, DUP_SR2)

    def test_join_with_empty(self):
        assert lc.join(DUP_SR2, lc.empty(DUP)).positions == DUP_SR2.positions

    def test_join_is_an_upper_bound(self):
        j = lc.join(R, S)
        assert lc.is_prefix(R, j) and lc.is_prefix(S, j)
        assert lc.perm_equiv(j, lc.join(S, R))
        assert j.target == lc.join(S, R).target

    def test_projection_requires_coinitial_derivations(self):
        with pytest.raises(NotCoinitialError):
            lc.project(R, lc.empty(p("y")))


class TestLawsOnSmallSpaces:
    """Projection, orthogonality and join laws over every class triple of small spaces."""

    @pytest.mark.parametrize("index", range(0, 100, 10))
    def test_space_laws(self, index):
        from lamdist.verify import lambda_space_laws
        _, space, _ = lambda_instances()[index]
        assert lambda_space_laws(space) == []

    @pytest.mark.parametrize("index", range(0, 100, 7))
    def test_orthogonality(self, index):
        from lamdist.verify import orthogonality_laws
        t, _, _ = lambda_instances()[index]
        assert orthogonality_laws(t) == []

    @pytest.mark.parametrize("index", range(0, 100, 10))
    def test_projection_is_well_defined_on_classes(self, index):
        from lamdist.verify import well_defined_projection_laws
        _, space, _ = lambda_instances()[index]
        assert well_defined_projection_laws(space) == []


class TestHeadNormalization:
    def test_head_normal_forms(self):
        assert lc.is_head_normal_form(p(r"\x. y ((\z. z) w)"))
        assert not lc.is_head_normal_form(p(r"\x. (\z. z) w"))

    def test_leftmost_reduction_reaches_head_normal_form(self):
        rho = lc.head_normalize(p(r"(\x. x x) y"), 5)
        assert rho.positions == ((),) and rho.target == p("y y")

    def test_fuel_exhaustion(self):
        assert lc.head_normalize(p(r"(\x. x x) (\x. x x)"), 20) is None


def test_printing_of_derivations():
    assert str(lc.empty(DUP)) == "(empty)"
    assert str(DUP_SR1R2) == "ε ; 1 ; 0"
