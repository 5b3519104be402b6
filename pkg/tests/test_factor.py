import pytest

from lamdist import lambda_core as lc
from lamdist.errors import NotCoinitialError
from lamdist.factor import (build_grothendieck, check_factorization_iso, check_grothendieck_laws,
                            coarse_steps, factorize, is_garbage, is_garbage_free, sieve)
from lamdist.parsing import parse_dist, parse_lambda
from lamdist.refine import witness
from lamdist.simulate import transport_along
from lamdist.spaces import build_space, enumerate_graph_lambda
from lamdist.verify import garbage_laws, sieve_laws

from generators import lambda_instances
from known_terms import R1, R2, S, S11, S21, S22, TRIPLE, TRIPLE_W, triple

D = parse_dist

EPS = triple()
SR2 = triple(S, R2)
R1S11 = triple(R1, S11)
R1S21 = triple(R1, S21)
R1S11S22 = triple(R1, S11, S22)


def hasse(leq):
    n = len(leq)
    return {(i, j) for i in range(n) for j in range(n)
            if i != j and leq[i][j]
            and not any(k not in (i, j) and leq[i][k] and leq[k][j] for k in range(n))}


class TestGarbage:
    def test_empty_is_garbage(self):
        assert is_garbage(EPS, TRIPLE_W)

    def test_untyped_copy_is_garbage(self):
        w = transport_along(triple(R1), TRIPLE_W)
        assert w.dist_term == D(r"(y^[α^2]->^3 []->^4 β^5)[(\x^5. x^α^2)[z^α^2]][]")
        assert is_garbage(lc.LamDerivation.from_positions(w.lam_term, [S21]), w)

    def test_root_step_is_not_garbage(self):
        assert not is_garbage(R1S21, TRIPLE_W)

    def test_source_must_match(self):
        with pytest.raises(NotCoinitialError):
            is_garbage(lc.empty(parse_lambda("y")), TRIPLE_W)


class TestSieve:
    def test_no_coarse_step_in_empty(self):
        assert coarse_steps(EPS, TRIPLE_W) == []

    def test_leftmost_coarse_step(self):
        assert coarse_steps(SR2, TRIPLE_W)[0].redex == R1

    def test_garbage_has_no_coarse_steps(self):
        w = transport_along(R1S11, TRIPLE_W)
        garbage = lc.LamDerivation.from_positions(w.lam_term, [S22])
        assert is_garbage(garbage, w) and coarse_steps(garbage, w) == []

    def test_sieve_of_the_argument_step(self):
        assert sieve(triple(S), TRIPLE_W).positions == (S,)

    def test_sieve_reorders_and_drops_garbage(self):
        assert sieve(SR2, TRIPLE_W).positions == (R1, S11)
        assert str(sieve(SR2, TRIPLE_W)) == "ε ; 0.1"

    def test_sieve_of_empty(self):
        assert len(sieve(EPS, TRIPLE_W)) == 0

    def test_what_remains_is_garbage(self):
        rest = lc.project(SR2, R1S11)
        assert rest.positions == (S22,)
        assert is_garbage(rest, transport_along(R1S11, TRIPLE_W))

    def test_garbage_freedom(self):
        assert not is_garbage_free(SR2, TRIPLE_W)
        assert is_garbage_free(R1S11, TRIPLE_W)
        assert is_garbage_free(EPS, TRIPLE_W)


class TestFactorize:
    def test_join_splits_into_garbage_free_part_and_garbage(self):
        result = factorize(R1S11S22, TRIPLE_W)
        assert result.garbage_free.positions == (R1, S11)
        assert result.garbage.positions == (S22,)

    def test_empty(self):
        result = factorize(EPS, TRIPLE_W)
        assert len(result.garbage_free) == 0 and len(result.garbage) == 0

    def test_garbage_part_of_a_non_garbage_free_derivation(self):
        result = factorize(SR2, TRIPLE_W)
        assert result.garbage.positions == (S22,)
        assert lc.perm_equiv(result.garbage_free.then(result.garbage), SR2)


@pytest.fixture(scope="module")
def triple_space():
    space = build_space(enumerate_graph_lambda(TRIPLE))
    return space, build_grothendieck(space, TRIPLE_W)


class TestGrothendieck:
    def test_base_and_pairs(self, triple_space):
        space, groth = triple_space
        assert len(space) == 6
        base = {space.class_of(d) for d in (EPS, triple(R1), triple(S), R1S11)}
        assert set(groth.base) == base
        assert [len(f.elements) for f in groth.fibers] == [1, 2, 1, 2]
        assert len(groth.pairs) == 6

    def test_class_order_matches_the_expected_diagram(self, triple_space):
        space, _ = triple_space
        c = {name: space.class_of(d) for name, d in [
            ("ε", EPS), ("R1", triple(R1)), ("S", triple(S)), ("R1S11", R1S11),
            ("R1S21", R1S21), ("R1⊔S", R1S11S22)]}
        expected = {("ε", "R1"), ("ε", "S"), ("R1", "R1S11"), ("R1", "R1S21"),
                    ("R1S21", "R1⊔S"), ("R1S11", "R1⊔S"), ("S", "R1⊔S")}
        assert hasse(space.leq) == {(c[a], c[b]) for a, b in expected}

    def test_pair_order_matches_the_expected_diagram(self, triple_space):
        space, groth = triple_space

        def pair(base_d, *garbage):
            a = groth.base.index(space.class_of(base_d))
            fiber = groth.fibers[a]
            g = lc.LamDerivation.from_positions(base_d.target, garbage)
            return groth.pairs.index((a, fiber.index[fiber.space.class_of(g)]))

        p = {"ε,ε": pair(EPS), "R1,ε": pair(triple(R1)), "R1,S21": pair(triple(R1), S21),
             "S,ε": pair(triple(S)), "R1S11,ε": pair(R1S11), "R1S11,S22": pair(R1S11, S22)}
        expected = {("ε,ε", "R1,ε"), ("ε,ε", "S,ε"), ("R1,ε", "R1S11,ε"), ("R1,ε", "R1,S21"),
                    ("R1,S21", "R1S11,S22"), ("R1S11,ε", "R1S11,S22"), ("S,ε", "R1S11,S22")}
        assert hasse(groth.pair_leq) == {(p[a], p[b]) for a, b in expected}
        assert groth.pair_leq[p["S,ε"]][p["R1S11,S22"]]

    def test_isomorphism(self, triple_space):
        space, groth = triple_space
        report = check_factorization_iso(space, groth)
        assert report.ok, report.failures
        assert sorted(report.phi) == sorted(groth.pairs)

    def test_construction_laws(self, triple_space):
        _, groth = triple_space
        assert check_grothendieck_laws(groth) == []

    def test_trivial_space(self):
        t = parse_lambda("y")
        space = build_space(enumerate_graph_lambda(t))
        groth = build_grothendieck(space, witness(D("y^a^1"), t))
        assert groth.base == [0] and len(groth.pairs) == 1
        assert check_factorization_iso(space, groth).ok

    def test_witness_must_refine_the_root(self, triple_space):
        space, _ = triple_space
        with pytest.raises(NotCoinitialError):
            build_grothendieck(space, witness(D("y^a^1"), parse_lambda("y")))


@pytest.mark.parametrize("chunk", range(5))
def test_garbage_and_sieve_laws(chunk):
    for t, space, t_prime in lambda_instances()[chunk::5]:
        w = witness(t_prime, t)
        assert garbage_laws(space, w) == [], lc.show(t)
        assert sieve_laws(space, w) == [], lc.show(t)


def test_isomorphism_for_a_synthesized_refinement():
    from lamdist.refine import refinement_for
    t = parse_lambda(r"(\x. (\y. x) x) ((\z. z) w)")
    space = build_space(enumerate_graph_lambda(t))
    groth = build_grothendieck(space, witness(refinement_for(t), t))
    assert check_factorization_iso(space, groth).ok
