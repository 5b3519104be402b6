import pytest

from lamdist import dist_core as dc
from lamdist import lambda_core as lc
from lamdist.errors import NotCoinitialError
from lamdist.parsing import parse_dist
from lamdist.refine import check_refines, witness
from lamdist.simulate import sim_residual_derivation, sim_residual_step, sim_transport
from lamdist.verify import simulation_laws

from generators import lambda_instances
from known_terms import (R1, S, S11, S22, SIM, SIM_ONE, SIM_ONE_AFTER, SIM_TWO, SIM_TWO_AFTER,
                         SIM_ZERO, TRIPLE, TRIPLE_W, triple)

D = parse_dist
SIM_STEP = lc.LamStep(SIM, (1,))
XY = lc.App(lc.Var("x"), lc.Var("y"))


@pytest.mark.parametrize("t_prime, labels, after", [
    (SIM_ZERO, [], SIM_ZERO),
    (SIM_ONE, [4], SIM_ONE_AFTER),
    (SIM_TWO, [5, 6], SIM_TWO_AFTER),
])
def test_a_step_is_simulated_by_zero_one_or_two_steps(t_prime, labels, after):
    w = witness(t_prime, SIM)
    steps = sim_residual_step(SIM_STEP, w)
    assert [s.label for s in steps] == labels
    moved = sim_transport(SIM_STEP, w)
    assert moved.dist_term == after and moved.lam_term == XY
    # the square commutes: contracting the residuals reaches the transported refinement
    assert dc.DistDerivation.from_labels(t_prime, labels).target == after
    assert check_refines(after, XY)


def test_each_residual_copy_steps_independently():
    w = witness(SIM_TWO, SIM)
    one, two = sim_residual_step(SIM_STEP, w)
    assert one.target == D(r"(x^[α^1, β^2]->^3 γ^4)[y^α^1, (\x^6. x^β^2)[y^β^2]]")
    assert two.target == D(r"(x^[α^1, β^2]->^3 γ^4)[(\x^5. x^α^1)[y^α^1], y^β^2]")


def test_derivation_simulation():
    rho = triple(R1, S11, S22)
    d, w = sim_residual_derivation(rho, TRIPLE_W)
    assert d.labels == (1, 5)
    assert w.dist_term == D("(y^[α^2]->^3 []->^4 β^5)[z^α^2][]")
    assert w.lam_term == rho.target


def test_join_is_simulated_by_the_join():
    r1, s = triple(R1), triple(S)
    d = sim_residual_derivation(lc.join(r1, s), TRIPLE_W)[0]
    assert dc.dist_equiv(d, dc.DistDerivation.from_labels(TRIPLE_W.dist_term, [1, 5]))
    joined = dc.dist_join(sim_residual_derivation(r1, TRIPLE_W)[0], sim_residual_derivation(s, TRIPLE_W)[0])
    assert dc.dist_equiv(d, joined)


def test_garbage_step_has_no_simulation():
    w = sim_residual_derivation(triple(R1, S11), TRIPLE_W)[1]
    assert sim_residual_step(lc.LamStep(w.lam_term, S22), w) == ()


def test_empty_derivation():
    d, w = sim_residual_derivation(lc.empty(TRIPLE), TRIPLE_W)
    assert len(d) == 0 and w == TRIPLE_W


def test_argument_step_at_the_source():
    d, w = sim_residual_derivation(triple(S), TRIPLE_W)
    assert d.labels == (5,)
    assert w.dist_term == D(r"(\x^1. (y^[α^2]->^3 []->^4 β^5)[x^α^2][])[z^α^2]")


def test_first_copy_after_the_root_step():
    w = sim_transport(lc.LamStep(TRIPLE, R1), TRIPLE_W)
    assert w.dist_term == D(r"(y^[α^2]->^3 []->^4 β^5)[(\x^5. x^α^2)[z^α^2]][]")


def test_witness_must_refine_the_source():
    with pytest.raises(NotCoinitialError):
        sim_residual_step(SIM_STEP, TRIPLE_W)


@pytest.mark.parametrize("chunk", range(5))
def test_cube_compatibility_and_algebraic_simulation(chunk):
    for t, space, t_prime in lambda_instances()[chunk::5]:
        assert simulation_laws(space, witness(t_prime, t)) == [], lc.show(t)
