"""A short walk through the library: graphs, simulation, sieving and factorization.

Run with ``python3 demos/tour.py`` after installing the package.
"""

from lamdist import dist_core as dc
from lamdist import lambda_core as lc
from lamdist.factor import build_grothendieck, check_factorization_iso, factorize, sieve
from lamdist.parsing import parse_dist, parse_lambda
from lamdist.refine import refinement_for, witness
from lamdist.simulate import sim_residual_derivation
from lamdist.spaces import build_space, enumerate_graph_dist, enumerate_graph_lambda


def heading(text):
    print(f"\n== {text}")


def main():
    heading("a distributive term and its reduction graph")
    grid = parse_dist(r"(\x^1. (x^[α^2]->^3 α^2)[x^α^2])[\y^3. y^α^2, (\w^4. w^α^2)[z^α^2]]")
    graph = enumerate_graph_dist(grid)
    print(f"{len(graph.nodes)} terms, {len(graph.edges)} steps, labels {sorted({e.label for e in graph.edges})}")
    space = build_space(graph)
    for rep in space.representatives:
        print(f"  class {sorted(rep.labs)!s:<10} represented by {rep}")

    heading("a pure term and a refinement that types one copy of its argument")
    t = parse_lambda(r"(\x. y x x) ((\x. x) z)")
    t_prime = parse_dist(r"(\x^1. (y^[α^2]->^3 []->^4 β^5)[x^α^2][])[(\x^5. x^α^2)[z^α^2]]")
    w = witness(t_prime, t)
    print(f"  {lc.show(t)}")
    print(f"  {dc.show(t_prime)}")

    heading("simulating a derivation inside the refinement")
    rho = lc.LamDerivation.from_positions(t, [(1,), ()])
    d, after = sim_residual_derivation(rho, w)
    print(f"  {rho}  is simulated by  {d}, ending in {dc.show(after.dist_term)}")

    heading("sieving and factorizing")
    print(f"  sieve({rho}) = {sieve(rho, w)}")
    result = factorize(rho, w)
    print(f"  garbage-free part {result.garbage_free}, garbage {result.garbage}")

    heading("the derivation space as pairs of a garbage-free class and garbage over it")
    pure_space = build_space(enumerate_graph_lambda(t))
    groth = build_grothendieck(pure_space, w)
    report = check_factorization_iso(pure_space, groth)
    print(f"  {len(pure_space)} classes, {len(groth.pairs)} pairs, isomorphism {'holds' if report.ok else 'fails'}")

    heading("refinements are synthesized for head-normalizing terms")
    for text in [r"(\x. x x) y", r"(\f. f (f z)) (\x. x)", r"(\x. x x) (\x. x x)"]:
        u = parse_lambda(text)
        found = refinement_for(u, 20)
        print(f"  {text:<24} {dc.show(found) if found is not None else 'none within 20 head steps'}")


if __name__ == "__main__":
    main()
