"""Worked examples shared by several test modules, with their step names."""

from lamdist import lambda_core as lc
from lamdist.parsing import parse_dist, parse_lambda
from lamdist.refine import witness

K = parse_lambda(r"\x y. x")
I = parse_lambda(r"\x. x")
DEFS = {"K": K, "I": I}

# (\x.x x)(K z): R contracts K z, S contracts the root and duplicates R.
DUP = parse_lambda("(\\x. x x) (K z)", DEFS)
DUP_R = (1,)
DUP_S = ()

# (\x.y x x)(I z) with a refinement that types only the first copy of x.
TRIPLE = parse_lambda("(\\x. y x x) (I z)", DEFS)
TRIPLE_PRIME = parse_dist(
    r"(\x^1. (y^[α^2]->^3 []->^4 β^5)[x^α^2][])[(\x^5. x^α^2)[z^α^2]]")
TRIPLE_W = witness(TRIPLE_PRIME, TRIPLE)
R1 = ()          # root step
S = (1,)         # I z at the source
S11 = (0, 1)     # first copy of I z after R1
S21 = (1,)       # second copy of I z after R1
S22 = (1,)       # second copy of I z after R1 S11
R2 = ()          # root step after S


def triple(*positions) -> lc.LamDerivation:
    return lc.LamDerivation.from_positions(TRIPLE, positions)


# A distributive term whose graph is a 2x3 grid; steps by label:
# S = #1 and R = #4 at the source, T = #3 after S.
GRID = parse_dist(r"(\x^1. (x^[α^2]->^3 α^2)[x^α^2])[\y^3. y^α^2, (\w^4. w^α^2)[z^α^2]]")

# x ((\x.x) y) and refinements simulating its only step by 0, 1 and 2 steps.
SIM = parse_lambda("x ((\\x. x) y)")
SIM_ZERO = parse_dist("(x^[]->^1 α^2)[]")
SIM_ONE = parse_dist(r"(x^[α^1]->^2 β^3)[(\x^4. x^α^1)[y^α^1]]")
SIM_ONE_AFTER = parse_dist("(x^[α^1]->^2 β^3)[y^α^1]")
SIM_TWO = parse_dist(r"(x^[α^1, β^2]->^3 γ^4)[(\x^5. x^α^1)[y^α^1], (\x^6. x^β^2)[y^β^2]]")
SIM_TWO_AFTER = parse_dist("(x^[α^1, β^2]->^3 γ^4)[y^α^1, y^β^2]")

OMEGA = parse_lambda(r"(\x. x x) (\x. x x)")
