"""Pure and distributive lambda-calculus toolkit."""

from .dist_core import (Arrow, Base, DApp, DBVar, DistDerivation, DistStep, DLam,
                        DVar, check_correct, dist_equiv, dist_join, dist_meet,
                        dist_prefix, dist_project, dist_redexes, dist_residual,
                        dist_substitute, dlam, infer_type, lambda_labels, normalize,
                        types_of_free_occurrences)
from .errors import (DistTypeError, FuelExhaustedError, InvalidStepError,
                     LamDistError, NotCoinitialError, ParseError, RefinementError,
                     SpaceTooLargeError, SubstitutionError)
from .factor import (FactorizationResult, GrothendieckSpace, build_grothendieck,
                     check_factorization_iso, coarse_steps, factorize, is_garbage,
                     is_garbage_free, sieve)
from .lambda_core import (App, BVar, Lam, LamDerivation, LamStep, Var, apply_step,
                          beta_redexes, develop, is_prefix, join, lam, perm_equiv,
                          project, residuals)
from .parsing import parse_dist, parse_lambda, parse_type
from .refine import (RefinementWitness, canonical_hnf_refinement, check_refines,
                     is_strongly_sequential, pullback_refinement, refinement_for)
from .simulate import sim_residual_derivation, sim_residual_step, sim_transport
from .spaces import (ReductionGraph, SpaceLattice, build_space, enumerate_graph_dist,
                     enumerate_graph_lambda)
