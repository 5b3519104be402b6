"""Pure lambda-calculus: terms, beta-steps, Levy residuals and projections.

Bound variables are de Bruijn indices (``BVar``); free variables keep their
names (``Var``). Binder names survive only as printing hints, so structural
equality of terms is alpha-equivalence.

Positions are tuples of child indices: ``0`` is the body of an abstraction or
the function of an application, ``1`` the argument of an application. The
empty tuple is the root.

Residuals are computed positionally, which is exact for the lambda-calculus:
a redex inside the argument of the contracted redex has one residual per
occurrence of the bound variable, a redex inside the body moves up by two
levels, and any other redex keeps its position.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import FuelExhaustedError, InvalidStepError, NotCoinitialError

Position = tuple[int, ...]


class Term:
    """Base class of lambda-terms; hashing is cached at construction."""

    __slots__ = ()

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True, eq=False, repr=False)
class Var(Term):
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("v", self.name)))

    def __eq__(self, other):
        return isinstance(other, Var) and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, eq=False, repr=False)
class BVar(Term):
    index: int
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("b", self.index)))

    def __eq__(self, other):
        return isinstance(other, BVar) and other.index == self.index

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"BVar({self.index})"


@dataclass(frozen=True, eq=False, repr=False)
class Lam(Term):
    body: Term
    hint: str = "x"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("l", self.body._hash)))

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Lam) and other._hash == self._hash
                and other.body == self.body)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Lam({self.body!r}, {self.hint!r})"


@dataclass(frozen=True, eq=False, repr=False)
class App(Term):
    fun: Term
    arg: Term
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("a", self.fun._hash, self.arg._hash)))

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, App) and other._hash == self._hash
                and other.fun == self.fun and other.arg == self.arg)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"App({self.fun!r}, {self.arg!r})"


# ---------------------------------------------------------------------------
# Construction helpers


def lam(name: str, body: Term) -> Lam:
    """Abstract the free variable ``name`` of ``body``."""
    return Lam(_abstract(body, name, 0), name)


def _abstract(t: Term, name: str, depth: int) -> Term:
    if isinstance(t, Var):
        return BVar(depth) if t.name == name else t
    if isinstance(t, BVar):
        return t
    if isinstance(t, Lam):
        return Lam(_abstract(t.body, name, depth + 1), t.hint)
    return App(_abstract(t.fun, name, depth), _abstract(t.arg, name, depth))


def apps(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


# ---------------------------------------------------------------------------
# Structure


def size(t: Term) -> int:
    if isinstance(t, Lam):
        return 1 + size(t.body)
    if isinstance(t, App):
        return 1 + size(t.fun) + size(t.arg)
    return 1


def free_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, BVar):
        return set()
    if isinstance(t, Lam):
        return free_vars(t.body)
    return free_vars(t.fun) | free_vars(t.arg)


def subterm(t: Term, pos: Sequence[int]) -> Term:
    for d in pos:
        if isinstance(t, Lam) and d == 0:
            t = t.body
        elif isinstance(t, App) and d in (0, 1):
            t = t.fun if d == 0 else t.arg
        else:
            raise InvalidStepError(f"position {format_position(pos)} does not exist in {show(t)}")
    return t


def replace(t: Term, pos: Sequence[int], new: Term) -> Term:
    if not pos:
        return new
    d, rest = pos[0], pos[1:]
    if isinstance(t, Lam) and d == 0:
        return Lam(replace(t.body, rest, new), t.hint)
    if isinstance(t, App) and d == 0:
        return App(replace(t.fun, rest, new), t.arg)
    if isinstance(t, App) and d == 1:
        return App(t.fun, replace(t.arg, rest, new))
    raise InvalidStepError(f"position {format_position(pos)} does not exist")


def positions(t: Term, prefix: Position = ()) -> Iterator[Position]:
    """All positions of ``t`` in left-to-right preorder."""
    yield prefix
    if isinstance(t, Lam):
        yield from positions(t.body, prefix + (0,))
    elif isinstance(t, App):
        yield from positions(t.fun, prefix + (0,))
        yield from positions(t.arg, prefix + (1,))


def is_redex(t: Term) -> bool:
    return isinstance(t, App) and isinstance(t.fun, Lam)


def format_position(pos: Sequence[int]) -> str:
    return ".".join(map(str, pos)) if pos else "ε"


# ---------------------------------------------------------------------------
# Substitution


def shift(t: Term, d: int, cutoff: int = 0) -> Term:
    if d == 0:
        return t
    if isinstance(t, BVar):
        return BVar(t.index + d) if t.index >= cutoff else t
    if isinstance(t, Var):
        return t
    if isinstance(t, Lam):
        return Lam(shift(t.body, d, cutoff + 1), t.hint)
    return App(shift(t.fun, d, cutoff), shift(t.arg, d, cutoff))


def instantiate(body: Term, arg: Term, depth: int = 0) -> Term:
    """Replace the variable bound just above ``body`` by ``arg``."""
    if isinstance(body, BVar):
        if body.index == depth:
            return shift(arg, depth)
        if body.index > depth:
            return BVar(body.index - 1)
        return body
    if isinstance(body, Var):
        return body
    if isinstance(body, Lam):
        return Lam(instantiate(body.body, arg, depth + 1), body.hint)
    return App(instantiate(body.fun, arg, depth), instantiate(body.arg, arg, depth))


def bound_occurrences(body: Term, depth: int = 0, prefix: Position = ()) -> list[Position]:
    """Positions, relative to ``body``, of the variable bound just above it."""
    if isinstance(body, BVar):
        return [prefix] if body.index == depth else []
    if isinstance(body, Var):
        return []
    if isinstance(body, Lam):
        return bound_occurrences(body.body, depth + 1, prefix + (0,))
    return (bound_occurrences(body.fun, depth, prefix + (0,))
            + bound_occurrences(body.arg, depth, prefix + (1,)))


@lru_cache(maxsize=1 << 16)
def contract(t: Term, pos: Position) -> Term:
    redex = subterm(t, pos)
    if not is_redex(redex):
        raise InvalidStepError(f"no beta-redex at {format_position(pos)} in {show(t)}")
    return replace(t, pos, instantiate(redex.fun.body, redex.arg))


@lru_cache(maxsize=1 << 16)
def redex_positions(t: Term) -> tuple[Position, ...]:
    return tuple(p for p in positions(t) if is_redex(subterm(t, p)))


# ---------------------------------------------------------------------------
# Residuals on positions


@lru_cache(maxsize=1 << 16)
def _residual_positions(t: Term, p: Position, q: Position) -> tuple[Position, ...]:
    """Residuals of the redex at ``p`` after contracting the redex at ``q``."""
    if p == q:
        return ()
    n = len(q)
    if p[:n] != q:
        return (p,)
    rest = p[n:]
    if rest[:2] == (0, 0):
        return (q + rest[2:],)
    if rest[:1] == (1,):
        body = subterm(t, q).fun.body
        return tuple(q + occ + rest[1:] for occ in bound_occurrences(body))
    # p == q + (0,) is the abstraction itself, never a redex
    raise InvalidStepError(f"{format_position(p)} is not a redex position")


def _residual_set(t: Term, ps: Iterable[Position], q: Position) -> frozenset[Position]:
    out: set[Position] = set()
    for p in ps:
        out.update(_residual_positions(t, p, q))
    return frozenset(out)


def _develop_positions(t: Term, ps: frozenset[Position], fuel: int) -> tuple[Position, ...]:
    steps = []
    while ps:
        if fuel <= 0:
            raise FuelExhaustedError("complete development did not terminate within fuel")
        fuel -= 1
        q = min(ps)
        steps.append(q)
        ps = _residual_set(t, ps - {q}, q)
        t = contract(t, q)
    return tuple(steps)


def _default_fuel(t: Term) -> int:
    return 10 * size(t)


def _target(t: Term, path: Sequence[Position]) -> Term:
    for q in path:
        t = contract(t, q)
    return t


@lru_cache(maxsize=1 << 17)
def _project_positions(t: Term, rho: tuple[Position, ...],
                       sigma: tuple[Position, ...]) -> tuple[Position, ...]:
    if not rho:
        return ()
    if not sigma:
        return rho
    r = rho[0]
    # R/sigma as a set, then its canonical complete development
    rs = frozenset((r,))
    cur = t
    for s in sigma:
        rs = _residual_set(cur, rs, s)
        cur = contract(cur, s)
    head = _develop_positions(cur, rs, _fuel_for_development(cur))
    if len(rho) == 1:
        return head
    sigma_after_r = _project_positions(t, sigma, (r,))
    tail = _project_positions(contract(t, r), rho[1:], sigma_after_r)
    return head + tail


def _fuel_for_development(t: Term) -> int:
    # Developments can grow the term; 10x size is a generous bound for the
    # term the development starts from, with a floor for tiny terms.
    return max(_default_fuel(t), 64)


# ---------------------------------------------------------------------------
# Steps and derivations


@dataclass(frozen=True)
class LamStep:
    """A beta-step, identified by its source term and redex position."""

    source: Term
    redex: Position

    def __post_init__(self):
        object.__setattr__(self, "redex", tuple(self.redex))
        if not is_redex(subterm(self.source, self.redex)):
            raise InvalidStepError(
                f"no beta-redex at {format_position(self.redex)} in {show(self.source)}")

    @cached_property
    def target(self) -> Term:
        return contract(self.source, self.redex)

    def __str__(self):
        return f"{format_position(self.redex)}@{show(self.source)}"


@dataclass(frozen=True)
class LamDerivation:
    """A finite sequence of composable beta-steps (possibly empty)."""

    source: Term
    steps: tuple[LamStep, ...] = ()

    def __post_init__(self):
        steps = tuple(self.steps)
        object.__setattr__(self, "steps", steps)
        cur = self.source
        for s in steps:
            if s.source != cur:
                raise NotCoinitialError("derivation steps are not composable")
            cur = s.target

    @classmethod
    def from_positions(cls, source: Term, path: Iterable[Sequence[int]]) -> "LamDerivation":
        steps = []
        cur = source
        for p in path:
            step = LamStep(cur, tuple(p))
            steps.append(step)
            cur = step.target
        return cls(source, tuple(steps))

    @property
    def positions(self) -> tuple[Position, ...]:
        return tuple(s.redex for s in self.steps)

    @cached_property
    def target(self) -> Term:
        return self.steps[-1].target if self.steps else self.source

    def __len__(self):
        return len(self.steps)

    def then(self, other: "LamDerivation") -> "LamDerivation":
        if other.source != self.target:
            raise NotCoinitialError("derivations are not composable")
        return LamDerivation(self.source, self.steps + other.steps)

    def __str__(self):
        if not self.steps:
            return "(empty)"
        return " ; ".join(format_position(p) for p in self.positions)


def empty(source: Term) -> LamDerivation:
    return LamDerivation(source, ())


def _require_coinitial(a: Term, b: Term):
    if a != b:
        raise NotCoinitialError(f"not coinitial: {show(a)} vs {show(b)}")


# ---------------------------------------------------------------------------
# Public operations


def beta_redexes(t: Term) -> tuple[LamStep, ...]:
    """Every beta-redex of ``t``, in left-to-right preorder."""
    return tuple(LamStep(t, p) for p in redex_positions(t))


def apply_step(step: LamStep) -> Term:
    return step.target


def residuals(r: LamStep, s: LamStep) -> tuple[LamStep, ...]:
    """R/S, the residuals of ``r`` after ``s``, in preorder."""
    _require_coinitial(r.source, s.source)
    target = s.target
    return tuple(LamStep(target, p)
                 for p in sorted(_residual_positions(r.source, r.redex, s.redex)))


def residuals_after(r: LamStep, rho: LamDerivation) -> tuple[LamStep, ...]:
    """Residuals of a step after a whole coinitial derivation."""
    _require_coinitial(r.source, rho.source)
    ps = frozenset((r.redex,))
    cur = rho.source
    for q in rho.positions:
        ps = _residual_set(cur, ps, q)
        cur = contract(cur, q)
    return tuple(LamStep(cur, p) for p in sorted(ps))


def develop(source: Term, redexes: Iterable[LamStep | Sequence[int]],
            fuel: int | None = None) -> LamDerivation:
    """Complete development of a set of coinitial redexes.

    The leftmost-outermost residual is contracted first. ``fuel`` bounds the
    number of contractions (default ten times the size of ``source``).
    """
    ps = set()
    for r in redexes:
        if isinstance(r, LamStep):
            _require_coinitial(r.source, source)
            ps.add(r.redex)
        else:
            ps.add(LamStep(source, tuple(r)).redex)
    if fuel is None:
        fuel = _fuel_for_development(source)
    return LamDerivation.from_positions(source, _develop_positions(source, frozenset(ps), fuel))


def project(rho: LamDerivation, sigma: LamDerivation) -> LamDerivation:
    """rho/sigma: what is left of ``rho`` after performing ``sigma``."""
    _require_coinitial(rho.source, sigma.source)
    path = _project_positions(rho.source, rho.positions, sigma.positions)
    return LamDerivation.from_positions(sigma.target, path)


def is_prefix(rho: LamDerivation, sigma: LamDerivation) -> bool:
    _require_coinitial(rho.source, sigma.source)
    return not _project_positions(rho.source, rho.positions, sigma.positions)


def perm_equiv(rho: LamDerivation, sigma: LamDerivation) -> bool:
    return is_prefix(rho, sigma) and is_prefix(sigma, rho)


def join(rho: LamDerivation, sigma: LamDerivation) -> LamDerivation:
    """rho ⊔ sigma = rho (sigma/rho)."""
    return rho.then(project(sigma, rho))


def leftmost_redex(t: Term) -> LamStep | None:
    ps = redex_positions(t)
    return LamStep(t, ps[0]) if ps else None


def is_head_normal_form(t: Term) -> bool:
    while isinstance(t, Lam):
        t = t.body
    while isinstance(t, App):
        t = t.fun
    return isinstance(t, (Var, BVar))


def head_normalize(t: Term, fuel: int) -> LamDerivation | None:
    """Leftmost-outermost reduction to head normal form, or None past ``fuel``."""
    path = []
    cur = t
    while not is_head_normal_form(cur):
        if len(path) >= fuel:
            return None
        p = redex_positions(cur)[0]
        path.append(p)
        cur = contract(cur, p)
    return LamDerivation.from_positions(t, path)


# ---------------------------------------------------------------------------
# Printing


def show(t: Term) -> str:
    return _show(t, [], _all_free(t))


def _all_free(t: Term) -> set[str]:
    return free_vars(t)


def _fresh_name(hint: str, avoid: set[str]) -> str:
    if hint not in avoid:
        return hint
    i = 1
    while f"{hint}{i}" in avoid:
        i += 1
    return f"{hint}{i}"


def _show(t: Term, names: list[str], free: set[str]) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, BVar):
        return names[len(names) - 1 - t.index]
    if isinstance(t, Lam):
        name = _fresh_name(t.hint or "x", free | set(names))
        return "\\" + name + "." + _show(t.body, names + [name], free)
    fun = _show(t.fun, names, free)
    if isinstance(t.fun, Lam):
        fun = f"({fun})"
    arg = _show(t.arg, names, free)
    if isinstance(t.arg, (App, Lam)):
        arg = f"({arg})"
    return f"{fun} {arg}"
