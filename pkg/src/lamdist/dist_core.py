"""The distributive lambda-calculus: labeled intersection types as proof terms.

Terms are typing derivations of a non-idempotent intersection type system.
Every abstraction carries a label, and arguments are lists rather than single
terms; substitution sends each argument to the unique free occurrence of the
bound variable with the same type. On correct terms reduction is confluent
and strongly normalizing, and a derivation is determined up to permutation
equivalence by the set of labels it contracts.

As in :mod:`lamdist.lambda_core`, bound variables are de Bruijn indices and
free variables are named. Positions use ``0`` for the body of an abstraction
or the function of an application and ``i + 1`` for the ``i``-th argument.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence, Union

from .errors import (DistTypeError, InvalidStepError, NotCoinitialError,
                     SubstitutionError)
from .lambda_core import Position, format_position

# ---------------------------------------------------------------------------
# Types


class DistType:
    __slots__ = ()

    @property
    def external_label(self) -> int:
        return self.label

    def __str__(self):
        return show_type(self)


@dataclass(frozen=True, eq=False, repr=False)
class Base(DistType):
    """A base type ``name^label``."""

    name: str
    label: int
    key: tuple = field(init=False, repr=False, compare=False)
    label_key: tuple = field(init=False, repr=False, compare=False)
    deep_sequential: bool = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "key", (0, self.name, self.label))
        object.__setattr__(self, "label_key", (0, self.label))
        object.__setattr__(self, "deep_sequential", True)

    def __eq__(self, other):
        return isinstance(other, DistType) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Base({self.name!r}, {self.label})"


@dataclass(frozen=True, eq=False, repr=False)
class Arrow(DistType):
    """An arrow type ``[domain] ->^label codomain``; the domain is a multiset."""

    domain: tuple[DistType, ...]
    label: int
    codomain: DistType
    key: tuple = field(init=False, repr=False, compare=False)
    label_key: tuple = field(init=False, repr=False, compare=False)
    deep_sequential: bool = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        dom = tuple(self.domain)
        object.__setattr__(self, "domain", dom)
        object.__setattr__(self, "key", (
            1, self.label, tuple(sorted(d.key for d in dom)), self.codomain.key))
        object.__setattr__(self, "label_key", (
            1, self.label, tuple(sorted(d.label_key for d in dom)), self.codomain.label_key))
        object.__setattr__(self, "deep_sequential", (
            is_sequential(dom)
            and all(d.deep_sequential for d in dom)
            and self.codomain.deep_sequential))

    def __eq__(self, other):
        return isinstance(other, DistType) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Arrow({list(self.domain)!r}, {self.label}, {self.codomain!r})"


TypeMultiset = tuple[DistType, ...]


def multiset_eq(a: Iterable[DistType], b: Iterable[DistType], label_only: bool = False) -> bool:
    if label_only:
        return Counter(x.label_key for x in a) == Counter(x.label_key for x in b)
    return Counter(x.key for x in a) == Counter(x.key for x in b)


def is_sequential(ms: Iterable[DistType]) -> bool:
    """External labels are pairwise distinct."""
    labels = [t.external_label for t in ms]
    return len(labels) == len(set(labels))


def arrows_in(t: DistType) -> Iterator[Arrow]:
    if isinstance(t, Arrow):
        yield t
        for d in t.domain:
            yield from arrows_in(d)
        yield from arrows_in(t.codomain)


# ---------------------------------------------------------------------------
# Terms


class DistTerm:
    __slots__ = ()

    def __str__(self):
        return show(self)


@dataclass(frozen=True, eq=False, repr=False)
class DVar(DistTerm):
    """A free variable occurrence ``name^type``."""

    name: str
    type: DistType
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("v", self.name, self.type)))

    def __eq__(self, other):
        return isinstance(other, DVar) and other.name == self.name and other.type == self.type

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"DVar({self.name!r}, {self.type!r})"


@dataclass(frozen=True, eq=False, repr=False)
class DBVar(DistTerm):
    """A bound variable occurrence, as a de Bruijn index with its type."""

    index: int
    type: DistType
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("b", self.index, self.type)))

    def __eq__(self, other):
        return isinstance(other, DBVar) and other.index == self.index and other.type == self.type

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"DBVar({self.index}, {self.type!r})"


@dataclass(frozen=True, eq=False, repr=False)
class DLam(DistTerm):
    label: int
    body: DistTerm
    hint: str = "x"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("l", self.label, self.body._hash)))

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, DLam) and other._hash == self._hash
                and other.label == self.label and other.body == self.body)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"DLam({self.label}, {self.body!r}, {self.hint!r})"


@dataclass(frozen=True, eq=False, repr=False)
class DApp(DistTerm):
    fun: DistTerm
    args: tuple[DistTerm, ...]
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        args = tuple(self.args)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "_hash", hash(("a", self.fun._hash, tuple(a._hash for a in args))))

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, DApp) and other._hash == self._hash
                and other.fun == self.fun and other.args == self.args)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"DApp({self.fun!r}, {list(self.args)!r})"


def dlam(name: str, label: int, body: DistTerm) -> DLam:
    """Bind the free variable ``name`` of ``body`` under a lambda labeled ``label``."""
    return DLam(label, _abstract(body, name, 0), name)


def _abstract(t: DistTerm, name: str, depth: int) -> DistTerm:
    if isinstance(t, DVar):
        return DBVar(depth, t.type) if t.name == name else t
    if isinstance(t, DBVar):
        return t
    if isinstance(t, DLam):
        return DLam(t.label, _abstract(t.body, name, depth + 1), t.hint)
    return DApp(_abstract(t.fun, name, depth), tuple(_abstract(a, name, depth) for a in t.args))


# ---------------------------------------------------------------------------
# Structure


def subterm(t: DistTerm, pos: Sequence[int]) -> DistTerm:
    for d in pos:
        if isinstance(t, DLam) and d == 0:
            t = t.body
        elif isinstance(t, DApp) and d == 0:
            t = t.fun
        elif isinstance(t, DApp) and 1 <= d <= len(t.args):
            t = t.args[d - 1]
        else:
            raise InvalidStepError(f"position {format_position(pos)} does not exist")
    return t


def replace(t: DistTerm, pos: Sequence[int], new: DistTerm) -> DistTerm:
    if not pos:
        return new
    d, rest = pos[0], pos[1:]
    if isinstance(t, DLam) and d == 0:
        return DLam(t.label, replace(t.body, rest, new), t.hint)
    if isinstance(t, DApp) and d == 0:
        return DApp(replace(t.fun, rest, new), t.args)
    if isinstance(t, DApp) and 1 <= d <= len(t.args):
        args = list(t.args)
        args[d - 1] = replace(args[d - 1], rest, new)
        return DApp(t.fun, tuple(args))
    raise InvalidStepError(f"position {format_position(pos)} does not exist")


def positions(t: DistTerm, prefix: Position = ()) -> Iterator[Position]:
    yield prefix
    if isinstance(t, DLam):
        yield from positions(t.body, prefix + (0,))
    elif isinstance(t, DApp):
        yield from positions(t.fun, prefix + (0,))
        for i, a in enumerate(t.args, 1):
            yield from positions(a, prefix + (i,))


def size(t: DistTerm) -> int:
    if isinstance(t, DLam):
        return 1 + size(t.body)
    if isinstance(t, DApp):
        return 1 + size(t.fun) + sum(size(a) for a in t.args)
    return 1


def free_vars(t: DistTerm) -> set[str]:
    if isinstance(t, DVar):
        return {t.name}
    if isinstance(t, DBVar):
        return set()
    if isinstance(t, DLam):
        return free_vars(t.body)
    out = free_vars(t.fun)
    for a in t.args:
        out |= free_vars(a)
    return out


def lambda_labels(t: DistTerm) -> list[int]:
    """Multiset of labels decorating the lambdas of ``t``, in preorder."""
    if isinstance(t, DLam):
        return [t.label] + lambda_labels(t.body)
    if isinstance(t, DApp):
        out = lambda_labels(t.fun)
        for a in t.args:
            out += lambda_labels(a)
        return out
    return []


def count_lambdas(t: DistTerm) -> int:
    return len(lambda_labels(t))


# ---------------------------------------------------------------------------
# Typing

VarKey = Union[str, int]  # free name, or de Bruijn level of a binder
Context = dict


def _add_contexts(into: dict, other: dict):
    for k, v in other.items():
        into[k] = into.get(k, ()) + v


@lru_cache(maxsize=1 << 16)
def type_of(t: DistTerm) -> DistType:
    """Type of ``t`` read off its annotations, without checking the rules."""
    if isinstance(t, (DVar, DBVar)):
        return t.type
    if isinstance(t, DLam):
        return Arrow(tuple(_bound_types(t.body, 0)), t.label, type_of(t.body))
    ft = type_of(t.fun)
    if not isinstance(ft, Arrow):
        raise DistTypeError("application head does not have an arrow type")
    return ft.codomain


def _bound_types(t: DistTerm, depth: int) -> list[DistType]:
    if isinstance(t, DBVar):
        return [t.type] if t.index == depth else []
    if isinstance(t, DVar):
        return []
    if isinstance(t, DLam):
        return _bound_types(t.body, depth + 1)
    out = _bound_types(t.fun, depth)
    for a in t.args:
        out += _bound_types(a, depth)
    return out


def _infer(t: DistTerm, depth: int, pos: Position, label_only: bool, visit=None):
    """Context (keyed by free name or binder level) and type of ``t``."""
    if isinstance(t, DVar):
        ctx, ty = {t.name: (t.type,)}, t.type
    elif isinstance(t, DBVar):
        level = depth - 1 - t.index
        if level < 0:
            raise DistTypeError("loose bound variable", pos)
        ctx, ty = {level: (t.type,)}, t.type
    elif isinstance(t, DLam):
        ctx, body_ty = _infer(t.body, depth + 1, pos + (0,), label_only, visit)
        dom = ctx.pop(depth, ())
        ty = Arrow(dom, t.label, body_ty)
    else:
        ctx, fty = _infer(t.fun, depth, pos + (0,), label_only, visit)
        if not isinstance(fty, Arrow):
            raise DistTypeError(f"head of application has non-arrow type {show_type(fty)}", pos)
        ctx = dict(ctx)
        arg_types = []
        for i, a in enumerate(t.args, 1):
            actx, aty = _infer(a, depth, pos + (i,), label_only, visit)
            _add_contexts(ctx, actx)
            arg_types.append(aty)
        if not multiset_eq(fty.domain, arg_types, label_only):
            raise DistTypeError(
                f"argument types [{', '.join(map(show_type, arg_types))}] do not match "
                f"domain [{', '.join(map(show_type, fty.domain))}]", pos)
        ty = fty.codomain
    if visit is not None:
        visit(t, pos, depth, ctx, ty)
    return ctx, ty


def infer_type(t: DistTerm, label_only: bool = False) -> tuple[dict[str, TypeMultiset], DistType]:
    """The unique judgment ``Γ ⊢ t : A`` of ``t``.

    ``label_only`` compares base types by label alone when matching argument
    types against arrow domains; by default a base type is the pair of its
    name and label.
    """
    ctx, ty = _infer(t, 0, (), label_only)
    return {k: v for k, v in ctx.items()}, ty


def same_judgment(a: tuple[dict[str, TypeMultiset], DistType],
                  b: tuple[dict[str, TypeMultiset], DistType]) -> bool:
    """Equality of judgments, comparing context entries as multisets."""
    (ctx_a, ty_a), (ctx_b, ty_b) = a, b
    return (ty_a == ty_b and ctx_a.keys() == ctx_b.keys()
            and all(multiset_eq(ctx_a[k], ctx_b[k]) for k in ctx_a))


@dataclass(frozen=True)
class CorrectnessReport:
    correct: bool
    condition: str | None = None
    position: Position | None = None
    message: str = ""

    def __bool__(self):
        return self.correct

    def __str__(self):
        if self.correct:
            return "correct"
        return f"incorrect ({self.condition}) at {format_position(self.position)}: {self.message}"


def check_correct(t: DistTerm, label_only: bool = False) -> CorrectnessReport:
    """Typability plus the three correctness conditions, with a witness on failure."""
    problems: list[CorrectnessReport] = []

    def visit(s, pos, depth, ctx, ty):
        if problems:
            return
        for k, ms in ctx.items():
            if not is_sequential(ms):
                problems.append(CorrectnessReport(
                    False, "sequential contexts", pos,
                    f"context entry [{', '.join(map(show_type, ms))}] is not sequential"))
                return
        for candidate in (ty, *(x for ms in ctx.values() for x in ms)):
            if not candidate.deep_sequential:
                problems.append(CorrectnessReport(
                    False, "sequential types", pos,
                    f"type {show_type(candidate)} has a non-sequential arrow domain"))
                return

    try:
        _infer(t, 0, (), label_only, visit)
    except DistTypeError as e:
        return CorrectnessReport(False, "typable", e.position, str(e))
    seen: dict[int, Position] = {}
    for p in positions(t):
        s = subterm(t, p)
        if isinstance(s, DLam):
            if s.label in seen:
                return CorrectnessReport(
                    False, "uniquely labeled lambdas", p,
                    f"label {s.label} already used at {format_position(seen[s.label])}")
            seen[s.label] = p
    if problems:
        return problems[0]
    return CorrectnessReport(True)


def is_correct(t: DistTerm) -> bool:
    return check_correct(t).correct


def types_of_free_occurrences(x: str, t: DistTerm) -> TypeMultiset:
    if isinstance(t, DVar):
        return (t.type,) if t.name == x else ()
    if isinstance(t, DBVar):
        return ()
    if isinstance(t, DLam):
        return types_of_free_occurrences(x, t.body)
    out = types_of_free_occurrences(x, t.fun)
    for a in t.args:
        out += types_of_free_occurrences(x, a)
    return out


# ---------------------------------------------------------------------------
# Substitution


def shift(t: DistTerm, d: int, cutoff: int = 0) -> DistTerm:
    if d == 0:
        return t
    if isinstance(t, DBVar):
        return DBVar(t.index + d, t.type) if t.index >= cutoff else t
    if isinstance(t, DVar):
        return t
    if isinstance(t, DLam):
        return DLam(t.label, shift(t.body, d, cutoff + 1), t.hint)
    return DApp(shift(t.fun, d, cutoff), tuple(shift(a, d, cutoff) for a in t.args))


def _match_table(occurrence_types: Sequence[DistType], args: Sequence[DistTerm]) -> dict:
    arg_types = [type_of(a) for a in args]
    if not multiset_eq(occurrence_types, arg_types):
        raise SubstitutionError(
            f"occurrence types [{', '.join(map(show_type, occurrence_types))}] differ from "
            f"argument types [{', '.join(map(show_type, arg_types))}]")
    table = {}
    for ty, a in zip(arg_types, args):
        if ty in table:
            raise SubstitutionError(f"ambiguous substitution: two arguments of type {show_type(ty)}")
        table[ty] = a
    return table


def _subst_bound(t: DistTerm, depth: int, table: dict) -> DistTerm:
    if isinstance(t, DBVar):
        if t.index == depth:
            return shift(table[t.type], depth)
        if t.index > depth:
            return DBVar(t.index - 1, t.type)
        return t
    if isinstance(t, DVar):
        return t
    if isinstance(t, DLam):
        return DLam(t.label, _subst_bound(t.body, depth + 1, table), t.hint)
    return DApp(_subst_bound(t.fun, depth, table), tuple(_subst_bound(a, depth, table) for a in t.args))


def _subst_free(t: DistTerm, x: str, depth: int, table: dict) -> DistTerm:
    if isinstance(t, DVar):
        return shift(table[t.type], depth) if t.name == x else t
    if isinstance(t, DBVar):
        return t
    if isinstance(t, DLam):
        return DLam(t.label, _subst_free(t.body, x, depth + 1, table), t.hint)
    return DApp(_subst_free(t.fun, x, depth, table), tuple(_subst_free(a, x, depth, table) for a in t.args))


def dist_substitute(t: DistTerm, x: str, args: Sequence[DistTerm]) -> DistTerm:
    """Type-directed substitution ``t{x := [args]}`` of the free variable ``x``.

    Each free occurrence of ``x`` receives the argument of the same type. The
    multiset of occurrence types must equal the multiset of argument types.
    """
    table = _match_table(types_of_free_occurrences(x, t), list(args))
    return _subst_free(t, x, 0, table)


def beta(body: DistTerm, args: Sequence[DistTerm]) -> DistTerm:
    """Contractum of ``(λ^ℓ x. body) args`` with ``body`` in de Bruijn form."""
    table = _match_table(_bound_types(body, 0), list(args))
    return _subst_bound(body, 0, table)


# ---------------------------------------------------------------------------
# Steps


def is_redex(t: DistTerm) -> bool:
    return isinstance(t, DApp) and isinstance(t.fun, DLam)


@lru_cache(maxsize=1 << 16)
def _redex_table(t: DistTerm) -> tuple[tuple[Position, int], ...]:
    out = []
    for p in positions(t):
        s = subterm(t, p)
        if is_redex(s):
            out.append((p, s.fun.label))
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def _contract(t: DistTerm, pos: Position) -> DistTerm:
    r = subterm(t, pos)
    if not is_redex(r):
        raise InvalidStepError(f"no redex at {format_position(pos)}")
    return replace(t, pos, beta(r.fun.body, r.args))


def _position_of_label(t: DistTerm, label: int) -> Position | None:
    for p, lab in _redex_table(t):
        if lab == label:
            return p
    return None


def _step_label(t: DistTerm, label: int) -> DistTerm:
    p = _position_of_label(t, label)
    if p is None:
        raise InvalidStepError(f"no redex labeled {label} in {show(t)}")
    return _contract(t, p)


@dataclass(frozen=True)
class DistStep:
    """A step of the distributive calculus; ``label`` is that of the contracted lambda."""

    source: DistTerm
    redex: Position
    label: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "redex", tuple(self.redex))
        r = subterm(self.source, self.redex)
        if not is_redex(r):
            raise InvalidStepError(f"no redex at {format_position(self.redex)}")
        if self.label is None:
            object.__setattr__(self, "label", r.fun.label)
        elif self.label != r.fun.label:
            raise InvalidStepError(f"redex at {format_position(self.redex)} is labeled "
                                   f"{r.fun.label}, not {self.label}")

    @classmethod
    def by_label(cls, source: DistTerm, label: int) -> "DistStep":
        p = _position_of_label(source, label)
        if p is None:
            raise InvalidStepError(f"no redex labeled {label} in {show(source)}")
        return cls(source, p, label)

    @cached_property
    def target(self) -> DistTerm:
        return _contract(self.source, self.redex)

    def __str__(self):
        return f"#{self.label}"


@dataclass(frozen=True)
class DistDerivation:
    source: DistTerm
    steps: tuple[DistStep, ...] = ()

    def __post_init__(self):
        steps = tuple(self.steps)
        object.__setattr__(self, "steps", steps)
        cur = self.source
        for s in steps:
            if s.source != cur:
                raise NotCoinitialError("derivation steps are not composable")
            cur = s.target

    @classmethod
    def from_labels(cls, source: DistTerm, labels: Iterable[int]) -> "DistDerivation":
        steps = []
        cur = source
        for lab in labels:
            s = DistStep.by_label(cur, lab)
            steps.append(s)
            cur = s.target
        return cls(source, tuple(steps))

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(s.label for s in self.steps)

    @property
    def labs(self) -> frozenset[int]:
        return frozenset(self.labels)

    @cached_property
    def target(self) -> DistTerm:
        return self.steps[-1].target if self.steps else self.source

    def __len__(self):
        return len(self.steps)

    def then(self, other: "DistDerivation") -> "DistDerivation":
        if other.source != self.target:
            raise NotCoinitialError("derivations are not composable")
        return DistDerivation(self.source, self.steps + other.steps)

    def __str__(self):
        return " ".join(f"#{lab}" for lab in self.labels) if self.steps else "(empty)"


def labs(rho: DistDerivation) -> frozenset[int]:
    return rho.labs


def dist_redexes(t: DistTerm) -> tuple[DistStep, ...]:
    return tuple(DistStep(t, p, lab) for p, lab in _redex_table(t))


def apply_dist_step(step: DistStep) -> DistTerm:
    return step.target


def normalize(t: DistTerm) -> tuple[DistTerm, DistDerivation]:
    """Leftmost-outermost reduction to the unique normal form."""
    path = []
    cur = t
    while True:
        table = _redex_table(cur)
        if not table:
            break
        path.append(table[0][1])
        cur = _contract(cur, table[0][0])
    return cur, DistDerivation.from_labels(t, path)


def _require_coinitial(a: DistTerm, b: DistTerm):
    if a != b:
        raise NotCoinitialError("derivations or steps are not coinitial")


def dist_residual(r: DistStep, s: DistStep) -> tuple[DistStep, ...]:
    """R/S: empty when R = S, otherwise the step of the target with R's label."""
    _require_coinitial(r.source, s.source)
    if r.label == s.label:
        return ()
    p = _position_of_label(s.target, r.label)
    return () if p is None else (DistStep(s.target, p, r.label),)


@lru_cache(maxsize=1 << 16)
def _project_labels(t: DistTerm, rho: tuple[int, ...], sigma: tuple[int, ...]) -> tuple[int, ...]:
    if not rho:
        return ()
    if not sigma:
        return rho
    r = rho[0]
    alive = True
    cur = t
    for s in sigma:
        if r == s:
            alive = False
            break
        cur = _step_label(cur, s)
        if _position_of_label(cur, r) is None:
            raise InvalidStepError(f"step {r} has no residual after {s}")
    head = (r,) if alive else ()
    if len(rho) == 1:
        return head
    sigma_after_r = _project_labels(t, sigma, (r,))
    return head + _project_labels(_step_label(t, r), rho[1:], sigma_after_r)


def dist_project(rho: DistDerivation, sigma: DistDerivation) -> DistDerivation:
    """rho/sigma by iterated residuals."""
    _require_coinitial(rho.source, sigma.source)
    return DistDerivation.from_labels(
        sigma.target, _project_labels(rho.source, rho.labels, sigma.labels))


def dist_prefix(rho: DistDerivation, sigma: DistDerivation) -> bool:
    """Prefix order, decided by inclusion of label sets."""
    _require_coinitial(rho.source, sigma.source)
    return rho.labs <= sigma.labs


def dist_equiv(rho: DistDerivation, sigma: DistDerivation) -> bool:
    """Permutation equivalence, decided by equality of label sets."""
    _require_coinitial(rho.source, sigma.source)
    return rho.labs == sigma.labs


def dist_join(rho: DistDerivation, sigma: DistDerivation) -> DistDerivation:
    return rho.then(dist_project(sigma, rho))


def dist_meet(rho: DistDerivation, sigma: DistDerivation) -> DistDerivation:
    """Greatest lower bound, built one common step at a time.

    When several source steps carry a common label the smallest label is used.
    """
    _require_coinitial(rho.source, sigma.source)
    common = rho.labs & sigma.labs
    if not common:
        return DistDerivation(rho.source, ())
    candidates = [s for s in dist_redexes(rho.source) if s.label in common]
    if not candidates:
        raise InvalidStepError("no common source step although label sets intersect")
    r = min(candidates, key=lambda s: s.label)
    one = DistDerivation(rho.source, (r,))
    rest = dist_meet(dist_project(rho, one), dist_project(sigma, one))
    return one.then(rest)


# ---------------------------------------------------------------------------
# Printing


def show_type(t: DistType) -> str:
    if isinstance(t, Base):
        return f"{t.name}^{t.label}"
    dom = ", ".join(show_type(d) for d in t.domain)
    return f"[{dom}]->^{t.label} {show_type(t.codomain)}"


def show(t: DistTerm) -> str:
    return _show(t, [], free_vars(t))


def _fresh_name(hint: str, avoid: set[str]) -> str:
    if hint not in avoid:
        return hint
    i = 1
    while f"{hint}{i}" in avoid:
        i += 1
    return f"{hint}{i}"


def _show(t: DistTerm, names: list[str], free: set[str]) -> str:
    if isinstance(t, DVar):
        return f"{t.name}^{show_type(t.type)}"
    if isinstance(t, DBVar):
        return f"{names[len(names) - 1 - t.index]}^{show_type(t.type)}"
    if isinstance(t, DLam):
        name = _fresh_name(t.hint or "x", free | set(names))
        return f"\\{name}^{t.label}. {_show(t.body, names + [name], free)}"
    head = _show(t.fun, names, free)
    if isinstance(t.fun, DLam) or (isinstance(t.fun, (DVar, DBVar)) and isinstance(t.fun.type, Arrow)):
        head = f"({head})"
    return f"{head}[{', '.join(_show(a, names, free) for a in t.args)}]"
