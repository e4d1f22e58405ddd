"""Random and exhaustive generation of terms and types."""
from __future__ import annotations

import random
from collections import Counter
from functools import lru_cache
from typing import Iterator, Optional

from ..context import TypingContext
from ..syntax import (
    Abs, App, Arrow, Atom, Bound, Conj, Pair, Proj, Term, Type, Var, free_vars, pretty_type,
    type_size,
)
from ..typesys import as_arrow, conj_leaves, infer, type_nf, types_iso
from .oracles import atoms_of, iso_class, iso_neighbors
from .report import GenConfig

# Constructor weights for untyped generation, renormalised when the size
# budget rules some constructors out.
WEIGHTS = {"var": 20, "abs": 20, "app": 25, "pair": 15, "proj": 20}
MIN_SIZE = {"var": 1, "abs": 2, "proj": 2, "app": 3, "pair": 3}

DETOUR_PROBABILITY = 0.25
MAX_DETOUR_STEPS = 2


def var_names(n: int) -> list[str]:
    letters = [c for c in "abcdefghijklmnoqrstuvwxyz"]
    return [letters[i % len(letters)] + ("" if i < len(letters) else str(i // len(letters)))
            for i in range(n)]


def _pick(rng: random.Random, budget: int, allowed=WEIGHTS) -> str:
    names = [k for k in allowed if MIN_SIZE[k] <= budget]
    return rng.choices(names, weights=[allowed[k] for k in names])[0]


# ----------------------------------------------------------------------------
# Types


def enumerate_types(size: int, atoms: list[Atom]) -> list[Type]:
    """Every type with exactly ``size`` nodes."""
    return list(_types_of_size(size, tuple(atoms)))


@lru_cache(maxsize=None)
def _types_of_size(size: int, atoms: tuple) -> tuple:
    if size == 1:
        return atoms
    out = []
    for k in range(1, size - 1):
        for a in _types_of_size(k, atoms):
            for b in _types_of_size(size - 1 - k, atoms):
                out.append(Arrow(a, b))
                out.append(Conj(a, b))
    return tuple(out)


def types_up_to(size: int, atoms: list[Atom]) -> list[Type]:
    return [a for n in range(1, size + 1) for a in enumerate_types(n, atoms)]


def gen_type(rng: random.Random, max_size: int, atoms: list[Atom]) -> Type:
    if max_size < 3 or rng.random() < 0.3:
        return rng.choice(atoms)
    k = rng.randint(1, max_size - 2)
    left = gen_type(rng, k, atoms)
    right = gen_type(rng, max_size - 1 - type_size(left), atoms)
    return Arrow(left, right) if rng.random() < 0.5 else Conj(left, right)


def random_variant(rng: random.Random, a: Type, steps: int) -> Type:
    """Walk up to ``steps`` random distributivity rewrites (either direction)."""
    for _ in range(steps):
        options = list(iso_neighbors(a))
        if not options:
            break
        a = rng.choice(options)
    return a


# ----------------------------------------------------------------------------
# Untyped terms


def gen_term(cfg: GenConfig, rng: Optional[random.Random] = None) -> Term:
    """A random term of size at most ``cfg.max_size``.

    In closed mode the free variables of the result are abstracted, which
    adds one node per distinct free variable.
    """
    rng = rng or random.Random(cfg.seed)
    names = var_names(cfg.var_pool)
    atoms = atoms_of(cfg.atom_pool)

    def go(budget: int, depth: int) -> Term:
        kind = _pick(rng, budget)
        if kind == "var":
            if depth and (cfg.closed or rng.random() < 0.6):
                return Bound(rng.randrange(depth))
            return Var(rng.choice(names))
        if kind == "abs":
            ann = gen_type(rng, 3, atoms) if cfg.annotated else None
            return Abs(go(budget - 1, depth + 1), ann, "x")
        if kind == "proj":
            return Proj(rng.choice((1, 2)), go(budget - 1, depth))
        k = rng.randint(1, budget - 2)
        left = go(k, depth)
        right = go(budget - 1 - k, depth)
        return App(left, right) if kind == "app" else Pair(left, right)

    t = go(cfg.max_size, 0)
    if cfg.closed:
        for name in sorted(free_vars(t), reverse=True):
            ann = gen_type(rng, 3, atoms) if cfg.annotated else None
            t = Abs.bind(name, t, ann)
    return t


def enumerate_terms(size: int, free: tuple = (), depth: int = 0) -> Iterator[Term]:
    """Every unannotated term of exactly ``size`` nodes over the given free names."""
    if size == 1:
        for k in range(depth):
            yield Bound(k)
        for name in free:
            yield Var(name)
        return
    for body in enumerate_terms(size - 1, free, depth + 1):
        yield Abs(body, None, "x")
    for i in (1, 2):
        for body in enumerate_terms(size - 1, free, depth):
            yield Proj(i, body)
    for k in range(1, size - 1):
        lefts = list(enumerate_terms(k, free, depth))
        rights = list(enumerate_terms(size - 1 - k, free, depth))
        for a in lefts:
            for b in rights:
                yield App(a, b)
                yield Pair(a, b)


def enumerate_terms_up_to(size: int, free: tuple = ()) -> Iterator[Term]:
    for n in range(1, size + 1):
        yield from enumerate_terms(n, free)


def enumerate_annotated_terms(size: int, annotations: list[Type], free: tuple = (),
                              depth: int = 0) -> Iterator[Term]:
    """As :func:`enumerate_terms`, with every binder annotated from ``annotations``."""
    if size == 1:
        yield from enumerate_terms(1, free, depth)
        return
    for body in enumerate_annotated_terms(size - 1, annotations, free, depth + 1):
        for ann in annotations:
            yield Abs(body, ann, "x")
    for i in (1, 2):
        for body in enumerate_annotated_terms(size - 1, annotations, free, depth):
            yield Proj(i, body)
    for k in range(1, size - 1):
        lefts = list(enumerate_annotated_terms(k, annotations, free, depth))
        rights = list(enumerate_annotated_terms(size - 1 - k, annotations, free, depth))
        for a in lefts:
            for b in rights:
                yield App(a, b)
                yield Pair(a, b)


# ----------------------------------------------------------------------------
# Typed terms
#
# A derivation is grown top-down from a goal type.  Every rule is applied up
# to isomorphism: a variable fits when its type is isomorphic to the goal, an
# abstraction when the goal is isomorphic to an arrow, a pair when it is
# isomorphic to a conjunction.  Eliminations introduce a fresh intermediate
# type drawn from a finite candidate set, which is what makes the exhaustive
# enumeration below finite.


def _subtrees(a: Type) -> Iterator[Type]:
    yield a
    if isinstance(a, Arrow):
        yield from _subtrees(a.dom)
        yield from _subtrees(a.cod)
    elif isinstance(a, Conj):
        yield from _subtrees(a.left)
        yield from _subtrees(a.right)


class TypedGrammar:
    """The rule applications available for a goal in a context."""

    def __init__(self, ctx: TypingContext, atoms: list[Atom], universe_size: int = 3):
        self.ctx = ctx
        self.atoms = atoms
        self.universe = types_up_to(universe_size, atoms)
        self._ctx_nf = [(name, type_nf(ty)) for name, ty in ctx.items()]
        base = set()
        for _, ty in ctx.items():
            base |= set(_subtrees(type_nf(ty)))
        self._base = base
        self._candidates: dict = {}
        self._siblings: dict = {}

    def candidates(self, bound: tuple) -> list[Type]:
        """Intermediate types for application arguments."""
        cached = self._candidates.get(bound)
        if cached is None:
            cached = self._candidates[bound] = self._make_candidates(bound)
        return cached

    def _make_candidates(self, bound: tuple) -> list[Type]:
        out = dict.fromkeys(self.universe)
        out.update(dict.fromkeys(sorted(self._base, key=_type_key)))
        for ty in bound:
            out.update(dict.fromkeys(sorted(_subtrees(type_nf(ty)), key=_type_key)))
        return list(out)

    def siblings(self, goal: Type, bound: tuple) -> list[Type]:
        """Intermediate types for the other half of a projected conjunction."""
        key = (type_nf(goal), bound)
        cached = self._siblings.get(key)
        if cached is None:
            cached = self._siblings[key] = self._make_siblings(goal, bound)
        return cached

    def _make_siblings(self, goal: Type, bound: tuple) -> list[Type]:
        out = dict.fromkeys(self.candidates(bound))
        split = as_arrow(goal)
        if split is not None:
            dom = split[0]
            for u in list(out) + sorted(_subtrees(dom), key=_type_key):
                out[Arrow(dom, u)] = None
        return list(out)

    def variables(self, goal: Type, bound: tuple) -> list[Term]:
        g = type_nf(goal)
        out: list[Term] = [Var(n) for n, ty in self._ctx_nf if ty == g]
        out += [Bound(k) for k in range(len(bound)) if type_nf(bound[-1 - k]) == g]
        return out

    def in_scope(self, bound: tuple) -> list[tuple[Term, Type]]:
        """Every variable usable under ``bound`` with its normal-form type."""
        out: list[tuple[Term, Type]] = [(Var(n), ty) for n, ty in self._ctx_nf]
        out += [(Bound(k), type_nf(bound[-1 - k])) for k in range(len(bound))]
        return out

    def annotations(self, goal: Type) -> list[Type]:
        """Annotations ``D`` such that ``goal`` is isomorphic to ``D -> C`` for some ``C``."""
        split = as_arrow(goal)
        if split is None:
            return []
        return sorted(iso_class(split[0], 16)[0], key=_type_key)


@lru_cache(maxsize=65536)
def _type_key(a: Type) -> tuple:
    return (type_size(a), pretty_type(a))


class _GiveUp(Exception):
    pass


class TypedGenerator:
    """Random walk through :class:`TypedGrammar` with backtracking.

    ``stats`` counts detours and the notable rule applications.
    """

    def __init__(self, rng: random.Random, grammar: TypedGrammar,
                 detour_probability: float = DETOUR_PROBABILITY, work_limit: int = 20_000):
        self.rng = rng
        self.grammar = grammar
        self.detour_probability = detour_probability
        self.work_limit = work_limit
        self.stats: Counter = Counter()
        self._work = 0

    def generate(self, goal: Type, budget: int) -> Optional[Term]:
        self._work = 0
        try:
            return self._gen(goal, budget, (), False)
        except _GiveUp:
            return None

    def _gen(self, goal: Type, budget: int, bound: tuple, app_head: bool) -> Optional[Term]:
        self._work += 1
        if self._work > self.work_limit:
            raise _GiveUp
        rng = self.rng
        if rng.random() < self.detour_probability:
            goal = random_variant(rng, goal, rng.randint(1, MAX_DETOUR_STEPS))
            self.stats["detour"] += 1
            if app_head:
                self.stats["app_head_detour"] += 1
        kinds = [k for k in WEIGHTS if MIN_SIZE[k] <= budget]
        order = []
        while kinds:
            k = rng.choices(kinds, weights=[WEIGHTS[x] for x in kinds])[0]
            kinds.remove(k)
            order.append(k)
        for kind in order:
            t = getattr(self, "_" + kind)(goal, budget, bound)
            if t is not None:
                if app_head and kind == "pair":
                    self.stats["pair_as_arrow"] += 1
                return t
        return None

    def _var(self, goal, budget, bound):
        options = self.grammar.variables(goal, bound)
        return self.rng.choice(options) if options else None

    def _abs(self, goal, budget, bound):
        if isinstance(goal, Arrow):
            ann, cod = goal.dom, goal.cod
        else:
            split = as_arrow(goal)
            if split is None:
                return None
            ann, cod = split
        body = self._gen(cod, budget - 1, bound + (ann,), False)
        return None if body is None else Abs(body, ann, "x")

    def _pair(self, goal, budget, bound):
        if not isinstance(goal, Conj):
            n = type_nf(goal)
            if not isinstance(n, Conj):
                return None
            goal = n
        k = self.rng.randint(1, budget - 2)
        left = self._gen(goal.left, k, bound, False)
        if left is None:
            return None
        right = self._gen(goal.right, budget - 1 - left.size, bound, False)
        return None if right is None else Pair(left, right)

    def _app(self, goal, budget, bound):
        arg_type = self.rng.choice(self.grammar.candidates(bound))
        k = self.rng.randint(1, budget - 2)
        fn = self._gen(Arrow(arg_type, goal), k, bound, True)
        if fn is None:
            return None
        arg = self._gen(arg_type, budget - 1 - fn.size, bound, False)
        if arg is None:
            return None
        self.stats["app"] += 1
        return App(fn, arg)

    def _proj(self, goal, budget, bound):
        other = self.rng.choice(self.grammar.siblings(goal, bound))
        i = self.rng.choice((1, 2))
        target = Conj(goal, other) if i == 1 else Conj(other, goal)
        body = self._gen(target, budget - 1, bound, False)
        if body is None:
            return None
        self.stats["proj"] += 1
        return Proj(i, body)


def derive_all(grammar: TypedGrammar, goal: Type, budget: int, bound: tuple = ()) -> frozenset:
    """Every term of size at most ``budget`` the grammar derives for ``goal``."""
    return _derive_all(grammar, type_nf(goal), budget, tuple(type_nf(b) for b in bound))


def _derive_all(grammar: TypedGrammar, goal: Type, budget: int, bound: tuple) -> frozenset:
    memo = grammar.__dict__.setdefault("_memo", {})
    key = (goal, budget, bound)
    if key in memo:
        return memo[key]
    out: set = set(grammar.variables(goal, bound))
    if budget >= 2:
        split = as_arrow(goal)
        if split is not None:
            for ann in grammar.annotations(goal):
                for body in _derive_all(grammar, split[1], budget - 1, bound + (type_nf(ann),)):
                    out.add(Abs(body, ann, "x"))
        if budget == 2:
            # the body is a variable, so only its own type can be projected
            for var, ty in grammar.in_scope(bound):
                if isinstance(ty, Conj):
                    if ty.left == goal:
                        out.add(Proj(1, var))
                    if ty.right == goal:
                        out.add(Proj(2, var))
        else:
            for other in grammar.siblings(goal, bound):
                for i, target in ((1, Conj(goal, other)), (2, Conj(other, goal))):
                    for body in _derive_all(grammar, type_nf(target), budget - 1, bound):
                        out.add(Proj(i, body))
    if budget >= 3:
        if isinstance(goal, Conj):
            for k in range(1, budget - 1):
                for left in _derive_all(grammar, goal.left, k, bound):
                    for right in _derive_all(grammar, goal.right, budget - 1 - k, bound):
                        out.add(Pair(left, right))
        # a variable head fixes the argument type
        for var, ty in grammar.in_scope(bound):
            split = as_arrow(ty)
            if split is not None and split[1] == goal:
                for arg in _derive_all(grammar, split[0], budget - 2, bound):
                    out.add(App(var, arg))
        for arg_type in grammar.candidates(bound):
            for k in range(2, budget - 1):
                fns = _derive_all(grammar, type_nf(Arrow(arg_type, goal)), k, bound)
                if not fns:
                    continue
                for arg in _derive_all(grammar, type_nf(arg_type), budget - 1 - k, bound):
                    for fn in fns:
                        out.add(App(fn, arg))
    result = frozenset(out)
    memo[key] = result
    return result


def typed_context(rng: random.Random, cfg: GenConfig) -> TypingContext:
    """One variable per atom, plus ``var_pool`` variables of random small types."""
    atoms = atoms_of(cfg.atom_pool)
    names = var_names(cfg.atom_pool + cfg.var_pool)
    ctx = TypingContext()
    for name, atom in zip(names, atoms):
        ctx = ctx.extend(name, atom)
    for name in names[cfg.atom_pool:]:
        ctx = ctx.extend(name, gen_type(rng, 5, atoms))
    return ctx


def gen_typed_term(cfg: GenConfig, rng: Optional[random.Random] = None,
                   ctx: Optional[TypingContext] = None, goal: Optional[Type] = None,
                   stats: Optional[Counter] = None) -> tuple[TypingContext, Term]:
    """A random well-typed annotated term and its context.

    In closed mode the context is abstracted away and returned empty.  The
    result is always checked with :func:`infer`.
    """
    rng = rng or random.Random(cfg.seed)
    atoms = atoms_of(cfg.atom_pool)
    if ctx is None:
        ctx = typed_context(rng, cfg)
    gen = TypedGenerator(rng, TypedGrammar(ctx, atoms))
    for _ in range(1000):
        want = goal if goal is not None else gen_type(rng, 5, atoms)
        t = gen.generate(want, cfg.max_size)
        if t is not None:
            break
    else:
        raise RuntimeError("could not generate a typed term")
    if stats is not None:
        stats.update(gen.stats)
    ty = infer(ctx, t)
    if not types_iso(ty, want):
        raise AssertionError(f"generated term has type {ty}, wanted {want}")
    if cfg.closed:
        for name, ann in reversed(ctx.items()):
            t = Abs.bind(name, t, ann)
        ctx = TypingContext()
        infer(ctx, t)
    return ctx, t


def leaf_count(a: Type) -> int:
    return len(conj_leaves(type_nf(a)))


__all__ = [
    "WEIGHTS", "TypedGenerator", "TypedGrammar", "derive_all",
    "enumerate_annotated_terms", "enumerate_terms", "enumerate_terms_up_to",
    "enumerate_types", "gen_term", "gen_type", "gen_typed_term", "random_variant",
    "typed_context", "types_up_to", "var_names",
]

