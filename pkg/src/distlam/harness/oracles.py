"""Independent oracles for the checks in the suites.

Nothing here uses type normal forms: isomorphism is explored by rewriting in
both directions with the equational rules, and typing by a search over
derivations in which the conversion rule is applied explicitly.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Optional

from ..context import TypingContext
from ..rewrite import CORE, RuleSet, reducts
from ..syntax import Abs, App, Arrow, Atom, Bound, Conj, Pair, Proj, Term, Type, Var


# ----------------------------------------------------------------------------
# Isomorphism by equational proof search


def iso_neighbors(a: Type) -> tuple:
    """Types one distributivity rewrite away from ``a``, in either direction."""
    return _neighbors(a)


@lru_cache(maxsize=1 << 18)
def _neighbors(a: Type) -> tuple:
    out = []
    if isinstance(a, Arrow):
        if isinstance(a.cod, Conj):
            out.append(Conj(Arrow(a.dom, a.cod.left), Arrow(a.dom, a.cod.right)))
        out += [Arrow(d, a.cod) for d in _neighbors(a.dom)]
        out += [Arrow(a.dom, c) for c in _neighbors(a.cod)]
    elif isinstance(a, Conj):
        left, right = a.left, a.right
        if isinstance(left, Arrow) and isinstance(right, Arrow) and left.dom == right.dom:
            out.append(Arrow(left.dom, Conj(left.cod, right.cod)))
        out += [Conj(l2, right) for l2 in _neighbors(left)]
        out += [Conj(left, r2) for r2 in _neighbors(right)]
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def iso_class(a: Type, depth: int) -> tuple[frozenset, bool]:
    """Types provably equal to ``a`` in at most ``depth`` rewrites.

    The flag tells whether the search saturated, in which case the set is the
    whole equivalence class.
    """
    seen = {a}
    frontier = [a]
    for _ in range(depth):
        nxt = []
        for b in frontier:
            for c in iso_neighbors(b):
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        if not nxt:
            return frozenset(seen), True
        frontier = nxt
    saturated = not any(c not in seen for b in frontier for c in iso_neighbors(b))
    return frozenset(seen), saturated


def iso_proof_search(a: Type, b: Type, depth: int) -> bool:
    if depth < 1:
        raise ValueError("depth must be at least 1")
    return b in iso_class(a, depth)[0]


# ----------------------------------------------------------------------------
# Typing by derivation search


def derivable_types(ctx: TypingContext, t: Term, depth: int = 4) -> frozenset:
    """Types assigned to ``t`` by derivations with conversions of bounded depth.

    Each subterm's type set is closed under :func:`iso_class` before being
    used by the rule above it, so the conversion rule may appear once per
    node with up to ``depth`` equational steps.
    """

    def close(types) -> frozenset:
        out = set()
        for ty in types:
            out |= iso_class(ty, depth)[0]
        return frozenset(out)

    def go(u: Term, bound: tuple) -> frozenset:
        cls = type(u)
        if cls is Var:
            ty = ctx.lookup(u.name)
            return close([ty]) if ty is not None else frozenset()
        if cls is Bound:
            return close([bound[-1 - u.index]]) if u.index < len(bound) else frozenset()
        if cls is Abs:
            if u.ann is None:
                return frozenset()
            return close(Arrow(u.ann, b) for b in go(u.body, bound + (u.ann,)))
        if cls is Pair:
            lefts, rights = go(u.left, bound), go(u.right, bound)
            return close(Conj(l, r) for l in lefts for r in rights)
        if cls is Proj:
            return close(
                (ty.left if u.index == 1 else ty.right)
                for ty in go(u.body, bound) if isinstance(ty, Conj)
            )
        fns, args = go(u.fn, bound), go(u.arg, bound)
        return close(ty.cod for ty in fns if isinstance(ty, Arrow) and ty.dom in args)

    return go(t, ())


# ----------------------------------------------------------------------------
# Reduction oracles


def reachable_within(src: Term, dst: Term, max_steps: int, rules: RuleSet = CORE,
                     node_cap: int = 200_000) -> Optional[bool]:
    """Whether ``dst`` is reachable from ``src`` in at most ``max_steps`` steps.

    Returns None when the search is cut off by ``node_cap`` before deciding.
    """
    if src == dst:
        return True
    seen = {src}
    frontier = [src]
    for _ in range(max_steps):
        nxt = []
        for t in frontier:
            for step in reducts(t, rules):
                u = step.target
                if u == dst:
                    return True
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
                    if len(seen) > node_cap:
                        return None
        frontier = nxt
        if not frontier:
            break
    return False


def reachable_set(src: Term, max_steps: int, rules: RuleSet = CORE) -> set:
    seen = {src}
    frontier = deque([(src, 0)])
    while frontier:
        t, d = frontier.popleft()
        if d == max_steps:
            continue
        for step in reducts(t, rules):
            if step.target not in seen:
                seen.add(step.target)
                frontier.append((step.target, d + 1))
    return seen


def longest_path_bruteforce(t: Term, rules: RuleSet = CORE, limit: int = 100_000) -> int:
    """Longest reduction sequence from ``t`` by enumerating every path.

    Only meant for tiny strongly normalising terms; raises when the number of
    explored paths passes ``limit``.
    """
    best = 0
    explored = 0
    stack = [(t, 0)]
    while stack:
        u, n = stack.pop()
        explored += 1
        if explored > limit:
            raise RuntimeError("too many paths")
        steps = reducts(u, rules)
        if not steps:
            best = max(best, n)
        for step in steps:
            stack.append((step.target, n + 1))
    return best


def naive_subst(t: Term, x: str, s: Term) -> Term:
    """Substitution that ignores capture; agrees with the real one when nothing can be captured."""
    cls = type(t)
    if cls is Var:
        return s if t.name == x else t
    if cls is Abs:
        return Abs(naive_subst(t.body, x, s), t.ann, t.hint)
    if cls is App:
        return App(naive_subst(t.fn, x, s), naive_subst(t.arg, x, s))
    if cls is Pair:
        return Pair(naive_subst(t.left, x, s), naive_subst(t.right, x, s))
    if cls is Proj:
        return Proj(t.index, naive_subst(t.body, x, s))
    return t


def atoms_of(n: int) -> list[Atom]:
    return [Atom(chr(ord("A") + i)) for i in range(n)]
