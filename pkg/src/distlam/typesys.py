"""Simple types up to distributivity: normal forms, isomorphism, type checking.

Two types are isomorphic when they have the same normal form under the
oriented rule ``A -> B & C  ~>  (A -> B) & (A -> C)``.  The checker works on
normal forms throughout, which folds every use of the conversion rule into the
elimination rules.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .context import TypingContext
from .rewrite import CORE, Verdict, reducts
from .syntax import (
    Abs, Arrow, Atom, Bound, Conj, Pair, Proj, Term, Type, Var,
    _fresh, instantiate, pretty, pretty_type, subst,
)


# ----------------------------------------------------------------------------
# Normal forms


def _distribute(dom: Type, cod: Type) -> Type:
    # dom and cod already normal
    if isinstance(cod, Conj):
        return Conj(_distribute(dom, cod.left), _distribute(dom, cod.right))
    return Arrow(dom, cod)


@lru_cache(maxsize=65536)
def type_nf(a: Type) -> Type:
    """Distributivity normal form: no subterm of shape ``A -> (B & C)``."""
    if isinstance(a, Atom):
        return a
    if isinstance(a, Conj):
        return Conj(type_nf(a.left), type_nf(a.right))
    return _distribute(type_nf(a.dom), type_nf(a.cod))


def types_iso(a: Type, b: Type) -> bool:
    return type_nf(a) == type_nf(b)


def is_type_nf(a: Type) -> bool:
    if isinstance(a, Atom):
        return True
    if isinstance(a, Conj):
        return is_type_nf(a.left) and is_type_nf(a.right)
    return not isinstance(a.cod, Conj) and is_type_nf(a.dom) and is_type_nf(a.cod)


def nf_measure(a: Type) -> int:
    """Strictly decreases along every distributivity rewrite."""
    if isinstance(a, Atom):
        return 2
    if isinstance(a, Conj):
        return nf_measure(a.left) + nf_measure(a.right) + 1
    return nf_measure(a.dom) * nf_measure(a.cod)


def distribute_step(a: Type) -> Optional[Type]:
    """One outermost-leftmost rewrite ``A -> B & C ~> (A -> B) & (A -> C)``."""
    if isinstance(a, Atom):
        return None
    if isinstance(a, Arrow):
        if isinstance(a.cod, Conj):
            return Conj(Arrow(a.dom, a.cod.left), Arrow(a.dom, a.cod.right))
        dom = distribute_step(a.dom)
        if dom is not None:
            return Arrow(dom, a.cod)
        cod = distribute_step(a.cod)
        return None if cod is None else Arrow(a.dom, cod)
    left = distribute_step(a.left)
    if left is not None:
        return Conj(left, a.right)
    right = distribute_step(a.right)
    return None if right is None else Conj(a.left, right)


def type_nf_stepwise(a: Type) -> Type:
    """:func:`type_nf` by iterated single rewrites, asserting the measure drops."""
    while True:
        nxt = distribute_step(a)
        if nxt is None:
            return a
        assert nf_measure(nxt) < nf_measure(a), (pretty_type(a), pretty_type(nxt))
        a = nxt


def conj_leaves(a: Type) -> list[Type]:
    if isinstance(a, Conj):
        return conj_leaves(a.left) + conj_leaves(a.right)
    return [a]


def map_leaves(a: Type, fn) -> Type:
    """Rebuild the conjunction tree of ``a`` with ``fn`` applied to each leaf."""
    if isinstance(a, Conj):
        return Conj(map_leaves(a.left, fn), map_leaves(a.right, fn))
    return fn(a)


def as_arrow(a: Type) -> Optional[tuple[Type, Type]]:
    """``(D, C)`` with ``a`` isomorphic to ``D -> C``, if such a split exists.

    ``D`` is normal; ``C`` mirrors the conjunction tree of ``a``'s normal form.
    """
    n = type_nf(a)
    leaves = conj_leaves(n)
    if not all(isinstance(leaf, Arrow) for leaf in leaves):
        return None
    dom = leaves[0].dom
    if any(leaf.dom != dom for leaf in leaves):
        return None
    return dom, map_leaves(n, lambda leaf: leaf.cod)


# ----------------------------------------------------------------------------
# Type checking


class TypeCheckError(Exception):
    """Base class of typing failures; ``str()`` is a one-line message."""


class UnboundVariable(TypeCheckError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound variable {name}")


class MissingAnnotation(TypeCheckError):
    def __init__(self, hint: str):
        self.hint = hint
        super().__init__(f"binder {hint} has no type annotation")


def _show(a: Type) -> str:
    return f"{pretty_type(a)} (normal form {pretty_type(type_nf(a))})"


class ProjectionOfNonConjunction(TypeCheckError):
    def __init__(self, term: str, ty: Type):
        self.type = ty
        super().__init__(f"cannot project from {term} : {_show(ty)}, not a conjunction")


class ApplicationOfNonArrow(TypeCheckError):
    def __init__(self, term: str, ty: Type):
        self.type = ty
        super().__init__(f"cannot apply {term} : {_show(ty)}, not an arrow or conjunction of arrows")


class DomainMismatch(TypeCheckError):
    def __init__(self, term: str, fn_type: Type, expected: Type, actual: Type):
        self.fn_type = fn_type
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"argument of {term} : {_show(fn_type)} should have type {_show(expected)}, "
            f"got {_show(actual)}"
        )


def infer(ctx: TypingContext, t: Term) -> Type:
    """The normal-form type of the annotated term ``t`` in ``ctx``.

    Raises a :class:`TypeCheckError` subclass when ``t`` is not typable.
    """
    return _infer(ctx, t, (), ())


def _infer(ctx: TypingContext, t: Term, bound: tuple, names: tuple) -> Type:
    # bound: binder annotations, innermost last; names: binder names for messages
    cls = type(t)
    if cls is Var:
        ty = ctx.lookup(t.name)
        if ty is None:
            raise UnboundVariable(t.name)
        return type_nf(ty)
    if cls is Bound:
        if t.index >= len(bound):
            raise UnboundVariable(f"_{t.index - len(bound)}")
        return type_nf(bound[-1 - t.index])
    if cls is Abs:
        if t.ann is None:
            raise MissingAnnotation(t.hint)
        name = _fresh(t.hint, set(names) | set(ctx.names()))
        body = _infer(ctx, t.body, bound + (t.ann,), names + (name,))
        return type_nf(Arrow(t.ann, body))
    if cls is Pair:
        return Conj(_infer(ctx, t.left, bound, names), _infer(ctx, t.right, bound, names))
    if cls is Proj:
        n = _infer(ctx, t.body, bound, names)
        if not isinstance(n, Conj):
            raise ProjectionOfNonConjunction(_show_term(t.body, names), n)
        return n.left if t.index == 1 else n.right
    fn = _infer(ctx, t.fn, bound, names)
    arg = _infer(ctx, t.arg, bound, names)
    leaves = conj_leaves(fn)
    if not all(isinstance(leaf, Arrow) for leaf in leaves):
        raise ApplicationOfNonArrow(_show_term(t.fn, names), fn)
    for leaf in leaves:
        if leaf.dom != arg:
            raise DomainMismatch(_show_term(t.fn, names), fn, leaf.dom, arg)
    return map_leaves(fn, lambda leaf: leaf.cod)


def _show_term(t: Term, names: tuple) -> str:
    # a subterm under binders has loose indices; print them with the binders' names
    for name in reversed(names):
        if t.loose == 0:
            break
        t = instantiate(t, Var(name))
    return pretty(t)


def check(ctx: TypingContext, t: Term, expected: Type) -> bool:
    """Whether ``t`` has ``expected`` up to isomorphism; typing errors propagate."""
    return types_iso(infer(ctx, t), expected)


def subject_reduction_check(ctx: TypingContext, t: Term) -> Verdict:
    """Every one-step reduct of ``t`` has a type isomorphic to that of ``t``."""
    before = infer(ctx, t)
    steps = reducts(t, CORE)
    if not steps:
        return Verdict.vacuous("normal form")
    for step in steps:
        try:
            after = infer(ctx, step.target)
        except TypeCheckError as err:
            return Verdict.fails(f"{step}: reduct does not type ({err})")
        if not types_iso(before, after):
            return Verdict.fails(
                f"{step}: type {pretty_type(before)} became {pretty_type(after)}"
            )
    return Verdict.holds(f"{len(steps)} reducts")


def typed_subst_check(ctx: TypingContext, x: str, a: Type, t: Term, s: Term) -> Verdict:
    """If ``ctx, x:a |- t : B`` and ``ctx |- s : a`` then ``ctx |- t[s/x] : B``."""
    b = infer(ctx.extend(x, a), t)
    a2 = infer(ctx, s)
    if not types_iso(a, a2):
        return Verdict.vacuous(f"{pretty(s)} has type {pretty_type(a2)}, not {pretty_type(a)}")
    result = subst(t, x, s)
    try:
        b2 = infer(ctx, result)
    except TypeCheckError as err:
        return Verdict.fails(f"{pretty(result)} does not type: {err}")
    if not types_iso(b, b2):
        return Verdict.fails(f"{pretty(result)} : {pretty_type(b2)}, expected {pretty_type(b)}")
    return Verdict.holds()
