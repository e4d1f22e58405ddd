"""Terms and types of the distributive lambda-calculus.

Terms use a locally nameless representation: free variables are named
(:class:`Var`), bound variables are de Bruijn indices (:class:`Bound`), and
every binder keeps a name hint used only for printing.  Structural equality
on this representation is alpha-equivalence, and substitution cannot capture.

Nodes are immutable and cache their hash, size and the number of loose
de Bruijn indices, which keeps graph exploration and shifting cheap.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union


# ----------------------------------------------------------------------------
# Types


@dataclass(frozen=True)
class Atom:
    name: str

    def __repr__(self) -> str:
        return f"Type({pretty_type(self)!r})"


@dataclass(frozen=True)
class Arrow:
    dom: "Type"
    cod: "Type"
    _h: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_h", hash((Arrow, self.dom, self.cod)))

    def __hash__(self) -> int:
        return self._h

    def __eq__(self, other) -> bool:
        return (self is other or type(other) is Arrow and self._h == other._h
                and self.dom == other.dom and self.cod == other.cod)

    def __repr__(self) -> str:
        return f"Type({pretty_type(self)!r})"


@dataclass(frozen=True)
class Conj:
    left: "Type"
    right: "Type"
    _h: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_h", hash((Conj, self.left, self.right)))

    def __hash__(self) -> int:
        return self._h

    def __eq__(self, other) -> bool:
        return (self is other or type(other) is Conj and self._h == other._h
                and self.left == other.left and self.right == other.right)

    def __repr__(self) -> str:
        return f"Type({pretty_type(self)!r})"


Type = Union[Atom, Arrow, Conj]


def type_size(a: Type) -> int:
    if isinstance(a, Atom):
        return 1
    if isinstance(a, Arrow):
        return 1 + type_size(a.dom) + type_size(a.cod)
    return 1 + type_size(a.left) + type_size(a.right)


def pretty_type(a: Type) -> str:
    """Render a type; ``&`` binds tighter than ``->``, nested ``&`` is bracketed."""
    if isinstance(a, Atom):
        return a.name
    if isinstance(a, Arrow):
        dom = pretty_type(a.dom)
        if isinstance(a.dom, Arrow):
            dom = f"({dom})"
        return f"{dom} -> {pretty_type(a.cod)}"
    parts = []
    for side in (a.left, a.right):
        text = pretty_type(side)
        parts.append(text if isinstance(side, Atom) else f"({text})")
    return " & ".join(parts)


# ----------------------------------------------------------------------------
# Terms


class Term:
    __slots__ = ("_hash", "size", "loose")

    _hash: int
    size: int
    # One more than the largest de Bruijn index pointing outside the term;
    # zero when the term is locally closed.
    loose: int

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(other) is not type(self) or self._hash != other._hash:  # type: ignore[attr-defined]
            return False
        return self._same(other)  # type: ignore[arg-type]

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Term({pretty(self)!r})"

    def _same(self, other) -> bool:  # pragma: no cover - overridden
        raise NotImplementedError


class Var(Term):
    """A free variable."""

    __slots__ = ("name",)
    __match_args__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self.size = 1
        self.loose = 0
        self._hash = hash(("var", name))

    def _same(self, other: "Var") -> bool:
        return self.name == other.name


class Bound(Term):
    """A bound variable, as a de Bruijn index (0 is the innermost binder)."""

    __slots__ = ("index",)
    __match_args__ = ("index",)

    def __init__(self, index: int):
        self.index = index
        self.size = 1
        self.loose = index + 1
        self._hash = hash(("bound", index))

    def _same(self, other: "Bound") -> bool:
        return self.index == other.index


class Abs(Term):
    __slots__ = ("body", "ann", "hint")
    __match_args__ = ("body", "ann")

    def __init__(self, body: Term, ann: Optional[Type] = None, hint: str = "x"):
        self.body = body
        self.ann = ann
        self.hint = hint
        self.size = 1 + body.size
        self.loose = max(body.loose - 1, 0)
        self._hash = hash(("abs", ann, body._hash))

    def _same(self, other: "Abs") -> bool:
        return self.ann == other.ann and self.body == other.body

    @classmethod
    def bind(cls, name: str, body: Term, ann: Optional[Type] = None) -> "Abs":
        """Build ``\\name. body`` by abstracting the free variable ``name``."""
        return cls(close(body, name), ann, name)

    def with_body(self, body: Term) -> "Abs":
        return Abs(body, self.ann, self.hint)


class App(Term):
    __slots__ = ("fn", "arg")
    __match_args__ = ("fn", "arg")

    def __init__(self, fn: Term, arg: Term):
        self.fn = fn
        self.arg = arg
        self.size = 1 + fn.size + arg.size
        self.loose = max(fn.loose, arg.loose)
        self._hash = hash(("app", fn._hash, arg._hash))

    def _same(self, other: "App") -> bool:
        return self.fn == other.fn and self.arg == other.arg


class Pair(Term):
    __slots__ = ("left", "right")
    __match_args__ = ("left", "right")

    def __init__(self, left: Term, right: Term):
        self.left = left
        self.right = right
        self.size = 1 + left.size + right.size
        self.loose = max(left.loose, right.loose)
        self._hash = hash(("pair", left._hash, right._hash))

    def _same(self, other: "Pair") -> bool:
        return self.left == other.left and self.right == other.right


class Proj(Term):
    __slots__ = ("index", "body")
    __match_args__ = ("index", "body")

    def __init__(self, index: int, body: Term):
        if index not in (1, 2):
            raise ValueError(f"projection index must be 1 or 2, got {index}")
        self.index = index
        self.body = body
        self.size = 1 + body.size
        self.loose = body.loose
        self._hash = hash(("proj", index, body._hash))

    def _same(self, other: "Proj") -> bool:
        return self.index == other.index and self.body == other.body


def lam(name: str, body: Term, ann: Optional[Type] = None) -> Abs:
    return Abs.bind(name, body, ann)


# ----------------------------------------------------------------------------
# de Bruijn plumbing


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    """Add ``by`` to every bound index ``>= cutoff``."""
    if by == 0 or t.loose <= cutoff:
        return t
    cls = type(t)
    if cls is Bound:
        return Bound(t.index + by)
    if cls is Abs:
        return Abs(shift(t.body, by, cutoff + 1), t.ann, t.hint)
    if cls is App:
        return App(shift(t.fn, by, cutoff), shift(t.arg, by, cutoff))
    if cls is Pair:
        return Pair(shift(t.left, by, cutoff), shift(t.right, by, cutoff))
    if cls is Proj:
        return Proj(t.index, shift(t.body, by, cutoff))
    return t


def instantiate(body: Term, s: Term, depth: int = 0) -> Term:
    """Substitute ``s`` for the index bound by the binder just above ``body``.

    ``s`` lives outside that binder; indices of ``body`` pointing further out
    are decremented since the binder disappears.
    """
    if body.loose <= depth:
        return body
    cls = type(body)
    if cls is Bound:
        k = body.index
        if k == depth:
            return shift(s, depth)
        return Bound(k - 1) if k > depth else body
    if cls is Abs:
        return Abs(instantiate(body.body, s, depth + 1), body.ann, body.hint)
    if cls is App:
        return App(instantiate(body.fn, s, depth), instantiate(body.arg, s, depth))
    if cls is Pair:
        return Pair(instantiate(body.left, s, depth), instantiate(body.right, s, depth))
    return Proj(body.index, instantiate(body.body, s, depth))


def close(t: Term, name: str, depth: int = 0) -> Term:
    """Turn free occurrences of ``name`` into the index of a new outer binder."""
    cls = type(t)
    if cls is Var:
        return Bound(depth) if t.name == name else t
    if cls is Bound:
        return Bound(t.index + 1) if t.index >= depth else t
    if cls is Abs:
        return Abs(close(t.body, name, depth + 1), t.ann, t.hint)
    if cls is App:
        return App(close(t.fn, name, depth), close(t.arg, name, depth))
    if cls is Pair:
        return Pair(close(t.left, name, depth), close(t.right, name, depth))
    return Proj(t.index, close(t.body, name, depth))


def open_abs(t: Abs, name: str) -> Term:
    """The body of ``t`` with its bound variable replaced by ``Var(name)``."""
    return instantiate(t.body, Var(name))


# ----------------------------------------------------------------------------
# Basic operations


def subst(t: Term, x: str, s: Term) -> Term:
    """Capture-avoiding substitution ``t[s/x]`` of ``s`` for the free name ``x``."""

    def go(u: Term, depth: int) -> Term:
        cls = type(u)
        if cls is Var:
            return shift(s, depth) if u.name == x else u
        if cls is Bound:
            return u
        if cls is Abs:
            return Abs(go(u.body, depth + 1), u.ann, u.hint)
        if cls is App:
            return App(go(u.fn, depth), go(u.arg, depth))
        if cls is Pair:
            return Pair(go(u.left, depth), go(u.right, depth))
        return Proj(u.index, go(u.body, depth))

    return go(t, 0)


def alpha_eq(t: Term, s: Term) -> bool:
    return t == s


def size(t: Term) -> int:
    return t.size


def children(t: Term) -> tuple:
    cls = type(t)
    if cls is App:
        return (t.fn, t.arg)
    if cls is Pair:
        return (t.left, t.right)
    if cls is Abs or cls is Proj:
        return (t.body,)
    return ()


def subterms(t: Term) -> Iterator[Term]:
    """Pre-order traversal."""
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        stack.extend(reversed(children(u)))


def free_vars(t: Term) -> set[str]:
    return {u.name for u in subterms(t) if type(u) is Var}


def occurrences(t: Term, x: str) -> int:
    return sum(1 for u in subterms(t) if type(u) is Var and u.name == x)


def is_closed(t: Term) -> bool:
    return t.loose == 0 and not free_vars(t)


def is_value(t: Term) -> bool:
    return type(t) in (Var, Bound, Abs, Pair)


def is_neutral(t: Term) -> bool:
    return type(t) in (Var, Bound, App, Proj)


def erase(t: Term) -> Term:
    """Drop every binder annotation."""
    cls = type(t)
    if cls is Abs:
        return Abs(erase(t.body), None, t.hint)
    if cls is App:
        return App(erase(t.fn), erase(t.arg))
    if cls is Pair:
        return Pair(erase(t.left), erase(t.right))
    if cls is Proj:
        return Proj(t.index, erase(t.body))
    return t


def is_annotated(t: Term) -> bool:
    return all(u.ann is not None for u in subterms(t) if type(u) is Abs)


# ----------------------------------------------------------------------------
# Positions


class Dir(enum.Enum):
    """One step of a path from the root of a term to a subterm."""

    ABS_BODY = "body"
    APP_FN = "fn"
    APP_ARG = "arg"
    PAIR_L = "left"
    PAIR_R = "right"
    PROJ_BODY = "proj"


Position = tuple  # tuple[Dir, ...]

ROOT: Position = ()


def format_position(pos: Position) -> str:
    return ".".join(d.value for d in pos) if pos else "root"


def parse_position(text: str) -> Position:
    if text == "root":
        return ()
    return tuple(Dir(part) for part in text.split("."))


def _child(t: Term, d: Dir) -> Optional[Term]:
    cls = type(t)
    if d is Dir.ABS_BODY and cls is Abs:
        return t.body
    if d is Dir.APP_FN and cls is App:
        return t.fn
    if d is Dir.APP_ARG and cls is App:
        return t.arg
    if d is Dir.PAIR_L and cls is Pair:
        return t.left
    if d is Dir.PAIR_R and cls is Pair:
        return t.right
    if d is Dir.PROJ_BODY and cls is Proj:
        return t.body
    return None


def is_valid_position(t: Term, pos: Position) -> bool:
    for d in pos:
        t = _child(t, d)
        if t is None:
            return False
    return True


def subterm_at(t: Term, pos: Position) -> Term:
    for d in pos:
        nxt = _child(t, d)
        if nxt is None:
            raise ValueError(f"position {format_position(pos)} is not valid for {pretty(t)}")
        t = nxt
    return t


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    """Plug ``new`` into the hole at ``pos`` (bound indices are not adjusted)."""
    if not pos:
        return new
    d, rest = pos[0], pos[1:]
    if _child(t, d) is None:
        raise ValueError(f"position {format_position(pos)} is not valid for {pretty(t)}")
    if d is Dir.ABS_BODY:
        return Abs(replace_at(t.body, rest, new), t.ann, t.hint)
    if d is Dir.APP_FN:
        return App(replace_at(t.fn, rest, new), t.arg)
    if d is Dir.APP_ARG:
        return App(t.fn, replace_at(t.arg, rest, new))
    if d is Dir.PAIR_L:
        return Pair(replace_at(t.left, rest, new), t.right)
    if d is Dir.PAIR_R:
        return Pair(t.left, replace_at(t.right, rest, new))
    return Proj(t.index, replace_at(t.body, rest, new))


def positions(t: Term) -> Iterator[Position]:
    """All valid positions in pre-order (leftmost-outermost document order)."""
    stack: list = [(t, ())]
    while stack:
        u, pos = stack.pop()
        yield pos
        cls = type(u)
        if cls is Abs:
            stack.append((u.body, pos + (Dir.ABS_BODY,)))
        elif cls is App:
            stack.append((u.arg, pos + (Dir.APP_ARG,)))
            stack.append((u.fn, pos + (Dir.APP_FN,)))
        elif cls is Pair:
            stack.append((u.right, pos + (Dir.PAIR_R,)))
            stack.append((u.left, pos + (Dir.PAIR_L,)))
        elif cls is Proj:
            stack.append((u.body, pos + (Dir.PROJ_BODY,)))


# ----------------------------------------------------------------------------
# Printing

RESERVED = frozenset({"p1", "p2"})


def _fresh(hint: str, taken) -> str:
    if not hint or not hint[0].islower() or not hint.isalnum() or hint in RESERVED:
        hint = "x"
    if hint not in taken:
        return hint
    stem = hint.rstrip("0123456789") or "x"
    if stem in RESERVED:
        stem = "x"
    i = 1
    while f"{stem}{i}" in taken or f"{stem}{i}" in RESERVED:
        i += 1
    return f"{stem}{i}"


def pretty(t: Term) -> str:
    """Concrete syntax with minimal parentheses; reparses to an alpha-equal term.

    Dangling de Bruijn indices (only possible for subterms cut out from under a
    binder) are shown as ``_k``, which does not reparse.
    """
    taken = set(free_vars(t))

    def go(u: Term, env: list, ctx: str) -> str:
        # ctx: "top" (extends right), "head" (function position), "arg" (atom)
        cls = type(u)
        if cls is Var:
            return u.name
        if cls is Bound:
            k = u.index
            return env[-1 - k] if k < len(env) else f"_{k - len(env)}"
        if cls is Abs:
            name = _fresh(u.hint, taken.union(env))
            head = f"\\{name}" if u.ann is None else f"\\{name}:{pretty_type(u.ann)}"
            text = f"{head}. {go(u.body, env + [name], 'top')}"
            return text if ctx == "top" else f"({text})"
        if cls is App:
            text = f"{go(u.fn, env, 'head')} {go(u.arg, env, 'arg')}"
            return f"({text})" if ctx == "arg" else text
        if cls is Pair:
            return f"<{go(u.left, env, 'top')}, {go(u.right, env, 'top')}>"
        return f"p{u.index} {go(u.body, env, 'arg')}"

    return go(t, [], "top")


def dump(t: Term) -> str:
    """Constructor-style rendering of the syntax tree, with binder names restored."""
    taken = set(free_vars(t))

    def go(u: Term, env: list) -> str:
        cls = type(u)
        if cls is Var:
            return f"Var({u.name})"
        if cls is Bound:
            k = u.index
            return f"Var({env[-1 - k]})" if k < len(env) else f"Bound({k - len(env)})"
        if cls is Abs:
            name = _fresh(u.hint, taken.union(env))
            ann = "" if u.ann is None else f": {pretty_type(u.ann)}"
            return f"Abs({name}{ann}, {go(u.body, env + [name])})"
        if cls is App:
            return f"App({go(u.fn, env)}, {go(u.arg, env)})"
        if cls is Pair:
            return f"Pair({go(u.left, env)}, {go(u.right, env)})"
        return f"Proj({u.index}, {go(u.body, env)})"

    return go(t, [])


def dump_type(a: Type) -> str:
    if isinstance(a, Atom):
        return f"Atom({a.name})"
    if isinstance(a, Arrow):
        return f"Arrow({dump_type(a.dom)}, {dump_type(a.cod)})"
    return f"Conj({dump_type(a.left)}, {dump_type(a.right)})"
