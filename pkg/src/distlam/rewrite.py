"""Operational semantics: top-level rules, contextual closure and strategies."""
from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Union

from .syntax import (
    Abs, App, Dir, Pair, Position, Proj, Term,
    format_position, instantiate, is_closed, is_neutral, is_value, pretty,
)


class StepLabel(enum.Enum):
    BETA = "beta"
    PI1 = "pi1"
    PI2 = "pi2"
    PAIR_APP = "pair_app"
    PROJ_ABS1 = "pi1_lam"
    PROJ_ABS2 = "pi2_lam"
    # extended rule set only
    ABS_PAIR = "lam_pair"
    PROJ_APP1 = "pi1_app"
    PROJ_APP2 = "pi2_app"

    @property
    def rank(self) -> int:
        return _LABEL_RANK[self]


_LABEL_RANK = {label: i for i, label in enumerate(StepLabel)}
_PROJ = {1: StepLabel.PI1, 2: StepLabel.PI2}
_PROJ_ABS = {1: StepLabel.PROJ_ABS1, 2: StepLabel.PROJ_ABS2}
_PROJ_APP = {1: StepLabel.PROJ_APP1, 2: StepLabel.PROJ_APP2}
EXTENDED_LABELS = frozenset({StepLabel.ABS_PAIR, StepLabel.PROJ_APP1, StepLabel.PROJ_APP2})


class RuleSet(enum.Enum):
    CORE = "core"
    EXTENDED = "extended"


CORE = RuleSet.CORE
EXTENDED = RuleSet.EXTENDED


@dataclass(frozen=True)
class Step:
    label: StepLabel
    position: Position
    source: Term
    target: Term

    def __str__(self) -> str:
        return (f"{self.label.value} @ {format_position(self.position)} : "
                f"{pretty(self.source)} --> {pretty(self.target)}")

    @property
    def key(self) -> tuple:
        return (self.label, self.position)


def top_step(t: Term, rules: RuleSet = CORE) -> list[tuple[StepLabel, Term]]:
    """Every rule firing at the root of ``t``, in label order."""
    out = []
    cls = type(t)
    if cls is App:
        head = type(t.fn)
        if head is Abs:
            out.append((StepLabel.BETA, instantiate(t.fn.body, t.arg)))
        elif head is Pair:
            out.append((StepLabel.PAIR_APP,
                        Pair(App(t.fn.left, t.arg), App(t.fn.right, t.arg))))
    elif cls is Proj:
        body = t.body
        head = type(body)
        if head is Pair:
            out.append((_PROJ[t.index], body.left if t.index == 1 else body.right))
        elif head is Abs:
            out.append((_PROJ_ABS[t.index], Abs(Proj(t.index, body.body), body.ann, body.hint)))
        elif head is App and rules is EXTENDED:
            out.append((_PROJ_APP[t.index], App(Proj(t.index, body.fn), body.arg)))
    elif cls is Abs and rules is EXTENDED and type(t.body) is Pair:
        pair = t.body
        out.append((StepLabel.ABS_PAIR,
                    Pair(Abs(pair.left, t.ann, t.hint), Abs(pair.right, t.ann, t.hint))))
    return out


def _reducts(t: Term, rules: RuleSet) -> list[tuple[StepLabel, Position, Term]]:
    out = [(label, (), target) for label, target in top_step(t, rules)]
    cls = type(t)
    if cls is App:
        fn, arg = t.fn, t.arg
        out += [(l, (Dir.APP_FN,) + p, App(u, arg)) for l, p, u in _reducts(fn, rules)]
        out += [(l, (Dir.APP_ARG,) + p, App(fn, u)) for l, p, u in _reducts(arg, rules)]
    elif cls is Pair:
        left, right = t.left, t.right
        out += [(l, (Dir.PAIR_L,) + p, Pair(u, right)) for l, p, u in _reducts(left, rules)]
        out += [(l, (Dir.PAIR_R,) + p, Pair(left, u)) for l, p, u in _reducts(right, rules)]
    elif cls is Abs:
        out += [(l, (Dir.ABS_BODY,) + p, Abs(u, t.ann, t.hint))
                for l, p, u in _reducts(t.body, rules)]
    elif cls is Proj:
        out += [(l, (Dir.PROJ_BODY,) + p, Proj(t.index, u))
                for l, p, u in _reducts(t.body, rules)]
    return out


def reducts(t: Term, rules: RuleSet = CORE) -> list[Step]:
    """All one-step reducts, in document order of the redex, then label order."""
    return [Step(label, pos, t, target) for label, pos, target in _reducts(t, rules)]


def is_normal(t: Term, rules: RuleSet = CORE) -> bool:
    if top_step(t, rules):
        return False
    cls = type(t)
    if cls is App:
        return is_normal(t.fn, rules) and is_normal(t.arg, rules)
    if cls is Pair:
        return is_normal(t.left, rules) and is_normal(t.right, rules)
    if cls is Abs or cls is Proj:
        return is_normal(t.body, rules)
    return True


# ----------------------------------------------------------------------------
# Leftmost-outermost


def _lo(t: Term) -> Optional[tuple[StepLabel, Position, Term]]:
    fired = top_step(t, CORE)
    if fired:
        label, target = fired[0]
        return label, (), target
    cls = type(t)
    if cls is App:
        # the head is neutral here, otherwise a root rule would have fired
        r = _lo(t.fn)
        if r is not None:
            label, pos, u = r
            return label, (Dir.APP_FN,) + pos, App(u, t.arg)
        r = _lo(t.arg)
        if r is not None:
            label, pos, u = r
            return label, (Dir.APP_ARG,) + pos, App(t.fn, u)
        return None
    if cls is Pair:
        r = _lo(t.left)
        if r is not None:
            label, pos, u = r
            return label, (Dir.PAIR_L,) + pos, Pair(u, t.right)
        r = _lo(t.right)
        if r is not None:
            label, pos, u = r
            return label, (Dir.PAIR_R,) + pos, Pair(t.left, u)
        return None
    if cls is Proj:
        r = _lo(t.body)
        if r is not None:
            label, pos, u = r
            return label, (Dir.PROJ_BODY,) + pos, Proj(t.index, u)
        return None
    if cls is Abs:
        r = _lo(t.body)
        if r is not None:
            label, pos, u = r
            return label, (Dir.ABS_BODY,) + pos, Abs(u, t.ann, t.hint)
    return None


def lo_step(t: Term, rules: RuleSet = CORE) -> Optional[Step]:
    """The leftmost-outermost step of ``t``, or None when ``t`` is normal.

    Root rules take priority over descending into subterms.
    """
    if rules is not CORE:
        raise ValueError("leftmost-outermost reduction is only defined for the core rules")
    r = _lo(t)
    if r is None:
        return None
    label, pos, target = r
    return Step(label, pos, t, target)


def lo_candidates(t: Term, literal: bool = False) -> list[tuple[StepLabel, Position, Term]]:
    """Every conclusion of the LO inference rules for ``t``, read rule by rule.

    With ``literal=True`` the projection congruence also applies to
    non-neutral bodies, as the clauses are printed; this overlaps with the
    root projection rules.  The default restricts it to neutral bodies, the
    reading implemented by :func:`lo_step`.
    """
    out = [(label, (), target) for label, target in top_step(t, CORE)]
    cls = type(t)
    if cls is App:
        if is_neutral(t.fn):
            out += [(l, (Dir.APP_FN,) + p, App(u, t.arg)) for l, p, u in lo_candidates(t.fn, literal)]
        if is_neutral(t.fn) and is_normal(t.fn):
            out += [(l, (Dir.APP_ARG,) + p, App(t.fn, u)) for l, p, u in lo_candidates(t.arg, literal)]
    elif cls is Pair:
        out += [(l, (Dir.PAIR_L,) + p, Pair(u, t.right)) for l, p, u in lo_candidates(t.left, literal)]
        if is_normal(t.left):
            out += [(l, (Dir.PAIR_R,) + p, Pair(t.left, u)) for l, p, u in lo_candidates(t.right, literal)]
    elif cls is Proj:
        if literal or is_neutral(t.body):
            out += [(l, (Dir.PROJ_BODY,) + p, Proj(t.index, u)) for l, p, u in lo_candidates(t.body, literal)]
    elif cls is Abs:
        out += [(l, (Dir.ABS_BODY,) + p, Abs(u, t.ann, t.hint)) for l, p, u in lo_candidates(t.body, literal)]
    return out


# ----------------------------------------------------------------------------
# Reduction sequences


@dataclass
class NormalForm:
    term: Term
    trace: list[Step]


@dataclass
class FuelExhausted:
    term: Term
    trace: list[Step]


@dataclass
class CycleDetected:
    trace: list[Step]

    @property
    def term(self) -> Term:
        return self.trace[-1].target


Outcome = Union[NormalForm, FuelExhausted, CycleDetected]

STRATEGIES = ("lo", "first", "random")


def reduce(t: Term, strategy: str = "lo", fuel: int = 1000, rules: RuleSet = CORE,
           seed: Optional[int] = None) -> Outcome:
    """Iterate single steps of ``strategy`` for at most ``fuel`` steps.

    ``lo`` is leftmost-outermost, ``first`` takes the first reduct in
    document order, ``random`` picks a reduct uniformly using ``seed``.
    Revisiting any earlier term of the sequence reports a cycle.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    rng = random.Random(seed)
    trace: list[Step] = []
    seen = {t}
    current = t
    while True:
        if strategy == "lo":
            step = lo_step(current, rules)
        else:
            options = reducts(current, rules)
            if not options:
                step = None
            elif strategy == "first":
                step = options[0]
            else:
                step = rng.choice(options)
        if step is None:
            return NormalForm(current, trace)
        if len(trace) == fuel:
            return FuelExhausted(current, trace)
        trace.append(step)
        current = step.target
        if current in seen:
            return CycleDetected(trace)
        seen.add(current)


def normalize(t: Term, fuel: int = 1000, rules: RuleSet = CORE) -> Optional[Term]:
    """Normal form within ``fuel`` steps (LO for core rules, else first reduct)."""
    out = reduce(t, "lo" if rules is CORE else "first", fuel, rules)
    return out.term if isinstance(out, NormalForm) else None


# ----------------------------------------------------------------------------
# Reduction graphs


@dataclass
class ReductionGraph:
    nodes: list[Term]
    edges: list[tuple[int, Step, int]]
    exhausted: bool
    rules: RuleSet = CORE
    index: dict = field(default_factory=dict, repr=False)

    root = 0

    def successors(self, i: int) -> list[int]:
        return [dst for src, _, dst in self.edges if src == i]

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.nodes]
        for src, _, dst in self.edges:
            adj[src].append(dst)
        return adj

    def normal_nodes(self) -> list[int]:
        """Nodes without outgoing edges that are genuinely normal."""
        has_out = {src for src, _, _ in self.edges}
        return [i for i, t in enumerate(self.nodes)
                if i not in has_out and is_normal(t, self.rules)]

    def node_id(self, t: Term) -> Optional[int]:
        return self.index.get(t)

    def is_acyclic(self) -> bool:
        return topological_order(self) is not None

    def to_dot(self) -> str:
        normal = set(self.normal_nodes())
        lines = ["digraph reduction {"]
        for i, t in enumerate(self.nodes):
            shape = "doublecircle" if i in normal else "ellipse"
            lines.append(f"  n{i} [label={_dot_quote(pretty(t))}, shape={shape}];")
        for src, step, dst in self.edges:
            label = f"{step.label.value} @ {format_position(step.position)}"
            lines.append(f"  n{src} -> n{dst} [label={_dot_quote(label)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def build_graph(t: Term, rules: RuleSet = CORE, node_cap: int = 20000,
                term_cap: Optional[int] = None) -> ReductionGraph:
    """Breadth-first closure of one-step reducts from ``t`` merging alpha-equal terms.

    Stops without exhausting the frontier as soon as a new node would exceed
    ``node_cap``, or would be a term larger than ``term_cap`` when one is given.
    """
    if node_cap <= 0:
        raise ValueError("node_cap must be positive")
    nodes = [t]
    index = {t: 0}
    edges = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for step in reducts(nodes[i], rules):
            j = index.get(step.target)
            if j is None:
                if len(nodes) >= node_cap or (term_cap is not None and step.target.size > term_cap):
                    return ReductionGraph(nodes, edges, False, rules, index)
                j = len(nodes)
                nodes.append(step.target)
                index[step.target] = j
                queue.append(j)
            edges.append((i, step, j))
    return ReductionGraph(nodes, edges, True, rules, index)


def topological_order(g: ReductionGraph) -> Optional[list[int]]:
    """Nodes in topological order, or None if the graph has a cycle."""
    adj = g.adjacency()
    indeg = [0] * len(g.nodes)
    for succ in adj:
        for j in succ:
            indeg[j] += 1
    ready = deque(i for i, d in enumerate(indeg) if d == 0)
    order = []
    while ready:
        i = ready.popleft()
        order.append(i)
        for j in adj[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    return order if len(order) == len(g.nodes) else None


class Unbounded(enum.Enum):
    DIVERGENT = "divergent"
    CAP_EXCEEDED = "cap-exceeded"


def longest_path(g: ReductionGraph) -> Union[int, Unbounded]:
    if not g.exhausted:
        return Unbounded.CAP_EXCEEDED
    order = topological_order(g)
    if order is None:
        return Unbounded.DIVERGENT
    adj = g.adjacency()
    length = [0] * len(g.nodes)
    for i in reversed(order):
        if adj[i]:
            length[i] = 1 + max(length[j] for j in adj[i])
    return length[g.root]


def eval_len(t: Term, rules: RuleSet = CORE, node_cap: int = 20000) -> Union[int, Unbounded]:
    """Length of the longest reduction path from ``t`` to a normal form."""
    return longest_path(build_graph(t, rules, node_cap))


# ----------------------------------------------------------------------------
# Progress


class Status(enum.Enum):
    HOLDS = "holds"
    VACUOUS = "vacuous"
    FAILS = "fails"


@dataclass(frozen=True)
class Verdict:
    status: Status
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status is not Status.FAILS

    @classmethod
    def holds(cls, detail: str = "") -> "Verdict":
        return cls(Status.HOLDS, detail)

    @classmethod
    def vacuous(cls, detail: str = "") -> "Verdict":
        return cls(Status.VACUOUS, detail)

    @classmethod
    def fails(cls, detail: str) -> "Verdict":
        return cls(Status.FAILS, detail)


def progress_check(t: Term) -> Verdict:
    """Closed core-normal terms must be values."""
    if not (is_closed(t) and is_normal(t, CORE)):
        return Verdict.vacuous()
    if is_value(t):
        return Verdict.holds()
    return Verdict.fails(f"closed normal form {pretty(t)} is not a value")
