"""Each metatheorem of the calculus as a runnable, reproducible check.

A suite runs ``cfg.trials`` generated instances plus, where one exists, a
pinned corpus or a handful of fixtures.  Failures are collected as
counterexamples with the seed that regenerates the instance; a suite never
raises because a property fails.

Regenerating a counterexample: for untyped suites
``gen_term(replace(cfg, seed=s))``, for typed ones
``gen_typed_term(replace(cfg, seed=s, annotated=True))``.
"""
from __future__ import annotations

import random
import sys
import threading
import time
from collections import Counter
from dataclasses import replace
from functools import lru_cache
from typing import Callable, Optional

from ..context import TypingContext
from ..parser import parse_context, parse_term, parse_type
from ..rewrite import (
    CORE, EXTENDED, CycleDetected, NormalForm, RuleSet, build_graph, lo_step,
    progress_check, reduce, reducts,
)
from ..syntax import Arrow, Conj, Term, Var, free_vars, occurrences, pretty, pretty_type, subst
from ..typesys import (
    TypeCheckError, infer, subject_reduction_check, type_nf, typed_subst_check,
    types_iso,
)
from .generators import (
    enumerate_annotated_terms, enumerate_terms_up_to, enumerate_types, gen_term, gen_type,
    gen_typed_term, random_variant, typed_context, types_up_to, var_names,
)
from .oracles import atoms_of, derivable_types, iso_class, reachable_within
from .report import GenConfig, SuiteReport

# Pinned corpora.
PROGRESS_CORPUS_SIZE = 7
ISO_CORPUS_SIZE = 6
ISO_ORACLE_DEPTH = 8
DECOMPOSITION_CORPUS_SIZE = 7
UNIQUENESS_CORPUS_SIZE = 5
UNIQUENESS_CONTEXT = "a:A, f:A -> B & A"
UNIQUENESS_ANNOTATION_SIZE = 3
UNIQUENESS_RANDOM_SIZE = 8
LEFT_JOIN_BOUND = 2
RIGHT_JOIN_BOUND = 6
PEAK_MAX_STEPS = 3
REDRAWS = 50
# graphs whose terms outgrow this are treated like graphs over the node cap
TERM_CAP = 256
SUBST_REACH_CAP = 50_000

OMEGA = "(\\x. x x) (\\x. x x)"


def _rng(seed: int) -> random.Random:
    return random.Random(seed)


def _verdict(report: SuiteReport, v, term: Term, seed: Optional[int]) -> None:
    status = v.status.value
    report.record({"holds": "pass", "vacuous": "vacuous", "fails": "fail"}[status],
                  pretty(term), seed, v.detail)


# ----------------------------------------------------------------------------
# Untyped suites


def suite_progress(cfg: GenConfig, fuel: int, node_cap: int) -> SuiteReport:
    """Closed normal forms are values: exhaustive small corpus plus generated terms."""
    report = SuiteReport("progress")
    for t in enumerate_terms_up_to(PROGRESS_CORPUS_SIZE):
        v = progress_check(t)
        if v.status.value != "vacuous":
            report.note("corpus.normal")
        _verdict(report, v, t, None)
    closed = replace(cfg, closed=True)
    for i in range(cfg.trials):
        seed = closed.trial_seed(i)
        t = gen_term(closed, _rng(seed))
        out = reduce(t, "lo", fuel, CORE)
        if not isinstance(out, NormalForm):
            report.note("generated.diverged")
            report.record("vacuous", pretty(t), seed)
            continue
        report.note("generated.normalized")
        v = progress_check(out.term)
        if v.status.value == "vacuous":
            # a closed term can only reach closed terms
            report.record("fail", pretty(t), seed, f"normal form {pretty(out.term)} is open")
        else:
            _verdict(report, v, t, seed)
    return report


def _reducible_term(cfg: GenConfig, rng: random.Random) -> Term:
    """A generated term with at least one redex, or the last draw if none had one."""
    for _ in range(REDRAWS):
        t = gen_term(cfg, rng)
        if reducts(t, CORE):
            break
    return t


def _random_walk(rng: random.Random, t: Term, steps: int) -> Term:
    for _ in range(steps):
        options = reducts(t, CORE)
        if not options:
            break
        t = rng.choice(options).target
    return t


def suite_confluence(cfg: GenConfig, fuel: int, node_cap: int) -> SuiteReport:
    """Unique normal sink in every finite acyclic graph; random peaks rejoin."""
    report = SuiteReport("confluence")
    for i in range(cfg.trials):
        seed = cfg.trial_seed(i)
        t = _reducible_term(cfg, _rng(seed))
        g = build_graph(t, CORE, node_cap, TERM_CAP)
        if not g.exhausted:
            report.note("graph.capped")
            report.record("vacuous", pretty(t), seed)
            continue
        if not g.is_acyclic():
            report.note("graph.cyclic")
            report.record("vacuous", pretty(t), seed)
            continue
        report.note("graph.checked")
        sinks = g.normal_nodes()
        if len(sinks) == 1:
            report.record("pass", pretty(t), seed)
        else:
            shown = ", ".join(pretty(g.nodes[j]) for j in sinks) or "none"
            report.record("fail", pretty(t), seed, f"{len(sinks)} normal forms: {shown}")
    for i in range(cfg.trials):
        seed = cfg.trial_seed(cfg.trials + i)
        rng = _rng(seed)
        t = _reducible_term(cfg, rng)
        if not reducts(t, CORE):
            report.note("peak.normal")
            report.record("vacuous", pretty(t), seed)
            continue
        s1 = _random_walk(rng, t, rng.randint(1, PEAK_MAX_STEPS))
        s2 = _random_walk(rng, t, rng.randint(1, PEAK_MAX_STEPS))
        n1 = reduce(s1, "first", fuel, CORE)
        n2 = reduce(s2, "first", fuel, CORE)
        if not (isinstance(n1, NormalForm) and isinstance(n2, NormalForm)):
            report.note("peak.diverged")
            report.record("vacuous", pretty(t), seed)
            continue
        report.note("peak.joined")
        if n1.term == n2.term:
            report.record("pass", pretty(t), seed)
        else:
            report.record("fail", pretty(t), seed,
                          f"{pretty(s1)} ~> {pretty(n1.term)} but {pretty(s2)} ~> {pretty(n2.term)}")
    return report


def suite_lo_normalization(cfg: GenConfig, fuel: int, node_cap: int) -> SuiteReport:
    """Whenever a normal form is reachable, leftmost-outermost reduction finds it."""
    report = SuiteReport("lo-normalization")
    for i in range(cfg.trials):
        seed = cfg.trial_seed(i)
        t = _reducible_term(cfg, _rng(seed))
        step = lo_step(t, CORE)
        if step is not None and step not in reducts(t, CORE):
            report.record("fail", pretty(t), seed, f"LO step {step} is not a reduct")
            continue
        g = build_graph(t, CORE, node_cap, TERM_CAP)
        sinks = g.normal_nodes()
        if not sinks:
            report.note("no_normal_node")
            report.record("vacuous", pretty(t), seed)
            continue
        report.note("with_normal_node")
        target = g.nodes[sinks[0]]
        budget = len(g.nodes) if g.exhausted else node_cap
        out = reduce(t, "lo", budget, CORE)
        if isinstance(out, NormalForm) and out.term == target and len(sinks) == 1:
            report.record("pass", pretty(t), seed)
        elif isinstance(out, NormalForm) and out.term == target:
            report.record("fail", pretty(t), seed, f"{len(sinks)} normal forms in the graph")
        else:
            got = pretty(out.term) if isinstance(out, NormalForm) else type(out).__name__
            report.record("fail", pretty(t), seed,
                          f"LO gave {got} within {budget} steps, graph has {pretty(target)}")
    return report


def suite_substitutivity(cfg: GenConfig, fuel: int, node_cap: int) -> SuiteReport:
    """A step commutes with substitution; a step in the substituted term is replayed per occurrence."""
    report = SuiteReport("substitutivity")
    names = var_names(cfg.var_pool)
    small = replace(cfg, max_size=max(1, cfg.max_size // 2))

    def pick_var(rng: random.Random, t: Term) -> str:
        fv = sorted(free_vars(t))
        return rng.choice(fv) if fv and rng.random() < 0.8 else rng.choice(names)

    for i in range(cfg.trials):
        seed = cfg.trial_seed(i)
        rng = _rng(seed)
        # left: t -> t' implies t[s/x] -> t'[s/x] in one step
        t = _reducible_term(cfg, rng)
        options = reducts(t, CORE)
        if not options:
            report.note("left.normal")
            report.record("vacuous", pretty(t), seed)
        else:
            step = rng.choice(options)
            x = pick_var(rng, t)
            s = gen_term(small, rng)
            src, dst = subst(t, x, s), subst(step.target, x, s)
            if any(r.target == dst for r in reducts(src, CORE)):
                report.note("left.checked")
                report.record("pass", pretty(t), seed)
            else:
                report.record("fail", pretty(t), seed,
                              f"[{pretty(s)}/{x}] after {step}: {pretty(dst)} not one step from {pretty(src)}")
        # right: s -> s' implies t[s/x] ->* t[s'/x] in at most |t|_x steps
        t = gen_term(cfg, rng)
        s = _reducible_term(small, rng)
        options = reducts(s, CORE)
        if not options:
            report.note("right.normal")
            report.record("vacuous", pretty(t), seed)
            continue
        s2 = rng.choice(options).target
        x = pick_var(rng, t)
        n = occurrences(t, x)
        src, dst = subst(t, x, s), subst(t, x, s2)
        found = reachable_within(src, dst, n, CORE, SUBST_REACH_CAP)
        if found is None:
            report.note("right.search_capped")
            report.record("vacuous", pretty(t), seed)
        elif found:
            report.note("right.checked")
            report.record("pass", pretty(t), seed)
        else:
            report.record("fail", pretty(t), seed,
                          f"{pretty(s)} -> {pretty(s2)} at {x}: not within {n} steps")
    return report


# ----------------------------------------------------------------------------
# Extended rules


def _join_distance(a: Term, b: Term, bound: int, rules: RuleSet) -> Optional[int]:
    """Least ``i + j <= bound`` with a common reduct ``a ->^i u <-^j b``."""
    da = _distances(a, bound, rules)
    db = _distances(b, bound, rules)
    best = None
    for u, i in da.items():
        j = db.get(u)
        if j is not None and i + j <= bound and (best is None or i + j < best):
            best = i + j
    return best


def _distances(t: Term, bound: int, rules: RuleSet) -> dict:
    dist = {t: 0}
    frontier = [t]
    for d in range(1, bound + 1):
        nxt = []
        for u in frontier:
            for step in reducts(u, rules):
                if step.target not in dist:
                    dist[step.target] = d
                    nxt.append(step.target)
        frontier = nxt
    return dist


# (diagram, side, peak text, label of each diverging step); {i} is the projection index
DIAGRAMS = [
    ("proj-abs-pair", "left", "p{i} (\\x. <{t1}, {t2}>)", ("pi{i}_lam", "lam_pair")),
    ("proj-app-pair", "left", "p{i} (<{t1}, {t2}> {s})", ("pi{i}_app", "pair_app")),
    ("beta-abs-pair", "right", "(\\x. <{t1}, {t2}>) {s}", ("beta", "lam_pair")),
    ("proj-app-beta", "right", "p{i} ((\\x. {t1}) {s})", ("pi{i}_app", "beta")),
]

INSTANCES = {
    "plain": {"t1": "a", "t2": "b", "s": "c"},
    "dependent": {"t1": "x", "t2": "f x", "s": "c"},
}


def critical_pair_cases() -> list[tuple[str, str, Term, tuple]]:
    cases = []
    for name, side, text, labels in DIAGRAMS:
        indices = (1, 2) if "{i}" in text else (1,)
        for i in indices:
            for inst, values in INSTANCES.items():
                term = parse_term(text.format(i=i, **values))
                want = tuple(label.format(i=i) for label in labels)
                cases.append((f"{name}[{i},{inst}]", side, term, want))
    return cases


def suite_critical_pairs(cfg: GenConfig, fuel: int, node_cap: int) -> SuiteReport:
    """The overlaps introduced by the two extra rules all close."""
    report = SuiteReport("critical-pairs")
    closed: Counter = Counter()
    total: Counter = Counter()
    for case, side, peak, want in critical_pair_cases():
        diagram = case.split("[")[0]
        total[diagram] += 1
        steps = reducts(peak, EXTENDED)
        by_label = {step.label.value: step for step in steps}
        missing = [label for label in want if label not in by_label]
        if missing:
            report.record("fail", pretty(peak), None, f"{case}: no {', '.join(missing)} step")
            continue
        a, b = (by_label[label].target for label in want)
        bound = LEFT_JOIN_BOUND if side == "left" else RIGHT_JOIN_BOUND
        d = _join_distance(a, b, bound, EXTENDED)
        if d is None:
            report.record("fail", pretty(peak), None,
                          f"{case}: {pretty(a)} and {pretty(b)} do not meet within {bound} steps")
            continue
        closed[diagram] += 1
        report.note(f"{side}.join_steps.{d}")
        report.record("pass", pretty(peak), None, case)
    report.note("diagrams_closed", sum(1 for k in total if closed[k] == total[k]))
    report.note("diagrams", len(total))
    return report


# ----------------------------------------------------------------------------
# Typed suites


SR_FIXTURES = [
    ("beta", "y:A", "(\\x:A. <x, x>) y"),
    ("proj", "y:A", "p1 <y, \\x:B. y>"),
    ("pair-app", "y:A", "<\\x:A. x, \\x:A. x> y"),
    ("proj-abs", "", "p1 (\\x:A. <x, x>)"),
]


def _typed(cfg: GenConfig) -> GenConfig:
    return replace(cfg, annotated=True)


def suite_subject_reduction(cfg: GenConfig, fuel: int, node_cap: int) -> SuiteReport:
    """Every one-step reduct of a well-typed term has an isomorphic type."""
    report = SuiteReport("subject-reduction")
    for name, ctx_text, text in SR_FIXTURES:
        ctx, t = parse_context(ctx_text), parse_term(text)
        v = subject_reduction_check(ctx, t)
        if v.status.value == "holds":
            report.note(f"fixture.{name}")
        elif v.status.value == "vacuous":
            v = v.fails(f"fixture {name} has no reduct")
        _verdict(report, v, t, None)
    typed = _typed(cfg)
    stats: Counter = Counter()
    for i in range(cfg.trials):
        seed = typed.trial_seed(i)
        ctx, t = gen_typed_term(typed, _rng(seed), stats=stats)
        _verdict(report, subject_reduction_check(ctx, t), t, seed)
    report.note("generator.detour", stats["detour"])
    report.note("generator.app_head_detour", stats["app_head_detour"])
    report.note("generator.pair_as_arrow", stats["pair_as_arrow"])
    return report


def suite_strong_normalization(cfg: GenConfig, fuel: int, node_cap: int) -> SuiteReport:
    """Reduction graphs of well-typed terms are finite and acyclic."""
    report = SuiteReport("strong-normalization")
    omega = parse_term(OMEGA)
    out = reduce(omega, "lo", fuel, CORE)
    if isinstance(out, CycleDetected) and len(out.trace) == 1:
        report.note("fixture.omega_cycle")
        report.record("pass", pretty(omega), None, "untyped divergence fixture")
    else:
        report.record("fail", pretty(omega), None,
                      f"expected a cycle after 1 step, got {type(out).__name__} "
                      f"after {len(out.trace)}")
    typed = _typed(cfg)
    largest = 0
    for i in range(cfg.trials):
        seed = typed.trial_seed(i)
        _, t = gen_typed_term(typed, _rng(seed))
        g = build_graph(t, CORE, node_cap)
        largest = max(largest, len(g.nodes))
        if not g.exhausted:
            report.record("fail", pretty(t), seed, f"more than {node_cap} reducts")
        elif not g.is_acyclic():
            report.record("fail", pretty(t), seed, "reduction graph has a cycle")
        else:
            report.record("pass", pretty(t), seed)
    report.notes["max_graph_nodes"] = largest
    return report


def suite_typed_substitution(cfg: GenConfig, fuel: int, node_cap: int) -> SuiteReport:
    """Substituting a term of an isomorphic type preserves typing."""
    report = SuiteReport("typed-substitution")
    typed = _typed(cfg)
    atoms = atoms_of(typed.atom_pool)
    small = replace(typed, max_size=max(1, typed.max_size // 2))
    for i in range(cfg.trials):
        seed = typed.trial_seed(i)
        rng = _rng(seed)
        ctx = typed_context(rng, typed)
        x = "z"
        _, t = gen_typed_term(typed, rng, ctx=ctx)
        # abstract one free variable of t as x, so that t uses x at the variable's type
        free = sorted(free_vars(t))
        if free:
            y = rng.choice(free)
            a = ctx.lookup(y)
            t = subst(t, y, Var(x))
        else:
            a = gen_type(rng, 5, atoms)
        # the substituted term is typed at a variant of a, so the check needs the conversion
        _, s = gen_typed_term(small, rng, ctx=ctx, goal=random_variant(rng, a, 2))
        if occurrences(t, x):
            report.note("uses_variable")
        _verdict(report, typed_subst_check(ctx, x, a, t, s), t, seed)
    return report


# ----------------------------------------------------------------------------
# Types


def iso_corpus(max_size: int = ISO_CORPUS_SIZE, atoms: int = 2) -> list:
    out = []
    for n in range(1, max_size + 1):
        out += enumerate_types(n, atoms_of(atoms))
    return out


NAMED_ISO_CASES = [
    ("distributivity", "A -> B & C", "(A -> B) & (A -> C)", True),
    ("distributivity-nested", "A -> B -> C & D", "(A -> B -> C) & (A -> B -> D)", True),
    ("commutativity", "A & B", "B & A", False),
    ("associativity", "(A & B) & C", "A & (B & C)", False),
    ("currying", "A & B -> C", "A -> B -> C", False),
    ("left-distributivity", "A & B -> C", "(A -> C) & (B -> C)", False),
]


def suite_iso_oracle(cfg: GenConfig, fuel: int, node_cap: int) -> SuiteReport:
    """Normal-form isomorphism agrees with equational proof search."""
    report = SuiteReport("iso-oracle")
    for name, left, right, expected in NAMED_ISO_CASES:
        a, b = parse_type(left), parse_type(right)
        got = types_iso(a, b)
        oracle = b in iso_class(a, ISO_ORACLE_DEPTH)[0]
        text = f"{left} ~ {right}"
        if got == expected == oracle:
            report.record("pass", text, None, name)
        else:
            report.record("fail", text, None,
                          f"{name}: expected {expected}, normal forms say {got}, search says {oracle}")
    corpus = iso_corpus()
    report.note("corpus.types", len(corpus))
    for a in corpus:
        cls, saturated = iso_class(a, ISO_ORACLE_DEPTH)
        if not saturated:
            report.record("fail", pretty_type(a), None, "proof search did not saturate")
            continue
        for b in corpus:
            if types_iso(a, b) == (b in cls):
                report.record("pass", f"{pretty_type(a)} ~ {pretty_type(b)}")
            else:
                report.record("fail", f"{pretty_type(a)} ~ {pretty_type(b)}", None,
                              f"normal forms say {types_iso(a, b)}")
    _decomposition_checks(report, iso_corpus(DECOMPOSITION_CORPUS_SIZE))
    atoms = atoms_of(cfg.atom_pool)
    for i in range(cfg.trials):
        seed = cfg.trial_seed(i)
        rng = _rng(seed)
        a = gen_type(rng, 9, atoms)
        b = random_variant(rng, a, rng.randint(1, 4))
        c = gen_type(rng, 9, atoms)
        text = f"{pretty_type(a)} ~ {pretty_type(b)}"
        if not types_iso(a, b):
            report.record("fail", text, seed, "rewrite variant judged not isomorphic")
            continue
        cls, saturated = iso_class(a, ISO_ORACLE_DEPTH)
        if saturated and types_iso(a, c) != (c in cls):
            report.record("fail", f"{pretty_type(a)} ~ {pretty_type(c)}", seed,
                          "normal forms and proof search disagree")
            continue
        report.note("random.saturated" if saturated else "random.unsaturated")
        report.record("pass", text, seed)
    return report


def _decomposition_checks(report: SuiteReport, corpus: list) -> None:
    classes: dict = {}
    for a in corpus:
        classes.setdefault(type_nf(a), []).append(a)
    pairs = [(a, b) for members in classes.values() for a in members for b in members]
    for a, b in pairs:
        problem = None
        kind = f"{type(a).__name__.lower()}_{type(b).__name__.lower()}"
        if isinstance(a, Conj) and isinstance(b, Conj):
            if not (types_iso(a.left, b.left) and types_iso(a.right, b.right)):
                problem = "isomorphic conjunctions with different components"
        elif isinstance(a, Arrow) and isinstance(b, Arrow):
            if not (types_iso(a.dom, b.dom) and types_iso(a.cod, b.cod)):
                problem = "isomorphic arrows with different domains or codomains"
        elif isinstance(a, Conj) and isinstance(b, Arrow):
            d = type_nf(b.cod)
            if not (isinstance(d, Conj) and types_iso(a.left, Arrow(b.dom, d.left))
                    and types_iso(a.right, Arrow(b.dom, d.right))):
                problem = "conjunction isomorphic to an arrow without a split codomain"
        else:
            continue
        text = f"{pretty_type(a)} ~ {pretty_type(b)}"
        report.note(f"decomposition.{kind}")
        if problem:
            report.record("fail", text, None, problem)
        else:
            report.record("pass", text, None)


@lru_cache(maxsize=None)
def uniqueness_corpus() -> tuple:
    """Annotated terms of the pinned size, as (term, context) pairs."""
    ctx = parse_context(UNIQUENESS_CONTEXT)
    anns = types_up_to(UNIQUENESS_ANNOTATION_SIZE, atoms_of(2))
    names = tuple(ctx.names())
    terms = []
    for n in range(1, UNIQUENESS_CORPUS_SIZE + 1):
        terms.extend(enumerate_annotated_terms(n, anns, names))
    return ctx, tuple(terms)


def _uniqueness_verdict(ctx: TypingContext, t: Term) -> tuple[str, str]:
    found = derivable_types(ctx, t)
    try:
        ty = infer(ctx, t)
    except TypeCheckError as err:
        if found:
            shown = pretty_type(min(found, key=lambda a: (len(pretty_type(a)), pretty_type(a))))
            return "fail", f"checker rejects ({err}) but a derivation gives {shown}"
        return "vacuous", ""
    if not found:
        return "fail", f"checker gives {pretty_type(ty)} but no derivation was found"
    for other in found:
        if not types_iso(other, ty):
            return "fail", f"derivation gives {pretty_type(other)}, checker {pretty_type(ty)}"
    return "pass", ""


def suite_typing_uniqueness(cfg: GenConfig, fuel: int, node_cap: int) -> SuiteReport:
    """Every type a derivation assigns is isomorphic to the checker's answer."""
    report = SuiteReport("typing-uniqueness")
    ctx, corpus = uniqueness_corpus()
    for t in corpus:
        verdict, details = _uniqueness_verdict(ctx, t)
        if verdict == "pass":
            report.note("corpus.typable")
        report.record(verdict, pretty(t), None, details)
    typed = replace(_typed(cfg), max_size=min(cfg.max_size, UNIQUENESS_RANDOM_SIZE))
    for i in range(cfg.trials):
        seed = typed.trial_seed(i)
        gctx, t = gen_typed_term(typed, _rng(seed))
        verdict, details = _uniqueness_verdict(gctx, t)
        report.record(verdict, pretty(t), seed, details)
    return report


# ----------------------------------------------------------------------------


SUITES: dict[str, Callable[[GenConfig, int, int], SuiteReport]] = {
    "confluence": suite_confluence,
    "progress": suite_progress,
    "lo-normalization": suite_lo_normalization,
    "subject-reduction": suite_subject_reduction,
    "strong-normalization": suite_strong_normalization,
    "substitutivity": suite_substitutivity,
    "typed-substitution": suite_typed_substitution,
    "iso-oracle": suite_iso_oracle,
    "critical-pairs": suite_critical_pairs,
    "typing-uniqueness": suite_typing_uniqueness,
}


# Terms can grow deep during exploration (a projection chain per step, say)
# and every traversal is recursive, so suites run on a thread with a big stack.
STACK_BYTES = 512 * 1024 * 1024
RECURSION_LIMIT = 200_000


def with_deep_stack(fn: Callable, *args):
    """Call ``fn(*args)`` on a worker thread with a large stack and recursion limit."""
    result: dict = {}

    def target():
        try:
            result["value"] = fn(*args)
        except BaseException as err:  # re-raised on the calling thread
            result["error"] = err

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size()
    threading.stack_size(STACK_BYTES)
    sys.setrecursionlimit(max(old_limit, RECURSION_LIMIT))
    try:
        worker = threading.Thread(target=target)
        worker.start()
        worker.join()
    finally:
        threading.stack_size(old_size)
        sys.setrecursionlimit(old_limit)
    if "error" in result:
        raise result["error"]
    return result["value"]


def run_suite(name: str, cfg: GenConfig = GenConfig(), fuel: int = 200,
              node_cap: int = 20000) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    start = time.perf_counter()
    try:
        report = with_deep_stack(SUITES[name], cfg, fuel, node_cap)
    except RecursionError:
        report = SuiteReport(name)
        report.record("fail", "", None, "aborted: term nesting exceeded the recursion limit")
    except Exception as err:  # a broken property or generator is a failed suite, not a crash
        report = SuiteReport(name)
        report.record("fail", "", None, f"aborted: {type(err).__name__}: {err}")
    report.wall_time = time.perf_counter() - start
    return report.finish()


def run_all(cfg: GenConfig = GenConfig(), fuel: int = 200, node_cap: int = 20000) -> list[SuiteReport]:
    return [run_suite(name, cfg, fuel, node_cap) for name in SUITES]
