"""Acceptance criteria at full scale: default config, 1000 trials, fuel 200, node cap 20000.

Each test prints one PASS/FAIL line; the lines are repeated in the terminal summary.
"""
from dataclasses import replace

from acceptance_log import report
from distlam.harness.report import GenConfig
from distlam.harness.suites import NAMED_ISO_CASES, SR_FIXTURES, run_suite
from distlam.parser import parse_type
from distlam.typesys import types_iso

CFG = GenConfig(seed=0, trials=1000)
FUEL = 200
NODE_CAP = 20000


def _summary(r, *keys) -> str:
    parts = [f"{r.attempted} trials", f"{len(r.counterexamples)} counterexamples"]
    parts += [f"{k}={r.notes.get(k, 0)}" for k in keys]
    parts.append(f"{r.wall_time:.1f}s")
    return ", ".join(parts)


def _accept(name, r, limit, conditions, *keys):
    problems = [text for ok, text in conditions if not ok]
    if not r.ok:
        problems.append(f"first counterexample: {r.counterexamples[0]}")
    if r.wall_time >= limit:
        problems.append(f"took {r.wall_time:.1f}s, limit {limit}s")
    detail = _summary(r, *keys) + ("" if not problems else " | " + "; ".join(problems))
    report(name, not problems, detail)
    assert not problems, detail


def test_progress():
    r = run_suite("progress", CFG, FUEL, NODE_CAP)
    _accept("progress", r, 10, [
        (r.notes.get("corpus.normal", 0) > 0, "no normal closed term in the corpus"),
    ], "corpus.normal", "generated.normalized")


def test_confluence():
    r = run_suite("confluence", CFG, FUEL, NODE_CAP)
    peaks = sum(r.notes.get(k, 0) for k in ("peak.joined", "peak.normal", "peak.diverged"))
    _accept("confluence", r, 60, [
        (r.notes.get("graph.checked", 0) >= 500, "fewer than 500 exhausted acyclic graphs"),
        (peaks == 1000, f"{peaks} peak trials"),
    ], "graph.checked", "peak.joined")


def test_lo_normalization():
    r = run_suite("lo-normalization", CFG, FUEL, NODE_CAP)
    _accept("lo-normalization", r, 60, [
        (r.notes.get("with_normal_node", 0) >= 500, "fewer than 500 graphs with a normal node"),
    ], "with_normal_node")


def test_substitutivity():
    r = run_suite("substitutivity", CFG, FUEL, NODE_CAP)
    _accept("substitutivity", r, 10, [
        (r.notes.get("left.checked", 0) + r.notes.get("left.normal", 0) == 1000,
         "left trials missing"),
        (r.notes.get("right.checked", 0) + r.notes.get("right.normal", 0)
         + r.notes.get("right.search_capped", 0) == 1000, "right trials missing"),
    ], "left.checked", "right.checked")


def test_subject_reduction():
    r = run_suite("subject-reduction", CFG, FUEL, NODE_CAP)
    fixtures = [f"fixture.{name}" for name, _, _ in SR_FIXTURES]
    _accept("subject-reduction", r, 30, [
        (all(r.notes.get(k) == 1 for k in fixtures), "a proof-case fixture did not hold"),
        (r.attempted == 1000 + len(SR_FIXTURES), "trial count"),
    ], *fixtures)


def test_strong_normalization():
    r = run_suite("strong-normalization", CFG, FUEL, NODE_CAP)
    _accept("strong-normalization", r, 120, [
        (r.notes.get("fixture.omega_cycle") == 1, "omega not reported as a 1-step cycle"),
        (r.passed == 1001, "not every typed graph was finite and acyclic"),
    ], "fixture.omega_cycle", "max_graph_nodes")


def test_iso_decision():
    r = run_suite("iso-oracle", CFG, FUEL, NODE_CAP)
    named = {name: types_iso(parse_type(a), parse_type(b)) for name, a, b, _ in NAMED_ISO_CASES}
    _accept("iso-decision", r, 30, [
        (r.notes.get("corpus.types") == 74, "corpus size"),
        (named["distributivity"], "distributivity instance answered no"),
        (not (named["commutativity"] or named["associativity"] or named["currying"]),
         "a non-isomorphism answered yes"),
    ], "corpus.types")


def test_typing_uniqueness():
    r = run_suite("typing-uniqueness", CFG, FUEL, NODE_CAP)
    _accept("typing-uniqueness", r, 60, [
        (r.notes.get("corpus.typable", 0) > 0, "no typable corpus term"),
    ], "corpus.typable")


def test_critical_pairs():
    r = run_suite("critical-pairs", replace(CFG, trials=0), FUEL, NODE_CAP)
    _accept("critical-pairs", r, 1, [
        (r.notes.get("diagrams_closed") == 4, "not all four diagrams close"),
    ], "diagrams_closed")


def test_typed_substitution():
    r = run_suite("typed-substitution", replace(CFG, trials=500), FUEL, NODE_CAP)
    _accept("typed-substitution", r, 10, [
        (r.passed == 500, "not all trials held"),
    ], "uses_variable")

