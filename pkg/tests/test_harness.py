import json
import random
from collections import Counter
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from distlam.harness import suites
from distlam.harness.generators import (
    TypedGrammar, derive_all, enumerate_annotated_terms, enumerate_terms_up_to, enumerate_types,
    gen_term, gen_typed_term, random_variant, types_up_to,
)
from distlam.harness.oracles import atoms_of, iso_class, iso_proof_search, reachable_within
from distlam.harness.report import GenConfig, SuiteReport
from distlam.harness.suites import SUITES, critical_pair_cases, iso_corpus, run_suite
from distlam.parser import parse_context, parse_term, parse_type
from distlam.rewrite import Verdict, reducts
from distlam.syntax import Abs, Var, is_annotated, is_closed, subterms, type_size
from distlam.typesys import TypeCheckError, infer, types_iso

T = parse_type


class TestGenConfig:
    @pytest.mark.parametrize("kwargs", [
        {"max_size": 0}, {"var_pool": 0}, {"atom_pool": 0}, {"trials": -1},
    ])
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            GenConfig(**kwargs)

    def test_trial_seeds_differ(self):
        cfg = GenConfig(seed=3)
        assert len({cfg.trial_seed(i) for i in range(100)}) == 100


class TestGenTerm:
    def test_size_one_is_variable(self):
        for seed in range(20):
            assert isinstance(gen_term(GenConfig(seed=seed, max_size=1)), Var)

    def test_deterministic(self):
        cfg = GenConfig(seed=17)
        assert gen_term(cfg) == gen_term(cfg)

    @given(st.integers(0, 2**40), st.integers(1, 20))
    def test_size_bound(self, seed, max_size):
        assert gen_term(GenConfig(seed=seed, max_size=max_size)).size <= max_size

    @given(st.integers(0, 2**40))
    def test_closed_mode(self, seed):
        t = gen_term(GenConfig(seed=seed, closed=True, var_pool=3))
        assert is_closed(t)
        assert t.size <= 12 + 3

    @given(st.integers(0, 2**40))
    def test_annotated_mode(self, seed):
        assert is_annotated(gen_term(GenConfig(seed=seed, annotated=True)))

    def test_redex_rate(self):
        cfg = GenConfig(seed=0, max_size=12)
        hits = sum(bool(reducts(gen_term(cfg, random.Random(cfg.trial_seed(i)))))
                   for i in range(1000))
        assert hits / 1000 >= 0.30


class TestEnumeration:
    def test_type_counts(self):
        atoms = atoms_of(2)
        assert [len(enumerate_types(n, atoms)) for n in (1, 2, 3, 5)] == [2, 0, 8, 64]
        assert len(iso_corpus()) == 74

    def test_closed_term_count(self):
        assert sum(1 for _ in enumerate_terms_up_to(7)) == 5057

    def test_terms_unique(self):
        terms = list(enumerate_terms_up_to(5, ("x",)))
        assert len(terms) == len(set(terms))


class TestTypedGenerator:
    @given(st.integers(0, 2**40))
    @settings(max_examples=80)
    def test_output_types(self, seed):
        cfg = GenConfig(seed=seed, annotated=True)
        ctx, t = gen_typed_term(cfg)
        infer(ctx, t)
        assert is_annotated(t)
        assert t.size <= cfg.max_size

    def test_goal_respected(self):
        ctx = parse_context("a:A, b:B")
        goal = T("A -> B & A")
        for seed in range(30):
            _, t = gen_typed_term(GenConfig(seed=seed, annotated=True), ctx=ctx, goal=goal)
            assert types_iso(infer(ctx, t), goal)

    def test_closed(self):
        ctx, t = gen_typed_term(GenConfig(seed=5, annotated=True, closed=True))
        assert len(ctx) == 0 and is_closed(t)
        infer(ctx, t)

    def test_coverage_counters(self):
        stats = Counter()
        for i in range(1000):
            gen_typed_term(GenConfig(seed=i, annotated=True), stats=stats)
        assert stats["app_head_detour"] > 0
        assert stats["pair_as_arrow"] > 0
        assert stats["detour"] > 0

    def test_small_corpus_matches_brute_force(self):
        ctx = parse_context("a:A, b:B, c:A -> B, d:A & B")
        annotations = types_up_to(3, atoms_of(2))
        typable = {}
        for n in range(1, 4):
            for t in enumerate_annotated_terms(n, annotations, tuple(ctx.names())):
                try:
                    typable[t] = infer(ctx, t)
                except TypeCheckError:
                    pass
        assert len(typable) == 729

        grammar = TypedGrammar(ctx, atoms_of(2))
        derived = set()
        for goal in set(typable.values()) | set(types_up_to(5, atoms_of(2))):
            derived |= {t for t in derive_all(grammar, goal, 3)
                        if all(type_size(a) <= 3 for a in _annotations(t))}
        assert derived == set(typable)

        for seed in range(200):
            cfg = GenConfig(seed=seed, max_size=3, annotated=True)
            _, t = gen_typed_term(cfg, ctx=ctx)
            assert t in derive_all(grammar, infer(ctx, t), 3)


def _annotations(t):
    return [u.ann for u in subterms(t) if isinstance(u, Abs)]


class TestIsoOracle:
    @pytest.mark.parametrize("a, b, depth, expected", [
        ("A", "A", 1, True),
        ("A -> B & C", "(A -> B) & (A -> C)", 2, True),
        ("A & B", "B & A", 8, False),
        ("(A -> B) & (A -> C)", "A -> B & C", 1, True),
    ])
    def test_examples(self, a, b, depth, expected):
        assert iso_proof_search(T(a), T(b), depth) is expected

    def test_depth_checked(self):
        with pytest.raises(ValueError):
            iso_proof_search(T("A"), T("A"), 0)

    def test_saturation(self):
        cls, saturated = iso_class(T("A -> B & C"), 8)
        assert saturated and len(cls) == 2

    def test_corpus_agrees(self):
        corpus = iso_corpus()
        for a in corpus:
            cls, saturated = iso_class(a, 8)
            assert saturated
            for b in corpus:
                assert (b in cls) == types_iso(a, b)

    @given(st.integers(0, 2**40))
    def test_variants_are_iso(self, seed):
        rng = random.Random(seed)
        a = T("(A -> B & C) & (B -> A)")
        assert types_iso(random_variant(rng, a, 3), a)


def test_reachable_within():
    t = parse_term("p1 <(\\x. x) y, z>")
    assert reachable_within(t, parse_term("y"), 2)
    assert reachable_within(t, parse_term("y"), 1) is False
    assert reachable_within(t, parse_term("z"), 5) is False


class TestReport:
    def test_invariant_and_text(self):
        r = SuiteReport("demo")
        r.record("pass")
        r.record("vacuous")
        r.record("fail", "x y", 9, "boom")
        r.record("fail", "z", None, "corpus")
        r.note("k", 2)
        r.finish()
        assert not r.ok
        assert [c.seed for c in r.counterexamples] == [None, 9]
        assert r.to_text(with_time=False).splitlines() == [
            "suite demo: FAIL",
            "  attempted 4, passed 1, vacuous 1, counterexamples 2",
            "  k = 2",
            "  counterexample [seed corpus] z :: corpus",
            "  counterexample [seed 9] x y :: boom",
        ]
        doc = json.loads(r.to_json())
        assert doc["suite"] == "demo" and doc["ok"] is False
        assert doc["counterexamples"][1] == {"term": "x y", "seed": 9, "details": "boom"}

    def test_unknown_verdict(self):
        with pytest.raises(ValueError):
            SuiteReport("demo").record("maybe")


class TestSuites:
    def test_unknown(self):
        with pytest.raises(ValueError):
            run_suite("nope")

    @pytest.mark.parametrize("name", list(SUITES))
    def test_small_run_passes(self, name):
        cfg = GenConfig(seed=1, trials=20)
        report = run_suite(name, cfg)
        assert report.ok, report.to_text()
        assert report.passed + report.vacuous == report.attempted

    @pytest.mark.parametrize("name", ["confluence", "substitutivity", "typed-substitution"])
    def test_reproducible(self, name):
        cfg = GenConfig(seed=4, trials=30)
        a, b = run_suite(name, cfg), run_suite(name, cfg)
        assert a.to_text(with_time=False) == b.to_text(with_time=False)

    def test_counterexample_reported_with_seed(self, monkeypatch):
        def broken(t):
            return Verdict.fails("planted") if t.size % 2 else Verdict.holds()

        monkeypatch.setattr(suites, "progress_check", broken)
        cfg = GenConfig(seed=2, trials=10)
        report = run_suite("progress", cfg)
        assert not report.ok
        seeded = [c for c in report.counterexamples if c.seed is not None]
        assert seeded and all(c.details == "planted" for c in seeded)
        seeds = [c.seed for c in seeded]
        assert seeds == sorted(seeds)
        assert set(seeds) <= {replace(cfg, closed=True).trial_seed(i) for i in range(10)}

    def test_exception_becomes_failure(self, monkeypatch):
        def explode(t):
            raise RuntimeError("oops")

        monkeypatch.setattr(suites, "progress_check", explode)
        report = run_suite("progress", GenConfig(trials=1))
        assert not report.ok
        assert "RuntimeError: oops" in report.counterexamples[0].details

    def test_critical_pair_cases(self):
        cases = critical_pair_cases()
        assert len(cases) == 14
        assert {c[0].split("[")[0] for c in cases} == {"proj-abs-pair", "proj-app-pair", "beta-abs-pair",
                                         "proj-app-beta"}

    def test_critical_pairs_close(self):
        report = run_suite("critical-pairs", GenConfig(trials=0))
        assert report.ok and report.notes["diagrams_closed"] == 4
