import random

import pytest
from hypothesis import given, settings, strategies as st

from distlam.context import TypingContext
from distlam.harness.generators import gen_typed_term
from distlam.harness.oracles import derivable_types, iso_proof_search
from distlam.harness.report import GenConfig
from distlam.parser import parse_context, parse_term, parse_type
from distlam.rewrite import Status, reducts
from distlam.syntax import Arrow, Atom, Conj, lam
from distlam.typesys import (
    ApplicationOfNonArrow, DomainMismatch, MissingAnnotation, ProjectionOfNonConjunction,
    TypeCheckError, UnboundVariable, as_arrow, check, distribute_step, infer, is_type_nf,
    nf_measure, subject_reduction_check, type_nf, type_nf_stepwise, typed_subst_check, types_iso,
)

from strategies import types

T = parse_type
P = parse_term
EMPTY = TypingContext()


@pytest.mark.parametrize("source, normal", [
    ("A -> B & C", "(A -> B) & (A -> C)"),
    ("A -> B -> C & D", "(A -> B -> C) & (A -> B -> D)"),
    ("A & B", "A & B"),
    ("(A -> B & C) -> D", "((A -> B) & (A -> C)) -> D"),
    ("A -> (B & C) & D", "((A -> B) & (A -> C)) & (A -> D)"),
])
def test_type_nf(source, normal):
    assert type_nf(T(source)) == T(normal)


def test_nested_normal_form_matches_proof_search():
    assert iso_proof_search(T("A -> B -> C & D"), T("(A -> B -> C) & (A -> B -> D)"), 4)


@pytest.mark.parametrize("a, b, expected", [
    ("A -> B & C", "(A -> B) & (A -> C)", True),
    ("A & B", "B & A", False),
    ("A", "A", True),
    ("(A & B) & C", "A & (B & C)", False),
    ("A & B -> C", "A -> B -> C", False),
    ("(A -> B) & (B -> C)", "A -> B & C", False),
])
def test_types_iso(a, b, expected):
    assert types_iso(T(a), T(b)) is expected


@given(types)
def test_nf_is_normal_and_idempotent(a):
    n = type_nf(a)
    assert is_type_nf(n)
    assert type_nf(n) == n


@given(types)
def test_stepwise_agrees_and_measure_drops(a):
    # type_nf_stepwise asserts the measure decreases at every step
    assert type_nf_stepwise(a) == type_nf(a)


@given(types)
def test_step_decreases_measure(a):
    b = distribute_step(a)
    if b is not None:
        assert nf_measure(b) < nf_measure(a)


@given(types, types)
@settings(max_examples=80)
def test_iso_agrees_with_proof_search(a, b):
    # both sides reach their normal form by forward steps; a shared one joins them
    assert iso_proof_search(a, type_nf(a), 16)
    assert iso_proof_search(b, type_nf(b), 16)
    if not types_iso(a, b):
        assert not iso_proof_search(a, b, 8)


@pytest.mark.parametrize("ty, expected", [
    ("A -> B & C", ("A", "B & C")),
    ("(A -> B) & (A -> C)", ("A", "B & C")),
    ("(A -> B) & (C -> B)", None),
    ("A & (A -> B)", None),
    ("A", None),
])
def test_as_arrow(ty, expected):
    out = as_arrow(T(ty))
    if expected is None:
        assert out is None
    else:
        dom, cod = out
        assert (dom, type_nf(cod)) == (T(expected[0]), type_nf(T(expected[1])))


class TestInfer:
    @pytest.mark.parametrize("ctx, term, expected", [
        ("", "\\x:A. <x, x>", "(A -> A) & (A -> A)"),
        ("", "p1 (\\x:A. <x, \\y:B. x>)", "A -> A"),
        ("y:A", "<\\x:A. x, \\x:A. x> y", "A & A"),
        ("y:A", "y", "A"),
        ("f:A -> B & C, a:A", "p2 (f a)", "C"),
        ("f:(A -> B) & (A -> C), a:A", "f a", "B & C"),
        ("f:A -> B & C", "p1 f", "A -> B"),
        ("", "\\x:A. \\x:B. x", "A -> B -> B"),
    ])
    def test_examples(self, ctx, term, expected):
        assert infer(parse_context(ctx), P(term)) == T(expected)

    def test_shadowed_context_entry(self):
        ctx = TypingContext([("x", T("A")), ("x", T("B"))])
        assert infer(ctx, P("x")) == T("B")

    @pytest.mark.parametrize("ctx, term, error", [
        ("", "x", UnboundVariable),
        ("", "\\x. x", MissingAnnotation),
        ("a:A", "p1 a", ProjectionOfNonConjunction),
        ("a:A", "a a", ApplicationOfNonArrow),
        ("f:(A -> B) & C, a:A", "f a", ApplicationOfNonArrow),
        ("f:A -> B, b:B", "f b", DomainMismatch),
        ("f:(A -> B) & (C -> B), a:A", "f a", DomainMismatch),
    ])
    def test_errors(self, ctx, term, error):
        with pytest.raises(error) as info:
            infer(parse_context(ctx), P(term))
        assert isinstance(info.value, TypeCheckError)
        assert "\n" not in str(info.value)

    def test_error_names_binders(self):
        with pytest.raises(ProjectionOfNonConjunction) as info:
            infer(EMPTY, P("\\x:A. p1 x"))
        assert str(info.value) == (
            "cannot project from x : A (normal form A), not a conjunction")

    def test_mismatch_message_shows_normal_forms(self):
        with pytest.raises(DomainMismatch) as info:
            infer(parse_context("f:A -> B & C, b:B"), P("f b"))
        msg = str(info.value)
        assert "(A -> B) & (A -> C)" in msg and "got B" in msg

    def test_result_is_normal(self):
        assert is_type_nf(infer(EMPTY, P("\\x:A. \\y:B. <x, y>")))


@pytest.mark.parametrize("ctx, term, ty, expected", [
    ("", "\\x:A. <x, x>", "A -> A & A", True),
    ("", "\\x:A. x", "A -> B", False),
    ("y:A", "y", "A", True),
])
def test_check(ctx, term, ty, expected):
    assert check(parse_context(ctx), P(term), T(ty)) is expected


class TestSubjectReduction:
    @pytest.mark.parametrize("ctx, term, status", [
        ("", "p1 (\\x:A. <x, x>)", Status.HOLDS),
        ("y:A", "<\\x:A. x, \\x:A. x> y", Status.HOLDS),
        ("", "\\x:A. x", Status.VACUOUS),
        ("y:A", "(\\x:A. <x, x>) y", Status.HOLDS),
        ("y:A", "p1 <y, \\x:B. y>", Status.HOLDS),
    ])
    def test_examples(self, ctx, term, status):
        assert subject_reduction_check(parse_context(ctx), P(term)).status is status

    def test_projection_reduct_type(self):
        [step] = reducts(P("p1 (\\x:A. <x, x>)"))
        assert step.target == P("\\x:A. p1 <x, x>")
        assert infer(EMPTY, step.target) == T("A -> A")

    @given(st.integers(0, 2**32))
    @settings(max_examples=60)
    def test_generated(self, seed):
        cfg = GenConfig(seed=seed, max_size=10, annotated=True)
        ctx, t = gen_typed_term(cfg, random.Random(seed))
        assert subject_reduction_check(ctx, t).ok


class TestTypedSubstitution:
    def test_identity_for_variable(self):
        a0 = Atom("A")
        v = typed_subst_check(EMPTY, "x", Arrow(a0, a0), P("x"), lam("y", P("y"), a0))
        assert v.status is Status.HOLDS

    def test_pair(self):
        ctx = parse_context("z:A")
        assert typed_subst_check(ctx, "x", T("A"), P("<x, x>"), P("z")).status is Status.HOLDS
        assert infer(ctx, P("<z, z>")) == Conj(Atom("A"), Atom("A"))

    def test_substitute_iso_variant(self):
        ctx = parse_context("g:(A -> B) & (A -> C), a:A")
        v = typed_subst_check(ctx, "f", T("A -> B & C"), P("p1 (f a)"), P("g"))
        assert v.status is Status.HOLDS

    def test_wrong_argument_is_vacuous(self):
        ctx = parse_context("z:B")
        assert typed_subst_check(ctx, "x", T("A"), P("x"), P("z")).status is Status.VACUOUS


def test_infer_agrees_with_derivation_search_examples():
    ctx = parse_context("a:A, f:A -> B & A")
    for text in ["f a", "p1 (f a)", "\\x:A. f x", "p2 f", "<a, f> a"]:
        t = P(text)
        try:
            ty = infer(ctx, t)
        except TypeCheckError:
            assert not derivable_types(ctx, t)
            continue
        found = derivable_types(ctx, t)
        assert ty in found
        assert all(types_iso(b, ty) for b in found)
