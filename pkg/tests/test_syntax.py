import pytest
from hypothesis import given

from distlam.parser import parse_term
from distlam.syntax import (
    ROOT, Abs, App, Arrow, Atom, Bound, Conj, Dir, Pair, Proj, Var, alpha_eq, children, dump,
    erase, format_position, free_vars, instantiate, is_closed, is_neutral, is_valid_position,
    is_value, lam, occurrences, parse_position, positions, pretty, pretty_type, replace_at,
    shift, size, subst, subterm_at, subterms, type_size,
)

from strategies import names, reference_subst, terms

A, B, C = Atom("A"), Atom("B"), Atom("C")
x, y, z = Var("x"), Var("y"), Var("z")
ident = lam("y", Var("y"))


def t(text):
    return parse_term(text)


class TestSubst:
    def test_variable_hit(self):
        assert subst(x, "x", ident) == ident

    def test_binder_renamed_to_avoid_capture(self):
        result = subst(lam("y", x), "x", y)
        assert result == lam("z", y)
        assert pretty(result) == "\\y1. y"

    def test_matches_naive_substitution_without_shadowing(self):
        term = Pair(x, Proj(1, x))
        expected = Pair(ident, Proj(1, ident))
        assert subst(term, "x", ident) == expected
        from distlam.harness.oracles import naive_subst
        assert naive_subst(term, "x", ident) == expected

    def test_bound_occurrence_untouched(self):
        assert subst(lam("x", x), "x", y) == lam("x", x)

    def test_annotations_preserved(self):
        term = lam("y", App(Var("y"), x), A)
        assert subst(term, "x", z) == lam("y", App(Var("y"), z), A)

    @given(terms, names)
    def test_identity_substitution(self, term, name):
        assert subst(term, name, Var(name)) == term

    @given(terms, names, terms)
    def test_unused_variable(self, term, name, s):
        if name not in free_vars(term):
            assert subst(term, name, s) == term

    @given(terms, names, terms)
    def test_size_formula(self, term, name, s):
        k = occurrences(term, name)
        assert size(subst(term, name, s)) == size(term) + k * (size(s) - 1)

    @given(terms, names, terms)
    def test_agrees_with_textbook_renaming(self, term, name, s):
        assert subst(term, name, s) == reference_subst(term, name, s)

    @given(terms, names, terms)
    def test_free_variables(self, term, name, s):
        expected = free_vars(term) - {name}
        if name in free_vars(term):
            expected |= free_vars(s)
        assert free_vars(subst(term, name, s)) == expected


class TestAlpha:
    @pytest.mark.parametrize("left, right, expected", [
        ("\\x. x", "\\y. y", True),
        ("\\x. \\y. x", "\\a. \\b. b", False),
        ("<\\x. x, y>", "<\\z. z, y>", True),
        ("\\x:A. x", "\\y:A. y", True),
        ("\\x:A. x", "\\x:B. x", False),
        ("\\x:A. x", "\\x. x", False),
    ])
    def test_examples(self, left, right, expected):
        assert alpha_eq(t(left), t(right)) is expected

    def test_hint_ignored_by_hash(self):
        assert hash(Abs(Bound(0), None, "x")) == hash(Abs(Bound(0), None, "q"))

    def test_erase_drops_annotations(self):
        assert erase(t("\\x:A. \\y:B. x")) == t("\\x. \\y. x")


class TestSizesAndVariables:
    @pytest.mark.parametrize("text, expected", [
        ("x", 1), ("\\x. x", 2), ("p1 <x, y>", 4), ("(\\x. x x) (\\x. x x)", 9),
    ])
    def test_size(self, text, expected):
        assert size(t(text)) == expected

    def test_free_vars(self):
        assert free_vars(t("\\x. x y")) == {"y"}
        assert free_vars(t("p1 x")) == {"x"}
        assert is_closed(t("\\x. \\y. <x, y>"))
        assert not is_closed(t("\\x. y"))

    def test_dangling_index_is_not_closed(self):
        assert not is_closed(Bound(0))

    @given(terms)
    def test_size_counts_subterms(self, term):
        assert size(term) == sum(1 for _ in subterms(term))


class TestValuesAndNeutrals:
    def test_examples(self):
        assert is_value(t("<x, y>"))
        assert is_neutral(t("p1 (\\x. x)"))
        assert is_value(x) and is_neutral(x)
        assert is_value(t("\\x. x")) and not is_neutral(t("\\x. x"))
        assert is_neutral(t("(\\x. x) y")) and not is_value(t("(\\x. x) y"))

    @given(terms)
    def test_partition(self, term):
        assert is_value(term) or is_neutral(term)
        assert (is_value(term) and is_neutral(term)) == isinstance(term, Var)


class TestDeBruijn:
    def test_shift_respects_cutoff(self):
        assert shift(App(Bound(1), Bound(0)), 2, 1) == App(Bound(3), Bound(0))

    def test_instantiate_shifts_argument_under_binders(self):
        body = Abs(App(Bound(1), Bound(0)))
        assert instantiate(body, Bound(0)) == Abs(App(Bound(1), Bound(0)))

    def test_loose(self):
        assert Abs(Bound(1)).loose == 1
        assert Abs(Bound(0)).loose == 0


class TestPositions:
    def test_navigation(self):
        term = t("p1 <(\\x. x) y, z>")
        pos = (Dir.PROJ_BODY, Dir.PAIR_L)
        assert subterm_at(term, pos) == t("(\\x. x) y")
        assert replace_at(term, pos, y) == t("p1 <y, z>")
        assert format_position(pos) == "proj.left"
        assert format_position(ROOT) == "root"
        assert parse_position("proj.left") == pos
        assert parse_position("root") == ROOT
        assert not is_valid_position(term, (Dir.APP_FN,))

    @given(terms)
    def test_positions_cover_subterms(self, term):
        found = [subterm_at(term, p) for p in positions(term)]
        assert found == list(subterms(term))
        assert all(is_valid_position(term, p) for p in positions(term))

    def test_children(self):
        assert children(t("<x, y>")) == (x, y)
        assert children(x) == ()


class TestPretty:
    @pytest.mark.parametrize("term, expected", [
        (App(lam("x", x), y), "(\\x. x) y"),
        (Proj(1, Pair(x, y)), "p1 <x, y>"),
        (App(Proj(1, Pair(x, y)), z), "p1 <x, y> z"),
        (App(x, App(y, z)), "x (y z)"),
        (App(App(x, y), z), "x y z"),
        (App(x, Proj(2, y)), "x p2 y"),
        (Proj(1, App(x, y)), "p1 (x y)"),
        (lam("x", lam("y", App(x, y)), A), "\\x:A. \\y. x y"),
        (App(lam("x", x), lam("x", x)), "(\\x. x) (\\x. x)"),
    ])
    def test_examples(self, term, expected):
        assert pretty(term) == expected

    @pytest.mark.parametrize("ty, expected", [
        (Arrow(A, Conj(B, C)), "A -> B & C"),
        (Conj(Arrow(A, B), Arrow(A, C)), "(A -> B) & (A -> C)"),
        (Conj(A, Conj(B, C)), "A & (B & C)"),
        (Conj(Conj(A, B), C), "(A & B) & C"),
        (Arrow(Arrow(A, B), C), "(A -> B) -> C"),
        (Arrow(A, Arrow(B, C)), "A -> B -> C"),
        (Arrow(Conj(A, B), C), "A & B -> C"),
    ])
    def test_types(self, ty, expected):
        assert pretty_type(ty) == expected

    def test_type_size(self):
        assert type_size(Arrow(A, Conj(B, C))) == 5

    def test_dangling_index(self):
        assert pretty(App(Bound(0), x)) == "_0 x"

    def test_binder_names_avoid_free_variables(self):
        assert pretty(lam("z", App(Var("z"), x))) == "\\z. z x"
        assert pretty(Abs(App(Bound(0), x), None, "x")) == "\\x1. x1 x"

    def test_dump(self):
        assert dump(App(lam("x", x), y)) == "App(Abs(x, Var(x)), Var(y))"

    @given(terms)
    def test_round_trip(self, term):
        assert parse_term(pretty(term)) == term
