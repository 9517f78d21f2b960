"""Loader behaviour for the three grammar formats."""

import pytest

from deduce.grammar import (
    CcgLexicon,
    GrammarError,
    backward,
    forward,
    load_ccg,
    load_cf,
    load_tag,
    parse_category,
    render_category,
    render_ccg,
    render_cf,
    render_tag,
    tokenize,
    validate_cnf,
)
from deduce.terms import Const, parse_term

from conftest import read


# ---- tokenizing input ----

def test_tokenize_splits_on_whitespace():
    w = tokenize("a program  halts\n")
    assert w.tokens == ("a", "program", "halts")
    assert w.n == 3
    assert w.word_at(1) == "a"
    assert w.word_at(3) == "halts"


def test_tokenize_empty():
    assert tokenize("").n == 0


# ---- context-free / DCG ----

def test_toy_grammar_counts(toy_grammar):
    assert len(toy_grammar.productions) == 7
    assert len(toy_grammar.lexicon) == 7
    assert toy_grammar.starts == (Const("S"),)
    assert toy_grammar.is_terminal("a")
    assert toy_grammar.is_terminal("Terry")
    assert not toy_grammar.is_terminal("NP")


def test_toy_epsilon_production(toy_grammar):
    assert (Const("OptRel"), ()) in toy_grammar.productions


def test_abn_quoted_literals_become_lexical_entries(abn_grammar):
    assert len(abn_grammar.productions) == 3
    assert len(abn_grammar.lexicon) == 2
    words = [w for w, _ in abn_grammar.lexicon]
    assert words == ["b", "a"]  # first-use order in the rules
    assert abn_grammar.productions[1][0] == parse_term("r(X, N)")


def test_cf_missing_start():
    with pytest.raises(GrammarError, match="start"):
        load_cf("S -> NP VP\nlex a Det\n")


def test_cf_empty_grammar():
    with pytest.raises(GrammarError, match="empty"):
        load_cf("start S\n")


def test_cf_syntax_error_carries_line_number():
    with pytest.raises(GrammarError, match="line 3"):
        load_cf("start S\nS -> A\n?? nonsense\nlex a A\n")


def test_cf_start_without_rules_warns():
    g = load_cf("start S T\nS -> A\nlex a A\n")
    assert any("T" in w for w in g.warnings)


def test_cf_round_trip(toy_grammar, abn_grammar):
    for g in (toy_grammar, abn_grammar):
        assert load_cf(render_cf(g)) == g


def test_validate_cnf_flags_toy_grammar(toy_grammar):
    report = validate_cnf(toy_grammar)
    assert any("OptRel ->" in line and "epsilon" in line for line in report)
    assert any("NP -> Det N OptRel" in line for line in report)
    assert any("NP -> PN" in line for line in report)


def test_validate_cnf_accepts_cnf(cnf_ab_grammar):
    assert validate_cnf(cnf_ab_grammar) == []


def test_validate_cnf_flags_inline_terminal():
    g = load_cf("start S\nS -> A B\nA -> a B\nlex a A\nlex b B\n")
    report = validate_cnf(g)
    assert any("terminals" in line for line in report)


# ---- CCG ----

def test_ccg_lexicon_shape(ccg_lexicon):
    assert ccg_lexicon.start == Const("S")
    assert ccg_lexicon.categories("John") == [Const("NP")]
    s, np = Const("S"), Const("NP")
    assert ccg_lexicon.categories("likes") == [forward(backward(s, np), np)]
    vp = backward(s, np)
    assert ccg_lexicon.categories("really") == [forward(vp, vp)]
    assert ccg_lexicon.categories("missing") == []


def test_category_parsing_left_associative():
    assert parse_category("S\\NP/NP") == parse_category("(S\\NP)/NP")
    assert parse_category("S/(NP/NP)") != parse_category("S/NP/NP")


def test_category_rendering_parenthesizes_nesting():
    cat = parse_category("(S\\NP)/(S\\NP)")
    assert render_category(cat) == "(S\\NP)/(S\\NP)"
    assert render_category(parse_category("S\\NP")) == "S\\NP"
    assert parse_category(render_category(cat)) == cat


def test_ccg_round_trip(ccg_lexicon):
    assert load_ccg(render_ccg(ccg_lexicon)) == ccg_lexicon


def test_ccg_errors():
    with pytest.raises(GrammarError, match="start"):
        load_ccg("John : NP\n")
    with pytest.raises(GrammarError, match="empty"):
        load_ccg("start S\n")
    with pytest.raises(GrammarError, match="parenthesis"):
        load_ccg("start S\nJohn : (S\\NP\n")


# ---- TAG ----

def test_trip_tree_shapes(trip_grammar):
    assert trip_grammar.start == "S"
    alpha = trip_grammar.tree("alpha")
    assert alpha.kind == "initial"
    assert alpha.root_label == "S"
    assert alpha.label((1,)) == "NP"
    assert alpha.label((1, 1)) == "Trip"
    assert alpha.label((2, 1, 1)) == "rumbas"
    assert alpha.foot is None

    beta = trip_grammar.tree("beta")
    assert beta.kind == "auxiliary"
    assert beta.foot == (1,)
    assert beta.label(beta.foot) == "VP"
    assert beta.label((2, 1)) == "nimbly"


def test_tag_adjoinable(trip_grammar):
    assert [t.name for t in trip_grammar.adjoinable("VP")] == ["beta"]
    assert trip_grammar.adjoinable("NP") == []


def test_tag_epsilon_leaf(counting_grammar):
    alpha = counting_grammar.tree("alpha")
    assert alpha.label((1,)) == ""
    assert alpha.is_leaf((1,))


def test_tag_round_trip(trip_grammar, counting_grammar):
    for g in (trip_grammar, counting_grammar):
        assert load_tag(render_tag(g)) == g


def test_tag_errors():
    with pytest.raises(GrammarError, match="binary"):
        load_tag("start S\ninitial a (S x y z)\n")
    with pytest.raises(GrammarError, match="foot"):
        load_tag("start S\ninitial a (S S* b)\n")
    with pytest.raises(GrammarError, match="exactly one foot"):
        load_tag("start S\ninitial a (S x)\nauxiliary b (S x y)\n")
    with pytest.raises(GrammarError, match="differs from root"):
        load_tag("start S\ninitial a (S x)\nauxiliary b (S T* y)\n")
    with pytest.raises(GrammarError, match="duplicate"):
        load_tag("start S\ninitial a (S x)\ninitial a (S y)\n")


def test_grammar_fixture_files_give_expected_types(ccg_lexicon):
    assert isinstance(ccg_lexicon, CcgLexicon)
    assert "John" in read("lexicon.ccg")
