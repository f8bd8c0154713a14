"""Tests for the problem-file grammar, printer and TPTP importer."""

from textwrap import dedent

import pytest
from pytest import raises

from fixdom import clausify as F
from fixdom.exceptions import ParseError
from fixdom.syntax import corpus, load_problem, parse_problem, parse_tptp, print_problem


HEADER = """\
sort nat.
func 0 : nat.
func s : nat -> nat.
pred P : nat.
var x, y : nat.
"""


def parse(body):
    return parse_problem(HEADER + dedent(body))


# the bundled corpus ===================================================================


def test_corpus_lists_the_bundled_problems():
    names = corpus()
    assert "elevator" in names
    assert "bigger_alphas_bad" in names
    assert names == sorted(names)


@pytest.mark.parametrize("name", corpus())
def test_printing_is_a_fixed_point(name):
    problem = load_problem(name)
    printed = print_problem(problem)
    again = parse_problem(printed)
    assert again == problem
    assert print_problem(again) == printed


def test_unknown_bundled_problem():
    with raises(ParseError):
        load_problem("no_such_problem")


# declarations and clauses =============================================================


def test_elevator_declarations():
    problem = load_problem("elevator")
    sig = problem.signature
    assert sig.sorts == ["elevator", "person"]
    assert [p.name for p in sig.predicates] == ["G", "C", "R"]
    assert problem.variables == {"x": "person"}
    assert [str(cc) for cc in problem.clauses[:3]] == ["→ G(a,p)", "→ G(b,q)", "G(a,x) → C(a,x)"]
    assert isinstance(problem.conjecture, F.Forall)


def test_constrained_clause_over_declared_existentials():
    problem = parse(
        """\
        exists u, v : nat.
        clause v = 0 || -> P(x).
        clause [z:nat] u = s(z) || P(z) -> .
        """
    )
    assert [v.name for v in problem.existentials] == ["u", "v"]
    assert str(problem.clauses[0]) == "v≈0 ∥ → P(y)"
    assert str(problem.clauses[1]) == "u≈s(x) ∥ P(x) →"


def test_directives():
    problem = parse(
        """\
        ordering lpo.
        precedence s < 0.
        weight s = 2.
        weight $var = 1.
        constructors 0, s.
        conjecture forall x:nat. P(x).
        naming x = w.
        induct w := y < s(y).
        """
    )
    assert problem.ordering == "lpo"
    assert problem.precedence == ("s", "0")
    assert problem.weights == {"s": 2, "$var": 1}
    assert problem.constructors == ("0", "s")
    assert problem.naming == {"x": "w"}
    (hint,) = problem.induction
    smaller, larger = hint["w"]
    assert (str(smaller), str(larger)) == ("y", "s(y)")


# errors ===============================================================================


def test_errors_carry_line_and_column():
    with raises(ParseError) as excinfo:
        parse("clause -> Q(0).\n")
    assert excinfo.value.line == 6
    assert excinfo.value.column == 11
    assert "undeclared symbol 'Q'" in str(excinfo.value)


def test_unexpected_character():
    with raises(ParseError) as excinfo:
        parse_problem("sort nat.\nfunc # : nat.\n")
    assert excinfo.value.line == 2
    assert "unexpected character '#'" in str(excinfo.value)


def test_a_valid_prefix_is_not_a_problem():
    with raises(ParseError) as excinfo:
        parse_problem("sort nat.\nfunc 0 : nat")
    assert "end of input" in str(excinfo.value)


@pytest.mark.parametrize(
    "body, message",
    [
        ("clause -> P(0, 0).", "expects 1 arguments"),
        ("clause -> s(0).", "not a predicate"),
        ("clause -> P(0) = P(0).", "predicates cannot occur in equations"),
        ("func s : nat.", "already declared"),
        ("var P : nat.", "already declared"),
        ("clause -> z = 0.", "undeclared identifier 'z'"),
        ("clause u = 0 || -> .", "not an existential variable"),
        ("clause -> .\nexists u : nat.", "before the first clause"),
        ("conjecture P(0).\nconjecture P(0).", "at most one conjecture"),
        ("ordering rpo.", "unknown ordering"),
        ("constructors 0, P.", "cannot be a constructor"),
        ("conjecture forall x:nat. P(x).\nnaming y = u.", "not a universal variable"),
        ("conjecture forall x:nat. P(x).\ninduct y := 0 < s(0).", "neither an existential"),
        ("pred Q : list.", "undeclared sort"),
    ],
)
def test_semantic_errors(body, message):
    with raises(ParseError) as excinfo:
        parse(body)
    assert message in str(excinfo.value)


def test_ill_sorted_equation():
    with raises(ParseError) as excinfo:
        parse_problem("sort d, e.\nfunc a : d.\nfunc b : e.\nclause -> a = b.\n")
    assert "b has sort e, expected d" in str(excinfo.value)
    assert excinfo.value.line == 4


# conjectures ==========================================================================


def test_conjecture_connectives():
    problem = parse("conjecture forall x:nat. exists y:nat. x != 0 -> P(x) & ~P(y) | x = y.\n")
    f = problem.conjecture
    assert isinstance(f, F.Forall) and isinstance(f.body, F.Exists)
    matrix = f.body.body
    assert isinstance(matrix, F.Implies)
    assert isinstance(matrix.left, F.Not)
    assert isinstance(matrix.right, F.Or)
    assert isinstance(matrix.right.left, F.And)


def test_conjecture_variables_shadow_declarations():
    problem = parse("conjecture forall y:nat. P(y).\n")
    (y,) = problem.conjecture.variables
    assert y.sort == "nat"


# TPTP =================================================================================


def test_tptp_clauses_become_unconstrained_axioms():
    problem = parse_tptp(
        dedent(
            """\
            % a small refutation
            cnf(a1, axiom, p(a)).
            cnf(a2, axiom, f(X) = X | X != a).
            cnf(c, negated_conjecture, ~p(X)).
            """
        )
    )
    assert problem.existentials == []
    assert problem.signature.sorts == ["i"]
    assert [str(cc) for cc in problem.clauses] == ["→ p(a)", "a≈x → f(x)≈x", "p(x) →"]
    assert problem.signature["p"].is_predicate
    assert not problem.signature["f"].is_predicate


def test_tptp_symbols_must_be_used_consistently():
    with raises(ParseError):
        parse_tptp("cnf(a, axiom, p(a) | q(p(a))).")


def test_tptp_syntax_errors():
    with raises(ParseError):
        parse_tptp("cnf(a, axiom, p(a)")
