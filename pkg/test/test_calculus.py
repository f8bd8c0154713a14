"""Tests for the inference rules, one worked example per rule."""

import pytest
from pytest import raises

from fixdom import terms
from fixdom.calculus import (
    InductionDirective,
    cnf_of_negation,
    constraint_superposition,
    equality_elimination,
    equality_factoring,
    equality_resolution,
    general_equality_elimination,
    heuristic_induction,
    induction_conclusions,
    superposition_left,
    superposition_right,
    verify_record,
)
from fixdom.clauses import Clause, ConstrainedClause, Constraint, Equation, encode_predicative
from fixdom.exceptions import InductionError
from fixdom.ordering import OrderingSpec
from fixdom.terms import Signature, Substitution, Var


# fixtures =============================================================================


@pytest.fixture(scope="module")
def nat():
    sig = Signature(["nat"])
    sig.add_function("0", [], "nat")
    sig.add_function("s", ["nat"], "nat")
    sig.add_function("plus", ["nat", "nat"], "nat")
    for name in ("G", "E", "P", "Q"):
        sig.add_predicate(name, ["nat"] * (2 if name == "G" else 1))
    return sig


@pytest.fixture(scope="module")
def elevator():
    sig = Signature(["elevator", "person"])
    sig.add_function("a", [], "elevator")
    for name in "GCR":
        sig.add_predicate(name, ["elevator", "person"])
    return sig


def constants(*names):
    """A signature of constants of sort ``d`` declared in increasing precedence."""
    sig = Signature(["d"])
    for name in names:
        sig.add_function(name, [], "d")
    return sig


U = Var("u", "nat", existential=True)
X, Y, Z = Var("x", "nat"), Var("y", "nat"), Var("z", "nat")


def conclusions(records):
    return [str(r.conclusion) for r in records]


def at_most_size(s, t):
    return terms.size(s) < terms.size(t)


# equality resolution and factoring ====================================================


def test_equality_resolution_instantiates_the_constraint(nat):
    spec = OrderingSpec(nat)
    cc = ConstrainedClause.of(Constraint.of([U], [X]), [Equation.of(X, nat.const("0"))])
    records = equality_resolution(spec, cc)
    assert conclusions(records) == ["u≈0 ∥ □"]
    assert records[0].rule == "EqRes"


def test_equality_resolution_of_a_ground_clause(nat):
    spec = OrderingSpec(nat)
    zero = nat.const("0")
    cc = ConstrainedClause.of(Constraint.of([U], [zero]), [Equation.of(zero, zero)])
    assert conclusions(equality_resolution(spec, cc)) == ["u≈0 ∥ □"]


def test_equality_resolution_needs_an_antecedent(nat):
    spec = OrderingSpec(nat)
    cc = ConstrainedClause.of(Constraint.of([U], [X]), [], [Equation.of(X, nat.const("0"))])
    assert equality_resolution(spec, cc) == []


def test_equality_factoring():
    sig = constants("b", "a")
    sig.add_function("f", ["d"], "d")
    spec = OrderingSpec(sig)
    a, b = sig.const("a"), sig.const("b")
    x = Var("x", "d")
    f = lambda t: sig.app("f", t)
    cc = ConstrainedClause.of(Constraint(), [], [Equation.of(f(x), a), Equation.of(f(b), b)])
    records = equality_factoring(spec, cc)
    expected = ConstrainedClause.of(Constraint(), [Equation.of(a, b)], [Equation.of(f(b), b)])
    assert [r.conclusion for r in records] == [expected]


def test_equality_factoring_of_a_horn_clause_does_nothing(nat):
    spec = OrderingSpec(nat)
    cc = ConstrainedClause.of(Constraint(), [], [encode_predicative(nat, "P", X)])
    assert equality_factoring(spec, cc) == []


def test_equality_factoring_needs_unifiable_sides():
    sig = constants("b", "a", "c")
    spec = OrderingSpec(sig)
    a, b, c = (sig.const(n) for n in "abc")
    cc = ConstrainedClause.of(Constraint(), [], [Equation.of(a, b), Equation.of(c, b)])
    assert equality_factoring(spec, cc) == []


# superposition ========================================================================


def test_superposition_right():
    sig = constants("b", "c", "a")
    sig.add_function("f", ["d"], "d")
    spec = OrderingSpec(sig)
    a, b, c = (sig.const(n) for n in "abc")
    left = ConstrainedClause.of(Constraint(), [], [Equation.of(a, b)])
    right = ConstrainedClause.of(Constraint(), [], [Equation.of(sig.app("f", a), c)])
    records = superposition_right(spec, left, right)
    expected = ConstrainedClause.of(Constraint(), [], [Equation.of(sig.app("f", b), c)])
    assert conclusions(records) == [str(expected)]
    assert all(verify_record(spec, r) for r in records)


def test_superposition_right_needs_unifiable_constraints():
    sig = constants("b", "c", "a")
    sig.add_function("f", ["d"], "d")
    spec = OrderingSpec(sig)
    a, b, c = (sig.const(n) for n in "abc")
    u = Var("u", "d", existential=True)
    left = ConstrainedClause.of(Constraint.of([u], [a]), [], [Equation.of(a, b)])
    right = ConstrainedClause.of(Constraint.of([u], [b]), [], [Equation.of(sig.app("f", a), c)])
    assert superposition_right(spec, left, right) == []


def test_superposition_never_rewrites_at_a_variable():
    sig = constants("b", "c", "a")
    spec = OrderingSpec(sig)
    a, b, c = (sig.const(n) for n in "abc")
    left = ConstrainedClause.of(Constraint(), [], [Equation.of(a, b)])
    right = ConstrainedClause.of(Constraint(), [], [Equation.of(Var("x", "d"), c)])
    assert superposition_right(spec, left, right) == []


def test_superposition_left_on_the_elevator(elevator):
    spec = OrderingSpec(elevator)
    u = Var("u", "person", existential=True)
    v = Var("v", "elevator", existential=True)
    a = elevator.const("a")
    x, y = Var("x", "person"), Var("y", "elevator")
    rule = ConstrainedClause.unconstrained(
        [u, v], [encode_predicative(elevator, "C", a, x)], [encode_predicative(elevator, "R", a, x)]
    )
    query = ConstrainedClause.of(
        Constraint.of([u, v], [x, y]), [encode_predicative(elevator, "R", y, x)]
    )
    records = superposition_left(spec, rule, query)
    assert conclusions(records) == ["u≈x, v≈a ∥ C(a,x) →"]
    assert records[0].rule == "SupL"


def test_superposition_left_on_addition(nat):
    spec = OrderingSpec(nat)
    zero = nat.const("0")
    s = lambda t: nat.app("s", t)
    plus = lambda l, r: nat.app("plus", l, r)
    step = ConstrainedClause.unconstrained([U], [], [Equation.of(plus(s(X), Y), s(plus(X, Y)))])
    query = ConstrainedClause.of(Constraint.of([U], [X]), [Equation.of(plus(X, zero), X)])
    assert "u≈s(x) ∥ s(plus(x,0))≈s(x) →" in conclusions(superposition_left(spec, step, query))


def test_superposition_left_needs_compatible_constraints(nat):
    spec = OrderingSpec(nat)
    zero = nat.const("0")
    fact = ConstrainedClause.of(Constraint.of([U], [zero]), [], [encode_predicative(nat, "P", X)])
    query = ConstrainedClause.of(
        Constraint.of([U], [nat.app("s", X)]), [encode_predicative(nat, "P", X)]
    )
    assert superposition_left(spec, fact, query) == []


# constraint superposition and equality elimination ====================================


def test_constraint_superposition_rewrites_the_constraint():
    sig = constants("b", "a")
    spec = OrderingSpec(sig)
    a, b = sig.const("a"), sig.const("b")
    u = Var("u", "d", existential=True)
    rule = ConstrainedClause.of(Constraint.of([u], [b]), [], [Equation.of(a, b)])
    empty = ConstrainedClause.of(Constraint.of([u], [a]))
    records = constraint_superposition(spec, rule, empty)
    assert conclusions(records) == ["u≈b ∥ b≈b →"]


def test_constraint_superposition_skips_variable_constraints():
    sig = constants("b", "a")
    spec = OrderingSpec(sig)
    a, b = sig.const("a"), sig.const("b")
    u = Var("u", "d", existential=True)
    rule = ConstrainedClause.of(Constraint.of([u], [b]), [], [Equation.of(a, b)])
    empty = ConstrainedClause.of(Constraint.of([u], [Var("x", "d")]))
    assert constraint_superposition(spec, rule, empty) == []


def test_constraint_superposition_equates_the_constraints(nat):
    spec = OrderingSpec(nat)
    zero = nat.const("0")
    rule = ConstrainedClause.of(Constraint.of([U], [X]), [], [Equation.of(nat.app("s", zero), zero)])
    empty = ConstrainedClause.of(Constraint.of([U], [nat.app("s", Y)]))
    assert conclusions(constraint_superposition(spec, rule, empty)) == ["u≈0 ∥ 0≈x →"]


def test_equality_elimination():
    sig = constants("a", "b")
    spec = OrderingSpec(sig)
    a, b = sig.const("a"), sig.const("b")
    u = Var("u", "d", existential=True)
    rule = ConstrainedClause.of(Constraint.of([u], [b]), [], [Equation.of(b, a)])
    empty = ConstrainedClause.of(Constraint.of([u], [a]))
    records = equality_elimination(spec, rule, empty)
    assert conclusions(records) == ["u≈b ∥ □"]
    assert all(verify_record(spec, r) for r in records)


def test_equality_elimination_needs_an_empty_second_premise():
    sig = constants("a", "b")
    spec = OrderingSpec(sig)
    a, b = sig.const("a"), sig.const("b")
    u = Var("u", "d", existential=True)
    rule = ConstrainedClause.of(Constraint.of([u], [b]), [], [Equation.of(b, a)])
    other = ConstrainedClause.of(Constraint.of([u], [a]), [], [Equation.of(b, a)])
    assert equality_elimination(spec, rule, other) == []
    variable = ConstrainedClause.of(Constraint.of([u], [Var("x", "d")]))
    assert equality_elimination(spec, rule, variable) == []


def test_general_equality_elimination_grows_the_constraint():
    sig = constants("a")
    sig.add_predicate("P", ["d"])
    sig.add_function("f", ["d"], "d")
    spec = OrderingSpec(sig)
    a = sig.const("a")
    u = Var("u", "d", existential=True)
    loop = ConstrainedClause.unconstrained([u], [], [Equation.of(sig.app("f", a), a)])
    fact = ConstrainedClause.of(Constraint.of([u], [a]), [], [encode_predicative(sig, "P", a)])
    seen = []
    for _ in range(2):
        lifted = general_equality_elimination(spec, loop, fact)
        resolved = [r for g in lifted for r in equality_resolution(spec, g.conclusion)]
        fact = max((r.conclusion for r in resolved), key=lambda cc: cc.weight)
        seen.append(str(fact))
    assert seen == ["u≈f(a) ∥ → P(a)", "u≈f(f(a)) ∥ → P(a)"]


def test_general_equality_elimination_is_blocked_by_sorts(elevator):
    spec = OrderingSpec(elevator)
    u = Var("u", "person", existential=True)
    v = Var("v", "elevator", existential=True)
    a, x = elevator.const("a"), Var("x", "person")
    fact = ConstrainedClause.unconstrained([u, v], [], [encode_predicative(elevator, "G", a, x)])
    query = ConstrainedClause.of(
        Constraint.of([u, v], [x, a]), [encode_predicative(elevator, "R", a, x)]
    )
    assert general_equality_elimination(spec, fact, query) == []


def test_constraint_rules_are_idle_without_existentials():
    sig = constants("b", "a")
    spec = OrderingSpec(sig)
    a, b = sig.const("a"), sig.const("b")
    rule = ConstrainedClause.of(Constraint(), [], [Equation.of(a, b)])
    empty = ConstrainedClause.of(Constraint())
    assert constraint_superposition(spec, rule, empty) == []
    assert equality_elimination(spec, rule, empty) == []
    assert general_equality_elimination(spec, rule, empty) == []


# induction ============================================================================


def test_cnf_of_a_single_negated_clause(nat):
    H = [ConstrainedClause.of(Constraint.of([U], [X]), [encode_predicative(nat, "G", nat.app("s", X), X)])]
    assert cnf_of_negation(H) == [Clause.of([], [encode_predicative(nat, "G", nat.app("s", X), X)])]


def test_cnf_of_two_unit_clauses(nat):
    alpha = Constraint.of([U], [X])
    H = [
        ConstrainedClause.of(alpha, [], [encode_predicative(nat, "P", X)]),
        ConstrainedClause.of(alpha, [], [encode_predicative(nat, "Q", X)]),
    ]
    assert cnf_of_negation(H) == [
        Clause.of([encode_predicative(nat, "P", X), encode_predicative(nat, "Q", X)], [])
    ]


def test_cnf_of_a_two_literal_clause(nat):
    zero = nat.const("0")
    p, q = encode_predicative(nat, "P", zero), encode_predicative(nat, "Q", zero)
    H = [ConstrainedClause.of(Constraint(), [p, q])]
    assert sorted(cnf_of_negation(H), key=str) == sorted(
        [Clause.of([], [p]), Clause.of([], [q])], key=str
    )


@pytest.mark.parametrize(
    "query, step, expected",
    [
        ("G", lambda z: ("s", z), "u≈s(x) ∥ → G(s(x),x)"),
        ("plus", lambda z: ("s", z), "u≈s(x) ∥ → plus(x,0)≈x"),
        ("E", lambda z: ("s", ("s", z)), "u≈s(s(x)) ∥ → E(x)"),
    ],
)
def test_induction_conclusions(nat, query, step, expected):
    query_equations = {
        "G": encode_predicative(nat, "G", nat.app("s", X), X),
        "plus": Equation.of(nat.app("plus", X, nat.const("0")), X),
        "E": encode_predicative(nat, "E", X),
    }

    def build(shape):
        if isinstance(shape, tuple):
            return nat.app(shape[0], build(shape[1]))
        return shape

    H = [ConstrainedClause.of(Constraint.of([U], [X]), [query_equations[query]])]
    directive = InductionDirective.by_existentials(H, {"u": (Z, build(step(Z)))})
    records = induction_conclusions(directive, at_most_size)
    assert conclusions(records) == [expected]
    assert records[0].rule == "Ind"


def test_induction_on_part_of_the_query_is_rejected(nat):
    alpha = Constraint.of([U], [X])
    P = ConstrainedClause.of(alpha, [], [encode_predicative(nat, "P", X)])
    Q = ConstrainedClause.of(alpha, [], [encode_predicative(nat, "Q", X)])
    directive = InductionDirective.by_existentials(
        [P, Q], {"u": (Z, nat.app("s", Z))}, premises=[P]
    )
    with raises(InductionError) as excinfo:
        induction_conclusions(directive, at_most_size)
    assert excinfo.value.condition == "i"


def test_induction_needs_a_variable_constraint(nat):
    zero = nat.const("0")
    H = [ConstrainedClause.of(Constraint.of([U], [nat.app("s", X)]), [], [Equation.of(X, zero)])]
    directive = InductionDirective(tuple(H), Substitution({X: zero}), Substitution({X: nat.app("s", zero)}))
    with raises(InductionError) as excinfo:
        induction_conclusions(directive, at_most_size)
    assert excinfo.value.condition == "ii"
    forced = induction_conclusions(directive, check=False)
    assert conclusions(forced) == ["u≈s(s(0)) ∥ 0≈0 →"]


def test_induction_needs_all_variables_in_the_constraint(nat):
    one = nat.app("s", nat.const("0"))
    H = [ConstrainedClause.of(Constraint.of([U], [X]), [Equation.of(Y, X)], [Equation.of(Y, one)])]
    directive = InductionDirective.by_existentials(H, {"u": (Z, nat.app("s", Z))})
    with raises(InductionError) as excinfo:
        induction_conclusions(directive, at_most_size)
    assert excinfo.value.condition == "iii"


def test_induction_needs_a_certified_class_ordering(nat):
    H = [ConstrainedClause.of(Constraint.of([U], [X]), [encode_predicative(nat, "E", X)])]
    directive = InductionDirective.by_existentials(H, {"u": (Z, nat.app("s", Z))})
    for class_less in (None, lambda s, t: False, lambda s, t: None):
        with raises(InductionError) as excinfo:
            induction_conclusions(directive, class_less)
        assert excinfo.value.condition == "iv"


def test_induction_needs_both_substitutions_on_the_constraint(nat):
    H = [ConstrainedClause.of(Constraint.of([U], [X]), [encode_predicative(nat, "E", X)])]
    directive = InductionDirective(tuple(H), Substitution({}), Substitution({X: nat.app("s", X)}))
    with raises(InductionError) as excinfo:
        induction_conclusions(directive, at_most_size)
    assert excinfo.value.condition == "iv"


def test_heuristic_induction_fires_when_the_conclusion_is_usable(nat):
    spec = OrderingSpec(nat)
    s = lambda t: nat.app("s", t)
    H = [ConstrainedClause.of(Constraint.of([U], [X]), [encode_predicative(nat, "G", s(X), X)])]
    derived = ConstrainedClause.of(Constraint.of([U], [s(X)]), [encode_predicative(nat, "G", s(X), X)])
    records = heuristic_induction(spec, H, derived, at_most_size)
    assert conclusions(records) == ["u≈s(x) ∥ → G(s(x),x)"]


def test_heuristic_induction_ignores_renamings(nat):
    spec = OrderingSpec(nat)
    s = lambda t: nat.app("s", t)
    H = [ConstrainedClause.of(Constraint.of([U], [X]), [encode_predicative(nat, "G", s(X), X)])]
    assert heuristic_induction(spec, H, H[0], at_most_size) == []
