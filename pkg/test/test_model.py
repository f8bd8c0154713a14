"""Tests for the bounded minimal model and the class ordering."""

import random

import pytest
from pytest import raises

from fixdom.clauses import Clause, ConstrainedClause, Constraint, Equation, encode_predicative
from fixdom.exceptions import SignatureError
from fixdom.model import (
    ClassOrder,
    check_models,
    class_less,
    construct_RN,
    enumerate_interpretations,
    finite_universe,
    free_symbols,
    normal_form,
)
from fixdom.ordering import OrderingSpec
from fixdom.terms import GroundTerms, Signature, Var


# fixtures =============================================================================


@pytest.fixture(scope="module")
def nat():
    sig = Signature(["nat"])
    sig.add_function("0", [], "nat")
    sig.add_function("s", ["nat"], "nat")
    sig.add_function("plus", ["nat", "nat"], "nat")
    sig.add_predicate("E", ["nat"])
    return sig


@pytest.fixture(scope="module")
def even(nat):
    x = Var("x", "nat")
    s = lambda t: nat.app("s", t)
    axioms = [
        ConstrainedClause.of(Constraint(), [], [encode_predicative(nat, "E", nat.const("0"))]),
        ConstrainedClause.of(
            Constraint(), [encode_predicative(nat, "E", x)], [encode_predicative(nat, "E", s(s(x)))]
        ),
    ]
    return axioms, construct_RN(axioms, Constraint(), nat, OrderingSpec(nat), 6)


@pytest.fixture(scope="module")
def addition(nat):
    x, y = Var("x", "nat"), Var("y", "nat")
    zero = nat.const("0")
    plus = lambda l, r: nat.app("plus", l, r)
    axioms = [
        ConstrainedClause.of(Constraint(), [], [Equation.of(plus(x, zero), x)]),
        ConstrainedClause.of(
            Constraint(), [], [Equation.of(plus(x, nat.app("s", y)), nat.app("s", plus(x, y)))]
        ),
    ]
    return axioms, construct_RN(axioms, Constraint(), nat, OrderingSpec(nat), 4)


def numeral(sig, n):
    t = sig.const("0")
    for _ in range(n):
        t = sig.app("s", t)
    return t


# construction =========================================================================


def test_even_numbers(nat, even):
    _, m = even
    E = lambda n: encode_predicative(nat, "E", numeral(nat, n))
    assert m.holds(E(0))
    assert m.holds(E(2))
    assert not m.holds(E(1))
    assert [str(a) for a in m.facts()][:3] == ["E(0)", "E(s(s(0)))", "E(s(s(s(s(0)))))"]


def test_queries_beyond_the_bound_are_partial(nat, even):
    _, m = even
    answer = m.query(encode_predicative(nat, "E", numeral(nat, 9)))
    assert answer.partial
    assert not m.query(encode_predicative(nat, "E", numeral(nat, 1))).partial


def test_produced_system_is_reduced_and_terminating(even, addition):
    for _, m in (even, addition):
        assert m.system.is_left_reduced()
        assert m.system.is_terminating(m.ordering)


def test_rules_remember_their_clause(nat, even):
    _, m = even
    atom = nat.app("E", nat.const("0"))
    assert m.system.provenance[atom] == Clause.of([], [encode_predicative(nat, "E", nat.const("0"))])
    assert "E(0) -> true" in m.dump()


def test_model_of_the_axioms_satisfies_them(nat, even):
    axioms, m = even
    assert check_models(m, axioms, Constraint(), 4)
    odd = ConstrainedClause.of(Constraint(), [], [encode_predicative(nat, "E", numeral(nat, 1))])
    assert not check_models(m, [odd], Constraint())


def test_model_constraint_must_be_ground(nat):
    u = Var("u", "nat", existential=True)
    with raises(SignatureError):
        construct_RN([], Constraint.of([u], [Var("x", "nat")]), nat, OrderingSpec(nat), 3)


def test_normal_form_strategies_agree(nat, addition):
    _, m = addition
    rng = random.Random(17)
    ground = GroundTerms(nat.restrict(["0", "s", "plus"])).up_to("nat", 5)
    for t in ground:
        assert normal_form(t, m.system) == normal_form(t, m.system, "random", rng)
    two = numeral(nat, 2)
    assert m.normal_form(nat.app("plus", numeral(nat, 1), numeral(nat, 1))) == two


# seeding with a constraint ============================================================


def test_only_the_smaller_constraint_seeds_a_model():
    sig = Signature(["d"])
    sig.add_function("a", [], "d")
    sig.add_function("b", [], "d")
    spec = OrderingSpec(sig, precedence=["b", "a"])
    u = Var("u", "d", existential=True)
    a, b = sig.const("a"), sig.const("b")
    N = [
        ConstrainedClause.of(Constraint.of([u], [a]), [], [Equation.of(a, b)]),
        ConstrainedClause.of(Constraint.of([u], [b]), [Equation.of(a, b)]),
    ]
    at_a = construct_RN(N, Constraint.of([u], [a]), sig, spec, 2)
    assert [str(r) for r in at_a.system] == ["a -> b"]
    assert not check_models(at_a, N, {u: a})
    at_b = construct_RN(N, Constraint.of([u], [b]), sig, spec, 2)
    assert len(at_b.system) == 0
    assert check_models(at_b, N, {u: b})


# class ordering =======================================================================


def test_free_symbols(nat, addition):
    axioms, _ = addition
    free = free_symbols(axioms, nat, OrderingSpec(nat))
    assert free == {"0", "s"}


def test_class_ordering(nat, addition):
    axioms, m = addition
    z = Var("z", "nat")
    order = ClassOrder.from_clauses(axioms, nat, OrderingSpec(nat))
    assert order(z, nat.app("s", z)) is True
    assert order(z, nat.app("plus", z, nat.const("0"))) is None
    assert order(z, nat.true()) is None
    with_model = ClassOrder.from_clauses(axioms, nat, OrderingSpec(nat), m)
    assert with_model(z, nat.app("plus", z, nat.const("0"))) is False
    assumed = ClassOrder.from_clauses(axioms, nat, OrderingSpec(nat), assume_free=True)
    assert assumed(z, nat.app("plus", z, nat.const("0"))) is True
    assert class_less(z, nat.app("s", nat.app("s", z)), m) is True


# exhaustive interpretations ===========================================================


def test_finite_universe():
    sig = Signature(["d", "nat"])
    sig.add_function("a", [], "d")
    sig.add_function("b", [], "d")
    sig.add_function("0", [], "nat")
    sig.add_function("s", ["nat"], "nat")
    assert [str(t) for t in finite_universe(sig, "d")] == ["a", "b"]
    with raises(SignatureError):
        finite_universe(sig, "nat")


def test_interpretations_of_a_small_signature():
    sig = Signature(["elevator", "person"])
    sig.add_function("a", [], "elevator")
    sig.add_function("b", [], "elevator")
    sig.add_function("p", [], "person")
    for name in "GCR":
        sig.add_predicate(name, ["elevator", "person"])
    interpretations = list(enumerate_interpretations(sig))
    assert len(interpretations) == 2 ** 6
    G = lambda e: encode_predicative(sig, "G", sig.const(e), sig.const("p"))
    everything = max(interpretations, key=lambda i: len(i.atoms))
    assert everything.satisfies(Clause.of([], [G("a")]))
    assert not everything.satisfies(Clause.of([G("a")], []))
