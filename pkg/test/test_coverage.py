"""Tests for coverage, complements and minimal uncovered constraints."""

import itertools
import random

import pytest
from pytest import raises

from fixdom.clauses import Constraint
from fixdom.coverage import (
    DisunificationProblem,
    brute_force_covering,
    check_coverage,
    coverage_signature,
    is_covering,
    is_instance,
    minimal_uncovered,
    quantifier_elimination,
)
from fixdom.exceptions import CoverageError, InconclusiveWitnessError
from fixdom.ordering import OrderingSpec
from fixdom.terms import GroundTerms, Signature, Var


# fixtures =============================================================================


@pytest.fixture(scope="module")
def nat():
    sig = Signature(["nat"])
    sig.add_function("0", [], "nat")
    sig.add_function("s", ["nat"], "nat")
    sig.add_predicate("G", ["nat", "nat"])
    return sig


@pytest.fixture(scope="module")
def lists():
    sig = Signature(["nat", "list"])
    sig.add_function("0", [], "nat")
    sig.add_function("s", ["nat"], "nat")
    sig.add_function("nil", [], "list")
    sig.add_function("cons", ["nat", "list"], "list")
    return sig


@pytest.fixture(scope="module")
def elevator():
    sig = Signature(["elevator", "person"])
    sig.add_function("a", [], "elevator")
    sig.add_function("b", [], "elevator")
    sig.add_function("p", [], "person")
    sig.add_function("q", [], "person")
    for name in "GCR":
        sig.add_predicate(name, ["elevator", "person"])
    return sig


U = Var("u", "nat", existential=True)
V = Var("v", "nat", existential=True)
X, Y = Var("x", "nat"), Var("y", "nat")


def ground_tuples(sig, sorts, bound):
    enumerator = GroundTerms(sig)
    return itertools.product(*(enumerator.up_to(s, bound) for s in sorts))


# coverage signature ===================================================================


def test_coverage_signature_drops_predicates(nat):
    cover = coverage_signature(nat)
    assert "G" not in cover
    assert "s" in cover


def test_constructors_restrict_the_coverage_signature(nat):
    sig = nat.copy()
    sig.add_function("plus", ["nat", "nat"], "nat")
    assert "plus" not in coverage_signature(sig, ["0", "s"])
    with raises(CoverageError):
        coverage_signature(sig, ["0", "G"])


# coverage =============================================================================


def test_zero_and_successor_cover_the_naturals(nat):
    A = [Constraint.of([U], [nat.const("0")]), Constraint.of([U], [nat.app("s", X)])]
    assert is_covering(A, coverage_signature(nat))


def test_zero_alone_does_not_cover(nat):
    cover = coverage_signature(nat)
    A = [Constraint.of([U], [nat.const("0")])]
    assert not is_covering(A, cover)
    spec = OrderingSpec(cover)
    assert str(minimal_uncovered(A, cover, spec)) == "u≈s(0)"


def test_elevator_constraints_cover(elevator):
    u = Var("u", "person", existential=True)
    v = Var("v", "elevator", existential=True)
    x = Var("x", "person")
    A = [
        Constraint.of([u, v], [x, elevator.const("a")]),
        Constraint.of([u, v], [x, elevator.const("b")]),
    ]
    assert is_covering(A, coverage_signature(elevator))
    assert not is_covering(A[:1], coverage_signature(elevator))


def test_empty_set_needs_a_spine(nat):
    cover = coverage_signature(nat)
    assert not is_covering([], cover, spine=[U])
    with raises(CoverageError):
        is_covering([], cover)


def test_constraints_must_share_the_spine(nat):
    with raises(CoverageError):
        DisunificationProblem.of([U], [Constraint.of([V], [X])])


def test_the_empty_spine_is_covered_by_one_constraint(nat):
    assert is_covering([Constraint()], coverage_signature(nat))
    assert not is_covering([], coverage_signature(nat), spine=())


# complements ==========================================================================


def test_complement_of_a_partial_definition(nat):
    cover = coverage_signature(nat)
    A = [Constraint.of([U, V], [nat.app("s", X), nat.const("0")])]
    complement = quantifier_elimination(DisunificationProblem.of([U, V], A), cover)
    for t1, t2 in ground_tuples(cover, ["nat", "nat"], 5):
        expected = t1 == nat.const("0") or t2.symbol == "s"
        assert complement.contains((t1, t2)) == expected
    assert str(minimal_uncovered(A, cover, OrderingSpec(cover))) == "u≈0, v≈0"


def test_complement_of_a_nonlinear_pattern(nat):
    cover = coverage_signature(nat)
    A = [Constraint.of([U, V], [X, X])]
    complement = quantifier_elimination(DisunificationProblem.of([U, V], A), cover)
    assert "≉" in complement.render()
    for t1, t2 in ground_tuples(cover, ["nat", "nat"], 4):
        assert complement.contains((t1, t2)) == (t1 != t2)
    assert str(minimal_uncovered(A, cover, OrderingSpec(cover))) == "u≈0, v≈s(0)"


def test_disequations_over_finite_sorts_are_expanded(elevator):
    cover = coverage_signature(elevator)
    u = Var("u", "elevator", existential=True)
    v = Var("v", "elevator", existential=True)
    x = Var("x", "elevator")
    complement = quantifier_elimination(
        DisunificationProblem.of([u, v], [Constraint.of([u, v], [x, x])]), cover
    )
    a, b = elevator.const("a"), elevator.const("b")
    assert complement.contains((a, b))
    assert not complement.contains((a, a))
    assert "≉" not in complement.render()


def test_covering_set_has_an_empty_complement(nat):
    A = [Constraint.of([U], [nat.const("0")]), Constraint.of([U], [nat.app("s", X)])]
    complement = quantifier_elimination(DisunificationProblem.of([U], A), coverage_signature(nat))
    assert complement.is_empty
    assert complement.render() == "none"


# witnesses ============================================================================


def test_tiebreak_chooses_the_component_compared_first(nat):
    cover = coverage_signature(nat)
    spec = OrderingSpec(cover)
    A = [Constraint.of([U, V], [nat.const("0"), nat.const("0")])]
    assert str(minimal_uncovered(A, cover, spec)) == "u≈0, v≈s(0)"
    assert str(minimal_uncovered(A, cover, spec, tiebreak=["v"])) == "u≈s(0), v≈0"
    with raises(CoverageError):
        minimal_uncovered(A, cover, spec, tiebreak=["w"])


def test_covering_set_has_no_witness(nat):
    cover = coverage_signature(nat)
    A = [Constraint.of([U], [X])]
    with raises(CoverageError):
        minimal_uncovered(A, cover, OrderingSpec(cover))


def test_witness_under_lpo_is_marked_inexact(nat):
    cover = coverage_signature(nat)
    spec = OrderingSpec(cover, kind="lpo")
    A = [Constraint.of([U], [nat.const("0")])]
    result = check_coverage(A, cover, spec)
    assert not result.covering
    assert not result.exact
    assert str(result.witness) == "u≈s(0)"
    with raises(InconclusiveWitnessError):
        check_coverage(A, cover, spec, strict=True)


def test_witness_under_a_weight_zero_successor_is_marked_inexact(nat):
    cover = coverage_signature(nat)
    spec = OrderingSpec(cover, weights={"s": 0})
    A = [Constraint.of([U], [nat.const("0")])]
    result = check_coverage(A, cover, spec)
    assert not result.exact
    assert str(result.witness) == "u≈s(0)"
    with raises(InconclusiveWitnessError):
        check_coverage(A, cover, spec, strict=True)


def test_is_instance(nat):
    zero = nat.const("0")
    alpha = Constraint.of([U, V], [X, nat.app("s", X)])
    assert is_instance(alpha, (zero, nat.app("s", zero)))
    assert not is_instance(alpha, (zero, zero))


# agreement with brute force ===========================================================


def random_pattern(sig, sort, rng, depth, pool):
    if depth == 0 or rng.random() < 0.35:
        return Var(rng.choice(pool), sort)
    choices = sig.constructors(sort)
    f = rng.choice(choices)
    return sig.app(f.name, *(random_pattern(sig, s, rng, depth - 1, pool) for s in f.arg_sorts))


@pytest.mark.parametrize(
    "fixture, sorts",
    [
        ("nat", ["nat"]),
        ("nat", ["nat", "nat"]),
        ("nat", ["nat", "nat", "nat"]),
        ("lists", ["nat", "list"]),
        ("lists", ["list", "nat", "list"]),
    ],
)
def test_decision_agrees_with_enumeration(request, fixture, sorts):
    sig = request.getfixturevalue(fixture)
    cover = coverage_signature(sig)
    spec = OrderingSpec(cover)
    spine = [Var(name, sort, existential=True) for name, sort in zip("uvw", sorts)]
    rng = random.Random(1234)
    bound = 6
    for _ in range(60):
        A = [
            Constraint.of(spine, [random_pattern(sig, s, rng, 3, ["x", "y"]) for s in sorts])
            for _ in range(rng.randint(1, 4))
        ]
        oracle = brute_force_covering(A, cover, bound, spec, spine=spine)
        if is_covering(A, cover, spine=spine):
            assert oracle.all_covered
            continue
        if oracle.all_covered:
            continue
        total = sum(GroundTerms(cover).weight(t) for t in oracle.witness.terms)
        if total <= bound:
            assert minimal_uncovered(A, cover, spec, spine=spine) == oracle.witness
