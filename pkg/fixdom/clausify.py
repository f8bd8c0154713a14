"""Conjecture formulas and their clausification.

A conjecture is a formula with a ``∀*∃*`` quantifier prefix over a
quantifier-free matrix. Negating it turns the universally quantified
variables into the existential variables of the problem. The negated matrix
is brought into conjunctive normal form by naive distribution, and every
conjunct becomes one constrained clause whose constraint binds each
existential variable to the universal variable standing for it.

"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import terms
from .clauses import ConstrainedClause, Constraint, Equation
from .exceptions import ParseError
from .terms import Signature, Substitution, Var

logger = logging.getLogger(__name__)


# formulas =============================================================================


class Formula:
    pass


@dataclass(frozen=True)
class Atom(Formula):
    """An equation, or a predicative atom encoded as ``P(..) ≈ true``."""

    equation: Equation


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    variables: tuple
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    variables: tuple
    body: Formula


Literal = Tuple[Equation, bool]


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, Atom):
        return True
    if isinstance(f, (Forall, Exists)):
        return False
    if isinstance(f, Not):
        return is_quantifier_free(f.body)
    return is_quantifier_free(f.left) and is_quantifier_free(f.right)


def prefix(f: Formula) -> Tuple[tuple, tuple, Formula]:
    """Splits a ``∀*∃*`` formula into its universal and existential variables and matrix.

    Raises
    ------

    ParseError
        If an existential quantifier precedes a universal one, or the matrix
        contains a quantifier.

    """
    universals, existentials = [], []
    while isinstance(f, (Forall, Exists)):
        if isinstance(f, Forall):
            if existentials:
                raise ParseError(
                    "the conjecture must have a ∀*∃* prefix; "
                    f"∀{','.join(str(v) for v in f.variables)} follows an existential quantifier"
                )
            universals.extend(f.variables)
        else:
            existentials.extend(f.variables)
        f = f.body
    if not is_quantifier_free(f):
        raise ParseError("the matrix of the conjecture must be quantifier-free")
    return tuple(universals), tuple(existentials), f


# normal forms =========================================================================


def nnf(f: Formula, positive: bool = True) -> Formula:
    """Negation normal form of ``f`` (of ``¬f`` if ``positive`` is false)."""
    if isinstance(f, Atom):
        return f if positive else Not(f)
    if isinstance(f, Not):
        return nnf(f.body, not positive)
    if isinstance(f, And):
        parts = nnf(f.left, positive), nnf(f.right, positive)
        return And(*parts) if positive else Or(*parts)
    if isinstance(f, Or):
        parts = nnf(f.left, positive), nnf(f.right, positive)
        return Or(*parts) if positive else And(*parts)
    if isinstance(f, Implies):
        return nnf(Or(Not(f.left), f.right), positive)
    if isinstance(f, Iff):
        both = And(Or(Not(f.left), f.right), Or(Not(f.right), f.left))
        return nnf(both, positive)
    raise ParseError("quantifiers are not allowed below the prefix")


def cnf(f: Formula) -> List[List[Literal]]:
    """Conjunctive normal form as a list of clauses of ``(equation, sign)`` literals.

    Distribution is naive; clauses are not simplified beyond removing
    repeated literals.
    """
    return _cnf(nnf(f))


def _cnf(f: Formula) -> List[List[Literal]]:
    if isinstance(f, Atom):
        return [[(f.equation, True)]]
    if isinstance(f, Not):
        return [[(f.body.equation, False)]]
    if isinstance(f, And):
        return _cnf(f.left) + _cnf(f.right)
    if isinstance(f, Or):
        result = []
        for c in _cnf(f.left):
            for d in _cnf(f.right):
                result.append(list(dict.fromkeys(c + d)))
        return result
    raise ParseError(f"formula {f} is not in negation normal form")


def is_positive_conjunction(f: Formula) -> bool:
    """Whether ``f`` is a conjunction of positive literals."""
    if isinstance(f, Atom):
        return True
    if isinstance(f, And):
        return is_positive_conjunction(f.left) and is_positive_conjunction(f.right)
    return False


def substitute(f: Formula, sigma: Substitution) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.equation.map(sigma))
    if isinstance(f, Not):
        return Not(substitute(f.body, sigma))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.variables, substitute(f.body, sigma))
    return type(f)(substitute(f.left, sigma), substitute(f.right, sigma))


# clausification =======================================================================


def default_naming(universals: Sequence[Var], taken=()) -> Dict[str, str]:
    """Existential names ``u, v, w, u1, ...`` in alphabetical order of the variables."""
    taken = set(taken)
    names = []
    suffix = ""
    while len(names) < len(universals):
        for letter in "uvw":
            if letter + suffix not in taken:
                names.append(letter + suffix)
        suffix = str(int(suffix or 0) + 1)
    ordered = sorted(universals, key=lambda v: v.name)
    return {v.name: n for v, n in zip(ordered, names)}


@dataclass
class Clausified:
    """The clauses of a negated conjecture over the existential spine ``spine``."""

    spine: tuple
    clauses: List[ConstrainedClause]
    naming: Dict[str, str]
    universals: tuple = ()
    existentials: tuple = ()
    matrix: Optional[Formula] = None


def _clause(constraint: Constraint, literals: Sequence[Literal]) -> ConstrainedClause:
    antecedent = [e for e, sign in literals if not sign]
    succedent = [e for e, sign in literals if sign]
    return ConstrainedClause.of(constraint, antecedent, succedent)


def clausify_conjecture(
    f: Formula, naming: Optional[Dict[str, str]] = None, extra_spine: Sequence[Var] = ()
) -> Clausified:
    """Negates and clausifies the conjecture ``f``.

    Each universal variable ``x`` of ``f`` is turned into the existential
    variable named by ``naming`` and represented in the matrix by a fresh
    universal variable bound to it in the constraint. ``extra_spine`` holds
    existential variables declared elsewhere; they come first in the spine
    and are left unconstrained.
    """
    universals, existentials, matrix = prefix(f)
    taken = {v.name for v in extra_spine}
    naming = dict(naming or {})
    unknown = set(naming) - {v.name for v in universals}
    if unknown:
        raise ParseError(f"naming refers to unknown conjecture variables {sorted(unknown)}")
    missing = [v for v in universals if v.name not in naming]
    naming.update(default_naming(missing, taken | set(naming.values())))
    spine = list(extra_spine)
    for v in sorted(universals, key=lambda v: naming[v.name]):
        name = naming[v.name]
        if name in {w.name for w in spine}:
            raise ParseError(f"existential variable {name} is declared twice")
        spine.append(Var(name, v.sort, existential=True))
    clauses = []
    for literals in cnf(Not(matrix)):
        fresh = terms.renaming(universals + existentials)
        rhs = []
        for v in spine:
            stand_in = [x for x in universals if naming[x.name] == v.name]
            rhs.append(fresh[stand_in[0]] if stand_in else terms.fresh_variable(v.sort))
        constraint = Constraint.of(spine, rhs)
        cc = _clause(constraint, [(e.map(fresh), sign) for e, sign in literals])
        if cc not in clauses:
            clauses.append(cc)
    logger.debug("conjecture clausified into %d clauses", len(clauses))
    return Clausified(tuple(spine), clauses, naming, universals, existentials, matrix)


def skolemize_conjecture(
    f: Formula, signature: Signature
) -> Tuple[Signature, List[ConstrainedClause]]:
    """Negates ``f`` with its universal variables replaced by Skolem constants.

    Returns the extended signature and unconstrained clauses over the empty
    spine. The Skolem constants are declared last and so are the largest
    symbols of the default precedence.
    """
    universals, existentials, matrix = prefix(f)
    signature = signature.copy()
    mapping = {}
    for v in universals:
        name = f"sk_{v.name}"
        while name in signature:
            name += "'"
        signature.add_function(name, (), v.sort)
        mapping[v] = signature.const(name)
    matrix = substitute(matrix, Substitution(mapping))
    clauses = []
    for literals in cnf(Not(matrix)):
        cc = _clause(Constraint(), literals)
        if cc not in clauses:
            clauses.append(cc)
    return signature, clauses


def constrain(cc: ConstrainedClause, spine: Sequence[Var]) -> ConstrainedClause:
    """Extends the constraint of ``cc`` to ``spine`` with fresh variables."""
    given = dict(cc.constraint.pairs)
    rhs = [given[v] if v in given else terms.fresh_variable(v.sort) for v in spine]
    extra = set(given) - set(spine)
    if extra:
        names = sorted(map(str, extra))
        raise ParseError(f"constraint mentions undeclared existential variables {names}")
    return ConstrainedClause.of(Constraint.of(spine, rhs), cc.antecedent, cc.succedent)


