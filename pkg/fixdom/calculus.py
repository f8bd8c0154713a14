"""Inference rules of the constrained superposition calculus.

Every rule is a pure function that enumerates all conclusions licensed by
its side conditions and returns them as :class:`InferenceRecord` values. The
rules rename their premises apart themselves, so a clause may be passed as
both premises of a binary rule.

Rule names as they appear in traces:

======== =================================================
EqRes    equality resolution
EqFact   equality factoring
SupR     superposition into a succedent equation
SupL     superposition into an antecedent equation
ConSup   superposition into the constraint
EqElim   equality elimination (second premise is empty)
GenEqElim generalized equality elimination
Ind      induction with respect to a query set
======== =================================================

"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence

from . import terms
from .clauses import (
    ANTECEDENT,
    SUCCEDENT,
    Clause,
    ConstrainedClause,
    Constraint,
    Equation,
    constraint_equate,
)
from .exceptions import InductionError
from .ordering import EQ, GT, OrderingSpec, compare_equation_occurrences, occurrence
from .terms import TRUE, Substitution, Var

logger = logging.getLogger(__name__)

RULES = ("EqRes", "EqFact", "SupR", "SupL", "ConSup", "EqElim", "GenEqElim", "Ind")


@dataclass(frozen=True)
class InferenceRecord:
    """One inference: rule, premises, unifiers and conclusion.

    ``parents`` holds the identifiers of the premises once the saturation
    loop has assigned them; the rules themselves leave it empty.
    """

    rule: str
    premises: tuple
    unifiers: tuple
    conclusion: ConstrainedClause
    parents: tuple = field(default=(), compare=False)


# helpers ==============================================================================


def _maximal(spec, occs, k, strict) -> bool:
    """Whether occurrence ``k`` of ``occs`` is (strictly) maximal among them."""
    target = occurrence(*occs[k])
    blocked = (GT, EQ) if strict else (GT,)
    for j, occ in enumerate(occs):
        if j != k and compare_equation_occurrences(spec, occurrence(*occ), target) in blocked:
            return False
    return True


def _occs(clause: Clause, sigma=None):
    f = sigma.apply if sigma is not None else (lambda t: t)
    return [(ANTECEDENT, e.map(f)) for e in clause.antecedent] + [
        (SUCCEDENT, e.map(f)) for e in clause.succedent
    ]


def _split(occs, skip=()):
    ant = [e for j, (side, e) in enumerate(occs) if side == ANTECEDENT and j not in skip]
    succ = [e for j, (side, e) in enumerate(occs) if side == SUCCEDENT and j not in skip]
    return ant, succ


def _is_true_equation(e: Equation) -> bool:
    return e.lhs == e.rhs and isinstance(e.lhs, terms.App) and e.lhs.symbol == TRUE


def _unique(records):
    seen = set()
    result = []
    for record in records:
        if record.conclusion not in seen:
            seen.add(record.conclusion)
            result.append(record)
    return result


# unary rules ==========================================================================


def equality_resolution(spec: OrderingSpec, cc: ConstrainedClause) -> List[InferenceRecord]:
    """``(Γ, s≈t → Δ ∥ α)`` gives ``(Γ → Δ ∥ α)σ`` for ``σ = mgu(s, t)``."""
    alpha, clause = cc.constraint, cc.clause
    records = []
    for k, e in enumerate(clause.antecedent):
        sigma = terms.mgu(e.lhs, e.rhs)
        if sigma is None:
            continue
        occs = _occs(clause, sigma)
        if not _maximal(spec, occs, k, strict=False):
            continue
        ant, succ = _split(occs, skip=(k,))
        conclusion = ConstrainedClause.of(alpha.map(sigma), ant, succ)
        records.append(InferenceRecord("EqRes", (cc,), (sigma,), conclusion))
    return _unique(records)


def equality_factoring(spec: OrderingSpec, cc: ConstrainedClause) -> List[InferenceRecord]:
    """``(Γ → Δ, s≈t, s'≈t' ∥ α)`` gives ``(Γ, t≈t' → Δ, s'≈t' ∥ α)σ``."""
    alpha, clause = cc.constraint, cc.clause
    offset = len(clause.antecedent)
    records = []
    for i, j in itertools.permutations(range(len(clause.succedent)), 2):
        for s, t in clause.succedent[i].orientations():
            for s2, t2 in clause.succedent[j].orientations():
                if s.sort != s2.sort:
                    continue
                sigma = terms.mgu(s, s2)
                if sigma is None:
                    continue
                if spec.greater_or_equal(sigma(t), sigma(s)):
                    continue
                occs = _occs(clause, sigma)
                if not _maximal(spec, occs, offset + i, strict=False):
                    continue
                ant, succ = _split(occs, skip=(offset + i,))
                ant.append(Equation.of(sigma(t), sigma(t2)))
                conclusion = ConstrainedClause.of(alpha.map(sigma), ant, succ)
                records.append(InferenceRecord("EqFact", (cc,), (sigma,), conclusion))
    return _unique(records)


# superposition ========================================================================


def _positive_sides(clause: Clause):
    """Yields ``(index, l, r)`` for every succedent equation and orientation."""
    for i, e in enumerate(clause.succedent):
        for l, r in e.orientations():
            yield i, l, r


def _superposition(spec, cc1, cc2, left: bool) -> List[InferenceRecord]:
    rule = "SupL" if left else "SupR"
    alpha1, clause1 = cc1.rename_apart()
    alpha2, clause2 = cc2.rename_apart()
    n1 = len(clause1.antecedent)
    n2 = len(clause2.antecedent)
    targets = clause2.antecedent if left else clause2.succedent
    records = []
    for i1, l, r in _positive_sides(clause1):
        for i2, e2 in enumerate(targets):
            k2 = i2 if left else n2 + i2
            for s, t in e2.orientations():
                for p, sub in terms.positions(s):
                    if isinstance(sub, Var) or sub.sort != l.sort:
                        continue
                    sigma1 = terms.mgu(l, sub)
                    if sigma1 is None:
                        continue
                    sigma2 = terms.simultaneous_mgu(
                        list(zip(alpha1.map(sigma1).terms, alpha2.map(sigma1).terms))
                    )
                    if sigma2 is None:
                        continue
                    sigma = sigma1.compose(sigma2)
                    if spec.greater_or_equal(sigma(r), sigma(l)):
                        continue
                    if spec.greater_or_equal(sigma(t), sigma(s)):
                        continue
                    occs1 = _occs(clause1, sigma)
                    if not _maximal(spec, occs1, n1 + i1, strict=True):
                        continue
                    occs2 = _occs(clause2, sigma)
                    if not _maximal(spec, occs2, k2, strict=not left):
                        continue
                    new = Equation.of(sigma(terms.replace_at(s, p, r)), sigma(t))
                    ant1, succ1 = _split(occs1, skip=(n1 + i1,))
                    ant2, succ2 = _split(occs2, skip=(k2,))
                    ant, succ = ant1 + ant2, succ1 + succ2
                    if left:
                        # predicative condensed form: a resolved atom leaves true≈true behind
                        if not _is_true_equation(new):
                            ant.append(new)
                    else:
                        succ.append(new)
                    conclusion = ConstrainedClause.of(alpha1.map(sigma), ant, succ)
                    records.append(
                        InferenceRecord(rule, (cc1, cc2), (sigma1, sigma2), conclusion)
                    )
    return _unique(records)


def superposition_right(spec, cc1, cc2) -> List[InferenceRecord]:
    """Superposition of a succedent equation of ``cc1`` into a succedent of ``cc2``."""
    return _superposition(spec, cc1, cc2, left=False)


def superposition_left(spec, cc1, cc2) -> List[InferenceRecord]:
    """Superposition of a succedent equation of ``cc1`` into an antecedent of ``cc2``."""
    return _superposition(spec, cc1, cc2, left=True)


def _constraint_targets(alpha: Constraint, sort):
    for position, sub in alpha.positions():
        if not isinstance(sub, Var) and sub.sort == sort:
            yield position, sub


def constraint_superposition(spec, cc1, cc2) -> List[InferenceRecord]:
    """Superposition of ``l ≈ r`` from ``cc1`` into the constraint of ``cc2``.

    The conclusion is ``(α1 ≈ α2[r], Γ1, Γ2 → Δ1, Δ2 ∥ α2[r])σ``.
    """
    alpha1, clause1 = cc1.rename_apart()
    alpha2, clause2 = cc2.rename_apart()
    n1 = len(clause1.antecedent)
    records = []
    for i1, l, r in _positive_sides(clause1):
        for position, sub in _constraint_targets(alpha2, l.sort):
            sigma = terms.mgu(l, sub)
            if sigma is None:
                continue
            if spec.greater_or_equal(sigma(r), sigma(l)):
                continue
            occs1 = _occs(clause1, sigma)
            if not _maximal(spec, occs1, n1 + i1, strict=True):
                continue
            replaced = alpha2.replace_at(position, r).map(sigma)
            ant1, succ1 = _split(occs1, skip=(n1 + i1,))
            ant2, succ2 = _split(_occs(clause2, sigma))
            ant = constraint_equate(alpha1.map(sigma), replaced) + ant1 + ant2
            conclusion = ConstrainedClause.of(replaced, ant, succ1 + succ2)
            records.append(InferenceRecord("ConSup", (cc1, cc2), (sigma,), conclusion))
    return _unique(records)


def equality_elimination(spec, cc1, cc2) -> List[InferenceRecord]:
    """From ``Γ → Δ, l≈r ∥ α1`` and ``□ ∥ α2[r']`` derive ``(Γ → Δ ∥ α1)σ1σ2``."""
    if not cc2.is_empty:
        return []
    alpha1, clause1 = cc1.rename_apart()
    alpha2, _ = cc2.rename_apart()
    n1 = len(clause1.antecedent)
    records = []
    for i1, l, r in _positive_sides(clause1):
        for position, sub in _constraint_targets(alpha2, r.sort):
            sigma1 = terms.mgu(r, sub)
            if sigma1 is None:
                continue
            raised = alpha2.replace_at(position, l)
            sigma2 = terms.simultaneous_mgu(
                list(zip(alpha1.map(sigma1).terms, raised.map(sigma1).terms))
            )
            if sigma2 is None:
                continue
            sigma = sigma1.compose(sigma2)
            if spec.greater_or_equal(sigma(r), sigma(l)):
                continue
            occs1 = _occs(clause1, sigma)
            if not _maximal(spec, occs1, n1 + i1, strict=True):
                continue
            ant, succ = _split(occs1, skip=(n1 + i1,))
            conclusion = ConstrainedClause.of(alpha1.map(sigma), ant, succ)
            records.append(
                InferenceRecord("EqElim", (cc1, cc2), (sigma1, sigma2), conclusion)
            )
    return _unique(records)


def general_equality_elimination(spec, cc1, cc2) -> List[InferenceRecord]:
    """From ``Γ1 → Δ1, l≈r ∥ α1`` and ``Γ2 → Δ2 ∥ α2[r']`` derive
    ``(α1 ≈ α2[l], Γ1, Γ2 → Δ1, Δ2 ∥ α2[l])σ``."""
    alpha1, clause1 = cc1.rename_apart()
    alpha2, clause2 = cc2.rename_apart()
    n1 = len(clause1.antecedent)
    records = []
    for i1, l, r in _positive_sides(clause1):
        for position, sub in _constraint_targets(alpha2, r.sort):
            sigma = terms.mgu(r, sub)
            if sigma is None:
                continue
            if spec.greater_or_equal(sigma(r), sigma(l)):
                continue
            occs1 = _occs(clause1, sigma)
            if not _maximal(spec, occs1, n1 + i1, strict=True):
                continue
            raised = alpha2.replace_at(position, l).map(sigma)
            ant1, succ1 = _split(occs1, skip=(n1 + i1,))
            ant2, succ2 = _split(_occs(clause2, sigma))
            ant = constraint_equate(alpha1.map(sigma), raised) + ant1 + ant2
            conclusion = ConstrainedClause.of(raised, ant, succ1 + succ2)
            records.append(InferenceRecord("GenEqElim", (cc1, cc2), (sigma,), conclusion))
    return _unique(records)


UNARY_RULES = (equality_resolution, equality_factoring)

BINARY_RULES = {
    "sfd": (
        superposition_right,
        superposition_left,
        constraint_superposition,
        equality_elimination,
    ),
    "sfd-general": (
        superposition_right,
        superposition_left,
        constraint_superposition,
        general_equality_elimination,
    ),
}

_BY_NAME = {
    "EqRes": equality_resolution,
    "EqFact": equality_factoring,
    "SupR": superposition_right,
    "SupL": superposition_left,
    "ConSup": constraint_superposition,
    "EqElim": equality_elimination,
    "GenEqElim": general_equality_elimination,
}


def verify_record(spec: OrderingSpec, record: InferenceRecord) -> bool:
    """Re-runs the record's rule on its premises and looks for its conclusion.

    Induction records are not re-derivable this way and are reported as
    verified only if their conclusion satisfies the constraint invariants,
    which holds by construction.
    """
    if record.rule == "Ind":
        return True
    rule = _BY_NAME[record.rule]
    conclusions = {r.conclusion for r in rule(spec, *record.premises)}
    return record.conclusion in conclusions


# induction ============================================================================


def _negated_literals(clause: Clause):
    """``¬(Γ → Δ)`` as literals ``(equation, positive)``."""
    return [(e, True) for e in clause.antecedent] + [(e, False) for e in clause.succedent]


def _cnf(clauses: Sequence[Clause]) -> List[Clause]:
    conjuncts = [_negated_literals(c) for c in clauses]
    if any(not lits for lits in conjuncts):
        return []
    result = []
    for combo in itertools.product(*conjuncts):
        ant = [e for e, positive in combo if not positive]
        succ = [e for e, positive in combo if positive]
        clause = Clause.of(set(ant), set(succ))
        if clause not in result:
            result.append(clause)
    return result


def cnf_of_negation(H: Iterable[ConstrainedClause]) -> List[Clause]:
    """CNF of ``¬C1 ∨ ... ∨ ¬Cn`` for the clausal parts of ``H``.

    Universal variables outside the constraints are renamed apart per clause.
    """
    clauses = []
    for cc in H:
        keep = set(cc.constraint.variables())
        local = [v for v in cc.clause.variables() if v not in keep]
        clauses.append(cc.clause.map(terms.renaming(local)))
    return _cnf(clauses)


def align(premises: Sequence[ConstrainedClause]):
    """Forces the constraint of the first premise upon all premises.

    Returns the common constraint and the renamed clausal parts.

    Raises
    ------

    InductionError
        Condition (ii) if the constraints are not variable-only or differ
        by more than renaming, condition (iii) if a premise has variables
        outside its constraint.

    """
    return _align(premises, check=True)


def _align(premises, check):
    if not premises:
        raise InductionError("i", "the query set is empty")
    alpha = premises[0].constraint
    aligned = []
    for cc in premises:
        if check and not cc.constraint.is_variable_only:
            raise InductionError(
                "ii", f"constraint {cc.constraint} contains non-variable terms"
            )
        alpha.check_spine(cc.constraint)
        binding = terms.match_all(zip(cc.constraint.terms, alpha.terms))
        if binding is None or not Substitution(binding).is_renaming():
            raise InductionError(
                "ii", f"constraint {cc.constraint} is not a renaming of {alpha}"
            )
        outside = [v for v in cc.clause.variables() if v not in binding]
        if check and outside:
            names = ", ".join(str(v) for v in outside)
            raise InductionError("iii", f"variables {names} of {cc} do not occur in its constraint")
        sigma = Substitution({**binding, **terms.renaming(outside).bindings})
        aligned.append(cc.clause.map(sigma))
    return alpha, aligned


@dataclass(frozen=True)
class InductionDirective:
    """An application of the induction rule.

    Attributes
    ----------

    query : tuple
        The query set ``H`` of constrained clauses.

    rho1, rho2 : Substitution
        Substitutions over the variables of the common constraint of ``H``.

    justification : str
        ``"user"`` or ``"heuristic"``.

    premises : Optional[tuple]
        The clauses the rule is applied to. Defaults to the whole query.

    """

    query: tuple
    rho1: Substitution
    rho2: Substitution
    justification: str = "user"
    premises: Optional[tuple] = None

    @staticmethod
    def by_existentials(query, pairs, justification="user", premises=None):
        """Builds a directive from ``{existential name: (ρ1 term, ρ2 term)}``.

        The terms are given over the variables of the common constraint,
        which is taken from the first premise.
        """
        query = tuple(query)
        head = (premises or query)[0].constraint
        rho1, rho2 = {}, {}
        for v, x in head.pairs:
            if v.name not in pairs:
                continue
            if not isinstance(x, Var):
                raise InductionError("ii", f"constraint {head} contains non-variable terms")
            rho1[x], rho2[x] = pairs[v.name]
        return InductionDirective(
            query,
            Substitution(rho1),
            Substitution(rho2),
            justification,
            tuple(premises) if premises is not None else None,
        )

    def describe(self) -> str:
        render = lambda rho: ", ".join(
            f"{x}:={rho[x]}" for x in sorted(rho.domain, key=lambda v: v.name)
        )
        return f"ρ1={{{render(self.rho1)}}}, ρ2={{{render(self.rho2)}}}"


def induction_conclusions(
    directive: InductionDirective,
    class_less: Optional[Callable] = None,
    check: bool = True,
) -> List[InferenceRecord]:
    """The conclusions ``Dρ1 ∥ αρ2`` for every CNF clause ``D`` of ``¬H``.

    ``class_less(s, t)`` must return ``True`` when ``[s] < [t]`` is
    certified. With ``check=False`` the conditions are not enforced.

    Raises
    ------

    InductionError
        Naming the first violated condition.

    """
    premises = directive.premises if directive.premises is not None else directive.query
    if check and set(premises) != set(directive.query):
        raise InductionError("i", "the premises must be the whole query set")
    alpha, clauses = _align(premises, check)
    xs = alpha.variables()
    rho1, rho2 = directive.rho1, directive.rho2
    if check:
        if set(rho1.domain) != set(xs) or set(rho2.domain) != set(xs):
            raise InductionError("iv", "ρ1 and ρ2 must be defined on the constraint variables")
        if class_less is None:
            raise InductionError("iv", "no class ordering is available to compare ρ1 and ρ2")
        for x in xs:
            if class_less(rho1[x], rho2[x]) is not True:
                raise InductionError("iv", f"[{rho1[x]}] < [{rho2[x]}] is not certified")
    constraint = alpha.map(rho2)
    records = []
    for D in _cnf(clauses):
        conclusion = ConstrainedClause.of(
            constraint,
            [e.map(rho1) for e in D.antecedent],
            [e.map(rho1) for e in D.succedent],
        )
        records.append(InferenceRecord("Ind", tuple(premises), (rho1, rho2), conclusion))
    return _unique(records)


def _smaller_candidates(t) -> List:
    found = {u for p, u in terms.positions(t) if p and u.sort == t.sort}
    return sorted(found, key=lambda u: (terms.size(u), str(u)))


def heuristic_induction(
    spec: OrderingSpec,
    query: Sequence[ConstrainedClause],
    cc: ConstrainedClause,
    class_less: Callable,
    max_candidates: int = 64,
) -> List[InferenceRecord]:
    """Induction conclusions triggered by a newly derived clause ``cc``.

    ``ρ2`` is read off by matching the common constraint of the query
    against the constraint of ``cc`` and must not be a renaming. ``ρ1``
    ranges over strict subterms of ``ρ2``. The first choice whose
    conclusions superpose into ``cc`` is used.
    """
    try:
        alpha, _ = align(query)
    except InductionError:
        return []
    binding = terms.match_all(zip(alpha.terms, cc.constraint.terms))
    if binding is None:
        return []
    rho2 = Substitution(binding)
    if rho2.is_renaming():
        return []
    xs = alpha.variables()
    options = []
    for x in xs:
        smaller = [u for u in _smaller_candidates(rho2[x]) if class_less(u, rho2[x]) is True]
        if not smaller:
            return []
        options.append(smaller)
    for combo in itertools.islice(itertools.product(*options), max_candidates):
        rho1 = Substitution(dict(zip(xs, combo)), xs)
        directive = InductionDirective(tuple(query), rho1, rho2.restrict(xs), "heuristic")
        records = induction_conclusions(directive, class_less)
        if any(_superposes(spec, r.conclusion, cc) for r in records):
            logger.info("induction fires on %s with %s", cc, directive.describe())
            return records
    return []


def _superposes(spec, cc1, cc2) -> bool:
    return bool(superposition_left(spec, cc1, cc2) or superposition_right(spec, cc1, cc2))
