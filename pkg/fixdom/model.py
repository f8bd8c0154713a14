"""Bounded construction of the minimal model of a saturated clause set.

The model is represented by the ground rewrite system ``R_N``. Ground
instances of the clauses whose constraint can be matched to a fixed ground
constraint are visited in increasing clause order, and an instance produces
the rule ``s -> t`` when

1. ``s ≈ t`` is strictly maximal in it and ``s ≻ t``,
2. ``s`` is irreducible by the rules produced so far,
3. every antecedent equation holds in the rules produced so far, and
4. no succedent equation does.

Only instances whose substituted terms stay within a weight bound are
considered, so answers about larger terms are partial.

"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Dict, Iterable, List, Optional

from . import terms
from .clauses import ANTECEDENT, SUCCEDENT, Clause, ConstrainedClause, Constraint, Equation
from .exceptions import OrderingError, SignatureError
from .ordering import EQ, GT, LT, compare_clauses, compare_equation_occurrences, occurrence
from .terms import PREDICATE_SORT, TRUE, App, GroundTerms, Substitution, Var

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RewriteRule:
    lhs: object
    rhs: object

    def __str__(self):
        return f"{self.lhs} -> {self.rhs}"


@dataclass
class GroundRewriteSystem:
    """Rules by left-hand side, with the ground clause that produced each."""

    rules: Dict[object, object] = field(default_factory=dict)
    provenance: Dict[object, Clause] = field(default_factory=dict)
    bound: int = 0

    def __iter__(self):
        for lhs in sorted(self.rules, key=lambda t: (terms.size(t), str(t))):
            yield RewriteRule(lhs, self.rules[lhs])

    def __len__(self):
        return len(self.rules)

    def reducible(self, t) -> bool:
        return any(u in self.rules for _, u in terms.positions(t))

    def is_left_reduced(self) -> bool:
        for lhs in self.rules:
            if isinstance(lhs, App) and any(self.reducible(a) for a in lhs.args):
                return False
        return True

    def is_terminating(self, ordering) -> bool:
        return all(ordering.greater(l, r) for l, r in self.rules.items())


# normal forms =========================================================================


def _innermost(t, rules, cache):
    found = cache.get(t)
    if found is not None:
        return found
    u = t
    if isinstance(t, App) and t.args:
        u = App(t.symbol, tuple(_innermost(a, rules, cache) for a in t.args), t.sort)
    r = rules.get(u)
    result = _innermost(r, rules, cache) if r is not None else u
    cache[t] = result
    return result


def _random_strategy(t, rules, rng, max_steps):
    for _ in range(max_steps):
        redexes = [p for p, u in terms.positions(t) if u in rules]
        if not redexes:
            return t
        p = rng.choice(redexes)
        t = terms.replace_at(t, p, rules[terms.subterm_at(t, p)])
    raise OrderingError(f"no normal form reached within {max_steps} rewrite steps")


def normal_form(t, system, strategy="innermost", rng: Optional[random.Random] = None):
    """The normal form of the ground term ``t``.

    ``system`` is a :class:`GroundRewriteSystem` or a plain dict of rules.
    The ``random`` strategy rewrites a randomly chosen redex at each step and
    is meant for confluence checks.
    """
    rules = system.rules if isinstance(system, GroundRewriteSystem) else system
    if strategy == "random":
        return _random_strategy(t, rules, rng or random.Random(0), 10_000)
    return _innermost(t, rules, {})


# construction =========================================================================


def _ground_cmp(ordering):
    signs = {LT: -1, EQ: 0, GT: 1}

    def compare(C, D):
        result = compare_clauses(ordering, C, D)
        if result not in signs:
            raise OrderingError(f"ground clauses {C} and {D} are incomparable")
        return signs[result]

    return cmp_to_key(compare)


def instances_at(
    N: Iterable[ConstrainedClause], alpha: Constraint, enumerator, bound
) -> List[Clause]:
    """Ground instances ``Cσ`` of the clauses with ``ασ`` equal to the ground ``alpha``."""
    result = set()
    for cc in N:
        binding = terms.match_all(zip(cc.constraint.terms, alpha.terms))
        if binding is None:
            continue
        clause = cc.clause.map(Substitution(binding))
        vs = clause.variables()
        choices = [enumerator.up_to(v.sort, bound) for v in vs]
        for combo in itertools.product(*choices):
            result.add(clause.map(Substitution(dict(zip(vs, combo)))))
    return list(result)


def _holds_in(e: Equation, rules, cache) -> bool:
    return _innermost(e.lhs, rules, cache) == _innermost(e.rhs, rules, cache)


def production(C: Clause, system: GroundRewriteSystem, ordering):
    """The rule ``(s, t)`` produced by the ground clause ``C``, or ``None``."""
    cache = {}
    rules = system.rules
    if not all(_holds_in(e, rules, cache) for e in C.antecedent):
        return None
    if any(_holds_in(e, rules, cache) for e in C.succedent):
        return None
    occs = [occurrence(ANTECEDENT, e) for e in C.antecedent] + [
        occurrence(SUCCEDENT, e) for e in C.succedent
    ]
    offset = len(C.antecedent)
    for i, e in enumerate(C.succedent):
        k = offset + i
        if any(
            j != k and compare_equation_occurrences(ordering, o, occs[k]) in (GT, EQ)
            for j, o in enumerate(occs)
        ):
            continue
        s, t = (e.lhs, e.rhs) if ordering.greater(e.lhs, e.rhs) else (e.rhs, e.lhs)
        if not ordering.greater(s, t) or system.reducible(s):
            continue
        return s, t
    return None


@dataclass
class ModelHandle:
    """The model ``perfect(N)`` seeded with a ground constraint.

    Attributes
    ----------

    system : GroundRewriteSystem
        The produced rules.

    alpha : Constraint
        The ground constraint the clause instances were taken at.

    clauses : list
        The ground clause instances, in increasing order.

    source : list
        The constrained clauses the model was built from.

    saturated : bool
        False if the source was not known to be saturated, in which case the
        model need not satisfy it.

    """

    system: GroundRewriteSystem
    alpha: Constraint
    clauses: list
    source: list
    signature: object
    ordering: object
    bound: int
    saturated: bool = True

    def normal_form(self, t, strategy="innermost", rng=None):
        return normal_form(t, self.system, strategy, rng)

    def holds(self, e: Equation) -> bool:
        return self.query(e).value

    def query(self, e: Equation) -> "Answer":
        partial = any(self.weight(t) > self.bound for t in e.sides)
        if partial:
            logger.debug("query %s exceeds the model bound %d", e, self.bound)
        return Answer(self.normal_form(e.lhs) == self.normal_form(e.rhs), partial)

    def weight(self, t) -> int:
        return self.ordering.weight(t)

    def facts(self, limit: int = 200) -> List[App]:
        """True predicative atoms with arguments up to the bound."""
        enumerator = GroundTerms(self.signature, self.ordering.symbol_weight)
        found = []
        true = App(TRUE, (), PREDICATE_SORT)
        for p in self.signature.predicates:
            choices = [enumerator.up_to(s, self.bound) for s in p.arg_sorts]
            for args in itertools.product(*choices):
                atom = App(p.name, args, PREDICATE_SORT)
                if self.normal_form(atom) == true:
                    found.append(atom)
                    if len(found) >= limit:
                        return found
        return found

    def dump(self) -> str:
        lines = [f"alpha_N: {self.alpha}" if len(self.alpha) else "alpha_N: (none)"]
        lines.append("rules:")
        lines.extend(f"  {rule}" for rule in self.system)
        lines.append("facts:")
        lines.extend(f"  {atom}" for atom in self.facts())
        if not self.saturated:
            lines.append("note: the clause set was not saturated")
        return "\n".join(lines)


@dataclass(frozen=True)
class Answer:
    value: bool
    partial: bool = False

    def __bool__(self):
        return self.value


def construct_RN(
    N: Iterable[ConstrainedClause],
    alpha: Constraint,
    signature,
    ordering,
    weight_bound: int,
    saturated: bool = True,
) -> ModelHandle:
    """Builds ``R_N`` from the ground instances of ``N`` at ``alpha``.

    ``alpha`` must be ground. Universal variables are instantiated with
    ground terms of weight at most ``weight_bound``.
    """
    N = list(N)
    if not alpha.is_ground:
        raise SignatureError(f"the model constraint {alpha} is not ground")
    if not saturated:
        logger.warning("building a model from a clause set that is not saturated")
    enumerator = GroundTerms(signature, ordering.symbol_weight)
    ground = sorted(instances_at(N, alpha, enumerator, weight_bound), key=_ground_cmp(ordering))
    system = GroundRewriteSystem(bound=weight_bound)
    for C in ground:
        produced = production(C, system, ordering)
        if produced is not None:
            s, t = produced
            system.rules[s] = t
            system.provenance[s] = C
    logger.info(
        "model at %s: %d ground instances, %d rules", alpha, len(ground), len(system)
    )
    return ModelHandle(system, alpha, ground, N, signature, ordering, weight_bound, saturated)


def holds(e: Equation, m: ModelHandle) -> bool:
    return m.holds(e)


def _clause_true(C: Clause, m: ModelHandle) -> bool:
    return any(not m.holds(e) for e in C.antecedent) or any(m.holds(e) for e in C.succedent)


def _witness_terms(witness, spine):
    if isinstance(witness, Constraint):
        mapping = dict(witness.pairs)
    elif isinstance(witness, Substitution):
        mapping = {v: witness[v] for v in witness.domain}
    else:
        mapping = dict(witness)
    return tuple(mapping[v] for v in spine)


def check_models(m: ModelHandle, S, witness, weight_bound: Optional[int] = None) -> bool:
    """Whether the model satisfies every clause of ``S`` under the witness.

    ``witness`` maps the existential variables to ground terms and may be a
    :class:`Substitution`, a ground :class:`Constraint` or a dict. Universal
    variables range over ground terms up to ``weight_bound``. The constraint
    equations are evaluated in the model, so ``u ≈ b`` applies to the
    witness ``u ↦ a`` whenever ``a`` and ``b`` are equal there.
    """
    bound = weight_bound if weight_bound is not None else m.bound
    enumerator = GroundTerms(m.signature, m.ordering.symbol_weight)
    for cc in S:
        gamma = _witness_terms(witness, cc.spine)
        vs = cc.variables()
        choices = [enumerator.up_to(v.sort, bound) for v in vs]
        for combo in itertools.product(*choices):
            theta = Substitution(dict(zip(vs, combo)))
            pairs = zip(cc.constraint.terms, gamma)
            if not all(m.holds(Equation.of(theta(t), g)) for t, g in pairs):
                continue
            C = cc.clause.map(theta)
            if not _clause_true(C, m):
                logger.debug("model violates %s at %s", C, cc.constraint.map(theta))
                return False
    return True


# class ordering =======================================================================


def free_symbols(clauses: Iterable[ConstrainedClause], signature, ordering) -> set:
    """Term symbols that head no side of a positive equation that may be rewritten."""
    free = {f.name for f in signature.term_functions}
    for cc in clauses:
        for e in cc.succedent:
            if e.is_predicative:
                continue
            for s, t in e.orientations():
                if ordering.greater(t, s):
                    continue
                if isinstance(s, Var):
                    free -= {f.name for f in signature.constructors(s.sort)}
                else:
                    free.discard(s.symbol)
    return free


def _on_free_path(s, t, free) -> bool:
    if not isinstance(t, App) or (free is not None and t.symbol not in free):
        return False
    return any(a == s or _on_free_path(s, a, free) for a in t.args)


class ClassOrder:
    """Certifies ``[s] < [t]`` between model classes.

    The classes are ordered by the strict subterm relation on normal forms.
    ``[s] < [t]`` is certified when ``s`` occurs strictly below the root of
    ``t`` on a path of free symbols, refuted when sampled groundings of ``s``
    and ``t`` have equal normal forms, and left open otherwise.
    """

    def __init__(
        self, free, handle: Optional[ModelHandle] = None, assume_free=False, sample_bound=3
    ):
        self.free = set(free)
        self.handle = handle
        self.assume_free = assume_free
        self.sample_bound = sample_bound

    @classmethod
    def from_clauses(cls, clauses, signature, ordering, handle=None, assume_free=False):
        clauses = list(clauses)
        return cls(free_symbols(clauses, signature, ordering), handle, assume_free)

    def __call__(self, s, t) -> Optional[bool]:
        if s.sort != t.sort:
            return None
        free = None if self.assume_free else self.free
        if _on_free_path(s, t, free):
            return True
        if self.handle is not None and self._samples_equal(s, t):
            return False
        return None

    def _samples_equal(self, s, t) -> bool:
        vs = terms.variables_of([s, t])
        m = self.handle
        enumerator = GroundTerms(m.signature, m.ordering.symbol_weight)
        choices = [enumerator.up_to(v.sort, self.sample_bound) for v in vs]
        samples = itertools.islice(itertools.product(*choices), 64)
        for combo in samples:
            theta = Substitution(dict(zip(vs, combo)))
            if m.normal_form(theta(s)) != m.normal_form(theta(t)):
                return False
        return True


def class_less(s, t, m: ModelHandle, assume_free=False) -> Optional[bool]:
    """Three-valued ``[s] < [t]`` over the model ``m``: ``True``, ``False`` or ``None``."""
    return ClassOrder.from_clauses(m.source, m.signature, m.ordering, m, assume_free)(s, t)


# exhaustive interpretations ===========================================================


def finite_universe(signature, sort) -> List:
    """All ground terms of a finite sort."""
    if not signature.is_finite_sort(sort):
        raise SignatureError(f"sort {sort!r} has infinitely many ground terms")
    universe = {s: set() for s in signature.sorts}
    changed = True
    while changed:
        changed = False
        for f in signature.term_functions:
            if not signature.is_finite_sort(f.sort):
                continue
            for args in itertools.product(*(sorted(universe[s], key=str) for s in f.arg_sorts)):
                t = App(f.name, tuple(args), f.sort)
                if t not in universe[f.sort]:
                    universe[f.sort].add(t)
                    changed = True
    return sorted(universe[sort], key=str)


@dataclass(frozen=True)
class Interpretation:
    """A Herbrand interpretation of a purely predicative problem: its true atoms."""

    atoms: frozenset

    def holds(self, e: Equation) -> bool:
        if e.lhs == e.rhs:
            return True
        if e.is_predicative:
            truth = lambda t: (isinstance(t, App) and t.symbol == TRUE) or t in self.atoms
            return truth(e.lhs) and truth(e.rhs)
        return False

    def satisfies(self, C: Clause) -> bool:
        return any(not self.holds(e) for e in C.antecedent) or any(
            self.holds(e) for e in C.succedent
        )

    def models(self, N: Iterable[ConstrainedClause], spine, signature) -> bool:
        """Whether some ground witness for ``spine`` satisfies every clause of ``N``."""
        N = list(N)
        choices = [finite_universe(signature, v.sort) for v in spine]
        for combo in itertools.product(*choices):
            gamma = Constraint.of(spine, combo)
            if all(self._closure(cc, gamma, signature) for cc in N):
                return True
        return False

    def _closure(self, cc, gamma, signature) -> bool:
        binding = terms.match_all(zip(cc.constraint.terms, gamma.terms))
        if binding is None:
            return True
        clause = cc.clause.map(Substitution(binding))
        vs = clause.variables()
        choices = [finite_universe(signature, v.sort) for v in vs]
        return all(
            self.satisfies(clause.map(Substitution(dict(zip(vs, combo)))))
            for combo in itertools.product(*choices)
        )


def enumerate_interpretations(signature) -> Iterable[Interpretation]:
    """All interpretations of the predicates over a signature with finite sorts."""
    atoms = []
    for p in signature.predicates:
        choices = [finite_universe(signature, s) for s in p.arg_sorts]
        for args in itertools.product(*choices):
            atoms.append(App(p.name, tuple(args), PREDICATE_SORT))
    for bits in itertools.product((False, True), repeat=len(atoms)):
        yield Interpretation(frozenset(a for a, bit in zip(atoms, bits) if bit))
