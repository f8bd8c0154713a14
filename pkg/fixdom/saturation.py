"""The given-clause saturation loop.

Clauses wait in a passive set until they are selected as the given clause.
Selection alternates between the oldest passive clause and the lightest one
according to the configured age to weight ratio; clauses with an empty
clausal part are always selected first. A selected clause is simplified,
dropped if it is redundant, and otherwise activated, after which every
inference between it and the active clauses is performed.

Every clause with an empty clausal part contributes its constraint to the
set ``A_N``. Whenever ``A_N`` grows its coverage is decided; a covering set
ends the run with a proof.

"""

import enum
import heapq
import itertools
import json
import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from . import calculus, coverage, terms
from .clauses import ConstrainedClause, Equation, is_tautology
from .exceptions import InductionError, SaturationComplete, TimeoutError
from .terms import Substitution, Var
from ._timeout import timeout

logger = logging.getLogger(__name__)


class Verdict(enum.Enum):
    THEOREM = "THEOREM"
    NON_THEOREM = "NON_THEOREM"
    GAVE_UP = "GAVE_UP"

    def __str__(self):
        return self.value


@dataclass
class Entry:
    """A retained clause and how it was obtained."""

    id: int
    clause: ConstrainedClause
    rule: str
    parents: tuple = ()
    unifiers: tuple = ()
    simplified_by: tuple = ()
    note: str = ""

    def justification(self) -> str:
        if self.rule == "Ind" and self.note:
            text = f"Ind({','.join(map(str, self.parents))}; {self.note})"
        elif self.parents:
            text = f"{self.rule}({','.join(map(str, self.parents))})"
        else:
            text = self.rule
        if self.simplified_by:
            text += f" Demod({','.join(map(str, self.simplified_by))})"
        return text

    def __str__(self):
        return f"{self.id}: {self.clause} ; {self.justification()}"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "rule": self.rule,
            "parents": list(self.parents),
            "clause": str(self.clause.clause),
            "constraint": str(self.clause.constraint),
            "substitutions": [repr(s) for s in self.unifiers],
            "simplified_by": list(self.simplified_by),
        }


# redundancy ===========================================================================


def _match_equations(eqs1, eqs2, binding):
    if not eqs1:
        yield binding
        return
    e, rest = eqs1[0], eqs1[1:]
    for j, f in enumerate(eqs2):
        if e.sort != f.sort:
            continue
        for a, b in f.orientations():
            extended = terms.match_all([(e.lhs, a), (e.rhs, b)], binding)
            if extended is not None:
                yield from _match_equations(rest, eqs2[:j] + eqs2[j + 1 :], extended)


def subsumes(cc1: ConstrainedClause, cc2: ConstrainedClause) -> bool:
    """Whether some ``σ`` gives ``α1σ = α2`` and ``C1σ ⊆ C2`` as multisets.

    Variants subsume each other; the saturation state never holds two
    variants because clauses are kept in canonical renaming.
    """
    if cc1.spine != cc2.spine:
        return False
    if len(cc1.antecedent) > len(cc2.antecedent) or len(cc1.succedent) > len(cc2.succedent):
        return False
    binding = terms.match_all(zip(cc1.constraint.terms, cc2.constraint.terms))
    if binding is None:
        return False
    ant1, ant2 = list(cc1.antecedent), list(cc2.antecedent)
    succ1, succ2 = list(cc1.succedent), list(cc2.succedent)
    for b in _match_equations(ant1, ant2, binding):
        for _ in _match_equations(succ1, succ2, b):
            return True
    return False


@dataclass(frozen=True)
class Demodulator:
    """An oriented use of the unconstrained positive unit ``→ l ≈ r``."""

    id: int
    lhs: object
    rhs: object


def demodulators(entry_id: int, cc: ConstrainedClause) -> List[Demodulator]:
    """The rewrite directions of ``cc`` if it may be used for demodulation."""
    if cc.antecedent or len(cc.succedent) != 1 or not cc.is_unconstrained:
        return []
    e = cc.succedent[0]
    if e.is_predicative or e.is_trivial:
        return []
    result = []
    for l, r in e.orientations():
        if isinstance(l, Var):
            continue
        if set(terms.variables(r)) <= set(terms.variables(l)):
            result.append(Demodulator(entry_id, l, r))
    return result


def _rewrite(t, units, spec, used, at_root=None, limit=1000):
    for _ in range(limit):
        for p, sub in terms.positions(t):
            if isinstance(sub, Var):
                continue
            step = _rewrite_at(sub, units, spec, at_root if p == () else None)
            if step is not None:
                rhs, unit = step
                used.append(unit.id)
                t = terms.replace_at(t, p, rhs)
                break
        else:
            return t
    return t


def _rewrite_at(sub, units, spec, at_root=None):
    for unit in units:
        binding = terms.match(unit.lhs, sub)
        if binding is None:
            continue
        rhs = Substitution(binding)(unit.rhs)
        if spec.greater(sub, rhs) and (at_root is None or at_root(rhs)):
            return rhs, unit
    return None


def _rewrite_positive(e: Equation, units, spec, used, limit=1000) -> Equation:
    # At the root of a side s of s≈t the unit instance s≈r is only smaller
    # than the literal if r ≺ t.
    lhs, rhs = e.lhs, e.rhs
    for _ in range(limit):
        new_lhs = _rewrite(lhs, units, spec, used, lambda r: spec.greater(rhs, r))
        new_rhs = _rewrite(rhs, units, spec, used, lambda r: spec.greater(new_lhs, r))
        if new_lhs == lhs and new_rhs == rhs:
            break
        lhs, rhs = new_lhs, new_rhs
    return Equation.of(lhs, rhs)


def demodulate(cc: ConstrainedClause, units: Sequence[Demodulator], spec, rewrite_constraint=True):
    """Rewrites ``cc`` with the units where the instance decreases.

    A side of a positive literal is rewritten at its root only if the unit
    instance is smaller than the literal. Returns the rewritten clause and
    the ids of the units used. The constraint is only rewritten if
    ``rewrite_constraint`` is set.
    """
    if not units:
        return cc, ()
    used = []
    rewrite = lambda t: _rewrite(t, units, spec, used)
    constraint = cc.constraint.map(rewrite) if rewrite_constraint else cc.constraint
    ant = [Equation.of(rewrite(e.lhs), rewrite(e.rhs)) for e in cc.antecedent]
    succ = [_rewrite_positive(e, units, spec, used) for e in cc.succedent]
    if not used:
        return cc, ()
    return ConstrainedClause.of(constraint, ant, succ), tuple(dict.fromkeys(used))


# state ================================================================================


@dataclass
class Limits:
    max_iterations: Optional[int] = 2000
    max_clauses: Optional[int] = 20000
    timeout: Optional[int] = None


class SaturationState:
    """Clauses, queues and the accumulated empty-clause constraints of a run.

    Parameters
    ----------

    spec : OrderingSpec
        The term ordering.

    coverage_signature : Signature
        The signature ground constraints range over.

    spine : tuple
        The existential variables.

    calculus : str
        ``"sfd"`` or ``"sfd-general"``.

    induction : str
        ``"off"``, ``"heuristic"`` or ``"manual"``.

    query : Sequence[ConstrainedClause]
        The clauses of the negated conjecture, the query set for induction.

    class_less : Optional[Callable]
        Certifies ``[s] < [t]`` for the induction rule.

    """

    def __init__(
        self,
        spec,
        coverage_signature,
        spine=(),
        calculus="sfd",
        induction="off",
        query=(),
        class_less: Optional[Callable] = None,
        limits: Optional[Limits] = None,
        simplify=True,
        age_weight_ratio=(1, 4),
        tiebreak="declaration",
        strict=False,
    ):
        self.spec = spec
        self.coverage_signature = coverage_signature
        self.spine = tuple(spine)
        self.calculus = calculus
        self.induction = induction
        self.query = tuple(query)
        self.class_less = class_less
        self.limits = limits or Limits()
        self.simplify = simplify
        self.age_weight_ratio = age_weight_ratio
        self.tiebreak = tiebreak
        self.strict = strict

        self.entries: Dict[int, Entry] = {}
        self.active: Dict[int, ConstrainedClause] = {}
        self.deleted = set()
        self.empty: List[int] = []
        self.units: List[Demodulator] = []
        self.iterations = 0
        self.coverage = None

        self._ids = itertools.count(1)
        self._seen = set()
        self._urgent = deque()
        self._by_age = []
        self._by_weight = []
        self._picks = 0
        self._induced = set()
        self._query_entries: List[int] = []
        self._coverage_stale = False

    # clauses --------------------------------------------------------------------------

    @property
    def passive(self) -> List[int]:
        ids = set(self._urgent) | {i for i in self._by_age}
        return sorted(i for i in ids if i not in self.active and i not in self.deleted)

    @property
    def empty_constraints(self):
        """``A_N`` in derivation order."""
        return [self.entries[i].clause.constraint for i in self.empty if i not in self.deleted]

    def retained(self):
        return [e for i, e in self.entries.items() if i not in self.deleted]

    def add_input(self, cc: ConstrainedClause, rule="Input") -> Optional[int]:
        return self._retain(cc, rule)

    def _retain(self, cc, rule, parents=(), unifiers=(), note="", simplified_by=()):
        given = cc
        if self.simplify:
            cc, used = demodulate(cc, self.units, self.spec, self.calculus == "sfd")
            simplified_by = tuple(simplified_by) + used
            if is_tautology(cc):
                logger.debug("tautology %s dropped", cc)
                return None
        if cc in self._seen:
            return None
        if self.simplify and self._forward_subsumed(cc):
            logger.debug("%s is subsumed", cc)
            return None
        self._seen.add(cc)
        i = next(self._ids)
        entry = Entry(i, cc, rule, tuple(parents), tuple(unifiers), simplified_by, note)
        self.entries[i] = entry
        logger.debug("new clause %s", entry)
        if rule == "Input" and given in self.query:
            self._query_entries.append(i)
        if cc.is_empty:
            self.empty.append(i)
            self._coverage_stale = True
            self._urgent.append(i)
        heapq.heappush(self._by_age, i)
        heapq.heappush(self._by_weight, (cc.weight, i))
        if self.induction == "heuristic" and rule != "Ind":
            self._induce(i, cc)
        return i

    def _forward_subsumed(self, cc) -> bool:
        return any(subsumes(e.clause, cc) for e in self.retained())

    def _backward_subsume(self, i, cc):
        for j, e in list(self.entries.items()):
            if j == i or j in self.deleted:
                continue
            if subsumes(cc, e.clause):
                logger.debug("%d subsumes %d", i, j)
                self._delete(j)

    def _delete(self, j):
        self.deleted.add(j)
        self.active.pop(j, None)
        self.units = [u for u in self.units if u.id != j]

    # induction ------------------------------------------------------------------------

    def _induce(self, i, cc):
        if not self.query or self.class_less is None or cc.constraint in self._induced:
            return
        records = calculus.heuristic_induction(self.spec, self.query, cc, self.class_less)
        if records:
            self._induced.add(cc.constraint)
            self._record_all(records, self._query_ids())

    def _query_ids(self):
        return tuple(self._query_entries)

    def _replace(self, old: int, new: Optional[int]):
        if old in self._query_entries:
            self._query_entries.remove(old)
            if new is not None:
                self._query_entries.append(new)

    def apply_directive(self, directive: calculus.InductionDirective) -> List[int]:
        """Adds the conclusions of a user induction directive.

        Raises
        ------

        InductionError
            If the directive violates a condition of the rule.

        """
        if self.class_less is None:
            raise InductionError("iv", "no class ordering is available")
        records = calculus.induction_conclusions(directive, self.class_less)
        logger.info("induction directive %s", directive.describe())
        return self._record_all(records, self._query_ids(), directive.describe())

    def _record_all(self, records, parents, note=None):
        added = []
        for record in records:
            if record.rule == "Ind":
                rho1, rho2 = record.unifiers
                text = note or calculus.InductionDirective(
                    self.query, rho1, rho2
                ).describe()
                i = self._retain(record.conclusion, "Ind", parents, record.unifiers, text)
            else:
                i = self._retain(record.conclusion, record.rule, parents, record.unifiers)
            if i is not None:
                added.append(i)
        return added

    # selection ------------------------------------------------------------------------

    def _alive(self, i):
        return i not in self.active and i not in self.deleted

    def _pop_age(self):
        while self._by_age:
            i = heapq.heappop(self._by_age)
            if self._alive(i):
                return i
        return None

    def _pop_weight(self):
        while self._by_weight:
            _, i = heapq.heappop(self._by_weight)
            if self._alive(i):
                return i
        return None

    def select(self) -> int:
        """Pops the next given clause.

        Raises
        ------

        SaturationComplete
            If no passive clause is left.

        """
        while self._urgent:
            i = self._urgent.popleft()
            if self._alive(i):
                return i
        by_age, by_weight = self.age_weight_ratio
        self._picks += 1
        use_age = (self._picks - 1) % (by_age + by_weight) < by_age
        first, second = self._pop_age, self._pop_weight
        if not use_age:
            first, second = second, first
        i = first()
        if i is None:
            i = second()
        if i is None:
            raise SaturationComplete("no passive clauses are left")
        return i

    # coverage -------------------------------------------------------------------------

    def check_coverage(self):
        """Decides coverage of ``A_N`` if it changed since the last check."""
        if self._coverage_stale or self.coverage is None:
            self._coverage_stale = False
            self.coverage = coverage.check_coverage(
                self.empty_constraints,
                self.coverage_signature,
                self.spec,
                self.tiebreak,
                spine=self.spine,
                strict=self.strict,
            )
            logger.info(
                "A_N has %d constraints, %s",
                len(self.empty_constraints),
                "covering" if self.coverage.covering else "not covering",
            )
        return self.coverage


def _inferences(spec, given, active, general):
    """All records from the given clause and the active clauses."""
    records = []
    gid, gcc = given
    for rule in calculus.UNARY_RULES:
        records.extend((r, (gid,)) for r in rule(spec, gcc))
    binary = calculus.BINARY_RULES["sfd-general" if general else "sfd"]
    for aid, acc in active.items():
        for rule in binary:
            records.extend((r, (gid, aid)) for r in rule(spec, gcc, acc))
            if aid != gid:
                records.extend((r, (aid, gid)) for r in rule(spec, acc, gcc))
    return records


def given_clause_step(state: SaturationState) -> Optional[int]:
    """Performs one given-clause step and returns the id of the activated clause.

    Returns ``None`` if the selected clause turned out to be redundant.

    Raises
    ------

    SaturationComplete
        If the passive set is empty.

    """
    i = state.select()
    state.iterations += 1
    cc = state.entries[i].clause
    if state.simplify and state.units:
        simplified, used = demodulate(cc, state.units, state.spec, state.calculus == "sfd")
        if used:
            state._delete(i)
            j = state._retain(simplified, "Demod", (i,), simplified_by=used)
            state._replace(i, j)
            return None
    if state.simplify:
        state._backward_subsume(i, cc)
    state.active[i] = cc
    state.units.extend(demodulators(i, cc))
    logger.info("activated %s", state.entries[i])
    general = state.calculus == "sfd-general"
    for record, parents in _inferences(state.spec, (i, cc), state.active, general):
        if any(p in state.deleted for p in parents):
            continue
        state._retain(record.conclusion, record.rule, parents, record.unifiers)
    return i


@dataclass
class Result:
    """The outcome of :func:`saturate`."""

    verdict: Verdict
    state: SaturationState
    limit: Optional[str] = None

    @property
    def coverage(self):
        return self.state.coverage

    @property
    def empty_constraints(self):
        return self.state.empty_constraints


def _over_limit(state: SaturationState) -> Optional[str]:
    limits = state.limits
    if limits.max_iterations is not None and state.iterations >= limits.max_iterations:
        return f"max-iterations ({limits.max_iterations})"
    alive = len(state.entries) - len(state.deleted)
    if limits.max_clauses is not None and alive >= limits.max_clauses:
        return f"max-clauses ({limits.max_clauses})"
    return None


def _loop(state: SaturationState) -> Result:
    while True:
        if state._coverage_stale and state.check_coverage().covering:
            return Result(Verdict.THEOREM, state)
        limit = _over_limit(state)
        if limit is not None:
            logger.info("gave up: %s", limit)
            return Result(Verdict.GAVE_UP, state, limit)
        try:
            given_clause_step(state)
        except SaturationComplete:
            result = state.check_coverage()
            if result.covering:
                return Result(Verdict.THEOREM, state)
            logger.info("saturated after %d iterations", state.iterations)
            return Result(Verdict.NON_THEOREM, state)


def saturate(state: SaturationState) -> Result:
    """Runs the loop until ``A_N`` is covering, the set saturates or a limit is hit."""
    try:
        return timeout(state.limits.timeout)(_loop)(state)
    except TimeoutError:
        logger.info("gave up after %s seconds", state.limits.timeout)
        return Result(Verdict.GAVE_UP, state, f"timeout ({state.limits.timeout}s)")


# traces ===============================================================================


def derivation_trace(state: SaturationState, include_deleted=True) -> str:
    """The numbered listing of the retained clauses."""
    lines = ["TRACE:"]
    for i, entry in state.entries.items():
        if include_deleted or i not in state.deleted:
            lines.append(f"  {entry}")
    return "\n".join(lines)


def write_jsonl(state: SaturationState, fileobj):
    """Writes one JSON record per clause of the run."""
    for entry in state.entries.values():
        record = entry.to_json()
        record["deleted"] = entry.id in state.deleted
        fileobj.write(json.dumps(record, ensure_ascii=False) + "\n")
