"""Equations, clauses, constraints and constrained clauses.

A constrained clause ``α ∥ Γ → Δ`` pairs a clause with a constraint
``v1 ≈ t1, ..., vn ≈ tn`` that mentions every existential variable of the
problem exactly once. Constrained clauses are always stored in a canonical
renaming of their universal variables, so that two clauses which are equal up
to renaming are also equal as Python values.

"""

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from . import terms
from .exceptions import ConstraintError, PositionError, SortError
from .terms import PREDICATE_SORT, TRUE, App, Substitution, Var

ANTECEDENT = "antecedent"
SUCCEDENT = "succedent"

# search bound for the tie permutations tried by canonical renaming
_MAX_RENAMINGS = 720


def _key(t) -> str:
    return str(t)


def _skeleton(t) -> str:
    if isinstance(t, Var):
        return "?" + t.sort
    if not t.args:
        return t.symbol
    return f"{t.symbol}({','.join(_skeleton(a) for a in t.args)})"


# equations and clauses ================================================================


@dataclass(frozen=True)
class Equation:
    """An unordered pair of terms of the same sort.

    Build equations with :meth:`Equation.of`, which puts the sides in a
    canonical order so that ``s ≈ t`` and ``t ≈ s`` compare equal.
    """

    lhs: object
    rhs: object

    @staticmethod
    def of(s, t) -> "Equation":
        if s.sort != t.sort:
            raise SortError(f"equation sides {s}:{s.sort} and {t}:{t.sort} differ in sort")
        if _key(t) < _key(s):
            s, t = t, s
        return Equation(s, t)

    @property
    def sides(self):
        return (self.lhs, self.rhs)

    @property
    def sort(self):
        return self.lhs.sort

    @property
    def is_predicative(self) -> bool:
        return self.lhs.sort == PREDICATE_SORT

    @property
    def atom(self):
        """For ``P(..) ≈ true``, the term ``P(..)``; otherwise ``None``."""
        if not self.is_predicative:
            return None
        if _is_true(self.rhs):
            return self.lhs
        if _is_true(self.lhs):
            return self.rhs
        return None

    @property
    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def orientations(self):
        """The pairs ``(s, t)`` this equation can be read as."""
        if self.lhs == self.rhs:
            return [(self.lhs, self.rhs)]
        return [(self.lhs, self.rhs), (self.rhs, self.lhs)]

    def map(self, f) -> "Equation":
        return Equation.of(f(self.lhs), f(self.rhs))

    def __str__(self):
        atom = self.atom
        if atom is not None:
            return str(atom)
        return f"{self.lhs}≈{self.rhs}"

    def to_text(self) -> str:
        atom = self.atom
        if atom is not None:
            return str(atom)
        return f"{self.lhs} = {self.rhs}"


def _is_true(t) -> bool:
    return isinstance(t, App) and t.symbol == TRUE


def encode_predicative(signature, predicate: str, *args) -> Equation:
    """The equation ``f_P(args) ≈ true`` standing for the atom ``P(args)``."""
    f = signature[predicate]
    if not f.is_predicate:
        raise SortError(f"{predicate!r} is not a predicate symbol")
    return Equation.of(signature.app(predicate, *args), signature.true())


@dataclass(frozen=True)
class Clause:
    """A pair of equation multisets ``Γ → Δ``, each kept as a sorted tuple."""

    antecedent: tuple = ()
    succedent: tuple = ()

    @staticmethod
    def of(antecedent: Iterable[Equation] = (), succedent: Iterable[Equation] = ()) -> "Clause":
        return Clause(
            tuple(sorted(antecedent, key=_key)),
            tuple(sorted(succedent, key=_key)),
        )

    @property
    def is_empty(self) -> bool:
        return not self.antecedent and not self.succedent

    @property
    def is_horn(self) -> bool:
        return len(self.succedent) <= 1

    def equations(self) -> List[Equation]:
        return list(self.antecedent) + list(self.succedent)

    def side(self, name: str) -> tuple:
        return self.antecedent if name == ANTECEDENT else self.succedent

    def occurrences(self) -> List[Tuple[str, int, Equation]]:
        return [(ANTECEDENT, i, e) for i, e in enumerate(self.antecedent)] + [
            (SUCCEDENT, i, e) for i, e in enumerate(self.succedent)
        ]

    def terms(self) -> List:
        return [t for e in self.equations() for t in e.sides]

    def variables(self) -> List[Var]:
        return terms.variables_of(self.terms())

    def map(self, f) -> "Clause":
        return Clause.of(
            (e.map(f) for e in self.antecedent), (e.map(f) for e in self.succedent)
        )

    def without(self, side: str, index: int) -> "Clause":
        """The clause with one occurrence removed."""
        ant, succ = list(self.antecedent), list(self.succedent)
        (ant if side == ANTECEDENT else succ).pop(index)
        return Clause.of(ant, succ)

    def __str__(self):
        if self.is_empty:
            return "□"
        left = ", ".join(str(e) for e in self.antecedent)
        right = ", ".join(str(e) for e in self.succedent)
        return f"{left} → {right}".strip()

    def to_text(self) -> str:
        left = ", ".join(e.to_text() for e in self.antecedent)
        right = ", ".join(e.to_text() for e in self.succedent)
        return f"{left} -> {right}".strip()


# constraints ==========================================================================


@dataclass(frozen=True)
class Constraint:
    """A sequence ``v1 ≈ t1, ..., vn ≈ tn`` over the existential spine."""

    pairs: tuple = ()

    def __post_init__(self):
        seen = set()
        for v, t in self.pairs:
            if not (isinstance(v, Var) and v.existential):
                raise ConstraintError(f"{v} is not an existential variable")
            if v in seen:
                raise ConstraintError(f"existential variable {v} occurs twice")
            seen.add(v)
            if v.sort != t.sort:
                raise ConstraintError(f"{v}:{v.sort} cannot be bound to {t}:{t.sort}")
            if any(x.existential for x in terms.variables(t)):
                raise ConstraintError(f"right-hand side {t} contains an existential variable")

    @staticmethod
    def of(spine: Sequence[Var], rhs: Sequence) -> "Constraint":
        if len(spine) != len(rhs):
            raise ConstraintError("constraint needs one term per existential variable")
        return Constraint(tuple(zip(spine, rhs)))

    @staticmethod
    def unconstrained(spine: Sequence[Var]) -> "Constraint":
        """Binds every existential variable to a fresh universal variable."""
        return Constraint.of(spine, [terms.fresh_variable(v.sort) for v in spine])

    @property
    def spine(self) -> Tuple[Var, ...]:
        return tuple(v for v, _ in self.pairs)

    @property
    def terms(self) -> tuple:
        return tuple(t for _, t in self.pairs)

    def __len__(self):
        return len(self.pairs)

    def variables(self) -> List[Var]:
        return terms.variables_of(self.terms)

    @property
    def is_ground(self) -> bool:
        return all(terms.is_ground(t) for t in self.terms)

    @property
    def is_variable_only(self) -> bool:
        return all(isinstance(t, Var) for t in self.terms)

    def map(self, f) -> "Constraint":
        return Constraint(tuple((v, f(t)) for v, t in self.pairs))

    def positions(self):
        """Yields ``((i, p), subterm)`` for every position of every right-hand side."""
        for i, t in enumerate(self.terms):
            for p, u in terms.positions(t):
                yield (i, p), u

    def subterm_at(self, position):
        i, p = position
        if not 0 <= i < len(self.pairs):
            raise PositionError(f"constraint has no component {i}")
        return terms.subterm_at(self.pairs[i][1], p)

    def replace_at(self, position, r) -> "Constraint":
        i, p = position
        pairs = list(self.pairs)
        v, t = pairs[i]
        pairs[i] = (v, terms.replace_at(t, p, r))
        return Constraint(tuple(pairs))

    def check_spine(self, other: "Constraint"):
        if self.spine != other.spine:
            raise ConstraintError(
                f"constraints over different spines: {self.spine} and {other.spine}"
            )

    def __str__(self):
        return ", ".join(f"{v}≈{t}" for v, t in self.pairs)

    def to_text(self) -> str:
        return ", ".join(f"{v} = {t}" for v, t in self.pairs)


def induced_substitution(alpha: Constraint) -> Substitution:
    """The substitution ``σ_α`` mapping each ``vi`` to ``ti``."""
    return Substitution(dict(alpha.pairs), alpha.spine)


def constraint_equate(alpha1: Constraint, alpha2: Constraint) -> List[Equation]:
    """The equations ``α1 ≈ α2`` pairing right-hand sides componentwise."""
    alpha1.check_spine(alpha2)
    return [Equation.of(s, t) for s, t in zip(alpha1.terms, alpha2.terms)]


# constrained clauses ==================================================================


@dataclass(frozen=True)
class ConstrainedClause:
    """A clause together with its constraint, in canonical renaming."""

    constraint: Constraint
    clause: Clause

    @staticmethod
    def of(
        constraint: Constraint,
        antecedent: Iterable[Equation] = (),
        succedent: Iterable[Equation] = (),
    ) -> "ConstrainedClause":
        return canonicalize(constraint, list(antecedent), list(succedent))

    @staticmethod
    def unconstrained(spine, antecedent=(), succedent=()) -> "ConstrainedClause":
        return ConstrainedClause.of(Constraint.unconstrained(spine), antecedent, succedent)

    @property
    def spine(self):
        return self.constraint.spine

    @property
    def antecedent(self):
        return self.clause.antecedent

    @property
    def succedent(self):
        return self.clause.succedent

    @property
    def is_empty(self) -> bool:
        """Whether the clausal part is empty."""
        return self.clause.is_empty

    @property
    def is_ground(self) -> bool:
        return not self.variables()

    @property
    def is_unconstrained(self) -> bool:
        """Whether the constraint binds distinct variables occurring nowhere else."""
        rhs = self.constraint.terms
        if not all(isinstance(t, Var) for t in rhs) or len(set(rhs)) != len(rhs):
            return False
        return not set(rhs) & set(self.clause.variables())

    def variables(self) -> List[Var]:
        return terms.variables_of(list(self.constraint.terms) + self.clause.terms())

    def apply(self, sigma: Substitution) -> "ConstrainedClause":
        return ConstrainedClause.of(
            self.constraint.map(sigma),
            [e.map(sigma) for e in self.antecedent],
            [e.map(sigma) for e in self.succedent],
        )

    def rename_apart(self) -> Tuple[Constraint, Clause]:
        """Constraint and clause with all universal variables made fresh.

        The result is deliberately not canonicalized.
        """
        sigma = terms.renaming(self.variables())
        return self.constraint.map(sigma), self.clause.map(sigma)

    @property
    def weight(self) -> int:
        return sum(terms.size(t) for t in self.constraint.terms) + sum(
            terms.size(t) for t in self.clause.terms()
        )

    def visible_pairs(self) -> tuple:
        """Constraint entries minus ``v ≈ x`` where ``x`` occurs nowhere else."""
        counts = Counter(
            v
            for t in list(self.constraint.terms) + self.clause.terms()
            for _, v in terms.positions(t)
            if isinstance(v, Var)
        )
        return tuple(
            (v, t) for v, t in self.constraint.pairs if not (isinstance(t, Var) and counts[t] == 1)
        )

    def __str__(self):
        pairs = self.visible_pairs()
        if not pairs:
            return str(self.clause)
        shown = ", ".join(f"{v}≈{t}" for v, t in pairs)
        return f"{shown} ∥ {self.clause}"

    def to_text(self) -> str:
        if not self.constraint.pairs:
            return self.clause.to_text()
        return f"{self.constraint.to_text()} || {self.clause.to_text()}"


def is_tautology(cc: ConstrainedClause) -> bool:
    """Whether ``Δ`` contains ``t ≈ t`` or shares an equation with ``Γ``."""
    if any(e.is_trivial for e in cc.succedent):
        return True
    return bool(set(cc.antecedent) & set(cc.succedent))


def ground_instances(cc: ConstrainedClause, ground_terms, weight_bound: int):
    """All ground instances of ``cc`` whose substituted terms weigh at most ``weight_bound``.

    ``ground_terms`` is a :class:`~fixdom.terms.GroundTerms` enumerator.
    """
    vs = cc.variables()
    if not vs:
        return [cc]
    choices = [ground_terms.up_to(v.sort, weight_bound) for v in vs]
    return [
        cc.apply(Substitution(dict(zip(vs, combo))))
        for combo in itertools.product(*choices)
    ]


# canonical renaming -------------------------------------------------------------------


def _canonical_name(n: int) -> str:
    return ("x", "y", "z")[n] if n < 3 else f"x{n + 1}"


def _tie_groups(equations):
    decorated = sorted(
        ((tuple(sorted(_skeleton(t) for t in e.sides)), e) for e in equations),
        key=lambda pair: pair[0],
    )
    return [[e for _, e in group] for _, group in itertools.groupby(decorated, key=lambda p: p[0])]


def _readings(equation):
    """Side orders whose visiting order could affect the numbering."""
    s, t = equation.sides
    if _skeleton(s) == _skeleton(t) and s != t:
        return [(s, t), (t, s)]
    if _skeleton(s) <= _skeleton(t):
        return [(s, t)]
    return [(t, s)]


def _orderings(groups):
    """All orders of the equations consistent with the skeleton sort."""
    per_group = [list(itertools.permutations(g)) for g in groups]
    total = math.prod(len(p) for p in per_group)
    if total > _MAX_RENAMINGS:
        return [[e for g in groups for e in g]]
    return [[e for chunk in combo for e in chunk] for combo in itertools.product(*per_group)]


def _number(visit, names):
    for t in visit:
        for v in terms.variables(t):
            if v not in names and not v.existential:
                names[v] = Var(_canonical_name(len(names)), v.sort)


def canonicalize(constraint: Constraint, antecedent, succedent) -> ConstrainedClause:
    """The canonical variant of ``constraint ∥ antecedent → succedent``.

    Variables are numbered by first occurrence, constraint first. Among the
    equation orders that only differ on equations with the same shape, the
    variant with the smallest rendering is chosen.
    """
    ant_orders = _orderings(_tie_groups(antecedent))
    succ_orders = _orderings(_tie_groups(succedent))
    best, best_key = None, None
    budget = _MAX_RENAMINGS
    for ant in ant_orders:
        for succ in succ_orders:
            eqs = ant + succ
            reading_choices = [_readings(e) for e in eqs]
            if math.prod(len(r) for r in reading_choices) > budget:
                reading_choices = [r[:1] for r in reading_choices]
            for readings in itertools.product(*reading_choices):
                names = {}
                _number(constraint.terms, names)
                for pair in readings:
                    _number(pair, names)
                sigma = Substitution(names)
                candidate = ConstrainedClause(
                    constraint.map(sigma),
                    Clause.of(
                        (e.map(sigma) for e in antecedent), (e.map(sigma) for e in succedent)
                    ),
                )
                key = (
                    str(candidate.constraint),
                    tuple(_key(e) for e in candidate.antecedent),
                    tuple(_key(e) for e in candidate.succedent),
                )
                if best_key is None or key < best_key:
                    best, best_key = candidate, key
                budget -= 1
            if budget <= 0:
                return best
    return best
