"""Reduction orderings on terms and their extensions.

The term ordering is a Knuth-Bendix ordering by default, with a
lexicographic path ordering as the alternative. Both are total on ground
terms once the precedence is total. On top of the term ordering this module
provides the multiset extension, the ordering on equation occurrences (the
twofold multiset extension), clauses, constraints (pointwise) and
constrained clauses (lexicographic, constraint first).

"""

import enum
import logging
from collections import Counter
from typing import Callable, Dict, Optional, Sequence

from . import terms
from .clauses import ANTECEDENT, Clause, ConstrainedClause, Constraint, Equation
from .exceptions import OrderingError, PositionError, SortError
from .terms import TRUE, Var

logger = logging.getLogger(__name__)


class Comparison(enum.Enum):
    LT = "<"
    GT = ">"
    EQ = "="
    INCOMPARABLE = "?"

    def flip(self) -> "Comparison":
        return {
            Comparison.LT: Comparison.GT,
            Comparison.GT: Comparison.LT,
        }.get(self, self)

    def __str__(self):
        return self.value


LT, GT, EQ, INCOMPARABLE = (
    Comparison.LT,
    Comparison.GT,
    Comparison.EQ,
    Comparison.INCOMPARABLE,
)


class OrderingSpec:
    """A KBO or LPO over a signature.

    Parameters
    ----------

    signature : Signature
        The symbols to be ordered.

    kind : str
        ``"kbo"`` (default) or ``"lpo"``.

    precedence : Optional[Sequence[str]]
        Symbol names in increasing precedence. Symbols not listed are placed
        below the listed ones in declaration order. ``true`` is always the
        least symbol.

    weights : Optional[Dict[str, int]]
        KBO symbol weights, default 1. The key ``"$var"`` sets the variable
        weight.

    Raises
    ------

    OrderingError
        If the precedence names unknown symbols or the KBO weights are not
        admissible.

    """

    def __init__(self, signature, kind="kbo", precedence=None, weights=None):
        if kind not in {"kbo", "lpo"}:
            raise OrderingError(f"unknown ordering kind {kind!r}")
        self.signature = signature
        self.kind = kind
        weights = dict(weights or {})
        self.variable_weight = weights.pop("$var", 1)
        for name in weights:
            if name not in signature:
                raise OrderingError(f"weight given for unknown symbol {name!r}")
        self.weights = weights
        self.rank = self._ranks(signature, precedence or ())
        self._cache = {}
        if kind == "kbo":
            self._check_admissible()

    @staticmethod
    def _ranks(signature, precedence) -> Dict[str, int]:
        for name in precedence:
            if name not in signature:
                raise OrderingError(f"precedence mentions unknown symbol {name!r}")
        if len(set(precedence)) != len(precedence):
            raise OrderingError("precedence lists a symbol twice")
        unlisted = [n for n in signature.symbol_order if n not in precedence and n != TRUE]
        order = unlisted + [n for n in precedence if n != TRUE]
        rank = {name: i for i, name in enumerate(order)}
        rank[TRUE] = -1
        return rank

    def _check_admissible(self):
        if self.variable_weight < 1:
            raise OrderingError("the variable weight must be positive")
        top = max(self.rank, key=self.rank.get) if self.rank else None
        for f in self.signature.functions.values():
            w = self.symbol_weight(f.name)
            if w < 0:
                raise OrderingError(f"symbol {f.name!r} has negative weight")
            if f.arity == 0 and w < self.variable_weight:
                raise OrderingError(
                    f"constant {f.name!r} is lighter than the variable weight"
                )
            if f.arity == 1 and w == 0 and f.name != top:
                raise OrderingError(
                    f"unary symbol {f.name!r} of weight 0 must be maximal in the precedence"
                )

    # symbols ------------------------------------------------------------------------

    def symbol_weight(self, name: str) -> int:
        return self.weights.get(name, 1)

    def precedence(self, f: str, g: str) -> Comparison:
        if f == g:
            return EQ
        try:
            rf, rg = self.rank[f], self.rank[g]
        except KeyError as exc:
            raise OrderingError(f"symbol {exc.args[0]!r} has no precedence") from None
        return GT if rf > rg else LT

    @property
    def increasing_symbols(self):
        return sorted(self.rank, key=self.rank.get)

    def weight(self, t) -> int:
        if isinstance(t, Var):
            return self.variable_weight
        return self.symbol_weight(t.symbol) + sum(self.weight(a) for a in t.args)

    # terms --------------------------------------------------------------------------

    def compare(self, s, t) -> Comparison:
        """Compares two terms without checking their sorts."""
        if s == t:
            return EQ
        key = (s, t)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        if self.kind == "kbo":
            result = self._kbo(s, t)
        elif self._lpo_gt(s, t):
            result = GT
        elif self._lpo_gt(t, s):
            result = LT
        else:
            result = INCOMPARABLE
        if len(self._cache) > 200_000:
            self._cache.clear()
        self._cache[key] = result
        return result

    def compare_ground(self, s, t) -> int:
        """``cmp``-style comparison for sorting ground terms."""
        result = self.compare(s, t)
        if result is INCOMPARABLE:
            raise OrderingError(f"ground terms {s} and {t} are incomparable")
        return {LT: -1, EQ: 0, GT: 1}[result]

    def greater(self, s, t) -> bool:
        return self.compare(s, t) is GT

    def greater_or_equal(self, s, t) -> bool:
        return self.compare(s, t) in (GT, EQ)

    def _kbo(self, s, t) -> Comparison:
        if isinstance(s, Var):
            return LT if terms.occurs(s, t) else INCOMPARABLE
        if isinstance(t, Var):
            return GT if terms.occurs(t, s) else INCOMPARABLE
        vs = Counter(v for _, v in terms.positions(s) if isinstance(v, Var))
        vt = Counter(v for _, v in terms.positions(t) if isinstance(v, Var))
        s_covers = all(vs[x] >= n for x, n in vt.items())
        t_covers = all(vt[x] >= n for x, n in vs.items())
        ws, wt = self.weight(s), self.weight(t)
        if ws > wt:
            return GT if s_covers else INCOMPARABLE
        if ws < wt:
            return LT if t_covers else INCOMPARABLE
        if not s_covers and not t_covers:
            return INCOMPARABLE
        result = self.precedence(s.symbol, t.symbol)
        if result is EQ:
            for a, b in zip(s.args, t.args):
                result = self.compare(a, b)
                if result is not EQ:
                    break
        if result is GT:
            return GT if s_covers else INCOMPARABLE
        if result is LT:
            return LT if t_covers else INCOMPARABLE
        return INCOMPARABLE

    def _lpo_gt(self, s, t) -> bool:
        if isinstance(s, Var):
            return False
        if isinstance(t, Var):
            return terms.occurs(t, s)
        if any(a == t or self._lpo_gt(a, t) for a in s.args):
            return True
        result = self.precedence(s.symbol, t.symbol)
        if result is GT:
            return all(self._lpo_gt(s, b) for b in t.args)
        if result is EQ:
            for i, (a, b) in enumerate(zip(s.args, t.args)):
                if a != b:
                    return self._lpo_gt(a, b) and all(
                        self._lpo_gt(s, c) for c in t.args[i + 1 :]
                    )
        return False


def compare_terms(spec: OrderingSpec, s, t) -> Comparison:
    """Compares two terms of the same sort."""
    if s.sort != t.sort:
        raise SortError(f"cannot compare {s}:{s.sort} with {t}:{t.sort}")
    return spec.compare(s, t)


# extensions ===========================================================================


def compare_multisets(compare: Callable, M: Sequence, N: Sequence) -> Comparison:
    """Multiset extension of ``compare``.

    ``M`` is greater than ``N`` iff they differ and every element that occurs
    more often in ``N`` is dominated by some element occurring more often in
    ``M``.
    """
    rest_n = list(N)
    rest_m = []
    for m in M:
        for i, n in enumerate(rest_n):
            if m == n:
                del rest_n[i]
                break
        else:
            rest_m.append(m)
    if not rest_m and not rest_n:
        return EQ
    if _dominates(compare, rest_m, rest_n):
        return GT
    if _dominates(compare, rest_n, rest_m):
        return LT
    return INCOMPARABLE


def _dominates(compare, big, small) -> bool:
    return bool(big) and all(any(compare(b, s) is GT for b in big) for s in small)


def occurrence(side: str, equation: Equation) -> tuple:
    """The multiset-of-multisets encoding of an equation occurrence.

    An antecedent occurrence of ``s ≈ t`` is ``{{s, t}}``, a succedent
    occurrence is ``{{s}, {t}}``.
    """
    if side == ANTECEDENT:
        return ((equation.lhs, equation.rhs),)
    return ((equation.lhs,), (equation.rhs,))


def compare_equation_occurrences(spec: OrderingSpec, occ1: tuple, occ2: tuple) -> Comparison:
    """Compares occurrences built by :func:`occurrence`."""
    inner = lambda a, b: compare_multisets(spec.compare, a, b)
    return compare_multisets(inner, occ1, occ2)


def _occurrences(clause: Clause):
    return [(side, i, occurrence(side, e)) for side, i, e in clause.occurrences()]


def compare_clauses(spec: OrderingSpec, C: Clause, D: Clause) -> Comparison:
    occs = lambda c: [o for _, _, o in _occurrences(c)]
    compare = lambda a, b: compare_equation_occurrences(spec, a, b)
    return compare_multisets(compare, occs(C), occs(D))


def compare_constraints(spec: OrderingSpec, alpha: Constraint, beta: Constraint) -> Comparison:
    """Pointwise comparison of two constraints over the same spine."""
    alpha.check_spine(beta)
    results = {spec.compare(s, t) for s, t in zip(alpha.terms, beta.terms)}
    if results <= {EQ}:
        return EQ
    if results <= {EQ, LT}:
        return LT
    if results <= {EQ, GT}:
        return GT
    return INCOMPARABLE


def compare_constrained_clauses(
    spec: OrderingSpec, cc1: ConstrainedClause, cc2: ConstrainedClause
) -> Comparison:
    result = compare_constraints(spec, cc1.constraint, cc2.constraint)
    if result is EQ:
        return compare_clauses(spec, cc1.clause, cc2.clause)
    return result


# maximality ---------------------------------------------------------------------------


def _others(clause: Clause, side: str, index: int):
    occs = _occurrences(clause)
    target = None
    for s, i, o in occs:
        if s == side and i == index:
            target = o
    if target is None:
        raise PositionError(f"clause {clause} has no {side} occurrence {index}")
    return target, [o for s, i, o in occs if (s, i) != (side, index)]


def is_maximal_in(spec: OrderingSpec, clause: Clause, side: str, index: int) -> bool:
    """No other occurrence of the clause is strictly greater."""
    if clause.is_empty:
        return False
    target, others = _others(clause, side, index)
    return all(compare_equation_occurrences(spec, o, target) is not GT for o in others)


def is_strictly_maximal_in(spec: OrderingSpec, clause: Clause, side: str, index: int) -> bool:
    """No other occurrence of the clause is greater or equal."""
    if clause.is_empty:
        return False
    target, others = _others(clause, side, index)
    return all(
        compare_equation_occurrences(spec, o, target) not in (GT, EQ) for o in others
    )


def from_config(signature, config) -> OrderingSpec:
    """Builds the ordering named by a :class:`~fixdom.config.Config`."""
    return OrderingSpec(
        signature, kind=config.ordering, precedence=config.precedence, weights=config.weights
    )
