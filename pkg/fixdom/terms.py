"""Signatures, sorted terms, positions, substitutions and unification.

Terms are immutable values built from two classes: :class:`Var` for variables
and :class:`App` for function applications. Every term carries its sort, so
sort checks never need the signature once a term has been built.

Variables come in two kinds. Universal variables are the ordinary clause
variables that unification binds. Existential variables form the finite set
``V`` shared by a whole problem; they only ever appear on the left of
constraint equations and are never bound by unification.

Predicates are encoded equationally: a predicate symbol ``P`` is a function
symbol of the reserved sort :data:`PREDICATE_SORT`, and the atom ``P(a)``
stands for the equation ``P(a) ≈ true``.

"""

import itertools
import logging
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .exceptions import (
    OrderingError,
    PositionError,
    SignatureError,
    SortError,
    UnificationError,
)

logger = logging.getLogger(__name__)

PREDICATE_SORT = "$o"
TRUE = "true"

Position = Tuple[int, ...]
ROOT: Position = ()


# terms ================================================================================


@dataclass(frozen=True)
class Var:
    """A sorted variable, universal unless ``existential`` is set."""

    name: str
    sort: str
    existential: bool = False

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    """Application of a function symbol to a tuple of argument terms."""

    symbol: str
    args: tuple
    sort: str

    def __str__(self):
        if not self.args:
            return self.symbol
        return f"{self.symbol}({','.join(str(a) for a in self.args)})"


def is_var(t) -> bool:
    return isinstance(t, Var)


def variables(t) -> List[Var]:
    """Variables of ``t`` in order of first occurrence, left to right."""
    seen = {}
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            seen.setdefault(u, None)
        else:
            stack.extend(reversed(u.args))
    return list(seen)


def variables_of(terms: Iterable) -> List[Var]:
    seen = {}
    for t in terms:
        for v in variables(t):
            seen.setdefault(v, None)
    return list(seen)


def is_ground(t) -> bool:
    if isinstance(t, Var):
        return False
    return all(is_ground(a) for a in t.args)


def size(t) -> int:
    """Number of symbol and variable occurrences."""
    if isinstance(t, Var):
        return 1
    return 1 + sum(size(a) for a in t.args)


def depth(t) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(depth(a) for a in t.args)


def symbols(t) -> List[str]:
    found = []
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, App):
            found.append(u.symbol)
            stack.extend(u.args)
    return found


def occurs(v: Var, t) -> bool:
    if isinstance(t, Var):
        return t == v
    return any(occurs(v, a) for a in t.args)


# positions ----------------------------------------------------------------------------


def positions(t) -> Iterator[Tuple[Position, object]]:
    """Yields ``(position, subterm)`` pairs in pre-order, root first."""
    stack = [(ROOT, t)]
    while stack:
        p, u = stack.pop()
        yield p, u
        if isinstance(u, App):
            for i in range(len(u.args), 0, -1):
                stack.append((p + (i,), u.args[i - 1]))


def subterm_at(t, p: Position):
    """Returns ``t|_p``.

    Raises
    ------

    PositionError
        If ``p`` does not address a subterm of ``t``.

    """
    u = t
    for i in p:
        if isinstance(u, Var) or not 1 <= i <= len(u.args):
            raise PositionError(f"position {list(p)} is not valid in {t}")
        u = u.args[i - 1]
    return u


def replace_at(t, p: Position, r):
    """Returns ``t[r]_p``."""
    old = subterm_at(t, p)
    if old.sort != r.sort:
        raise SortError(f"cannot replace {old} of sort {old.sort} by {r} of sort {r.sort}")
    return _replace(t, p, r)


def _replace(t, p, r):
    if not p:
        return r
    i = p[0]
    args = list(t.args)
    args[i - 1] = _replace(args[i - 1], p[1:], r)
    return App(t.symbol, tuple(args), t.sort)


# signatures ===========================================================================


@dataclass(frozen=True)
class FunctionSymbol:
    name: str
    arg_sorts: tuple
    sort: str

    @property
    def arity(self):
        return len(self.arg_sorts)

    @property
    def is_predicate(self):
        return self.sort == PREDICATE_SORT


class Signature:
    """A many-sorted signature with predicative extension.

    Function and predicate symbols share one namespace and remember their
    declaration order, which the default precedence is derived from. The
    constant ``true`` of the predicative sort is added together with the
    first predicate symbol.

    """

    def __init__(self, sorts: Iterable[str] = ()):
        self.sorts: List[str] = []
        self.functions: Dict[str, FunctionSymbol] = {}
        for sort in sorts:
            self.add_sort(sort)

    # declarations ---------------------------------------------------------------------

    def add_sort(self, name: str):
        if name == PREDICATE_SORT:
            raise SignatureError(f"sort name {name!r} is reserved")
        if name not in self.sorts:
            self.sorts.append(name)
        return self

    def add_function(self, name: str, arg_sorts: Sequence[str], sort: str):
        if name in self.functions or name == TRUE:
            raise SignatureError(f"symbol {name!r} is declared twice")
        for s in list(arg_sorts) + [sort]:
            if s not in self.sorts:
                raise SignatureError(f"unknown sort {s!r} in declaration of {name!r}")
        self.functions[name] = FunctionSymbol(name, tuple(arg_sorts), sort)
        return self

    def add_predicate(self, name: str, arg_sorts: Sequence[str] = ()):
        if name in self.functions or name == TRUE:
            raise SignatureError(f"symbol {name!r} is declared twice")
        for s in arg_sorts:
            if s not in self.sorts:
                raise SignatureError(f"unknown sort {s!r} in declaration of {name!r}")
        if TRUE not in self.functions:
            self.functions[TRUE] = FunctionSymbol(TRUE, (), PREDICATE_SORT)
        self.functions[name] = FunctionSymbol(name, tuple(arg_sorts), PREDICATE_SORT)
        return self

    def copy(self) -> "Signature":
        other = Signature()
        other.sorts = list(self.sorts)
        other.functions = dict(self.functions)
        return other

    def restrict(self, names: Iterable[str]) -> "Signature":
        """The sub-signature with the given function symbols and all sorts."""
        names = set(names)
        unknown = names - set(self.functions)
        if unknown:
            raise SignatureError(f"unknown symbols {sorted(unknown)}")
        other = Signature()
        other.sorts = list(self.sorts)
        other.functions = {n: f for n, f in self.functions.items() if n in names}
        return other

    # queries --------------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return self.sorts == other.sorts and list(self.functions.items()) == list(
            other.functions.items()
        )

    __hash__ = None

    def __contains__(self, name):
        return name in self.functions

    def __getitem__(self, name) -> FunctionSymbol:
        try:
            return self.functions[name]
        except KeyError:
            raise SignatureError(f"undeclared symbol {name!r}") from None

    @property
    def symbol_order(self) -> List[str]:
        """Symbol names in declaration order."""
        return list(self.functions)

    @property
    def predicates(self) -> List[FunctionSymbol]:
        return [f for f in self.functions.values() if f.is_predicate and f.name != TRUE]

    @property
    def term_functions(self) -> List[FunctionSymbol]:
        return [f for f in self.functions.values() if not f.is_predicate]

    def constructors(self, sort: str) -> List[FunctionSymbol]:
        """Function symbols with result ``sort`` in declaration order."""
        return [f for f in self.functions.values() if f.sort == sort]

    def check_inhabited(self, sorts: Optional[Iterable[str]] = None):
        """Raises unless every sort has a ground term."""
        inhabited = self.inhabited_sorts()
        for sort in sorts if sorts is not None else self.sorts:
            if sort not in inhabited:
                raise SignatureError(f"sort {sort!r} has no ground terms")
        return self

    def inhabited_sorts(self) -> set:
        inhabited = set()
        changed = True
        while changed:
            changed = False
            for f in self.functions.values():
                if f.sort not in inhabited and all(s in inhabited for s in f.arg_sorts):
                    inhabited.add(f.sort)
                    changed = True
        return inhabited

    def is_finite_sort(self, sort: str) -> bool:
        """Whether ``sort`` has only finitely many ground terms."""
        return sort in self._finite_sorts()

    def _finite_sorts(self) -> set:
        inhabited = self.inhabited_sorts()
        finite = set()
        changed = True
        while changed:
            changed = False
            for sort in inhabited:
                if sort in finite:
                    continue
                usable = [
                    f
                    for f in self.constructors(sort)
                    if all(s in inhabited for s in f.arg_sorts)
                ]
                if all(all(s in finite for s in f.arg_sorts) for f in usable):
                    finite.add(sort)
                    changed = True
        return finite

    # term construction ----------------------------------------------------------------

    def app(self, name: str, *args):
        """Builds ``name(args)`` after checking arity and sorts."""
        f = self[name]
        if len(args) != f.arity:
            raise SortError(f"{name} expects {f.arity} arguments, got {len(args)}")
        for i, (a, s) in enumerate(zip(args, f.arg_sorts), start=1):
            if a.sort != s:
                raise SortError(f"argument {i} of {name} must have sort {s}, not {a.sort}")
        return App(name, tuple(args), f.sort)

    def const(self, name: str):
        return self.app(name)

    def true(self):
        return App(TRUE, (), PREDICATE_SORT)


# substitutions ========================================================================


class Substitution:
    """A substitution with an explicit domain.

    The domain may contain variables the substitution maps to themselves;
    two substitutions are equal when domain and mapping agree.

    """

    __slots__ = ("_map", "domain")

    def __init__(self, mapping=None, domain: Optional[Iterable[Var]] = None):
        mapping = dict(mapping or {})
        for v, t in mapping.items():
            if v.sort != t.sort:
                raise SortError(f"cannot map {v}:{v.sort} to {t}:{t.sort}")
            if t.sort == PREDICATE_SORT:
                raise SortError("substitutions never map into the predicative sort")
        self.domain = frozenset(mapping) | frozenset(domain or ())
        self._map = {v: t for v, t in mapping.items() if v != t}

    def __call__(self, t):
        return self.apply(t)

    def __getitem__(self, v: Var):
        return self._map.get(v, v)

    def __contains__(self, v):
        return v in self.domain

    def __eq__(self, other):
        if not isinstance(other, Substitution):
            return NotImplemented
        return self.domain == other.domain and self._map == other._map

    def __hash__(self):
        return hash((self.domain, frozenset(self._map.items())))

    def __repr__(self):
        entries = sorted(self.domain, key=lambda v: v.name)
        body = ", ".join(f"{v} ↦ {self[v]}" for v in entries)
        return "{" + body + "}"

    def items(self):
        return [(v, self[v]) for v in self.domain]

    @property
    def bindings(self) -> Dict[Var, object]:
        """The non-identity part of the mapping."""
        return dict(self._map)

    def apply(self, t):
        if not self._map:
            return t
        return _apply(self._map, t)

    def compose(self, other: "Substitution") -> "Substitution":
        """The substitution ``self`` followed by ``other``."""
        domain = self.domain | other.domain
        mapping = {v: other.apply(self.apply(v)) for v in domain}
        return Substitution(mapping, domain)

    def restrict(self, vs: Iterable[Var]) -> "Substitution":
        vs = frozenset(vs)
        return Substitution({v: self[v] for v in self.domain & vs}, self.domain & vs)

    def is_renaming(self) -> bool:
        images = [self[v] for v in self.domain]
        return all(isinstance(t, Var) for t in images) and len(set(images)) == len(images)


def _apply(mapping, t):
    if isinstance(t, Var):
        return mapping.get(t, t)
    if not t.args:
        return t
    return App(t.symbol, tuple(_apply(mapping, a) for a in t.args), t.sort)


def apply(sigma: Substitution, t):
    return sigma.apply(t)


# unification ==========================================================================


def _check_unifiable(pairs):
    for s, t in pairs:
        if s.sort != t.sort:
            raise SortError(f"cannot unify {s}:{s.sort} with {t}:{t.sort}")
        for v in variables(s) + variables(t):
            if v.existential:
                raise UnificationError(f"existential variable {v} cannot be unified")


def _walk(t, binding):
    while isinstance(t, Var) and t in binding:
        t = binding[t]
    return t


def _occurs(v, t, binding):
    stack = [t]
    while stack:
        u = _walk(stack.pop(), binding)
        if isinstance(u, Var):
            if u == v:
                return True
        else:
            stack.extend(u.args)
    return False


def _resolve(t, binding):
    t = _walk(t, binding)
    if isinstance(t, Var) or not t.args:
        return t
    return App(t.symbol, tuple(_resolve(a, binding) for a in t.args), t.sort)


def _solve(pairs):
    binding = {}
    stack = list(pairs)
    while stack:
        s, t = stack.pop()
        s = _walk(s, binding)
        t = _walk(t, binding)
        if s == t:
            continue
        if isinstance(s, Var):
            if _occurs(s, t, binding):
                return None
            binding[s] = t
        elif isinstance(t, Var):
            if _occurs(t, s, binding):
                return None
            binding[t] = s
        elif s.symbol != t.symbol or len(s.args) != len(t.args):
            return None
        else:
            stack.extend(zip(s.args, t.args))
    return binding


def simultaneous_mgu(pairs: Sequence[Tuple[object, object]]) -> Optional[Substitution]:
    """Most general simultaneous unifier of all pairs, or ``None``.

    The result is idempotent and its domain is the set of variables occurring
    in the pairs.
    """
    pairs = list(pairs)
    _check_unifiable(pairs)
    binding = _solve(pairs)
    if binding is None:
        return None
    domain = variables_of(t for pair in pairs for t in pair)
    return Substitution({v: _resolve(v, binding) for v in domain}, domain)


def mgu(s, t) -> Optional[Substitution]:
    """Most general unifier of ``s`` and ``t``, or ``None``."""
    return simultaneous_mgu([(s, t)])


def match(pattern, target, binding: Optional[dict] = None) -> Optional[dict]:
    """One-sided unifier: a mapping ``θ`` with ``pattern θ = target``.

    Variables of ``target`` are treated as constants. Returns ``None`` when no
    such mapping exists.
    """
    binding = dict(binding or {})
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            bound = binding.get(p)
            if bound is None:
                if p.sort != t.sort:
                    return None
                binding[p] = t
            elif bound != t:
                return None
        elif isinstance(t, Var) or p.symbol != t.symbol or len(p.args) != len(t.args):
            return None
        else:
            stack.extend(zip(p.args, t.args))
    return binding


def match_all(pairs: Iterable[Tuple[object, object]], binding: Optional[dict] = None):
    binding = dict(binding or {})
    for p, t in pairs:
        binding = match(p, t, binding)
        if binding is None:
            return None
    return binding


# fresh variables ----------------------------------------------------------------------

# next() on itertools.count is atomic under the GIL
_fresh_counter = itertools.count(1)


def fresh_variable(sort: str, prefix: str = "_") -> Var:
    return Var(f"{prefix}{next(_fresh_counter)}", sort)


def renaming(vs: Iterable[Var]) -> Substitution:
    """Maps each universal variable in ``vs`` to a fresh one."""
    vs = [v for v in vs if not v.existential]
    return Substitution({v: fresh_variable(v.sort) for v in vs}, vs)


# ground term enumeration ==============================================================


class GroundTerms:
    """Enumerates the ground terms of a signature by weight.

    A symbol of weight 0 counts as 1 during enumeration so that every weight
    class stays finite. With such a symbol the enumeration order no longer
    follows the KBO weights, and ``exact`` is false.

    Parameters
    ----------

    signature : Signature
        Only its non-predicate symbols are used.

    weight_of : Callable[[str], int]
        Weight of a function symbol. Must not be negative.

    """

    def __init__(self, signature: Signature, weight_of: Callable[[str], int] = lambda f: 1):
        self.signature = signature
        self.weight_of = weight_of
        for f in signature.term_functions:
            if weight_of(f.name) < 0:
                raise OrderingError(
                    f"symbol {f.name!r} has weight {weight_of(f.name)}; "
                    "ground enumeration needs non-negative weights"
                )
        self.exact = all(weight_of(f.name) > 0 for f in signature.term_functions)
        self._cache = {}

    def cost(self, name: str) -> int:
        return max(self.weight_of(name), 1)

    def of_weight(self, sort: str, w: int) -> Tuple:
        key = (sort, w)
        if key not in self._cache:
            self._cache[key] = tuple(self._generate(sort, w))
        return self._cache[key]

    def _generate(self, sort, w):
        for f in self.signature.constructors(sort):
            rest = w - self.cost(f.name)
            if rest < 0:
                continue
            if not f.arg_sorts:
                if rest == 0:
                    yield App(f.name, (), sort)
                continue
            for args in self._tuples(f.arg_sorts, rest):
                yield App(f.name, args, sort)

    def _tuples(self, sorts, w):
        if len(sorts) == 1:
            for t in self.of_weight(sorts[0], w):
                yield (t,)
            return
        for first in range(1, w - len(sorts) + 2):
            heads = self.of_weight(sorts[0], first)
            if not heads:
                continue
            for rest in self._tuples(sorts[1:], w - first):
                for h in heads:
                    yield (h,) + rest

    def up_to(self, sort: str, bound: int) -> List:
        """All ground terms of ``sort`` with weight at most ``bound``."""
        terms = []
        for w in range(1, bound + 1):
            terms.extend(self.of_weight(sort, w))
        return terms

    def weight(self, t) -> int:
        return self.cost(t.symbol) + sum(self.weight(a) for a in t.args)


def enumerate_ground(signature: Signature, sort: str, weight_bound: int, ordering) -> List:
    """Ground terms of ``sort`` up to ``weight_bound`` in increasing order.

    ``ordering`` is an :class:`~fixdom.ordering.OrderingSpec`; its symbol
    weights define the bound, with weight 0 counted as 1, and its comparison
    defines the order.
    """
    if sort not in signature.inhabited_sorts():
        raise SignatureError(f"sort {sort!r} has no ground terms")
    terms = GroundTerms(signature, ordering.symbol_weight).up_to(sort, weight_bound)
    return sorted(terms, key=cmp_to_key(ordering.compare_ground))
