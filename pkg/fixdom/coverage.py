"""Coverage of constraint sets and the minimal uncovered constraint.

A finite set ``A`` of constraints over the spine ``v1..vn`` covers the
signature if every ground constraint is an instance of one of its members.
The complement of ``A`` is computed as a solved form: a list of blocks, each
a tuple of terms (one per existential variable) with disequations between a
variable and a term. ``A`` is covering exactly when no block remains.

The complement is built by repeatedly subtracting one pattern from every
block. Subtraction either keeps a block that is disjoint from the pattern,
drops a block that is an instance of it, or splits the block by expanding a
variable over the constructors of its sort or by deciding whether two
variables are identified.

"""

import itertools
import logging
from dataclasses import dataclass
from functools import cmp_to_key
from typing import List, Optional, Sequence, Tuple

from . import terms
from .clauses import Constraint
from .exceptions import CoverageError, InconclusiveWitnessError
from .terms import App, GroundTerms, Signature, Substitution, Var

logger = logging.getLogger(__name__)

# total component weight after which the witness search is abandoned
MAX_WITNESS_WEIGHT = 64

# extra weight levels scanned for a witness that may not be minimal
INEXACT_WINDOW = 2


def coverage_signature(signature: Signature, constructors: Optional[Sequence[str]] = None):
    """The signature ground constraints are built over.

    By default all non-predicate symbols. A ``constructors`` list restricts it
    to the named symbols, which must then inhabit every sort.
    """
    if constructors is None:
        names = [f.name for f in signature.term_functions]
    else:
        names = list(constructors)
        for name in names:
            if signature[name].is_predicate:
                raise CoverageError(f"predicate {name!r} cannot be a constructor")
    return signature.restrict(names)


# blocks ===============================================================================


def _disequation_options(s, t):
    """``s ≉ t`` as a disjunction of ``x ≉ u`` atoms.

    Returns ``None`` if it always holds and an empty list if it never does.
    """
    sigma = terms.mgu(s, t)
    if sigma is None:
        return None
    bindings = sigma.bindings
    if not bindings:
        return []
    return sorted(bindings.items(), key=lambda a: (a[0].name, str(a[1])))


def _atom_key(atom):
    return (str(atom[0]), str(atom[1]))


@dataclass(frozen=True)
class Block:
    """Ground constraints ``(t1, .., tn)θ`` with ``xθ ≠ uθ`` for each disequation."""

    terms: tuple
    disequations: tuple = ()

    @staticmethod
    def make(ts, disequations=()) -> List["Block"]:
        """Normalizes the disequations, splitting disjunctions into blocks."""
        choices = [[]]
        for s, t in disequations:
            options = _disequation_options(s, t)
            if options is None:
                continue
            if not options:
                return []
            choices = [atoms + [o] for atoms in choices for o in options]
        return [
            Block(tuple(ts), tuple(sorted(set(atoms), key=_atom_key))) for atoms in choices
        ]

    def variables(self) -> List[Var]:
        return terms.variables_of(self.terms)

    def apply(self, sigma: Substitution) -> List["Block"]:
        return Block.make(
            [sigma(t) for t in self.terms],
            [(sigma(x), sigma(t)) for x, t in self.disequations],
        )

    def separates(self, x: Var, y: Var) -> bool:
        return any({a, b} == {x, y} for a, b in self.disequations)

    def contains(self, ground: Sequence) -> bool:
        binding = terms.match_all(zip(self.terms, ground))
        if binding is None:
            return False
        theta = Substitution(binding)
        return all(theta(x) != theta(t) for x, t in self.disequations)

    def solution(self, signature: Signature, bound: int = 8) -> Optional[tuple]:
        """Some ground constraint in the block, searching variable values by weight."""
        vs = self.variables()
        enumerator = GroundTerms(signature)
        choices = [enumerator.up_to(v.sort, bound) for v in vs]
        for combo in itertools.product(*choices):
            theta = Substitution(dict(zip(vs, combo)))
            if all(theta(x) != theta(t) for x, t in self.disequations):
                return tuple(theta(t) for t in self.terms)
        return None

    def canonical(self) -> "Block":
        names = {}
        for t in self.terms:
            for v in terms.variables(t):
                names.setdefault(v, Var(_name(len(names)), v.sort))
        sigma = Substitution(names)
        return Block(
            tuple(sigma(t) for t in self.terms),
            tuple(sorted(((sigma(x), sigma(t)) for x, t in self.disequations), key=_atom_key)),
        )

    def render(self, spine) -> str:
        block = self.canonical()
        parts = [f"{v}≈{t}" for v, t in zip(spine, block.terms)]
        parts += [f"{x}≉{t}" for x, t in block.disequations]
        return ", ".join(parts)


def _name(n):
    return ("x", "y", "z")[n] if n < 3 else f"x{n + 1}"


def _explode(block: Block, x: Var, signature: Signature) -> List[Block]:
    result = []
    for f in signature.constructors(x.sort):
        args = tuple(terms.fresh_variable(s) for s in f.arg_sorts)
        result.extend(block.apply(Substitution({x: App(f.name, args, x.sort)})))
    return result


def _fresh_pattern(pattern: Sequence) -> tuple:
    sigma = terms.renaming(terms.variables_of(pattern))
    return tuple(sigma(t) for t in pattern)


def _difference(block: Block, pattern: tuple, signature: Signature) -> List[Block]:
    """Blocks covering exactly the ground constraints of ``block`` that are not
    instances of ``pattern``."""
    result = []
    work = [block]
    while work:
        b = work.pop()
        if terms.match_all(zip(pattern, b.terms)) is not None:
            continue
        sigma = terms.simultaneous_mgu(list(zip(b.terms, pattern)))
        if sigma is None:
            result.append(b)
            continue
        bvars = b.variables()
        x = next((v for v in bvars if not isinstance(sigma[v], Var)), None)
        if x is not None:
            work.extend(_explode(b, x, signature))
            continue
        classes = {}
        for v in bvars:
            classes.setdefault(sigma[v], []).append(v)
        pairs = [p for group in classes.values() for p in itertools.combinations(group, 2)]
        if not pairs:
            raise CoverageError(f"pattern {pattern} neither matches nor splits {b.terms}")
        if any(b.separates(a, c) for a, c in pairs):
            result.append(b)
            continue
        a, c = pairs[0]
        work.extend(Block.make(b.terms, b.disequations + ((a, c),)))
        work.extend(b.apply(Substitution({c: a})))
    return result


def _settle(block: Block, signature: Signature) -> List[Block]:
    """Expands finite-sort variables occurring in disequations."""
    done = []
    work = [block]
    while work:
        b = work.pop()
        finite = [
            v
            for x, t in b.disequations
            for v in [x] + terms.variables(t)
            if signature.is_finite_sort(v.sort)
        ]
        if finite:
            work.extend(_explode(b, finite[0], signature))
        else:
            done.append(b)
    return done


def _unifies_with_any(ts, patterns) -> bool:
    for pattern in patterns:
        if terms.simultaneous_mgu(list(zip(ts, _fresh_pattern(pattern)))) is not None:
            return True
    return False


def _widen(block: Block, patterns) -> Block:
    """Replaces subterms by fresh variables while no pattern unifies."""
    if _unifies_with_any(block.terms, patterns):
        return block
    ts = list(block.terms)
    changed = True
    while changed:
        changed = False
        for i, t in enumerate(ts):
            for p, sub in terms.positions(t):
                if isinstance(sub, Var):
                    continue
                trial = list(ts)
                trial[i] = terms.replace_at(t, p, terms.fresh_variable(sub.sort))
                if not _unifies_with_any(trial, patterns):
                    ts = trial
                    changed = True
                    break
            if changed:
                break
    return Block(tuple(ts))


def _subsumes(b1: Block, b2: Block) -> bool:
    return not b1.disequations and terms.match_all(zip(b1.terms, b2.terms)) is not None


def _prune(blocks: List[Block]) -> List[Block]:
    kept = []
    for b in dict.fromkeys(b.canonical() for b in blocks):
        if any(_subsumes(o, b) for o in kept):
            continue
        kept = [o for o in kept if not _subsumes(b, o)] + [b]
    return kept


# problems and solved forms ============================================================


@dataclass(frozen=True)
class DisunificationProblem:
    """The patterns ``A`` whose complement is sought, over a common spine."""

    spine: tuple
    patterns: tuple

    @staticmethod
    def of(spine, constraints) -> "DisunificationProblem":
        patterns = []
        for alpha in constraints:
            if tuple(alpha.spine) != tuple(spine):
                raise CoverageError(f"constraint {alpha} is not over the spine {list(spine)}")
            patterns.append(tuple(alpha.terms))
        return DisunificationProblem(tuple(spine), tuple(dict.fromkeys(patterns)))


@dataclass(frozen=True)
class SolvedForm:
    """The complement of a pattern set as a disjunction of blocks."""

    spine: tuple
    blocks: tuple

    @property
    def is_empty(self) -> bool:
        return not self.blocks

    def contains(self, ground: Sequence) -> bool:
        return any(b.contains(ground) for b in self.blocks)

    def render(self) -> str:
        if not self.blocks:
            return "none"
        return "  |  ".join(b.render(self.spine) for b in self.blocks)

    def __str__(self):
        return self.render()


def quantifier_elimination(problem: DisunificationProblem, signature: Signature) -> SolvedForm:
    """Computes the complement of ``problem.patterns`` over ``signature``.

    ``signature`` is the coverage signature, see :func:`coverage_signature`.
    """
    for v in problem.spine:
        if v.sort not in signature.inhabited_sorts():
            raise CoverageError(f"sort {v.sort!r} of {v} has no ground terms")
    blocks = [Block(tuple(terms.fresh_variable(v.sort) for v in problem.spine))]
    for pattern in problem.patterns:
        pattern = _fresh_pattern(pattern)
        blocks = [r for b in blocks for r in _difference(b, pattern, signature)]
        if not blocks:
            break
    blocks = [s for b in blocks for s in _settle(b, signature)]
    blocks = _prune([_widen(b, problem.patterns) for b in blocks])
    logger.debug("complement of %d patterns has %d blocks", len(problem.patterns), len(blocks))
    return SolvedForm(problem.spine, tuple(blocks))


def _spine_of(A, spine):
    if spine is not None:
        return tuple(spine)
    A = list(A)
    if not A:
        raise CoverageError("the spine of an empty constraint set must be given")
    return A[0].spine


def is_covering(A, signature: Signature, spine=None) -> bool:
    """Whether every ground constraint is an instance of a member of ``A``."""
    spine = _spine_of(A, spine)
    return quantifier_elimination(DisunificationProblem.of(spine, A), signature).is_empty


def is_instance(alpha: Constraint, gamma: Sequence) -> bool:
    """Whether the ground tuple ``gamma`` is an instance of ``alpha``."""
    return terms.match_all(zip(alpha.terms, gamma)) is not None


# witnesses ============================================================================


def _priority(spine, tiebreak) -> List[int]:
    if tiebreak == "declaration" or tiebreak is None:
        return list(range(len(spine)))
    names = [v.name for v in spine]
    unknown = [n for n in tiebreak if n not in names]
    if unknown:
        raise CoverageError(f"tie-break names unknown existential variables {unknown}")
    first = [names.index(n) for n in tiebreak]
    return first + [i for i in range(len(spine)) if i not in first]


def _lexicographic(ordering, priority):
    def compare(g1, g2):
        for i in priority:
            c = ordering.compare_ground(g1[i], g2[i])
            if c:
                return c
        return 0

    return cmp_to_key(compare)


def _tuples_of_weight(enumerator: GroundTerms, sorts, w):
    if not sorts:
        if w == 0:
            yield ()
        return
    if len(sorts) == 1:
        for t in enumerator.of_weight(sorts[0], w):
            yield (t,)
        return
    for first in range(1, w - len(sorts) + 2):
        heads = enumerator.of_weight(sorts[0], first)
        if not heads:
            continue
        for rest in _tuples_of_weight(enumerator, sorts[1:], w - first):
            for h in heads:
                yield (h,) + rest


def _levels(enumerator: GroundTerms, sorts, start=0):
    for w in range(start, MAX_WITNESS_WEIGHT + 1):
        yield w, list(_tuples_of_weight(enumerator, sorts, w))


def minimal_uncovered(
    A, signature: Signature, ordering, tiebreak="declaration", spine=None, strict=False
) -> Constraint:
    """The ≺-minimal ground constraint that is no instance of a member of ``A``.

    Candidates are enumerated by total weight and, within a weight, compared
    lexicographically in the tie-break order. Under a KBO with positive
    weights this yields a pointwise minimal witness. Under an LPO, or a KBO
    with a symbol of weight 0, a few more weight levels are scanned and the
    result is not guaranteed minimal.

    Raises
    ------

    CoverageError
        If ``A`` is covering or no witness is found up to
        :data:`MAX_WITNESS_WEIGHT`.

    InconclusiveWitnessError
        If ``strict`` is set and the witness may not be minimal.

    """
    spine = _spine_of(A, spine)
    complement = quantifier_elimination(DisunificationProblem.of(spine, A), signature)
    if complement.is_empty:
        raise CoverageError("the constraint set is covering")
    return _search_witness(complement, signature, ordering, tiebreak, strict)


def _is_exact(enumerator: GroundTerms, ordering) -> bool:
    return ordering.kind == "kbo" and enumerator.exact


def _search_witness(complement: SolvedForm, signature, ordering, tiebreak, strict):
    spine = complement.spine
    enumerator = GroundTerms(signature, ordering.symbol_weight)
    exact = _is_exact(enumerator, ordering)
    if not exact:
        if strict:
            raise InconclusiveWitnessError(
                "the minimal uncovered constraint is only exact under a KBO with positive weights"
            )
        logger.warning("the minimal uncovered constraint is not exact under this %s", ordering.kind)
    key = _lexicographic(ordering, _priority(spine, tiebreak))
    sorts = [v.sort for v in spine]
    found, last = [], None
    for w, level in _levels(enumerator, sorts):
        if last is not None and w > last:
            break
        found.extend(g for g in level if complement.contains(g))
        if found and last is None:
            last = w if exact else w + INEXACT_WINDOW
    if not found:
        raise CoverageError(
            f"no uncovered constraint of weight at most {MAX_WITNESS_WEIGHT} was found"
        )
    return Constraint.of(spine, min(found, key=key))


@dataclass(frozen=True)
class CoverageResult:
    """Outcome of a coverage check.

    ``witness`` and ``complement`` are only set when not covering. ``exact``
    is false when the witness may not be minimal.
    """

    covering: bool
    witness: Optional[Constraint] = None
    complement: Optional[SolvedForm] = None
    exact: bool = True


def check_coverage(
    A, signature: Signature, ordering, tiebreak="declaration", spine=None, strict=False
) -> CoverageResult:
    spine = _spine_of(A, spine)
    complement = quantifier_elimination(DisunificationProblem.of(spine, A), signature)
    if complement.is_empty:
        return CoverageResult(True)
    witness = _search_witness(complement, signature, ordering, tiebreak, strict)
    exact = _is_exact(GroundTerms(signature, ordering.symbol_weight), ordering)
    return CoverageResult(False, witness, complement, exact=exact)


@dataclass(frozen=True)
class OracleResult:
    witness: Optional[Constraint]
    bound: int

    @property
    def all_covered(self) -> bool:
        return self.witness is None


def brute_force_covering(
    A, signature: Signature, weight_bound: int, ordering, tiebreak="declaration", spine=None
) -> OracleResult:
    """Enumerates ground constraints with component weights up to ``weight_bound``
    and returns the first that is no instance of a member of ``A``."""
    A = list(A)
    spine = _spine_of(A, spine)
    key = _lexicographic(ordering, _priority(spine, tiebreak))
    enumerator = GroundTerms(signature, ordering.symbol_weight)
    sorts = [v.sort for v in spine]
    for w in range(0, weight_bound * len(sorts) + 1):
        level = [
            g
            for g in _tuples_of_weight(enumerator, sorts, w)
            if all(enumerator.weight(t) <= weight_bound for t in g)
        ]
        uncovered = [g for g in level if not any(is_instance(a, g) for a in A)]
        if uncovered:
            return OracleResult(Constraint.of(spine, min(uncovered, key=key)), weight_bound)
    return OracleResult(None, weight_bound)
