"""Runs a problem under one of the three semantics and formats the report.

``first-order`` mode Skolemizes the conjecture and runs the calculus with no
existential variables, so a proof is an ordinary refutation.
``fixed-domain`` mode keeps the universally quantified conjecture variables
as existential variables and decides coverage of the empty-clause
constraints. ``inductive`` mode adds the induction rule, and for Horn axioms
with a positive conjecture relies on the known agreement between the
semantics.

"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from . import calculus, clausify, coverage, model, ordering
from .clauses import Constraint
from .config import Config
from .exceptions import ConfigError, InductionError
from .saturation import Limits, Result, SaturationState, Verdict, derivation_trace, saturate
from .syntax import ProblemFile

logger = logging.getLogger(__name__)


SEMANTICS = {
    "first-order": "first-order (⊨)",
    "fixed-domain": "fixed-domain (⊨_Σ)",
    "inductive": "inductive (⊨_Ind)",
}


# configuration ========================================================================


def configure(problem: ProblemFile, base: Optional[Config] = None, **overrides) -> Config:
    """The settings for ``problem``: defaults, then its directives, then ``overrides``.

    Overrides that are ``None`` are ignored, so unset command-line flags
    leave the directives in place.
    """
    config = base.copy() if base is not None else Config()
    if problem.ordering is not None:
        config.ordering = problem.ordering
    if problem.precedence:
        config.precedence = problem.precedence
    if problem.weights:
        config.weights = problem.weights
    for name, value in overrides.items():
        if value is not None:
            setattr(config, name, value)
    return config.validate()


def _limits(config: Config) -> Limits:
    return Limits(config.max_iterations, config.max_clauses, config.timeout)


def _spec(signature, config: Config) -> ordering.OrderingSpec:
    return ordering.from_config(signature, config)


# report ===============================================================================


@dataclass
class Report:
    """The outcome of :func:`run`.

    Attributes
    ----------

    verdict : Verdict

    mode : str
        The semantics the verdict is for.

    empty_constraints : list
        ``A_N`` in derivation order.

    alpha : Optional[Constraint]
        The minimal uncovered constraint of a non-theorem.

    complement : Optional[SolvedForm]
        The ground constraints not covered by ``A_N``.

    model_handle : Optional[ModelHandle]
        The bounded model seeded with ``alpha``.

    also_holds_for : list
        Further semantics the verdict carries over to.

    """

    verdict: Verdict
    mode: str
    result: Optional[Result] = None
    empty_constraints: list = field(default_factory=list)
    alpha: Optional[Constraint] = None
    complement: Optional[coverage.SolvedForm] = None
    model_handle: Optional[model.ModelHandle] = None
    limit: Optional[str] = None
    notices: List[str] = field(default_factory=list)
    also_holds_for: List[str] = field(default_factory=list)
    trace: Optional[str] = None

    @property
    def state(self) -> Optional[SaturationState]:
        return self.result.state if self.result is not None else None

    @property
    def exit_code(self) -> int:
        return {Verdict.THEOREM: 0, Verdict.NON_THEOREM: 1, Verdict.GAVE_UP: 2}[self.verdict]


def _render_constraint(alpha: Constraint) -> str:
    return str(alpha) if alpha.pairs else "ε"


def format_report(report: Report) -> str:
    """Renders a report as sections headed ``VERDICT:``, ``SEMANTICS:`` and so on."""
    lines = [f"VERDICT: {report.verdict}"]
    semantics = SEMANTICS[report.mode]
    if report.also_holds_for:
        semantics += "; also " + ", ".join(SEMANTICS[m] for m in report.also_holds_for)
    lines.append(f"SEMANTICS: {semantics}")
    lines.append("EMPTY-CLAUSE CONSTRAINTS:")
    lines.extend(f"  {_render_constraint(a)}" for a in report.empty_constraints)
    if not report.empty_constraints:
        lines.append("  (none)")
    alpha = _render_constraint(report.alpha) if report.alpha is not None else "(none)"
    lines.append(f"ALPHA_N: {alpha}")
    if report.complement is not None:
        lines.append(f"SOLUTIONS: {report.complement.render()}")
    if report.model_handle is not None:
        lines.append("MODEL:")
        lines.extend(f"  {line}" for line in report.model_handle.dump().splitlines())
    if report.limit is not None:
        lines.append(f"LIMIT: {report.limit}")
    if report.notices:
        lines.append("NOTICES:")
        lines.extend(f"  {notice}" for notice in report.notices)
    if report.trace is not None:
        lines.append(report.trace)
    return "\n".join(lines) + "\n"


# runs =================================================================================


def _report(result: Result, mode: str, config: Config, signature, spec) -> Report:
    state = result.state
    report = Report(
        result.verdict, mode, result, list(result.empty_constraints), limit=result.limit
    )
    if result.verdict is Verdict.NON_THEOREM and result.coverage is not None:
        report.alpha = result.coverage.witness
        if state.spine:
            report.complement = result.coverage.complement
        if not result.coverage.exact:
            report.notices.append("ALPHA_N may not be minimal under the chosen ordering")
        N = [e.clause for e in state.retained()]
        report.model_handle = model.construct_RN(
            N, report.alpha, signature, spec, config.model_bound
        )
    if config.trace:
        report.trace = derivation_trace(state)
    return report


def _state(spec, coverage_signature, spine, config: Config, **kwargs) -> SaturationState:
    return SaturationState(
        spec,
        coverage_signature,
        spine=spine,
        calculus=config.calculus,
        limits=_limits(config),
        simplify=config.simplify,
        age_weight_ratio=config.age_weight_ratio,
        tiebreak=config.alpha_tiebreak,
        **kwargs,
    )


def run_first_order(config: Config, problem: ProblemFile) -> Report:
    """Standard superposition: Skolemized conjecture, no existential variables."""
    if problem.existentials:
        raise ConfigError("first-order mode does not support existential variables")
    signature = problem.signature
    clauses = list(problem.clauses)
    if problem.conjecture is not None:
        signature, negated = clausify.skolemize_conjecture(problem.conjecture, signature)
        clauses.extend(negated)
    spec = _spec(signature, config)
    state = _state(spec, coverage.coverage_signature(signature), (), config.copy(calculus="sfd"))
    for cc in clauses:
        state.add_input(cc)
    logger.info("first-order run on %d input clauses", len(clauses))
    return _report(saturate(state), "first-order", config, signature, spec)


def _fixed_domain_input(config: Config, problem: ProblemFile):
    spine = problem.spine
    query = []
    naming = {}
    if problem.conjecture is not None:
        clausified = clausify.clausify_conjecture(
            problem.conjecture, problem.naming, extra_spine=problem.existentials
        )
        spine, query, naming = clausified.spine, clausified.clauses, clausified.naming
    axioms = [clausify.constrain(cc, spine) for cc in problem.clauses]
    return spine, axioms, query, naming


def run_fixed_domain(config: Config, problem: ProblemFile, induction="off", class_less=None,
                     mode="fixed-domain") -> Report:
    """Constrained superposition with coverage checks over the problem's signature."""
    signature = problem.signature
    spine, axioms, query, naming = _fixed_domain_input(config, problem)
    spec = _spec(signature, config)
    cover = coverage.coverage_signature(signature, problem.constructors)
    state = _state(
        spec,
        cover,
        spine,
        config,
        induction=induction if class_less is not None else "off",
        query=query,
        class_less=class_less,
    )
    for cc in axioms + query:
        state.add_input(cc)
    notices = []
    if induction == "manual":
        notices.extend(_apply_hints(state, problem, query, naming))
    elif problem.induction and induction == "heuristic":
        notices.append("induction hints are ignored under the heuristic policy")
    logger.info("%s run with %d existential variables", mode, len(spine))
    report = _report(saturate(state), mode, config, signature, spec)
    report.notices[:0] = notices
    return report


def _apply_hints(state, problem: ProblemFile, query, naming) -> List[str]:
    if not problem.induction:
        return ["manual induction was requested but the problem has no induct directive"]
    if not query:
        raise InductionError("i", "induction needs a conjecture")
    for hint in problem.induction:
        pairs = {naming.get(name, name): pair for name, pair in hint.items()}
        directive = calculus.InductionDirective.by_existentials(query, pairs)
        state.apply_directive(directive)
    return []


def _is_horn(problem: ProblemFile) -> bool:
    return not problem.existentials and all(cc.clause.is_horn for cc in problem.clauses)


def _shape(problem: ProblemFile) -> Optional[str]:
    """``"existential"`` or ``"universal"`` for a positive conjecture over Horn axioms."""
    if problem.conjecture is None or not _is_horn(problem):
        return None
    universals, existentials, matrix = clausify.prefix(problem.conjecture)
    if not clausify.is_positive_conjunction(matrix):
        return None
    if not universals:
        return "existential"
    if not existentials:
        return "universal"
    return None


def _precheck(config: Config, problem: ProblemFile, notices: List[str]):
    """Saturates the axioms alone and derives the class ordering from the result."""
    signature = problem.signature
    spec = _spec(signature, config)
    if problem.existentials:
        notices.append("the axioms are constrained; their saturation was not checked")
        return model.ClassOrder.from_clauses(
            problem.clauses, signature, spec, assume_free=config.assume_free_constructors
        )
    state = _state(spec, coverage.coverage_signature(signature), (), config.copy(calculus="sfd"))
    for cc in problem.clauses:
        state.add_input(cc)
    result = saturate(state)
    retained = [e.clause for e in state.retained()]
    handle = None
    if result.verdict is Verdict.NON_THEOREM:
        logger.info("the axioms saturate into %d clauses", len(retained))
        handle = model.construct_RN(retained, Constraint(), signature, spec, config.model_bound)
    elif result.verdict is Verdict.THEOREM:
        notices.append(
            "the axioms are inconsistent; induction conclusions rely on an unverified premise"
        )
    else:
        notices.append(
            f"the axioms were not shown saturated ({result.limit}); "
            "induction conclusions rely on an unverified premise"
        )
    return model.ClassOrder.from_clauses(
        retained, signature, spec, handle, assume_free=config.assume_free_constructors
    )


def run_inductive(config: Config, problem: ProblemFile) -> Report:
    """Fixed-domain reasoning with induction, plus the Horn shortcuts."""
    shape = _shape(problem)
    if shape == "existential":
        report = run_first_order(config, problem)
        report.mode = "inductive"
        report.also_holds_for = ["first-order", "fixed-domain"]
        report.notices.append(
            "Horn axioms and a positive existential conjecture: "
            "the first-order verdict is the inductive verdict"
        )
        return report
    notices = []
    class_less = None
    if config.induction != "off":
        class_less = _precheck(config, problem, notices)
    report = run_fixed_domain(config, problem, config.induction, class_less, mode="inductive")
    if shape == "universal":
        report.also_holds_for = ["fixed-domain"]
        notices.append(
            "Horn axioms and a positive universal conjecture: "
            "the fixed-domain and inductive verdicts coincide"
        )
    elif problem.conjecture is not None and _is_horn(problem):
        notices.append("the conjecture is not a positive conjunction; no shortcut applies")
    report.notices[:0] = notices
    return report


def run(config: Config, problem: ProblemFile) -> Report:
    """Decides the problem's conjecture under ``config.mode``.

    Raises
    ------

    ConfigError
        If the settings are inconsistent or the mode cannot handle the problem.

    InductionError
        If a manual induction hint violates a condition of the rule.

    """
    config.validate()
    logger.info("running in %s mode", config.mode)
    if config.mode == "first-order":
        return run_first_order(config, problem)
    if config.mode == "fixed-domain":
        return run_fixed_domain(config, problem)
    return run_inductive(config, problem)
