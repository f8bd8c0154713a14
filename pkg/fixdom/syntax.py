"""Problem files: grammar, AST, printer and a TPTP-CNF importer.

A problem file is a sequence of statements, each ending with a full stop::

    % the elevator problem
    sort floor, label.
    func a, b : floor.
    func p, q : label.
    pred G : floor * label.
    pred R : floor * label.
    var x, y : floor.
    clause -> G(a, p).
    conjecture forall y:floor, x:label. G(y, x) -> R(y, x).

Declarations introduce sorts (``sort``), function symbols (``func``),
predicates (``pred``), universal variables (``var``) and existential
variables (``exists``). Symbols must be declared before they are used.
Clauses are written ``clause [x:s, ...] v = t, ... || Γ -> Δ.``; the binder
list and the constraint are optional. Directives set the ordering
(``ordering``, ``precedence``, ``weight``), restrict the symbols ground
constraints are built from (``constructors``), name the existential
variables of the conjecture (``naming x = u.``) and give induction hints
(``induct x := z < s(z).``).

"""

import importlib.resources
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import lark as L
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput

from . import clausify as F
from .clauses import ConstrainedClause, Constraint, Equation
from .exceptions import ParseError, SignatureError
from .terms import PREDICATE_SORT, TRUE, App, Signature, Var, fresh_variable

logger = logging.getLogger(__name__)


GRAMMAR = r"""
    start: _statement*

    _statement: sort_decl | func_decl | pred_decl | var_decl | exists_decl
              | clause | conjecture
              | ordering | precedence | weight | constructors | naming | induct

    sort_decl: "sort" name_list "."
    func_decl: "func" name_list ":" [sort_product "->"] NAME "."
    pred_decl: "pred" name_list [":" sort_product] "."
    var_decl: "var" name_list ":" NAME "."
    exists_decl: "exists" name_list ":" NAME "."
    sort_product: NAME ("*" NAME)*
    name_list: NAME ("," NAME)*

    clause: "clause" [binder] [bindings "||"] [literals] "->" [literals] "."
    binder: "[" typed ("," typed)* "]"
    bindings: binding ("," binding)*
    binding: NAME "=" term
    literals: literal ("," literal)*
    literal: term "=" term -> equation_literal
           | term -> atom_literal

    conjecture: "conjecture" formula "."
    ?formula: "forall" typed_list "." formula -> forall
            | "exists" typed_list "." formula -> exists
            | iff
    ?iff: implication
        | implication "<->" implication -> iff
    ?implication: disjunction
                | disjunction "->" implication -> implies
    ?disjunction: conjunction
                | disjunction "|" conjunction -> or_
    ?conjunction: unary
                | conjunction "&" unary -> and_
    ?unary: "~" unary -> not_
          | "(" formula ")"
          | term "=" term -> eq
          | term "!=" term -> neq
          | term -> pred
    typed_list: typed ("," typed)*
    typed: NAME [":" NAME]

    ordering: "ordering" NAME "."
    precedence: "precedence" NAME ("<" NAME)* "."
    weight: "weight" (NAME | VARIABLE_WEIGHT) "=" NAME "."
    constructors: "constructors" name_list "."
    naming: "naming" rename ("," rename)* "."
    rename: NAME "=" NAME
    induct: "induct" induct_item ("," induct_item)* "."
    induct_item: NAME ":=" term "<" term

    term: NAME ["(" term ("," term)* ")"]

    NAME: /[A-Za-z0-9_][A-Za-z0-9_']*/
    VARIABLE_WEIGHT: "$var"
    COMMENT: /%[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""


TPTP_GRAMMAR = r"""
    start: cnf*
    cnf: "cnf" "(" LOWER_WORD "," LOWER_WORD "," disjunction ")" "."
    ?disjunction: "(" disjunction ")"
                | literal ("|" literal)* -> literals
    literal: "~" tterm -> negative
           | tterm "=" tterm -> equal
           | tterm "!=" tterm -> unequal
           | tterm -> positive
    tterm: LOWER_WORD ["(" tterm ("," tterm)* ")"] -> tapp
         | UPPER_WORD -> tvar

    LOWER_WORD: /[a-z0-9][A-Za-z0-9_]*/
    UPPER_WORD: /[A-Z][A-Za-z0-9_]*/
    COMMENT: /%[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""


@lru_cache(maxsize=None)
def _parser() -> L.Lark:
    return L.Lark(GRAMMAR, start="start", parser="earley", lexer="basic")


@lru_cache(maxsize=None)
def _tptp_parser() -> L.Lark:
    return L.Lark(TPTP_GRAMMAR, start="start", parser="lalr")


# AST ==================================================================================


@dataclass
class ProblemFile:
    """A parsed problem.

    Attributes
    ----------

    signature : Signature
        Sorts, function symbols and predicates in declaration order.

    variables : dict
        Declared universal variables by name, as ``name -> sort``.

    existentials : list
        Declared existential variables, in declaration order.

    clauses : list
        The axioms, constrained over ``existentials``.

    conjecture : Optional[Formula]

    ordering, precedence, weights, constructors :
        Ordering directives; ``None`` or empty when not given.

    naming : dict
        Conjecture variable name to existential variable name.

    induction : list
        One dict per ``induct`` directive, mapping a variable name to the
        pair ``(ρ1 term, ρ2 term)``.

    """

    signature: Signature
    variables: Dict[str, str] = field(default_factory=dict)
    existentials: List[Var] = field(default_factory=list)
    clauses: List[ConstrainedClause] = field(default_factory=list)
    conjecture: Optional[F.Formula] = None
    ordering: Optional[str] = None
    precedence: Optional[tuple] = None
    weights: Dict[str, int] = field(default_factory=dict)
    constructors: Optional[tuple] = None
    naming: Dict[str, str] = field(default_factory=dict)
    induction: List[Dict[str, Tuple[object, object]]] = field(default_factory=list)

    @property
    def spine(self) -> tuple:
        return tuple(self.existentials)


@dataclass(frozen=True)
class RawTerm:
    name: str
    args: tuple
    line: int
    column: int


def _raw(token, args=()) -> RawTerm:
    return RawTerm(str(token), tuple(args), token.line, token.column)


class _Statements(L.Transformer):
    """Turns the parse tree into ``(keyword, token, payload)`` statements."""

    def start(self, items):
        return items

    def name_list(self, items):
        return list(items)

    def sort_product(self, items):
        return list(items)

    def sort_decl(self, items):
        return ("sort", items[0][0], items[0])

    def func_decl(self, items):
        names, args, result = items
        return ("func", names[0], (names, args or [], result))

    def pred_decl(self, items):
        names, args = items
        return ("pred", names[0], (names, args or []))

    def var_decl(self, items):
        return ("var", items[0][0], (items[0], items[1]))

    def exists_decl(self, items):
        return ("exists", items[0][0], (items[0], items[1]))

    def term(self, items):
        head, *args = items
        return _raw(head, [a for a in args if a is not None])

    def typed(self, items):
        return (items[0], items[1])

    def binder(self, items):
        return list(items)

    def typed_list(self, items):
        return list(items)

    def binding(self, items):
        return (items[0], items[1])

    def bindings(self, items):
        return list(items)

    def equation_literal(self, items):
        return ("eq", items[0], items[1])

    def atom_literal(self, items):
        return ("atom", items[0])

    def literals(self, items):
        return list(items)

    def clause(self, items):
        binder, bindings, antecedent, succedent = items
        first = _first_token(items)
        return ("clause", first, (binder or [], bindings or [], antecedent or [], succedent or []))

    def conjecture(self, items):
        return ("conjecture", _first_token(items), items[0])

    def forall(self, items):
        return ("forall", items[0], items[1])

    def exists(self, items):
        return ("exists", items[0], items[1])

    def iff(self, items):
        return ("iff", items[0], items[1])

    def implies(self, items):
        return ("implies", items[0], items[1])

    def or_(self, items):
        return ("or", items[0], items[1])

    def and_(self, items):
        return ("and", items[0], items[1])

    def not_(self, items):
        return ("not", items[0])

    def eq(self, items):
        return ("atom_eq", items[0], items[1])

    def neq(self, items):
        return ("not", ("atom_eq", items[0], items[1]))

    def pred(self, items):
        return ("atom_pred", items[0])

    def ordering(self, items):
        return ("ordering", items[0], str(items[0]))

    def precedence(self, items):
        return ("precedence", items[0], list(items))

    def weight(self, items):
        return ("weight", items[0], (items[0], items[1]))

    def constructors(self, items):
        return ("constructors", items[0][0], items[0])

    def rename(self, items):
        return (items[0], items[1])

    def naming(self, items):
        return ("naming", items[0][0], list(items))

    def induct_item(self, items):
        return (items[0], items[1], items[2])

    def induct(self, items):
        return ("induct", items[0][0], list(items))


def _first_token(items):
    for item in items:
        if isinstance(item, L.Token):
            return item
        if isinstance(item, RawTerm):
            return item
        if isinstance(item, (list, tuple)):
            found = _first_token(item)
            if found is not None:
                return found
    return None


def _where(item):
    if item is None:
        return None, None
    return item.line, item.column


def _fail(message, item=None):
    line, column = _where(item)
    raise ParseError(message, line, column)


# building =============================================================================


class _Builder:
    """Processes statements in order, so that every use follows its declaration."""

    def __init__(self):
        self.problem = ProblemFile(Signature())
        self.deferred = []
        self.has_conjecture = False

    @property
    def signature(self) -> Signature:
        return self.problem.signature

    def run(self, statements) -> ProblemFile:
        for keyword, token, payload in statements:
            if keyword in {"naming", "induct"}:
                self.deferred.append((keyword, token, payload))
                continue
            try:
                getattr(self, f"_{keyword}")(token, payload)
            except SignatureError as exc:
                _fail(str(exc), token)
        for keyword, token, payload in self.deferred:
            getattr(self, f"_{keyword}")(token, payload)
        return self.problem

    # declarations ---------------------------------------------------------------------

    def _check_fresh(self, token):
        name = str(token)
        if name in self.signature or name == TRUE:
            _fail(f"{name!r} is already declared as a symbol", token)
        if name in self.problem.variables or name in {v.name for v in self.problem.existentials}:
            _fail(f"{name!r} is already declared as a variable", token)

    def _sort(self, token, names):
        for name in names:
            if str(name) in self.signature.sorts:
                _fail(f"sort {str(name)!r} is declared twice", name)
            self.signature.add_sort(str(name))

    def _known_sort(self, token):
        if str(token) not in self.signature.sorts:
            _fail(f"undeclared sort {str(token)!r}", token)
        return str(token)

    def _func(self, token, payload):
        names, args, result = payload
        arg_sorts = [self._known_sort(a) for a in args]
        sort = self._known_sort(result)
        for name in names:
            self._check_fresh(name)
            self.signature.add_function(str(name), arg_sorts, sort)

    def _pred(self, token, payload):
        names, args = payload
        arg_sorts = [self._known_sort(a) for a in args]
        for name in names:
            self._check_fresh(name)
            self.signature.add_predicate(str(name), arg_sorts)

    def _var(self, token, payload):
        names, sort = payload
        sort = self._known_sort(sort)
        for name in names:
            self._check_fresh(name)
            self.problem.variables[str(name)] = sort

    def _exists(self, token, payload):
        names, sort = payload
        sort = self._known_sort(sort)
        if self.problem.clauses:
            _fail("existential variables must be declared before the first clause", token)
        for name in names:
            self._check_fresh(name)
            self.problem.existentials.append(Var(str(name), sort, existential=True))

    # terms ----------------------------------------------------------------------------

    def term(self, raw: RawTerm, env: Dict[str, str], expected=None, free=None):
        """Builds a term, checking it against ``expected`` if given.

        Identifiers that are neither symbols nor in ``env`` become variables
        of the expected sort when ``free`` is a dict, and are errors otherwise.
        """
        if raw.name in self.signature and raw.name != TRUE:
            f = self.signature[raw.name]
            if len(raw.args) != f.arity:
                _fail(f"{raw.name} expects {f.arity} arguments, got {len(raw.args)}", raw)
            args = [self.term(a, env, s, free) for a, s in zip(raw.args, f.arg_sorts)]
            t = App(f.name, tuple(args), f.sort)
        elif raw.args:
            _fail(f"undeclared symbol {raw.name!r}", raw)
        elif raw.name in env:
            t = Var(raw.name, env[raw.name])
        elif free is not None and expected is not None:
            sort = free.setdefault(raw.name, expected)
            t = Var(raw.name, sort)
        else:
            _fail(f"undeclared identifier {raw.name!r}", raw)
        if expected is not None and t.sort != expected:
            _fail(f"{raw.name} has sort {t.sort}, expected {expected}", raw)
        return t

    def _sort_hint(self, raw: RawTerm, env):
        if raw.name in self.signature:
            return self.signature[raw.name].sort
        return env.get(raw.name)

    def equation(self, lhs: RawTerm, rhs: RawTerm, env) -> Equation:
        sort = self._sort_hint(lhs, env) or self._sort_hint(rhs, env)
        s = self.term(lhs, env, sort)
        t = self.term(rhs, env, sort)
        if s.sort == PREDICATE_SORT:
            _fail("predicates cannot occur in equations", lhs)
        return Equation.of(s, t)

    def atom(self, raw: RawTerm, env) -> Equation:
        t = self.term(raw, env)
        if t.sort != PREDICATE_SORT:
            _fail(f"{raw.name} is not a predicate", raw)
        return Equation.of(t, self.signature.true())

    def literal(self, item, env) -> Equation:
        if item[0] == "eq":
            return self.equation(item[1], item[2], env)
        return self.atom(item[1], env)

    # clauses and conjectures ----------------------------------------------------------

    def _typed(self, pairs, env=None) -> Dict[str, str]:
        env = dict(env or {})
        for name, sort in pairs:
            if str(name) in self.signature:
                _fail(f"{str(name)!r} is a symbol and cannot be bound", name)
            if sort is None:
                if str(name) not in self.problem.variables:
                    _fail(f"variable {str(name)!r} needs a sort", name)
                env[str(name)] = self.problem.variables[str(name)]
            else:
                env[str(name)] = self._known_sort(sort)
        return env

    def _clause(self, token, payload):
        binder, bindings, antecedent, succedent = payload
        env = self._typed(binder, self.problem.variables)
        existentials = {v.name: v for v in self.problem.existentials}
        given = {}
        for name, raw in bindings:
            v = existentials.get(str(name))
            if v is None:
                _fail(f"{str(name)!r} is not an existential variable", name)
            if v in given:
                _fail(f"existential variable {v} is bound twice", name)
            given[v] = self.term(raw, env, v.sort)
        rhs = [given[v] if v in given else _fresh(v) for v in self.problem.existentials]
        constraint = Constraint.of(self.problem.existentials, rhs)
        cc = ConstrainedClause.of(
            constraint,
            [self.literal(item, env) for item in antecedent],
            [self.literal(item, env) for item in succedent],
        )
        self.problem.clauses.append(cc)

    def _conjecture(self, token, payload):
        if self.has_conjecture:
            _fail("a problem has at most one conjecture", token)
        self.has_conjecture = True
        self.problem.conjecture = self.formula(payload, {})

    def formula(self, node, env) -> F.Formula:
        kind = node[0]
        if kind in {"forall", "exists"}:
            inner = self._typed(node[1], env)
            variables = tuple(Var(str(n), inner[str(n)]) for n, _ in node[1])
            body = self.formula(node[2], inner)
            return (F.Forall if kind == "forall" else F.Exists)(variables, body)
        if kind == "not":
            return F.Not(self.formula(node[1], env))
        if kind == "atom_eq":
            return F.Atom(self.equation(node[1], node[2], env))
        if kind == "atom_pred":
            return F.Atom(self.atom(node[1], env))
        connective = {"iff": F.Iff, "implies": F.Implies, "or": F.Or, "and": F.And}[kind]
        return connective(self.formula(node[1], env), self.formula(node[2], env))

    # directives -----------------------------------------------------------------------

    def _symbol(self, token):
        if str(token) not in self.signature:
            _fail(f"undeclared symbol {str(token)!r}", token)
        return str(token)

    def _ordering(self, token, kind):
        if kind not in {"kbo", "lpo"}:
            _fail(f"unknown ordering {kind!r}, expected kbo or lpo", token)
        self.problem.ordering = kind

    def _precedence(self, token, names):
        self.problem.precedence = tuple(self._symbol(n) for n in names)

    def _weight(self, token, payload):
        name, value = payload
        if str(name) != "$var":
            self._symbol(name)
        if not str(value).isdigit():
            _fail(f"weight {str(value)!r} is not a non-negative integer", value)
        self.problem.weights[str(name)] = int(str(value))

    def _constructors(self, token, names):
        symbols = tuple(self._symbol(n) for n in names)
        for name in symbols:
            if self.signature[name].is_predicate:
                _fail(f"predicate {name!r} cannot be a constructor", token)
        self.problem.constructors = symbols

    def _conjecture_variables(self):
        f = self.problem.conjecture
        found = {}
        while isinstance(f, (F.Forall, F.Exists)):
            found.update({v.name: v.sort for v in f.variables} if isinstance(f, F.Forall) else {})
            f = f.body
        return found

    def _naming(self, token, pairs):
        universals = self._conjecture_variables()
        for name, target in pairs:
            if str(name) not in universals:
                _fail(f"{str(name)!r} is not a universal variable of the conjecture", name)
            if str(target) in self.signature:
                _fail(f"{str(target)!r} is a symbol", target)
            self.problem.naming[str(name)] = str(target)

    def _induct(self, token, items):
        sorts = {v.name: v.sort for v in self.problem.existentials}
        universals = self._conjecture_variables()
        sorts.update(universals)
        sorts.update({self.problem.naming.get(n, n): s for n, s in universals.items()})
        hint = {}
        free = {}
        for name, smaller, larger in items:
            sort = sorts.get(str(name))
            if sort is None:
                _fail(f"{str(name)!r} is neither an existential nor a conjecture variable", name)
            hint[str(name)] = (
                self.term(smaller, {}, sort, free),
                self.term(larger, {}, sort, free),
            )
        self.problem.induction.append(hint)


def _fresh(v: Var):
    return fresh_variable(v.sort)


def _describe(exc: UnexpectedInput) -> str:
    if isinstance(exc, UnexpectedEOF):
        return "unexpected end of input"
    if isinstance(exc, UnexpectedCharacters):
        return f"unexpected character {exc.char!r}"
    token = getattr(exc, "token", None)
    if token is not None and token.type == "$END":
        return "unexpected end of input"
    return f"unexpected {str(token)!r}" if token is not None else "syntax error"


def parse_problem(text: str) -> ProblemFile:
    """Parses a problem file.

    Raises
    ------

    ParseError
        On syntax errors, undeclared or misused symbols, ill-sorted terms and
        repeated conjectures. The error carries the line and column.

    """
    try:
        tree = _parser().parse(text)
    except UnexpectedInput as exc:
        line = exc.line if exc.line and exc.line > 0 else None
        raise ParseError(_describe(exc), line, exc.column if line else None) from None
    statements = _Statements().transform(tree)
    problem = _Builder().run(statements)
    logger.debug(
        "parsed %d symbols, %d clauses", len(problem.signature.functions), len(problem.clauses)
    )
    return problem


def load_problem(name: str) -> ProblemFile:
    """Parses a problem of the bundled corpus by name, e.g. ``"elevator"``."""
    path = importlib.resources.files("fixdom") / "problems" / f"{name}.fd"
    if not path.is_file():
        raise ParseError(f"no bundled problem named {name!r}")
    return parse_problem(path.read_text(encoding="utf-8"))


def corpus() -> List[str]:
    """Names of the bundled problems."""
    folder = importlib.resources.files("fixdom") / "problems"
    return sorted(p.name[:-3] for p in folder.iterdir() if p.name.endswith(".fd"))


# printing =============================================================================


def _print_formula(f) -> str:
    if isinstance(f, F.Atom):
        return f.equation.to_text()
    if isinstance(f, F.Not):
        return f"~({_print_formula(f.body)})"
    if isinstance(f, (F.Forall, F.Exists)):
        q = "forall" if isinstance(f, F.Forall) else "exists"
        vs = ", ".join(f"{v.name}:{v.sort}" for v in f.variables)
        return f"({q} {vs}. {_print_formula(f.body)})"
    op = {F.And: "&", F.Or: "|", F.Implies: "->", F.Iff: "<->"}[type(f)]
    return f"({_print_formula(f.left)} {op} {_print_formula(f.right)})"


def _print_clause(cc: ConstrainedClause) -> str:
    parts = ["clause"]
    vs = sorted(cc.variables(), key=lambda v: v.name)
    if vs:
        parts.append("[" + ", ".join(f"{v.name}:{v.sort}" for v in vs) + "]")
    if cc.constraint.pairs:
        parts.append(cc.constraint.to_text() + " ||")
    body = cc.clause.to_text()
    parts.append(body)
    return " ".join(parts) + "."


def _grouped(pairs):
    groups: Dict[str, List[str]] = {}
    for name, sort in pairs:
        groups.setdefault(sort, []).append(name)
    return groups.items()


def print_problem(problem: ProblemFile) -> str:
    """Renders a problem in the syntax :func:`parse_problem` reads back."""
    sig = problem.signature
    lines = []
    if sig.sorts:
        lines.append(f"sort {', '.join(sig.sorts)}.")
    for f in sig.functions.values():
        if f.name == TRUE:
            continue
        args = " * ".join(f.arg_sorts)
        if f.is_predicate:
            lines.append(f"pred {f.name} : {args}." if args else f"pred {f.name}.")
        else:
            arrow = f"{args} -> " if args else ""
            lines.append(f"func {f.name} : {arrow}{f.sort}.")
    for sort, names in _grouped(problem.variables.items()):
        lines.append(f"var {', '.join(names)} : {sort}.")
    for v in problem.existentials:
        lines.append(f"exists {v.name} : {v.sort}.")
    if problem.ordering:
        lines.append(f"ordering {problem.ordering}.")
    if problem.precedence:
        lines.append(f"precedence {' < '.join(problem.precedence)}.")
    for name, value in problem.weights.items():
        lines.append(f"weight {name} = {value}.")
    if problem.constructors:
        lines.append(f"constructors {', '.join(problem.constructors)}.")
    lines.extend(_print_clause(cc) for cc in problem.clauses)
    if problem.conjecture is not None:
        lines.append(f"conjecture {_print_formula(problem.conjecture)}.")
    if problem.naming:
        renames = ", ".join(f"{k} = {v}" for k, v in problem.naming.items())
        lines.append(f"naming {renames}.")
    for hint in problem.induction:
        items = ", ".join(f"{name} := {s} < {t}" for name, (s, t) in hint.items())
        lines.append(f"induct {items}.")
    return "\n".join(lines) + "\n"


# TPTP =================================================================================


TPTP_SORT = "i"


class _TPTPClauses(L.Transformer):
    def start(self, items):
        return items

    def tapp(self, items):
        head, *args = items
        return ("app", str(head), tuple(a for a in args if a is not None), head)

    def tvar(self, items):
        return ("var", str(items[0]), (), items[0])

    def negative(self, items):
        return (False, ("atom", items[0]))

    def positive(self, items):
        return (True, ("atom", items[0]))

    def equal(self, items):
        return (True, ("eq", items[0], items[1]))

    def unequal(self, items):
        return (False, ("eq", items[0], items[1]))

    def literals(self, items):
        return list(items)

    def cnf(self, items):
        name, role, literals = items
        if not isinstance(literals, list):
            literals = [literals]
        return (str(name), str(role), literals)


class _TPTPSignature:
    def __init__(self):
        self.signature = Signature([TPTP_SORT])

    def declare(self, node, predicate):
        _, name, args, token = node
        if name in self.signature:
            f = self.signature[name]
            if f.arity != len(args) or f.is_predicate != predicate:
                _fail(f"symbol {name!r} is used inconsistently", token)
        elif predicate:
            self.signature.add_predicate(name, [TPTP_SORT] * len(args))
        else:
            self.signature.add_function(name, [TPTP_SORT] * len(args), TPTP_SORT)

    def term(self, node):
        kind, name, args, token = node
        if kind == "var":
            return Var(name, TPTP_SORT)
        self.declare(node, False)
        return App(name, tuple(self.term(a) for a in args), TPTP_SORT)

    def atom(self, node):
        kind, name, args, token = node
        if kind == "var":
            _fail(f"variable {name} cannot be an atom", token)
        self.declare(node, True)
        return App(name, tuple(self.term(a) for a in args), PREDICATE_SORT)


def parse_tptp(text: str) -> ProblemFile:
    """Imports a problem given as TPTP ``cnf`` clauses.

    All clauses, including negated conjectures, become unconstrained axioms
    over the single sort ``i``; the result has no existential variables.
    """
    try:
        tree = _tptp_parser().parse(text)
    except UnexpectedInput as exc:
        line = exc.line if exc.line and exc.line > 0 else None
        raise ParseError(_describe(exc), line, exc.column if line else None) from None
    builder = _TPTPSignature()
    clauses = []
    for name, role, literals in _TPTPClauses().transform(tree):
        antecedent, succedent = [], []
        for sign, (kind, *nodes) in literals:
            if kind == "eq":
                e = Equation.of(builder.term(nodes[0]), builder.term(nodes[1]))
            else:
                e = Equation.of(builder.atom(nodes[0]), builder.signature.true())
            (succedent if sign else antecedent).append(e)
        clauses.append(ConstrainedClause.of(Constraint(), antecedent, succedent))
        logger.debug("imported %s clause %s", role, name)
    problem = ProblemFile(builder.signature, clauses=clauses)
    return problem
