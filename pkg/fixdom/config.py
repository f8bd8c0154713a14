"""An object to store settings for a proof run."""

from .exceptions import ConfigError


_CHOICES = {
    "mode": {"first-order", "fixed-domain", "inductive"},
    "calculus": {"sfd", "sfd-general"},
    "induction": {"off", "heuristic", "manual"},
    "ordering": {"kbo", "lpo"},
}

_LIMITS = {"max_iterations", "max_clauses", "timeout"}

_FLAGS = {"trace", "simplify", "assume_free_constructors"}


class Config:
    """Stores the settings of a proof run.

    This object does error checking on the settings to ensure that they are
    valid, and to prevent typos from silently falling back to defaults.

    Attributes
    ----------

    mode : str
        The semantics the conjecture is checked under. Valid options are:

        - ``first-order``: classical entailment, run as standard superposition
          with Skolemized conjecture and no existential variables.

        - ``fixed-domain``: entailment over the Herbrand models of the
          signature, run as constrained superposition with coverage checks.
          This is the default.

        - ``inductive``: truth in the minimal model. Uses the fixed-domain
          machinery, the induction rule, and the dispatch shortcuts for Horn
          axioms.

    calculus : str
        ``sfd`` (default) or ``sfd-general``. The latter replaces equality
        elimination by its generalized form.

    induction : str
        ``off``, ``heuristic`` (default) or ``manual``. Only consulted in
        inductive mode.

    max_iterations : Optional[int]
        Bound on given-clause steps. Default is 2000.

    max_clauses : Optional[int]
        Bound on the number of retained clauses. Default is 20000.

    timeout : Optional[int]
        Bound on wall-clock seconds. If ``None``, no time limit is used.

    ordering : str
        ``kbo`` (default) or ``lpo``.

    precedence : Optional[tuple]
        Symbol names in increasing precedence. Unlisted symbols keep their
        declaration order below the listed ones.

    weights : Optional[dict]
        KBO weights by symbol name; the key ``"$var"`` sets the variable
        weight.

    model_bound : int
        Weight bound for ground instantiation during model construction.
        Default is 6.

    trace : bool
        Whether the report includes the derivation trace.

    alpha_tiebreak : Union[str, tuple]
        ``"declaration"`` or a tuple of existential variable names giving the
        lexicographic priority used to pick the minimal uncovered constraint.

    age_weight_ratio : tuple
        How many clauses are picked by age and by weight in each round.
        Default is ``(1, 4)``.

    simplify : bool
        Whether tautology deletion, subsumption and demodulation are used.

    assume_free_constructors : bool
        Certify ``[s] < [t]`` for any strict subterm ``s`` of ``t`` without
        checking that the path symbols are free.

    """

    def __init__(
        self,
        mode="fixed-domain",
        calculus="sfd",
        induction="heuristic",
        max_iterations=2000,
        max_clauses=20000,
        timeout=None,
        ordering="kbo",
        precedence=None,
        weights=None,
        model_bound=6,
        trace=True,
        alpha_tiebreak="declaration",
        age_weight_ratio=(1, 4),
        simplify=True,
        assume_free_constructors=False,
    ):
        self.mode = mode
        self.calculus = calculus
        self.induction = induction
        self.max_iterations = max_iterations
        self.max_clauses = max_clauses
        self.timeout = timeout
        self.ordering = ordering
        self.precedence = precedence
        self.weights = weights
        self.model_bound = model_bound
        self.trace = trace
        self.alpha_tiebreak = alpha_tiebreak
        self.age_weight_ratio = age_weight_ratio
        self.simplify = simplify
        self.assume_free_constructors = assume_free_constructors

    def _set_choice(self, name, value):
        if value not in _CHOICES[name]:
            options = ", ".join(f"'{c}'" for c in sorted(_CHOICES[name]))
            raise ConfigError(f"{name} must be one of {options}, not {value!r}")
        self.__dict__[name] = value

    def _set_limit(self, name, value):
        if value is not None and (not isinstance(value, int) or value < 0):
            raise ConfigError(f"{name} must be a non-negative integer or None")
        self.__dict__[name] = value

    def _set_model_bound(self, value):
        if not isinstance(value, int) or value < 1:
            raise ConfigError("model_bound must be a positive integer")
        self.__dict__["model_bound"] = value

    def _set_alpha_tiebreak(self, value):
        if value != "declaration":
            value = tuple(value)
            if not all(isinstance(v, str) for v in value):
                raise ConfigError(
                    "alpha_tiebreak must be 'declaration' or a list of existential names"
                )
        self.__dict__["alpha_tiebreak"] = value

    def _set_age_weight_ratio(self, value):
        value = tuple(value)
        if len(value) != 2 or not all(isinstance(v, int) and v >= 0 for v in value):
            raise ConfigError("age_weight_ratio must be a pair of non-negative integers")
        if value == (0, 0):
            raise ConfigError("age_weight_ratio must not be (0, 0)")
        self.__dict__["age_weight_ratio"] = value

    def __setattr__(self, name, value):
        if name in _CHOICES:
            self._set_choice(name, value)
        elif name in _LIMITS:
            self._set_limit(name, value)
        elif name in _FLAGS:
            self.__dict__[name] = bool(value)
        elif name == "model_bound":
            self._set_model_bound(value)
        elif name == "alpha_tiebreak":
            self._set_alpha_tiebreak(value)
        elif name == "age_weight_ratio":
            self._set_age_weight_ratio(value)
        elif name == "precedence":
            self.__dict__[name] = None if value is None else tuple(value)
        elif name == "weights":
            self.__dict__[name] = None if value is None else dict(value)
        else:
            raise ConfigError(f'Configuration has no attribute "{name}".')

    def validate(self):
        """Checks the settings against each other.

        Raises
        ------

        ConfigError
            If the generalized calculus is requested in first-order mode.

        """
        if self.calculus == "sfd-general" and self.mode == "first-order":
            raise ConfigError(
                "calculus 'sfd-general' is only available in fixed-domain and inductive modes"
            )
        return self

    def copy(self, **changes):
        """Returns a copy with some settings changed."""
        fresh = Config.__new__(Config)
        for name, value in self.__dict__.items():
            fresh.__dict__[name] = value
        for name, value in changes.items():
            setattr(fresh, name, value)
        return fresh
