"""A small imperative language: syntax trees, typing, negation and substitution."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from kctapes.exceptions import (
    ArityMismatch,
    SignatureError,
    SortMismatch,
    UnboundVariable,
    UnknownSymbol,
)
from kctapes.interpretation import complement_name, is_complement
from kctapes.polynomial import Monomial, Signature
from kctapes.theories import Theory, function_axioms, predicate_axioms

# Expressions.


class Expr:
    """Base class of expressions."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(Expr):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class App(Expr):
    """A function symbol applied to argument expressions."""

    fn: str
    args: tuple[Expr, ...] = ()

    def __str__(self) -> str:
        return f"{self.fn}({', '.join(map(str, self.args))})"


# Predicates. Negation is computed by :func:`negate`, never stored.


class Pred:
    """Base class of predicates."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Atom(Pred):
    name: str
    args: tuple[Expr, ...] = ()

    def __str__(self) -> str:
        return f"{self.name}({', '.join(map(str, self.args))})"


@dataclass(frozen=True, slots=True)
class NAtom(Pred):
    """The complement atom ``!R(e, …)``."""

    name: str
    args: tuple[Expr, ...] = ()

    def __str__(self) -> str:
        return f"!{self.name}({', '.join(map(str, self.args))})"


@dataclass(frozen=True, slots=True)
class PTrue(Pred):
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True, slots=True)
class PFalse(Pred):
    def __str__(self) -> str:
        return "false"


@dataclass(frozen=True, slots=True)
class PAnd(Pred):
    left: Pred
    right: Pred

    def __str__(self) -> str:
        return f"({self.left} && {self.right})"


@dataclass(frozen=True, slots=True)
class POr(Pred):
    left: Pred
    right: Pred

    def __str__(self) -> str:
        return f"({self.left} || {self.right})"


# Commands.


class Cmd:
    """Base class of commands."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Skip(Cmd):
    def __str__(self) -> str:
        return "skip"


@dataclass(frozen=True, slots=True)
class Abort(Cmd):
    def __str__(self) -> str:
        return "abort"


@dataclass(frozen=True, slots=True)
class Assign(Cmd):
    var: str
    expr: Expr

    def __str__(self) -> str:
        return f"{self.var} := {self.expr}"


@dataclass(frozen=True, slots=True)
class Seq(Cmd):
    first: Cmd
    second: Cmd

    def __str__(self) -> str:
        return f"{self.first}; {self.second}"


@dataclass(frozen=True, slots=True)
class If(Cmd):
    guard: Pred
    then: Cmd
    orelse: Cmd

    def __str__(self) -> str:
        return f"if {self.guard} then {self.then} else {self.orelse} end"


@dataclass(frozen=True, slots=True)
class While(Cmd):
    guard: Pred
    body: Cmd

    def __str__(self) -> str:
        return f"while {self.guard} do {self.body} end"


def conj(*preds: Pred) -> Pred:
    """Return the conjunction of predicates; ``true`` when there are none."""
    if not preds:
        return PTrue()
    result = preds[0]
    for pred in preds[1:]:
        result = PAnd(result, pred)
    return result


def seq(*cmds: Cmd) -> Cmd:
    """Return the sequence of commands; ``skip`` when there are none."""
    if not cmds:
        return Skip()
    result = cmds[0]
    for cmd in cmds[1:]:
        result = Seq(result, cmd)
    return result


@dataclass(frozen=True, slots=True)
class Context:
    """An ordered list of distinct typed variables ``x1 : A1, …, xn : An``."""

    entries: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for var, _ in self.entries:
            if var in seen:
                raise SignatureError(f"variable {var} is declared twice")
            seen.add(var)

    @classmethod
    def of(cls, *entries: tuple[str, str]) -> Context:
        """Build a context from ``(variable, sort)`` pairs."""
        return cls(tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(self.entries)

    def __add__(self, other: Context) -> Context:
        return Context(self.entries + other.entries)

    def __str__(self) -> str:
        return ", ".join(f"{var}:{sort}" for var, sort in self.entries)

    @property
    def variables(self) -> tuple[str, ...]:
        """Return the variable names in order."""
        return tuple(var for var, _ in self.entries)

    @property
    def monomial(self) -> Monomial:
        """Return ``⟦Γ⟧``, the product of the sorts in declaration order."""
        return Monomial(tuple(sort for _, sort in self.entries))

    def index(self, var: str) -> int:
        """Return the position of a variable."""
        try:
            return self.variables.index(var)
        except ValueError as exc:
            raise UnboundVariable(f"variable {var} is not in context {self}") from exc

    def sort_of(self, var: str) -> str:
        """Return the sort of a variable."""
        return self.entries[self.index(var)][1]

    def split(self, var: str) -> tuple[Context, str, Context]:
        """Return ``(Γ', A, Δ')`` with ``Γ = Γ', var : A, Δ'``."""
        position = self.index(var)
        return (
            Context(self.entries[:position]),
            self.entries[position][1],
            Context(self.entries[position + 1 :]),
        )

    def format_state(self, values: tuple[int, ...]) -> str:
        """Render a state as ``x=0, y=1``."""
        pairs = zip(self.variables, values, strict=True)
        return ", ".join(f"{var}={value}" for var, value in pairs)


@dataclass(frozen=True)
class ProgramSignature:
    """Sorts, function symbols ``f : U → A`` and predicate symbols ``R : U → 1``.

    Every predicate ``R`` comes with a complement symbol ``!R`` in the
    generated tape signature.
    """

    sorts: frozenset[str]
    functions: Mapping[str, tuple[Monomial, str]] = field(default_factory=dict)
    predicates: Mapping[str, Monomial] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clash = self.functions.keys() & self.predicates.keys()
        if clash:
            raise SignatureError(f"symbols {sorted(clash)} are both functions and predicates")
        for name in self.predicates:
            if is_complement(name):
                raise SignatureError(f"complement {name} is declared automatically")
        self.signature()

    @classmethod
    def build(
        cls,
        sorts: Iterable[str],
        functions: Mapping[str, tuple[Iterable[str], str]] | None = None,
        predicates: Mapping[str, Iterable[str]] | None = None,
    ) -> ProgramSignature:
        """Build a program signature from plain sort names."""
        return cls(
            frozenset(sorts),
            {name: (Monomial(tuple(ar)), sort) for name, (ar, sort) in (functions or {}).items()},
            {name: Monomial(tuple(ar)) for name, ar in (predicates or {}).items()},
        )

    @classmethod
    def from_signature(cls, sig: Signature) -> ProgramSignature:
        """Read symbols with coarity ``1`` as predicates and single sorts as functions."""
        functions: dict[str, tuple[Monomial, str]] = {}
        predicates: dict[str, Monomial] = {}
        for name, (arity, coarity) in sig.symbols.items():
            if is_complement(name):
                continue
            if not coarity.factors:
                predicates[name] = arity
            elif len(coarity) == 1:
                functions[name] = (arity, coarity.factors[0])
            else:
                raise SignatureError(f"symbol {name} is neither a function nor a predicate")
        return cls(sig.sorts, functions, predicates)

    def signature(self) -> Signature:
        """Return the tape signature ``F ∪ P ∪ P̄``."""
        symbols: dict[str, tuple[Monomial, Monomial]] = {
            name: (arity, Monomial((sort,))) for name, (arity, sort) in self.functions.items()
        }
        for name, arity in self.predicates.items():
            symbols[name] = (arity, Monomial())
            symbols[complement_name(name)] = (arity, Monomial())
        return Signature(self.sorts, symbols)

    def theory(self) -> Theory:
        """Return ``𝕀``: functions are total and deterministic, complements are genuine."""
        sig = self.signature()
        return Theory(
            sig,
            function_axioms(sig, sorted(self.functions))
            + predicate_axioms(sig, sorted(self.predicates)),
        )


# Typing.


def _check_args(
    ctx: Context, name: str, arity: Monomial, args: tuple[Expr, ...], sig: ProgramSignature
) -> None:
    if len(args) != len(arity):
        raise ArityMismatch(f"{name} expects {len(arity)} arguments, got {len(args)}")
    for position, (arg, expected) in enumerate(zip(args, arity, strict=True)):
        found = typecheck_expr(ctx, arg, sig)
        if found != expected:
            raise SortMismatch(
                f"argument {position + 1} of {name} has sort {found}, expected {expected}"
            )


def typecheck_expr(ctx: Context, expr: Expr, sig: ProgramSignature) -> str:
    """Return the sort of an expression in a context."""
    match expr:
        case Var(name=name):
            return ctx.sort_of(name)
        case App(fn=fn, args=args):
            if fn not in sig.functions:
                raise UnknownSymbol(f"function {fn!r} is not declared")
            arity, sort = sig.functions[fn]
            _check_args(ctx, fn, arity, args, sig)
            return sort
    raise TypeError(f"not an expression: {expr!r}")


def typecheck_pred(ctx: Context, pred: Pred, sig: ProgramSignature) -> None:
    """Check that a predicate is well typed in a context."""
    match pred:
        case Atom(name=name, args=args) | NAtom(name=name, args=args):
            if name not in sig.predicates:
                raise UnknownSymbol(f"predicate {name!r} is not declared")
            _check_args(ctx, name, sig.predicates[name], args, sig)
        case PAnd(left=left, right=right) | POr(left=left, right=right):
            typecheck_pred(ctx, left, sig)
            typecheck_pred(ctx, right, sig)
        case PTrue() | PFalse():
            pass
        case _:
            raise TypeError(f"not a predicate: {pred!r}")


def typecheck_cmd(ctx: Context, cmd: Cmd, sig: ProgramSignature) -> None:
    """Check that a command is well typed in a context."""
    match cmd:
        case Skip() | Abort():
            pass
        case Assign(var=var, expr=expr):
            expected = ctx.sort_of(var)
            found = typecheck_expr(ctx, expr, sig)
            if found != expected:
                raise SortMismatch(f"cannot assign {found} to {var} : {expected}")
        case Seq(first=first, second=second):
            typecheck_cmd(ctx, first, sig)
            typecheck_cmd(ctx, second, sig)
        case If(guard=guard, then=then, orelse=orelse):
            typecheck_pred(ctx, guard, sig)
            typecheck_cmd(ctx, then, sig)
            typecheck_cmd(ctx, orelse, sig)
        case While(guard=guard, body=body):
            typecheck_pred(ctx, guard, sig)
            typecheck_cmd(ctx, body, sig)
        case _:
            raise TypeError(f"not a command: {cmd!r}")


# Transformations.


def negate(pred: Pred) -> Pred:
    """Push negation to the atoms by De Morgan; ``negate`` is an involution."""
    match pred:
        case Atom(name=name, args=args):
            return NAtom(name, args)
        case NAtom(name=name, args=args):
            return Atom(name, args)
        case PTrue():
            return PFalse()
        case PFalse():
            return PTrue()
        case PAnd(left=left, right=right):
            return POr(negate(left), negate(right))
        case POr(left=left, right=right):
            return PAnd(negate(left), negate(right))
    raise TypeError(f"not a predicate: {pred!r}")


def _substitute_expr(expr: Expr, term: Expr, var: str) -> Expr:
    match expr:
        case Var(name=name):
            return term if name == var else expr
        case App(fn=fn, args=args):
            return App(fn, tuple(_substitute_expr(arg, term, var) for arg in args))
    raise TypeError(f"not an expression: {expr!r}")


def _substitute_pred(pred: Pred, term: Expr, var: str) -> Pred:
    match pred:
        case Atom(name=name, args=args):
            return Atom(name, tuple(_substitute_expr(arg, term, var) for arg in args))
        case NAtom(name=name, args=args):
            return NAtom(name, tuple(_substitute_expr(arg, term, var) for arg in args))
        case PAnd(left=left, right=right):
            return PAnd(_substitute_pred(left, term, var), _substitute_pred(right, term, var))
        case POr(left=left, right=right):
            return POr(_substitute_pred(left, term, var), _substitute_pred(right, term, var))
        case PTrue() | PFalse():
            return pred
    raise TypeError(f"not a predicate: {pred!r}")


def substitute[T: (Expr, Pred)](
    target: T,
    term: Expr,
    var: str,
    *,
    ctx: Context | None = None,
    sig: ProgramSignature | None = None,
) -> T:
    """Return ``target[term/var]``.

    With a context and signature, ``term`` must have the sort of ``var``.
    Expressions bind no variables, so substitution cannot capture.
    """
    if ctx is not None and sig is not None:
        found = typecheck_expr(ctx, term, sig)
        if found != ctx.sort_of(var):
            raise SortMismatch(f"cannot substitute {found} for {var} : {ctx.sort_of(var)}")
    if isinstance(target, Expr):
        return _substitute_expr(target, term, var)
    return _substitute_pred(target, term, var)


def expr_variables(expr: Expr) -> set[str]:
    """Return the variables occurring in an expression."""
    match expr:
        case Var(name=name):
            return {name}
        case App(args=args):
            return set().union(*(expr_variables(arg) for arg in args))
    raise TypeError(f"not an expression: {expr!r}")


def pred_variables(pred: Pred) -> set[str]:
    """Return the variables a predicate depends on."""
    match pred:
        case Atom(args=args) | NAtom(args=args):
            return set().union(*(expr_variables(arg) for arg in args))
        case PAnd(left=left, right=right) | POr(left=left, right=right):
            return pred_variables(left) | pred_variables(right)
    return set()


def assigned_variables(cmd: Cmd) -> set[str]:
    """Return the variables a command may write."""
    match cmd:
        case Assign(var=var):
            return {var}
        case Seq(first=first, second=second) | If(then=first, orelse=second):
            return assigned_variables(first) | assigned_variables(second)
        case While(body=body):
            return assigned_variables(body)
    return set()
