"""Encoding of programs into tapes over ``⟦Γ⟧``, and the coreflexive bridge.

Expressions and atomic predicates become circuits; the control structure of
commands (choice, failure, iteration) lives on the tape layer.
"""

from __future__ import annotations

from kctapes.evaluator import evaluate
from kctapes.exceptions import KCTapesTypeError, NotCoreflexive
from kctapes.interpretation import Interpretation, complement_name
from kctapes.polynomial import ONE, Monomial, as_polynomial
from kctapes.program import (
    Abort,
    App,
    Assign,
    Atom,
    Cmd,
    Context,
    Expr,
    If,
    NAtom,
    PAnd,
    PFalse,
    POr,
    Pred,
    ProgramSignature,
    PTrue,
    Seq,
    Skip,
    Var,
    While,
    negate,
    typecheck_cmd,
    typecheck_expr,
    typecheck_pred,
)
from kctapes.relations import ArrowProperty, arrow_property
from kctapes.sugar import (
    bang,
    circuit_copier,
    circuit_discharger,
    cobang,
    converse,
    copier,
    discharger,
    join,
    ncopier,
    star,
    tensor_tapes,
    whisker_mono,
)
from kctapes.terms import (
    Circuit,
    CSeq,
    Embed,
    Gen,
    Tape,
    TSeq,
    circuit_id,
    ctensor,
    cseq,
    tape_id,
)


def _check_type(tape: Tape, ctx: Context, cod: Monomial, what: str) -> Tape:
    dom = as_polynomial(ctx.monomial)
    if (tape.dom, tape.cod) != (dom, as_polynomial(cod)):
        raise KCTapesTypeError(f"{what} encodes to {tape.dom} → {tape.cod}")
    return tape


def _expr_circuit(ctx: Context, expr: Expr, sig: ProgramSignature) -> Circuit:
    match expr:
        case Var(name=name):
            before, sort, after = ctx.split(name)
            return ctensor(
                circuit_discharger(before.monomial),
                circuit_id(Monomial((sort,))),
                circuit_discharger(after.monomial),
            )
        case App(fn=fn, args=args):
            arity, sort = sig.functions[fn]
            return _apply(ctx, Gen(fn, arity, Monomial((sort,))), args, sig)
    raise TypeError(f"not an expression: {expr!r}")


def _apply(ctx: Context, gen: Gen, args: tuple[Expr, ...], sig: ProgramSignature) -> Circuit:
    """Return ``◁ⁿ_Γ ; (⟦e1⟧ ⊗ … ⊗ ⟦en⟧) ; gen``."""
    return cseq(
        ncopier(ctx.monomial, len(args)),
        ctensor(*(_expr_circuit(ctx, arg, sig) for arg in args)),
        gen,
    )


def encode_expr(ctx: Context, expr: Expr, sig: ProgramSignature) -> Tape:
    """Encode ``Γ ⊢ e : A`` as a tape ``⟦Γ⟧ → A``."""
    sort = typecheck_expr(ctx, expr, sig)
    return _check_type(Embed(_expr_circuit(ctx, expr, sig)), ctx, Monomial((sort,)), str(expr))


def _pred_tape(ctx: Context, pred: Pred, sig: ProgramSignature) -> Tape:
    gamma = as_polynomial(ctx.monomial)
    match pred:
        case Atom(name=name, args=args):
            arity = sig.predicates[name]
            return Embed(_apply(ctx, Gen(name, arity, Monomial()), args, sig))
        case NAtom(name=name, args=args):
            arity = sig.predicates[name]
            return Embed(_apply(ctx, Gen(complement_name(name), arity, Monomial()), args, sig))
        case PTrue():
            return discharger(gamma)
        case PFalse():
            return TSeq(bang(gamma), cobang(ONE))
        case POr(left=left, right=right):
            return join(_pred_tape(ctx, left, sig), _pred_tape(ctx, right, sig))
        case PAnd(left=left, right=right):
            return TSeq(
                copier(gamma),
                tensor_tapes(_pred_tape(ctx, left, sig), _pred_tape(ctx, right, sig)),
            )
    raise TypeError(f"not a predicate: {pred!r}")


def encode_pred(ctx: Context, pred: Pred, sig: ProgramSignature) -> Tape:
    """Encode ``Γ ⊢ P : 1`` as a tape ``⟦Γ⟧ → 1``."""
    typecheck_pred(ctx, pred, sig)
    return _check_type(_pred_tape(ctx, pred, sig), ctx, Monomial(), str(pred))


def coreflexive(pred: Tape) -> Tape:
    """Return ``c(g) = ◁_X ; (id_X ⊗ g)`` for ``g : X → 1``."""
    if pred.cod != ONE or not pred.dom.is_monomial:
        raise KCTapesTypeError(
            f"coreflexive needs a predicate U → 1, got {pred.dom} → {pred.cod}"
        )
    mono = pred.dom[0]
    return TSeq(Embed(circuit_copier(mono)), whisker_mono("left", mono, pred))


def image(
    tape: Tape, interp: Interpretation | None = None, *, check: bool = False
) -> Tape:
    """Return ``i(f) = f† ; !_X``, whose meaning is the image of ``f``.

    With ``check`` the argument is evaluated in ``interp`` and must be a
    coreflexive, on which ``i`` inverts :func:`coreflexive`.
    """
    if tape.dom != tape.cod:
        raise KCTapesTypeError(f"image needs an endo tape, got {tape.dom} → {tape.cod}")
    if check:
        if interp is None:
            raise ValueError("checking an image needs an interpretation")
        meaning = evaluate(tape, interp)
        if not arrow_property(meaning, ArrowProperty.COR):
            raise NotCoreflexive(f"{meaning} is not contained in the identity")
    return TSeq(converse(tape), discharger(tape.cod))


def _cmd_tape(ctx: Context, cmd: Cmd, sig: ProgramSignature) -> Tape:
    gamma = as_polynomial(ctx.monomial)
    match cmd:
        case Skip():
            return tape_id(gamma)
        case Abort():
            return TSeq(bang(gamma), cobang(gamma))
        case Seq(first=first, second=second):
            return TSeq(_cmd_tape(ctx, first, sig), _cmd_tape(ctx, second, sig))
        case If(guard=guard, then=then, orelse=orelse):
            return join(
                TSeq(coreflexive(_pred_tape(ctx, guard, sig)), _cmd_tape(ctx, then, sig)),
                TSeq(
                    coreflexive(_pred_tape(ctx, negate(guard), sig)),
                    _cmd_tape(ctx, orelse, sig),
                ),
            )
        case While(guard=guard, body=body):
            return TSeq(
                star(TSeq(coreflexive(_pred_tape(ctx, guard, sig)), _cmd_tape(ctx, body, sig))),
                coreflexive(_pred_tape(ctx, negate(guard), sig)),
            )
        case Assign(var=var, expr=expr):
            before, sort, after = ctx.split(var)
            return Embed(
                CSeq(
                    ctensor(
                        circuit_copier(before.monomial),
                        circuit_id(Monomial((sort,))),
                        circuit_copier(after.monomial),
                    ),
                    ctensor(
                        circuit_id(before.monomial),
                        _expr_circuit(ctx, expr, sig),
                        circuit_id(after.monomial),
                    ),
                )
            )
    raise TypeError(f"not a command: {cmd!r}")


def encode_cmd(ctx: Context, cmd: Cmd, sig: ProgramSignature) -> Tape:
    """Encode ``Γ ⊢ C`` as an endo tape on ``⟦Γ⟧``."""
    typecheck_cmd(ctx, cmd, sig)
    return _check_type(_cmd_tape(ctx, cmd, sig), ctx, ctx.monomial, str(cmd))
