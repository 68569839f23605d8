"""Program logics as relational inclusions, checked in one interpretation at a time.

=========================  =========================
triple                     inclusion
=========================  =========================
``{P} C {Q}``              ``P† ; C ⊆ Q†``
``[P] C [Q]``              ``P† ; C ⊇ Q†``
``<<P>> C <<Q>>``          ``P ⊆ C ; Q``
``(P) C (Q)``              ``P ⊇ C ; Q``
=========================  =========================

Validity in all models quantifies over interpretations; here a triple is
checked against one model of the program theory, and refutation over many
models goes through :mod:`kctapes.search`.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from typing import Literal

from kctapes import relations as rel
from kctapes.encoding import encode_cmd, encode_pred
from kctapes.evaluator import check_theory, evaluate
from kctapes.exceptions import NotAModel, SchemaMismatch, SignatureError
from kctapes.interpretation import Interpretation, complement_name
from kctapes.polynomial import as_polynomial
from kctapes.program import (
    Assign,
    Cmd,
    Context,
    If,
    PAnd,
    Pred,
    ProgramSignature,
    Seq,
    Skip,
    While,
    negate,
    substitute,
)
from kctapes.relations import Carrier, FinRel
from kctapes.reports import CheckReport, RuleReport, Witness
from kctapes.sugar import converse
from kctapes.terms import Tape, TSeq

TripleKind = Literal["hoare", "incorrectness", "sufficient-incorrectness", "necessary"]
HoareRule = Literal["skip", "assn", "conseq", "seq", "if", "while"]

_BRACKETS: dict[TripleKind, tuple[str, str]] = {
    "hoare": ("{", "}"),
    "incorrectness": ("[", "]"),
    "sufficient-incorrectness": ("<<", ">>"),
    "necessary": ("(", ")"),
}


@dataclass(frozen=True, slots=True)
class Triple:
    """A triple of one of the four logics over a context."""

    kind: TripleKind
    ctx: Context
    pre: Pred
    cmd: Cmd
    post: Pred

    def __str__(self) -> str:
        opening, closing = _BRACKETS[self.kind]
        return f"{opening}{self.pre}{closing} {self.cmd} {opening}{self.post}{closing}"


@dataclass(frozen=True, slots=True)
class Quadruple:
    """A relational Hoare quadruple ``C1 ~ C2 : P ⇒ Q``.

    ``pre`` and ``post`` range over the joined context ``left_ctx, right_ctx``.
    """

    left_ctx: Context
    right_ctx: Context
    pre: Pred
    left: Cmd
    right: Cmd
    post: Pred

    def __post_init__(self) -> None:
        shared = set(self.left_ctx.variables) & set(self.right_ctx.variables)
        if shared:
            raise SignatureError(f"quadruple contexts share variables {sorted(shared)}")

    @property
    def ctx(self) -> Context:
        """Return the joined context."""
        return self.left_ctx + self.right_ctx

    def __str__(self) -> str:
        return f"rel {{{self.pre}}} {self.left} ~ {self.right} {{{self.post}}}"


# Models of the program theory.


def ensure_model(sig: ProgramSignature, interp: Interpretation) -> None:
    """Raise :class:`NotAModel` unless functions are total and deterministic
    and every ``!R`` is the complement of ``R``."""
    report = check_theory(sig.theory(), interp)
    if not report.holds:
        assert report.witness is not None
        raise NotAModel(f"interpretation violates {report.witness.law}")


def program_model(
    sig: ProgramSignature,
    sizes: Mapping[str, int],
    functions: Mapping[str, Callable[..., int]],
    predicates: Mapping[str, Callable[..., bool]],
) -> Interpretation:
    """Interpret functions and predicates by Python callables on sort elements.

    Complements are filled in as set complements.
    """
    tape_sig = sig.signature()
    relations: dict[str, FinRel] = {}
    for name, (arity, sort) in sig.functions.items():
        dom = Carrier.of(as_polynomial(arity), sizes)
        cod = Carrier.of(as_polynomial(tape_sig.symbols[name][1]), sizes)
        fn = functions[name]
        relations[name] = rel.function_graph(
            dom, cod, lambda x, dom=dom, cod=cod, fn=fn: cod.encode(0, (fn(*dom.decode(x)[1]),))
        )
    for name, arity in sig.predicates.items():
        dom = Carrier.of(as_polynomial(arity), sizes)
        point = Carrier.of(as_polynomial(tape_sig.symbols[name][1]), sizes)
        holds = predicates[name]
        relation = FinRel.build(dom, point, ((x, 0) for x in dom if holds(*dom.decode(x)[1])))
        relations[name] = relation
        relations[complement_name(name)] = relation.complement()
    return Interpretation(tape_sig, dict(sizes), relations)


def random_model(
    sig: ProgramSignature, sizes: Mapping[str, int], rng: random.Random
) -> Interpretation:
    """Draw random function graphs and predicates, with genuine complements."""
    tables: dict[str, dict[tuple[int, ...], int]] = {}
    for name, (arity, sort) in sig.functions.items():
        dom = Carrier.of(as_polynomial(arity), sizes)
        tables[name] = {dom.decode(x)[1]: rng.randrange(sizes[sort]) for x in dom}
    subsets: dict[str, set[tuple[int, ...]]] = {}
    for name, arity in sig.predicates.items():
        dom = Carrier.of(as_polynomial(arity), sizes)
        subsets[name] = {dom.decode(x)[1] for x in dom if rng.random() < 0.5}
    return program_model(
        sig,
        sizes,
        {name: lambda *v, t=table: t[v] for name, table in tables.items()},
        {name: lambda *v, s=subset: v in s for name, subset in subsets.items()},
    )


# Checking.


def _state(ctx: Context, carrier: Carrier, element: int) -> str:
    _, values = carrier.decode(element)
    return ctx.format_state(values) if values else carrier.format(element)


def _compare(
    law: str, ctx: Context, lhs: FinRel, rhs: FinRel, *, reverse: bool = False
) -> CheckReport:
    small, large = (rhs, lhs) if reverse else (lhs, rhs)
    pair = rel.least_missing(small, large)
    if pair is None:
        return CheckReport.passed()
    return CheckReport.failed(
        Witness(
            law=law,
            source=_state(ctx, small.dom, pair[0]),
            target=_state(ctx, small.cod, pair[1]),
        )
    )


def triple_relations(
    triple: Triple, sig: ProgramSignature, interp: Interpretation
) -> tuple[FinRel, FinRel]:
    """Return both sides of the triple's inclusion, evaluated."""
    pre = evaluate(encode_pred(triple.ctx, triple.pre, sig), interp)
    cmd = evaluate(encode_cmd(triple.ctx, triple.cmd, sig), interp)
    post = evaluate(encode_pred(triple.ctx, triple.post, sig), interp)
    if triple.kind in ("hoare", "incorrectness"):
        return rel.compose(pre.converse(), cmd), post.converse()
    return pre, rel.compose(cmd, post)


def triple_inequality(triple: Triple, sig: ProgramSignature) -> tuple[Tape, Tape]:
    """Return the triple as an inequality ``lhs ≤ rhs`` between tapes."""
    pre = encode_pred(triple.ctx, triple.pre, sig)
    cmd = encode_cmd(triple.ctx, triple.cmd, sig)
    post = encode_pred(triple.ctx, triple.post, sig)
    match triple.kind:
        case "hoare":
            return TSeq(converse(pre), cmd), converse(post)
        case "incorrectness":
            return converse(post), TSeq(converse(pre), cmd)
        case "sufficient-incorrectness":
            return pre, TSeq(cmd, post)
    return TSeq(cmd, post), pre


def check_triple(
    triple: Triple,
    sig: ProgramSignature,
    interp: Interpretation,
    *,
    check_model: bool = True,
) -> CheckReport:
    """Check a triple in one model; the witness is the first offending state pair."""
    if check_model:
        ensure_model(sig, interp)
    lhs, rhs = triple_relations(triple, sig, interp)
    reverse = triple.kind in ("incorrectness", "necessary")
    return _compare(str(triple), triple.ctx, lhs, rhs, reverse=reverse)


def check_quadruple(
    quad: Quadruple,
    sig: ProgramSignature,
    interp: Interpretation,
    *,
    check_model: bool = True,
) -> CheckReport:
    """Check ``P† ; (C1 ⊗ C2) ⊆ Q†`` over the product of the two state spaces."""
    if check_model:
        ensure_model(sig, interp)
    ctx = quad.ctx
    pre = evaluate(encode_pred(ctx, quad.pre, sig), interp)
    post = evaluate(encode_pred(ctx, quad.post, sig), interp)
    product = rel.tensor(
        evaluate(encode_cmd(quad.left_ctx, quad.left, sig), interp),
        evaluate(encode_cmd(quad.right_ctx, quad.right, sig), interp),
    )
    return _compare(str(quad), ctx, rel.compose(pre.converse(), product), post.converse())


# Hoare rule instances.


def _schema(condition: bool, rule: str, message: str) -> None:
    if not condition:
        raise SchemaMismatch(f"({rule}) {message}")


def _check_schema(rule: HoareRule, premises: Sequence[Triple], conclusion: Triple) -> None:
    triples = [*premises, conclusion]
    _schema(all(t.kind == "hoare" for t in triples), rule, "needs Hoare triples")
    _schema(all(t.ctx == conclusion.ctx for t in triples), rule, "mixes contexts")
    pre, cmd, post = conclusion.pre, conclusion.cmd, conclusion.post
    expected = {"skip": 0, "assn": 0, "conseq": 1, "seq": 2, "if": 2, "while": 1}[rule]
    _schema(len(premises) == expected, rule, f"takes {expected} premises")
    match rule:
        case "skip":
            _schema(isinstance(cmd, Skip) and pre == post, rule, "concludes {P} skip {P}")
        case "assn":
            _schema(
                isinstance(cmd, Assign) and pre == substitute(post, cmd.expr, cmd.var),
                rule,
                "concludes {P[e/x]} x := e {P}",
            )
        case "conseq":
            _schema(premises[0].cmd == cmd, rule, "changes the command")
        case "seq":
            first, second = premises
            _schema(
                cmd == Seq(first.cmd, second.cmd)
                and first.pre == pre
                and first.post == second.pre
                and second.post == post,
                rule,
                "needs {P} C {Q} and {Q} D {R} for {P} C ; D {R}",
            )
        case "if":
            then, orelse = premises
            _schema(
                isinstance(cmd, If)
                and then == Triple("hoare", conclusion.ctx, PAnd(pre, cmd.guard), cmd.then, post)
                and orelse
                == Triple("hoare", conclusion.ctx, PAnd(pre, negate(cmd.guard)), cmd.orelse, post),
                rule,
                "needs {P ∧ B} C {Q} and {P ∧ ¬B} D {Q}",
            )
        case "while":
            _schema(
                isinstance(cmd, While)
                and premises[0]
                == Triple("hoare", conclusion.ctx, PAnd(pre, cmd.guard), cmd.body, pre)
                and post == PAnd(pre, negate(cmd.guard)),
                rule,
                "needs {P ∧ B} C {P} for {P} while B do C {P ∧ ¬B}",
            )


def _side_conditions(
    premise: Triple, conclusion: Triple, sig: ProgramSignature, interp: Interpretation
) -> CheckReport:
    ctx = conclusion.ctx

    def meaning(pred: Pred) -> FinRel:
        return evaluate(encode_pred(ctx, pred, sig), interp)

    stronger = _compare("P1 ⊆ P2", ctx, meaning(conclusion.pre), meaning(premise.pre))
    if not stronger.holds:
        return stronger
    return _compare("Q2 ⊆ Q1", ctx, meaning(premise.post), meaning(conclusion.post))


def verify_hoare_rule_instance(
    rule: HoareRule,
    premises: Sequence[Triple],
    conclusion: Triple,
    sig: ProgramSignature,
    interp: Interpretation,
    *,
    check_model: bool = True,
) -> RuleReport:
    """Check that valid premises give a valid conclusion in one model.

    The instance must match the rule's shape; the side conditions of
    ``conseq`` count as premises.  The verdict fails only when every premise
    holds and the conclusion does not.
    """
    _check_schema(rule, premises, conclusion)
    if check_model:
        ensure_model(sig, interp)
    reports = [check_triple(p, sig, interp, check_model=False) for p in premises]
    if rule == "conseq":
        reports.append(_side_conditions(premises[0], conclusion, sig, interp))
    failing = next((i for i, r in enumerate(reports) if not r.holds), None)
    concluded = check_triple(conclusion, sig, interp, check_model=False)
    fields = {
        "rule": rule,
        "premises_valid": failing is None,
        "conclusion_valid": concluded.holds,
        "failing_premise": failing,
    }
    if failing is None and not concluded.holds:
        assert concluded.witness is not None
        return RuleReport(verdict="fails", witness=concluded.witness, **fields)
    detail = None if failing is None else f"premise {failing} does not hold"
    return RuleReport(verdict="holds", detail=detail, **fields)
