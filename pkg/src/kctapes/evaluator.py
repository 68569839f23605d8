"""The semantic functor from tapes to finite relations, and inclusion checks."""

from __future__ import annotations

from kctapes.exceptions import TypeMismatch
from kctapes.interpretation import Interpretation
from kctapes.polynomial import ZERO, Polynomial
from kctapes import relations as rel
from kctapes.relations import FinRel, Generator
from kctapes.reports import CheckReport, Witness
from kctapes.terms import (
    Bang,
    Circuit,
    CId,
    CIdUnit,
    Cobang,
    Cocopier,
    Codiag,
    Codischarger,
    Copier,
    CSeq,
    CSwap,
    CTensor,
    Diag,
    Discharger,
    Embed,
    Gen,
    Tape,
    TId,
    TIdZero,
    Trace,
    TSeq,
    TSum,
    TSwap,
    typecheck,
)
from kctapes.theories import Theory

_CIRCUIT_GENERATORS = {
    Discharger: Generator.DISCHARGER,
    Copier: Generator.COPIER,
    Codischarger: Generator.CODISCHARGER,
    Cocopier: Generator.COCOPIER,
}
_TAPE_GENERATORS = {
    Bang: Generator.BANG,
    Diag: Generator.DIAG,
    Cobang: Generator.COBANG,
    Codiag: Generator.CODIAG,
}


def evaluate_circuit(circuit: Circuit, interp: Interpretation) -> FinRel:
    """Interpret a circuit as a relation between monomial carriers."""
    match circuit:
        case CId() | CIdUnit():
            return rel.identity(interp.carrier(circuit.dom))
        case Gen(name=name):
            found = interp.relation(name)
            expected = (interp.carrier(circuit.dom), interp.carrier(circuit.cod))
            if (found.dom, found.cod) != expected:
                raise TypeMismatch(f"symbol {name} is used at a type it is not declared at")
            return found
        case CSwap(left=left, right=right):
            return rel.tensor_swap(
                interp.carrier(Polynomial.mono(left)), interp.carrier(Polynomial.mono(right))
            )
        case CSeq(first=first, second=second):
            return rel.compose(evaluate_circuit(first, interp), evaluate_circuit(second, interp))
        case CTensor(left=left, right=right):
            return rel.tensor(evaluate_circuit(left, interp), evaluate_circuit(right, interp))
        case Discharger() | Copier() | Codischarger() | Cocopier():
            kind = _CIRCUIT_GENERATORS[type(circuit)]
            return rel.generator(kind, interp.carrier(Polynomial.mono(circuit.sort)))
    raise TypeMismatch(f"cannot evaluate {type(circuit).__name__}")


def evaluate(term: Tape, interp: Interpretation) -> FinRel:
    """Interpret a tape as a relation ``⟦dom⟧ → ⟦cod⟧``."""
    match term:
        case TId(mono=mono):
            return rel.identity(interp.carrier(mono))
        case TIdZero():
            return rel.identity(interp.carrier(ZERO))
        case Embed(circuit=circuit):
            return evaluate_circuit(circuit, interp)
        case TSwap(left=left, right=right):
            return rel.sum_swap(interp.carrier(left), interp.carrier(right))
        case TSeq(first=first, second=second):
            return rel.compose(evaluate(first, interp), evaluate(second, interp))
        case TSum(left=left, right=right):
            return rel.direct_sum(evaluate(left, interp), evaluate(right, interp))
        case Bang(mono=mono) | Diag(mono=mono) | Cobang(mono=mono) | Codiag(mono=mono):
            return rel.generator(_TAPE_GENERATORS[type(term)], interp.carrier(mono))
        case Trace(mono=mono, body=body):
            return rel.trace(Polynomial((mono,)), evaluate(body, interp))
    raise TypeMismatch(f"cannot evaluate {type(term).__name__}")


def missing_pair_witness(law: str, lhs: FinRel, rhs: FinRel) -> Witness | None:
    """Return the least pair of ``lhs`` outside ``rhs`` as a witness, if any."""
    pair = rel.least_missing(lhs, rhs)
    if pair is None:
        return None
    return Witness(
        law=law, source=lhs.dom.format(pair[0]), target=lhs.cod.format(pair[1])
    )


def check_inclusion(
    lhs: Tape, rhs: Tape, interp: Interpretation, *, law: str = "lhs ≤ rhs"
) -> CheckReport:
    """Check ``⟦lhs⟧ ⊆ ⟦rhs⟧``; a failure names the least missing pair."""
    if (lhs.dom, lhs.cod) != (rhs.dom, rhs.cod):
        raise TypeMismatch(
            f"cannot compare {lhs.dom} → {lhs.cod} with {rhs.dom} → {rhs.cod}"
        )
    typecheck(lhs, interp.signature)
    typecheck(rhs, interp.signature)
    witness = missing_pair_witness(law, evaluate(lhs, interp), evaluate(rhs, interp))
    return CheckReport.passed() if witness is None else CheckReport.failed(witness)


def check_equality(
    lhs: Tape, rhs: Tape, interp: Interpretation, *, law: str = "lhs = rhs"
) -> CheckReport:
    """Check ``⟦lhs⟧ = ⟦rhs⟧`` as two inclusions."""
    forward = check_inclusion(lhs, rhs, interp, law=f"{law} (≤)")
    if not forward.holds:
        return forward
    return check_inclusion(rhs, lhs, interp, law=f"{law} (≥)")


def check_theory(theory: Theory, interp: Interpretation) -> CheckReport:
    """Check every axiom of a theory; the first failing inclusion is reported."""
    for label, lhs, rhs in (inc for axiom in theory.axioms for inc in axiom.inclusions()):
        report = check_inclusion(lhs, rhs, interp, law=label)
        if not report.holds:
            return report
    return CheckReport.passed(detail=f"{len(theory.axioms)} axioms hold")
