"""Acceptance suites: the algebraic laws, checked exactly on finite relations.

Every suite samples (or enumerates) instances with a seeded generator and
returns a :class:`SuiteReport` listing one witness per violated law.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Callable, Iterable, Mapping
from functools import partial
from itertools import product

from kctapes import relations as rel
from kctapes.calculus import (
    CRConverse,
    CRStar,
    Sym,
    check_cr,
    cr_interpretation,
    encode_cr,
    eval_cr,
    parse_cr,
    random_cr,
)
from kctapes.encoding import coreflexive, encode_cmd, encode_pred, image
from kctapes.evaluator import evaluate
from kctapes.interpretation import Interpretation
from kctapes.kleene import (
    BooleanKA,
    KAMatrix,
    MatrixKA,
    RelationKA,
    boolean_matrix,
    check_ka_laws,
    mat_star,
    point_carrier,
    random_relation,
    relation_of_matrix,
)
from kctapes.logics import (
    HoareRule,
    Quadruple,
    Triple,
    check_quadruple,
    check_triple,
    program_model,
    random_model,
    verify_hoare_rule_instance,
)
from kctapes.options import LawOptions, SearchOptions
from kctapes.peano import (
    add_at_successor,
    add_at_zero,
    addition,
    addition_star,
    agree_where_defined,
    truncated_naturals,
)
from kctapes.polynomial import ONE, ZERO, Monomial, Polynomial, Signature, as_polynomial
from kctapes.program import (
    App,
    Assign,
    Atom,
    Cmd,
    Context,
    Expr,
    If,
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
    substitute,
)
from kctapes.program_parser import parse_pred, parse_program
from kctapes.relations import ArrowProperty, Carrier, FinRel
from kctapes.reports import SuiteReport, Witness
from kctapes.search import relation_from_mask, search_countermodel
from kctapes.sugar import (
    bang,
    bot,
    cobang,
    cocopier,
    codiag,
    codischarger,
    converse,
    copier,
    diag,
    discharger,
    distributor,
    distributor_inverse,
    join,
    meet,
    star,
    sum_swap,
    tensor_swap,
    tensor_tapes,
    top,
    trace_poly,
    whisker_mono,
)
from kctapes.terms import Embed, Gen, Tape, Trace, TSeq, TSum, tape_id, tseq

_LOGGER = logging.getLogger(__name__)

Equation = tuple[Tape, Tape, str]


class _Tally:
    """Collects law checks for one suite."""

    def __init__(self, suite: str, seed: int):
        self.suite = suite
        self.seed = seed
        self.checked = 0
        self.failures: list[Witness] = []
        self.laws: set[str] = set()
        self._failed_laws: set[str] = set()

    def check(self, law: str, holds: bool, **bindings: object) -> bool:
        """Record one check; only the first failure of each law is kept."""
        self.checked += 1
        self.laws.add(law)
        if not holds and law not in self._failed_laws:
            self._failed_laws.add(law)
            self.failures.append(
                Witness(law=law, bindings={key: str(value) for key, value in bindings.items()})
            )
            _LOGGER.debug("%s: %s fails for %s", self.suite, law, bindings)
        return holds

    def relations(
        self, law: str, lhs: FinRel, rhs: FinRel, kind: str, interp: Interpretation | None = None
    ) -> bool:
        """Compare two relations by ``eq`` or ``leq``."""
        holds = lhs == rhs if kind == "eq" else lhs <= rhs
        if holds:
            return self.check(law, True)
        missing = rel.least_missing(lhs, rhs) or rel.least_missing(rhs, lhs)
        bindings: dict[str, object] = interp.describe() if interp is not None else {}
        if missing is not None:
            bindings["pair"] = f"({lhs.dom.format(missing[0])},{lhs.cod.format(missing[1])})"
        return self.check(law, False, **bindings)

    def tapes(self, law: str, equation: Equation, interp: Interpretation) -> bool:
        """Evaluate both sides of an equation in one interpretation."""
        lhs, rhs, kind = equation
        return self.relations(law, evaluate(lhs, interp), evaluate(rhs, interp), kind, interp)

    def report(self) -> SuiteReport:
        """Return the suite report and log its outcome."""
        _LOGGER.info(
            "Suite %s: %s checks, %s failing laws (seed %s)",
            self.suite,
            self.checked,
            len(self.failures),
            self.seed,
        )
        return SuiteReport(
            suite=self.suite,
            seed=self.seed,
            checked=self.checked,
            laws=sorted(self.laws),
            failures=self.failures,
        )


def random_interpretation(
    sig: Signature, sizes: Mapping[str, int], rng: random.Random, density: float = 0.4
) -> Interpretation:
    """Interpret every symbol by a random relation of the right type."""
    relations = {
        name: random_relation(
            rng,
            Carrier.of(as_polynomial(arity), sizes),
            Carrier.of(as_polynomial(coarity), sizes),
            density,
        )
        for name, (arity, coarity) in sorted(sig.symbols.items())
    }
    return Interpretation(sig, dict(sizes), relations)


def _random_sizes(sorts: Iterable[str], max_size: int, rng: random.Random) -> dict[str, int]:
    return {sort: rng.randint(1, max_size) for sort in sorted(sorts)}


def _gen(name: str, dom: str, cod: str) -> Tape:
    return Embed(Gen(name, Monomial.of(dom), Monomial.of(cod)))


# Axioms of the two monoidal layers, rig coherence and the trace.

_A, _B = Polynomial.mono("A"), Polynomial.mono("B")
_AB = _A + _B
_AXIOM_SIGNATURE = Signature.build(
    ["A", "B"],
    {"R": (["A"], ["A"]), "S": (["A"], ["A"]), "T": (["A"], ["B"]), "U": (["B"], ["A"])},
)


def _axiom_equations() -> dict[str, Equation]:
    r, s, t, u = _gen("R", "A", "A"), _gen("S", "A", "A"), _gen("T", "A", "B"), _gen("U", "B", "A")
    a, ab = _A, _AB
    id_a = tape_id(a)
    body = tseq(TSum(r, s), codiag(a), diag(a), TSum(s, r))
    into = tseq(diag(a), TSum(s, t))
    out = TSeq(TSum(r, u), codiag(a))
    return {
        # Biproduct layer.
        "◁ associative": (
            TSeq(diag(a), TSum(diag(a), id_a)),
            TSeq(diag(a), TSum(id_a, diag(a))),
            "eq",
        ),
        "◁ unital": (TSeq(diag(a), TSum(bang(a), id_a)), id_a, "eq"),
        "◁ commutative": (TSeq(diag(a), sum_swap(a, a)), diag(a), "eq"),
        "▷ associative": (
            TSeq(TSum(codiag(a), id_a), codiag(a)),
            TSeq(TSum(id_a, codiag(a)), codiag(a)),
            "eq",
        ),
        "▷ unital": (TSeq(TSum(cobang(a), id_a), codiag(a)), id_a, "eq"),
        "▷ commutative": (TSeq(sum_swap(a, a), codiag(a)), codiag(a), "eq"),
        "◁ natural": (TSeq(t, diag(_B)), TSeq(diag(a), TSum(t, t)), "eq"),
        "! natural": (TSeq(t, bang(_B)), bang(a), "eq"),
        "▷ natural": (TSeq(TSum(t, t), codiag(_B)), TSeq(codiag(a), t), "eq"),
        "¡ natural": (TSeq(cobang(a), t), cobang(_B), "eq"),
        "◁ ; ▷ = id": (TSeq(diag(a), codiag(a)), id_a, "eq"),
        "id ≤ ▷ ; ◁": (tape_id(a + a), TSeq(codiag(a), diag(a)), "leq"),
        "! ; ¡ ≤ id": (TSeq(bang(a), cobang(a)), id_a, "leq"),
        "σ⊕ ; σ⊕ = id": (TSeq(sum_swap(a, _B), sum_swap(_B, a)), tape_id(ab), "eq"),
        # Cartesian layer.
        "copier associative": (
            TSeq(copier(a), tensor_tapes(copier(a), id_a)),
            TSeq(copier(a), tensor_tapes(id_a, copier(a))),
            "eq",
        ),
        "copier unital": (TSeq(copier(a), tensor_tapes(discharger(a), id_a)), id_a, "eq"),
        "copier commutative": (TSeq(copier(a), tensor_swap(a, a)), copier(a), "eq"),
        "cocopier associative": (
            TSeq(tensor_tapes(cocopier(a), id_a), cocopier(a)),
            TSeq(tensor_tapes(id_a, cocopier(a)), cocopier(a)),
            "eq",
        ),
        "cocopier unital": (TSeq(tensor_tapes(codischarger(a), id_a), cocopier(a)), id_a, "eq"),
        "frobenius": (
            TSeq(tensor_tapes(id_a, copier(a)), tensor_tapes(cocopier(a), id_a)),
            TSeq(cocopier(a), copier(a)),
            "eq",
        ),
        "special": (TSeq(copier(a), cocopier(a)), id_a, "eq"),
        "copier lax natural": (TSeq(r, copier(a)), TSeq(copier(a), tensor_tapes(r, r)), "leq"),
        "discharger lax natural": (TSeq(t, discharger(_B)), discharger(a), "leq"),
        "cocopier lax natural": (
            TSeq(cocopier(a), r),
            TSeq(tensor_tapes(r, r), cocopier(a)),
            "leq",
        ),
        "codischarger lax natural": (TSeq(codischarger(a), t), codischarger(_B), "leq"),
        "id ≤ ! ; ¡": (id_a, TSeq(discharger(a), codischarger(a)), "leq"),
        "▷ ; ◁ ≤ id ⊗ id": (
            TSeq(cocopier(a), copier(a)),
            tape_id(Polynomial.of(Monomial.of("A", "A"))),
            "leq",
        ),
        # Rig coherence.
        "δ ; δ⁻¹ = id": (
            TSeq(distributor(ab, a, _B), distributor_inverse(ab, a, _B)),
            tape_id(ab * ab),
            "eq",
        ),
        "σ⊗ ; σ⊗ = id": (TSeq(tensor_swap(ab, a), tensor_swap(a, ab)), tape_id(ab * a), "eq"),
        "σ⊗ natural": (
            TSeq(tensor_tapes(out, r), tensor_swap(a, a)),
            TSeq(tensor_swap(ab, a), tensor_tapes(r, out)),
            "eq",
        ),
        "polynomial copier unital": (
            TSeq(copier(ab), tensor_tapes(discharger(ab), tape_id(ab))),
            tape_id(ab),
            "eq",
        ),
        "polynomial special": (TSeq(copier(ab), cocopier(ab)), tape_id(ab), "eq"),
        "polynomial copier lax natural": (
            TSeq(into, copier(ab)),
            TSeq(copier(a), tensor_tapes(into, into)),
            "leq",
        ),
        # Trace.
        "trace yanking": (Trace(Monomial.of("A"), sum_swap(a, a)), id_a, "eq"),
        "trace naturality": (
            tseq(r, Trace(Monomial.of("A"), body), s),
            Trace(Monomial.of("A"), tseq(TSum(id_a, r), body, TSum(id_a, s))),
            "eq",
        ),
        "trace sliding": (
            Trace(Monomial.of("A"), TSeq(body, TSum(r, id_a))),
            Trace(Monomial.of("A"), TSeq(TSum(r, id_a), body)),
            "eq",
        ),
        "trace superposing": (
            Trace(Monomial.of("A"), TSum(body, tape_id(_B))),
            TSum(Trace(Monomial.of("A"), body), tape_id(_B)),
            "eq",
        ),
        "trace tightening": (Trace(Monomial.of("A"), TSeq(codiag(a), diag(a))), id_a, "leq"),
    }


def _direct_checks(tally: _Tally, interp: Interpretation) -> None:
    """Compare derived structure on polynomials with its relational definition."""
    c_ab, c_a, c_b = interp.carrier(_AB), interp.carrier(_A), interp.carrier(_B)
    pair = c_ab.pairing(c_ab)
    copy = FinRel.build(c_ab, c_ab.multiply(c_ab), ((x, pair(x, x)) for x in c_ab))
    tally.relations("copier is the diagonal", evaluate(copier(_AB), interp), copy, "eq", interp)
    tally.relations(
        "cocopier is the converse diagonal",
        evaluate(cocopier(_AB), interp),
        copy.converse(),
        "eq",
        interp,
    )
    tally.relations(
        "discharger is total",
        evaluate(discharger(_AB), interp),
        rel.full(c_ab, interp.carrier(ONE)),
        "eq",
        interp,
    )
    tally.relations(
        "σ⊗ is the swap",
        evaluate(tensor_swap(_AB, _A), interp),
        rel.tensor_swap(c_ab, c_a),
        "eq",
        interp,
    )
    tally.relations(
        "σ⊕ is the swap",
        evaluate(sum_swap(_A, _B), interp),
        rel.sum_swap(c_a, c_b),
        "eq",
        interp,
    )
    whole, left, right = c_ab.multiply(c_a.add(c_b)), c_ab.pairing(c_a), c_ab.pairing(c_b)
    spread = c_ab.pairing(c_a.add(c_b))
    offset = c_ab.multiply(c_a).size
    direct = FinRel.build(
        whole,
        c_ab.multiply(c_a).add(c_ab.multiply(c_b)),
        [(spread(p, q), left(p, q)) for p in c_ab for q in c_a]
        + [(spread(p, c_a.size + q), offset + right(p, q)) for p in c_ab for q in c_b],
    )
    tally.relations(
        "δ is the rig isomorphism",
        evaluate(distributor(_AB, _A, _B), interp),
        direct,
        "eq",
        interp,
    )
    r, t = _gen("R", "A", "A"), _gen("T", "A", "B")
    out = TSeq(TSum(r, _gen("U", "B", "A")), codiag(_A))
    tally.relations(
        "⊗ of tapes is the product",
        evaluate(tensor_tapes(out, t), interp),
        rel.tensor(evaluate(out, interp), evaluate(t, interp)),
        "eq",
        interp,
    )
    body = tseq(TSum(r, r), codiag(_A), diag(_A), TSum(r, r))
    tally.relations(
        "trace commutes with ⊗",
        rel.tensor(evaluate(Trace(Monomial.of("A"), body), interp), rel.identity(c_b)),
        evaluate(
            Trace(Monomial.of("A", "B"), whisker_mono("right", Monomial.of("B"), body)), interp
        ),
        "eq",
        interp,
    )


def _vanishing_checks(tally: _Tally, interp: Interpretation) -> None:
    """Trace over ``0`` does nothing; trace over ``U ⊕ V`` is the nested trace."""
    r, s = _gen("R", "A", "A"), _gen("S", "A", "A")
    t, u = _gen("T", "A", "B"), _gen("U", "B", "A")
    body = tseq(TSum(r, s), codiag(_A), diag(_A), TSum(s, r))
    meaning = evaluate(body, interp)
    tally.relations(
        "trace over 0 is the identity map", rel.trace(ZERO, meaning), meaning, "eq", interp
    )
    # A ⊕ B ⊕ A, with the B summand mixed into the last A.
    loop = tseq(
        TSum(tape_id(_A), sum_swap(_B, _A)),
        TSum(body, TSeq(u, t)),
        TSum(tape_id(_A), sum_swap(_A, _B)),
        TSum(TSeq(t, u), tseq(TSum(u, tape_id(_A)), codiag(_A), diag(_A), TSum(t, tape_id(_A)))),
    )
    whole = evaluate(loop, interp)
    tally.relations(
        "trace over U ⊕ V is one trace",
        evaluate(trace_poly(_AB, loop), interp),
        rel.trace(_AB, whole),
        "eq",
        interp,
    )
    tally.relations(
        "trace over U ⊕ V nests",
        rel.trace(_AB, whole),
        rel.trace(_B, rel.trace(_A, whole)),
        "eq",
        interp,
    )


def axioms_suite(options: LawOptions) -> SuiteReport:
    """Check the layer axioms, rig coherence and trace laws on random models."""
    tally = _Tally("axioms", options.seed)
    rng = random.Random(options.seed)
    equations = _axiom_equations()
    for _ in range(options.samples):
        sizes = _random_sizes(_AXIOM_SIGNATURE.sorts, options.max_size, rng)
        interp = random_interpretation(_AXIOM_SIGNATURE, sizes, rng)
        for law, equation in equations.items():
            tally.tapes(law, equation, interp)
        _direct_checks(tally, interp)
        _vanishing_checks(tally, interp)
    return tally.report()


# Kleene algebra laws and matrices.


def _all_boolean_matrices(size: int) -> Iterable[KAMatrix[bool]]:
    for cells in product((False, True), repeat=size * size):
        yield KAMatrix.of(
            [list(cells[i * size : (i + 1) * size]) for i in range(size)], size
        )


def kozen_suite(options: LawOptions) -> SuiteReport:
    """Check Kozen's laws for relations and boolean matrices.

    Matrices of dimension up to ``max_size`` are enumerated and their star is
    compared with the reflexive-transitive closure.
    """
    tally = _Tally("kozen", options.seed)
    rng = random.Random(options.seed)
    instances = [BooleanKA(), MatrixKA(BooleanKA(), 2)] + [
        RelationKA(point_carrier(size)) for size in range(1, max(options.max_size, 5) + 1)
    ]
    for ka in instances:
        report = check_ka_laws(ka, options.samples, rng.randrange(1 << 30))
        tally.check(
            f"Kleene laws for {ka.name}",
            report.holds,
            **(report.witness.bindings if report.witness else {}),
        )
    boolean = BooleanKA()
    for size in range(1, max(options.max_size, 4) + 1):
        carrier = point_carrier(size)
        for matrix in _all_boolean_matrices(size):
            closure = rel.star(relation_of_matrix(matrix, carrier, carrier))
            tally.check(
                "matrix star is the closure",
                mat_star(boolean, matrix) == boolean_matrix(closure),
                matrix=matrix.entries,
            )
    return tally.report()


# Star and trace.


def _via_trace(relation: FinRel) -> FinRel:
    sig = Signature.build(["A"], {"R": (["A"], ["A"])})
    interp = Interpretation(sig, {"A": relation.dom.size}, {"R": relation})
    return evaluate(star(_gen("R", "A", "A")), interp)


def _uniformity(tally: _Tally, rng: random.Random, max_size: int) -> None:
    """Check both posetal uniformity implications on instances meeting the premise."""
    sizes = _random_sizes("STXY", max_size, rng)
    s, t, x, y = (Carrier.of(Polynomial.mono(sort), sizes) for sort in "STXY")
    f = random_relation(rng, s.add(x), s.add(y))
    total = rel.function_graph(s, t, lambda _: rng.randrange(t.size)) | random_relation(rng, s, t)
    lifted_x = rel.direct_sum(total, rel.identity(x))
    lifted_y = rel.direct_sum(total, rel.identity(y))
    g = rel.compose(rel.compose(lifted_x.converse(), f), lifted_y) | random_relation(
        rng, t.add(x), t.add(y), 0.2
    )
    tally.check("uniformity premise", rel.compose(f, lifted_y) <= rel.compose(lifted_x, g))
    tally.relations(
        "uniformity along a total r", rel.trace(s.shape, f), rel.trace(t.shape, g), "leq"
    )
    # r : T → S hits every element of S.
    onto = rel.function_graph(s, t, lambda _: rng.randrange(t.size)).converse() | random_relation(
        rng, t, s
    )
    back_x = rel.direct_sum(onto, rel.identity(x))
    back_y = rel.direct_sum(onto, rel.identity(y))
    h = random_relation(rng, s.add(x), s.add(y))
    k = rel.compose(rel.compose(back_x, h), back_y.converse()) | random_relation(
        rng, t.add(x), t.add(y), 0.2
    )
    tally.check("uniformity premise", rel.compose(back_x, h) <= rel.compose(k, back_y))
    tally.relations(
        "uniformity along a surjective r", rel.trace(s.shape, h), rel.trace(t.shape, k), "leq"
    )


def star_trace_suite(options: LawOptions) -> SuiteReport:
    """Compare the fixpoint star with the star built from the trace."""
    tally = _Tally("star-trace", options.seed)
    rng = random.Random(options.seed)
    for size in range(1, options.max_size + 1):
        carrier = point_carrier(size, "A")
        for mask in range(1 << (size * size)):
            relation = relation_from_mask(carrier, carrier, mask)
            tally.relations("star = trace star", rel.star(relation), _via_trace(relation), "eq")
    for _ in range(options.samples):
        size = rng.randint(options.max_size + 1, options.max_size + 2)
        carrier = point_carrier(size, "A")
        relation = random_relation(rng, carrier, carrier)
        tally.relations("star = trace star", rel.star(relation), _via_trace(relation), "eq")
        small_f = point_carrier(rng.randint(1, 2), "A")
        small_g = point_carrier(rng.randint(1, 2), "B")
        f = random_relation(rng, small_f, small_f)
        g = random_relation(rng, small_g, small_g)
        both = rel.tensor(rel.star(f), rel.star(g))
        tally.relations("star(f ⊗ g) ≤ f* ⊗ g*", rel.star(rel.tensor(f, g)), both, "leq")
        spread = rel.tensor(f, rel.identity(small_g)) | rel.tensor(rel.identity(small_f), g)
        tally.relations("f* ⊗ g* = star(f ⊗ id ⊔ id ⊗ g)", both, rel.star(spread), "eq")
        _uniformity(tally, rng, options.max_size)
    return tally.report()


def matrix_normal_form_suite(options: LawOptions) -> SuiteReport:
    """Check block decomposition and the blockwise order, exhaustively."""
    tally = _Tally("matrix-normal-form", options.seed)
    shapes = [(a, b) for a in range(3) for b in range(3) if a + b <= 2]
    for (s, x), (t, y) in product(shapes, repeat=2):
        sizes = {"S": s, "X": x, "T": t, "Y": y}
        dom = Carrier.of(Polynomial.mono("S") + Polynomial.mono("X"), sizes)
        cod = Carrier.of(Polynomial.mono("T") + Polynomial.mono("Y"), sizes)
        relations = [relation_from_mask(dom, cod, m) for m in range(1 << (dom.size * cod.size))]
        split = tuple(Polynomial.mono(sort) for sort in "SXTY")
        for f in relations:
            tally.relations(
                "recompose ∘ blocks = id", rel.recompose(*rel.blocks(f, *split)), f, "eq"
            )
        for f, g in product(relations, repeat=2):
            blockwise = all(
                a <= b
                for a, b in zip(rel.blocks(f, *split), rel.blocks(g, *split), strict=True)
            )
            tally.check("f ≤ g iff blockwise", (f <= g) == blockwise, f=f, g=g)
    return tally.report()


def coreflexive_suite(options: LawOptions) -> SuiteReport:
    """Check that ``c`` and ``i`` are inverse, and the coreflexive characterisation."""
    tally = _Tally("coreflexive", options.seed)
    sig = Signature.build(["X"], {"g": (["X"], []), "k": (["X"], ["X"])})
    g, k = _gen_pred("g"), _gen("k", "X", "X")
    for size in range(1, max(options.max_size, 4) + 1):
        carrier = point_carrier(size)
        point = Carrier.of(ONE, {})
        for mask in range(1 << size):
            predicate = relation_from_mask(carrier, point, mask)
            cor = FinRel.build(carrier, carrier, ((x, x) for x, _ in predicate.pairs))
            interp = Interpretation(sig, {"X": size}, {"g": predicate, "k": cor})
            tally.relations("c(g) semantics", evaluate(coreflexive(g), interp), cor, "eq", interp)
            tally.tapes("i(c(g)) = g", (image(coreflexive(g)), g, "eq"), interp)
            tally.tapes("c(i(k)) = k", (coreflexive(image(k, interp, check=True)), k, "eq"), interp)
    for size in range(1, options.max_size + 1):
        carrier = point_carrier(size)
        for mask in range(1 << (size * size)):
            relation = relation_from_mask(carrier, carrier, mask)
            props = {p: rel.arrow_property(relation, p) for p in ArrowProperty}
            parts = (ArrowProperty.TRN, ArrowProperty.SYM, ArrowProperty.SV)
            tally.check(
                "COR iff TRN, SYM and SV",
                props[ArrowProperty.COR] == all(props[p] for p in parts),
                relation=relation,
            )
            for prop, value in props.items():
                tally.check(
                    f"{prop} by inclusions",
                    rel.arrow_property_adjoint(relation, prop) == value,
                    relation=relation,
                )
    return tally.report()


def _gen_pred(name: str) -> Tape:
    return Embed(Gen(name, Monomial.of("X"), Monomial()))


# Derived operations.

_DERIVED_SIGNATURE = Signature.build(
    ["A"], {"R": (["A"], ["A"]), "S": (["A"], ["A"]), "T": (["A"], ["A"])}
)


def _derived_equations() -> dict[str, Equation]:
    f, g, h = _gen("R", "A", "A"), _gen("S", "A", "A"), _gen("T", "A", "A")
    a = _A
    return {
        "f ⊔ g = g ⊔ f": (join(f, g), join(g, f), "eq"),
        "f ⊔ f = f": (join(f, f), f, "eq"),
        "f ⊔ ⊥ = f": (join(f, bot(a, a)), f, "eq"),
        "f ; ⊥ = ⊥": (TSeq(f, bot(a, a)), bot(a, a), "eq"),
        "f ⊓ f = f": (meet(f, f), f, "eq"),
        "f ⊓ g = g ⊓ f": (meet(f, g), meet(g, f), "eq"),
        "f ⊓ ⊤ = f": (meet(f, top(a, a)), f, "eq"),
        "f ≤ ⊤": (f, top(a, a), "leq"),
        "f†† = f": (converse(converse(f)), f, "eq"),
        "(f ; g)† = g† ; f†": (converse(TSeq(f, g)), TSeq(converse(g), converse(f)), "eq"),
        "(f ⊓ g)† = f† ⊓ g†": (converse(meet(f, g)), meet(converse(f), converse(g)), "eq"),
        "(f ⊔ g)† = f† ⊔ g†": (converse(join(f, g)), join(converse(f), converse(g)), "eq"),
        "f ; (g ⊔ h) = f ; g ⊔ f ; h": (TSeq(f, join(g, h)), join(TSeq(f, g), TSeq(f, h)), "eq"),
        "f ; (g ⊓ h) ≤ f ; g ⊓ f ; h": (TSeq(f, meet(g, h)), meet(TSeq(f, g), TSeq(f, h)), "leq"),
        "f ; g ⊓ h ≤ f ; (g ⊓ f† ; h)": (
            meet(TSeq(f, g), h),
            TSeq(f, meet(g, TSeq(converse(f), h))),
            "leq",
        ),
        "f ≤ f ; f† ; f": (f, tseq(f, converse(f), f), "leq"),
        "id ⊔ f ; f* = f*": (join(tape_id(a), TSeq(f, star(f))), star(f), "eq"),
        "id ⊔ f* ; f = f*": (join(tape_id(a), TSeq(star(f), f)), star(f), "eq"),
        "(f ⊓ g)* ≤ f* ⊓ g*": (star(meet(f, g)), meet(star(f), star(g)), "leq"),
        "⊤* = ⊤": (star(top(a, a)), top(a, a), "eq"),
        "(f†)* = (f*)†": (star(converse(f)), converse(star(f)), "eq"),
        "f* ; f* = f*": (TSeq(star(f), star(f)), star(f), "eq"),
    }


def derived_suite(options: LawOptions) -> SuiteReport:
    """Check the derived laws of both layers, and that sugar means what it says."""
    tally = _Tally("derived", options.seed)
    rng = random.Random(options.seed)
    equations = _derived_equations()
    f, g = _gen("R", "A", "A"), _gen("S", "A", "A")
    for _ in range(options.samples):
        interp = random_interpretation(
            _DERIVED_SIGNATURE, {"A": rng.randint(1, options.max_size)}, rng
        )
        for law, equation in equations.items():
            tally.tapes(law, equation, interp)
        rf, rg = interp.relation("R"), interp.relation("S")
        carrier = rf.dom
        meanings = {
            "⟦f ⊓ g⟧ = ∩": (meet(f, g), rf & rg),
            "⟦f ⊔ g⟧ = ∪": (join(f, g), rf | rg),
            "⟦f†⟧ = converse": (converse(f), rf.converse()),
            "⟦f*⟧ = closure": (star(f), rel.star(rf)),
            "⟦⊤⟧ = full": (top(_A, _A), rel.full(carrier, carrier)),
            "⟦⊥⟧ = empty": (bot(_A, _A), rel.empty(carrier, carrier)),
        }
        for law, (tape, expected) in meanings.items():
            tally.relations(law, evaluate(tape, interp), expected, "eq", interp)
    return tally.report()


# Calculus of relations.

_VALID_CR = ("id <= R*", "R;R* <= R*", "(R^)* <= (R*)^", "(R*)^ <= (R^)*", "R & S <= R")
_INVALID_CR = ("R;R <= R", "R <= R;R", "R* <= R")


def cr_soundness_suite(options: LawOptions) -> SuiteReport:
    """Compare direct evaluation with evaluation of the encoding, and run search."""
    tally = _Tally("cr-soundness", options.seed)
    rng = random.Random(options.seed)
    for _ in range(options.samples):
        expr = random_cr(rng, 5)
        size = rng.randint(1, options.max_size)
        carrier = point_carrier(size, "A")
        relations = {
            name: random_relation(rng, carrier, carrier).sorted_pairs() for name in ("R", "S")
        }
        interp = cr_interpretation(size, relations)
        tally.relations(
            "eval_cr = eval ∘ encode_cr",
            eval_cr(expr, interp),
            evaluate(encode_cr(expr), interp),
            "eq",
            interp,
        )
    search = SearchOptions(max_size=min(options.max_size, 3), seed=options.seed)
    for text in _VALID_CR:
        lhs, rhs = (parse_cr(side) for side in text.split("<="))
        tally.check(f"{text} is not refuted", check_cr(lhs, rhs, search).holds)
    small = search.model_copy(update={"max_size": 2})
    for text in _INVALID_CR:
        lhs, rhs = (parse_cr(side) for side in text.split("<="))
        tally.check(f"{text} is refuted", not check_cr(lhs, rhs, small).holds)
    return tally.report()


# Programs.

PROGRAM_SIGNATURE = ProgramSignature.build(
    ["A"],
    functions={"s": (["A"], "A"), "f": (["A", "A"], "A"), "z": ([], "A")},
    predicates={"p": ["A"], "q": ["A", "A"], "eq0": ["A"]},
)
_XY = Context.of(("x", "A"), ("y", "A"))


def modular_model(modulus: int, sig: ProgramSignature = PROGRAM_SIGNATURE) -> Interpretation:
    """Interpret ``A`` as ``Z_n`` with successor, addition, zero and tests."""
    return program_model(
        sig,
        {"A": modulus},
        {
            "s": lambda x: (x + 1) % modulus,
            "f": lambda x, y: (x + y) % modulus,
            "z": lambda: 0,
        },
        {
            "p": lambda x: x % 2 == 0,
            "q": lambda x, y: x == y,
            "eq0": lambda x: x == 0,
        },
    )


def _simulate(ctx: Context, cmd: Cmd, interp: Interpretation, state: tuple[int, ...]) -> set:
    """Run a command on one state by iterating the relations of its parts.

    A loop is unrolled until the guard fails, cutting off at a revisited set
    of states, so the result is the set of final states.
    """
    sig = PROGRAM_SIGNATURE

    def step(current: set[tuple[int, ...]], command: Cmd) -> set[tuple[int, ...]]:
        result: set[tuple[int, ...]] = set()
        for values in current:
            result |= _simulate(ctx, command, interp, values)
        return result

    carrier = interp.carrier(ctx.monomial)

    def holds(pred: Pred, values: tuple[int, ...]) -> bool:
        meaning = evaluate(encode_pred(ctx, pred, sig), interp)
        return (carrier.encode(0, values), 0) in meaning.pairs

    match cmd:
        case While(guard=guard, body=body):
            finished: set[tuple[int, ...]] = set()
            frontier, seen = {state}, {state}
            while frontier:
                running = {values for values in frontier if holds(guard, values)}
                finished |= frontier - running
                frontier = step(running, body) - seen
                seen |= frontier
            return finished
        case Seq(first=first, second=second):
            return step(_simulate(ctx, first, interp, state), second)
    meaning = evaluate(encode_cmd(ctx, cmd, sig), interp)
    source = carrier.encode(0, state)
    return {carrier.decode(y)[1] for x, y in meaning.pairs if x == source}


def _random_expr(rng: random.Random, ctx: Context, depth: int) -> Expr:
    if depth <= 0 or rng.random() < 0.4:
        return Var(rng.choice(ctx.variables)) if rng.random() < 0.85 else App("z")
    if rng.random() < 0.6:
        return App("s", (_random_expr(rng, ctx, depth - 1),))
    return App("f", (_random_expr(rng, ctx, depth - 1), _random_expr(rng, ctx, depth - 1)))


def _random_pred(rng: random.Random, ctx: Context, depth: int) -> Pred:
    roll = rng.random()
    if depth <= 0 or roll < 0.5:
        atom_roll = rng.random()
        if atom_roll < 0.08:
            return PTrue()
        if atom_roll < 0.12:
            return PFalse()
        if atom_roll < 0.55:
            atom: Pred = Atom("p", (_random_expr(rng, ctx, 1),))
        elif atom_roll < 0.8:
            atom = Atom("eq0", (_random_expr(rng, ctx, 1),))
        else:
            atom = Atom("q", (_random_expr(rng, ctx, 1), _random_expr(rng, ctx, 1)))
        return negate(atom) if rng.random() < 0.3 else atom
    left, right = _random_pred(rng, ctx, depth - 1), _random_pred(rng, ctx, depth - 1)
    return PAnd(left, right) if roll < 0.75 else POr(left, right)


def _random_cmd(rng: random.Random, ctx: Context, depth: int) -> Cmd:
    roll = rng.random()
    if depth <= 0 or roll < 0.45:
        if roll < 0.05:
            return Skip()
        return Assign(rng.choice(ctx.variables), _random_expr(rng, ctx, 2))
    if roll < 0.7:
        return Seq(_random_cmd(rng, ctx, depth - 1), _random_cmd(rng, ctx, depth - 1))
    if roll < 0.9:
        return If(
            _random_pred(rng, ctx, 1),
            _random_cmd(rng, ctx, depth - 1),
            _random_cmd(rng, ctx, depth - 1),
        )
    return While(_random_pred(rng, ctx, 1), _random_cmd(rng, ctx, depth - 1))


def _program_equivalences(tally: _Tally) -> None:
    xyz = Context.of(("x", "A"), ("y", "A"), ("z", "A"))
    plain = ProgramSignature.build(["A"])
    boolean = Interpretation(plain.signature(), {"A": 2}, {})
    first = evaluate(encode_cmd(xyz, parse_program("x := z; y := z"), plain), boolean)
    second = evaluate(encode_cmd(xyz, parse_program("y := z; x := z"), plain), boolean)
    tally.relations("x := z; y := z = y := z; x := z", first, second, "eq", boolean)
    carrier = boolean.carrier(xyz.monomial)
    expected = FinRel.build(
        carrier,
        carrier,
        (
            (carrier.encode(0, (x, y, z)), carrier.encode(0, (z, z, z)))
            for x, y, z in product(range(2), repeat=3)
        ),
    )
    tally.relations("both assign z everywhere", first, expected, "eq", boolean)

    def meaning(text: str, model: Interpretation) -> FinRel:
        return evaluate(encode_cmd(_XY, parse_program(text), PROGRAM_SIGNATURE), model)

    z2 = modular_model(2)
    commuted = (
        "x := s(x); if eq0(y) then y := s(y) else skip end",
        "if eq0(y) then y := s(y) else skip end; x := s(x)",
    )
    tally.relations(
        "assignment commutes with an independent if",
        *(meaning(text, z2) for text in commuted),
        "eq",
        z2,
    )
    for modulus in (2, 3, 4):
        model = modular_model(modulus)
        loop = meaning("while eq0(x) do y := s(y) end", model)
        guard = meaning("if eq0(x) then abort else skip end", model)
        tally.relations(f"divergent loop is abort over Z_{modulus}", loop, guard, "eq", model)


def programs_suite(options: LawOptions) -> SuiteReport:
    """Check program equivalences, predicate determinism and the loop law."""
    tally = _Tally("programs", options.seed)
    rng = random.Random(options.seed)
    _program_equivalences(tally)
    sig = PROGRAM_SIGNATURE
    for _ in range(options.samples):
        model = random_model(sig, {"A": rng.randint(1, options.max_size)}, rng)
        pred = _random_pred(rng, _XY, 2)
        positive = evaluate(encode_pred(_XY, pred, sig), model)
        negative = evaluate(encode_pred(_XY, negate(pred), sig), model)
        everything = rel.full(positive.dom, positive.cod)
        tally.relations("P ⊔ ¬P = ⊤", positive | negative, everything, "eq")
        guards = TSeq(
            coreflexive(encode_pred(_XY, pred, sig)),
            coreflexive(encode_pred(_XY, negate(pred), sig)),
        )
        tally.relations(
            "c(P) ; c(¬P) = ⊥", evaluate(guards, model), rel.empty(positive.dom, positive.dom), "eq"
        )
        loop = While(pred, _random_cmd(rng, _XY, 1))
        meaning = evaluate(encode_cmd(_XY, loop, sig), model)
        carrier = meaning.dom
        for source in carrier:
            values = carrier.decode(source)[1]
            finals = {carrier.decode(y)[1] for x, y in meaning.pairs if x == source}
            tally.check(
                "while agrees with iteration",
                finals == _simulate(_XY, loop, model, values),
                program=loop,
                state=_XY.format_state(values),
            )
    return tally.report()


# Hoare logic.

_CANDIDATE_ATTEMPTS = 8


def _hoare(pre: Pred, command: Cmd, post: Pred) -> Triple:
    return Triple("hoare", _XY, pre, command, post)


def _choose_pred(
    rng: random.Random,
    model: Interpretation,
    premises: Callable[[Pred], list[Triple]],
) -> Pred:
    """Draw predicates until the premises they complete hold in ``model``.

    Falls back to ``true``, which completes every premise shape used here.
    """
    for _ in range(_CANDIDATE_ATTEMPTS):
        candidate = _random_pred(rng, _XY, 1)
        if all(
            check_triple(triple, PROGRAM_SIGNATURE, model, check_model=False).holds
            for triple in premises(candidate)
        ):
            return candidate
    return PTrue()


def hoare_rule_instance(
    rule: HoareRule, rng: random.Random, model: Interpretation
) -> tuple[list[Triple], Triple]:
    """Return a random instance of ``rule`` whose premises hold in ``model``.

    The free parts are drawn at random; the predicate that links premises
    (midcondition, postcondition or loop invariant) is searched for.
    """
    pred = partial(_random_pred, rng, _XY, 1)
    cmd = partial(_random_cmd, rng, _XY, 1)
    match rule:
        case "skip":
            p = pred()
            return [], _hoare(p, Skip(), p)
        case "assn":
            post = pred()
            var = rng.choice(_XY.variables)
            expr = _random_expr(rng, _XY, 1)
            return [], _hoare(substitute(post, expr, var), Assign(var, expr), post)
        case "conseq":
            p2, c = pred(), cmd()
            q2 = _choose_pred(rng, model, lambda q: [_hoare(p2, c, q)])
            p1 = PAnd(p2, pred()) if rng.random() < 0.5 else p2
            q1 = POr(q2, pred()) if rng.random() < 0.5 else q2
            return [_hoare(p2, c, q2)], _hoare(p1, c, q1)
        case "seq":
            p, c, d = pred(), cmd(), cmd()
            q = _choose_pred(rng, model, lambda q: [_hoare(p, c, q)])
            r = _choose_pred(rng, model, lambda r: [_hoare(q, d, r)])
            return [_hoare(p, c, q), _hoare(q, d, r)], _hoare(p, Seq(c, d), r)
        case "if":
            p, b, c, d = pred(), pred(), cmd(), cmd()

            def branches(q: Pred) -> list[Triple]:
                return [_hoare(PAnd(p, b), c, q), _hoare(PAnd(p, negate(b)), d, q)]

            q = _choose_pred(rng, model, branches)
            return branches(q), _hoare(p, If(b, c, d), q)
    b, c = pred(), cmd()
    p = _choose_pred(rng, model, lambda inv: [_hoare(PAnd(inv, b), c, inv)])
    return [_hoare(PAnd(p, b), c, p)], _hoare(p, While(b, c), PAnd(p, negate(b)))


HOARE_RULES: tuple[HoareRule, ...] = ("skip", "assn", "conseq", "seq", "if", "while")


def hoare_suite(options: LawOptions) -> SuiteReport:
    """Sweep random rule instances and the substitution lemma over random models.

    Every instance is built so that its premises hold; an instance whose
    premises fail anyway is reported, since it would check nothing.
    """
    tally = _Tally("hoare", options.seed)
    rng = random.Random(options.seed)
    sig = PROGRAM_SIGNATURE
    for rule in HOARE_RULES:
        for _ in range(options.samples):
            model = random_model(sig, {"A": rng.randint(1, options.max_size)}, rng)
            premises, conclusion = hoare_rule_instance(rule, rng, model)
            report = verify_hoare_rule_instance(
                rule, premises, conclusion, sig, model, check_model=False
            )
            tally.check(
                f"({rule}) premises hold",
                report.premises_valid,
                conclusion=conclusion,
                premise=report.failing_premise,
            )
            tally.check(f"({rule}) is sound", report.holds, conclusion=conclusion)
    for _ in range(options.samples):
        model = random_model(sig, {"A": rng.randint(1, options.max_size)}, rng)
        pred = _random_pred(rng, _XY, 2)
        var = rng.choice(_XY.variables)
        term = _random_expr(rng, _XY, 2)
        substituted = evaluate(encode_pred(_XY, substitute(pred, term, var), sig), model)
        assigned = evaluate(
            TSeq(encode_cmd(_XY, Assign(var, term), sig), encode_pred(_XY, pred, sig)), model
        )
        tally.check(
            "⟦P[t/x]⟧ = ⟦x := t⟧ ; ⟦P⟧", substituted == assigned, pred=pred, term=term, var=var
        )
    return tally.report()


# Relational Hoare logic.

_FRAME_SIGNATURE = ProgramSignature.build(
    ["A"], functions={"s": (["A"], "A")}, predicates={"same": ["A", "A"], "eq0": ["A"]}
)


def frame_instances(mutate: bool = False) -> tuple[Quadruple, Quadruple]:
    """Return a valid quadruple and its strengthening by a frame on ``w``.

    With ``mutate`` the left program also writes ``w``, breaking the frame
    hypothesis.
    """
    left_ctx = Context.of(("x", "A"), ("w", "A"))
    right_ctx = Context.of(("u", "A"))
    left = parse_program("x := s(x); w := s(w)" if mutate else "x := s(x)")
    right = parse_program("u := s(u)")
    related = parse_pred("same(x, u)")
    frame = parse_pred("eq0(w)")
    base = Quadruple(left_ctx, right_ctx, related, left, right, related)
    framed = Quadruple(
        left_ctx, right_ctx, PAnd(related, frame), left, right, PAnd(related, frame)
    )
    return base, framed


def frame_suite(options: LawOptions) -> SuiteReport:
    """Check the frame rule on Z_2, and that breaking its hypothesis is caught."""
    tally = _Tally("frame", options.seed)
    model = program_model(
        _FRAME_SIGNATURE,
        {"A": 2},
        {"s": lambda x: (x + 1) % 2},
        {"same": lambda x, y: x == y, "eq0": lambda x: x == 0},
    )
    base, framed = frame_instances()
    tally.check("base quadruple holds", check_quadruple(base, _FRAME_SIGNATURE, model).holds)
    tally.check("framed quadruple holds", check_quadruple(framed, _FRAME_SIGNATURE, model).holds)
    base, framed = frame_instances(mutate=True)
    tally.check(
        "mutated base quadruple holds", check_quadruple(base, _FRAME_SIGNATURE, model).holds
    )
    report = check_quadruple(framed, _FRAME_SIGNATURE, model)
    tally.check("mutated frame is refuted", not report.holds, witness=report.witness)
    left = encode_cmd(base.left_ctx, base.left, _FRAME_SIGNATURE)
    right = encode_cmd(base.right_ctx, base.right, _FRAME_SIGNATURE)
    tally.relations(
        "product program is the relational product",
        evaluate(tensor_tapes(left, right), model),
        rel.tensor(evaluate(left, model), evaluate(right, model)),
        "eq",
        model,
    )
    return tally.report()


# Countermodel search.


def search_suite(options: LawOptions) -> SuiteReport:
    """Check refutation of ``R;R ≤ R``, non-refutation of ``id ≤ R*`` and determinism."""
    tally = _Tally("search", options.seed)
    r = Sym("R")
    transitive = (encode_cr(parse_cr("R;R")), encode_cr(r))
    sig = Signature.build(["A"], {"R": (["A"], ["A"])})
    found = search_countermodel(*transitive, sig, SearchOptions(max_size=2, seed=options.seed))
    tally.check(
        "R;R ≤ R refuted by the swap",
        found is not None and found.relation("R").sorted_pairs() == [(0, 1), (1, 0)],
        model=found.describe() if found else None,
    )
    reflexive = (encode_cr(parse_cr("id")), encode_cr(CRStar(r)))
    tally.check(
        "id ≤ R* not refuted up to size 3",
        search_countermodel(*reflexive, sig, SearchOptions(max_size=3)) is None,
    )
    sampled = SearchOptions(max_size=3, budget=50, seed=options.seed)
    flipped = (encode_cr(CRConverse(CRStar(r))), encode_cr(CRStar(r)))
    first, second = (search_countermodel(*flipped, sig, sampled) for _ in range(2))
    tally.check(
        "sampling is deterministic",
        (first and first.describe()) == (second and second.describe()),
    )
    return tally.report()


def addition_suite(options: LawOptions) -> SuiteReport:
    """Evaluate addition on truncated naturals and its defining equations."""
    tally = _Tally("addition", options.seed)
    bound = 5
    interp = truncated_naturals(bound)
    pair = interp.carrier(Polynomial.mono("X", "X"))
    nat = interp.carrier(Polynomial.mono("X"))
    expected = FinRel.build(
        pair,
        nat,
        (
            (pair.encode(0, (x, y)), x + y)
            for x in range(bound + 1)
            for y in range(bound + 1)
            if x + y <= bound
        ),
    )
    meaning = evaluate(addition(), interp)
    tally.relations("add is truncated addition", meaning, expected, "eq", interp)
    tally.relations("trace form = star form", meaning, evaluate(addition_star(), interp), "eq")
    for law, (lhs, rhs) in (
        ("add(0, y) = y", add_at_zero()),
        ("add(s x, y) = s(add(x, y))", add_at_successor()),
    ):
        tally.check(law, agree_where_defined(evaluate(lhs, interp), evaluate(rhs, interp)))
    return tally.report()


SUITES: dict[str, Callable[[LawOptions], SuiteReport]] = {
    "axioms": axioms_suite,
    "kozen": kozen_suite,
    "star-trace": star_trace_suite,
    "matrix-normal-form": matrix_normal_form_suite,
    "coreflexive": coreflexive_suite,
    "derived": derived_suite,
    "cr-soundness": cr_soundness_suite,
    "programs": programs_suite,
    "hoare": hoare_suite,
    "frame": frame_suite,
    "search": search_suite,
    "addition": addition_suite,
}


def run_suite(name: str, options: LawOptions | None = None) -> SuiteReport:
    """Run one suite by name."""
    options = options or LawOptions()
    _LOGGER.info("Running suite %s with seed %s", name, options.seed)
    return SUITES[name](options)
