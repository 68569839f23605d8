"""Kleene algebras, their law harness and the matrix construction Mat(K).

An untyped Kleene algebra is the single-object case of a typed one, so every
instance here works on one carrier of elements.  ``Mat(K)`` lifts a Kleene
algebra to square matrices with the block-recursive star.
"""

from __future__ import annotations

import logging
import math
import random
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from itertools import product
from typing import Generic, Literal, TypeVar

from kctapes import relations as rel
from kctapes.exceptions import NotSquare, ShapeMismatch
from kctapes.options import DEFAULT_SEED
from kctapes.polynomial import Polynomial
from kctapes.relations import Carrier, FinRel
from kctapes.reports import CheckReport, Witness

_LOGGER = logging.getLogger(__name__)

T = TypeVar("T")


class KleeneAlgebra(ABC, Generic[T]):
    """Zero, one, join, sequence and star over one carrier of elements."""

    name = "kleene algebra"

    @abstractmethod
    def zero(self) -> T:
        """Return the bottom element."""

    @abstractmethod
    def one(self) -> T:
        """Return the unit of sequencing."""

    @abstractmethod
    def join(self, a: T, b: T) -> T:
        """Return ``a ⊔ b``."""

    @abstractmethod
    def seq(self, a: T, b: T) -> T:
        """Return ``a ; b``."""

    @abstractmethod
    def star(self, a: T) -> T:
        """Return ``a*``."""

    @abstractmethod
    def sample(self, rng: random.Random) -> T:
        """Draw a random element."""

    def elements(self) -> Sequence[T] | None:
        """Return every element when the carrier is small enough to enumerate."""
        return None

    def leq(self, a: T, b: T) -> bool:
        """Return the induced order ``a ≤ b ⇔ a ⊔ b = b``."""
        return self.join(a, b) == b

    def render(self, a: T) -> str:
        """Render an element for witnesses."""
        return str(a)


class BooleanKA(KleeneAlgebra[bool]):
    """The two-element Kleene algebra."""

    name = "boolean"

    def zero(self) -> bool:
        return False

    def one(self) -> bool:
        return True

    def join(self, a: bool, b: bool) -> bool:
        return a or b

    def seq(self, a: bool, b: bool) -> bool:
        return a and b

    def star(self, a: bool) -> bool:
        return True

    def sample(self, rng: random.Random) -> bool:
        return rng.random() < 0.5

    def elements(self) -> Sequence[bool]:
        return (False, True)

    def render(self, a: bool) -> str:
        return "1" if a else "0"


class RelationKA(KleeneAlgebra[FinRel]):
    """Endo-relations on a fixed carrier."""

    name = "relations"

    def __init__(self, carrier: Carrier, density: float = 0.3):
        """Use ``carrier`` and sample each pair with probability ``density``."""
        self.carrier = carrier
        self.density = density

    def zero(self) -> FinRel:
        return rel.empty(self.carrier, self.carrier)

    def one(self) -> FinRel:
        return rel.identity(self.carrier)

    def join(self, a: FinRel, b: FinRel) -> FinRel:
        return a | b

    def seq(self, a: FinRel, b: FinRel) -> FinRel:
        return rel.compose(a, b)

    def star(self, a: FinRel) -> FinRel:
        return rel.star(a)

    def sample(self, rng: random.Random) -> FinRel:
        return random_relation(rng, self.carrier, self.carrier, self.density)


def random_relation(
    rng: random.Random, dom: Carrier, cod: Carrier, density: float = 0.3
) -> FinRel:
    """Draw a relation including each pair with probability ``density``."""
    return FinRel.build(
        dom, cod, ((x, y) for x in dom for y in cod if rng.random() < density)
    )


@dataclass(frozen=True, slots=True)
class KAMatrix(Generic[T]):
    """A rectangular matrix of Kleene algebra elements."""

    entries: tuple[tuple[T, ...], ...]
    cols: int

    def __post_init__(self) -> None:
        if any(len(row) != self.cols for row in self.entries):
            raise ShapeMismatch("matrix rows have different lengths")

    @classmethod
    def of(cls, rows: Sequence[Sequence[T]], cols: int | None = None) -> KAMatrix[T]:
        """Build a matrix from nested sequences; ``cols`` is needed for 0 rows."""
        width = len(rows[0]) if rows else (cols or 0)
        return cls(tuple(tuple(row) for row in rows), width)

    @property
    def rows(self) -> int:
        """Return the number of rows."""
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        """Return ``(rows, cols)``."""
        return self.rows, self.cols

    def __getitem__(self, index: tuple[int, int]) -> T:
        return self.entries[index[0]][index[1]]

    def submatrix(self, rows: range, cols: range) -> KAMatrix[T]:
        """Return the block selected by row and column ranges."""
        return KAMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows), len(cols))


def mat_zero(ka: KleeneAlgebra[T], rows: int, cols: int) -> KAMatrix[T]:
    """Return the zero matrix."""
    return KAMatrix(tuple(tuple(ka.zero() for _ in range(cols)) for _ in range(rows)), cols)


def mat_identity(ka: KleeneAlgebra[T], size: int) -> KAMatrix[T]:
    """Return the identity matrix."""
    return KAMatrix(
        tuple(
            tuple(ka.one() if i == j else ka.zero() for j in range(size)) for i in range(size)
        ),
        size,
    )


def mat_join(ka: KleeneAlgebra[T], left: KAMatrix[T], right: KAMatrix[T]) -> KAMatrix[T]:
    """Return the entrywise join."""
    if left.shape != right.shape:
        raise ShapeMismatch(f"cannot join {left.shape} with {right.shape}")
    return KAMatrix(
        tuple(
            tuple(ka.join(a, b) for a, b in zip(row_l, row_r, strict=True))
            for row_l, row_r in zip(left.entries, right.entries, strict=True)
        ),
        left.cols,
    )


def mat_compose(ka: KleeneAlgebra[T], left: KAMatrix[T], right: KAMatrix[T]) -> KAMatrix[T]:
    """Return the matrix product ``left ; right`` (rows of ``left`` first)."""
    if left.cols != right.rows:
        raise ShapeMismatch(f"cannot compose {left.shape} with {right.shape}")

    def entry(i: int, j: int) -> T:
        total = ka.zero()
        for k in range(left.cols):
            total = ka.join(total, ka.seq(left[i, k], right[k, j]))
        return total

    return KAMatrix(
        tuple(tuple(entry(i, j) for j in range(right.cols)) for i in range(left.rows)),
        right.cols,
    )


def mat_blocks(
    matrix: KAMatrix[T], split: int
) -> tuple[KAMatrix[T], KAMatrix[T], KAMatrix[T], KAMatrix[T]]:
    """Split a square matrix at ``split`` into ``(A, B, C, D)``."""
    head, tail = range(split), range(split, matrix.rows)
    return (
        matrix.submatrix(head, head),
        matrix.submatrix(head, tail),
        matrix.submatrix(tail, head),
        matrix.submatrix(tail, tail),
    )


def mat_from_blocks(
    a: KAMatrix[T], b: KAMatrix[T], c: KAMatrix[T], d: KAMatrix[T]
) -> KAMatrix[T]:
    """Assemble ``[[A, B], [C, D]]``."""
    if a.rows != b.rows or c.rows != d.rows or a.cols != c.cols or b.cols != d.cols:
        raise ShapeMismatch("blocks do not fit together")
    top = tuple(ra + rb for ra, rb in zip(a.entries, b.entries, strict=True))
    bottom = tuple(rc + rd for rc, rd in zip(c.entries, d.entries, strict=True))
    return KAMatrix(top + bottom, a.cols + b.cols)


def mat_star(ka: KleeneAlgebra[T], matrix: KAMatrix[T]) -> KAMatrix[T]:
    """Return ``M*`` by 2×2 block recursion, splitting at ``⌈n/2⌉``.

    With ``F = D ⊔ C A* B``::

        M* = [[A* ⊔ A* B F* C A*,  A* B F*],
              [F* C A*,             F*     ]]
    """
    if matrix.rows != matrix.cols:
        raise NotSquare(f"star needs a square matrix, got {matrix.shape}")
    size = matrix.rows
    if size == 0:
        return matrix
    if size == 1:
        return KAMatrix(((ka.star(matrix[0, 0]),),), 1)
    a, b, c, d = mat_blocks(matrix, math.ceil(size / 2))
    a_star = mat_star(ka, a)
    f_star = mat_star(ka, mat_join(ka, d, mat_compose(ka, mat_compose(ka, c, a_star), b)))
    a_star_b = mat_compose(ka, a_star, b)
    c_a_star = mat_compose(ka, c, a_star)
    top_right = mat_compose(ka, a_star_b, f_star)
    bottom_left = mat_compose(ka, f_star, c_a_star)
    top_left = mat_join(ka, a_star, mat_compose(ka, top_right, c_a_star))
    return mat_from_blocks(top_left, top_right, bottom_left, f_star)


MatOp = Literal["compose", "join", "zero", "identity"]


def mat_ops(ka: KleeneAlgebra[T], op: MatOp, *args: KAMatrix[T] | int) -> KAMatrix[T]:
    """Dispatch one of the semiring matrix operations by name."""
    matrices = [arg for arg in args if isinstance(arg, KAMatrix)]
    sizes = [arg for arg in args if isinstance(arg, int)]
    if op == "compose":
        return mat_compose(ka, *matrices)
    if op == "join":
        return mat_join(ka, *matrices)
    if op == "zero":
        return mat_zero(ka, *sizes)
    return mat_identity(ka, *sizes)


class MatrixKA(KleeneAlgebra[KAMatrix[T]]):
    """Square ``n × n`` matrices over a Kleene algebra."""

    name = "matrices"

    def __init__(self, base: KleeneAlgebra[T], size: int):
        """Lift ``base`` to ``size × size`` matrices."""
        self.base = base
        self.size = size

    def zero(self) -> KAMatrix[T]:
        return mat_zero(self.base, self.size, self.size)

    def one(self) -> KAMatrix[T]:
        return mat_identity(self.base, self.size)

    def join(self, a: KAMatrix[T], b: KAMatrix[T]) -> KAMatrix[T]:
        return mat_join(self.base, a, b)

    def seq(self, a: KAMatrix[T], b: KAMatrix[T]) -> KAMatrix[T]:
        return mat_compose(self.base, a, b)

    def star(self, a: KAMatrix[T]) -> KAMatrix[T]:
        return mat_star(self.base, a)

    def sample(self, rng: random.Random) -> KAMatrix[T]:
        return KAMatrix.of(
            [[self.base.sample(rng) for _ in range(self.size)] for _ in range(self.size)],
            self.size,
        )

    def elements(self) -> Sequence[KAMatrix[T]] | None:
        base = self.base.elements()
        if base is None or len(base) ** (self.size * self.size) > 1 << 16:
            return None
        return [
            KAMatrix.of(
                [list(cells[i * self.size : (i + 1) * self.size]) for i in range(self.size)],
                self.size,
            )
            for cells in product(base, repeat=self.size * self.size)
        ]

    def render(self, a: KAMatrix[T]) -> str:
        return "[" + ";".join(" ".join(self.base.render(x) for x in row) for row in a.entries) + "]"


def boolean_matrix(relation: FinRel) -> KAMatrix[bool]:
    """Return the adjacency matrix of a relation."""
    return KAMatrix.of(
        [[(x, y) in relation.pairs for y in relation.cod] for x in relation.dom],
        relation.cod.size,
    )


def relation_of_matrix(matrix: KAMatrix[bool], dom: Carrier, cod: Carrier) -> FinRel:
    """Return the relation whose adjacency matrix is ``matrix``."""
    return FinRel.build(
        dom, cod, ((i, j) for i in range(matrix.rows) for j in range(matrix.cols) if matrix[i, j])
    )


def point_carrier(size: int, sort: str = "X") -> Carrier:
    """Return a single-sort carrier with ``size`` elements."""
    return Carrier.of(Polynomial.mono(sort), {sort: size})


# Law harness.

Law = Callable[[KleeneAlgebra[T], T, T, T], bool]


def _implies(premise: bool, conclusion: bool) -> bool:
    return not premise or conclusion


def _star_unfold_left(k: KleeneAlgebra[T], a: T, b: T, c: T) -> bool:
    return k.leq(k.join(k.one(), k.seq(a, k.star(a))), k.star(a))


def _star_unfold_right(k: KleeneAlgebra[T], a: T, b: T, c: T) -> bool:
    return k.leq(k.join(k.one(), k.seq(k.star(a), a)), k.star(a))


def _star_induction_left(k: KleeneAlgebra[T], a: T, b: T, c: T) -> bool:
    return _implies(k.leq(k.join(b, k.seq(a, c)), c), k.leq(k.seq(k.star(a), b), c))


def _star_induction_right(k: KleeneAlgebra[T], a: T, b: T, c: T) -> bool:
    return _implies(k.leq(k.join(b, k.seq(c, a)), c), k.leq(k.seq(b, k.star(a)), c))


def _star_equality(k: KleeneAlgebra[T], a: T, b: T, c: T) -> bool:
    star = k.star(a)
    return k.join(k.one(), k.seq(a, star)) == star == k.join(k.one(), k.seq(star, a))


KA_LAWS: dict[str, Law] = {
    "(a ⊔ b) ⊔ c = a ⊔ (b ⊔ c)": lambda k, a, b, c: (
        k.join(k.join(a, b), c) == k.join(a, k.join(b, c))
    ),
    "a ⊔ b = b ⊔ a": lambda k, a, b, c: k.join(a, b) == k.join(b, a),
    "a ⊔ a = a": lambda k, a, b, c: k.join(a, a) == a,
    "a ⊔ 0 = a": lambda k, a, b, c: k.join(a, k.zero()) == a,
    "(a ; b) ; c = a ; (b ; c)": lambda k, a, b, c: (
        k.seq(k.seq(a, b), c) == k.seq(a, k.seq(b, c))
    ),
    "1 ; a = a = a ; 1": lambda k, a, b, c: k.seq(k.one(), a) == a == k.seq(a, k.one()),
    "0 ; a = 0 = a ; 0": lambda k, a, b, c: (
        k.seq(k.zero(), a) == k.zero() == k.seq(a, k.zero())
    ),
    "a ; (b ⊔ c) = a ; b ⊔ a ; c": lambda k, a, b, c: (
        k.seq(a, k.join(b, c)) == k.join(k.seq(a, b), k.seq(a, c))
    ),
    "(a ⊔ b) ; c = a ; c ⊔ b ; c": lambda k, a, b, c: (
        k.seq(k.join(a, b), c) == k.join(k.seq(a, c), k.seq(b, c))
    ),
    "1 ⊔ a ; a* ≤ a*": _star_unfold_left,
    "1 ⊔ a* ; a ≤ a*": _star_unfold_right,
    "b ⊔ a ; c ≤ c ⇒ a* ; b ≤ c": _star_induction_left,
    "b ⊔ c ; a ≤ c ⇒ b ; a* ≤ c": _star_induction_right,
    "1 ⊔ a ; a* = a* = 1 ⊔ a* ; a": _star_equality,
}


def _triples(
    ka: KleeneAlgebra[T], samples: int, rng: random.Random
) -> Iterator[tuple[T, T, T]]:
    elements = ka.elements()
    if elements is not None and len(elements) ** 3 <= samples:
        yield from product(elements, repeat=3)
        return
    for _ in range(samples):
        yield ka.sample(rng), ka.sample(rng), ka.sample(rng)


def check_ka_laws(
    ka: KleeneAlgebra[T], samples: int = 500, seed: int = DEFAULT_SEED
) -> CheckReport:
    """Check the Kleene algebra laws on sampled (or all) triples.

    Small carriers are checked exhaustively; otherwise ``samples`` random
    triples are drawn with ``seed``.
    """
    rng = random.Random(seed)
    checked = 0
    for a, b, c in _triples(ka, samples, rng):
        checked += 1
        for name, law in KA_LAWS.items():
            if not law(ka, a, b, c):
                _LOGGER.debug("Law %s fails for %s after %s triples", name, ka.name, checked)
                return CheckReport.failed(
                    Witness(
                        law=name,
                        bindings={"a": ka.render(a), "b": ka.render(b), "c": ka.render(c)},
                    ),
                    seed=seed,
                )
    return CheckReport.passed(seed=seed, detail=f"{len(KA_LAWS)} laws on {checked} triples")
