"""Finite relations between carriers of polynomial shape.

A carrier interprets a polynomial ``⊕_i U_i`` as the disjoint union of the
products ``⟦U_i⟧``.  Elements are integers in the canonical enumeration:
branch-major, then lexicographic on the tuple (first factor most
significant).  ``⊕`` of carriers is an index offset and ``⊗`` pairs branch
``i`` of the left with branch ``j`` of the right into branch
``i * len(right) + j``.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from collections import deque
from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from itertools import accumulate, product
from typing import Literal

from kctapes.exceptions import CarrierMismatch, NotEndo, TraceShapeMismatch
from kctapes.polynomial import ONE, ZERO, Polynomial
from kctapes.utils import format_element

Pair = tuple[int, int]


@dataclass(frozen=True, slots=True)
class Carrier:
    """The interpretation of a polynomial under per-sort sizes."""

    shape: Polynomial
    sizes: tuple[tuple[str, int], ...] = ()
    _offsets: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _radices: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        known = dict(self.sizes)
        missing = self.shape.sorts() - known.keys()
        if missing:
            raise CarrierMismatch(f"no size given for sorts {sorted(missing)}")
        radices = tuple(tuple(known[s] for s in mono) for mono in self.shape)
        object.__setattr__(self, "_radices", radices)
        object.__setattr__(self, "_offsets", (0, *accumulate(map(math.prod, radices))))

    @classmethod
    def of(cls, shape: Polynomial, sizes: Mapping[str, int]) -> Carrier:
        """Build the carrier of ``shape``, keeping only the sizes it uses."""
        used = shape.sorts()
        return cls(shape, tuple(sorted((s, n) for s, n in sizes.items() if s in used)))

    @property
    def size(self) -> int:
        """Return the number of elements."""
        return self._offsets[-1]

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.size))

    def sort_sizes(self) -> dict[str, int]:
        """Return the sizes of the sorts occurring in the shape."""
        return dict(self.sizes)

    def offset(self, branch: int) -> int:
        """Return the index of the first element of a branch."""
        return self._offsets[branch]

    def branch_range(self, start: int, stop: int | None = None) -> range:
        """Return the element indices covered by branches ``start..stop``."""
        stop = len(self.shape) if stop is None else stop
        return range(self._offsets[start], self._offsets[stop])

    def encode(self, branch: int, values: tuple[int, ...]) -> int:
        """Return the element for a branch and a tuple of sort elements."""
        index = 0
        for value, radix in zip(values, self._radices[branch], strict=True):
            if not 0 <= value < radix:
                raise CarrierMismatch(f"value {value} out of range {radix}")
            index = index * radix + value
        return self._offsets[branch] + index

    def decode(self, element: int) -> tuple[int, tuple[int, ...]]:
        """Return the branch and tuple of sort elements of an element."""
        if not 0 <= element < self.size:
            raise CarrierMismatch(f"element {element} outside carrier of size {self.size}")
        branch = bisect_right(self._offsets, element) - 1
        index = element - self._offsets[branch]
        values: list[int] = []
        for radix in reversed(self._radices[branch]):
            index, value = divmod(index, radix)
            values.append(value)
        return branch, tuple(reversed(values))

    def add(self, other: Carrier) -> Carrier:
        """Return the carrier of ``P ⊕ Q``."""
        return Carrier.of(self.shape + other.shape, _merge(self.sizes, other.sizes))

    def multiply(self, other: Carrier) -> Carrier:
        """Return the carrier of ``P ⊗ Q``."""
        return Carrier.of(self.shape * other.shape, _merge(self.sizes, other.sizes))

    def pairing(self, other: Carrier) -> Callable[[int, int], int]:
        """Return the map pairing elements of ``self`` and ``other`` into ``self ⊗ other``."""
        joint = self.multiply(other)
        width = len(other.shape)

        def pair(left: int, right: int) -> int:
            i, values = self.decode(left)
            j, others = other.decode(right)
            return joint.encode(i * width + j, values + others)

        return pair

    def format(self, element: int) -> str:
        """Render an element: bare value, tuple or ``•``, tagged by branch if needed."""
        branch, values = self.decode(element)
        return format_element(values, branch if len(self.shape) > 1 else None)


def _merge(
    left: tuple[tuple[str, int], ...], right: tuple[tuple[str, int], ...]
) -> dict[str, int]:
    merged = dict(left)
    for sort, size in right:
        if merged.setdefault(sort, size) != size:
            raise CarrierMismatch(f"sort {sort} has sizes {merged[sort]} and {size}")
    return merged


EMPTY = Carrier(ZERO)
POINT = Carrier(ONE)


@dataclass(frozen=True, slots=True)
class FinRel:
    """A finite relation ``dom → cod`` stored as a set of element pairs."""

    dom: Carrier
    cod: Carrier
    pairs: frozenset[Pair] = frozenset()

    def __post_init__(self) -> None:
        for x, y in self.pairs:
            if not (0 <= x < self.dom.size and 0 <= y < self.cod.size):
                raise CarrierMismatch(f"pair ({x}, {y}) outside the carriers")

    @classmethod
    def build(cls, dom: Carrier, cod: Carrier, pairs: Iterable[Pair]) -> FinRel:
        """Build a relation from any iterable of pairs."""
        return cls(dom, cod, frozenset(pairs))

    def sorted_pairs(self) -> list[Pair]:
        """Return the pairs in canonical order."""
        return sorted(self.pairs)

    def check_same_type(self, other: FinRel) -> None:
        """Raise unless both relations share domain and codomain."""
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise CarrierMismatch(
                f"relations on {self.dom.shape} → {self.cod.shape} "
                f"and {other.dom.shape} → {other.cod.shape}"
            )

    def __le__(self, other: FinRel) -> bool:
        self.check_same_type(other)
        return self.pairs <= other.pairs

    def __ge__(self, other: FinRel) -> bool:
        return other <= self

    def __or__(self, other: FinRel) -> FinRel:
        self.check_same_type(other)
        return FinRel(self.dom, self.cod, self.pairs | other.pairs)

    def __and__(self, other: FinRel) -> FinRel:
        self.check_same_type(other)
        return FinRel(self.dom, self.cod, self.pairs & other.pairs)

    def __sub__(self, other: FinRel) -> FinRel:
        self.check_same_type(other)
        return FinRel(self.dom, self.cod, self.pairs - other.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def is_endo(self) -> bool:
        """Return whether domain and codomain coincide."""
        return self.dom == self.cod

    def converse(self) -> FinRel:
        """Return the converse relation."""
        return FinRel(self.cod, self.dom, frozenset((y, x) for x, y in self.pairs))

    def complement(self) -> FinRel:
        """Return the set complement within ``dom × cod``."""
        return full(self.dom, self.cod) - self

    def image(self, x: int) -> set[int]:
        """Return every ``y`` related to ``x``."""
        return {b for a, b in self.pairs if a == x}

    def format_pair(self, pair: Pair) -> str:
        """Render a pair with element formatting of both carriers."""
        return f"({self.dom.format(pair[0])},{self.cod.format(pair[1])})"

    def __str__(self) -> str:
        return "{" + ",".join(self.format_pair(p) for p in self.sorted_pairs()) + "}"


def identity(carrier: Carrier) -> FinRel:
    """Return ``id_X``."""
    return FinRel(carrier, carrier, frozenset((x, x) for x in carrier))


def empty(dom: Carrier, cod: Carrier) -> FinRel:
    """Return ``∅ : X → Y``."""
    return FinRel(dom, cod)


def full(dom: Carrier, cod: Carrier) -> FinRel:
    """Return ``⊤ : X → Y``."""
    return FinRel(dom, cod, frozenset(product(range(dom.size), range(cod.size))))


def compose(first: FinRel, second: FinRel) -> FinRel:
    """Return ``R ; S``."""
    if first.cod != second.dom:
        raise CarrierMismatch(
            f"cannot compose {first.dom.shape} → {first.cod.shape} "
            f"with {second.dom.shape} → {second.cod.shape}"
        )
    successors: dict[int, set[int]] = {}
    for y, z in second.pairs:
        successors.setdefault(y, set()).add(z)
    return FinRel(
        first.dom,
        second.cod,
        frozenset((x, z) for x, y in first.pairs for z in successors.get(y, ())),
    )


def tensor(first: FinRel, second: FinRel) -> FinRel:
    """Return ``R ⊗ S`` on the product carriers."""
    pair_dom = first.dom.pairing(second.dom)
    pair_cod = first.cod.pairing(second.cod)
    return FinRel(
        first.dom.multiply(second.dom),
        first.cod.multiply(second.cod),
        frozenset(
            (pair_dom(x, x2), pair_cod(y, y2))
            for x, y in first.pairs
            for x2, y2 in second.pairs
        ),
    )


def direct_sum(first: FinRel, second: FinRel) -> FinRel:
    """Return ``R ⊕ S``: the right operand is shifted past the left carriers."""
    dx, dy = first.dom.size, first.cod.size
    return FinRel(
        first.dom.add(second.dom),
        first.cod.add(second.cod),
        first.pairs | frozenset((x + dx, y + dy) for x, y in second.pairs),
    )


def monoidal(mode: Literal["tensor", "sum"], first: FinRel, second: FinRel) -> FinRel:
    """Apply one of the two monoidal products."""
    return tensor(first, second) if mode == "tensor" else direct_sum(first, second)


def sum_swap(left: Carrier, right: Carrier) -> FinRel:
    """Return ``σ⊕ : X ⊕ Y → Y ⊕ X``."""
    n, m = left.size, right.size
    pairs = [(x, x + m) for x in range(n)] + [(n + y, y) for y in range(m)]
    return FinRel(left.add(right), right.add(left), frozenset(pairs))


def tensor_swap(left: Carrier, right: Carrier) -> FinRel:
    """Return ``σ⊗ : X ⊗ Y → Y ⊗ X``."""
    forward, backward = left.pairing(right), right.pairing(left)
    return FinRel(
        left.multiply(right),
        right.multiply(left),
        frozenset((forward(x, y), backward(y, x)) for x in left for y in right),
    )


def restrict(rel: FinRel, rows: range, cols: range, dom: Carrier, cod: Carrier) -> FinRel:
    """Cut the block ``rows × cols`` out of a relation, re-indexed from zero."""
    return FinRel(
        dom,
        cod,
        frozenset(
            (x - rows.start, y - cols.start)
            for x, y in rel.pairs
            if x in rows and y in cols
        ),
    )


def _split(carrier: Carrier, prefix: Polynomial, what: str) -> tuple[Carrier, Carrier]:
    count = len(prefix)
    if carrier.shape.summands[:count] != prefix.summands:
        raise TraceShapeMismatch(f"{what} {carrier.shape} does not start with {prefix}")
    sizes = carrier.sort_sizes()
    return Carrier.of(prefix, sizes), Carrier.of(carrier.shape.tail(count), sizes)


def blocks(
    rel: FinRel, s: Polynomial, x: Polynomial, t: Polynomial, y: Polynomial
) -> tuple[FinRel, FinRel, FinRel, FinRel]:
    """Split ``f : S ⊕ X → T ⊕ Y`` into ``(f_ST, f_SY, f_XT, f_XY)``."""
    if rel.dom.shape != s + x or rel.cod.shape != t + y:
        raise CarrierMismatch(
            f"relation on {rel.dom.shape} → {rel.cod.shape} is not {s + x} → {t + y}"
        )
    s_car, x_car = _split(rel.dom, s, "domain")
    t_car, y_car = _split(rel.cod, t, "codomain")
    rows_s, rows_x = range(s_car.size), range(s_car.size, rel.dom.size)
    cols_t, cols_y = range(t_car.size), range(t_car.size, rel.cod.size)
    return (
        restrict(rel, rows_s, cols_t, s_car, t_car),
        restrict(rel, rows_s, cols_y, s_car, y_car),
        restrict(rel, rows_x, cols_t, x_car, t_car),
        restrict(rel, rows_x, cols_y, x_car, y_car),
    )


def recompose(st: FinRel, sy: FinRel, xt: FinRel, xy: FinRel) -> FinRel:
    """Assemble the four blocks back into ``S ⊕ X → T ⊕ Y``."""
    if (st.dom, st.cod, xy.dom, xy.cod) != (sy.dom, xt.cod, xt.dom, sy.cod):
        raise CarrierMismatch("blocks do not form a matrix")
    ds, dt = st.dom.size, st.cod.size
    pairs = (
        set(st.pairs)
        | {(a, b + dt) for a, b in sy.pairs}
        | {(a + ds, b) for a, b in xt.pairs}
        | {(a + ds, b + dt) for a, b in xy.pairs}
    )
    return FinRel(st.dom.add(xy.dom), st.cod.add(xy.cod), frozenset(pairs))


def star(rel: FinRel) -> FinRel:
    """Return the reflexive-transitive closure ``R*``."""
    if not rel.is_endo:
        raise NotEndo(f"star needs an endo-relation, got {rel.dom.shape} → {rel.cod.shape}")
    successors: dict[int, set[int]] = {}
    for x, y in rel.pairs:
        successors.setdefault(x, set()).add(y)
    pairs: set[Pair] = set()
    for source in rel.dom:
        seen = {source}
        queue = deque([source])
        while queue:
            for nxt in successors.get(queue.popleft(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        pairs.update((source, target) for target in seen)
    return FinRel(rel.dom, rel.cod, frozenset(pairs))


def trace(s: Polynomial, rel: FinRel) -> FinRel:
    """Return ``tr_S f = f_XY ∪ f_XS ; f_SS* ; f_SY`` for ``f : S ⊕ X → S ⊕ Y``."""
    s_dom, x_car = _split(rel.dom, s, "domain")
    s_cod, y_car = _split(rel.cod, s, "codomain")
    if s_dom != s_cod:
        raise TraceShapeMismatch("traced carriers differ between domain and codomain")
    f_ss, f_sy, f_xs, f_xy = blocks(rel, s, x_car.shape, s, y_car.shape)
    return f_xy | compose(compose(f_xs, star(f_ss)), f_sy)


class Generator(StrEnum):
    """The eight (co)monoid generators of ``Rel``."""

    COPIER = "copier"
    DISCHARGER = "discharger"
    COCOPIER = "cocopier"
    CODISCHARGER = "codischarger"
    DIAG = "diag"
    BANG = "bang"
    CODIAG = "codiag"
    COBANG = "cobang"


def generator(kind: Generator | str, carrier: Carrier) -> FinRel:
    """Return one of the (co)monoid relations on a carrier."""
    kind = Generator(kind)
    n = carrier.size
    match kind:
        case Generator.COPIER:
            pair = carrier.pairing(carrier)
            return FinRel(
                carrier,
                carrier.multiply(carrier),
                frozenset((x, pair(x, x)) for x in carrier),
            )
        case Generator.DISCHARGER:
            return FinRel(carrier, POINT, frozenset((x, 0) for x in carrier))
        case Generator.DIAG:
            return FinRel(
                carrier,
                carrier.add(carrier),
                frozenset([(x, x) for x in carrier] + [(x, x + n) for x in carrier]),
            )
        case Generator.BANG:
            return empty(carrier, EMPTY)
        case Generator.COCOPIER:
            return generator(Generator.COPIER, carrier).converse()
        case Generator.CODISCHARGER:
            return generator(Generator.DISCHARGER, carrier).converse()
        case Generator.CODIAG:
            return generator(Generator.DIAG, carrier).converse()
        case Generator.COBANG:
            return empty(EMPTY, carrier)
    raise ValueError(kind)


class ArrowProperty(StrEnum):
    """Properties of relations."""

    SV = "SV"
    TOT = "TOT"
    INJ = "INJ"
    SUR = "SUR"
    REF = "REF"
    TRN = "TRN"
    SYM = "SYM"
    COR = "COR"


ENDO_PROPERTIES = frozenset(
    {ArrowProperty.REF, ArrowProperty.TRN, ArrowProperty.SYM, ArrowProperty.COR}
)


def arrow_property(rel: FinRel, prop: ArrowProperty | str) -> bool:
    """Check a property set-theoretically."""
    prop = ArrowProperty(prop)
    if prop in ENDO_PROPERTIES and not rel.is_endo:
        raise NotEndo(f"{prop} needs an endo-relation")
    targets: dict[int, set[int]] = {}
    sources: dict[int, set[int]] = {}
    for x, y in rel.pairs:
        targets.setdefault(x, set()).add(y)
        sources.setdefault(y, set()).add(x)
    match prop:
        case ArrowProperty.SV:
            return all(len(ys) <= 1 for ys in targets.values())
        case ArrowProperty.TOT:
            return all(x in targets for x in rel.dom)
        case ArrowProperty.INJ:
            return all(len(xs) <= 1 for xs in sources.values())
        case ArrowProperty.SUR:
            return all(y in sources for y in rel.cod)
        case ArrowProperty.REF:
            return all((x, x) in rel.pairs for x in rel.dom)
        case ArrowProperty.TRN:
            return all(
                (x, z) in rel.pairs for x, y in rel.pairs for z in targets.get(y, ())
            )
        case ArrowProperty.SYM:
            return all((y, x) in rel.pairs for x, y in rel.pairs)
        case ArrowProperty.COR:
            return all(x == y for x, y in rel.pairs)
    raise ValueError(prop)


def arrow_property_adjoint(rel: FinRel, prop: ArrowProperty | str) -> bool:
    """Check a property through inclusions of composites with the converse.

    ``SV`` is ``R† ; R ≤ id``, ``TOT`` is ``id ≤ R ; R†``, ``INJ`` is
    ``R ; R† ≤ id`` and ``SUR`` is ``id ≤ R† ; R``; the endo properties use
    ``id ≤ R``, ``R ; R ≤ R``, ``R† ≤ R`` and ``R ≤ id``.
    """
    prop = ArrowProperty(prop)
    if prop in ENDO_PROPERTIES and not rel.is_endo:
        raise NotEndo(f"{prop} needs an endo-relation")
    conv = rel.converse()
    match prop:
        case ArrowProperty.SV:
            return compose(conv, rel) <= identity(rel.cod)
        case ArrowProperty.TOT:
            return identity(rel.dom) <= compose(rel, conv)
        case ArrowProperty.INJ:
            return compose(rel, conv) <= identity(rel.dom)
        case ArrowProperty.SUR:
            return identity(rel.cod) <= compose(conv, rel)
        case ArrowProperty.REF:
            return identity(rel.dom) <= rel
        case ArrowProperty.TRN:
            return compose(rel, rel) <= rel
        case ArrowProperty.SYM:
            return conv <= rel
        case ArrowProperty.COR:
            return rel <= identity(rel.dom)
    raise ValueError(prop)


def least_missing(lhs: FinRel, rhs: FinRel) -> Pair | None:
    """Return the least pair of ``lhs`` not in ``rhs``, in canonical order."""
    lhs.check_same_type(rhs)
    missing = lhs.pairs - rhs.pairs
    return min(missing) if missing else None


def function_graph(dom: Carrier, cod: Carrier, mapping: Callable[[int], int]) -> FinRel:
    """Return the graph ``{(x, f(x))}`` of a function on element indices."""
    return FinRel(dom, cod, frozenset((x, mapping(x)) for x in dom))
