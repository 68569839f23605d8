"""Bounded countermodel search for inclusions between tapes.

Interpretations are enumerated by carrier sizes (ascending total, then
lexicographic) and, for each size assignment, by symbol relations read as
bitmasks in ascending order.  Bit ``k`` of a mask stands for the pair
``(k // |cod|, k % |cod|)``.  When the space exceeds the budget, the same
space is sampled with a seeded generator instead.  Finding nothing is not a
proof of validity.
"""

from __future__ import annotations

import logging
import math
import random
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import product
from typing import Literal

from kctapes.evaluator import evaluate, missing_pair_witness
from kctapes.interpretation import Interpretation, is_complement
from kctapes.options import SearchOptions
from kctapes.polynomial import Signature, as_polynomial
from kctapes.relations import Carrier, FinRel
from kctapes.reports import CheckReport, Witness
from kctapes.terms import Tape, typecheck

_LOGGER = logging.getLogger(__name__)

SymbolMode = Literal["relation", "function", "complement"]


def size_assignments(sorts: Iterable[str], max_size: int) -> list[dict[str, int]]:
    """Return all sort sizes in ``1..max_size``, smallest total first."""
    names = sorted(sorts)
    tuples = sorted(
        product(range(1, max_size + 1), repeat=len(names)), key=lambda t: (sum(t), t)
    )
    return [dict(zip(names, sizes, strict=True)) for sizes in tuples]


def relation_from_mask(dom: Carrier, cod: Carrier, mask: int) -> FinRel:
    """Decode a bitmask into a relation."""
    width = cod.size
    return FinRel.build(
        dom,
        cod,
        (divmod(bit, width) for bit in range(dom.size * width) if mask >> bit & 1),
    )


def function_from_index(dom: Carrier, cod: Carrier, index: int) -> FinRel:
    """Decode a mixed-radix index into the graph of a function ``dom → cod``."""
    images = []
    for _ in range(dom.size):
        index, image = divmod(index, cod.size)
        images.append(image)
    return FinRel.build(dom, cod, enumerate(reversed(images)))


@dataclass(frozen=True, slots=True)
class _SymbolSpace:
    name: str
    dom: Carrier
    cod: Carrier
    mode: SymbolMode

    @property
    def count(self) -> int:
        if self.mode == "complement":
            return 1
        if self.mode == "function":
            return self.cod.size**self.dom.size
        return 2 ** (self.dom.size * self.cod.size)

    def build(self, index: int) -> FinRel:
        if self.mode == "function":
            return function_from_index(self.dom, self.cod, index)
        return relation_from_mask(self.dom, self.cod, index)


def _modes(
    sig: Signature, functions: frozenset[str], restricted: bool
) -> dict[str, SymbolMode]:
    modes: dict[str, SymbolMode] = {}
    for name in sorted(sig.symbols):
        if restricted and name in functions:
            modes[name] = "function"
        elif restricted and is_complement(name) and name[1:] in sig.symbols:
            modes[name] = "complement"
        else:
            modes[name] = "relation"
    return modes


class CountermodelSearch:
    """Enumerate or sample interpretations of a signature."""

    def __init__(
        self,
        sig: Signature,
        options: SearchOptions | None = None,
        *,
        functions: Iterable[str] = (),
    ):
        """Prepare the search space for a signature."""
        self._sig = sig
        self._options = options or SearchOptions()
        self._modes = _modes(sig, frozenset(functions), self._options.restricted)
        self._assignments = size_assignments(sig.sorts, self._options.max_size)

    @property
    def options(self) -> SearchOptions:
        """Return the search bounds."""
        return self._options

    def _spaces(self, sizes: dict[str, int]) -> list[_SymbolSpace]:
        return [
            _SymbolSpace(
                name,
                Carrier.of(as_polynomial(self._sig.symbols[name][0]), sizes),
                Carrier.of(as_polynomial(self._sig.symbols[name][1]), sizes),
                mode,
            )
            for name, mode in self._modes.items()
        ]

    def _blocks(self) -> Iterator[tuple[dict[str, int], list[_SymbolSpace], int]]:
        for sizes in self._assignments:
            spaces = self._spaces(sizes)
            yield sizes, spaces, math.prod(space.count for space in spaces)

    def space_size(self) -> int:
        """Return the number of interpretations within the bounds."""
        return sum(count for _, _, count in self._blocks())

    def interpretation_at(self, index: int) -> Interpretation:
        """Return the interpretation at ``index`` in the canonical order."""
        return self._decode(list(self._blocks()), index)

    def _decode(
        self, blocks: list[tuple[dict[str, int], list[_SymbolSpace], int]], index: int
    ) -> Interpretation:
        if index < 0:
            raise IndexError(index)
        for sizes, spaces, count in blocks:
            if index < count:
                digits = []
                for space in reversed(spaces):
                    index, digit = divmod(index, space.count)
                    digits.append(digit)
                return self._interpretation(sizes, spaces, reversed(digits))
            index -= count
        raise IndexError(index)

    def _interpretation(
        self, sizes: dict[str, int], spaces: list[_SymbolSpace], indices: Iterable[int]
    ) -> Interpretation:
        relations = {
            space.name: space.build(index)
            for space, index in zip(spaces, indices, strict=True)
            if space.mode != "complement"
        }
        for space in spaces:
            if space.mode == "complement":
                relations[space.name] = relations[space.name[1:]].complement()
        return Interpretation(self._sig, sizes, relations)

    def exhaustive(self) -> Iterator[Interpretation]:
        """Yield every interpretation in canonical order."""
        for sizes in self._assignments:
            spaces = self._spaces(sizes)
            for indices in product(*(range(space.count) for space in spaces)):
                yield self._interpretation(sizes, spaces, indices)

    def sampled(self) -> Iterator[Interpretation]:
        """Yield ``budget`` interpretations drawn uniformly from the whole space.

        Draws are independent, so larger carriers, which hold most of the
        space, get most of the samples.
        """
        rng = random.Random(self._options.seed)
        blocks = list(self._blocks())
        total = sum(count for _, _, count in blocks)
        for _ in range(self._options.budget):
            yield self._decode(blocks, rng.randrange(total))

    def candidates(self) -> tuple[bool, Iterator[Interpretation]]:
        """Return whether enumeration is exhaustive, and the candidates."""
        total = self.space_size()
        exhaustive = total <= self._options.budget
        _LOGGER.debug(
            "Searching %s interpretations (%s, seed %s)",
            total,
            "exhaustive" if exhaustive else f"sampling {self._options.budget}",
            self._options.seed,
        )
        return exhaustive, self.exhaustive() if exhaustive else self.sampled()


def search_countermodel(
    lhs: Tape,
    rhs: Tape,
    sig: Signature,
    options: SearchOptions | None = None,
    *,
    functions: Iterable[str] = (),
) -> Interpretation | None:
    """Return the first interpretation where ``lhs ≤ rhs`` fails, if one is found."""
    return _run(lhs, rhs, sig, options, functions)[1]


def refute(
    lhs: Tape,
    rhs: Tape,
    sig: Signature,
    options: SearchOptions | None = None,
    *,
    functions: Iterable[str] = (),
    law: str = "lhs ≤ rhs",
) -> CheckReport:
    """Search for a countermodel and report it as a witness."""
    report, _ = _run(lhs, rhs, sig, options, functions, law)
    return report


def _run(
    lhs: Tape,
    rhs: Tape,
    sig: Signature,
    options: SearchOptions | None,
    functions: Iterable[str],
    law: str = "lhs ≤ rhs",
) -> tuple[CheckReport, Interpretation | None]:
    typecheck(lhs, sig)
    typecheck(rhs, sig)
    search = CountermodelSearch(sig, options, functions=functions)
    exhaustive, candidates = search.candidates()
    checked = 0
    for interp in candidates:
        checked += 1
        witness = missing_pair_witness(law, evaluate(lhs, interp), evaluate(rhs, interp))
        if witness is not None:
            _LOGGER.debug("Countermodel found after %s candidates", checked)
            bindings = interp.describe()
            return (
                CheckReport.failed(
                    Witness(
                        law=witness.law,
                        source=witness.source,
                        target=witness.target,
                        bindings=bindings,
                    ),
                    seed=search.options.seed,
                ),
                interp,
            )
    _LOGGER.debug("No countermodel among %s candidates", checked)
    detail = (
        f"no countermodel up to size {search.options.max_size}"
        if exhaustive
        else f"no countermodel in {checked} samples up to size {search.options.max_size}"
    )
    return CheckReport.passed(seed=search.options.seed, detail=detail), None
