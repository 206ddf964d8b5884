"""Young diagrams, dimensions, Murnaghan-Nakayama characters and Kerov transition measures."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .exceptions import DegreeMismatchError, InvalidPartitionError, ParameterError
from .free_prob import AtomicMeasure
from .symmetric_core import CycleType, Permutation, cycle_type, pad_cycle_type, reduced_length
from .utils import Rational

Cell = Tuple[int, int]


@dataclass(frozen=True, slots=True)
class YoungDiagram:
    """An integer partition, rows weakly decreasing; cells are (row, column), 0-indexed."""

    rows: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(r <= 0 for r in rows):
            raise InvalidPartitionError(f"Rows of a Young diagram must be positive, got {list(rows)}.")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise InvalidPartitionError(f"Rows of a Young diagram must weakly decrease, got {list(rows)}.")

    @property
    def size(self) -> int:
        return sum(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def conjugate(self) -> "YoungDiagram":
        if not self.rows:
            return self
        return YoungDiagram(tuple(sum(1 for r in self.rows if r > c) for c in range(self.rows[0])))

    def addable_cells(self) -> List[Cell]:
        cells = []
        for i, length in enumerate(self.rows):
            if i == 0 or self.rows[i - 1] > length:
                cells.append((i, length))
        cells.append((len(self.rows), 0))
        return cells

    def removable_cells(self) -> List[Cell]:
        cells = []
        for i, length in enumerate(self.rows):
            if i == len(self.rows) - 1 or self.rows[i + 1] < length:
                cells.append((i, length - 1))
        return cells

    def add_cell(self, row: int) -> "YoungDiagram":
        rows = list(self.rows) + [0]
        rows[row] += 1
        return YoungDiagram(tuple(r for r in rows if r))

    def __str__(self) -> str:
        return "(" + ",".join(str(r) for r in self.rows) + ")"


def content(cell: Cell) -> int:
    row, column = cell
    return column - row


def addable_contents(d: YoungDiagram) -> List[int]:
    return sorted(content(c) for c in d.addable_cells())


def removable_contents(d: YoungDiagram) -> List[int]:
    return sorted(content(c) for c in d.removable_cells())


def partitions_of(n: int, largest: Optional[int] = None) -> Iterator[YoungDiagram]:
    """All λ ⊢ n in reverse lexicographic order."""
    for rows in _partition_rows(n, n if largest is None else largest):
        yield YoungDiagram(rows)


def _partition_rows(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partition_rows(n - first, first):
            yield (first,) + rest


def conjugacy_class_size(ctype: Sequence[int]) -> int:
    n = sum(ctype)
    denominator = 1
    for length, multiplicity in Counter(ctype).items():
        denominator *= length ** multiplicity * math.factorial(multiplicity)
    return math.factorial(n) // denominator


@lru_cache(maxsize=None)
def _dimension(rows: Tuple[int, ...]) -> int:
    columns = YoungDiagram(rows).conjugate().rows
    hooks = 1
    for i, length in enumerate(rows):
        for j in range(length):
            hooks *= (length - j - 1) + (columns[j] - i - 1) + 1
    return math.factorial(sum(rows)) // hooks


def dimension(d: YoungDiagram) -> int:
    """Number of standard Young tableaux of shape d (hook-length formula)."""
    return _dimension(d.rows)


@lru_cache(maxsize=None)
def _murnaghan_nakayama(rows: Tuple[int, ...], ctype: Tuple[int, ...]) -> int:
    if not ctype:
        return 1
    if ctype[0] == 1:
        return _dimension(rows)
    strip = ctype[0]
    rest = ctype[1:]
    length = len(rows)
    # beta numbers: removing a border strip of size r moves one bead from b to b - r
    beta = [rows[i] + (length - 1 - i) for i in range(length)]
    occupied = set(beta)
    value = 0
    for bead in beta:
        target = bead - strip
        if target < 0 or target in occupied:
            continue
        height = sum(1 for other in beta if target < other < bead)
        moved = sorted((occupied - {bead}) | {target}, reverse=True)
        smaller = tuple(r for r in (moved[i] - (length - 1 - i) for i in range(length)) if r > 0)
        term = _murnaghan_nakayama(smaller, rest)
        value += -term if height % 2 else term
    return value


def character(d: YoungDiagram, c: Sequence[int]) -> int:
    """χ^λ on the conjugacy class with cycle type c."""
    ctype = tuple(sorted((int(part) for part in c if part), reverse=True))
    if any(part < 0 for part in ctype):
        raise InvalidPartitionError(f"Cycle type {list(c)} has negative parts.")
    if sum(ctype) != d.size:
        raise InvalidPartitionError(f"Cycle type {list(c)} is not a partition of {d.size}.")
    return _murnaghan_nakayama(d.rows, ctype)


@lru_cache(maxsize=None)
def _class_trace(rows: Tuple[int, ...], ctype: CycleType) -> Fraction:
    size = sum(rows)
    padded = pad_cycle_type(ctype, size)
    return Fraction(_murnaghan_nakayama(rows, padded), _dimension(rows))


def class_trace(d: YoungDiagram, ctype: Sequence[int]) -> Fraction:
    """Normalized trace χ^λ/dim λ on a class of some S_m, m ≤ |λ|, padded with fixpoints."""
    ctype = tuple(sorted(ctype, reverse=True))
    if sum(ctype) > d.size:
        raise DegreeMismatchError(f"A class of S_{sum(ctype)} does not act in a representation of S_{d.size}.")
    return _class_trace(d.rows, ctype)


def normalized_trace(d: YoungDiagram, s: Permutation) -> Fraction:
    if s.degree > d.size:
        raise DegreeMismatchError(f"Permutation of degree {s.degree} exceeds the diagram size {d.size}.")
    return _class_trace(d.rows, cycle_type(s))


def class_sum_trace(d: YoungDiagram, class_sums: Mapping[CycleType, Rational]) -> Fraction:
    """Linear extension of class_trace to a combination of classes."""
    return sum((Fraction(coefficient) * class_trace(d, ctype) for ctype, coefficient in class_sums.items()), Fraction(0))


class TransitionMeasure(AtomicMeasure):
    """Kerov transition measure: atoms at contents of addable cells."""

    __slots__ = ()


def transition_measure(d: YoungDiagram) -> TransitionMeasure:
    size = d.size
    base = dimension(d)
    atoms = []
    for row, column in d.addable_cells():
        weight = Fraction(dimension(d.add_cell(row)), (size + 1) * base)
        atoms.append((Fraction(column - row), weight))
    return TransitionMeasure(tuple(sorted(atoms)))


@dataclass(frozen=True, slots=True)
class DecayRow:
    n: int
    trace: Fraction
    scaled: float


def character_decay_check(ds: Sequence[YoungDiagram], s: Permutation) -> List[DecayRow]:
    """|tr ρ_λ(σ)|·n^{|σ|/2} along a sequence of diagrams; boundedness is judged by the caller."""
    length = reduced_length(s)
    rows = []
    for d in ds:
        trace = normalized_trace(d, s)
        rows.append(DecayRow(d.size, trace, abs(float(trace)) * d.size ** (length / 2)))
    return rows


def is_balanced(d: YoungDiagram, balance: Rational) -> bool:
    """Rows and number of rows both at most balance·√n."""
    if not d.rows:
        return True
    bound = Fraction(balance) ** 2 * d.size
    return d.rows[0] ** 2 <= bound and len(d.rows) ** 2 <= bound


@dataclass(frozen=True)
class DiagramFamily:
    """A named sequence n ↦ λ_n tagged with the balance constant it satisfies."""

    name: str
    balance: Fraction
    builder: Callable[[int], YoungDiagram] = field(repr=False, compare=False)

    def diagram(self, n: int) -> YoungDiagram:
        d = self.builder(n)
        if d.size != n:
            raise ParameterError("grid", f"family '{self.name}' produced a diagram of size {d.size} for n={n}")
        return d


def _square(n: int) -> YoungDiagram:
    r = math.isqrt(n)
    if r * r != n or n == 0:
        raise ParameterError("grid", f"square diagrams need a perfect square n, got {n}")
    return YoungDiagram((r,) * r)


def _rectangle(n: int) -> YoungDiagram:
    r = math.isqrt(n // 2) if n % 2 == 0 else 0
    if r == 0 or 2 * r * r != n:
        raise ParameterError("grid", f"2:1 rectangles need n = 2r^2, got {n}")
    return YoungDiagram((2 * r,) * r)


def _staircase(n: int) -> YoungDiagram:
    r = (math.isqrt(8 * n + 1) - 1) // 2
    if r == 0 or r * (r + 1) // 2 != n:
        raise ParameterError("grid", f"staircases need a triangular n, got {n}")
    return YoungDiagram(tuple(range(r, 0, -1)))


BUILTIN_FAMILIES: Dict[str, DiagramFamily] = {
    "square": DiagramFamily("square", Fraction(1), _square),
    "rectangle": DiagramFamily("rectangle", Fraction(2), _rectangle),
    "staircase": DiagramFamily("staircase", Fraction(2), _staircase),
}


def family_from_mapping(name: str, balance: Rational, diagrams: Mapping[int, YoungDiagram]) -> DiagramFamily:
    table = dict(diagrams)

    def builder(n: int) -> YoungDiagram:
        try:
            return table[n]
        except KeyError:
            raise ParameterError("grid", f"family '{name}' has no diagram for n={n}") from None

    return DiagramFamily(name, Fraction(balance), builder)


def get_family(name: str) -> DiagramFamily:
    try:
        return BUILTIN_FAMILIES[name]
    except KeyError:
        raise ParameterError("family", f"unknown family '{name}', expected one of {sorted(BUILTIN_FAMILIES)}") from None


__all__ = [
    "BUILTIN_FAMILIES",
    "DecayRow",
    "DiagramFamily",
    "TransitionMeasure",
    "YoungDiagram",
    "addable_contents",
    "character",
    "character_decay_check",
    "class_sum_trace",
    "class_trace",
    "conjugacy_class_size",
    "content",
    "dimension",
    "family_from_mapping",
    "get_family",
    "is_balanced",
    "normalized_trace",
    "partitions_of",
    "removable_contents",
    "transition_measure",
]
