"""Set partitions, noncrossing structure, Kreweras complements and the h(π) classes.

The lemma checks at the bottom verify, by exhaustive enumeration, the combinatorial
facts the moment computation relies on: crossing or zero-carrying data are subleading,
and for admissible noncrossing data the class h(π) is read off the Kreweras complement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .exceptions import AdmissibilityError, CrossingPartitionError, EnumerationLimitError, InvalidPartitionError
from .logger import Logger
from .options import DEFAULT_LIMITS, LimitOptions
from .symmetric_core import CycleType, Permutation, cycle_type, pad_cycle_type, reduced_length, transposition_chain
from .utils import cyclic_pairs

Block = Tuple[int, ...]

log = Logger.for_module(__name__)


@dataclass(frozen=True, slots=True)
class SetPartition:
    """Disjoint nonempty blocks of positive integers, stored canonically.

    Blocks are sorted internally and ordered by their least element, which is also the
    order of first appearance when positions are scanned upwards.
    """

    blocks: Tuple[Block, ...]

    def __post_init__(self) -> None:
        blocks = tuple(sorted(tuple(sorted(int(x) for x in block)) for block in self.blocks))
        seen = set()
        for block in blocks:
            if not block:
                raise InvalidPartitionError("Blocks of a set partition must be nonempty.")
            for x in block:
                if x < 1:
                    raise InvalidPartitionError(f"Element {x} is not a positive integer.")
                if x in seen:
                    raise InvalidPartitionError(f"Element {x} belongs to more than one block.")
                seen.add(x)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "SetPartition":
        return cls(tuple(tuple(block) for block in blocks))

    @classmethod
    def singletons(cls, elements: Iterable[int]) -> "SetPartition":
        return cls(tuple((x,) for x in elements))

    @classmethod
    def full(cls, elements: Iterable[int]) -> "SetPartition":
        block = tuple(elements)
        return cls((block,) if block else ())

    @property
    def elements(self) -> Tuple[int, ...]:
        return tuple(sorted(x for block in self.blocks for x in block))

    @property
    def ground_size(self) -> int:
        return sum(len(block) for block in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[Block]:
        return iter(self.blocks)

    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(len(block) for block in self.blocks)

    def block_of(self, x: int) -> Block:
        for block in self.blocks:
            if x in block:
                return block
        raise KeyError(x)

    def is_noncrossing(self) -> bool:
        return is_noncrossing(self)

    def relabel(self, mapping: Mapping[int, int]) -> "SetPartition":
        return SetPartition(tuple(tuple(mapping[x] for x in block) for block in self.blocks))

    def rotate(self, shift: int, m: int) -> "SetPartition":
        """Shift every element x ↦ x + shift on the cycle {1..m}."""
        return self.relabel({x: (x - 1 + shift) % m + 1 for x in self.elements})

    def refines(self, other: "SetPartition") -> bool:
        owner = {x: i for i, block in enumerate(other.blocks) for x in block}
        return all(len({owner.get(x) for x in block}) == 1 and block[0] in owner for block in self.blocks)

    def to_lists(self) -> List[List[int]]:
        return [list(block) for block in self.blocks]


def is_noncrossing(p: SetPartition) -> bool:
    """True iff no a<b<c<d has a, c in one block and b, d in another."""
    owner = {x: i for i, block in enumerate(p.blocks) for x in block}
    for first, second in itertools.combinations(range(len(p.blocks)), 2):
        pattern: List[int] = []
        for x in sorted(p.blocks[first] + p.blocks[second]):
            label = owner[x]
            if not pattern or pattern[-1] != label:
                pattern.append(label)
                if len(pattern) >= 4:
                    return False
    return True


def _block_choices(tail: Tuple[int, ...]) -> Iterator[Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]]:
    # the rest of the head's block, and the gaps it leaves (each partitioned on its own)
    yield (), (tail,)
    for j, element in enumerate(tail):
        for chosen, gaps in _block_choices(tail[j + 1:]):
            yield (element,) + chosen, (tail[:j],) + gaps


@lru_cache(maxsize=4096)
def _nc_block_lists(elements: Tuple[int, ...], min_block: int) -> Tuple[Tuple[Block, ...], ...]:
    if not elements:
        return ((),)
    head, tail = elements[0], elements[1:]
    results: List[Tuple[Block, ...]] = []
    for chosen, gaps in _block_choices(tail):
        block = (head,) + chosen
        if len(block) < min_block:
            continue
        options = [_nc_block_lists(gap, min_block) for gap in gaps]
        if any(not option for option in options):
            continue
        for combination in itertools.product(*options):
            results.append((block,) + tuple(b for part in combination for b in part))
    return tuple(results)


def nc_partitions_of(positions: Iterable[int], min_block: int = 1, limits: LimitOptions = DEFAULT_LIMITS) -> List[SetPartition]:
    """All noncrossing partitions of a finite set of positions, ordered by block leaders."""
    elements = tuple(sorted(set(positions)))
    if len(elements) > limits.max_nc_size:
        raise EnumerationLimitError(f"Enumerating NC({len(elements)}) exceeds the bound {limits.max_nc_size}.")
    partitions = [SetPartition(blocks) for blocks in _nc_block_lists(elements, max(1, min_block))]
    partitions.sort(key=lambda p: p.blocks)
    return partitions


def enumerate_nc(m: int, min_block: int = 1, limits: LimitOptions = DEFAULT_LIMITS) -> List[SetPartition]:
    """NC(m) restricted to blocks of size ≥ min_block (min_block=2 gives NC_{>1}(m))."""
    if m < 1:
        raise InvalidPartitionError(f"Ground size must be positive, got {m}.")
    return nc_partitions_of(range(1, m + 1), min_block, limits)


def all_set_partitions(positions: Iterable[int]) -> Iterator[SetPartition]:
    """Every set partition of the positions (restricted growth order)."""
    elements = tuple(sorted(set(positions)))
    for blocks in _grow(elements, [], lambda x, block: True):
        yield SetPartition(tuple(tuple(b) for b in blocks))


def _grow(elements: Tuple[int, ...], blocks: List[List[int]], allowed) -> Iterator[List[List[int]]]:
    if not elements:
        yield blocks
        return
    x, rest = elements[0], elements[1:]
    for block in blocks:
        if allowed(x, block):
            block.append(x)
            yield from _grow(rest, blocks, allowed)
            block.pop()
    blocks.append([x])
    yield from _grow(rest, blocks, allowed)
    blocks.pop()


def _separated(x: int, y: int, blocks: Sequence[Block]) -> bool:
    # some block has elements both strictly between x and y and outside [x, y]
    for block in blocks:
        inside = outside = False
        for z in block:
            if x < z < y:
                inside = True
            elif z < x or z > y:
                outside = True
            if inside and outside:
                return True
    return False


def max_compatible(positions: Iterable[int], p: SetPartition) -> SetPartition:
    """The coarsest partition τ of `positions` such that p ∪ τ is noncrossing."""
    points = sorted(set(positions))
    if set(points) & set(p.elements):
        raise InvalidPartitionError("Positions overlap the elements of the given partition.")
    if not is_noncrossing(p):
        raise CrossingPartitionError(f"{p.to_lists()} is crossing.")
    parent: Dict[int, int] = {x: x for x in points}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, x in enumerate(points):
        for y in points[i + 1:]:
            if find(x) != find(y) and not _separated(x, y, p.blocks):
                parent[find(y)] = find(x)
    groups: Dict[int, List[int]] = {}
    for x in points:
        groups.setdefault(find(x), []).append(x)
    return SetPartition(tuple(tuple(group) for group in groups.values()))


def brute_force_max_compatible(positions: Iterable[int], p: SetPartition) -> Optional[SetPartition]:
    """Search every partition of `positions`; return the unique maximal compatible one, if any."""
    compatible = [
        tau for tau in all_set_partitions(positions)
        if is_noncrossing(SetPartition(p.blocks + tau.blocks))
    ]
    maximal = [tau for tau in compatible if all(other.refines(tau) for other in compatible)]
    return maximal[0] if len(maximal) == 1 else None


def kreweras(p: SetPartition) -> SetPartition:
    """Kreweras complement K(p) on the primed points 1', …, m', relabelled to {1..m}.

    The primed point i' sits between i and i+1 (m' between m and 1).
    """
    m = p.ground_size
    if p.elements != tuple(range(1, m + 1)):
        raise InvalidPartitionError(f"Kreweras needs a partition of {{1..{m}}}, got {p.to_lists()}.")
    if not is_noncrossing(p):
        raise CrossingPartitionError(f"{p.to_lists()} is crossing.")
    interleaved = p.relabel({x: 2 * x - 1 for x in p.elements})
    complement = max_compatible(range(2, 2 * m + 1, 2), interleaved)
    return complement.relabel({x: x // 2 for x in complement.elements})


@dataclass(frozen=True, slots=True)
class AdmissibleDatum:
    """A pair (J, π): zero positions J ⊂ {1..k} and a partition π of the other positions."""

    k: int
    zeros: Tuple[int, ...]
    partition: SetPartition

    def __post_init__(self) -> None:
        zeros = tuple(sorted(set(self.zeros)))
        object.__setattr__(self, "zeros", zeros)
        if self.k < 1:
            raise InvalidPartitionError(f"Word length must be positive, got {self.k}.")
        if any(not 1 <= z <= self.k for z in zeros):
            raise InvalidPartitionError(f"Zero positions {list(zeros)} are outside {{1..{self.k}}}.")
        expected = tuple(x for x in range(1, self.k + 1) if x not in zeros)
        if self.partition.elements != expected:
            raise InvalidPartitionError(
                f"Partition {self.partition.to_lists()} does not cover the non-zero positions {list(expected)}."
            )

    @property
    def is_admissible(self) -> bool:
        """No block contains a cyclically adjacent pair i, i+1 (k+1 read as 1)."""
        owner = {x: i for i, block in enumerate(self.partition.blocks) for x in block}
        for i, j in cyclic_pairs(self.k):
            if i in owner and j in owner and owner[i] == owner[j]:
                return False
        return True

    @property
    def is_realizable(self) -> bool:
        """Admissible and no two cyclically adjacent zeros, i.e. some index tuple induces it."""
        zeros = set(self.zeros)
        if any(i in zeros and j in zeros for i, j in cyclic_pairs(self.k)):
            return False
        return self.is_admissible

    def labels(self, block_labels: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
        """The index tuple i_1..i_k: 0 on J, the block's label elsewhere."""
        if block_labels is None:
            block_labels = range(1, len(self.partition) + 1)
        block_labels = tuple(block_labels)
        if len(block_labels) != len(self.partition) or len(set(block_labels)) != len(block_labels) or 0 in block_labels:
            raise InvalidPartitionError("Block labels must be distinct, nonzero and one per block.")
        indices = [0] * self.k
        for label, block in zip(block_labels, self.partition.blocks):
            for x in block:
                indices[x - 1] = label
        return tuple(indices)


def representative(d: AdmissibleDatum, block_labels: Optional[Sequence[int]] = None, degree: Optional[int] = None) -> Permutation:
    """The product (i_1,i_2)(i_2,i_3)…(i_k,i_1) for the given (default: canonical) labelling."""
    if not d.is_admissible:
        raise AdmissibilityError(f"Datum J={list(d.zeros)}, π={d.partition.to_lists()} is not admissible.")
    indices = d.labels(block_labels)
    needed = max(indices + (1,))
    return transposition_chain(indices, max(needed, degree or 0))


def h_class(d: AdmissibleDatum, degree: Optional[int] = None) -> CycleType:
    """Conjugacy class h(π), in S_{|π|} or padded with fixpoints to `degree`."""
    ctype = cycle_type(representative(d))
    return pad_cycle_type(ctype, degree) if degree is not None else ctype


def h_length(d: AdmissibleDatum) -> int:
    return reduced_length(representative(d))


def enumerate_admissible(
    k: int,
    *,
    zeros: Optional[Iterable[int]] = None,
    realizable: bool = True,
    noncrossing: Optional[bool] = None,
    limits: LimitOptions = DEFAULT_LIMITS,
) -> Iterator[AdmissibleDatum]:
    """Admissible data of length k.

    ``zeros=None`` ranges over every J ⊂ {1..k}; ``realizable`` drops J with adjacent
    zeros; ``noncrossing`` filters π by crossing status when not None.
    """
    if k < 1:
        return
    if noncrossing is not True and k > limits.max_crossing_lemma_k:
        raise EnumerationLimitError(f"Enumerating all set partitions of {k} points exceeds the bound {limits.max_crossing_lemma_k}.")
    if zeros is None:
        zero_sets: Iterable[Tuple[int, ...]] = (
            combo for size in range(k + 1) for combo in itertools.combinations(range(1, k + 1), size)
        )
    else:
        zero_sets = (tuple(sorted(zeros)),)
    for zero_set in zero_sets:
        zero_lookup = set(zero_set)
        if realizable and any(i in zero_lookup and j in zero_lookup for i, j in cyclic_pairs(k)):
            continue
        free = tuple(x for x in range(1, k + 1) if x not in zero_lookup)
        for partition in _admissible_partitions(k, free, noncrossing, limits):
            yield AdmissibleDatum(k, zero_set, partition)


def _admissible_partitions(k: int, free: Tuple[int, ...], noncrossing: Optional[bool], limits: LimitOptions) -> Iterator[SetPartition]:
    def neighbours(x: int) -> Tuple[int, int]:
        return (x - 2) % k + 1, x % k + 1

    def allowed(x: int, block: List[int]) -> bool:
        return not any(y in block for y in neighbours(x))

    if k == 1 and free:
        return  # the only position is adjacent to itself
    if noncrossing:
        for partition in nc_partitions_of(free, limits=limits):
            if all(allowed(x, [y for y in block if y != x]) for block in partition.blocks for x in block):
                yield partition
        return
    for blocks in _grow(free, [], allowed):
        partition = SetPartition(tuple(tuple(b) for b in blocks))
        if noncrossing is None or is_noncrossing(partition) == noncrossing:
            yield partition


@dataclass(frozen=True)
class LemmaCheck:
    """Outcome of one exhaustive verification; truthy when no counterexample was found."""

    name: str
    k: int
    holds: bool
    checked: int
    min_gap: Optional[int] = None
    counterexample: Optional[AdmissibleDatum] = None

    def __bool__(self) -> bool:
        return self.holds


def _check_length_bound(name: str, k: int, data: Iterable[AdmissibleDatum], margin: int) -> LemmaCheck:
    checked = 0
    min_gap: Optional[int] = None
    for datum in data:
        checked += 1
        gap = h_length(datum) - (2 * len(datum.partition) - k)
        min_gap = gap if min_gap is None else min(min_gap, gap)
        if gap < margin:
            log.warn("%s fails for k=%s at J=%s, π=%s (gap %s)", name, k, list(datum.zeros), datum.partition.to_lists(), gap)
            return LemmaCheck(name, k, False, checked, min_gap, datum)
    log.debug("%s holds for k=%s over %s data, minimum gap %s", name, k, checked, min_gap)
    return LemmaCheck(name, k, True, checked, min_gap)


def check_lemma_431(k: int, margin: int = 0, limits: LimitOptions = DEFAULT_LIMITS) -> LemmaCheck:
    """J = ∅ and π crossing ⇒ |h(π)| ≥ 2|π| − k + margin."""
    data = enumerate_admissible(k, zeros=(), noncrossing=False, limits=limits)
    return _check_length_bound("crossing-bound", k, data, margin)


def check_lemma_432(k: int, margin: int = 0, limits: LimitOptions = DEFAULT_LIMITS) -> LemmaCheck:
    """J ≠ ∅ ⇒ |h(π)| ≥ 2|π| − k + margin, over every admissible datum, adjacent zeros included."""
    data = (d for d in enumerate_admissible(k, realizable=False, limits=limits) if d.zeros)
    return _check_length_bound("zeros-bound", k, data, margin)


def kreweras_cycle_type(p: SetPartition) -> CycleType:
    """One cycle of length |B|−1 per block B of K(p), plus the single leftover fixpoint."""
    lengths = [len(block) - 1 for block in kreweras(p).blocks if len(block) > 1]
    return tuple(sorted(lengths + [1], reverse=True))


def check_lemma_433(k: int, limits: LimitOptions = DEFAULT_LIMITS) -> LemmaCheck:
    """For J = ∅ and π admissible noncrossing: h(π) is read off K(π) and |h(π)| = k − 2|K(π)|."""
    if k > limits.max_lemma_k:
        raise EnumerationLimitError(f"k={k} exceeds the bound {limits.max_lemma_k}.")
    checked = 0
    for datum in enumerate_admissible(k, zeros=(), noncrossing=True, limits=limits):
        checked += 1
        complement = kreweras(datum.partition)
        length_ok = h_length(datum) == k - 2 * len(complement)
        if not length_ok or h_class(datum) != kreweras_cycle_type(datum.partition):
            log.warn("Kreweras cycle correspondence fails for k=%s at π=%s", k, datum.partition.to_lists())
            return LemmaCheck("kreweras-cycles", k, False, checked, counterexample=datum)
    return LemmaCheck("kreweras-cycles", k, True, checked)


__all__ = [
    "AdmissibleDatum",
    "LemmaCheck",
    "SetPartition",
    "all_set_partitions",
    "brute_force_max_compatible",
    "check_lemma_431",
    "check_lemma_432",
    "check_lemma_433",
    "enumerate_admissible",
    "enumerate_nc",
    "h_class",
    "h_length",
    "is_noncrossing",
    "kreweras",
    "kreweras_cycle_type",
    "max_compatible",
    "nc_partitions_of",
    "representative",
]
