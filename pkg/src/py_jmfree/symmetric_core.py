"""Exact permutation arithmetic and sparse group-algebra arithmetic over the rationals.

Composition convention: ``compose(s, t)`` is ``s∘t`` with ``(s∘t)(x) = s(t(x))``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import DefaultDict, Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from sympy.combinatorics import Permutation as SympyPermutation

from .exceptions import DegreeMismatchError, InvalidPermutationError
from .utils import Rational

CycleType = Tuple[int, ...]


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection of {1..d} in one-line notation: ``images[i - 1] == σ(i)``."""

    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if not images:
            raise InvalidPermutationError("A permutation needs a positive degree.")
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InvalidPermutationError(f"{list(images)} is not a bijection of {{1..{len(images)}}}.")

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> "Permutation":
        perm = object.__new__(cls)
        object.__setattr__(perm, "images", images)
        return perm

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise InvalidPermutationError("A permutation needs a positive degree.")
        return cls._trusted(tuple(range(1, degree + 1)))

    @classmethod
    def transposition(cls, i: int, j: int, degree: int) -> "Permutation":
        if not (1 <= i <= degree and 1 <= j <= degree) or i == j:
            raise InvalidPermutationError(f"({i},{j}) is not a transposition of S_{degree}.")
        images = list(range(1, degree + 1))
        images[i - 1], images[j - 1] = j, i
        return cls._trusted(tuple(images))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        cycles = [tuple(cycle) for cycle in cycles]
        seen = set()
        for cycle in cycles:
            for point in cycle:
                if not 1 <= point <= degree:
                    raise InvalidPermutationError(f"Point {point} is outside {{1..{degree}}}.")
                if point in seen:
                    raise InvalidPermutationError(f"Point {point} occurs in more than one cycle.")
                seen.add(point)
        if not seen:
            return cls.identity(degree)
        return cls.from_sympy(SympyPermutation([[point - 1 for point in cycle] for cycle in cycles], size=degree))

    @classmethod
    def from_sympy(cls, perm: SympyPermutation) -> "Permutation":
        return cls._trusted(tuple(image + 1 for image in perm.array_form))

    def to_sympy(self) -> SympyPermutation:
        return SympyPermutation([image - 1 for image in self.images])

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def inverse(self) -> "Permutation":
        return Permutation.from_sympy(~self.to_sympy())

    def embed(self, degree: int) -> "Permutation":
        """Extend to S_degree by fixing {d+1..degree}."""
        if degree < self.degree:
            raise DegreeMismatchError(f"Cannot embed S_{self.degree} into S_{degree}.")
        return Permutation._trusted(self.images + tuple(range(self.degree + 1, degree + 1)))

    def cycles(self, include_fixpoints: bool = False) -> List[Tuple[int, ...]]:
        """Cycles starting at their smallest point, ordered by that point."""
        perm = self.to_sympy()
        form = perm.full_cyclic_form if include_fixpoints else perm.cyclic_form
        return [tuple(point + 1 for point in cycle) for cycle in form]

    def support(self) -> frozenset:
        return frozenset(i for i, image in enumerate(self.images, start=1) if image != i)

    def is_identity(self) -> bool:
        return all(image == i for i, image in enumerate(self.images, start=1))

    def __str__(self) -> str:
        nontrivial = self.cycles()
        if not nontrivial:
            return "()"
        return "".join("(" + " ".join(str(p) for p in cycle) + ")" for cycle in nontrivial)


@lru_cache(maxsize=1 << 16)
def _cycle_type(images: Tuple[int, ...]) -> CycleType:
    seen = [False] * (len(images) + 1)
    lengths = []
    for start in range(1, len(images) + 1):
        length = 0
        point = start
        while not seen[point]:
            seen[point] = True
            length += 1
            point = images[point - 1]
        if length:
            lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def compose(s: Permutation, t: Permutation) -> Permutation:
    """Return s∘t, i.e. the permutation x ↦ s(t(x))."""
    if s.degree != t.degree:
        raise DegreeMismatchError(f"Cannot compose permutations of degree {s.degree} and {t.degree}.")
    s_images = s.images
    return Permutation._trusted(tuple(s_images[x - 1] for x in t.images))


def cycle_type(s: Permutation) -> CycleType:
    """Cycle lengths including fixpoints, sorted in decreasing order."""
    return _cycle_type(s.images)


def reduced_length(s: Permutation) -> int:
    """Minimal number of transpositions whose product is s."""
    return s.degree - len(cycle_type(s))


def pad_cycle_type(ctype: Sequence[int], degree: int) -> CycleType:
    size = sum(ctype)
    if size > degree:
        raise DegreeMismatchError(f"A class of S_{size} does not embed into S_{degree}.")
    return tuple(sorted(tuple(ctype) + (1,) * (degree - size), reverse=True))


def transposition_chain(indices: Sequence[int], degree: int) -> Permutation:
    """The cyclic chain (i_1,i_2)(i_2,i_3)...(i_L,i_1).

    Factors with a zero index, or with two equal indices, contribute the identity;
    zero stands for the adjoined point of S_{n+1}, whose matrix entries are 1.
    """
    images = list(range(1, degree + 1))
    length = len(indices)
    for position in range(length):
        a = indices[position]
        b = indices[(position + 1) % length]
        if a == 0 or b == 0 or a == b:
            continue
        # right-multiplying by (a, b) swaps the images of a and b
        images[a - 1], images[b - 1] = images[b - 1], images[a - 1]
    return Permutation._trusted(tuple(images))


class GroupAlgebraElement:
    """A finite exact-rational combination of permutations of one degree.

    Zero coefficients are never stored. Instances are immutable.
    """

    __slots__ = ("_degree", "_terms")

    def __init__(self, degree: int, terms: Union[Mapping[Permutation, Rational], Iterable[Tuple[Permutation, Rational]]] = ()) -> None:
        if degree < 1:
            raise InvalidPermutationError("A group algebra needs a positive degree.")
        items = terms.items() if isinstance(terms, Mapping) else terms
        accumulated: DefaultDict[Permutation, Fraction] = defaultdict(Fraction)
        for perm, coefficient in items:
            if perm.degree != degree:
                raise DegreeMismatchError(f"Permutation of degree {perm.degree} in an element of degree {degree}.")
            accumulated[perm] += Fraction(coefficient)
        self._degree = degree
        self._terms: Dict[Permutation, Fraction] = {p: c for p, c in accumulated.items() if c}

    @classmethod
    def _trusted(cls, degree: int, terms: Dict[Permutation, Fraction]) -> "GroupAlgebraElement":
        element = object.__new__(cls)
        element._degree = degree
        element._terms = terms
        return element

    @classmethod
    def zero(cls, degree: int) -> "GroupAlgebraElement":
        return cls._trusted(degree, {})

    @classmethod
    def identity(cls, degree: int) -> "GroupAlgebraElement":
        return cls._trusted(degree, {Permutation.identity(degree): Fraction(1)})

    @classmethod
    def basis(cls, perm: Permutation, coefficient: Rational = 1) -> "GroupAlgebraElement":
        return cls(perm.degree, {perm: coefficient})

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def terms(self) -> Mapping[Permutation, Fraction]:
        return MappingProxyType(self._terms)

    def coefficient(self, perm: Permutation) -> Fraction:
        return self._terms.get(perm, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Permutation, Fraction]]:
        return iter(self._terms.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self._degree == other._degree and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._degree, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"GroupAlgebraElement({self._degree}, 0)"
        parts = [f"{c}*{p}" for p, c in sorted(self._terms.items(), key=lambda item: item[0].images)]
        return f"GroupAlgebraElement({self._degree}, {' + '.join(parts)})"

    def _check_degree(self, other: "GroupAlgebraElement") -> None:
        if self._degree != other._degree:
            raise DegreeMismatchError(f"Group algebra degrees differ: {self._degree} and {other._degree}.")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._check_degree(other)
        terms = dict(self._terms)
        for perm, coefficient in other._terms.items():
            value = terms.get(perm, 0) + coefficient
            if value:
                terms[perm] = value
            else:
                terms.pop(perm, None)
        return GroupAlgebraElement._trusted(self._degree, terms)

    def __neg__(self) -> "GroupAlgebraElement":
        return self.scale(-1)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, scalar: Rational) -> "GroupAlgebraElement":
        scalar = Fraction(scalar)
        if not scalar:
            return GroupAlgebraElement.zero(self._degree)
        return GroupAlgebraElement._trusted(self._degree, {p: c * scalar for p, c in self._terms.items()})

    def multiply(self, other: "GroupAlgebraElement", opposite: bool = False) -> "GroupAlgebraElement":
        """Bilinear product; ``opposite=True`` uses compose(t, s) for each basis pair (s, t)."""
        self._check_degree(other)
        accumulated: DefaultDict[Permutation, Fraction] = defaultdict(Fraction)
        for s, a in self._terms.items():
            for t, b in other._terms.items():
                product = compose(t, s) if opposite else compose(s, t)
                accumulated[product] += a * b
        return GroupAlgebraElement._trusted(self._degree, {p: c for p, c in accumulated.items() if c})

    def __mul__(self, other: Union["GroupAlgebraElement", Rational]) -> "GroupAlgebraElement":
        if isinstance(other, GroupAlgebraElement):
            return self.multiply(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: Rational) -> "GroupAlgebraElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def embed(self, degree: int) -> "GroupAlgebraElement":
        return GroupAlgebraElement._trusted(degree, {p.embed(degree): c for p, c in self._terms.items()})

    def class_sums(self) -> Dict[CycleType, Fraction]:
        """Coefficients aggregated by conjugacy class."""
        sums: DefaultDict[CycleType, Fraction] = defaultdict(Fraction)
        for perm, coefficient in self._terms.items():
            sums[cycle_type(perm)] += coefficient
        return {ctype: value for ctype, value in sums.items() if value}


def algebra_multiply(a: GroupAlgebraElement, b: GroupAlgebraElement, opposite: bool = False) -> GroupAlgebraElement:
    return a.multiply(b, opposite=opposite)


__all__ = [
    "CycleType",
    "GroupAlgebraElement",
    "Permutation",
    "algebra_multiply",
    "compose",
    "cycle_type",
    "pad_cycle_type",
    "reduced_length",
    "transposition_chain",
]
