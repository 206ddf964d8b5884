"""Atomic measures, moment/free-cumulant transforms, free compression and free mixed moments.

Everything is exact: measures are handled through their moment sequences and no atom of
a transformed measure is ever located numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from .exceptions import CrossingPartitionError, ParameterError, WordError
from .logger import Logger
from .nc_partitions import SetPartition, enumerate_nc, is_noncrossing, max_compatible, nc_partitions_of
from .utils import Rational, rotate_left

log = Logger.for_module(__name__)

AB_LETTERS = ("a", "b")


@dataclass(frozen=True, slots=True)
class AtomicMeasure:
    """Finitely many atoms (location, weight) with positive weights summing to 1."""

    atoms: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        atoms = tuple((Fraction(x), Fraction(w)) for x, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        locations = [x for x, _ in atoms]
        if len(set(locations)) != len(locations):
            raise ParameterError("atoms", "locations must be distinct")
        if any(w <= 0 for _, w in atoms):
            raise ParameterError("atoms", "weights must be positive")
        if sum(w for _, w in atoms) != 1:
            raise ParameterError("atoms", "weights must sum to 1")

    @classmethod
    def dirac(cls, location: Rational = 0) -> "AtomicMeasure":
        return cls(((Fraction(location), Fraction(1)),))

    def locations(self) -> Tuple[Fraction, ...]:
        return tuple(x for x, _ in self.atoms)

    def weight(self, location: Rational) -> Fraction:
        for x, w in self.atoms:
            if x == location:
                return w
        return Fraction(0)


@dataclass(frozen=True, slots=True)
class RationalSequence:
    """values[j-1] is the j-th term; order 0 is the constant 1 for moments."""

    values: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __getitem__(self, index: int) -> Fraction:
        return self.values[index]

    def order(self, j: int) -> Fraction:
        if j == 0:
            return Fraction(1)
        if not 1 <= j <= len(self.values):
            raise ParameterError("L", f"order {j} is not available in a sequence of length {len(self.values)}")
        return self.values[j - 1]


@dataclass(frozen=True, slots=True)
class MomentSequence(RationalSequence):
    pass


@dataclass(frozen=True, slots=True)
class CumulantSequence(RationalSequence):
    pass


def moments(mu: AtomicMeasure, L: int) -> MomentSequence:
    if L < 1:
        raise ParameterError("L", "at least one moment is required")
    return MomentSequence(tuple(sum((w * x ** j for x, w in mu.atoms), Fraction(0)) for j in range(1, L + 1)))


def _power_coefficients(series: Sequence[Fraction], powers: int, degree: int) -> List[List[Fraction]]:
    """Coefficients up to `degree` of series^s for s = 0..powers (series[0] is the constant term)."""
    table = [[Fraction(1)] + [Fraction(0)] * degree]
    for _ in range(powers):
        previous = table[-1]
        current = [Fraction(0)] * (degree + 1)
        for i, a in enumerate(previous):
            if not a:
                continue
            for j in range(degree + 1 - i):
                if j < len(series):
                    current[i + j] += a * series[j]
        table.append(current)
    return table


def moments_to_cumulants(m: MomentSequence) -> CumulantSequence:
    """Free cumulants from m_j = Σ_{π∈NC(j)} Π_B κ_{|B|}.

    Grouping NC(j) by the block of 1 gives m_j = Σ_s κ_s [z^{j-s}] M(z)^s with
    M(z) = Σ_i m_i z^i, which is triangular in κ.
    """
    length = len(m)
    series = [Fraction(1)] + list(m.values)
    powers = _power_coefficients(series, length, length)
    cumulants: List[Fraction] = []
    for j in range(1, length + 1):
        value = m.values[j - 1]
        for s in range(1, j):
            value -= cumulants[s - 1] * powers[s][j - s]
        cumulants.append(value)
    return CumulantSequence(tuple(cumulants))


def cumulants_to_moments(k: CumulantSequence) -> MomentSequence:
    length = len(k)
    series = [Fraction(1)]
    for j in range(1, length + 1):
        powers = _power_coefficients(series, j, j)
        series.append(sum((k.values[s - 1] * powers[s][j - s] for s in range(1, j + 1)), Fraction(0)))
    return MomentSequence(tuple(series[1:]))


def cumulant_of_partition(k: CumulantSequence, p: SetPartition) -> Fraction:
    """C_π = Π_{B∈π} κ_{|B|}."""
    if not is_noncrossing(p):
        raise CrossingPartitionError(f"{p.to_lists()} is crossing.")
    value = Fraction(1)
    for size in p.block_sizes():
        if size > len(k):
            raise ParameterError("cumulants", f"κ_{size} is not available in a sequence of length {len(k)}")
        value *= k.values[size - 1]
    return value


def moments_from_cumulants_nc(k: CumulantSequence, L: int) -> MomentSequence:
    """The NC(j) sum written out partition by partition; the reference for the transforms."""
    return MomentSequence(tuple(
        sum((cumulant_of_partition(k, p) for p in enumerate_nc(j)), Fraction(0)) for j in range(1, L + 1)
    ))


def free_compress(m: MomentSequence, t: Rational) -> MomentSequence:
    """Moments of the compression by a free projection of trace t: κ_j ↦ t^{j-1} κ_j."""
    t = Fraction(t)
    if not 0 < t <= 1:
        raise ParameterError("t", f"the projection trace must lie in (0, 1], got {t}")
    cumulants = moments_to_cumulants(m)
    scaled = CumulantSequence(tuple(t ** (j - 1) * c for j, c in enumerate(cumulants.values, start=1)))
    return cumulants_to_moments(scaled)


def bernoulli_cumulants(tr_b: Rational, L: int) -> CumulantSequence:
    """Free cumulants of a projection of trace tr_b (all moments equal tr_b)."""
    return moments_to_cumulants(MomentSequence((Fraction(tr_b),) * L))


def _check_ab_word(word: Sequence[str]) -> Tuple[str, ...]:
    letters = tuple(str(letter).lower() for letter in word)
    if not letters:
        raise WordError("A word needs at least one letter.")
    unknown = sorted(set(letters) - set(AB_LETTERS))
    if unknown:
        raise WordError(f"Unknown letters {unknown}; expected 'a' or 'b'.")
    return letters


def normalize_ab_word(word: Sequence[str]) -> Tuple[str, ...]:
    """Collapse bb → b cyclically and rotate so that the word ends with a."""
    letters = _check_ab_word(word)
    collapsed: List[str] = []
    for letter in letters:
        if letter == "b" and collapsed and collapsed[-1] == "b":
            continue
        collapsed.append(letter)
    if len(collapsed) > 1 and collapsed[0] == "b" and collapsed[-1] == "b":
        collapsed.pop()
    if "a" not in collapsed:
        return tuple(collapsed)
    last_a = len(collapsed) - 1 - collapsed[::-1].index("a")
    return tuple(rotate_left(collapsed, last_a + 1))


def free_mixed_moment(word: Sequence[str], cum_a: CumulantSequence, tr_b: Rational) -> Fraction:
    """φ(A_1…A_m) for a free from a projection b: Σ_π C_π(a)·tr(b)^{|maxτ|}.

    π runs over noncrossing partitions of the a-positions of the normalized word and
    maxτ is the coarsest partition of the b-positions keeping π ∪ maxτ noncrossing.
    """
    tr_b = Fraction(tr_b)
    normalized = normalize_ab_word(word)
    log.debug("free mixed moment: %s normalized to %s", "".join(_check_ab_word(word)), "".join(normalized))
    if "a" not in normalized:
        return tr_b
    a_positions = [i for i, letter in enumerate(normalized, start=1) if letter == "a"]
    b_positions = [i for i, letter in enumerate(normalized, start=1) if letter == "b"]
    if len(a_positions) > len(cum_a):
        raise ParameterError("cumulants", f"{len(a_positions)} cumulants of a are needed, {len(cum_a)} given")
    total = Fraction(0)
    for pi in nc_partitions_of(a_positions):
        weight = cumulant_of_partition(cum_a, pi)
        if not weight:
            continue
        exponent = len(max_compatible(b_positions, pi)) if b_positions else 0
        total += weight * tr_b ** exponent
    return total


def free_mixed_moment_oracle(word: Sequence[str], cum_a: CumulantSequence, tr_b: Rational) -> Fraction:
    """Vanishing of mixed cumulants, written out over NC(m) for the raw word."""
    letters = _check_ab_word(word)
    m = len(letters)
    cum_b = bernoulli_cumulants(tr_b, m)
    total = Fraction(0)
    for pi in enumerate_nc(m):
        term = Fraction(1)
        for block in pi.blocks:
            kinds = {letters[x - 1] for x in block}
            if len(kinds) > 1:
                term = Fraction(0)
                break
            source = cum_a if kinds == {"a"} else cum_b
            if len(block) > len(source):
                raise ParameterError("cumulants", f"κ_{len(block)} is not available")
            term *= source.values[len(block) - 1]
            if not term:
                break
        total += term
    return total


@dataclass(frozen=True, slots=True)
class FreeMixedMoment:
    """A free mixed moment with the word as given and after normalization."""

    word: Tuple[str, ...]
    normalized_word: Tuple[str, ...]
    raw_value: Fraction
    value: Fraction

    @property
    def agrees(self) -> bool:
        return self.raw_value == self.value


def evaluate_free_mixed_moment(word: Sequence[str], cum_a: CumulantSequence, tr_b: Rational) -> FreeMixedMoment:
    """raw_value expands the word as written; value is free_mixed_moment on its normal form."""
    letters = _check_ab_word(word)
    normalized = normalize_ab_word(letters)
    result = FreeMixedMoment(
        letters,
        normalized,
        free_mixed_moment_oracle(letters, cum_a, tr_b),
        free_mixed_moment(normalized, cum_a, tr_b),
    )
    if not result.agrees:
        log.warn("free mixed moment of %s: %s as written, %s after normalizing to %s", "".join(letters), result.raw_value, result.value, "".join(normalized))
    return result


def hankel_determinant(m: MomentSequence, r: int) -> Fraction:
    """det (m_{i+j})_{0≤i,j≤r}; nonnegative for every r when m comes from a measure."""
    if 2 * r > len(m):
        raise ParameterError("L", f"order {r} needs {2 * r} moments, {len(m)} given")
    size = r + 1
    matrix = [[m.order(i + j) for j in range(size)] for i in range(size)]
    determinant = Fraction(1)
    for column in range(size):
        pivot = next((row for row in range(column, size) if matrix[row][column]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != column:
            matrix[column], matrix[pivot] = matrix[pivot], matrix[column]
            determinant = -determinant
        determinant *= matrix[column][column]
        for row in range(column + 1, size):
            factor = matrix[row][column] / matrix[column][column]
            if factor:
                for j in range(column, size):
                    matrix[row][j] -= factor * matrix[column][j]
    return determinant


def is_positive_moment_sequence(m: MomentSequence) -> bool:
    return all(hankel_determinant(m, r) >= 0 for r in range(len(m) // 2 + 1))


__all__ = [
    "AB_LETTERS",
    "AtomicMeasure",
    "CumulantSequence",
    "FreeMixedMoment",
    "MomentSequence",
    "RationalSequence",
    "bernoulli_cumulants",
    "cumulant_of_partition",
    "cumulants_to_moments",
    "evaluate_free_mixed_moment",
    "free_compress",
    "free_mixed_moment",
    "free_mixed_moment_oracle",
    "hankel_determinant",
    "is_positive_moment_sequence",
    "moments",
    "moments_from_cumulants_nc",
    "moments_to_cumulants",
    "normalize_ab_word",
]
