"""Matrix models of the Jucys-Murphy element X and of the projections P and Q.

X is an (n+1)×(n+1) matrix over ℂ[S_n]; slot 0 stands for the adjoined point n+1.
A word in X, PX and P is evaluated in the state (1/(n+1)) Σ_a tr ρ_λ(entry (a, a)) by three
independent routes:

* ``state`` multiplies the matrices entry by entry,
* ``tuple_state`` sums the transposition chains over all admissible index tuples,
* ``moment_via_partitions`` groups the tuples by the partition they induce.

All three return exact rationals for the unnormalized word; n^{-L/2} is applied only by
``normalize_value``.
"""

from __future__ import annotations

import dataclasses
import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .characters import YoungDiagram, class_sum_trace, class_trace
from .exceptions import DegreeMismatchError, EnumerationLimitError, ParameterError, WordError
from .logger import Logger
from .nc_partitions import enumerate_admissible, h_class
from .options import DEFAULT_LIMITS, LimitOptions
from .symmetric_core import (
    CycleType,
    GroupAlgebraElement,
    Permutation,
    algebra_multiply,
    compose,
    cycle_type,
    pad_cycle_type,
    transposition_chain,
)
from .utils import Rational, falling_factorial, rotate_left

log = Logger.for_module(__name__)

ClassCounts = Tuple[Tuple[CycleType, Fraction], ...]


class EntryAction(enum.Enum):
    """How matrix entries act on ℂ[S_n], and hence how entries multiply."""

    RIGHT_REGULAR = "right-regular"  # opposite-algebra products, identification σ·(j, n+1)
    LEFT_REGULAR = "left-regular"  # ordinary products, identification (j, n+1)·σ


class Letter(enum.Enum):
    X = "X"
    PX = "PX"
    P = "P"


class Model(enum.Enum):
    """RIGHT is the model with P; LEFT is the model with Q."""

    RIGHT = "right"
    LEFT = "left"

    @property
    def entry_action(self) -> EntryAction:
        return EntryAction.RIGHT_REGULAR if self is Model.RIGHT else EntryAction.LEFT_REGULAR


ROUTES = ("matrix", "tuples", "partitions")


@dataclass(frozen=True)
class JmMatrix:
    """An (n+1)×(n+1) matrix whose entries are elements of ℂ[S_n]."""

    n: int
    entries: Tuple[Tuple[GroupAlgebraElement, ...], ...]
    entry_action: EntryAction = EntryAction.RIGHT_REGULAR

    def __post_init__(self) -> None:
        size = self.n + 1
        if self.n < 1:
            raise DegreeMismatchError(f"Matrix models need n ≥ 1, got {self.n}.")
        if len(self.entries) != size or any(len(row) != size for row in self.entries):
            raise DegreeMismatchError(f"A model matrix for n={self.n} must be {size}×{size}.")
        if any(entry.degree != self.n for row in self.entries for entry in row):
            raise DegreeMismatchError(f"Entries of a model matrix for n={self.n} must have degree {self.n}.")

    @property
    def size(self) -> int:
        return self.n + 1

    def entry(self, row: int, column: int) -> GroupAlgebraElement:
        return self.entries[row][column]

    def diagonal(self) -> Tuple[GroupAlgebraElement, ...]:
        return tuple(self.entries[a][a] for a in range(self.size))

    def row_is_zero(self, row: int) -> bool:
        return all(entry.is_zero() for entry in self.entries[row])

    def multiply(self, other: "JmMatrix", diagonal_only: bool = False) -> "JmMatrix":
        """Matrix product; off-diagonal entries are left zero when ``diagonal_only``."""
        if self.n != other.n:
            raise DegreeMismatchError(f"Cannot multiply model matrices for n={self.n} and n={other.n}.")
        if self.entry_action is not other.entry_action:
            raise DegreeMismatchError("Cannot multiply matrices whose entries act from different sides.")
        opposite = self.entry_action is EntryAction.RIGHT_REGULAR
        zero = GroupAlgebraElement.zero(self.n)
        rows = []
        for a in range(self.size):
            row = []
            for c in range(self.size):
                if diagonal_only and a != c:
                    row.append(zero)
                    continue
                terms = (
                    item
                    for b in range(self.size)
                    for item in algebra_multiply(self.entries[a][b], other.entries[b][c], opposite=opposite)
                )
                row.append(GroupAlgebraElement(self.n, terms))
            rows.append(tuple(row))
        return JmMatrix(self.n, tuple(rows), self.entry_action)

    def __matmul__(self, other: "JmMatrix") -> "JmMatrix":
        return self.multiply(other)

    def trace_class_sums(self) -> Dict[CycleType, Fraction]:
        """Σ_a of the class sums of the diagonal entries."""
        sums: Counter = Counter()
        for entry in self.diagonal():
            for ctype, coefficient in entry.class_sums().items():
                sums[ctype] += coefficient
        return {ctype: Fraction(value) for ctype, value in sums.items() if value}


def _check_cutoff(n: int, k: int) -> None:
    if n < 1:
        raise ParameterError("n", f"matrix models need n ≥ 1, got {n}")
    if not 0 <= k <= n:
        raise ParameterError("k", f"the cutoff must satisfy 0 ≤ k ≤ n={n}, got {k}")


def build_X(n: int, entry_action: EntryAction = EntryAction.RIGHT_REGULAR) -> JmMatrix:
    """Zero diagonal, identity in row and column 0, the transposition (a, b) elsewhere."""
    if n < 1:
        raise ParameterError("n", f"matrix models need n ≥ 1, got {n}")
    zero = GroupAlgebraElement.zero(n)
    one = GroupAlgebraElement.identity(n)
    rows = []
    for a in range(n + 1):
        row = []
        for b in range(n + 1):
            if a == b:
                row.append(zero)
            elif a == 0 or b == 0:
                row.append(one)
            else:
                row.append(GroupAlgebraElement.basis(Permutation.transposition(a, b, n)))
        rows.append(tuple(row))
    return JmMatrix(n, tuple(rows), entry_action)


def build_P(n: int, k: int, entry_action: EntryAction = EntryAction.RIGHT_REGULAR) -> JmMatrix:
    """Diagonal with the identity in slots 0..k, so that 1 occurs k+1 times."""
    _check_cutoff(n, k)
    zero = GroupAlgebraElement.zero(n)
    one = GroupAlgebraElement.identity(n)
    rows = tuple(
        tuple(one if a == b and a <= k else zero for b in range(n + 1))
        for a in range(n + 1)
    )
    return JmMatrix(n, rows, entry_action)


def build_PX(n: int, k: int, entry_action: EntryAction = EntryAction.RIGHT_REGULAR) -> JmMatrix:
    return build_P(n, k, entry_action) @ build_X(n, entry_action)


def build_Q_model(n: int, k: int) -> JmMatrix:
    """Q in the left-regular language: the same diagonal as P, entries acting from the left."""
    return build_P(n, k, EntryAction.LEFT_REGULAR)


def jucys_murphy_element(n: int) -> GroupAlgebraElement:
    """(1, n+1) + (2, n+1) + … + (n, n+1) in ℂ[S_{n+1}]."""
    return GroupAlgebraElement(n + 1, ((Permutation.transposition(i, n + 1, n + 1), 1) for i in range(1, n + 1)))


# Basis of ℂ[S_{n+1}] versus ℂ[S_n] ⊗ ℂ^{n+1}


def _slot_transposition(slot: int, n: int) -> Permutation:
    if slot == 0:
        return Permutation.identity(n + 1)
    return Permutation.transposition(slot, n + 1, n + 1)


def decompose(tau: Permutation, identification: EntryAction = EntryAction.RIGHT_REGULAR) -> Tuple[Permutation, int]:
    """Split τ ∈ S_{n+1} as σ·(j, n+1) (right-regular) or (j, n+1)·σ (left-regular), σ ∈ S_n.

    Returns (σ, slot) with slot 0 standing for j = n+1.
    """
    n = tau.degree - 1
    if n < 1:
        raise DegreeMismatchError("Basis elements live in S_{n+1} with n ≥ 1.")
    if identification is EntryAction.RIGHT_REGULAR:
        point = tau.inverse()(n + 1)
    else:
        point = tau(n + 1)
    slot = 0 if point == n + 1 else point
    swap = _slot_transposition(slot, n)
    sigma = compose(tau, swap) if identification is EntryAction.RIGHT_REGULAR else compose(swap, tau)
    return Permutation(sigma.images[:n]), slot


def recompose(sigma: Permutation, slot: int, identification: EntryAction = EntryAction.RIGHT_REGULAR) -> Permutation:
    n = sigma.degree
    swap = _slot_transposition(slot, n)
    lifted = sigma.embed(n + 1)
    return compose(lifted, swap) if identification is EntryAction.RIGHT_REGULAR else compose(swap, lifted)


def apply_to_basis(matrix: JmMatrix, tau: Permutation) -> GroupAlgebraElement:
    """The action of a model matrix on the basis vector τ of ℂ[S_{n+1}].

    Entries act by the representation named by ``matrix.entry_action``, and the identification
    of ℂ[S_{n+1}] with ℂ[S_n] ⊗ ℂ^{n+1} is the one that goes with it.
    """
    n = matrix.n
    if tau.degree != n + 1:
        raise DegreeMismatchError(f"Matrix for n={n} acts on S_{n + 1}, got a permutation of degree {tau.degree}.")
    action = matrix.entry_action
    sigma, slot = decompose(tau, action)
    terms = []
    for row in range(matrix.size):
        for g, coefficient in matrix.entries[row][slot]:
            image = compose(sigma, g) if action is EntryAction.RIGHT_REGULAR else compose(g, sigma)
            terms.append((recompose(image, row, action), coefficient))
    return GroupAlgebraElement(n + 1, terms)


def p_keeps(tau: Permutation, k: int) -> bool:
    """τ⁻¹(n+1) ∈ {1..k, n+1}."""
    point = tau.inverse()(tau.degree)
    return point <= k or point == tau.degree


def q_keeps(tau: Permutation, k: int) -> bool:
    """τ(n+1) ∈ {1..k, n+1}."""
    point = tau(tau.degree)
    return point <= k or point == tau.degree


def q_block_action(sigma: Permutation, slot: int, k: int) -> GroupAlgebraElement:
    """Q_j in the right-regular language: σ is kept iff σ(j) ∈ {1..k, n+1}."""
    if slot == 0 or sigma(slot) <= k:
        return GroupAlgebraElement.basis(sigma)
    return GroupAlgebraElement.zero(sigma.degree)


@dataclass(frozen=True, slots=True)
class ProjectionSpec:
    kind: str
    k: int

    def __post_init__(self) -> None:
        if self.kind not in ("P", "Q"):
            raise ParameterError("kind", f"projections are 'P' or 'Q', got '{self.kind}'")
        if self.k < 0:
            raise ParameterError("k", f"the cutoff must be non-negative, got {self.k}")

    def keeps(self, tau: Permutation) -> bool:
        return p_keeps(tau, self.k) if self.kind == "P" else q_keeps(tau, self.k)

    def matrix(self, n: int) -> JmMatrix:
        return build_P(n, self.k) if self.kind == "P" else build_Q_model(n, self.k)


# Words


def normalize_letters(letters: Sequence[Letter]) -> Tuple[Letter, ...]:
    """Rewrite a word over {X, PX, P} as an equivalent word over {X, PX}.

    P is idempotent and the state is tracial, so adjacent P's collapse (cyclically) and a
    trailing P moves to the front. A word without X reduces to (P,).
    """
    expanded: List[Letter] = []
    for letter in letters:
        if letter is Letter.PX:
            expanded.extend((Letter.P, Letter.X))
        else:
            expanded.append(letter)
    if Letter.X not in expanded:
        return (Letter.P,)
    last_x = len(expanded) - 1 - expanded[::-1].index(Letter.X)
    expanded = rotate_left(expanded, last_x + 1)
    normalized: List[Letter] = []
    pending = False
    for letter in expanded:
        if letter is Letter.P:
            pending = True
            continue
        normalized.append(Letter.PX if pending else Letter.X)
        pending = False
    return tuple(normalized)


@dataclass(frozen=True)
class JmWord:
    """A word in X, PX and P together with everything needed to evaluate it."""

    letters: Tuple[Letter, ...]
    n: int
    k: int
    diagram: YoungDiagram
    model: Model = Model.RIGHT

    def __post_init__(self) -> None:
        letters = tuple(letter if isinstance(letter, Letter) else Letter(str(letter).upper()) for letter in self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise WordError("A word needs at least one letter.")
        if self.n < 1:
            raise WordError(f"Words live over n ≥ 1, got n={self.n}.")
        if not 0 <= self.k <= self.n:
            raise WordError(f"The cutoff must satisfy 0 ≤ k ≤ n={self.n}, got k={self.k}.")
        if self.diagram.size != self.n:
            raise DegreeMismatchError(f"Diagram {self.diagram} has size {self.diagram.size}, the word lives over n={self.n}.")

    @property
    def length(self) -> int:
        """Number of X factors, the degree of homogeneity of the word."""
        return sum(1 for letter in self.letters if letter is not Letter.P)

    def text(self) -> str:
        return " ".join(letter.value for letter in self.letters)

    def normalized(self) -> "JmWord":
        letters = normalize_letters(self.letters)
        if letters != self.letters:
            log.debug("word %s normalized to %s", self.text(), " ".join(letter.value for letter in letters))
        return dataclasses.replace(self, letters=letters)

    def is_projection_only(self) -> bool:
        return Letter.X not in self.letters and Letter.PX not in self.letters

    def reversed(self) -> "JmWord":
        return dataclasses.replace(self, letters=tuple(reversed(self.letters)))

    def with_model(self, model: Model) -> "JmWord":
        return dataclasses.replace(self, model=model)


def _letter_matrix(letter: Letter, n: int, k: int, action: EntryAction) -> JmMatrix:
    if letter is Letter.X:
        return build_X(n, action)
    if letter is Letter.P:
        return build_P(n, k, action)
    return build_PX(n, k, action)


def word_product(word: JmWord) -> JmMatrix:
    """The full matrix product of the letters, in the word's model."""
    action = word.model.entry_action
    product = _letter_matrix(word.letters[0], word.n, word.k, action)
    for letter in word.letters[1:]:
        product = product @ _letter_matrix(letter, word.n, word.k, action)
    return product


@lru_cache(maxsize=1024)
def _matrix_class_counts(letters: Tuple[Letter, ...], n: int, k: int, action: EntryAction) -> ClassCounts:
    log.trace("matrix class counts for %s, n=%s, k=%s", [letter.value for letter in letters], n, k)
    matrices = [_letter_matrix(letter, n, k, action) for letter in letters]
    product = matrices[0]
    for position, matrix in enumerate(matrices[1:], start=2):
        product = product.multiply(matrix, diagonal_only=position == len(matrices))
    return tuple(sorted(product.trace_class_sums().items()))


def _weighted_trace(counts: Iterable[Tuple[CycleType, Rational]], diagram: YoungDiagram, n: int) -> Fraction:
    total = sum((Fraction(count) * class_trace(diagram, ctype) for ctype, count in counts), Fraction(0))
    return total / (n + 1)


def matrix_state(matrix: JmMatrix, diagram: YoungDiagram) -> Fraction:
    """(1/(n+1)) Σ_a tr ρ_λ(entry (a, a))."""
    if diagram.size != matrix.n:
        raise DegreeMismatchError(f"Diagram {diagram} has size {diagram.size}, the matrix lives over n={matrix.n}.")
    total = sum((class_sum_trace(diagram, entry.class_sums()) for entry in matrix.diagonal()), Fraction(0))
    return total / matrix.size


def state(word: JmWord, limits: LimitOptions = DEFAULT_LIMITS) -> Fraction:
    """Matrix route. The letters are multiplied as written, bare P's included."""
    if word.n > limits.max_matrix_degree:
        raise EnumerationLimitError(f"The matrix route is limited to n ≤ {limits.max_matrix_degree}, got n={word.n}.")
    counts = _matrix_class_counts(word.letters, word.n, word.k, word.model.entry_action)
    value = _weighted_trace(counts, word.diagram, word.n)
    log.debug("matrix route: %s over λ=%s, k=%s → %s", word.text(), word.diagram, word.k, value)
    return value


def _projection_value(word: JmWord) -> Fraction:
    return Fraction(word.k + 1, word.n + 1)


@lru_cache(maxsize=1024)
def _tuple_class_counts(pattern: Tuple[bool, ...], n: int, k: int) -> ClassCounts:
    """Cycle-type counts over cyclic tuples with i_j ≠ i_{j+1}; i_j ≤ k where pattern[j] is set."""
    log.trace("tuple class counts for pattern %s, n=%s, k=%s", pattern, n, k)
    length = len(pattern)
    counts: Counter = Counter()
    indices = [0] * length

    def extend(position: int) -> None:
        if position == length:
            if indices[-1] != indices[0]:
                counts[cycle_type(transposition_chain(indices, n))] += 1
            return
        bound = k if pattern[position] else n
        for index in range(bound + 1):
            if position and index == indices[position - 1]:
                continue
            indices[position] = index
            extend(position + 1)

    extend(0)
    return tuple(sorted((ctype, Fraction(count)) for ctype, count in counts.items()))


def tuple_state(word: JmWord, limits: LimitOptions = DEFAULT_LIMITS) -> Fraction:
    """Tuple route: the transposition chain (i_1,i_2)(i_2,i_3)…(i_L,i_1) summed over index tuples.

    The chain and its reversal are mutually inverse, so the same class counts serve both models.
    """
    normalized = word.normalized()
    if normalized.is_projection_only():
        return _projection_value(word)
    length = len(normalized.letters)
    if word.n > limits.max_tuple_degree or length > limits.max_tuple_length:
        raise EnumerationLimitError(
            f"The tuple route is limited to n ≤ {limits.max_tuple_degree} and length ≤ {limits.max_tuple_length}, "
            f"got n={word.n}, length {length}."
        )
    pattern = tuple(letter is Letter.PX for letter in normalized.letters)
    value = _weighted_trace(_tuple_class_counts(pattern, word.n, word.k), word.diagram, word.n)
    log.debug("tuple route: %s over λ=%s, k=%s → %s", normalized.text(), word.diagram, word.k, value)
    return value


@dataclass(frozen=True, slots=True)
class _PartitionTerm:
    blocks: Tuple[Tuple[int, ...], ...]
    ctype: CycleType


@lru_cache(maxsize=None)
def _partition_terms(length: int) -> Tuple[_PartitionTerm, ...]:
    limits = dataclasses.replace(DEFAULT_LIMITS, max_crossing_lemma_k=max(length, DEFAULT_LIMITS.max_crossing_lemma_k))
    return tuple(
        _PartitionTerm(datum.partition.blocks, h_class(datum))
        for datum in enumerate_admissible(length, realizable=True, limits=limits)
    )


@lru_cache(maxsize=1024)
def _partition_class_counts(pattern: Tuple[bool, ...], n: int, k: int) -> ClassCounts:
    log.trace("partition class counts for pattern %s, n=%s, k=%s", pattern, n, k)
    counts: Counter = Counter()
    for term in _partition_terms(len(pattern)):
        touched = sum(1 for block in term.blocks if any(pattern[x - 1] for x in block))
        # labels of blocks carrying a PX position come from {1..k}, the others from the rest of {1..n}
        count = falling_factorial(k, touched) * falling_factorial(n - touched, len(term.blocks) - touched)
        if count:
            counts[pad_cycle_type(term.ctype, n)] += count
    return tuple(sorted((ctype, Fraction(count)) for ctype, count in counts.items()))


def moment_via_partitions(word: JmWord, limits: LimitOptions = DEFAULT_LIMITS) -> Fraction:
    """Partition route: Σ over realizable (J, π) of (k)_S (n−S)_{|π|−S} tr ρ(h(π)).

    S is the number of blocks of π containing a PX position; for pure words this is (n)_{|π|}.
    """
    normalized = word.normalized()
    if normalized.is_projection_only():
        return _projection_value(word)
    length = len(normalized.letters)
    if length > limits.max_crossing_lemma_k:
        raise EnumerationLimitError(f"The partition route is limited to length ≤ {limits.max_crossing_lemma_k}, got {length}.")
    pattern = tuple(letter is Letter.PX for letter in normalized.letters)
    value = _weighted_trace(_partition_class_counts(pattern, word.n, word.k), word.diagram, word.n)
    log.debug("partition route: %s over λ=%s, k=%s → %s", normalized.text(), word.diagram, word.k, value)
    return value


def evaluate(word: JmWord, route: str = "partitions", limits: LimitOptions = DEFAULT_LIMITS) -> Fraction:
    if route == "matrix":
        return state(word, limits)
    if route == "tuples":
        return tuple_state(word, limits)
    if route == "partitions":
        return moment_via_partitions(word, limits)
    raise ParameterError("route", f"unknown route '{route}', expected one of {list(ROUTES)}")


def normalize_value(value: Rational, n: int, length: int) -> float:
    """The value of the word in X/√n: value · n^{-length/2}."""
    return float(Fraction(value)) / n ** (length / 2)


def pure_word(length: int, n: int, diagram: YoungDiagram, k: Optional[int] = None) -> JmWord:
    return JmWord((Letter.X,) * length, n, n if k is None else k, diagram)


__all__ = [
    "ROUTES",
    "EntryAction",
    "JmMatrix",
    "JmWord",
    "Letter",
    "Model",
    "ProjectionSpec",
    "apply_to_basis",
    "build_P",
    "build_PX",
    "build_Q_model",
    "build_X",
    "decompose",
    "evaluate",
    "jucys_murphy_element",
    "matrix_state",
    "moment_via_partitions",
    "normalize_letters",
    "normalize_value",
    "p_keeps",
    "pure_word",
    "q_block_action",
    "q_keeps",
    "recompose",
    "state",
    "tuple_state",
    "word_product",
]
