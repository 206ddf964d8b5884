"""Finite-n experiments: limits of mixed moments, the projection factor and free compression.

Model values are exact rationals of the unnormalized words; every comparison with a free
target is made exactly and only the reported gaps are scaled by n^{-L/2} and converted to
floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .characters import DiagramFamily, YoungDiagram, transition_measure
from .exceptions import ParameterError, WordError
from .free_prob import (
    CumulantSequence,
    MomentSequence,
    cumulant_of_partition,
    free_compress,
    free_mixed_moment,
    moments,
    moments_to_cumulants,
)
from .jm_model import JmWord, Letter, evaluate, normalize_value
from .logger import Logger
from .nc_partitions import enumerate_admissible, kreweras, max_compatible
from .options import DEFAULT_LIMITS, LimitOptions
from .utils import Rational, falling_factorial, is_strictly_shrinking

log = Logger.for_module(__name__)

SHAPE_LETTERS = ("a", "pa")


def cutoff_for(n: int, c: Rational) -> int:
    """k = ⌊c(n+1)⌋ − 1, so that Tr P = k+1 ≈ c(n+1)."""
    c = Fraction(c)
    k = math.floor(c * (n + 1)) - 1
    if not 0 <= k <= n:
        raise ParameterError("c", f"c={c} gives the cutoff k={k} outside [0, {n}] at n={n}")
    return k


def _check_shape(shape: Sequence[str]) -> Tuple[str, ...]:
    letters = tuple(str(letter).lower() for letter in shape)
    letters = tuple("pa" if letter == "px" else "a" if letter == "x" else letter for letter in letters)
    if not letters:
        raise WordError("A word shape needs at least one letter.")
    unknown = sorted(set(letters) - set(SHAPE_LETTERS))
    if unknown:
        raise WordError(f"Unknown letters {unknown} in a word shape; expected 'a' or 'pa'.")
    return letters


def shape_to_letters(shape: Sequence[str]) -> Tuple[Letter, ...]:
    return tuple(Letter.PX if letter == "pa" else Letter.X for letter in _check_shape(shape))


def shape_to_ab_word(shape: Sequence[str]) -> Tuple[str, ...]:
    """pa ↦ "b a", a ↦ "a": the same product written in a free pair (a, b)."""
    word: List[str] = []
    for letter in _check_shape(shape):
        if letter == "pa":
            word.append("b")
        word.append("a")
    return tuple(word)


def _ab_positions(letters: Sequence[str]) -> Tuple[Dict[int, int], List[int]]:
    """Where each letter's a, and each projection b, lands in shape_to_ab_word."""
    a_positions: Dict[int, int] = {}
    b_positions: List[int] = []
    cursor = 0
    for index, letter in enumerate(letters, start=1):
        if letter == "pa":
            cursor += 1
            b_positions.append(cursor)
        cursor += 1
        a_positions[index] = cursor
    return a_positions, b_positions


def limit_moment(shape: Sequence[str], cum: CumulantSequence, tr_p: Rational) -> Fraction:
    """Σ over admissible noncrossing π (no zeros) of tr_p^{|maxτ|} · C_{K(π)}.

    K(π) sits on the a-positions of the word over (a, b) and maxτ is the coarsest partition
    of its b-positions keeping the union noncrossing. Admissibility leaves K(π) without
    singletons, so κ_1 never enters.
    """
    letters = _check_shape(shape)
    tr_p = Fraction(tr_p)
    a_positions, b_positions = _ab_positions(letters)
    total = Fraction(0)
    for datum in enumerate_admissible(len(letters), zeros=(), noncrossing=True):
        complement = kreweras(datum.partition)
        weight = cumulant_of_partition(cum, complement)
        if not weight:
            continue
        exponent = len(max_compatible(b_positions, complement.relabel(a_positions))) if b_positions else 0
        total += tr_p ** exponent * weight
    return total


@dataclass(frozen=True, slots=True)
class FactorRow:
    n: int
    k: int
    ratio: Fraction
    target: Fraction
    deviation: Fraction


@dataclass(frozen=True)
class FactorCheck:
    touched: int
    blocks: int
    c: Fraction
    rows: Tuple[FactorRow, ...]

    @property
    def shrinking(self) -> bool:
        return is_strictly_shrinking([float(row.deviation) for row in self.rows])

    @property
    def final_deviation(self) -> Fraction:
        return self.rows[-1].deviation


def factor_limit_check(touched: int, blocks: int, grid: Sequence[int], c: Rational) -> FactorCheck:
    """(Tr P)_S (n−S)_{|π|−S} / (n)_{|π|} along the grid, against c^S, with Tr P = k+1."""
    if not grid:
        raise ParameterError("grid", "at least one n is required")
    if not 0 <= touched <= blocks:
        raise ParameterError("S", f"S must satisfy 0 ≤ S ≤ |π|={blocks}, got {touched}")
    c = Fraction(c)
    target = c ** touched
    rows = []
    for n in grid:
        if n < blocks:
            raise ParameterError("grid", f"n={n} is smaller than |π|={blocks}")
        k = cutoff_for(n, c)
        ratio = Fraction(
            falling_factorial(k + 1, touched) * falling_factorial(n - touched, blocks - touched),
            falling_factorial(n, blocks),
        )
        rows.append(FactorRow(n, k, ratio, target, abs(ratio - target)))
    return FactorCheck(touched, blocks, c, tuple(rows))


@dataclass(frozen=True, slots=True)
class ConvergenceRow:
    n: int
    k: int
    diagram: YoungDiagram
    exact_value: Fraction
    free_value: Fraction
    normalized_value: float
    normalized_free_value: float
    gap: float


@dataclass(frozen=True)
class ConvergenceReport:
    shape: Tuple[str, ...]
    family: str
    c: Fraction
    route: str
    rows: Tuple[ConvergenceRow, ...] = field(default_factory=tuple)

    @property
    def shrinking(self) -> bool:
        return is_strictly_shrinking([row.gap for row in self.rows])


def convergence_experiment(
    shape: Sequence[str],
    family: DiagramFamily,
    grid: Sequence[int],
    c: Rational,
    route: str = "partitions",
    limits: LimitOptions = DEFAULT_LIMITS,
) -> ConvergenceReport:
    """Mixed moments of (X/√n, P) against the free pair with the same marginals.

    The free side takes the cumulants of μ_λ unscaled and tr b = (k+1)/(n+1); both sides are
    homogeneous of degree L, so the gap is |exact − free| · n^{-L/2}.
    """
    if not grid:
        raise ParameterError("grid", "at least one n is required")
    letters = shape_to_letters(shape)
    ab_word = shape_to_ab_word(shape)
    length = len(letters)
    c = Fraction(c)
    rows = []
    for n in grid:
        diagram = family.diagram(n)
        k = cutoff_for(n, c)
        word = JmWord(letters, n, k, diagram)
        exact = evaluate(word, route, limits)
        cumulants = moments_to_cumulants(moments(transition_measure(diagram), length))
        free = free_mixed_moment(ab_word, cumulants, Fraction(k + 1, n + 1))
        row = ConvergenceRow(
            n,
            k,
            diagram,
            exact,
            free,
            normalize_value(exact, n, length),
            normalize_value(free, n, length),
            normalize_value(abs(exact - free), n, length),
        )
        log.info("converge %s: n=%s, k=%s, λ=%s, exact=%s, free=%s, gap=%s", " ".join(shape), n, k, diagram, exact, free, row.gap)
        rows.append(row)
    report = ConvergenceReport(tuple(shape), family.name, c, route, tuple(rows))
    if not report.shrinking:
        log.warn("gap of %s along %s does not shrink: %s", " ".join(shape), list(grid), [row.gap for row in rows])
    return report


def compressed_distribution(
    n: int,
    k: int,
    diagram: YoungDiagram,
    L: int,
    route: str = "partitions",
    limits: LimitOptions = DEFAULT_LIMITS,
) -> MomentSequence:
    """Moments of PXP in the compressed state: state((PX)^j P) / state(P), j = 1..L."""
    if L < 1:
        raise ParameterError("L", "at least one moment is required")
    trace_p = Fraction(k + 1, n + 1)
    values = []
    for j in range(1, L + 1):
        word = JmWord((Letter.PX,) * j + (Letter.P,), n, k, diagram)
        values.append(evaluate(word, route, limits) / trace_p)
    return MomentSequence(tuple(values))


@dataclass(frozen=True, slots=True)
class CompressionRow:
    n: int
    k: int
    diagram: YoungDiagram
    trace: Fraction
    model_moments: MomentSequence
    free_moments: MomentSequence
    gaps: Tuple[float, ...]

    @property
    def gap(self) -> float:
        return max(self.gaps)


@dataclass(frozen=True)
class CompressionReport:
    c: Fraction
    L: int
    route: str
    rows: Tuple[CompressionRow, ...]

    @property
    def shrinking(self) -> bool:
        return is_strictly_shrinking([row.gap for row in self.rows])


def compression_row(diagram: YoungDiagram, c: Rational, L: int, route: str = "partitions", limits: LimitOptions = DEFAULT_LIMITS) -> CompressionRow:
    """Compressed moments of X next to the free compression of μ_λ by t = Tr P/(n+1)."""
    n = diagram.size
    k = cutoff_for(n, c)
    trace = Fraction(k + 1, n + 1)
    model = compressed_distribution(n, k, diagram, L, route, limits)
    free = free_compress(moments(transition_measure(diagram), L), trace)
    gaps = tuple(normalize_value(abs(m - f), n, j) for j, (m, f) in enumerate(zip(model, free), start=1))
    return CompressionRow(n, k, diagram, trace, model, free, gaps)


def compression_experiment(
    family: DiagramFamily,
    grid: Sequence[int],
    c: Rational,
    L: int,
    route: str = "partitions",
    limits: LimitOptions = DEFAULT_LIMITS,
) -> CompressionReport:
    if not grid:
        raise ParameterError("grid", "at least one n is required")
    rows = []
    for n in grid:
        row = compression_row(family.diagram(n), c, L, route, limits)
        log.info("compress: n=%s, k=%s, λ=%s, gaps=%s", n, row.k, row.diagram, row.gaps)
        rows.append(row)
    report = CompressionReport(Fraction(c), L, route, tuple(rows))
    if not report.shrinking:
        log.warn("compression gap along %s does not shrink: %s", list(grid), [row.gap for row in rows])
    return report


__all__ = [
    "CompressionReport",
    "CompressionRow",
    "ConvergenceReport",
    "ConvergenceRow",
    "FactorCheck",
    "FactorRow",
    "SHAPE_LETTERS",
    "compressed_distribution",
    "compression_experiment",
    "compression_row",
    "convergence_experiment",
    "cutoff_for",
    "factor_limit_check",
    "limit_moment",
    "shape_to_ab_word",
    "shape_to_letters",
]
