from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .characters import DiagramFamily, YoungDiagram, family_from_mapping
from .exceptions import InvalidPartitionError, InvalidPermutationError, ParseError
from .jm_model import Letter
from .nc_partitions import SetPartition
from .symmetric_core import Permutation

CYCLE_REGEX = re.compile(r"\(([^()]*)\)")
TOKEN_SEPARATORS = re.compile(r"[\s·*]+")
INTEGER_REGEX = re.compile(r"[+-]?\d+")
RATIONAL_REGEX = re.compile(r"([+-]?\d+)\s*/\s*(\d+)")
DECIMAL_REGEX = re.compile(r"[+-]?(\d+\.\d*|\.\d+|\d+)")

IDENTITY_FORMS = ("", "()", "e", "id")


def _load_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(text, f"{what} must be valid JSON ({exc.msg})") from None


def _integers(text: str, items: Sequence[Any], what: str) -> List[int]:
    values = []
    for item in items:
        if isinstance(item, bool) or not isinstance(item, int):
            if isinstance(item, str) and INTEGER_REGEX.fullmatch(item.strip()):
                values.append(int(item))
                continue
            raise ParseError(text, f"{what} must contain integers, got {item!r}")
        values.append(item)
    return values


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """'p/q', an integer or a decimal such as '0.5'."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    raw = str(text).strip()
    match = RATIONAL_REGEX.fullmatch(raw)
    if match:
        denominator = int(match.group(2))
        if denominator == 0:
            raise ParseError(raw, "zero denominator")
        return Fraction(int(match.group(1)), denominator)
    if DECIMAL_REGEX.fullmatch(raw):
        return Fraction(raw)
    raise ParseError(raw, "expected a rational such as '1/2', '3' or '0.25'")


def parse_grid(text: str) -> Tuple[int, ...]:
    """Comma separated positive integers, e.g. '4,9,16'."""
    raw = str(text).strip().strip("[]")
    parts = [part.strip() for part in raw.split(",") if part.strip()]
    if not parts:
        raise ParseError(text, "the grid is empty")
    values = []
    for part in parts:
        if not INTEGER_REGEX.fullmatch(part) or int(part) < 1:
            raise ParseError(text, f"grid points must be positive integers, got '{part}'")
        values.append(int(part))
    return tuple(values)


def parse_diagram(text: str) -> YoungDiagram:
    """'3,2,1', '[3,2,1]' or '' for the empty diagram."""
    raw = str(text).strip()
    if raw.startswith("["):
        items = _load_json(raw, "a diagram")
        if not isinstance(items, list):
            raise ParseError(raw, "a diagram must be a list of row lengths")
        rows = _integers(raw, items, "a diagram")
    else:
        parts = [part.strip() for part in raw.split(",") if part.strip()]
        if any(not INTEGER_REGEX.fullmatch(part) for part in parts):
            raise ParseError(raw, "a diagram is written as row lengths such as '3,2,1'")
        rows = [int(part) for part in parts]
    try:
        return YoungDiagram(tuple(rows))
    except InvalidPartitionError as exc:
        raise ParseError(raw, str(exc)) from None


def parse_permutation(text: str, degree: Optional[int] = None) -> Permutation:
    """Cycle notation '(1 2)(3 4)' (commas allowed) or a one-line JSON array '[2,1,3]'.

    For cycle notation the degree defaults to the largest label.
    """
    raw = str(text).strip()
    if raw.startswith("["):
        items = _load_json(raw, "a one-line permutation")
        if not isinstance(items, list):
            raise ParseError(raw, "a one-line permutation must be a list")
        images = _integers(raw, items, "a one-line permutation")
        if degree is not None and len(images) != degree:
            raise ParseError(raw, f"expected {degree} images, got {len(images)}")
        try:
            return Permutation(tuple(images))
        except InvalidPermutationError as exc:
            raise ParseError(raw, str(exc)) from None
    if raw.lower() in IDENTITY_FORMS:
        return Permutation.identity(degree or 1)
    if CYCLE_REGEX.sub("", raw).strip():
        raise ParseError(raw, "expected cycle notation such as '(1 2)(3 4)'")
    cycles = []
    for body in CYCLE_REGEX.findall(raw):
        tokens = [token for token in re.split(r"[\s,]+", body.strip()) if token]
        if any(not INTEGER_REGEX.fullmatch(token) for token in tokens):
            raise ParseError(raw, f"cycle '({body})' must contain integers")
        if tokens:
            cycles.append(tuple(int(token) for token in tokens))
    largest = max((point for cycle in cycles for point in cycle), default=1)
    if degree is None:
        degree = largest
    try:
        return Permutation.from_cycles(cycles, degree)
    except InvalidPermutationError as exc:
        raise ParseError(raw, str(exc)) from None


def parse_partition(text: str) -> SetPartition:
    """JSON list of blocks, e.g. '[[1,2],[3,4]]'."""
    raw = str(text).strip()
    blocks = _load_json(raw, "a set partition")
    if not isinstance(blocks, list) or any(not isinstance(block, list) for block in blocks):
        raise ParseError(raw, "a set partition is a list of lists")
    try:
        return SetPartition.from_blocks(_integers(raw, block, "a block") for block in blocks)
    except InvalidPartitionError as exc:
        raise ParseError(raw, str(exc)) from None


def _tokens(text: str) -> List[str]:
    return [token for token in TOKEN_SEPARATORS.split(str(text).strip()) if token]


def parse_word(text: str) -> Tuple[Letter, ...]:
    """Tokens from {X, PX, P}, case-insensitive, separated by spaces, '·' or '*'."""
    tokens = _tokens(text)
    if not tokens:
        raise ParseError(text, "the word is empty")
    letters = []
    for token in tokens:
        try:
            letters.append(Letter(token.upper()))
        except ValueError:
            raise ParseError(text, f"unknown letter '{token}', expected X, PX or P") from None
    return tuple(letters)


def format_word(letters: Sequence[Letter]) -> str:
    return " ".join(letter.value for letter in letters)


def parse_shape(text: str) -> Tuple[str, ...]:
    """A word shape over {a, pa}; X and PX are accepted as spellings of a and pa."""
    tokens = _tokens(text)
    if not tokens:
        raise ParseError(text, "the word shape is empty")
    shape = []
    for token in tokens:
        lowered = token.lower()
        if lowered in ("a", "x"):
            shape.append("a")
        elif lowered in ("pa", "px"):
            shape.append("pa")
        else:
            raise ParseError(text, f"unknown letter '{token}', expected a or pa")
    return tuple(shape)


def parse_ab_word(text: str) -> Tuple[str, ...]:
    """A word over {a, b}: 'abab' or 'a b a b'."""
    tokens = _tokens(text)
    letters = [letter for token in tokens for letter in token.lower()]
    if not letters:
        raise ParseError(text, "the word is empty")
    unknown = sorted(set(letters) - {"a", "b"})
    if unknown:
        raise ParseError(text, f"unknown letters {unknown}, expected a or b")
    return tuple(letters)


def parse_family(source: Union[str, Mapping[str, Any]]) -> DiagramFamily:
    """{"name": ..., "balance": A, "diagrams": {"n": [rows], ...}} as text or as a mapping."""
    raw = source if isinstance(source, str) else json.dumps(source)
    data = _load_json(source, "a diagram family") if isinstance(source, str) else dict(source)
    if not isinstance(data, dict):
        raise ParseError(raw, "a diagram family is a JSON object")
    missing = [key for key in ("name", "balance", "diagrams") if key not in data]
    if missing:
        raise ParseError(raw, f"missing keys {missing}")
    diagrams: Dict[int, YoungDiagram] = {}
    if not isinstance(data["diagrams"], dict):
        raise ParseError(raw, "'diagrams' maps n to row lengths")
    for key, rows in data["diagrams"].items():
        if not INTEGER_REGEX.fullmatch(str(key)):
            raise ParseError(raw, f"diagram key '{key}' is not an integer")
        if not isinstance(rows, list):
            raise ParseError(raw, f"diagram for n={key} must be a list of row lengths")
        diagram = parse_diagram(json.dumps(rows))
        if diagram.size != int(key):
            raise ParseError(raw, f"diagram {diagram} has size {diagram.size}, listed under n={key}")
        diagrams[int(key)] = diagram
    return family_from_mapping(str(data["name"]), parse_rational(str(data["balance"])), diagrams)


__all__ = [
    "format_word",
    "parse_ab_word",
    "parse_diagram",
    "parse_family",
    "parse_grid",
    "parse_partition",
    "parse_permutation",
    "parse_rational",
    "parse_shape",
    "parse_word",
]
