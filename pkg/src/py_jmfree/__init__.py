"""Exact Jucys-Murphy matrix models, free cumulants and asymptotic freeness at finite n."""

from .characters import YoungDiagram, character, dimension, normalized_trace, transition_measure
from .free_prob import AtomicMeasure, CumulantSequence, MomentSequence, free_compress, free_mixed_moment
from .jm_model import JmMatrix, JmWord, Letter, Model, moment_via_partitions, state, tuple_state
from .nc_partitions import AdmissibleDatum, SetPartition, kreweras
from .options import LimitOptions, LoggingOptions, OutputOptions, RunConfig
from .symmetric_core import GroupAlgebraElement, Permutation

__all__ = [
    "AdmissibleDatum",
    "AtomicMeasure",
    "CumulantSequence",
    "GroupAlgebraElement",
    "JmMatrix",
    "JmWord",
    "Letter",
    "LimitOptions",
    "LoggingOptions",
    "Model",
    "MomentSequence",
    "OutputOptions",
    "Permutation",
    "RunConfig",
    "SetPartition",
    "YoungDiagram",
    "character",
    "dimension",
    "free_compress",
    "free_mixed_moment",
    "kreweras",
    "moment_via_partitions",
    "normalized_trace",
    "state",
    "transition_measure",
    "tuple_state",
]
