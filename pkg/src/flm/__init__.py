"""Computing with finite fuzzy linguistic spaces."""
from .errors import FlmError
from .space import ComparabilityKind, LinguisticSpace, Ordering, OrderKind, Sign, Term
from .matrix import LingMatrix, Op, OperatorPair, compose, elementwise, make_zero_divisor, transpose
from .poly import LingPolynomial, NEG_INFINITY, degree, poly_op
from .metric import MetricKind, MetricTable, classify_topology, metric_kind, validate_metric
from .lingraph import ConceptGraph, ExpertCollection, Strength, classify_experts, graph_to_matrix, is_connected
from .inference import (BipartiteRelation, FeedForwardNetwork, FLCMModel, FLRMModel, HiddenPattern, PatternKind,
                        StateVector, feedforward_eval, flcm_run, flre_compose, flrm_run, relation_to_matrix)
from .modelfile import Diagnostic, ModelBundle, ModelError, dump_model, load_model, parse_model

__all__ = [
    "FlmError", "ComparabilityKind", "LinguisticSpace", "Ordering", "OrderKind", "Sign", "Term",
    "LingMatrix", "Op", "OperatorPair", "compose", "elementwise", "make_zero_divisor", "transpose",
    "LingPolynomial", "NEG_INFINITY", "degree", "poly_op",
    "MetricKind", "MetricTable", "classify_topology", "metric_kind", "validate_metric",
    "ConceptGraph", "ExpertCollection", "Strength", "classify_experts", "graph_to_matrix", "is_connected",
    "BipartiteRelation", "FeedForwardNetwork", "FLCMModel", "FLRMModel", "HiddenPattern", "PatternKind",
    "StateVector", "feedforward_eval", "flcm_run", "flre_compose", "flrm_run", "relation_to_matrix",
    "Diagnostic", "ModelBundle", "ModelError", "dump_model", "load_model", "parse_model",
]
__version__ = "0.1.0"
