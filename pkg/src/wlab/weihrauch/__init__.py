"""Weihrauch reductions as runnable (H, K, oracle) triples."""

from .catalog import CATALOG, EQUIVALENCES, get
from .core import (
    ConfigurationError, OracleInstance, OracleRealizer, Problem, Reduction, Tag, apply_reduction, compose,
    identity, run_verified,
)
from .harness import check_continuity, check_H, check_K, verify_catalog, verify_instance
from .instances import instance, instances, instances_for, manifest, manifest_json
from .oracles import DomainError, oracle, oracle_cn, oracle_count, oracle_lim, oracle_lpo, oracle_min
from .problems import PROBLEMS, matching_distance, problem

__all__ = [
    "CATALOG", "EQUIVALENCES", "get", "ConfigurationError", "OracleInstance", "OracleRealizer", "Problem",
    "Reduction", "Tag", "apply_reduction", "compose", "identity", "run_verified", "check_continuity",
    "check_H", "check_K", "verify_catalog", "verify_instance", "instance", "instances", "instances_for",
    "manifest", "manifest_json", "DomainError", "oracle", "oracle_cn", "oracle_count", "oracle_lim",
    "oracle_lpo", "oracle_min", "PROBLEMS", "matching_distance", "problem",
]
