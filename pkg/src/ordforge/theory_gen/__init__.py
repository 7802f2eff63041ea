"""Recursively presented theories and their axiom/rule enumerations."""

from .families import LOGICAL, LOGICAL_BY_NAME, PEANO, RULES, Family, recover_ded, rule_triple
from .theories import (
    THEORY_NAMES, KappaTheory, LambdaTheory, OrderedTheory, TarskiTheory, Theory, UnionTheory,
    gated_instances, is_axiom, iterate, omega_union, tarski, tarski_kk, tarski_lambda,
    tarski_ordered, theory, z1i,
)

__all__ = [
    "LOGICAL", "LOGICAL_BY_NAME", "PEANO", "RULES", "Family", "recover_ded", "rule_triple",
    "THEORY_NAMES", "KappaTheory", "LambdaTheory", "OrderedTheory", "TarskiTheory", "Theory",
    "UnionTheory", "gated_instances", "is_axiom", "iterate", "omega_union", "tarski", "tarski_kk",
    "tarski_lambda", "tarski_ordered", "theory", "z1i",
]
