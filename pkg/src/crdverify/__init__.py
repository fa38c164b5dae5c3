"""Verification toolkit for chemical reaction networks used as deciders."""

from __future__ import annotations

from .crn import Configuration, Crn, Homomorphism, NotEnabled, Reaction, SpeciesTable, apply, enabled, eval_hom
from .crd import (
    Classification,
    Convention,
    Crd,
    InvalidInput,
    classify_input,
    in_output,
    region_member,
    verify_decides,
)
from .explore import Answer, Verdict, forall_reachable, post_star

__version__ = "0.1.0"

__all__ = [
    "Answer",
    "Classification",
    "Configuration",
    "Convention",
    "Crd",
    "Crn",
    "Homomorphism",
    "InvalidInput",
    "NotEnabled",
    "Reaction",
    "SpeciesTable",
    "Verdict",
    "apply",
    "classify_input",
    "enabled",
    "eval_hom",
    "forall_reachable",
    "in_output",
    "post_star",
    "region_member",
    "verify_decides",
]
