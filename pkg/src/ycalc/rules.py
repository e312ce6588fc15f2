"""Rule catalogs, matching, rewriting, soundness checking and simplification."""

from __future__ import annotations

from .catalog import RSUP_NS, SUP_NS, base_rules, rsup_rule, rule_by_name, rule_catalog, sup_rule
from .lemmas import lemma_by_name, lemma_catalog, spider_loop_rule
from .rewrite import (
    AngleVar, MatchSite, RewriteError, RewriteRule, SoundnessReport, apply, check_soundness,
    find_matches, rewrite_once,
)
from .simplify import TraceEntry, normalize_angles, simplify, simplify_rules

__all__ = [
    "RSUP_NS", "SUP_NS", "base_rules", "rsup_rule", "rule_by_name", "rule_catalog", "sup_rule",
    "lemma_by_name", "lemma_catalog", "spider_loop_rule",
    "AngleVar", "MatchSite", "RewriteError", "RewriteRule", "SoundnessReport", "apply",
    "check_soundness", "find_matches", "rewrite_once",
    "TraceEntry", "normalize_angles", "simplify", "simplify_rules",
]
