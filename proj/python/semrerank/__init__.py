"""Critic-based reranking of semantic parser beams."""

from ._semrerank import (
    BaselineModel,
    EntityLexicon,
    LfSyntaxError,
    SemrerankError,
    TemplateGrammar,
    canonicalize,
    generate_pairs,
    lf_equal,
    naturalize_token,
    normalize,
    process,
    rerank,
    rule_permits,
    run_cli,
    run_demo,
    separable_pairs,
    serialize,
    synthetic_oracle,
    train_baseline,
)

__all__ = [
    "BaselineModel",
    "EntityLexicon",
    "LfSyntaxError",
    "SemrerankError",
    "TemplateGrammar",
    "canonicalize",
    "generate_pairs",
    "lf_equal",
    "naturalize_token",
    "normalize",
    "process",
    "rerank",
    "rule_permits",
    "run_cli",
    "run_demo",
    "separable_pairs",
    "serialize",
    "synthetic_oracle",
    "train_baseline",
]
