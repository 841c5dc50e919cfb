"""Exact rational embeddings of distance graphs, with checkable certificates."""

from ratembed.exact_arith import QVec, Rational, format_rational, parse_rational

__all__ = ["QVec", "Rational", "format_rational", "parse_rational"]
__version__ = "0.1.0"
