"""Exact Grundy numbers, domination and star partitions, and the girth bounds that tie them together."""
