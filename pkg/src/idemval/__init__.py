"""Exact computation in idempotent semirings and their valuation theory.

The package provides: exact totally ordered abelian groups and the max-plus
semifields over them; finite idempotent semirings given by operation tables,
with congruence enumeration, prime/radical classification, reduction and
localization; valuation subsemirings and induced valuations; finite
enumeration of valuation orders and the order/homomorphism dictionary;
contraction, integrality and quasiintegral closure; and the semiring of
finitely generated fractional ideals over a localized integer ring inside a
quadratic field, with an oracle-checked extension-of-valuations pipeline.
"""

__version__ = "0.1.0"
