"""Selection-filtered equi-joins over encrypted tables.

Clients encrypt relational tables under a function-hiding inner-product
scheme and issue per-query join tokens; an untrusted server evaluates
the join by comparing decrypted tags, learning only which satisfying
rows share a join value, query by query.
"""

__version__ = "0.1.0"
