# Default computational budgets. Every function that consumes one takes it as
# a keyword argument so callers (and the CLI --budget-* flags) can override.

#: Largest p for which the O(p) sums (diagonal, Alexander closed form) run.
DIRECT_BUDGET = 10**8

#: Largest p for which the full off-diagonal linking sequence is materialized.
PROFILE_BUDGET = 10**7

#: Largest p for which validate_alexander cross-checks against the O(p) sum.
CROSSCHECK_BUDGET = 10**7

#: Largest sublink size for which a certificate computes an explicit cofactor.
DETERMINANT_BUDGET = 400

#: Family level caps.
WORD_NMAX = 6
ALEXANDER_NMAX = 3

#: Sum elements processed per numpy chunk.
CHUNK = 1 << 20
