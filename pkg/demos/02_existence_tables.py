"""
Existence tables
================

Exhaustive search decides existence for every n up to a cutoff.  A None
entry would mean the node budget ran out before the question was settled.
"""

import time

from orthomorph import OrthoKind
from orthomorph.search import existence_table

for kind, n_max in [(OrthoKind.ADDITIVE, 12), (OrthoKind.EXPONENTIAL, 26), (OrthoKind.MULTIPLICATIVE, 16)]:
    t0 = time.perf_counter()
    table = existence_table(kind, n_max)
    found = [n for n, ok in table if ok]
    print(f"{kind.value}: exists for {found}  ({time.perf_counter() - t0:.1f}s)")

# n = 17 and 18 for the multiplicative case take about a minute; try
#   orthomorph exists multiplicative --n-max 18
