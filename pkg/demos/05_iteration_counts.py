"""Iteration counts on standard-normal data.

Major iterations add one point to the support; S-pair updates count
curve searches.  The two stay close because few points enter the
support only to leave it again.
"""
from socinf.bench import format_table, run_bench

rows = run_bench([(10, 100), (10, 1000), (100, 100), (100, 1000)], datasets=25, seed=0)
print(format_table(rows))
