"""
Pulse cost of each Walsh-Hadamard decomposition
===============================================

Cost is half the trace of the squared generator, split into diagonal and
off-diagonal parts. A single pulse ``exp(-i g)`` is the baseline.
"""
import numpy as np

from su3forge import walsh_hadamard
from su3forge.cost import printed_table2, single_pulse_cost, table2_report
from su3forge.dod import table1_params

W = walsh_hadamard()
report = table2_report(table1_params(), W)

# %% Recomputed rows next to the printed ones
printed = printed_table2()
for row in report.per_decomposition:
    print(f"{row.label}: diag {row.diag_cost:.4f}  off {row.offdiag_cost:.4f}  "
          f"total {row.total:.4f}  drive {row.drive_power_proxy:.4f}")
print(printed)

# %% The single-pulse baseline: 5 pi^2 / 8 with half the trace, 5 pi^2 / 12 with a third
half, third, g = single_pulse_cost(W)
print(half, 5 * np.pi ** 2 / 8, third, 5 * np.pi ** 2 / 12)
print("ranking:", report.ranking)

# %% Cells that disagree with the printed table
for e in report.audit.mismatches:
    print(e.id, e.expected, round(float(e.computed), 4))
