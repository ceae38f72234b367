"""
Median iteration counts on 1000 x 50 uniform matrices
=====================================================

Fresh consistent problems with entries uniform on [0, 1); all four methods
stop when the residual relative error drops below 0.5e-6. Pass the number of
repeats on the command line (default 10, the acceptance run uses 50).
"""
import sys

from oblique_ls.bench import TableSpec, run_table

repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 10
spec = TableSpec(1000, 50, 0.0, True)
table = run_table([spec], repeats=repeats, master_seed=0)

for row in table.rows:
    print(f"{row.method:5s} median IT {row.median_it:>9.0f}   "
          f"median CPU {row.median_cpu_seconds * 1e3:8.2f} ms")
for name in ("speedup1", "speedup2"):
    print(f"{name}: {table.speedup(spec, name):.2f}")

# the same table as CSV, ready for a spreadsheet or plotting script
print()
print(table.to_csv())
