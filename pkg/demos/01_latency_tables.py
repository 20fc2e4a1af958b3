"""Build the headline latency tables straight from the library.

Run from the repository root after an editable install:

    python3 demos/01_latency_tables.py
"""

from nrlatency import cp_table, render_cp_md, render_up_md, up_table

# User plane: worst-case one-way latency in ms for every flow, SCS and
# TTI length, first transmission only. Change retx_list to price HARQ
# round trips into the totals.
print(render_up_md(up_table("fdd", retx_list=(0,))))
print()

# The same sweep on an alternating UL/DL pattern. TTI lengths the
# pattern cannot carry (2 os) are skipped automatically.
print(render_up_md(up_table("tdd-uldl", retx_list=(0, 1))))
print()

# Control plane: idle-to-connected totals, priced per TTI length from
# one step ledger per duplex arrangement.
print(render_cp_md({name: cp_table(name)
                    for name in ("fdd", "tdd-uldl", "tdd-uldldldl")}))
