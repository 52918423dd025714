"""Print the reference chassis comparison in both compaction modes."""

from trackmech.cli import render_table3
from trackmech.resistance import COMPACTION_MODES
from trackmech.table3 import reproduce

for mode in COMPACTION_MODES:
    print(f"== compaction mode: {mode}")
    print(render_table3(reproduce(mode=mode)))

print("== K_p from the formula instead of the printed 1.7")
print(render_table3(reproduce(kp=None)))
