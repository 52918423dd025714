"""Sweep track width and contact length for the reference vehicle; write a CSV.

    python scripts/sweep_track_size.py [out.csv] [--workers N]
"""

import argparse
import time
from dataclasses import replace

from trackmech.chassis import PAPER_CHASSIS
from trackmech.mission import EXTINGUISHERS, FIRE_TESTS
from trackmech.resistance import VehicleOperatingState
from trackmech.sweep import DesignSpace, refine, sweep
from trackmech.terrain import PAPER_SOFT_SOIL

parser = argparse.ArgumentParser()
parser.add_argument("out", nargs="?", default="sweep_track_size.csv")
parser.add_argument("--workers", type=int, default=1)
args = parser.parse_args()

terrain = replace(PAPER_SOFT_SOIL, kp_override=1.7, mu_t=0.5, f_r=0.1)
space = DesignSpace(
    geometry=PAPER_CHASSIS,
    state=VehicleOperatingState(m=300.0, v=1.5, i=0.2, theta=30.0),
    ranges={"b": (0.10, 0.40, 0.01), "l": (0.4, 2.0, 0.02), "m": (250.0, 450.0, 25.0)},
    objective="max_drawbar_pull",
    extinguisher=EXTINGUISHERS["MFZL10-ABC"],
    fire_tests=(FIRE_TESTS["A"], FIRE_TESTS["B"]),
)

start = time.perf_counter()
result = sweep(space, terrain, workers=args.workers)
elapsed = time.perf_counter() - start
with open(args.out, "w", newline="") as fh:
    fh.write(result.to_csv())

print(f"{result.total_count} points, {result.feasible_count} feasible, {elapsed:.2f} s")
if not result.empty:
    best = result.best.row
    print("best (b, l, B, v, m, i):", best.point, "drawbar pull", round(best.objective, 1), "N")
    print("refined along l:", refine(space, terrain, result, "l").point)
print("rows written to", args.out)
