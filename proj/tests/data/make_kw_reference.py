"""Regenerates kw_reference.json with scipy.stats.kruskal (tie-corrected)."""
import json
import random

from scipy.stats import kruskal

rng = random.Random(4242)
cases = []
while len(cases) < 200:
    k = rng.randint(2, 5)
    top = rng.choice([2, 4, 9])
    groups = [[float(rng.randint(0, top)) / rng.choice([1, 4]) for _ in range(rng.randint(1, 15))] for _ in range(k)]
    pooled = [v for g in groups for v in g]
    if len(pooled) < 3 or len(set(pooled)) == 1:
        continue
    h, p = kruskal(*groups)
    cases.append({"groups": groups, "H": float(h), "p": float(p)})

with open("kw_reference.json", "w") as fh:
    json.dump({"cases": cases}, fh, indent=0)
