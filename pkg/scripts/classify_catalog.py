"""Classify the whole flag fixture menu and save the verdicts.

Runs the entropy classifier over every flag fixture (optionally with
subdivisions and cones mixed in), prints one report per complex, and writes
each verdict JSON next to a catalog summary. Typical use:

    python3 scripts/classify_catalog.py --out /tmp/catalog --with-cones
"""

import argparse
import json
import os
import sys
import time

from raag.classify import classify, report
from raag.fixtures import standard_fixtures
from raag.simplicial import barycentric_subdivision, cone, is_flag


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=None, metavar="DIR",
                    help="directory for per-complex verdict JSON files")
    ap.add_argument("--budget", type=int, default=64,
                    help="collapse restarts for dimension-2 cases (default 64)")
    ap.add_argument("--with-cones", action="store_true",
                    help="also classify the cone over each flag fixture")
    ap.add_argument("--with-subdivisions", action="store_true",
                    help="also classify one barycentric subdivision of each")
    ns = ap.parse_args()

    menu = {}
    for name, x in sorted(standard_fixtures().items()):
        if not is_flag(x)[0]:
            continue
        menu[name] = x
        if ns.with_cones:
            menu[f"cone_{name}"] = cone(x)
        if ns.with_subdivisions:
            menu[f"sd_{name}"] = barycentric_subdivision(x).complex

    if ns.out:
        os.makedirs(ns.out, exist_ok=True)
    tally = {}
    for name, L in sorted(menu.items()):
        t0 = time.monotonic()
        verdict = classify(L, budget=ns.budget)
        secs = time.monotonic() - t0
        tally[verdict.outcome] = tally.get(verdict.outcome, 0) + 1
        print(report(L, verdict))
        print(f"({secs:.2f}s)")
        print()
        if ns.out:
            with open(os.path.join(ns.out, f"{name}.verdict.json"), "w") as fh:
                fh.write(verdict.to_json() + "\n")

    summary = ", ".join(f"{k}: {v}" for k, v in sorted(tally.items()))
    print(f"classified {len(menu)} complexes ({summary})")
    if ns.out:
        with open(os.path.join(ns.out, "catalog.json"), "w") as fh:
            json.dump({"complexes": sorted(menu), "tally": tally}, fh, indent=2)
        print(f"verdicts written to {ns.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
