#!/usr/bin/env python3
"""Collect evidence on involution matchings in transformation monoids.

Whether every finite regular semigroup admits an involution matching is
open; this script gathers what exact search can say at desk scale:

* full transformation monoids T_n for n up to --max-n (exact search on the
  graph of inverses, loop-aware);
* orientation-preserving monoids for n up to --max-opn (explicit
  construction, always succeeds);
* the bundled catalog instances.

Outcomes are printed, never asserted.  Witnesses can be saved with
--dump-dir for later revalidation via matching_from_json.
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from invmatch.construct import catalog, catalog_names, full_transformation_monoid
from invmatch.matchers import (find_involution_matching, matching_to_json,
                               opn_involution_matching, validate_matching)


def record(name: str, s, pm, elapsed: float, dump_dir: Path | None) -> None:
    if pm is None:
        print(f"{name:16s} order {s.order:6d}: no involution matching ({elapsed:.2f}s)")
        return
    report = validate_matching(s, pm.mapping)
    status = "validated" if report.valid and report.involution else "INVALID"
    fixed = sum(1 for n_ in pm.orbit_lengths() if n_ == 1)
    print(f"{name:16s} order {s.order:6d}: involution found, {status}, "
          f"{fixed} fixed points ({elapsed:.2f}s)")
    if dump_dir is not None:
        dump_dir.mkdir(parents=True, exist_ok=True)
        path = dump_dir / f"{name.replace(':', '-')}.json"
        path.write_text(json.dumps(matching_to_json(s, pm), indent=2, sort_keys=True) + "\n")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=4,
                        help="largest full transformation monoid to search")
    parser.add_argument("--max-opn", type=int, default=8,
                        help="largest orientation-preserving monoid to construct")
    parser.add_argument("--dump-dir", type=Path, default=None,
                        help="write witness JSON files here")
    args = parser.parse_args()

    for n in range(1, args.max_n + 1):
        s = full_transformation_monoid(n)
        t0 = time.perf_counter()
        out = find_involution_matching(s)
        record(f"tn:{n}", s, out.matching if out.found else None,
               time.perf_counter() - t0, args.dump_dir)

    from invmatch.construct import orientation_preserving_monoid
    for n in range(3, args.max_opn + 1):
        s = orientation_preserving_monoid(n)
        t0 = time.perf_counter()
        pm = opn_involution_matching(n)
        record(f"opn:{n}", s, pm, time.perf_counter() - t0, args.dump_dir)

    for name in catalog_names():
        s = catalog(name)
        t0 = time.perf_counter()
        out = find_involution_matching(s)
        record(name, s, out.matching if out.found else None,
               time.perf_counter() - t0, args.dump_dir)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
