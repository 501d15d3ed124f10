#!/usr/bin/env python3
"""Survey matching behavior across the bundled instances.

Runs all four finders (permutation, involution, and the H-preserving
variants) over the named catalog and, optionally, the full order <= 6
corpus, and prints one row per instance.  Useful for eyeballing how the
existence pattern lines up with squareness.
"""

from __future__ import annotations

import argparse

from invmatch.construct import catalog, catalog_names
from invmatch.greens import is_square
from invmatch.matchers import (find_involution_matching, find_permutation_matching,
                               h_preserving_involution_matching,
                               h_preserving_permutation_matching)
from invmatch.reports import prop14_catalog


def flag(outcome) -> str:
    return "yes" if outcome.found else "no"


def survey(instances) -> None:
    header = f"{'instance':28s} {'order':>5s} {'square':>6s} {'perm':>5s} {'inv':>5s} {'h-perm':>6s} {'h-inv':>5s}"
    print(header)
    print("-" * len(header))
    for name, s in instances:
        row = (
            f"{name:28s} {s.order:5d} {'yes' if is_square(s) else 'no':>6s}"
            f" {flag(find_permutation_matching(s)):>5s}"
            f" {flag(find_involution_matching(s)):>5s}"
            f" {flag(h_preserving_permutation_matching(s)):>6s}"
            f" {flag(h_preserving_involution_matching(s)):>5s}"
        )
        print(row)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", action="store_true",
                        help="also sweep the full order <= 6 corpus")
    parser.add_argument("--max-order", type=int, default=None,
                        help="skip instances above this order")
    args = parser.parse_args()

    instances = [(name, catalog(name)) for name in catalog_names()]
    if args.corpus:
        instances += prop14_catalog()
    if args.max_order is not None:
        instances = [(n, s) for n, s in instances if s.order <= args.max_order]
    survey(instances)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
