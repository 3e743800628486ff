#!/usr/bin/env python3
"""Reproducible-experiment walkthrough: search, group, batch-test, export.

Selects families by property, runs two batch experiments over them (a
determinant-positivity check and entry sums across sizes), saves the selection
as a shareable group file, and exports one instance in Matrix Market form.
"""

import tempfile
from pathlib import Path

import tmat
from tmat.harness import FN_MENU


def main():
    spd = tmat.list_matrices(["builtin"], ["symmetric", "posdef"])
    print("symmetric positive definite families:", ", ".join(spd))

    print("\ndet(A) > 0 at size 4:")
    for record in tmat.test_algorithm(FN_MENU["det-positive"], [4], props=["symmetric", "posdef"]):
        print(f"  ({record.family}, {record.size}, {record.value})")

    print("\nentry sums over sizes 1..4 (errors ignored, so poisson skips 2 and 3):")
    records = tmat.test_algorithm(
        FN_MENU["sum"], [1, 2, 3, 4], props=["symmetric", "posdef"], ignore_errors=True
    )
    for record in records:
        print(f"  ({record.family}, {record.size}, {record.value})")

    with tempfile.TemporaryDirectory() as tmp:
        group_file = Path(tmp) / "spd.grp"
        for family in spd:
            tmat.add_to_groups(family, "spd")
        tmat.save_group("spd", group_file)
        print(f"\nsaved group file ({group_file.name}):")
        print(group_file.read_text(), end="")

        mtx = Path(tmp) / "minij4.mtx"
        tmat.export_array(tmat.construct("minij", n=4), mtx)
        print(f"\nMatrix Market export ({mtx.name}):")
        print(mtx.read_text(), end="")


if __name__ == "__main__":
    main()
