"""Measurement settings needed with and without entangled measurements."""

from photonic_vqe.grouping import CommutativityMode, group_strings
from photonic_vqe.pauli import HEH_STRINGS, HEISENBERG_STRINGS

for name, strings in (("Heisenberg", HEISENBERG_STRINGS), ("HeH+", HEH_STRINGS)):
    print(name)
    for mode in CommutativityMode:
        groups = group_strings(strings, mode)
        print(f"  {mode.value}: {len(groups)} settings")
        for g in groups:
            print(f"    {g.kind.value:8} {' '.join(s.label for s in g.members)}")
