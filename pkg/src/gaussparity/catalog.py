"""Gauss codes for small virtual knots used as worked examples and test
fixtures.  Parity profiles and formal-sum values for these diagrams are
pinned by the test suite."""

from __future__ import annotations

from .diagram import GaussDiagram, parse_gauss_code

VIRTUAL_TREFOIL = "O1+ O2+ U1+ U2+"

# Connected sum of two two-crossing tangles; absolute parity 1 on every
# chord with signs cancelling, so the signed V_1 count vanishes.
KISHINO = "O1- U2+ U1- O2+ O3+ U4- U3+ O4-"

# Four crossings with absolute parities {0, 1, 1, 2}; both order-1 sums and
# the (1,2) tuple sum are nontrivial, the latter with exactly two summands.
MIYAZAWA = "O1+ O2+ O3+ U2+ U4- U3+ U1+ O4-"

# Five crossings with absolute parities {0, 1, 1, 2, 2}.
PRETZEL = "O1- O2+ U1- O3+ U2+ O4+ U3+ O5- U4+ U5-"

CATALOG: dict[str, str] = {
    "virtual_trefoil": VIRTUAL_TREFOIL,
    "kishino": KISHINO,
    "miyazawa": MIYAZAWA,
    "pretzel": PRETZEL,
}


def example(name: str) -> GaussDiagram:
    """Parse one of the named catalog diagrams."""
    return parse_gauss_code(CATALOG[name])
