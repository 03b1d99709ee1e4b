"""Signed-cardinality invariant families derived from chord parity.

For a nonzero integer i, ``A_i`` is the set of chords with parity exactly i
and ``|A_i|`` its signed cardinality (the sum of chord signs over the set).
``V_i`` collects chords with absolute parity i.  For a strictly increasing
index tuple Z, the tuple invariants sum sign products over tuples of chords
drawn from the corresponding sets.  All of these numbers are invariant
under the chord moves; the sets themselves are not.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .diagram import GaussDiagram
from .errors import BadIndex, BadTuple, ZeroIndex
from .parity import DEFAULT_CONVENTION, IntConvention, parity_map


def _check_a_tuple(z: tuple[int, ...]) -> None:
    if len(z) == 0:
        raise BadTuple("index tuple must be nonempty")
    if any(zi == 0 for zi in z):
        raise BadTuple(f"A-family indices must be nonzero: {z}")
    if any(a >= b for a, b in zip(z, z[1:])):
        raise BadTuple(f"index tuple must be strictly increasing: {z}")


def _check_v_tuple(z: tuple[int, ...]) -> None:
    if len(z) == 0:
        raise BadTuple("index tuple must be nonempty")
    if z[0] < 1:
        raise BadTuple(f"V-family indices must be positive: {z}")
    if any(a >= b for a, b in zip(z, z[1:])):
        raise BadTuple(f"index tuple must be strictly increasing: {z}")


def a_set(
    d: GaussDiagram, i: int, convention: IntConvention = DEFAULT_CONVENTION
) -> frozenset[int]:
    """Labels of the chords with parity exactly i (i != 0).  Not itself a
    move invariant; its signed cardinality is."""
    if i == 0:
        raise ZeroIndex("index 0 is excluded from the A family")
    pm = parity_map(d, convention)
    return frozenset(c for c, p in pm.items() if p == i)


def a_signed(
    d: GaussDiagram, i: int, convention: IntConvention = DEFAULT_CONVENTION
) -> int:
    """Signed cardinality |A_i|: the sum of chord signs over A_i."""
    return sum(d.chord(c).sign for c in a_set(d, i, convention))


def a_tuple_signed(
    d: GaussDiagram,
    z: tuple[int, ...],
    convention: IntConvention = DEFAULT_CONVENTION,
) -> int:
    """Signed cardinality |A_Z| over tuples (x_1, ..., x_n) with x_k in
    A_{z_k}.  Distinct indices give disjoint chord sets, so the tuple sum
    factors as the product of the |A_{z_k}|."""
    z = tuple(z)
    _check_a_tuple(z)
    total = 1
    for zi in z:
        total *= a_signed(d, zi, convention)
        if total == 0:
            return 0
    return total


def v_set(
    d: GaussDiagram, i: int, convention: IntConvention = DEFAULT_CONVENTION
) -> frozenset[int]:
    """Labels of the chords with absolute parity i (i >= 1)."""
    if i < 1:
        raise BadIndex(f"V-family index must be >= 1, got {i}")
    pm = parity_map(d, convention)
    return frozenset(c for c, p in pm.items() if abs(p) == i)


def v_signed(
    d: GaussDiagram, i: int, convention: IntConvention = DEFAULT_CONVENTION
) -> int:
    """Signed cardinality |V_i| = |A_i| + |A_{-i}|."""
    return sum(d.chord(c).sign for c in v_set(d, i, convention))


def v_tuple_signed(
    d: GaussDiagram,
    z: tuple[int, ...],
    convention: IntConvention = DEFAULT_CONVENTION,
) -> int:
    """Signed cardinality |V_Z| over tuples drawn from the V_{z_k}."""
    z = tuple(z)
    _check_v_tuple(z)
    total = 1
    for zi in z:
        total *= v_signed(d, zi, convention)
        if total == 0:
            return 0
    return total


def v_tuples(
    d: GaussDiagram,
    z: tuple[int, ...],
    convention: IntConvention = DEFAULT_CONVENTION,
) -> list[tuple[int, ...]]:
    """The tuples of chord labels making up V_Z, in sorted order."""
    z = tuple(z)
    _check_v_tuple(z)
    sets = [sorted(v_set(d, zi, convention)) for zi in z]
    return list(itertools.product(*sets))


@dataclass
class InvariantProfile:
    """Bundle of every family value within fixed index/order bounds; used as
    a fixed-shape comparison key when fuzzing move invariance."""

    max_index: int
    max_order: int
    a: dict[int, int] = field(default_factory=dict)
    v: dict[int, int] = field(default_factory=dict)
    v_tuples: dict[tuple[int, ...], int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "A": {str(i): v for i, v in sorted(self.a.items())},
            "V": {str(i): v for i, v in sorted(self.v.items())},
            "VZ": {
                ",".join(map(str, z)): v for z, v in sorted(self.v_tuples.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict, max_index: int = 0, max_order: int = 0):
        profile = cls(max_index=max_index, max_order=max_order)
        profile.a = {int(k): v for k, v in data["A"].items()}
        profile.v = {int(k): v for k, v in data["V"].items()}
        profile.v_tuples = {
            tuple(int(p) for p in k.split(",")): v for k, v in data["VZ"].items()
        }
        return profile


def invariant_profile(
    d: GaussDiagram,
    max_index: int = 4,
    max_order: int = 2,
    convention: IntConvention = DEFAULT_CONVENTION,
) -> InvariantProfile:
    """All A/V family values with |index| <= max_index and tuple length <=
    max_order."""
    if max_index < 1 or max_order < 1:
        raise BadIndex("max_index and max_order must be >= 1")
    profile = InvariantProfile(max_index=max_index, max_order=max_order)
    for i in range(-max_index, max_index + 1):
        if i != 0:
            profile.a[i] = a_signed(d, i, convention)
    for i in range(1, max_index + 1):
        profile.v[i] = v_signed(d, i, convention)
    for order in range(1, max_order + 1):
        for z in itertools.combinations(range(1, max_index + 1), order):
            profile.v_tuples[z] = v_tuple_signed(d, z, convention)
    return profile
