"""Chord intersections, intersection numbers, the integer parity mapping,
its mod-n projection, and the three single-chord modification maps
(crossing change and the two virtualizations).

The parity of a chord c is

    p(c) = sum over chords x crossing c of  sign(x) * int_c(x)

where ``int_c(x)`` is the +-1 intersection number fixed by an
:class:`IntConvention`.  The default convention assigns +1 exactly when the
head of x lies in the arc traversed from the head of c to the foot of c in
the circle direction.  Any convention must be antisymmetric
(``int_c(x) = -int_x(c)``), which also makes it flip sign under
orientation reversal of either chord; every |p|-derived quantity in this
package is independent of the choice, and negating the convention negates
every parity value pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .diagram import Chord, GaussDiagram
from .errors import BadModulus, NotIntersecting, UnknownLabel


@dataclass(frozen=True)
class IntConvention:
    """Intersection-number table, keyed by which endpoint of the crossing
    chord x falls inside the head-to-foot arc of c.  Only the two
    interleaving patterns ("head", "foot") and ("foot", "head") occur for
    crossing chords; antisymmetry forces their values to be opposite."""

    name: str = "head-in-forward-arc"
    table: tuple[tuple[tuple[str, str], int], ...] = (
        (("head", "foot"), 1),
        (("foot", "head"), -1),
    )

    def __post_init__(self):
        values = dict(self.table)
        if values[("head", "foot")] != -values[("foot", "head")]:
            raise ValueError("intersection convention must be antisymmetric")

    def value(self, x_endpoint_role_in_arc: str) -> int:
        key = (
            (x_endpoint_role_in_arc, "foot")
            if x_endpoint_role_in_arc == "head"
            else (x_endpoint_role_in_arc, "head")
        )
        return dict(self.table)[key]

    def negate(self) -> IntConvention:
        return IntConvention(
            name=f"negated({self.name})",
            table=tuple((k, -v) for k, v in self.table),
        )


DEFAULT_CONVENTION = IntConvention()


def _in_forward_arc(c: Chord, position: int, n2: int) -> bool:
    """True when ``position`` lies strictly inside the arc from c.head to
    c.foot in the circle direction."""
    return 0 < (position - c.head) % n2 < (c.foot - c.head) % n2


def intersects(d: GaussDiagram, c: int, x: int) -> bool:
    """True when chords c and x cross: exactly one endpoint of x lies
    strictly inside one of the two arcs cut by c."""
    if c == x:
        raise UnknownLabel("a chord does not intersect itself")
    cc, cx = d.chord(c), d.chord(x)
    n2 = d.endpoint_count
    inside = sum(1 for p in cx.positions() if _in_forward_arc(cc, p, n2))
    return inside == 1


def neighbors(d: GaussDiagram, c: int) -> tuple[int, ...]:
    """Labels of the chords crossing chord c."""
    return tuple(x for x in d.labels() if x != c and intersects(d, c, x))


def int_of(
    d: GaussDiagram, c: int, x: int, convention: IntConvention = DEFAULT_CONVENTION
) -> int:
    """Intersection number int_c(x) of chord x with chord c (+1 or -1)."""
    if not intersects(d, c, x):
        raise NotIntersecting(f"chords {c} and {x} do not intersect")
    cc, cx = d.chord(c), d.chord(x)
    head_in = _in_forward_arc(cc, cx.head, d.endpoint_count)
    return convention.value("head" if head_in else "foot")


def parity(
    d: GaussDiagram, c: int, convention: IntConvention = DEFAULT_CONVENTION
) -> int:
    """Integer parity p(c): the signed sum of intersection numbers over the
    chords crossing c.  Isolated chords have parity 0."""
    return sum(
        d.chord(x).sign * int_of(d, c, x, convention) for x in neighbors(d, c)
    )


def parity_map(
    d: GaussDiagram, convention: IntConvention = DEFAULT_CONVENTION
) -> dict[int, int]:
    """Parity of every chord, keyed by label."""
    return {c: parity(d, c, convention) for c in d.labels()}


def parity_mod(
    d: GaussDiagram, n: int, convention: IntConvention = DEFAULT_CONVENTION
) -> dict[int, int]:
    """Parity composed with the projection onto Z_n.  ``n=2`` recovers the
    classical odd/even chord parity."""
    if n < 2:
        raise BadModulus(f"modulus must be >= 2, got {n}")
    return {c: p % n for c, p in parity_map(d, convention).items()}


def _modify_chord(d: GaussDiagram, c: int, flip_sign: bool, flip_orientation: bool) -> GaussDiagram:
    chord = d.chord(c)
    new = replace(
        chord,
        sign=-chord.sign if flip_sign else chord.sign,
        head=chord.foot if flip_orientation else chord.head,
        foot=chord.head if flip_orientation else chord.foot,
    )
    return GaussDiagram(tuple(new if k.label == c else k for k in d.chords))


def crossing_change(d: GaussDiagram, c: int) -> GaussDiagram:
    """Flip both the sign and the orientation of chord c.  An involution;
    negates p(c) and leaves every other parity unchanged."""
    return _modify_chord(d, c, flip_sign=True, flip_orientation=True)


def orient_virtualize(d: GaussDiagram, c: int) -> GaussDiagram:
    """Reverse only the arrow of chord c."""
    return _modify_chord(d, c, flip_sign=False, flip_orientation=True)


def sign_virtualize(d: GaussDiagram, c: int) -> GaussDiagram:
    """Flip only the sign of chord c."""
    return _modify_chord(d, c, flip_sign=True, flip_orientation=False)
