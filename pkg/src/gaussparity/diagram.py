"""Core Gauss diagram values: chords on one oriented circle, Gauss-code
parsing and serialization, validation, canonical forms, and seeded random
diagram generation.

A Gauss code is a whitespace-separated sequence of tokens

    ("O" | "U") label sign ["!"]

where ``label`` is a decimal integer >= 1, ``sign`` is "+" or "-", and a
trailing "!" marks a singular chord.  Token order fixes the endpoint
positions 0..2n-1 clockwise around the circle.  "O" marks the head
(overpass) endpoint of a chord, "U" the foot.  Every label must occur
exactly twice, once as "O" and once as "U", with identical sign and
identical singular marker on both tokens.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, replace

from .errors import ParseError, UnknownLabel, ValidationError

HEAD = "head"
FOOT = "foot"

_TOKEN_RE = re.compile(r"([OU])([0-9]+)([+-])(!?)\Z")


@dataclass(frozen=True)
class Chord:
    """One signed, oriented chord.  ``head`` and ``foot`` are endpoint
    positions on the circle; a singular chord stores the data of its
    positive resolution."""

    label: int
    head: int
    foot: int
    sign: int
    singular: bool = False

    def positions(self) -> tuple[int, int]:
        return (self.head, self.foot)


@dataclass(frozen=True)
class Endpoint:
    position: int
    role: str  # HEAD or FOOT
    label: int


@dataclass(frozen=True)
class GaussDiagram:
    """An immutable Gauss diagram: one clockwise circle with 2n endpoint
    positions and n signed, oriented chords."""

    chords: tuple[Chord, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "chords", tuple(sorted(self.chords, key=lambda c: c.label)))

    @property
    def chord_count(self) -> int:
        return len(self.chords)

    @property
    def endpoint_count(self) -> int:
        return 2 * len(self.chords)

    def labels(self) -> tuple[int, ...]:
        return tuple(c.label for c in self.chords)

    def chord(self, label: int) -> Chord:
        for c in self.chords:
            if c.label == label:
                return c
        raise UnknownLabel(f"no chord labelled {label}")

    def has_label(self, label: int) -> bool:
        return any(c.label == label for c in self.chords)

    def endpoints(self) -> tuple[Endpoint, ...]:
        """Endpoints in position order 0..2n-1."""
        eps = []
        for c in self.chords:
            eps.append(Endpoint(c.head, HEAD, c.label))
            eps.append(Endpoint(c.foot, FOOT, c.label))
        eps.sort(key=lambda e: e.position)
        return tuple(eps)

    def serialize(self) -> str:
        """Render the diagram as a Gauss code.  Round-trips with
        :func:`parse_gauss_code`.

        >>> parse_gauss_code("O1+ U1+").serialize()
        'O1+ U1+'
        """
        tokens = []
        for e in self.endpoints():
            c = self.chord(e.label)
            tokens.append(
                ("O" if e.role == HEAD else "U")
                + str(e.label)
                + ("+" if c.sign > 0 else "-")
                + ("!" if c.singular else "")
            )
        return " ".join(tokens)

    def rotate(self, k: int) -> GaussDiagram:
        """Move the basepoint so that old position ``k`` becomes position 0."""
        n2 = self.endpoint_count
        if n2 == 0:
            return self
        k %= n2
        return GaussDiagram(
            tuple(
                replace(c, head=(c.head - k) % n2, foot=(c.foot - k) % n2)
                for c in self.chords
            )
        )

    def __str__(self) -> str:
        return self.serialize()


def parse_gauss_code(text: str) -> GaussDiagram:
    """Parse a Gauss code into a validated :class:`GaussDiagram`.

    Raises :class:`ParseError` on malformed tokens and
    :class:`ValidationError` when the token multiset is inconsistent.

    >>> parse_gauss_code("").chord_count
    0
    >>> d = parse_gauss_code("O1+ U1+")
    >>> d.chord(1).head, d.chord(1).foot, d.chord(1).sign
    (0, 1, 1)
    """
    tokens = text.split()
    seen: dict[int, list] = {}
    for pos, tok in enumerate(tokens):
        m = _TOKEN_RE.match(tok)
        if m is None:
            raise ParseError(f"malformed token {tok!r} at position {pos}")
        role = HEAD if m.group(1) == "O" else FOOT
        label = int(m.group(2))
        if label < 1:
            raise ParseError(f"label must be >= 1 in token {tok!r}")
        sign = 1 if m.group(3) == "+" else -1
        singular = m.group(4) == "!"
        seen.setdefault(label, []).append((pos, role, sign, singular))

    violations = []
    chords = []
    for label, occ in sorted(seen.items()):
        if len(occ) != 2:
            violations.append(f"label {label} occurs {len(occ)} times, expected 2")
            continue
        (p1, r1, s1, g1), (p2, r2, s2, g2) = occ
        if {r1, r2} != {HEAD, FOOT}:
            violations.append(f"label {label} needs one O and one U token")
            continue
        if s1 != s2:
            violations.append(f"label {label} has mismatched signs")
            continue
        if g1 != g2:
            violations.append(f"label {label} has mismatched singular markers")
            continue
        head, foot = (p1, p2) if r1 == HEAD else (p2, p1)
        chords.append(Chord(label, head, foot, s1, g1))
    if violations:
        raise ValidationError(violations)
    return GaussDiagram(tuple(chords))


def serialize(d: GaussDiagram) -> str:
    return d.serialize()


def validate(d: GaussDiagram) -> list[str]:
    """Check structural invariants; returns a list of violations (empty when
    the diagram is valid).  Never raises."""
    violations = []
    labels = [c.label for c in d.chords]
    if len(set(labels)) != len(labels):
        violations.append("duplicate chord labels")
    for c in d.chords:
        if c.label < 1:
            violations.append(f"label {c.label} is not positive")
        if c.sign not in (1, -1):
            violations.append(f"chord {c.label} has sign {c.sign}, expected +1 or -1")
        if c.head == c.foot:
            violations.append(f"chord {c.label} has coincident endpoints")
    positions = sorted(p for c in d.chords for p in c.positions())
    if positions != list(range(2 * len(d.chords))):
        violations.append("endpoint positions are not a permutation of 0..2n-1")
    return violations


def _relabel_by_first_occurrence(d: GaussDiagram) -> GaussDiagram:
    mapping: dict[int, int] = {}
    for e in d.endpoints():
        if e.label not in mapping:
            mapping[e.label] = len(mapping) + 1
    return GaussDiagram(tuple(replace(c, label=mapping[c.label]) for c in d.chords))


def canonical_form(d: GaussDiagram) -> str:
    """Minimal serialization over all basepoint rotations, with chords
    relabelled 1..n by first occurrence.  Diagrams differing only by
    basepoint or labelling share a canonical form.

    >>> canonical_form(parse_gauss_code("O7+ U7+"))
    'O1+ U1+'
    """
    if d.chord_count == 0:
        return ""
    return min(
        _relabel_by_first_occurrence(d.rotate(k)).serialize()
        for k in range(d.endpoint_count)
    )


@dataclass(frozen=True)
class DiagramSeedSpec:
    """Deterministic recipe for a random diagram: same spec, same diagram."""

    chord_count: int
    seed: int


def random_diagram(spec: DiagramSeedSpec) -> GaussDiagram:
    """Uniform random perfect matching of 2n positions into n chords, each
    with an independent uniform orientation and sign."""
    rng = random.Random(spec.seed)
    positions = list(range(2 * spec.chord_count))
    rng.shuffle(positions)
    pairs = [
        (positions[2 * i], positions[2 * i + 1]) for i in range(spec.chord_count)
    ]
    decorated = []
    for a, b in pairs:
        head, foot = (a, b) if rng.random() < 0.5 else (b, a)
        sign = 1 if rng.random() < 0.5 else -1
        decorated.append((head, foot, sign))
    decorated.sort(key=lambda t: min(t[0], t[1]))
    return GaussDiagram(
        tuple(
            Chord(i + 1, head, foot, sign)
            for i, (head, foot, sign) in enumerate(decorated)
        )
    )
