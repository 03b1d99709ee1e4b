"""Multi-circle link diagrams, vertical smoothing, flattening, bounded
normalization of flat diagrams, and integer formal sums of flat codes.

Vertical smoothing deletes a chord and reconnects the circle(s) at its two
endpoints respecting the traversal direction: a chord with both endpoints
on one circle splits it into two, a chord joining two circles merges them.

A flat diagram keeps the circles and the chord endpoint pairs but no sign
or orientation data.  Flat codes serialize circles as space-separated label
sequences joined by " | ", labels renumbered by first occurrence; a
chordless circle serializes to an empty segment, so "" is the code of a
single bare circle and "1 | 1" is two circles joined by one chord.

``canonical_flat`` normalizes a flat diagram by (1) greedily removing
isolated chords and parallel chord pairs with pairwise-adjacent endpoints,
(2) exploring the orbit under flat triangle moves up to a fixed budget,
re-reducing after each step and keeping the smallest result, and
(3) minimizing the serialization over circle rotations, circle order and
relabelling.  The normalization is sound but deliberately bounded, so the
formal-sum comparator is tri-state: equal / unequal / unknown.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from functools import lru_cache

from .diagram import GaussDiagram
from .errors import ParseError, SingularChord, UnknownLabel, ValidationError

DEFAULT_R3_BUDGET = 4

End = tuple[int, int]  # (circle index, position)


@dataclass(frozen=True)
class LinkChord:
    label: int
    head: End
    foot: End
    sign: int
    singular: bool = False


@dataclass(frozen=True)
class LinkGaussDiagram:
    """Gauss diagram on several oriented circles; produced by smoothing."""

    circle_lengths: tuple[int, ...] = ()
    chords: tuple[LinkChord, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "chords", tuple(sorted(self.chords, key=lambda c: c.label)))

    @classmethod
    def from_gauss(cls, d: GaussDiagram) -> LinkGaussDiagram:
        return cls(
            (d.endpoint_count,),
            tuple(
                LinkChord(c.label, (0, c.head), (0, c.foot), c.sign, c.singular)
                for c in d.chords
            ),
        )

    @property
    def circle_count(self) -> int:
        return len(self.circle_lengths)

    def labels(self) -> tuple[int, ...]:
        return tuple(c.label for c in self.chords)

    def chord(self, label: int) -> LinkChord:
        for c in self.chords:
            if c.label == label:
                return c
        raise UnknownLabel(f"no chord labelled {label}")

    def serialize(self) -> str:
        """Circles as Gauss-code token runs joined by " | "."""
        occupants: list[list[str]] = [[""] * n for n in self.circle_lengths]
        for c in self.chords:
            decoration = str(c.label) + ("+" if c.sign > 0 else "-") + ("!" if c.singular else "")
            occupants[c.head[0]][c.head[1]] = "O" + decoration
            occupants[c.foot[0]][c.foot[1]] = "U" + decoration
        return " | ".join(" ".join(circle) for circle in occupants)


def _coerce_link(d: GaussDiagram | LinkGaussDiagram) -> LinkGaussDiagram:
    if isinstance(d, GaussDiagram):
        return LinkGaussDiagram.from_gauss(d)
    return d


def _reconnect(
    circles: list[list], e1: End, e2: End
) -> tuple[list[list], dict[End, End]]:
    """Remove the two slots e1, e2 and reconnect respecting orientation.
    Returns the new slot lists plus a map from surviving old slots to new.
    Same circle: split into (arc after e1, arc after e2); two circles:
    merge into one."""
    (c1, p1), (c2, p2) = e1, e2
    keyed = [
        [(ci, pos) for pos in range(len(circle))] for ci, circle in enumerate(circles)
    ]
    if c1 == c2:
        circle = keyed[c1]
        n = len(circle)
        arc_a = [circle[(p1 + k) % n] for k in range(1, (p2 - p1) % n)]
        arc_b = [circle[(p2 + k) % n] for k in range(1, (p1 - p2) % n)]
        new_keyed = (
            [k for i, k in enumerate(keyed) if i != c1] + [arc_a, arc_b]
        )
    else:
        a, b = keyed[c1], keyed[c2]
        merged = a[p1 + 1 :] + a[:p1] + b[p2 + 1 :] + b[:p2]
        new_keyed = [
            k for i, k in enumerate(keyed) if i not in (c1, c2)
        ] + [merged]
    mapping: dict[End, End] = {}
    new_circles: list[list] = []
    for nci, keys in enumerate(new_keyed):
        row = []
        for npos, (oci, opos) in enumerate(keys):
            mapping[(oci, opos)] = (nci, npos)
            row.append(circles[oci][opos])
        new_circles.append(row)
    return new_circles, mapping


def smooth(d: GaussDiagram | LinkGaussDiagram, label: int) -> LinkGaussDiagram:
    """Vertically smooth the chord with the given label: the chord is
    removed and the strands are reconnected respecting orientation, so one
    circle splits into two or two circles merge into one."""
    link = _coerce_link(d)
    target = link.chord(label)
    if target.singular:
        raise SingularChord(f"cannot smooth singular chord {label}")
    occupants: list[list] = [[None] * n for n in link.circle_lengths]
    for c in link.chords:
        occupants[c.head[0]][c.head[1]] = (c.label, "head")
        occupants[c.foot[0]][c.foot[1]] = (c.label, "foot")
    new_circles, mapping = _reconnect(occupants, target.head, target.foot)
    chords = []
    for c in link.chords:
        if c.label == label:
            continue
        chords.append(replace(c, head=mapping[c.head], foot=mapping[c.foot]))
    return LinkGaussDiagram(tuple(len(c) for c in new_circles), tuple(chords))


@dataclass(frozen=True)
class FlatDiagram:
    """Circles plus unsigned, unoriented chord endpoint pairs."""

    circle_lengths: tuple[int, ...] = ()
    chords: tuple[tuple[End, End], ...] = ()

    def __post_init__(self):
        normalized = tuple(sorted(tuple(sorted(pair)) for pair in self.chords))
        object.__setattr__(self, "chords", normalized)

    @property
    def chord_count(self) -> int:
        return len(self.chords)

    @property
    def circle_count(self) -> int:
        return len(self.circle_lengths)


def flatten(d: GaussDiagram | LinkGaussDiagram) -> FlatDiagram:
    """Drop sign and orientation from every chord; circles are preserved.
    Singular chords must be resolved before flattening."""
    link = _coerce_link(d)
    if any(c.singular for c in link.chords):
        raise SingularChord("cannot flatten a diagram with singular chords")
    return FlatDiagram(
        link.circle_lengths, tuple((c.head, c.foot) for c in link.chords)
    )


def _occupant_lists(f: FlatDiagram) -> list[list[int]]:
    occ: list[list[int]] = [[-1] * n for n in f.circle_lengths]
    for idx, (e1, e2) in enumerate(f.chords):
        occ[e1[0]][e1[1]] = idx
        occ[e2[0]][e2[1]] = idx
    return occ


def _from_occupants(occ: list[list[int]]) -> FlatDiagram:
    ends: dict[int, list[End]] = {}
    for ci, circle in enumerate(occ):
        for pos, idx in enumerate(circle):
            ends.setdefault(idx, []).append((ci, pos))
    chords = tuple((es[0], es[1]) for idx, es in ends.items())
    return FlatDiagram(tuple(len(c) for c in occ), chords)


def flat_smooth(f: FlatDiagram, chord_index: int) -> FlatDiagram:
    """Smooth a flat chord by index; the positional kernel shared with
    :func:`smooth`, so flattening and smoothing commute."""
    e1, e2 = f.chords[chord_index]
    occ = _occupant_lists(f)
    new_occ, _ = _reconnect(occ, e1, e2)
    kept = [
        [idx if idx != chord_index else -2 for idx in circle] for circle in new_occ
    ]
    return _from_occupants(kept)


def parse_flat(text: str) -> FlatDiagram:
    """Parse a flat code.  Each circle is a space-separated run of labels,
    circles are separated by "|", and every label must occur exactly twice
    in the whole code."""
    segments = text.split("|")
    occ: list[list[str]] = []
    for seg in segments:
        labels = seg.split()
        for token in labels:
            if not token.isdigit():
                raise ParseError(f"malformed flat label {token!r}")
        occ.append(labels)
    positions: dict[str, list[End]] = {}
    for ci, circle in enumerate(occ):
        for pos, token in enumerate(circle):
            positions.setdefault(token, []).append((ci, pos))
    violations = [
        f"flat label {token} occurs {len(ends)} times, expected 2"
        for token, ends in positions.items()
        if len(ends) != 2
    ]
    if violations:
        raise ValidationError(violations)
    return FlatDiagram(
        tuple(len(c) for c in occ),
        tuple((ends[0], ends[1]) for ends in positions.values()),
    )


def flat_code(f: FlatDiagram) -> str:
    """Raw serialization: stored circle order, rotation 0, labels by first
    occurrence.  Use :func:`canonical_flat` for comparison keys."""
    occ = _occupant_lists(f)
    mapping: dict[int, int] = {}
    parts = []
    for circle in occ:
        tokens = []
        for idx in circle:
            if idx not in mapping:
                mapping[idx] = len(mapping) + 1
            tokens.append(str(mapping[idx]))
        parts.append(" ".join(tokens))
    return " | ".join(parts)


# --- reduction moves -------------------------------------------------------


def _arc_self_contained(f: FlatDiagram, chord: tuple[End, End], start: int, stop: int) -> bool:
    """True when every chord touching the open arc (start, stop) of the
    chord's circle lies entirely inside that arc.  Such an arc is a curl
    side: its contents ride along when the curl is undone."""
    ci = chord[0][0]
    n = f.circle_lengths[ci]

    def inside(e: End) -> bool:
        return e[0] == ci and 0 < (e[1] - start) % n < (stop - start) % n

    for other in f.chords:
        if other == chord:
            continue
        touching = [inside(e) for e in other]
        if any(touching) and not all(touching):
            return False
    return True


def _isolated_chords(f: FlatDiagram) -> list[int]:
    """Chords removable by the flat single-chord move: both endpoints on
    one circle, with at least one self-contained arc (in particular any
    chord crossing nothing)."""
    out = []
    for idx, chord in enumerate(f.chords):
        (c1, a), (c2, b) = chord
        if c1 != c2:
            continue
        if _arc_self_contained(f, chord, a, b) or _arc_self_contained(f, chord, b, a):
            out.append(idx)
    return out


def _adjacent(f: FlatDiagram, e1: End, e2: End) -> bool:
    if e1[0] != e2[0]:
        return False
    n = f.circle_lengths[e1[0]]
    if n < 2:
        return False
    return (e1[1] - e2[1]) % n in (1, n - 1)


def _r2_pairs(f: FlatDiagram) -> list[tuple[int, int]]:
    """Chord pairs whose endpoints form two disjoint adjacent sites, one
    endpoint of each chord per site (the flat two-chord pattern)."""
    pairs = []
    for i, j in itertools.combinations(range(len(f.chords)), 2):
        (a1, a2), (b1, b2) = f.chords[i], f.chords[j]
        straight = _adjacent(f, a1, b1) and _adjacent(f, a2, b2) and {a1, b1} != {a2, b2}
        crossed = _adjacent(f, a1, b2) and _adjacent(f, a2, b1) and {a1, b2} != {a2, b1}
        if straight or crossed:
            pairs.append((i, j))
    return pairs


def _remove_chords(f: FlatDiagram, indices: set[int]) -> FlatDiagram:
    occ = _occupant_lists(f)
    new_occ = [[idx for idx in circle if idx not in indices] for circle in occ]
    return _from_occupants(new_occ)


def greedy_reduce(f: FlatDiagram) -> FlatDiagram:
    """Remove isolated chords and flat two-chord pairs until none remain.
    Scans in a fixed order, so the result is deterministic.  Circle count
    never changes."""
    while True:
        isolated = _isolated_chords(f)
        if isolated:
            f = _remove_chords(f, {isolated[0]})
            continue
        pairs = _r2_pairs(f)
        if pairs:
            f = _remove_chords(f, set(pairs[0]))
            continue
        return f


# --- flat triangle moves ---------------------------------------------------


def _triangle_moves(f: FlatDiagram) -> list[tuple[End, End, End]]:
    """Sites of applicable flat triangle moves, each given by the first
    slot of its three adjacent endpoint pairs."""
    occ = _occupant_lists(f)
    sites = []
    for ci, circle in enumerate(occ):
        n = len(circle)
        if n < 2:
            continue
        span = range(n) if n > 2 else range(1)
        for p in span:
            q = (p + 1) % n
            if circle[p] != circle[q]:
                sites.append(((ci, p), (ci, q), frozenset((circle[p], circle[q]))))
    moves = []
    for s1, s2, s3 in itertools.combinations(sites, 3):
        slots = {s1[0], s1[1], s2[0], s2[1], s3[0], s3[1]}
        if len(slots) != 6:
            continue
        chords = s1[2] | s2[2] | s3[2]
        if len(chords) != 3 or len({s1[2], s2[2], s3[2]}) != 3:
            continue
        moves.append((s1[0], s2[0], s3[0]))
    return moves


def _apply_triangle(f: FlatDiagram, move: tuple[End, End, End]) -> FlatDiagram:
    occ = _occupant_lists(f)
    for (ci, p) in move:
        n = len(occ[ci])
        q = (p + 1) % n
        occ[ci][p], occ[ci][q] = occ[ci][q], occ[ci][p]
    return _from_occupants(occ)


# --- canonical serialization ----------------------------------------------


@lru_cache(maxsize=None)
def _min_code(f: FlatDiagram) -> str:
    """Minimal flat code over circle order, per-circle rotations, and
    first-occurrence relabelling."""
    occ = [tuple(circle) for circle in _occupant_lists(f)]
    n_circ = len(occ)
    best: str | None = None

    def rec(used: set[int], parts: list[str], mapping: dict[int, int]):
        nonlocal best
        if len(used) == n_circ:
            candidate = " | ".join(parts)
            if best is None or candidate < best:
                best = candidate
            return
        tried = set()
        for ci in range(n_circ):
            if ci in used or occ[ci] in tried:
                continue
            tried.add(occ[ci])
            n = len(occ[ci])
            for rot in range(max(n, 1)):
                local = dict(mapping)
                tokens = []
                for k in range(n):
                    idx = occ[ci][(rot + k) % n]
                    if idx not in local:
                        local[idx] = len(local) + 1
                    tokens.append(str(local[idx]))
                prefix = " | ".join(parts + [" ".join(tokens)])
                if best is not None and prefix > best[: len(prefix)]:
                    continue
                rec(used | {ci}, parts + [" ".join(tokens)], local)

    rec(set(), [], {})
    return best if best is not None else ""


@lru_cache(maxsize=None)
def _canonical_flat_cached(f: FlatDiagram, r3_budget: int) -> str:
    start = greedy_reduce(f)

    def key(g: FlatDiagram) -> tuple[int, str]:
        return (g.chord_count, _min_code(g))

    best = key(start)
    seen = {_min_code(start)}
    frontier = [start]
    for _ in range(r3_budget):
        if not frontier:
            break
        nxt = []
        for g in frontier:
            for move in _triangle_moves(g):
                h = greedy_reduce(_apply_triangle(g, move))
                code = _min_code(h)
                if code in seen:
                    continue
                seen.add(code)
                nxt.append(h)
                best = min(best, key(h))
        frontier = nxt
    return best[1]


def canonical_flat(f: FlatDiagram, r3_budget: int = DEFAULT_R3_BUDGET) -> str:
    """Normalize a flat diagram and return its minimal code.  Invariant
    under single flat moves: isolated-chord and parallel-pair moves always,
    triangle moves whenever ``r3_budget >= 1``."""
    return _canonical_flat_cached(f, r3_budget)


# --- integer formal sums over canonical flat codes -------------------------


@dataclass(frozen=True)
class FormalSum:
    """Finitely supported integer combination of flat codes; zero
    coefficients are pruned on construction."""

    terms: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        merged: dict[str, int] = {}
        for code, coeff in self.terms:
            merged[code] = merged.get(code, 0) + coeff
        object.__setattr__(
            self,
            "terms",
            tuple(sorted((k, v) for k, v in merged.items() if v != 0)),
        )

    @classmethod
    def zero(cls) -> FormalSum:
        return cls()

    @classmethod
    def single(cls, code: str, coeff: int = 1) -> FormalSum:
        return cls(((code, coeff),))

    def as_dict(self) -> dict[str, int]:
        return dict(self.terms)

    def coefficient(self, code: str) -> int:
        return self.as_dict().get(code, 0)

    def __add__(self, other: FormalSum) -> FormalSum:
        return FormalSum(self.terms + other.terms)

    def __neg__(self) -> FormalSum:
        return self.scale(-1)

    def __sub__(self, other: FormalSum) -> FormalSum:
        return self + (-other)

    def scale(self, k: int) -> FormalSum:
        return FormalSum(tuple((code, k * coeff) for code, coeff in self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def total(self) -> int:
        """Sum of coefficients: the value obtained by evaluating every flat
        state as 1."""
        return sum(coeff for _, coeff in self.terms)

    def to_json(self) -> list[dict]:
        return [{"coeff": coeff, "flat": code} for code, coeff in self.terms]

    @classmethod
    def from_json(cls, data: list[dict]) -> FormalSum:
        return cls(tuple((item["flat"], item["coeff"]) for item in data))


def sum_add(a: FormalSum, b: FormalSum) -> FormalSum:
    return a + b


def sum_scale(a: FormalSum, k: int) -> FormalSum:
    return a.scale(k)


def sum_is_zero(a: FormalSum) -> bool:
    return a.is_zero()


def _recanonicalize(a: FormalSum, r3_budget: int) -> FormalSum:
    return FormalSum(
        tuple(
            (canonical_flat(parse_flat(code), r3_budget), coeff)
            for code, coeff in a.terms
        )
    )


def sum_compare(a: FormalSum, b: FormalSum, r3_budget: int = DEFAULT_R3_BUDGET) -> str:
    """Tri-state comparison of formal sums: "equal" when the difference
    cancels under canonical keys at the given budget, "unequal" when some
    residual class differs in a budget-independent invariant (circle count,
    chord count after full reduction), and "unknown" otherwise."""
    diff = _recanonicalize(a, r3_budget) - _recanonicalize(b, r3_budget)
    if diff.is_zero():
        return "equal"
    classes: dict[tuple[int, int], int] = {}
    for code, coeff in diff.terms:
        g = greedy_reduce(parse_flat(code))
        cls = (g.circle_count, g.chord_count)
        classes[cls] = classes.get(cls, 0) + coeff
    if any(net != 0 for net in classes.values()):
        return "unequal"
    return "unknown"
