"""Singular diagrams, resolution expansion, and the formal-sum invariants
built from parity-filtered smoothings.

``s_index(d, i)`` sums, over the crossings of absolute parity i, the sign
of the crossing times the canonical flat code of the diagram with that
crossing smoothed; ``s_tuple`` does the same over tuples drawn from the
absolute-parity sets of a strictly increasing index tuple.  Expanding a
diagram with n singular chords over the 2^n resolutions (positive
resolution = stored chord data, negative = crossing change) with the
product of the resolution signs as weight turns any such functional into a
finite-type check: ``s_index`` vanishes on two or more singular chords and
an order-n ``s_tuple`` on n+1 or more.
"""

from __future__ import annotations

import itertools
from dataclasses import replace
from typing import Callable, Iterable, Mapping

from .diagram import GaussDiagram
from .errors import (
    BadIndex,
    IncompleteResolution,
    InternalCheckError,
    NoSingularChords,
    SingularChord,
    UnknownLabel,
)
from .flat import (
    DEFAULT_R3_BUDGET,
    FormalSum,
    canonical_flat,
    flatten,
    smooth,
    sum_compare,
)
from .invariants import v_set, v_tuples, _check_v_tuple
from .parity import DEFAULT_CONVENTION, IntConvention, crossing_change, parity_map


def singular_labels(d: GaussDiagram) -> tuple[int, ...]:
    return tuple(c.label for c in d.chords if c.singular)


def singularize(d: GaussDiagram, labels: Iterable[int]) -> GaussDiagram:
    """Mark the given chords singular.  The stored data of a singular chord
    is its positive resolution, so negatively signed chords are crossing
    changed before the flag is set."""
    labels = set(labels)
    for label in labels:
        chord = d.chord(label)
        if chord.singular:
            raise SingularChord(f"chord {label} is already singular")
        if chord.sign < 0:
            d = crossing_change(d, label)
    return GaussDiagram(
        tuple(
            replace(c, singular=True) if c.label in labels else c for c in d.chords
        )
    )


def resolve(d: GaussDiagram, resolution: Mapping[int, int]) -> GaussDiagram:
    """Resolve every singular chord: +1 keeps the stored data, -1 applies a
    crossing change.  The assignment must cover the singular labels
    exactly."""
    singular = set(singular_labels(d))
    if set(resolution) != singular:
        raise IncompleteResolution(
            f"resolution domain {sorted(resolution)} != singular set {sorted(singular)}"
        )
    out = d
    for label, choice in resolution.items():
        if choice not in (1, -1):
            raise IncompleteResolution(f"resolution value for {label} must be +-1")
        if choice < 0:
            out = crossing_change(out, label)
    return GaussDiagram(
        tuple(replace(c, singular=False) for c in out.chords)
    )


def _require_ordinary(d: GaussDiagram) -> None:
    if singular_labels(d):
        raise SingularChord("operation requires a diagram without singular chords")


def s_index(
    d: GaussDiagram,
    i: int,
    r3_budget: int = DEFAULT_R3_BUDGET,
    convention: IntConvention = DEFAULT_CONVENTION,
) -> FormalSum:
    """Formal sum of the flats of single smoothings at absolute parity i."""
    _require_ordinary(d)
    if i < 1:
        raise BadIndex(f"index must be >= 1, got {i}")
    total = FormalSum.zero()
    for x in sorted(v_set(d, i, convention)):
        code = canonical_flat(flatten(smooth(d, x)), r3_budget)
        total += FormalSum.single(code, d.chord(x).sign)
    return total


def s_tuple(
    d: GaussDiagram,
    z: tuple[int, ...],
    r3_budget: int = DEFAULT_R3_BUDGET,
    convention: IntConvention = DEFAULT_CONVENTION,
) -> FormalSum:
    """Formal sum over tuples from the absolute-parity sets of z: each
    tuple's chords are smoothed in increasing label order (smoothings
    commute) and weighted by the product of the chord signs."""
    _require_ordinary(d)
    z = tuple(z)
    _check_v_tuple(z)
    total = FormalSum.zero()
    for chords in v_tuples(d, z, convention):
        weight = 1
        smoothed = d
        for x in sorted(chords):
            weight *= d.chord(x).sign
            smoothed = smooth(smoothed, x)
        code = canonical_flat(flatten(smoothed), r3_budget)
        total += FormalSum.single(code, weight)
    return total


def expand_singular(
    d: GaussDiagram,
    functional: Callable[[GaussDiagram], FormalSum],
    convention: IntConvention = DEFAULT_CONVENTION,
) -> FormalSum:
    """Sum the functional over all 2^n resolutions of the singular chords,
    each weighted by the product of its resolution signs.  Re-verifies at
    runtime that absolute parities are resolution independent."""
    singular = sorted(singular_labels(d))
    if not singular:
        raise NoSingularChords("diagram has no singular chords")
    reference: dict[int, int] | None = None
    total = FormalSum.zero()
    for choices in itertools.product((1, -1), repeat=len(singular)):
        resolution = dict(zip(singular, choices))
        resolved = resolve(d, resolution)
        abs_parities = {c: abs(p) for c, p in parity_map(resolved, convention).items()}
        if reference is None:
            reference = abs_parities
        elif abs_parities != reference:
            raise InternalCheckError(
                "absolute parity changed across resolutions: "
                f"{reference} vs {abs_parities}"
            )
        weight = 1
        for choice in choices:
            weight *= choice
        total += functional(resolved).scale(weight)
    return total


def degree_check(
    functional: Callable[[GaussDiagram], FormalSum],
    d: GaussDiagram,
    n_sing: int,
    all_subsets: bool = True,
    sample: int = 0,
    seed: int = 0,
    r3_budget: int = DEFAULT_R3_BUDGET,
) -> list[tuple[tuple[int, ...], str]]:
    """Singularize every ``n_sing``-subset of chords (or a seeded sample),
    expand, and classify each expansion as "zero", "nonzero" or "unknown"
    via the tri-state comparator."""
    _require_ordinary(d)
    if n_sing < 1 or n_sing > d.chord_count:
        raise UnknownLabel(
            f"cannot singularize {n_sing} of {d.chord_count} chords"
        )
    subsets = list(itertools.combinations(sorted(d.labels()), n_sing))
    if not all_subsets and sample:
        import random

        rng = random.Random(seed)
        subsets = [subsets[rng.randrange(len(subsets))] for _ in range(sample)]
    report = []
    for subset in subsets:
        expansion = expand_singular(singularize(d, subset), functional)
        verdict = sum_compare(expansion, FormalSum.zero(), r3_budget)
        report.append(
            (subset, {"equal": "zero", "unequal": "nonzero"}.get(verdict, "unknown"))
        )
    return report
