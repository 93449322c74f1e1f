"""Quotients by zero-sent generators, canonical relation sets, expected
Kac-quotient targets, and presentation matching.

Matching is exact by default: after the structural renaming both relation
sets are canonicalized and compared as sets.  When that fails, a bounded
ideal-membership fallback checks that every unmatched relation of one side
reduces to zero against the other side's relations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgElement, GeneratorId, ScalarMatrix, word_key
from .linalg import SparseEchelon
from .presentations import (
    BlockSpec,
    Presentation,
    build_universal_orthogonal,
    build_universal_unitary,
    canonicalize_relations,
    free_product,
    layout_ranges,
    symplectic_matrix,
)


def quotient_by_zero(P: Presentation, gens) -> Presentation:
    """Send the listed generators (and their adjoints) to zero."""
    gens = {g.plain() for g in gens}
    unknown = gens - P.generator_set()
    if unknown:
        raise ValueError(f"unknown generators: {sorted(g.label() for g in unknown)}")
    sigma = {g: AlgElement.zero() for g in gens}
    return Presentation(
        [g for g in P.generators if g not in gens],
        [r.substitute(sigma) for r in P.relations],
        {t: m.substitute(sigma) for t, m in P.fundamentals.items()},
        P.qmatrices,
        P.fmatrices,
        spec=P.spec,
        eliminated=P.eliminated,
        label=P.label,
    )


def canonicalize(P: Presentation) -> Presentation:
    """Renormalize, deduplicate and sort the relation list."""
    return Presentation(
        P.generators, P.relations, P.fundamentals, P.qmatrices, P.fmatrices,
        spec=P.spec, eliminated=P.eliminated, label=P.label,
    )


def _renaming_from_blocks(spec: BlockSpec, survivors):
    """Map surviving source positions onto the free-product target letters.

    `survivors` is a list of (block name, target factor tag, row offset):
    each named block of the source layout lands in the given target factor,
    with its local rows shifted by the offset.
    """
    ranges = layout_ranges(spec)
    renaming = {}
    for name, tag, row_offset in survivors:
        rows, cols = ranges[name]
        for a, j in enumerate(rows):
            for b, k in enumerate(cols):
                renaming[GeneratorId(0, "u", j, k)] = GeneratorId(
                    tag, "u", a + row_offset, b
                )
    return renaming


def expected_kac_target(spec: BlockSpec):
    """The free-product Kac target of a block spec, plus the renaming hint.

    unitary with eigenvalue multiplicities M_1..M_r   -> *_v Pol(U_{M_v}^+)
    one-block of size M                               -> Pol(U_M^+)
    case-I, trailing t                                -> *_v Pol(U_{M_v}^+) * Pol(O_t^+)
    case-II with a q=1 block of size M                -> *_v Pol(U_{M_v}^+) * Pol(O_J^+)
    """
    parts = []
    survivors = []
    if spec.kind == "unitary":
        for i, b in enumerate(spec.blocks):
            parts.append(build_universal_unitary(ScalarMatrix.identity(b.m)))
            survivors.append((f"A[{i + 1},{i + 1}]", i, 0))
    elif spec.kind == "one-block":
        parts.append(build_universal_unitary(ScalarMatrix.identity(spec.blocks[0].m)))
        survivors.append(("A", 0, 0))
    elif spec.kind == "case-I":
        for i, b in enumerate(spec.blocks):
            parts.append(build_universal_unitary(ScalarMatrix.identity(b.m)))
            survivors.append((f"A[{i + 1},{i + 1}]", i, 0))
        if spec.trailing:
            parts.append(build_universal_orthogonal(ScalarMatrix.identity(spec.trailing)))
            survivors.append(("Z", len(spec.blocks), 0))
    else:
        unit = spec.unit_block
        unitary_blocks = spec.blocks[:-1] if unit else spec.blocks
        for i, b in enumerate(unitary_blocks):
            parts.append(build_universal_unitary(ScalarMatrix.identity(b.m)))
            survivors.append((f"A[{i + 1},{i + 1}]", i, 0))
        if unit:
            parts.append(build_universal_orthogonal(symplectic_matrix(unit.m)))
            r = len(spec.blocks)
            survivors.append((f"A[{r},{r}]", len(unitary_blocks), 0))
            survivors.append((f"C[{r},{r}]", len(unitary_blocks), unit.m))
    target = free_product(parts)
    return target, _renaming_from_blocks(spec, survivors)


@dataclass(frozen=True)
class MatchVerdict:
    """Outcome of comparing a derived quotient with its target."""

    matched: bool
    mode: str
    renaming: dict
    unmatched_derived: tuple
    unmatched_target: tuple


def match_presentations(P: Presentation, T: Presentation, renaming,
                        membership_bound: int = 4) -> MatchVerdict:
    """Compare relation sets under a renaming; fall back to bounded
    ideal membership in both directions if the sets differ."""
    if set(renaming) != P.generator_set():
        raise ValueError("renaming is not total on the derived generators")
    if sorted(renaming.values()) != sorted(set(renaming.values())):
        raise ValueError("renaming is not injective")
    if set(renaming.values()) != T.generator_set():
        raise ValueError("renaming is not onto the target generators")
    subst = {g: AlgElement.generator(h) for g, h in renaming.items()}
    renamed = canonicalize_relations(r.substitute(subst) for r in P.relations)
    derived_keys = {r.sort_key(): r for r in renamed}
    target_keys = {r.sort_key(): r for r in T.relations}
    only_derived = tuple(derived_keys[k] for k in sorted(derived_keys.keys() - target_keys.keys()))
    only_target = tuple(target_keys[k] for k in sorted(target_keys.keys() - derived_keys.keys()))
    if not only_derived and not only_target:
        return MatchVerdict(True, "exact-set", dict(renaming), (), ())
    ok = all(
        ideal_membership_bounded(r, T.relations, max(membership_bound, r.degree()))
        for r in only_derived
    ) and all(
        ideal_membership_bounded(r, renamed, max(membership_bound, r.degree()))
        for r in only_target
    )
    return MatchVerdict(ok, "bounded-ideal", dict(renaming), only_derived, only_target)


def _letters_of(elements):
    base = set()
    for e in elements:
        for g in e.letters():
            base.add(g.plain())
    letters = []
    for g in sorted(base):
        letters.append(g)
        letters.append(g.adjoint())
    return letters


def _words_up_to(letters, max_len):
    for length in range(max_len + 1):
        yield from itertools.product(letters, repeat=length)


def bounded_ideal_echelon(rels, letters, d: int) -> SparseEchelon:
    """Echelon basis of the two-sided ideal of `rels` truncated at degree d."""
    ech = SparseEchelon(key=word_key)
    closed = []
    seen = set()
    for r in rels:
        for s in (r, r.adjoint()):
            key = s.sort_key()
            if key not in seen:
                seen.add(key)
                closed.append(s)
    for r in closed:
        room = d - r.degree()
        if room < 0:
            continue
        for left in _words_up_to(letters, room):
            for right in _words_up_to(letters, room - len(left)):
                prod = AlgElement.word(left) * r * AlgElement.word(right)
                ech.add(dict(prod.terms()))
    return ech


def ideal_membership_bounded(x: AlgElement, rels, d: int) -> bool:
    """Whether x lies in the span of w * r * w' with total degree <= d.

    One-sided: False only means "not found at this bound".  Exact rational
    linear algebra over the word basis; monotone in d.
    """
    if x.is_zero():
        return True
    if d < x.degree():
        raise ValueError(f"degree bound {d} is below the element degree {x.degree()}")
    letters = _letters_of(list(rels) + [x])
    ech = bounded_ideal_echelon(rels, letters, d)
    return ech.contains(dict(x.terms()))
