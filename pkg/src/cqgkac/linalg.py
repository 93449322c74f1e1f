"""Small exact linear-algebra helpers over arbitrary sparse coordinates.

Rows are dicts mapping hashable coordinates to nonzero Fractions.  The
echelon structure picks the least coordinate (under a caller-supplied key)
as pivot, which keeps every reduction deterministic.
"""

from __future__ import annotations

from fractions import Fraction


def row_sub_scaled(row: dict, other: dict, factor: Fraction) -> dict:
    """row - factor * other, dropping zero entries."""
    out = dict(row)
    for k, v in other.items():
        s = out.get(k, 0) - factor * v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


class SparseEchelon:
    """Incremental row echelon form with exact rational arithmetic."""

    def __init__(self, key=None):
        self.key = key or (lambda c: c)
        self.pivots = {}

    def residue(self, row: dict) -> dict:
        """Full normal form of a row modulo the span of the inserted rows.

        Linear in the row, and zero exactly on the span; irreducible
        coordinates are frozen in increasing order.
        """
        row = dict(row)
        out = {}
        while row:
            lead = min(row, key=self.key)
            pivot = self.pivots.get(lead)
            if pivot is None:
                out[lead] = row.pop(lead)
            else:
                row = row_sub_scaled(row, pivot, row[lead])
        return out

    def add(self, row: dict) -> bool:
        """Insert a row; returns True if it was independent."""
        row = self.residue(row)
        if not row:
            return False
        lead = min(row, key=self.key)
        inv = 1 / row[lead]
        self.pivots[lead] = {k: inv * v for k, v in row.items()}
        return True

    def contains(self, row: dict) -> bool:
        """Whether the row lies in the span of the inserted rows."""
        return not self.residue(row)

    def rank(self) -> int:
        return len(self.pivots)
