"""Exact rank and span membership for sparse rational rows.

Rows are dictionaries from a column index to a rational entry.  The work is
done by sympy's sparse domain matrices over QQ.
"""
from fractions import Fraction
from typing import Iterable
from typing import Mapping

from loguru import logger
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

Row = Mapping[int, Fraction | int]


def _qq(value: Fraction | int):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _nonzero(row: Row) -> dict[int, Fraction]:
    return {c: Fraction(v) for c, v in row.items() if v}


def domain_matrix(rows: list[Row]) -> DomainMatrix:
    width = 1 + max((c for row in rows for c in row), default=-1)
    entries = {i: {c: _qq(v) for c, v in row.items() if v} for i, row in enumerate(rows)}
    return DomainMatrix({i: row for i, row in entries.items() if row}, (len(rows), width), QQ)


class RowSpace:
    """
    Span of the rows added so far.

    Rows are only collected on ``add``; the reduced row echelon form is
    computed on the first query after a change and reused until the next one.
    """

    def __init__(self):
        self.rows: list[dict[int, Fraction]] = []
        self._reduced: list[tuple[int, dict]] | None = None

    def add(self, row: Row):
        entries = _nonzero(row)
        if entries:
            self.rows.append(entries)
            self._reduced = None

    def extend(self, rows: Iterable[Row]) -> 'RowSpace':
        for row in rows:
            self.add(row)
        return self

    def _pivot_rows(self) -> list[tuple[int, dict]]:
        if self._reduced is None:
            if not self.rows:
                self._reduced = []
            else:
                reduced, pivots = domain_matrix(self.rows).rref()
                # the leading entry of each nonzero row sits in a pivot column
                self._reduced = [(min(row), row) for row in reduced.to_dod().values() if row]
                logger.debug('Row space of {} rows has rank {}', len(self.rows), len(pivots))
        return self._reduced

    @property
    def rank(self) -> int:
        return len(self._pivot_rows())

    def contains(self, row: Row) -> bool:
        vector = {c: _qq(v) for c, v in _nonzero(row).items()}
        for pivot, reduced in self._pivot_rows():
            factor = vector.get(pivot)
            if not factor:
                continue
            factor = factor / reduced[pivot]
            for c, v in reduced.items():
                updated = vector.get(c, QQ.zero) - factor * v
                if updated:
                    vector[c] = updated
                else:
                    vector.pop(c, None)
        return not vector

    def copy(self) -> 'RowSpace':
        clone = RowSpace()
        clone.rows = list(self.rows)
        clone._reduced = self._reduced
        return clone


def rank(rows: Iterable[Row]) -> int:
    rows = [row for row in map(_nonzero, rows) if row]
    if not rows:
        return 0
    return domain_matrix(rows).rank()


def rank_of_stack(*blocks: Iterable[Row]) -> int:
    return rank([row for block in blocks for row in block])


def in_span(rows: Iterable[Row], vector: Row) -> bool:
    return RowSpace().extend(rows).contains(vector)
