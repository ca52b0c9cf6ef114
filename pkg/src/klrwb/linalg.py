"""Exact rational linear algebra on sparse vectors (``dict[index] -> Fraction``)."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

Vector = dict


def clean(v: Mapping) -> dict:
    return {k: c for k, c in v.items() if c}


def axpy(y: dict, a, x: Mapping) -> None:
    """In place ``y += a * x``."""
    for k, c in x.items():
        val = y.get(k, 0) + a * c
        if val:
            y[k] = val
        else:
            y.pop(k, None)


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Every stored row has coefficient 1 at its pivot and 0 at every other
    pivot, so coordinates of a member vector are read off at the pivots.
    Pivots are compared with the natural ordering of the index keys.
    """

    def __init__(self, vectors: Iterable[Mapping] = ()):
        self.rows: dict[Hashable, dict] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping) -> dict:
        out = {k: Fraction(c) for k, c in v.items() if c}
        for p in [k for k in out if k in self.rows]:
            c = out.get(p)
            if c:
                axpy(out, -c, self.rows[p])
        return out

    def add(self, v: Mapping) -> bool:
        """Insert ``v``; return True if it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: c * inv for k, c in r.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
        self.rows[p] = r
        return True

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Mapping) -> dict:
        """Coordinates of a member ``v`` in terms of the rows, keyed by pivot."""
        r = self.reduce(v)
        if r:
            raise ValueError("vector is not in the span")
        return {p: Fraction(v.get(p, 0)) for p in self.rows if v.get(p, 0)}

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]

    def pivots(self) -> list:
        return sorted(self.rows)


def rank(vectors: Iterable[Mapping]) -> int:
    return Echelon(vectors).rank


def nullspace(columns: list[Mapping], dim: int | None = None) -> list[dict]:
    """Kernel of the map sending unit vector ``k`` to ``columns[k]``.

    Returned vectors are dicts over ``range(len(columns))``.
    """
    # Gaussian elimination on the augmented system column -> (image, tag)
    rows: dict = {}
    kernel = []
    for k, col in enumerate(columns):
        img = {("i", key): Fraction(c) for key, c in col.items() if c}
        tag = {("t", k): Fraction(1)}
        while True:
            live = [p for p in img if p in rows]
            if not live:
                break
            p = live[0]
            c = img[p]
            pimg, ptag = rows[p]
            axpy(img, -c, pimg)
            axpy(tag, -c, ptag)
        if img:
            p = min(img)
            inv = 1 / img[p]
            rows[p] = ({q: c * inv for q, c in img.items()}, {q: c * inv for q, c in tag.items()})
        else:
            kernel.append({q[1]: c for q, c in tag.items()})
    return kernel


def solve(columns: list[Mapping], target: Mapping) -> dict | None:
    """The unique ``x`` with ``sum_k x[k] * columns[k] == target``.

    Returns None if ``target`` is outside the span; raises ValueError if the
    columns are linearly dependent, since then ``x`` is not unique.
    """
    rows: dict = {}

    def eliminate(img: dict, tag: dict) -> None:
        while True:
            live = [p for p in img if p in rows]
            if not live:
                return
            p = live[0]
            c = img[p]
            pimg, ptag = rows[p]
            axpy(img, -c, pimg)
            axpy(tag, -c, ptag)

    for k, col in enumerate(columns):
        img = {key: Fraction(c) for key, c in col.items() if c}
        tag = {k: Fraction(1)}
        eliminate(img, tag)
        if not img:
            raise ValueError(f"column {k} is dependent on earlier columns")
        p = min(img)
        inv = 1 / img[p]
        rows[p] = ({q: c * inv for q, c in img.items()}, {q: c * inv for q, c in tag.items()})
    img = {key: Fraction(c) for key, c in target.items() if c}
    tag: dict = {}
    eliminate(img, tag)
    if img:
        return None
    return {k: -c for k, c in tag.items() if c}
