"""Finite multisets ("sequences") over (Z/nZ)^2.

A Sequence is an unordered multiset of group elements, stored as a sorted
tuple of (element, multiplicity) pairs.  Term order never matters; two
sequences are equal iff their multiplicity maps agree.

The JSON text format is::

    {"n": 5, "terms": [[0, 1, 4], [1, 0, 4], [1, 1, 1]]}

with terms sorted by element, multiplicities >= 1, and no duplicate
elements.  Parsing is strict; anything off-shape raises SchemaError.
"""

from __future__ import annotations

import json
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import NotASubsequence, SchemaError
from .groups import Elem, Group, group

__all__ = ["Sequence", "canonicalize"]


class Sequence:
    """Immutable multiset of elements of a fixed Group."""

    __slots__ = ("group", "_items", "_len", "_hash")

    def __init__(self, grp: Group, items: Iterable[tuple[Elem, int]]):
        merged: dict[Elem, int] = {}
        for g, mult in items:
            if not isinstance(mult, int) or mult < 0:
                raise ValueError(f"multiplicity must be a nonnegative int, got {mult!r}")
            if mult == 0:
                continue
            g = grp.element(*g)
            merged[g] = merged.get(g, 0) + mult
        self.group = grp
        self._items: tuple[tuple[Elem, int], ...] = tuple(sorted(merged.items()))
        self._len = sum(m for _, m in self._items)
        self._hash: int | None = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_terms(cls, grp: Group, terms: Iterable[Elem]) -> "Sequence":
        return cls(grp, ((g, 1) for g in terms))

    @classmethod
    def empty(cls, grp: Group) -> "Sequence":
        return cls(grp, ())

    @classmethod
    def repeated(cls, grp: Group, g: Elem, k: int) -> "Sequence":
        """The sequence g^[k]."""
        return cls(grp, ((g, k),))

    # -- basic protocol --------------------------------------------------------

    def __len__(self) -> int:
        return self._len

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Sequence)
            and other.group == self.group
            and other._items == self._items
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.group.n, self._items))
        return self._hash

    def __iter__(self) -> Iterator[Elem]:
        """Iterate terms with multiplicity, in element order."""
        for g, mult in self._items:
            for _ in range(mult):
                yield g

    def __repr__(self) -> str:
        body = " ".join(f"{g}^{m}" if m > 1 else f"{g}" for g, m in self._items)
        return f"<Seq n={self.group.n} len={self._len} {body or 'empty'}>"

    # -- accessors ---------------------------------------------------------------

    def items(self) -> tuple[tuple[Elem, int], ...]:
        """(element, multiplicity) pairs in element order."""
        return self._items

    def terms(self) -> tuple[Elem, ...]:
        return tuple(self)

    def multiplicity(self, g: Elem) -> int:
        g = self.group.element(*g)
        for h, m in self._items:
            if h == g:
                return m
        return 0

    def support(self) -> tuple[Elem, ...]:
        return tuple(g for g, _ in self._items)

    def height(self) -> int:
        """Largest multiplicity, 0 for the empty sequence."""
        return max((m for _, m in self._items), default=0)

    def sigma(self) -> Elem:
        """Sum of all terms."""
        n = self.group.n
        a = sum(g[0] * m for g, m in self._items) % n
        b = sum(g[1] * m for g, m in self._items) % n
        return (a, b)

    def is_zero_sum(self) -> bool:
        return self.sigma() == self.group.zero

    # -- multiset algebra ----------------------------------------------------------

    def concat(self, other: "Sequence") -> "Sequence":
        if other.group != self.group:
            raise ValueError("cannot concatenate sequences over different groups")
        return Sequence(self.group, self._items + other._items)

    def is_subsequence_of(self, other: "Sequence") -> bool:
        if other.group != self.group:
            return False
        return all(other.multiplicity(g) >= m for g, m in self._items)

    def remove(self, sub: "Sequence") -> "Sequence":
        """Multiset difference self - sub; raises NotASubsequence if sub does
        not divide self."""
        if sub.group != self.group:
            raise NotASubsequence("sequences live over different groups")
        counts = dict(self._items)
        for g, m in sub._items:
            have = counts.get(g, 0)
            if have < m:
                raise NotASubsequence(f"term {g} has multiplicity {have} < {m}")
            counts[g] = have - m
        return Sequence(self.group, counts.items())

    def apply_hom(self, f: Callable[[Elem], Elem], target: Group | None = None) -> "Sequence":
        """Termwise image under f.  The result lives in ``target`` (defaults
        to the same group)."""
        grp = target if target is not None else self.group
        return Sequence(grp, ((f(g), m) for g, m in self._items))

    # -- symmetry ----------------------------------------------------------------

    def canonicalize(self) -> "Sequence":
        """Least sequence in the automorphism orbit.

        The order is lexicographic on the expanded, sorted term tuple.  Uses
        the group's permutation table, so it is intended for small moduli.
        """
        if not self._items:
            return self
        grp = self.group
        perm = grp.perm_table()
        idxs = [grp.index(g) for g in self]
        images = perm[:, idxs]
        images.sort(axis=1)
        best = images[np.lexsort(images.T[::-1])[0]]
        return Sequence.from_terms(grp, (grp.unindex(int(i)) for i in best))

    def orbit_size(self) -> int:
        """Number of distinct sequences in the automorphism orbit."""
        grp = self.group
        perm = grp.perm_table()
        idxs = [grp.index(g) for g in self]
        images = perm[:, idxs]
        images.sort(axis=1)
        return len({tuple(row) for row in images.tolist()})

    # -- JSON text format -------------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "n": self.group.n,
            "terms": [[g[0], g[1], m] for g, m in self._items],
        }

    def to_json(self, *, indent: int | None = None) -> str:
        return json.dumps(self.to_json_obj(), indent=indent, sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: object) -> "Sequence":
        if not isinstance(obj, dict):
            raise SchemaError("sequence must be a JSON object")
        extra = set(obj) - {"n", "terms"}
        if extra:
            raise SchemaError(f"unexpected keys: {sorted(extra)}")
        n = obj.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 2:
            raise SchemaError(f"'n' must be an integer >= 2, got {n!r}")
        terms = obj.get("terms")
        if not isinstance(terms, list):
            raise SchemaError("'terms' must be a list")
        grp = group(n)
        items: list[tuple[Elem, int]] = []
        prev: Elem | None = None
        for entry in terms:
            if (
                not isinstance(entry, list) or len(entry) != 3
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in entry)
            ):
                raise SchemaError(f"term must be [a, b, multiplicity], got {entry!r}")
            a, b, m = entry
            if not (0 <= a < n and 0 <= b < n):
                raise SchemaError(f"element ({a}, {b}) out of range for n={n}")
            if m < 1:
                raise SchemaError(f"multiplicity must be >= 1, got {m}")
            g = (a, b)
            if prev is not None and g <= prev:
                raise SchemaError("terms must be sorted by element with no duplicates")
            prev = g
            items.append((g, m))
        return cls(grp, items)

    @classmethod
    def from_json(cls, text: str) -> "Sequence":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
        return cls.from_json_obj(obj)


def canonicalize(seq: Sequence) -> Sequence:
    """Module-level alias for :meth:`Sequence.canonicalize`."""
    return seq.canonicalize()
