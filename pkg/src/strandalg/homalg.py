"""Finite GF(2) chain complexes with sparse differentials.

Complexes are ungraded: the differential is any square-zero endomorphism of a
finite GF(2) vector space with a distinguished generator basis.  Homology rank
(dim ker - dim im) is the reproducible invariant; it is computed by Gaussian
elimination on bit-packed rows (python ints as bit vectors), with a sparse
set-based elimination path for very large complexes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

# Generator count at which homology_rank switches from bit-packed dense
# elimination to sparse set-based elimination.  Output-identical.
DENSE_LIMIT = 1 << 13


class NotAChainMap(ValueError):
    """Raised when a matrix fails to commute with the differentials."""


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def gf2_rank_dense(rows) -> int:
    """GF(2) rank of a list of bit-packed rows (ints)."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead in pivots:
                row ^= pivots[lead]
            else:
                pivots[lead] = row
                rank += 1
                break
    return rank


def gf2_rank_sparse(rows) -> int:
    """GF(2) rank via sparse elimination, pivoting on the fullest-free row
    last (lowest fill first)."""
    active = [set(_bits(r)) for r in rows if r]
    rank = 0
    while active:
        active.sort(key=len)
        piv = active.pop(0)
        if not piv:
            continue
        col = min(piv)
        rank += 1
        nxt = []
        for row in active:
            if col in row:
                row = row ^ piv
            if row:
                nxt.append(row)
        active = nxt
    return rank


def gf2_rank(rows, method: str = "auto") -> int:
    if method == "dense":
        return gf2_rank_dense(rows)
    if method == "sparse":
        return gf2_rank_sparse(rows)
    if method != "auto":
        raise ValueError(f"unknown elimination method {method!r}")
    return gf2_rank_sparse(rows) if len(rows) >= DENSE_LIMIT else gf2_rank_dense(rows)


@dataclass(frozen=True)
class ChainComplex:
    """A finite GF(2) complex.

    ``differential[i]`` is the bitmask of generator indices appearing in the
    boundary of generator ``i``.  Squares to zero; validated on construction.
    """

    labels: tuple[str, ...]
    differential: tuple[int, ...]
    idempotents: tuple[frozenset, ...] | None = None

    def __post_init__(self):
        n = len(self.labels)
        if len(self.differential) != n:
            raise ValueError("differential size does not match generator count")
        if self.idempotents is not None and len(self.idempotents) != n:
            raise ValueError("idempotent decoration size mismatch")
        full = (1 << n) - 1
        for i, mask in enumerate(self.differential):
            if mask & ~full:
                raise ValueError(f"differential of generator {i} out of range")
            acc = 0
            for j in _bits(mask):
                acc ^= self.differential[j]
            if acc:
                raise ValueError("differential does not square to zero")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def apply(self, mask: int) -> int:
        acc = 0
        for j in _bits(mask):
            acc ^= self.differential[j]
        return acc

    def homology_rank(self, method: str = "auto") -> int:
        return homology_rank(self, method)

    def differential_rank(self, method: str = "auto") -> int:
        return gf2_rank(list(self.differential), method)

    def to_json(self) -> str:
        pairs = sorted(
            (i, j) for i, mask in enumerate(self.differential) for j in _bits(mask)
        )
        return json.dumps(
            {"generators": list(self.labels), "differential": pairs},
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "ChainComplex":
        data = json.loads(text)
        labels = tuple(data["generators"])
        diff = [0] * len(labels)
        for i, j in data["differential"]:
            diff[i] ^= 1 << j
        return ChainComplex(labels, tuple(diff))


def zero_complex(labels) -> ChainComplex:
    labels = tuple(labels)
    return ChainComplex(labels, (0,) * len(labels))


def homology_rank(c: ChainComplex, method: str = "auto") -> int:
    """dim ker D - rank D.  Over GF(2), ungraded, this is n - 2 rank D."""
    r = c.differential_rank(method)
    return c.rank - 2 * r


@dataclass(frozen=True)
class ChainMap:
    """A GF(2) chain map; ``matrix[i]`` is the target bitmask of source
    generator ``i``.  M D_src = D_tgt M is validated on construction."""

    source: ChainComplex
    target: ChainComplex
    matrix: tuple[int, ...]

    def __post_init__(self):
        if len(self.matrix) != self.source.rank:
            raise NotAChainMap("matrix size does not match source")
        full = (1 << self.target.rank) - 1
        for i, mask in enumerate(self.matrix):
            if mask & ~full:
                raise NotAChainMap(f"matrix row {i} out of range")
        for i in range(self.source.rank):
            md = 0
            for j in _bits(self.source.differential[i]):
                md ^= self.matrix[j]
            dm = self.target.apply(self.matrix[i])
            if md != dm:
                raise NotAChainMap(f"fails to commute on generator {i}")


def identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, tuple(1 << i for i in range(c.rank)))


def mapping_cone(f: ChainMap) -> ChainComplex:
    """Cone of a chain map: generators src + tgt, block differential
    [[D_src, 0], [M, D_tgt]]."""
    ns = f.source.rank
    labels = tuple(f"s:{l}" for l in f.source.labels) + tuple(
        f"t:{l}" for l in f.target.labels
    )
    diff = [f.source.differential[i] | (f.matrix[i] << ns) for i in range(ns)] + [
        f.target.differential[i] << ns for i in range(f.target.rank)
    ]
    idem = None
    if f.source.idempotents is not None and f.target.idempotents is not None:
        idem = f.source.idempotents + f.target.idempotents
    return ChainComplex(labels, tuple(diff), idem)
