"""The finite strand algebra of a decorated surface.

For a decorated surface with n arcs and 0 <= k <= n, the algebra has a basis
of matched chord tuples: a source k-subset s of arcs, a target k-subset t, a
bijection f between them, and for each arc of s either a boundary chord ending
on the matched arc or (when fixed by f) an identity marker.  Each basis
element expands into 2^(#markers) unmatched strand diagrams, one horizontal
strand per marker placed at either endpoint of its arc; the differential and
product are computed on the diagrams (crossing resolution dropping the
inversion count by exactly one; composition with additive inversion count) and
contracted back to the matched basis.

Nothing here looks at the complement faces: the algebra depends only on the
intervals, the positions, and the matching.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import NamedTuple

from .surface import DecoratedSurface, analyze_surface, boundary_connected_sum, reverse_orientation


class NotInMatchedSpan(ValueError):
    """A GF(2) sum of strand diagrams is not a sum of matched expansions."""


class BasisElement(NamedTuple):
    s: tuple[int, ...]  # source arcs, sorted
    t: tuple[int, ...]  # target arcs, sorted
    f: tuple[int, ...]  # image of s[i] under the matching bijection
    assign: tuple  # per source arc: None for a marker, else the chord (p, q)

    @property
    def marked(self) -> tuple[int, ...]:
        return tuple(a for a, c in zip(self.s, self.assign) if c is None)

    def is_idempotent(self) -> bool:
        return all(c is None for c in self.assign)


def _sorted_diagram(strands) -> tuple:
    return tuple(sorted(strands))


class Algebra:
    """The algebra attached to an interval structure, a matching, and k."""

    def __init__(self, interval_arcs, k: int, n_arcs: int | None = None):
        """interval_arcs: per interval, the arc index at each position."""
        self.interval_arcs = tuple(tuple(iv) for iv in interval_arcs)
        arcs_seen = sorted({a for iv in self.interval_arcs for a in iv})
        self.n_arcs = n_arcs if n_arcs is not None else (max(arcs_seen) + 1 if arcs_seen else 0)
        if not 0 <= k <= self.n_arcs:
            raise ValueError(f"k={k} out of range for {self.n_arcs} arcs")
        self.k = k

        self.pos_interval: list[int] = []
        self.pos_index: list[int] = []
        self.pos_arc: list[int] = []
        for ii, iv in enumerate(self.interval_arcs):
            for idx, arc in enumerate(iv):
                self.pos_interval.append(ii)
                self.pos_index.append(idx)
                self.pos_arc.append(arc)
        self.n_positions = len(self.pos_arc)

        self.arc_positions: dict[int, tuple[int, ...]] = {}
        for p, a in enumerate(self.pos_arc):
            self.arc_positions.setdefault(a, ())
            self.arc_positions[a] += (p,)
        for a, ps in self.arc_positions.items():
            if len(ps) != 2:
                raise ValueError(f"arc {a} has {len(ps)} endpoint positions, expected 2")

        self.chords: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
        for ii, iv in enumerate(self.interval_arcs):
            ps = [p for p in range(self.n_positions) if self.pos_interval[p] == ii]
            for x in range(len(ps)):
                for y in range(x + 1, len(ps)):
                    p, q = ps[x], ps[y]
                    key = (self.pos_arc[p], self.pos_arc[q])
                    self.chords.setdefault(key, ())
                    self.chords[key] += ((p, q),)

        self.basis: tuple[BasisElement, ...] = tuple(self._enumerate_basis())
        self.index: dict[BasisElement, int] = {b: i for i, b in enumerate(self.basis)}
        self.blocks: dict[tuple, list[int]] = {}
        for i, b in enumerate(self.basis):
            self.blocks.setdefault((b.s, b.t), []).append(i)
        self._expansions: list[frozenset] = [self._expand(b) for b in self.basis]
        self._owner: dict[tuple, int] = {}
        for i, exp in enumerate(self._expansions):
            for d in exp:
                self._owner[d] = i
        self._diff: dict[int, frozenset] = {}
        self._mul: dict[tuple[int, int], frozenset] = {}

    @classmethod
    def from_surface(cls, ds: DecoratedSurface, k: int) -> "Algebra":
        arc_of = {}
        for i, (a, b) in enumerate(ds.arcs):
            arc_of[a] = i
            arc_of[b] = i
        interval_arcs = tuple(tuple(arc_of[t] for t in iv) for iv in ds.intervals())
        return cls(interval_arcs, k, n_arcs=ds.n_arcs)

    # -- basis -------------------------------------------------------------

    def chord_count(self) -> int:
        return sum(len(v) for v in self.chords.values())

    def _options(self, i: int, j: int):
        opts = [(p, q) for (p, q) in self.chords.get((i, j), ())]
        if i == j:
            opts.append(None)  # the identity marker
        return opts

    def _enumerate_basis(self):
        arcs = range(self.n_arcs)
        for s in itertools.combinations(arcs, self.k):
            for t in itertools.combinations(arcs, self.k):
                for image in itertools.permutations(t):
                    pools = [self._options(i, j) for i, j in zip(s, image)]
                    if any(not pool for pool in pools):
                        continue
                    for assign in itertools.product(*pools):
                        yield BasisElement(s, t, image, assign)

    def idempotent(self, s) -> "AlgebraElement":
        s = tuple(sorted(s))
        b = BasisElement(s, s, s, (None,) * len(s))
        return AlgebraElement(self, frozenset([self.index[b]]))

    def idempotents(self):
        return [self.idempotent(s) for s in itertools.combinations(range(self.n_arcs), self.k)]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, indices) -> "AlgebraElement":
        return AlgebraElement(self, frozenset(indices))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, frozenset())

    def from_descriptor(self, desc: dict) -> "AlgebraElement":
        """Resolve {"chords": [[p, q], ...], "markers": [arc, ...]} to a basis
        element."""
        s, f_map, assign_map = [], {}, {}
        for p, q in desc.get("chords", ()):
            if not (0 <= p < self.n_positions and 0 <= q < self.n_positions):
                raise ValueError(f"position out of range in chord ({p},{q})")
            i, j = self.pos_arc[p], self.pos_arc[q]
            if (p, q) not in self.chords.get((i, j), ()):
                raise ValueError(f"({p},{q}) is not a chord")
            if i in assign_map:
                raise ValueError(f"two chords start on arc {i}")
            s.append(i)
            f_map[i] = j
            assign_map[i] = (p, q)
        for a in desc.get("markers", ()):
            if a in assign_map:
                raise ValueError(f"arc {a} both marked and chorded")
            s.append(a)
            f_map[a] = a
            assign_map[a] = None
        s = tuple(sorted(s))
        if len(s) != self.k or len(set(s)) != len(s):
            raise ValueError(f"descriptor does not select {self.k} distinct arcs")
        b = BasisElement(s, tuple(sorted(f_map[i] for i in s)), tuple(f_map[i] for i in s), tuple(assign_map[i] for i in s))
        if b not in self.index:
            raise ValueError("descriptor is not a basis element")
        return AlgebraElement(self, frozenset([self.index[b]]))

    def descriptor(self, b: BasisElement) -> dict:
        return {
            "chords": sorted(list(c) for c in b.assign if c is not None),
            "markers": sorted(b.marked),
        }

    # -- strand diagrams ----------------------------------------------------

    def _expand(self, b: BasisElement) -> frozenset:
        fixed = [c for c in b.assign if c is not None]
        choice_arcs = b.marked
        out = []
        for pick in itertools.product(*(self.arc_positions[a] for a in choice_arcs)):
            out.append(_sorted_diagram(fixed + [(p, p) for p in pick]))
        return frozenset(out)

    def expand(self, b: BasisElement) -> frozenset:
        return self._expansions[self.index[b]]

    def inversions(self, diagram) -> int:
        inv = 0
        for (p1, q1), (p2, q2) in itertools.combinations(diagram, 2):
            if self.pos_interval[p1] != self.pos_interval[p2]:
                continue
            if (self.pos_index[p1] - self.pos_index[p2]) * (
                self.pos_index[q1] - self.pos_index[q2]
            ) < 0:
                inv += 1
        return inv

    def _resolutions(self, diagram):
        """Resolve each crossing; keep results whose inversion count drops by
        exactly one."""
        inv0 = self.inversions(diagram)
        strands = list(diagram)
        for x, y in itertools.combinations(range(len(strands)), 2):
            p1, q1 = strands[x]
            p2, q2 = strands[y]
            if self.pos_interval[p1] != self.pos_interval[p2]:
                continue
            if (self.pos_index[p1] - self.pos_index[p2]) * (
                self.pos_index[q1] - self.pos_index[q2]
            ) >= 0:
                continue
            out = list(strands)
            out[x] = (p1, q2)
            out[y] = (p2, q1)
            res = _sorted_diagram(out)
            if inv0 - self.inversions(res) == 1:
                yield res

    def _compose(self, d1, d2):
        if frozenset(q for _, q in d1) != frozenset(p for p, _ in d2):
            return None
        step = dict(d2)
        comp = _sorted_diagram((p, step[q]) for p, q in d1)
        if self.inversions(comp) != self.inversions(d1) + self.inversions(d2):
            return None
        return comp

    def interpret(self, diagram) -> BasisElement | None:
        """The unique basis element whose expansion contains the diagram, if
        any."""
        f_map, assign_map = {}, {}
        for p, q in diagram:
            if self.pos_interval[p] != self.pos_interval[q]:
                return None
            if self.pos_index[p] > self.pos_index[q]:
                return None
            i, j = self.pos_arc[p], self.pos_arc[q]
            if i in assign_map:
                return None
            if p == q:
                f_map[i] = i
                assign_map[i] = None
            else:
                f_map[i] = j
                assign_map[i] = (p, q)
        if len(set(f_map.values())) != len(f_map):
            return None
        s = tuple(sorted(f_map))
        b = BasisElement(s, tuple(sorted(f_map.values())), tuple(f_map[i] for i in s), tuple(assign_map[i] for i in s))
        return b if b in self.index else None

    def contract(self, diagrams) -> frozenset:
        """Express a GF(2) sum of diagrams in the matched basis.

        Matched expansions are pairwise disjoint, so membership in the span
        means the support is a disjoint union of full expansions; anything
        else raises NotInMatchedSpan.
        """
        rem = set(diagrams)
        out = set()
        while rem:
            d = max(rem)
            i = self._owner.get(d)
            if i is None:
                raise NotInMatchedSpan(f"diagram {d} matches no basis element")
            exp = self._expansions[i]
            if not exp <= rem:
                raise NotInMatchedSpan(f"expansion of basis element {i} only partially present")
            rem -= exp
            out.add(i)
        return frozenset(out)

    # -- operations ---------------------------------------------------------

    def diff_basis(self, i: int) -> frozenset:
        cached = self._diff.get(i)
        if cached is None:
            acc: set = set()
            for d in self._expansions[i]:
                for res in self._resolutions(d):
                    acc ^= {res}
            cached = self.contract(acc)
            self._diff[i] = cached
        return cached

    def mul_basis(self, i: int, j: int) -> frozenset:
        key = (i, j)
        cached = self._mul.get(key)
        if cached is None:
            a, b = self.basis[i], self.basis[j]
            if a.t != b.s:
                cached = frozenset()
            else:
                acc: set = set()
                for d1 in self._expansions[i]:
                    for d2 in self._expansions[j]:
                        comp = self._compose(d1, d2)
                        if comp is not None:
                            acc ^= {comp}
                cached = self.contract(acc)
            self._mul[key] = cached
        return cached

    def diff_support(self, support: frozenset) -> frozenset:
        acc: frozenset = frozenset()
        for i in support:
            acc ^= self.diff_basis(i)
        return acc

    def mul_support(self, sa: frozenset, sb: frozenset) -> frozenset:
        acc: frozenset = frozenset()
        for i in sa:
            for j in sb:
                acc ^= self.mul_basis(i, j)
        return acc

    def source_idempotent(self, i: int) -> frozenset:
        return frozenset(self.basis[i].s)

    def target_idempotent(self, i: int) -> frozenset:
        return frozenset(self.basis[i].t)

    def idempotent_index(self, arcs) -> int:
        s = tuple(sorted(arcs))
        return self.index[BasisElement(s, s, s, (None,) * len(s))]

    def is_idempotent_index(self, i: int) -> bool:
        return self.basis[i].is_idempotent()

    def nonidempotent_indices(self) -> list[int]:
        return [i for i in range(self.dim) if not self.basis[i].is_idempotent()]

    # -- dumps ---------------------------------------------------------------

    def dump(self) -> dict:
        """Basis descriptors, differential, and sparse product triples."""
        diff = [[i, sorted(self.diff_basis(i))] for i in range(self.dim) if self.diff_basis(i)]
        triples = []
        for i in range(self.dim):
            for j in range(self.dim):
                if self.basis[i].t != self.basis[j].s:
                    continue
                for out in sorted(self.mul_basis(i, j)):
                    triples.append([i, j, out])
        return {
            "k": self.k,
            "n_arcs": self.n_arcs,
            "basis": [
                {
                    "source": list(b.s),
                    "target": list(b.t),
                    "bijection": list(b.f),
                    **self.descriptor(b),
                }
                for b in self.basis
            ],
            "differential": diff,
            "product": triples,
        }


@dataclass(frozen=True)
class AlgebraElement:
    """A GF(2) formal sum of matched basis elements of a fixed algebra."""

    algebra: Algebra
    support: frozenset

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        assert self.algebra is other.algebra
        return AlgebraElement(self.algebra, self.support ^ other.support)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        assert self.algebra is other.algebra
        return AlgebraElement(self.algebra, self.algebra.mul_support(self.support, other.support))

    def diff(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.algebra.diff_support(self.support))

    def is_zero(self) -> bool:
        return not self.support

    def terms(self) -> list[BasisElement]:
        return sorted(self.algebra.basis[i] for i in self.support)

    def __repr__(self):
        if not self.support:
            return "0"
        return " + ".join(str(self.algebra.descriptor(b)) for b in self.terms())


# ---------------------------------------------------------------------------
# surface-level operations


def enumerate_chords(ds: DecoratedSurface) -> dict:
    """The chord table chi[i][j]: all positively oriented boundary chords from
    the endpoints of arc i to the endpoints of arc j."""
    alg = Algebra.from_surface(ds, 0)
    return dict(alg.chords)


def matched_basis(ds: DecoratedSurface, k: int) -> tuple[BasisElement, ...]:
    return Algebra.from_surface(ds, k).basis


@dataclass
class AlgebraCheckReport:
    dim: int
    idempotent_count: int
    laws: dict
    failures: list
    every_face_marked: bool

    @property
    def ok(self) -> bool:
        return all(self.laws.values())


def check_algebra(ds: DecoratedSurface, k: int, checks=("d2", "leibniz", "assoc", "closure", "idempotents")) -> AlgebraCheckReport:
    """Verify the differential-algebra laws over the whole basis."""
    alg = Algebra.from_surface(ds, k)
    laws: dict[str, bool] = {}
    failures: list[str] = []
    compat = [
        (i, j)
        for i in range(alg.dim)
        for j in range(alg.dim)
        if alg.basis[i].t == alg.basis[j].s
    ]

    if "closure" in checks:
        ok = True
        try:
            for i in range(alg.dim):
                alg.diff_basis(i)
            for i, j in compat:
                alg.mul_basis(i, j)
        except NotInMatchedSpan as e:
            ok = False
            failures.append(f"closure: {e}")
        laws["closure"] = ok

    if "d2" in checks:
        bad = [i for i in range(alg.dim) if alg.diff_support(alg.diff_basis(i))]
        laws["d2"] = not bad
        failures += [f"d2 fails on basis {i}" for i in bad[:3]]

    if "leibniz" in checks:
        bad = []
        for i, j in compat:
            lhs = alg.diff_support(alg.mul_basis(i, j))
            rhs = alg.mul_support(alg.diff_basis(i), frozenset([j])) ^ alg.mul_support(
                frozenset([i]), alg.diff_basis(j)
            )
            if lhs != rhs:
                bad.append((i, j))
        laws["leibniz"] = not bad
        failures += [f"leibniz fails on {p}" for p in bad[:3]]

    if "assoc" in checks:
        bad = []
        for i, j in compat:
            ij = alg.mul_basis(i, j)
            for l in range(alg.dim):
                if alg.basis[j].t != alg.basis[l].s:
                    continue
                lhs = alg.mul_support(ij, frozenset([l]))
                rhs = alg.mul_support(frozenset([i]), alg.mul_basis(j, l))
                if lhs != rhs:
                    bad.append((i, j, l))
        laws["assoc"] = not bad
        failures += [f"assoc fails on {t}" for t in bad[:3]]

    if "idempotents" in checks:
        ok = True
        idems = alg.idempotents()
        for a, b in itertools.product(idems, idems):
            prod = a * b
            expect = a.support if a.support == b.support else frozenset()
            if prod.support != expect:
                ok = False
                failures.append("idempotent orthogonality fails")
        unit = frozenset().union(*(e.support for e in idems)) if idems else frozenset()
        for i in range(alg.dim):
            if alg.mul_support(unit, frozenset([i])) != frozenset([i]) or alg.mul_support(
                frozenset([i]), unit
            ) != frozenset([i]):
                ok = False
                failures.append(f"unit law fails on basis {i}")
                break
        if len(idems) != comb(alg.n_arcs, k):
            ok = False
            failures.append("idempotent count differs from C(n, k)")
        laws["idempotents"] = ok

    return AlgebraCheckReport(
        dim=alg.dim,
        idempotent_count=len(alg.idempotents()),
        laws=laws,
        failures=failures,
        every_face_marked=analyze_surface(ds).every_face_marked,
    )


def _reversal_position_map(ds: DecoratedSurface, rds: DecoratedSurface):
    """Position correspondence induced by orientation reversal, via endpoint
    tokens."""
    tok_at = [t for iv in ds.intervals() for t in iv]
    rpos_of_tok = {t: p for p, t in enumerate(t for iv in rds.intervals() for t in iv)}
    return [rpos_of_tok[t] for t in tok_at]


def opposite_algebra_map(ds: DecoratedSurface, k: int):
    """(algebra, reversed algebra, basis map): the chord-reversal bijection
    from the basis of A(surface, k) onto the basis of the reversed surface's
    algebra, swapping source and target."""
    rds = reverse_orientation(ds)
    alg = Algebra.from_surface(ds, k)
    ralg = Algebra.from_surface(rds, k)
    pm = _reversal_position_map(ds, rds)

    def op_basis(b: BasisElement) -> int:
        f_map = {}
        assign_map = {}
        for i, j, c in zip(b.s, b.f, b.assign):
            f_map[j] = i
            assign_map[j] = None if c is None else (pm[c[1]], pm[c[0]])
        t = tuple(sorted(f_map))
        rb = BasisElement(t, b.s, tuple(f_map[j] for j in t), tuple(assign_map[j] for j in t))
        return ralg.index[rb]

    return alg, ralg, [op_basis(b) for b in alg.basis]


def opposite_check(ds: DecoratedSurface, k: int, verbose: bool = False):
    """Chord reversal is an isomorphism onto the opposite algebra: it
    intertwines differentials and transposes every structure constant."""
    failures: list[str] = []
    try:
        alg, ralg, op = opposite_algebra_map(ds, k)
    except KeyError:
        failures.append("basis reversal is not well defined")
        return (False, failures) if verbose else False
    if alg.dim != ralg.dim:
        failures.append("dimension mismatch")
    if len(set(op)) != alg.dim:
        failures.append("basis reversal is not a bijection")

    for i in range(alg.dim):
        lhs = frozenset(op[x] for x in alg.diff_basis(i))
        if lhs != ralg.diff_basis(op[i]):
            failures.append(f"differential not intertwined at basis {i}")
            break
    for i in range(alg.dim):
        for j in range(alg.dim):
            if alg.basis[i].t != alg.basis[j].s:
                continue
            lhs = frozenset(op[x] for x in alg.mul_basis(i, j))
            if lhs != ralg.mul_support(frozenset([op[j]]), frozenset([op[i]])):
                failures.append(f"product not transposed at ({i},{j})")
                break
        else:
            continue
        break

    ok = not failures
    return (ok, failures) if verbose else ok


def consum_check(ds1: DecoratedSurface, ds2: DecoratedSurface, k: int, z1: int = 0, z2: int = 0, verbose: bool = False):
    """The algebra of a boundary connected sum is the direct sum over
    k1 + k2 = k of tensor products of the summand algebras; checked as a
    basis bijection intertwining differential and product."""
    dsum = boundary_connected_sum(ds1, z1, ds2, z2)
    n1 = ds1.n_arcs
    asum = Algebra.from_surface(dsum, k)
    failures: list[str] = []

    tok_pos1 = {t: p for p, t in enumerate(tt for iv in ds1.intervals() for tt in iv)}
    tok_pos2 = {t: p for p, t in enumerate(tt for iv in ds2.intervals() for tt in iv)}
    sum_toks = [t for iv in dsum.intervals() for t in iv]

    def split_pos(p_sum: int):
        tok = sum_toks[p_sum]
        if tok.startswith("eL"):
            return 0, tok_pos1["e" + tok[2:]]
        return 1, tok_pos2["e" + tok[2:]]

    algs1 = {kk: Algebra.from_surface(ds1, kk) for kk in range(0, min(k, n1) + 1)}
    algs2 = {kk: Algebra.from_surface(ds2, kk) for kk in range(0, min(k, ds2.n_arcs) + 1) if k - kk <= n1}

    total = sum(
        algs1[k1].dim * algs2[k - k1].dim
        for k1 in algs1
        if (k - k1) in algs2
    )
    if total != asum.dim:
        failures.append(f"dimension {asum.dim} != direct-sum-of-tensors dimension {total}")

    def split_basis(b: BasisElement):
        """Split a sum-algebra basis element into its left/right parts."""
        parts = {0: ({}, {}), 1: ({}, {})}
        for i, j, c in zip(b.s, b.f, b.assign):
            side = 0 if i < n1 else 1
            f_map, assign_map = parts[side]
            off = 0 if side == 0 else n1
            if c is None:
                f_map[i - off] = i - off
                assign_map[i - off] = None
            else:
                sd1, p = split_pos(c[0])
                sd2, q = split_pos(c[1])
                if sd1 != side or sd2 != side:
                    return None
                f_map[i - off] = j - off
                assign_map[i - off] = (p, q)
        out = []
        for side in (0, 1):
            f_map, assign_map = parts[side]
            s = tuple(sorted(f_map))
            out.append(
                BasisElement(s, tuple(sorted(f_map.values())), tuple(f_map[i] for i in s), tuple(assign_map[i] for i in s))
            )
        return out

    pair_of: list[tuple[int, int, int]] = []  # (k1, index in A1, index in A2)
    for bi, b in enumerate(asum.basis):
        halves = split_basis(b)
        if halves is None:
            failures.append(f"basis element {bi} mixes sides")
            break
        b1, b2 = halves
        k1 = len(b1.s)
        a1, a2 = algs1.get(k1), algs2.get(k - k1)
        if a1 is None or a2 is None or b1 not in a1.index or b2 not in a2.index:
            failures.append(f"basis element {bi} does not split")
            break
        pair_of.append((k1, a1.index[b1], a2.index[b2]))
    if len(set(pair_of)) != asum.dim:
        failures.append("basis bijection is not injective")

    if not failures:
        for bi in range(asum.dim):
            k1, i1, i2 = pair_of[bi]
            a1, a2 = algs1[k1], algs2[k - k1]
            lhs = {pair_of[x] for x in asum.diff_basis(bi)}
            rhs = {(k1, y, i2) for y in a1.diff_basis(i1)} ^ {(k1, i1, y) for y in a2.diff_basis(i2)}
            if lhs != rhs:
                failures.append(f"differential not intertwined at {bi}")
                break

    if not failures:
        for bi in range(asum.dim):
            for bj in range(asum.dim):
                if asum.basis[bi].t != asum.basis[bj].s:
                    continue
                k1, i1, i2 = pair_of[bi]
                l1, j1, j2 = pair_of[bj]
                lhs = {pair_of[x] for x in asum.mul_basis(bi, bj)}
                if k1 != l1:
                    rhs = set()
                else:
                    a1, a2 = algs1[k1], algs2[k - k1]
                    rhs = {
                        (k1, u, v)
                        for u in a1.mul_basis(i1, j1)
                        for v in a2.mul_basis(i2, j2)
                    }
                if lhs != rhs:
                    failures.append(f"product not intertwined at ({bi},{bj})")
                    break
            else:
                continue
            break

    ok = not failures
    return (ok, failures) if verbose else ok


def directedness_check(ds: DecoratedSurface, k: int) -> bool:
    """True iff each hom(D_s, D_s) is spanned by its idempotent and the
    quiver of nonzero off-diagonal hom spaces is acyclic."""
    alg = Algebra.from_surface(ds, k)
    edges: dict[tuple, set] = {}
    for b in alg.basis:
        if b.is_idempotent():
            continue
        if b.s == b.t:
            return False
        edges.setdefault(b.s, set()).add(b.t)

    seen: dict[tuple, int] = {}  # 1 = on stack, 2 = done

    def dfs(v) -> bool:
        seen[v] = 1
        for w in edges.get(v, ()):
            state = seen.get(w)
            if state == 1 or (state is None and not dfs(w)):
                return False
        seen[v] = 2
        return True

    return all(dfs(v) for v in list(edges) if v not in seen)


def brute_force_dimension(ds: DecoratedSurface, k: int) -> int:
    """Independent dimension count: enumerate all upward strand diagrams whose
    sources and targets each meet k distinct arcs, and count the distinct
    matched interpretations."""
    alg = Algebra.from_surface(ds, k)
    per_interval: dict[int, list[int]] = {}
    for p in range(alg.n_positions):
        per_interval.setdefault(alg.pos_interval[p], []).append(p)

    seen = set()

    def extend(diagram, srcs_left, used_src_arcs, used_tgt_arcs):
        if not srcs_left:
            b = alg.interpret(_sorted_diagram(diagram))
            if b is not None:
                seen.add(b)
            return
        p, rest = srcs_left[0], srcs_left[1:]
        for q in per_interval[alg.pos_interval[p]]:
            if alg.pos_index[q] < alg.pos_index[p]:
                continue
            j = alg.pos_arc[q]
            if j in used_tgt_arcs:
                continue
            extend(diagram + [(p, q)], rest, used_src_arcs, used_tgt_arcs | {j})

    for arcs in itertools.combinations(range(alg.n_arcs), k):
        for pick in itertools.product(*(alg.arc_positions[a] for a in arcs)):
            extend([], list(pick), set(arcs), set())
    return len(seen)
