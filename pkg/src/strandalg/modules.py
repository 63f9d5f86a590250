"""Type A and type D modules over a strand algebra, and their pairings.

A type D module is a map from generators to algebra-tensor-generator sums
whose twisted differential squares to zero.  A type A module is a right
module with finitely many action operations m_{1+j}; coefficients form a
differential algebra, so the validator only needs relations up to a finite
input length.  The box tensor of a type A with a type D module is a finite
GF(2) chain complex; the morphism complex of two type A modules is computed
through a finite dual type D model (see mor_complex).
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .homalg import ChainComplex
from .strands import Algebra
from .surface import parse_surface

DEPTH_ENV = "STRANDALG_DELTA_DEPTH"
DEFAULT_DEPTH = 64


class ModuleFormatError(ValueError):
    pass


class IdempotentMismatch(ValueError):
    pass


class DepthExceeded(RuntimeError):
    """delta iteration passed the configured bound without vanishing."""


class TruncationUnsound(RuntimeError):
    """The finite morphism-complex model does not apply to this input."""


def _delta_depth(depth: int | None) -> int:
    if depth is not None:
        return depth
    return int(os.environ.get(DEPTH_ENV, DEFAULT_DEPTH))


def _same_algebra(a: Algebra, b: Algebra) -> bool:
    return (a.interval_arcs, a.k, a.n_arcs) == (b.interval_arcs, b.k, b.n_arcs)


@dataclass
class TypeDModule:
    """delta maps each generator to a GF(2) sum of (algebra basis, generator)
    pairs; entry labels run from the generator's idempotent to the target's."""

    algebra: Algebra
    generators: tuple[str, ...]
    idem: dict
    delta: dict

    def __post_init__(self):
        for x in self.generators:
            if len(self.idem[x]) != self.algebra.k:
                raise ModuleFormatError(f"idempotent of {x!r} has wrong size")
            for a, y in self.delta.get(x, frozenset()):
                if self.algebra.source_idempotent(a) != self.idem[x]:
                    raise IdempotentMismatch(f"delta entry of {x!r} starts off its idempotent")
                if self.algebra.target_idempotent(a) != self.idem[y]:
                    raise IdempotentMismatch(f"delta entry {x!r}->{y!r} ends off the target idempotent")

    def delta_of(self, x) -> frozenset:
        return self.delta.get(x, frozenset())


@dataclass
class TypeAModule:
    """ops[(x, (a_1, ..., a_j))] is the GF(2) sum of outputs of m_{1+j};
    only non-idempotent basis elements may appear as inputs, idempotents act
    strictly unitally."""

    algebra: Algebra
    generators: tuple[str, ...]
    idem: dict
    ops: dict

    def __post_init__(self):
        alg = self.algebra
        for x in self.generators:
            if len(self.idem[x]) != alg.k:
                raise ModuleFormatError(f"idempotent of {x!r} has wrong size")
        for (x, args), outs in self.ops.items():
            for a in args:
                if alg.is_idempotent_index(a):
                    raise ModuleFormatError("idempotent arguments are implicit (strict unitality)")
            if args:
                if alg.source_idempotent(args[0]) != self.idem[x]:
                    raise IdempotentMismatch(f"operation on {x!r} starts off its idempotent")
                for a, b in zip(args, args[1:]):
                    if alg.target_idempotent(a) != alg.source_idempotent(b):
                        raise IdempotentMismatch(f"operation on {x!r} has a non-composable argument chain")
            tail = alg.target_idempotent(args[-1]) if args else self.idem[x]
            for y in outs:
                if self.idem[y] != tail:
                    raise IdempotentMismatch(f"operation {x!r}->{y!r} lands off the idempotent")

    @property
    def j_max(self) -> int:
        return max((len(args) for (_, args) in self.ops), default=0)

    def evaluate(self, x, args) -> frozenset:
        """m_{1+j}(x, args) on basis-element arguments, extended strictly
        unitally over idempotents."""
        alg = self.algebra
        if any(alg.is_idempotent_index(a) for a in args):
            if len(args) == 1 and frozenset(alg.basis[args[0]].s) == self.idem[x]:
                return frozenset([x])
            return frozenset()
        return self.ops.get((x, tuple(args)), frozenset())


# ---------------------------------------------------------------------------
# file format


def _load_algebra(ref, base_dir) -> Algebra:
    surf = ref["surface"]
    if isinstance(surf, str):
        path = Path(base_dir or ".") / surf
        ds = parse_surface(path.read_text())
    else:
        ds = parse_surface(json.dumps(surf))
    return Algebra.from_surface(ds, int(ref["k"]))


def load_module(source, algebra: Algebra | None = None, base_dir=None):
    """Load a type A or type D module from a JSON file path, text, or dict."""
    if isinstance(source, (str, Path)) and str(source).lstrip().startswith("{"):
        data = json.loads(source)
    elif isinstance(source, (str, Path)):
        path = Path(source)
        data = json.loads(path.read_text())
        base_dir = base_dir or path.parent
    else:
        data = source
    if algebra is None:
        algebra = _load_algebra(data["algebra"], base_dir)

    gens = []
    idem = {}
    for g in data["generators"]:
        gens.append(g["name"])
        idem[g["name"]] = frozenset(g["idempotent"])
    if len(set(gens)) != len(gens):
        raise ModuleFormatError("duplicate generator names")

    kind = data["type"]
    if kind == "D":
        delta: dict = {g: set() for g in gens}
        for op in data.get("operations", ()):
            a = algebra.from_descriptor(op["alg"])
            (ai,) = a.support
            delta[op["from"]] ^= {(ai, op["to"])}
        return TypeDModule(algebra, tuple(gens), idem, {g: frozenset(v) for g, v in delta.items()})
    if kind == "A":
        ops: dict = {}
        for op in data.get("operations", ()):
            args = []
            for desc in op["alg"]:
                a = algebra.from_descriptor(desc)
                (ai,) = a.support
                args.append(ai)
            key = (op["from"], tuple(args))
            ops[key] = ops.get(key, frozenset()) ^ {op["to"]}
        ops = {k: v for k, v in ops.items() if v}
        return TypeAModule(algebra, tuple(gens), idem, ops)
    raise ModuleFormatError(f"unknown module type {kind!r}")


def dump_module(m, algebra_ref: dict) -> dict:
    alg = m.algebra
    data = {
        "algebra": algebra_ref,
        "generators": [
            {"name": g, "idempotent": sorted(m.idem[g])} for g in m.generators
        ],
    }
    if isinstance(m, TypeDModule):
        data["type"] = "D"
        data["operations"] = [
            {"from": x, "alg": alg.descriptor(alg.basis[a]), "to": y}
            for x in m.generators
            for a, y in sorted(m.delta_of(x), key=lambda t: (t[1], t[0]))
        ]
    else:
        data["type"] = "A"
        data["operations"] = [
            {"from": x, "alg": [alg.descriptor(alg.basis[a]) for a in args], "to": y}
            for (x, args), outs in sorted(m.ops.items(), key=lambda kv: (kv[0][0], kv[0][1]))
            for y in sorted(outs)
        ]
    return data


# ---------------------------------------------------------------------------
# validators


@dataclass
class ModuleCheckReport:
    ok: bool
    failures: list

    def __bool__(self):
        return self.ok


def check_typeD(n: TypeDModule) -> ModuleCheckReport:
    """Structure equation: differential of labels plus two-step compositions
    cancel on every generator."""
    alg = n.algebra
    failures = []
    for x in n.generators:
        acc: set = set()
        for a, y in n.delta_of(x):
            for da in alg.diff_basis(a):
                acc ^= {(da, y)}
            for b, z in n.delta_of(y):
                for c in alg.mul_basis(a, b):
                    acc ^= {(c, z)}
        if acc:
            failures.append(f"structure equation fails on {x!r}: residue {sorted(acc)}")
    return ModuleCheckReport(not failures, failures)


def _relation_terms(m: TypeAModule, x, args):
    alg = m.algebra
    acc: set = set()
    r = len(args)
    for i in range(r + 1):
        for y in m.evaluate(x, args[:i]):
            acc ^= {(y2,) for y2 in m.evaluate(y, args[i:])}
    for i in range(r):
        for b in alg.diff_basis(args[i]):
            acc ^= {(y,) for y in m.evaluate(x, args[:i] + (b,) + args[i + 1 :])}
    for i in range(r - 1):
        for c in alg.mul_basis(args[i], args[i + 1]):
            acc ^= {(y,) for y in m.evaluate(x, args[:i] + (c,) + args[i + 2 :])}
    return acc


def check_typeA(m: TypeAModule, max_inputs: int | None = None) -> ModuleCheckReport:
    """Module relations over the differential algebra, for all basis argument
    tuples of length <= max_inputs (default j_max + 1)."""
    alg = m.algebra
    depth = max_inputs if max_inputs is not None else m.j_max + 1
    failures = []
    for r in range(depth + 1):
        for x in m.generators:
            for args in itertools.product(range(alg.dim), repeat=r):
                res = _relation_terms(m, x, args)
                if res:
                    failures.append(f"relation fails on ({x!r}, {args}): residue {sorted(res)}")
                    if len(failures) > 4:
                        return ModuleCheckReport(False, failures)
    return ModuleCheckReport(not failures, failures)


def algebra_as_module(alg: Algebra) -> TypeAModule:
    """The algebra as a right module over itself (m1 = differential,
    m2 = product)."""
    gens = tuple(f"b{i}" for i in range(alg.dim))
    idem = {f"b{i}": alg.target_idempotent(i) for i in range(alg.dim)}
    ops: dict = {}
    for i in range(alg.dim):
        d = alg.diff_basis(i)
        if d:
            ops[(f"b{i}", ())] = frozenset(f"b{j}" for j in d)
        for a in alg.nonidempotent_indices():
            if alg.basis[i].t != alg.basis[a].s:
                continue
            out = alg.mul_basis(i, a)
            if out:
                ops[(f"b{i}", (a,))] = frozenset(f"b{j}" for j in out)
    return TypeAModule(alg, gens, idem, ops)


# ---------------------------------------------------------------------------
# pairings


def box_tensor(m: TypeAModule, n: TypeDModule, depth: int | None = None) -> ChainComplex:
    """Box tensor product: generators are idempotent-matched pairs, the
    differential feeds iterated delta chains of the type D side into the
    type A actions.  Iteration truncates at j_max; if the configured depth
    bound is hit first, DepthExceeded is raised."""
    if not _same_algebra(m.algebra, n.algebra):
        raise ModuleFormatError("box tensor of modules over different algebras")
    bound = _delta_depth(depth)
    jmax = m.j_max

    pairs = [
        (x, y) for x in m.generators for y in n.generators if m.idem[x] == n.idem[y]
    ]
    index = {p: i for i, p in enumerate(pairs)}

    diff = []
    for x, y in pairs:
        acc: set = set()
        for x2 in m.evaluate(x, ()):
            acc ^= {(x2, y)}
        chains = [((), y)]
        j = 0
        while chains and j < jmax:
            j += 1
            if j > bound:
                raise DepthExceeded(f"delta iteration exceeded depth {bound}")
            nxt = []
            for args, yy in chains:
                for a, y2 in n.delta_of(yy):
                    nxt.append((args + (a,), y2))
            chains = nxt
            for args, yy in chains:
                for x2 in m.evaluate(x, args):
                    acc ^= {(x2, yy)}
        mask = 0
        for p in acc:
            mask ^= 1 << index[p]
        diff.append(mask)

    labels = tuple(f"{x}|{y}" for x, y in pairs)
    idems = tuple(m.idem[x] for x, _ in pairs)
    return ChainComplex(labels, tuple(diff), idems)


def dual_type_d(m: TypeAModule) -> TypeDModule:
    """The action quiver of a dg type A module rewritten as a type D
    structure on the dual generators: an action m2(x, a) = y becomes a delta
    arrow x -> a (x) y, and m1 arrows are labelled by the idempotent."""
    if m.j_max > 1:
        raise TruncationUnsound("dual model needs a dg module (actions m_{1+j}, j <= 1)")
    alg = m.algebra
    delta: dict = {g: set() for g in m.generators}
    for (x, args), outs in m.ops.items():
        if len(args) == 0:
            lab = alg.idempotent_index(m.idem[x])
            for y in outs:
                delta[x] ^= {(lab, y)}
        else:
            for y in outs:
                delta[x] ^= {(args[0], y)}
    return TypeDModule(alg, m.generators, dict(m.idem), {g: frozenset(v) for g, v in delta.items()})


def nilpotence_order(alg: Algebra) -> int:
    """Smallest j such that all j-fold products of non-idempotent basis
    elements vanish; raises TruncationUnsound if there is none."""
    aplus = frozenset(alg.nonidempotent_indices())
    cur = aplus
    j = 1
    while cur:
        nxt = frozenset(
            c for i in cur for a in aplus for c in alg.mul_basis(i, a)
        )
        if nxt == cur:
            raise TruncationUnsound("non-idempotent basis elements are not nilpotent")
        cur = nxt
        j += 1
        if j > alg.dim + 1:
            raise TruncationUnsound("non-idempotent basis elements are not nilpotent")
    return j


def mor_complex(m1: TypeAModule, m2: TypeAModule, depth: int | None = None) -> ChainComplex:
    """Morphism complex of two type A modules over the same algebra.

    The naive bar-type complex Hom(M1 (x) A^j, M2) is infinite whenever the
    algebra has composable chains of every length, so the complex is computed
    through the finite dual model: the dual type D structure of M1 paired
    against M2.  Soundness requires the non-idempotent part of the algebra to
    be nilpotent and the dual of M1 to satisfy the type D structure equation;
    both are checked and TruncationUnsound is raised otherwise.
    """
    if not _same_algebra(m1.algebra, m2.algebra):
        raise ModuleFormatError("morphism complex of modules over different algebras")
    nilpotence_order(m1.algebra)
    dual = dual_type_d(m1)
    rep = check_typeD(dual)
    if not rep.ok:
        raise TruncationUnsound(
            "dual of the source module is not a type D structure: " + "; ".join(rep.failures)
        )
    return box_tensor(m2, dual, depth)
