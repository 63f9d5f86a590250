"""Command line interface: one binary, machine-readable reports.

Every subcommand produces a RunReport; ``--json`` writes it to a file as
canonical JSON (sorted keys, no timing) so identical inputs give
byte-identical reports.  Exit status is 0 iff every requested check passed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import corpus
from .diagrams import (
    analyze_diagram,
    cf_hat,
    euler_measure,
    maslov_index,
    parse_diagram,
    parse_domain,
)
from .homalg import ChainComplex, identity_map, mapping_cone
from .modules import (
    TypeDModule,
    box_tensor,
    check_typeA,
    check_typeD,
    load_module,
    mor_complex,
)
from .strands import (
    Algebra,
    check_algebra,
    consum_check,
    directedness_check,
    opposite_check,
)
from .surface import analyze_surface, arc_slide, parse_surface, serialize_surface


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    timing_ms: float | None = None

    def add_check(self, name: str, ok: bool, detail: str = ""):
        entry = {"name": name, "pass": bool(ok)}
        if detail:
            entry["detail"] = detail
        self.checks.append(entry)

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> str:
        # timing is measured but excluded from the canonical report so that
        # identical inputs produce byte-identical files
        data = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": self.checks,
            "pass": self.ok,
            "timing_ms": None,
        }
        return json.dumps(data, sort_keys=True, indent=1) + "\n"

    def human(self) -> str:
        lines = [f"command: {self.command}"]
        for k in sorted(self.results):
            lines.append(f"  {k}: {self.results[k]}")
        for c in self.checks:
            mark = "PASS" if c["pass"] else "FAIL"
            detail = f"  ({c['detail']})" if c.get("detail") else ""
            lines.append(f"  [{mark}] {c['name']}{detail}")
        if self.timing_ms is not None:
            lines.append(f"  time: {self.timing_ms:.0f} ms")
        lines.append("result: " + ("ok" if self.ok else "FAILED"))
        return "\n".join(lines)


def _hash_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _read(report: RunReport, path) -> str:
    report.inputs[str(path)] = _hash_file(path)
    return Path(path).read_text()


def _load_surface(report, path):
    return parse_surface(_read(report, path))


def _module_with_inputs(report, path):
    report.inputs[str(path)] = _hash_file(path)
    return load_module(path)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_validate(args, report):
    ds = _load_surface(report, args.surface)
    rep = analyze_surface(ds)
    report.results.update(
        genus=rep.genus,
        boundary_circles=rep.num_boundary_circles,
        faces=len(rep.faces),
        face_z_counts=[f.z_count for f in rep.faces],
        every_face_marked=rep.every_face_marked,
        single_disc_faces=rep.single_disc_faces,
        canonical=serialize_surface(ds),
    )
    report.add_check("valid-surface", True)


def _cmd_algebra(args, report):
    ds = _load_surface(report, args.surface)
    alg = Algebra.from_surface(ds, args.k)
    report.results["dimension"] = alg.dim
    report.results["idempotents"] = len(alg.idempotents())
    which = args.check or []
    if "all" in which:
        which = ["d2", "leibniz", "assoc", "closure", "idempotents", "op", "directed"]
    law_names = [c for c in which if c in ("d2", "leibniz", "assoc", "closure", "idempotents")]
    if law_names:
        rep = check_algebra(ds, args.k, checks=tuple(law_names))
        for name in law_names:
            report.add_check(name, rep.laws[name], "; ".join(rep.failures[:1]))
    if "op" in which:
        report.add_check("opposite", opposite_check(ds, args.k))
    if "directed" in which:
        report.results["directed"] = directedness_check(ds, args.k)
    if args.dump:
        Path(args.dump).write_text(json.dumps(alg.dump(), sort_keys=True) + "\n")
        report.results["dump"] = args.dump


def _cmd_op_check(args, report):
    ds = _load_surface(report, args.surface)
    ok, failures = opposite_check(ds, args.k, verbose=True)
    report.add_check("opposite", ok, "; ".join(failures[:2]))


def _cmd_consum(args, report):
    ds1 = _load_surface(report, args.surface1)
    ds2 = _load_surface(report, args.surface2)
    ok, failures = consum_check(ds1, ds2, args.k, args.z1, args.z2, verbose=True)
    report.add_check("connected-sum", ok, "; ".join(failures[:2]))


def _cmd_slide(args, report):
    ds = _load_surface(report, args.surface)
    out = arc_slide(ds, args.arc, args.over, args.end)
    text = serialize_surface(out)
    if args.out:
        Path(args.out).write_text(text + "\n")
    report.results["surface"] = text
    rep = analyze_surface(out)
    report.results["genus"] = rep.genus
    report.add_check("slide-valid", True)


def _cmd_hfhat(args, report):
    d = parse_diagram(_read(report, args.diagram))
    analyze_diagram(d)
    c = cf_hat(d)
    report.results["generators"] = c.rank
    report.results["rank"] = c.homology_rank()
    if args.complex:
        Path(args.complex).write_text(c.to_json() + "\n")
        report.results["complex"] = args.complex
    report.add_check("d-squared-zero", True)


def _cmd_euler(args, report):
    d = parse_diagram(_read(report, args.diagram))
    phi = parse_domain(_read(report, args.domain))
    e = euler_measure(d, phi)
    report.results["euler_measure"] = str(e)
    report.add_check("euler", True)


def _cmd_index(args, report):
    e = Fraction(args.e)
    mu = maslov_index(args.i, e, args.l, args.k)
    report.results["maslov_index"] = str(mu)
    report.add_check("index", True)


def _cmd_checkmod(args, report):
    m = _module_with_inputs(report, args.module)
    if isinstance(m, TypeDModule):
        rep = check_typeD(m)
        report.results["type"] = "D"
    else:
        rep = check_typeA(m)
        report.results["type"] = "A"
        report.results["j_max"] = m.j_max
    report.results["generators"] = len(m.generators)
    report.add_check("structure-equations", rep.ok, "; ".join(rep.failures[:2]))


def _cmd_pair(args, report):
    ma = _module_with_inputs(report, args.type_a)
    nd = _module_with_inputs(report, args.type_d)
    c = box_tensor(ma, nd)
    report.results["generators"] = c.rank
    if args.rank:
        report.results["rank"] = c.homology_rank()
    report.add_check("d-squared-zero", True)


def _cmd_mor(args, report):
    m1 = _module_with_inputs(report, args.module1)
    m2 = _module_with_inputs(report, args.module2)
    c = mor_complex(m1, m2)
    report.results["generators"] = c.rank
    if args.rank:
        report.results["rank"] = c.homology_rank()
    report.add_check("d-squared-zero", True)


def _cmd_suite(args, report):
    run_suite(report, max_arcs=args.max_arcs, seed=args.seed)


def run_suite(report: RunReport, max_arcs: int = 3, seed: int = 0):
    """The full acceptance corpus: algebra laws, opposite algebras, connected
    sums, directedness, the closed-diagram engine, module pairings, and
    randomized transform invariants."""
    surfaces = [
        (name, ds) for name, ds in corpus.corpus_surfaces() if ds.n_arcs <= max_arcs
        or name.startswith(("onedisc", "doublecover"))
    ]
    report.results["corpus_surfaces"] = len(surfaces)

    laws_ok, op_ok = True, True
    detail = []
    for name, ds in surfaces:
        for k in range(0, ds.n_arcs + 1):
            rep = check_algebra(ds, k)
            if not rep.ok:
                laws_ok = False
                detail.append(f"{name} k={k}")
            if not opposite_check(ds, k):
                op_ok = False
                detail.append(f"opposite {name} k={k}")
    report.add_check("algebra-laws", laws_ok, "; ".join(detail[:3]))
    report.add_check("opposite-algebras", op_ok)

    torus = corpus.torus_decoration()
    dims = [Algebra.from_surface(torus, k).dim for k in (0, 1, 2)]
    report.results["torus_dims"] = dims
    report.add_check("torus-dimensions", dims == [1, 8, 7])

    consum_ok = all(
        [
            consum_check(corpus.disc_with_arc(), corpus.disc_with_arc(), 1),
            consum_check(torus, corpus.disc(), 1),
            consum_check(torus, torus, 2),
        ]
    )
    report.add_check("connected-sums", consum_ok)

    directed_ok = all(
        directedness_check(corpus.double_cover_decoration(g), k)
        for g in (1, 2)
        for k in range(0, 2 * g + 2)
    ) and not directedness_check(torus, 1)
    report.add_check("directedness", directed_ok)

    ranks = {}
    d2_ok = True
    for name, fn in corpus.NAMED_DIAGRAMS.items():
        c = cf_hat(fn())
        ranks[name] = c.homology_rank()
    expected = {"s3": 1, "s1s2": 2, **{f"lens{p}": p for p in range(2, 8)}}
    report.results["diagram_ranks"] = ranks
    report.add_check("closed-engine-ranks", ranks == expected)

    pair_ok = True
    pdetail = []
    for name, ma, nd, mr, diag, rank in corpus.load_bundled_pairings():
        ok = (
            check_typeA(ma).ok
            and check_typeD(nd).ok
            and check_typeA(mr).ok
            and box_tensor(ma, nd).homology_rank() == rank
            and mor_complex(mr, ma).homology_rank() == rank
            and cf_hat(diag).homology_rank() == rank
        )
        if not ok:
            pair_ok = False
            pdetail.append(name)
    report.add_check("module-pairings", pair_ok, "; ".join(pdetail))

    rng = random.Random(seed)
    slides = 0
    slide_ok = True
    pool = [ds for _, ds in surfaces if ds.n_arcs >= 2]
    while slides < 100:
        ds = rng.choice(pool)
        options = []
        for i, arc in enumerate(ds.arcs):
            for end in arc:
                ci, ni = next(
                    (a, b)
                    for a, c in enumerate(ds.circles)
                    for b, t in enumerate(c)
                    if t == end
                )
                nxt = ds.circles[ci][(ni + 1) % len(ds.circles[ci])]
                if nxt != "z" and ds.arc_of(nxt) != i:
                    options.append((i, ds.arc_of(nxt), end))
        if not options:
            continue
        i, j, end = rng.choice(options)
        before = analyze_surface(ds)
        after = analyze_surface(arc_slide(ds, i, j, end))
        if (before.genus, before.num_boundary_circles) != (
            after.genus,
            after.num_boundary_circles,
        ):
            slide_ok = False
        slides += 1
    report.add_check("arc-slide-invariants", slide_ok)

    cone_ok = True
    for _ in range(100):
        na, nb = rng.randint(1, 6), rng.randint(0, 6)
        diff = [0] * (na + nb)
        for i in range(na):
            diff[i] = rng.getrandbits(nb) << na if nb else 0
        c = ChainComplex(tuple(f"g{i}" for i in range(na + nb)), tuple(diff))
        if mapping_cone(identity_map(c)).homology_rank() != 0:
            cone_ok = False
    report.add_check("cone-of-identity-acyclic", cone_ok)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="strandalg")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="FILE", help="write the report as canonical JSON")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add("validate", help="parse and analyze a surface file")
    p.add_argument("surface")
    p.set_defaults(fn=_cmd_validate)

    p = add("algebra", help="build the algebra of a surface")
    p.add_argument("surface")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dump", metavar="FILE")
    p.add_argument(
        "--check",
        action="append",
        choices=["all", "d2", "leibniz", "assoc", "closure", "idempotents", "op", "directed"],
    )
    p.set_defaults(fn=_cmd_algebra)

    p = add("op-check", help="opposite-algebra isomorphism check")
    p.add_argument("surface")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=_cmd_op_check)

    p = add("consum", help="boundary connected sum decomposition check")
    p.add_argument("surface1")
    p.add_argument("surface2")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--z1", type=int, default=0)
    p.add_argument("--z2", type=int, default=0)
    p.set_defaults(fn=_cmd_consum)

    p = add("slide", help="slide one arc over another")
    p.add_argument("surface")
    p.add_argument("--arc", type=int, required=True)
    p.add_argument("--over", type=int, required=True)
    p.add_argument("--end", required=True)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(fn=_cmd_slide)

    p = add("hfhat", help="homology rank of a nice closed diagram")
    p.add_argument("diagram")
    p.add_argument("--complex", metavar="FILE")
    p.set_defaults(fn=_cmd_hfhat)

    p = add("euler", help="Euler measure of a domain")
    p.add_argument("diagram")
    p.add_argument("domain")
    p.set_defaults(fn=_cmd_euler)

    p = add("index", help="index formula i + 2e - (l-1)k/2")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--e", required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=_cmd_index)

    p = add("checkmod", help="validate a module file")
    p.add_argument("module")
    p.set_defaults(fn=_cmd_checkmod)

    p = add("pair", help="box tensor of a type A and a type D file")
    p.add_argument("type_a")
    p.add_argument("type_d")
    p.add_argument("--rank", action="store_true")
    p.set_defaults(fn=_cmd_pair)

    p = add("mor", help="morphism complex of two type A files")
    p.add_argument("module1")
    p.add_argument("module2")
    p.add_argument("--rank", action="store_true")
    p.set_defaults(fn=_cmd_mor)

    p = add("suite", help="run the full acceptance corpus")
    p.add_argument("--max-arcs", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_suite)

    return ap


def run(argv) -> tuple[int, RunReport]:
    ap = build_parser()
    args = ap.parse_args(argv)
    report = RunReport(command=args.cmd)
    t0 = time.perf_counter()
    try:
        args.fn(args, report)
    except Exception as e:  # surface errors, module errors, file errors
        report.add_check("error", False, f"{type(e).__name__}: {e}")
    report.timing_ms = (time.perf_counter() - t0) * 1000
    if args.json:
        Path(args.json).write_text(report.to_json())
    return (0 if report.ok else 1), report


def main(argv=None) -> int:
    status, report = run(sys.argv[1:] if argv is None else argv)
    print(report.human())
    return status


if __name__ == "__main__":
    sys.exit(main())
