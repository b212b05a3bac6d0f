"""Command-line surface.

Exit codes: 0 on pass/success, 1 on a verified violation (with a report),
2 on malformed input or an exceeded size bound.  Text reports end with a
single line ``RESULT: PASS|FAIL <verb>``; ``--json PATH`` additionally
writes a machine-readable summary.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .catalog import (
    catalog_pdps,
    enumerate_bounded_posets,
    results_obj,
    size_limit,
)
from .errors import FormatError, InvalidStructure, LimitExceeded, TransferError
from .functors import interval_poset, triple_poset
from .pdp import (
    PDPMorphism,
    PseudoDPoset,
    check_pdp,
    check_pdp_morphism,
    equalizer_pdp,
    product_pdp,
)
from .pea import (
    PseudoEffectAlgebra,
    check_pea,
    check_pea_morphism,
    induced_rows,
    is_commutative,
    pdp_to_pea,
    pea_to_pdp,
)
from .plmaps import find_band_violation, pl_noncommutativity_witness
from .posets import (
    BoundedPoset,
    SplitFork,
    check_morphism,
    coequalizer_bposets,
    enumerate_morphisms,
    find_isomorphism,
    is_split_fork,
    product_bposets,
    validate_bounded_poset,
)
from .reports import Report, Violation
from .transfer import (
    generate_split_forks,
    i_preserves_fork,
    transfer_structure,
    verify_coequalizer_psdpos,
)


class _Output:
    def __init__(self, verb: str, json_path=None):
        self.verb = verb
        self.json_path = json_path
        self.lines: list[str] = []
        self.payload: dict = {"verb": verb}

    def say(self, line: str) -> None:
        self.lines.append(line)

    def finish(self, ok: bool, code: int | None = None) -> int:
        code = (0 if ok else 1) if code is None else code
        self.payload["ok"] = ok
        self.payload["exit"] = code
        for line in self.lines:
            print(line)
        print(f"RESULT: {'PASS' if ok else 'FAIL'} {self.verb}")
        if self.json_path:
            Path(self.json_path).write_text(io.dumps(self.payload))
        return code


def _report_into(out: _Output, report: Report) -> bool:
    for line in report.lines():
        out.say(line)
    for note in report.notes:
        out.say(note)
    out.payload.setdefault("reports", []).append(report.to_obj())
    return report.ok


def _declared_order_violations(A: PseudoEffectAlgebra, declared: BoundedPoset):
    if tuple(induced_rows(A)) != declared.leq:
        return [
            Violation(
                "order",
                (),
                "declared covers disagree with the order induced by the addition",
            )
        ]
    return []


def _load_pdp_morphism(mf: io.MorphismFile, what: str) -> PDPMorphism:
    if not isinstance(mf.source, PseudoDPoset) or not isinstance(
        mf.target, PseudoDPoset
    ):
        raise FormatError(f"{what} needs difference tables on both ends")
    return PDPMorphism(mf.source, mf.target, mf.poset_map())


def _cmd_check(args) -> int:
    out = _Output("check", args.json)
    ok = True
    if args.pea:
        A = io.load_structure(args.pea)
        if not isinstance(A, PseudoEffectAlgebra):
            raise FormatError(f"{args.pea} does not carry an addition table")
        declared = validate_bounded_poset(
            A.labels, io.load_json(args.pea)["covers"]
        )
        report = check_pea(A)
        extra = _declared_order_violations(A, declared)
        report = Report(report.subject, report.violations + tuple(extra))
        ok = _report_into(out, report)
        if ok:
            out.say(f"pseudo effect algebra on {A.n} elements; "
                    f"commutative: {is_commutative(A)}")
    elif args.pdp:
        X = io.load_structure(args.pdp)
        if not isinstance(X, PseudoDPoset):
            raise FormatError(f"{args.pdp} does not carry difference tables")
        ok = _report_into(out, check_pdp(X))
        if ok:
            out.say(f"pseudo D-poset on {X.n} elements")
    elif args.bposet:
        structure = io.load_structure(args.bposet)
        base = io.base_of(structure)
        out.say(f"bounded poset on {base.n} elements "
                f"(bottom {base.labels[base.bottom]}, top {base.labels[base.top]})")
    elif args.morphism:
        mf = io.load_morphism(args.morphism)
        ok = _report_into(out, check_morphism(mf.poset_map()))
    elif args.pdp_morphism:
        h = _load_pdp_morphism(io.load_morphism(args.pdp_morphism), "check")
        ok = _report_into(out, check_pdp_morphism(h))
    elif args.pea_morphism:
        mf = io.load_morphism(args.pea_morphism)
        if not isinstance(mf.source, PseudoEffectAlgebra) or not isinstance(
            mf.target, PseudoEffectAlgebra
        ):
            raise FormatError("check needs addition tables on both ends")
        ok = _report_into(
            out, check_pea_morphism(mf.poset_map(), mf.source, mf.target)
        )
    elif args.plmap:
        f = io.load_plmap(args.plmap)
        hit = find_band_violation(f)
        if hit is not None:
            out.say(f"band violated: {hit}")
            out.payload["violation"] = {
                "point": str(hit.point),
                "value": str(hit.value),
            }
            ok = False
        else:
            out.say("map stays inside the band x <= f(x) <= 2x")
    elif args.fork:
        fork = _assemble_fork(io.load_fork(args.fork))
        ok = is_split_fork(fork)
        out.say("split-fork equations " + ("hold" if ok else "fail"))
    else:  # pragma: no cover - argparse enforces the group
        raise FormatError("nothing to check")
    return out.finish(ok)


def _assemble_fork(ff: io.ForkFile) -> SplitFork:
    f, g, q, s, t = (m.poset_map() for m in (ff.f, ff.g, ff.q, ff.s, ff.t))
    return SplitFork(f.source, f.target, q.target, f, g, q, s, t)


def _cmd_convert(args) -> int:
    out = _Output("convert", args.json)
    structure = io.load_structure(args.input)
    if args.to in ("interval", "triple"):
        base = io.base_of(structure)
        made = (interval_poset if args.to == "interval" else triple_poset)(base)
        obj = io.poset_obj(made)
        out.say(f"{args.to} poset on {made.n} elements (dump-only: "
                "derived posets need not be bounded)")
        text = io.dumps(obj)
        if args.output:
            Path(args.output).write_text(text)
            out.say(f"wrote {args.output}")
        else:
            out.say(text.rstrip("\n"))
        out.payload["structure"] = obj
        return out.finish(True)
    if isinstance(structure, PseudoEffectAlgebra):
        declared = validate_bounded_poset(
            structure.labels, io.load_json(args.input)["covers"]
        )
        if _declared_order_violations(structure, declared):
            raise InvalidStructure(
                "declared covers disagree with the order induced by the addition"
            )
        converted = pea_to_pdp(structure) if args.to == "pdp" else structure
    elif isinstance(structure, PseudoDPoset):
        converted = pdp_to_pea(structure) if args.to == "pea" else structure
    else:
        raise FormatError("input has no algebraic tables to convert")
    obj = io.structure_to_obj(converted)
    text = io.dumps(obj)
    if args.output:
        Path(args.output).write_text(text)
        out.say(f"wrote {args.output}")
    else:
        out.say(text.rstrip("\n"))
    out.payload["structure"] = obj
    return out.finish(True)


def _cmd_product(args) -> int:
    out = _Output("product", args.json)
    structures = [io.load_structure(p) for p in args.inputs]
    if any(isinstance(s, PseudoEffectAlgebra) for s in structures):
        structures = [
            pea_to_pdp(s) if isinstance(s, PseudoEffectAlgebra) else s
            for s in structures
        ]
    if all(isinstance(s, PseudoDPoset) for s in structures):
        result = product_pdp(structures)
        out.say(f"product pseudo D-poset on {result.n} elements")
    elif all(isinstance(s, BoundedPoset) for s in structures):
        result = product_bposets(structures)
        out.say(f"product bounded poset on {result.n} elements")
    else:
        raise FormatError("product inputs must all be of the same kind")
    obj = io.structure_to_obj(result)
    if args.output:
        Path(args.output).write_text(io.dumps(obj))
        out.say(f"wrote {args.output}")
    out.payload["structure"] = obj
    return out.finish(True)


def _cmd_equalize(args) -> int:
    out = _Output("equalize", args.json)
    f = _load_pdp_morphism(io.load_morphism(args.f), "equalize")
    g = _load_pdp_morphism(io.load_morphism(args.g), "equalize")
    E, inclusion = equalizer_pdp(f, g)
    out.say(f"equalizer carrier: {{{', '.join(E.labels)}}}")
    obj = io.structure_to_obj(E)
    if args.output:
        Path(args.output).write_text(io.dumps(obj))
        out.say(f"wrote {args.output}")
    out.payload["structure"] = obj
    out.payload["inclusion"] = inclusion.poset_map.label_map()
    return out.finish(True)


def _cmd_coequalize(args) -> int:
    out = _Output("coequalize", args.json)
    f = io.load_morphism(args.f).poset_map()
    g = io.load_morphism(args.g).poset_map()
    Q, q = coequalizer_bposets(f, g)
    out.say(f"coequalizer object on {Q.n} elements")
    out.say("quotient map: " + ", ".join(
        f"{k}->{v}" for k, v in q.label_map().items()
    ))
    obj = io.structure_to_obj(Q)
    if args.output:
        Path(args.output).write_text(io.dumps(obj))
        out.say(f"wrote {args.output}")
    out.payload["structure"] = obj
    out.payload["quotient"] = q.label_map()
    return out.finish(True)


def _fork_with_pdp_pair(ff: io.ForkFile):
    fork = _assemble_fork(ff)
    if not isinstance(ff.f.source, PseudoDPoset) or not isinstance(
        ff.f.target, PseudoDPoset
    ):
        raise FormatError("transfer needs difference tables on A and B")
    f = PDPMorphism(ff.f.source, ff.f.target, fork.f)
    g = PDPMorphism(ff.f.source, ff.f.target, fork.g)
    return f, g, fork


def _cmd_transfer(args) -> int:
    out = _Output("transfer", args.json)
    f, g, fork = _fork_with_pdp_pair(io.load_fork(args.fork))
    result = transfer_structure(f, g, fork)
    _report_into(out, result.diagnostics)
    obj = io.structure_to_obj(result.Qprime)
    if args.output:
        Path(args.output).write_text(io.dumps(obj))
        out.say(f"wrote {args.output}")
    out.payload["structure"] = obj
    return out.finish(True)


def _cmd_verify_coeq(args) -> int:
    out = _Output("verify-coeq", args.json)
    cap = size_limit()
    if args.max_target_n > cap or args.max_source_n > cap:
        raise LimitExceeded(
            f"requested sizes exceed the configured limit {cap}"
        )
    targets = catalog_pdps(args.max_target_n)
    if args.fork:
        triples = [_fork_with_pdp_pair(io.load_fork(args.fork))]
    else:
        sources = catalog_pdps(args.max_source_n)
        triples = generate_split_forks(sources, args.generate, args.seed)
        out.say(f"generated {len(triples)} split forks with seed {args.seed}")
    ok = True
    failures = 0
    for k, (f, g, fork) in enumerate(triples):
        result = transfer_structure(f, g, fork)
        report = verify_coequalizer_psdpos(f, g, result, targets)
        preserved = i_preserves_fork(fork)
        if not report.ok or not preserved:
            ok = False
            failures += 1
            out.say(f"fork #{k}: FAILED")
            _report_into(out, report)
            if not preserved:
                out.say(
                    "fork #%d: interval construction does not preserve the "
                    "coequalizer" % k
                )
    out.say(
        f"verified {len(triples)} forks against {len(targets)} targets "
        f"of size <= {args.max_target_n}; failures: {failures}"
    )
    out.payload["forks"] = len(triples)
    out.payload["targets"] = len(targets)
    out.payload["max_target_n"] = args.max_target_n
    out.payload["failures"] = failures
    return out.finish(ok)


def _cmd_enumerate(args) -> int:
    out = _Output("enumerate", args.json)
    summary = []
    if args.structures:
        obj = results_obj(args.n)
        per_n: dict[int, list[int]] = {}
        for entry in obj["entries"]:
            per_n.setdefault(entry["n"], []).append(entry["structure_count"])
        for n, counts in sorted(per_n.items()):
            out.say(
                f"n={n}: {len(counts)} bounded-poset classes, "
                f"structure counts {counts}"
            )
            summary.append({"n": n, "classes": len(counts), "structures": counts})
        noncomm = obj["noncommutative"]
        if noncomm["found"]:
            out.say(
                f"smallest noncommutative structure has {noncomm['size']} elements"
            )
        else:
            out.say(f"all structures up to {args.n} elements are commutative")
    else:
        classes = {
            n: enumerate_bounded_posets(n) for n in range(1, args.n + 1)
        }
        for n, posets in classes.items():
            out.say(f"n={n}: {len(posets)} bounded-poset classes")
            summary.append({"n": n, "classes": len(posets)})
        obj = {
            "schema": "pealab-catalog@1",
            "max_n": args.n,
            "entries": [
                {
                    "n": p.n,
                    "class_index": k,
                    "elements": list(p.labels),
                    "covers": [
                        [p.labels[a], p.labels[b]] for a, b in p.cover_pairs()
                    ],
                }
                for n, posets in classes.items()
                for k, p in enumerate(posets)
            ],
        }
    if args.output:
        Path(args.output).write_text(io.dumps(obj))
        out.say(f"wrote {args.output}")
    out.payload["summary"] = summary
    return out.finish(True)


def _cmd_hom(args) -> int:
    out = _Output("hom", args.json)
    P = io.base_of(io.load_structure(args.source))
    R = io.base_of(io.load_structure(args.target))
    morphisms = enumerate_morphisms(P, R)
    out.say(f"{len(morphisms)} bound-preserving isotone maps")
    for m in morphisms:
        out.say("  " + ", ".join(f"{k}->{v}" for k, v in m.label_map().items()))
    out.payload["count"] = len(morphisms)
    out.payload["maps"] = [m.label_map() for m in morphisms]
    return out.finish(True)


def _cmd_iso(args) -> int:
    out = _Output("iso", args.json)
    P = io.base_of(io.load_structure(args.source))
    R = io.base_of(io.load_structure(args.target))
    iso = find_isomorphism(P, R)
    if iso is None:
        out.say("not isomorphic")
        out.payload["isomorphic"] = False
        return out.finish(False)
    out.say("isomorphism: " + ", ".join(
        f"{k}->{v}" for k, v in iso.label_map().items()
    ))
    out.payload["isomorphic"] = True
    out.payload["map"] = iso.label_map()
    return out.finish(True)


def _cmd_witness_noncomm(args) -> int:
    out = _Output("witness-noncomm", args.json)
    f, g, report = pl_noncommutativity_witness()
    out.say(f"f: {io.plmap_to_obj(f)}")
    out.say(f"g: {io.plmap_to_obj(g)}")
    for line in report.lines():
        out.say(line)
    out.payload["f"] = io.plmap_to_obj(f)
    out.payload["g"] = io.plmap_to_obj(g)
    out.payload["forward_sum"] = io.plmap_to_obj(report.forward_sum)
    out.payload["violation"] = {
        "point": str(report.violation.point),
        "value": str(report.violation.value),
    }
    if args.output:
        Path(args.output).write_text(io.dumps(out.payload))
        out.say(f"wrote {args.output}")
    return out.finish(True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pealab",
        description="Finite-model workbench for pseudo effect algebras "
        "and pseudo D-posets",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--json", metavar="PATH",
                       help="write a machine-readable report to PATH")

    p = sub.add_parser("check", help="validate a structure, morphism or map")
    kinds = p.add_mutually_exclusive_group(required=True)
    kinds.add_argument("--pea", metavar="FILE")
    kinds.add_argument("--pdp", metavar="FILE")
    kinds.add_argument("--bposet", metavar="FILE")
    kinds.add_argument("--morphism", metavar="FILE")
    kinds.add_argument("--pdp-morphism", metavar="FILE")
    kinds.add_argument("--pea-morphism", metavar="FILE")
    kinds.add_argument("--plmap", metavar="FILE")
    kinds.add_argument("--fork", metavar="FILE")
    common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("convert", help="convert between addition and differences")
    p.add_argument("input", metavar="FILE")
    p.add_argument("--to", choices=("pea", "pdp", "interval", "triple"),
                   required=True)
    p.add_argument("-o", "--output", metavar="FILE")
    common(p)
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("product", help="finite product of structures")
    p.add_argument("inputs", metavar="FILE", nargs="*")
    p.add_argument("-o", "--output", metavar="FILE")
    common(p)
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("equalize", help="equalizer of two parallel morphisms")
    p.add_argument("f", metavar="F_FILE")
    p.add_argument("g", metavar="G_FILE")
    p.add_argument("-o", "--output", metavar="FILE")
    common(p)
    p.set_defaults(func=_cmd_equalize)

    p = sub.add_parser("coequalize", help="coequalizer of two parallel morphisms")
    p.add_argument("f", metavar="F_FILE")
    p.add_argument("g", metavar="G_FILE")
    p.add_argument("-o", "--output", metavar="FILE")
    common(p)
    p.set_defaults(func=_cmd_coequalize)

    p = sub.add_parser("transfer", help="equip a fork's coequalizer with differences")
    p.add_argument("--fork", metavar="FILE", required=True)
    p.add_argument("-o", "--output", metavar="FILE")
    common(p)
    p.set_defaults(func=_cmd_transfer)

    p = sub.add_parser("verify-coeq",
                       help="verify the universal property over catalog targets")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--fork", metavar="FILE")
    src.add_argument("--generate", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-target-n", type=int, default=4)
    p.add_argument("--max-source-n", type=int, default=5)
    common(p)
    p.set_defaults(func=_cmd_verify_coeq)

    p = sub.add_parser("enumerate", help="catalog small structures up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--structures", action="store_true",
                   help="also enumerate the addition tables per class")
    p.add_argument("-o", "--output", metavar="FILE")
    common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("hom", help="enumerate bound-preserving isotone maps")
    p.add_argument("source", metavar="SRC_FILE")
    p.add_argument("target", metavar="DST_FILE")
    common(p)
    p.set_defaults(func=_cmd_hom)

    p = sub.add_parser("iso", help="search for an order isomorphism")
    p.add_argument("source", metavar="SRC_FILE")
    p.add_argument("target", metavar="DST_FILE")
    common(p)
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("witness-noncomm",
                       help="emit the noncommutativity witness pair")
    p.add_argument("-o", "--output", metavar="FILE")
    common(p)
    p.set_defaults(func=_cmd_witness_noncomm)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    verb = args.verb
    try:
        return args.func(args)
    except (FormatError, LimitExceeded) as exc:
        print(f"error: {exc}")
        print(f"RESULT: FAIL {verb}")
        return 2
    except (InvalidStructure, TransferError) as exc:
        print(f"error: {exc}")
        print(f"RESULT: FAIL {verb}")
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
