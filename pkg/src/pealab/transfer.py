"""Structure transfer along split coequalizers.

Given a parallel pair of difference-preserving maps f, g: A -> B and a
split fork exhibiting q: B -> Q as their coequalizer of bounded posets,
the splitting s: Q -> B is used to pull candidate difference tables onto
Q: the difference of an interval [x, y] of Q is q applied to the
corresponding difference of [s(x), s(y)] in B.  Well-definedness is then
verified globally (q must commute with the differences over every
interval of B) instead of being trusted, and the finished structure is
run through the full axiom checker.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InvalidStructure, TransferError
from .functors import interval_elements, interval_map, interval_poset
from .pdp import (
    PDPMorphism,
    PseudoDPoset,
    check_pdp,
    check_pdp_morphism,
    enumerate_pdp_morphisms,
)
from .posets import (
    BoundedPoset,
    PosetMorphism,
    SplitFork,
    check_morphism,
    coequalizer_posets,
    is_split_fork,
    iter_bits,
)
from .reports import Report, Violation


@dataclass(frozen=True)
class TransferResult:
    Qprime: PseudoDPoset
    qprime: PDPMorphism
    diagnostics: Report


def _validate_fork(f: PDPMorphism, g: PDPMorphism, fork: SplitFork) -> None:
    if f.source != g.source or f.target != g.target:
        raise InvalidStructure("the parallel pair does not share its boundaries")
    if fork.f != f.poset_map or fork.g != g.poset_map:
        raise InvalidStructure(
            "fork arrows do not underlie the given difference-preserving maps"
        )
    for name, m in (
        ("f", fork.f),
        ("g", fork.g),
        ("q", fork.q),
        ("s", fork.s),
        ("t", fork.t),
    ):
        if not check_morphism(m).ok:
            raise InvalidStructure(
                f"fork invalid: {name} is not a bounded-poset morphism"
            )
    if not check_pdp_morphism(f).ok or not check_pdp_morphism(g).ok:
        raise InvalidStructure(
            "fork invalid: the parallel pair must preserve the differences"
        )
    if not is_split_fork(fork):
        raise InvalidStructure("fork invalid: the split-fork equations fail")


def transfer_structure(
    f: PDPMorphism, g: PDPMorphism, fork: SplitFork
) -> TransferResult:
    """Equip the fork's coequalizer object with both differences.

    Raises InvalidStructure for a malformed fork and TransferError when
    the commutation or axiom verification fails (which cannot happen once
    the preconditions hold).
    """
    _validate_fork(f, g, fork)
    B = f.target
    Q = fork.Q
    n = Q.n
    slash = [[None] * n for _ in range(n)]
    bslash = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in iter_bits(Q.leq[x]):
            sx, sy = fork.s(x), fork.s(y)
            sv = B.slash[sy][sx]
            bv = B.bslash[sy][sx]
            if sv is None or bv is None:
                raise InvalidStructure(
                    "fork invalid: the source difference tables are incomplete"
                )
            slash[y][x] = fork.q(sv)
            bslash[y][x] = fork.q(bv)

    checked = 0
    for u, v in interval_elements(B.base):
        qu, qv = fork.q(u), fork.q(v)
        for name, tableB, tableQ in (("/", B.slash, slash), ("\\", B.bslash, bslash)):
            value = tableB[v][u]
            if value is None:
                raise InvalidStructure(
                    "fork invalid: the source difference tables are incomplete"
                )
            if tableQ[qv][qu] != fork.q(value):
                raise TransferError(
                    "not an absolute coequalizer over difference-preserving maps: "
                    f"{name} does not descend along the quotient at "
                    f"[{B.labels[u]},{B.labels[v]}]"
                )
            checked += 1

    Qprime = PseudoDPoset(
        Q,
        tuple(tuple(row) for row in slash),
        tuple(tuple(row) for row in bslash),
    )
    axiom_report = check_pdp(Qprime)
    if not axiom_report.ok:
        raise TransferError(
            "internal consistency: transferred structure fails the axioms: "
            + axiom_report.lines()[0]
        )
    qprime = PDPMorphism(B, Qprime, fork.q)
    q_report = check_pdp_morphism(qprime)
    if not q_report.ok:
        raise TransferError(
            "internal consistency: the quotient map does not preserve the "
            "transferred differences"
        )
    diagnostics = Report(
        "transfer",
        (),
        notes=(
            f"verified commutation of / and \\ over {checked // 2} source intervals",
            "transferred structure passes the axioms",
            "quotient map preserves both differences",
        ),
    )
    return TransferResult(Qprime, qprime, diagnostics)


def verify_coequalizer_psdpos(
    f: PDPMorphism, g: PDPMorphism, result: TransferResult, targets
) -> Report:
    """Check the universal property against a catalog of targets.

    For every target C and every difference-preserving h: B -> C that
    coequalizes the pair, exactly one difference-preserving e with
    e o q = h must exist.
    """
    B = f.target
    Qprime = result.Qprime
    qmap = result.qprime.poset_map
    violations = []
    pairs_checked = 0
    for idx, C in enumerate(targets):
        tag = f"#{idx}({','.join(C.labels)})"
        homs = enumerate_pdp_morphisms(B, C)
        factorizations = enumerate_pdp_morphisms(Qprime, C)
        for h in homs:
            hm = h.poset_map
            if f.poset_map.then(hm) != g.poset_map.then(hm):
                continue
            pairs_checked += 1
            mediators = [
                e for e in factorizations if qmap.then(e.poset_map) == hm
            ]
            if len(mediators) != 1:
                violations.append(
                    Violation(
                        "coequalizer",
                        (("target", tag), ("h", str(hm.map))),
                        f"{len(mediators)} difference-preserving factorizations",
                    )
                )
    return Report(
        "verify-coeq",
        tuple(violations),
        notes=(
            f"checked {pairs_checked} coequalizing maps over "
            f"{len(list(targets))} targets",
        ),
    )


def i_preserves_fork(fork: SplitFork) -> bool:
    """True iff the interval construction carries the fork to a coequalizer.

    The parallel pair and the quotient map are transported to interval
    posets, the coequalizer of the transported pair is recomputed from
    scratch, and the canonical comparison with the interval poset of Q
    must be an isomorphism.
    """
    if not is_split_fork(fork):
        raise InvalidStructure("not a split fork")
    interval_f = interval_map(fork.f)
    interval_g = interval_map(fork.g)
    interval_q = interval_map(fork.q)
    quotient, onto = coequalizer_posets(interval_f, interval_g)
    target = interval_poset(fork.Q)
    if quotient.n != target.n:
        return False
    comparison: list[int | None] = [None] * quotient.n
    for k in range(onto.source.n):
        cls = onto.map[k]
        image = interval_q.map[k]
        if comparison[cls] is None:
            comparison[cls] = image
        elif comparison[cls] != image:
            return False
    if any(v is None for v in comparison):
        return False
    if len(set(comparison)) != target.n:
        return False
    e = PosetMorphism(quotient, target, tuple(comparison))
    if not check_morphism(e).ok:
        return False
    inverse = [0] * target.n
    for k, v in enumerate(e.map):
        inverse[v] = k
    return check_morphism(PosetMorphism(target, quotient, tuple(inverse))).ok


def _sub_bounded_poset(B: BoundedPoset, carrier: list[int]) -> BoundedPoset:
    pos = {v: k for k, v in enumerate(carrier)}
    rows = []
    for a in carrier:
        row = 0
        for k, b in enumerate(carrier):
            if B.le(a, b):
                row |= 1 << k
        rows.append(row)
    return BoundedPoset(
        tuple(B.labels[v] for v in carrier),
        tuple(rows),
        pos[B.bottom],
        pos[B.top],
    )


def split_fork_from_idempotent(
    X: PseudoDPoset,
    idem: PDPMorphism,
    auto: PDPMorphism | None = None,
    shuffle: list[int] | None = None,
):
    """Split fork (auto, idem o auto) with Q the image of the idempotent.

    ``shuffle`` optionally permutes the carrier of Q to vary the quotient
    presentation.  Returns (f, g, fork) ready for transfer_structure.
    """
    B = X.base
    e = idem.poset_map
    if auto is None:
        phi = PDPMorphism(X, X, PosetMorphism(B, B, tuple(range(B.n))))
    else:
        phi = auto
    inv = [0] * B.n
    for k, v in enumerate(phi.map):
        inv[v] = k
    image = sorted(set(e.map))
    carrier = image if shuffle is None else [image[i] for i in shuffle]
    Q = _sub_bounded_poset(B, carrier)
    pos = {v: k for k, v in enumerate(carrier)}
    q = PosetMorphism(B, Q, tuple(pos[e.map[x]] for x in range(B.n)))
    s = PosetMorphism(Q, B, tuple(carrier))
    t = PosetMorphism(B, B, tuple(inv))
    g = PDPMorphism(X, X, phi.poset_map.then(e))
    fork = SplitFork(B, B, Q, phi.poset_map, g.poset_map, q, s, t)
    return phi, g, fork


def generate_split_forks(structures, count: int, seed: int):
    """Seeded sample of split forks over difference-preserving maps.

    Every structure contributes one fork per (idempotent endomorphism,
    automorphism) pair; sampling draws from that pool with replacement
    and randomly permutes the presentation of Q half of the time.
    """
    rng = random.Random(seed)
    pool = []
    for X in structures:
        endos = enumerate_pdp_morphisms(X, X)
        idems = [
            e for e in endos if e.poset_map.then(e.poset_map) == e.poset_map
        ]
        autos = []
        for phi in endos:
            if len(set(phi.map)) != X.n:
                continue
            inv = [0] * X.n
            for k, v in enumerate(phi.map):
                inv[v] = k
            back = PosetMorphism(X.base, X.base, tuple(inv))
            if check_pdp_morphism(PDPMorphism(X, X, back)).ok:
                autos.append(phi)
        for e in idems:
            for phi in autos:
                pool.append((X, e, phi))
    if not pool:
        raise InvalidStructure("no split forks available over these structures")
    out = []
    for _ in range(count):
        X, e, phi = pool[rng.randrange(len(pool))]
        image_size = len(set(e.map))
        shuffle = None
        if image_size > 1 and rng.random() < 0.5:
            shuffle = list(range(image_size))
            rng.shuffle(shuffle)
        out.append(split_fork_from_idempotent(X, e, phi, shuffle))
    return out
