"""The shipped fixture set, built from the generators.

``python -m simphom.builtin [DIR]`` rewrites the JSON files under
``simphom/fixtures``; tests check that the shipped files equal this output.
"""

from __future__ import annotations

import sys
from pathlib import Path

from . import catalog, serialize, simplicial as sx
from .groups import GroupHom, subgroup
from .simplicial import SimplicialHom, SimplicialSES, TruncatedSimplicialGroup

DEPTH = 3


def _hom(dom, cod, fn) -> GroupHom:
    return GroupHom(dom, cod, tuple(fn(x) for x in dom))


class _Builder:
    def __init__(self):
        self.groups: dict[str, object] = {}
        self.homs: dict[str, tuple[GroupHom, str, str]] = {}
        self.sgrps: dict[str, TruncatedSimplicialGroup] = {}
        self.shoms: dict[str, tuple[SimplicialHom, str, str]] = {}
        self.seqs: dict[str, tuple[SimplicialSES, str, str, str]] = {}
        self.complexes: dict[str, tuple[list[str], list[GroupHom]]] = {}

    def group(self, name, g):
        g.label = name
        self.groups[name] = g
        return g

    def sgrp(self, name, A: TruncatedSimplicialGroup):
        A = TruncatedSimplicialGroup(A.levels, A.faces, A.degeneracies, name)
        self.sgrps[name] = A
        return A

    def shom(self, name, f: SimplicialHom, dom: str, cod: str):
        assert f.dom.levels == self.sgrps[dom].levels and f.cod.levels == self.sgrps[cod].levels
        self.shoms[name] = (f, dom, cod)
        return f

    def ses(self, name, s: SimplicialSES, sub: str, total: str, quot: str):
        for part, key in ((s.sub, sub), (s.total, total), (s.quot, quot)):
            assert part.levels == self.sgrps[key].levels
        self.seqs[name] = (s, sub, total, quot)

    def documents(self) -> dict[str, dict]:
        return {
            "groups.json": {
                "groups": {k: serialize.group_to_json(g, k) for k, g in self.groups.items()},
                "homs": {k: serialize.hom_to_json(f, d, c) for k, (f, d, c) in self.homs.items()},
            },
            "chains.json": {
                "chainComplexes": {
                    k: {"objects": objs, "differentials": [{"map": list(d.map)} for d in ds]}
                    for k, (objs, ds) in self.complexes.items()
                },
            },
            "simplicial.json": {
                "simplicialGroups": {k: serialize.simplicial_to_json(A, k) for k, A in self.sgrps.items()},
            },
            "maps.json": {
                "simplicialHoms": {k: serialize.simplicial_hom_to_json(f, d, c) for k, (f, d, c) in self.shoms.items()},
                "sesList": {k: serialize.ses_to_json(s, a, b, c) for k, (s, a, b, c) in self.seqs.items()},
            },
        }


def build() -> dict[str, dict]:
    b = _Builder()
    c1 = b.group("0", catalog.cyclic(1))
    c2 = b.group("C2", catalog.cyclic(2))
    c3 = b.group("C3", catalog.cyclic(3))
    c4 = b.group("C4", catalog.cyclic(4))
    k4 = b.group("K4", catalog.klein_four())
    s3 = b.group("S3", catalog.symmetric(3))
    b.group("Q8", catalog.quaternion())
    b.group("D4", catalog.dihedral(4))

    a3_in_s3 = subgroup(s3, [x for x in s3 if s3.element_order(x) != 2])
    a3 = b.group("A3", a3_in_s3.carrier)
    sign_map = {x: (0 if x in set(a3_in_s3.element_set) else 1) for x in s3}
    sign = _hom(s3, c2, sign_map.__getitem__)
    mod2 = _hom(c4, c2, lambda x: x % 2)
    times2 = _hom(c2, c4, lambda x: 2 * x)
    a3_inc = a3_in_s3.into
    b.homs = {
        "C4toC2": (mod2, "C4", "C2"),
        "C2toC4": (times2, "C2", "C4"),
        "S3toC2": (sign, "S3", "C2"),
        "A3toS3": (a3_inc, "A3", "S3"),
    }

    two_c4 = _hom(c4, c4, lambda x: (2 * x) % 4)
    b.complexes = {
        "doublingC4": (["C4", "C4", "C4"], [two_c4, two_c4]),
        "concentratedS3": (["S3", "0", "0"], [GroupHom.zero(c1, s3), GroupHom.zero(c1, c1)]),
        "identityC3": (["C3", "C3"], [GroupHom.identity(c3)]),
    }

    N = DEPTH
    const = {k: b.sgrp(f"constant{k}", sx.constant(g, N)) for k, g in
             (("0", c1), ("C2", c2), ("C4", c4), ("S3", s3), ("A3", a3))}
    codC2 = b.sgrp("codiscreteC2", sx.codiscrete(c2, N))
    b.sgrp("codiscreteC2d4", sx.codiscrete(c2, 4))
    codC3 = b.sgrp("codiscreteC3", sx.codiscrete(c3, N))
    codC4 = b.sgrp("codiscreteC4", sx.codiscrete(c4, N))
    codS3 = b.sgrp("codiscreteS3", sx.codiscrete(s3, 2))
    nrv = {k: b.sgrp(f"nerve{k}", sx.nerve(g, N)) for k, g in (("C2", c2), ("C3", c3), ("C4", c4), ("K4", k4))}
    P, pa, pb = sx.product_of(nrv["C2"], const["S3"])
    P = b.sgrp("nerveC2xConstantS3", P)
    diag = sx.diagonal(c2, N)
    Q, q = sx.levelwise_quotient(codC2, diag)
    Q = b.sgrp("codiscreteC2ModDiagonal", Q)
    b.sgrp("constant0d2", sx.constant(c1, 2))

    for key, A in (("CodiscreteC2", codC2), ("NerveC4", nrv["C4"])):
        b.sgrp(f"{key[0].lower()}{key[1:]}Minus", sx.shift_minus(A))
        b.sgrp(f"{key[0].lower()}{key[1:]}d2", sx.truncate(A, 2))
        L, _ = sx.lambda_of(A)
        b.sgrp(f"lambda{key}", L)

    def retag(f: SimplicialHom, dom: str, cod: str) -> SimplicialHom:
        return SimplicialHom(b.sgrps[dom], b.sgrps[cod], f.level_maps)

    for name in ("codiscreteC2", "nerveC2", "constantS3", "nerveC2xConstantS3"):
        b.shom(f"id_{name}", sx.identity_hom(b.sgrps[name]), name, name)

    def to_point(A, point="constant0"):
        target = b.sgrps[point]
        return SimplicialHom(A, target, [GroupHom.zero(g, target.levels[0]) for g in A.levels])

    b.shom("codiscreteC2ToPoint", to_point(codC2), "codiscreteC2", "constant0")
    b.shom("codiscreteC3ToPoint", to_point(codC3), "codiscreteC3", "constant0")
    b.shom("codiscreteS3ToPoint", to_point(codS3, "constant0d2"), "codiscreteS3", "constant0d2")
    b.shom("nerveC4ToNerveC2", sx.nerve_map(mod2, N, nrv["C4"], nrv["C2"]), "nerveC4", "nerveC2")
    b.shom("nerveC2ToNerveC4", sx.nerve_map(times2, N, nrv["C2"], nrv["C4"]), "nerveC2", "nerveC4")
    b.shom("codiscreteC4ToCodiscreteC2", sx.codiscrete_map(mod2, N, codC4, codC2), "codiscreteC4", "codiscreteC2")
    b.shom("constantC4ToConstantC2", sx.constant_map(mod2, N, const["C4"], const["C2"]), "constantC4", "constantC2")
    b.shom("constantS3ToConstantC2", sx.constant_map(sign, N, const["S3"], const["C2"]), "constantS3", "constantC2")
    b.shom("constant0ToConstantC2", sx.constant_map(GroupHom.zero(c1, c2), N, const["0"], const["C2"]),
           "constant0", "constantC2")
    diag_inc = SimplicialHom(const["C2"], codC2, [e.into for e in diag])
    b.shom("diagonalConstantC2ToCodiscreteC2", diag_inc, "constantC2", "codiscreteC2")
    b.shom("codiscreteC2ToQuotient", retag(q, "codiscreteC2", "codiscreteC2ModDiagonal"),
           "codiscreteC2", "codiscreteC2ModDiagonal")
    b.shom("quotientToPoint", to_point(Q), "codiscreteC2ModDiagonal", "constant0")
    b.shom("productToNerveC2", retag(pa, "nerveC2xConstantS3", "nerveC2"), "nerveC2xConstantS3", "nerveC2")
    b.shom("productToConstantS3", retag(pb, "nerveC2xConstantS3", "constantS3"), "nerveC2xConstantS3", "constantS3")
    for key in ("codiscreteC2", "nerveC4"):
        b.shom(f"{key}FirstFace", retag(sx.first_face_hom(b.sgrps[key]), f"{key}Minus", f"{key}d2"),
               f"{key}Minus", f"{key}d2")

    def add_ses(name, inc: SimplicialHom, proj: SimplicialHom, sub, total, quot):
        s = sx.validate_ses(retag(inc, sub, total), retag(proj, total, quot), name)
        b.ses(name, s, sub, total, quot)

    add_ses("constantC2C4C2", sx.constant_map(times2, N, const["C2"], const["C4"]),
            sx.constant_map(mod2, N, const["C4"], const["C2"]), "constantC2", "constantC4", "constantC2")
    add_ses("constantA3S3C2", sx.constant_map(a3_inc, N, const["A3"], const["S3"]),
            sx.constant_map(sign, N, const["S3"], const["C2"]), "constantA3", "constantS3", "constantC2")
    add_ses("nerveC2C4C2", sx.nerve_map(times2, N, nrv["C2"], nrv["C4"]),
            sx.nerve_map(mod2, N, nrv["C4"], nrv["C2"]), "nerveC2", "nerveC4", "nerveC2")
    add_ses("codiscreteC2C4C2", sx.codiscrete_map(times2, N, codC2, codC4),
            sx.codiscrete_map(mod2, N, codC4, codC2), "codiscreteC2", "codiscreteC4", "codiscreteC2")
    add_ses("diagonalCodiscreteC2", diag_inc, q, "constantC2", "codiscreteC2", "codiscreteC2ModDiagonal")
    for key in ("CodiscreteC2", "NerveC4"):
        low = f"{key[0].lower()}{key[1:]}"
        L, inc = sx.lambda_of(b.sgrps[low])
        add_ses(f"lambda{key}", inc, sx.first_face_hom(b.sgrps[low]), f"lambda{key}", f"{low}Minus", f"{low}d2")
    # constant(S3) sits inside the product as the kernel of the first projection
    s3_in_p = SimplicialHom(const["S3"], P, [
        GroupHom(s3, P.levels[n], tuple(_pair_index(s3.order, 0, x) for x in s3)) for n in range(N + 1)
    ])
    add_ses("productNerveC2ConstantS3", s3_in_p, pa, "constantS3", "nerveC2xConstantS3", "nerveC2")
    return b.documents()


def _pair_index(n_second: int, a: int, x: int) -> int:
    # lexicographic index of (a, x) in a two-factor product
    return a * n_second + x


def write(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name, doc in build().items():
        p = directory / name
        p.write_text(serialize.canonical_dumps(doc), encoding="utf-8")
        out.append(p)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    target = Path(argv[0]) if argv else serialize.builtin_fixture_dir()
    for p in write(target):
        print(p)


if __name__ == "__main__":
    main()
