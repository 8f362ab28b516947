"""Command-line driver.

Predicate commands exit 0 when the property holds, 1 when it does not,
2 on a fault (two equivalent routes disagreeing) and 3 on usage or I/O
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import homotopy as ht, moore as mo
from .catalog import describe
from .groups import AxiomViolation, validate_group
from .serialize import ParseError, ValidationError, builtin_fixture_dir, canonical_dumps, load_fixtures
from .simplicial import IdentityViolation, check_identities, truncate, truncate_hom
from .suite import EXIT_FAILED, EXIT_FAULT, EXIT_OK, EXIT_USAGE, run_suite


class UsageError(Exception):
    pass


def _fmt_range(rng) -> str:
    return f"[{rng[0]},{rng[1]}]"


def _status(report) -> int:
    if report.faults:
        return EXIT_FAULT
    return EXIT_OK if report.verdict else EXIT_FAILED


class App:
    def __init__(self, args):
        self.args = args
        self._fs = None

    @property
    def fs(self):
        if self._fs is None:
            self._fs = load_fixtures(self.args.fixtures or builtin_fixture_dir())
        return self._fs

    def budget(self) -> mo.Budget:
        return mo.Budget(self.args.budget)

    def sgrp(self, name):
        try:
            A = self.fs.simplicial(name)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        if self.args.depth is not None:
            if not 1 <= self.args.depth <= A.depth:
                raise UsageError(f"--depth must be between 1 and {A.depth} for {name}")
            A = truncate(A, self.args.depth)
        return A

    def shom(self, name):
        try:
            f = self.fs.simplicial_hom(name)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        if self.args.depth is not None:
            if not 1 <= self.args.depth <= f.depth:
                raise UsageError(f"--depth must be between 1 and {f.depth} for {name}")
            f = truncate_hom(f, self.args.depth)
        return f

    def degree(self, A, default=None):
        n = self.args.n if self.args.n is not None else default
        if n is None:
            raise UsageError("--n is required")
        if not 0 <= n <= A.depth - 1:
            raise UsageError(f"--n must be in the certifiable range [0,{A.depth - 1}]")
        return n

    def emit(self, lines, report: dict | None = None):
        for line in lines:
            print(line)
        if self.args.out and report is not None:
            Path(self.args.out).write_text(canonical_dumps(report), encoding="utf-8")

    # ------------------------------------------------------------ commands

    def group_check(self):
        target = self.args.target
        p = Path(target)
        if p.suffix == ".json" and p.exists():
            raw = json.loads(p.read_text(encoding="utf-8"))
            if "table" not in raw:
                load_fixtures(p)
                self.emit([f"{p.name}: all fixtures valid"], {"check": "group", "file": str(p), "verdict": True})
                return EXIT_OK
            table, label = raw["table"], raw.get("label")
        else:
            if target not in self.fs.groups:
                raise UsageError(f"no group named {target!r}")
            g = self.fs.groups[target]
            table, label = [list(r) for r in g.table], target
        try:
            g = validate_group(table, label)
        except AxiomViolation as exc:
            self.emit([f"invalid: {exc.axiom} fails at {list(exc.witness)}"],
                      {"check": "group", "verdict": False, "axiom": exc.axiom, "witness": list(exc.witness)})
            return EXIT_FAILED
        self.emit([f"valid group of order {g.order} ({describe(g)})"],
                  {"check": "group", "verdict": True, "order": g.order, "type": describe(g)})
        return EXIT_OK

    def sgrp_check(self):
        A = self.sgrp(self.args.name)
        try:
            check_identities(A)
        except IdentityViolation as exc:
            self.emit([f"invalid: {exc}"], {"check": "simplicial", "verdict": False, "error": str(exc)})
            return EXIT_FAILED
        sizes = [g.order for g in A.levels]
        self.emit([f"valid simplicial group of depth {A.depth}, level orders {sizes}"],
                  {"check": "simplicial", "verdict": True, "depth": A.depth, "orders": sizes})
        return EXIT_OK

    def sgrp_moore(self):
        A = self.sgrp(self.args.name)
        data = mo.moore_data(A)
        c = data.complex
        lines, levels = [], []
        for n, g in enumerate(c.objects):
            im = len(set(c.d(n).map)) if n >= 1 else 1
            lines.append(f"N_{n} ≅ {describe(g)} (order {g.order})" + (f", d_{n} image order {im}" if n >= 1 else ""))
            levels.append({"degree": n, "order": g.order, "type": describe(g), "elements": list(data.subgroups[n].element_set)})
        self.emit(lines, {"check": "moore", "range": [0, A.depth], "levels": levels})
        return EXIT_OK

    def sgrp_homology(self):
        A = self.sgrp(self.args.name)
        degrees = [self.degree(A)] if self.args.n is not None else list(range(A.depth))
        data = mo.moore_data(A)
        lines, out = [], []
        for n in degrees:
            h = mo.moore_homology(A, n, data)
            lines.append(f"H_{n} ≅ {describe(h.group)} (order {h.order})")
            out.append({"degree": n, "order": h.order, "type": describe(h.group),
                        "classes": [sorted(f) for f in h.fibers()]})
        self.emit(lines, {"check": "homology", "range": [min(degrees), max(degrees)], "homology": out})
        return EXIT_OK

    def sgrp_nabla(self):
        A = self.sgrp(self.args.name)
        n = self.degree(A)
        nab = mo.nabla(A, n, self.budget())
        b = mo.boundary_into_nabla(A, n, nab)
        im = len(set(b.map))
        state = "surjective" if b.is_surjective else "not surjective"
        self.emit([f"∇_{n} has order {nab.order}; boundary image has order {im} ({state})"],
                  {"check": "nabla", "range": [n, n], "order": nab.order, "image_order": im,
                   "verdict": b.is_surjective})
        return EXIT_OK

    def sgrp_acyclic(self):
        A = self.sgrp(self.args.name)
        rep = ht.is_acyclic(A, self.budget())
        agree = "routes agree" if not rep.faults else "routes DISAGREE"
        rng = _fmt_range(rep.range)
        if rep.verdict:
            line = f"acyclic on range {rng} ({agree})"
        else:
            line = f"not acyclic on range {rng}: nonzero homology in degrees {rep.witnesses} ({agree})"
        self.emit([line], rep.to_json())
        return _status(rep)

    def sgrp_kan(self):
        A = self.sgrp(self.args.name)
        rep = ht.is_kan(A, self.budget())
        d = rep.details
        self.emit([f"{'Kan' if rep.verdict else 'not Kan'}: {d['filled']}/{d['horns']} horns filled on levels {_fmt_range(rep.range)}"],
                  rep.to_json())
        return _status(rep)

    def map_fibration(self):
        f = self.shom(self.args.name)
        rep = ht.is_kan_fibration(f, self.budget())
        d = rep.details
        self.emit([f"{'Kan fibration' if rep.verdict else 'not a Kan fibration'}: {d['solved']}/{d['instances']} lifting problems solved"],
                  rep.to_json())
        return _status(rep)

    def map_trivial_fibration(self):
        f = self.shom(self.args.name)
        rep = ht.is_acyclic_fibration(f, self.budget())
        word = "acyclic fibration" if rep.verdict else "not an acyclic fibration"
        agree = "cross-check agrees" if not rep.faults else "cross-check DISAGREES"
        self.emit([f"{word} on range {_fmt_range(rep.range)} ({agree})"], rep.to_json())
        return _status(rep)

    def map_weq(self):
        f = self.shom(self.args.name)
        rep = ht.weak_equivalence_verdict(f)
        word = "weak equivalence" if rep.verdict else f"not a weak equivalence (degrees {rep.witnesses})"
        agree = "" if "pi_bijective_degrees" not in rep.details else (
            " (homotopy route agrees)" if not rep.faults else " (homotopy route DISAGREES)")
        self.emit([f"{word} on range {_fmt_range(rep.range)}{agree}"], rep.to_json())
        return _status(rep)

    def seq_les(self):
        try:
            s = self.fs.ses(self.args.name)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        rep = ht.long_exact_sequence(s)
        lines = []
        for node, ok in zip(rep.nodes, rep.exact_at):
            label = f"H_{node['degree']}({node['object']}) ≅ {node['type']}"
            lines.append(f"{label:<24} {'exact' if ok else 'NOT exact'}")
        lines.append(f"H_0 tail {'surjective' if rep.tail_surjective else 'NOT surjective'}; "
                     f"connecting maps {'choice-independent' if all(rep.delta_independent) else 'choice-DEPENDENT'}")
        lines.append(("exact" if rep.exact else "not exact") + f" on range {_fmt_range(rep.verified_range)}")
        self.emit(lines, rep.to_json())
        if rep.faults:
            return EXIT_FAULT
        return EXIT_OK if rep.exact else EXIT_FAILED

    def verify_all(self):
        report = run_suite(self.args.fixtures, seed=self.args.seed, budget=self.args.budget, jobs=self.args.jobs)
        self.emit(report.summary_lines(), report.to_json(with_time=False))
        return report.exit_status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixtures", metavar="PATH", help="fixture directory or file (default: shipped fixtures)")
    common.add_argument("--out", metavar="PATH", help="write the JSON report here")
    common.add_argument("--n", type=int, metavar="INDEX", help="degree")
    common.add_argument("--depth", type=int, metavar="N", help="truncate fixtures to this depth first")
    common.add_argument("--seed", type=int, default=0, metavar="INT", help="seed for generated fixtures")
    common.add_argument("--budget", type=int, default=mo.DEFAULT_BUDGET, metavar="NODES", help="search node budget")

    parser = argparse.ArgumentParser(prog="simphom", description="Exhaustive checks on finite simplicial groups.")
    top = parser.add_subparsers(dest="group", required=True)

    def sub(parent, name, handler, arg=None, help_=None):
        p = parent.add_parser(name, parents=[common], help=help_)
        if arg:
            p.add_argument(arg)
        p.set_defaults(handler=handler)
        return p

    g = top.add_parser("group", help="finite groups").add_subparsers(dest="cmd", required=True)
    sub(g, "check", App.group_check, "target", "validate a group by label or JSON file")

    s = top.add_parser("sgrp", help="simplicial groups").add_subparsers(dest="cmd", required=True)
    sub(s, "check", App.sgrp_check, "name", "check the simplicial identities")
    sub(s, "moore", App.sgrp_moore, "name", "Moore complex")
    sub(s, "homology", App.sgrp_homology, "name", "homology (all certifiable degrees, or --n)")
    sub(s, "nabla", App.sgrp_nabla, "name", "cycle object and boundary map at --n")
    sub(s, "acyclic", App.sgrp_acyclic, "name", "acyclicity by both routes")
    sub(s, "kan", App.sgrp_kan, "name", "exhaustive horn filling")

    m = top.add_parser("map", help="simplicial homs").add_subparsers(dest="cmd", required=True)
    sub(m, "fibration", App.map_fibration, "name", "Kan fibration test")
    sub(m, "trivial-fibration", App.map_trivial_fibration, "name", "acyclic fibration test")
    sub(m, "weq", App.map_weq, "name", "weak equivalence verdict")

    q = top.add_parser("seq", help="short exact sequences").add_subparsers(dest="cmd", required=True)
    sub(q, "les", App.seq_les, "name", "long exact homology sequence")

    v = top.add_parser("verify", help="verification suite").add_subparsers(dest="cmd", required=True)
    p = sub(v, "all", App.verify_all, None, "run every invariant over the fixture set")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    app = App(args)
    try:
        return args.handler(app)
    except (UsageError, ParseError, ValidationError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except mo.EnumerationCap as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
