"""Command-line verifier: builds test objects, runs check suites, reports.

Suites bundle the executable identities: `axioms` (simplicial identities,
chain-map property, comparison-map identities, unit coherence),
`bialgebra` (the strict compatibility of the two comparison maps),
`dold-kan` (adjunction triangles, structure transfer round trip),
`homotopy` (witness homotopies where identities hold only weakly),
`monoid` (chain algebras of simplicial rings).

Exit status: 0 all non-skipped checks pass, 1 at least one failure,
2 usage error, 3 internal error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time

from .chains import complex_from_diffs, solve_homotopy
from .doldkan import DoldKan, identity_functor_bialgebra_check
from .ezaw import (NormalizedCache, aw_map, aw_symmetry_defect,
                   bialgebra_check, shuffle_map, shuffle_symmetry_check,
                   unit_coherence_check)
from .intmat import IntMatrix
from .monoid import check_aw_multiplicative, ring_from_nerve, to_dga
from .report import VerificationReport
from .simplicial import (constant_z, free_on_nerve, free_on_standard_simplex,
                         validate)

SUITES = ("axioms", "bialgebra", "dold-kan", "homotopy", "monoid", "all")

CHECKS = {
    "axioms": ["simplicial-identities", "aw-chain-map", "nabla-chain-map",
               "aw-nabla-identity", "shuffle-symmetry", "unit-coherence",
               "aw-nabla-random"],
    "bialgebra": ["bialgebra"],
    "dold-kan": ["adjunction-triangles", "roundtrip-colax",
                 "gamma-retract", "identity-bialgebra"],
    "homotopy": ["nabla-aw", "aw-symmetry"],
    "monoid": ["ring-axioms", "dga-algebra", "aw-multiplicative"],
}


class UsageError(ValueError):
    pass


def _cyclic_table(m):
    return [[(i + j) % m for j in range(m)] for i in range(m)]


def parse_object(desc, max_level):
    """Materialize one descriptor of the object mini-language.

    delta:<p>         linearized standard p-simplex
    nerve:z<m>        linearized nerve of the cyclic group of order m
    const:Z           constant simplicial module Z
    complex:[r0,..;e;e;..]  inline chain complex: ranks, then one
                      row-major differential entry list per degree
    """
    if desc.startswith("delta:"):
        p = _int(desc[6:], desc)
        return "module", free_on_standard_simplex(p, max_level, name=desc)
    if desc.startswith("nerve:z"):
        m = _int(desc[7:], desc)
        if m < 1:
            raise UsageError(f"bad group order in {desc!r}")
        return "module", free_on_nerve(_cyclic_table(m), max_level,
                                       name=desc)
    if desc == "const:Z":
        a = constant_z(max_level)
        a.name = desc
        return "module", a
    if desc.startswith("complex:[") and desc.endswith("]"):
        return "complex", _parse_complex(desc, max_level)
    raise UsageError(f"unknown object descriptor {desc!r}")


def split_descriptors(text):
    """Split on commas that are not inside a bracketed complex literal."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
            continue
        depth += (ch == "[") - (ch == "]")
        cur.append(ch)
    out.append("".join(cur))
    return [t.strip() for t in out if t.strip()]


def _int(text, desc):
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"bad integer in descriptor {desc!r}") from None


def _parse_complex(desc, max_level):
    body = desc[len("complex:["):-1]
    parts = body.split(";")
    ranks = [_int(t, desc) for t in parts[0].split(",") if t != ""]
    if len(ranks) - 1 > max_level:
        raise UsageError(f"{desc!r} exceeds max level {max_level}")
    ranks = ranks + [0] * (max_level + 1 - len(ranks))
    diff_lists = parts[1:]
    diffs = []
    for n in range(1, max_level + 1):
        rows, cols = ranks[n - 1], ranks[n]
        entries = []
        if n - 1 < len(diff_lists) and diff_lists[n - 1].strip():
            entries = [_int(t, desc)
                       for t in diff_lists[n - 1].split(",")]
        if len(entries) not in (0, rows * cols):
            raise UsageError(
                f"{desc!r}: degree-{n} differential needs "
                f"{rows * cols} entries")
        data = {(i // cols, i % cols): v
                for i, v in enumerate(entries) if v}
        diffs.append(IntMatrix(rows, cols, data))
    try:
        return complex_from_diffs(ranks, diffs, name=desc)
    except (ValueError, AssertionError) as e:
        raise UsageError(f"{desc!r}: {e}") from None


# -- object grouping -------------------------------------------------

def _modules(objs):
    return [o for kind, o in objs if kind == "module"]


def _complexes(objs):
    return [o for kind, o in objs if kind == "complex"]


def _pairs(items):
    """Deterministic pairing: consecutive disjoint pairs, or the diagonal."""
    if not items:
        return []
    if len(items) == 1:
        return [(items[0], items[0])]
    return [(items[2 * i], items[2 * i + 1]) for i in range(len(items) // 2)]


def _skip(name, objects, reason):
    rep = VerificationReport(name, objects=objects, status="skipped",
                             reason=reason)
    return rep


def _timed(rep, t0):
    rep.elapsed = time.time() - t0
    return rep


def _equal_check(name, objects, top, lhs, rhs):
    rep = VerificationReport(name, objects=objects, max_level=top)
    for n in range(top + 1):
        diff = lhs.levels[n] - rhs.levels[n]
        if not diff.is_zero():
            key = min(diff.data)
            rep.fail(n, f"entry {key} @degree {n}",
                     lhs.levels[n][key], rhs.levels[n][key])
    return rep.finish()


def _chain_map_check(name, objects, f):
    rep = VerificationReport(name, objects=objects, max_level=f.valid_range)
    for n in range(1, f.valid_range + 1):
        defect = f.chain_map_defect(n)
        if not defect.is_zero():
            key = min(defect.data)
            rep.fail(n, f"d f - f d entry {key} @degree {n}",
                     defect[key], 0)
    return rep.finish()


def _identity_levels(name, objects, top, comp, ranks):
    rep = VerificationReport(name, objects=objects, max_level=top)
    for n in range(top + 1):
        diff = comp.levels[n] - IntMatrix.identity(ranks[n])
        if not diff.is_zero():
            key = min(diff.data)
            rep.fail(n, f"entry {key} @degree {n}",
                     comp.levels[n][key],
                     1 if key[0] == key[1] else 0)
    return rep.finish()


# -- suites ----------------------------------------------------------

def _norm_settings(config):
    if config.normalized is None:
        return (False, True)
    return (config.normalized,)


def run_axioms(config, objs):
    reports = []
    mods = _modules(objs)
    cache = NormalizedCache()
    want = config.want
    for a in mods:
        if want("simplicial-identities"):
            t0 = time.time()
            reports.append(_timed(validate(a), t0))
        if want("unit-coherence"):
            t0 = time.time()
            reports.append(_timed(unit_coherence_check(a), t0))
    for a, b in _pairs(mods):
        names = [a.name, b.name]
        top = a.max_degree
        for norm in _norm_settings(config):
            tag = "-normalized" if norm else ""
            if want("aw-chain-map"):
                t0 = time.time()
                f = aw_map(a, b, normalized=norm, verify=False, cache=cache)
                reports.append(_timed(_chain_map_check(
                    "aw-chain-map" + tag, names, f), t0))
            if want("nabla-chain-map"):
                t0 = time.time()
                f = shuffle_map(a, b, normalized=norm, verify=False,
                                cache=cache)
                reports.append(_timed(_chain_map_check(
                    "nabla-chain-map" + tag, names, f), t0))
            if want("shuffle-symmetry"):
                t0 = time.time()
                reports.append(_timed(shuffle_symmetry_check(
                    a, b, normalized=norm, cache=cache), t0))
            if want("aw-nabla-identity"):
                t0 = time.time()
                if not norm:
                    reports.append(_skip(
                        "aw-nabla-identity", names,
                        "holds on normalized chains only; the unnormalized "
                        "composite is merely homotopic to the identity "
                        "(see the homotopy suite)"))
                    continue
                f = aw_map(a, b, normalized=True, verify=False, cache=cache)
                g = shuffle_map(a, b, normalized=True, verify=False,
                                cache=cache)
                comp = f.compose(g)
                reports.append(_timed(_identity_levels(
                    "aw-nabla-identity", names, top, comp,
                    comp.source.ranks), t0))
        if want("aw-nabla-random"):
            t0 = time.time()
            rng = random.Random(config.seed)
            f = aw_map(a, b, normalized=True, verify=False, cache=cache)
            g = shuffle_map(a, b, normalized=True, verify=False, cache=cache)
            rep = VerificationReport("aw-nabla-random", objects=names,
                                     max_level=top)
            for trial in range(8):
                n = rng.randrange(top + 1)
                r = g.source.ranks[n]
                if r == 0:
                    continue
                v = IntMatrix(r, 1, {(i, 0): rng.randint(-9, 9)
                                     for i in range(r)})
                out = f.levels[n] @ (g.levels[n] @ v)
                if out != v:
                    key = min((out - v).data)
                    rep.fail(n, f"trial {trial} entry {key} @degree {n}",
                             out[key], v[key])
            reports.append(_timed(rep.finish(), t0))
    return reports


def run_bialgebra(config, objs):
    mods = _modules(objs)
    if not mods:
        return [_skip("bialgebra", [], "needs simplicial module objects")]
    four = [mods[i % len(mods)] for i in range(4)]
    reports = []
    for norm in _norm_settings(config):
        t0 = time.time()
        reports.append(_timed(
            bialgebra_check(*four, normalized=norm,
                            max_level=config.max_level), t0))
    return reports


def run_dold_kan(config, objs):
    reports = []
    dk = DoldKan()
    want = config.want
    mods = _modules(objs)
    cplxs = _complexes(objs)
    if want("adjunction-triangles"):
        for a in mods:
            t0 = time.time()
            reports.append(_timed(dk.triangle_check(a=a), t0))
        for c in cplxs:
            t0 = time.time()
            reports.append(_timed(dk.triangle_check(c=c), t0))
    if want("roundtrip-colax"):
        for a, b in _pairs(mods):
            t0 = time.time()
            rt = dk.roundtrip_colax(a, b)
            aw = aw_map(a, b, normalized=True, verify=False, cache=dk.cache)
            reports.append(_timed(_equal_check(
                "roundtrip-colax", [a.name, b.name], a.max_degree, rt, aw),
                t0))
    if want("gamma-retract"):
        for x, y in _pairs(cplxs):
            t0 = time.time()
            lax = dk.lax_on_gamma(x, y)
            colax = dk.colax_on_gamma(x, y)
            comp = dk.normalized_map(lax).compose(dk.normalized_map(colax))
            reports.append(_timed(_identity_levels(
                "gamma-retract", [x.name, y.name], x.max_degree, comp,
                comp.source.ranks), t0))
    if want("identity-bialgebra") and cplxs:
        four = [cplxs[i % len(cplxs)] for i in range(4)]
        t0 = time.time()
        reports.append(_timed(identity_functor_bialgebra_check(*four), t0))
    return reports


def _homotopy_report(name, objects, f, g):
    rep = VerificationReport(name, objects=objects,
                             max_level=min(f.valid_range, g.valid_range))
    h = solve_homotopy(f, g)
    if h is None:
        rep.fail(0, "no integral homotopy exists", "unsolvable", "witness")
    else:
        rows = []
        for n, m in enumerate(h.levels):
            ent = ",".join(f"({i},{j})={v}" for (i, j), v in m.entries())
            rows.append(f"h{n}[{m.nrows}x{m.ncols}]:{ent or '0'}")
        rep.reason = "homotopy " + "; ".join(rows)
    return rep.finish()


def run_homotopy(config, objs):
    reports = []
    mods = _modules(objs)
    cache = NormalizedCache()
    want = config.want
    for a, b in _pairs(mods):
        names = [a.name, b.name]
        if want("nabla-aw"):
            t0 = time.time()
            f = shuffle_map(a, b, verify=False).compose(
                aw_map(a, b, verify=False))
            reports.append(_timed(_homotopy_report(
                "nabla-aw", names, f,
                type(f).identity(f.source)), t0))
        if want("aw-symmetry"):
            t0 = time.time()
            lhs, rhs = aw_symmetry_defect(a, b, normalized=True, cache=cache)
            reports.append(_timed(_homotopy_report(
                "aw-symmetry", names, lhs, rhs), t0))
    return reports


def run_monoid(config, objs):
    reports = []
    want = config.want
    rings = []
    for kind, o in objs:
        if kind != "module" or not o.name.startswith("nerve:z"):
            continue
        m = int(o.name[7:])
        t0 = time.time()
        rep = VerificationReport("ring-axioms", objects=[o.name],
                                 max_level=o.max_degree)
        try:
            r = ring_from_nerve(_cyclic_table(m), o.max_degree, name=o.name)
            rings.append(r)
        except Exception as e:
            rep.fail(0, str(e), "invalid", "valid ring")
        if want("ring-axioms"):
            reports.append(_timed(rep.finish(), t0))
    if not rings:
        return reports + [_skip("dga-algebra", [],
                                "needs nerve:z<m> objects")]
    for r in rings:
        if want("dga-algebra"):
            for norm in _norm_settings(config):
                tag = "-normalized" if norm else ""
                t0 = time.time()
                rep = VerificationReport("dga-algebra" + tag,
                                         objects=[r.module.name],
                                         max_level=r.max_degree)
                try:
                    to_dga(r, normalized=norm)
                except Exception as e:
                    rep.fail(0, str(e), "invalid", "associative unital dga")
                reports.append(_timed(rep.finish(), t0))
    if want("aw-multiplicative"):
        for ra, rb in _pairs(rings):
            t0 = time.time()
            reports.append(_timed(check_aw_multiplicative(
                ra, rb, max_level=config.max_level), t0))
    return reports


RUNNERS = {
    "axioms": run_axioms,
    "bialgebra": run_bialgebra,
    "dold-kan": run_dold_kan,
    "homotopy": run_homotopy,
    "monoid": run_monoid,
}

DEFAULT_OBJECTS = {
    "axioms": "delta:1,delta:2",
    "bialgebra": "delta:1,delta:1,delta:1,delta:1",
    "dold-kan": "delta:1,delta:2,complex:[1,1;2],complex:[0,1]",
    "homotopy": "delta:1,delta:1",
    "monoid": "nerve:z2,nerve:z2",
}


class Config:
    def __init__(self, args):
        self.max_level = args.max_level
        self.seed = args.seed
        self.normalized = args.normalized
        self.check = args.check

    def want(self, name):
        return self.check is None or self.check == name


def build_parser():
    p = argparse.ArgumentParser(
        prog="dk-verify",
        description="Run exact verification suites for the simplicial "
                    "chain-level comparison maps.")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--objects",
                   help="comma-separated object descriptors "
                        "(delta:<p>, nerve:z<m>, const:Z, "
                        "complex:[ranks;entries;...])")
    p.add_argument("--max-level", type=int, default=3,
                   help="truncation degree for all objects (default 3)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--normalized", dest="normalized", action="store_true",
                   default=None, help="normalized chains only")
    g.add_argument("--unnormalized", dest="normalized",
                   action="store_false", help="unnormalized chains only")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized spot checks")
    p.add_argument("--check", help="run only the named check")
    p.add_argument("--list-checks", action="store_true")
    p.add_argument("--timings", action="store_true",
                   help="include elapsed times (makes output "
                        "run-dependent)")
    return p


def _emit(reports, fmt, out, timings=False):
    for rep in reports:
        if fmt == "json":
            record = rep.to_dict()
            if not timings:
                del record["elapsed_ms"]
            out.write(json.dumps(record) + "\n")
            continue
        head = (f"{rep.status.upper():<5} {rep.check_name} "
                f"[{','.join(rep.objects)}] max_level={rep.max_level}")
        if timings:
            head += f" ({rep.elapsed * 1000.0:.1f}ms)"
        out.write(head + "\n")
        if rep.status == "skipped" and rep.reason:
            out.write(f"      reason: {rep.reason}\n")
        if rep.status == "pass" and rep.reason:
            out.write(f"      {rep.reason}\n")
        for w in rep.witnesses:
            out.write(f"      witness @level {w.level}: {w.label}: "
                      f"left={w.left} right={w.right}\n")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    suites = ([args.suite] if args.suite != "all"
              else [s for s in SUITES if s != "all"])
    if args.list_checks:
        for s in suites:
            for name in CHECKS[s]:
                sys.stdout.write(f"{s}/{name}\n")
        return 0
    if args.max_level < 0:
        sys.stderr.write("usage error: --max-level must be >= 0\n")
        return 2
    config = Config(args)
    try:
        reports = []
        for s in suites:
            descs = (args.objects if args.objects is not None
                     else DEFAULT_OBJECTS[s])
            try:
                objs = [parse_object(d, args.max_level)
                        for d in split_descriptors(descs)]
            except UsageError as e:
                sys.stderr.write(f"usage error: {e}\n")
                return 2
            if args.check is not None and args.suite != "all" \
                    and args.check not in CHECKS[s]:
                sys.stderr.write(
                    f"usage error: unknown check {args.check!r} in "
                    f"suite {s!r}\n")
                return 2
            reports.extend(RUNNERS[s](config, objs))
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return 2
    except Exception as e:
        sys.stderr.write(f"internal error: {type(e).__name__}: {e}\n")
        return 3
    _emit(reports, args.format, sys.stdout, timings=args.timings)
    failed = any(r.status == "fail" for r in reports)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
