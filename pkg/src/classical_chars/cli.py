"""Command-line front end and batch verification driver.

Exit codes: 0 success, 1 property failure, 2 usage error, 3 cap abort.
"""
from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from math import factorial

from . import algebra, groupsim, howe, symbols, symfun
from .groupsim import CapExceeded, GroupSpec
from .symbols import Symbol

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    rank_cap: int = 12
    order_cap: int = groupsim.CLASS_SQUARE_CAP
    work_cap: int = groupsim.WORK_CAP
    format: str = "text"
    workers: int = 1
    report: str | None = None
    seed: int = 0

    def validate(self):
        if min(self.rank_cap, self.order_cap, self.work_cap, self.workers) <= 0:
            raise UsageError("caps and worker count must be positive")
        if self.format not in ("json", "csv", "text"):
            raise UsageError("format must be json, csv or text")


def read_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{ln}: expected key = value")
            k, v = (x.strip() for x in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def make_config(args) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        for k, v in read_config(args.config).items():
            if not hasattr(cfg, k):
                raise UsageError(f"unknown config key {k}")
            cur = getattr(cfg, k)
            setattr(cfg, k, int(v) if isinstance(cur, int) else v)
    for k in ("rank_cap", "order_cap", "work_cap", "format", "workers", "report", "seed"):
        v = getattr(args, k, None)
        if v is not None:
            setattr(cfg, k, v)
    cfg.validate()
    return cfg


def _ints(s: str) -> list[int]:
    try:
        return [int(x) for x in s.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"not a comma-separated integer list: {s!r}") from None


def _emit_rows(rows, header, fmt):
    if fmt == "json":
        print(json.dumps([dict(zip(header, r)) for r in rows], indent=1))
    elif fmt == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        for r in rows:
            print("  ".join(str(x) for x in r))


# ---------------------------------------------------------------------------
# mn


def cmd_mn(args, cfg) -> int:
    if args.action == "value":
        lam, rho = _ints(args.partition), _ints(args.cycles)
        if sum(lam) != sum(rho):
            raise UsageError("partition and cycle type have different sizes")
        print(symfun.mn_value(lam, rho))
    elif args.action == "table":
        t = symfun.char_table(args.n)
        if cfg.format == "csv":
            sys.stdout.write(t.to_csv())
        elif cfg.format == "json":
            print(json.dumps({"partitions": t.partitions, "classes": t.classes, "values": t.values}))
        else:
            for lam, row in zip(t.partitions, t.values):
                print(f"{str(lam):<24}", " ".join(f"{v:>4}" for v in row))
    else:
        if not (0 < args.a and 3 * args.a < args.n):
            raise UsageError("need 0 < a < n/3")
        rows = [(" ".join(map(str, lam)), v) for lam, v in symfun.nonvanishing_set(args.n, args.a, args.variant)]
        _emit_rows(rows, ["partition", "value"], cfg.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# symbols


def cmd_symbols(args, cfg) -> int:
    syms = symbols.enumerate_symbols(args.rank, args.defect, level_cap=args.level_cap)
    if cfg.format == "json":
        print(json.dumps([{**S.to_dict(), "defect": symbols.defect(S), "level": symbols.level(S)} for S in syms]))
    else:
        rows = [(" ".join(map(str, S.A)), " ".join(map(str, S.B)), symbols.defect(S), symbols.level(S)) for S in syms]
        _emit_rows(rows, ["A", "B", "defect", "level"], "csv" if cfg.format == "csv" else "text")
    return EXIT_OK


# ---------------------------------------------------------------------------
# howe


_FAMILY_SIDE = {"D": "O-even", "C": "SO-odd", "B": "Sp"}


def cmd_howe(args, cfg) -> int:
    if args.action == "map":
        try:
            with open(args.desc) as fh:
                desc = symbols.SeriesDescriptor.from_dict(json.load(fh))
        except (OSError, KeyError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read descriptor: {e}") from None
        side = args.side or _FAMILY_SIDE[desc.family]
        h = howe.howe_map(desc, side, enforce_hypothesis=not args.no_enforce)
        out = h.to_dict()
        out["compatible"] = howe.howe_compatible(h)
        print(json.dumps(out, indent=1, default=str))
        return EXIT_OK if out["compatible"] else EXIT_FAIL
    rows = []
    ok = True
    for n in range(args.rank + 1):
        for parity in ("even", "odd"):
            r = howe.check_main_piece(n, parity, max_level=args.max_level)
            rows.append((n, parity, r["checked"], len(r["failures"])))
            ok = ok and not r["failures"]
    _emit_rows(rows, ["rank", "parity", "checked", "failures"], args.report_format or cfg.format)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# group


def _spec_from(args) -> GroupSpec:
    return GroupSpec(args.family, args.n, args.q or 0)


def cmd_group(args, cfg) -> int:
    if args.action == "frobenius":
        x, y, g = (tuple(sorted(_ints(s))) for s in (args.x, args.y, args.g))
        N = sum(x)
        if sum(y) != N or sum(g) != N:
            raise UsageError("cycle types must have the same size")
        formula = groupsim.frobenius_count_formula_sn(N, x, y, g)
        G = groupsim.build_group(GroupSpec("S", N), cap=cfg.order_cap if cfg.order_cap >= factorial(N) else factorial(N))
        ct = groupsim.class_by_cycle_type(G)
        direct = groupsim.frobenius_count_direct(G, ct[x], ct[y], G.reps[ct[g]])
        print(json.dumps({"x": x, "y": y, "g": g, "formula": str(formula), "direct": direct,
                          "equal": formula == direct}))
        return EXIT_OK if formula == direct else EXIT_FAIL
    spec = _spec_from(args)
    cap = groupsim.CLASS_LIST_CAP if args.action == "build" else cfg.order_cap
    G = groupsim.build_group(spec, cap=cap)
    if args.action == "build":
        info = {"family": spec.family, "n": spec.n, "q": spec.q, "order": G.order,
                "expected_order": spec.expected_order, "classes": len(G.classes),
                "class_sizes": [len(c) for c in G.classes],
                "class_orders": [G.element_order(r) for r in G.reps]}
        print(json.dumps(info) if cfg.format == "json" else
              "\n".join(f"{k}: {v}" for k, v in info.items()))
        return EXIT_OK
    # coverage
    if args.matrix:
        rows = groupsim.coverage_matrix(G, workers=cfg.workers)
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["class"] + list(range(len(rows))))
        for i, r in enumerate(rows):
            w.writerow([i] + r)
        return EXIT_OK
    if args.cls is None or not 0 <= args.cls < len(G.classes):
        raise UsageError(f"--class must be a class index in [0, {len(G.classes)})")
    exclude = G.center() if args.exclude_center else None
    rep = groupsim.class_square_coverage(G, args.cls, exclude=exclude, workers=cfg.workers,
                                         work_cap=cfg.work_cap)
    print(json.dumps(rep.to_dict()))
    return EXIT_OK if rep.covered else EXIT_FAIL


# ---------------------------------------------------------------------------
# verification suites


@dataclass
class Property:
    name: str
    suite: str
    anchor: str
    status: str = "pending"
    counts: dict = field(default_factory=dict)
    seconds: float = 0.0


def _p_sn_tables(cfg):
    bad = 0
    for n in range(1, 9):
        t = symfun.char_table(n)
        sizes = [symfun.class_size(c) for c in t.classes]
        k = len(t.partitions)
        for i in range(k):
            for j in range(k):
                s = sum(sz * t.values[i][c] * t.values[j][c] for c, sz in enumerate(sizes))
                bad += s != (factorial(n) if i == j else 0)
                col = sum(t.values[r][i] * t.values[r][j] for r in range(k))
                bad += col != (factorial(n) // sizes[i] if i == j else 0)
        one = t.classes.index((1,) * n)
        bad += sum(t.values[i][one] != symfun.hook_length_degree(lam) for i, lam in enumerate(t.partitions))
    return bad == 0, {"mismatches": bad}


def _p_value_counts(cfg):
    from collections import defaultdict
    bad = cases = 0
    for N in range(4, 17):
        for a in range(1, N):
            if 3 * a >= N:
                break
            cases += 1
            xs = symfun.nonvanishing_set(N, a, "x")
            bad += len(xs) != a * (N - a)
            bad += any(v not in (-1, 1) for _, v in xs)
            by_b = defaultdict(list)
            for lam, _ in xs:
                by_b[N - lam[0]].append(lam)
            for b, lams in by_b.items():
                bad += len(lams) > 1 + a * (a + 1) // 2
                if b < a:
                    bad += lams != [symfun.hook_partition(N, b)]
            if a < 2:
                continue
            ys = symfun.nonvanishing_set(N, a, "y")
            bad += len(ys) != (2 * (N - 2) if a == 2 else (a - 1) * (N - a))
            bad += any(v not in (-1, 1) for _, v in ys)
            by_b = defaultdict(list)
            for lam, _ in ys:
                by_b[N - lam[0]].append(lam)
            for b in range(0, a - 1):
                want = [(N,)] if b == 0 else [] if b == 1 else [(N - b, 2) + (1,) * (b - 2)]
                bad += sorted(by_b.get(b, [])) != want
            bad += any(len(l) > a * a for l in by_b.values())
    return bad == 0, {"cases": cases, "failures": bad}


def _p_fast_growth(cfg):
    bad = n_types = 0
    for N in range(1, 15):
        for alpha in symfun.superincreasing_types(N):
            n_types += 1
            for lam in symfun.partitions(N):
                bad += symfun.mn_value(lam, alpha) not in (-1, 0, 1)
    return bad == 0, {"types": n_types, "failures": bad}


def _p_congruence(cfg):
    bad = n = 0
    for N in range(2, 9):
        for g in symfun.partitions(N):
            ls = {x for x in g if x != 1}
            if len(ls) != 1 or not algebra.is_prime(next(iter(ls))):
                continue
            for lam in symfun.partitions(N):
                n += 1
                bad += not symfun.prime_order_congruence(lam, g)
    return bad == 0, {"checked": n, "failures": bad}


def _symbol_identity_failures(S: Symbol) -> int:
    bad = 0
    bad += symbols.rank_sum_form(S) != symbols.rank_partition_form(S)
    T = S.shift(1)
    bad += symbols.rank_sum_form(T) != symbols.rank_sum_form(S)
    bad += symbols._level_any(T) != symbols._level_any(S)
    bad += not symbols.n_identity_holds(S)
    bad += symbols.pair_sum(S) != symbols.weighted_c_sum(S)
    if S.A or S.B:
        bad += not symbols.d_chain_holds(S)
        bad += not symbols.ledger_holds(S)
    return bad


def _p_symbol_identities(cfg):
    cap = min(cfg.rank_cap, symbols.FULL_RANK_BOUND)
    bad = n = 0
    for r in range(cap + 1):
        for S in symbols.enumerate_symbols(r):
            n += 1
            bad += _symbol_identity_failures(S)
    rng = random.Random(cfg.seed)
    for _ in range(10 ** 4):
        S = symbols.random_symbol(rng)
        if not S.is_reduced:
            continue
        n += 1
        bad += _symbol_identity_failures(S)
    return bad == 0, {"symbols": n, "failures": bad}


def _p_no_tie(cfg):
    cap = min(cfg.rank_cap, symbols.FULL_RANK_BOUND)
    bad = n = 0
    for r in range(cap + 1):
        for S in symbols.enumerate_symbols(r):
            if symbols.no_tie_hypothesis(S):
                n += 1
                bad += not symbols.no_tie(S)
    return bad == 0, {"checked": n, "ties": bad}


def _p_nint(cfg):
    syms = [S for S in symbols.enumerate_symbols(30, None, level_cap=3)]
    bad = sum(symbols.level_from_degree(S) != symbols.level(S) for S in syms)
    return bad == 0, {"symbols": len(syms), "failures": bad}


def _p_tn(cfg):
    from collections import Counter
    bad = 0
    top = min(cfg.rank_cap, 12)
    for n in range(4, top + 1):
        h = symbols.tn_classification(n, "BC", "t_n_hook")
        c = symbols.tn_classification(n, "BC", "t_n_cohook")
        bad += {S for S, _ in h} | {S for S, _ in c} != set().union(*symbols.four_sets(n))
        for L in (h, c):
            bad += any(v > 2 for v in Counter(l for _, l in L).values())
        if n < 5:
            continue
        for fam in ("Dplus", "Dminus"):
            tn = symbols.tn_classification(n, fam, "t_n_hook") + symbols.tn_classification(n, fam, "t_n_cohook")
            per = Counter(l for _, l in tn)
            bad += per != Counter({j: 2 for j in range(n)})
            per1 = Counter(l for _, l in symbols.tn_classification(n, fam, "t_nminus1"))
            bad += per1[0] != 2 or per1[1] != 2 or any(per1[j] > 4 for j in range(2, n))
    return bad == 0, {"max_rank": top, "failures": bad}


def _p_top_level(cfg):
    bad = 0
    for n in range(1, min(cfg.rank_cap, 12) + 1):
        # odd defect reaches level n; even defect tops out one lower
        for cls, want in ((1, n), ("even", n - 1)):
            bad += max(symbols.level(S) for S in symbols.enumerate_symbols(n, cls)) != want
    return bad == 0, {"failures": bad}


def _p_main_piece(cfg):
    cap = min(cfg.rank_cap, 12)
    checked = fails = 0
    for n in range(cap + 1):
        for parity in ("even", "odd"):
            r = howe.check_main_piece(n, parity)
            checked += r["checked"]
            fails += len(r["failures"])
    return fails == 0, {"max_rank": cap, "checked": checked, "failures": fails}


def _p_so_bijection(cfg):
    out = {}
    ok = True
    for side in ("O-even", "SO-odd"):
        for npr in (0, 1, 2):
            r = howe.so_bijection_check(14, npr, side, enforce_hypothesis=False)
            out[f"{side}:{npr}"] = {"targets": r["targets"], "fibers": r["fiber_sizes"],
                                     "hypothesis": r["hypothesis_holds"]}
            ok = ok and r["ok"]
    return ok, out


def _groups_for(cfg, names):
    out = []
    for fam, n, q in names:
        spec = GroupSpec(fam, n, q)
        if spec.expected_order <= cfg.order_cap:
            out.append(groupsim.build_group(spec, cap=cfg.order_cap))
    return out


SMALL_GROUPS = [("SL", 2, 3), ("S", 5, 0), ("A", 5, 0), ("GU", 2, 2), ("GL", 2, 3), ("PSL", 2, 7), ("A", 6, 0)]


def _p_class_equation(cfg):
    bad = 0
    built = _groups_for(cfg, SMALL_GROUPS)
    for G in built:
        bad += sum(len(c) for c in G.classes) != G.order
        for c in G.classes:
            bad += len(c) * groupsim.centralizer_order(G, int(c[0])) != G.order
    return bad == 0, {"groups": len(built), "failures": bad}


def _p_frobenius(cfg):
    bad = triples = 0
    rng = random.Random(cfg.seed)
    for N in range(1, 8):
        G = groupsim.build_group(GroupSpec("S", N), cap=max(cfg.order_cap, 5040))
        ct = groupsim.class_by_cycle_type(G)
        types = sorted(ct)
        trip = [(x, y, g) for x in types for y in types for g in types]
        if N == 7:
            trip = rng.sample(trip, 200)
        for x, y, g in trip:
            triples += 1
            f = groupsim.frobenius_count_formula_sn(N, x, y, g)
            d = groupsim.frobenius_count_direct(G, ct[x], ct[y], G.reps[ct[g]])
            bad += f != d
    return bad == 0, {"triples": triples, "failures": bad}


def _p_coverage(cfg):
    names = [("A", 5, 0), ("PSL", 2, 7), ("A", 6, 0), ("PSU", 4, 2)]
    found = {}
    ok = True
    for G in _groups_for(cfg, names):
        rep = groupsim.find_covering_class(G, workers=cfg.workers)
        key = f"{G.spec.family}{G.spec.n}({G.spec.q})" if G.spec.q else f"{G.spec.family}{G.spec.n}"
        found[key] = None if rep is None else rep.cls
        ok = ok and rep is not None and all(groupsim.coverage_by_reps(G, rep.cls))
    return ok and len(found) >= 3, {"covering_class": found}


def _p_weil_tensor(cfg):
    bad = checked = outside = 0
    for (fam, n, q), (fam2, n2, q2) in ((("GL", 2, 3), ("GL", 2, 3)), (("GU", 2, 2), ("GU", 1, 2))):
        G = groupsim.build_group(GroupSpec(fam, n, q))
        H = groupsim.build_group(GroupSpec(fam2, n2, q2))
        for i in range(G.order):
            g = G.matrix(i)
            for j in range(H.order):
                r = groupsim.tensor_fixed_dim(g, H.matrix(j))
                bad += not r.holds_a
                if not r.normalized:
                    outside += 1
                    continue
                checked += 1
                bad += r.holds_b is False
        eps = 1 if fam == "GL" else -1
        for c in G.classes:
            vals = {groupsim.weil_gl_value(G.matrix(int(i)), eps) for i in c}
            bad += len(vals) != 1
    return bad == 0, {"normalized_pairs": checked, "unnormalized_pairs": outside, "failures": bad}


def _p_su_regular(cfg):
    bad = 0
    info = {}
    for q in (2, 3):
        for m in range(1, 5):
            r = groupsim.count_non_su_regular(q, m)
            info[f"{q},{m}"] = r["count_definition"]
            bad += bool(r["mismatches"]) + (not r["orbit_products_ok"])
    bad += not groupsim.count_non_su_regular(2, 3)["regular_exists"]
    bad += not groupsim.verify_scalars(2, 3)["ok"]
    return bad == 0, {"non_regular": info, "failures": bad}


def _p_order_estimates(cfg):
    bad = 0
    for N in range(1, 21):
        for q in (2, 3, 4, 5, 7, 9):
            o = algebra.group_order("GU", N, q)
            bad += not (q ** (N * N) < o and o ** 5 < q ** (5 * N * N + 3))
    return bad == 0, {"failures": bad}


SUITES = {
    "symbols": [
        ("sn-character-tables", "orthogonality and hook-length degrees of S_N, N <= 8", _p_sn_tables),
        ("xy-nonvanishing-counts", "nonvanishing counts at the x and y elements", _p_value_counts),
        ("fast-growth-values", "values in {-1,0,1} on superincreasing cycle types", _p_fast_growth),
        ("prime-order-congruence", "chi(g) = chi(1) mod l for g of prime order l", _p_congruence),
        ("symbol-identities", "rank forms, shift invariance, d-chain and n identity", _p_symbol_identities),
        ("no-tie", "max(A) != max(B) when rank > 4 lev^2 + 2 lev", _p_no_tie),
        ("nint-level-recovery", "level = nint(log-degree / 2n) at rank 30", _p_nint),
        ("regular-element-classification", "nonvanishing at t_n and t_{n-1}", _p_tn),
        ("top-level-equals-rank", "largest level at rank n: n for defect 1, n-1 for even defect", _p_top_level),
    ],
    "howe": [
        ("main-piece", "linked partner of lower rank and its uniqueness", _p_main_piece),
        ("so-bijection", "symbol-level surjectivity with fibers 4 and 2", _p_so_bijection),
    ],
    "groups": [
        ("class-equation", "class sizes times centralizer orders", _p_class_equation),
        ("frobenius-formula", "character-sum count equals direct count in S_N", _p_frobenius),
        ("class-square-coverage", "a class C with C^2 = G", _p_coverage),
        ("weil-tensor-bounds", "fixed-space bounds for g tensor s and Weil values", _p_weil_tensor),
        ("su-regularity", "orbit definition versus equation family; x_2 witness", _p_su_regular),
        ("unitary-order-estimates", "q^{N^2} < |GU_N(q)| < q^{N^2+0.6}", _p_order_estimates),
    ],
}


def run_suite(suite: str, cfg: RunConfig) -> list[Property]:
    names = list(SUITES) if suite == "all" else [] if suite == "none" else [suite]
    out = []
    for s in names:
        for name, anchor, fn in SUITES[s]:
            p = Property(name, s, anchor)
            t = time.perf_counter()
            ok, counts = fn(cfg)
            p.seconds = round(time.perf_counter() - t, 3)
            p.status = "pass" if ok else "fail"
            p.counts = counts
            out.append(p)
    return out


def build_report(props: list[Property], cfg: RunConfig) -> dict:
    return {"schema": 1,
            "config": {k: v for k, v in asdict(cfg).items() if k != "report"},
            "properties": [asdict(p) for p in props],
            "summary": {"total": len(props), "passed": sum(p.status == "pass" for p in props),
                        "failed": sum(p.status == "fail" for p in props)}}


def _write_report(doc: dict, path: str | None):
    text = json.dumps(doc, indent=1, default=str)
    if path is None or path == "-":
        print(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    except OSError as e:
        raise UsageError(f"cannot write report: {e}") from None


def cmd_verify(args, cfg) -> int:
    props = run_suite(args.suite, cfg)
    if cfg.format == "json" or cfg.report:
        _write_report(build_report(props, cfg), cfg.report or "-")
    else:
        for p in props:
            print(f"{p.status.upper():4}  {p.suite:8} {p.name:32} {p.seconds:8.2f}s  {json.dumps(p.counts, default=str)}")
    return EXIT_OK if all(p.status == "pass" for p in props) else EXIT_FAIL


def cmd_report(args, cfg) -> int:
    props = run_suite(args.suite, cfg)
    _write_report(build_report(props, cfg), args.out or cfg.report or "-")
    return EXIT_OK if all(p.status == "pass" for p in props) else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config")
    common.add_argument("--format", choices=["json", "csv", "text"])
    common.add_argument("--seed", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--rank-cap", dest="rank_cap", type=int)
    common.add_argument("--order-cap", dest="order_cap", type=int)
    common.add_argument("--work-cap", dest="work_cap", type=int)

    ap = argparse.ArgumentParser(prog="classical-chars", parents=[common],
                                 description="Symbol calculus and small-group verification")
    sub = ap.add_subparsers(dest="command", required=True)

    mn = sub.add_parser("mn", parents=[common], help="S_N character values")
    mns = mn.add_subparsers(dest="action", required=True)
    v = mns.add_parser("value", parents=[common])
    v.add_argument("--partition", required=True)
    v.add_argument("--cycles", required=True)
    t = mns.add_parser("table", parents=[common])
    t.add_argument("--n", type=int, required=True)
    nv = mns.add_parser("nonvanishing", parents=[common])
    nv.add_argument("--n", type=int, required=True)
    nv.add_argument("--a", type=int, required=True)
    nv.add_argument("--variant", choices=["x", "y"], required=True)

    sy = sub.add_parser("symbols", parents=[common], help="enumerate symbols")
    sys_ = sy.add_subparsers(dest="action", required=True)
    e = sys_.add_parser("enumerate", parents=[common])
    e.add_argument("--rank", type=int, required=True)
    e.add_argument("--defect", default=None)
    e.add_argument("--level-cap", dest="level_cap", type=int)

    hw = sub.add_parser("howe", parents=[common], help="symbol-level correspondence")
    hws = hw.add_subparsers(dest="action", required=True)
    m = hws.add_parser("map", parents=[common])
    m.add_argument("--desc", required=True)
    m.add_argument("--side", choices=["O-even", "SO-odd", "Sp"])
    m.add_argument("--no-enforce", action="store_true")
    hv = hws.add_parser("verify", parents=[common])
    hv.add_argument("--rank", type=int, required=True)
    hv.add_argument("--max-level", dest="max_level", type=int)
    hv.add_argument("--report", dest="report_format", choices=["csv", "json", "text"])

    gr = sub.add_parser("group", parents=[common], help="small matrix groups")
    grs = gr.add_subparsers(dest="action", required=True)
    for name in ("build", "coverage"):
        g = grs.add_parser(name, parents=[common])
        g.add_argument("--family", required=True)
        g.add_argument("--n", type=int, required=True)
        g.add_argument("--q", type=int, default=0)
        if name == "coverage":
            g.add_argument("--class", dest="cls", type=int)
            g.add_argument("--exclude-center", action="store_true")
            g.add_argument("--matrix", action="store_true", help="CSV class-by-class matrix")
    fr = grs.add_parser("frobenius", parents=[common])
    fr.add_argument("--x", required=True)
    fr.add_argument("--y", required=True)
    fr.add_argument("--g", required=True)

    ve = sub.add_parser("verify", parents=[common], help="run property suites")
    ve.add_argument("suite", choices=["symbols", "howe", "groups", "all"])
    ve.add_argument("--report")

    rp = sub.add_parser("report", parents=[common], help="consolidated JSON report")
    rp.add_argument("--suite", default="none", choices=["none", "symbols", "howe", "groups", "all"])
    rp.add_argument("--out")
    return ap


HANDLERS = {"mn": cmd_mn, "symbols": cmd_symbols, "howe": cmd_howe, "group": cmd_group,
            "verify": cmd_verify, "report": cmd_report}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = make_config(args)
        return HANDLERS[args.command](args, cfg)
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
