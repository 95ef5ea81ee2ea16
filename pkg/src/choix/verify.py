"""Property suites behind ``choix verify``.

Each check returns a :class:`Check`; suites are plain lists of checks so the
CLI and the test-suite can run them the same way.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import _kernels, extremal, growth, oeis, search
from .config import Config
from .core import DigitString, as_digits, neighbors, neighbors_base2

SUITES = ("core", "extremal", "search", "growth", "oeis")


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""
    enforced: bool = True  # report-only checks never fail the run

    def line(self) -> str:
        tag = "PASS" if self.ok else ("FAIL" if self.enforced else "NOTE")
        return f"{tag}\t{self.name}\t{self.detail}".rstrip()


def _count(name: str, counted: tuple[int, np.ndarray], scope: str) -> Check:
    cnt, first = counted
    detail = scope if not cnt else f"{cnt} violations, e.g. {first.tolist()[:4]}"
    return Check(name, cnt == 0, detail)


# -- core -------------------------------------------------------------------

def core_checks(cfg: Config) -> list[Check]:
    out = []
    bad = []
    for n in range(1, 10**4 + 1):
        ns = neighbors(n)
        vals = [int(m) for m in ns]
        if vals != sorted(set(vals)) or n not in vals:
            bad.append(n)
        elif any(m.digits[0] == 0 for m in ns):
            bad.append(n)
    out.append(Check("core.canonical_sorted", not bad, "n <= 10^4" if not bad else f"{bad[:4]}"))

    mism = []
    buf = np.empty(_kernels.scratch_size_nb(7), dtype=np.int64)
    pw = _kernels.powers(10, 7)
    for n in range(1, 10**4 + 1):
        c = _kernels.neighbors_into(n, pw, 7, buf)
        if sorted(set(buf[:c].tolist()) | {n}) != [int(m) for m in neighbors(n)]:
            mism.append(n)
    out.append(Check("core.kernel_agrees", not mism, "digit-string vs int kernel, n <= 10^4"))

    out.append(_count("core.symmetry", _kernels.symmetry_violations(1, 10**5), "n <= 10^5"))
    out.append(_count("core.range", _kernels.range_violations(1, 10**6), "n <= 10^6"))
    out.append(_count("core.class_preserved", _kernels.class_violations(1, 10**6), "n <= 10^6"))
    out.append(_count(
        "core.binary_weight",
        _kernels.symmetry_violations(1, 10**5, base=2, check_popcount=True),
        "popcount and symmetry, n <= 10^5",
    ))
    rng = random.Random(1)
    bad2 = []
    for _ in range(200):
        n = rng.randrange(1, 10**30)
        pc = bin(n).count("1")
        for m in neighbors_base2(n):
            if bin(int(m)).count("1") != pc:
                bad2.append(n)
                break
    out.append(Check("core.binary_weight_large", not bad2, "200 random n < 10^30"))
    return out


# -- extremal ---------------------------------------------------------------

def extremal_checks(cfg: Config) -> list[Check]:
    out = []
    top = 10**6
    mn, mx = _kernels.bulk_extremes(1, top)
    bad = [n for n in range(1, top + 1) if extremal.max_neighbor_int(n) != mx[n - 1]]
    out.append(Check("extremal.max_closed_form", not bad, "n <= 10^6" if not bad else f"{bad[:4]}"))

    bad = [n for n in range(1, 10**4 + 1) if int(extremal.min_neighbor(n).value) != mn[n - 1]]
    out.append(Check("extremal.min_oracle", not bad, "n <= 10^4" if not bad else f"{bad[:4]}"))

    bad = []
    for n in range(1, top + 1):
        s = str(n)
        if max(s) < "5":
            if mx[n - 1] != 2 * n:
                bad.append(n)
        elif len(str(int(mx[n - 1]))) != len(s) + 1:
            bad.append(n)
    out.append(Check("extremal.max_cases", not bad, "n <= 10^6"))

    ns = np.arange(1, top + 1)
    all_odd = np.ones(top, dtype=bool)
    rest = ns.copy()
    while rest.any():
        live = rest > 0
        all_odd &= ~live | (rest % 2 == 1)
        rest //= 10
    fixed = mn == ns
    out.append(Check("extremal.all_odd_fixed_point", bool(np.array_equal(fixed, all_odd)), "n <= 10^6"))

    rows = list(extremal.tightness_ratios(12))
    up = [r for _, r, _ in rows]
    down = [r for _, _, r in rows]
    ok = (
        all(a < b < 10 for a, b in zip(up, up[1:]))
        and all(b < a for a, b in zip(down, down[1:]))
        and all(r > extremal.Fraction(1, 10) for r in down)
    )
    out.append(Check("extremal.tightness", ok, f"t=12: {float(up[-1]):.12f}, {float(down[-1]):.12f}"))

    dis = [n for n in range(1, top + 1) if extremal.min_rule_int(n) != mn[n - 1]]
    out.append(Check(
        "extremal.min_rule_literal", not dis,
        f"{len(dis)} of {top} disagree with brute force, first {dis[:5]}",
        enforced=False,
    ))
    return out


# -- search -----------------------------------------------------------------

def search_checks(cfg: Config) -> list[Check]:
    out = []
    cap, limit = cfg.cap_digits, cfg.limit
    t1 = search.bfs_distances(1, cap, limit, cache_dir=cfg.cache_dir, threads=cfg.threads)
    limit5 = 2 * limit
    cap5 = max(cap, len(str(limit5)))
    t5 = search.bfs_distances(5, cap5, limit5, cache_dir=cfg.cache_dir, threads=cfg.threads)

    bad = [n for n, d in t1.items() if (n % 5 == 0) != (d < 0)]
    out.append(Check("search.unreachability", not bad, f"source 1, n <= {limit}"))
    bad = [n for n, d in t5.items() if (n % 5 == 0) != (d >= 0)]
    out.append(Check("search.unreachability_5", not bad, f"source 5, n <= {limit5}"))

    for table in (t1, t5):
        ok = search.audit_stability(table, cache_dir=cfg.cache_dir)
        out.append(Check(f"search.cap_stable_s{table.source}", ok,
                         f"cap {table.cap_digits} vs {table.cap_digits + 1}, n <= {table.limit}"))

    for source, c in ((1, cap), (5, cap5)):
        bad, first = search.certify_distances(source, c)
        out.append(Check(
            f"search.bfs_certificate_s{source}", bad == 0,
            f"parent, triangle and layer nesting over the {c}-digit range" if not bad else f"{first[:4]}",
        ))

    bad = []
    for n, d in t1.items():
        if d < 0:
            continue
        for m in map(int, neighbors(n)):
            if m <= limit and m % 5 and abs(t1[m] - d) > 1:
                bad.append((n, m))
    out.append(Check("search.triangle", not bad, f"n, m <= {limit}"))

    chain = [t1[v] for v in (1, 2, 4, 8, 16)]
    out.append(Check("search.doubling_chain", chain == [0, 1, 2, 3, 4], str(chain)))

    bad = []
    for n in range(1, min(limit, 1000) + 1):
        if n % 5 == 0:
            continue
        path = search.shortest_path(1, n, cap)
        vs = path.vertices
        if (path.length != t1[n] or len(set(vs)) != len(vs)
                or not all(as_digits(b) in neighbors(a) for a, b in zip(vs, vs[1:]))):
            bad.append(n)
    out.append(Check("search.paths_valid", not bad, "1 -> n, n <= 1000"))
    return out


# -- growth -----------------------------------------------------------------

def growth_checks(cfg: Config) -> list[Check]:
    out = []
    n_max = max(cfg.n_max, 10)
    g = growth.exact_max_reach(n_max)
    full = growth.unpruned_maxima(10)
    out.append(Check("growth.pruning_sound", g.R[:11] == full, "generations 0..10"))
    ok = all(a <= b for a, b in zip(g.r, g.R)) and [n for n in range(n_max + 1) if g.r[n] != g.R[n]] == [7]
    out.append(Check("growth.greedy_below_exact", ok, "r(n) <= R(n), equal except n = 7"))
    out.append(Check("growth.R_nondecreasing", all(a <= b for a, b in zip(g.R, g.R[1:]))))
    bad = growth.chain_violations(g)
    out.append(Check("growth.parent_chains", not bad, f"{sum(map(len, g.frontiers))} survivors"))
    rec = growth.check_greedy_recurrence(g, n_max)
    out.append(Check("growth.recurrence", all(v.ok for v in rec), f"10 <= n <= {n_max - 4}"))
    if n_max >= 14:
        bounds = growth.verify_growth_bounds(g, range(14, n_max + 1))
        out.append(Check("growth.bounds", all(v.ok for v in bounds), f"14 <= n <= {n_max}"))
    reps = [i for i in (1, 2) if 14 + 4 * i <= n_max]
    pats = [v for i in reps for v in growth.frontier_pattern_check(g, i)]
    out.append(Check("growth.frontier_pattern", all(v.ok for v in pats), f"i in {reps}"))

    t1 = search.bfs_distances(1, cfg.cap_digits, cfg.limit, cache_dir=cfg.cache_dir, threads=cfg.threads)
    verdicts = growth.verify_tau_bounds(t1)
    out.append(Check("growth.tau_reach_bound", all(v.reach_ok is not False for v in verdicts),
                     f"{sum(v.reach_ok is not None for v in verdicts)} targets with tau >= 14"))
    out.append(Check("growth.tau_digit_bound", all(v.digit_ok for v in verdicts), f"n <= {cfg.limit}"))
    lo = [v.n for v in verdicts if not v.literal_lower_ok]
    hi = [v.n for v in verdicts if not v.literal_upper_ok]
    out.append(Check("growth.tau_literal", not (lo or hi),
                     f"lower fails for {len(lo)} (max n {max(lo, default=None)}), "
                     f"upper fails for {len(hi)} (max n {max(hi, default=None)})",
                     enforced=False))
    return out


# -- oeis -------------------------------------------------------------------

def oeis_checks(cfg: Config) -> list[Check]:
    out = []
    b = oeis.generate_sequence("A323460", 200)
    out.append(Check("oeis.round_trip", oeis.parse_bfile(b.to_text()) == b))
    again = oeis.generate_sequence("A323460", 200)
    out.append(Check("oeis.reproducible", again.to_text() == b.to_text()))
    return out


_RUNNERS: dict[str, Callable[[Config], list[Check]]] = {
    "core": core_checks,
    "extremal": extremal_checks,
    "search": search_checks,
    "growth": growth_checks,
    "oeis": oeis_checks,
}


def run_suites(names: Iterable[str], cfg: Config) -> list[Check]:
    checks = []
    for name in names:
        checks.extend(_RUNNERS[name](cfg))
    return checks
