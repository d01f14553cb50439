"""Grid checks comparing each closed form with its independent route.

Used by ``cpbundles selftest``. Every check returns a :class:`CheckResult`
with the number of points tried and the first few disagreements; nothing is
raised for a disagreement, so one failing family does not hide the others.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .comodule import chain, decompose, stunted_cohomology, tensor
from .counts import (bigcount_j, corank4_p3_group, eo_top_cell_closed, j_closed,
                     phi_valuation_small_corank)
from .eo import (closed_form_splitting, eo_neg1_cp_tensor_dcp, eo_neg1_shifted_cp,
                 tensor_rule, window_bound)
from .errors import InternalContradiction

MAX_SHOWN = 5


@dataclass
class CheckResult:
    name: str
    tried: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def record(self, good: bool, detail):
        self.tried += 1
        if not good:
            self.failure_count += 1
            if len(self.failures) < MAX_SHOWN:
                self.failures.append(detail)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name}: {self.tried - self.failure_count}/{self.tried} agree"
        if self.failures:
            line += f"; first disagreements {self.failures}"
        return line


def small_corank(primes=(3, 5, 7)) -> CheckResult:
    res = CheckResult("small-corank counts")
    for p in primes:
        for c in range(0, 2 * p - 2):
            for r in range(c, c + p):
                allowed = {(-k) % p for k in range(c - p + 2)} if c >= p - 1 else set()
                want = int(r % p in allowed)
                try:
                    got = phi_valuation_small_corank(r, c, p)
                except InternalContradiction as e:
                    res.record(False, (p, r, c, str(e)))
                    continue
                res.record(got == want, (p, r, c, got, want))
    res.record(phi_valuation_small_corank(18, 6, 5) == 1, "(18,6,5)")
    res.record(phi_valuation_small_corank(16, 6, 5) == 0, "(16,6,5)")
    return res


def corank4_table() -> CheckResult:
    res = CheckResult("p=3 corank-4 table")
    for r in range(9, 18):
        want = 2 if r % 9 in (0, 1) else 1
        res.record(corank4_p3_group(r).exponents == (want,), (r, corank4_p3_group(r)))
    return res


def splitting(primes=(2, 3, 5, 7)) -> CheckResult:
    res = CheckResult("closed-form splitting vs Jordan decomposition")
    for p in primes:
        span = min(2 * p * p - p - 3, 40)
        for r in range(0, 3 * p + 1):
            for n in range(r, r + span + 1):
                try:
                    split = closed_form_splitting(r, n, p)
                except InternalContradiction as e:
                    res.record(False, (p, r, n, str(e)))
                    continue
                brute = decompose(stunted_cohomology(r, n, p))
                same = Counter(split.all_summands()) == brute.counter()
                dims = split.all_summands().degree_profile() == Counter(
                    stunted_cohomology(r, n, p).degrees())
                res.record(same and dims, (p, r, n))
    return res


def tensor_lengths(l, l2, p):
    lo, hi = min(l, l2), max(l, l2)
    t = lo if lo + hi <= p else p - hi
    return Counter(hi - lo + 2 * j - 1 for j in range(1, t + 1))


def tensor_products(primes=(2, 3, 5, 7)) -> CheckResult:
    res = CheckResult("tensor rule vs Jordan decomposition")
    for p in primes:
        for l in range(1, p + 1):
            for l2 in range(l, p + 1):
                try:
                    rule = tensor_rule(l, l2, p)
                except InternalContradiction as e:
                    res.record(False, (p, l, l2, str(e)))
                    continue
                brute = decompose(tensor(chain(0, l, p), chain(0, l2, p)))
                lengths = Counter(s.length for s in rule.main) + Counter(
                    {p: len(rule.junk)})
                want = tensor_lengths(l, l2, p)
                # The formula counts length-p pieces only where it lists them.
                same_main = Counter(s.length for s in rule.main) == Counter(
                    {k: v for k, v in want.items() if k != p})
                res.record(same_main and rule.all_summands().counter() == brute.counter()
                           and sum(k * v for k, v in lengths.items()) == l * l2,
                           (p, l, l2))
    w22 = tensor_rule(2, 2, 3)
    res.record([s.as_pair() for s in w22.main] == [[2, 1]]
               and [s.as_pair() for s in w22.junk] == [[0, 3]], "W2 (x) W2 at p=3")
    return res


def engine_vs_j(primes=(3, 5, 7)) -> CheckResult:
    res = CheckResult("pair enumeration vs j(n,r)")
    for p in primes:
        for r in range(0, 3 * p + 1):
            for c in range(1, 2 * p * p - p - 2):
                n = r + c
                got = eo_neg1_cp_tensor_dcp(r, n, p).valuation
                want = j_closed(n, r, p)
                res.record(got == want, (p, r, n, got, want))
    return res


def named_instances(primes=(2, 3, 5, 7, 11)) -> CheckResult:
    from .counts import count_bundles

    res = CheckResult("named instances and corank-(p-1)^2 count")
    res.record(j_closed(13, 9, 3) == 1, "j(13,9)=1 at p=3")
    cb = count_bundles(9, 13, 3)
    res.record(cb.lower_bound == 1, ("count_bundles(9,13,3).lower_bound", cb.lower_bound))
    for p in primes:
        for t in range(3):
            for a in range(p):
                r = p * p + t * p + a
                n = r + (p - 1) ** 2
                got, want = bigcount_j(a, p), j_closed(n, r, p)
                res.record(got == want, (p, t, a, got, want))
    return res


def periodicity(primes=(3, 5, 7)) -> CheckResult:
    res = CheckResult("period p in (r, n)")
    for p in primes:
        for r in range(0, 3 * p + 1):
            for c in range(1, 2 * p * p - p - 2):
                n = r + c
                same_j = j_closed(n, r, p) == j_closed(n + p, r + p, p)
                same_g = eo_neg1_cp_tensor_dcp(r, n, p) == eo_neg1_cp_tensor_dcp(r + p, n + p, p)
                res.record(same_j and same_g, (p, r, n))
    return res


def bound_consistency() -> CheckResult:
    res = CheckResult("EO lower bound below exact counts")
    for p in (5, 7):
        for c in range(p - 1, 2 * p - 2):
            for r in range(c, c + p):
                res.record(j_closed(r + c, r, p) <= phi_valuation_small_corank(r, c, p),
                           (p, r, c))
    for r in range(9, 18):
        res.record(j_closed(r + 4, r, 3) <= corank4_p3_group(r).valuation, (3, r, 4))
    return res


def top_cell(primes=(3, 5)) -> CheckResult:
    res = CheckResult("top-cell closed form vs splitting")
    for p in primes:
        for r in range(0, 3 * p + 1):
            for c in range(1, window_bound(p)):
                n = r + c
                got = eo_top_cell_closed(r, n, p, cross_check=False)
                want = eo_neg1_shifted_cp(r, n, p)
                res.record(got == want, (p, r, n, str(got), str(want)))
    res.record(str(eo_top_cell_closed(10, 14, 3, cross_check=False)) == "Z/3", "(10,14,3)")
    res.record(eo_top_cell_closed(9, 13, 3, cross_check=False).is_trivial(), "(9,13,3)")
    return res


ALL = (small_corank, corank4_table, splitting, tensor_products, engine_vs_j,
       named_instances, periodicity, bound_consistency, top_cell)


def run_all():
    return [check() for check in ALL]
