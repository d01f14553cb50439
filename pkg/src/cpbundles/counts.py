"""Closed-form counts and the bundle-count dispatcher.

``count_bundles(r, n, p)`` answers "what power of p divides the number of
stably trivial rank r bundles on CP^n" as far as the available results go:
exactly for small corank, as a lower bound inside the EO window, and not at
all outside it (apart from attaching known detection-family hits).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import Prime, ceil_div, floor_same_residue, is_metastable, p_valuation
from .errors import InternalContradiction, InvalidInput
from .eo import (check_corank_window, eo_neg1_cp_tensor_dcp, eo_neg1_shifted_cp,
                 window_bound)
from .groups import FinitePGroup

# Citation labels used in results. They name the statement by content.
CITE_SPHERES = "corank below p-1: sphere splitting"
CITE_SMALL = "small-corank P1 splitting count"
CITE_TABLE = "p=3 corank-4 table"
CITE_J = "EO detection count j(n,r)"
CITE_WINDOW = "EO surjectivity window c < 2p^2-p-2"
CITE_META = "metastable range n/2 <= r < n"
CITE_DETECTION = "Hurewicz detection families"

KINDS = ("exact", "lower_bound", "unknown")


def _odd_prime(p) -> Prime:
    p = Prime(p)
    if p == 2:
        raise InvalidInput("this formula needs an odd prime")
    return p


def small_corank_residues(c: int, p) -> set[int]:
    """Residues of ``r`` mod ``p`` for which corank ``c`` carries p-torsion."""
    return {(-k) % p for k in range(0, c - p + 2)}


def phi_valuation_small_corank(r: int, c: int, p) -> int:
    """p-valuation of the number of stably trivial bundles of corank ``c``.

    Valid for odd ``p`` and ``c <= 2p-3``. The answer is 1 exactly when
    ``r`` is congruent to one of ``0, -1, ..., p-1-c`` mod ``p``, which is the
    same as a multiple of ``p`` lying in ``[r, r + c - (p-1)]``. Both forms
    are evaluated and must agree.
    """
    p = _odd_prime(p)
    if c < 0 or c > 2 * p - 3:
        raise InvalidInput(f"corank {c} outside [0, {2 * p - 3}] at p={p}")
    if c > r:
        raise InvalidInput(f"need c <= r, got r={r}, c={c}")
    if c < p - 1:
        return 0
    by_residue = int(r % p in small_corank_residues(c, p))
    by_interval = int(any(k % p == 0 for k in range(r, r + c - (p - 1) + 1)))
    if by_residue != by_interval:
        raise InternalContradiction(f"small-corank forms disagree at r={r}, c={c}, p={p}")
    return by_residue


def corank4_p3_group(r: int) -> FinitePGroup:
    """The 3-part of the corank 4 count: Z/9 for r = 0, 1 mod 9, else Z/3."""
    if r < 4:
        raise InvalidInput(f"corank 4 is metastable only for r >= 4, got {r}")
    if r % 9 in (0, 1):
        return FinitePGroup.cyclic(3, 2, CITE_TABLE)
    return FinitePGroup.cyclic(3, 1, CITE_TABLE)


def j_conditions(n: int, r: int, p, i: int) -> dict[str, bool]:
    """The four conditions on the ``(r+i)``-th Adams summand, by letter."""
    p = Prime(p)
    ri = r + i
    top = floor_same_residue(n, ri, p)
    a = ri % p
    b = top % p
    return {
        "A": ri + a * (p - 1) < top,
        "B": b != 0,
        "C": a < p - b and a < b,
        "D": top - ri + (p - 1) * (b - a) == p * (p - 1),
    }


def j_closed(n: int, r: int, p) -> int:
    """Number of ``i`` in ``[0, p-2]`` meeting all four conditions A-D."""
    p = Prime(p)
    if r < 0 or n < r:
        raise InvalidInput(f"need 0 <= r <= n, got r={r}, n={n}")
    check_corank_window(r, n, p)
    return sum(all(j_conditions(n, r, p, i).values()) for i in range(p - 1))


def bigcount_j(r_mod_p, p) -> int:
    """The four-case value of ``j`` at corank ``(p-1)^2``, as displayed.

    The half-integer comparisons are done on doubled integers:
    ``[r-1] >= (p-2)/2`` is ``2[r-1] >= p-2`` and ``[r] < (p-1)/2`` is
    ``2[r] < p-1``.
    """
    p = Prime(p)
    r = int(r_mod_p)
    r0 = r % p
    r1 = (r - 1) % p
    base = (p - 2) // 2
    high = 2 * r1 >= p - 2
    low = 2 * r0 < p - 1
    value = base if high else max(0, base - 1)
    return value + 1 if low else value


def top_cell_condition(r: int, n: int, p) -> bool:
    c = n - r
    if not 0 < c <= (p - 1) ** 2:
        return False
    return (ceil_div(c, p - 1) - 1 - (r % p) - (c % (p - 1))) % p == 0


def eo_top_cell_closed(r: int, n: int, p, cross_check: bool = True) -> FinitePGroup:
    """``EO_{-1}`` of ``Sigma^{-2n} CP^n_r`` from the closed-form condition.

    With ``cross_check`` the value is compared against the summand-by-summand
    evaluation and a disagreement raises :class:`InternalContradiction`.
    """
    p = Prime(p)
    if r < 0 or n <= r:
        raise InvalidInput(f"need 0 <= r < n, got r={r}, n={n}")
    check_corank_window(r, n, p)
    group = FinitePGroup.cyclic(p, int(top_cell_condition(r, n, p)), "top-cell closed form")
    if cross_check:
        derived = eo_neg1_shifted_cp(r, n, p)
        if derived != group:
            raise InternalContradiction(
                f"top-cell closed form gives {group} but the splitting gives {derived} "
                f"at r={r}, n={n}, p={p}")
    return group


class MatsunagaHypothesisError(InvalidInput):
    """A hypothesis of Matsunaga's formula failed; ``hypothesis`` names it."""

    def __init__(self, hypothesis, message):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis


def matsunaga_order(n: int, k: int, p) -> FinitePGroup:
    """p-primary part of ``pi_{2n+2k-3} U(n)``: ``Z/p^N`` with
    ``N = min(floor((k-1)/(p-1)), v_p(n+k))``."""
    p = Prime(p)
    if p == 2:
        raise MatsunagaHypothesisError("p odd", "p must be an odd prime")
    if n < 2:
        raise MatsunagaHypothesisError("n >= 2", f"got n={n}")
    if not 0 <= k <= p * (p - 1):
        raise MatsunagaHypothesisError("0 <= k <= p(p-1)", f"got k={k}")
    if not n > k:
        raise MatsunagaHypothesisError("n > k", f"got n={n}, k={k}")
    if (n + k) % p:
        raise MatsunagaHypothesisError("n+k = 0 mod p", f"n+k={n + k}")
    # k = 0 gives floor(-1/(p-1)) = -1; there is no negative order, clamp.
    N = max(0, min((k - 1) // (p - 1), p_valuation(n + k, p)))
    return FinitePGroup.cyclic(p, N, "Matsunaga")


@dataclass
class CountResult:
    kind: str
    valuation: int | None
    group: FinitePGroup | None
    citations: list[str]
    metastable: bool
    rank: int = 0
    dim: int = 0
    prime: int = 2
    instances: list = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    # EO-detected exponent j(n,r) whenever the corank is inside the EO window,
    # reported alongside an exact answer too.
    lower_bound: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInput(f"unknown result kind {self.kind!r}")
        if self.kind == "unknown" and self.valuation is not None:
            raise InvalidInput("unknown results carry no valuation")
        if self.kind != "unknown" and self.valuation is None:
            raise InvalidInput(f"{self.kind} results need a valuation")
        if self.kind == "lower_bound" and self.lower_bound != self.valuation:
            raise InvalidInput("a lower_bound result's valuation is its lower bound")
        if self.kind == "exact" and self.lower_bound is not None \
                and self.lower_bound > self.valuation:
            raise InternalContradiction("EO lower bound exceeds the exact valuation")

    @property
    def corank(self) -> int:
        return self.dim - self.rank


def _unknown(r, n, p, why, citations=(), instances=()):
    return CountResult("unknown", None, None, list(citations), is_metastable(r, n),
                       r, n, int(p), list(instances), [why])


def count_bundles(r: int, n: int, p) -> CountResult:
    """p-part of the number of stably trivial rank ``r`` bundles on ``CP^n``."""
    p = Prime(p)
    c = n - r
    meta = is_metastable(r, n)
    if r < 1 or not meta:
        return _unknown(r, n, p, "outside the metastable range", [CITE_META])

    j = j_closed(n, r, p) if c < window_bound(p) else None
    if p != 2 and c <= 2 * p - 3:
        v = phi_valuation_small_corank(r, c, p)
        cite = CITE_SPHERES if c < p - 1 else CITE_SMALL
        return CountResult("exact", v, FinitePGroup.cyclic(p, v), [CITE_META, cite],
                           True, r, n, int(p), lower_bound=j)

    if p == 3 and c == 4:
        g = corank4_p3_group(r)
        return CountResult("exact", g.valuation, g, [CITE_META, CITE_TABLE, CITE_J],
                           True, r, n, 3, lower_bound=j)

    if j is not None:
        notes = []
        engine = eo_neg1_cp_tensor_dcp(r, n, p)
        if engine.valuation > j:
            notes.append(f"summand-pair evaluation of EO_-1 gives {engine} "
                         f"(valuation {engine.valuation})")
        return CountResult("lower_bound", j, FinitePGroup.elementary(p, j),
                           [CITE_META, CITE_WINDOW, CITE_J], True, r, n, int(p),
                           notes=notes, lower_bound=j)

    from .detection import detection_hits

    hits = detection_hits(r, n, p)
    why = f"corank {c} is outside the EO window c < {window_bound(p)}"
    cites = [CITE_META] + ([CITE_DETECTION] if hits else [])
    return _unknown(r, n, p, why, cites, hits)
