"""EO-module splittings and degree -1 EO-homology.

Closed forms for the splitting of ``EO (x) CP^n_r`` and for ``X_l (x) X_l'``
are evaluated here and, on every call, compared against the brute-force
decomposition from :mod:`cpbundles.comodule`. Length-``p`` pieces ("junk")
are never predicted; they are read off the brute-force side.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .arith import Prime, floor_same_residue
from .comodule import (Decomposition, Summand, chain, decompose,
                       stunted_cohomology, tensor)
from .errors import InternalContradiction, InvalidInput, OutOfWindow
from .groups import FinitePGroup


def window_bound(p) -> int:
    """Half of ``|beta_2|``: coranks below this are in the EO-detection range."""
    return 2 * p * p - p - 2


def check_corank_window(r, n, p):
    bound = window_bound(p)
    if n - r >= bound:
        raise OutOfWindow(f"corank {n - r} outside the EO window at p={p}",
                          window=f"0 <= n - r < {bound}")


@dataclass(frozen=True)
class EODecomposition:
    prime: int
    main: tuple[Summand, ...] = ()
    junk: tuple[Summand, ...] = ()

    def __post_init__(self):
        p = int(Prime(self.prime))
        main = tuple(sorted(self.main))
        junk = tuple(sorted(self.junk))
        if any(s.length != p for s in junk):
            raise InvalidInput("junk summands must have length p")
        if any(not 1 <= s.length < p for s in main):
            raise InvalidInput("main summands must have length in [1, p-1]")
        object.__setattr__(self, "prime", p)
        object.__setattr__(self, "main", main)
        object.__setattr__(self, "junk", junk)

    def all_summands(self) -> Decomposition:
        return Decomposition(self.prime, self.main + self.junk)


@dataclass(frozen=True)
class AdamsPiece:
    """Per-``i`` bookkeeping for the ``(r+i)``-th Adams summand of ``CP^n_r``."""

    i: int
    top_cell: int          # n_{r+i}
    l_index: int           # length of the bottom chain; <= 0 means empty
    top_flag: bool         # the summand has a separate top piece
    top_half_shift: int
    top_length: int

    @property
    def empty(self) -> bool:
        return self.l_index <= 0


@dataclass(frozen=True)
class SplittingContext:
    r: int
    n: int
    prime: int
    pieces: tuple[AdamsPiece, ...]


def splitting_context(r: int, n: int, p) -> SplittingContext:
    p = Prime(p)
    if not 0 <= r <= n:
        raise InvalidInput(f"need 0 <= r <= n, got r={r}, n={n}")
    pieces = []
    for i in range(p - 1):
        j = r + i
        top = floor_same_residue(n, j, p)
        a = j % p
        l_index = min(a + 1, (top - j) // (p - 1) + 1)
        top_flag = j + a * (p - 1) < top
        b = top % p
        pieces.append(AdamsPiece(
            i=i,
            top_cell=top,
            l_index=l_index,
            top_flag=top_flag,
            top_half_shift=top - (p - b - 1) * (p - 1),
            top_length=p - b,
        ))
    return SplittingContext(r, n, int(p), tuple(pieces))


def _multiset_minus(big: Counter, small: Counter, what: str) -> Counter:
    missing = small - big
    if missing:
        raise InternalContradiction(f"{what}: closed form predicts {sorted(missing)} "
                                    "which the brute-force decomposition lacks")
    return big - small


@lru_cache(maxsize=None)
def closed_form_splitting(r: int, n: int, p) -> EODecomposition:
    """Non-free part of ``EO (x) CP^n_r`` from the Adams-summand closed form."""
    p = Prime(p)
    ctx = splitting_context(r, n, p)
    predicted = []
    for piece in ctx.pieces:
        if not piece.empty:
            predicted.append(Summand(r + piece.i, piece.l_index))
        if piece.top_flag:
            predicted.append(Summand(piece.top_half_shift, piece.top_length))
    main = [s for s in predicted if s.length < p]
    oracle = decompose(stunted_cohomology(r, n, p)).counter()
    rest = _multiset_minus(oracle, Counter(predicted), f"CP^{n}_{r} at p={p}")
    if any(s.length != p for s in rest.elements()):
        raise InternalContradiction(
            f"CP^{n}_{r} at p={p}: unexplained non-free summands {sorted(rest.elements())}")
    junk = [s for s in predicted if s.length == p] + list(rest.elements())
    return EODecomposition(int(p), tuple(main), tuple(junk))


def dual_summand(s: Summand, p) -> Summand:
    """Spanier-Whitehead dual: ``D Sigma^{2s} X_l = Sigma^{-2s-2(l-1)(p-1)} X_l``."""
    p = Prime(p)
    return Summand(-s.half_shift - (s.length - 1) * (p - 1), s.length)


@lru_cache(maxsize=None)
def tensor_rule(l: int, l2: int, p) -> EODecomposition:
    """Splitting of ``X_l (x) X_l2`` into shifted ``X``'s.

    The non-free pieces are ``Sigma^{2(l-j)(p-1)} X_{l2-l+2j-1}`` for
    ``j = 1..t``; the result is cross-checked against the Jordan
    decomposition of ``W_l (x) W_l2``.
    """
    p = Prime(p)
    if l > l2:
        l, l2 = l2, l
    if not 1 <= l <= l2 <= p:
        raise InvalidInput(f"lengths must satisfy 1 <= l <= l2 <= {p}, got {l}, {l2}")
    t = l if l + l2 <= p else p - l2
    formula = [Summand((l - j) * (p - 1), l2 - l + 2 * j - 1) for j in range(1, t + 1)]
    formula = [s for s in formula if s.length != p]

    brute = decompose(tensor(chain(0, l, p), chain(0, l2, p)))
    brute_main = Counter(s for s in brute if s.length < p)
    if Counter(s.length for s in formula) != Counter(s.length for s in brute_main.elements()):
        raise InternalContradiction(f"X_{l} (x) X_{l2} at p={p}: lengths disagree")
    if Counter(formula) != brute_main:
        raise InternalContradiction(f"X_{l} (x) X_{l2} at p={p}: shifts disagree")
    junk = [s for s in brute if s.length == p]
    return EODecomposition(int(p), tuple(formula), tuple(junk))


def eo_neg1_shifted_xl(s: int, l: int, p) -> FinitePGroup:
    """``EO_{-1}`` of ``Sigma^{2s} X_l``.

    Valid for ``-(2p^2-p-2) < s``. Above the upper end of the computed range
    the group vanishes for connectivity reasons, which is recorded in the
    result's justification.
    """
    p = Prime(p)
    if not 1 <= l <= p:
        raise InvalidInput(f"length must lie in [1, {p}]")
    bound = window_bound(p)
    if s <= -bound:
        raise OutOfWindow(f"shift {s} below the computed range",
                          window=f"s > {-bound}")
    if s >= bound - (p - 1) * (l - 1):
        return FinitePGroup.trivial(p, "connectivity")
    if l != p and s == -l * (p - 1):
        return FinitePGroup.cyclic(p, 1, "alpha_1 on X_l")
    return FinitePGroup.trivial(p)


def eo_neg1_pair(a: Summand, b: Summand, p) -> FinitePGroup:
    """``EO_{-1}(Sigma^{2a}X (x) Sigma^{2b}X)`` by splitting the tensor product."""
    p = Prime(p)
    total = a.half_shift + b.half_shift
    group = FinitePGroup.trivial(p)
    for piece in tensor_rule(a.length, b.length, p).main:
        group = group + eo_neg1_shifted_xl(total + piece.half_shift, piece.length, p)
    return FinitePGroup(p, group.exponents)


def eo_neg1_cp_tensor_dcp(r: int, n: int, p, debug: bool = False) -> FinitePGroup:
    """``EO_{-1}(CP^n_r (x) D CP^n_r)`` by enumerating summand pairs.

    Pairs whose half-shifts do not sum to a multiple of ``p - 1`` vanish and
    are skipped; with ``debug=True`` they are evaluated and checked to be zero.
    """
    p = Prime(p)
    if r < 0 or n < r:
        raise InvalidInput(f"need 0 <= r <= n, got r={r}, n={n}")
    check_corank_window(r, n, p)
    split = closed_form_splitting(r, n, p)
    duals = [dual_summand(s, p) for s in split.main]
    rank = 0
    for a in split.main:
        for b in duals:
            aligned = (a.half_shift + b.half_shift) % (p - 1) == 0
            if not aligned and not debug:
                continue
            g = eo_neg1_pair(a, b, p)
            if not aligned and not g.is_trivial():
                raise InternalContradiction(f"misaligned pair {a}, {b} contributes {g}")
            if any(e != 1 for e in g.exponents):
                raise InternalContradiction("EO_{-1} pieces must be elementary")
            rank += len(g.exponents)
    return FinitePGroup.elementary(p, rank, "EO pair enumeration")


def eo_neg1_shifted_cp(r: int, n: int, p) -> FinitePGroup:
    """``EO_{-1}(Sigma^{-2n} CP^n_r)`` from the splitting, summand by summand."""
    p = Prime(p)
    if r < 0 or n <= r:
        raise InvalidInput(f"need 0 <= r < n, got r={r}, n={n}")
    check_corank_window(r, n, p)
    split = closed_form_splitting(r, n, p)
    group = FinitePGroup.trivial(p)
    for s in split.main + split.junk:
        group = group + eo_neg1_shifted_xl(s.half_shift - n, s.length, p)
    return FinitePGroup(p, group.exponents, ("EO splitting of CP^n_r",))


def verify_periodicity(r: int, n: int, p, steps: int) -> bool:
    """Check the engine value is unchanged under ``(r, n) -> (r + kp, n + kp)``."""
    p = Prime(p)
    if steps < 1:
        raise InvalidInput("steps must be positive")
    base = eo_neg1_cp_tensor_dcp(r, n, p)
    return all(eo_neg1_cp_tensor_dcp(r + k * p, n + k * p, p) == base
               for k in range(1, steps + 1))
