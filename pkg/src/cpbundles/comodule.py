"""Finite graded modules over F_p[P^1]/(P^1)^p.

This is the brute-force layer: stunted projective spaces are built cell by
cell from the Cartan formula ``P^1 x_i = i x_{i+p-1}`` and split into
indecomposable chains ``W_l`` by an explicit graded Jordan basis change.
The closed forms in :mod:`cpbundles.eo` are checked against it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from . import fp
from .arith import Prime, mod_rep
from .errors import InternalContradiction, InvalidInput


@dataclass(frozen=True, order=True)
class Summand:
    """``Sigma^{2 s} W_l``: ``l`` classes in degrees ``2s, 2s + 2(p-1), ...``."""

    half_shift: int
    length: int

    def degrees(self, p):
        step = 2 * (p - 1)
        return [2 * self.half_shift + k * step for k in range(self.length)]

    def as_pair(self):
        return [self.half_shift, self.length]


@dataclass(frozen=True)
class Decomposition:
    """Multiset of summands, kept in canonical (half_shift, length) order."""

    prime: int
    summands: tuple[Summand, ...] = ()

    def __post_init__(self):
        p = Prime(self.prime)
        items = tuple(sorted(Summand(*s) if not isinstance(s, Summand) else s
                             for s in self.summands))
        for s in items:
            if not 1 <= s.length <= p:
                raise InvalidInput(f"summand length {s.length} outside [1, {p}]")
        object.__setattr__(self, "prime", int(p))
        object.__setattr__(self, "summands", items)

    def __iter__(self):
        return iter(self.summands)

    def __len__(self):
        return len(self.summands)

    def counter(self) -> Counter:
        return Counter(self.summands)

    def lengths(self) -> Counter:
        return Counter(s.length for s in self.summands)

    @property
    def dimension(self) -> int:
        return sum(s.length for s in self.summands)

    def degree_profile(self) -> Counter:
        prof = Counter()
        for s in self.summands:
            prof.update(s.degrees(self.prime))
        return prof

    def pairs(self):
        return [s.as_pair() for s in self.summands]

    def __add__(self, other):
        if self.prime != other.prime:
            raise InvalidInput("prime mismatch")
        return Decomposition(self.prime, self.summands + other.summands)


@dataclass(frozen=True, eq=False)
class GradedComodule:
    """Graded F_p vector space with a degree ``2(p-1)`` operator ``P^1``.

    ``basis`` is a tuple of ``(label, degree)``; ``action[i]`` maps a basis
    index to a sparse linear combination ``{target_index: coefficient}``.
    Missing keys mean ``P^1`` kills that basis element.
    """

    prime: int
    basis: tuple[tuple[str, int], ...]
    action: Mapping[int, Mapping[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        p = Prime(self.prime)
        object.__setattr__(self, "prime", int(p))
        object.__setattr__(self, "basis", tuple((str(l), int(d)) for l, d in self.basis))
        clean = {}
        step = self.step
        for i, img in self.action.items():
            row = {}
            for j, c in img.items():
                c %= p
                if not c:
                    continue
                if self.basis[j][1] != self.basis[i][1] + step:
                    raise InvalidInput(
                        f"P^1 must raise degree by {step}: {self.basis[i]} -> {self.basis[j]}")
                row[j] = c
            if row:
                clean[i] = row
        object.__setattr__(self, "action", clean)
        if self.basis and any(self._iterate(i, p) for i in range(len(self.basis))):
            raise InvalidInput("(P^1)^p must vanish")

    @property
    def step(self) -> int:
        return 2 * (self.prime - 1)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def degrees(self):
        return [d for _, d in self.basis]

    def _iterate(self, i, times):
        vec = {i: 1}
        p = self.prime
        for _ in range(times):
            nxt = {}
            for k, c in vec.items():
                for j, a in self.action.get(k, {}).items():
                    nxt[j] = (nxt.get(j, 0) + c * a) % p
            vec = {k: c for k, c in nxt.items() if c}
            if not vec:
                break
        return vec

    def by_degree(self) -> dict[int, list[int]]:
        return self._degree_index

    @cached_property
    def _degree_index(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for idx, (_, d) in enumerate(self.basis):
            out.setdefault(d, []).append(idx)
        return out

    def operator_matrix(self, degree, power=1):
        """Matrix of ``(P^1)^power`` from ``degree`` to ``degree + power*step``."""
        groups = self.by_degree()
        src = groups.get(degree, [])
        dst = groups.get(degree + power * self.step, [])
        pos = {j: k for k, j in enumerate(dst)}
        rows = [[0] * len(src) for _ in dst]
        for col, i in enumerate(src):
            for j, c in self._iterate(i, power).items():
                rows[pos[j]][col] = c
        return rows

    def power_rank(self, degree, power) -> int:
        """Rank of ``(P^1)^power`` leaving ``degree``."""
        if power == 0:
            return len(self.by_degree().get(degree, []))
        m = self.operator_matrix(degree, power)
        return fp.rank(m, self.prime) if m and m[0] else 0


def p1_iterated_coeff(k: int, j: int, p) -> int:
    """Coefficient of ``(P^1)^j x^k = c x^{k + j(p-1)}`` modulo ``p``."""
    p = Prime(p)
    if j < 0:
        raise InvalidInput("j must be non-negative")
    c = 1
    for l in range(j):
        c = c * (k + (p - 1) * l) % p
    return c


def stunted_cohomology(r: int, n: int, p) -> GradedComodule:
    """Mod p cohomology of ``CP^n_r`` with ``P^1 x_i = i x_{i+p-1}``."""
    p = Prime(p)
    if r > n:
        raise InvalidInput(f"need r <= n, got r={r}, n={n}")
    if r < 0:
        raise InvalidInput(f"need r >= 0, got {r}")
    basis = [(f"x{i}", 2 * i) for i in range(r, n + 1)]
    action = {}
    for i in range(r, n + 1):
        c = i % p
        if c and i + p - 1 <= n:
            action[i - r] = {i + p - 1 - r: c}
    return GradedComodule(p, tuple(basis), action)


def chain(half_shift: int, length: int, p, label="w") -> GradedComodule:
    """``Sigma^{2s} W_l`` with unit coefficients along the chain."""
    p = Prime(p)
    if not 1 <= length <= p:
        raise InvalidInput(f"length must lie in [1, {p}]")
    step = 2 * (p - 1)
    basis = [(f"{label}{k}", 2 * half_shift + k * step) for k in range(length)]
    action = {k: {k + 1: 1} for k in range(length - 1)}
    return GradedComodule(p, tuple(basis), action)


def direct_sum(parts: Iterable[GradedComodule], p=None) -> GradedComodule:
    parts = list(parts)
    if p is None:
        if not parts:
            raise InvalidInput("prime required for an empty sum")
        p = parts[0].prime
    basis, action, offset = [], {}, 0
    for k, c in enumerate(parts):
        if c.prime != p:
            raise InvalidInput("prime mismatch")
        basis.extend((f"{lab}@{k}", d) for lab, d in c.basis)
        for i, img in c.action.items():
            action[i + offset] = {j + offset: a for j, a in img.items()}
        offset += c.dimension
    return GradedComodule(p, tuple(basis), action)


def assemble(decomposition: Decomposition) -> GradedComodule:
    """Reassemble a decomposition into an explicit module."""
    return direct_sum((chain(s.half_shift, s.length, decomposition.prime, f"s{k}_")
                       for k, s in enumerate(decomposition)), decomposition.prime)


def adams_summand(c: GradedComodule, i: int) -> GradedComodule:
    """Restriction to classes whose half-degree is ``i`` mod ``p - 1``."""
    p = c.prime
    if any(d % 2 for d in c.degrees()):
        raise InvalidInput("Adams summands are only defined for even degrees")
    i = mod_rep(i, p - 1).value
    keep = [idx for idx, (_, d) in enumerate(c.basis) if (d // 2) % (p - 1) == i]
    pos = {old: new for new, old in enumerate(keep)}
    action = {}
    for old in keep:
        img = c.action.get(old, {})
        action[pos[old]] = {pos[j]: a for j, a in img.items()}
    return GradedComodule(p, tuple(c.basis[k] for k in keep), action)


def tensor(a: GradedComodule, b: GradedComodule) -> GradedComodule:
    """Tensor product with ``P^1(x y) = P^1(x) y + x P^1(y)``."""
    if a.prime != b.prime:
        raise InvalidInput(f"prime mismatch: {a.prime} vs {b.prime}")
    p = a.prime
    nb = b.dimension
    basis = [(f"{la}*{lb}", da + db) for la, da in a.basis for lb, db in b.basis]
    action = {}
    for i in range(a.dimension):
        for j in range(nb):
            img = {}
            for k, c in a.action.get(i, {}).items():
                img[k * nb + j] = (img.get(k * nb + j, 0) + c) % p
            for l, c in b.action.get(j, {}).items():
                img[i * nb + l] = (img.get(i * nb + l, 0) + c) % p
            if img:
                action[i * nb + j] = img
    return GradedComodule(p, tuple(basis), action)


def dualize(c: GradedComodule) -> GradedComodule:
    """Linear dual: degrees negate, the action is transposed."""
    basis = [(f"D{lab}", -d) for lab, d in c.basis]
    action: dict[int, dict[int, int]] = {}
    for i, img in c.action.items():
        for j, a in img.items():
            action.setdefault(j, {})[i] = a
    return GradedComodule(c.prime, tuple(basis), action)


def decompose(c: GradedComodule) -> Decomposition:
    """Split ``c`` into chains ``Sigma^{2s} W_l`` via a graded Jordan basis.

    In each degree ``d`` and for each length ``L`` the chain generators are a
    complement of ``ker (P^1)^{L-1} + P^1(ker (P^1)^{L+1})`` inside
    ``ker (P^1)^L``. The resulting chains are checked to form a basis.
    """
    p = c.prime
    if any(d % 2 for d in c.degrees()):
        raise InvalidInput("decompose expects even degrees")
    if c.dimension == 0:
        return Decomposition(p)
    groups = c.by_degree()
    step = c.step

    def ker(d, power):
        dim = len(groups.get(d, []))
        if power == 0:
            return []
        m = c.operator_matrix(d, power)
        if not m:
            return [[int(k == j) for k in range(dim)] for j in range(dim)]
        return fp.kernel(m, dim, p)

    generators = []  # (degree, length, local vector)
    for d in sorted(groups):
        for L in range(p, 0, -1):
            kL = ker(d, L)
            if not kL:
                continue
            sub = list(ker(d, L - 1))
            below = d - step
            if below in groups:
                t = c.operator_matrix(below, 1)
                sub += [fp.apply(t, v, p) for v in ker(below, L + 1)]
            for v in fp.extend_independent(sub, kL, p):
                generators.append((d, L, v))

    # Expand chains into global coordinates and certify they form a basis.
    vectors = []
    summands = []
    for d, L, v in generators:
        vec = {groups[d][k]: a for k, a in enumerate(v) if a}
        for _ in range(L):
            full = [0] * c.dimension
            for i, a in vec.items():
                full[i] = a
            vectors.append(full)
            nxt = {}
            for i, a in vec.items():
                for j, b in c.action.get(i, {}).items():
                    nxt[j] = (nxt.get(j, 0) + a * b) % p
            vec = {j: a for j, a in nxt.items() if a}
        if vec:
            raise InternalContradiction(f"chain from degree {d} longer than {L}")
        summands.append(Summand(d // 2, L))
    if len(vectors) != c.dimension or fp.rank(vectors, p) != c.dimension:
        raise InternalContradiction("Jordan chains do not form a basis")
    return Decomposition(p, tuple(summands))
