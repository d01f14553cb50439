import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from cpbundles import fp
from cpbundles.comodule import (Decomposition, GradedComodule, Summand, adams_summand,
                                assemble, chain, decompose, dualize, p1_iterated_coeff,
                                stunted_cohomology, tensor)
from cpbundles.errors import InvalidInput

primes = st.sampled_from([2, 3, 5, 7])


def chain_counts_from_ranks(c):
    """Chains per (start degree, length) from ranks of powers of P^1 alone.

    A chain of length L starting at d is counted by
    r_{L-1}(d) - r_L(d) - r_L(d-s) + r_{L+1}(d-s), where r_k(d) is the rank of
    (P^1)^k leaving degree d and s is the degree step.
    """
    p, s = c.prime, c.step
    out = Counter()
    for d in c.by_degree():
        for L in range(1, p + 1):
            k = (c.power_rank(d, L - 1) - c.power_rank(d, L)
                 - c.power_rank(d - s, L) + c.power_rank(d - s, L + 1))
            if k:
                out[Summand(d // 2, L)] += k
    return out


def conjugate(c, seed):
    """Same module after a random invertible basis change inside every degree."""
    rnd = random.Random(seed)
    p = c.prime
    groups = c.by_degree()
    change = {}
    for d, idx in groups.items():
        k = len(idx)
        while True:
            g = [[rnd.randrange(p) for _ in range(k)] for _ in range(k)]
            if fp.rank(g, p) == k:
                break
        change[d] = g
    # new basis vector b'_j = sum_i g[i][j] b_i; express P^1 b'_j in the new basis
    inv = {}
    for d, g in change.items():
        k = len(g)
        aug = [row + [int(i == j) for j in range(k)] for i, row in enumerate(g)]
        red, _ = fp.reduce_rows(aug, p)
        inv[d] = [row[k:] for row in red]
    action = {}
    for d, idx in groups.items():
        tgt = groups.get(d + c.step)
        if not tgt:
            continue
        t = c.operator_matrix(d, 1)
        m = fp.matmul(inv[d + c.step], fp.matmul(t, change[d], p), p)
        for j, col_src in enumerate(idx):
            img = {tgt[i]: m[i][j] for i in range(len(tgt)) if m[i][j]}
            if img:
                action[col_src] = img
    return GradedComodule(p, c.basis, action)


@st.composite
def decompositions(draw):
    p = draw(primes)
    items = draw(st.lists(st.tuples(st.integers(-6, 6), st.integers(1, p)), max_size=6))
    return Decomposition(p, tuple(Summand(s * (p - 1) + draw(st.integers(0, 1)), l)
                                  for s, l in items))


def test_p1_coeff_examples():
    assert p1_iterated_coeff(9, 1, 3) == 0
    assert p1_iterated_coeff(11, 1, 3) == 2
    assert p1_iterated_coeff(123, 0, 5) == 1


@given(st.integers(0, 200), st.integers(0, 8), primes)
def test_p1_coeff_matches_iterated_action(k, j, p):
    # iterate P^1 x_m = m x_{m+p-1} step by step
    coeff, m = 1, k
    for _ in range(j):
        coeff = coeff * m % p
        m += p - 1
    assert p1_iterated_coeff(k, j, p) == coeff


def test_stunted_9_13():
    c = stunted_cohomology(9, 13, 3)
    assert c.degrees() == [18, 20, 22, 24, 26]
    labels = [l for l, _ in c.basis]
    named = {labels[i]: {labels[j]: a for j, a in img.items()} for i, img in c.action.items()}
    assert named == {"x10": {"x12": 1}, "x11": {"x13": 2}}


def test_stunted_edge_cases():
    assert stunted_cohomology(4, 4, 5).action == {}
    assert stunted_cohomology(0, 4, 5).action == {}
    with pytest.raises(InvalidInput):
        stunted_cohomology(5, 4, 3)


def test_adams_summands_9_13():
    c = stunted_cohomology(9, 13, 3)
    odd = adams_summand(c, 1)
    assert [l for l, _ in odd.basis] == ["x9", "x11", "x13"]
    assert odd.action == {1: {2: 2}}
    even = adams_summand(c, 0)
    assert [l for l, _ in even.basis] == ["x10", "x12"]
    assert even.action == {0: {1: 1}}


def test_adams_rejects_odd_degrees():
    c = GradedComodule(3, (("a", 1),), {})
    with pytest.raises(InvalidInput):
        adams_summand(c, 0)


def test_decompose_examples():
    assert decompose(stunted_cohomology(9, 13, 3)).pairs() == [[9, 1], [10, 2], [11, 2]]
    assert len(decompose(GradedComodule(3, (), {}))) == 0
    assert decompose(chain(4, 3, 5)).pairs() == [[4, 3]]


def test_tensor_examples():
    assert decompose(tensor(chain(0, 2, 3), chain(0, 2, 3))).pairs() == [[0, 3], [2, 1]]
    assert decompose(tensor(chain(0, 1, 5), chain(0, 4, 5))).pairs() == [[0, 4]]
    with pytest.raises(InvalidInput):
        tensor(chain(0, 1, 3), chain(0, 1, 5))


def test_dual_examples():
    assert decompose(dualize(stunted_cohomology(9, 13, 3))).pairs() == [
        [-13, 2], [-12, 2], [-9, 1]]
    for p in (3, 5):
        for l in range(1, p + 1):
            assert decompose(dualize(chain(2, l, p))).pairs() == [[-2 - (l - 1) * (p - 1), l]]


def test_invalid_modules_rejected():
    with pytest.raises(InvalidInput):
        GradedComodule(3, (("a", 0), ("b", 2)), {0: {1: 1}})  # wrong degree step
    with pytest.raises(InvalidInput):
        # a chain of length 3 at p=2 violates (P^1)^2 = 0
        GradedComodule(2, (("a", 0), ("b", 2), ("c", 4)), {0: {1: 1}, 1: {2: 1}})
    with pytest.raises(InvalidInput):
        decompose(GradedComodule(3, (("a", 1),), {}))


@given(st.integers(0, 30), st.integers(0, 25), primes)
def test_decompose_stunted_matches_rank_oracle(r, c, p):
    m = stunted_cohomology(r, r + c, p)
    d = decompose(m)
    assert d.counter() == chain_counts_from_ranks(m)
    assert d.degree_profile() == Counter(m.degrees())
    back = assemble(d)
    for deg in m.by_degree():
        for j in range(1, p + 1):
            assert back.power_rank(deg, j) == m.power_rank(deg, j)


@given(decompositions(), st.integers(0, 10**6))
def test_decompose_recovers_disguised_sum(dec, seed):
    if not len(dec):
        return
    m = conjugate(assemble(dec), seed)
    assert decompose(m).counter() == dec.counter()


@given(st.integers(1, 5), st.integers(1, 5), st.integers(-3, 3), st.integers(-3, 3), primes)
def test_tensor_order_independent(l1, l2, s1, s2, p):
    l1, l2 = min(l1, p), min(l2, p)
    a, b = chain(s1, l1, p), chain(s2, l2, p)
    ab, ba = tensor(a, b), tensor(b, a)
    assert ab.dimension == l1 * l2
    assert decompose(ab).counter() == decompose(ba).counter()


@given(st.integers(0, 20), st.integers(0, 20), primes)
def test_double_dual_and_adams_partition(r, c, p):
    m = stunted_cohomology(r, r + c, p)
    assert decompose(dualize(dualize(m))).counter() == decompose(m).counter()
    parts = Counter()
    for i in range(p - 1):
        parts += decompose(adams_summand(m, i)).counter()
    assert parts == decompose(m).counter()
