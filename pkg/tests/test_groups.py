"""Tests for the PGL(2,q) element model, action and conjugacy classes."""

import random
from collections import Counter

import pytest

from psl2q.errors import InvalidConstraintError
from psl2q.fields import field_ctx_for_q
from psl2q.groups import PGL2


@pytest.fixture(scope="module")
def groups():
    return {q: PGL2(field_ctx_for_q(q)) for q in (5, 7, 9)}


@pytest.mark.parametrize("q,pgl,psl", [(5, 120, 60), (7, 336, 168), (9, 720, 360)])
def test_group_orders(groups, q, pgl, psl):
    G = groups[q]
    assert len(G.elements("pgl")) == pgl
    assert len(G.elements("psl")) == psl
    assert len(set(G.elements("pgl"))) == pgl  # normal forms are unique


def test_action_examples(groups):
    G = groups[5]
    u = G.make(1, 1, 0, 1)
    assert G.act(0, u) == 1
    assert G.act(G.infinity, u) == G.infinity
    g = G.make(0, 2, 1, 0)  # sends 0 to infinity and infinity to 0
    assert G.act(0, g) == G.infinity
    assert G.act(G.infinity, g) == 0


@pytest.mark.parametrize("q", [5, 7])
def test_action_laws(groups, q):
    G = groups[q]
    rng = random.Random(1)
    els = G.elements("pgl")
    for _ in range(200):
        g, h = rng.choice(els), rng.choice(els)
        pt = rng.choice(list(G.points))
        assert G.act(pt, G.identity) == pt
        assert G.act(G.act(pt, g), h) == G.act(pt, G.mul(g, h))
        assert G.act(G.act(pt, g), G.inv(g)) == pt


def test_normalization_idempotent(groups):
    G = groups[7]
    ctx = G.ctx
    for g in G.elements("pgl")[:50]:
        assert G.normalize(g) == g
        scaled = tuple(ctx.mul(3, v) for v in g)
        assert G.normalize(scaled) == g


def test_classify_census_q5(groups):
    # frozen oracle: exhaustive classification of all 120 elements by size
    G = groups[5]
    by_size = Counter()
    labels = set()
    for g in G.elements("pgl"):
        lab = G.classify(g)
        labels.add(lab)
    for lab in labels:
        by_size[G.class_size(lab)] += 1
    assert dict(by_size) == {1: 1, 24: 1, 15: 1, 30: 1, 10: 1, 20: 2}


@pytest.mark.parametrize("q", [5, 7, 9])
def test_class_equation(groups, q):
    G = groups[q]
    counts = Counter(G.classify(g) for g in G.elements("pgl"))
    assert sum(counts.values()) == q**3 - q
    for lab, n in counts.items():
        assert n == G.class_size(lab)
    assert set(counts) == set(G.class_labels())
    for lab in G.class_labels():
        assert G.classify(G.class_representative(lab)) == lab


@pytest.mark.parametrize("q,count", [(5, 20), (7, 63), (9, 144)])
def test_derangement_counts(groups, q, count):
    G = groups[q]
    ders = G.derangements()
    assert len(ders) == count == q * (q - 1) ** 2 // 4
    for g in ders[:25]:
        assert not G.fixed_points(g)
    assert not G.is_derangement(G.identity)
    # derangements are exactly the classes without eigenvalues in GF(q)
    for g in G.elements("psl")[:80]:
        assert G.is_derangement(g) == (len(G.fixed_points(g)) == 0)


@pytest.mark.parametrize("q", [5, 7, 9])
def test_conjugation_invariance(groups, q):
    G = groups[q]
    rng = random.Random(2)
    els = G.elements("pgl")
    for _ in range(200):
        g, k = rng.choice(els), rng.choice(els)
        assert G.classify(G.mul(G.mul(G.inv(k), g), k)) == G.classify(g)


@pytest.mark.parametrize("q", [5, 7])
def test_psl_normality(groups, q):
    G = groups[q]
    rng = random.Random(3)
    for _ in range(200):
        g = rng.choice(G.elements("pgl"))
        k = rng.choice(G.elements("psl"))
        assert G.in_psl(G.mul(G.mul(G.inv(g), k), g))


def test_swap_one_infinity(groups):
    for q in (5, 7, 9):
        G = groups[q]
        h = G.swap_one_infinity()
        assert G.act(0, h) == 0
        assert G.act(1, h) == G.infinity
        assert G.act(G.infinity, h) == 1
        ctx = G.ctx
        for b in range(2, q):
            expected = ctx.mul(b, ctx.inv(ctx.sub(b, 1)))
            assert G.act(b, h) == expected
            assert G.act(G.act(b, h), h) == b
    # q=5, b=3: 3/(3-1) = 3 * 3 = 4 in GF(5)
    assert groups[5].act(3, groups[5].swap_one_infinity()) == 4


@pytest.mark.parametrize("q", [5, 7])
def test_constrained_elements(groups, q):
    G = groups[q]
    inf = G.infinity
    sols = G.elements_with_constraints([(0, inf), (inf, 0)])
    assert len(sols) == q - 1
    for g in sols:
        assert G.act(0, g) == inf and G.act(inf, g) == 0
    unique = G.elements_with_constraints([(0, 0), (1, inf), (inf, 1)])
    assert unique == [G.swap_one_infinity()]
    with pytest.raises(InvalidConstraintError):
        G.elements_with_constraints([(0, 1), (0, 2)])
    with pytest.raises(InvalidConstraintError):
        G.elements_with_constraints([])


def test_constraints_psl_example():
    G = PGL2(field_ctx_for_q(7))
    sols = G.elements_with_constraints([(0, G.infinity), (1, 3)], "psl")
    assert len(sols) == 3  # half of the q-1 solutions in PGL


@pytest.mark.parametrize("q", [5, 7])
def test_single_constraint_fiber(groups, q):
    G = groups[q]
    sols = G.elements_with_constraints([(0, 3)])
    assert len(sols) == q * (q - 1)
    brute = sorted(g for g in G.elements("pgl") if G.act(0, g) == 3)
    assert brute == sols


def test_two_point_transitivity_q5(groups):
    G = groups[5]
    pairs = [(a, b) for a in G.points for b in G.points if a != b]
    for src in pairs:
        for tgt in pairs:
            sols = G.elements_with_constraints([(src[0], tgt[0]), (src[1], tgt[1])], "psl")
            assert sols, (src, tgt)
