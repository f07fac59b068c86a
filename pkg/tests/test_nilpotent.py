"""Group words, truncated expansions, quotient centers, and the word identity."""

import random

import pytest

from surfalg.nilpotent import (
    GroupWord,
    MagnusSeries,
    center_of_quotient,
    equal_in_quotient,
    expand,
    generators,
    graded_rank_certificate,
    group_ring_truncation,
    hall_commutator_words,
    surface_relator,
    verify_identity_viii,
)
from surfalg.surface import build


def random_word(rng, genus, max_len=8):
    return GroupWord(
        genus,
        [rng.choice([1, -1]) * rng.randint(1, 2 * genus) for _ in range(rng.randint(0, max_len))],
    )


class TestGroupWord:
    def test_free_reduction(self):
        w = GroupWord(2, (1, 2, -2, -1, 3))
        assert w.letters == (3,)

    def test_inverse(self):
        w = GroupWord(2, (1, 2, -3))
        assert (w * w.inverse()).is_identity()
        assert (w.inverse() * w).is_identity()

    def test_commutator_of_self_trivial(self):
        w = GroupWord(2, (1, 2))
        assert w.commutator(w).is_identity()

    def test_alphabet_checked(self):
        with pytest.raises(ValueError):
            GroupWord(2, (5,))
        with pytest.raises(ValueError):
            GroupWord(2, (0,))

    def test_relator_letters(self):
        # [a1,b1][a2,b2] freely reduced has length 8 at genus 2
        assert len(surface_relator(2)) == 8
        assert len(surface_relator(3)) == 12


class TestExpand:
    def test_single_generator(self):
        s = expand(GroupWord.generator(2, 0), 2)
        assert s.terms == {(): 1, (0,): 1}

    def test_inverse_geometric_series(self):
        s = expand(GroupWord(2, (-1,)), 2)
        assert s.terms == {(): 1, (0,): -1, (0, 0): 1}

    def test_commutator_leading_term(self):
        s = expand(GroupWord.generator(2, 0).commutator(GroupWord.generator(2, 1)), 2)
        assert s.terms == {(): 1, (0, 1): 1, (1, 0): -1}

    def test_identity_expands_to_one(self):
        assert expand(GroupWord(3), 4).is_one()

    @pytest.mark.parametrize("genus,K", [(g, k) for g in (2, 3) for k in range(1, 6)])
    def test_relator_keystone(self, genus, K):
        assert expand(surface_relator(genus), K).is_one()

    def test_relator_conjugates_die(self):
        rng = random.Random(4)
        for genus in (2, 3):
            for _ in range(5):
                w = random_word(rng, genus, 5)
                assert expand(w * surface_relator(genus) * w.inverse(), 3).is_one()

    def test_multiplicative(self):
        rng = random.Random(7)
        for genus in (2, 3):
            for K in range(1, 6):
                for _ in range(8):
                    u, v = random_word(rng, genus), random_word(rng, genus)
                    assert expand(u * v, K) == expand(u, K) * expand(v, K)

    def test_constant_term_enforced(self):
        ring = group_ring_truncation(2, 3)
        with pytest.raises(ValueError):
            MagnusSeries(ring, {(): 2})


class TestGroupRingModel:
    def test_multiplication_associative(self):
        # truncation commutes with multiplication, so the rewritten product
        # must be associative on the nose; this probes confluence directly
        rng = random.Random(5)
        ring = group_ring_truncation(2, 4)

        def rand_poly():
            out = {(): 1}
            for _ in range(4):
                w = tuple(rng.randrange(4) for _ in range(rng.randint(0, 4)))
                out[w] = out.get(w, 0) + rng.randint(-3, 3)
            return ring.reduce_raw(out)

        for _ in range(30):
            a, b, c = rand_poly(), rand_poly(), rand_poly()
            assert ring.mul_raw(ring.mul_raw(a, b), c) == ring.mul_raw(a, ring.mul_raw(b, c))

    def test_rewrite_order_does_not_matter(self):
        # rewrite the rightmost occurrence by hand first, then let the engine
        # finish; the normal form must match the engine's leftmost strategy
        ring = group_ring_truncation(2, 6)
        lead = ring.lead
        word = lead + (0,) + lead  # two disjoint occurrences

        def manual_rewrite(w, pos):
            acc = {}
            for rw, rc in zip(ring.rhs_words, ring.rhs_coeffs):
                out = w[:pos] + rw + w[pos + 2 :]
                if len(out) <= ring.truncation:
                    acc[out] = acc.get(out, 0) + rc
            return {k: v for k, v in acc.items() if v}

        rightmost_first = ring.reduce_raw(manual_rewrite(word, 3))
        direct = ring.reduce_raw({word: 1})
        assert rightmost_first == direct

    def test_relator_tail_is_integral_and_degree_bounded(self):
        ring = group_ring_truncation(3, 4)
        assert all(2 <= len(w) <= 4 for w in ring.rhs_words)
        assert all(isinstance(c, int) for c in ring.rhs_coeffs)
        # the two-letter part matches the graded relation
        graded = {w for w in ring.rhs_words if len(w) == 2}
        assert graded == {w for w in ring.graded.relation if w != ring.lead}


class TestEqualInQuotient:
    def test_abelianization(self):
        assert equal_in_quotient(GroupWord(2, (1, 2)), GroupWord(2, (2, 1)), 1)

    def test_degree_two_distinguishes(self):
        assert not equal_in_quotient(GroupWord(2, (1, 2)), GroupWord(2, (2, 1)), 2)

    def test_relator_equals_identity(self):
        for k in range(1, 5):
            assert equal_in_quotient(surface_relator(2), GroupWord(2), k)

    def test_genus_one_torus_is_abelian(self):
        # the commutator IS the relator at genus 1
        a, b = GroupWord.generator(1, 0), GroupWord.generator(1, 1)
        assert equal_in_quotient(a * b, b * a, 3)


class TestCenterOfQuotient:
    def test_g2_k2(self):
        rep = center_of_quotient(2, 2, layer_ranks={1: 4, 2: 5})
        assert rep.passed
        top = rep.layers[-1]
        assert top.layer == 2 and top.centralizes and top.rank == 5
        assert not rep.layers[0].centralizes

    def test_g3_k2(self):
        rep = center_of_quotient(3, 2, layer_ranks={1: 6, 2: 14})
        assert rep.passed
        assert rep.layers[-1].rank == 14

    def test_g2_k3(self):
        rep = center_of_quotient(2, 3)
        assert rep.passed
        assert [v.centralizes for v in rep.layers] == [False, False, True]

    def test_requires_class_two(self):
        with pytest.raises(ValueError):
            center_of_quotient(2, 1)

    def test_agrees_with_graded_center(self):
        # two independent routes: the graded kernel computation and the
        # word-level commutator expansions must produce the same verdict
        alg = build(2, 4)
        from surfalg.surface import verify_center_theorem

        graded = verify_center_theorem(alg)
        word_level = center_of_quotient(2, 3)
        assert graded.passed and word_level.passed


class TestRankCertificates:
    @pytest.mark.parametrize(
        "genus,level,expected",
        [(2, 1, 4), (2, 2, 5), (2, 3, 16), (2, 4, 45), (3, 2, 14), (3, 3, 64)],
    )
    def test_expansion_separates_layers(self, genus, level, expected):
        cert = graded_rank_certificate(genus, level, expected_rank=expected)
        assert cert.passed, cert

    def test_rank_matches_surface_build(self):
        alg = build(2, 4)
        for level in (2, 3):
            cert = graded_rank_certificate(2, level, expected_rank=alg.rank(level))
            assert cert.passed

    def test_word_counts_are_witt_numbers(self):
        assert len(hall_commutator_words(2, 3)) == 20
        assert len(hall_commutator_words(3, 2)) == 15


class TestIdentityViii:
    def test_trivial_p(self):
        g = 2
        gw, n = GroupWord(g, (1, 2)), GroupWord(g, (3,))
        assert verify_identity_viii(GroupWord(g), gw, n)

    def test_trivial_n(self):
        g = 2
        p, gw = GroupWord(g, (1,)), GroupWord(g, (2, 3))
        assert verify_identity_viii(p, gw, GroupWord(g))

    def test_random_triples(self):
        rng = random.Random(2024)
        for _ in range(1000):
            p, gw, n = (random_word(rng, 2) for _ in range(3))
            assert verify_identity_viii(p, gw, n)


def test_generators_list():
    gens = generators(2)
    assert len(gens) == 4
    assert gens[0].letters == (1,)
