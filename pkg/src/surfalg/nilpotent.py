"""Exact arithmetic in nilpotent quotients of a closed surface group.

Group words on the 2g letters expand, letter by letter, into the degree-K
truncation of the integral group ring: a generator goes to 1 + x and an
inverse to the truncated geometric series.  The expansion identifies the
truncated free-group ring with the truncated tensor algebra, so the surface
relation becomes the single rewrite rule bg*ag -> (lower two-letter words)
+ (the relator expansion's higher tail).  That rule has the same leading word
as the graded quotient, no self-overlaps, and strictly decreases a
shorter-word-is-bigger order, so normal forms are unique, the relator reduces
to 1 at every truncation (the keystone self-test checks this), and the
expansion descends to the surface group.  Words are then equal modulo the
(k+1)st lower-central term exactly when their expansions agree through degree
k: one direction is structural (iterated commutators expand to 1 + higher
order), the converse is certified by the rank certificates below.

The graded pieces of this filtered model are the graded quotient's reduced
words, which is why the two modules share their word bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from . import intlinalg
from .enveloping import enveloping_algebra, hilbert_dimension, letter_name
from ._kernel import mul_reduce, reduce_terms
from .errors import ResourceLimitExceeded
from .freelie import free_lie_algebra

_DIMENSION_CAP = 100_000


class GroupWord:
    """Freely reduced word over a1, b1, ..., ag, bg and their inverses.

    Letters are nonzero ints: +(i+1) is the generator with project letter
    index i, negative its inverse.  No adjacent inverse pairs survive
    construction.
    """

    __slots__ = ("genus", "letters")

    def __init__(self, genus: int, letters: Iterable[int] = ()):
        if genus < 1:
            raise ValueError("genus must be at least 1")
        stack: list[int] = []
        for l in letters:
            l = int(l)
            if l == 0 or abs(l) > 2 * genus:
                raise ValueError(f"letter {l} outside the alphabet of genus {genus}")
            if stack and stack[-1] == -l:
                stack.pop()
            else:
                stack.append(l)
        self.genus = genus
        self.letters = tuple(stack)

    @classmethod
    def generator(cls, genus: int, index: int) -> "GroupWord":
        """Generator for the 0-based project letter index."""
        if not 0 <= index < 2 * genus:
            raise ValueError(f"letter index {index} outside 0..{2 * genus - 1}")
        return cls(genus, (index + 1,))

    def _check_same(self, other: "GroupWord"):
        if self.genus != other.genus:
            raise ValueError("words over different alphabets")

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        self._check_same(other)
        return GroupWord(self.genus, self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(self.genus, tuple(-l for l in reversed(self.letters)))

    def commutator(self, other: "GroupWord") -> "GroupWord":
        return self * other * self.inverse() * other.inverse()

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other):
        return (
            isinstance(other, GroupWord)
            and self.genus == other.genus
            and self.letters == other.letters
        )

    def __hash__(self):
        return hash((self.genus, self.letters))

    def __repr__(self):
        if not self.letters:
            return "GroupWord(1)"
        bits = [
            letter_name(abs(l) - 1) + ("" if l > 0 else "^-1") for l in self.letters
        ]
        return "GroupWord(" + "*".join(bits) + ")"


def generators(genus: int) -> list[GroupWord]:
    return [GroupWord.generator(genus, i) for i in range(2 * genus)]


def surface_relator(genus: int) -> GroupWord:
    """prod_i [a_i, b_i]."""
    out = GroupWord(genus)
    for k in range(genus):
        out = out * GroupWord.generator(genus, 2 * k).commutator(
            GroupWord.generator(genus, 2 * k + 1)
        )
    return out


def _free_mul(a: dict, b: dict, max_degree: int) -> dict:
    """Truncated product in the free tensor algebra (no rewriting)."""
    out: dict = {}
    for wa, ca in a.items():
        if len(wa) > max_degree:
            continue
        for wb, cb in b.items():
            if len(wa) + len(wb) > max_degree:
                continue
            w = wa + wb
            val = out.get(w, 0) + ca * cb
            if val:
                out[w] = val
            else:
                del out[w]
    return out


class GroupRingTruncation:
    """The integral group ring of the surface group modulo degree > K.

    Identifying the truncated free-group ring with the truncated tensor
    algebra via x -> 1 + x turns the relation into the rewrite rule described
    in the module docstring.  The rule's two-letter part is the graded
    relation; its tail is the relator expansion's higher part, so reduction
    here refines the graded reduction degree by degree.
    """

    def __init__(self, genus: int, truncation: int):
        if genus < 1:
            raise ValueError("genus must be at least 1")
        if truncation < 1:
            raise ValueError("truncation must be at least 1")
        if hilbert_dimension(genus, truncation) > _DIMENSION_CAP:
            raise ResourceLimitExceeded(
                f"truncation {truncation} at genus {genus} is beyond desk scale"
            )
        self.genus = genus
        self.truncation = truncation
        self.graded = enveloping_algebra(genus)
        self.lead = self.graded.lead
        self._letter_series: dict[int, dict] = {}
        for i in range(2 * genus):
            self._letter_series[i + 1] = {(): 1, (i,): 1}
            self._letter_series[-(i + 1)] = {
                (i,) * j: (-1) ** j for j in range(truncation + 1)
            }
        if truncation == 1:
            # no two-letter words exist, so the rule below can never fire;
            # keep the graded relation as an inert placeholder
            defect = dict(self.graded.relation)
        else:
            relator_image = {(): 1}
            for l in surface_relator(genus).letters:
                relator_image = _free_mul(relator_image, self._letter_series[l], truncation)
            defect = dict(relator_image)
            defect[()] = defect.get((), 0) - 1
            defect = {w: c for w, c in defect.items() if c}
            # the two-letter part of the defect is the graded relation, with
            # the leading word carrying coefficient -1
            assert {w: c for w, c in defect.items() if len(w) == 2} == self.graded.relation
            assert all(len(w) >= 2 for w in defect)
        rhs = [(w, c) for w, c in defect.items() if w != self.lead]
        self.rhs_words = tuple(w for w, _ in rhs)
        self.rhs_coeffs = tuple(c for _, c in rhs)
        self._memo: dict = {}
        self._cache: dict[tuple[int, ...], dict] = {}

    def __repr__(self):
        return f"GroupRingTruncation(genus={self.genus}, K={self.truncation})"

    def reduce_raw(self, terms: dict) -> dict:
        return reduce_terms(
            terms, self.lead[0], self.lead[1], self.rhs_words, self.rhs_coeffs,
            self._memo, self.truncation,
        )

    def mul_raw(self, a: dict, b: dict) -> dict:
        return mul_reduce(
            a, b, self.truncation, self.lead[0], self.lead[1],
            self.rhs_words, self.rhs_coeffs, self._memo, self.truncation,
        )

    def reduced_words(self, degree: int):
        return self.graded.reduced_words(degree)

    def word_index(self, degree: int):
        return self.graded.word_index(degree)

    # -- expansion -----------------------------------------------------------

    def expand_raw(self, word: GroupWord) -> dict:
        if word.genus != self.genus:
            raise ValueError("word over a different alphabet")
        cached = self._cache.get(word.letters)
        if cached is not None:
            return cached
        acc = {(): 1}
        for l in word.letters:
            acc = self.mul_raw(acc, self._letter_series[l])
        self._cache[word.letters] = acc
        return acc

    def expand(self, word: GroupWord) -> "MagnusSeries":
        return MagnusSeries(self, self.expand_raw(word))

    def commutator_raw(self, x: GroupWord, y: GroupWord) -> dict:
        """Expansion of [x, y] from cached expansions of the four factors."""
        s = self.expand_raw(x)
        s = self.mul_raw(s, self.expand_raw(y))
        s = self.mul_raw(s, self.expand_raw(x.inverse()))
        return self.mul_raw(s, self.expand_raw(y.inverse()))


@lru_cache(maxsize=None)
def group_ring_truncation(genus: int, truncation: int) -> GroupRingTruncation:
    """Shared handle per (genus, K); expansion caches are reused process-wide."""
    return GroupRingTruncation(genus, truncation)


class MagnusSeries:
    """Degree-truncated expansion of a group word, constant term exactly 1."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: GroupRingTruncation, terms: dict):
        if terms.get((), 0) != 1:
            raise ValueError("expansion must have constant coefficient exactly 1")
        self.ring = ring
        self._terms = {w: c for w, c in terms.items() if c and len(w) <= ring.truncation}

    @property
    def truncation(self) -> int:
        return self.ring.truncation

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coefficient(self, word) -> int:
        return self._terms.get(tuple(word), 0)

    def degree_component(self, d: int) -> dict:
        return {w: c for w, c in self._terms.items() if len(w) == d}

    def is_one(self) -> bool:
        return self._terms == {(): 1}

    def min_positive_degree(self) -> int | None:
        degs = [len(w) for w in self._terms if w]
        return min(degs) if degs else None

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        if self.ring is not other.ring:
            raise ValueError("mismatched truncations")
        return MagnusSeries(self.ring, self.ring.mul_raw(self._terms, other._terms))

    def __eq__(self, other):
        return (
            isinstance(other, MagnusSeries)
            and self.ring is other.ring
            and self._terms == other._terms
        )

    def __repr__(self):
        return f"MagnusSeries(K={self.truncation}, {len(self._terms)} terms)"


def expand(word: GroupWord, truncation: int) -> MagnusSeries:
    """Multiplicative degree-truncated expansion; the identity goes to 1."""
    return group_ring_truncation(word.genus, truncation).expand(word)


def equal_in_quotient(u: GroupWord, v: GroupWord, k: int) -> bool:
    """Whether u and v agree modulo the (k+1)st lower-central-series term."""
    u._check_same(v)
    ring = group_ring_truncation(u.genus, k)
    return ring.expand(u * v.inverse()).is_one()


def hall_commutator_words(genus: int, degree: int) -> list[GroupWord]:
    """Group commutators realizing the degree-d basis bracketings."""
    fl = free_lie_algebra(2 * genus)

    def realize(tree) -> GroupWord:
        if isinstance(tree, int):
            return GroupWord.generator(genus, tree)
        return realize(tree[0]).commutator(realize(tree[1]))

    return [realize(fl.bracketing(w)) for w in fl.basis_words(degree)]


@dataclass(frozen=True)
class LayerVerdict:
    """Commutation status of one lower-central layer inside the quotient."""

    layer: int
    spanning_count: int
    central_count: int
    rank: int | None

    @property
    def centralizes(self) -> bool:
        return self.central_count == self.spanning_count


@dataclass(frozen=True)
class QuotientCenterReport:
    genus: int
    nilpotency_class: int
    layers: tuple[LayerVerdict, ...]

    @property
    def passed(self) -> bool:
        return all(
            v.centralizes == (v.layer == self.nilpotency_class) for v in self.layers
        )


def center_of_quotient(
    genus: int, k: int, layer_ranks: dict[int, int] | None = None
) -> QuotientCenterReport:
    """Which lower-central layers centralize the class-k quotient.

    Spanning cosets of each layer j <= k, realized as commutator words, are
    tested against all 2g generators modulo the (k+1)st term.  Passing means
    exactly the top layer j = k centralizes.
    """
    if k < 2:
        raise ValueError("the class-1 quotient is abelian; need k >= 2")
    ring = group_ring_truncation(genus, k)
    gens = generators(genus)
    verdicts = []
    for j in range(1, k + 1):
        spanning = hall_commutator_words(genus, j)
        central = 0
        for x in spanning:
            low = MagnusSeries(ring, ring.expand_raw(x)).min_positive_degree()
            assert low is None or low >= j, "commutator word expands below its layer"
            if all(ring.commutator_raw(x, y) == {(): 1} for y in gens):
                central += 1
        verdicts.append(
            LayerVerdict(
                layer=j,
                spanning_count=len(spanning),
                central_count=central,
                rank=None if layer_ranks is None else layer_ranks.get(j),
            )
        )
    return QuotientCenterReport(genus, k, tuple(verdicts))


@dataclass(frozen=True)
class RankCertificate:
    """Rank of the degree-k leading coefficients of the layer's expansions.

    Equality with the graded rank certifies that the expansion separates
    classes at this level: the spanning commutator words hit a module of full
    graded rank, so no class collapses invisibly.
    """

    genus: int
    level: int
    word_count: int
    rank: int
    expected_rank: int | None

    @property
    def passed(self) -> bool:
        return self.expected_rank is None or self.rank == self.expected_rank


def graded_rank_certificate(
    genus: int, level: int, expected_rank: int | None = None
) -> RankCertificate:
    if level < 1:
        raise ValueError("level must be at least 1")
    ring = group_ring_truncation(genus, level)
    words = hall_commutator_words(genus, level)
    index = ring.word_index(level)
    rows = []
    for w in words:
        series = ring.expand_raw(w)
        for ww in series:
            assert ww == () or len(ww) == level, "lower-degree term in a layer word"
        rows.append({index[ww]: c for ww, c in series.items() if ww})
    got = intlinalg.sparse_rank(rows)
    return RankCertificate(genus, level, len(words), got, expected_rank)


def verify_identity_viii(p: GroupWord, gw: GroupWord, n: GroupWord) -> bool:
    """Free-word identity splitting [p*gw, n] into a conjugated piece and a
    commutator piece: both sides must freely reduce to the same word."""
    p._check_same(gw)
    p._check_same(n)
    lhs = (p * gw).commutator(n)
    first = p * gw * n * p.inverse() * n.inverse() * p * gw.inverse() * p.inverse()
    conj = p * gw * p.inverse()
    second = conj * n * conj.inverse() * n.inverse()
    return lhs == first * second
