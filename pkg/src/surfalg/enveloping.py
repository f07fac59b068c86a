"""The associative quotient carrying the graded Lie algebra's enveloping structure.

The free associative algebra on the 2g letters a1, b1, ..., ag, bg is divided
by the two-sided ideal generated by sum_i (a_i b_i - b_i a_i).  Under the
degree-lexicographic order with a1 < b1 < ... < ag < bg the relation's leading
word is bg*ag, giving a single degree-preserving rewrite rule with no
self-overlap; leftmost rewriting to a fixed point is therefore confluent and
normal forms decide congruence.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from . import intlinalg
from ._kernel import mul_reduce, reduce_terms, reduce_word
from .errors import ResourceLimitExceeded
from .freelie import LieElement

_DIMENSION_CAP = 100_000


def letter_name(index: int) -> str:
    """Project-wide letter naming: 2k -> a_{k+1}, 2k+1 -> b_{k+1}."""
    return f"{'ab'[index % 2]}{index // 2 + 1}"


def _deglex_key(word: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (len(word), word)


class EnvelopingAlgebra:
    """Rewriting handle for one genus; holds the shared reduction memo."""

    def __init__(self, genus: int):
        if genus < 1:
            raise ValueError("genus must be at least 1")
        self.genus = genus
        self.n_letters = 2 * genus
        relation = {}
        for k in range(genus):
            relation[(2 * k, 2 * k + 1)] = 1
            relation[(2 * k + 1, 2 * k)] = -1
        self.relation = relation
        lead = max(relation, key=_deglex_key)
        assert relation[lead] == -1
        self.lead = lead
        rhs = [(w, c) for w, c in relation.items() if w != lead]
        self.rhs_words = tuple(w for w, _ in rhs)
        self.rhs_coeffs = tuple(c for _, c in rhs)
        self._memo: dict = {}
        self._words_cache: dict[int, tuple[tuple[int, ...], ...]] = {}
        self._check_rewriting_system()

    def _check_rewriting_system(self):
        # degree-preserving, strictly decreasing, and overlap-free: these are
        # exactly the hypotheses that make the single rule confluent
        lead = self.lead
        assert all(len(w) == len(lead) for w in self.rhs_words)
        assert all(_deglex_key(w) < _deglex_key(lead) for w in self.rhs_words)
        for cut in range(1, len(lead)):
            assert lead[-cut:] != lead[:cut], "leading word overlaps itself"

    def __repr__(self):
        return f"EnvelopingAlgebra(genus={self.genus})"

    # -- reduction ----------------------------------------------------------

    def reduce_raw(self, terms: dict) -> dict:
        return reduce_terms(
            terms, self.lead[0], self.lead[1], self.rhs_words, self.rhs_coeffs, self._memo
        )

    def reduce_word_raw(self, word: tuple[int, ...]) -> dict:
        return reduce_word(
            word, self.lead[0], self.lead[1], self.rhs_words, self.rhs_coeffs, self._memo
        )

    def mul_raw(self, a: dict, b: dict, max_degree: int = -1) -> dict:
        return mul_reduce(
            a, b, max_degree, self.lead[0], self.lead[1],
            self.rhs_words, self.rhs_coeffs, self._memo,
        )

    # -- reduced-word bases --------------------------------------------------

    def reduced_words(self, degree: int) -> tuple[tuple[int, ...], ...]:
        """All normal-form words of the given length, lexicographically."""
        cached = self._words_cache.get(degree)
        if cached is not None:
            return cached
        if hilbert_dimension(self.genus, degree) > _DIMENSION_CAP:
            raise ResourceLimitExceeded(
                f"degree-{degree} reduced basis at genus {self.genus} is beyond desk scale"
            )
        l0, l1 = self.lead
        out: list[tuple[int, ...]] = []

        def extend(word: tuple[int, ...]):
            if len(word) == degree:
                out.append(word)
                return
            for letter in range(self.n_letters):
                if word and word[-1] == l0 and letter == l1:
                    continue
                extend(word + (letter,))

        extend(())
        cached = tuple(out)
        self._words_cache[degree] = cached
        return cached

    def word_index(self, degree: int) -> dict:
        return {w: i for i, w in enumerate(self.reduced_words(degree))}

    def poly(self, terms: dict) -> "NcPoly":
        return NcPoly(self, self.reduce_raw(terms))

    def letter(self, index: int) -> "NcPoly":
        if not 0 <= index < self.n_letters:
            raise ValueError(f"letter {index} outside 0..{self.n_letters - 1}")
        return NcPoly(self, {(index,): 1})

    def one(self) -> "NcPoly":
        return NcPoly(self, {(): 1})

    def from_lie(self, elem: LieElement) -> "NcPoly":
        """Enveloping image of a Lie element (bracketings as commutators)."""
        if elem.algebra.n != self.n_letters:
            raise ValueError("letter counts differ")
        raw: dict = {}

        def expand(tree) -> dict:
            if isinstance(tree, int):
                return {(tree,): 1}
            left, right = expand(tree[0]), expand(tree[1])
            out: dict = {}
            for wa, ca in left.items():
                for wb, cb in right.items():
                    for w, c in ((wa + wb, ca * cb), (wb + wa, -ca * cb)):
                        val = out.get(w, 0) + c
                        if val:
                            out[w] = val
                        else:
                            del out[w]
            return out

        for word, coeff in elem.items():
            for w, c in expand(elem.algebra.bracketing(word)).items():
                val = raw.get(w, 0) + coeff * c
                if val:
                    raw[w] = val
                else:
                    del raw[w]
        return self.poly(raw)


@lru_cache(maxsize=None)
def enveloping_algebra(genus: int) -> EnvelopingAlgebra:
    """Shared handle per genus (the reduction memo is expensive to rebuild)."""
    return EnvelopingAlgebra(genus)


class NcPoly:
    """Noncommutative polynomial stored fully reduced, no zero coefficients."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: EnvelopingAlgebra, reduced_terms: dict):
        self.algebra = algebra
        self._terms = {w: c for w, c in reduced_terms.items() if c}

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, word: Iterable[int]) -> int:
        return self._terms.get(tuple(word), 0)

    def degree_component(self, degree: int) -> dict:
        return {w: c for w, c in self._terms.items() if len(w) == degree}

    def max_degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def _check_same(self, other: "NcPoly"):
        if self.algebra is not other.algebra:
            raise ValueError("polynomials belong to different algebra handles")

    def __add__(self, other: "NcPoly") -> "NcPoly":
        self._check_same(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            val = out.get(w, 0) + c
            if val:
                out[w] = val
            else:
                del out[w]
        return NcPoly(self.algebra, out)

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def __neg__(self) -> "NcPoly":
        return NcPoly(self.algebra, {w: -c for w, c in self._terms.items()})

    def __rmul__(self, scalar: int) -> "NcPoly":
        return NcPoly(self.algebra, {w: scalar * c for w, c in self._terms.items()})

    def __mul__(self, other: "NcPoly") -> "NcPoly":
        self._check_same(other)
        return NcPoly(self.algebra, self.algebra.mul_raw(self._terms, other._terms))

    def commutator(self, other: "NcPoly") -> "NcPoly":
        return self * other - other * self

    def __eq__(self, other):
        return (
            isinstance(other, NcPoly)
            and self.algebra is other.algebra
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "NcPoly(0)"
        bits = []
        for w in sorted(self._terms, key=_deglex_key):
            c = self._terms[w]
            mono = "*".join(letter_name(x) for x in w) if w else "1"
            bits.append(f"{c}*{mono}" if mono != "1" else f"{c}")
        return "NcPoly(" + " + ".join(bits) + ")"


def reduce(algebra: EnvelopingAlgebra, raw_terms: dict) -> NcPoly:
    """Normal form of a raw polynomial {word: coeff}."""
    return algebra.poly(raw_terms)


def relation_element(genus: int) -> dict:
    """sum_i (a_i b_i - b_i a_i) as a raw polynomial."""
    return dict(enveloping_algebra(genus).relation)


def hilbert_dimension(genus: int, degree: int) -> int:
    """Count of reduced words of the given length.

    Satisfies c_d = 2g*c_{d-1} - c_{d-2}: a reduced word is any letter
    followed by a reduced word, minus the corrections from the forbidden
    factor, which biject with reduced words two letters shorter.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    n = 2 * genus
    prev2, prev1 = 1, n
    if degree == 0:
        return prev2
    if degree == 1:
        return prev1
    for _ in range(degree - 1):
        prev2, prev1 = prev1, n * prev1 - prev2
    return prev1


def center_in_degree_assoc(genus: int, degree: int) -> list[NcPoly]:
    """Basis of degree-d elements commuting with every generator.

    Exact integer kernel, restricted generator by generator; empty for
    d >= 1 is the degreewise shadow of the quotient having scalar center.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    alg = enveloping_algebra(genus)
    if hilbert_dimension(genus, degree + 1) > _DIMENSION_CAP:
        raise ResourceLimitExceeded(
            f"center system at genus {genus}, degree {degree} is beyond desk scale"
        )
    basis = alg.reduced_words(degree)
    combos: list[dict] = [{i: 1} for i in range(len(basis))]
    for letter in range(alg.n_letters):
        if not combos:
            break
        gen = {(letter,): 1}
        images = []
        for w in basis:
            img = alg.mul_raw({w: 1}, gen)
            for ww, cc in alg.mul_raw(gen, {w: 1}).items():
                val = img.get(ww, 0) - cc
                if val:
                    img[ww] = val
                else:
                    del img[ww]
            images.append(img)
        index = alg.word_index(degree + 1)
        rows = []
        for combo in combos:
            row: dict = {}
            for i, c in combo.items():
                for ww, cc in images[i].items():
                    col = index[ww]
                    val = row.get(col, 0) + c * cc
                    if val:
                        row[col] = val
                    else:
                        del row[col]
            rows.append(row)
        knl = intlinalg.sparse_left_kernel(rows)
        combos = [
            _combine_combos(kvec, combos) for kvec in knl
        ]
    out = []
    for combo in combos:
        out.append(NcPoly(alg, {basis[i]: c for i, c in combo.items()}))
    return out


def _combine_combos(kvec: dict, combos: list[dict]) -> dict:
    out: dict = {}
    for idx, coeff in kvec.items():
        for i, c in combos[idx].items():
            val = out.get(i, 0) + coeff * c
            if val:
                out[i] = val
            else:
                del out[i]
    return out


def series_product(rank_by_degree: dict, max_degree: int) -> list[int]:
    """Coefficients through t^K of prod_k (1 - t^k)^(-r_k)."""
    coeffs = [1] + [0] * max_degree
    for k, r in sorted(rank_by_degree.items()):
        if k > max_degree or r == 0:
            continue
        # multiply by (1 - t^k)^(-r) = sum_j C(j + r - 1, r - 1) t^(jk)
        factor = [0] * (max_degree + 1)
        j = 0
        while j * k <= max_degree:
            num, den = 1, 1
            for s in range(1, j + 1):
                num *= r - 1 + s
                den *= s
            factor[j * k] = num // den
            j += 1
        new = [0] * (max_degree + 1)
        for i, ci in enumerate(coeffs):
            if ci == 0:
                continue
            for j in range(0, max_degree + 1 - i):
                if factor[j]:
                    new[i + j] += ci * factor[j]
        coeffs = new
    return coeffs


def target_series(genus: int, max_degree: int) -> list[int]:
    """Coefficients through t^K of 1 / (1 - 2g t + t^2)."""
    return [hilbert_dimension(genus, d) for d in range(max_degree + 1)]


@dataclass(frozen=True)
class PbwReport:
    """Agreement of the graded ranks with the enveloping word counts."""

    genus: int
    max_degree: int
    graded_side: tuple[int, ...]
    word_side: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.graded_side == self.word_side


def pbw_consistency(surface_algebra, max_degree: int | None = None) -> PbwReport:
    """Check prod_k (1-t^k)^(-rank_k) == 1/(1 - 2g t + t^2) through t^K.

    Accepts any object exposing genus, max_degree and rank(d) (the surface
    module's algebra does).
    """
    g = surface_algebra.genus
    K = surface_algebra.max_degree if max_degree is None else max_degree
    if K > surface_algebra.max_degree:
        raise ValueError("surface algebra not built that far")
    ranks = {d: surface_algebra.rank(d) for d in range(1, K + 1)}
    lhs = series_product(ranks, K)
    rhs = target_series(g, K)
    return PbwReport(g, K, tuple(lhs), tuple(rhs))
