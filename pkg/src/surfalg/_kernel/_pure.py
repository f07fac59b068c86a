"""Pure-Python noncommutative rewrite kernel.

The compiled twin in _speedups.pyx implements the same three functions with
the same semantics; keep the two in sync.  Words are tuples of small ints,
coefficients are arbitrary-precision ints, polynomials are dicts word -> coeff
with no zero values.  The single rewrite rule sends the two-letter word
(lead0, lead1) to the polynomial given by parallel tuples rhs_words /
rhs_coeffs.  Replacement words are either two letters and lexicographically
below the leading word, or strictly longer (an inhomogeneous tail); with
max_len >= 0 words beyond that length are dropped, which makes leftmost
rewriting terminating, and the leading word never overlaps itself, so the
normal form is unique.

Callers own the memo dict and must key it per (rule, max_len); the same memo
may be shared across calls only when those two are fixed.
"""

IMPLEMENTATION = "pure"


def reduce_word(word, lead0, lead1, rhs_words, rhs_coeffs, memo, max_len=-1):
    """Normal form of a single word as a dict {word: coeff}.

    Callers must not mutate the returned dicts.
    """
    cached = memo.get(word)
    if cached is not None:
        return cached
    if 0 <= max_len < len(word):
        memo[word] = {}
        return memo[word]
    pos = -1
    for i in range(len(word) - 1):
        if word[i] == lead0 and word[i + 1] == lead1:
            pos = i
            break
    if pos < 0:
        result = {word: 1}
    else:
        pre = word[:pos]
        suf = word[pos + 2 :]
        acc = {}
        for rw, rc in zip(rhs_words, rhs_coeffs):
            part = reduce_word(
                pre + rw + suf, lead0, lead1, rhs_words, rhs_coeffs, memo, max_len
            )
            for w2, c2 in part.items():
                val = acc.get(w2, 0) + rc * c2
                if val:
                    acc[w2] = val
                else:
                    del acc[w2]
        result = acc
    memo[word] = result
    return result


def reduce_terms(terms, lead0, lead1, rhs_words, rhs_coeffs, memo, max_len=-1):
    """Normal form of a polynomial given as a dict {word: coeff}."""
    acc = {}
    for w, c in terms.items():
        if not c:
            continue
        for w2, c2 in reduce_word(
            w, lead0, lead1, rhs_words, rhs_coeffs, memo, max_len
        ).items():
            val = acc.get(w2, 0) + c * c2
            if val:
                acc[w2] = val
            else:
                acc.pop(w2, None)
    return acc


def mul_reduce(a, b, max_degree, lead0, lead1, rhs_words, rhs_coeffs, memo, max_len=-1):
    """Reduced truncated product of two reduced polynomials.

    Product words longer than max_degree are dropped before reduction (pass a
    negative max_degree for no truncation); max_len is the rewrite cutoff and
    must match the memo's.
    """
    acc = {}
    for wa, ca in a.items():
        la = len(wa)
        if not ca or 0 <= max_degree < la:
            continue
        for wb, cb in b.items():
            if not cb or 0 <= max_degree < la + len(wb):
                continue
            coeff = ca * cb
            for w2, c2 in reduce_word(
                wa + wb, lead0, lead1, rhs_words, rhs_coeffs, memo, max_len
            ).items():
                val = acc.get(w2, 0) + coeff * c2
                if val:
                    acc[w2] = val
                else:
                    del acc[w2]
    return acc
