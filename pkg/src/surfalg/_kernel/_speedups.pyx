# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _pure.py: same three functions, same semantics.

Coefficients stay arbitrary-precision Python ints; the win is typed loop
bookkeeping and C-level dict traffic in the scan/accumulate inner loops.
Keep in sync with _pure.py."""

IMPLEMENTATION = "cython"


def reduce_word(tuple word, lead0, lead1, tuple rhs_words, tuple rhs_coeffs,
                dict memo, max_len=-1):
    """Normal form of a single word as a dict {word: coeff}.

    Callers must not mutate the returned dicts.
    """
    cdef Py_ssize_t i, n, pos
    cdef int cutoff = max_len
    cached = memo.get(word)
    if cached is not None:
        return cached
    n = len(word)
    if 0 <= cutoff < n:
        result = {}
        memo[word] = result
        return result
    pos = -1
    for i in range(n - 1):
        if word[i] == lead0 and word[i + 1] == lead1:
            pos = i
            break
    if pos < 0:
        result = {word: 1}
    else:
        pre = word[:pos]
        suf = word[pos + 2:]
        acc = {}
        for i in range(len(rhs_words)):
            rw = rhs_words[i]
            rc = rhs_coeffs[i]
            part = reduce_word(pre + rw + suf, lead0, lead1, rhs_words,
                               rhs_coeffs, memo, cutoff)
            for w2, c2 in (<dict> part).items():
                val = acc.get(w2, 0) + rc * c2
                if val:
                    acc[w2] = val
                else:
                    del acc[w2]
        result = acc
    memo[word] = result
    return result


def reduce_terms(dict terms, lead0, lead1, tuple rhs_words, tuple rhs_coeffs,
                 dict memo, max_len=-1):
    """Normal form of a polynomial given as a dict {word: coeff}."""
    cdef dict acc = {}
    for w, c in terms.items():
        if not c:
            continue
        part = reduce_word(w, lead0, lead1, rhs_words, rhs_coeffs, memo, max_len)
        for w2, c2 in (<dict> part).items():
            val = acc.get(w2, 0) + c * c2
            if val:
                acc[w2] = val
            else:
                acc.pop(w2, None)
    return acc


def mul_reduce(dict a, dict b, max_degree, lead0, lead1, tuple rhs_words,
               tuple rhs_coeffs, dict memo, max_len=-1):
    """Reduced truncated product of two reduced polynomials."""
    cdef dict acc = {}
    cdef Py_ssize_t la
    cdef int cap = max_degree
    for wa, ca in a.items():
        la = len(<tuple> wa)
        if not ca or 0 <= cap < la:
            continue
        for wb, cb in b.items():
            if not cb or 0 <= cap < la + len(<tuple> wb):
                continue
            coeff = ca * cb
            part = reduce_word((<tuple> wa) + (<tuple> wb), lead0, lead1,
                               rhs_words, rhs_coeffs, memo, max_len)
            for w2, c2 in (<dict> part).items():
                val = acc.get(w2, 0) + coeff * c2
                if val:
                    acc[w2] = val
                else:
                    del acc[w2]
    return acc
