"""Exact linear algebra over the integers.

Smith and Hermite normal forms with unimodular transforms, integer kernels,
row-span saturation, and direct-summand certificates.  Coefficients are
arbitrary-precision Python ints throughout; numpy object arrays are used as
containers so that row and column sweeps stay vectorized.  Every matrix value
is immutable and every operation returns fresh results, so all functions here
are safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class DimensionMismatch(ValueError):
    """An operand's shape contradicts the stated ambient rank."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b), g >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


class IntMatrix:
    """Immutable exact integer matrix.

    Dimensions are fixed at construction.  A matrix may have zero rows (an
    empty family of vectors in a known ambient space) but its column count
    must then be given explicitly.
    """

    __slots__ = ("_data", "_rows", "_cols")

    def __init__(self, rows: Iterable[Iterable[int]], cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            widths = {len(r) for r in data}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            width = widths.pop()
            if cols is not None and cols != width:
                raise DimensionMismatch(f"rows have {width} columns, expected {cols}")
            cols = width
        elif cols is None:
            raise ValueError("a matrix with no rows needs an explicit column count")
        self._data = data
        self._rows = len(data)
        self._cols = cols

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "IntMatrix":
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls([[int(x) for x in row] for row in arr], cols=arr.shape[1])

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return self._rows, self._cols

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        return self._data

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._data[i][j]

    def to_array(self) -> np.ndarray:
        """Fresh numpy object array holding the entries."""
        arr = np.empty((self._rows, self._cols), dtype=object)
        for i, r in enumerate(self._data):
            arr[i, :] = r
        return arr

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self._data[i][j] for i in range(self._rows)] for j in range(self._cols)],
            cols=self._rows,
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self._cols != other._rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if self._rows == 0 or other._cols == 0:
            return IntMatrix.zeros(self._rows, other._cols)
        return IntMatrix.from_array(self.to_array().dot(other.to_array()))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self._data == other._data and self._cols == other._cols

    def __hash__(self) -> int:
        return hash((self._data, self._cols))

    def __repr__(self) -> str:
        return f"IntMatrix({list(map(list, self._data))!r})"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form u @ a @ v == diag(d), with u, v unimodular.

    The invariant factors d are non-negative and each divides the next.
    """

    d: tuple[int, ...]
    u: IntMatrix
    v: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x != 0)

    @property
    def nonzero_factors(self) -> tuple[int, ...]:
        return tuple(x for x in self.d if x != 0)


@dataclass(frozen=True)
class FgAbGroup:
    """Finitely generated abelian group: free rank plus invariant-factor torsion."""

    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion factors must form a divisibility chain")
        if any(t <= 1 for t in self.torsion):
            raise ValueError("torsion factors must exceed 1")

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}" if self.free_rank > 1 else "Z")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def _swap_rows(mats: list[np.ndarray], i: int, j: int) -> None:
    for m in mats:
        m[[i, j], :] = m[[j, i], :]


def _swap_cols(mats: list[np.ndarray], i: int, j: int) -> None:
    for m in mats:
        m[:, [i, j]] = m[:, [j, i]]


def _min_abs_pivot(m: np.ndarray, t: int) -> tuple[int, int] | None:
    """Position of a least-|value| nonzero entry of m[t:, t:], or None."""
    best = None
    best_val = None
    sub = m[t:, t:]
    nz = np.nonzero(sub)
    for i, j in zip(*nz):
        v = abs(sub[i, j])
        if best_val is None or v < best_val:
            best, best_val = (t + int(i), t + int(j)), v
            if v == 1:
                break
    return best


def snf(a: IntMatrix) -> SnfResult:
    """Smith normal form with unimodular transforms.

    Pivots are chosen with minimal absolute value to bound coefficient growth.
    Total on any matrix with at least one row and one column.
    """
    if a.rows == 0 or a.cols == 0:
        raise ValueError("snf needs at least one row and one column")
    m = a.to_array()
    nrows, ncols = m.shape
    u = IntMatrix.identity(nrows).to_array()
    v = IntMatrix.identity(ncols).to_array()
    t = 0
    while t < min(nrows, ncols):
        pos = _min_abs_pivot(m, t)
        if pos is None:
            break
        i, j = pos
        if i != t:
            _swap_rows([m, u], t, i)
        if j != t:
            _swap_cols([m, v], t, j)
        while True:
            if m[t, t] < 0:
                m[t, t:] = -m[t, t:]
                u[t, :] = -u[t, :]
            p = m[t, t]
            col = m[t + 1 :, t]
            if np.any(col != 0):
                q = col // p
                m[t + 1 :, t:] -= q[:, None] * m[t, t:]
                u[t + 1 :, :] -= q[:, None] * u[t, :]
                if np.any(m[t + 1 :, t] != 0):
                    # a remainder smaller than p survives; re-pivot on it
                    pos = _min_abs_pivot(m, t)
                    i, j = pos
                    if i != t:
                        _swap_rows([m, u], t, i)
                    if j != t:
                        _swap_cols([m, v], t, j)
                    continue
            row = m[t, t + 1 :]
            if np.any(row != 0):
                q = row // p
                m[t:, t + 1 :] -= m[t:, t : t + 1] * q[None, :]
                v[:, t + 1 :] -= v[:, t : t + 1] * q[None, :]
                if np.any(m[t, t + 1 :] != 0):
                    pos = _min_abs_pivot(m, t)
                    i, j = pos
                    if i != t:
                        _swap_rows([m, u], t, i)
                    if j != t:
                        _swap_cols([m, v], t, j)
                    continue
            # column and row are clear; enforce that p divides the rest
            rest = m[t + 1 :, t + 1 :]
            bad = np.nonzero(rest % p)
            if bad[0].size:
                i = t + 1 + int(bad[0][0])
                m[t, t:] += m[i, t:]
                u[t, :] += u[i, :]
                continue
            break
        t += 1
    d = tuple(int(m[k, k]) for k in range(min(nrows, ncols)))
    res = SnfResult(d, IntMatrix.from_array(u), IntMatrix.from_array(v))
    # checked postcondition: the transforms reproduce diag(d) exactly
    check = res.u.to_array().dot(a.to_array()).dot(res.v.to_array())
    expect = np.zeros((nrows, ncols), dtype=object)
    for k, dk in enumerate(d):
        expect[k, k] = dk
    assert np.array_equal(check, expect), "snf postcondition violated"
    return res


def hermite_with_transform(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Row Hermite normal form (h, u, u_inv) with u @ a == h and u @ u_inv == I.

    h is in row-echelon form with positive pivots and reduced entries above
    each pivot; zero rows come last.  u is unimodular and u_inv its inverse,
    tracked without rational arithmetic.
    """
    nrows, ncols = a.shape
    if nrows == 0:
        return a, IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 0)
    m = a.to_array()
    u = IntMatrix.identity(nrows).to_array()
    w = IntMatrix.identity(nrows).to_array()  # u_inv
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if m[i, c] != 0:
                if pivot_row is None or abs(m[i, c]) < abs(m[pivot_row, c]):
                    pivot_row = i
        if pivot_row is None:
            continue
        if pivot_row != r:
            _swap_rows([m, u], r, pivot_row)
            _swap_cols([w], r, pivot_row)
        for i in range(r + 1, nrows):
            while m[i, c] != 0:
                aa, bb = m[r, c], m[i, c]
                if bb % aa == 0:
                    q = bb // aa
                    m[i, :] -= q * m[r, :]
                    u[i, :] -= q * u[r, :]
                    w[:, r] += q * w[:, i]
                else:
                    x, y, g = xgcd(aa, bb)
                    s, tt = -(bb // g), aa // g
                    new_r = x * m[r, :] + y * m[i, :]
                    new_i = s * m[r, :] + tt * m[i, :]
                    m[r, :], m[i, :] = new_r, new_i
                    new_ur = x * u[r, :] + y * u[i, :]
                    new_ui = s * u[r, :] + tt * u[i, :]
                    u[r, :], u[i, :] = new_ur, new_ui
                    # right-multiply w by the inverse [[tt, -y], [-s, x]]
                    col_r = tt * w[:, r] - s * w[:, i]
                    col_i = -y * w[:, r] + x * w[:, i]
                    w[:, r], w[:, i] = col_r, col_i
        if m[r, c] < 0:
            m[r, :] = -m[r, :]
            u[r, :] = -u[r, :]
            w[:, r] = -w[:, r]
        p = m[r, c]
        for i in range(r):
            q = m[i, c] // p
            if q:
                m[i, :] -= q * m[r, :]
                u[i, :] -= q * u[r, :]
                w[:, r] += q * w[:, i]
        r += 1
    return IntMatrix.from_array(m), IntMatrix.from_array(u), IntMatrix.from_array(w)


def row_span_hnf(a: IntMatrix) -> IntMatrix:
    """Canonical basis (Hermite form, zero rows dropped) of the row span."""
    h, _, _ = hermite_with_transform(a)
    keep = [r for r in h.entries if any(x != 0 for x in r)]
    return IntMatrix(keep, cols=a.cols)


def rank(a: IntMatrix) -> int:
    if a.rows == 0:
        return 0
    return row_span_hnf(a).rows


def same_row_span(a: IntMatrix, b: IntMatrix) -> bool:
    if a.cols != b.cols:
        raise DimensionMismatch("ambient dimensions differ")
    return row_span_hnf(a) == row_span_hnf(b)


def row_span_contains(a: IntMatrix, vec: Sequence[int]) -> bool:
    """Whether vec lies in the integer row span of a."""
    if len(vec) != a.cols:
        raise DimensionMismatch("vector length differs from column count")
    h = row_span_hnf(a)
    v = list(int(x) for x in vec)
    for hrow in h.entries:
        c = next((j for j, x in enumerate(hrow) if x != 0), None)
        if c is None:
            continue
        if v[c] == 0:
            continue
        if v[c] % hrow[c] != 0:
            return False
        q = v[c] // hrow[c]
        for j in range(c, len(v)):
            v[j] -= q * hrow[j]
    return all(x == 0 for x in v)


def kernel(a: IntMatrix) -> IntMatrix:
    """Lattice basis (rows) of {x : a @ x == 0}, x a column vector."""
    at = a.transpose()
    h, u, _ = hermite_with_transform(at)
    nz = sum(1 for r in h.entries if any(x != 0 for x in r))
    return IntMatrix(u.entries[nz:], cols=a.cols)


def left_kernel(a: IntMatrix) -> IntMatrix:
    """Lattice basis (rows) of {c : c @ a == 0}."""
    h, u, _ = hermite_with_transform(a)
    nz = sum(1 for r in h.entries if any(x != 0 for x in r))
    return IntMatrix(u.entries[nz:], cols=a.rows)


def is_direct_summand(span_gens: IntMatrix, ambient_rank: int) -> bool:
    """Whether the row span is a saturated submodule of Z^ambient_rank.

    True iff every nonzero Smith invariant factor equals 1.
    """
    if span_gens.cols != ambient_rank:
        raise DimensionMismatch(
            f"generators live in Z^{span_gens.cols}, ambient is Z^{ambient_rank}"
        )
    if span_gens.rows == 0 or span_gens.is_zero():
        return True
    return all(x == 1 for x in snf(span_gens).nonzero_factors)


def saturate(span_gens: IntMatrix, ambient_rank: int) -> IntMatrix:
    """Basis of the smallest direct summand containing the row span.

    Computed from the Hermite form of the transpose: with u @ span^T in
    echelon form and rank r, the first r columns of u^{-1} are a basis of the
    saturation (they extend to a basis of the ambient lattice, so their span
    is saturated, and it contains the row span with the same rational span).
    """
    if span_gens.cols != ambient_rank:
        raise DimensionMismatch(
            f"generators live in Z^{span_gens.cols}, ambient is Z^{ambient_rank}"
        )
    if span_gens.rows == 0 or span_gens.is_zero():
        return IntMatrix.zeros(0, ambient_rank)
    h, u, u_inv = hermite_with_transform(span_gens.transpose())
    r = sum(1 for row in h.entries if any(x != 0 for x in row))
    basis = [[u_inv[i, k] for i in range(ambient_rank)] for k in range(r)]
    return row_span_hnf(IntMatrix(basis, cols=ambient_rank))


class SummandTransfer(NamedTuple):
    """Verdict pair for the retract-transfer property of composed maps.

    composite_gives_summand: the image of l3 @ l1 is a direct summand of full
    rank (the rank of l1's domain).  factor_gives_summand: the image of l1 is
    a direct summand.  The tuple is truthy iff the implication
    composite => factor holds on this instance.
    """

    composite_gives_summand: bool
    factor_gives_summand: bool

    def __bool__(self) -> bool:
        return (not self.composite_gives_summand) or self.factor_gives_summand


def verify_summand_transfer(l1: IntMatrix, l3: IntMatrix) -> SummandTransfer:
    """Check, on one instance, that a split-injective composite forces l1 split.

    l1 and l3 are matrices of maps in the column convention, so the composite
    is l3 @ l1; images are taken as row spans of the transposes.
    """
    if l3.cols != l1.rows:
        raise DimensionMismatch(f"cannot compose {l3.shape} after {l1.shape}")
    l2 = l3 @ l1
    im_l2 = l2.transpose()
    composite = is_direct_summand(im_l2, l2.rows) and rank(im_l2) == l1.cols
    factor = is_direct_summand(l1.transpose(), l1.rows)
    return SummandTransfer(composite, factor)


def cokernel(a: IntMatrix) -> FgAbGroup:
    """Invariant factors of Z^cols / rowspan(a); rows are relations."""
    if a.rows == 0 or a.is_zero():
        return FgAbGroup(a.cols, ())
    res = snf(a)
    nonzero = res.nonzero_factors
    free = a.cols - len(nonzero)
    torsion = tuple(x for x in nonzero if x > 1)
    return FgAbGroup(free, torsion)


# ---------------------------------------------------------------------------
# Sparse integer echelon engine, used by the larger kernel/rank computations
# (commutant systems, enveloping center checks, expansion rank certificates).
# Rows are dicts {column: coefficient}.


def _axpy(target: dict, source: dict, factor: int) -> None:
    if factor == 0:
        return
    for c, val in source.items():
        new = target.get(c, 0) + factor * val
        if new:
            target[c] = new
        else:
            target.pop(c, None)


def sparse_echelon(
    rows: Iterable[dict], want_kernel: bool = False
) -> tuple[dict, list[dict]]:
    """Bring sparse integer rows to echelon form by unimodular combinations.

    Returns (pivots, kernel) where pivots maps a column index to the echelon
    row with that leading column, and kernel lists coefficient dicts
    {input_row_index: coefficient} spanning the left kernel lattice (empty
    unless want_kernel).
    """
    pivots: dict[int, tuple[dict, dict | None]] = {}
    kernel_rows: list[dict] = []
    for idx, row in enumerate(rows):
        vec = {c: v for c, v in row.items() if v}
        trans: dict | None = {idx: 1} if want_kernel else None
        installed = False
        while vec:
            c = min(vec)
            entry = pivots.get(c)
            if entry is None:
                pivots[c] = (vec, trans)
                installed = True
                break
            prow, ptrans = entry
            aa, bb = prow[c], vec[c]
            if bb % aa == 0:
                q = bb // aa
                _axpy(vec, prow, -q)
                if want_kernel:
                    _axpy(trans, ptrans, -q)
            else:
                x, y, g = xgcd(aa, bb)
                s, tt = -(bb // g), aa // g
                new_p = _combine(prow, x, vec, y)
                new_v = _combine(prow, s, vec, tt)
                new_pt = new_vt = None
                if want_kernel:
                    new_pt = _combine(ptrans, x, trans, y)
                    new_vt = _combine(ptrans, s, trans, tt)
                pivots[c] = (new_p, new_pt)
                vec, trans = new_v, new_vt
        if not installed and want_kernel and not vec:
            kernel_rows.append(trans)
    return pivots, kernel_rows


def _combine(a: dict, ca: int, b: dict, cb: int) -> dict:
    out = {}
    for c, v in a.items():
        val = ca * v
        if val:
            out[c] = val
    for c, v in b.items():
        val = out.get(c, 0) + cb * v
        if val:
            out[c] = val
        else:
            out.pop(c, None)
    return out


def sparse_rank(rows: Iterable[dict]) -> int:
    pivots, _ = sparse_echelon(rows, want_kernel=False)
    return len(pivots)


def sparse_left_kernel(rows: Sequence[dict]) -> list[dict]:
    """Basis, as {row_index: coefficient} dicts, of the rows' left kernel."""
    _, knl = sparse_echelon(rows, want_kernel=True)
    return knl
