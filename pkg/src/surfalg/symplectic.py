"""The symplectic lattice, its exterior-cube action, and the point-push image.

H = Z^(2g) carries the standard form (0 I; -I 0) in the block basis
a1..ag, b1..bg.  The integral symplectic group acts on the third exterior
power; this module builds the five standard generator families, the induced
exterior-cube matrices, the contraction map realizing the splitting off of H,
the image of the point-push generators under the first Johnson map, and the
commutant certificate that pins down the unique 2g-dimensional invariant
subspace for g >= 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from . import intlinalg
from .errors import ResourceLimitExceeded
from .intlinalg import IntMatrix


@dataclass(frozen=True)
class SymplecticSpace:
    """Z^(2g) with basis a1..ag, b1..bg (block order) and the standard form."""

    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be at least 1")

    @property
    def dim(self) -> int:
        return 2 * self.genus

    def label(self, index: int) -> str:
        g = self.genus
        return f"a{index + 1}" if index < g else f"b{index - g + 1}"

    def index_of(self, label: str) -> int:
        kind, num = label[0], int(label[1:])
        if kind == "a":
            return num - 1
        if kind == "b":
            return self.genus + num - 1
        raise ValueError(f"unknown label {label!r}")

    def form_matrix(self) -> IntMatrix:
        g = self.genus
        rows = [[0] * 2 * g for _ in range(2 * g)]
        for i in range(g):
            rows[i][g + i] = 1
            rows[g + i][i] = -1
        return IntMatrix(rows)

    def pairing(self, i: int, j: int) -> int:
        g = self.genus
        if j == i + g:
            return 1
        if i == j + g:
            return -1
        return 0

    def triples(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(combinations(range(self.dim), 3))

    def triple_index(self) -> dict:
        return {t: i for i, t in enumerate(self.triples())}

    def triple_label(self, t: tuple[int, int, int]) -> str:
        return "^".join(self.label(i) for i in t)


def wedge3(i: int, j: int, k: int) -> tuple[tuple[int, int, int], int] | None:
    """Sorted triple and sign of e_i ^ e_j ^ e_k; None if an index repeats."""
    if i == j or j == k or i == k:
        return None
    sign = 1
    a, b, c = i, j, k
    if a > b:
        a, b, sign = b, a, -sign
    if b > c:
        b, c, sign = c, b, -sign
    if a > b:
        a, b, sign = b, a, -sign
    return (a, b, c), sign


class ExtVector:
    """Element of the third exterior power, coordinates over sorted triples."""

    __slots__ = ("space", "coords")

    def __init__(self, space: SymplecticSpace, coords: Iterable[int]):
        tup = tuple(int(x) for x in coords)
        n = len(space.triples())
        if len(tup) != n:
            raise ValueError(f"expected {n} coordinates, got {len(tup)}")
        self.space = space
        self.coords = tup

    @classmethod
    def zero(cls, space: SymplecticSpace) -> "ExtVector":
        return cls(space, [0] * len(space.triples()))

    @classmethod
    def wedge(cls, space: SymplecticSpace, i: int, j: int, k: int) -> "ExtVector":
        coords = [0] * len(space.triples())
        w = wedge3(i, j, k)
        if w is not None:
            t, sign = w
            coords[space.triple_index()[t]] = sign
        return cls(space, coords)

    def __add__(self, other: "ExtVector") -> "ExtVector":
        if self.space != other.space:
            raise ValueError("different spaces")
        return ExtVector(self.space, [x + y for x, y in zip(self.coords, other.coords)])

    def __neg__(self) -> "ExtVector":
        return ExtVector(self.space, [-x for x in self.coords])

    def __sub__(self, other: "ExtVector") -> "ExtVector":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "ExtVector":
        return ExtVector(self.space, [scalar * x for x in self.coords])

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, ExtVector)
            and self.space == other.space
            and self.coords == other.coords
        )

    def __repr__(self):
        bits = [
            f"{c}*{self.space.triple_label(t)}"
            for t, c in zip(self.space.triples(), self.coords)
            if c
        ]
        return "ExtVector(" + (" + ".join(bits) if bits else "0") + ")"


@dataclass(frozen=True)
class SpGenerator:
    """One lambda=1 instance of the five standard generator families.

    family is one of upper-ii, lower-ii, upper-sym, lower-sym, unit-shear;
    i, j are the 0-based block indices that instantiate it.  The matrix is
    checked against the form at construction.
    """

    space: SymplecticSpace
    family: str
    i: int
    j: int
    matrix: IntMatrix

    def __post_init__(self):
        j = self.space.form_matrix()
        if self.matrix.transpose() @ j @ self.matrix != j:
            raise ValueError(f"{self.family}({self.i},{self.j}) does not preserve the form")


def _block_matrix(g: int, top_right=None, bottom_left=None, top_left=None, bottom_right=None):
    rows = [[0] * 2 * g for _ in range(2 * g)]
    for r in range(g):
        for c in range(g):
            rows[r][c] = (top_left or _eye(g))[r][c]
            rows[g + r][g + c] = (bottom_right or _eye(g))[r][c]
            if top_right is not None:
                rows[r][g + c] = top_right[r][c]
            if bottom_left is not None:
                rows[g + r][c] = bottom_left[r][c]
    return IntMatrix(rows)


def _eye(g: int):
    return [[1 if r == c else 0 for c in range(g)] for r in range(g)]


def _unit(g: int, i: int, j: int):
    m = [[0] * g for _ in range(g)]
    m[i][j] = 1
    return m


def _sym(g: int, i: int, j: int):
    m = [[0] * g for _ in range(g)]
    m[i][j] += 1
    m[j][i] += 1
    return m


def sp_generators(g: int) -> list[SpGenerator]:
    """All five lambda=1 families over their valid index pairs.

    Counts per genus: 2g from the two diagonal families, 2*C(g,2) from the
    symmetric off-diagonal families, g(g-1) from the shear family
    (g=1: 2, g=2: 8, g=3: 18).
    """
    space = SymplecticSpace(g)
    out = []
    for i in range(g):
        out.append(SpGenerator(space, "upper-ii", i, i, _block_matrix(g, top_right=_unit(g, i, i))))
    for i in range(g):
        out.append(SpGenerator(space, "lower-ii", i, i, _block_matrix(g, bottom_left=_unit(g, i, i))))
    for i in range(g):
        for j in range(i + 1, g):
            out.append(SpGenerator(space, "lower-sym", i, j, _block_matrix(g, bottom_left=_sym(g, i, j))))
    for i in range(g):
        for j in range(i + 1, g):
            out.append(SpGenerator(space, "upper-sym", i, j, _block_matrix(g, top_right=_sym(g, i, j))))
    for i in range(g):
        for j in range(g):
            if i == j:
                continue
            tl = _eye(g)
            tl[i][j] += 1
            br = _eye(g)
            br[j][i] -= 1
            out.append(SpGenerator(space, "unit-shear", i, j, _block_matrix(g, top_left=tl, bottom_right=br)))
    return out


def _det3(m, rows, cols) -> int:
    (r0, r1, r2), (c0, c1, c2) = rows, cols
    return (
        m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1])
        - m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0])
        + m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0])
    )


def lambda3_action(m: IntMatrix | SpGenerator) -> IntMatrix:
    """Induced matrix on the third exterior power, via 3x3 minors.

    Entry ((p<q<r), (i<j<k)) is det m[[p,q,r], [i,j,k]]; functoriality
    (composition goes to composition) is the Cauchy-Binet identity.
    """
    if isinstance(m, SpGenerator):
        m = m.matrix
    n = m.rows
    if n != m.cols:
        raise ValueError("need a square matrix")
    trips = tuple(combinations(range(n), 3))
    ent = m.entries
    rows = []
    for t_out in trips:
        rows.append([_det3(ent, t_out, t_in) for t_in in trips])
    return IntMatrix(rows)


def contraction_matrix(space: SymplecticSpace) -> IntMatrix:
    """Matrix of x^y^z -> w(x,y) z - w(x,z) y + w(y,z) x, shape 2g x C(2g,3)."""
    n = space.dim
    cols = []
    for (i, j, k) in space.triples():
        col = [0] * n
        col[k] += space.pairing(i, j)
        col[j] -= space.pairing(i, k)
        col[i] += space.pairing(j, k)
        cols.append(col)
    return IntMatrix([[cols[c][r] for c in range(len(cols))] for r in range(n)])


def contraction(v: ExtVector | Sequence[int], space: SymplecticSpace) -> tuple[int, ...]:
    """Contraction of an exterior-cube vector down to H; linear and
    equivariant for the symplectic action."""
    coords = v.coords if isinstance(v, ExtVector) else tuple(int(x) for x in v)
    c = contraction_matrix(space)
    out = [0] * space.dim
    for r in range(space.dim):
        row = c.row(r)
        out[r] = sum(row[i] * coords[i] for i in range(len(coords)))
    return tuple(out)


def theta_wedge(space: SymplecticSpace, vec: Sequence[int]) -> ExtVector:
    """theta ^ v with theta = sum_i a_i ^ b_i."""
    g = space.genus
    index = space.triple_index()
    coords = [0] * len(space.triples())
    for k in range(g):
        for m, c in enumerate(vec):
            if not c:
                continue
            w = wedge3(k, g + k, m)
            if w is None:
                continue
            t, sign = w
            coords[index[t]] += sign * c
    return ExtVector(space, coords)


def theta_section_matrix(space: SymplecticSpace) -> IntMatrix:
    """Matrix of v -> theta ^ v, shape C(2g,3) x 2g."""
    n = space.dim
    cols = [theta_wedge(space, [1 if r == m else 0 for r in range(n)]).coords for m in range(n)]
    return IntMatrix([[cols[c][r] for c in range(n)] for r in range(len(space.triples()))], cols=n)


def johnson_image(g: int) -> IntMatrix:
    """Rows theta^a1, theta^b1, ..., theta^ag, theta^bg in triple coordinates.

    For g >= 2 these are independent and span a direct summand (unit
    invariant factors): the point-push generators hit a partial basis.
    """
    if g < 2:
        raise ValueError("genus must be at least 2")
    space = SymplecticSpace(g)
    rows = []
    for k in range(g):
        for idx in (k, g + k):  # a_{k+1}, b_{k+1} in the project label order
            basis_vec = [1 if m == idx else 0 for m in range(space.dim)]
            rows.append(theta_wedge(space, basis_vec).coords)
    return IntMatrix(rows, cols=len(space.triples()))


def _sparse_right_kernel(rows: list[dict], n_unknowns: int) -> list[dict]:
    """Basis of {y : (rows) y = 0}, as dicts over the unknown indices."""
    cols: list[dict] = [dict() for _ in range(n_unknowns)]
    for r, row in enumerate(rows):
        for c, v in row.items():
            if v:
                cols[c][r] = v
    return intlinalg.sparse_left_kernel(cols)


def _commutation_rows(action: IntMatrix):
    """Sparse equations A X - X A = 0 over the flattened unknown X."""
    n = action.rows
    ent = action.entries
    a_rows = [{k: ent[r][k] for k in range(n) if ent[r][k]} for r in range(n)]
    a_cols = [{k: ent[k][c] for k in range(n) if ent[k][c]} for c in range(n)]
    for r in range(n):
        for c in range(n):
            eq: dict = {}
            for k, v in a_rows[r].items():
                eq[k * n + c] = eq.get(k * n + c, 0) + v
            for k, v in a_cols[c].items():
                val = eq.get(r * n + k, 0) - v
                if val:
                    eq[r * n + k] = val
                else:
                    eq.pop(r * n + k, None)
            if eq:
                yield eq


def commutant_dimension(g: int) -> int:
    """Dimension of the matrices commuting with the exterior-cube action.

    The value 2 certifies exactly two irreducible summands of distinct
    dimensions (2g and C(2g,3) - 2g), hence exactly one invariant subspace of
    dimension 2g: any other would force extra commuting projections.
    Generators restrict the solution space one at a time, so the system
    shrinks quickly after the first one.
    """
    if g < 3:
        raise ValueError("the uniqueness certificate is stated for genus >= 3")
    n = len(SymplecticSpace(g).triples())
    if n > 150:
        raise ResourceLimitExceeded(
            f"commutant system with {n * n} unknowns is beyond desk scale"
        )
    basis: list[dict] | None = None  # vectors over the n*n unknowns
    for gen in sp_generators(g):
        rows = []
        if basis is None:
            rows = list(_commutation_rows(lambda3_action(gen)))
            width = n * n
        else:
            by_unknown: dict[int, dict] = {}
            for j, vec in enumerate(basis):
                for i, v in vec.items():
                    by_unknown.setdefault(i, {})[j] = v
            for eq in _commutation_rows(lambda3_action(gen)):
                row: dict = {}
                for i, a in eq.items():
                    for j, b in by_unknown.get(i, {}).items():
                        val = row.get(j, 0) + a * b
                        if val:
                            row[j] = val
                        else:
                            del row[j]
                if row:
                    rows.append(row)
            width = len(basis)
        combos = _sparse_right_kernel(rows, width)
        if not combos:
            return 0
        if basis is None:
            basis = combos
        else:
            new_basis = []
            for combo in combos:
                vec: dict = {}
                for j, c in combo.items():
                    for i, v in basis[j].items():
                        val = vec.get(i, 0) + c * v
                        if val:
                            vec[i] = val
                        else:
                            del vec[i]
                new_basis.append(vec)
            basis = new_basis
    return 0 if basis is None else len(basis)


def h_projector(space: SymplecticSpace) -> IntMatrix:
    """(g-1) times the projection onto the copy of H, as an integer matrix.

    P = section . contraction satisfies P^2 = (g-1) P and commutes with the
    action; it witnesses, constructively, one nontrivial element of the
    commutant."""
    return theta_section_matrix(space) @ contraction_matrix(space)


class RoundtripReport(NamedTuple):
    """Outcome of the integral-points roundtrip on an invariant summand."""

    invariant: bool
    summand: bool
    roundtrip_holds: bool | None

    def __bool__(self) -> bool:
        return self.invariant and self.summand and bool(self.roundtrip_holds)


def summand_correspondence_roundtrip(v: IntMatrix, g: int) -> RoundtripReport:
    """Rationalize-then-saturate roundtrip on a submodule of the cube.

    Checks that the rows are carried into their own span by every generator
    action and span a direct summand; when both hold, the integral points of
    the spanned rational subspace must reproduce the same summand.  Status is
    reported rather than assumed so callers can probe non-examples.
    """
    space = SymplecticSpace(g)
    n = len(space.triples())
    if v.cols != n:
        raise intlinalg.DimensionMismatch(f"rows must have {n} coordinates")
    invariant = True
    for gen in sp_generators(g):
        act = lambda3_action(gen)
        image = v @ act.transpose()  # row vectors transform by the transpose
        for row in image.entries:
            if not intlinalg.row_span_contains(v, row):
                invariant = False
                break
        if not invariant:
            break
    summand = intlinalg.is_direct_summand(v, n)
    if not (invariant and summand):
        return RoundtripReport(invariant, summand, None)
    integral_points = intlinalg.saturate(v, n)
    roundtrip = intlinalg.same_row_span(integral_points, v)
    return RoundtripReport(invariant, summand, roundtrip)
