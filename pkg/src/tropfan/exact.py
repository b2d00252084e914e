"""Exact linear algebra over Z, Q and prime fields.

Column-style Hermite and Smith normal forms with unimodular transforms,
saturated kernel lattices, finitely generated abelian group presentations of
subquotients, and isomorphism testing for maps between presented modules.
Everything is deterministic: the same input always yields byte-identical
bases, which downstream code relies on for reproducible reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intmat import IntMatrix, det_int, solve_int


# ---------------------------------------------------------------------------
# Rings


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingTag:
    """One of Z, Q, or the prime field F_p. All are PIDs."""

    kind: str  # "Z" | "Q" | "Fp"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"modulus not prime: {self.p}")
        elif self.p is not None:
            raise ValueError("modulus only allowed for Fp")

    @classmethod
    def Z(cls):
        return cls("Z")

    @classmethod
    def Q(cls):
        return cls("Q")

    @classmethod
    def Fp(cls, p):
        return cls("Fp", p)

    @classmethod
    def parse(cls, text: str) -> "RingTag":
        text = text.strip()
        if text == "Z":
            return cls.Z()
        if text == "Q":
            return cls.Q()
        if text.startswith("Fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise ValueError(f"bad modulus in ring tag {text!r}") from None
            return cls.Fp(p)
        raise ValueError(f"unknown ring {text!r} (expected Z, Q or Fp:<p>)")

    def __str__(self):
        return f"Fp:{self.p}" if self.kind == "Fp" else self.kind

    @property
    def is_field(self):
        return self.kind in ("Q", "Fp")

    def coerce(self, value):
        """Coerce a JSON-ish scalar (int, Fraction, or 'a/b' string) into the ring."""
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            if self.kind == "Q":
                return value
            if value.denominator != 1:
                raise ValueError(f"non-integral value {value} over {self}")
            value = int(value)
        if not isinstance(value, int):
            raise ValueError(f"cannot coerce {value!r} into {self}")
        if self.kind == "Fp":
            return value % self.p
        if self.kind == "Q":
            return Fraction(value)
        return value

    def is_zero(self, x):
        return self.coerce(x) == (0 if self.kind != "Q" else Fraction(0))

    def is_unit(self, x):
        x = self.coerce(x)
        if self.kind == "Z":
            return x in (1, -1)
        return x != 0

    def validate_weight(self, value):
        """Weights must not be zero-divisors; over Z, Q, F_p that means nonzero."""
        x = self.coerce(value)
        if self.is_zero(x):
            raise ValueError(f"weight {value!r} is a zero-divisor over {self}")
        return x


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms


def _row_hnf(m: IntMatrix):
    """Row-style HNF: returns (H, U) with H = U*m, U unimodular.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    zero rows sit at the bottom.
    """
    rows, cols = m.rows, m.cols
    a = [row[:] for row in m.data]
    u = IntMatrix.identity(rows).data
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        # Euclidean reduction in column c on rows r..end.
        while True:
            nz = [i for i in range(r, rows) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            if i0 != r:
                a[r], a[i0] = a[i0], a[r]
                u[r], u[i0] = u[i0], u[r]
            done = True
            for i in range(r + 1, rows):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            piv = a[r][c]
            for i in range(r):
                q = a[i][c] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
    return IntMatrix(rows, cols, a), IntMatrix(rows, rows, u)


def hermite_normal_form(m: IntMatrix):
    """Column-style HNF: returns (H, U) with H = m*U, U unimodular.

    Nonzero columns of H form the canonical basis of the column lattice of m;
    zero columns are pushed to the right. Pivots are positive and entries to
    the left of a pivot in its row are reduced into [0, pivot).
    """
    ht, ut = _row_hnf(m.transpose())
    return ht.transpose(), ut.transpose()


def hnf_basis(m: IntMatrix) -> IntMatrix:
    """Canonical basis (nonzero HNF columns) of the column lattice of m."""
    h, _ = hermite_normal_form(m)
    keep = [j for j in range(h.cols) if any(h.data[i][j] != 0 for i in range(h.rows))]
    return h.submatrix(range(h.rows), keep)


def smith_normal_form(m: IntMatrix):
    """Returns (S, U, V) with S = U*m*V diagonal, nonnegative, d_i | d_{i+1}."""
    rows, cols = m.rows, m.cols
    s = [row[:] for row in m.data]
    u = IntMatrix.identity(rows).data
    v = IntMatrix.identity(cols).data

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        s[dst] = [x - q * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, q):
        for row in s:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    t = 0
    while True:
        # Locate a pivot of minimal absolute value in the trailing block.
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = s[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # Clear column t.
            redo = False
            for i in range(t + 1, rows):
                if s[i][t] != 0:
                    q = s[i][t] // s[t][t]
                    addmul_row(i, t, q)
                    if s[i][t] != 0:
                        swap_rows(i, t)
                        redo = True
            if redo:
                continue
            # Clear row t.
            for j in range(t + 1, cols):
                if s[t][j] != 0:
                    q = s[t][j] // s[t][t]
                    addmul_col(j, t, q)
                    if s[t][j] != 0:
                        swap_cols(j, t)
                        redo = True
            if redo:
                continue
            # Enforce divisibility of the trailing block by the pivot.
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if s[i][j] % s[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            addmul_row(t, offender, -1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
        if t >= min(rows, cols):
            break
    return IntMatrix(rows, cols, s), IntMatrix(rows, rows, u), IntMatrix(cols, cols, v)


def invariant_factors(m: IntMatrix):
    """Diagonal of the SNF, nonzero entries only."""
    s, _, _ = smith_normal_form(m)
    out = []
    for i in range(min(s.rows, s.cols)):
        if s.data[i][i] != 0:
            out.append(s.data[i][i])
    return out


# ---------------------------------------------------------------------------
# Kernels, saturation, lattice membership


def kernel_lattice(m: IntMatrix) -> IntMatrix:
    """Canonical basis of {x in Z^cols : m x = 0}; automatically saturated."""
    if m.rows == 0:
        return IntMatrix.identity(m.cols)
    h, u = hermite_normal_form(m)
    zero_cols = [j for j in range(h.cols) if all(h.data[i][j] == 0 for i in range(h.rows))]
    basis = u.submatrix(range(u.rows), zero_cols)
    if basis.cols == 0:
        return basis
    return hnf_basis(basis)


def saturate(b: IntMatrix) -> IntMatrix:
    """Saturation of the column lattice of b (columns must be independent)."""
    if b.cols == 0:
        return b.copy()
    if len(_pivots_over_q(b)) != b.cols:
        raise ValueError("saturate requires linearly independent columns")
    perp = kernel_lattice(b.transpose())
    return kernel_lattice(perp.transpose())


def lattice_contains(basis: IntMatrix, vector) -> bool:
    """Membership of an integer vector in the column lattice of `basis`."""
    if basis.cols == 0:
        return all(x == 0 for x in vector)
    h = hnf_basis(basis) if not _is_column_echelon(basis) else basis
    v = list(vector)
    for j in range(h.cols):
        r = next(i for i in range(h.rows) if h.data[i][j] != 0)
        if v[r] % h.data[r][j] != 0:
            return False
        q = v[r] // h.data[r][j]
        if q:
            v = [x - q * h.data[i][j] for i, x in enumerate(v)]
    return all(x == 0 for x in v)


def _is_column_echelon(m: IntMatrix) -> bool:
    last = -1
    for j in range(m.cols):
        nz = [i for i in range(m.rows) if m.data[i][j] != 0]
        if not nz or nz[0] <= last:
            return False
        last = nz[0]
    return True


def _pivots_over_q(m: IntMatrix):
    """Pivot column indices of m over Q (its rank is their count)."""
    a = [[Fraction(x) for x in row] for row in m.data]
    pivots = []
    r = 0
    for c in range(m.cols):
        p = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return pivots


def rank_over_q(m: IntMatrix) -> int:
    return len(_pivots_over_q(m))


# ---------------------------------------------------------------------------
# Field elimination (Q and F_p share one code path)


class _FieldOps:
    def __init__(self, ring: RingTag):
        self.ring = ring

    def of_int(self, x):
        if self.ring.kind == "Q":
            return Fraction(x)
        return x % self.ring.p

    def inv(self, x):
        if self.ring.kind == "Q":
            return 1 / x
        return pow(x, self.ring.p - 2, self.ring.p)

    def mul(self, x, y):
        z = x * y
        return z if self.ring.kind == "Q" else z % self.ring.p

    def sub(self, x, y):
        z = x - y
        return z if self.ring.kind == "Q" else z % self.ring.p


def field_matrix(m: IntMatrix, ring: RingTag):
    ops = _FieldOps(ring)
    return [[ops.of_int(x) for x in row] for row in m.data]


def _rref(a, rows, cols, ops):
    """In-place reduced row echelon form; returns pivot column list."""
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = ops.inv(a[r][c])
        a[r] = [ops.mul(inv, x) for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return pivots


def rank_field(m: IntMatrix, ring: RingTag) -> int:
    ops = _FieldOps(ring)
    a = field_matrix(m, ring)
    return len(_rref(a, m.rows, m.cols, ops))


def kernel_field(m: IntMatrix, ring: RingTag):
    """Kernel basis over the field, as a list of coordinate columns."""
    ops = _FieldOps(ring)
    a = field_matrix(m, ring)
    pivots = _rref(a, m.rows, m.cols, ops)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for c in free:
        vec = [ops.of_int(0)] * m.cols
        vec[c] = ops.of_int(1)
        for r, pc in enumerate(pivots):
            vec[pc] = ops.sub(ops.of_int(0), a[r][c])
        basis.append(vec)
    return basis


def solve_field(a_cols, b_cols, ring: RingTag):
    """Solve A*X = B where A, B are given by columns of field elements.

    Raises ValueError when inconsistent or when A has dependent columns.
    """
    ops = _FieldOps(ring)
    n = len(a_cols[0]) if a_cols else (len(b_cols[0]) if b_cols else 0)
    ca, cb = len(a_cols), len(b_cols)
    aug = [[a_cols[j][i] for j in range(ca)] + [b_cols[j][i] for j in range(cb)] for i in range(n)]
    pivots = _rref(aug, n, ca + cb, ops)
    if any(c >= ca for c in pivots):
        raise ValueError("inconsistent system over field")
    if len(pivots) != ca:
        raise ValueError("dependent columns in field solve")
    return [[aug[r][ca + j] for r in range(ca)] for j in range(cb)]


def det_field(m: IntMatrix, ring: RingTag):
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    if ring.kind == "Q":
        return Fraction(det_int(m))
    return det_int(m) % ring.p


# ---------------------------------------------------------------------------
# Subquotient presentations and isomorphism testing


@dataclass(frozen=True)
class GroupPresentation:
    """A f.g. module over the ring: free rank plus invariant factors (> 1).

    Over a field the invariant factors are always empty and free_rank is the
    dimension. Triviality means free rank 0 AND no torsion.
    """

    free_rank: int
    invariant_factors: tuple = ()

    def __post_init__(self):
        facs = self.invariant_factors
        if any(f <= 1 for f in facs):
            raise ValueError("invariant factors must exceed 1")
        if any(facs[i + 1] % facs[i] != 0 for i in range(len(facs) - 1)):
            raise ValueError("invariant factors must form a divisibility chain")

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def generator_count(self):
        return self.free_rank + len(self.invariant_factors)

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append(f"R^{self.free_rank}" if self.free_rank > 1 else "R")
        parts.extend(f"R/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


def homology_of_pair(boundary_in: IntMatrix, boundary_out: IntMatrix, ring: RingTag):
    """ker(boundary_out)/im(boundary_in) over the ring.

    boundary_out maps the middle group outward, boundary_in maps into it;
    their composition must vanish. Returns (GroupPresentation, reps) where
    reps is a list of coordinate columns in the middle group: torsion
    generators first (matching invariant factor order), then free generators.
    """
    n = boundary_out.cols
    if boundary_in.rows != n:
        raise ValueError("boundary shapes do not match")
    comp = boundary_out * boundary_in
    comp_zero = (
        all(x % ring.p == 0 for row in comp.data for x in row)
        if ring.kind == "Fp"
        else comp.is_zero()
    )
    if not comp_zero:
        raise ValueError("not a complex: boundary_out * boundary_in != 0")

    if ring.is_field:
        kb = kernel_field(boundary_out, ring)
        if not kb:
            return GroupPresentation(0), []
        if boundary_in.cols == 0:
            return GroupPresentation(len(kb)), kb
        ops = _FieldOps(ring)
        img_cols = [[ops.of_int(boundary_in.data[i][j]) for i in range(n)]
                    for j in range(boundary_in.cols)]
        x = solve_field(kb, img_cols, ring)  # columns in kernel coordinates
        k = len(kb)
        a = [[x[j][i] for j in range(len(x))] for i in range(k)]
        col_ech = [[a[i][j] for i in range(k)] for j in range(len(x))]
        pivot_rows = _rref(col_ech, len(x), k, ops) if x else []
        reps = []
        for i in range(k):
            if i not in pivot_rows:
                reps.append(kb[i])
        return GroupPresentation(len(reps)), reps

    # Integer path: SNF of the image expressed in the kernel lattice basis.
    kmat = kernel_lattice(boundary_out)
    k = kmat.cols
    if k == 0:
        return GroupPresentation(0), []
    if boundary_in.cols == 0:
        return GroupPresentation(k), kmat.columns()
    x = solve_int(kmat, boundary_in)  # integral since im lies in the kernel lattice
    s, u, _ = smith_normal_form(x)
    u_inv = solve_int(u, IntMatrix.identity(u.rows))
    adapted = kmat * u_inv
    diag = [s.data[i][i] for i in range(min(s.rows, s.cols))]
    rank_x = sum(1 for d in diag if d != 0)
    torsion = tuple(d for d in diag if d > 1)
    reps = [adapted.column(i) for i in range(rank_x) if diag[i] > 1]
    reps += [adapted.column(i) for i in range(rank_x, k)]
    return GroupPresentation(k - rank_x, torsion), reps


def _relation_matrix(pres: GroupPresentation) -> IntMatrix:
    g = pres.generator_count
    t = len(pres.invariant_factors)
    rel = IntMatrix(g, t)
    for j, d in enumerate(pres.invariant_factors):
        rel.data[pres.free_rank + j][j] = d
    return rel


def is_isomorphism(map_matrix: IntMatrix, dom: GroupPresentation, cod: GroupPresentation,
                   ring: RingTag) -> bool:
    """Whether the map (columns = images of dom generators, written in cod
    generators) is bijective over the ring."""
    if map_matrix.cols != dom.generator_count or map_matrix.rows != cod.generator_count:
        raise ValueError("map shape does not match the stored presentations")
    if ring.is_field:
        if dom.invariant_factors or cod.invariant_factors:
            raise ValueError("field presentations cannot carry torsion")
        if dom.free_rank != cod.free_rank:
            return False
        return det_field(map_matrix, ring) != (Fraction(0) if ring.kind == "Q" else 0)

    if not dom.invariant_factors and not cod.invariant_factors:
        # Free modules: bijective iff square with unit determinant.
        if dom.free_rank != cod.free_rank:
            return False
        return abs(det_int(map_matrix)) == 1

    q_rel = _relation_matrix(cod)
    p_rel = _relation_matrix(dom)
    # Surjectivity: cokernel of [F | Q] must vanish.
    stacked = map_matrix.hstack(q_rel)
    facs = invariant_factors(stacked)
    if len(facs) != cod.generator_count or any(f != 1 for f in facs):
        return False
    # Injectivity: preimages of im(Q) must already lie in im(P).
    lifted = map_matrix.hstack(-q_rel)
    ker = kernel_lattice(lifted)
    p_basis = hnf_basis(p_rel) if p_rel.cols else p_rel
    for j in range(ker.cols):
        x_part = [ker.data[i][j] for i in range(dom.generator_count)]
        if not lattice_contains(p_basis, x_part):
            return False
    return True
