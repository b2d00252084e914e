"""Tropical chain and cochain complexes and their exact (co)homology.

Complexes are assembled as block integer matrices from a fan's incidence
signs and multi-tangent structure maps, then interpreted over Z, Q or F_p.
Degrees are labeled by face dimension so results print with the indexing
used for fans (homology of a d-fan lives in degrees 0..d).
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import (
    GroupPresentation,
    RingTag,
    homology_of_pair,
    kernel_field,
    kernel_lattice,
    solve_field,
)
from .fans import ConeView, Fan, StarView, WeightedFan
from .intmat import IntMatrix, solve_int


@dataclass
class Block:
    face: int
    rank: int
    offset: int


class ChainComplex:
    """A bounded complex of free modules with integer differentials.

    direction "homological": differential lowers the degree; "cohomological":
    raises it. `blocks[q]` records which face contributes which coordinate
    slice of the degree-q term.
    """

    def __init__(self, direction, ring, degrees, blocks, diffs, check=True):
        self.direction = direction
        self.ring = ring
        self.degrees = list(degrees)
        self.blocks = blocks  # degree -> list[Block]
        self.diffs = diffs  # degree q -> matrix out of degree q
        if check:
            self._check_composition()

    def rank(self, q):
        return sum(b.rank for b in self.blocks.get(q, []))

    def _neighbor(self, q):
        return q - 1 if self.direction == "homological" else q + 1

    def boundary_out(self, q) -> IntMatrix:
        if q in self.diffs:
            return self.diffs[q]
        target = self._neighbor(q)
        rows = self.rank(target) if target in self.blocks else 0
        return IntMatrix(rows, self.rank(q))

    def boundary_in(self, q) -> IntMatrix:
        src = q + 1 if self.direction == "homological" else q - 1
        if src in self.diffs:
            return self.diffs[src]
        return IntMatrix(self.rank(q), 0)

    def _check_composition(self):
        for q in self.degrees:
            a = self.boundary_in(q)
            b = self.boundary_out(q)
            if a.cols and b.rows:
                prod = b * a
                if self.ring.kind == "Fp":
                    ok = all(x % self.ring.p == 0 for row in prod.data for x in row)
                else:
                    ok = prod.is_zero()
                if not ok:
                    raise ValueError("consecutive differentials do not compose to zero")

    def homology(self) -> "HomologyTable":
        table = {}
        for q in self.degrees:
            pres, reps = homology_of_pair(self.boundary_in(q), self.boundary_out(q), self.ring)
            table[q] = HomologyEntry(pres, reps)
        return HomologyTable(table, self.direction)


@dataclass
class HomologyEntry:
    group: GroupPresentation
    representatives: list  # coordinate columns in the degree's chain group


@dataclass
class HomologyTable:
    entries: dict
    direction: str

    def group(self, q) -> GroupPresentation:
        return self.entries[q].group

    def is_trivial_except(self, keep) -> bool:
        keep = set(keep)
        return all(e.group.is_trivial for q, e in self.entries.items() if q not in keep)

    def nonzero_degrees(self):
        return sorted(q for q, e in self.entries.items() if not e.group.is_trivial)


# ---------------------------------------------------------------------------
# Assembly helpers


def _layout(fan: Fan, face_ids, ranks):
    blocks = []
    off = 0
    for fid in face_ids:
        blocks.append(Block(fid, ranks[fid], off))
        off += ranks[fid]
    return blocks


def _bm_differential(fan: Fan, module, q, blocks_q, blocks_q1):
    """Block matrix of the Borel-Moore boundary from degree q to q-1."""
    rows = sum(b.rank for b in blocks_q1)
    cols = sum(b.rank for b in blocks_q)
    out = IntMatrix(rows, cols)
    tau_of = {b.face: b for b in blocks_q1}
    for bs in blocks_q:
        for tau in fan.facets_of(bs.face):
            if tau not in tau_of:
                continue
            bt = tau_of[tau]
            sign = fan.incidence_sign(tau, bs.face)
            inc = module.inclusion(bs.face, tau)
            for i in range(inc.rows):
                row = out.data[bt.offset + i]
                for j in range(inc.cols):
                    row[bs.offset + j] += sign * inc.data[i][j]
    return out


def bm_chain_complex(fan_or_view, p: int, ring: RingTag) -> ChainComplex:
    """Borel-Moore chain complex of the degree-p multi-tangent cosheaf.

    Accepts a Fan or a StarView; for a star the degrees run from the base
    face's dimension up to the fan's, realizing the star without subdividing.
    """
    if isinstance(fan_or_view, StarView):
        fan = fan_or_view.fan
        members = fan_or_view.members
        lo = fan_or_view.base_dim
    else:
        fan = fan_or_view
        members = range(fan.face_count())
        lo = 0
    module = fan.multitangent(p)
    degrees = list(range(lo, fan.dim + 1))
    ranks = {fid: module.rank(fid) for fid in members}
    by_dim = {q: [f for f in members if fan.faces[f].dim == q] for q in degrees}
    blocks = {q: _layout(fan, by_dim[q], ranks) for q in degrees}
    diffs = {}
    for q in degrees:
        if q - 1 in blocks:
            diffs[q] = _bm_differential(fan, module, q, blocks[q], blocks[q - 1])
    return ChainComplex("homological", ring, degrees, blocks, diffs)


def star_bm_complex(fan: Fan, gamma: int, p: int, ring: RingTag) -> ChainComplex:
    return bm_chain_complex(fan.star_view(gamma), p, ring)


def compact_cochain_complex(fan: Fan, p: int, ring: RingTag) -> ChainComplex:
    """Compact-support cochain complex of the degree-p sheaf: the transpose
    dual of the Borel-Moore complex in the stored bases."""
    bm = bm_chain_complex(fan, p, ring)
    diffs = {}
    for q in bm.degrees:
        if q + 1 in bm.diffs:
            diffs[q] = bm.diffs[q + 1].transpose()
    return ChainComplex("cohomological", ring, bm.degrees, bm.blocks, diffs)


def plain_cochain_complex(fan: Fan, p: int, ring: RingTag) -> ChainComplex:
    """The cochain complex without compact supports. The vertex is the only
    compact face of a pointed fan, so only degree 0 is nonzero."""
    module = fan.multitangent(p)
    v = fan.vertex_id
    degrees = list(range(fan.dim + 1))
    blocks = {q: [] for q in degrees}
    blocks[0] = [Block(v, module.rank(v), 0)]
    return ChainComplex("cohomological", ring, degrees, blocks, {})


def plain_chain_complex(fan: Fan, p: int, ring: RingTag) -> ChainComplex:
    """The chain complex over compact faces only: the trivial specialization
    of the Borel-Moore complex to the vertex."""
    module = fan.multitangent(p)
    v = fan.vertex_id
    degrees = list(range(fan.dim + 1))
    blocks = {q: [] for q in degrees}
    blocks[0] = [Block(v, module.rank(v), 0)]
    return ChainComplex("homological", ring, degrees, blocks, {})


def constant_compact_cochain(view, rank: int, ring: RingTag) -> ChainComplex:
    """Compact-support cochain complex of a constant sheaf of the given rank
    on a ConeView (or a whole fan)."""
    if isinstance(view, ConeView):
        fan = view.fan
        members = view.members
    else:
        fan = view
        members = range(fan.face_count())
    dims = [fan.faces[f].dim for f in members]
    degrees = list(range(max(dims) + 1))
    by_dim = {q: [f for f in members if fan.faces[f].dim == q] for q in degrees}
    ranks = {f: rank for f in members}
    blocks = {q: _layout(fan, by_dim[q], ranks) for q in degrees}
    diffs = {}
    member_set = set(members)
    for q in degrees[:-1]:
        rows = sum(b.rank for b in blocks[q + 1])
        cols = sum(b.rank for b in blocks[q])
        mat = IntMatrix(rows, cols)
        sig_of = {b.face: b for b in blocks[q + 1]}
        for bt in blocks[q]:
            for sig in fan.covers_of(bt.face):
                if sig not in member_set:
                    continue
                bs = sig_of[sig]
                sign = fan.incidence_sign(bt.face, sig)
                for i in range(rank):
                    mat.data[bs.offset + i][bt.offset + i] += sign
        diffs[q] = mat
    return ChainComplex("cohomological", ring, degrees, blocks, diffs)


def homology(complex_: ChainComplex) -> HomologyTable:
    return complex_.homology()


def euler_characteristic(complex_: ChainComplex) -> int:
    """Alternating sum of block dimensions, anchored so the top degree counts
    positively; equals the same alternating sum of homology dimensions."""
    if not complex_.ring.is_field:
        raise ValueError("Euler characteristics are computed over a field")
    top = max(complex_.degrees)
    return sum((-1) ** (top - q) * complex_.rank(q) for q in complex_.degrees)


# ---------------------------------------------------------------------------
# The star-homology row (top Borel-Moore homology of all stars)


def star_top_boundary(fan: Fan, module, gamma: int):
    """The top boundary of the star of a face: the map out of the direct sum
    of the module over top faces above gamma, restricted to the star.

    Returns (blocks, matrix) where blocks lay out the domain.
    """
    members = fan.upper_set(gamma)
    tops = [f for f in members if fan.faces[f].dim == fan.dim]
    subs = [f for f in members if fan.faces[f].dim == fan.dim - 1]
    ranks = {f: module.rank(f) for f in tops + subs}
    blocks_top = _layout(fan, tops, ranks)
    blocks_sub = _layout(fan, subs, ranks)
    mat = _bm_differential(fan, module, fan.dim, blocks_top, blocks_sub)
    return blocks_top, mat


def _star_top_kernel(fan: Fan, module, gamma: int, ring: RingTag):
    """Kernel basis of the star's top boundary, with its domain layout.

    Over Z and Q the integer kernel lattice is used (a saturated integer
    basis is also a Q-basis); over F_p the mod-p kernel.
    """

    def compute():
        blocks_top, mat = star_top_boundary(fan, module, gamma)
        if ring.kind == "Fp":
            cols = kernel_field(mat, ring)
            kern = IntMatrix.from_cols(cols, rows=mat.cols) if cols else IntMatrix(mat.cols, 0)
        else:
            kern = kernel_lattice(mat)
        return blocks_top, kern

    key = ("star_kernel", gamma, module.p, "Z" if ring.kind == "Q" else str(ring))
    return fan.memo(key, compute)


def star_homology_table(fan: Fan, gamma: int, p: int, ring: RingTag) -> HomologyTable:
    """Memoized homology of the star complex (weights play no role here)."""
    return fan.memo(
        ("star_hom", gamma, p, str(ring)),
        lambda: bm_chain_complex(fan.star_view(gamma), p, ring).homology(),
    )


def star_row_complex(wf: WeightedFan, p: int, ring: RingTag) -> ChainComplex:
    """The cochain complex whose degree-r term collects the top Borel-Moore
    homology of the stars of all r-faces, with the restricted coboundary.

    The differential of the block from a face to a cover is the incidence
    sign times the component restriction; its image is checked to lie in the
    covering face's kernel (integrally, over Z and Q), which certifies the
    restriction reading of the coboundary.
    """
    fan = wf.fan
    d = fan.dim
    if d < 2:
        raise ValueError("the star-homology row needs a fan of dimension >= 2")
    module = fan.multitangent(d - p)

    layouts = {}
    kernels = {}
    for fid in range(fan.face_count()):
        layouts[fid], kernels[fid] = _star_top_kernel(fan, module, fid, ring)

    degrees = list(range(d + 1))
    blocks = {}
    for r in degrees:
        blks = []
        off = 0
        for fid in fan.faces_of_dim(r):
            blks.append(Block(fid, kernels[fid].cols, off))
            off += kernels[fid].cols
        blocks[r] = blks

    diffs = {}
    for r in range(d):
        rows = sum(b.rank for b in blocks[r + 1])
        cols = sum(b.rank for b in blocks[r])
        mat = IntMatrix(rows, cols)
        for bg in blocks[r]:
            gamma = bg.face
            k_g = kernels[gamma]
            src_layout = layouts[gamma]
            for kappa in fan.covers_of(gamma):
                bk = next(b for b in blocks[r + 1] if b.face == kappa)
                sign = fan.incidence_sign(gamma, kappa)
                dst_layout = layouts[kappa]
                dst_rows = sum(b.rank for b in dst_layout)
                # Restrict each kernel column to the top faces above kappa.
                restricted = IntMatrix(dst_rows, k_g.cols)
                src_of = {b.face: b for b in src_layout}
                for bd in dst_layout:
                    bs = src_of[bd.face]
                    for i in range(bd.rank):
                        for j in range(k_g.cols):
                            restricted.data[bd.offset + i][j] = sign * k_g.data[bs.offset + i][j]
                coords = _solve_in_kernel(kernels[kappa], restricted, ring)
                for i in range(coords.rows):
                    for j in range(coords.cols):
                        mat.data[bk.offset + i][bg.offset + j] = coords.data[i][j]
        diffs[r] = mat
    return ChainComplex("cohomological", ring, degrees, blocks, diffs)


def _solve_in_kernel(kernel: IntMatrix, image: IntMatrix, ring: RingTag) -> IntMatrix:
    """Coordinates of image columns in the kernel basis; failure means the
    image escaped the kernel, i.e. an incidence-sign bug."""
    if kernel.cols == 0:
        zero = (
            all(x % ring.p == 0 for row in image.data for x in row)
            if ring.kind == "Fp"
            else image.is_zero()
        )
        if not zero:
            raise ValueError("image does not lie in the kernel")
        return IntMatrix(0, image.cols)
    if ring.kind == "Fp":
        sol = solve_field(
            [kernel.column(j) for j in range(kernel.cols)],
            [image.column(j) for j in range(image.cols)],
            ring,
        )
        return IntMatrix.from_cols(sol, rows=kernel.cols) if sol else IntMatrix(kernel.cols, 0)
    return solve_int(kernel, image)
