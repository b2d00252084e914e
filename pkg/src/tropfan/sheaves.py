"""Multi-tangent cosheaves and their dual sheaves on a fan.

For each face the degree-p module is the subgroup of the p-th exterior power
of the ambient lattice generated by the wedge powers of the lattices of the
maximal cofaces. Everything is computed over Z once; rings enter later by
reinterpreting the integer matrices. Coordinates in exterior powers use
lexicographic subset order throughout, which fixes all contraction signs.
"""

from __future__ import annotations

from itertools import combinations

from .exact import hnf_basis
from .intmat import IntMatrix, det_int, hstack_all, solve_int


def wedge_basis(basis: IntMatrix, p: int) -> IntMatrix:
    """Wedge powers of the columns of `basis`, in lex wedge-monomial coords.

    Column J (a p-subset of basis columns, lex order) holds the p x p minors
    of those columns against all p-subsets of rows (lex order).
    """
    n, r = basis.rows, basis.cols
    if p < 0 or p > r:
        raise ValueError(f"wedge degree {p} out of range for rank {r}")
    row_subsets = list(combinations(range(n), p))
    col_subsets = list(combinations(range(r), p))
    out = IntMatrix(len(row_subsets), len(col_subsets))
    for j, cols in enumerate(col_subsets):
        for i, rows in enumerate(row_subsets):
            out.data[i][j] = det_int(basis.submatrix(rows, cols))
    return out


class ModuleAssignment:
    """Per-face bases and structure matrices for F_p (cosheaf) or its dual.

    Cosheaf structure matrices point downward: inclusion(sigma, tau) writes
    the basis of F_p(sigma) in the basis of F_p(tau) for tau below sigma.
    The dual sheaf's restriction(tau, sigma) is its transpose.
    """

    def __init__(self, fan, p, variance, basis):
        self.fan = fan
        self.p = p
        self.variance = variance  # "cosheaf" | "sheaf"
        self.basis = basis  # face id -> IntMatrix (columns in wedge coords)
        self._structure = {}

    def rank(self, fid):
        return self.basis[fid].cols

    def inclusion(self, sigma, tau) -> IntMatrix:
        """Cosheaf map F_p(sigma) -> F_p(tau) for tau below sigma, in the
        stored bases. Integral because the modules are nested subgroups."""
        key = (sigma, tau)
        if key not in self._structure:
            if tau == sigma:
                self._structure[key] = IntMatrix.identity(self.rank(sigma))
            else:
                self._structure[key] = solve_int(self.basis[tau], self.basis[sigma])
        return self._structure[key]

    def restriction(self, tau, sigma) -> IntMatrix:
        """Sheaf map F^p(tau) -> F^p(sigma), the transpose of the inclusion
        in the abstract dual bases."""
        return self.inclusion(sigma, tau).transpose()

    def dual(self) -> "ModuleAssignment":
        other = ModuleAssignment(self.fan, self.p, "sheaf", self.basis)
        other._structure = self._structure
        return other


def build_multitangent(fan, p: int) -> ModuleAssignment:
    """The degree-p multi-tangent cosheaf of the fan.

    The face module is the sum over maximal cofaces of the wedge power of
    their lattices (summing over maximal cofaces suffices: lattices of
    intermediate faces are contained in those of the maximal ones). The sum
    is the literal subgroup sum, not its saturation.
    """
    if p < 0 or p > fan.dim:
        raise ValueError(f"degree {p} out of range for a {fan.dim}-dimensional fan")
    basis = {}
    for fid in range(fan.face_count()):
        tops = fan.maximal_cofaces(fid)
        if tops == [fid]:
            # Maximal face: keep the wedge power of its oriented basis, so the
            # top-degree module is generated by the orientation generator.
            basis[fid] = wedge_basis(fan.faces[fid].lattice_basis, p)
        else:
            mats = [wedge_basis(fan.faces[a].lattice_basis, p) for a in tops]
            basis[fid] = hnf_basis(hstack_all(mats))
    return ModuleAssignment(fan, p, "cosheaf", basis)


def build_multicotangent(fan, p: int) -> ModuleAssignment:
    """The degree-p multi-cotangent sheaf: facewise dual of the cosheaf."""
    return fan.multitangent(p).dual()
