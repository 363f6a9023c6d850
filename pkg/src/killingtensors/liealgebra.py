"""Metric Lie algebras: structure constants, the Levi-Civita connection, the
algebraic Killing operator, and the brute-force Killing-space solver that
serves as the oracle for all structured computations."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .exactlinalg import frac, nullspace, rref_span
from .tensors import (
    SymTensor,
    Endomorphism,
    apply_derivation,
    basis_monomials,
    tensor_from_coordinates,
)

_ZERO = Fraction(0)


@dataclass(frozen=True)
class KillingSpace:
    """Space of Killing tensors of one degree, basis in reduced echelon form
    over the lexicographic monomial coordinates."""

    degree: int
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)


class MetricLieAlgebra:
    """Lie algebra with structure constants in a declared orthonormal basis.

    ``structure[i][j][k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
    Antisymmetry and the Jacobi identity are validated exactly at
    construction.  Instances are immutable; all operations are pure.
    """

    def __init__(self, structure):
        c = tuple(tuple(tuple(frac(x) for x in row) for row in plane) for plane in structure)
        n = len(c)
        if any(len(plane) != n or any(len(row) != n for row in plane) for plane in c):
            raise ValueError("structure constants must form an n*n*n array")
        self.structure = c
        self.dim = n
        self._validate()
        self._ad_basis = None
        self._nabla_basis = None

    def _validate(self):
        c = self.structure
        n = self.dim
        for i in range(n):
            for j in range(i, n):
                for k in range(n):
                    if c[i][j][k] != -c[j][i][k]:
                        raise ValueError(f"structure constants not antisymmetric at ({i},{j},{k})")
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    ei, ej, ek = (self._basis_tuple(t) for t in (i, j, k))
                    jac = tuple(
                        a + b + d
                        for a, b, d in zip(
                            self.bracket(self.bracket(ei, ej), ek),
                            self.bracket(self.bracket(ej, ek), ei),
                            self.bracket(self.bracket(ek, ei), ej),
                        )
                    )
                    if any(x != 0 for x in jac):
                        raise ValueError(f"Jacobi identity fails on basis triple ({i},{j},{k})")

    def _basis_tuple(self, i):
        return tuple(Fraction(1 if t == i else 0) for t in range(self.dim))

    @classmethod
    def abelian(cls, dim: int) -> "MetricLieAlgebra":
        zero = ((_ZERO,) * dim,) * dim
        return cls(tuple(tuple(tuple(_ZERO for _ in range(dim)) for _ in range(dim))
                         for _ in range(dim)))

    def bracket(self, x, y):
        c = self.structure
        n = self.dim
        out = [_ZERO] * n
        for i in range(n):
            xi = x[i]
            if xi == 0:
                continue
            for j in range(n):
                yj = y[j]
                if yj == 0:
                    continue
                cij = c[i][j]
                f = xi * yj
                for k in range(n):
                    if cij[k] != 0:
                        out[k] += f * cij[k]
        return tuple(out)

    def ad_basis(self, i: int) -> Endomorphism:
        if self._ad_basis is None:
            ads = []
            for t in range(self.dim):
                rows = tuple(
                    tuple(self.structure[t][j][k] for j in range(self.dim))
                    for k in range(self.dim)
                )
                ads.append(Endomorphism(rows))
            self._ad_basis = tuple(ads)
        return self._ad_basis[i]

    def ad(self, x) -> Endomorphism:
        """Adjoint map ``ad_x = [x, .]`` as a matrix."""
        n = self.dim
        rows = [[_ZERO] * n for _ in range(n)]
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            ent = self.ad_basis(i).entries
            for k in range(n):
                for j in range(n):
                    if ent[k][j] != 0:
                        rows[k][j] += xi * ent[k][j]
        return Endomorphism(tuple(tuple(r) for r in rows))

    def ad_star(self, x) -> Endomorphism:
        """Metric adjoint of ``ad_x``; transpose in the orthonormal basis."""
        return self.ad(x).transpose()

    def nabla(self, y, x):
        """Levi-Civita connection of the left-invariant metric:
        ``nabla_y x = (1/2)(ad_y x - ad_y^* x - ad_x^* y)``."""
        ady = self.ad(y)
        adx = self.ad(x)
        t1 = ady.apply(x)
        t2 = ady.transpose().apply(x)
        t3 = adx.transpose().apply(y)
        return tuple((a - b - c) / 2 for a, b, c in zip(t1, t2, t3))

    def nabla_basis(self, i: int) -> Endomorphism:
        """Matrix of covariant differentiation in the i-th basis direction."""
        if self._nabla_basis is None:
            mats = []
            for t in range(self.dim):
                et = self._basis_tuple(t)
                cols = [self.nabla(et, self._basis_tuple(j)) for j in range(self.dim)]
                rows = tuple(tuple(cols[j][k] for j in range(self.dim)) for k in range(self.dim))
                mats.append(Endomorphism(rows))
            self._nabla_basis = tuple(mats)
        return self._nabla_basis[i]

    def killing_operator(self, k: SymTensor) -> SymTensor:
        """Algebraic Killing operator ``sum_j e_j * ad_{e_j}(k)``; a tensor is
        Killing exactly when this vanishes."""
        if k.dim != self.dim:
            raise ValueError("dimension mismatch")
        out = SymTensor.zero(self.dim, k.degree + 1)
        for j in range(self.dim):
            t = apply_derivation(self.ad_basis(j), k)
            if not t.is_zero():
                out = out + SymTensor.basis(self.dim, j) * t
        return out

    def killing_operator_via_nabla(self, k: SymTensor) -> SymTensor:
        """Same operator through the connection, ``sum_i e_i * nabla_{e_i} k``.

        Kept as an independent cross-check of :meth:`killing_operator`.
        """
        if k.dim != self.dim:
            raise ValueError("dimension mismatch")
        out = SymTensor.zero(self.dim, k.degree + 1)
        for i in range(self.dim):
            t = apply_derivation(self.nabla_basis(i), k)
            if not t.is_zero():
                out = out + SymTensor.basis(self.dim, i) * t
        return out

    def killing_space_bruteforce(self, p: int, *, degree_cap: int = 8,
                                 dim_cap: int = 6) -> KillingSpace:
        """Exact nullspace of the Killing operator on the full symmetric power.

        Assembles the operator matrix column by column over the monomial
        basis and solves over the rationals.  Desk-scale guard rails: raise
        past the caps, warn when the column count gets out of hand.
        """
        if p < 0:
            raise ValueError("degree must be nonnegative")
        if p > degree_cap or self.dim > dim_cap:
            raise ValueError(
                f"degree {p} / dimension {self.dim} exceed caps ({degree_cap}, {dim_cap}); "
                "raise them explicitly if you mean it")
        monos = basis_monomials(self.dim, p)
        if len(monos) > 100_000:
            warnings.warn(f"symmetric power has {len(monos)} monomials; this will be slow")
        target_index = {m: r for r, m in enumerate(basis_monomials(self.dim, p + 1))}
        rows = [[_ZERO] * len(monos) for _ in target_index]
        for cidx, mono in enumerate(monos):
            dk = self.killing_operator(SymTensor.monomial(self.dim, mono))
            for tm, cf in dk.terms.items():
                rows[target_index[tm]][cidx] = cf
        kernel = nullspace(rows, len(monos))
        basis = [tensor_from_coordinates(self.dim, p, monos, v) for v in rref_span(kernel)]
        return KillingSpace(p, tuple(basis))
