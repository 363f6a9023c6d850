"""Killing vector fields and decomposability certificates.

Every left-invariant Killing tensor on an almost abelian algebra can be
rewritten as a polynomial in the metric and in left-/right-invariant Killing
vector fields.  This module produces that rewriting as a ``Certificate`` (a
formal polynomial over symbolic generators) and checks it by evaluating the
pullback function of each generator along the exponential map: for a
right-invariant field of ``x`` this is ``exp(-ad_w) x``, for a field induced
by a skew derivation it is the series ``sum_k (-1)^k/(k+1)! ad_w^k T(w)``,
and for left-invariant generators it is constant.  A certificate is valid
when the assembled value is constant equal to its target.

Constancy is checked exactly at ``w = 0`` and numerically at seeded sample
points.  Sampling runs in mpmath extended precision: the factor values grow
like ``exp(|gamma| * ||D||)`` and cancel additively across monomials, which
double precision cannot survive at the 1e-9 gate.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .almostabelian import AlmostAbelianAlgebra
from .exactlinalg import nullspace, rref_span
from .liealgebra import MetricLieAlgebra
from .tensors import SymTensor, Endomorphism, apply_derivation, sum_of_squares

_ZERO = Fraction(0)

DEFAULT_SEED = 0x5EED
DEFAULT_TOL = 1e-9
DEFAULT_SAMPLES = 20
DEFAULT_ORDER_FLOOR = 12

_LOG10_E = math.log10(math.e)


class NotKillingError(ValueError):
    """Raised when a decomposition is requested for a non-Killing tensor."""

    def __init__(self, message, diagnosis=None):
        super().__init__(message)
        self.diagnosis = diagnosis


# ---------------------------------------------------------------------------
# generators and certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Metric:
    """The invariant metric; its pullback value is constant."""


@dataclass(frozen=True)
class LeftInvariant:
    """Left-invariant field of a vector whose adjoint map is skew."""

    vector: tuple


@dataclass(frozen=True)
class RightInvariant:
    """Right-invariant field generated by right translations of a vector."""

    vector: tuple


@dataclass(frozen=True)
class SkewDerivation:
    """Skew derivation of an almost abelian algebra, split as the image of
    ``b`` (a vector in the ideal) plus a skew block on the ideal."""

    b_image: tuple
    ideal_part: Endomorphism

    def full_matrix(self) -> Endomorphism:
        n = self.ideal_part.dim
        rows = [[_ZERO] * (n + 1) for _ in range(n + 1)]
        for i, vi in enumerate(self.b_image):
            rows[i + 1][0] = vi
            rows[0][i + 1] = -vi
        for i in range(n):
            for j in range(n):
                rows[i + 1][j + 1] = self.ideal_part.entries[i][j]
        return Endomorphism(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class DerivationField:
    """Killing field induced by a skew derivation."""

    derivation: SkewDerivation


@dataclass(frozen=True)
class Certificate:
    """Formal polynomial over generators witnessing a decomposition.

    ``terms`` is a tuple of ``(coefficient, factors)`` pairs; evaluating all
    generators at the identity must reproduce ``target`` exactly.
    """

    target: SymTensor
    terms: tuple


# ---------------------------------------------------------------------------
# scalar contexts: exact Fractions vs mpmath floats
# ---------------------------------------------------------------------------

def _numeric_seq(seq) -> bool:
    return any(not isinstance(v, (Fraction, int)) for v in seq)


def _mpf_of(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def _mp_vec(seq):
    return tuple(_mpf_of(x) for x in seq)


def _matvec(rows, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in rows)


def _ad_rows(lie: MetricLieAlgebra, w, numeric: bool):
    """Matrix of ``ad_w`` with entries in the requested scalar context."""
    n = lie.dim
    rows = [[_mpf_of(0) if numeric else _ZERO] * n for _ in range(n)]
    for i, wi in enumerate(w):
        if wi == 0:
            continue
        plane = lie.structure[i]
        for j in range(n):
            for k in range(n):
                c = plane[j][k]
                if c != 0:
                    rows[k][j] = rows[k][j] + wi * (_mpf_of(c) if numeric else c)
    return [tuple(r) for r in rows]


def _one_norm(rows) -> float:
    n = len(rows)
    return max((sum(abs(float(rows[i][j])) for i in range(n)) for j in range(n)), default=0.0)


def _numeric_eps():
    return mp.mpf(10) ** (-(mp.dps - 5))


# ---------------------------------------------------------------------------
# Omega evaluation
# ---------------------------------------------------------------------------

def omega_right(lie: MetricLieAlgebra, x, w, order=None, min_order: int = 0):
    """Pullback value of the right-invariant field of ``x`` at ``w``:
    ``exp(-ad_w) x``.

    With rational inputs and ``order=None`` the series must terminate exactly
    (it does when ``ad_w`` is nilpotent, hence for any nilpotent derivation
    matrix); numeric inputs are summed adaptively to working precision.
    """
    numeric = _numeric_seq(w) or _numeric_seq(x)
    if numeric:
        x = _mp_vec(x)
        w = _mp_vec(w)
    adw = _ad_rows(lie, w, numeric)
    acc = list(x)
    term = tuple(x)
    hump = int(_one_norm(adw)) + 2
    eps = _numeric_eps() if numeric else None
    k = 1
    while True:
        if order is not None and k > order:
            break
        term = tuple(-t / k for t in _matvec(adw, term))
        if all(t == 0 for t in term):
            break
        acc = [a + t for a, t in zip(acc, term)]
        if order is None:
            if not numeric:
                if k > lie.dim:
                    raise ValueError("series does not terminate over exact arithmetic; "
                                     "pass a truncation order")
            else:
                scale = max(1.0, max(abs(float(a)) for a in acc))
                if k >= max(min_order, hump) and max(abs(t) for t in term) < eps * scale:
                    break
                if k > 5000:
                    raise RuntimeError("omega series failed to converge")
        k += 1
    return tuple(acc)


def omega_derivation(alg: AlmostAbelianAlgebra, t: SkewDerivation, w,
                     order=None, min_order: int = 0):
    """Pullback value of the field induced by a skew derivation, through the
    almost abelian closed form

    ``sum_{k>=0} (-1)^k/(k+1)! D^k(g^{k+1} v + g^k Th(h) + g^{k-1} <v,h> h)``

    for ``w = g*b + h`` (the k = 0 term contributes ``-<v,h>`` along b).
    """
    numeric = _numeric_seq(w)
    n = alg.ideal_dim
    gamma, h = w[0], tuple(w[1:])
    v = t.b_image
    th = t.ideal_part.entries
    drows = alg.derivation.entries
    if numeric:
        gamma = _mpf_of(gamma)
        h = _mp_vec(h)
        v = _mp_vec(v)
        th = [_mp_vec(r) for r in th]
        drows = [_mp_vec(r) for r in drows]
    gvh = sum((a * b for a, b in zip(v, h)), _mpf_of(0) if numeric else _ZERO)
    out_b = -gvh
    dth = _matvec(th, h)
    out_h = [gamma * a + b for a, b in zip(v, dth)]
    dv, dh = tuple(v), tuple(h)
    gamma_pow = _mpf_of(1) if numeric else Fraction(1)  # gamma^(k-1)
    sign = 1
    fact = 1  # (k+1)!
    hump = int(abs(float(gamma)) * _one_norm(drows)) + 2 if n else 0
    eps = _numeric_eps() if numeric else None
    k = 1
    while n:
        if order is not None and k > order:
            break
        dv = _matvec(drows, dv)
        dth = _matvec(drows, dth)
        dh = _matvec(drows, dh)
        sign = -sign
        fact *= k + 1
        coeff = Fraction(sign, fact) if not numeric else mp.mpf(sign) / fact
        term = [coeff * (gamma * gamma * gamma_pow * a
                         + gamma * gamma_pow * b
                         + gamma_pow * gvh * c)
                for a, b, c in zip(dv, dth, dh)]
        out_h = [o + s for o, s in zip(out_h, term)]
        gamma_pow = gamma_pow * gamma
        if order is None:
            if not numeric:
                dead = gamma == 0 or (
                    all(a == 0 for a in dv) and all(a == 0 for a in dth)
                    and (gvh == 0 or all(a == 0 for a in dh)))
                if dead:
                    break
                if k > n + 1:
                    raise ValueError("series does not terminate over exact arithmetic; "
                                     "pass a truncation order")
            else:
                scale = max(1.0, max(abs(float(a)) for a in out_h))
                if k >= max(min_order, hump) and max(abs(s) for s in term) < eps * scale:
                    break
                if k > 5000:
                    raise RuntimeError("omega series failed to converge")
        k += 1
    return (out_b, *out_h)


def omega_derivation_matrix(lie: MetricLieAlgebra, t_matrix: Endomorphism, w,
                            order=None, min_order: int = 0):
    """Pullback value of a derivation-induced field on any metric Lie algebra:
    the series ``sum_k (-1)^k/(k+1)! ad_w^k (T w)``.  Independent of the
    almost abelian closed form; used to cross-check it."""
    numeric = _numeric_seq(w)
    rows = t_matrix.entries
    if numeric:
        w = _mp_vec(w)
        rows = [_mp_vec(r) for r in rows]
    adw = _ad_rows(lie, w, numeric)
    cur = _matvec(rows, w)
    acc = list(cur)
    hump = int(_one_norm(adw)) + 2
    eps = _numeric_eps() if numeric else None
    sign = 1
    fact = 1
    k = 1
    while True:
        if order is not None and k > order:
            break
        cur = _matvec(adw, cur)
        if all(c == 0 for c in cur):
            break
        sign = -sign
        fact *= k + 1
        coeff = Fraction(sign, fact) if not numeric else mp.mpf(sign) / fact
        term = [coeff * c for c in cur]
        acc = [a + s for a, s in zip(acc, term)]
        if order is None:
            if not numeric:
                if k > lie.dim:
                    raise ValueError("series does not terminate over exact arithmetic; "
                                     "pass a truncation order")
            else:
                scale = max(1.0, max(abs(float(a)) for a in acc))
                if k >= max(min_order, hump) and max(abs(s) for s in term) < eps * scale:
                    break
                if k > 5000:
                    raise RuntimeError("omega series failed to converge")
        k += 1
    return tuple(acc)


def omega_generator(alg: MetricLieAlgebra, gen, w, order=None, min_order: int = 0) -> SymTensor:
    """Pullback value of one generator at ``w``, as a symmetric tensor."""
    numeric = _numeric_seq(w)
    dim = alg.dim
    if isinstance(gen, Metric):
        half = mp.mpf(1) / 2 if numeric else Fraction(1, 2)
        return sum_of_squares(dim).map_coefficients(lambda c: half * (_mpf_of(c) if numeric else c))
    if isinstance(gen, LeftInvariant):
        vecval = _mp_vec(gen.vector) if numeric else gen.vector
        return SymTensor.from_vector(dim, vecval)
    if isinstance(gen, RightInvariant):
        return SymTensor.from_vector(dim, omega_right(alg, gen.vector, w, order, min_order))
    if isinstance(gen, DerivationField):
        if isinstance(alg, AlmostAbelianAlgebra):
            val = omega_derivation(alg, gen.derivation, w, order, min_order)
        else:
            val = omega_derivation_matrix(alg, gen.derivation.full_matrix(), w, order, min_order)
        return SymTensor.from_vector(dim, val)
    raise TypeError(f"unknown generator {gen!r}")


def omega_tensor(alg: MetricLieAlgebra, cert: Certificate, w,
                 order=None, min_order: int = 0, cache=None) -> SymTensor:
    """Pullback value of a certificate: per term, the symmetric product of the
    factors' values, scaled and summed."""
    numeric = _numeric_seq(w)
    dim = alg.dim
    total = SymTensor.zero(dim, cert.target.degree)
    for coeff, factors in cert.terms:
        acc = SymTensor.monomial(dim, (), _mpf_of(coeff) if numeric else coeff)
        for gen in factors:
            if cache is not None:
                key = (mp.dps, w, gen)
                val = cache.get(key)
                if val is None:
                    val = omega_generator(alg, gen, w, order, min_order)
                    cache[key] = val
            else:
                val = omega_generator(alg, gen, w, order, min_order)
            acc = acc * val
        total = total + acc
    return total


# ---------------------------------------------------------------------------
# skew derivations: solver and validation
# ---------------------------------------------------------------------------

def _wedge(n: int, i: int, j: int) -> Endomorphism:
    rows = [[_ZERO] * n for _ in range(n)]
    rows[j][i] = Fraction(1)
    rows[i][j] = Fraction(-1)
    return Endomorphism(tuple(tuple(r) for r in rows))


def skew_derivation_basis(lie: MetricLieAlgebra):
    """Canonical basis of the skew-symmetric derivations of the algebra,
    solved as an exact linear system over the wedge coordinates."""
    n = lie.dim
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    wedges = [_wedge(n, i, j) for i, j in pairs]
    basis = [tuple(Fraction(1 if t == s else 0) for t in range(n)) for s in range(n)]
    rows = []
    for a in range(n):
        for b in range(a + 1, n):
            ea, eb = basis[a], basis[b]
            bab = lie.bracket(ea, eb)
            residuals = []
            for m in wedges:
                lhs = m.apply(bab)
                rhs1 = lie.bracket(m.apply(ea), eb)
                rhs2 = lie.bracket(ea, m.apply(eb))
                residuals.append(tuple(p - q - r for p, q, r in zip(lhs, rhs1, rhs2)))
            for comp in range(n):
                rows.append([res[comp] for res in residuals])
    kernel = nullspace(rows, len(pairs))
    out = []
    for coords in rref_span(kernel):
        m = Endomorphism.zero(n)
        for c, wmat in zip(coords, wedges):
            if c != 0:
                m = m + c * wmat
        out.append(m)
    return tuple(out)


def validate_skew_derivation(alg: AlmostAbelianAlgebra, t: SkewDerivation):
    """Exact re-validation: skewness, the derivation identity on all basis
    pairs, and the structured conditions on the split pieces."""
    full = t.full_matrix()
    if not full.is_skew():
        raise ValueError("derivation matrix is not skew")
    n = alg.dim
    basis = [tuple(Fraction(1 if s == i else 0) for s in range(n)) for i in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            lhs = full.apply(alg.bracket(basis[a], basis[b]))
            rhs = tuple(p + q for p, q in zip(
                alg.bracket(full.apply(basis[a]), basis[b]),
                alg.bracket(basis[a], full.apply(basis[b]))))
            if lhs != rhs:
                raise ValueError(f"derivation identity fails on basis pair ({a},{b})")
    d = alg.derivation
    th = t.ideal_part
    if th @ d != d @ th:
        raise ValueError("ideal block does not commute with the defining derivation")
    v = t.b_image
    for j in range(alg.ideal_dim):
        if sum((vi * ci for vi, ci in zip(v, d.column(j))), _ZERO) != 0:
            raise ValueError("image of the derivation not orthogonal to b-image")
    if any(vi != 0 for vi in v):
        for u in nullspace([list(v)], alg.ideal_dim):
            if any(x != 0 for x in d.apply(u)):
                raise ValueError("derivation does not vanish on the orthogonal complement "
                                 "of the b-image")


def skew_derivations(alg: AlmostAbelianAlgebra):
    """Skew derivations of an almost abelian algebra, as split pieces."""
    out = []
    n = alg.ideal_dim
    for m in skew_derivation_basis(alg):
        v = tuple(m.entries[i + 1][0] for i in range(n))
        block = Endomorphism(tuple(tuple(m.entries[i + 1][j + 1] for j in range(n))
                                   for i in range(n)))
        t = SkewDerivation(v, block)
        validate_skew_derivation(alg, t)
        out.append(t)
    return tuple(out)


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

def decompose_ideal_tensor(alg: AlmostAbelianAlgebra, k: SymTensor) -> Certificate:
    """Certificate for a Killing tensor supported on the ideal: substitute the
    right-invariant field of each basis vector into the monomials of ``k``.

    The multilinear components of ``k`` divided by p!, regrouped over sorted
    monomials, reproduce exactly the monomial coefficients, so the rewriting
    is coefficient-for-coefficient.
    """
    if 0 in k.support():
        raise ValueError("tensor must be supported on the abelian ideal")
    if not apply_derivation(alg.derivation_full, k).is_zero():
        raise NotKillingError("tensor is not Killing on the ideal")
    dim = alg.dim
    fields = [RightInvariant(tuple(Fraction(1 if t == i else 0) for t in range(dim)))
              for i in range(dim)]
    terms = []
    for mono in sorted(k.terms):
        terms.append((k.terms[mono], tuple(fields[i] for i in mono)))
    return Certificate(target=k, terms=tuple(terms))


def decompose(alg: AlmostAbelianAlgebra, k: SymTensor) -> Certificate:
    """Certificate for any left-invariant Killing tensor.

    Layers are rewritten on the ideal; each power of the basis-squares tensor
    contributes metric generators (with a factor 2 each), and odd layers pick
    up the left-invariant field of ``b``, which is Killing exactly when the
    defining derivation is skew -- otherwise the odd part is zero.
    """
    diag = alg.is_killing_structured(k)
    if not diag.is_killing:
        raise NotKillingError("; ".join(diag.failures), diagnosis=diag)
    dim = alg.dim
    b_field = LeftInvariant(tuple(Fraction(1 if t == 0 else 0) for t in range(dim)))
    terms = []
    for i, beta in enumerate(diag.layers.even):
        if beta.is_zero():
            continue
        scale = Fraction(2) ** i
        for c, fs in decompose_ideal_tensor(alg, beta).terms:
            terms.append((c * scale, (Metric(),) * i + fs))
    for i, alpha in enumerate(diag.layers.odd):
        if alpha is None or alpha.is_zero():
            continue
        scale = Fraction(2) ** i
        for c, fs in decompose_ideal_tensor(alg, alpha).terms:
            terms.append((c * scale, (Metric(),) * i + (b_field,) + fs))
    return Certificate(target=k, terms=tuple(terms))


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertificateCheck:
    passed: bool
    exact_at_zero: bool
    max_deviation: float
    samples: int
    tol: float
    seed: int
    order_floor: int
    precision_digits: int


def _order_for_bound(m_norm: float, eps: float) -> int:
    """Smallest N with ``m_norm^(N+1)/(N+1)! < eps``."""
    if m_norm <= 0:
        return 1
    log_eps = math.log(eps)
    for n in range(1, 400):
        if (n + 1) * math.log(m_norm) - math.lgamma(n + 2) < log_eps:
            return n
    return 400


def _factor_log10_bound(gen, m_norm: float, dim: int) -> float:
    if isinstance(gen, Metric):
        return 0.0
    if isinstance(gen, LeftInvariant):
        return math.log10(max(1.0, sum(abs(float(x)) for x in gen.vector)))
    if isinstance(gen, RightInvariant):
        return m_norm * _LOG10_E + math.log10(max(1.0, sum(abs(float(x)) for x in gen.vector)))
    tnorm = sum(abs(float(x)) for r in gen.derivation.full_matrix().entries for x in r)
    return m_norm * _LOG10_E + math.log10(max(1.0, 2.0 * dim * tnorm))


def _working_digits(cert: Certificate, m_norm: float, dim: int) -> int:
    worst = 0.0
    for coeff, factors in cert.terms:
        t = math.log10(max(1.0, abs(float(coeff))))
        for gen in factors:
            t += _factor_log10_bound(gen, m_norm, dim)
        worst = max(worst, t)
    worst += math.log10(len(cert.terms) + 1)
    digits = max(50, 35 + int(math.ceil(worst)))
    return min(300, 10 * int(math.ceil(digits / 10)))


def _max_abs_difference(value: SymTensor, target: SymTensor) -> float:
    dev = mp.mpf(0)
    for mono in set(value.terms) | set(target.terms):
        a = _mpf_of(value.terms.get(mono, 0))
        b = _mpf_of(target.terms.get(mono, _ZERO))
        dev = max(dev, abs(a - b))
    return float(dev)


def sample_points(dim: int, samples: int, seed: int):
    """Seeded sample points, entries uniform in [-2, 2]."""
    rng = random.Random(seed)
    return [tuple(rng.uniform(-2.0, 2.0) for _ in range(dim)) for _ in range(samples)]


def verify_certificate(alg: MetricLieAlgebra, cert: Certificate, *,
                       samples: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL,
                       seed: int = DEFAULT_SEED, order_floor: int = DEFAULT_ORDER_FLOOR,
                       cache=None) -> CertificateCheck:
    """Check a certificate: exact equality at the origin plus sampled
    constancy of the pullback within ``tol``.

    The series order at each sample is at least ``order_floor`` and at least
    the order making the crude tail bound ``||ad_w||^(N+1)/(N+1)!`` fall under
    ``tol/10``; on top of that the series is summed adaptively at a working
    precision sized to the certificate's product-amplification bound.
    """
    dim = alg.dim
    zero = (_ZERO,) * dim
    exact0 = omega_tensor(alg, cert, zero, order=0) == cert.target
    pts = sample_points(dim, samples, seed)
    m_norm = 0.0
    for w in pts:
        m_norm = max(m_norm, _one_norm(_ad_rows(alg, w, True)))
    digits = _working_digits(cert, m_norm, dim)
    max_dev = 0.0
    with mp.workdps(digits):
        min_order = max(order_floor, _order_for_bound(m_norm, tol / 10.0))
        for w in pts:
            wm = _mp_vec(w)
            value = omega_tensor(alg, cert, wm, order=None, min_order=min_order, cache=cache)
            max_dev = max(max_dev, _max_abs_difference(value, cert.target))
    return CertificateCheck(
        passed=bool(exact0 and max_dev < tol),
        exact_at_zero=bool(exact0),
        max_deviation=max_dev,
        samples=samples,
        tol=tol,
        seed=seed,
        order_floor=order_floor,
        precision_digits=digits,
    )
