"""Integrals, the distinguished group-like element, left cointegrals, the
projections onto left integrals, the trace formula and the rank formula."""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from .algebra import CheckReport, Presentation, ValidationReport, first_difference, op_cop
from .errors import (
    CointegralDimensionAnomaly,
    IntegralDimensionAnomaly,
    NormalizationImpossible,
    NotNormalized,
)
from .linalg import Tensor, kernel, rank
from .scalars import is_zero, scalar_inverse

__all__ = [
    "IntegralData",
    "conjecture_probe",
    "integral_data",
    "is_semisimple",
    "normalize_pair",
    "projection_P",
    "projection_P_tilde",
    "random_endomorphisms",
    "rank_via_integrals",
    "solve_cointegral",
    "solve_integrals",
    "structure_checks",
    "trace_formula",
    "trace_formula_tensor",
    "twisted_square_trace",
]

ZERO = mpq(0)
ONE = mpq(1)

P_R = "x1 | x2 beta S(x3)"
COINT_LEFT = "V1 J1_1 U1 | V2 J1_2 U2 | J2"
COINT_RIGHT = "x3 | J1 S(x2) | J2 | <mu: x1>"
PROJ = "beta S(S(q2 I1_2)) J1 | q1 I1_1 | I2 | J2"
PROJ_TILDE = "Si(beta) Si(Si(qt1 I1_1)) J1 | qt2 I1_2 | I2 | J2"
TRACE = "q2 x3 r1_2 p2 | S(q1_2 x2 r1_1 p1) | <mu: q1_1 x1>"


def _monic(v):
    """Scale so that the first nonzero coordinate is 1."""
    for c in v:
        if not is_zero(c):
            inv = scalar_inverse(c)
            return [x * inv for x in v]
    return list(v)


def _one_dim_kernel(rows, n, anomaly, what):
    ker = kernel(rows, n)
    if len(ker) != 1:
        raise anomaly(f"{what} has dimension {len(ker)}, expected 1")
    return _monic(ker[0])


def solve_integrals(H: Presentation):
    """Return (left generator, right generator, mu), each generator monic."""
    H.require_valid()
    n = H.dim
    left_rows, right_rows = [], []
    for i in range(n):
        e = H.basis_vector(i)
        L, R = H.left_mult_matrix(e), H.right_mult_matrix(e)
        eps = H.counit[i]
        for r in range(n):
            left_rows.append([L[r][s] - (eps if r == s else ZERO) for s in range(n)])
            right_rows.append([R[r][s] - (eps if r == s else ZERO) for s in range(n)])
    t = _one_dim_kernel(left_rows, n, IntegralDimensionAnomaly, "the space of left integrals")
    r = _one_dim_kernel(right_rows, n, IntegralDimensionAnomaly, "the space of right integrals")

    # t e_i = mu(e_i) t
    pivot = next(k for k, c in enumerate(t) if not is_zero(c))
    mu = []
    for i in range(n):
        te = H.mul(t, H.basis_vector(i))
        m = te[pivot] * scalar_inverse(t[pivot])
        if te != [m * c for c in t]:
            raise IntegralDimensionAnomaly(f"left integrals are not a right ideal at basis element {i}")
        mu.append(m)
    return t, r, mu


def solve_cointegral(H: Presentation, mu, pack=None):
    """The monic generator of the space of left cointegrals.

    The defining equation lambda(V^2 h_2 U^2) V^1 h_1 U^1 = mu(x^1) lambda(h S(x^2)) x^3
    is imposed for every basis h, giving n^2 scalar equations in the n
    unknowns lambda(e_k).
    """
    if pack is not None:
        H._pack = pack
    n = H.dim
    lhs = H.ev(COINT_LEFT)
    rhs = H.ev(COINT_RIGHT, mu=mu)
    rows = {}
    for (a, b, i), c in lhs.items():
        row = rows.setdefault((a, i), [ZERO] * n)
        row[b] += c
    for (a, b, i), c in rhs.items():
        row = rows.setdefault((a, i), [ZERO] * n)
        row[b] -= c
    system = [rows[k] for k in sorted(rows)] or [[ZERO] * n]
    return _one_dim_kernel(system, n, CointegralDimensionAnomaly, "the space of left cointegrals")


def normalize_pair(H: Presentation, lam, r0):
    """Rescale the right integral r0 so that lambda(S(r)) = 1."""
    s = H.pair(lam, H.S(r0))
    if is_zero(s):
        raise NormalizationImpossible("lambda(S(r)) vanishes, so no rescaling of r normalizes the pair")
    inv = scalar_inverse(s)
    return lam, [c * inv for c in r0]


@dataclass
class IntegralData:
    left: list
    right: list
    mu: list
    lam: list
    r: list

    @property
    def left_basis(self):
        return [self.left]

    @property
    def right_basis(self):
        return [self.right]


def integral_data(H: Presentation) -> IntegralData:
    t, r0, mu = solve_integrals(H)
    lam = solve_cointegral(H, mu)
    lam, r = normalize_pair(H, lam, r0)
    return IntegralData(t, r0, mu, lam, r)


# ------------------------------------------------------------ projections

def _projection_matrix(H: Presentation, formula: str):
    n = H.dim
    m = [[ZERO] * n for _ in range(n)]
    for (a, c, i, j), v in H.ev(formula).items():
        if a == i:
            m[c][j] += v
    return m


def _apply(m, h):
    return [sum((row[j] * h[j] for j in range(len(h)) if h[j] and row[j]), ZERO) for row in m]


def projection_P(H: Presentation, h):
    """sum_i <e^i, beta S^2(q^2 (e_i)_2) h> q^1 (e_i)_1."""
    return _apply(_projection_matrix(H, PROJ), h)


def projection_P_tilde(H: Presentation, h):
    """sum_i <e^i, S^{-1}(beta) S^{-2}(qt^1 (e_i)_1) h> qt^2 (e_i)_2."""
    return _apply(_projection_matrix(H, PROJ_TILDE), h)


def _in_span(v, t):
    pivot = next(k for k, c in enumerate(t) if not is_zero(c))
    m = v[pivot] * scalar_inverse(t[pivot])
    return v == [m * c for c in t]


def structure_checks(H: Presentation, data: IntegralData | None = None) -> ValidationReport:
    """Integral-space dimensions, projections, mu, and the identities relating lambda, mu and r."""
    data = data or integral_data(H)
    n = H.dim
    t, mu, lam, r = data.left, data.mu, data.lam, data.r
    checks = []
    for label, formula in (("P", PROJ), ("P_tilde", PROJ_TILDE)):
        m = _projection_matrix(H, formula)
        bad = next((j for j in range(n) if not _in_span(_apply(m, H.basis_vector(j)), t)), None)
        checks.append(CheckReport(f"{label}_into_left_integrals", bad is None, None if bad is None else [bad]))
        checks.append(CheckReport(f"{label}_fixes_left_integrals", _apply(m, t) == t))
    cop = op_cop(H, "cop")
    checks.append(CheckReport("P_tilde_is_P_of_cop",
                              _projection_matrix(H, PROJ_TILDE) == _projection_matrix(cop, PROJ)))

    bad = None
    for i in range(n):
        for j in range(n):
            prod = H.mul(H.basis_vector(i), H.basis_vector(j))
            if H.pair(mu, prod) != mu[i] * mu[j]:
                bad = [i, j]
                break
        if bad:
            break
    checks.append(CheckReport("mu_algebra_map", bad is None and H.pair(mu, H.unit) == ONE, bad))
    checks.append(CheckReport("right_integrals_are_S_of_left", _in_span(H.S(t), data.right)))
    checks.append(CheckReport("lambda_S_r", H.pair(lam, H.S(r)) == ONE))

    # lambda(h S(r)) = eps(h)
    bad = next((i for i in range(n) if H.pair(lam, H.mul(H.basis_vector(i), H.S(r))) != H.counit[i]), None)
    checks.append(CheckReport("lambda_h_S_r", bad is None, None if bad is None else [bad]))

    # lambda(S^{-1}(h) h') = mu(h_1) lambda(h' S(h_2))
    rhs = H.ev("J1 S(I1_2) | I2 | J2 | <mu: I1_1>", mu=mu)
    rhs_m = [[ZERO] * n for _ in range(n)]
    for (a, i, j), c in rhs.items():
        rhs_m[i][j] += c * lam[a]
    bad = None
    for i in range(n):
        si = H.S_inv(H.basis_vector(i))
        for j in range(n):
            if H.pair(lam, H.mul(si, H.basis_vector(j))) != rhs_m[i][j]:
                bad = [i, j]
                break
        if bad:
            break
    checks.append(CheckReport("lambda_antipode_mu", bad is None, bad))

    # r_1 (x) r_2 = r_1 p^1 (x) r_2 p^2 alpha = r_1 p^1 S^{-1}(alpha) (x) r_2 p^2
    rt = Tensor.from_vector(r)
    pR = H.ev(P_R)
    a = H.ev("r1_1 | r1_2", r=rt)
    b = H.ev("r1_1 p1 | r1_2 p2 alpha", r=rt, p=pR)
    c = H.ev("r1_1 p1 Si(alpha) | r1_2 p2", r=rt, p=pR)
    w = first_difference(a, b) or first_difference(a, c)
    checks.append(CheckReport("right_integral_pR_alpha", w is None, w))
    return ValidationReport(checks)


# ------------------------------------------------------------ trace formula

def trace_formula_tensor(H: Presentation, data: IntegralData) -> Tensor:
    """T[j, k] with Tr(chi) = sum_jk T[j, k] lambda(chi(e_j) e_k)."""
    if H.pair(data.lam, H.S(data.r)) != ONE:
        raise NotNormalized("the pair (lambda, r) must satisfy lambda(S(r)) = 1")
    return H.ev(TRACE, mu=data.mu, r=Tensor.from_vector(data.r), p=H.ev(P_R))


def trace_formula(H: Presentation, data: IntegralData, chi, tensor: Tensor | None = None):
    """mu(q^1_1 x^1) lambda(chi(q^2 x^3 r_2 p^2) S(q^1_2 x^2 r_1 p^1)).

    ``chi`` is an n x n matrix acting on column coordinates.
    """
    T = tensor if tensor is not None else trace_formula_tensor(H, data)
    n = H.dim
    images = {}
    total = ZERO
    for (j, k), c in T.items():
        if j not in images:
            images[j] = [chi[row][j] for row in range(n)]
        total += c * H.pair(data.lam, H.mul(images[j], H.basis_vector(k)))
    return total


def random_endomorphisms(n: int, count: int, seed: int = 0, low: int = -3, high: int = 3):
    rng = random.Random(seed)
    return [[[mpq(rng.randint(low, high)) for _ in range(n)] for _ in range(n)] for _ in range(count)]


def twisted_square_trace(H: Presentation):
    """Tr(h -> beta S(alpha) S^2(h) S(beta) alpha)."""
    left = H.mul(H.beta, H.S(H.alpha))
    right = H.mul(H.S(H.beta), H.alpha)
    return sum((H.mul_many(left, H.S(H.basis_vector(j), 2), right)[j] for j in range(H.dim)), ZERO)


# ------------------------------------------------------------ rank formula

def is_semisimple(H: Presentation) -> bool:
    """The trace form Tr(L_a L_b) is nondegenerate (characteristic zero)."""
    n = H.dim
    mats = [H.left_mult_matrix(H.basis_vector(i)) for i in range(n)]
    gram = [[sum((mats[a][r][s] * mats[b][s][r] for r in range(n) for s in range(n)
                  if mats[a][r][s] and mats[b][s][r]), ZERO) for b in range(n)] for a in range(n)]
    return rank(gram) == n


@dataclass
class RankReport:
    epsilon_r: object
    lambda_op_pairing: object
    rank_scalar: object
    closed_form: object
    double_counit: object
    lambda_op: list
    r: list
    mu_op_is_mu_S: bool

    @property
    def three_way_equal(self) -> bool:
        return self.rank_scalar == self.closed_form == self.double_counit


def rank_via_integrals(H: Presentation, double=None) -> RankReport:
    """eps(r) lambda_op(S^{-1}(alpha) beta), the closed-form rank and eps_D(beta -> lambda_op |><| r)."""
    from .double import build_double
    from .representations import qdim_closed_form

    H.require_valid()
    Hop = op_cop(H, "op")
    _, _, mu_op = solve_integrals(Hop)
    lam_op = solve_cointegral(Hop, mu_op)
    _, r0, mu = solve_integrals(H)
    s = H.pair(lam_op, r0)
    if is_zero(s):
        raise NormalizationImpossible("lambda_op vanishes on the right integrals")
    r = [c * scalar_inverse(s) for c in r0]
    eps_r = H.pair(H.counit, r)
    pairing = H.pair(lam_op, H.mul(H.S_inv(H.alpha), H.beta))
    D = double if double is not None else build_double(H)
    x = D.element(H.harpoon_left(H.beta, lam_op), r)
    eps_d = D.inner.pair(D.inner.counit, x)
    mu_s = [H.pair(mu, H.S(H.basis_vector(i))) for i in range(H.dim)]
    return RankReport(eps_r, pairing, eps_r * pairing, qdim_closed_form(H), eps_d, lam_op, r, mu_s == mu_op)


def conjecture_probe(H: Presentation, double=None, report: RankReport | None = None) -> bool:
    """Whether beta -> lambda_op |><| r is a left integral of D(H). Informational only."""
    from .double import build_double

    D = double if double is not None else build_double(H)
    report = report or rank_via_integrals(H, D)
    P = D.inner
    x = D.element(H.harpoon_left(H.beta, report.lambda_op), report.r)
    for i in range(P.dim):
        if P.mul(P.basis_vector(i), x) != [P.counit[i] * c for c in x]:
            return False
    return True
