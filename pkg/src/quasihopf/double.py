"""The quantum double D(H) = H* |><| H as an explicit presentation of dimension n^2.

The basis element e^i |><| e_j of D(H) has index ``i * n + j``.
"""

from __future__ import annotations

from collections import defaultdict

from gmpy2 import mpq

from .algebra import CheckReport, Presentation, ValidationReport, first_difference, validate_presentation
from .derived import DerivedPack
from .errors import DoubleValidationFailure
from .linalg import Tensor

__all__ = [
    "DoublePresentation",
    "build_double",
    "classical_double_product",
    "double_to_json",
    "verify_quasitriangular",
]

ZERO = mpq(0)
ONE = mpq(1)

# (e^a |><| e_b)(e^c |><| e_d) = sum T[a, c, k, i, b] e^i |><| e_k e_d
MULT = "O5 I1_1 O1 | Si(J1_2) O4 I1_2 O2 J1_11 | O3 J1_12 | I2 | J2"
# Delta_D(e^a |><| e_b) = sum T[a, i, k, u, v, w, b] (eps |><| e_u)(e^i |><| e_v) (x) (e^k |><| e_w)
COMULT = ("Si(X3) K1 X2_1 Y2 Si(p2) I1 p1_1 x1 | I2 | K2 | X1 Y1 | p1_2 x2 J1_1 | X2_2 Y3 x3 J1_2 | J2")
# S_D(e^a |><| e_b) = sum T[a, i, u, v, b] (eps |><| e_u)(e^i |><| e_v)
ANTIPODE = "Si(f2 Si(p2) I1 p1_1 U1) | I2 | S(J1) f1 | p1_2 U2 | J2"
# R_D = sum T[u, i, v] (eps |><| e_u) (x) (e^i |><| e_v)
R_MATRIX = "Si(p2) I1 p1_1 | I2 | p1_2"


class DoublePresentation:
    """D(H) together with its source, R-matrix and cached gauge data."""

    def __init__(self, source: Presentation, inner: Presentation, R: Tensor, pack: DerivedPack, omega: Tensor):
        self.source = source
        self.inner = inner
        self.R = R
        self.pack = pack
        self.omega = omega
        self._qt_report = None

    @property
    def n(self) -> int:
        return self.source.dim

    @property
    def dim(self) -> int:
        return self.inner.dim

    def index(self, i: int, j: int) -> int:
        return i * self.n + j

    def element(self, phi, h):
        """Coordinates of phi |><| h."""
        n = self.n
        out = [ZERO] * (n * n)
        for i, a in enumerate(phi):
            if a:
                for j, b in enumerate(h):
                    if b:
                        out[i * n + j] = a * b
        return out

    def embed(self, h):
        """i_D(h) = eps |><| h."""
        return self.element(self.source.counit, h)

    def split(self, x):
        """Coordinates as an n x n array ``c[i][j]`` of e^i |><| e_j."""
        n = self.n
        return [x[i * n:(i + 1) * n] for i in range(n)]

    def __repr__(self):
        return f"DoublePresentation(D({self.source.name}), dim={self.dim})"


def _embed_tensor(n: int, counit, t: Tensor) -> Tensor:
    """Apply i_D in every slot."""
    eps = [(c, e) for c, e in enumerate(counit) if e]
    data: dict = {}
    for idx, v in t.items():
        partial = [((), v)]
        for j in idx:
            partial = [(key + (c * n + j,), w * e) for key, w in partial for c, e in eps]
        for key, w in partial:
            data[key] = data.get(key, ZERO) + w
    return Tensor(n * n, t.arity, data)


def _group(t: Tensor, key_slots, rest_slots):
    out = defaultdict(list)
    for idx, c in t.items():
        out[tuple(idx[s] for s in key_slots)].append((tuple(idx[s] for s in rest_slots), c))
    return out


def build_double(H: Presentation, check: bool = True) -> DoublePresentation:
    """Assemble every structure constant of D(H) and, by default, verify the result."""
    H.require_valid()
    pack = H.pack
    omega = pack.omega
    n = H.dim
    N = n * n
    mt = H.mul_table

    # multiplication
    prod_terms = _group(H.ev(MULT, O=omega), (0, 1, 4), (3, 2))  # (a, c, b) -> [((i, k), coeff)]
    mult: dict = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                terms = prod_terms.get((a, c, b), [])
                for d in range(n):
                    acc: dict = {}
                    for (i, k), coeff in terms:
                        for l, cm in mt[k][d]:
                            key = i * n + l
                            acc[key] = acc.get(key, ZERO) + coeff * cm
                    mult[(a * n + b, c * n + d)] = [(key, v) for key, v in sorted(acc.items()) if v]

    unit = [ZERO] * N
    for c, e in enumerate(H.counit):
        for j, u in enumerate(H.unit):
            if e and u:
                unit[c * n + j] = e * u
    counit = [H.counit[b] * s for s in H.S_inv(H.alpha) for b in range(n)]
    phi = _embed_tensor(n, H.counit, H.phi)
    phi_inv = _embed_tensor(n, H.counit, H.phi_inv)
    alpha = _embed_tensor(n, H.counit, Tensor.from_vector(H.alpha)).to_vector()
    beta = _embed_tensor(n, H.counit, Tensor.from_vector(H.beta)).to_vector()

    def dmul(x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in mult[(i, j)]:
                    out[k] = out.get(k, ZERO) + a * b * c
        return {k: v for k, v in out.items() if v}

    eps_h = {u: {c * n + u: e for c, e in enumerate(H.counit) if e} for u in range(n)}

    # comultiplication
    comult: dict = {x: defaultdict(lambda: ZERO) for x in range(N)}
    for (a, i, k, u, v, w, b), coeff in H.ev(COMULT).items():
        left = dmul(eps_h[u], {i * n + v: ONE})
        right = k * n + w
        bucket = comult[a * n + b]
        for l, cl in left.items():
            bucket[(l, right)] += coeff * cl
    comult = {x: [(jk, c) for jk, c in sorted(d.items()) if c] for x, d in comult.items()}

    # antipode
    antipode = [[ZERO] * N for _ in range(N)]
    for (a, i, u, v, b), coeff in H.ev(ANTIPODE).items():
        for l, cl in dmul(eps_h[u], {i * n + v: ONE}).items():
            antipode[a * n + b][l] += coeff * cl

    labels = [f"e^{H.basis_labels[i]}#{H.basis_labels[j]}" for i in range(n) for j in range(n)]
    inner = Presentation(N, mult, unit, comult, counit, phi, antipode, alpha, beta,
                         basis_labels=labels, field_order=H.field_order, phi_inv=phi_inv,
                         name=f"D({H.name})", normalize=False)

    r_data: dict = {}
    for (u, i, v), coeff in H.ev(R_MATRIX).items():
        for l, cl in eps_h[u].items():
            key = (l, i * n + v)
            r_data[key] = r_data.get(key, ZERO) + coeff * cl
    R = Tensor(N, 2, r_data)

    D = DoublePresentation(H, inner, R, pack, omega)
    if check:
        report = validate_presentation(inner)
        if not report.valid:
            raise DoubleValidationFailure(f"D({H.name}) fails validation", report)
        qt = verify_quasitriangular(inner, R)
        D._qt_report = qt
        if not qt.valid:
            raise DoubleValidationFailure(f"R-matrix of D({H.name}) fails quasi-triangularity", qt)
    return D


def _insert_unit(H: Presentation, t: Tensor, slot: int) -> Tensor:
    unit = [(i, c) for i, c in enumerate(H.unit) if c]
    data = {}
    for idx, v in t.items():
        for i, c in unit:
            data[idx[:slot] + (i,) + idx[slot:]] = v * c
    return Tensor(H.dim, t.arity + 1, data)


def verify_quasitriangular(P: Presentation, R: Tensor) -> ValidationReport:
    """Check the four quasi-triangularity axioms qt1-qt4 and invertibility of R."""
    phi, phi_inv = P.phi, P.phi_inv
    R13 = _insert_unit(P, R, 1)
    R12 = _insert_unit(P, R, 2)
    R23 = _insert_unit(P, R, 0)
    checks = []

    lhs = P.apply_delta(R, 0)
    rhs = P.tmul_many(phi.permute((1, 2, 0)), R13, phi_inv.permute((0, 2, 1)), R23, phi)
    w = first_difference(lhs, rhs)
    checks.append(CheckReport("qt1", w is None, w))

    lhs = P.apply_delta(R, 1)
    rhs = P.tmul_many(phi_inv.permute((2, 0, 1)), R13, phi.permute((1, 0, 2)), R12, phi_inv)
    w = first_difference(lhs, rhs)
    checks.append(CheckReport("qt2", w is None, w))

    bad = None
    for i in range(P.dim):
        d = P.delta(P.basis_vector(i))
        w = first_difference(P.tmul(d.permute((1, 0)), R), P.tmul(R, d))
        if w is not None:
            bad = [i] + w
            break
    checks.append(CheckReport("qt3", bad is None, bad))

    one1 = P.unit_tensor(1)
    w = first_difference(P.apply_eps(R, 0), one1) or first_difference(P.apply_eps(R, 1), one1)
    checks.append(CheckReport("qt4", w is None, w))

    try:
        r_inv = P._solve_tensor_inverse(R)
        ok = P.tmul(r_inv, R) == P.unit_tensor(2)
    except ZeroDivisionError:
        ok = False
    checks.append(CheckReport("R_invertible", ok))
    return ValidationReport(checks)


def classical_double_product(H: Presentation, a: tuple, b: tuple):
    """(phi |><| h)(psi |><| h') = phi (h_1 -> psi <- S^{-1}(h_3)) |><| h_2 h' for Hopf algebras.

    ``a`` and ``b`` are pairs of coordinate lists; the result is a coordinate
    list on the basis e^i |><| e_j.  Valid only when Phi is trivial.
    """
    phi, h = a
    psi, h2 = b
    n = H.dim
    out = [ZERO] * (n * n)
    d2 = H.apply_delta(H.delta(h), 0)
    for (i, j, k), c in d2.items():
        moved = H.harpoon_right(H.harpoon_left(H.basis_vector(i), psi), H.S_inv(H.basis_vector(k)))
        func = H.convolution(phi, moved)
        right = H.mul(H.basis_vector(j), h2)
        for x, fx in enumerate(func):
            if fx:
                for y, ry in enumerate(right):
                    if ry:
                        out[x * n + y] += c * fx * ry
    return out


def double_to_json(D: DoublePresentation) -> dict:
    """The presentation layout of D(H) plus the flat R-matrix and the embedded source."""
    from .algebra import presentation_to_json
    from .scalars import render_scalar

    doc = presentation_to_json(D.inner)
    doc["r_matrix"] = [render_scalar(c) for c in D.R.to_dense()]
    doc["source"] = presentation_to_json(D.source)
    return doc
