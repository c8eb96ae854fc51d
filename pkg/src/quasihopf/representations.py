"""Modules over a presentation, rigidity data, the elements u and eta, the
Schroedinger action of D(H) on H, and quantum dimensions."""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .algebra import CheckReport, Presentation, ValidationReport, first_difference
from .double import DoublePresentation, build_double
from .errors import InvalidModule, NotQuasiTriangular
from .linalg import (
    Tensor,
    identity_matrix,
    kron,
    matmul,
    solve_linear,
    trace,
    transpose,
    zero_matrix,
)

__all__ = [
    "ModuleAction",
    "UElements",
    "circle_product_table",
    "compute_u_eta",
    "dual_ev_coev",
    "eta_closed_form",
    "g_element_check",
    "module_algebra_checks",
    "qdim_closed_form",
    "qdim_double_regular",
    "qdim_schrodinger",
    "quantum_dimension",
    "regular_module",
    "rigidity_checks",
    "schrodinger_action",
    "schrodinger_action_explicit",
    "schrodinger_action_functor",
    "trivial_module",
    "u_closed_form",
]

ZERO = mpq(0)
ONE = mpq(1)
P_R = "x1 | x2 beta S(x3)"


@dataclass
class ModuleAction:
    """A left module: ``action[i]`` is the matrix of the algebra basis element e_i."""

    algebra: Presentation
    vdim: int
    action: list
    label: str = "V"

    def act(self, h):
        m = zero_matrix(self.vdim, self.vdim)
        for i, c in enumerate(h):
            if c:
                a = self.action[i]
                for r in range(self.vdim):
                    row, arow = m[r], a[r]
                    for s in range(self.vdim):
                        if arow[s]:
                            row[s] += c * arow[s]
        return m

    def act_tensor(self, t: Tensor, modules=None):
        """Matrix of a tensor acting on a tensor product of modules (Kronecker order)."""
        modules = modules or [self] * t.arity
        dims = 1
        for m in modules:
            dims *= m.vdim
        out = zero_matrix(dims, dims)
        for idx, c in t.items():
            mat = [[c]]
            for mod, i in zip(modules, idx):
                mat = kron(mat, mod.action[i])
            for r in range(dims):
                for s in range(dims):
                    if mat[r][s]:
                        out[r][s] += mat[r][s]
        return out

    def check(self) -> ValidationReport:
        H = self.algebra
        checks = []
        bad = None
        for i in range(H.dim):
            for j in range(H.dim):
                lhs = matmul(self.action[i], self.action[j])
                rhs = self.act(H.mul(H.basis_vector(i), H.basis_vector(j)))
                if lhs != rhs:
                    bad = [i, j]
                    break
            if bad:
                break
        checks.append(CheckReport("module_multiplicative", bad is None, bad))
        checks.append(CheckReport("module_unit", self.act(H.unit) == identity_matrix(self.vdim)))
        return ValidationReport(checks)

    def require_valid(self):
        report = self.check()
        if not report.valid:
            names = ", ".join(c.name for c in report.failures())
            raise InvalidModule(f"{self.label} is not a module: {names}")
        return self


def regular_module(H: Presentation) -> ModuleAction:
    return ModuleAction(H, H.dim, [H.left_mult_matrix(H.basis_vector(i)) for i in range(H.dim)], "regular")


def trivial_module(H: Presentation) -> ModuleAction:
    return ModuleAction(H, 1, [[[c]] for c in H.counit], "trivial")


# ---------------------------------------------------------------- rigidity

def dual_ev_coev(V: ModuleAction):
    """Return (V*, ev, coev).

    V* acts by h -> rho(S(h))^T; ``ev`` is a 1 x d^2 matrix on V* (x) V with
    ev(phi (x) v) = phi(alpha v); ``coev`` is the d^2 vector sum beta v_i (x) v^i
    in V (x) V*.
    """
    H = V.algebra
    if not H.s_invertible:
        raise InvalidModule("the antipode is not invertible")
    d = V.vdim
    dual = ModuleAction(H, d, [transpose(V.act(H.S(H.basis_vector(i)))) for i in range(H.dim)], f"{V.label}*")
    a = V.act(H.alpha)
    b = V.act(H.beta)
    ev = [[a[i][j] for i in range(d) for j in range(d)]]
    coev = [b[k][i] for k in range(d) for i in range(d)]
    return dual, ev, coev


def rigidity_checks(V: ModuleAction) -> ValidationReport:
    """Both zig-zag composites with the associativity constraint inserted.

    The composites are contracted index by index, so only d x d matrices appear:
    V -> (V V*) V -> V (V* V) -> V and V* -> V* (V V*) -> (V* V) V* -> V*.
    """
    H = V.algebra
    d = V.vdim
    a = V.act(H.alpha)
    b = V.act(H.beta)
    rho = V.action
    rho_s = [V.act(H.S(H.basis_vector(i))) for i in range(H.dim)]
    left = zero_matrix(d, d)
    for (i, j, k), c in H.phi.items():
        _add_scaled(left, c, matmul(matmul(matmul(matmul(rho[i], b), rho_s[j]), a), rho[k]))
    right = zero_matrix(d, d)
    for (i, j, k), c in H.phi_inv.items():
        _add_scaled(right, c, matmul(matmul(matmul(matmul(rho_s[i], a), rho[j]), b), rho_s[k]))
    ident = identity_matrix(d)
    return ValidationReport([
        CheckReport("zigzag_V", left == ident),
        CheckReport("zigzag_dual", right == ident),
    ])


def _add_scaled(acc, c, m):
    for r, row in enumerate(m):
        arow = acc[r]
        for s, v in enumerate(row):
            if v:
                arow[s] += c * v


def quantum_dimension(V: ModuleAction, R: Tensor, eta=None):
    """Tr rho(eta), asserted equal to ev o c_{V,V*} o coev.

    With c(v (x) phi) = R^2 phi (x) R^1 v the composite contracts to
    sum Tr(rho(beta) rho(S(R^2)) rho(alpha) rho(R^1)).
    """
    H = V.algebra
    if eta is None:
        eta = compute_u_eta(H, R).eta
    by_trace = trace(V.act(eta))
    a = V.act(H.alpha)
    b = V.act(H.beta)
    composite = ZERO
    for (i, j), c in R.items():
        composite += c * trace(matmul(matmul(matmul(b, V.act(H.S(H.basis_vector(j)))), a), V.action[i]))
    if by_trace != composite:
        raise NotQuasiTriangular(
            f"trace of eta ({by_trace}) differs from ev o c o coev ({composite})")
    return by_trace


# ---------------------------------------------------------------- u and eta

@dataclass
class UElements:
    u: list
    eta: list
    u_inv: list
    checks: ValidationReport = field(default_factory=ValidationReport)


def compute_u_eta(P: Presentation, R: Tensor, check: bool = True) -> UElements:
    """u = S(R^2 p^2) alpha R^1 p^1 and eta = S(R^2) alpha R^1 beta."""
    pR = P.ev(P_R)
    u = P.ev("S(R2 p2) alpha R1 p1", R=R, p=pR).to_vector()
    eta = P.ev("S(R2) alpha R1 beta", R=R).to_vector()
    u_inv = solve_linear(P.left_mult_matrix(u), P.unit)
    if u_inv is None:
        raise NotQuasiTriangular("u is not invertible")
    checks = ValidationReport()
    if check:
        bad = None
        for i in range(P.dim):
            e = P.basis_vector(i)
            if P.S(e, 2) != P.mul_many(u, e, u_inv):
                bad = [i]
                break
        checks.checks.append(CheckReport("S2_conjugation", bad is None, bad))
        checks.checks.append(CheckReport("u_inverse_two_sided", P.mul(u_inv, u) == P.unit))
        checks.checks.append(CheckReport("eta_from_u", eta == P.mul_many(u, P.S_inv(P.alpha), P.beta)))
        lhs = P.ev("S(R2) alpha R1", R=R).to_vector()
        checks.checks.append(CheckReport("S_alpha_u", lhs == P.mul(P.S(P.alpha), u)))
        if not checks.valid:
            names = ", ".join(c.name for c in checks.failures())
            raise NotQuasiTriangular(f"u/eta identities fail: {names}")
    return UElements(u, eta, u_inv, checks)


def u_closed_form(D: DoublePresentation):
    """sum_i beta -> Sbar^{-1}(e^i) |><| e_i."""
    H = D.source
    out = [ZERO] * D.dim
    for i in range(H.dim):
        phi = H.harpoon_left(H.beta, H.Sbar_inv(H.basis_vector(i)))
        out = [a + b for a, b in zip(out, D.element(phi, H.basis_vector(i)))]
    return out


def eta_closed_form(D: DoublePresentation):
    """sum_i beta -> Sbar^{-1}(e^i) |><| e_i S^{-1}(alpha) beta."""
    H = D.source
    tail = H.mul(H.S_inv(H.alpha), H.beta)
    out = [ZERO] * D.dim
    for i in range(H.dim):
        phi = H.harpoon_left(H.beta, H.Sbar_inv(H.basis_vector(i)))
        out = [a + b for a, b in zip(out, D.element(phi, H.mul(H.basis_vector(i), tail)))]
    return out


def s_alpha_r_closed_form(D: DoublePresentation):
    """sum_i beta -> Sbar^{-1}(e^i) <- alpha |><| e_i, the value of S_D(R^2) alpha_D R^1."""
    H = D.source
    out = [ZERO] * D.dim
    for i in range(H.dim):
        phi = H.harpoon_right(H.harpoon_left(H.beta, H.Sbar_inv(H.basis_vector(i))), H.alpha)
        out = [a + b for a, b in zip(out, D.element(phi, H.basis_vector(i)))]
    return out


def g_element_check(H: Presentation) -> CheckReport:
    """beta S(alpha) is invertible with inverse S(beta) alpha."""
    g = H.mul(H.beta, H.S(H.alpha))
    g_inv = H.mul(H.S(H.beta), H.alpha)
    ok = H.mul(g, g_inv) == H.unit and H.mul(g_inv, g) == H.unit
    return CheckReport("g_invertible", ok)


# ------------------------------------------------------ Schroedinger action

STAGE1 = "Y1_1 y1 | Y1_2 y2 J1_1 K1 S(J1_2) S(Y2 y3) | Y3 | J2 | K2"
STAGE2 = "Si(qt1 T2_1 U1 T3) T1 | qt2 T2_2 U2 | T4 | T5"
ADJOINT_ACTION = "J1_1 K1 S(J1_2) | J2 | K2"
EXPLICIT_ACTION = ("q2 x3 y3_2 Si(qt1 y2_1 A1_1 g1) y1 | q1_1 x1 qt2 y2_2 A1_2 g2 S(q1_2 x2 y3_1) | A2 | A3")
COACTION = "x1 qt2 y2_2 A1_2 g2 S(x2 y3_1) | x3 y3_2 Si(qt1 y2_1 A1_1 g1) y1 | A2 | A3"
FUNCTOR = "q2 B2 | q1_1 B1 S(q1_2) | B3 | B4"


def _action_from_tensor(D: DoublePresentation, t: Tensor, label: str) -> ModuleAction:
    """t[a, m, b, c] is the e_m-coefficient of (e^a |><| e_b) acting on e_c."""
    n = D.n
    mats = [zero_matrix(n, n) for _ in range(D.dim)]
    for (a, m, b, c), v in t.items():
        mats[a * n + b][m][c] += v
    return ModuleAction(D.inner, n, mats, label)


def schrodinger_action(D: DoublePresentation) -> ModuleAction:
    """The action of D(H) on H in its rewritten form, contracted in two stages."""
    H = D.source
    t1 = H.ev(STAGE1)
    return _action_from_tensor(D, H.ev(STAGE2, T=t1), "schroedinger")


def schrodinger_action_explicit(D: DoublePresentation) -> ModuleAction:
    """The same action evaluated from its original single-formula form."""
    H = D.source
    return _action_from_tensor(D, H.ev(EXPLICIT_ACTION, A=H.ev(ADJOINT_ACTION)), "schroedinger-explicit")


def schrodinger_action_functor(D: DoublePresentation) -> ModuleAction:
    """The same action through the right coaction of H_0 and the Yetter-Drinfeld functor."""
    H = D.source
    b = H.ev(COACTION, A=H.ev(ADJOINT_ACTION))
    return _action_from_tensor(D, H.ev(FUNCTOR, B=b), "schroedinger-functor")


def circle_product_table(H: Presentation):
    """table[j][k] = e_j o e_k in H_0."""
    t = H.ev("X1 J1 S(x1 X2) alpha x2 X3_1 K1 S(x3 X3_2) | J2 | K2")
    n = H.dim
    table = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for (m, j, k), c in t.items():
        table[j][k][m] += c
    return table


def _circ(table, a, b):
    n = len(a)
    out = [ZERO] * n
    for j, x in enumerate(a):
        if x:
            for k, y in enumerate(b):
                if y:
                    xy = x * y
                    for m, c in enumerate(table[j][k]):
                        if c:
                            out[m] += xy * c
    return out


def module_algebra_checks(D: DoublePresentation, action: ModuleAction | None = None) -> ValidationReport:
    """Module-algebra law and unit law of H_0 under the Schroedinger action."""
    H, P = D.source, D.inner
    n = H.dim
    if action is None:
        action = schrodinger_action(D)
    table = circle_product_table(H)
    basis = [H.basis_vector(i) for i in range(n)]

    def act(x, v):
        m = action.action[x]
        return [sum((m[r][s] * v[s] for s in range(n) if m[r][s]), ZERO) for r in range(n)]

    bad = None
    for x in range(P.dim):
        dx = P.delta(P.basis_vector(x))
        for a in range(n):
            for b in range(n):
                lhs = act(x, table[a][b])
                rhs = [ZERO] * n
                for (y, z), c in dx.items():
                    term = _circ(table, act(y, basis[a]), act(z, basis[b]))
                    rhs = [r + c * t for r, t in zip(rhs, term)]
                if lhs != rhs:
                    bad = [x, a, b]
                    break
            if bad:
                break
        if bad:
            break
    checks = [CheckReport("module_algebra", bad is None, bad)]

    bad = None
    for x in range(P.dim):
        if act(x, H.beta) != [P.counit[x] * c for c in H.beta]:
            bad = [x]
            break
    checks.append(CheckReport("module_algebra_unit", bad is None, bad))

    unit_ok = all(_circ(table, H.beta, basis[a]) == basis[a] == _circ(table, basis[a], H.beta) for a in range(n))
    checks.append(CheckReport("circle_unit_beta", unit_ok))

    # (a o b) o c = (X^1 > a) o ((X^2 > b) o (X^3 > c)) for the adjoint action of H
    adj = H.ev("J1_1 K1 S(J1_2) | J2 | K2")
    adj_mats = [zero_matrix(n, n) for _ in range(n)]
    for (m, j, k), c in adj.items():
        adj_mats[j][m][k] += c

    def adjoint(h_index, v):
        m = adj_mats[h_index]
        return [sum((m[r][s] * v[s] for s in range(n) if m[r][s]), ZERO) for r in range(n)]

    bad = None
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                lhs = _circ(table, ab, basis[c])
                rhs = [ZERO] * n
                for (i, j, k), v in H.phi.items():
                    term = _circ(table, adjoint(i, basis[a]), _circ(table, adjoint(j, basis[b]), adjoint(k, basis[c])))
                    rhs = [r + v * t for r, t in zip(rhs, term)]
                if lhs != rhs:
                    bad = [a, b, c]
                    break
            if bad:
                break
        if bad:
            break
    checks.append(CheckReport("circle_quasi_associative", bad is None, bad))

    # restriction along i_D is the adjoint action h_1 h' S(h_2)
    bad = None
    for j in range(n):
        emb = D.embed(basis[j])
        m = action.act(emb)
        for k in range(n):
            col = [m[r][k] for r in range(n)]
            if col != adjoint(j, basis[k]):
                bad = [j, k]
                break
        if bad:
            break
    checks.append(CheckReport("restriction_is_adjoint", bad is None, bad))
    return ValidationReport(checks)


# ------------------------------------------------------ quantum dimensions

def _as_double(obj) -> DoublePresentation:
    return obj if isinstance(obj, DoublePresentation) else build_double(obj)


def _source(obj) -> Presentation:
    return obj.source if isinstance(obj, DoublePresentation) else obj


def qdim_closed_form(H) -> object:
    """Tr(h -> S^{-2}(S(beta) alpha h beta S(alpha)))."""
    H = _source(H)
    H.require_valid()
    left = H.mul(H.S(H.beta), H.alpha)
    right = H.mul(H.beta, H.S(H.alpha))
    total = ZERO
    for j in range(H.dim):
        img = H.S(H.mul_many(left, H.basis_vector(j), right), -2)
        total += img[j]
    return total


def _eta_double(D: DoublePresentation):
    if getattr(D, "_eta", None) is None:
        D._eta = compute_u_eta(D.inner, D.R).eta
    return D._eta


def qdim_schrodinger(H) -> object:
    """Trace of eta_D acting on H through the Schroedinger action."""
    D = _as_double(H)
    return trace(schrodinger_action(D).act(_eta_double(D)))


def qdim_double_regular(H) -> object:
    """Trace of left multiplication by eta_D on D(H)."""
    D = _as_double(H)
    return trace(D.inner.left_mult_matrix(_eta_double(D)))
