"""Gauge data of a quasi-Hopf algebra: the twist f, the elements gamma and
delta, p_R, q_R, p_L, q_L, U, V and Omega, plus the identities they satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import CheckReport, Presentation, ValidationReport, first_difference
from .linalg import Tensor

__all__ = [
    "DerivedPack",
    "SuiteReport",
    "build_omega",
    "compute_pack",
    "compute_pq",
    "compute_twist",
    "identity_suite",
    "twist_checks",
]

SuiteReport = ValidationReport

GAMMA = "S(X2 x1_2) alpha X3 x2 | S(X1 x1_1) alpha x3"
DELTA = "X1_1 x1 beta S(X3) | X1_2 x2 beta S(X2 x3)"
GAMMA_ALT = "S(x1 X2) alpha x2 X3_1 | S(X1) alpha x3 X3_2"
DELTA_ALT = "x1 beta S(x3_2 X3) | x2 X1 beta S(x3_1 X2)"
P_R = "x1 | x2 beta S(x3)"
Q_R = "X1 | Si(alpha X3) X2"
P_L = "X2 Si(X1 beta) | X3"
Q_L = "S(x1) alpha x2 | x3"
OMEGA = "X1_11 y1 x1 | X1_12 y2 x2_1 | X1_2 y3 x2_2 | Si(f1 X2 x3) | Si(f2 X3)"


@dataclass
class DerivedPack:
    """Twist and gauge elements of one presentation (all arity-2 tensors)."""

    f: Tensor
    f_inv: Tensor
    gamma: Tensor
    delta: Tensor
    pR: Tensor
    qR: Tensor
    pL: Tensor
    qL: Tensor
    U: Tensor
    V: Tensor
    S_inv: list
    u: list | None = None
    _omega: Tensor | None = field(default=None, repr=False)
    _owner: Presentation | None = field(default=None, repr=False)

    _ALIASES = {
        "f": "f", "F": "f", "g": "f_inv", "G": "f_inv",
        "gam": "gamma", "dlt": "delta",
        "p": "pR", "P": "pR", "q": "qR", "Q": "qR",
        "pt": "pL", "Pt": "pL", "qt": "qL", "Qt": "qL",
        "U": "U", "V": "V",
    }

    @property
    def omega(self) -> Tensor:
        if self._omega is None:
            self._omega = build_omega(self._owner, self)
        return self._omega

    def named(self, name: str) -> Tensor:
        if name in ("O", "Om"):
            return self.omega
        return getattr(self, self._ALIASES[name])

    def knows(self, name: str) -> bool:
        return name in self._ALIASES or name in ("O", "Om")


def compute_twist(H: Presentation):
    """Return (f, f_inv, gamma, delta) computed from Phi, alpha and beta."""
    H.require_valid()
    gamma = H.ev(GAMMA)
    delta = H.ev(DELTA)
    w = H.ev("x1 | x2 beta S(x3)")
    f = H.ev("S(W1_2) gam1 W2_1 | S(W1_1) gam2 W2_2", W=w, gam=gamma)
    w = H.ev("S(x1) alpha x2 | x3")
    f_inv = H.ev("W1_1 dlt1 S(W2_2) | W1_2 dlt2 S(W2_1)", W=w, dlt=delta)
    return f, f_inv, gamma, delta


def compute_pq(H: Presentation, f=None, f_inv=None):
    """Return (p_R, q_R, p_L, q_L, U, V)."""
    H.require_valid()
    if f is None or f_inv is None:
        f, f_inv, _, _ = compute_twist(H)
    pR, qR, pL, qL = H.ev(P_R), H.ev(Q_R), H.ev(P_L), H.ev(Q_L)
    U = H.ev("g1 S(q2) | g2 S(q1)", g=f_inv, q=qR)
    V = H.ev("Si(f2 p2) | Si(f1 p1)", f=f, p=pR)
    return pR, qR, pL, qL, U, V


def compute_pack(H: Presentation) -> DerivedPack:
    f, f_inv, gamma, delta = compute_twist(H)
    pR, qR, pL, qL, U, V = compute_pq(H, f, f_inv)
    s_inv = H.antipode_inverse_matrix
    return DerivedPack(f, f_inv, gamma, delta, pR, qR, pL, qL, U, V, s_inv, _owner=H)


def build_omega(H: Presentation, pack: DerivedPack, order=None) -> Tensor:
    """Omega in H^{(x)5}; ``order`` changes the contraction order, not the value."""
    return H.ev(OMEGA, order=order, f=pack.f)


# ----------------------------------------------------------------- checks

def _cmp(name, lhs: Tensor, rhs: Tensor) -> CheckReport:
    w = first_difference(lhs, rhs)
    return CheckReport(name, w is None, w)


def twist_checks(H: Presentation, pack: DerivedPack) -> list:
    """Defining properties of f: the antipode twist, gamma and delta, compatibility with Phi, counit and inverse."""
    ev = H.ev
    one1, one2 = H.unit_tensor(1), H.unit_tensor(2)
    alpha = Tensor.from_vector(H.alpha)
    beta = Tensor.from_vector(H.beta)
    checks = []
    w = ev("S(I1) | I2")
    checks.append(_cmp("antipode_coproduct_twist", ev("f1 w1_1 g1 | f2 w1_2 g2 | w2", w=w), ev("S(I1_2) | S(I1_1) | I2")))
    checks.append(_cmp("gamma_via_twist", H.tmul(pack.f, H.delta(H.alpha)), pack.gamma))
    checks.append(_cmp("delta_via_twist", H.tmul(H.delta(H.beta), pack.f_inv), pack.delta))
    phi_rev = ev("S(X3) | S(X2) | S(X1)")
    checks.append(_cmp("twist_phi_compatibility", ev("F1 X1 g1_1 G1 | f1 F2_1 X2 g1_2 G2 | f2 F2_2 X3 g2"), phi_rev))
    checks.append(_cmp("twist_beta_S_alpha", ev("f1 beta S(f2)"), Tensor.from_vector(H.S(H.alpha))))
    checks.append(_cmp("twist_inverse_alpha_beta", ev("g1 S(g2 alpha)"), beta))
    checks.append(_cmp("twist_S_beta_alpha", ev("S(beta f1) f2"), alpha))
    checks.append(_cmp("twist_counit_left", H.apply_eps(pack.f, 0), one1))
    checks.append(_cmp("twist_counit_right", H.apply_eps(pack.f, 1), one1))
    checks.append(_cmp("twist_inverse", H.tmul(pack.f, pack.f_inv), one2))
    checks.append(_cmp("twist_inverse_left", H.tmul(pack.f_inv, pack.f), one2))
    checks.append(_cmp("gamma_two_formulas", ev(GAMMA_ALT), pack.gamma))
    checks.append(_cmp("delta_two_formulas", ev(DELTA_ALT), pack.delta))
    return checks


def _traced(H: Presentation, formula: str) -> Tensor:
    """Sum over i of the e_i-coefficient of slot 0 with slot 1 fixed to e_i."""
    t = H.ev(formula)
    data: dict = {}
    for idx, c in t.items():
        if idx[0] == idx[1]:
            key = idx[2:]
            data[key] = data.get(key, 0) + c
    return Tensor(H.dim, t.arity - 2, {k: v for k, v in data.items() if v})


TRACED_QL_LHS = "Si(beta) Si(Si(Qt1 I1_1 K1)) J1 qt2 Qt2_2 I1_22 L1 Si(qt1 Qt2_1 I1_21) | I2 | J2 | K2 | L2"
TRACED_QL_RHS = "Si(beta) Si(Si(Qt1 I1_1 K1)) qt2 Qt2_2 I1_22 L1 Si(qt1 Qt2_1 I1_21) J1 | I2 | J2 | K2 | L2"
TRACED_QL_PHI_LHS = ("Si(beta) Si(Si(Qt1 I1_1 X1 p1_1 K1)) J1_1 qt2 Qt2_2 I1_22 X3 p2 S(J1_2) L1 "
          "Si(qt1 Qt2_1 I1_21 X2 p1_2) | I2 | J2 | K2 | L2")
TRACED_QL_PHI_RHS = ("Si(beta) Si(Si(Qt1 I1_1 X1 p1_1 J1_1 K1)) qt2 Qt2_2 I1_22 X3 p2 L1 "
          "Si(qt1 Qt2_1 I1_21 X2 p1_2 J1_2) | I2 | J2 | K2 | L2")


def _dual_harpoon_checks(H: Presentation) -> list:
    """S-bar^{-1}(h -> phi) = S-bar^{-1}(phi) <- S(h) and its mirror, on basis pairs."""
    n = H.dim
    ok_left = ok_right = None
    for i in range(n):
        phi = H.basis_vector(i)
        for j in range(n):
            h = H.basis_vector(j)
            if ok_left is None and H.Sbar_inv(H.harpoon_left(h, phi)) != H.harpoon_right(H.Sbar_inv(phi), H.S(h)):
                ok_left = [i, j]
            if ok_right is None and H.Sbar_inv(H.harpoon_right(phi, h)) != H.harpoon_left(H.S(h), H.Sbar_inv(phi)):
                ok_right = [i, j]
    return [CheckReport("dual_harpoon_left", ok_left is None, ok_left), CheckReport("dual_harpoon_right", ok_right is None, ok_right)]


def identity_suite(H: Presentation, pack: DerivedPack | None = None) -> SuiteReport:
    """Evaluate every gauge identity exactly; universally quantified ones on all basis elements."""
    if pack is None:
        pack = H.pack

    def ev(formula, **kw):
        env = {name: pack.named(name) for name in _pack_names(formula) if name not in kw}
        env.update(kw)
        return H.ev(formula, **env)

    one2 = H.unit_tensor(2)
    checks = []

    saved = H._pack
    H._pack = pack
    try:
        checks.extend(twist_checks(H, pack))
        checks.append(_cmp("pR_intertwines", ev("I1_11 p1 | I1_12 p2 S(I1_2) | I2"), ev("p1 I1 | p2 | I2")))
        checks.append(_cmp("qL_intertwines", ev("S(I1_1) qt1 I1_21 | qt2 I1_22 | I2"), ev("qt1 | I1 qt2 | I2")))
        checks.append(_cmp("qR_pR_antipode_inverse", ev("q1 p1_1 | Si(p2) q2 p1_2"), one2))
        checks.append(_cmp("qR_pR_inverse", ev("q1_1 p1 | q1_2 p2 S(q2)"), one2))
        checks.append(_cmp("pL_qL_inverse", ev("S(pt1) qt1 pt2_1 | qt2 pt2_2"), one2))

        w = ev("x1_1 p1 | x1_2 p2 | x2 | x3")
        checks.append(_cmp("pR_coproduct", ev("X1 p1_1 P1 | X2 p1_2 P2 | X3 p2"),
                           ev("w1 | w2_1 g1 S(w4) | w2_2 g2 S(w3)", w=w)))
        w = ev("q1 X1_1 | q2 X1_2 | X2 | X3")
        checks.append(_cmp("qR_coproduct", ev("q1 Q1_1 x1 | q2 Q1_2 x2 | Q2 x3"),
                           ev("w1 | Si(f2 w4) w2_1 | Si(f1 w3) w2_2", w=w)))
        w = ev("qt1 x3_1 | qt2 x3_2 | x1 | x2")
        checks.append(_cmp("qL_coproduct", ev("Qt1 X1 | qt1 Qt2_1 X2 | qt2 Qt2_2 X3"),
                           ev("S(w4) f1 w1_1 | S(w3) f2 w1_2 | w2", w=w)))

        checks.append(_cmp("phi_pR_contraction", ev("X1 p1_1 | X2 p1_2 | X3 p2"), ev("x1 | x2_1 p1 | x2_2 p2 S(x3)")))
        checks.append(_cmp("qL_phi_contraction", ev("qt1 X1 | qt2_1 X2 | qt2_2 X3"), ev("S(x1) qt1 x2_1 | qt2 x2_2 | x3")))
        w = ev("S(p1) | p2")
        checks.append(_cmp("U_from_pR", ev("w1_1 U1 w2 | w1_2 U2", w=w), pack.f_inv))
        w = ev("S(I1_1) | I1_2 | I2")
        checks.append(_cmp("U_coproduct_antipode", ev("w1_1 U1 w2 | w1_2 U2 | w3", w=w), ev("U1 | U2 S(I1) | I2")))
        checks.append(_cmp("twist_pR_qL", ev("f1_1 p1 | f1_2 p2 S(f2)"), ev("g1 S(qt2) | g2 S(qt1)")))
        checks.extend(_dual_harpoon_checks(H))
        checks.append(_cmp("traced_qL_commutation", _traced(H, TRACED_QL_LHS), _traced(H, TRACED_QL_RHS)))
        checks.append(_cmp("traced_qL_phi_pR_commutation", _traced(H, TRACED_QL_PHI_LHS), _traced(H, TRACED_QL_PHI_RHS)))
        w = ev("S(pt1) | pt2")
        checks.append(_cmp("U_from_pL", ev("w1_1 U1 w2 | w1_2 U2", w=w), pack.pR))
        checks.append(_cmp(
            "omega_contraction",
            ev("O1_1 dlt1 S(S(O4)) | O1_21 dlt2_1 g1 S(O3) | O1_22 dlt2_2 g2 S(O2) | O5"),
            ev("X1 p1_1 P1 S(f1 pt1) | X2 p1_2 P2 | X3 p2 | Si(f2 pt2)"),
        ))
        checks.append(_cmp("gamma_phi_twist", ev("gam1 X1 | f1 gam2_1 X2 | f2 gam2_2 X3"),
                           ev("S(X3) f1 gam1_1 | S(X2) f2 gam1_2 | S(X1) gam2")))
        checks.append(_cmp("qR_phi_qL", ev("q1 x1_1 | Si(x2) q2 x1_2 | x3"), ev("X1 | Si(qt1 X3_1) X2 | qt2 X3_2")))
    finally:
        H._pack = saved
    return SuiteReport(checks)


def _pack_names(formula: str):
    from .sweedler import parse_formula

    known = DerivedPack._ALIASES.keys() | {"O"}
    return [n for n in parse_formula(formula).names if n in known]
