"""Concrete quasi-Hopf algebras: group algebras, twisted dual group algebras,
their doubles, and Sweedler's four-dimensional Hopf algebra."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations, product

from gmpy2 import mpq

from .algebra import Presentation
from .errors import CocycleInvalid, InvalidGroup, ParseError
from .linalg import Tensor
from .scalars import root_of_unity, scalar_inverse

__all__ = [
    "GroupTable",
    "ThreeCocycle",
    "cocycle_cyclic",
    "cyclic_group",
    "dpr_double",
    "dual_group_algebra_twisted",
    "example",
    "group_algebra",
    "symmetric_group",
    "sweedler_h4",
]

ONE = mpq(1)


@dataclass(frozen=True)
class GroupTable:
    order: int
    mult_table: tuple
    inverse: tuple
    identity: int
    labels: tuple = ()
    name: str = "G"

    def mul(self, a, b):
        return self.mult_table[a][b]

    def check(self):
        n = self.order
        m = self.mult_table
        if len(m) != n or any(len(r) != n for r in m):
            raise InvalidGroup("multiplication table has the wrong shape")
        for a, b, c in product(range(n), repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise InvalidGroup(f"not associative at {(a, b, c)}")
        for a in range(n):
            if m[self.identity][a] != a or m[a][self.identity] != a:
                raise InvalidGroup(f"{self.identity} is not an identity")
            if m[a][self.inverse[a]] != self.identity or m[self.inverse[a]][a] != self.identity:
                raise InvalidGroup(f"wrong inverse for {a}")
        return self


def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise InvalidGroup("order must be positive")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    labels = tuple("1" if a == 0 else ("g" if a == 1 else f"g^{a}") for a in range(n))
    return GroupTable(n, table, tuple((-a) % n for a in range(n)), 0, labels, f"Z{n}").check()


def symmetric_group(k: int = 3) -> GroupTable:
    perms = sorted(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):  # (p q)(i) = p(q(i))
        return tuple(p[q[i]] for i in range(k))

    def inv(p):
        out = [0] * k
        for i, pi in enumerate(p):
            out[pi] = i
        return tuple(out)

    table = tuple(tuple(index[compose(p, q)] for q in perms) for p in perms)
    labels = tuple("".join(str(i + 1) for i in p) for p in perms)
    return GroupTable(len(perms), table, tuple(index[inv(p)] for p in perms),
                      index[tuple(range(k))], labels, f"S{k}").check()


@dataclass(frozen=True)
class ThreeCocycle:
    group: GroupTable
    values: tuple  # values[a][b][c]

    def __call__(self, a, b, c):
        return self.values[a][b][c]

    def cocycle_failure(self):
        """First quadruple violating the cocycle identity, or None."""
        G = self.group
        w = self
        m = G.mul
        for a, b, c, d in product(range(G.order), repeat=4):
            lhs = w(a, b, m(c, d)) * w(m(a, b), c, d)
            rhs = w(b, c, d) * w(a, m(b, c), d) * w(a, b, c)
            if lhs != rhs:
                return (a, b, c, d)
        return None

    def normalization_failure(self):
        G = self.group
        e = G.identity
        for a, b in product(range(G.order), repeat=2):
            if not (self(e, a, b) == self(a, e, b) == self(a, b, e) == 1):
                return (a, b)
        return None

    def check(self):
        bad = self.cocycle_failure()
        if bad is not None:
            raise CocycleInvalid(f"cocycle identity fails at {bad}")
        bad = self.normalization_failure()
        if bad is not None:
            raise CocycleInvalid(f"cocycle is not normalized at {bad}")
        return self


def cocycle_cyclic(n: int, q: int) -> ThreeCocycle:
    """omega(g^a, g^b, g^c) = zeta_n^(q a floor((b + c) / n))."""
    if not 0 <= q < max(n, 1):
        raise CocycleInvalid("need 0 <= q < n")
    G = cyclic_group(n)
    values = tuple(
        tuple(tuple(root_of_unity(n, q * a * ((b + c) // n)) for c in range(n)) for b in range(n))
        for a in range(n)
    )
    return ThreeCocycle(G, values)


def group_algebra(G: GroupTable) -> Presentation:
    G.check()
    n = G.order
    mult = {(i, j): [(G.mul(i, j), ONE)] for i in range(n) for j in range(n)}
    comult = {i: [((i, i), ONE)] for i in range(n)}
    unit = [ONE if i == G.identity else mpq(0) for i in range(n)]
    antipode = [[ONE if k == G.inverse[i] else mpq(0) for k in range(n)] for i in range(n)]
    one3 = Tensor(n, 3, {(G.identity,) * 3: ONE})
    return Presentation(n, mult, unit, comult, [ONE] * n, one3, antipode, unit, unit,
                        basis_labels=G.labels or None, phi_inv=one3, name=f"k{G.name}")


def dual_group_algebra_twisted(G: GroupTable, omega: ThreeCocycle, check: bool = True) -> Presentation:
    """Functions on G with Phi = omega^{-1}, alpha = 1 and beta(g) = omega(g, g^{-1}, g).

    ``check=False`` skips the cocycle test so that broken inputs can reach the validator.
    """
    G.check()
    if check:
        omega.check()
    n = G.order
    e = G.identity
    mult = {(i, i): [(i, ONE)] for i in range(n)}
    comult = {g: [] for g in range(n)}
    for x, y in product(range(n), repeat=2):
        comult[G.mul(x, y)].append(((x, y), ONE))
    unit = [ONE] * n
    counit = [ONE if g == e else mpq(0) for g in range(n)]
    phi = Tensor(n, 3, {(a, b, c): scalar_inverse(omega(a, b, c)) for a, b, c in product(range(n), repeat=3)})
    phi_inv = Tensor(n, 3, {(a, b, c): omega(a, b, c) for a, b, c in product(range(n), repeat=3)})
    antipode = [[ONE if k == G.inverse[i] else mpq(0) for k in range(n)] for i in range(n)]
    beta = [omega(g, G.inverse[g], g) for g in range(n)]
    labels = [f"d[{lab}]" for lab in G.labels] if G.labels else None
    orders = {v.order for row in omega.values for col in row for v in col if hasattr(v, "order")}
    return Presentation(n, mult, unit, comult, counit, phi, antipode, unit, beta,
                        basis_labels=labels, field_order=orders.pop() if orders else None,
                        phi_inv=phi_inv, name=f"H*_omega({G.name})")


def sweedler_h4() -> Presentation:
    """Basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx."""
    z, o, m = mpq(0), ONE, mpq(-1)
    # products of basis words, written as (coefficient, index)
    rules = {
        (1, 1): (o, 0), (1, 2): (o, 3), (1, 3): (o, 2),
        (2, 1): (m, 3), (2, 2): None, (2, 3): None,
        (3, 1): (m, 2), (3, 2): None, (3, 3): None,
    }
    mult = {}
    for i, j in product(range(4), repeat=2):
        if i == 0:
            mult[(i, j)] = [(j, o)]
        elif j == 0:
            mult[(i, j)] = [(i, o)]
        else:
            r = rules[(i, j)]
            mult[(i, j)] = [] if r is None else [(r[1], r[0])]
    comult = {
        0: [((0, 0), o)],
        1: [((1, 1), o)],
        2: [((2, 0), o), ((1, 2), o)],
        3: [((3, 1), o), ((0, 3), o)],
    }
    antipode = [[o, z, z, z], [z, o, z, z], [z, z, z, m], [z, z, o, z]]
    unit = [o, z, z, z]
    one3 = Tensor(4, 3, {(0, 0, 0): o})
    return Presentation(4, mult, unit, comult, [o, o, z, z], one3, antipode, unit, unit,
                        basis_labels=["1", "g", "x", "gx"], phi_inv=one3, name="H4")


def dpr_double(G: GroupTable, omega: ThreeCocycle):
    from .double import build_double

    return build_double(dual_group_algebra_twisted(G, omega))


_NAME = re.compile(r"^(group|dual-omega|dpr):(Z(\d+)|S3)(?::(\d+))?$")


def example(name: str):
    """Resolve a gallery name such as ``group:Z2``, ``dual-omega:Z3:1``, ``dpr:Z2:1`` or ``sweedler``.

    Returns a presentation, or a double for ``dpr:`` names.
    """
    if name == "sweedler":
        return sweedler_h4()
    m = _NAME.match(name)
    if not m:
        raise ParseError(f"unknown example {name!r}")
    kind, grp, order, q = m.groups()
    if kind == "group":
        if q is not None:
            raise ParseError(f"group examples take no cocycle index: {name!r}")
        return group_algebra(symmetric_group(3) if grp == "S3" else cyclic_group(int(order)))
    if order is None:
        raise ParseError(f"cocycles are available for cyclic groups only: {name!r}")
    n, qi = int(order), int(q or 0)
    if not 0 <= qi < n:
        raise ParseError(f"cocycle index must lie in [0, {n}): {name!r}")
    omega = cocycle_cyclic(n, qi)
    if kind == "dual-omega":
        return dual_group_algebra_twisted(omega.group, omega)
    return dpr_double(omega.group, omega)
