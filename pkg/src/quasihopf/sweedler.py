"""Evaluate tensor formulas written in Sweedler notation.

A formula lists the tensor legs of the result separated by ``|``; each leg is
a product of factors.  Factors are

* ``Name`` or ``Name<leg>`` optionally followed by ``_<path>``: one tensor
  leg of an input, e.g. ``X2`` is X^2 and ``X1_12`` is X^1_(1,2).  The path is
  a word in {1, 2} naming a leaf of an iterated coproduct; the coproducts are
  expanded with the bracketing the path implies.
* ``S(...)`` and ``Si(...)``: the antipode and its inverse applied to a word.
* ``1``: the unit.

The elements ``alpha`` and ``beta`` may occur any number of times; every
other name denotes one summation (one copy of its tensor).

A leg written ``<phi: word>`` is not an output: the word is paired with the
functional ``phi`` (a coordinate vector on the dual basis) and the value
multiplies the result.

Every leg of every input must occur, split over a complete set of coproduct
leaves.
Example: ``"x1 | x2 beta S(x3)"`` is p_R.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .errors import ParseError, ShapeMismatch
from .linalg import Tensor

__all__ = ["Formula", "evaluate", "parse_formula"]

_TOKEN = re.compile(r"\s*(?:(S|Si)\(|(\()|(\))|([A-Za-z]+)(\d?)(?:_([12]+))?|(1)(?![0-9])|(\S))")


CONSTANTS = frozenset({"alpha", "beta"})


def base_name(name: str) -> str:
    return name.split("#", 1)[0]


@dataclass(frozen=True)
class Atom:
    name: str
    leg: int  # 0-based; 0 for arity-1 inputs
    path: str
    power: int  # power of S applied to this factor


@dataclass(frozen=True)
class _Map:
    power: int
    word: tuple


def _tokenize_word(text: str):
    """Parse a product of factors into a nested structure of atoms and maps."""
    stack = [[]]
    powers = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        mapname, lpar, rpar, name, leg, path, one, junk = m.groups()
        if junk:
            raise ParseError(f"unexpected character {junk!r} in {text!r}")
        if mapname:
            stack.append([])
            powers.append(1 if mapname == "S" else -1)
        elif lpar:
            stack.append([])
            powers.append(0)
        elif rpar:
            if len(stack) == 1:
                raise ParseError(f"unbalanced ')' in {text!r}")
            word = tuple(stack.pop())
            stack[-1].append(_Map(powers.pop(), word))
        elif one:
            stack[-1].append("1")
        else:
            stack[-1].append((name, int(leg) - 1 if leg else None, path or ""))
    if len(stack) != 1:
        raise ParseError(f"unbalanced '(' in {text!r}")
    return tuple(stack[0])


def _flatten(word, power=0):
    out = []
    for item in word:
        if isinstance(item, _Map):
            inner = _flatten(item.word, power + item.power)
            out.extend(reversed(inner) if item.power % 2 else inner)
        else:
            out.append((item, power))
    return out


def _is_leaf_set(paths) -> bool:
    paths = set(paths)
    if paths == {""}:
        return True
    if not paths or "" in paths:
        return False
    left = {p[1:] for p in paths if p[0] == "1"}
    right = {p[1:] for p in paths if p[0] == "2"}
    return _is_leaf_set(left) and _is_leaf_set(right)


@dataclass
class Formula:
    """A parsed formula: per output leg (and per paired functional) a list of atoms."""

    text: str
    slots: list  # list of (functional name or None, [Atom, ...])
    names: list  # input names in order of first appearance
    legs: dict  # name -> {leg: set(paths)}

    @property
    def arity(self) -> int:
        return sum(1 for f, _ in self.slots if f is None)


@lru_cache(maxsize=512)
def parse_formula(text: str) -> Formula:
    slots = []
    names: list[str] = []
    legs: dict = {}
    ones = 0
    for part in _split_slots(text):
        part = part.strip()
        functional = None
        if part.startswith("<"):
            if not part.endswith(">") or ":" not in part:
                raise ParseError(f"bad paired slot {part!r}")
            functional, part = part[1:-1].split(":", 1)
            functional = functional.strip()
        atoms = []
        for (item, power) in _flatten(_tokenize_word(part)):
            if item == "1":
                name, leg, path = f"1#{ones}", None, ""
                ones += 1
            else:
                name, leg, path = item
                if name in CONSTANTS and not path and leg is None:
                    name = f"{name}#{ones}"
                    ones += 1
            if name not in legs:
                names.append(name)
                legs[name] = {}
            leg = 0 if leg is None else leg
            paths = legs[name].setdefault(leg, set())
            if path in paths:
                raise ParseError(f"{name} leg {leg + 1} path {path!r} used twice in {text!r}")
            paths.add(path)
            atoms.append(Atom(name, leg, path, power))
        if not atoms:
            raise ParseError(f"empty leg in {text!r}")
        slots.append((functional, atoms))
    for name, by_leg in legs.items():
        for leg, paths in by_leg.items():
            if not _is_leaf_set(paths):
                raise ParseError(f"paths {sorted(paths)} of {name} leg {leg + 1} are not the leaves of a coproduct tree")
    return Formula(text, slots, names, legs)


def _split_slots(text: str):
    # '|' separates legs, but not inside a <functional: word> pair
    depth = 0
    cur = []
    for ch in text:
        if ch == "<":
            depth += 1
        elif ch == ">":
            depth -= 1
        if ch == "|" and depth == 0:
            yield "".join(cur)
            cur = []
        else:
            cur.append(ch)
    yield "".join(cur)


def _expand_path_tree(H, i, paths, prefix=""):
    """Iterated coproduct of e_i split over ``paths``: list of ({path: index}, coeff)."""
    if prefix in paths:
        return [({prefix: i}, mpq(1))]
    out = []
    for (j, k), c in H.delta_table[i]:
        for lj, cj in _expand_path_tree(H, j, paths, prefix + "1"):
            for lk, ck in _expand_path_tree(H, k, paths, prefix + "2"):
                merged = dict(lj)
                merged.update(lk)
                out.append((merged, c * cj * ck))
    return out


def _input_terms(H, tensor: Tensor, name, formula: Formula, atoms):
    """Enumerate one input: list of (coefficient, [linear combination per atom])."""
    by_leg = formula.legs[name]
    if tensor.arity != len(by_leg) or set(by_leg) != set(range(tensor.arity)):
        raise ShapeMismatch(
            f"input {name!r} has arity {tensor.arity} but the formula uses legs "
            f"{sorted(l + 1 for l in by_leg)}"
        )
    terms = []
    cache: dict = {}
    for idx, coeff in tensor.items():
        # expand every leg by its coproduct tree, then take the product over legs
        partial = [({}, coeff)]
        for leg in range(tensor.arity):
            key = (leg, idx[leg])
            if key not in cache:
                cache[key] = _expand_path_tree(H, idx[leg], by_leg[leg])
            nxt = []
            for assign, c in partial:
                for leaves, cl in cache[key]:
                    a = dict(assign)
                    for p, v in leaves.items():
                        a[(leg, p)] = v
                    nxt.append((a, c * cl))
            partial = nxt
        for assign, c in partial:
            values = [H.spow(atom.power)[assign[(atom.leg, atom.path)]] for atom in atoms]
            terms.append((c, values))
    return terms


def _schedule(formula: Formula, order):
    """For each opening step and slot, how the new segments are assembled.

    A segment is a maximal run of already-opened factors, stored as one basis
    index.  Each recipe entry is ('old', k) for segment k of the previous
    state or ('new', j) for the j-th factor of the input being opened.
    """
    opened: set[str] = set()
    steps = []
    for name in order:
        opened_after = opened | {name}
        recipes = []
        new_positions = []
        for _, atoms in formula.slots:
            segs = []
            cur = []
            old_seg = -1
            in_old_run = False
            for atom in atoms:
                if atom.name in opened:
                    if not in_old_run:
                        old_seg += 1
                        cur.append(("old", old_seg))
                        in_old_run = True
                elif atom.name == name:
                    cur.append(("new", len(new_positions)))
                    new_positions.append(atom)
                    in_old_run = False
                else:
                    if cur:
                        segs.append(tuple(cur))
                    cur = []
                    in_old_run = False
            if cur:
                segs.append(tuple(cur))
            recipes.append(tuple(segs))
        steps.append((name, tuple(recipes), new_positions))
        opened = opened_after
    return steps


def evaluate(H, text: str, inputs: dict, order=None) -> Tensor:
    """Evaluate a formula over presentation ``H``.

    ``inputs`` maps names to :class:`Tensor` values (vectors are accepted for
    arity-1 inputs) and, for paired legs, functional names to coordinate
    vectors.
    """
    formula = parse_formula(text)
    n = H.dim
    tensors = {}
    for name in formula.names:
        if name.startswith("1#"):
            tensors[name] = Tensor.from_vector(H.unit)
            continue
        base = base_name(name)
        if base not in inputs:
            raise KeyError(f"formula {text!r} needs input {base!r}")
        val = inputs[base]
        if not isinstance(val, Tensor):
            val = Tensor.from_vector(list(val))
        if val.dim != n:
            raise ShapeMismatch(f"input {name!r} has dimension {val.dim}, expected {n}")
        tensors[name] = val
    if order is None:
        order = formula.names
    else:
        order = [nm for o in order for nm in formula.names if base_name(nm) == o]
        order += [nm for nm in formula.names if nm not in order]
    mul = H.mul_table

    states = {tuple(() for _ in formula.slots): mpq(1)}
    for name, recipes, new_atoms in _schedule(formula, order):
        terms = _input_terms(H, tensors[name], name, formula, new_atoms)
        nxt: dict = defaultdict(lambda: mpq(0))
        for state, sc in states.items():
            for tc, values in terms:
                coeff0 = sc * tc
                # per slot, per segment: linear combination {index: coeff}
                slot_options = []
                for old, segs in zip(state, recipes):
                    seg_opts = []
                    for recipe in segs:
                        comb = None
                        for kind, k in recipe:
                            part = [(old[k], 1)] if kind == "old" else values[k]
                            if comb is None:
                                comb = dict(part) if kind == "old" else _lin(part)
                            else:
                                comb = _mul_comb(mul, comb, part)
                            if not comb:
                                break
                        if not comb:
                            seg_opts = None
                            break
                        seg_opts.append(comb)
                    if seg_opts is None:
                        slot_options = None
                        break
                    slot_options.append(seg_opts)
                if slot_options is None:
                    continue
                _accumulate(nxt, slot_options, coeff0)
        states = {s: c for s, c in nxt.items() if c}

    # contract paired slots with their functionals and emit output legs
    out: dict = defaultdict(lambda: mpq(0))
    for state, c in states.items():
        idx = []
        for (functional, _), segs in zip(formula.slots, state):
            (k,) = segs
            if functional is None:
                idx.append(k)
            else:
                c = c * inputs[functional][k]
                if not c:
                    break
        else:
            out[tuple(idx)] += c
    return Tensor(n, formula.arity, {k: v for k, v in out.items() if v})


def _lin(pairs):
    d: dict = {}
    for k, c in pairs:
        d[k] = d.get(k, 0) + c
    return {k: c for k, c in d.items() if c}


def _mul_comb(mul, left: dict, right):
    out: dict = {}
    for a, ca in left.items():
        row = mul[a]
        for b, cb in right:
            cab = ca * cb
            for k, cm in row[b]:
                out[k] = out.get(k, 0) + cab * cm
    return {k: c for k, c in out.items() if c}


def _accumulate(target, slot_options, coeff):
    """Add coeff times the product over all slots/segments of the combinations."""
    partial = [((), coeff)]
    for seg_opts in slot_options:
        slot_partial = [((), 1)]
        for comb in seg_opts:
            slot_partial = [(idx + (k,), c * ck) for idx, c in slot_partial for k, ck in comb.items()]
        partial = [(st + (idx,), c * cs) for st, c in partial for idx, cs in slot_partial]
    for st, c in partial:
        target[st] += c
