"""Independent checkers for the test suite.

Nothing here calls the package's evaluators.  Properties are bitmasks over
team indices, and every table is built from plain set arithmetic, so agreement
with the package is evidence rather than a tautology.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from teamlogic.formula import (
    And,
    Bot,
    Dep,
    Dia,
    DualNeg,
    Formula,
    GlobalOr,
    NE,
    Or,
    PropAtom,
)


class Tables:
    """Lookup tables for properties over ``npoints`` points."""

    def __init__(self, npoints: int):
        self.npoints = npoints
        self.nteams = 1 << npoints
        self.nprops = 1 << self.nteams
        self.all = self.nprops - 1
        props = np.arange(self.nprops, dtype=np.int64)
        self.union_with = np.zeros((self.nteams, self.nprops), dtype=np.int64)
        for t in range(self.nteams):
            for u in range(self.nteams):
                self.union_with[t] |= ((props >> u) & 1) << (t | u)
        self.ground = np.zeros(self.nprops, dtype=np.int64)
        for t in range(self.nteams):
            self.ground |= ((props >> t) & 1) * t
        self.powerset = np.zeros(self.nteams, dtype=np.int64)
        for team in range(self.nteams):
            self.powerset[team] = sum(1 << u for u in range(self.nteams) if u & ~team == 0)

    def product(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """{t ∪ u : t ∈ a, u ∈ b}, elementwise."""
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for t in range(self.nteams):
            out |= np.where((a >> t) & 1, self.union_with[t][b], 0)
        return out

    def is_flat(self, sup: np.ndarray) -> np.ndarray:
        return sup == self.powerset[self.ground[sup]]


# ---------------------------------------------------------------- propositional classes


@dataclass
class Classes:
    """All distinct (support, anti-support) pairs of formulas up to a depth."""

    sup: np.ndarray
    anti: np.ndarray
    parent: list  # (op, i, j) or ("leaf", Formula)
    flat_ground: np.ndarray

    def __len__(self) -> int:
        return len(self.sup)

    def witness(self, i: int) -> Formula:
        kind = self.parent[i]
        if kind[0] == "leaf":
            return kind[1]
        op, j, k = kind
        if op == "neg":
            return DualNeg(self.witness(j))
        return {"and": And, "or": Or, "gor": GlobalOr}[op](self.witness(j), self.witness(k))


def leaf_denotations(tab: Tables, names, with_ne: bool, with_dep: bool):
    """(formula, support, anti-support) for the atomic formulas over ``names``."""
    full_team = tab.nteams - 1
    out = [(Bot(), 1, tab.all)]
    for j, name in enumerate(names):
        mask = sum(1 << v for v in range(tab.npoints) if v >> j & 1)
        out.append((PropAtom(name), int(tab.powerset[mask]), int(tab.powerset[full_team & ~mask])))
    if with_ne:
        out.append((NE(), tab.all & ~1, 1))
    if with_dep:
        for q in range(len(names)):
            others = [j for j in range(len(names)) if j != q]
            for k in range(len(others) + 1):
                for ants in _combinations(others, k):
                    sup = 0
                    for team in range(tab.nteams):
                        vals = [v for v in range(tab.npoints) if team >> v & 1]
                        if all(
                            (a >> q & 1) == (b >> q & 1)
                            for a in vals
                            for b in vals
                            if all((a >> x & 1) == (b >> x & 1) for x in ants)
                        ):
                            sup |= 1 << team
                    f = Dep(tuple(names[x] for x in ants), names[q])
                    out.append((f, sup, 1))
    return out


def _combinations(items, k):
    if k == 0:
        yield ()
        return
    for i, x in enumerate(items):
        for rest in _combinations(items[i + 1:], k - 1):
            yield (x,) + rest


def close_classes(tab: Tables, leaves, ops, depth: int, flat_ground=None) -> Classes:
    """Denotation pairs of every formula of nesting depth ≤ ``depth``.

    With ``flat_ground`` (one team per leaf) the classes also record the
    ground team of the flattened formula, which is classical, so its ground
    team determines both of its denotations.
    """
    full_team = tab.nteams - 1
    sup = np.array([s for _, s, _ in leaves], dtype=np.int64)
    anti = np.array([a for _, _, a in leaves], dtype=np.int64)
    flat = np.array(flat_ground if flat_ground is not None else [0] * len(leaves), dtype=np.int64)
    parent = [("leaf", f) for f, _, _ in leaves]

    def keys_of(s, a, g):
        return (s * tab.nprops + a) * tab.nteams + g

    _, first = np.unique(keys_of(sup, anti, flat), return_index=True)
    first.sort()
    sup, anti, flat = sup[first], anti[first], flat[first]
    parent = [parent[i] for i in first]
    seen = set(keys_of(sup, anti, flat).tolist())
    names = ["neg"] + list(ops)
    for _ in range(depth):
        n = len(sup)
        cand_s, cand_a, cand_g = [anti], [sup], [full_team & ~flat]
        cand_p = [np.stack([np.zeros(n, np.int64), np.arange(n), np.arange(n)], 1)]
        ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        ii, jj = ii.ravel(), jj.ravel()
        s1, s2, a1, a2, g1, g2 = sup[ii], sup[jj], anti[ii], anti[jj], flat[ii], flat[jj]
        for code, op in enumerate(ops, start=1):
            if op == "and":
                cs, ca, cg = s1 & s2, tab.product(a1, a2), g1 & g2
            elif op == "or":
                cs, ca, cg = tab.product(s1, s2), a1 & a2, g1 | g2
            else:
                cs, ca, cg = s1 | s2, a1 & a2, g1 | g2
            cand_s.append(cs)
            cand_a.append(ca)
            cand_g.append(cg)
            cand_p.append(np.stack([np.full(len(ii), code), ii, jj], 1))
        cs, ca, cg = np.concatenate(cand_s), np.concatenate(cand_a), np.concatenate(cand_g)
        cp = np.concatenate(cand_p)
        keys = keys_of(cs, ca, cg)
        uniq, idx = np.unique(keys, return_index=True)
        fresh = [i for k, i in zip(uniq.tolist(), idx.tolist()) if k not in seen]
        for i in fresh:
            code, a, b = cp[i].tolist()
            parent.append((names[code], a, b))
            seen.add(int(keys[i]))
        sup = np.concatenate([sup, cs[fresh]])
        anti = np.concatenate([anti, ca[fresh]])
        flat = np.concatenate([flat, cg[fresh]])
    return Classes(sup, anti, parent, flat)


# ---------------------------------------------------------------- batched Kripke models


class ModelBatch:
    """Evaluates one formula on many models with the same number of worlds."""

    def __init__(self, models, names):
        self.models = list(models)
        n = len(self.models[0].worlds)
        if any(len(m.worlds) != n for m in self.models):
            raise ValueError("batch models must share the number of worlds")
        self.n = n
        self.tab = Tables(n)
        self.succ = np.array([[m.succ[w] for w in range(n)] for m in self.models], dtype=np.int64)
        self.atoms = {
            p: np.array([m.atom_mask(p) for m in self.models], dtype=np.int64) for p in names
        }
        self.full_team = (1 << n) - 1

    def denote(self, f: Formula) -> tuple[np.ndarray, np.ndarray]:
        tab, size = self.tab, len(self.models)
        if isinstance(f, PropAtom):
            mask = self.atoms[f.name]
            return tab.powerset[mask], tab.powerset[self.full_team & ~mask]
        if isinstance(f, Bot):
            return np.full(size, 1), np.full(size, tab.all)
        if isinstance(f, NE):
            return np.full(size, tab.all & ~1), np.full(size, 1)
        if isinstance(f, DualNeg):
            s, a = self.denote(f.child)
            return a, s
        if isinstance(f, Dia):
            s, a = self.denote(f.child)
            body = s & ~1
            good_s = np.zeros(size, dtype=np.int64)
            good_a = np.zeros(size, dtype=np.int64)
            for w in range(self.n):
                succ = self.succ[:, w]
                good_s |= ((body & tab.powerset[succ]) != 0).astype(np.int64) << w
                good_a |= ((a >> succ) & 1) << w
            return tab.powerset[good_s], tab.powerset[good_a]
        s1, a1 = self.denote(f.left)
        s2, a2 = self.denote(f.right)
        if isinstance(f, And):
            return s1 & s2, tab.product(a1, a2)
        if isinstance(f, Or):
            return tab.product(s1, s2), a1 & a2
        if isinstance(f, GlobalOr):
            return s1 | s2, a1 & a2
        raise TypeError(f"batch evaluation does not cover {type(f).__name__}")


def batches(models, names):
    """Group models by world count into :class:`ModelBatch` objects."""
    groups: dict[int, list] = {}
    for m in models:
        groups.setdefault(len(m.worlds), []).append(m)
    return [ModelBatch(ms, names) for _, ms in sorted(groups.items())]
