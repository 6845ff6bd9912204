"""Finite groups given by a multiplication table."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import NotAGroup


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Elements 0..order-1 with ``table[g][h]`` the index of gh.

    ``data`` optionally carries the concrete object behind each element
    (an automorphism matrix, an (r, sigma) pair, ...).
    """

    labels: tuple
    table: tuple
    identity: int
    data: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in row) for row in self.table))
        object.__setattr__(self, "data", tuple(self.data))
        self.validate()

    @classmethod
    def from_table(cls, labels, table, identity: int = 0, data=()) -> "FiniteGroup":
        return cls(tuple(labels), tuple(map(tuple, table)), int(identity), tuple(data))

    @classmethod
    def from_elements(cls, elements, mul, key, label=str, identity_index: int = 0) -> "FiniteGroup":
        """Build a group from concrete elements closed under ``mul``.

        ``key`` maps an element to a hashable canonical form.
        """
        elements = list(elements)
        index = {key(g): i for i, g in enumerate(elements)}
        table = []
        for g in elements:
            row = []
            for h in elements:
                k = key(mul(g, h))
                if k not in index:
                    raise NotAGroup("element set is not closed under multiplication")
                row.append(index[k])
            table.append(row)
        return cls([label(g) for g in elements], table, identity_index, elements)

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        for h in range(self.order):
            if self.table[g][h] == self.identity:
                return h
        raise NotAGroup(f"{self.labels[g]} has no inverse")

    def validate(self) -> None:
        n = self.order
        if n == 0:
            raise NotAGroup("empty group")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise NotAGroup("table is not square")
        if not 0 <= self.identity < n:
            raise NotAGroup("identity index out of range")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise NotAGroup("table is not closed")
        e = self.identity
        if any(self.table[e][g] != g or self.table[g][e] != g for g in range(n)):
            raise NotAGroup("identity does not act trivially")
        for row in self.table:
            if e not in row:
                raise NotAGroup("missing inverse")
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise NotAGroup("table is not associative")

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[g][h] == t[h][g] for g in range(self.order) for h in range(g))

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def element_orders(self) -> list:
        return sorted(self.element_order(g) for g in range(self.order))

    def is_subgroup(self, subset) -> bool:
        s = set(subset)
        return self.identity in s and all(self.mul(a, b) in s for a in s for b in s)

    def is_normal(self, subset) -> bool:
        s = set(subset)
        return all(self.mul(self.mul(g, h), self.inverse(g)) in s for g in range(self.order) for h in s)

    def describe(self) -> str:
        """Heuristic name from order, commutativity and element orders."""
        n = self.order
        orders = Counter(self.element_orders())
        if n == 1:
            return "trivial"
        if orders[n]:
            return f"Z/{n}"
        if self.is_abelian():
            if all(o in (1, 2) for o in orders) and n & (n - 1) == 0:
                k = n.bit_length() - 1
                return f"(Z/2)^{k}"
            return f"abelian of order {n}"
        if n == 6:
            return "S3 = GL(2,2)"
        if n == 8 and orders[4] == 2:
            return "D4"
        if n == 8 and orders[4] == 6:
            return "Q8"
        if n == 48 and orders[8]:
            return "GL(2,3)"
        return f"non-abelian of order {n}"

    def summary(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.is_abelian(),
            "element_orders": self.element_orders(),
            "name": self.describe(),
        }

    def to_json(self, element_json=None) -> dict:
        out = self.summary()
        out["elements"] = [
            element_json(d) if element_json else lbl
            for lbl, d in zip(self.labels, self.data or [None] * self.order)
        ]
        out["identity"] = self.identity
        out["table"] = [list(row) for row in self.table]
        return out


def group_from_json(data: dict) -> FiniteGroup:
    labels = data.get("labels") or data.get("elements")
    return FiniteGroup.from_table(labels, data["table"], data.get("identity", 0))


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup.from_table([f"g^{i}" if i else "1" for i in range(n)],
                                  [[(i + j) % n for j in range(n)] for i in range(n)], 0)


def is_isomorphic_action(G1: FiniteGroup, G2: FiniteGroup, act1, act2) -> bool:
    """Whether g -> act1(g) and h -> act2(h) produce the same set of actions,
    and that set-level bijection is a group isomorphism."""
    if G1.order != G2.order:
        return False
    k2 = {act2(h): h for h in range(G2.order)}
    if len(k2) != G2.order:
        return False
    try:
        m = [k2[act1(g)] for g in range(G1.order)]
    except KeyError:
        return False
    if len(set(m)) != G1.order:
        return False
    return all(m[G1.mul(a, b)] == G2.mul(m[a], m[b]) for a in range(G1.order) for b in range(G1.order))
