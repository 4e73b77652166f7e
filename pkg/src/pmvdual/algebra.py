"""Finite algebras in the signature {meet, join, oplus, odot, 0, 1}.

Covers both the bounded-distributive-lattice case (oplus = join,
odot = meet) and the general chain-valued case.  Tables are validated on
construction; the first violated axiom is reported with a witness.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct

from .chain import OP_NAMES, Chain
from .errors import AxiomViolationError, BudgetExceededError, SizeLimitError

Table = tuple[tuple[int, ...], ...]

DEFAULT_HOM_BUDGET = 5_000_000
PARTITION_SCAN_MAX = 12


def _as_table(rows, size: int) -> Table:
    table = tuple(tuple(int(v) for v in row) for row in rows)
    if len(table) != size or any(len(row) != size for row in table):
        raise AxiomViolationError("table-shape", (size,))
    for row in table:
        for v in row:
            if not (0 <= v < size):
                raise AxiomViolationError("table-range", (v,))
    return table


@dataclass(frozen=True)
class FinAlgebra:
    size: int
    meet: Table
    join: Table
    oplus: Table
    odot: Table
    zero: int
    one: int
    label: str = ""

    def __post_init__(self):
        _validate(self)

    # -- basic structure ---------------------------------------------------
    def op(self, name: str, x: int, y: int) -> int:
        return getattr(self, name)[x][y]

    def leq(self, x: int, y: int) -> bool:
        return self.meet[x][y] == x

    def table(self, name: str) -> Table:
        return getattr(self, name)

    def relabel(self, label: str) -> "FinAlgebra":
        return FinAlgebra(self.size, self.meet, self.join, self.oplus,
                          self.odot, self.zero, self.one, label)

    def __eq__(self, other):
        if not isinstance(other, FinAlgebra):
            return NotImplemented
        return (self.size, self.meet, self.join, self.oplus, self.odot,
                self.zero, self.one) == (other.size, other.meet, other.join,
                                         other.oplus, other.odot, other.zero,
                                         other.one)

    def __hash__(self):
        return hash((self.size, self.meet, self.join, self.oplus, self.odot,
                     self.zero, self.one))

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "meet": [list(r) for r in self.meet],
            "join": [list(r) for r in self.join],
            "oplus": [list(r) for r in self.oplus],
            "odot": [list(r) for r in self.odot],
            "zero": self.zero,
            "one": self.one,
            "label": self.label,
        }

    @staticmethod
    def from_json(data: dict) -> "FinAlgebra":
        return algebra_from_tables(
            {name: data[name] for name in OP_NAMES},
            {"zero": data["zero"], "one": data["one"]},
            label=data.get("label", ""),
        )


def algebra_from_tables(tables: dict, consts: dict, label: str = "") -> FinAlgebra:
    """Build a validated algebra; rejects with the first violated axiom."""
    size = len(tables["meet"])
    parsed = {name: _as_table(tables[name], size) for name in OP_NAMES}
    zero, one = int(consts["zero"]), int(consts["one"])
    if not (0 <= zero < size and 0 <= one < size):
        raise AxiomViolationError("constants-range", (zero, one))
    return FinAlgebra(size, parsed["meet"], parsed["join"], parsed["oplus"],
                      parsed["odot"], zero, one, label)


def _validate(a: FinAlgebra) -> None:
    m, j = a.meet, a.join
    rng = range(a.size)
    for name in OP_NAMES:
        _as_table(a.table(name), a.size)
    for x in rng:
        if m[x][x] != x:
            raise AxiomViolationError("meet-idempotent", (x,))
        if j[x][x] != x:
            raise AxiomViolationError("join-idempotent", (x,))
        if m[x][a.one] != x:
            raise AxiomViolationError("one-is-top", (x,))
        if j[x][a.zero] != x:
            raise AxiomViolationError("zero-is-bottom", (x,))
    for x in rng:
        for y in rng:
            if m[x][y] != m[y][x]:
                raise AxiomViolationError("meet-commutative", (x, y))
            if j[x][y] != j[y][x]:
                raise AxiomViolationError("join-commutative", (x, y))
            if m[x][j[x][y]] != x:
                raise AxiomViolationError("absorption-meet-join", (x, y))
            if j[x][m[x][y]] != x:
                raise AxiomViolationError("absorption-join-meet", (x, y))
            if a.oplus[x][y] != a.oplus[y][x]:
                raise AxiomViolationError("oplus-commutative", (x, y))
            if a.odot[x][y] != a.odot[y][x]:
                raise AxiomViolationError("odot-commutative", (x, y))
    for x in rng:
        if a.oplus[x][a.zero] != x:
            raise AxiomViolationError("oplus-unit-zero", (x,))
        if a.odot[x][a.one] != x:
            raise AxiomViolationError("odot-unit-one", (x,))
    for x in rng:
        for y in rng:
            for z in rng:
                if m[m[x][y]][z] != m[x][m[y][z]]:
                    raise AxiomViolationError("meet-associative", (x, y, z))
                if j[j[x][y]][z] != j[x][j[y][z]]:
                    raise AxiomViolationError("join-associative", (x, y, z))
                if m[x][j[y][z]] != j[m[x][y]][m[x][z]]:
                    raise AxiomViolationError("distributivity", (x, y, z))
                if a.oplus[a.oplus[x][y]][z] != a.oplus[x][a.oplus[y][z]]:
                    raise AxiomViolationError("oplus-associative", (x, y, z))
                if a.odot[a.odot[x][y]][z] != a.odot[x][a.odot[y][z]]:
                    raise AxiomViolationError("odot-associative", (x, y, z))
    # monotonicity of every binary operation, relative to the lattice order
    pairs = [(x, y) for x in rng for y in rng if m[x][y] == x]
    for name in ("oplus", "odot", "meet", "join"):
        t = a.table(name)
        for (x, y) in pairs:
            for z in rng:
                if m[t[x][z]][t[y][z]] != t[x][z]:
                    raise AxiomViolationError(f"{name}-monotone", (x, y, z))


@lru_cache(maxsize=None)
def chain_algebra(n: int) -> FinAlgebra:
    """The chain itself as a table algebra; element i is the numerator i."""
    c = Chain(n)
    size = n + 1

    def tab(name):
        return tuple(tuple(c.op(name, x, y) for y in range(size))
                     for x in range(size))

    return FinAlgebra(size, tab("meet"), tab("join"), tab("oplus"),
                      tab("odot"), 0, n, label=f"PL{n}")


def product(a: FinAlgebra, b: FinAlgebra) -> FinAlgebra:
    """Componentwise algebra on the cartesian product; index = i*|B| + j."""
    size = a.size * b.size

    def tab(name):
        ta, tb = a.table(name), b.table(name)
        rows = []
        for i1 in range(a.size):
            for j1 in range(b.size):
                row = []
                for i2 in range(a.size):
                    for j2 in range(b.size):
                        row.append(ta[i1][i2] * b.size + tb[j1][j2])
                rows.append(tuple(row))
        return tuple(rows)

    label = f"({a.label} x {b.label})" if a.label and b.label else ""
    return FinAlgebra(size, tab("meet"), tab("join"), tab("oplus"),
                      tab("odot"), a.zero * b.size + b.zero,
                      a.one * b.size + b.one, label)


def power(a: FinAlgebra, k: int) -> FinAlgebra:
    if k == 0:
        return trivial_algebra()
    result = a
    for _ in range(k - 1):
        result = product(result, a)
    return result.relabel(f"{a.label}^{k}" if a.label else "")


def trivial_algebra() -> FinAlgebra:
    t = ((0,),)
    return FinAlgebra(1, t, t, t, t, 0, 0, label="1")


# -- generated subalgebras -------------------------------------------------

def generated_carrier(a: FinAlgebra, gens) -> tuple[int, ...]:
    """Smallest subset containing gens and both constants, closed under ops."""
    carrier = set(gens) | {a.zero, a.one}
    frontier = list(carrier)
    while frontier:
        x = frontier.pop()
        for name in OP_NAMES:
            t = a.table(name)
            for y in list(carrier):
                for z in (t[x][y], t[y][x]):
                    if z not in carrier:
                        carrier.add(z)
                        frontier.append(z)
    return tuple(sorted(carrier))


def restrict(a: FinAlgebra, carrier, label: str = "") -> FinAlgebra:
    """The algebra induced on a closed carrier (indices renumbered)."""
    carrier = tuple(sorted(carrier))
    index = {x: i for i, x in enumerate(carrier)}

    def tab(name):
        t = a.table(name)
        return tuple(tuple(index[t[x][y]] for y in carrier) for x in carrier)

    return FinAlgebra(len(carrier), tab("meet"), tab("join"), tab("oplus"),
                      tab("odot"), index[a.zero], index[a.one], label)


def subalgebra_generated(a: FinAlgebra, gens) -> FinAlgebra:
    return restrict(a, generated_carrier(a, gens))


def all_subalgebra_carriers(a: FinAlgebra) -> list[tuple[int, ...]]:
    """Every subuniverse, found by one-point extension from the constants."""
    bottom = generated_carrier(a, ())
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        carrier = frontier.pop()
        members = set(carrier)
        for x in range(a.size):
            if x in members:
                continue
            bigger = generated_carrier(a, members | {x})
            if bigger not in seen:
                seen.add(bigger)
                frontier.append(bigger)
    return sorted(seen, key=lambda c: (len(c), c))


# -- homomorphisms ---------------------------------------------------------

@dataclass(frozen=True)
class Hom:
    source: FinAlgebra
    target: FinAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.source.size:
            raise ValueError("map length mismatch")
        if self.map[self.source.zero] != self.target.zero:
            raise AxiomViolationError("hom-preserves-zero", (self.source.zero,))
        if self.map[self.source.one] != self.target.one:
            raise AxiomViolationError("hom-preserves-one", (self.source.one,))
        for name in OP_NAMES:
            ts, tt = self.source.table(name), self.target.table(name)
            for x in range(self.source.size):
                for y in range(self.source.size):
                    if self.map[ts[x][y]] != tt[self.map[x]][self.map[y]]:
                        raise AxiomViolationError(f"hom-preserves-{name}", (x, y))

    def __call__(self, x: int) -> int:
        return self.map[x]

    @property
    def injective(self) -> bool:
        return len(set(self.map)) == self.source.size

    @property
    def surjective(self) -> bool:
        return len(set(self.map)) == self.target.size

    def to_json(self) -> dict:
        return {"map": list(self.map)}


def generating_set(a: FinAlgebra) -> tuple[int, ...]:
    """Greedy generating set (constants are implicit)."""
    gens: list[int] = []
    carrier = set(generated_carrier(a, ()))
    for x in range(a.size):
        if x not in carrier:
            gens.append(x)
            carrier = set(generated_carrier(a, gens))
            if len(carrier) == a.size:
                break
    return tuple(gens)


def _propagate(a: FinAlgebra, b: FinAlgebra, assignment: dict) -> dict | None:
    """Close a partial map under the operations; None on conflict."""
    assignment = dict(assignment)
    frontier = list(assignment)
    while frontier:
        x = frontier.pop()
        fx = assignment[x]
        for name in OP_NAMES:
            ta, tb = a.table(name), b.table(name)
            for y in list(assignment):
                fy = assignment[y]
                for (z, w) in ((ta[x][y], tb[fx][fy]), (ta[y][x], tb[fy][fx])):
                    prev = assignment.get(z)
                    if prev is None:
                        assignment[z] = w
                        frontier.append(z)
                    elif prev != w:
                        return None
    return assignment


def hom_enumerate(a: FinAlgebra, b: FinAlgebra,
                  budget: int = DEFAULT_HOM_BUDGET) -> list[Hom]:
    """All homomorphisms a -> b, lexicographically ordered on map arrays.

    Backtracks over images of a generating set, propagating the partial
    map through the operation tables after every choice.
    """
    gens = generating_set(a)
    if a.zero == a.one and b.zero != b.one:
        return []
    base = _propagate(a, b, {a.zero: b.zero, a.one: b.one})
    results: list[tuple[int, ...]] = []
    nodes = 0

    def search(assignment: dict, depth: int) -> None:
        nonlocal nodes
        if depth == len(gens):
            if len(assignment) == a.size:
                results.append(tuple(assignment[x] for x in range(a.size)))
            return
        g = gens[depth]
        if g in assignment:
            search(assignment, depth + 1)
            return
        for image in range(b.size):
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError(budget)
            extended = _propagate(a, b, {**assignment, g: image})
            if extended is not None:
                search(extended, depth + 1)

    if base is not None:
        search(base, 0)
    results.sort()
    return [Hom(a, b, m) for m in results]


# -- congruences -----------------------------------------------------------

@dataclass(frozen=True)
class Congruence:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(bl)) for bl in self.blocks))
        object.__setattr__(self, "blocks", blocks)

    @property
    def size(self) -> int:
        return sum(len(bl) for bl in self.blocks)

    def class_of(self) -> tuple[int, ...]:
        cls = [0] * self.size
        for i, bl in enumerate(self.blocks):
            for x in bl:
                cls[x] = i
        return tuple(cls)

    def refines(self, other: "Congruence") -> bool:
        ocls = other.class_of()
        return all(len({ocls[x] for x in bl}) == 1 for bl in self.blocks)

    def to_json(self) -> dict:
        return {"blocks": [list(bl) for bl in self.blocks]}


def _blocks_from_classes(cls) -> Congruence:
    blocks: dict[int, list[int]] = {}
    for x, c in enumerate(cls):
        blocks.setdefault(c, []).append(x)
    return Congruence(tuple(tuple(bl) for bl in blocks.values()))


def _is_compatible(a: FinAlgebra, cls) -> bool:
    rng = range(a.size)
    for name in OP_NAMES:
        t = a.table(name)
        for x in rng:
            for y in rng:
                if x < y and cls[x] == cls[y]:
                    for z in rng:
                        if cls[t[x][z]] != cls[t[y][z]]:
                            return False
    return True


def congruences_partition_scan(a: FinAlgebra) -> list[Congruence]:
    """Enumerate restricted-growth strings with compatibility pruning."""
    if a.size > PARTITION_SCAN_MAX:
        raise SizeLimitError(
            f"partition scan supports size <= {PARTITION_SCAN_MAX}")
    m = a.size
    found: list[Congruence] = []
    cls = [0] * m

    def compatible_prefix(k: int) -> bool:
        # elements 0..k assigned; check pairs whose op results are also <= k
        for name in OP_NAMES:
            t = a.table(name)
            for x in range(k + 1):
                if cls[x] != cls[k]:
                    continue
                for z in range(k + 1):
                    u, v = t[x][z], t[k][z]
                    if u <= k and v <= k and cls[u] != cls[v]:
                        return False
        return True

    def assign(k: int, maxc: int) -> None:
        if k == m:
            if _is_compatible(a, cls):
                found.append(_blocks_from_classes(tuple(cls)))
            return
        for c in range(maxc + 2):
            cls[k] = c
            if compatible_prefix(k):
                assign(k + 1, max(maxc, c))

    assign(0, -1)
    found.sort(key=lambda th: (-len(th.blocks), th.class_of()))
    return found


def principal_congruence(a: FinAlgebra, x: int, y: int) -> Congruence:
    """Smallest congruence identifying x and y, by closure."""
    parent = list(range(a.size))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    def union(u, v):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
            return True
        return False

    union(x, y)
    changed = True
    while changed:
        changed = False
        for name in OP_NAMES:
            t = a.table(name)
            for u in range(a.size):
                for v in range(u + 1, a.size):
                    if find(u) == find(v):
                        for z in range(a.size):
                            if union(t[u][z], t[v][z]):
                                changed = True
    cls = tuple(find(u) for u in range(a.size))
    return _blocks_from_classes(cls)


def _join_congruence(a: FinAlgebra, th1: Congruence, th2: Congruence) -> Congruence:
    parent = list(range(a.size))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    def union(u, v):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)

    for th in (th1, th2):
        for bl in th.blocks:
            for u in bl[1:]:
                union(bl[0], u)
    # the union of two congruences is transitive-closed by union-find and
    # already compatible with the operations (join of congruences)
    changed = True
    while changed:
        changed = False
        for name in OP_NAMES:
            t = a.table(name)
            for u in range(a.size):
                for v in range(u + 1, a.size):
                    if find(u) == find(v):
                        for z in range(a.size):
                            if find(t[u][z]) != find(t[v][z]):
                                union(t[u][z], t[v][z])
                                changed = True
    cls = tuple(find(u) for u in range(a.size))
    return _blocks_from_classes(cls)


def congruences_principal_closure(a: FinAlgebra) -> list[Congruence]:
    delta = _blocks_from_classes(tuple(range(a.size)))
    found = {delta}
    principals = {principal_congruence(a, x, y)
                  for x in range(a.size) for y in range(x + 1, a.size)}
    found |= principals
    frontier = list(found)
    while frontier:
        th = frontier.pop()
        for p in principals:
            joined = _join_congruence(a, th, p)
            if joined not in found:
                found.add(joined)
                frontier.append(joined)
    result = sorted(found, key=lambda th: (-len(th.blocks), th.class_of()))
    return result


def congruences(a: FinAlgebra) -> list[Congruence]:
    """All congruences, ordered by refinement depth (diagonal first)."""
    if a.size <= PARTITION_SCAN_MAX:
        return congruences_partition_scan(a)
    return congruences_principal_closure(a)


def is_simple(a: FinAlgebra) -> bool:
    """Exactly two congruences; the one-element algebra is not simple."""
    return len(congruences(a)) == 2


# -- membership in the quasi-variety of the chain ---------------------------

@dataclass(frozen=True)
class Embedding:
    """A separating embedding into a finite power of the chain."""

    n: int
    k: int
    vectors: tuple[tuple[int, ...], ...]   # one k-tuple of numerators per element

    def materialize_hom(self, a: FinAlgebra) -> Hom:
        target = power(chain_algebra(self.n), self.k)
        base = self.n + 1
        indices = []
        for vec in self.vectors:
            idx = 0
            for v in vec:
                idx = idx * base + v
            indices.append(idx)
        return Hom(a, target, tuple(indices))


def pmv_membership(a: FinAlgebra, n: int,
                   budget: int = DEFAULT_HOM_BUDGET) -> Embedding | None:
    """Separating embedding into a power of the chain, or None.

    Membership in the quasi-variety of the chain is equivalent to the
    homs into the chain separating points.
    """
    homs = hom_enumerate(a, chain_algebra(n), budget=budget)
    vectors = tuple(tuple(h(x) for h in homs) for x in range(a.size))
    if len(set(vectors)) != a.size:
        return None
    return Embedding(n, len(homs), vectors)


# -- isomorphism search ------------------------------------------------------

def _invariant(a: FinAlgebra, x: int) -> tuple:
    below = sum(1 for y in range(a.size) if a.leq(y, x))
    above = sum(1 for y in range(a.size) if a.leq(x, y))
    idem_plus = a.oplus[x][x] == x
    idem_dot = a.odot[x][x] == x
    return (below, above, idem_plus, idem_dot)


def find_isomorphism(a: FinAlgebra, b: FinAlgebra) -> tuple[int, ...] | None:
    """Backtracking isomorphism search with invariant pruning."""
    if a.size != b.size:
        return None
    inv_a = [_invariant(a, x) for x in range(a.size)]
    inv_b = [_invariant(b, x) for x in range(b.size)]
    if sorted(inv_a) != sorted(inv_b):
        return None
    mapping: dict[int, int] = {a.zero: b.zero, a.one: b.one}
    if inv_a[a.zero] != inv_b[b.zero] or inv_a[a.one] != inv_b[b.one]:
        return None
    used = {b.zero, b.one}
    if a.zero == a.one:
        used = {b.zero}

    def consistent(x: int, y: int) -> bool:
        for name in OP_NAMES:
            ta, tb = a.table(name), b.table(name)
            for u, v in mapping.items():
                for (r, s) in ((ta[x][u], tb[y][v]), (ta[u][x], tb[v][y])):
                    t = mapping.get(r)
                    if t is not None and t != s:
                        return False
        return True

    order = sorted(range(a.size), key=lambda x: (x in mapping, x))

    def search(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        if x in mapping:
            return search(i + 1)
        for y in range(b.size):
            if y in used or inv_b[y] != inv_a[x]:
                continue
            if not consistent(x, y):
                continue
            mapping[x] = y
            used.add(y)
            if search(i + 1):
                return True
            del mapping[x]
            used.remove(y)
        return False

    if search(0):
        return tuple(mapping[x] for x in range(a.size))
    return None


def is_isomorphic(a: FinAlgebra, b: FinAlgebra) -> bool:
    return find_isomorphism(a, b) is not None
