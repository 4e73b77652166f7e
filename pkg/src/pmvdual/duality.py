"""Finite-scale hom-functor duality.

Dual spaces are finite structured spaces: a carrier together with one
binary relation per element of the relation lattice for the given n.
Topology plays no role at this scale; every finite space is discrete.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import (DEFAULT_HOM_BUDGET, FinAlgebra, Hom, chain_algebra,
                      congruences, hom_enumerate)
from .chain import Chain
from .errors import (InternalConsistencyError, NonMemberError,
                     WrongSignatureError)
from .relations import (BinRel, compute_Sn, format_frac, parse_seq_label,
                        sn_relations, top_seq)

Pair = tuple[int, int]


def relation_keys(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(s.y for s in compute_Sn(n).elements)


class StructSpace:
    """Finite structured space: carrier {0..size-1} plus named pair sets."""

    def __init__(self, n: int, size: int,
                 relations: dict[tuple[int, ...], frozenset[Pair]]):
        expected = set(relation_keys(n))
        if set(relations) != expected:
            raise WrongSignatureError(
                f"expected relation names {sorted(expected)} for n={n}, "
                f"got {sorted(relations)}")
        for key, pairs in relations.items():
            for (x, y) in pairs:
                if not (0 <= x < size and 0 <= y < size):
                    raise ValueError(f"pair {(x, y)} outside carrier of size {size}")
        self.n = n
        self.size = size
        self.relations = {key: frozenset(pairs)
                          for key, pairs in relations.items()}

    def rel(self, key: tuple[int, ...]) -> frozenset[Pair]:
        return self.relations[key]

    @property
    def order_pairs(self) -> frozenset[Pair]:
        return self.relations[top_seq(self.n).y]

    def __eq__(self, other):
        if not isinstance(other, StructSpace):
            return NotImplemented
        return (self.n, self.size, self.relations) == \
            (other.n, other.size, other.relations)

    def __repr__(self):
        return f"StructSpace(n={self.n}, size={self.size})"

    def canonical_form(self) -> tuple:
        return (self.n, self.size,
                tuple((key, tuple(sorted(self.relations[key])))
                      for key in sorted(self.relations)))

    def to_json(self) -> dict:
        rels = {}
        for key in relation_keys(self.n):
            label = "[" + ",".join(format_frac(v, self.n) for v in key) + "]"
            rels[label] = [list(p) for p in sorted(self.relations[key])]
        return {"n": self.n, "size": self.size, "relations": rels}

    @staticmethod
    def from_json(data: dict) -> "StructSpace":
        n = int(data["n"])
        rels = {}
        for label, pairs in data["relations"].items():
            key = parse_seq_label(label, n)
            rels[key] = frozenset((int(p[0]), int(p[1])) for p in pairs)
        return StructSpace(n, int(data["size"]), rels)


@dataclass(frozen=True)
class StructMorphism:
    source: StructSpace
    target: StructSpace
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if self.source.n != self.target.n:
            raise WrongSignatureError("source and target have different n")
        if len(self.map) != self.source.size:
            raise ValueError("map length mismatch")
        for key, pairs in self.source.relations.items():
            tpairs = self.target.relations[key]
            for (x, y) in pairs:
                if (self.map[x], self.map[y]) not in tpairs:
                    raise ValueError(
                        f"relation {key} not preserved at {(x, y)}")

    def __call__(self, x: int) -> int:
        return self.map[x]


def empty_space(n: int) -> StructSpace:
    return StructSpace(n, 0, {key: frozenset() for key in relation_keys(n)})


def disjoint_union(x: StructSpace, y: StructSpace) -> StructSpace:
    """Coproduct of structured spaces; y's points are shifted past x's."""
    if x.n != y.n:
        raise WrongSignatureError("disjoint union requires matching n")
    rels = {key: x.relations[key]
            | frozenset((u + x.size, v + x.size) for (u, v) in y.relations[key])
            for key in x.relations}
    return StructSpace(x.n, x.size + y.size, rels)


@lru_cache(maxsize=None)
def alter_ego(n: int) -> StructSpace:
    """The dualizing structure: the chain carrier with every lattice relation."""
    rels = {key: rel.pairs for key, rel in sn_relations(n).items()}
    return StructSpace(n, n + 1, rels)


def struct_morphism_maps(x: StructSpace, y: StructSpace,
                         surjective: bool = False) -> list[tuple[int, ...]]:
    """All structure-preserving maps x -> y, lexicographically ordered."""
    if x.size == 0:
        return [()] if (not surjective or y.size == 0) else []
    if y.size == 0:
        return []
    keys = list(x.relations)
    adj = {key: y.relations[key] for key in keys}
    results: list[tuple[int, ...]] = []
    assignment = [0] * x.size

    def ok(point: int, image: int) -> bool:
        for key in keys:
            tpairs = adj[key]
            for (u, v) in x.relations[key]:
                if u == point and v <= point:
                    if (image, assignment[v] if v < point else image) not in tpairs:
                        return False
                elif v == point and u <= point:
                    if (assignment[u] if u < point else image, image) not in tpairs:
                        return False
        return True

    def search(point: int) -> None:
        if point == x.size:
            if not surjective or len(set(assignment)) == y.size:
                results.append(tuple(assignment))
            return
        for image in range(y.size):
            if ok(point, image):
                assignment[point] = image
                search(point + 1)

    search(0)
    return results


def struct_morphisms(x: StructSpace, y: StructSpace,
                     surjective: bool = False) -> list[StructMorphism]:
    return [StructMorphism(x, y, m)
            for m in struct_morphism_maps(x, y, surjective)]


def spaces_isomorphic(x: StructSpace, y: StructSpace) -> bool:
    if x.n != y.n or x.size != y.size:
        return False
    for m in struct_morphism_maps(x, y):
        if len(set(m)) != x.size:
            continue
        inv = [0] * x.size
        for i, v in enumerate(m):
            inv[v] = i
        try:
            StructMorphism(y, x, tuple(inv))
        except ValueError:
            continue
        return True
    return x.size == 0


# -- the two hom-functors -----------------------------------------------------

def dual_space(a: FinAlgebra, n: int,
               budget: int = DEFAULT_HOM_BUDGET) -> StructSpace:
    """Points are the homs into the chain; relations hold pointwise."""
    homs = hom_enumerate(a, chain_algebra(n), budget=budget)
    rels = {}
    for key, rel in sn_relations(n).items():
        pairs = set()
        for i, u in enumerate(homs):
            for j, v in enumerate(homs):
                if all((u(t), v(t)) in rel.pairs for t in range(a.size)):
                    pairs.add((i, j))
        rels[key] = frozenset(pairs)
    return StructSpace(n, len(homs), rels)


def dual_points(a: FinAlgebra, n: int,
                budget: int = DEFAULT_HOM_BUDGET) -> list[Hom]:
    return hom_enumerate(a, chain_algebra(n), budget=budget)


def dual_algebra_elements(x: StructSpace) -> list[tuple[int, ...]]:
    """Morphisms into the dualizing structure, as value tuples."""
    return struct_morphism_maps(x, alter_ego(x.n))


def dual_algebra(x: StructSpace) -> FinAlgebra:
    """Pointwise algebra on the morphisms into the dualizing structure."""
    elems = dual_algebra_elements(x)
    index = {e: i for i, e in enumerate(elems)}
    c = Chain(x.n)

    def tab(name):
        rows = []
        for e1 in elems:
            row = []
            for e2 in elems:
                val = tuple(c.op(name, v1, v2) for v1, v2 in zip(e1, e2))
                if val not in index:
                    raise InternalConsistencyError(
                        f"pointwise {name} left the morphism set")
                row.append(index[val])
            rows.append(tuple(row))
        return tuple(rows)

    zero = index[tuple([0] * x.size)]
    one = index[tuple([x.n] * x.size)]
    return FinAlgebra(len(elems), tab("meet"), tab("join"), tab("oplus"),
                      tab("odot"), zero, one, label=f"E(X) n={x.n}")


@dataclass(frozen=True)
class EvalEReport:
    hom: Hom
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


def evaluation_e(a: FinAlgebra, n: int,
                 budget: int = DEFAULT_HOM_BUDGET) -> EvalEReport:
    """The map a |-> (u |-> u(a)) into the double dual."""
    homs = dual_points(a, n, budget=budget)
    x = dual_space(a, n, budget=budget)
    elems = dual_algebra_elements(x)
    ealg = dual_algebra(x)
    index = {e: i for i, e in enumerate(elems)}
    images = []
    for t in range(a.size):
        val = tuple(u(t) for u in homs)
        if val not in index:
            raise InternalConsistencyError(
                "evaluation image is not a morphism")
        images.append(index[val])
    hom = Hom(a, ealg, tuple(images))
    return EvalEReport(hom, hom.injective, hom.surjective)


@dataclass(frozen=True)
class EvalEpsReport:
    map: tuple[int, ...]
    injective: bool
    surjective: bool
    relation_preserving: bool
    relation_reflecting: bool

    @property
    def isomorphism(self) -> bool:
        return (self.injective and self.surjective
                and self.relation_preserving and self.relation_reflecting)


def evaluation_eps(x: StructSpace, n: int,
                   budget: int = DEFAULT_HOM_BUDGET) -> EvalEpsReport:
    """The map x |-> (alpha |-> alpha(x)) into the double dual space."""
    member = xn_membership(x, n)
    if not member.member:
        raise NonMemberError(f"space fails membership: {member.witness}")
    ealg = dual_algebra(x)
    elems = dual_algebra_elements(x)
    y = dual_space(ealg, n, budget=budget)
    ypoints = dual_points(ealg, n, budget=budget)
    index = {p.map: i for i, p in enumerate(ypoints)}
    images = []
    for pt in range(x.size):
        val = tuple(e[pt] for e in elems)
        if val not in index:
            raise InternalConsistencyError(
                "point evaluation is not a hom of the dual algebra")
        images.append(index[val])
    preserving = True
    reflecting = True
    for key, pairs in x.relations.items():
        ypairs = y.relations[key]
        for u in range(x.size):
            for v in range(x.size):
                src = (u, v) in pairs
                tgt = (images[u], images[v]) in ypairs
                if src and not tgt:
                    preserving = False
                if tgt and not src:
                    reflecting = False
    injective = len(set(images)) == x.size
    surjective = set(images) == set(range(y.size))
    return EvalEpsReport(tuple(images), injective, surjective,
                         preserving, reflecting)


# -- membership and axioms -------------------------------------------------------

@dataclass(frozen=True)
class MembershipReport:
    member: bool
    witness: tuple | None = None      # ("separation", x, y) or ("relation", key, pair)

    def __bool__(self):
        return self.member


def xn_membership(x: StructSpace, n: int) -> MembershipReport:
    """Separation test: morphisms into the dualizing structure must
    distinguish distinct points and avoid every absent relation pair."""
    if x.n != n:
        raise WrongSignatureError(f"space has n={x.n}, expected {n}")
    maps = struct_morphism_maps(x, alter_ego(n))
    for p in range(x.size):
        for q in range(p + 1, x.size):
            if not any(m[p] != m[q] for m in maps):
                return MembershipReport(False, ("separation", p, q))
    rels = sn_relations(n)
    for key in sorted(x.relations):
        pairs = x.relations[key]
        target = rels[key].pairs
        for p in range(x.size):
            for q in range(x.size):
                if (p, q) in pairs:
                    continue
                if not any((m[p], m[q]) not in target for m in maps):
                    return MembershipReport(False, ("relation", key, (p, q)))
    return MembershipReport(True)


def separating_embedding(x: StructSpace, n: int) -> list[tuple[int, ...]]:
    """The product of all morphisms witnessing membership (on request)."""
    report = xn_membership(x, n)
    if not report.member:
        raise NonMemberError(f"space fails membership: {report.witness}")
    return struct_morphism_maps(x, alter_ego(n))


@dataclass(frozen=True)
class X2Report:
    axiom_a: bool
    axiom_b: bool
    axiom_c: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def passes(self) -> bool:
        return self.axiom_a and self.axiom_b and self.axiom_c


def _upsets(order: frozenset[Pair], size: int) -> list[frozenset[int]]:
    out = []
    for mask in range(1 << size):
        s = frozenset(i for i in range(size) if mask >> i & 1)
        if all(v in s for (u, v) in order if u in s):
            out.append(s)
    return out


def x2_axiom_check(x: StructSpace) -> X2Report:
    """Finite-case axioms for the n = 2 dual category.

    (a) the sharp relation is contained in the order;
    (b) the order is a partial order (separation is automatic on finite
        posets);
    (c) every ordered pair outside the sharp relation admits an
        upset/downset pair avoiding it while covering the sharp relation.
    """
    if x.n != 2:
        raise WrongSignatureError(f"axiom check requires n = 2, got n = {x.n}")
    sharp = x.relations[(2,)]
    order = x.relations[(1,)]
    witnesses: dict = {}

    axiom_a = sharp <= order
    if not axiom_a:
        witnesses["a"] = sorted(sharp - order)[0]

    axiom_b = True
    for p in range(x.size):
        if (p, p) not in order:
            axiom_b, witnesses["b"] = False, ("not reflexive", p)
            break
    if axiom_b:
        for (u, v) in order:
            if u != v and (v, u) in order:
                axiom_b, witnesses["b"] = False, ("not antisymmetric", (u, v))
                break
    if axiom_b:
        for (u, v) in order:
            for (v2, w) in order:
                if v2 == v and (u, w) not in order:
                    axiom_b, witnesses["b"] = False, ("not transitive", (u, v, w))
                    break
            if not axiom_b:
                break

    axiom_c = True
    if axiom_b:
        ups = _upsets(order, x.size)
        downs = [frozenset(range(x.size)) - u for u in ups]
        for (p, q) in sorted(order):
            if (p, q) in sharp:
                continue
            solved = False
            for u in ups:
                if q in u:
                    continue
                for d in downs:
                    if p in d:
                        continue
                    if all(z in d or z2 in u for (z, z2) in sharp):
                        solved = True
                        break
                if solved:
                    break
            if not solved:
                axiom_c = False
                witnesses["c"] = (p, q)
                break
    else:
        axiom_c = False
    return X2Report(axiom_a, axiom_b, axiom_c, witnesses)


# -- congruences vs substructures ---------------------------------------------

def congruence_substructure_check(a: FinAlgebra, n: int,
                                  budget: int = DEFAULT_HOM_BUDGET) -> bool:
    """Congruence lattice anti-isomorphic to the subset lattice of the dual.

    Every subset S of the dual carrier induces the congruence identifying
    elements that all points of S agree on; the check verifies this map
    is an order-reversing bijection onto the congruence lattice.
    """
    homs = dual_points(a, n, budget=budget)
    cons = {tuple(sorted(tuple(sorted(bl)) for bl in th.blocks))
            for th in congruences(a)}
    p = len(homs)
    seen = {}
    for mask in range(1 << p):
        subset = [i for i in range(p) if mask >> i & 1]
        classes: dict[tuple, list[int]] = {}
        for t in range(a.size):
            sig = tuple(homs[i](t) for i in subset)
            classes.setdefault(sig, []).append(t)
        blocks = tuple(sorted(tuple(bl) for bl in classes.values()))
        seen[frozenset(subset)] = blocks
        if blocks not in cons:
            return False
    if len(set(seen.values())) != len(cons):
        return False
    # order reversal both ways: S1 <= S2 iff theta(S2) refines theta(S1)
    subsets = list(seen)
    for s1 in subsets:
        for s2 in subsets:
            if (s1 <= s2) != _refines(seen[s2], seen[s1]):
                return False
    return True


def _refines(blocks_fine, blocks_coarse) -> bool:
    coarse_of = {}
    for i, bl in enumerate(blocks_coarse):
        for t in bl:
            coarse_of[t] = i
    return all(len({coarse_of[t] for t in bl}) == 1 for bl in blocks_fine)


# -- DOT export ------------------------------------------------------------------

def struct_space_to_dot(x: StructSpace) -> str:
    """Order as Hasse edges; sharp pairs outside the order loops dashed."""
    order = x.order_pairs
    strict = {(u, v) for (u, v) in order if u != v}
    hasse = {(u, v) for (u, v) in strict
             if not any((u, w) in strict and (w, v) in strict
                        for w in range(x.size))}
    lines = ["digraph X {", "  rankdir=BT;"]
    for p in range(x.size):
        lines.append(f'  p{p} [label="{p}"];')
    for (u, v) in sorted(hasse):
        lines.append(f"  p{u} -> p{v};")
    for key in sorted(x.relations):
        if key == top_seq(x.n).y:
            continue
        label = "[" + ",".join(format_frac(v, x.n) for v in key) + "]"
        for (u, v) in sorted(x.relations[key]):
            lines.append(f'  p{u} -> p{v} [style=dashed, label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
