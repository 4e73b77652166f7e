"""Distributive skeleton, finite Priestley duality, and Priestley/Boolean powers."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import (DEFAULT_HOM_BUDGET, FinAlgebra, Hom, chain_algebra,
                      hom_enumerate, pmv_membership, power, product,
                      trivial_algebra)
from .chain import Chain
from .errors import InternalConsistencyError, NonMemberError

Pair = tuple[int, int]


@dataclass(frozen=True)
class Poset:
    size: int
    leq: frozenset[Pair]

    def __post_init__(self):
        object.__setattr__(self, "leq", frozenset(self.leq))
        for p in range(self.size):
            if (p, p) not in self.leq:
                raise ValueError(f"order not reflexive at {p}")
        for (u, v) in self.leq:
            if u != v and (v, u) in self.leq:
                raise ValueError(f"order not antisymmetric at {(u, v)}")
            for (v2, w) in self.leq:
                if v2 == v and (u, w) not in self.leq:
                    raise ValueError(f"order not transitive at {(u, v, w)}")

    def le(self, u: int, v: int) -> bool:
        return (u, v) in self.leq

    def to_json(self) -> dict:
        return {"size": self.size, "leq": [list(p) for p in sorted(self.leq)]}


def poset_isomorphic(p: Poset, q: Poset) -> bool:
    if p.size != q.size:
        return False

    def search(mapping: dict) -> bool:
        if len(mapping) == p.size:
            return True
        u = len(mapping)
        for v in range(q.size):
            if v in mapping.values():
                continue
            if all((p.le(u, w) == q.le(v, mapping[w]))
                   and (p.le(w, u) == q.le(mapping[w], v))
                   for w in mapping):
                mapping[u] = v
                if search(mapping):
                    return True
                del mapping[u]
        return False

    return search({})


# -- skeleton ------------------------------------------------------------------

def skeleton_carrier(a: FinAlgebra) -> tuple[int, ...]:
    return tuple(x for x in range(a.size) if a.oplus[x][x] == x)


def skeleton(a: FinAlgebra) -> tuple[FinAlgebra, tuple[int, ...]]:
    """The lattice of additively idempotent elements, plus the inclusion.

    Returned as an algebra in the same signature with both monoid
    operations collapsed onto the lattice ones, so every dual
    construction applies unchanged at n = 1.
    """
    carrier = skeleton_carrier(a)
    index = {x: i for i, x in enumerate(carrier)}
    size = len(carrier)
    meet = tuple(tuple(index[a.meet[x][y]] for y in carrier) for x in carrier)
    join = tuple(tuple(index[a.join[x][y]] for y in carrier) for x in carrier)
    lat = FinAlgebra(size, meet, join, join, meet, index[a.zero],
                     index[a.one], label=f"S({a.label})" if a.label else "")
    return lat, carrier


def is_dist_lattice_algebra(a: FinAlgebra) -> bool:
    """Idempotent case: oplus coincides with join and odot with meet."""
    return a.oplus == a.join and a.odot == a.meet


def skeleton_functor_on_homs(h: Hom) -> Hom:
    src, src_carrier = skeleton(h.source)
    tgt, tgt_carrier = skeleton(h.target)
    tgt_index = {x: i for i, x in enumerate(tgt_carrier)}
    return Hom(src, tgt, tuple(tgt_index[h(x)] for x in src_carrier))


# -- finite Priestley duality ----------------------------------------------------

def priestley_dual(lat: FinAlgebra) -> Poset:
    """Lattice homs into the two-element chain, ordered pointwise."""
    if not is_dist_lattice_algebra(lat):
        raise ValueError("priestley_dual expects an idempotent algebra")
    homs = hom_enumerate(lat, chain_algebra(1))
    size = len(homs)
    leq = frozenset((i, j) for i in range(size) for j in range(size)
                    if all(homs[i](x) <= homs[j](x) for x in range(lat.size)))
    return Poset(size, leq)


def monotone_maps(p: Poset, n: int) -> list[tuple[int, ...]]:
    """Order-preserving maps from the poset into the (n+1)-chain."""
    if p.size == 0:
        return [()]
    results: list[tuple[int, ...]] = []
    values = [0] * p.size

    def search(i: int) -> None:
        if i == p.size:
            results.append(tuple(values))
            return
        for v in range(n + 1):
            if all((values[j] <= v if p.le(j, i) else True)
                   and (v <= values[j] if p.le(i, j) else True)
                   for j in range(i)):
                values[i] = v
                search(i + 1)

    search(0)
    return results


def priestley_power(n: int, lat: FinAlgebra) -> FinAlgebra:
    """Monotone maps from the dual poset into the chain, pointwise ops."""
    p = priestley_dual(lat)
    elems = monotone_maps(p, n)
    index = {e: i for i, e in enumerate(elems)}
    c = Chain(n)

    def tab(name):
        rows = []
        for e1 in elems:
            row = []
            for e2 in elems:
                val = tuple(c.op(name, v1, v2) for v1, v2 in zip(e1, e2))
                row.append(index[val])
            rows.append(tuple(row))
        return tuple(rows)

    zero = index[tuple([0] * p.size)]
    one = index[tuple([n] * p.size)]
    return FinAlgebra(len(elems), tab("meet"), tab("join"), tab("oplus"),
                      tab("odot"), zero, one, label=f"PL{n}[{lat.label or 'L'}]")


def boolean_lattice(k: int) -> FinAlgebra:
    """The free bounded distributive lattice on k complemented atoms: 2^k."""
    two = chain_algebra(1)
    if k == 0:
        return trivial_algebra()
    lat = two
    for _ in range(k - 1):
        lat = product(lat, two)
    return lat.relabel(f"B{2 ** k}")


def boolean_power(n: int, k: int) -> FinAlgebra:
    """The k-th direct power of the chain, labelled as a Boolean power."""
    if k < 0:
        raise ValueError("atom count must be >= 0")
    if k == 0:
        return trivial_algebra()
    return power(chain_algebra(n), k).relabel(f"PL{n}[B{2 ** k}]")


# -- the unit of the adjunction ----------------------------------------------------

def tau_table(a: FinAlgebra, n: int) -> dict[tuple[int, int], int]:
    """Graph of every threshold operation on a member of the quasi-variety."""
    emb = pmv_membership(a, n)
    if emb is None:
        raise NonMemberError("algebra is not in the quasi-variety of the chain")
    vec_index = {vec: t for t, vec in enumerate(emb.vectors)}
    table = {}
    for d in range(n + 1):
        for t in range(a.size):
            img = tuple(n if d <= v else 0 for v in emb.vectors[t])
            if img not in vec_index:
                raise InternalConsistencyError(
                    "threshold image escaped the embedded carrier")
            table[(d, t)] = vec_index[img]
    return table


def skeleton_unit(a: FinAlgebra, n: int) -> Hom:
    """The embedding into the Priestley power of the skeleton.

    Sends a to the map p |-> max{d : p(tau_d(a)) = 1} over the lattice
    homs p from the skeleton into the two-element chain.
    """
    lat, carrier = skeleton(a)
    carrier_index = {x: i for i, x in enumerate(carrier)}
    taus = tau_table(a, n)
    pw = priestley_power(n, lat)
    p_homs = hom_enumerate(lat, chain_algebra(1))
    pd = priestley_dual(lat)
    elems = monotone_maps(pd, n)
    elem_index = {e: i for i, e in enumerate(elems)}
    images = []
    for t in range(a.size):
        vals = []
        for p in p_homs:
            hits = [d for d in range(n + 1)
                    if p(carrier_index[taus[(d, t)]]) == 1]
            vals.append(max(hits))
        val = tuple(vals)
        if val not in elem_index:
            raise InternalConsistencyError("unit image is not monotone")
        images.append(elem_index[val])
    hom = Hom(a, pw, tuple(images))
    if not hom.injective:
        raise InternalConsistencyError("unit embedding failed to be injective")
    return hom


# -- adjunction check ---------------------------------------------------------------

@dataclass(frozen=True)
class AdjunctionReport:
    ok: bool
    upper_count: int          # homs A -> power
    lower_count: int          # lattice homs skeleton(A) -> L
    pairing: tuple[tuple[int, ...], ...]   # transposed map per upper hom

    def __bool__(self):
        return self.ok


def adjunction_check(a: FinAlgebra, lat: FinAlgebra, n: int,
                     budget: int = DEFAULT_HOM_BUDGET) -> AdjunctionReport:
    """Extensional transposition bijection between the two hom-sets.

    Each hom A -> power restricts, on skeletons, to an upset-valued map
    which corresponds to a unique lattice hom skeleton(A) -> L; the check
    verifies this correspondence is a bijection.
    """
    if not is_dist_lattice_algebra(lat):
        raise ValueError("adjunction_check expects an idempotent second factor")
    pw = priestley_power(n, lat)
    pd = priestley_dual(lat)
    elems = monotone_maps(pd, n)
    l_points = hom_enumerate(lat, chain_algebra(1))
    upper = hom_enumerate(a, pw, budget=budget)
    skel_a, carrier = skeleton(a)
    lower = hom_enumerate(skel_a, lat, budget=budget)
    # b in L corresponds to the upset {q : q(b) = 1} of the dual poset
    upset_of = {}
    for b in range(lat.size):
        key = tuple(1 if q(b) == 1 else 0 for q in l_points)
        upset_of[key] = b
    transposed = []
    for h in upper:
        maps = []
        for s in carrier:
            val = elems[h(s)]
            key = tuple(1 if v == n else 0 for v in val)
            if key not in upset_of:
                return AdjunctionReport(False, len(upper), len(lower), ())
            maps.append(upset_of[key])
        transposed.append(tuple(maps))
    distinct = len(set(transposed)) == len(transposed)
    lower_maps = {h.map for h in lower}
    onto = set(transposed) == lower_maps
    ok = distinct and onto and len(upper) == len(lower)
    return AdjunctionReport(ok, len(upper), len(lower), tuple(transposed))
