"""Subalgebras of the order inside the chain square.

The relations between the minimal relation (x = 0 or y = 1) and the full
order are encoded as nondecreasing sequences [y_1, ..., y_{n-1}]; the
lattice of all of them is the relation set of the dualizing structure.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .chain import OP_NAMES, Chain, Subalgebra, chain_subalgebras
from .errors import (MalformedSequenceError, NotASubalgebraError,
                     SizeLimitError)

Pair = tuple[int, int]

ORACLE_SUBSET_SCAN_MAX = 4
ORACLE_MAX_N = 6


# -- binary relations on the chain -------------------------------------------

@dataclass(frozen=True)
class BinRel:
    n: int
    pairs: frozenset[Pair]

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for (x, y) in self.pairs:
            if not (0 <= x <= self.n and 0 <= y <= self.n):
                raise ValueError(f"pair {(x, y)} out of range for n={self.n}")

    def converse(self) -> "BinRel":
        return BinRel(self.n, frozenset((y, x) for (x, y) in self.pairs))

    def restrict(self, s_pairs) -> "BinRel":
        s = frozenset(s_pairs)
        return BinRel(self.n, self.pairs & s)

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs)

    def to_json(self) -> dict:
        return {"n": self.n, "pairs": [list(p) for p in self.sorted_pairs()]}


def lhd_rel(n: int) -> BinRel:
    """The minimal relation: first coordinate 0 or second coordinate 1."""
    return BinRel(n, frozenset((x, y) for x in range(n + 1)
                               for y in range(n + 1) if x == 0 or y == n))


def leq_rel(n: int) -> BinRel:
    return BinRel(n, frozenset((x, y) for x in range(n + 1)
                               for y in range(x, n + 1)))


def diagonal_rel(n: int, carrier) -> BinRel:
    return BinRel(n, frozenset((x, x) for x in carrier))


def is_square_subalgebra(r: BinRel) -> bool:
    """Contains both constants and closed under the componentwise operations."""
    c = Chain(r.n)
    if (0, 0) not in r.pairs or (r.n, r.n) not in r.pairs:
        return False
    for (x1, y1) in r.pairs:
        for (x2, y2) in r.pairs:
            for name in OP_NAMES:
                if (c.op(name, x1, x2), c.op(name, y1, y2)) not in r.pairs:
                    return False
    return True


# -- rectangles ---------------------------------------------------------------

def rectangle(n: int, s: tuple, x: int, y: int) -> frozenset[Pair]:
    """The down/up rectangle at (x, y) inside a product of subalgebras.

    s is a pair of chain subalgebras (first-coordinate carrier,
    second-coordinate carrier); accepts Subalgebra values or raw carriers.
    """
    car1 = tuple(s[0].carrier if isinstance(s[0], Subalgebra) else s[0])
    car2 = tuple(s[1].carrier if isinstance(s[1], Subalgebra) else s[1])
    Chain(n).check(x)
    Chain(n).check(y)
    if x > y:
        raise ValueError(f"rectangle requires x <= y, got ({x}, {y})")
    if x not in car1 or y not in car2:
        raise ValueError(f"({x}, {y}) is not in the given product")
    return frozenset((x2, y2) for x2 in car1 if x2 <= x
                     for y2 in car2 if y <= y2)


# -- good sequences ------------------------------------------------------------

@dataclass(frozen=True)
class GoodSeq:
    """Sequence [y_1, ..., y_{n-1}] of numerators; y_0 = 0 and y_n = n implicit."""

    n: int
    y: tuple[int, ...]

    def __post_init__(self):
        y = tuple(int(v) for v in self.y)
        object.__setattr__(self, "y", y)
        if len(y) != self.n - 1:
            raise MalformedSequenceError(
                f"expected {self.n - 1} entries, got {len(y)}")
        for i, v in enumerate(y, start=1):
            if not (i <= v <= self.n):
                raise MalformedSequenceError(
                    f"entry y_{i} = {v} violates {i} <= y_{i} <= {self.n}")
        if any(y[i] > y[i + 1] for i in range(len(y) - 1)):
            raise MalformedSequenceError(f"sequence {y} is not nondecreasing")

    def value(self, i: int) -> int:
        """y_i with the implicit endpoints y_0 = 0 and y_n = n."""
        if i == 0:
            return 0
        if i == self.n:
            return self.n
        return self.y[i - 1]

    def label(self) -> str:
        return "[" + ",".join(format_frac(v, self.n) for v in self.y) + "]"

    def to_json(self) -> dict:
        return {"n": self.n, "y": list(self.y)}

    @staticmethod
    def from_json(data: dict) -> "GoodSeq":
        return GoodSeq(int(data["n"]), tuple(data["y"]))


def format_frac(v: int, n: int) -> str:
    if v == 0:
        return "0"
    if v == n:
        return "1"
    return f"{v}/{n}"


def parse_seq_label(label: str, n: int) -> tuple[int, ...]:
    body = label.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"bad sequence label {label!r}")
    body = body[1:-1].strip()
    if not body:
        return ()
    out = []
    for token in body.split(","):
        token = token.strip()
        if token == "0":
            out.append(0)
        elif token == "1":
            out.append(n)
        else:
            num, den = token.split("/")
            if int(den) != n:
                raise ValueError(f"denominator {den} does not match n={n}")
            out.append(int(num))
    return tuple(out)


def bottom_seq(n: int) -> GoodSeq:
    return GoodSeq(n, tuple([n] * (n - 1)))


def top_seq(n: int) -> GoodSeq:
    return GoodSeq(n, tuple(range(1, n)))


def seq_to_rel(seq: GoodSeq) -> BinRel:
    """The union of rectangles encoded by the sequence: pairs with b >= y_a."""
    n = seq.n
    return BinRel(n, frozenset((a, b) for a in range(n + 1)
                               for b in range(n + 1) if b >= seq.value(a)))


def rel_to_seq(r: BinRel) -> GoodSeq:
    """Inverse of seq_to_rel on relations between the minimal one and the order."""
    n = r.n
    if not lhd_rel(n).pairs <= r.pairs:
        raise NotASubalgebraError("relation does not contain the minimal relation")
    if not r.pairs <= leq_rel(n).pairs:
        raise NotASubalgebraError("relation is not contained in the order")
    y = []
    for i in range(1, n):
        candidates = [b for (a, b) in r.pairs if a == i]
        if not candidates:
            raise NotASubalgebraError(f"no pair with first coordinate {i}")
        y.append(min(candidates))
    seq = GoodSeq(n, tuple(y))
    if seq_to_rel(seq).pairs != r.pairs:
        raise NotASubalgebraError("relation is not a union of rectangles")
    return seq


@dataclass(frozen=True)
class SeqWitness:
    op: str                 # "oplus" or "odot"
    left: Pair              # (j/n, y_j)
    right: Pair             # (j'/n, y_j')
    result: Pair            # the pair that escapes the union

    def describe(self, n: int) -> str:
        def fmt(p):
            return f"({format_frac(p[0], n)},{format_frac(p[1], n)})"
        sym = "(+)" if self.op == "oplus" else "(.)"
        return (f"{fmt(self.left)} {sym} {fmt(self.right)} = "
                f"{fmt(self.result)} lies outside the union")


def good_sequence_witness(seq: GoodSeq, mode: str = "corner") -> SeqWitness | None:
    """None if the encoded union is closed; otherwise the first violation.

    corner mode restricts the check to indices i with y_i < y_{i+1}
    (taking y_n = 1); full mode checks every index pair.
    """
    if mode not in ("corner", "full"):
        raise ValueError(f"unknown mode {mode!r}")
    n = seq.n
    c = Chain(n)
    if mode == "full":
        indices = list(range(1, n))
    else:
        indices = [i for i in range(1, n) if seq.value(i) < seq.value(i + 1)]
    for j in indices:
        for jp in indices:
            for op in ("odot", "oplus"):
                a = c.op(op, j, jp)
                b = c.op(op, seq.value(j), seq.value(jp))
                if b < seq.value(a):
                    return SeqWitness(op, (j, seq.value(j)),
                                      (jp, seq.value(jp)), (a, b))
    return None


def is_good_sequence(seq: GoodSeq, mode: str = "corner") -> bool:
    return good_sequence_witness(seq, mode) is None


# -- the relation lattice -------------------------------------------------------

def candidate_sequences(n: int) -> list[GoodSeq]:
    """Step 1: all nondecreasing sequences with i/n <= y_i."""
    out: list[GoodSeq] = []

    def extend(prefix: list[int]) -> None:
        i = len(prefix) + 1
        if i == n:
            out.append(GoodSeq(n, tuple(prefix)))
            return
        lo = max(i, prefix[-1] if prefix else 0)
        for v in range(lo, n + 1):
            extend(prefix + [v])

    extend([])
    # descending lexicographic: bottom (all 1) first, top (i/n) last
    out.sort(key=lambda s: s.y, reverse=True)
    return out


@dataclass(frozen=True)
class RelLattice:
    n: int
    elements: tuple[GoodSeq, ...]
    covers: tuple[tuple[int, ...], ...]          # upper covers per element
    meet_irreducible: tuple[bool, ...]

    def leq(self, i: int, j: int) -> bool:
        """Containment of the encoded relations: componentwise converse order."""
        yi, yj = self.elements[i].y, self.elements[j].y
        return all(b <= a for a, b in zip(yi, yj))

    @property
    def bottom(self) -> GoodSeq:
        return self.elements[0]

    @property
    def top(self) -> GoodSeq:
        return self.elements[-1]

    def index_of(self, seq: GoodSeq) -> int:
        return self.elements.index(seq)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "elements": [list(s.y) for s in self.elements],
            "labels": [s.label() for s in self.elements],
            "covers": [list(cs) for cs in self.covers],
            "meet_irreducible": list(self.meet_irreducible),
        }


@lru_cache(maxsize=None)
def compute_Sn(n: int) -> RelLattice:
    """Steps 1-3: generate candidates, keep the good ones, order them."""
    good = [s for s in candidate_sequences(n) if is_good_sequence(s, "corner")]

    def leq(i: int, j: int) -> bool:
        return all(b <= a for a, b in zip(good[i].y, good[j].y))

    m = len(good)
    covers: list[tuple[int, ...]] = []
    for i in range(m):
        above = [j for j in range(m) if j != i and leq(i, j)]
        cov = [j for j in above
               if not any(leq(k, j) and k != j for k in above)]
        covers.append(tuple(sorted(cov)))
    # meet-irreducible: exactly one upper cover; the top stays by convention
    irr = [len(cov) == 1 for cov in covers]
    top = max(range(m), key=lambda i: sum(leq(j, i) for j in range(m)))
    irr[top] = True
    return RelLattice(n, tuple(good), tuple(covers), tuple(irr))


def meet_irreducibles(lat: RelLattice) -> list[GoodSeq]:
    return [s for s, keep in zip(lat.elements, lat.meet_irreducible) if keep]


def sn_relations(n: int) -> dict[tuple[int, ...], BinRel]:
    """The relation set of the dualizing structure, keyed by sequence."""
    return {s.y: seq_to_rel(s) for s in compute_Sn(n).elements}


# -- brute-force oracle -----------------------------------------------------------

def _close_pairs(n: int, seed: frozenset[Pair]) -> frozenset[Pair]:
    c = Chain(n)
    pairs = set(seed) | {(0, 0), (n, n)}
    frontier = list(pairs)
    while frontier:
        (x1, y1) = frontier.pop()
        for (x2, y2) in list(pairs):
            for name in OP_NAMES:
                p = (c.op(name, x1, x2), c.op(name, y1, y2))
                if p not in pairs:
                    pairs.add(p)
                    frontier.append(p)
    return frozenset(pairs)


def _oracle_subset_scan(n: int) -> list[frozenset[Pair]]:
    base = sorted(leq_rel(n).pairs - {(0, 0), (n, n)})
    found = []
    for r in range(len(base) + 1):
        for extra in combinations(base, r):
            cand = frozenset(extra) | {(0, 0), (n, n)}
            if is_square_subalgebra(BinRel(n, cand)):
                found.append(cand)
    return found


def _oracle_generate_and_close(n: int) -> list[frozenset[Pair]]:
    leq_pairs = leq_rel(n).pairs
    bottom = _close_pairs(n, frozenset())
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        cur = frontier.pop()
        for p in leq_pairs - cur:
            bigger = _close_pairs(n, cur | {p})
            if bigger not in seen:
                seen.add(bigger)
                frontier.append(bigger)
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def square_subalgebras_oracle(n: int) -> list[BinRel]:
    """All subalgebras of the chain square contained in the order."""
    if n > ORACLE_MAX_N:
        raise SizeLimitError(f"oracle supports n <= {ORACLE_MAX_N}, got {n}")
    if n <= ORACLE_SUBSET_SCAN_MAX:
        raw = _oracle_subset_scan(n)
    else:
        raw = _oracle_generate_and_close(n)
    rels = [BinRel(n, pairs) for pairs in raw]
    rels.sort(key=lambda r: (len(r.pairs), r.sorted_pairs()))
    return rels


def is_diagonal_of_subalgebra(r: BinRel) -> bool:
    if any(x != y for (x, y) in r.pairs):
        return False
    carrier = frozenset(x for (x, _) in r.pairs)
    return any(frozenset(s.carrier) == carrier
               for s in chain_subalgebras(Chain(r.n)))


def oracle_classify(r: BinRel) -> str:
    """Shape of an oracle relation: diagonal or restriction form.

    A non-diagonal subalgebra of the order sits between the restricted
    minimal relation and the restricted order on the product of its
    projections.
    """
    if is_diagonal_of_subalgebra(r):
        return "diagonal"
    pr1 = sorted({x for (x, _) in r.pairs})
    pr2 = sorted({y for (_, y) in r.pairs})
    s_pairs = frozenset((x, y) for x in pr1 for y in pr2)
    lhd_s = lhd_rel(r.n).pairs & s_pairs
    leq_s = leq_rel(r.n).pairs & s_pairs
    if lhd_s <= r.pairs <= leq_s:
        return "restriction"
    raise NotASubalgebraError(
        "relation is neither a diagonal nor of restriction form")


def classify_square_subalgebra(r: BinRel) -> str:
    """product / diagonal / sub_of_leq / sub_of_geq for square subalgebras."""
    if not is_square_subalgebra(r):
        raise NotASubalgebraError("pair set is not a subalgebra of the square")
    pr1 = {x for (x, _) in r.pairs}
    pr2 = {y for (_, y) in r.pairs}
    if r.pairs == frozenset((x, y) for x in pr1 for y in pr2):
        return "product"
    if is_diagonal_of_subalgebra(r):
        return "diagonal"
    if r.pairs <= leq_rel(r.n).pairs:
        return "sub_of_leq"
    if r.pairs <= leq_rel(r.n).converse().pairs:
        return "sub_of_geq"
    raise NotASubalgebraError(
        "square subalgebra is neither a product nor contained in an order")


# -- published-example adjudication ---------------------------------------------

def adjudicate_n4_discrepancy() -> str:
    """Known typo in the published worked example at n = 4.

    The published bullet list names [2/4,2/4,1] as failing via
    (1/4,1/4) (+) (2/4,2/4) = (3/4,3/4); the cited elements belong to the
    sequence [1/4,2/4,1].  Both classifications are recomputed here.
    """
    good = GoodSeq(4, (2, 2, 4))
    bad = GoodSeq(4, (1, 2, 4))
    assert is_good_sequence(good, "full") and is_good_sequence(good, "corner")
    witness = good_sequence_witness(bad, "full")
    assert witness is not None
    lines = [
        "discrepancy note (published worked example, n = 4):",
        "  the final not-good bullet names [2/4,2/4,1] with witness "
        "(1/4,1/4) (+) (2/4,2/4) = (3/4,3/4), but [2/4,2/4,1] is good "
        "(it also appears in the published good list).",
        "  the cited witness elements belong to [1/4,2/4,1], which is "
        "not good: " + witness.describe(4) + ".",
        "  adjudication: [2/4,2/4,1] classified good; [1/4,2/4,1] "
        "classified not good.",
    ]
    return "\n".join(lines)


# -- DOT export -----------------------------------------------------------------

def rel_lattice_to_dot(lat: RelLattice) -> str:
    """Hasse diagram; meet-irreducible nodes solid, others dashed."""
    lines = ["digraph Sn {", "  rankdir=BT;"]
    for i, seq in enumerate(lat.elements):
        style = "solid" if lat.meet_irreducible[i] else "dashed"
        lines.append(f'  n{i} [label="{seq.label()}", style={style}];')
    for i, cov in enumerate(lat.covers):
        for j in cov:
            lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
