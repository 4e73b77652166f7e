import pytest

from pmvdual.chain import Subalgebra
from pmvdual.errors import (MalformedSequenceError, NotASubalgebraError,
                            SizeLimitError)
from pmvdual.relations import (BinRel, GoodSeq, adjudicate_n4_discrepancy,
                               bottom_seq, candidate_sequences,
                               classify_square_subalgebra, compute_Sn,
                               format_frac, good_sequence_witness,
                               is_good_sequence, is_square_subalgebra,
                               leq_rel, lhd_rel, meet_irreducibles,
                               oracle_classify, parse_seq_label, rectangle,
                               rel_lattice_to_dot, rel_to_seq, seq_to_rel,
                               sn_relations, square_subalgebras_oracle,
                               top_seq)


def test_lhd_and_leq():
    r = lhd_rel(2)
    assert r.pairs == {(0, 0), (0, 1), (0, 2), (1, 2), (2, 2)}
    assert lhd_rel(4).pairs < leq_rel(4).pairs


def test_rectangle():
    s = (Subalgebra(4, (0, 1, 2, 3, 4)), Subalgebra(4, (0, 1, 2, 3, 4)))
    rect = rectangle(4, s, 1, 3)
    assert rect == {(0, 3), (0, 4), (1, 3), (1, 4)}
    with pytest.raises(ValueError):
        rectangle(4, s, 3, 1)


def test_rectangle_respects_the_given_product():
    s = ((0, 2, 4), (0, 2, 4))
    assert rectangle(4, s, 2, 2) == {(0, 2), (0, 4), (2, 2), (2, 4)}
    with pytest.raises(ValueError):
        rectangle(4, s, 1, 2)


def test_sequence_validation():
    GoodSeq(4, (2, 2, 4))
    with pytest.raises(MalformedSequenceError):
        GoodSeq(4, (2, 2))                     # wrong length
    with pytest.raises(MalformedSequenceError):
        GoodSeq(4, (0, 2, 4))                  # y_1 < 1
    with pytest.raises(MalformedSequenceError):
        GoodSeq(4, (3, 2, 4))                  # not nondecreasing


def test_labels():
    assert GoodSeq(4, (2, 2, 4)).label() == "[2/4,2/4,1]"
    assert top_seq(4).label() == "[1/4,2/4,3/4]"
    assert parse_seq_label("[2/4,2/4,1]", 4) == (2, 2, 4)
    assert format_frac(0, 4) == "0"


def test_seq_rel_roundtrip():
    for n in (2, 3, 4, 5):
        for seq in compute_Sn(n).elements:
            assert rel_to_seq(seq_to_rel(seq)) == seq
    assert seq_to_rel(bottom_seq(3)).pairs == lhd_rel(3).pairs
    assert seq_to_rel(top_seq(3)).pairs == leq_rel(3).pairs


def test_rel_to_seq_rejects_non_members():
    with pytest.raises(NotASubalgebraError):
        rel_to_seq(BinRel(2, frozenset({(0, 0), (2, 2)})))


def test_candidate_counts_are_catalan():
    assert [len(candidate_sequences(n)) for n in range(1, 7)] == \
        [1, 2, 5, 14, 42, 132]


def test_good_sequence_examples_at_n4():
    assert is_good_sequence(GoodSeq(4, (2, 2, 4)), "corner")
    assert is_good_sequence(GoodSeq(4, (2, 2, 4)), "full")
    w = good_sequence_witness(GoodSeq(4, (1, 2, 4)), "full")
    assert w is not None
    assert (w.op, w.left, w.right, w.result) == \
        ("oplus", (1, 1), (2, 2), (3, 3))
    assert "(1/4,1/4) (+) (2/4,2/4) = (3/4,3/4)" in w.describe(4)


def test_corner_mode_equals_full_mode_up_to_n6():
    for n in range(1, 7):
        for seq in candidate_sequences(n):
            assert is_good_sequence(seq, "corner") == \
                is_good_sequence(seq, "full"), seq


def test_lattice_sizes():
    assert [len(compute_Sn(n).elements) for n in range(1, 7)] == \
        [1, 2, 3, 7, 13, 37]


def test_n4_lattice_matches_the_published_diagram():
    lat = compute_Sn(4)
    ys = [s.y for s in lat.elements]
    assert ys == [(4, 4, 4), (3, 4, 4), (3, 3, 4), (2, 4, 4),
                  (2, 3, 4), (2, 2, 4), (1, 2, 3)]
    assert lat.covers == ((1,), (2, 3), (4,), (4,), (5,), (6,), ())
    # only [3/4,1,1] fails to be meet-irreducible
    assert lat.meet_irreducible == (True, False, True, True, True, True, True)
    assert [s.label() for s in meet_irreducibles(lat)] == \
        ["[1,1,1]", "[3/4,3/4,1]", "[2/4,1,1]", "[2/4,3/4,1]",
         "[2/4,2/4,1]", "[1/4,2/4,3/4]"]


def test_bottom_and_top():
    lat = compute_Sn(4)
    assert lat.bottom.y == (4, 4, 4)
    assert lat.top.y == (1, 2, 3)
    assert lat.leq(0, 6) and not lat.leq(6, 0)


def test_sn_relations_are_square_subalgebras():
    for n in (2, 3, 4):
        for rel in sn_relations(n).values():
            assert is_square_subalgebra(rel)
            assert lhd_rel(n).pairs <= rel.pairs <= leq_rel(n).pairs


def test_oracle_agrees_with_the_algorithm():
    for n in range(1, 5):
        algo = {s.y for s in compute_Sn(n).elements}
        between = {rel_to_seq(r).y for r in square_subalgebras_oracle(n)
                   if lhd_rel(n).pairs <= r.pairs}
        assert algo == between


def test_oracle_counts():
    assert [len(square_subalgebras_oracle(n)) for n in range(1, 7)] == \
        [2, 7, 8, 23, 18, 79]
    with pytest.raises(SizeLimitError):
        square_subalgebras_oracle(7)


def test_oracle_classification():
    for n in range(1, 5):
        for r in square_subalgebras_oracle(n):
            assert oracle_classify(r) in ("diagonal", "restriction")


def test_classify_square_subalgebra():
    assert classify_square_subalgebra(leq_rel(2)) == "sub_of_leq"
    assert classify_square_subalgebra(leq_rel(2).converse()) == "sub_of_geq"
    diag = BinRel(2, frozenset({(0, 0), (1, 1), (2, 2)}))
    assert classify_square_subalgebra(diag) == "diagonal"
    full = BinRel(2, frozenset((x, y) for x in range(3) for y in range(3)))
    assert classify_square_subalgebra(full) == "product"
    with pytest.raises(NotASubalgebraError):
        classify_square_subalgebra(BinRel(2, frozenset({(0, 0)})))


def test_adjudication_note():
    note = adjudicate_n4_discrepancy()
    assert "[2/4,2/4,1]" in note and "[1/4,2/4,1]" in note
    assert "(1/4,1/4) (+) (2/4,2/4) = (3/4,3/4)" in note


def test_dot_export_styles():
    dot = rel_lattice_to_dot(compute_Sn(4))
    assert dot.count("style=dashed") == 1        # exactly [3/4,1,1]
    assert "digraph" in dot
