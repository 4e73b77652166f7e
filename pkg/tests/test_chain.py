import pytest
from hypothesis import given, strategies as st

from pmvdual.chain import (Chain, Subalgebra, chain_subalgebras, divisors,
                           subalgebra_oracle)
from pmvdual.errors import InvalidElementError, SizeLimitError


def test_operation_values_on_the_five_element_chain():
    c = Chain(4)
    assert c.oplus(1, 2) == 3
    assert c.oplus(3, 3) == 4          # truncation at 1
    assert c.odot(3, 3) == 2           # 3/4 + 3/4 - 1 = 1/2
    assert c.odot(1, 2) == 0           # truncation at 0
    assert c.meet(1, 3) == 1 and c.join(1, 3) == 3


def test_tau_threshold():
    c = Chain(4)
    assert [c.tau(2, x) for x in c.elements] == [0, 0, 4, 4, 4]
    assert [c.tau(0, x) for x in c.elements] == [4] * 5


def test_tau_is_term_definable_from_the_monoid_operations():
    # tau_d(x) arises by iterating oplus on odot-powers: both checked
    # extensionally against the closure of {x} under the operations.
    c = Chain(4)
    for d in range(1, 5):
        for x in c.elements:
            closure = {x, 0, 4}
            changed = True
            while changed:
                changed = False
                for u in list(closure):
                    for v in list(closure):
                        for name in ("meet", "join", "oplus", "odot"):
                            w = c.op(name, u, v)
                            if w not in closure:
                                closure.add(w)
                                changed = True
            assert c.tau(d, x) in closure


def test_element_range_is_enforced():
    c = Chain(3)
    with pytest.raises(InvalidElementError):
        c.meet(0, 4)
    with pytest.raises(ValueError):
        Chain(0)


@given(st.integers(1, 9), st.data())
def test_monoid_laws(n, data):
    c = Chain(n)
    x = data.draw(st.integers(0, n))
    y = data.draw(st.integers(0, n))
    z = data.draw(st.integers(0, n))
    assert c.oplus(x, y) == c.oplus(y, x)
    assert c.odot(x, y) == c.odot(y, x)
    assert c.oplus(c.oplus(x, y), z) == c.oplus(x, c.oplus(y, z))
    assert c.odot(c.odot(x, y), z) == c.odot(x, c.odot(y, z))
    assert c.oplus(x, 0) == x and c.odot(x, n) == x
    # monotonicity
    if x <= y:
        assert c.oplus(x, z) <= c.oplus(y, z)
        assert c.odot(x, z) <= c.odot(y, z)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(7) == [1, 7]


def test_subalgebras_are_the_divisor_family():
    c = Chain(6)
    subs = chain_subalgebras(c)
    carriers = [s.carrier for s in subs]
    assert carriers == [(0, 6), (0, 3, 6), (0, 2, 4, 6), (0, 1, 2, 3, 4, 5, 6)]


@pytest.mark.parametrize("n", range(1, 13))
def test_subalgebras_match_brute_force(n):
    c = Chain(n)
    assert sorted(s.carrier for s in chain_subalgebras(c)) == \
        sorted(s.carrier for s in subalgebra_oracle(c))


def test_oracle_size_limit():
    with pytest.raises(SizeLimitError):
        subalgebra_oracle(Chain(13))


def test_subalgebra_json_roundtrip():
    s = Subalgebra(6, (0, 3, 6))
    assert Subalgebra.from_json(s.to_json()) == s
