import pytest

from rootsum import UsageError, check_identity
from rootsum.identities import IDENTITIES, cases_to_csv, default_params


def test_hand_evaluations():
    c = check_identity("identity_3_3", [(2,)])[0]
    assert (c.raw_lhs, c.rhs, c.holds) == (8, 8, True)
    c = check_identity("chu_vandermonde", [(2, 2)])[0]
    assert (c.raw_lhs, c.rhs) == (6, 6)
    c = check_identity("remark_3_4_a", [(1, 1)])[0]
    assert c.raw_lhs == 6 and c.lhs == c.rhs == 12 and c.denominator == 2


def test_l_equals_m_reduction():
    for m in range(1, 30):
        c = check_identity("identity_33", [(m, m)])[0]
        assert c.holds


@pytest.mark.parametrize("name", sorted(IDENTITIES))
def test_small_ranges_hold(name):
    cases = check_identity(name, default_params(name, 6))
    assert cases and all(c.holds and c.divisible for c in cases)


def test_a_broken_identity_is_reported():
    # shifting m breaks the right side; the checker must notice
    lhs, num, den = IDENTITIES["identity_33"](5, 3)
    assert lhs * den == num
    lhs2, _, _ = IDENTITIES["identity_33"](5, 4)
    assert lhs2 * den != num


def test_bad_arguments():
    with pytest.raises(UsageError):
        check_identity("nope", [(1,)])
    with pytest.raises(UsageError):
        check_identity("identity_3_3", [(1, 2)])


def test_csv():
    text = cases_to_csv(check_identity("chu_vandermonde_central", [(3,)]))
    assert text == "name,params,lhs,rhs,holds\nchu_vandermonde_central,3,20,20,True\n"
