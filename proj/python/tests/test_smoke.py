import pytest

import drinfeld


def test_order_table_q3():
    table = drinfeld.order_table(3)
    assert table["omega0"] == (-1, 3)
    assert table["omega1"] == (3, -1)
    assert table["L0"] == (1, -1)
    assert table["omega_log"] == (2, 2)
    assert drinfeld.orders_match_closed_form(3, 2)


def test_bundle_info_weight_and_decompositions():
    info = drinfeld.bundle_info(5, k0=-1, k1=5)
    assert info["weight"] == -1
    assert info["positivity"] == "mixed"
    assert len(info["decompositions"]) == 4
    assert info["q"] == 5
    assert set(info["types"]) == {"t00", "t01", "t10", "t11"}
    assert info["vanishing_prediction"] == "indeterminate"


def test_small_cohomology():
    assert drinfeld.cohomology(3, 1, 1, radius=1)["h0"] == 6
    neg = drinfeld.cohomology(3, -1, -1, radius=1)
    assert (neg["h0"], neg["h1"]) == (0, 4)
    mixed = drinfeld.cohomology(3, -2, 4, radius=1)
    assert (mixed["h0"], mixed["h1"]) == (1, 4)
    assert mixed["predicted"] == (1, 4)


@pytest.mark.parametrize("seed", [0, 3, 11])
def test_euler_identity_and_gauge(seed):
    ref = drinfeld.cohomology(3, 4, -2, radius=3)
    res = drinfeld.cohomology(3, 4, -2, radius=3, seed=seed)
    assert res["h0"] - res["h1"] == res["euler"]
    assert (res["h0"], res["h1"]) == (ref["h0"], ref["h1"])


def test_vanishing_scan():
    scan = drinfeld.vanishing_scan(3, 4)
    assert len(scan["pi_zeros"]) == 3
    assert len(scan["f_zeros"]) == 9
    assert scan["pi_divisor_degree"] == 4
    assert scan["f_divisor_degree"] == 10


def test_hecke_and_supersingular():
    rec = drinfeld.hecke_recurrence(3, 0, 3)
    assert rec["ok"]
    assert rec["powers"][1] == [1, 0, 1]
    assert drinfeld.jordan_holder_ok(3, 1)
    assert drinfeld.phi_tilde_lambda(3, 1, 0, 0) not in (None, 0)
    assert drinfeld.supersingular_quotient_dim(3, 1, 1, radius=1) == 2
    match = drinfeld.enumerate_and_match(3)
    assert match["bundle_count"] == match["rep_count"] == 12
    assert match["bijective"]


def test_errors_map_to_exceptions():
    with pytest.raises(drinfeld.PreconditionError):
        drinfeld.cohomology(3, 1, 0)
    with pytest.raises(drinfeld.ConfigError):
        drinfeld.order_table(4)
    with pytest.raises(drinfeld.ResourceError):
        drinfeld.cohomology(7, 1, 5, radius=12)
    with pytest.raises(drinfeld.WindowError):
        drinfeld.phi_tilde_lambda(3, 1, 0, 0, radius=2)
    assert issubclass(drinfeld.ConfigError, drinfeld.DrinfeldError)


def test_acceptance_subset_and_forced_failure():
    results = drinfeld.run_acceptance(only=[1, 10])
    assert [r["id"] for r in results] == [1, 10]
    assert all(r["passed"] for r in results)
    forced = drinfeld.run_acceptance(only=[1], force_fail=1)
    assert not forced[0]["passed"]
