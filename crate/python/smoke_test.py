"""Smoke test for the llfact extension module.

Build it first, for example with `maturin develop -m crates/py/Cargo.toml`,
or copy `target/release/libllfact.so` to `llfact.so` on the Python path.
"""

import llfact


def main():
    a3 = llfact.Group("A3")
    assert a3.degrees == [2, 3, 4]
    assert a3.order == 24
    assert a3.enumerated_order() == 24
    c = a3.coxeter_element()
    assert c.order() == a3.coxeter_number == 4
    assert a3.reflection_length(c) == 3
    assert llfact.Element.from_bytes(c.to_bytes()) == c

    nc = llfact.NcPoset(a3)
    assert len(nc) == 14 == llfact.catalan("A3")
    assert nc.count_multichains(2) == llfact.catalan("A3", 2) == 55
    assert nc.count_reduced_decompositions() == llfact.ll_number("A3") == 16
    assert nc.count_fact([2, 1]) == 6
    rows = sorted((r["label"], r["r"], r["u"], r["count"]) for r in nc.submaximal_rows())
    assert rows == [("A1×A1", 2, 3, 4), ("A2", 3, 6, 8)], rows

    row = llfact.expected_ll_data("H3")
    assert row["prefactor"] == "5/6"
    assert row["entries"] == [(2, 6), (3, 6), (5, 6)]
    assert llfact.expected_ll_data("G(3,1,3)") is None
    assert llfact.ll_number("E8") == 37968750

    report = llfact.verify("H3")
    assert all(check["pass"] for check in report["checks"])
    assert report["meta"]["seconds"] is None

    report = llfact.verify("G(3,1,3)", p_max=2)
    failed = [check["name"] for check in report["checks"] if not check["pass"]]
    assert len(failed) == 1 and failed[0].endswith("r = 2h'/d1'"), failed

    for bad in ("X7", "G(4,2,3)"):
        try:
            llfact.Group(bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"{bad} should be rejected")
    try:
        llfact.verify("E8")
    except RuntimeError as e:
        assert "budget" in str(e)
    else:
        raise AssertionError("E8 should exceed the budget")

    print("llfact", llfact.__version__, "smoke test ok")


if __name__ == "__main__":
    main()
