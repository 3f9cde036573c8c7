"""Smoke test for the Python bindings.

Build and install first:  pip install --no-build-isolation -e crates/py
Then run:                 python python/smoke_test.py
"""

import sys

import omega23


def main() -> int:
    pair = omega23.generate(9, 3, a=2)
    assert pair["params"]["case"] == "A"
    assert pair["x"]["rows"] == 9

    report = omega23.verify(15, 7)
    failed = [c["name"] for c in report["checks"] if c["status"] == "fail"]
    assert not failed, failed

    forced = omega23.verify(9, 3, a=1, force=True)
    assert any(c["status"] == "fail" for c in forced["checks"])

    # extension-field parameters are coefficient lists
    assert omega23.search_a(9, 9)["values"][0] == [0, 1]
    omega23.verify(12, 9, a=[1, 1], suite="structural")

    assert omega23.element_order(9, 5, "[x,y]", a=2, force=True) == 156

    cert = omega23.certify(9, 3, a=2, seed=omega23.DEFAULT_SEED)
    assert cert["verdict"] == "Generates", cert
    assert int(cert["computed_order"]) == omega23.omega_order(9, "circ", 3)

    assert omega23.witt_type(18, 3) == "minus"
    assert omega23.omega_order(3, "circ", 5) == 60

    try:
        omega23.generate(10, 3)
    except ValueError as e:
        assert "unsupported" in str(e)
    else:
        raise AssertionError("n = 10 should be rejected")

    print("python smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
