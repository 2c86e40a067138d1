"""Smoke test for the compiled `metaloop` extension module.

Build and run from the repository root:

    cargo build -p metaloop-py --release --features extension-module
    cp target/release/libmetaloop_py.so python/metaloop.so
    python3 python/smoke_test.py
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import metaloop  # noqa: E402


def main():
    m16 = metaloop.Structure.catalog("cd_basis", [3])
    assert m16.order == 16 and m16.identity == 0
    assert m16.classify() == "central-metagroup"
    assert metaloop.center(m16) == [0, 1]
    assert metaloop.is_metagroup(m16) == (True, None)
    e1, e2, e4 = 2, 4, 8
    assert metaloop.associator(m16, e1, e2, e4) == 1, "(e1 e2) e4 = -e1 (e2 e4)"

    report = metaloop.verify(m16, "group")
    assert not report.passed
    failed = [item for item in report.items if item[1] == "fail"]
    assert failed[0][0] == "associative" and len(failed[0][2]) == 3

    z4 = metaloop.Structure([[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]])
    assert z4.div_l(1, 0) == 3 and z4.div_r(0, 1) == 3 and z4.inv_l(1) == 3
    assert metaloop.Structure.from_json(z4.to_json()) == z4

    reps, psi, tau, checks = metaloop.transversal(m16, [0, 1, 2, 3, 4, 5, 6, 7])
    assert reps == [0, 8] and checks.passed
    assert all(m16.mul(psi[d], tau[d]) == d for d in range(16))

    quo, pi = metaloop.quotient(m16, [0, 1])
    assert quo.order == 8 and quo.classify() == "group"
    assert all(quo.mul(x, x) == 0 for x in range(8))

    z2 = metaloop.Structure.catalog("cyclic", [2])
    xi = [[2 if x // 4 == 1 and y // 4 == 1 else 0 for y in range(8)] for x in range(8)]
    g, factors, invariance = metaloop.smashed_product(z2, metaloop.Structure.catalog("cyclic", [4]), xi=xi)
    assert g.is_loop() and factors.passed and invariance.passed
    assert metaloop.direct_product(z2, z2) == metaloop.Structure.catalog("klein")

    w, checks = metaloop.wreath_product(z2, [0], z2)
    assert w.order == 8 and w.classify() == "group" and not w.is_commutative()
    assert checks.passed

    sierpinski = metaloop.check_continuity(z2, [[], [1], [0, 1]])
    assert not sierpinski.passed
    assert metaloop.check_continuity(z2, [[], [0], [1], [0, 1]]).passed

    assert metaloop.search_small(5, "group", jobs=2) == (56, 6)
    try:
        metaloop.search_small(7)
    except MemoryError:
        pass
    else:
        raise AssertionError("order 7 should exceed the exhaustive bound")
    try:
        metaloop.Structure([[0, 1], [1, 5]])
    except ValueError:
        pass
    else:
        raise AssertionError("out-of-range entry accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
