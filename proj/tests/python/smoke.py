"""Smoke tests for the Python bindings; runs with plain asserts."""

import soergel_py


def main():
    ws = soergel_py.Workspace("A2", 3)
    assert ws.rank == 2
    assert ws.size == 6

    assert ws.canonical([1, 0, 1]) == "sts"
    assert ws.length([0, 0, 1]) == 1
    assert ws.bruhat_leq([0], [0, 1, 0])
    assert not ws.bruhat_leq([0], [1])

    assert ws.kl_h([0], [0, 1, 0]) == "v^2"
    assert ws.kl_P([0], [0, 1, 0]) == {0: 1}

    chars = ws.leaf_characters([0, 1, 0])
    assert chars["sts"] == "1"
    assert chars["e"] == "v+v^3"

    mult = ws.multiplicities([0, 1, 0])
    assert mult["sts"] == "1"
    assert mult["s"] == "1"
    assert mult["e"] == "0"

    cells = ws.cell_data([0, 1, 0])
    assert cells["s"]["gd_cell"] == "1+v^2"
    assert cells["s"]["gd_simple"] == "1"

    cert = ws.certify_phi([0, 1, 0], [], [0])
    assert cert == {"intertwines": True, "injective": True, "graded_embedding": True}

    report = ws.monotonicity(3)
    assert report["triples_checked"] == 44
    assert report["violations"] == []

    try:
        soergel_py.Workspace("NoSuch", 3)
    except soergel_py.SoergelError:
        pass
    else:
        raise AssertionError("unknown preset accepted")

    print("python smoke: ok")


if __name__ == "__main__":
    main()
