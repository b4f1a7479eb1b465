"""Smoke test for the stable_kneser Python extension.

Builds the extension with cargo when no library path is given, copies it
next to a temporary import path under the module name, and exercises the
main entry points.

    python3 python/smoke_test.py [path/to/libstable_kneser_py.so]
"""

import importlib
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def library_path(argv):
    if len(argv) > 1:
        return Path(argv[1])
    subprocess.run(
        ["cargo", "build", "--release", "-p", "stable-kneser-py"],
        cwd=ROOT,
        check=True,
    )
    release = ROOT / "target" / "release"
    for name in ("libstable_kneser_py.so", "libstable_kneser_py.dylib", "stable_kneser_py.dll"):
        if (release / name).exists():
            return release / name
    sys.exit("built library not found in target/release")


def load(lib):
    tmp = Path(tempfile.mkdtemp())
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    shutil.copy(lib, tmp / f"stable_kneser{suffix}")
    sys.path.insert(0, str(tmp))
    return importlib.import_module("stable_kneser")


def main():
    sk = load(library_path(sys.argv))

    h = sk.stable_kneser(6, [1, 4])
    assert len(h) == 9 and h.svec == [1, 4], h
    assert h.vertices()[0] == [1, 2]
    chi = h.chromatic_number(budget=10)
    assert chi["chi"] == 3, chi
    colors = chi["certificate"]["assignment"]
    assert h.validate_coloring(colors)["proper"]
    parts = h.st_partition(colors)["parts"]
    assert len(parts) == 3, parts

    assert sk.stable_kneser(2, [1, 2]).chromatic_number()["chi"] == "NEG_INFINITY"

    schrijver = sk.stable_kneser(8, [2, 2])
    assert schrijver.chromatic_number()["chi"] == 6
    block = schrijver.coloring("block")
    assert schrijver.validate_coloring(block)["proper"] and max(block) <= 6

    opt = schrijver.chromatic_number()["certificate"]["assignment"]
    report = sk.tucker_check(8, [2, 2], opt)
    assert report["condition1_violation_count"] == 0
    assert report["condition2_violation_count"] == 0

    assert sk.w_graph_alpha(10, 2, 4)[0] == 4
    assert sk.w_graph_butterfly(10, 2, 4) is None
    assert sk.w_graph_butterfly(7, 1, 4) == [4, 1, 2, 6, 7]

    assert sk.is_vec_stable([1, 3], 6, [2, 2])
    assert not sk.is_vec_stable([1, 6], 6, [1, 4])
    assert sk.mod_condition(12, 2, 1)["rho"] == 6 % 3

    record = sk.verify("uniform", 12, [6, 6], "corollary-1.4", r=4)
    assert record["verdict"] == "MATCH", record
    assert "kg4-six-stable" in sk.claims()

    try:
        sk.stable_kneser(5, [])
    except ValueError:
        pass
    else:
        raise AssertionError("empty stability vector accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
