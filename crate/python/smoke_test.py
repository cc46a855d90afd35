"""Smoke test for the virtcorr Python extension.

Run after `maturin develop -m crates/python/Cargo.toml`, or after
`cargo build -p virtcorr-py --release` (the script then loads the freshly
built library from target/release directly).
"""

import importlib.machinery
import importlib.util
import math
import pathlib
import sys


def load():
    try:
        import virtcorr

        return virtcorr
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for name in ("libvirtcorr_py.so", "libvirtcorr_py.dylib", "virtcorr_py.dll"):
        path = root / "target" / "release" / name
        if path.exists():
            loader = importlib.machinery.ExtensionFileLoader("virtcorr", str(path))
            spec = importlib.util.spec_from_file_location("virtcorr", path, loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("virtcorr extension not found; build it with cargo or maturin first")


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    vc = load()

    assert vc.wedge_basis(3) == [(1, 2), (1, 3), (2, 3)]

    mixed = vc.DensityMatrix.from_diagonal([1 / 3, 1 / 3, 1 / 3])
    report = vc.embed(mixed, 3).negativity()
    assert close(report.negativity, 1 / 3), report
    assert report.entangled

    for seed in range(5):
        pure = vc.DensityMatrix.random_pure(3, seed)
        state = vc.embed(pure)
        assert close(state.negativity().negativity, 0.5)
        assert close(state.entanglement_entropy(), math.log(2))
        ev = vc.reduced_fermion_state(pure).eigenvalues()
        assert close(ev[0], 0.5) and close(ev[1], 0.5) and close(ev[2], 0.0)

    rho = vc.DensityMatrix.random_mixed(3, 7)
    back = vc.embed(rho).extract()
    diff = max(abs(x - y) for rx, ry in zip(rho.to_list(), back.to_list()) for x, y in zip(rx, ry))
    assert diff < 1e-12

    cubic = vc.diagonal_cubic_analysis([1 / 3, 1 / 3, 1 / 3])
    assert all(close(r, e) for r, e in zip(cubic.roots, [-2 / 3, 1 / 3, 1 / 3]))

    pt = vc.partial_transpose(vc.embed(mixed).density(), 3, 3, "B")
    assert min(vc.hermitian_eigenvalues(pt)) < 0

    try:
        vc.DensityMatrix([[0.9, 0], [0, 0]])
    except vc.VirtcorrError as err:
        assert "TraceNotOne" in str(err)
    else:
        raise AssertionError("invalid trace accepted")

    rows = vc.simplex_sweep(0.5)
    assert len(rows) == 6

    failed = [row for row in vc.verify() if not row[2]]
    assert not failed, failed

    print("virtcorr python smoke test: ok")


if __name__ == "__main__":
    main()
