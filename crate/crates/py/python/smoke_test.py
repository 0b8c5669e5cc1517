"""Smoke test for the compiled `laser` extension module.

Build and install first, e.g. `maturin develop --release` from crates/py.
"""

import tempfile

import laser


def main():
    g = laser.lollipop(12, 64)
    assert (g.n, g.m) == (76, 12 + 64 * 63 // 2)
    assert g.is_connected()

    seq = laser.rewire(g, snapshots=2, rho=0.25, seed=3)
    assert seq.num_levels == 2
    flat = seq.flatten(2)
    assert flat.m == g.m + sum(seq.undirected_added_per_level())

    report = laser.metrics(g, seq)
    er = report["total_er_per_level"]
    assert all(b <= a for a, b in zip(er, er[1:])), er

    with tempfile.TemporaryDirectory() as tmp:
        seq.write(tmp + "/snap")
        back = laser.SnapshotSequence.read(tmp + "/snap", g)
        assert back.level_edges(1) == seq.level_edges(1)

    ablation = laser.ablate_lollipop(seeds=3)
    assert ablation["laser_preserves_locality_better"]
    assert ablation["spectral_bound_holds"]

    r, ct = laser.effective_resistance(laser.path(4), 0, 3)
    assert abs(r - 3.0) < 1e-9 and abs(ct - 18.0) < 1e-9

    print("laser", laser.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
