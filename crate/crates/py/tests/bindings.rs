use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::wrap_pymodule;

fn run(code: &str) {
    Python::attach(|py| {
        let module = wrap_pymodule!(laser::laser)(py);
        let globals = PyDict::new(py);
        globals.set_item("laser", module).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&code, Some(&globals), None) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn graph_round_trip_and_measures() {
    run(r#"
g = laser.Graph.parse("0 1\n1 2\n")
assert (g.n, g.m) == (3, 2)
assert g.distance_matrix() == [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
assert g.walk_counts(2) == [[2.0, 2.0, 1.0], [2.0, 3.0, 2.0], [1.0, 2.0, 2.0]]
assert laser.Graph.parse(g.to_edge_list()) == g
r, ct = laser.effective_resistance(laser.path(4), 0, 3)
assert abs(r - 3.0) < 1e-9 and abs(ct - 18.0) < 1e-9
assert abs(laser.total_effective_resistance(laser.clique(3)) - 2.0) < 1e-9
assert abs(laser.spectral_gap(laser.cycle(4)) - 1.0) < 1e-9
two = laser.Graph(4, [(0, 1), (2, 3)])
assert two.distance_matrix()[0] == [0, 1, -1, -1]
"#);
}

#[test]
fn rewiring_and_reports() {
    run(r#"
seq = laser.rewire(laser.path(5), snapshots=1, rho=1.0)
assert sorted((min(a, b), max(a, b)) for a, b in seq.level_edges(1)) == [(0, 2), (0, 2), (1, 3), (1, 3), (2, 4), (2, 4)]
assert seq.flatten(1).m == 7
assert seq.undirected_added_per_level() == [3]
report = laser.metrics(seq.base, seq)
assert len(report["frobenius_per_level"]) == 2
assert laser.rewire(laser.path(5), rho=0.0).num_levels == 0
try:
    laser.rewire(laser.path(5), rho=2.0)
    raise SystemExit("expected ValueError")
except ValueError:
    pass
try:
    laser.Graph.parse("0 0\n")
    raise SystemExit("expected ValueError")
except ValueError:
    pass
s = laser.sensitivity(laser.rewire(laser.path(7), rho=0.0), 0, 6, layers=3, shortcut=3)
assert s["prop1"]["holds"] and s["expected_norm"] == 0.0
"#);
}
