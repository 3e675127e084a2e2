//! Built-in scenarios, one per verified result.

use serde_json::{json, Value};

use super::config::ScenarioConfig;

pub const DEMO_NAMES: [&str; 9] = [
    "theorem21i",
    "theorem21ii",
    "theorem21iii",
    "remark22",
    "lemma23",
    "lemma31",
    "lemma33",
    "lemma34",
    "theorem35",
];

fn rotation(theta: f64) -> [[f64; 2]; 2] {
    let (s, c) = theta.sin_cos();
    [[c, -s], [s, c]]
}

fn demo_json(name: &str) -> Option<Value> {
    Some(match name {
        "theorem21i" => json!({
            "name": name,
            "dim": 2,
            "norm_kind": "L2",
            "t_sequence": {"kind": "constant", "operator": {"matrix": rotation(0.7)}},
            "p_sequence": {"kind": "constant", "projector": {"range_basis": [[1.0], [0.0]], "kernel_basis": [[1.0], [1.0]]}},
            "x0": [0.6, 0.8],
            "max_k": 1000,
            "checks": ["check_bound_nonexpansive"]
        }),
        "theorem21ii" => json!({
            "name": name,
            "dim": 2,
            "norm_kind": "L2",
            "t_sequence": {
                "kind": "convergent",
                "limit": {"matrix": [[0.5, 0.0], [0.0, 0.5]], "offset": [1.0, 1.0]},
                "perturbation": {"matrix": [[0.2, -0.1], [0.3, 0.1]]},
                "rate": 0.9
            },
            "p_sequence": {"kind": "constant", "projector": {"orthogonal_range": [[1.0], [0.0]]}},
            "x0": [0.0, 0.0],
            "checks": ["check_convergent_contractive"]
        }),
        "theorem21iii" => json!({
            "name": name,
            "dim": 2,
            "norm_kind": "L2",
            "t_sequence": {
                "kind": "periodic",
                "operators": [
                    {"matrix": [[0.5, 0.0], [0.0, 0.5]], "offset": [1.0, 0.0]},
                    {"matrix": [[0.5, 0.0], [0.0, 0.5]], "offset": [0.0, 1.0]}
                ]
            },
            "x0": [0.0, 0.0],
            "max_k": 400,
            "strip_search": {"K_target": 0.5, "max_gap": 2, "horizon": 200},
            "checks": ["check_cluster_points", "check_strip_decay"]
        }),
        "remark22" => json!({
            "name": name,
            "dim": 2,
            "norm_kind": "L2",
            "seed": 22,
            "t_sequence": {"kind": "constant", "operator": {"matrix": [[1.0, 0.0], [0.0, 1.0]]}},
            "p_sequence": {"kind": "constant", "projector": {"range_basis": [[1.0], [0.0]], "kernel_basis": [[1.0], [1.0]]}},
            "x0": [1.0, 2.0],
            "max_k": 50,
            "checks": ["check_kernel_preimage_degeneracy"]
        }),
        "lemma23" => json!({
            "name": name,
            "dim": 2,
            "norm_kind": "L2",
            "t_sequence": {
                "kind": "convergent",
                "limit": {"matrix": [[0.5, 0.0], [0.0, 0.5]]},
                "perturbation": {"matrix": [[0.0, 2.0], [1.0, 0.0]]},
                "rate": 0.9
            },
            "p_sequence": {
                "kind": "convergent",
                "limit": {"range_basis": [[1.0], [0.0]], "kernel_basis": [[0.0], [1.0]]},
                "range_delta": [[0.0], [0.5]],
                "kernel_delta": [[0.5], [0.0]],
                "rate": 0.8
            },
            "x0": [1.0, 1.0],
            "max_k": 2000,
            "params": {"deltas": [0.1, 0.01], "horizon": 10000},
            "checks": ["check_asymptotic_contractivity"]
        }),
        "lemma31" => json!({
            "name": name,
            "dim": 2,
            "norm_kind": "L2",
            "seed": 31,
            "t_sequence": {
                "kind": "convergent",
                "limit": {"matrix": [[0.5, 0.1], [0.0, 0.4]]},
                "perturbation": {"matrix": [[0.3, -0.2], [0.1, 0.2]]},
                "rate": 0.9
            },
            "x0": [1.0, -2.0],
            "max_k": 2000,
            "params": {
                "factors": [
                    {
                        "kind": "convergent",
                        "limit": {"matrix": [[0.5, 0.1], [0.0, 0.4]]},
                        "perturbation": {"matrix": [[0.3, -0.2], [0.1, 0.2]]},
                        "rate": 0.9
                    },
                    {
                        "kind": "periodic",
                        "operators": [
                            {"matrix": [[0.0, 1.0], [1.0, 0.0]]},
                            {"matrix": [[1.0, 0.0], [0.0, 1.0]]}
                        ]
                    },
                    {"kind": "constant", "operator": {"matrix": [[0.8, 0.0], [0.2, 0.6]], "offset": [0.5, -0.5]}}
                ],
                "window": 2,
                "horizon": 400
            },
            "checks": ["check_composite_substitution"]
        }),
        "lemma33" => json!({
            "name": name,
            "dim": 2,
            "norm_kind": "L2",
            "t_sequence": {
                "kind": "convergent",
                "limit": {"matrix": [[0.5, 0.2], [0.1, 0.3]], "offset": [1.0, 0.0]},
                "perturbation": {"matrix": [[0.4, 0.0], [0.3, 0.2]]},
                "rate": 0.9
            },
            "x0": [0.0, 0.0],
            "max_k": 2000,
            "params": {
                "x_sequence": {"limit": [1.0, -1.0], "direction": [2.0, 1.0], "rate": 0.8},
                "horizon": 400
            },
            "checks": ["check_limit_continuity"]
        }),
        "lemma34" => json!({
            "name": name,
            "dim": 2,
            "norm_kind": "L2",
            "t_sequence": {
                "kind": "convergent",
                "limit": {"matrix": [[1.0, 2.0], [0.0, 1.0]]},
                "perturbation": {"matrix": [[0.5, 0.0], [0.0, 0.5]]},
                "rate": 0.7
            },
            "x0": [1.0, 0.0],
            "max_k": 200,
            "params": {"z_pair": [[1.0, 2.0], [-3.0, 0.5]], "horizon": 400},
            "checks": ["check_compactness_inequality"]
        }),
        "theorem35" => {
            let r = rotation(0.3);
            let a = [[1.2 * r[0][0], 0.3 * r[0][1]], [1.2 * r[1][0], 0.3 * r[1][1]]];
            let q = rotation(1.1);
            let b = [[0.5 * q[0][0], 0.5 * q[0][1]], [0.5 * q[1][0], 0.5 * q[1][1]]];
            json!({
                "name": name,
                "dim": 2,
                "norm_kind": "L2",
                "seed": 35,
                "t_sequence": {
                    "kind": "periodic",
                    "operators": [
                        {"matrix": a, "offset": [1.0, 0.0]},
                        {"matrix": b, "offset": [0.0, 1.0]}
                    ]
                },
                "x0": [1.0, 1.0],
                "max_k": 400,
                "strip_search": {"K_target": 0.9, "max_gap": 4, "horizon": 200, "samples": 4},
                "checks": ["check_cluster_points", "check_strip_decay"]
            })
        }
        _ => return None,
    })
}

pub fn demo_config(name: &str) -> Option<ScenarioConfig> {
    demo_json(name).map(|v| serde_json::from_value(v).expect("built-in demo configs are well-formed"))
}

/// Every built-in scenario, in listing order.
pub fn demo_configs() -> Vec<(&'static str, ScenarioConfig)> {
    DEMO_NAMES
        .iter()
        .map(|&n| (n, demo_config(n).expect("every listed demo exists")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_demo_builds() {
        for (name, cfg) in demo_configs() {
            assert_eq!(cfg.name.as_deref(), Some(name));
            cfg.build().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert!(demo_config("theorem99").is_none());
    }
}
