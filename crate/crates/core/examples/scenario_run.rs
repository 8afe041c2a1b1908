//! Runs a scenario from an inline config and prints its checks.

use qclab::scenario::{run_scenario, RunOptions, Scenario};

const CONFIG: &str = r#"
name = "example_sphere"
grid = 65
diagnostics = ["beltrami", "fit_poisson", "chart_constants", "energy"]

[domain]
kind = "disk"

[surface]
name = "sphere_cap"

[boundary]
expr = "exp(i*(t + 0.3*sin(t)))"

[solver]
kind = "rho_harmonic"

[expect]
k_max = 0.5
residual_max = 1e-8
energy_rel_tol = 0.02
"#;

fn main() -> qclab::Result<()> {
    let scenario = Scenario::from_toml(CONFIG)?;
    let out = std::env::temp_dir().join("qclab-example");
    let report = run_scenario(
        &scenario,
        &RunOptions {
            out: Some(out),
            ..RunOptions::default()
        },
    )?;
    for c in &report.checks {
        println!(
            "{:<16} {:<5} measured {} threshold {}",
            c.name, c.passed, c.measured, c.threshold
        );
    }
    println!("artifacts: {:?}", report.artifacts);
    println!("{}", if report.passed() { "passed" } else { "failed" });
    Ok(())
}
