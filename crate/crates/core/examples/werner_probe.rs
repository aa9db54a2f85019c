use std::time::Instant;

use sqchsh::inputs::{build_pair, EncodingScheme};
use sqchsh::sdp::{build_werner, solve, SolveOptions};
use sqchsh::sweep::objective_to_bell;

fn main() {
    let pair = build_pair(EncodingScheme::PauliXY);
    let opts = SolveOptions::default();
    for xi in [0.1, 0.2, 0.3, 0.4, 0.5, 0.6] {
        let t0 = Instant::now();
        let problem = build_werner(xi, &pair, false).unwrap();
        let built = t0.elapsed();
        let t1 = Instant::now();
        let sol = solve(&problem, &opts).unwrap();
        let solved = t1.elapsed();
        println!(
            "xi={xi:.4} status={:?} S={:.7} gap={:.2e} iters={} res_p={:.2e} res_d={:.2e} build={:?} solve={:?}",
            sol.status,
            objective_to_bell(sol.primal_objective, 0.5),
            sol.gap,
            sol.iterations,
            sol.residuals.primal,
            sol.residuals.dual,
            built,
            solved
        );
    }
}
