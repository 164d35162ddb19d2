//! The rigidity invariant of L_{1,2} from the BPZ equation, and the left
//! trace it normalizes to.

use virasoro_fusion::bpz::{left_trace_check, ode_residual, psi, rigidity_routes};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in 2..=8 {
        let r = rigidity_routes(p)?;
        let res = ode_residual(p, |x| psi(p, x), 0.7);
        println!(
            "p = {p}: closed {:+.10} series {:+.10} diff {:.1e} residual {:.1e} trace {:+.10}",
            r.closed_form,
            r.series,
            r.difference,
            res,
            left_trace_check(p)?
        );
    }
    Ok(())
}
