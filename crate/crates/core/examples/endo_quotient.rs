// Endofunctors modulo natural isomorphism, and whether every invertible class
// contains an automorphism.

use fincat::quotient::{build_quotient, verify_eta_iff_no_proper, QuotientOptions};
use fincat::{catalog, SearchOptions};

pub fn run_example() -> fincat::Result<()> {
    let opts = QuotientOptions::unlimited(SearchOptions::default());
    for name in ["discrete:2", "isopair", "p4", "e3"] {
        let c = catalog::catalog(name)?.category();
        let q = build_quotient(&c, opts)?;
        let check = verify_eta_iff_no_proper(&c, opts)?;
        println!(
            "{name:>10}: |End| = {:>2}, |End0| = {:>2}, |Aut0| = {}, η* surjective = {}, verdict = {}",
            q.endofunctors().len(),
            q.end0_size(),
            q.aut0_size(),
            q.eta_star_surjective(),
            check.verdict.as_str()
        );
        assert!(check.agrees());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fincat::Result<()> {
    run_example()
}
