use entrocone::bounds::{maxmin_hypotheses, same_marginal_hypotheses};
use entrocone::oracle::{verify_universal, Conclusion, GridSpec};
use std::time::Instant;

fn main() {
    let start = Instant::now();
    for supports in [vec![2, 2, 2], vec![3, 3, 3]] {
        for d in [6u32, 12, 24] {
            let t = Instant::now();
            let spec = GridSpec::new(supports.clone(), d, same_marginal_hypotheses()).unwrap();
            let r1 = verify_universal(&spec, Conclusion::MarginalEquality, 2.0).unwrap();
            let r2 = verify_universal(&spec, Conclusion::EntropyEquality, 2.0).unwrap();
            let spec2 = GridSpec::new(supports.clone(), d, maxmin_hypotheses()).unwrap();
            let r3 = verify_universal(&spec2, Conclusion::MaxMin, 2.0).unwrap();
            println!(
                "supports {supports:?} D={d}: same-marginal checked={} fail={} | entropy fail={} | maxmin checked={} fail={} | {:?}",
                r1.checked, r1.failures.len(), r2.failures.len(), r3.checked, r3.failures.len(), t.elapsed()
            );
        }
    }
    println!("total: {:?}", start.elapsed());
}
