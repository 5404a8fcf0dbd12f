//! Exhaustive enumeration at D = 4: all 16 outcomes, their probabilities,
//! and which of them the receivers can correct locally.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use teleclone::protocol::{run_exhaustive, summarize_success};
use teleclone::states::{random_data_state, Completion, ProtocolConfig, Scheme};

fn main() -> teleclone::Result<()> {
    let cfg = ProtocolConfig::new(4, 0.25, 1.3, Scheme::Processor, Completion::LoccOnly)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let data = random_data_state(4, &mut rng);

    let runs = run_exhaustive(&cfg, &data)?;
    println!("{:>3} {:>3} {:>12} {:>9} {:>14} {:>14}", "m", "n", "probability", "success", "F_A", "F_B");
    for run in &runs {
        match (run.fidelity_alice, run.fidelity_bob) {
            (Some(fa), Some(fb)) => println!(
                "{:>3} {:>3} {:>12.6} {:>9} {:>14.10} {:>14.10}",
                run.outcome.0, run.outcome.1, run.probability, run.success, fa, fb
            ),
            _ => println!(
                "{:>3} {:>3} {:>12.6} {:>9} {:>14} {:>14}",
                run.outcome.0, run.outcome.1, run.probability, run.success, "-", "-"
            ),
        }
    }

    let summary = summarize_success(&runs);
    println!(
        "\n{} of {} outcomes succeed; total success probability {:.6} (= 1/D = {:.6})",
        runs.iter().filter(|r| r.success).count(),
        runs.len(),
        summary.total_probability,
        1.0 / cfg.dim as f64
    );
    Ok(())
}
