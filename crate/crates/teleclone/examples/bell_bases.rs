//! Builds the standard and θ-dependent Bell families for a few dimensions
//! and checks orthonormality and completeness numerically.

use teleclone::bell::{BellBasis, BellVariant};

fn main() {
    println!("qubit members of both families (θ = 0.7):\n");
    let standard = BellBasis::standard(2);
    let tilted = BellBasis::tilted(2, 0.7);
    for ((m, n), member) in standard.iter() {
        println!("  standard ({m},{n}): {}", pretty(member.amplitudes()));
        println!("  tilted   ({m},{n}): {}\n", pretty(tilted.state(m, n).amplitudes()));
    }

    println!("{:>3} {:>14} {:>22} {:>22}", "D", "variant", "orthonormality", "completeness");
    for d in [2usize, 4, 6] {
        for variant in [BellVariant::Standard, BellVariant::ThetaTilted(0.7)] {
            let basis = BellBasis::new(d, variant);
            let name = match variant {
                BellVariant::Standard => "standard",
                BellVariant::ThetaTilted(_) => "tilted(0.7)",
            };
            println!(
                "{:>3} {:>14} {:>22.3e} {:>22.3e}",
                d,
                name,
                basis.max_orthonormality_defect(),
                basis.max_completeness_defect()
            );
        }
    }
}

fn pretty(amps: &[num_complex::Complex64]) -> String {
    amps.iter()
        .map(|a| format!("{:+.3}{:+.3}i", a.re, a.im))
        .collect::<Vec<_>>()
        .join("  ")
}
