//! Inputs shared by the criterion benches.

use elliptope::{li_tam_complex, li_tam_real, random_gram, CorrelationMatrix, Field, Tolerances};

/// Largest extreme and a generic non-extreme matrix of roughly size `n`.
pub fn bench_inputs(n: usize) -> Vec<(String, CorrelationMatrix)> {
    let tol = Tolerances::default();
    let r_complex = (n as f64).sqrt().floor() as usize;
    let mut r_real = 1;
    while (r_real + 1) * (r_real + 2) <= 2 * n {
        r_real += 1;
    }
    vec![
        (
            format!("litam-complex-r{r_complex}-n{n}"),
            li_tam_complex(r_complex, n, &tol).expect("valid size").0,
        ),
        (
            format!("litam-real-r{r_real}-n{n}"),
            li_tam_real(r_real, n, &tol).expect("valid size").0,
        ),
        (
            format!("random-complex-d{}-n{n}", n / 2),
            random_gram((n / 2).max(1), Field::Complex, n, 1, &tol).expect("valid size"),
        ),
    ]
}
