#![allow(dead_code)]

use bicomplex_laplace::Bicomplex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_bicomplex(rng: &mut impl Rng, lo: f64, hi: f64) -> Bicomplex {
    Bicomplex::new_unchecked(
        rng.gen_range(lo..hi),
        rng.gen_range(lo..hi),
        rng.gen_range(lo..hi),
        rng.gen_range(lo..hi),
    )
}

/// Product over the basis {1, i1, i2, i1i2} from the multiplication table
/// i1² = i2² = −1, (i1i2)² = 1, i1·i2 = i1i2, i1·i1i2 = −i2, i2·i1i2 = −i1.
pub fn basis_product(x: &Bicomplex, y: &Bicomplex) -> Bicomplex {
    const TABLE: [[(usize, f64); 4]; 4] = [
        [(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0)],
        [(1, 1.0), (0, -1.0), (3, 1.0), (2, -1.0)],
        [(2, 1.0), (3, 1.0), (0, -1.0), (1, -1.0)],
        [(3, 1.0), (2, -1.0), (1, -1.0), (0, 1.0)],
    ];
    let (a, b) = (x.coefficients(), y.coefficients());
    let mut out = [0.0; 4];
    for i in 0..4 {
        for j in 0..4 {
            let (k, sign) = TABLE[i][j];
            out[k] += sign * a[i] * b[j];
        }
    }
    Bicomplex::new_unchecked(out[0], out[1], out[2], out[3])
}

pub fn max_coeff_diff(x: &Bicomplex, y: &Bicomplex) -> f64 {
    x.coefficients()
        .iter()
        .zip(y.coefficients())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}
