use egop_core::linalg::{random_orthogonal, sym_eig, DenseMatrix};
use std::time::Instant;

fn main() {
    for &n in &[500usize, 1200, 2300] {
        let q = random_orthogonal(n, 1).unwrap();
        let mut m = DenseMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..=j {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += q.get(i, k) * q.get(j, k) / ((k + 1) as f64);
                }
                m.set(i, j, acc);
                m.set(j, i, acc);
            }
        }
        let t = Instant::now();
        let eig = sym_eig(&m, 1e-11).unwrap();
        println!("n={n}: {:.2}s  lambda1={:.6} defect={:.2e}", t.elapsed().as_secs_f64(), eig.eigenvalues[0], eig.eigenvectors.orthonormality_defect());
    }
}
