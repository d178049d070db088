//! Randomized cross-validation of the determinant path against the trace
//! oracle, plus exact CAR relation residuals and the summed-position norm.

use car_wick::{eval_quasifree, normal_order, position, CarMonomial, CarOp, Covariance};
use densemat::{hermitian_opnorm, DenseComplexMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{quasifree_density, JwError, JwWindow, WINDOW_CAP};

/// Outcome of one seeded cross-validation run.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub sites: Vec<i64>,
    pub seed: u64,
    pub wick_samples: u32,
    pub unordered_samples: u32,
    /// Max |det path − trace path| over sampled canonical monomials.
    pub max_wick_residual: f64,
    /// Same, for unordered words routed through the rewriting kernel.
    pub max_unordered_residual: f64,
    /// Max anticommutator deviation over every operator pair in the window.
    pub relation_residual: f64,
}

impl CheckReport {
    pub fn max_residual(&self) -> f64 {
        self.max_wick_residual
            .max(self.max_unordered_residual)
            .max(self.relation_residual)
    }
}

/// Compare the determinant evaluation with the trace against the explicit
/// density matrix on the window `{1..window_size}`.  Canonical monomials of
/// degree at most six exercise the determinant signs directly; unordered
/// words of the same degree are pushed through `normal_order` first, so the
/// comparison also covers the rewriting kernel.  `samples` counts the
/// canonical draws; half as many unordered words are drawn after them.
pub fn equivalence_check(
    window_size: usize,
    samples: u32,
    seed: u64,
    q: &impl Covariance,
) -> Result<CheckReport, JwError> {
    let w = JwWindow::range(1, window_size as i64)?;
    let rho = quasifree_density(&w, q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut max_wick = 0.0f64;
    for _ in 0..samples {
        let m = random_canonical(&mut rng, w.sites());
        debug_assert!(m.is_canonical());
        max_wick = max_wick.max(residual(&w, &rho, q, &m)?);
    }

    let unordered_samples = samples / 2;
    let mut max_unordered = 0.0f64;
    for _ in 0..unordered_samples {
        let m = random_word(&mut rng, w.sites());
        max_unordered = max_unordered.max(residual(&w, &rho, q, &m)?);
    }

    Ok(CheckReport {
        sites: w.sites().to_vec(),
        seed,
        wick_samples: samples,
        unordered_samples,
        max_wick_residual: max_wick,
        max_unordered_residual: max_unordered,
        relation_residual: relation_residual(&w)?,
    })
}

fn residual(
    w: &JwWindow,
    rho: &DenseComplexMatrix,
    q: &impl Covariance,
    m: &CarMonomial,
) -> Result<f64, JwError> {
    let det_path = eval_quasifree(
        &normal_order(m).expect("sampled degree is within the rewriting cap"),
        q,
    );
    let trace_path = rho.trace_of_product(&w.jw_monomial(m)?);
    Ok((det_path - trace_path).norm())
}

/// A canonical monomial: distinct creator sites ascending, then distinct
/// annihilator sites descending, at most three of each.
fn random_canonical(rng: &mut ChaCha8Rng, sites: &[i64]) -> CarMonomial {
    let n_create = rng.gen_range(0..=3.min(sites.len()));
    let n_annihilate = rng.gen_range(0..=3.min(sites.len()));
    let mut pool = sites.to_vec();
    pool.shuffle(rng);
    let mut creators: Vec<i64> = pool[..n_create].to_vec();
    creators.sort_unstable();
    pool.shuffle(rng);
    let mut annihilators: Vec<i64> = pool[..n_annihilate].to_vec();
    annihilators.sort_unstable_by(|a, b| b.cmp(a));
    let mut ops: Vec<CarOp> = creators.into_iter().map(CarOp::create).collect();
    ops.extend(annihilators.into_iter().map(CarOp::annihilate));
    CarMonomial(ops)
}

/// An arbitrary word of degree at most six; repeats and arbitrary order are
/// deliberate, the rewriting kernel has to absorb them.
fn random_word(rng: &mut ChaCha8Rng, sites: &[i64]) -> CarMonomial {
    let degree = rng.gen_range(0..=6);
    let ops = (0..degree)
        .map(|_| {
            let site = sites[rng.gen_range(0..sites.len())];
            if rng.gen_bool(0.5) {
                CarOp::create(site)
            } else {
                CarOp::annihilate(site)
            }
        })
        .collect();
    CarMonomial(ops)
}

/// Max-norm deviation of every anticommutator on the window from its CAR
/// value: `{a_i, a_j} = {a+_i, a+_j} = 0` and `{a+_i, a_j} = delta_ij I`.
pub fn relation_residual(w: &JwWindow) -> Result<f64, JwError> {
    let dim = w.dim();
    let mut worst = 0.0f64;
    for &i in w.sites() {
        for &j in w.sites() {
            for (di, dj) in [(false, false), (true, true), (true, false)] {
                let x = w.jw_op(CarOp { site: i, dagger: di })?;
                let y = w.jw_op(CarOp { site: j, dagger: dj })?;
                let mut anti = x.mul(&y).add(&y.mul(&x));
                if di != dj && i == j {
                    anti = anti.sub(&DenseComplexMatrix::identity(dim));
                }
                worst = worst.max(anti.max_abs());
            }
        }
    }
    Ok(worst)
}

/// Operator norm of `x_1 + ... + x_n` on the window `{1..n}`, where
/// `x_j = a_j + a+_j`.  The square of the sum is `n·I` (each `x_j²` is the
/// identity and distinct terms anticommute), so the value is `sqrt(n)`.
pub fn sum_position_norm(n: usize) -> Result<f64, JwError> {
    if n == 0 || n > WINDOW_CAP {
        return Err(JwError::WindowCap { size: n, cap: WINDOW_CAP });
    }
    let w = JwWindow::range(1, n as i64)?;
    let mut sum = DenseComplexMatrix::zeros(w.dim(), w.dim());
    for j in 1..=n as i64 {
        for (m, c) in position(j).terms() {
            let term = w.jw_monomial(m)?.scale(*c);
            sum = sum.add(&term);
        }
    }
    Ok(hermitian_opnorm(&sum, 1e-12, 10_000))
}
