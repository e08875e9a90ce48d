//! The iterated function system z ↦ c·z + ω over the n-th roots of unity ω,
//! finite-word evaluation with certified truncation bounds, and full
//! finite-depth point clouds of its limit set.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::angle::CircleAngle;
use crate::error::{Error, Result};

/// Default ceiling on the number of points a cloud enumeration may produce.
pub const DEFAULT_POINT_BUDGET: u64 = 10_000_000;

/// Parameters of the system: n maps f_j(z) = c·z + ξ^j with ξ = e^{2πi/n}
/// and c = r·e^{2πi·phi}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IfsParams {
    n: u32,
    r: f64,
    phi: CircleAngle,
}

impl IfsParams {
    pub fn new(n: u32, r: f64, phi: CircleAngle) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("n must be at least 2, got {n}")));
        }
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidParams(format!(
                "contraction modulus r must satisfy 0 < r < 1, got {r}"
            )));
        }
        Ok(IfsParams { n, r, phi })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> &CircleAngle {
        &self.phi
    }

    /// The multiplier c as a complex number.
    pub fn c(&self) -> Complex64 {
        Complex64::from_polar(self.r, std::f64::consts::TAU * self.phi.to_f64())
    }

    /// ξ^j for j taken mod n.
    pub fn xi(&self, j: u32) -> Complex64 {
        let j = j % self.n;
        Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / self.n as f64)
    }

    /// All n roots of unity, indexed by digit.
    pub fn roots(&self) -> Vec<Complex64> {
        (0..self.n).map(|j| self.xi(j)).collect()
    }
}

/// A finite word over the digits {0, …, n−1}, most significant digit first:
/// digit k selects the direction of the k-th summand c^k·ξ^{j_k}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(digits: Vec<u32>) -> Self {
        Word(digits)
    }

    pub fn constant(digit: u32, len: usize) -> Self {
        Word(vec![digit; len])
    }

    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate_for(&self, n: u32) -> Result<()> {
        for &d in &self.0 {
            if d >= n {
                return Err(Error::InvalidDigit { digit: d, n });
            }
        }
        Ok(())
    }
}

impl From<&[u32]> for Word {
    fn from(digits: &[u32]) -> Self {
        Word(digits.to_vec())
    }
}

/// Partial sum Σ_{k<m} c^k ξ^{j_k} for a word of length m.
///
/// Any infinite extension of the word maps within `tail_bound(params, m)`
/// of the returned point. Evaluation runs right to left so that the value
/// satisfies eval(j·w) = ξ^j + c·eval(w) bit for bit, matching the cloud
/// enumeration below.
pub fn evaluate(params: &IfsParams, word: &Word) -> Result<Complex64> {
    word.validate_for(params.n())?;
    let roots = params.roots();
    let c = params.c();
    let mut acc = Complex64::new(0.0, 0.0);
    for &d in word.digits().iter().rev() {
        acc = roots[d as usize] + c * acc;
    }
    Ok(acc)
}

/// The point ξ^digit/(1−c), i.e. the image of the constant infinite word.
pub fn fixed_point(params: &IfsParams, digit: u32) -> Result<Complex64> {
    if digit >= params.n() {
        return Err(Error::InvalidDigit {
            digit,
            n: params.n(),
        });
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(params.xi(digit) / (one - params.c()))
}

/// Geometric tail r^depth/(1−r): bounds the distance from any infinite
/// word's image to the evaluation of its depth-prefix.
pub fn tail_bound(params: &IfsParams, depth: u32) -> f64 {
    params.r().powi(depth as i32) / (1.0 - params.r())
}

/// Smallest depth whose tail bound is below `eps`.
pub fn depth_for_tail(params: &IfsParams, eps: f64) -> u32 {
    let mut depth = 0u32;
    let mut tail = 1.0 / (1.0 - params.r());
    while tail >= eps && depth < 1_000_000 {
        tail *= params.r();
        depth += 1;
    }
    depth
}

/// Every point of a full depth-m enumeration, in lexicographic word order.
#[derive(Debug, Clone)]
pub struct PointCloud {
    pub points: Vec<Complex64>,
    pub depth: u32,
    /// Truncation radius r^depth/(1−r): the limit set and the cloud are
    /// within this Hausdorff distance of each other.
    pub tail_bound: f64,
}

/// Enumerate all n^depth words of the given length under the default budget.
pub fn enumerate_cloud(params: &IfsParams, depth: u32) -> Result<PointCloud> {
    enumerate_cloud_with_budget(params, depth, DEFAULT_POINT_BUDGET)
}

/// Enumerate all n^depth words of the given length, refusing if the count
/// exceeds `budget`.
pub fn enumerate_cloud_with_budget(
    params: &IfsParams,
    depth: u32,
    budget: u64,
) -> Result<PointCloud> {
    let mut required: u128 = 1;
    for _ in 0..depth {
        required = required.saturating_mul(params.n() as u128);
    }
    if required > budget as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget,
        });
    }

    let roots = params.roots();
    let c = params.c();
    let mut points = vec![Complex64::new(0.0, 0.0)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(points.len() * params.n() as usize);
        for &root in &roots {
            for &p in &points {
                next.push(root + c * p);
            }
        }
        points = next;
    }
    Ok(PointCloud {
        points,
        depth,
        tail_bound: tail_bound(params, depth),
    })
}

impl PointCloud {
    /// CSV with header `re,im`, one point per row, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(16 + self.points.len() * 48);
        out.push_str("re,im\n");
        for p in &self.points {
            out.push_str(&format!("{:.16e},{:.16e}\n", p.re, p.im));
        }
        out
    }

    pub fn to_json(&self, params: &IfsParams) -> Value {
        json!({
            "n": params.n(),
            "r": params.r(),
            "phi": params.phi().to_json(),
            "depth": self.depth,
            "tail_bound": self.tail_bound,
            "points": self.points.iter().map(|p| json!([p.re, p.im])).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32, r: f64, phi: &str) -> IfsParams {
        IfsParams::new(n, r, phi.parse().unwrap()).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn rejects_bad_params() {
        assert!(IfsParams::new(1, 0.5, CircleAngle::zero()).is_err());
        assert!(IfsParams::new(2, 0.0, CircleAngle::zero()).is_err());
        assert!(IfsParams::new(2, 1.0, CircleAngle::zero()).is_err());
    }

    #[test]
    fn evaluate_geometric_partial_sums() {
        let p = params(2, 0.5, "0/1");
        let v = evaluate(&p, &Word::new(vec![0, 0, 0])).unwrap();
        assert!(close(v, Complex64::new(1.75, 0.0), 1e-12));
        let v = evaluate(&p, &Word::new(vec![0, 1])).unwrap();
        assert!(close(v, Complex64::new(0.5, 0.0), 1e-12));
    }

    #[test]
    fn evaluate_matches_term_by_term_sum() {
        // word (0, 1) for n=5, phi=1/4: 1 + 0.4 e^{2πi(1/4 + 1/5)}
        let p = params(5, 0.4, "1/4");
        let v = evaluate(&p, &Word::new(vec![0, 1])).unwrap();
        let ang = std::f64::consts::TAU * (0.25 + 0.2);
        let direct = Complex64::new(1.0 + 0.4 * ang.cos(), 0.4 * ang.sin());
        assert!(close(v, direct, 1e-12));

        // independent route: accumulate c^k ξ^{j_k} term by term
        let mut sum = Complex64::new(0.0, 0.0);
        let mut ck = Complex64::new(1.0, 0.0);
        for &d in [0u32, 1].iter() {
            sum += ck * p.xi(d);
            ck *= p.c();
        }
        assert!(close(v, sum, 1e-12));
    }

    #[test]
    fn evaluate_rejects_bad_digit() {
        let p = params(3, 0.5, "0/1");
        assert!(evaluate(&p, &Word::new(vec![0, 3])).is_err());
    }

    #[test]
    fn fixed_points() {
        let p = params(2, 0.5, "0/1");
        assert!(close(
            fixed_point(&p, 0).unwrap(),
            Complex64::new(2.0, 0.0),
            1e-12
        ));
        assert!(close(
            fixed_point(&p, 1).unwrap(),
            Complex64::new(-2.0, 0.0),
            1e-12
        ));

        let p = params(4, 0.3, "0/1");
        let fp = fixed_point(&p, 1).unwrap();
        assert!(close(fp, Complex64::new(0.0, 1.0 / 0.7), 1e-12));
        // deep constant word lands within the tail bound
        let deep = evaluate(&p, &Word::constant(1, 40)).unwrap();
        assert!((fp - deep).norm() <= tail_bound(&p, 40) + 1e-15);

        assert!(fixed_point(&p, 4).is_err());
    }

    #[test]
    fn fixed_point_is_fixed() {
        let p = params(5, 0.4, "1/4");
        for j in 0..5 {
            let fp = fixed_point(&p, j).unwrap();
            let image = p.c() * fp + p.xi(j);
            assert!(close(image, fp, 1e-12));
        }
    }

    #[test]
    fn tail_bound_closed_form() {
        let p = params(2, 0.5, "0/1");
        assert!((tail_bound(&p, 1) - 1.0).abs() < 1e-15);
        let p = params(5, 0.4, "1/4");
        assert!((tail_bound(&p, 9) - 0.4f64.powi(9) / 0.6).abs() < 1e-18);
        let p = params(3, 0.48, "0/1");
        assert!((tail_bound(&p, 20) - 0.48f64.powi(20) / 0.52).abs() < 1e-18);
    }

    #[test]
    fn depth_for_tail_is_minimal() {
        let p = params(5, 0.4, "1/4");
        let d = depth_for_tail(&p, 1e-9);
        assert!(tail_bound(&p, d) < 1e-9);
        assert!(tail_bound(&p, d - 1) >= 1e-9);
    }

    #[test]
    fn cloud_small_cases() {
        let p = params(3, 0.5, "1/3");
        let c0 = enumerate_cloud(&p, 0).unwrap();
        assert_eq!(c0.points, vec![Complex64::new(0.0, 0.0)]);
        assert!((c0.tail_bound - 1.0 / 0.5).abs() < 1e-15);

        let p = params(2, 0.5, "0/1");
        let c1 = enumerate_cloud(&p, 1).unwrap();
        assert_eq!(c1.points.len(), 2);
        assert!(close(c1.points[0], Complex64::new(1.0, 0.0), 1e-12));
        assert!(close(c1.points[1], Complex64::new(-1.0, 0.0), 1e-12));
        assert!((c1.tail_bound - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cloud_counts_and_budget() {
        let p = params(5, 0.4, "1/4");
        let c = enumerate_cloud(&p, 4).unwrap();
        assert_eq!(c.points.len(), 625);

        let err = enumerate_cloud_with_budget(&p, 4, 100).unwrap_err();
        match err {
            Error::BudgetExceeded { required, budget } => {
                assert_eq!(required, 625);
                assert_eq!(budget, 100);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn cloud_matches_per_word_evaluation_bitwise() {
        let p = params(3, 0.45, "1/6");
        let depth = 4u32;
        let cloud = enumerate_cloud(&p, depth).unwrap();
        // lexicographic word order, most significant digit first
        for (i, &pt) in cloud.points.iter().enumerate() {
            let digits: Vec<u32> = (0..depth)
                .map(|t| (i / 3usize.pow(depth - 1 - t) % 3) as u32)
                .collect();
            let v = evaluate(&p, &Word::new(digits)).unwrap();
            assert_eq!(pt, v, "word index {i}");
        }
    }

    #[test]
    fn concatenation_identity() {
        let p = params(4, 0.55, "0.37");
        let w1 = Word::new(vec![0, 3, 1, 2, 2]);
        let w2 = Word::new(vec![3, 3, 0, 1]);
        let mut all = w1.digits().to_vec();
        all.extend_from_slice(w2.digits());
        let whole = evaluate(&p, &Word::new(all)).unwrap();
        let split = evaluate(&p, &w1).unwrap()
            + p.c().powi(w1.len() as i32) * evaluate(&p, &w2).unwrap();
        assert!(close(whole, split, 1e-12));
    }

    #[test]
    fn csv_and_json_shapes() {
        let p = params(2, 0.5, "0/1");
        let cloud = enumerate_cloud(&p, 1).unwrap();
        let csv = cloud.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("re,im"));
        assert_eq!(lines.count(), 2);

        let v = cloud.to_json(&p);
        assert_eq!(v["n"], 2);
        assert_eq!(v["phi"], "0/1");
        assert_eq!(v["points"].as_array().unwrap().len(), 2);
    }
}
