//! Exact signature of the Gram matrix `(-cos(π/m_ij))`.
//!
//! Work with `2G`, whose entries are `-(ζ^k + ζ^-k)` for a primitive `N`-th
//! root of unity `ζ` with `N = 2·lcm(m_ij)`. Every principal minor is then an
//! integer combination of powers of `ζ`. A minor sum is zero iff its
//! polynomial vanishes modulo the cyclotomic polynomial `Φ_N`; nonzero values
//! get their sign certified by interval evaluation at rising precision. The
//! characteristic polynomial of a symmetric matrix is real-rooted, so
//! Descartes' rule on its coefficient signs gives the inertia exactly.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Sparse `Σ c_e ζ^e` with exponents reduced mod `N`.
#[derive(Debug, Clone, Default)]
struct CycloElem(BTreeMap<u64, BigInt>);

impl CycloElem {
    fn constant(c: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(0, BigInt::from(c));
        }
        Self(m)
    }

    fn add_assign(&mut self, other: &Self, sign: i64) {
        for (e, c) in &other.0 {
            let slot = self.0.entry(*e).or_insert_with(BigInt::zero);
            *slot += c * sign;
            if slot.is_zero() {
                self.0.remove(e);
            }
        }
    }

    fn mul(&self, other: &Self, n: u64) -> Self {
        let mut out: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                let slot = out.entry((e1 + e2) % n).or_insert_with(BigInt::zero);
                *slot += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self(out)
    }
}

/// Entry `(2G)_ij` for label `m` (`None` never reaches here).
fn entry(m: u32, n: u64) -> CycloElem {
    match m {
        1 => CycloElem::constant(2),
        2 => CycloElem::default(),
        _ => {
            let k = n / (2 * m as u64);
            let mut map = BTreeMap::new();
            if k == 0 || 2 * k == n {
                unreachable!("N is a multiple of 2m");
            }
            map.insert(k % n, BigInt::from(-1));
            map.insert((n - k) % n, BigInt::from(-1));
            CycloElem(map)
        }
    }
}

fn det(mat: &[Vec<CycloElem>], n: u64) -> CycloElem {
    let k = mat.len();
    let mut total = CycloElem::default();
    let mut perm: Vec<usize> = (0..k).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut sign = 1i64;
        for i in 0..k {
            for j in i + 1..k {
                if p[i] > p[j] {
                    sign = -sign;
                }
            }
        }
        let mut prod = CycloElem::constant(1);
        for (i, &pi) in p.iter().enumerate() {
            prod = prod.mul(&mat[i][pi], n);
            if prod.0.is_empty() {
                return;
            }
        }
        total.add_assign(&prod, sign);
    });
    total
}

fn permutations(p: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == p.len() {
        f(p);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permutations(p, start + 1, f);
        p.swap(start, i);
    }
}

/// Integer polynomials, lowest degree first.
type Poly = Vec<BigInt>;

fn poly_divexact(num: &Poly, den: &Poly) -> Poly {
    let mut rem = num.clone();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    let mut q = vec![BigInt::zero(); num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = &rem[i + dd] / &lead;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

fn cyclotomic(n: u64, cache: &mut BTreeMap<u64, Poly>) -> Poly {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut p: Poly = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in (1..n).filter(|&d| n.is_multiple_of(d)) {
        let phi_d = cyclotomic(d, cache);
        p = poly_divexact(&p, &phi_d);
    }
    cache.insert(n, p.clone());
    p
}

fn is_zero(x: &CycloElem, n: u64, cache: &mut BTreeMap<u64, Poly>) -> bool {
    if x.0.is_empty() {
        return true;
    }
    let phi = cyclotomic(n, cache);
    let deg = phi.len() - 1;
    let mut dense: Poly = vec![BigInt::zero(); n as usize];
    for (e, c) in &x.0 {
        dense[*e as usize] += c;
    }
    // Φ_N is monic: reduce from the top.
    for i in (deg..dense.len()).rev() {
        if dense[i].is_zero() {
            continue;
        }
        let c = dense[i].clone();
        for (j, pc) in phi.iter().enumerate() {
            dense[i - deg + j] -= &c * pc;
        }
    }
    dense.iter().all(Zero::is_zero)
}

fn sign(x: &CycloElem, n: u64, cache: &mut BTreeMap<u64, Poly>) -> Ordering {
    if is_zero(x, n, cache) {
        return Ordering::Equal;
    }
    // Fast path: double precision with a generous error bound.
    let mut approx = 0.0f64;
    let mut mass = 0.0f64;
    for (e, c) in &x.0 {
        let c = c.to_f64().unwrap_or(f64::INFINITY);
        approx += c * (2.0 * std::f64::consts::PI * (*e as f64) / n as f64).cos();
        mass += c.abs();
    }
    let bound = mass * 1e-12;
    if approx.is_finite() && approx.abs() > bound {
        return approx.partial_cmp(&0.0).unwrap();
    }
    let mut bits = 64;
    loop {
        let (lo, hi) = interval_value(x, n, bits);
        if lo.is_positive() {
            return Ordering::Greater;
        }
        if hi.is_negative() {
            return Ordering::Less;
        }
        bits *= 2;
        assert!(
            bits <= 1 << 16,
            "sign of a nonzero algebraic number not certified"
        );
    }
}

fn dyadic_floor(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = (x * BigRational::from_integer(scale.clone())).floor();
    scaled / BigRational::from_integer(scale)
}

/// Enclosure of π from Machin's formula.
fn pi_interval(bits: u32) -> (BigRational, BigRational) {
    // atan(1/x) = Σ (-1)^k / ((2k+1) x^(2k+1)); alternating, decreasing terms.
    let atan_inv = |x: i64| -> (BigRational, BigRational) {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << (bits + 8));
        let x = BigInt::from(x);
        let mut sum = BigRational::zero();
        let mut k = 0u32;
        loop {
            let term = BigRational::new(
                BigInt::one(),
                BigInt::from(2 * k + 1) * num_traits::pow(x.clone(), (2 * k + 1) as usize),
            );
            if term < eps {
                // remainder is bounded by this term
                return if k.is_multiple_of(2) {
                    (sum.clone(), sum + term)
                } else {
                    (sum.clone() - term, sum)
                };
            }
            if k.is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
            k += 1;
        }
    };
    let (a_lo, a_hi) = atan_inv(5);
    let (b_lo, b_hi) = atan_inv(239);
    let sixteen = BigRational::from_integer(16.into());
    let four = BigRational::from_integer(4.into());
    (&sixteen * a_lo - &four * b_hi, sixteen * a_hi - four * b_lo)
}

/// Enclosure of `cos(2π e / n)`.
fn cos_interval(
    e: u64,
    n: u64,
    pi: &(BigRational, BigRational),
    bits: u32,
) -> (BigRational, BigRational) {
    let frac = BigRational::new(BigInt::from(2 * e), BigInt::from(n));
    let x_lo = &pi.0 * &frac;
    let x_hi = &pi.1 * &frac;
    let mid = dyadic_floor(
        &((&x_lo + &x_hi) / BigRational::from_integer(2.into())),
        bits,
    );
    // |cos x - cos mid| <= |x - mid| over the whole enclosure of x
    let width = std::cmp::max((&x_hi - &mid).abs(), (&mid - &x_lo).abs());
    let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    let x2 = &mid * &mid;
    let mut k = 0u64;
    loop {
        if k > 0 {
            term = -term * &x2 / BigRational::from_integer(BigInt::from((2 * k - 1) * (2 * k)));
            term = dyadic_floor(&term, bits + 16);
        }
        sum += &term;
        k += 1;
        if term.abs() < eps && k > 2 {
            break;
        }
    }
    // truncation after alternating tail with |x| < 7 is below eps once terms
    // shrink; rounding of each term adds at most 2^-(bits+16) per step.
    let slack = &width
        + &eps * BigRational::from_integer(BigInt::from(2))
        + BigRational::new(BigInt::from(k + 1), BigInt::one() << (bits + 16));
    (&sum - &slack, sum + slack)
}

fn interval_value(x: &CycloElem, n: u64, bits: u32) -> (BigRational, BigRational) {
    let pi = pi_interval(bits + 8);
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for (e, c) in &x.0 {
        let (clo, chi) = cos_interval(*e, n, &pi, bits);
        let c = BigRational::from_integer(c.clone());
        if c.is_positive() {
            lo += &c * clo;
            hi += &c * chi;
        } else {
            lo += &c * chi;
            hi += &c * clo;
        }
    }
    (lo, hi)
}

/// Signs of the coefficient sums `e_k` (sum of `k×k` principal minors of
/// `2G`) for `k = 0..=rank`. Labels are `m_ij` with `1` on the diagonal.
pub(crate) fn inertia(labels: &[Vec<u32>]) -> (usize, usize, usize) {
    let r = labels.len();
    let mut l = 1u64;
    for row in labels {
        for &m in row {
            if m > 2 {
                l = l.lcm(&(m as u64));
            }
        }
    }
    let n = 2 * l.max(2);
    let mat: Vec<Vec<CycloElem>> = labels
        .iter()
        .map(|row| row.iter().map(|&m| entry(m, n)).collect())
        .collect();
    let mut cache = BTreeMap::new();
    let mut e_signs = vec![Ordering::Greater];
    for k in 1..=r {
        let mut sum = CycloElem::default();
        for subset in subsets(r, k) {
            let minor: Vec<Vec<CycloElem>> = subset
                .iter()
                .map(|&i| subset.iter().map(|&j| mat[i][j].clone()).collect())
                .collect();
            sum.add_assign(&det(&minor, n), 1);
        }
        e_signs.push(sign(&sum, n, &mut cache));
    }
    // char poly coefficients: (-1)^k e_k
    let coeffs: Vec<Ordering> = e_signs
        .iter()
        .enumerate()
        .map(|(k, s)| if k % 2 == 1 { s.reverse() } else { *s })
        .collect();
    let top = (0..=r)
        .rev()
        .find(|&k| coeffs[k] != Ordering::Equal)
        .unwrap_or(0);
    let zeros = r - top;
    let nonzero: Vec<Ordering> = coeffs
        .into_iter()
        .filter(|s| *s != Ordering::Equal)
        .collect();
    let positives = nonzero.windows(2).filter(|w| w[0] != w[1]).count();
    (positives, r - positives - zeros, zeros)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_enclosure_is_tight() {
        let (lo, hi) = pi_interval(60);
        assert!(lo.to_f64().unwrap() <= std::f64::consts::PI);
        assert!(hi.to_f64().unwrap() >= std::f64::consts::PI);
        assert!((hi - lo).to_f64().unwrap() < 1e-15);
    }

    #[test]
    fn cos_enclosure_contains_value() {
        for (e, n) in [(1u64, 10u64), (3, 14), (5, 12), (1, 4)] {
            let pi = pi_interval(80);
            let (lo, hi) = cos_interval(e, n, &pi, 64);
            let v = (2.0 * std::f64::consts::PI * e as f64 / n as f64).cos();
            assert!(lo.to_f64().unwrap() <= v + 1e-15 && v - 1e-15 <= hi.to_f64().unwrap());
            assert!((hi - lo).to_f64().unwrap() < 1e-12);
        }
    }

    #[test]
    fn exact_zero_in_q_sqrt5() {
        // 4cos²(π/5) - 2cos(π/5) - 1 = 0 ; with z = ζ_10: (z+z⁻¹)² - (z+z⁻¹) - 1
        let n = 10;
        let c = entry(5, n); // -(z + z^-1)
        let sq = c.mul(&c, n);
        let mut x = sq;
        x.add_assign(&c, 1);
        x.add_assign(&CycloElem::constant(-1), 1);
        let mut cache = BTreeMap::new();
        assert!(is_zero(&x, n, &mut cache));
        assert_eq!(sign(&c, n, &mut cache), Ordering::Less);
    }

    #[test]
    fn interval_fallback_agrees_with_float() {
        let n = 14;
        let x = entry(7, n);
        let (lo, hi) = interval_value(&x, n, 64);
        let v = -2.0 * (std::f64::consts::PI / 7.0).cos();
        assert!(lo.to_f64().unwrap() <= v && v <= hi.to_f64().unwrap());
    }
}
