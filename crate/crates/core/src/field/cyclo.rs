//! Elements of a single cyclotomic field Q(ζ_n), stored as integer numerators over a
//! shared positive denominator in the power basis 1, ζ, …, ζ^{φ(n)-1}.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Reduction data for one cyclotomic order.
#[derive(Debug)]
pub(crate) struct CycloTable {
    pub n: u32,
    pub degree: usize,
    /// `powers[k]` is ζ^k written in the power basis, for k < max(n, 2·degree).
    powers: Vec<Vec<i64>>,
}

/// Exact division of integer polynomials by a monic divisor (coefficients low to high).
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quo = vec![0i64; num.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    quo
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d of n.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl CycloTable {
    fn build(n: u32) -> CycloTable {
        let phi = cyclotomic_poly(n);
        let degree = phi.len() - 1;
        let count = (n as usize).max(2 * degree).max(1);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        if degree == 1 {
            // Q(ζ_1) = Q(ζ_2) = Q: ζ is the root of x - 1 or x + 1.
            let root = -phi[0];
            let mut v = 1i64;
            for _ in 0..count {
                powers.push(vec![v]);
                v *= root;
            }
            return CycloTable { n, degree, powers };
        }
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic Φ_n
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            next[1..degree].copy_from_slice(&cur[..(degree - 1)]);
            for (j, c) in next.iter_mut().enumerate() {
                *c -= top * phi[j];
            }
            cur = next;
        }
        CycloTable { n, degree, powers }
    }

    pub fn get(n: u32) -> Arc<CycloTable> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("cyclotomic table cache poisoned");
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(CycloTable::build(n)))
            .clone()
    }

    /// ζ^k in the power basis, for any integer k.
    pub fn power(&self, k: i64) -> &[i64] {
        let n = self.n as i64;
        let k = k.rem_euclid(n) as usize;
        &self.powers[k]
    }
}

/// Value in Q(ζ_n): `num[k] / den` is the coefficient of ζ^k.
#[derive(Clone, Debug)]
pub(crate) struct Cyclo {
    pub n: u32,
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

impl Cyclo {
    pub fn zero(n: u32) -> Cyclo {
        let t = CycloTable::get(n);
        Cyclo {
            n,
            num: vec![BigInt::zero(); t.degree],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(n: u32, q: &BigRational) -> Cyclo {
        let mut c = Cyclo::zero(n);
        c.num[0] = q.numer().clone();
        c.den = q.denom().clone();
        c.normalize();
        c
    }

    /// ζ_n^k.
    pub fn zeta_power(n: u32, k: i64) -> Cyclo {
        let t = CycloTable::get(n);
        Cyclo {
            n,
            num: t.power(k).iter().map(|c| BigInt::from(*c)).collect(),
            den: BigInt::one(),
        }
    }

    /// Build from rational coefficients of ζ^k for arbitrary k ≥ 0, reducing on the way.
    pub fn from_exponent_coeffs(n: u32, terms: &[(i64, BigRational)]) -> Cyclo {
        let t = CycloTable::get(n);
        let mut den = BigInt::one();
        for (_, q) in terms {
            den = den.lcm(q.denom());
        }
        let mut num = vec![BigInt::zero(); t.degree];
        for (k, q) in terms {
            let scale = q.numer() * (&den / q.denom());
            for (slot, c) in num.iter_mut().zip(t.power(*k)) {
                if *c != 0 {
                    *slot += &scale * c;
                }
            }
        }
        let mut out = Cyclo { n, num, den };
        out.normalize();
        out
    }

    pub fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        BigRational::new(self.num[k].clone(), self.den.clone())
    }

    /// Image under the embedding Q(ζ_n) → Q(ζ_m), m a multiple of n.
    pub fn embed(&self, m: u32) -> Cyclo {
        if m == self.n {
            return self.clone();
        }
        assert!(
            m.is_multiple_of(self.n),
            "Q(ζ_{}) does not embed in Q(ζ_{})",
            self.n,
            m
        );
        let step = (m / self.n) as i64;
        let t = CycloTable::get(m);
        let mut num = vec![BigInt::zero(); t.degree];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in num.iter_mut().zip(t.power(k as i64 * step)) {
                if *p != 0 {
                    *slot += c * p;
                }
            }
        }
        let mut out = Cyclo {
            n: m,
            num,
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    /// Galois automorphism ζ ↦ ζ^k (k coprime to n).
    pub fn galois(&self, k: i64) -> Cyclo {
        let t = CycloTable::get(self.n);
        let mut num = vec![BigInt::zero(); t.degree];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in num.iter_mut().zip(t.power(j as i64 * k)) {
                if *p != 0 {
                    *slot += c * p;
                }
            }
        }
        let mut out = Cyclo {
            n: self.n,
            num,
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        debug_assert_eq!(self.n, other.n);
        let den = self.den.lcm(&other.den);
        let sa = &den / &self.den;
        let sb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &sa + b * &sb)
            .collect();
        let mut out = Cyclo {
            n: self.n,
            num,
            den,
        };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo {
            n: self.n,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        debug_assert_eq!(self.n, other.n);
        let t = CycloTable::get(self.n);
        let d = t.degree;
        let mut full = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = full[..d].to_vec();
        for (k, c) in full.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in num.iter_mut().zip(t.power(k as i64)) {
                if *p != 0 {
                    *slot += c * p;
                }
            }
        }
        let mut out = Cyclo {
            n: self.n,
            num,
            den: &self.den * &other.den,
        };
        out.normalize();
        out
    }

    pub fn scale(&self, q: &BigRational) -> Cyclo {
        let mut out = Cyclo {
            n: self.n,
            num: self.num.iter().map(|c| c * q.numer()).collect(),
            den: &self.den * q.denom(),
        };
        out.normalize();
        out
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    /// Inverse via the product of all nontrivial Galois conjugates over the (rational) norm.
    pub fn inverse(&self) -> Option<Cyclo> {
        if self.is_zero() {
            return None;
        }
        let n = self.n as i64;
        let mut prod = Cyclo::from_rational(self.n, &BigRational::one());
        for k in 2..n.max(2) {
            if k.gcd(&n) == 1 {
                prod = prod.mul(&self.galois(k));
            }
        }
        let norm = self.mul(&prod);
        let q = norm
            .as_rational()
            .expect("norm of a cyclotomic element is rational");
        Some(prod.scale(&q.recip()))
    }

    pub fn eq_value(&self, other: &Cyclo) -> bool {
        if self.n == other.n {
            return self.den == other.den && self.num == other.num;
        }
        let m = self.n.lcm(&other.n);
        let a = self.embed(m);
        let b = other.embed(m);
        a.den == b.den && a.num == b.num
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let den = big_to_f64(&self.den);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ang = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            let v = big_to_f64(c) / den;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

pub(crate) fn big_to_f64(b: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    b.to_f64().unwrap_or(f64::NAN)
}
