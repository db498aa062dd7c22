use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{FieldElement, FieldError};

/// Parse a polynomial in `z` (ζ_n) and optionally `w` (the adjoined root, only when a
/// radicand is given), e.g. `1/2*z^3 - z + 2` or `z*w - 1/3*w`. Whitespace is ignored
/// and exponents must be nonnegative integers.
pub fn parse_field_element(
    text: &str,
    order: u32,
    radicand: Option<&FieldElement>,
) -> Result<FieldElement, FieldError> {
    let err = |reason: &str| FieldError::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty expression"));
    }
    let mut plain: Vec<(i64, BigRational)> = Vec::new();
    let mut rooted: Vec<(i64, BigRational)> = Vec::new();

    // split into signed terms
    let bytes: Vec<char> = s.chars().collect();
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, &c) in bytes.iter().enumerate() {
        if (c == '+' || c == '-') && !(i > 0 && bytes[i - 1] == '^') {
            if i == 0 {
                neg = c == '-';
                continue;
            }
            if cur.is_empty() {
                return Err(err("dangling sign"));
            }
            terms.push((neg, std::mem::take(&mut cur)));
            neg = c == '-';
        } else {
            cur.push(c);
        }
    }
    if cur.is_empty() {
        return Err(err("dangling sign"));
    }
    terms.push((neg, cur));

    for (neg, term) in terms {
        let mut coeff = BigRational::one();
        let mut zexp: i64 = 0;
        let mut wexp: i64 = 0;
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            let (head, exp) = match factor.split_once('^') {
                Some((h, e)) => {
                    let e: i64 = e.parse().map_err(|_| err("bad exponent"))?;
                    if e < 0 {
                        return Err(err("negative exponent"));
                    }
                    (h, e)
                }
                None => (factor, 1),
            };
            match head {
                "z" => zexp += exp,
                "w" => {
                    if radicand.is_none() {
                        return Err(err("`w` used but no square root is adjoined"));
                    }
                    wexp += exp;
                }
                num => {
                    if factor.contains('^') {
                        return Err(err("exponent on a number"));
                    }
                    coeff *= parse_rational(num).ok_or_else(|| err("bad number"))?;
                }
            }
        }
        if neg {
            coeff = -coeff;
        }
        // w^2 = r folds back into the plain part
        let mut extra = FieldElement::one(order);
        if wexp >= 2 {
            extra = radicand
                .expect("checked above")
                .pow(wexp / 2)
                .embed_to(order);
        }
        let target = if wexp % 2 == 1 {
            &mut rooted
        } else {
            &mut plain
        };
        if extra.is_one() {
            target.push((zexp, coeff));
        } else {
            // expand coeff·z^zexp·extra termwise
            let (a, _) = extra.coefficients();
            for (k, q) in a.into_iter().enumerate() {
                if !q.is_zero() {
                    target.push((zexp + k as i64, &coeff * q));
                }
            }
        }
    }
    Ok(FieldElement::from_parts(order, &plain, &rooted, radicand))
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FieldElement {
    fn embed_to(&self, order: u32) -> FieldElement {
        if self.order() == order {
            self.clone()
        } else {
            self.embed(order)
        }
    }
}
