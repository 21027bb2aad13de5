//! Reference invariants of a nonsingular complex hypersurface of degree `d`
//! in `CP^n`: Hodge numbers, Euler characteristic, signature, total Betti
//! number, and the Harnack bound for curves.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{invalid, Result};

pub const MAX_N: u32 = 16;
pub const MAX_D: u32 = 4096;

fn check(n: u32, d: u32) -> Result<()> {
    if !(2..=MAX_N).contains(&n) || !(1..=MAX_D).contains(&d) {
        return invalid(format!("invariants need 2 <= n <= {MAX_N} and 1 <= d <= {MAX_D}, got n={n}, d={d}"));
    }
    Ok(())
}

/// Coefficients of `(1 + x + ... + x^(d-2))^(n+1)`.
fn monomial_counts(n: u32, d: u32) -> Vec<BigInt> {
    if d < 2 {
        return Vec::new();
    }
    let w = d as usize - 1;
    let mut poly = vec![BigInt::one()];
    for _ in 0..=n {
        // multiply by the window 1 + ... + x^(w-1) as a running sum
        let mut next = Vec::with_capacity(poly.len() + w - 1);
        let mut acc = BigInt::zero();
        for k in 0..poly.len() + w - 1 {
            if let Some(c) = poly.get(k) {
                acc += c;
            }
            if k >= w {
                acc -= &poly[k - w];
            }
            next.push(acc.clone());
        }
        poly = next;
    }
    poly
}

/// The Hodge table `h[p][q]`, `0 <= p, q <= n - 1`, of the hypersurface.
pub fn hodge_numbers(n: u32, d: u32) -> Result<Vec<Vec<BigInt>>> {
    check(n, d)?;
    let m = n as usize;
    let counts = monomial_counts(n, d);
    let mut h = vec![vec![BigInt::zero(); m]; m];
    for q in 0..m {
        let k = (q as i64 + 1) * d as i64 - (n as i64 + 1);
        if k >= 0 {
            if let Some(c) = counts.get(k as usize) {
                h[m - 1 - q][q] += c;
            }
        }
    }
    for (p, row) in h.iter_mut().enumerate() {
        row[p] += 1;
    }
    Ok(h)
}

/// `((1 - d)^(n+1) - 1) / d + n + 1`.
pub fn chi_complex(n: u32, d: u32) -> Result<BigInt> {
    check(n, d)?;
    let d = BigInt::from(d);
    let num: BigInt = num_traits::pow(BigInt::one() - &d, n as usize + 1) - 1;
    let (quo, rem) = num.div_rem(&d);
    debug_assert!(rem.is_zero());
    Ok(quo + n + 1)
}

/// The signature, defined for odd `n` (even complex dimension).
pub fn signature_complex(n: u32, d: u32) -> Result<BigInt> {
    check(n, d)?;
    if n % 2 == 0 {
        return invalid(format!("the signature is defined for odd n, got n={n}"));
    }
    let h = hodge_numbers(n, d)?;
    let mut s = BigInt::zero();
    for row in &h {
        for (q, x) in row.iter().enumerate() {
            if q % 2 == 0 {
                s += x;
            } else {
                s -= x;
            }
        }
    }
    Ok(s)
}

/// `chi` for odd `n`, `2n - chi` for even `n`.
pub fn betti_total_complex(n: u32, d: u32) -> Result<BigInt> {
    let chi = chi_complex(n, d)?;
    Ok(if n % 2 == 1 { chi } else { BigInt::from(2 * n) - chi })
}

/// `(d - 1)(d - 2) / 2 + 1`.
pub fn harnack_bound(d: u32) -> u64 {
    let d = d as u64;
    if d == 0 {
        return 0;
    }
    (d - 1) * d.saturating_sub(2) / 2 + 1
}

fn big<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

fn big_opt<S: Serializer>(x: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => big(v, s),
        None => s.serialize_none(),
    }
}

fn big_table<S: Serializer>(t: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Cell<'a>(#[serde(serialize_with = "big")] &'a BigInt);
    let rows: Vec<Vec<Cell>> = t.iter().map(|r| r.iter().map(Cell).collect()).collect();
    rows.serialize(s)
}

/// All invariants for one `(n, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexInvariants {
    pub n: u32,
    pub d: u32,
    #[serde(serialize_with = "big")]
    pub chi: BigInt,
    #[serde(serialize_with = "big_opt")]
    pub sign: Option<BigInt>,
    #[serde(rename = "b", serialize_with = "big")]
    pub b_total: BigInt,
    #[serde(serialize_with = "big_opt", skip_serializing_if = "Option::is_none")]
    pub h11: Option<BigInt>,
    #[serde(serialize_with = "big_table")]
    pub hodge: Vec<Vec<BigInt>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub harnack: Option<u64>,
}

impl ComplexInvariants {
    pub fn b_total_i64(&self) -> i64 {
        self.b_total.to_i64().expect("total Betti number fits in i64 for the degrees built here")
    }
}

fn compute(n: u32, d: u32) -> Result<ComplexInvariants> {
    let hodge = hodge_numbers(n, d)?;
    Ok(ComplexInvariants {
        n,
        d,
        chi: chi_complex(n, d)?,
        sign: if n % 2 == 1 { Some(signature_complex(n, d)?) } else { None },
        b_total: betti_total_complex(n, d)?,
        h11: (n == 3).then(|| hodge[1][1].clone()),
        hodge,
        harnack: (n == 2).then(|| harnack_bound(d)),
    })
}

/// Memoized [`ComplexInvariants`] for `(n, d)`.
pub fn complex_invariants(n: u32, d: u32) -> Result<Arc<ComplexInvariants>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<ComplexInvariants>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("invariants cache").get(&(n, d)) {
        return Ok(v.clone());
    }
    let v = Arc::new(compute(n, d)?);
    cache.lock().expect("invariants cache").insert((n, d), v.clone());
    Ok(v)
}
