//! Exact rational feasibility LP: dense phase-one simplex with Bland's rule.
//!
//! Decides `A x (<= | =) b` over free variables `x`. When the system is
//! infeasible the phase-one duals give a Farkas vector `y` with `y_i >= 0` on
//! inequality rows, `y^T A = 0` and `y^T b < 0`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum RowKind {
    Le,
    Eq,
}

#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub coeffs: Vec<BigRational>,
    pub kind: RowKind,
    pub rhs: BigRational,
}

#[derive(Debug)]
pub(crate) enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible(Vec<BigRational>),
}

/// Solves the feasibility problem with `nvars` free variables.
pub(crate) fn solve(rows: &[Row], nvars: usize) -> Feasibility {
    let m = rows.len();
    let slack_cols: Vec<Option<usize>> = {
        let mut next = 2 * nvars;
        rows.iter()
            .map(|r| {
                (r.kind == RowKind::Le).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let nslack = slack_cols.iter().flatten().count();
    let art0 = 2 * nvars + nslack;
    let ncols = art0 + m;
    let zero = BigRational::zero();
    let one = BigRational::one();

    // tableau rows: [columns..., rhs]
    let mut flipped = vec![false; m];
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, r) in rows.iter().enumerate() {
        let mut row = vec![zero.clone(); ncols + 1];
        for (j, c) in r.coeffs.iter().enumerate() {
            if !c.is_zero() {
                row[j] = c.clone();
                row[nvars + j] = -c;
            }
        }
        if let Some(s) = slack_cols[i] {
            row[s] = one.clone();
        }
        row[ncols] = r.rhs.clone();
        if r.rhs.is_negative() {
            flipped[i] = true;
            row.iter_mut().for_each(|x| *x = -&*x);
        }
        row[art0 + i] = one.clone();
        t.push(row);
    }
    let mut basis: Vec<usize> = (art0..art0 + m).collect();

    // reduced costs for the phase-one objective (sum of artificials)
    let mut cost = vec![zero.clone(); ncols + 1];
    for j in art0..ncols {
        cost[j] = one.clone();
    }
    for row in &t {
        for j in 0..=ncols {
            if !row[j].is_zero() {
                cost[j] -= &row[j];
            }
        }
    }

    loop {
        // Bland: lowest-index column with negative reduced cost enters
        let Some(enter) = (0..ncols).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[ncols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero, so a leaving row always exists
        let (r, _) = leave.expect("phase-one simplex cannot be unbounded");
        pivot(&mut t, &mut cost, r, enter);
        basis[r] = enter;
    }

    let objective: BigRational = (0..m).filter(|&i| basis[i] >= art0).map(|i| t[i][ncols].clone()).sum();
    if objective.is_zero() {
        let mut x = vec![zero.clone(); nvars];
        for (i, &b) in basis.iter().enumerate() {
            if b < nvars {
                x[b] += &t[i][ncols];
            } else if b < 2 * nvars {
                x[b - nvars] -= &t[i][ncols];
            }
        }
        Feasibility::Feasible(x)
    } else {
        // y' = c_B^T B^{-1}; B^{-1} sits in the artificial columns
        let y: Vec<BigRational> = (0..m)
            .map(|j| {
                let yj: BigRational =
                    (0..m).filter(|&i| basis[i] >= art0).map(|i| t[i][art0 + j].clone()).sum();
                // undo the row flip, then negate so that y >= 0 on <= rows
                if flipped[j] {
                    yj
                } else {
                    -yj
                }
            })
            .collect();
        Feasibility::Infeasible(y)
    }
}

fn pivot(t: &mut [Vec<BigRational>], cost: &mut [BigRational], r: usize, c: usize) {
    let p = t[r][c].clone();
    t[r].iter_mut().for_each(|x| *x /= &p);
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, y) in row.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (x, y) in cost.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}

/// Checks a Farkas vector against the rows.
pub(crate) fn is_farkas(rows: &[Row], nvars: usize, y: &[BigRational]) -> bool {
    if y.len() != rows.len() {
        return false;
    }
    let sign_ok = rows.iter().zip(y).all(|(r, yi)| r.kind == RowKind::Eq || !yi.is_negative());
    let combo_zero = (0..nvars).all(|j| rows.iter().zip(y).map(|(r, yi)| &r.coeffs[j] * yi).sum::<BigRational>().is_zero());
    let rhs: BigRational = rows.iter().zip(y).map(|(r, yi)| &r.rhs * yi).sum();
    sign_ok && combo_zero && rhs.is_negative()
}
