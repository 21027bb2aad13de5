//! Topological restrictions on real C-curves and C-surfaces, checked against
//! a [`TopologyReport`].
//!
//! Every check returns exactly one entry, applicable or not; a failed
//! applicable check on a primitive triangulation is a critical anomaly,
//! because these restrictions are theorems for T-hypersurfaces.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::invariants::{complex_invariants, harnack_bound};
use crate::topology::TopologyReport;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionEntry {
    pub name: &'static str,
    pub applicable: bool,
    /// True for passed and for not-applicable entries.
    pub passed: bool,
    pub status: Status,
    /// Distance to the bound for inequalities.
    pub slack: Option<i64>,
    pub detail: String,
}

impl RestrictionEntry {
    fn skip(name: &'static str, why: impl Into<String>) -> Self {
        RestrictionEntry { name, applicable: false, passed: true, status: Status::NotApplicable, slack: None, detail: why.into() }
    }

    fn result(name: &'static str, ok: bool, slack: Option<i64>, detail: String) -> Self {
        RestrictionEntry {
            name,
            applicable: true,
            passed: ok,
            status: if ok { Status::Pass } else { Status::Fail },
            slack,
            detail,
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub entries: Vec<RestrictionEntry>,
    /// Some applicable check failed on a primitive triangulation.
    pub critical: bool,
}

impl RestrictionReport {
    pub fn failures(&self) -> impl Iterator<Item = &RestrictionEntry> {
        self.entries.iter().filter(|e| e.failed())
    }

    pub fn get(&self, name: &str) -> Option<&RestrictionEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

fn even_curve<'a>(r: &'a TopologyReport, name: &'static str) -> std::result::Result<(i64, &'a crate::topology::OvalSummary), RestrictionEntry> {
    if r.dim != 2 {
        return Err(RestrictionEntry::skip(name, "curves only"));
    }
    if r.degree % 2 != 0 {
        return Err(RestrictionEntry::skip(name, "even degree only"));
    }
    let ovals = r.ovals.as_ref().expect("curve reports carry ovals");
    Ok((r.degree / 2, ovals))
}

pub fn check_harnack(r: &TopologyReport) -> RestrictionEntry {
    const NAME: &str = "harnack";
    if r.dim != 2 {
        return RestrictionEntry::skip(NAME, "curves only");
    }
    let bound = harnack_bound(r.degree as u32) as i64;
    let count = r.component_count() as i64;
    let m = if count == bound { ", M-curve" } else { "" };
    RestrictionEntry::result(NAME, count <= bound, Some(bound - count), format!("{count} components, bound {bound}{m}"))
}

pub fn check_gudkov_rokhlin(r: &TopologyReport) -> RestrictionEntry {
    const NAME: &str = "gudkov_rokhlin";
    let (k, o) = match even_curve(r, NAME) {
        Ok(v) => v,
        Err(e) => return e,
    };
    if !r.is_m() {
        return RestrictionEntry::skip(NAME, "M-curves only");
    }
    let pn = o.p as i64 - o.n as i64;
    RestrictionEntry::result(NAME, (pn - k * k).rem_euclid(8) == 0, None, format!("p - n = {pn}, k^2 = {}", k * k))
}

pub fn check_gkk(r: &TopologyReport) -> RestrictionEntry {
    const NAME: &str = "gkk";
    let (k, o) = match even_curve(r, NAME) {
        Ok(v) => v,
        Err(e) => return e,
    };
    if r.a_defect != 1 {
        return RestrictionEntry::skip(NAME, "(M-1)-curves only");
    }
    let pn = o.p as i64 - o.n as i64;
    let res = (pn - k * k).rem_euclid(8);
    RestrictionEntry::result(NAME, res == 1 || res == 7, None, format!("p - n = {pn}, k^2 = {}", k * k))
}

pub fn check_petrovsky(r: &TopologyReport) -> RestrictionEntry {
    const NAME: &str = "petrovsky";
    let (k, o) = match even_curve(r, NAME) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let f = r.flags.expect("curve reports carry flags");
    let (p, n) = (o.p as i64, o.n as i64);
    let s1 = 3 * k * (k - 1) / 2 + 1 - (p - f.n_minus as i64);
    let s2 = 3 * k * (k - 1) - (n - f.p_minus as i64);
    RestrictionEntry::result(
        NAME,
        s1 >= 0 && s2 >= 0,
        Some(s1.min(s2)),
        format!("p - n^- = {}, n - p^- = {}, slacks {s1} and {s2}", p - f.n_minus as i64, n - f.p_minus as i64),
    )
}

fn arnold_bounds(k: i64) -> (i64, i64) {
    let sign = if k % 2 == 0 { 1 } else { -1 };
    ((k * k - 3 * k + 3 + sign) / 2, (k * k - 3 * k + 2) / 2)
}

pub fn check_arnold(r: &TopologyReport) -> RestrictionEntry {
    const NAME: &str = "arnold";
    let (k, _) = match even_curve(r, NAME) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let f = r.flags.expect("curve reports carry flags");
    let (bp, bn) = arnold_bounds(k);
    let (lp, ln) = ((f.p_minus + f.p_zero) as i64, (f.n_minus + f.n_zero) as i64);
    RestrictionEntry::result(
        NAME,
        lp <= bp && ln <= bn,
        Some((bp - lp).min(bn - ln)),
        format!("p^- + p^0 = {lp} <= {bp}, n^- + n^0 = {ln} <= {bn}"),
    )
}

/// The conclusions at equality in the Arnold inequalities: one entry for the
/// even-oval case (`k` even) and one for the odd-oval case (`k` odd).
pub fn check_arnold_extremal(r: &TopologyReport) -> [RestrictionEntry; 2] {
    const P: &str = "arnold_extremal_p";
    const N: &str = "arnold_extremal_n";
    let k = match even_curve(r, P) {
        Ok((k, _)) => k,
        Err(e) => return [e.clone(), RestrictionEntry { name: N, ..e }],
    };
    let f = r.flags.expect("curve reports carry flags");
    let (bp, bn) = arnold_bounds(k);
    let p_entry = if k % 2 == 0 && (f.p_minus + f.p_zero) as i64 == bp {
        let ok = f.p_minus == 0 && f.p_plus == 0;
        RestrictionEntry::result(P, ok, None, format!("p^- = {}, p^+ = {} at the extremum", f.p_minus, f.p_plus))
    } else {
        RestrictionEntry::skip(P, "k even and p^- + p^0 at its bound only")
    };
    let n_entry = if k % 2 == 1 && (f.n_minus + f.n_zero) as i64 == bn {
        let ok = f.n_minus == 0 && f.n_plus == 0;
        RestrictionEntry::result(N, ok, None, format!("n^- = {}, n^+ = {} at the extremum", f.n_minus, f.n_plus))
    } else {
        RestrictionEntry::skip(N, "k odd and n^- + n^0 at its bound only")
    };
    [p_entry, n_entry]
}

pub fn check_smith(r: &TopologyReport) -> RestrictionEntry {
    const NAME: &str = "smith";
    let slack = r.b_complex - r.b_total;
    RestrictionEntry::result(
        NAME,
        slack >= 0 && slack % 2 == 0,
        Some(slack),
        format!("b_total = {}, b = {}, a = {}", r.b_total, r.b_complex, r.a_defect),
    )
}

pub fn check_mod16(r: &TopologyReport) -> Result<RestrictionEntry> {
    const NAME: &str = "mod16";
    if r.dim != 3 {
        return Ok(RestrictionEntry::skip(NAME, "surfaces only"));
    }
    if r.a_defect > 1 {
        return Ok(RestrictionEntry::skip(NAME, "a = 0 or a = 1 only"));
    }
    let inv = complex_invariants(3, r.degree as u32)?;
    let sign = inv.sign.as_ref().and_then(|s| s.to_i64()).expect("signature of a surface fits in i64");
    let res = (r.chi - sign).rem_euclid(16);
    let ok = if r.a_defect == 0 { res == 0 } else { res == 2 || res == 14 };
    Ok(RestrictionEntry::result(NAME, ok, None, format!("chi = {}, sign = {sign}, a = {}", r.chi, r.a_defect)))
}

pub fn check_comessatti(r: &TopologyReport) -> Result<RestrictionEntry> {
    const NAME: &str = "comessatti";
    if r.dim != 3 {
        return Ok(RestrictionEntry::skip(NAME, "surfaces only"));
    }
    let inv = complex_invariants(3, r.degree as u32)?;
    let h11 = inv.h11.as_ref().and_then(|h| h.to_i64()).expect("h11 of a surface fits in i64");
    let (lo, hi) = (r.chi - (2 - h11), h11 - r.chi);
    Ok(RestrictionEntry::result(NAME, lo >= 0 && hi >= 0, Some(lo.min(hi)), format!("{} <= chi = {} <= {h11}", 2 - h11, r.chi)))
}

/// All restrictions, in a fixed order.
pub fn check_all(r: &TopologyReport) -> Result<RestrictionReport> {
    let [ep, en] = check_arnold_extremal(r);
    let entries = vec![
        check_harnack(r),
        check_gudkov_rokhlin(r),
        check_gkk(r),
        check_petrovsky(r),
        check_arnold(r),
        ep,
        en,
        check_smith(r),
        check_mod16(r)?,
        check_comessatti(r)?,
    ];
    let critical = !r.non_primitive && entries.iter().any(|e| e.failed());
    Ok(RestrictionReport { entries, critical })
}
