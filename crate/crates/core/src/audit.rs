//! Named verification suites over finite ranges. Each check reports the
//! lattice it covered and every failing point.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bbasis::{decompose, eval_b, EvenPolyValues};
use crate::coefficients::{d_boundary, d_via_recursion, eval_p, iterm_sum};
use crate::error::Result;
use crate::exact::{binom, format_rational, in_z_half, is_integer, sign_pow};
use crate::relations::{
    frac1, frac2, rel1_with, rel2_with, verify_identity_with, DSource, DTable, IdentityId,
    IdentityReport,
};

pub fn ser_rational<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub range: String,
    pub points: usize,
    pub failures: Vec<Vec<i64>>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl From<IdentityReport> for CheckReport {
    fn from(r: IdentityReport) -> Self {
        Self { name: r.id.name().to_string(), range: r.range, points: r.points, failures: r.failures }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Integrality,
    Basis,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "relations" => Ok(Suite::Relations),
            "integrality" => Ok(Suite::Integrality),
            "basis" => Ok(Suite::Basis),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}` (relations, integrality, basis, all)")),
        }
    }
}

/// Upper bounds for the sweeps; `None` fields fall back to the defaults.
#[derive(Debug, Clone, Copy, Default)]
pub struct Bounds {
    pub max_m: Option<i64>,
}

impl Bounds {
    fn m(&self, default: i64) -> i64 {
        self.max_m.unwrap_or(default)
    }
}

/// Runs `pred` on every point and collects the failing ones, sorted.
fn sweep(
    name: &str,
    range: String,
    points: Vec<Vec<i64>>,
    pred: impl Fn(&[i64]) -> bool + Sync,
) -> CheckReport {
    let mut failures: Vec<Vec<i64>> =
        points.par_iter().filter(|p| !pred(p)).cloned().collect();
    failures.sort();
    CheckReport { name: name.to_string(), range, points: points.len(), failures }
}

fn tri(ms: RangeInclusive<i64>, ks: impl Fn(i64) -> RangeInclusive<i64>) -> Vec<Vec<i64>> {
    ms.flat_map(|m| ks(m).map(move |k| vec![m, k])).collect()
}

pub fn run_suite(suite: Suite, bounds: Bounds) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Relations | Suite::All) {
        out.extend(relations_suite(bounds)?);
    }
    if matches!(suite, Suite::Integrality | Suite::All) {
        out.extend(integrality_suite(bounds));
    }
    if matches!(suite, Suite::Basis | Suite::All) {
        out.extend(basis_suite(bounds));
    }
    Ok(out)
}

pub fn relations_suite(bounds: Bounds) -> Result<Vec<CheckReport>> {
    let rel_m = bounds.m(40);
    let cert_m = bounds.m(20);
    let mixed_m = bounds.m(30);
    let frac_m = bounds.m(25);
    let corner_k = bounds.max_m.map_or(15, |m| (m / 2 + 2).max(3));
    let table = DTable::new(rel_m.max(mixed_m).max(2 * corner_k) + 1);
    let d = &table;

    let mut out = vec![
        sweep("REL1_VANISHES", format!("m∈[0,{rel_m}] k∈[0,m+4]"), tri(0..=rel_m, |m| 0..=m + 4), |p| {
            rel1_with(d, p[0], p[1]).is_zero()
        }),
        sweep("REL2_VANISHES", format!("m∈[0,{rel_m}] k∈[0,m+4]"), tri(0..=rel_m, |m| 0..=m + 4), |p| {
            rel2_with(d, p[0], p[1]).is_zero()
        }),
    ];
    let identities: [(IdentityId, Vec<RangeInclusive<i64>>); 7] = [
        (IdentityId::CertG, vec![0..=cert_m, 0..=cert_m, -2..=cert_m + 5]),
        (IdentityId::Rel1Recursion, vec![0..=mixed_m, 0..=mixed_m + 3]),
        (IdentityId::MixedRel1Rel2, vec![0..=mixed_m, 0..=mixed_m + 3]),
        (IdentityId::Rel2Recursion, vec![0..=mixed_m, 0..=mixed_m + 3]),
        (IdentityId::SigmaIRewrite, vec![0..=mixed_m, 0..=mixed_m + 3]),
        (IdentityId::FracSplit, vec![0..=frac_m, 0..=frac_m + 2, -2..=frac_m + 2]),
        (IdentityId::Rel2Corner, vec![3..=corner_k]),
    ];
    for (id, ranges) in identities {
        out.push(verify_identity_with(id, &ranges, d)?.into());
    }

    let sigma_m = bounds.m(30);
    out.push(sweep(
        "SIGMA_I",
        format!("m∈[0,{sigma_m}] k∈[0,m+2]"),
        tri(0..=sigma_m, |m| 0..=m + 2),
        |p| {
            let (m, k) = (p[0], p[1]);
            d.d(m, k) * BigInt::from(2 * (2 * k + 1)) + d.d(m, k + 1) * BigInt::from(k + 1)
                == iterm_sum(m, k)
        },
    ));
    let boundary_k = bounds.max_m.map_or(20, |m| (m + 3) / 2);
    out.push(sweep(
        "BOUNDARY_CLOSED_FORMS",
        format!("k∈[3,{boundary_k}]"),
        (3..=boundary_k).map(|k| vec![k]).collect(),
        |p| {
            let k = p[0];
            let (even, odd) = d_boundary(k).expect("k >= 3");
            even == d.d(2 * k - 2, k) && odd == d.d(2 * k - 3, k)
        },
    ));
    let rec_m = bounds.m(30);
    out.push(sweep(
        "RECURSION_MATCHES_DIRECT",
        format!("m∈[3,{rec_m}] k∈[0,m]"),
        tri(3..=rec_m, |m| 0..=m),
        |p| d_via_recursion(p[0], p[1]).map_or(true, |v| v == d.d(p[0], p[1])),
    ));
    Ok(out)
}

pub fn integrality_suite(bounds: Bounds) -> Vec<CheckReport> {
    let max_m = bounds.m(40);
    let table = DTable::new(max_m);
    let d = &table;
    let rows = tri(1..=max_m, |m| 0..=m);
    let mut out = vec![
        sweep("D_INTEGRAL", format!("m∈[1,{max_m}] k∈[0,m]"), rows.clone(), |p| {
            is_integer(&d.d(p[0], p[1]))
        }),
        sweep(
            "D_M0_VANISHES",
            format!("m∈[2,{max_m}]"),
            (2..=max_m).map(|m| vec![m]).collect(),
            |p| d.d(p[0], 0).is_zero(),
        ),
        sweep(
            "LOW_COLUMNS",
            format!("m∈[3,{max_m}]"),
            (3..=max_m).map(|m| vec![m]).collect(),
            |p| {
                let m = p[0];
                d.d(m, 1) == d.d(m, 0) * BigInt::from(-2) && d.d(m, 2) == d.d(m, 0) * BigInt::from(6)
            },
        ),
        sweep("KEY_MULTIPLE", format!("m∈[2,{max_m}] k∈[0,m]"), tri(2..=max_m, |m| 0..=m), |p| {
            let (m, k) = (p[0], p[1]);
            let lhs = d.d(m, k) * BigInt::from(m * (m - 1) * (2 * m + 1));
            is_integer(&(lhs / BigInt::from(3 * m * (m - 1))))
        }),
        sweep("SSE", format!("m∈[0,{max_m}] k∈[0,m], m>2k-2"), tri(0..=max_m, |m| 0..=m), |p| {
            let (m, k) = (p[0], p[1]);
            m <= 2 * k - 2 || (d.d(m, k) * BigInt::from(m * (m - 1))).is_zero()
        }),
    ];
    let frac_m = bounds.m(60);
    out.push(sweep(
        "FRAC_Z_HALF",
        format!("m∈[2,{frac_m}] k∈[0,m+1] i∈[0,m]"),
        (2..=frac_m)
            .flat_map(|m| (0..=m + 1).flat_map(move |k| (0..=m).map(move |i| vec![m, k, i])))
            .collect(),
        |p| {
            let (m, k, i) = (p[0], p[1], p[2]);
            let scale = BigRational::from_integer(BigInt::from(6 * m * (m - 1)));
            in_z_half(&(frac1(m, k, i) / &scale)) && in_z_half(&(frac2(m, k, i) / &scale))
        },
    ));
    let p_m = bounds.m(15).min(15);
    out.push(sweep(
        "P_INTEGER_VALUED",
        format!("m∈[0,{p_m}] x∈[-20,20]"),
        tri(0..=p_m, |_| -20..=20),
        |p| is_integer(&eval_p(p[0], p[1])),
    ));
    out
}

pub fn basis_suite(bounds: Bounds) -> Vec<CheckReport> {
    let max_m = bounds.m(25);
    let table = DTable::new(max_m);
    let d = &table;
    let kmax = max_m.max(40);
    let mut out = vec![
        sweep("B_TRIANGULAR", format!("0<=i<k<={kmax}"), tri(0..=kmax, |k| 0..=k), |p| {
            let (k, i) = (p[0], p[1]);
            let v = eval_b(k, i);
            if i < k {
                v.is_zero()
            } else if k == 0 {
                v == BigInt::from(2)
            } else {
                v.is_one()
            }
        }),
        sweep("DECOMPOSITION", format!("m∈[0,{max_m}]"), (0..=max_m).map(|m| vec![m]).collect(), |p| {
            let m = p[0];
            let values = EvenPolyValues::new((0..=m).map(|x| eval_p(m, x)).collect());
            let expected: Vec<BigRational> = (0..=m).map(|k| d.d(m, k)).collect();
            decompose(&values).coeffs == expected
        }),
    ];
    let tel_j = max_m.min(20);
    out.push(sweep(
        "TELESCOPING",
        format!("j∈[0,{tel_j}] x∈[-25,25]"),
        tri(0..=tel_j, |_| -25..=25),
        |p| {
            let (j, x) = (p[0], p[1]);
            let lhs = BigRational::from_integer(binom(x + j, j) * binom(x - 1, j) * sign_pow(j));
            let rhs: BigRational = (0..=j)
                .map(|k| {
                    BigRational::new(binom(2 * k, k) * eval_b(k, x) * sign_pow(k), BigInt::from(2))
                })
                .sum();
            lhs == rhs
        },
    ));
    let pv_m = max_m.min(20);
    out.push(sweep(
        "P_VANISHES_BELOW_DIAGONAL",
        format!("m∈[0,{pv_m}] 0<=2k-2<m"),
        tri(0..=pv_m, |m| 1..=(m + 1) / 2).into_iter().filter(|p| 2 * p[1] - 2 < p[0]).collect(),
        |p| eval_p(p[0], p[1]).is_zero(),
    ));
    out
}
