use serde::{Deserialize, Serialize};

use super::norms::ErrorReport;
use crate::error::{Error, Result};

/// Observed convergence order between two meshes. Serializes as a number,
/// or the string `"exact"` when the finer error vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Observed(f64),
    Exact,
}

impl Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Observed(v) => s.serialize_f64(*v),
            Order::Exact => s.serialize_str("exact"),
        }
    }
}

impl<'de> Deserialize<'de> for Order {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Tag(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Order::Observed(v)),
            Raw::Tag(t) if t == "exact" => Ok(Order::Exact),
            Raw::Tag(t) => Err(serde::de::Error::custom(format!("unexpected order '{t}'"))),
        }
    }
}

impl Order {
    pub fn value(self) -> Option<f64> {
        match self {
            Order::Observed(v) => Some(v),
            Order::Exact => None,
        }
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Observed(v) => write!(f, "{v:.4}"),
            Order::Exact => f.write_str("exact"),
        }
    }
}

/// `log(e1/e2) / log(h1/h2)`.
pub fn observed_order(e1: f64, h1: f64, e2: f64, h2: f64) -> Order {
    if e2 == 0.0 {
        Order::Exact
    } else {
        Order::Observed((e1 / e2).ln() / (h1 / h2).ln())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub m_coarse: usize,
    pub m_fine: usize,
    pub h1: Order,
    pub l2: Order,
    pub l2_boundary: Order,
    pub sigma: Order,
    pub dg: Order,
    pub dg_pair: Order,
}

/// Orders between consecutive reports (same method, `k` and parameters,
/// strictly decreasing `h`), based on absolute errors.
pub fn convergence_rates(reports: &[ErrorReport]) -> Result<Vec<RateRow>> {
    if reports.len() < 2 {
        return Err(Error::InvalidArgument("need at least two reports".into()));
    }
    let first = &reports[0];
    for r in reports {
        if r.method != first.method || r.k != first.k || r.params != first.params {
            return Err(Error::InvalidArgument(
                "reports differ in method, k or parameters".into(),
            ));
        }
    }
    reports
        .windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            if !(b.h < a.h) {
                return Err(Error::InvalidArgument(
                    "mesh sizes must strictly decrease".into(),
                ));
            }
            let o = |x: f64, y: f64| observed_order(x, a.h, y, b.h);
            Ok(RateRow {
                m_coarse: a.m,
                m_fine: b.m,
                h1: o(a.h1.abs, b.h1.abs),
                l2: o(a.l2.abs, b.l2.abs),
                l2_boundary: o(a.l2_boundary.abs, b.l2_boundary.abs),
                sigma: o(a.sigma.abs, b.sigma.abs),
                dg: o(a.dg.abs, b.dg.abs),
                dg_pair: o(a.dg_pair.abs, b.dg_pair.abs),
            })
        })
        .collect()
}
