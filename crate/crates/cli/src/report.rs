//! JSON reports. Every report re-parses to an identical value.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::format::Q;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeReport {
    pub vol_z: i64,
    pub index: i64,
    pub vol_za: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemCheck {
    pub rank: usize,
    pub feasible: bool,
    pub infinite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub n: usize,
    pub circuit: bool,
    #[serde(rename = "B")]
    pub b: Vec<i64>,
    pub volumes: Option<VolumeReport>,
    pub max_bound: Option<usize>,
    pub system: Option<SystemCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub applies: bool,
    pub parity: u8,
    pub positive_guaranteed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(rename = "B")]
    pub b: Vec<i64>,
    #[serde(rename = "P")]
    pub p: Vec<[Q; 2]>,
    pub feasible: bool,
    pub classes: Vec<Vec<usize>>,
    pub epsilon: i8,
    pub sigma: Vec<usize>,
    pub sigma_bar: Vec<usize>,
    /// `supplied` or `computed`.
    pub ordering_source: String,
    /// Whether the ordering is an ordering of `P`.
    pub ordering_valid: bool,
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub sgnvar_lambda: usize,
    pub sgnvar_mu: usize,
    pub bound_new: usize,
    pub bound_old: usize,
    pub volume_bound: i64,
    pub max_bound: usize,
    pub parity: ParityReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootReport {
    pub lo: Q,
    pub hi: Q,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub count: usize,
    pub infinite: bool,
    /// Isolating intervals in the `y` coordinate of the normalized Gale dual.
    pub roots: Vec<RootReport>,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub s: usize,
    pub summands: Vec<[usize; 2]>,
    pub volume: Q,
    pub decorated: bool,
    pub z: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpenReport {
    #[serde(rename = "B")]
    pub b: Vec<i64>,
    pub classes: Vec<Vec<usize>>,
    pub sigma: Vec<usize>,
    pub mu: Vec<i64>,
    /// `l_s`: positions where `mu` changes sign; cell `s` has volume
    /// `|mu[l_s]|`.
    pub change_indices: Vec<usize>,
    pub bound: usize,
    /// Blocks `M_0, ..., M_{m+1}` as original indices.
    pub blocks: Vec<Vec<usize>>,
    pub alphas: Vec<i64>,
    /// Height of each monomial; `null` for the last block.
    pub heights: Vec<Option<Q>>,
    pub t: Q,
    pub halvings: u32,
    #[serde(rename = "C_t")]
    pub c_t: Vec<Vec<Q>>,
    #[serde(rename = "P_t")]
    pub p_t: Vec<[Q; 2]>,
    pub cells: Vec<CellReport>,
    pub decorated_cells: usize,
    pub oracle_count: usize,
    pub ordering_strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarReport {
    #[serde(rename = "B")]
    pub b: Vec<i64>,
    pub fundamental_rep: [Q; 4],
    pub exceptional: bool,
    pub max_positive: usize,
    pub max_bound: usize,
}

fn list<T: std::fmt::Display>(v: &[T]) -> String {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", items.join(", "))
}

fn classes(v: &[Vec<usize>]) -> String {
    let items: Vec<String> = v.iter().map(|c| list(c)).collect();
    items.join(" ")
}

/// Plain-text rendering for terminals.
pub trait TextReport {
    fn text(&self) -> String;
}

impl TextReport for CheckReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n          {}", self.n);
        let _ = writeln!(s, "circuit    {}", self.circuit);
        let _ = writeln!(s, "B          {}", list(&self.b));
        if let Some(v) = &self.volumes {
            let _ = writeln!(s, "vol_Z      {}", v.vol_z);
            let _ = writeln!(s, "index      {}", v.index);
            let _ = writeln!(s, "vol_ZA     {}", v.vol_za);
        }
        if let Some(m) = self.max_bound {
            let _ = writeln!(s, "max bound  {m}");
        }
        if let Some(sys) = &self.system {
            let _ = writeln!(s, "rank C     {}", sys.rank);
            let _ = writeln!(s, "feasible   {}", sys.feasible);
            let _ = writeln!(s, "infinite   {}", sys.infinite);
        }
        s
    }
}

impl TextReport for BoundReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "B              {}", list(&self.b));
        let _ = writeln!(
            s,
            "classes        {}  (epsilon {}, {}{})",
            classes(&self.classes),
            self.epsilon,
            self.ordering_source,
            if self.ordering_valid {
                ""
            } else {
                ", not an ordering of P"
            }
        );
        let _ = writeln!(s, "lambda         {}", list(&self.lambda));
        let _ = writeln!(s, "mu             {}", list(&self.mu));
        let _ = writeln!(s, "bound          {}", self.bound_new);
        let _ = writeln!(s, "old bound      {}", self.bound_old);
        let _ = writeln!(s, "volume bound   {}", self.volume_bound);
        let _ = writeln!(s, "max bound      {}", self.max_bound);
        if self.parity.applies {
            let _ = writeln!(s, "parity         {}", self.parity.parity);
        }
        s
    }
}

impl TextReport for CountReport {
    fn text(&self) -> String {
        if self.infinite {
            return "infinitely many positive solutions\n".into();
        }
        let mut s = format!("count {}\n", self.count);
        for r in &self.roots {
            let _ = writeln!(s, "  ({}, {}) x{}", r.lo, r.hi, r.multiplicity);
        }
        s
    }
}

impl TextReport for SharpenReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "B          {}", list(&self.b));
        let _ = writeln!(s, "classes    {}", classes(&self.classes));
        let _ = writeln!(s, "mu         {}", list(&self.mu));
        let _ = writeln!(s, "bound      {}", self.bound);
        let _ = writeln!(s, "t          {}", self.t);
        let _ = writeln!(s, "count      {}", self.oracle_count);
        for c in &self.cells {
            let _ = writeln!(
                s,
                "cell {}     volume {}{}",
                c.s,
                c.volume,
                if c.decorated { ", decorated" } else { "" }
            );
        }
        s
    }
}

impl TextReport for PlanarReport {
    fn text(&self) -> String {
        format!(
            "B            {}\nrepresentative {}\nexceptional  {}\nmax positive {}\n",
            list(&self.b),
            list(&self.fundamental_rep),
            self.exceptional,
            self.max_positive
        )
    }
}
