use std::fmt;

use num_traits::Zero;

use super::HodgeData;
use crate::connection::MatrixJet;
use crate::error::{JetError, Result};
use crate::jet_algebra::TruncatedSeries;
use crate::linalg::Matrix;

/// Affine chart on the flag variety of type `e_1 < … < e_s` in `m`-space.
///
/// `pivots[b]` is the cumulative pivot row set for step `b`, listed as the previous step's
/// rows followed by the new rows (each group ascending); `|pivots[b]| = e_b`. A flag `V_•`
/// lies in the chart when `W[P_b, ..e_b]` is invertible for a (any) matrix `W` whose first
/// `e_b` columns span `V_b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlagChart {
    m: usize,
    steps: Vec<usize>,
    pivots: Vec<Vec<usize>>,
}

impl FlagChart {
    /// `pivot_sets[b]` is the cumulative set of step `b` (any order); sets must be nested with
    /// sizes equal to `steps`.
    pub fn new(m: usize, steps: Vec<usize>, pivot_sets: &[Vec<usize>]) -> Result<Self> {
        let bad = |msg: &str| Err(JetError::InvalidHodgeData(msg.to_string()));
        if pivot_sets.len() != steps.len() {
            return bad("one pivot set per filtration step is required");
        }
        if steps.windows(2).any(|w| w[0] >= w[1]) || steps.iter().any(|&e| e == 0 || e >= m) {
            return bad("flag steps must be strictly increasing inside (0, m)");
        }
        let mut pivots: Vec<Vec<usize>> = Vec::with_capacity(steps.len());
        for (b, set) in pivot_sets.iter().enumerate() {
            let mut sorted = set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != steps[b] || sorted.iter().any(|&i| i >= m) {
                return bad("pivot set size does not match its filtration step");
            }
            let prev: Vec<usize> = pivots.last().cloned().unwrap_or_default();
            if prev.iter().any(|i| !sorted.contains(i)) {
                return bad("pivot sets must be nested");
            }
            let mut cumulative = prev.clone();
            cumulative.extend(sorted.into_iter().filter(|i| !prev.contains(i)));
            pivots.push(cumulative);
        }
        Ok(FlagChart { m, steps, pivots })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    /// Cumulative pivot rows of step `b`, ascending.
    pub fn pivot_set(&self, b: usize) -> Vec<usize> {
        let mut p = self.pivots[b].clone();
        p.sort_unstable();
        p
    }

    fn block_start(&self, b: usize) -> usize {
        if b == 0 {
            0
        } else {
            self.steps[b - 1]
        }
    }

    /// `(row, column)` of each chart coordinate, 0-based: block by block, column-major inside
    /// a block, rows ascending.
    pub fn coordinate_slots(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.steps.len() {
            for col in self.block_start(b)..self.steps[b] {
                for row in 0..self.m {
                    if !self.pivots[b].contains(&row) {
                        out.push((row, col));
                    }
                }
            }
        }
        out
    }

    /// `w{row}_{col}`, 1-based.
    pub fn coordinate_names(&self) -> Vec<String> {
        self.coordinate_slots()
            .into_iter()
            .map(|(r, c)| format!("w{}_{}", r + 1, c + 1))
            .collect()
    }

    /// Lexicographically smallest chart, step by step, containing the flag spanned by the
    /// leading columns of `w`.
    pub fn select(m: usize, steps: &[usize], w: &Matrix) -> Result<Self> {
        if w.rows() != m || steps.last().is_some_and(|&e| w.cols() < e) {
            return Err(JetError::NoValidChart);
        }
        let mut chosen: Vec<usize> = Vec::new();
        let mut sets = Vec::with_capacity(steps.len());
        let mut prev_e = 0;
        for &e in steps {
            let cols: Vec<usize> = (0..e).collect();
            let free: Vec<usize> = (0..m).filter(|i| !chosen.contains(i)).collect();
            let found = combinations(&free, e - prev_e).into_iter().find(|extra| {
                let mut rows = chosen.clone();
                rows.extend(extra);
                w.submatrix(&rows, &cols).is_invertible()
            });
            let Some(extra) = found else {
                return Err(JetError::NoValidChart);
            };
            chosen.extend(extra);
            sets.push(chosen.clone());
            prev_e = e;
        }
        FlagChart::new(m, steps.to_vec(), &sets)
    }
}

/// `k`-subsets of `items` in lexicographic order.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// A jet in a flag variety, in the coordinates of a [`FlagChart`].
#[derive(Clone, PartialEq, Debug)]
pub struct FlagJet {
    chart: FlagChart,
    dims: usize,
    order: u32,
    coords: Vec<TruncatedSeries>,
}

impl FlagJet {
    /// `coords` follow [`FlagChart::coordinate_slots`].
    pub fn new(
        chart: FlagChart,
        dims: usize,
        order: u32,
        coords: Vec<TruncatedSeries>,
    ) -> Result<Self> {
        let expected = chart.coordinate_slots().len();
        if coords.len() != expected {
            return Err(JetError::ArityMismatch {
                expected,
                found: coords.len(),
            });
        }
        for c in &coords {
            if c.shape() != (dims, order) {
                return Err(JetError::shape((dims, order), c.shape()));
            }
        }
        Ok(FlagJet {
            chart,
            dims,
            order,
            coords,
        })
    }

    pub fn chart(&self) -> &FlagChart {
        &self.chart
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[TruncatedSeries] {
        &self.coords
    }

    /// The coordinate named `w{row}_{col}` (1-based), if it is a chart coordinate.
    pub fn coordinate(&self, row: usize, col: usize) -> Option<&TruncatedSeries> {
        let slots = self.chart.coordinate_slots();
        let k = slots.iter().position(|&s| s == (row - 1, col - 1))?;
        Some(&self.coords[k])
    }

    pub fn named_coords(&self) -> Vec<(String, &TruncatedSeries)> {
        self.chart
            .coordinate_names()
            .into_iter()
            .zip(&self.coords)
            .collect()
    }

    /// The normalized `m × e_s` representative: column `c` of block `b` has `1` at its own pivot
    /// row, `0` at the other pivot rows of step `b`, and chart coordinates elsewhere. Its first
    /// `e_b` columns span step `b` of the flag.
    pub fn spanning_columns(&self) -> MatrixJet {
        let chart = &self.chart;
        let (d, r) = (self.dims, self.order);
        let e_last = *chart.steps.last().unwrap_or(&0);
        let mut out = MatrixJet::zeros(chart.m, e_last, d, r);
        for b in 0..chart.steps.len() {
            let start = chart.block_start(b);
            for col in start..chart.steps[b] {
                let own = chart.pivots[b][col];
                *out.entry_mut(own, col) = TruncatedSeries::one(d, r);
            }
        }
        for ((row, col), s) in chart.coordinate_slots().into_iter().zip(&self.coords) {
            *out.entry_mut(row, col) = s.clone();
        }
        out
    }

    pub fn restrict(&self, order: u32) -> Result<FlagJet> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.restrict(order))
            .collect::<Result<Vec<_>>>()?;
        FlagJet::new(self.chart.clone(), self.dims, order, coords)
    }
}

impl fmt::Display for FlagJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, s)) in self.named_coords().into_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{name} = {s}")?;
        }
        Ok(())
    }
}

/// The flag spanned by the leading column blocks of `f` (sizes from the Hodge data), in the
/// chart selected from its constant term.
pub fn flag_of_matrix(h: &HodgeData, f: &MatrixJet) -> Result<FlagJet> {
    let chart = FlagChart::select(h.m(), &h.flag_steps(), &f.constant_term())?;
    flag_in_chart(&chart, f)
}

/// The flag of `f` in a prescribed chart; `NoValidChart` if it is not in that chart's domain.
pub fn flag_in_chart(chart: &FlagChart, f: &MatrixJet) -> Result<FlagJet> {
    let m = chart.m;
    if f.rows() != m || chart.steps.last().is_some_and(|&e| f.cols() < e) {
        return Err(JetError::ArityMismatch {
            expected: m,
            found: f.rows(),
        });
    }
    let (d, r) = (f.dims(), f.order());
    let mut coords = Vec::new();
    for b in 0..chart.steps.len() {
        let e = chart.steps[b];
        let cols: Vec<usize> = (0..e).collect();
        let all_rows: Vec<usize> = (0..m).collect();
        let lead = f.submatrix(&all_rows, &cols);
        let minor = f.submatrix(&chart.pivots[b], &cols);
        let inv = minor.invert().map_err(|_| JetError::NoValidChart)?;
        let normalized = lead.mul(&inv)?;
        for col in chart.block_start(b)..e {
            for row in 0..m {
                if !chart.pivots[b].contains(&row) {
                    coords.push(normalized.entry(row, col).clone());
                }
            }
        }
    }
    FlagJet::new(chart.clone(), d, r, coords)
}

/// First Hodge-Riemann relation `Q(F^p, F^{w-p+1}) = 0`, checked on the spanning columns as
/// identities of truncated series.
pub fn check_hr1(h: &HodgeData, flag: &FlagJet) -> bool {
    let x = flag.spanning_columns();
    let q = h.polarization();
    let Ok(qx) = x.left_mul_matrix(q) else {
        return false;
    };
    let Ok(pairing) = x.transpose().mul(&qx) else {
        return false;
    };
    super::hr1_pairs(h.weight(), h.filtration_dims())
        .into_iter()
        .all(|(a_dim, b_dim)| (0..a_dim).all(|a| (0..b_dim).all(|b| pairing.entry(a, b).is_zero())))
}

/// `true` when the constant term of every pivot minor is invertible, i.e. the chart is valid
/// for this flag.
pub fn chart_contains(chart: &FlagChart, w: &Matrix) -> bool {
    (0..chart.steps.len()).all(|b| {
        let cols: Vec<usize> = (0..chart.steps[b]).collect();
        !w.submatrix(&chart.pivots[b], &cols).det().is_zero()
    })
}
