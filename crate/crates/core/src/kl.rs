//! Classical Kazhdan-Lusztig polynomials and the structure constants of the
//! canonical basis of `H_q`.

use rayon::prelude::*;
use thiserror::Error;

use crate::coxeter::{CoxeterGroup, ElementId};
use crate::laurent::{Coeff, LaurentError, LaurentPoly, PolyId, PolyPool};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("entry ({y}, {w}) violates the degree bound or is not in Z[q]: {poly}")]
    DegreeBound {
        y: ElementId,
        w: ElementId,
        poly: String,
    },
    #[error("entry ({y}, {w}): {source}")]
    Arithmetic {
        y: ElementId,
        w: ElementId,
        source: LaurentError,
    },
    #[error("tables being combined have different key sets")]
    KeyMismatch,
}

/// Checks the shape every KL-type polynomial must have: `P_{w,w} = 1` and,
/// for `y < w`, an element of `Z[q]` of q-degree at most `(l(w) - l(y) - 1) / 2`.
pub(crate) fn check_kl_shape(
    p: &LaurentPoly,
    y: ElementId,
    w: ElementId,
    gap: usize,
) -> Result<(), TableError> {
    let ok = if y == w {
        p.is_one()
    } else {
        p.is_zero() || (p.is_polynomial_in_q() && (p.degree() as i64) < gap as i64)
    };
    if ok {
        Ok(())
    } else {
        Err(TableError::DegreeBound {
            y,
            w,
            poly: p.to_string(),
        })
    }
}

/// `P_{y,w}` for all `y, w` in a finite Coxeter group, with `mu` lists.
///
/// Polynomials are stored in `v` (so `q^k` is the exponent `2k`), interned
/// in a pool, densely indexed by `(w, y)`; entries with `y` not below `w`
/// are the zero polynomial.
#[derive(Clone)]
pub struct KlTable {
    n: usize,
    pool: PolyPool,
    entries: Vec<PolyId>,
    /// For each `w`: all `z < w` with `mu(z, w) != 0`, increasing `z`.
    mu: Vec<Vec<(ElementId, Coeff)>>,
}

impl KlTable {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn pool(&self) -> &PolyPool {
        &self.pool
    }

    pub fn p_id(&self, y: ElementId, w: ElementId) -> PolyId {
        self.entries[w as usize * self.n + y as usize]
    }

    /// `P_{y,w}`.
    pub fn p(&self, y: ElementId, w: ElementId) -> &LaurentPoly {
        self.pool.get(self.p_id(y, w))
    }

    /// Coefficient of `v^{l(w) - l(y) - 1}` in `P_{y,w}`.
    pub fn mu(&self, g: &CoxeterGroup, y: ElementId, w: ElementId) -> Coeff {
        let gap = g.length(w) as i32 - g.length(y) as i32;
        if gap <= 0 || gap % 2 == 0 {
            return 0;
        }
        self.p(y, w).coefficient(gap - 1)
    }

    /// All `z` with `mu(z, w) != 0`.
    pub fn mu_list(&self, w: ElementId) -> &[(ElementId, Coeff)] {
        &self.mu[w as usize]
    }

    /// Nonzero entries `(y, w, P_{y,w})` in `(w, y)` order.
    pub fn iter(&self) -> impl Iterator<Item = (ElementId, ElementId, &LaurentPoly)> + '_ {
        let n = self.n;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &id)| id != PolyPool::ZERO)
            .map(move |(k, &id)| {
                (
                    (k % n) as ElementId,
                    (k / n) as ElementId,
                    self.pool.get(id),
                )
            })
    }
}

impl KlTable {
    /// Rebuilds a table from stored nonzero entries `(y, w, P_{y,w})`,
    /// checking the shape of every entry and recomputing the `mu` lists.
    pub fn from_entries(
        g: &CoxeterGroup,
        entries: impl IntoIterator<Item = (ElementId, ElementId, LaurentPoly)>,
    ) -> Result<Self, TableError> {
        let n = g.size();
        let mut table = KlTable {
            n,
            pool: PolyPool::new(),
            entries: vec![PolyPool::ZERO; n * n],
            mu: vec![Vec::new(); n],
        };
        for (y, w, p) in entries {
            if y as usize >= n || w as usize >= n {
                return Err(TableError::KeyMismatch);
            }
            let gap = g.length(w) as i32 - g.length(y) as i32;
            if gap < 0 || (gap == 0 && y != w) {
                return Err(TableError::KeyMismatch);
            }
            check_kl_shape(&p, y, w, gap as usize)?;
            if gap % 2 == 1 && p.coefficient(gap - 1) != 0 {
                table.mu[w as usize].push((y, p.coefficient(gap - 1)));
            }
            table.entries[w as usize * n + y as usize] = table.pool.intern(p);
        }
        for w in 0..n {
            if table.entries[w * n + w] != PolyPool::ONE {
                return Err(TableError::KeyMismatch);
            }
            table.mu[w].sort_unstable();
        }
        Ok(table)
    }
}

impl std::fmt::Debug for KlTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KlTable({} elements, {:?})", self.n, self.pool)
    }
}

/// Contiguous index ranges of elements of equal length.
pub(crate) fn length_strata(lengths: impl Iterator<Item = usize>) -> Vec<std::ops::Range<usize>> {
    let mut out: Vec<std::ops::Range<usize>> = Vec::new();
    let mut last = usize::MAX;
    for (i, l) in lengths.enumerate() {
        if l != last {
            out.push(i..i + 1);
            last = l;
        } else {
            out.last_mut().unwrap().end = i + 1;
        }
    }
    out
}

/// Computes every `P_{y,w}` by the recursion through the least left descent
/// `s` of `w`: with `c = [sy < y]`,
/// `P_{y,w} = q^{1-c} P_{sy,sw} + q^c P_{y,sw} - sum mu(z,sw) q^{(l(w)-l(z))/2} P_{y,z}`
/// over `z` with `sz < z` and `mu(z, sw) != 0`.
pub fn compute_kl(g: &CoxeterGroup) -> Result<KlTable, TableError> {
    let n = g.size();
    let mut table = KlTable {
        n,
        pool: PolyPool::new(),
        entries: vec![PolyPool::ZERO; n * n],
        mu: vec![Vec::new(); n],
    };
    table.entries[0] = PolyPool::ONE;

    for stratum in length_strata(g.elements().map(|w| g.length(w)))
        .into_iter()
        .skip(1)
    {
        let columns: Vec<Result<Vec<(ElementId, LaurentPoly)>, TableError>> = stratum
            .clone()
            .into_par_iter()
            .map(|w| kl_column(g, &table, w as ElementId))
            .collect();
        for (w, column) in stratum.zip(columns) {
            let column = column?;
            let lw = g.length(w as ElementId) as i32;
            for (y, p) in column {
                let gap = lw - g.length(y) as i32;
                if gap % 2 == 1 {
                    let m = p.coefficient(gap - 1);
                    if m != 0 {
                        table.mu[w].push((y, m));
                    }
                }
                table.entries[w * n + y as usize] = table.pool.intern(p);
            }
        }
    }
    Ok(table)
}

fn kl_column(
    g: &CoxeterGroup,
    table: &KlTable,
    w: ElementId,
) -> Result<Vec<(ElementId, LaurentPoly)>, TableError> {
    let s = g.left_descents(w).trailing_zeros() as usize;
    let v = g.lmul(s, w);
    let lw = g.length(w) as i32;
    let corrections: Vec<(ElementId, Coeff)> = table
        .mu_list(v)
        .iter()
        .copied()
        .filter(|&(z, _)| g.is_left_descent(s, z))
        .collect();
    let mut out = Vec::new();
    for y in g.lower_ideal(w).ones() {
        let y = y as ElementId;
        if y == w {
            out.push((y, LaurentPoly::one()));
            continue;
        }
        let sy = g.lmul(s, y);
        let c = i32::from(g.length(sy) < g.length(y));
        let mut p = LaurentPoly::zero();
        p.add_scaled_shifted_assign(table.p(sy, v), 1, 2 * (1 - c));
        p.add_scaled_shifted_assign(table.p(y, v), 1, 2 * c);
        for &(z, m) in &corrections {
            let pyz = table.p(y, z);
            if !pyz.is_zero() {
                p.add_scaled_shifted_assign(pyz, -m, lw - g.length(z) as i32);
            }
        }
        check_kl_shape(&p, y, w, (lw - g.length(y) as i32) as usize)?;
        out.push((y, p));
    }
    Ok(out)
}

/// Which family a [`ConstantsTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantsKind {
    /// `c_x c_y = sum_z h_{x,y;z} c_z`.
    H,
    /// Coefficients of `c_x c_y c_{(x*)^{-1}}`, `y, z` twisted involutions.
    HTilde,
    /// `C_x A_y = sum_z h^sigma_{x,y;z} A_z`.
    HSigma,
    HPlus,
    HMinus,
    /// Triple products `c_w c_x c_y`.
    F,
}

/// A row `(z, poly)` of a constants table, sorted by `z`, zero-free.
pub type ConstantsRow = Vec<(ElementId, PolyId)>;

/// Sparse three-index family `(x, y; z)`.
///
/// Rows are keyed by `(x, y)` with `x` ranging over `xs` and `y` over `ys`;
/// lookups outside the stored rows return zero.
#[derive(Clone)]
pub struct ConstantsTable {
    kind: ConstantsKind,
    xs: Vec<ElementId>,
    ys: Vec<ElementId>,
    x_pos: Vec<u32>,
    y_pos: Vec<u32>,
    pool: PolyPool,
    rows: Vec<ConstantsRow>,
}

const ABSENT: u32 = u32::MAX;

fn positions(n: usize, keys: &[ElementId]) -> Vec<u32> {
    let mut pos = vec![ABSENT; n];
    for (i, &k) in keys.iter().enumerate() {
        pos[k as usize] = i as u32;
    }
    pos
}

impl ConstantsTable {
    /// Builds a table from rows given in `(x, y)` order.
    pub fn from_rows(
        kind: ConstantsKind,
        n: usize,
        xs: Vec<ElementId>,
        ys: Vec<ElementId>,
        rows: Vec<Vec<(ElementId, LaurentPoly)>>,
    ) -> Self {
        assert_eq!(rows.len(), xs.len() * ys.len());
        let mut pool = PolyPool::new();
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(z, p)| (z, pool.intern(p)))
                    .collect()
            })
            .collect();
        ConstantsTable {
            kind,
            x_pos: positions(n, &xs),
            y_pos: positions(n, &ys),
            xs,
            ys,
            pool,
            rows,
        }
    }

    /// Builds a table from already interned, zero-free rows.
    pub fn from_interned(
        kind: ConstantsKind,
        n: usize,
        xs: Vec<ElementId>,
        ys: Vec<ElementId>,
        pool: PolyPool,
        rows: Vec<ConstantsRow>,
    ) -> Self {
        assert_eq!(rows.len(), xs.len() * ys.len());
        ConstantsTable {
            kind,
            x_pos: positions(n, &xs),
            y_pos: positions(n, &ys),
            xs,
            ys,
            pool,
            rows,
        }
    }

    /// Builds a table from `(x, y, z, poly)` entries; rows are keyed by
    /// `xs` and `ys`, and an entry outside them is a key mismatch.
    pub fn from_entries(
        kind: ConstantsKind,
        n: usize,
        xs: Vec<ElementId>,
        ys: Vec<ElementId>,
        entries: impl IntoIterator<Item = (ElementId, ElementId, ElementId, LaurentPoly)>,
    ) -> Result<Self, TableError> {
        let x_pos = positions(n, &xs);
        let y_pos = positions(n, &ys);
        let mut rows: Vec<Vec<(ElementId, LaurentPoly)>> = vec![Vec::new(); xs.len() * ys.len()];
        for (x, y, z, p) in entries {
            let (Some(&xp), Some(&yp)) = (x_pos.get(x as usize), y_pos.get(y as usize)) else {
                return Err(TableError::KeyMismatch);
            };
            if xp == ABSENT || yp == ABSENT || z as usize >= n {
                return Err(TableError::KeyMismatch);
            }
            rows[xp as usize * ys.len() + yp as usize].push((z, p));
        }
        for row in &mut rows {
            row.sort_by_key(|e| e.0);
            if row.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(TableError::KeyMismatch);
            }
        }
        Ok(Self::from_rows(kind, n, xs, ys, rows))
    }

    pub fn kind(&self) -> ConstantsKind {
        self.kind
    }

    pub fn xs(&self) -> &[ElementId] {
        &self.xs
    }

    pub fn ys(&self) -> &[ElementId] {
        &self.ys
    }

    pub fn pool(&self) -> &PolyPool {
        &self.pool
    }

    /// Row `(x, y)`, or `None` if the key lies outside the table's domain.
    pub fn row(&self, x: ElementId, y: ElementId) -> Option<&[(ElementId, PolyId)]> {
        let (px, py) = (self.x_pos[x as usize], self.y_pos[y as usize]);
        if px == ABSENT || py == ABSENT {
            return None;
        }
        Some(&self.rows[px as usize * self.ys.len() + py as usize])
    }

    /// The entry at `(x, y; z)`, zero when absent.
    pub fn get(&self, x: ElementId, y: ElementId, z: ElementId) -> &LaurentPoly {
        let id = self
            .row(x, y)
            .and_then(|r| r.binary_search_by_key(&z, |e| e.0).ok().map(|i| r[i].1))
            .unwrap_or(PolyPool::ZERO);
        self.pool.get(id)
    }

    /// Nonzero entries `(x, y, z, poly)` in key order.
    pub fn iter(
        &self,
    ) -> impl Iterator<Item = (ElementId, ElementId, ElementId, &LaurentPoly)> + '_ {
        let ny = self.ys.len();
        self.rows.iter().enumerate().flat_map(move |(k, row)| {
            let (x, y) = (self.xs[k / ny], self.ys[k % ny]);
            row.iter().map(move |&(z, id)| (x, y, z, self.pool.get(id)))
        })
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl std::fmt::Debug for ConstantsTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ConstantsTable({:?}, {} entries)", self.kind, self.len())
    }
}

/// Dense accumulator over element indices with a list of touched slots.
pub(crate) struct Accumulator {
    slots: Vec<LaurentPoly>,
    touched: Vec<ElementId>,
    live: Vec<bool>,
}

impl Accumulator {
    pub fn new(n: usize) -> Self {
        Accumulator {
            slots: vec![LaurentPoly::zero(); n],
            touched: Vec::new(),
            live: vec![false; n],
        }
    }

    fn slot(&mut self, z: ElementId) -> &mut LaurentPoly {
        if !self.live[z as usize] {
            self.live[z as usize] = true;
            self.touched.push(z);
        }
        &mut self.slots[z as usize]
    }

    pub fn add_scaled_shifted(&mut self, z: ElementId, p: &LaurentPoly, k: Coeff, shift: i32) {
        if !p.is_zero() && k != 0 {
            self.slot(z).add_scaled_shifted_assign(p, k, shift);
        }
    }

    pub fn add_product(&mut self, z: ElementId, a: &LaurentPoly, b: &LaurentPoly) {
        if !a.is_zero() && !b.is_zero() {
            self.slot(z).add_product_assign(a, b);
        }
    }

    /// Drains the nonzero entries, sorted by index.
    pub fn drain(&mut self) -> Vec<(ElementId, LaurentPoly)> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for z in self.touched.drain(..) {
            self.live[z as usize] = false;
            let p = std::mem::take(&mut self.slots[z as usize]);
            if !p.is_zero() {
                out.push((z, p));
            }
        }
        out
    }
}

/// Computes `h_{x,y;z}` for all `x, y, z`.
///
/// The slice for `x` comes from the slice for `sx` (least left descent `s`):
/// `c_x c_y = c_s (c_{sx} c_y) - sum mu(x', sx) c_{x'} c_y` over `sx' < x'`,
/// with `c_s` acting on the canonical basis by the multiplication rule
/// `c_s c_z = (v + v^{-1}) c_z` if `sz < z`, else
/// `c_{sz} + sum_{sz' < z' < z} mu(z', z) c_{z'}`.
pub fn compute_h(g: &CoxeterGroup, kl: &KlTable) -> ConstantsTable {
    let n = g.size();
    let all: Vec<ElementId> = g.elements().collect();
    let mut pool = PolyPool::new();
    let mut slices: Vec<Vec<ConstantsRow>> = Vec::with_capacity(n);
    slices.push(all.iter().map(|&y| vec![(y, PolyPool::ONE)]).collect());

    for stratum in length_strata(g.elements().map(|w| g.length(w)))
        .into_iter()
        .skip(1)
    {
        let fresh: Vec<Vec<Vec<(ElementId, LaurentPoly)>>> = stratum
            .into_par_iter()
            .map(|x| {
                let x = x as ElementId;
                let s = g.left_descents(x).trailing_zeros() as usize;
                let x0 = g.lmul(s, x);
                let corrections: Vec<(ElementId, Coeff)> = kl
                    .mu_list(x0)
                    .iter()
                    .copied()
                    .filter(|&(xp, _)| g.is_left_descent(s, xp))
                    .collect();
                let mut acc = Accumulator::new(n);
                all.iter()
                    .map(|&y| {
                        for &(z, a) in &slices[x0 as usize][y as usize] {
                            c_s_times_c_z(g, kl, s, z, pool.get(a), &mut acc);
                        }
                        for &(xp, m) in &corrections {
                            for &(z, a) in &slices[xp as usize][y as usize] {
                                acc.add_scaled_shifted(z, pool.get(a), -m, 0);
                            }
                        }
                        acc.drain()
                    })
                    .collect()
            })
            .collect();
        for slice in fresh {
            slices.push(intern_rows(&mut pool, slice));
        }
    }

    let rows = slices.into_iter().flatten().collect();
    ConstantsTable::from_interned(ConstantsKind::H, n, all.clone(), all, pool, rows)
}

pub(crate) fn intern_rows(
    pool: &mut PolyPool,
    rows: Vec<Vec<(ElementId, LaurentPoly)>>,
) -> Vec<ConstantsRow> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|(z, p)| (z, pool.intern(p))).collect())
        .collect()
}

/// Adds `a c_s c_z` to an accumulator over the canonical basis.
fn c_s_times_c_z(
    g: &CoxeterGroup,
    kl: &KlTable,
    s: usize,
    z: ElementId,
    a: &LaurentPoly,
    acc: &mut Accumulator,
) {
    let sz = g.lmul(s, z);
    if g.length(sz) < g.length(z) {
        acc.add_scaled_shifted(z, a, 1, 1);
        acc.add_scaled_shifted(z, a, 1, -1);
    } else {
        acc.add_scaled_shifted(sz, a, 1, 0);
        for &(zp, m) in kl.mu_list(z) {
            if g.is_left_descent(s, zp) {
                acc.add_scaled_shifted(zp, a, m, 0);
            }
        }
    }
}

/// `f_{w,x,y;z} = sum_g h_{w,x;g} h_{g,y;z}`: the canonical-basis
/// coefficients of `c_w c_x c_y`.
pub fn compute_f(
    g: &CoxeterGroup,
    h: &ConstantsTable,
    w: ElementId,
    x: ElementId,
    y: ElementId,
) -> Vec<(ElementId, LaurentPoly)> {
    let mut acc = Accumulator::new(g.size());
    for &(mid, a) in h.row(w, x).unwrap_or(&[]) {
        for &(z, b) in h.row(mid, y).unwrap_or(&[]) {
            acc.add_product(z, h.pool().get(a), h.pool().get(b));
        }
    }
    acc.drain()
}
