//! The twisted involution module: `P^sigma`, its `mu`/`nu`/`m` coefficients,
//! the module structure constants `h^sigma`, the triple-product constants
//! `h~`, and the half-sum/half-difference families `P^±`, `h^±`.

use rayon::prelude::*;

use crate::coxeter::{CoxeterGroup, ElementId};
use crate::kl::{
    check_kl_shape, intern_rows, length_strata, Accumulator, ConstantsKind, ConstantsRow,
    ConstantsTable, KlTable, TableError,
};
use crate::laurent::{Coeff, LaurentPoly, PolyId, PolyPool};

/// A dense family indexed by pairs of twisted involutions `(y, w)`.
#[derive(Clone)]
pub struct PairTable {
    twisted: Vec<ElementId>,
    pos: Vec<u32>,
    pool: PolyPool,
    /// `entries[wpos * t + ypos]`.
    entries: Vec<PolyId>,
}

impl PairTable {
    fn empty(g: &CoxeterGroup) -> Self {
        let twisted = g.twisted_involutions().to_vec();
        let mut pos = vec![u32::MAX; g.size()];
        for (i, &w) in twisted.iter().enumerate() {
            pos[w as usize] = i as u32;
        }
        let t = twisted.len();
        PairTable {
            twisted,
            pos,
            pool: PolyPool::new(),
            entries: vec![PolyPool::ZERO; t * t],
        }
    }

    fn slot(&self, y: ElementId, w: ElementId) -> Option<usize> {
        let (py, pw) = (*self.pos.get(y as usize)?, *self.pos.get(w as usize)?);
        if py == u32::MAX || pw == u32::MAX {
            return None;
        }
        Some(pw as usize * self.twisted.len() + py as usize)
    }

    fn set(&mut self, y: ElementId, w: ElementId, p: LaurentPoly) {
        let k = self.slot(y, w).expect("twisted involution keys");
        self.entries[k] = self.pool.intern(p);
    }

    /// The entry at `(y, w)`; zero for keys outside the table.
    pub fn get(&self, y: ElementId, w: ElementId) -> &LaurentPoly {
        let id = self.slot(y, w).map_or(PolyPool::ZERO, |k| self.entries[k]);
        self.pool.get(id)
    }

    pub fn twisted(&self) -> &[ElementId] {
        &self.twisted
    }

    pub fn pool(&self) -> &PolyPool {
        &self.pool
    }

    /// Nonzero entries `(y, w, poly)` in `(w, y)` order.
    pub fn iter(&self) -> impl Iterator<Item = (ElementId, ElementId, &LaurentPoly)> + '_ {
        let t = self.twisted.len();
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &id)| id != PolyPool::ZERO)
            .map(move |(k, &id)| (self.twisted[k % t], self.twisted[k / t], self.pool.get(id)))
    }

    /// Builds a table from explicit nonzero entries.
    pub fn from_entries(
        g: &CoxeterGroup,
        entries: impl IntoIterator<Item = (ElementId, ElementId, LaurentPoly)>,
    ) -> Self {
        let mut out = Self::empty(g);
        for (y, w, p) in entries {
            out.set(y, w, p);
        }
        out
    }
}

impl std::fmt::Debug for PairTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PairTable({} twisted involutions)", self.twisted.len())
    }
}

/// The twisted KL polynomials `P^sigma_{y,w}` with their `mu^sigma` lists.
#[derive(Clone, Debug)]
pub struct SigmaTable {
    pairs: PairTable,
    /// For each twisted involution `w` (by position): all `y` with
    /// `mu^sigma(y, w) != 0`.
    mu: Vec<Vec<(ElementId, Coeff)>>,
}

/// Read access to (possibly partially computed) `P^sigma` values.
trait SigmaSource {
    fn psigma(&self, y: ElementId, w: ElementId) -> &LaurentPoly;
    fn mu_list(&self, w: ElementId) -> &[(ElementId, Coeff)];
}

fn mu_sigma_of(src: &impl SigmaSource, g: &CoxeterGroup, y: ElementId, w: ElementId) -> Coeff {
    let gap = g.length(w) as i32 - g.length(y) as i32;
    if gap <= 0 || gap % 2 == 0 {
        return 0;
    }
    src.psigma(y, w).coefficient(gap - 1)
}

fn nu_sigma_of(src: &impl SigmaSource, g: &CoxeterGroup, y: ElementId, w: ElementId) -> Coeff {
    let gap = g.length(w) as i32 - g.length(y) as i32;
    if gap <= 0 || gap % 2 == 1 {
        return 0;
    }
    src.psigma(y, w).coefficient(gap - 2)
}

/// `nu(y,w) + [sy = ys*] mu(sy,w) - [sw = ws*] mu(y,sw)
///  - sum_{x twisted, sx < x} mu(y,x) mu(x,w)`.
fn mu_sigma_s_of(
    src: &impl SigmaSource,
    g: &CoxeterGroup,
    y: ElementId,
    w: ElementId,
    s: usize,
) -> Coeff {
    let mut total = nu_sigma_of(src, g, y, w);
    if g.is_ltimes_short(s, y) {
        total += mu_sigma_of(src, g, g.lmul(s, y), w);
    }
    if g.is_ltimes_short(s, w) {
        total -= mu_sigma_of(src, g, y, g.lmul(s, w));
    }
    for &(x, m) in src.mu_list(w) {
        if g.is_left_descent(s, x) {
            total -= mu_sigma_of(src, g, y, x) * m;
        }
    }
    total
}

/// `mu^sigma(y,w) (v + v^{-1})` for odd `l(w) - l(y)`, else `mu^sigma(y,w;s)`.
fn m_sigma_of(
    src: &impl SigmaSource,
    g: &CoxeterGroup,
    y: ElementId,
    w: ElementId,
    s: usize,
) -> LaurentPoly {
    let gap = g.length(w) as i32 - g.length(y) as i32;
    if gap.rem_euclid(2) == 1 {
        LaurentPoly::u().scale(mu_sigma_of(src, g, y, w))
    } else {
        LaurentPoly::constant(mu_sigma_s_of(src, g, y, w, s))
    }
}

impl SigmaSource for SigmaTable {
    fn psigma(&self, y: ElementId, w: ElementId) -> &LaurentPoly {
        self.pairs.get(y, w)
    }

    fn mu_list(&self, w: ElementId) -> &[(ElementId, Coeff)] {
        match self.pairs.pos.get(w as usize) {
            Some(&p) if p != u32::MAX => &self.mu[p as usize],
            _ => &[],
        }
    }
}

impl SigmaTable {
    /// `P^sigma_{y,w}`; zero unless `y <= w` are twisted involutions.
    pub fn p(&self, y: ElementId, w: ElementId) -> &LaurentPoly {
        self.pairs.get(y, w)
    }

    pub fn pairs(&self) -> &PairTable {
        &self.pairs
    }

    pub fn twisted(&self) -> &[ElementId] {
        &self.pairs.twisted
    }

    /// Coefficient of `v^{l(w) - l(y) - 1}` in `P^sigma_{y,w}`.
    pub fn mu_sigma(&self, g: &CoxeterGroup, y: ElementId, w: ElementId) -> Coeff {
        mu_sigma_of(self, g, y, w)
    }

    /// Coefficient of `v^{l(w) - l(y) - 2}` in `P^sigma_{y,w}`.
    pub fn nu_sigma(&self, g: &CoxeterGroup, y: ElementId, w: ElementId) -> Coeff {
        nu_sigma_of(self, g, y, w)
    }

    /// The integer `mu^sigma(y, w; s)`.
    pub fn mu_sigma_s(&self, g: &CoxeterGroup, y: ElementId, w: ElementId, s: usize) -> Coeff {
        mu_sigma_s_of(self, g, y, w, s)
    }

    /// The Laurent polynomial `m^sigma(y ->s w)`.
    pub fn m_sigma(&self, g: &CoxeterGroup, y: ElementId, w: ElementId, s: usize) -> LaurentPoly {
        m_sigma_of(self, g, y, w, s)
    }

    /// All `y` with `mu^sigma(y, w) != 0`.
    pub fn mu_sigma_list(&self, w: ElementId) -> &[(ElementId, Coeff)] {
        SigmaSource::mu_list(self, w)
    }

    /// `C_s A_w` in the `A`-basis:
    /// - `(q + q^{-1}) A_w` if `s` is a left descent of `w`;
    /// - otherwise `k A_{s⋉w} + sum m^sigma(y ->s w) A_y` over twisted
    ///   `y < s⋉w` with `sy < y`, where `k = v + v^{-1}` if `sw = ws*` and
    ///   `k = 1` if not.
    pub fn c_s_action(
        &self,
        g: &CoxeterGroup,
        s: usize,
        w: ElementId,
    ) -> Vec<(ElementId, LaurentPoly)> {
        if g.is_left_descent(s, w) {
            return vec![(w, LaurentPoly::from_coeffs(-2, vec![1, 0, 0, 0, 1]))];
        }
        let top = g.ltimes(s, w);
        let lead = if g.is_ltimes_short(s, w) {
            LaurentPoly::u()
        } else {
            LaurentPoly::one()
        };
        let mut out: Vec<(ElementId, LaurentPoly)> = g
            .twisted_below(top)
            .filter(|&y| y != top && g.is_left_descent(s, y))
            .map(|y| (y, self.m_sigma(g, y, w, s)))
            .filter(|(_, m)| !m.is_zero())
            .collect();
        out.push((top, lead));
        out
    }
}

impl SigmaTable {
    /// Rebuilds a table from stored nonzero entries `(y, w, P^sigma_{y,w})`,
    /// checking shapes and recomputing the `mu^sigma` lists.
    pub fn from_entries(
        g: &CoxeterGroup,
        entries: impl IntoIterator<Item = (ElementId, ElementId, LaurentPoly)>,
    ) -> Result<Self, TableError> {
        let mut table = SigmaTable {
            pairs: PairTable::empty(g),
            mu: vec![Vec::new(); g.twisted_involutions().len()],
        };
        for (y, w, p) in entries {
            let (Some(_), Some(wp)) = (table.pairs.slot(y, w), g.twisted_position(w)) else {
                return Err(TableError::KeyMismatch);
            };
            let gap = g.length(w) as i32 - g.length(y) as i32;
            if gap < 0 || (gap == 0 && y != w) {
                return Err(TableError::KeyMismatch);
            }
            check_kl_shape(&p, y, w, gap as usize)?;
            if gap % 2 == 1 && p.coefficient(gap - 1) != 0 {
                table.mu[wp].push((y, p.coefficient(gap - 1)));
            }
            table.pairs.set(y, w, p);
        }
        for &w in g.twisted_involutions() {
            if !table.p(w, w).is_one() {
                return Err(TableError::KeyMismatch);
            }
        }
        for list in &mut table.mu {
            list.sort_unstable();
        }
        Ok(table)
    }
}

/// The column of `P^sigma_{·,w}` under construction, layered over the
/// finished shorter columns.
struct ColumnView<'a> {
    table: &'a SigmaTable,
    w: ElementId,
    column: &'a [LaurentPoly],
}

impl SigmaSource for ColumnView<'_> {
    fn psigma(&self, y: ElementId, w: ElementId) -> &LaurentPoly {
        if w == self.w {
            match self.table.pairs.pos.get(y as usize) {
                Some(&p) if p != u32::MAX => &self.column[p as usize],
                _ => self.table.pairs.pool.get(PolyPool::ZERO),
            }
        } else {
            self.table.p(y, w)
        }
    }

    fn mu_list(&self, w: ElementId) -> &[(ElementId, Coeff)] {
        assert_ne!(w, self.w, "mu list of the column under construction");
        self.table.mu_sigma_list(w)
    }
}

fn q_plus_one() -> LaurentPoly {
    LaurentPoly::from_q_coeffs(&[1, 1])
}

/// Computes `P^sigma_{y,w}` for all twisted involutions `y, w`.
///
/// Columns are filled by increasing `l(w)` and, within a column, by
/// decreasing `l(y)`. For a left descent `s` of `w` that is not a left
/// descent of `y` the entry is copied from `s⋉y`; otherwise `s` is the least
/// left descent of `w` and the entry comes from the recurrence
/// `(q+1)^c P_{y,w} = (q+1)^d P_{s⋉y,w'} + q(q-d) P_{y,w'}
///    - sum v^{l(w)-l(z)+c} m^sigma(z ->s w') P_{y,z}`
/// over twisted `y <= z < w` with `sz < z`, where `w' = s⋉w`,
/// `c = [sw = ws*]` and `d = [sy = ys*]`.
pub fn compute_psigma(g: &CoxeterGroup) -> Result<SigmaTable, TableError> {
    let mut table = SigmaTable {
        pairs: PairTable::empty(g),
        mu: vec![Vec::new(); g.twisted_involutions().len()],
    };
    let twisted = g.twisted_involutions().to_vec();
    table.pairs.set(0, 0, LaurentPoly::one());

    for stratum in length_strata(twisted.iter().map(|&w| g.length(w)))
        .into_iter()
        .skip(1)
    {
        let columns: Vec<Result<Vec<LaurentPoly>, TableError>> = stratum
            .clone()
            .into_par_iter()
            .map(|wp| sigma_column(g, &table, twisted[wp]))
            .collect();
        for (wp, column) in stratum.zip(columns) {
            let w = twisted[wp];
            for (yp, p) in column?.into_iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let y = twisted[yp];
                let gap = g.length(w) as i32 - g.length(y) as i32;
                if gap % 2 == 1 {
                    let m = p.coefficient(gap - 1);
                    if m != 0 {
                        table.mu[wp].push((y, m));
                    }
                }
                table.pairs.set(y, w, p);
            }
        }
    }
    Ok(table)
}

fn sigma_column(
    g: &CoxeterGroup,
    table: &SigmaTable,
    w: ElementId,
) -> Result<Vec<LaurentPoly>, TableError> {
    let pos = |x: ElementId| g.twisted_position(x).expect("twisted involution");
    let t = g.twisted_involutions().len();
    let mut column = vec![LaurentPoly::zero(); t];
    column[pos(w)] = LaurentPoly::one();

    let lw = g.length(w) as i32;
    let desc_w = g.left_descents(w);
    let s = desc_w.trailing_zeros() as usize;
    let w1 = g.ltimes(s, w);
    let c = g.is_ltimes_short(s, w);
    let ci = i32::from(c);

    let below: Vec<ElementId> = g.twisted_below(w).filter(|&y| y != w).collect();
    // Candidates z for the correction sum, with m^sigma(z ->s w') filled in
    // lazily once P^sigma_{z,w} is final.
    let zs: Vec<ElementId> = below
        .iter()
        .copied()
        .filter(|&z| g.is_left_descent(s, z))
        .collect();
    let mut m_cache: Vec<Option<LaurentPoly>> = vec![None; zs.len()];

    for &y in below.iter().rev() {
        let free = desc_w & !g.left_descents(y);
        if free != 0 {
            let r = free.trailing_zeros() as usize;
            column[pos(y)] = column[pos(g.ltimes(r, y))].clone();
            continue;
        }

        let d = g.is_ltimes_short(s, y);
        let y1 = g.ltimes(s, y);
        let mut rhs = LaurentPoly::zero();
        let (p_y1, p_y) = (table.p(y1, w1), table.p(y, w1));
        if d {
            rhs.add_product_assign(&q_plus_one(), p_y1);
            rhs.add_scaled_shifted_assign(p_y, 1, 4);
            rhs.add_scaled_shifted_assign(p_y, -1, 2);
        } else {
            rhs += p_y1;
            rhs.add_scaled_shifted_assign(p_y, 1, 4);
        }

        for (k, &z) in zs.iter().enumerate() {
            if z == y {
                continue;
            }
            let pyz = table.p(y, z);
            if pyz.is_zero() {
                continue;
            }
            let m = m_cache[k].get_or_insert_with(|| {
                let view = ColumnView {
                    table,
                    w,
                    column: &column,
                };
                m_sigma_of(&view, g, z, w1, s)
            });
            let mut term = m.clone();
            term = &term * pyz;
            rhs.add_scaled_shifted_assign(&term, -1, lw - g.length(z) as i32 + ci);
        }

        // The z = y summand. Its m^sigma may involve mu^sigma(y, w) itself,
        // which the view reads as 0 while column[y] is still unset.
        let gap = lw - g.length(y) as i32;
        let view = ColumnView {
            table,
            w,
            column: &column,
        };
        let m_self = m_sigma_of(&view, g, y, w1, s);
        rhs.add_scaled_shifted_assign(&m_self, -1, gap + ci);

        let arith = |source| TableError::Arithmetic { y, w, source };
        let p = if c && gap % 2 == 1 {
            // (q + 1) P = f + mu q^{n+1} with mu = mu^sigma(y, w) the
            // coefficient of q^n in P; evaluating at q = -1 gives mu.
            let n = (gap - 1) / 2;
            let f_at = rhs.eval_at_q_minus_one().map_err(arith)?;
            let mu = if n % 2 == 0 { f_at } else { -f_at };
            rhs.add_scaled_shifted_assign(&LaurentPoly::one(), mu, 2 * (n + 1));
            rhs.div_exact_by_q_plus_one().map_err(arith)?
        } else if c {
            rhs.div_exact_by_q_plus_one().map_err(arith)?
        } else {
            rhs
        };
        check_kl_shape(&p, y, w, gap as usize)?;
        column[pos(y)] = p;
    }
    Ok(column)
}

/// `C_x A_y = sum_z h^sigma_{x,y;z} A_z` for `x` in `W` and twisted `y, z`.
///
/// Slices follow the classical recursion through the least left descent:
/// `C_x A_y = C_s (C_{sx} A_y) - sum mu(x', sx) C_{x'} A_y` over `sx' < x'`.
pub fn compute_hsigma(g: &CoxeterGroup, sigma: &SigmaTable, kl: &KlTable) -> ConstantsTable {
    let n = g.size();
    let twisted = g.twisted_involutions().to_vec();
    let rank = g.rank();
    let actions: Vec<Vec<Vec<(ElementId, LaurentPoly)>>> = (0..rank)
        .map(|s| {
            twisted
                .par_iter()
                .map(|&w| sigma.c_s_action(g, s, w))
                .collect()
        })
        .collect();

    let mut pool = PolyPool::new();
    let mut slices: Vec<Vec<ConstantsRow>> = Vec::with_capacity(n);
    slices.push(twisted.iter().map(|&y| vec![(y, PolyPool::ONE)]).collect());

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
                (0..twisted.len())
                    .map(|yp| {
                        for &(z, a) in &slices[x0 as usize][yp] {
                            let zp = g.twisted_position(z).unwrap();
                            for (z2, b) in &actions[s][zp] {
                                acc.add_product(*z2, pool.get(a), b);
                            }
                        }
                        for &(xp, m) in &corrections {
                            for &(z, a) in &slices[xp as usize][yp] {
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
    let xs: Vec<ElementId> = g.elements().collect();
    ConstantsTable::from_interned(ConstantsKind::HSigma, n, xs, twisted, pool, rows)
}

/// `h~_{x,y;z} = sum_{z'} h_{x,y;z'} h_{z',(x*)^{-1};z}` for `x` in `W` and
/// twisted `y, z`.
pub fn compute_htilde(g: &CoxeterGroup, h: &ConstantsTable) -> ConstantsTable {
    let n = g.size();
    let twisted = g.twisted_involutions().to_vec();
    let xs: Vec<ElementId> = g.elements().collect();
    let per_x: Vec<Vec<Vec<(ElementId, LaurentPoly)>>> = xs
        .par_iter()
        .map(|&x| {
            let right = g.inverse(g.star(x));
            let mut acc = Accumulator::new(n);
            twisted
                .iter()
                .map(|&y| {
                    for &(mid, a) in h.row(x, y).unwrap_or(&[]) {
                        let a = h.pool().get(a);
                        for &(z, b) in h.row(mid, right).unwrap_or(&[]) {
                            if g.is_twisted_involution(z) {
                                acc.add_product(z, a, h.pool().get(b));
                            }
                        }
                    }
                    acc.drain()
                })
                .collect()
        })
        .collect();
    let mut pool = PolyPool::new();
    let rows = per_x
        .into_iter()
        .flat_map(|slice| intern_rows(&mut pool, slice))
        .collect();
    ConstantsTable::from_interned(ConstantsKind::HTilde, n, xs, twisted, pool, rows)
}

/// `P_{y,w}` restricted to twisted involutions `y, w`.
pub fn restrict_kl(g: &CoxeterGroup, kl: &KlTable) -> PairTable {
    let twisted = g.twisted_involutions();
    PairTable::from_entries(
        g,
        twisted.iter().flat_map(|&w| {
            twisted
                .iter()
                .map(move |&y| (y, w, kl.p(y, w).clone()))
                .filter(|(_, _, p)| !p.is_zero())
        }),
    )
}

/// `P^± = (P ± P^sigma) / 2` on pairs of twisted involutions.
#[derive(Clone, Debug)]
pub struct SplitPolys {
    pub plus: PairTable,
    pub minus: PairTable,
}

/// `h^± = (h~ ± h^sigma) / 2`.
#[derive(Clone, Debug)]
pub struct SplitConstants {
    pub plus: ConstantsTable,
    pub minus: ConstantsTable,
}

fn halves(
    a: &LaurentPoly,
    b: &LaurentPoly,
    y: ElementId,
    w: ElementId,
) -> Result<(LaurentPoly, LaurentPoly), TableError> {
    let arith = |source| TableError::Arithmetic { y, w, source };
    let plus = a.try_add(b).and_then(|p| p.try_half()).map_err(arith)?;
    let minus = a.try_sub(b).and_then(|p| p.try_half()).map_err(arith)?;
    Ok((plus, minus))
}

pub fn split_polys(
    g: &CoxeterGroup,
    kl: &KlTable,
    sigma: &SigmaTable,
) -> Result<SplitPolys, TableError> {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for &w in g.twisted_involutions() {
        for &y in g.twisted_involutions() {
            let (a, b) = (kl.p(y, w), sigma.p(y, w));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let (p, m) = halves(a, b, y, w)?;
            plus.push((y, w, p));
            minus.push((y, w, m));
        }
    }
    Ok(SplitPolys {
        plus: PairTable::from_entries(g, plus.into_iter().filter(|e| !e.2.is_zero())),
        minus: PairTable::from_entries(g, minus.into_iter().filter(|e| !e.2.is_zero())),
    })
}

pub fn split_constants(
    g: &CoxeterGroup,
    htilde: &ConstantsTable,
    hsigma: &ConstantsTable,
) -> Result<SplitConstants, TableError> {
    if htilde.xs() != hsigma.xs() || htilde.ys() != hsigma.ys() {
        return Err(TableError::KeyMismatch);
    }
    let mut plus_rows = Vec::new();
    let mut minus_rows = Vec::new();
    for &x in htilde.xs() {
        for &y in htilde.ys() {
            let mut keys: Vec<ElementId> = htilde
                .row(x, y)
                .into_iter()
                .chain(hsigma.row(x, y))
                .flatten()
                .map(|e| e.0)
                .collect();
            keys.sort_unstable();
            keys.dedup();
            let mut prow = Vec::new();
            let mut mrow = Vec::new();
            for z in keys {
                let (p, m) = halves(htilde.get(x, y, z), hsigma.get(x, y, z), x, y)?;
                prow.push((z, p));
                mrow.push((z, m));
            }
            plus_rows.push(prow);
            minus_rows.push(mrow);
        }
    }
    let n = g.size();
    let (xs, ys) = (htilde.xs().to_vec(), htilde.ys().to_vec());
    Ok(SplitConstants {
        plus: ConstantsTable::from_rows(ConstantsKind::HPlus, n, xs.clone(), ys.clone(), plus_rows),
        minus: ConstantsTable::from_rows(ConstantsKind::HMinus, n, xs, ys, minus_rows),
    })
}
