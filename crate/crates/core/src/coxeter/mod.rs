//! Finite Coxeter systems with a diagram involution.
//!
//! A [`CoxeterSystem`] is a validated presentation: Coxeter matrix, an
//! involution of the generators preserving it, and its decomposition into
//! connected components. [`CoxeterGroup`] is the enumerated group with all
//! the tables the polynomial code needs.

mod enumerate;
mod group;
mod label;

pub use group::{CoxeterGroup, Element, ElementId, DEFAULT_ELEMENT_CAP};
pub use label::parse_label;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("unknown type label {0:?}")]
    UnknownLabel(String),
    #[error("Coxeter matrix is not square")]
    NotSquare,
    #[error("Coxeter matrix is not symmetric at ({0}, {1})")]
    NonSymmetric(usize, usize),
    #[error("Coxeter matrix diagonal entry {0} is not 1")]
    BadDiagonal(usize),
    #[error("Coxeter matrix entry ({0}, {1}) must be at least 2")]
    BadEntry(usize, usize),
    #[error("twist has length {0}, expected {1}")]
    TwistLength(usize, usize),
    #[error("twist is not an involutive permutation")]
    TwistNotInvolution,
    #[error("twist does not preserve the Coxeter matrix at ({0}, {1})")]
    TwistNotPreserving(usize, usize),
    #[error("type {0} has no nontrivial diagram involution")]
    NoDiagramInvolution(String),
    #[error("the swap twist needs exactly two isomorphic factors, got {0}")]
    SwapShape(String),
    #[error("label {0:?} already fixes a twist that conflicts with the requested one")]
    TwistConflict(String),
    #[error("the Coxeter matrix defines an infinite group")]
    Infinite,
    #[error("element count exceeds the cap of {0}")]
    CapExceeded(usize),
}

/// How the diagram involution of a system is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistSpec {
    /// Whatever the label says: a `2` prefix on a factor twists that factor.
    FromLabel,
    Identity,
    /// The nontrivial diagram involution on every factor that has one.
    Diagram,
    /// `(x, y) -> (y, x)` on a product of two copies of the same system.
    Swap,
    Explicit(Vec<usize>),
}

/// An irreducible finite Coxeter type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoxeterType {
    A(usize),
    BC(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    /// Dihedral of order `2m`; `G2` and `BC2` are aliases for `m = 6, 4`.
    I2(u32),
}

impl CoxeterType {
    pub fn rank(self) -> usize {
        match self {
            CoxeterType::A(n) | CoxeterType::BC(n) | CoxeterType::D(n) => n,
            CoxeterType::E(n) | CoxeterType::H(n) => n,
            CoxeterType::F4 => 4,
            CoxeterType::I2(_) => 2,
        }
    }

    pub fn label(self) -> String {
        match self {
            CoxeterType::A(n) => format!("A{n}"),
            CoxeterType::BC(n) => format!("BC{n}"),
            CoxeterType::D(n) => format!("D{n}"),
            CoxeterType::E(n) => format!("E{n}"),
            CoxeterType::F4 => "F4".into(),
            CoxeterType::H(n) => format!("H{n}"),
            CoxeterType::I2(6) => "G2".into(),
            CoxeterType::I2(m) => format!("I2({m})"),
        }
    }

    /// Table of Coxeter numbers `m(s_i, s_j)` in the standard labelling.
    pub fn matrix(self) -> Vec<Vec<u32>> {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut join = |i: usize, j: usize, k: u32| {
            m[i][j] = k;
            m[j][i] = k;
        };
        match self {
            CoxeterType::A(n) => (1..n).for_each(|i| join(i - 1, i, 3)),
            CoxeterType::BC(n) => {
                if n >= 2 {
                    join(0, 1, 4);
                }
                (2..n).for_each(|i| join(i - 1, i, 3));
            }
            CoxeterType::D(n) => {
                join(0, 2, 3);
                join(1, 2, 3);
                (3..n).for_each(|i| join(i - 1, i, 3));
            }
            CoxeterType::E(n) => {
                join(0, 2, 3);
                join(1, 3, 3);
                (3..n).for_each(|i| join(i - 1, i, 3));
            }
            CoxeterType::F4 => {
                join(0, 1, 3);
                join(1, 2, 4);
                join(2, 3, 3);
            }
            CoxeterType::H(n) => {
                join(0, 1, 5);
                (2..n).for_each(|i| join(i - 1, i, 3));
            }
            CoxeterType::I2(k) => join(0, 1, k),
        }
        m
    }

    /// The nontrivial diagram involution, if the type has one.
    pub fn diagram_involution(self) -> Option<Vec<usize>> {
        let n = self.rank();
        let mut p: Vec<usize> = (0..n).collect();
        match self {
            CoxeterType::A(n) if n >= 2 => p.reverse(),
            CoxeterType::BC(2) | CoxeterType::I2(_) => p.reverse(),
            CoxeterType::D(n) if n >= 4 => p.swap(0, 1),
            CoxeterType::E(6) => {
                p.swap(0, 5);
                p.swap(2, 4);
            }
            CoxeterType::F4 => p.reverse(),
            _ => return None,
        }
        Some(p)
    }
}

/// A connected component of the Coxeter graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Generator indices of the full system, in increasing order.
    pub generators: Vec<usize>,
    /// Named type when the block came from a label.
    pub kind: Option<CoxeterType>,
}

/// A validated Coxeter system with an involution of its generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterSystem {
    name: String,
    matrix: Vec<Vec<u32>>,
    twist: Vec<usize>,
    blocks: Vec<Block>,
}

impl CoxeterSystem {
    /// Builds a system from a type label such as `"A3"`, `"2D4"`, `"I2(7)"`
    /// or `"A2xA2"`.
    pub fn from_label(label: &str, twist: TwistSpec) -> Result<Self, CoxeterError> {
        let factors = parse_label(label)?;
        let kinds: Vec<CoxeterType> = factors.iter().map(|f| f.0).collect();
        let mut matrix = Vec::new();
        let mut offsets = Vec::new();
        let total: usize = kinds.iter().map(|k| k.rank()).sum();
        for k in &kinds {
            let off = matrix.len();
            offsets.push(off);
            for row in k.matrix() {
                let mut full = vec![2u32; total];
                full[off..off + row.len()].copy_from_slice(&row);
                matrix.push(full);
            }
        }

        let label_twisted = factors.iter().any(|f| f.1);
        let diagram = |only_marked: bool| -> Result<Vec<usize>, CoxeterError> {
            let mut perm: Vec<usize> = (0..total).collect();
            let mut any = false;
            for ((kind, marked), &off) in factors.iter().zip(&offsets) {
                if only_marked && !marked {
                    continue;
                }
                match kind.diagram_involution() {
                    Some(p) => {
                        for (i, &j) in p.iter().enumerate() {
                            perm[off + i] = off + j;
                        }
                        any = true;
                    }
                    None if only_marked => {
                        return Err(CoxeterError::NoDiagramInvolution(kind.label()))
                    }
                    None => {}
                }
            }
            if !any {
                return Err(CoxeterError::NoDiagramInvolution(label.to_string()));
            }
            Ok(perm)
        };

        let perm = match twist {
            TwistSpec::FromLabel if label_twisted => diagram(true)?,
            TwistSpec::FromLabel | TwistSpec::Identity => {
                if label_twisted {
                    return Err(CoxeterError::TwistConflict(label.to_string()));
                }
                (0..total).collect()
            }
            TwistSpec::Diagram => diagram(false)?,
            TwistSpec::Swap => {
                if label_twisted || kinds.len() != 2 || kinds[0] != kinds[1] {
                    return Err(CoxeterError::SwapShape(label.to_string()));
                }
                let r = kinds[0].rank();
                (0..total).map(|i| (i + r) % total).collect()
            }
            TwistSpec::Explicit(p) => {
                if label_twisted {
                    return Err(CoxeterError::TwistConflict(label.to_string()));
                }
                p
            }
        };

        let mut name = String::new();
        for (i, (kind, marked)) in factors.iter().enumerate() {
            if i > 0 {
                name.push('x');
            }
            if *marked {
                name.push('2');
            }
            name.push_str(&kind.label());
        }
        let mut sys = Self::from_matrix(&name, matrix, perm)?;
        for (block, kind) in sys.blocks.iter_mut().zip(&kinds) {
            block.kind = Some(*kind);
        }
        Ok(sys)
    }

    /// Builds a system from an explicit Coxeter matrix and twist.
    pub fn from_matrix(
        name: &str,
        matrix: Vec<Vec<u32>>,
        twist: Vec<usize>,
    ) -> Result<Self, CoxeterError> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(CoxeterError::NotSquare);
        }
        for i in 0..n {
            if matrix[i][i] != 1 {
                return Err(CoxeterError::BadDiagonal(i));
            }
            for j in 0..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(CoxeterError::NonSymmetric(i, j));
                }
                if i != j && matrix[i][j] < 2 {
                    return Err(CoxeterError::BadEntry(i, j));
                }
            }
        }
        if twist.len() != n {
            return Err(CoxeterError::TwistLength(twist.len(), n));
        }
        if twist.iter().any(|&j| j >= n) || (0..n).any(|i| twist[twist[i]] != i) {
            return Err(CoxeterError::TwistNotInvolution);
        }
        for i in 0..n {
            for j in 0..n {
                if matrix[twist[i]][twist[j]] != matrix[i][j] {
                    return Err(CoxeterError::TwistNotPreserving(i, j));
                }
            }
        }
        if !is_positive_definite(&matrix) {
            return Err(CoxeterError::Infinite);
        }
        let blocks = components(&matrix)
            .into_iter()
            .map(|generators| Block {
                generators,
                kind: None,
            })
            .collect();
        Ok(CoxeterSystem {
            name: name.to_string(),
            matrix,
            twist,
            blocks,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn m(&self, i: usize, j: usize) -> u32 {
        self.matrix[i][j]
    }

    pub fn twist(&self) -> &[usize] {
        &self.twist
    }

    pub fn twist_is_identity(&self) -> bool {
        self.twist.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Enumerates the group with the default element cap.
    pub fn enumerate(&self) -> Result<CoxeterGroup, CoxeterError> {
        CoxeterGroup::new(self.clone(), DEFAULT_ELEMENT_CAP)
    }

    pub fn enumerate_with_cap(&self, cap: usize) -> Result<CoxeterGroup, CoxeterError> {
        CoxeterGroup::new(self.clone(), cap)
    }
}

/// Connected components of the Coxeter graph (edges where `m >= 3`).
fn components(matrix: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let n = matrix.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            for b in 0..n {
                if !seen[b] && matrix[a][b] >= 3 {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// The bilinear form `B(a_i, a_j) = -cos(pi / m_ij)` is positive definite
/// exactly for finite Coxeter groups.
fn is_positive_definite(matrix: &[Vec<u32>]) -> bool {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| -(std::f64::consts::PI / matrix[i][j] as f64).cos())
                .collect()
        })
        .collect();
    // Cholesky; the smallest pivot of a finite type of rank <= 8 is far from 0.
    for k in 0..n {
        let pivot = a[k][k];
        if pivot <= 1e-9 {
            return false;
        }
        for i in k + 1..n {
            let f = a[i][k] / pivot;
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_matrices() {
        let a2 = CoxeterSystem::from_label("A2", TwistSpec::Identity).unwrap();
        assert_eq!(a2.matrix(), &[vec![1, 3], vec![3, 1]]);
        assert_eq!(a2.twist(), &[0, 1]);
        let ta2 = CoxeterSystem::from_label("2A2", TwistSpec::FromLabel).unwrap();
        assert_eq!(ta2.matrix(), a2.matrix());
        assert_eq!(ta2.twist(), &[1, 0]);
        let i7 = CoxeterSystem::from_label("I2(7)", TwistSpec::Identity).unwrap();
        assert_eq!(i7.matrix(), &[vec![1, 7], vec![7, 1]]);
    }

    #[test]
    fn table_one_conventions() {
        let f4 = CoxeterSystem::from_label("2F4", TwistSpec::FromLabel).unwrap();
        assert_eq!(f4.m(1, 2), 4);
        assert_eq!(f4.twist(), &[3, 2, 1, 0]);
        let d5 = CoxeterSystem::from_label("2D5", TwistSpec::FromLabel).unwrap();
        assert_eq!(d5.m(0, 2), 3);
        assert_eq!(d5.m(1, 2), 3);
        assert_eq!(d5.m(0, 1), 2);
        assert_eq!(d5.twist(), &[1, 0, 2, 3, 4]);
        let e6 = CoxeterSystem::from_label("2E6", TwistSpec::FromLabel).unwrap();
        assert_eq!(e6.m(1, 3), 3);
        assert_eq!(e6.twist(), &[5, 1, 4, 3, 2, 0]);
        let h3 = CoxeterSystem::from_label("H3", TwistSpec::Identity).unwrap();
        assert_eq!(h3.m(0, 1), 5);
        let bc3 = CoxeterSystem::from_label("BC3", TwistSpec::Identity).unwrap();
        assert_eq!(bc3.m(0, 1), 4);
        assert_eq!(bc3.m(1, 2), 3);
    }

    #[test]
    fn twist_flags() {
        let sys = CoxeterSystem::from_label("A3", TwistSpec::Diagram).unwrap();
        assert_eq!(sys.twist(), &[2, 1, 0]);
        assert!(matches!(
            CoxeterSystem::from_label("H3", TwistSpec::Diagram),
            Err(CoxeterError::NoDiagramInvolution(_))
        ));
        assert!(matches!(
            CoxeterSystem::from_label("2B3", TwistSpec::FromLabel),
            Err(CoxeterError::NoDiagramInvolution(_))
        ));
        let sw = CoxeterSystem::from_label("A2xA2", TwistSpec::Swap).unwrap();
        assert_eq!(sw.twist(), &[2, 3, 0, 1]);
        assert_eq!(sw.blocks().len(), 2);
        assert!(CoxeterSystem::from_label("A2xA1", TwistSpec::Swap).is_err());
        assert!(matches!(
            CoxeterSystem::from_label("2A3", TwistSpec::Identity),
            Err(CoxeterError::TwistConflict(_))
        ));
    }

    #[test]
    fn matrix_validation() {
        let bad = CoxeterSystem::from_matrix("x", vec![vec![1, 3], vec![4, 1]], vec![0, 1]);
        assert_eq!(bad, Err(CoxeterError::NonSymmetric(0, 1)));
        let bad = CoxeterSystem::from_matrix("x", vec![vec![2, 3], vec![3, 1]], vec![0, 1]);
        assert_eq!(bad, Err(CoxeterError::BadDiagonal(0)));
        let b3 = vec![vec![1, 4, 2], vec![4, 1, 3], vec![2, 3, 1]];
        assert_eq!(
            CoxeterSystem::from_matrix("x", b3, vec![2, 1, 0]),
            Err(CoxeterError::TwistNotPreserving(0, 1))
        );
        let affine_a2 = vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]];
        assert_eq!(
            CoxeterSystem::from_matrix("x", affine_a2, vec![0, 1, 2]),
            Err(CoxeterError::Infinite)
        );
        let not_inv = vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]];
        assert_eq!(
            CoxeterSystem::from_matrix("x", not_inv, vec![1, 2, 0]),
            Err(CoxeterError::TwistNotInvolution)
        );
    }

    #[test]
    fn finiteness_of_named_types() {
        for label in [
            "A8", "BC8", "D8", "E6", "E7", "E8", "F4", "H3", "H4", "I2(100)",
        ] {
            CoxeterSystem::from_label(label, TwistSpec::Identity).unwrap();
        }
        let h5_like = vec![
            vec![1, 5, 2, 2],
            vec![5, 1, 3, 2],
            vec![2, 3, 1, 4],
            vec![2, 2, 4, 1],
        ];
        assert_eq!(
            CoxeterSystem::from_matrix("x", h5_like, vec![0, 1, 2, 3]),
            Err(CoxeterError::Infinite)
        );
    }

    #[test]
    fn unknown_labels() {
        for bad in ["Z3", "A0", "E9", "I2(1)", "D3x", "F5", ""] {
            assert!(
                matches!(
                    CoxeterSystem::from_label(bad, TwistSpec::Identity),
                    Err(CoxeterError::UnknownLabel(_))
                ),
                "{bad}"
            );
        }
    }
}
