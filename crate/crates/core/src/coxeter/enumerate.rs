//! Breadth-first enumeration through a faithful action of each component.
//!
//! Every component acts on a small integer vector whose orbit is in bijection
//! with the component group:
//! - rank 1: a sign bit;
//! - rank 2: the dihedral normal form `(k mod m, flip)` with `s0 = f`,
//!   `s1 = r f`;
//! - rank >= 3 without `m = 5`: the regular weight `rho` under an integer
//!   Cartan matrix, in fundamental-weight coordinates;
//! - rank >= 3 with `m = 5`: the same over `Z[phi]`, `phi^2 = phi + 1`, each
//!   coordinate stored as the pair `(a, b)` meaning `a + b phi`.

use std::collections::HashMap;

use super::{CoxeterError, CoxeterSystem};

enum Action {
    Sign,
    Dihedral { m: i64 },
    Cartan { a: Vec<Vec<i64>> },
    Golden { m: Vec<Vec<u32>> },
}

impl Action {
    fn new(matrix: &[Vec<u32>], gens: &[usize]) -> Self {
        let local: Vec<Vec<u32>> = gens
            .iter()
            .map(|&i| gens.iter().map(|&j| matrix[i][j]).collect())
            .collect();
        match gens.len() {
            1 => Action::Sign,
            2 => Action::Dihedral {
                m: local[0][1] as i64,
            },
            r if local.iter().flatten().any(|&m| m == 5) => {
                let _ = r;
                Action::Golden { m: local }
            }
            r => {
                // A_ij * A_ji = 4 cos^2(pi / m); the asymmetric choice is
                // consistent because finite Coxeter graphs are trees.
                let mut a = vec![vec![0i64; r]; r];
                for i in 0..r {
                    a[i][i] = 2;
                    for j in i + 1..r {
                        let (x, y) = match local[i][j] {
                            2 => (0, 0),
                            3 => (-1, -1),
                            4 => (-1, -2),
                            6 => (-1, -3),
                            _ => unreachable!("validated finite type"),
                        };
                        a[i][j] = x;
                        a[j][i] = y;
                    }
                }
                Action::Cartan { a }
            }
        }
    }

    fn width(&self) -> usize {
        match self {
            Action::Sign => 1,
            Action::Dihedral { .. } => 2,
            Action::Cartan { a } => a.len(),
            Action::Golden { m } => 2 * m.len(),
        }
    }

    fn initial(&self, out: &mut Vec<i64>) {
        match self {
            Action::Sign => out.push(0),
            Action::Dihedral { .. } => out.extend([0, 0]),
            Action::Cartan { a } => out.extend(std::iter::repeat_n(1, a.len())),
            Action::Golden { m } => {
                for _ in 0..m.len() {
                    out.extend([1, 0]);
                }
            }
        }
    }

    /// Left multiplication by local generator `i`.
    fn apply(&self, i: usize, x: &mut [i64]) {
        match self {
            Action::Sign => x[0] ^= 1,
            Action::Dihedral { m } => {
                let k = if i == 0 { -x[0] } else { 1 - x[0] };
                x[0] = k.rem_euclid(*m);
                x[1] ^= 1;
            }
            Action::Cartan { a } => {
                // s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i.
                let c = x[i];
                for (j, xj) in x.iter_mut().enumerate() {
                    *xj -= c * a[i][j];
                }
            }
            Action::Golden { m } => {
                let (a, b) = (x[2 * i], x[2 * i + 1]);
                for j in 0..m.len() {
                    match m[i][j] {
                        1 => {
                            x[2 * j] = -a;
                            x[2 * j + 1] = -b;
                        }
                        3 => {
                            x[2 * j] += a;
                            x[2 * j + 1] += b;
                        }
                        5 => {
                            // (a + b phi) phi = b + (a + b) phi
                            x[2 * j] += b;
                            x[2 * j + 1] += a + b;
                        }
                        _ => {}
                    }
                }
            }
        }
    }
}

/// Raw enumeration in breadth-first order.
pub(super) struct RawGroup {
    pub lengths: Vec<u16>,
    /// `lmul[s][w]`, indices into the breadth-first order.
    pub lmul: Vec<Vec<u32>>,
}

pub(super) fn breadth_first(sys: &CoxeterSystem, cap: usize) -> Result<RawGroup, CoxeterError> {
    let rank = sys.rank();
    let mut actions = Vec::new();
    // generator -> (block, local index, state offset)
    let mut route = vec![(0usize, 0usize, 0usize); rank];
    let mut initial = Vec::new();
    for (b, block) in sys.blocks().iter().enumerate() {
        let act = Action::new(sys.matrix(), &block.generators);
        let off = initial.len();
        act.initial(&mut initial);
        for (li, &g) in block.generators.iter().enumerate() {
            route[g] = (b, li, off);
        }
        actions.push(act);
    }

    let mut index: HashMap<Vec<i64>, u32> = HashMap::new();
    let mut states: Vec<Vec<i64>> = vec![initial.clone()];
    let mut lengths = vec![0u16];
    let mut lmul: Vec<Vec<u32>> = vec![Vec::new(); rank];
    index.insert(initial, 0);

    let mut head = 0;
    while head < states.len() {
        for s in 0..rank {
            let (b, li, off) = route[s];
            let act = &actions[b];
            let mut next = states[head].clone();
            act.apply(li, &mut next[off..off + act.width()]);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = states.len();
                    if id >= cap {
                        return Err(CoxeterError::CapExceeded(cap));
                    }
                    index.insert(next.clone(), id as u32);
                    states.push(next);
                    lengths.push(lengths[head] + 1);
                    id as u32
                }
            };
            lmul[s].push(id);
        }
        head += 1;
    }
    Ok(RawGroup { lengths, lmul })
}
