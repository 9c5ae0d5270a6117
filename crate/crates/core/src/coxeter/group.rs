use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use super::enumerate::breadth_first;
use super::{CoxeterError, CoxeterSystem};

/// Dense element index; 0 is the identity.
pub type ElementId = u32;

pub const DEFAULT_ELEMENT_CAP: usize = 10_000_000;

/// Marker for "not a twisted involution" in position tables.
const NOT_TWISTED: u32 = u32::MAX;

/// A self-contained description of one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub index: ElementId,
    pub word: Vec<u8>,
    pub length: usize,
    pub left_descents: u32,
    pub right_descents: u32,
}

/// An enumerated finite Coxeter group.
///
/// Elements are numbered by `(length, ShortLex word)`. All tables are
/// immutable after construction except the Bruhat ideals, which are filled
/// lazily and published through [`OnceLock`].
pub struct CoxeterGroup {
    system: CoxeterSystem,
    lengths: Vec<u16>,
    words: Vec<Vec<u8>>,
    lmul: Vec<Vec<ElementId>>,
    rmul: Vec<Vec<ElementId>>,
    inverse: Vec<ElementId>,
    star: Vec<ElementId>,
    left_desc: Vec<u32>,
    right_desc: Vec<u32>,
    twisted: Vec<ElementId>,
    twisted_pos: Vec<u32>,
    ideals: Vec<OnceLock<FixedBitSet>>,
}

impl CoxeterGroup {
    pub fn new(system: CoxeterSystem, cap: usize) -> Result<Self, CoxeterError> {
        assert!(system.rank() <= 32, "descent sets are stored as u32 masks");
        let raw = breadth_first(&system, cap)?;
        let n = raw.lengths.len();
        let rank = system.rank();

        // ShortLex words by increasing length: the first letter of the
        // lexicographically least reduced word is the least left descent.
        let mut raw_words: Vec<Vec<u8>> = vec![Vec::new(); n];
        for w in 1..n {
            let s = (0..rank)
                .find(|&s| raw.lengths[raw.lmul[s][w] as usize] < raw.lengths[w])
                .expect("nonidentity element has a left descent");
            let rest = raw.lmul[s][w] as usize;
            let mut word = Vec::with_capacity(raw.lengths[w] as usize);
            word.push(s as u8);
            word.extend_from_slice(&raw_words[rest]);
            raw_words[w] = word;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            (raw.lengths[a], &raw_words[a]).cmp(&(raw.lengths[b], &raw_words[b]))
        });
        let mut rank_of = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            rank_of[old] = new as u32;
        }

        let lengths: Vec<u16> = order.iter().map(|&o| raw.lengths[o]).collect();
        let words: Vec<Vec<u8>> = order.iter().map(|&o| raw_words[o].clone()).collect();
        let lmul: Vec<Vec<ElementId>> = (0..rank)
            .map(|s| {
                order
                    .iter()
                    .map(|&o| rank_of[raw.lmul[s][o] as usize])
                    .collect()
            })
            .collect();

        // Left-multiplying by the letters of w in order builds w^{-1}.
        let apply_word = |start: ElementId, letters: &mut dyn Iterator<Item = usize>| {
            letters.fold(start, |acc, s| lmul[s][acc as usize])
        };
        let inverse: Vec<ElementId> = words
            .iter()
            .map(|wd| apply_word(0, &mut wd.iter().map(|&s| s as usize)))
            .collect();
        let rmul: Vec<Vec<ElementId>> = (0..rank)
            .map(|s| {
                (0..n)
                    .map(|w| inverse[lmul[s][inverse[w] as usize] as usize])
                    .collect()
            })
            .collect();
        let twist = system.twist();
        let star: Vec<ElementId> = words
            .iter()
            .map(|wd| apply_word(0, &mut wd.iter().rev().map(|&s| twist[s as usize])))
            .collect();

        let left_desc: Vec<u32> = (0..n)
            .map(|w| {
                (0..rank)
                    .filter(|&s| lengths[lmul[s][w] as usize] < lengths[w])
                    .fold(0, |m, s| m | 1 << s)
            })
            .collect();
        let right_desc: Vec<u32> = (0..n)
            .map(|w| {
                (0..rank)
                    .filter(|&s| lengths[rmul[s][w] as usize] < lengths[w])
                    .fold(0, |m, s| m | 1 << s)
            })
            .collect();

        let twisted: Vec<ElementId> = (0..n as u32)
            .filter(|&w| star[w as usize] == inverse[w as usize])
            .collect();
        let mut twisted_pos = vec![NOT_TWISTED; n];
        for (p, &w) in twisted.iter().enumerate() {
            twisted_pos[w as usize] = p as u32;
        }

        Ok(CoxeterGroup {
            system,
            lengths,
            words,
            lmul,
            rmul,
            inverse,
            star,
            left_desc,
            right_desc,
            twisted,
            twisted_pos,
            ideals: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn size(&self) -> usize {
        self.lengths.len()
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.size() as ElementId
    }

    pub fn length(&self, w: ElementId) -> usize {
        self.lengths[w as usize] as usize
    }

    pub fn word(&self, w: ElementId) -> &[u8] {
        &self.words[w as usize]
    }

    pub fn element(&self, w: ElementId) -> Element {
        Element {
            index: w,
            word: self.words[w as usize].clone(),
            length: self.length(w),
            left_descents: self.left_desc[w as usize],
            right_descents: self.right_desc[w as usize],
        }
    }

    /// The element with the given word, reduced or not.
    pub fn from_word(&self, word: &[usize]) -> ElementId {
        word.iter()
            .rev()
            .fold(0, |acc, &s| self.lmul[s][acc as usize])
    }

    /// `s w`.
    pub fn lmul(&self, s: usize, w: ElementId) -> ElementId {
        self.lmul[s][w as usize]
    }

    /// `w s`.
    pub fn rmul(&self, w: ElementId, s: usize) -> ElementId {
        self.rmul[s][w as usize]
    }

    pub fn multiply(&self, u: ElementId, w: ElementId) -> ElementId {
        self.words[u as usize]
            .iter()
            .rev()
            .fold(w, |acc, &s| self.lmul[s as usize][acc as usize])
    }

    pub fn inverse(&self, w: ElementId) -> ElementId {
        self.inverse[w as usize]
    }

    pub fn star(&self, w: ElementId) -> ElementId {
        self.star[w as usize]
    }

    /// Generator index of `s*`.
    pub fn star_generator(&self, s: usize) -> usize {
        self.system.twist()[s]
    }

    pub fn left_descents(&self, w: ElementId) -> u32 {
        self.left_desc[w as usize]
    }

    pub fn right_descents(&self, w: ElementId) -> u32 {
        self.right_desc[w as usize]
    }

    pub fn is_left_descent(&self, s: usize, w: ElementId) -> bool {
        self.left_desc[w as usize] >> s & 1 == 1
    }

    pub fn longest_element(&self) -> ElementId {
        (self.size() - 1) as ElementId
    }

    /// Twisted involutions `w* = w^{-1}` in index order.
    pub fn twisted_involutions(&self) -> &[ElementId] {
        &self.twisted
    }

    /// Position of `w` in [`Self::twisted_involutions`].
    pub fn twisted_position(&self, w: ElementId) -> Option<usize> {
        match self.twisted_pos[w as usize] {
            NOT_TWISTED => None,
            p => Some(p as usize),
        }
    }

    pub fn is_twisted_involution(&self, w: ElementId) -> bool {
        self.twisted_pos[w as usize] != NOT_TWISTED
    }

    /// `s w s*`.
    pub fn twisted_conjugate(&self, s: usize, w: ElementId) -> ElementId {
        self.lmul(s, self.rmul(w, self.star_generator(s)))
    }

    /// `s ⋉ w`: `s w` when `s w s* = w`, else `s w s*`.
    pub fn ltimes(&self, s: usize, w: ElementId) -> ElementId {
        let c = self.twisted_conjugate(s, w);
        if c == w {
            self.lmul(s, w)
        } else {
            c
        }
    }

    /// `s w = w s*`, i.e. `s ⋉ w` changes the length by one.
    pub fn is_ltimes_short(&self, s: usize, w: ElementId) -> bool {
        self.twisted_conjugate(s, w) == w
    }

    /// Bitset of all `y <= w` in Bruhat order.
    ///
    /// For `s` a left descent of `w`, the ideal below `w` is the ideal below
    /// `sw` together with its left translate by `s`.
    pub fn lower_ideal(&self, w: ElementId) -> &FixedBitSet {
        self.ideals[w as usize].get_or_init(|| {
            let n = self.size();
            let mut set = FixedBitSet::with_capacity(n);
            if w == 0 {
                set.insert(0);
                return set;
            }
            let s = self.left_desc[w as usize].trailing_zeros() as usize;
            let below = self.lower_ideal(self.lmul(s, w));
            set.union_with(below);
            for y in below.ones() {
                set.insert(self.lmul[s][y] as usize);
            }
            set
        })
    }

    pub fn bruhat_leq(&self, y: ElementId, w: ElementId) -> bool {
        self.lengths[y as usize] <= self.lengths[w as usize]
            && self.lower_ideal(w).contains(y as usize)
    }

    /// The lifting-property recursion, unmemoized.
    pub fn bruhat_leq_recursive(&self, y: ElementId, w: ElementId) -> bool {
        if y == 0 {
            return true;
        }
        if w == 0 {
            return false;
        }
        let s = self.left_desc[w as usize].trailing_zeros() as usize;
        let sw = self.lmul(s, w);
        let sy = self.lmul(s, y);
        if self.lengths[sy as usize] < self.lengths[y as usize] {
            self.bruhat_leq_recursive(sy, sw)
        } else {
            self.bruhat_leq_recursive(y, sw)
        }
    }

    /// Twisted involutions `y <= w`, in increasing index order.
    pub fn twisted_below(&self, w: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.lower_ideal(w)
            .ones()
            .map(|y| y as ElementId)
            .filter(|&y| self.is_twisted_involution(y))
    }

    /// Human-readable word, e.g. `s1s2s1`; `1` for the identity.
    pub fn word_string(&self, w: ElementId) -> String {
        if w == 0 {
            return "1".into();
        }
        self.word(w)
            .iter()
            .map(|&s| format!("s{}", s + 1))
            .collect()
    }
}

impl std::fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CoxeterGroup({}, {} elements)",
            self.system.name(),
            self.size()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::super::TwistSpec;
    use super::*;

    fn group(label: &str) -> CoxeterGroup {
        CoxeterSystem::from_label(label, TwistSpec::FromLabel)
            .unwrap()
            .enumerate()
            .unwrap()
    }

    #[test]
    fn orders() {
        for (label, n) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("A5", 720),
            ("BC3", 48),
            ("BC4", 384),
            ("D4", 192),
            ("F4", 1152),
            ("G2", 12),
            ("H3", 120),
            ("I2(7)", 14),
            ("A1xA1", 4),
            ("A1xA2", 12),
            ("E6", 51840),
        ] {
            assert_eq!(group(label).size(), n, "{label}");
        }
    }

    #[test]
    fn h4_order() {
        assert_eq!(group("H4").size(), 14400);
    }

    #[test]
    fn cap_is_enforced() {
        let sys = CoxeterSystem::from_label("A3", TwistSpec::Identity).unwrap();
        assert_eq!(
            sys.enumerate_with_cap(23).unwrap_err(),
            CoxeterError::CapExceeded(23)
        );
        assert_eq!(sys.enumerate_with_cap(24).unwrap().size(), 24);
    }

    #[test]
    fn longest_elements() {
        let a2 = group("A2");
        assert_eq!(a2.word(a2.longest_element()), &[0, 1, 0]);
        let a1 = group("A1");
        assert_eq!(a1.word(a1.longest_element()), &[0]);
        let i5 = group("I2(5)");
        let w0 = i5.longest_element();
        assert_eq!(i5.length(w0), 5);
        assert_eq!(i5.from_word(&[1, 0, 1, 0, 1]), w0);
    }

    #[test]
    fn index_order_is_shortlex() {
        let g = group("A3");
        assert_eq!(g.word(0), &[] as &[u8]);
        for w in 1..g.size() as ElementId {
            let a = (g.length(w - 1), g.word(w - 1));
            let b = (g.length(w), g.word(w));
            assert!(a < b);
            assert_eq!(g.word(w).len(), g.length(w));
            assert_eq!(
                g.from_word(&g.word(w).iter().map(|&s| s as usize).collect::<Vec<_>>()),
                w
            );
        }
    }

    #[test]
    fn star_examples() {
        let g = group("2A2");
        assert_eq!(g.star(g.from_word(&[0])), g.from_word(&[1]));
        let h = group("A3");
        assert!(h.elements().all(|w| h.star(w) == w));
    }

    #[test]
    fn twisted_involution_counts() {
        assert_eq!(group("A3").twisted_involutions().len(), 10);
        let sw = CoxeterSystem::from_label("A1xA1", TwistSpec::Swap)
            .unwrap()
            .enumerate()
            .unwrap();
        let ti: Vec<_> = sw.twisted_involutions().to_vec();
        assert_eq!(ti, vec![0, sw.from_word(&[0, 1])]);
    }

    #[test]
    fn dihedral_twisted_involutions() {
        for m in [5u32, 6, 9] {
            let label = format!("I2({m})");
            let g = group(&label);
            let w0 = g.longest_element();
            let expect: Vec<_> = g
                .elements()
                .filter(|&w| w == 0 || w == w0 || g.length(w) % 2 == 1)
                .collect();
            assert_eq!(g.twisted_involutions(), expect.as_slice());
            let t = group(&format!("2{label}"));
            let expect: Vec<_> = t
                .elements()
                .filter(|&w| w == w0 || t.length(w).is_multiple_of(2))
                .collect();
            assert_eq!(t.twisted_involutions(), expect.as_slice());
        }
    }

    #[test]
    fn ltimes_examples() {
        let g = group("A2");
        let s1 = g.from_word(&[0]);
        let s2 = g.from_word(&[1]);
        assert_eq!(g.ltimes(0, 0), s1);
        assert_eq!(g.ltimes(0, s1), 0);
        assert_eq!(g.ltimes(0, s2), g.from_word(&[0, 1, 0]));
    }

    #[test]
    fn ltimes_is_an_involution_with_length_steps() {
        for label in ["A3", "2A3", "BC3", "2D4", "H3", "2I2(8)"] {
            let g = group(label);
            for &w in g.twisted_involutions() {
                for s in 0..g.rank() {
                    let u = g.ltimes(s, w);
                    assert!(g.is_twisted_involution(u));
                    assert_eq!(g.ltimes(s, u), w);
                    let d = g.length(u) as i64 - g.length(w) as i64;
                    assert!([-2, -1, 1, 2].contains(&d));
                    assert_eq!(d.abs() == 1, g.twisted_conjugate(s, w) == w);
                }
            }
        }
    }

    #[test]
    fn star_is_a_length_preserving_automorphism() {
        for label in ["2A3", "2D4", "2F4", "2I2(7)"] {
            let g = group(label);
            for u in g.elements() {
                assert_eq!(g.star(g.star(u)), u);
                assert_eq!(g.length(g.star(u)), g.length(u));
                for w in g.elements().step_by(7) {
                    assert_eq!(g.star(g.multiply(u, w)), g.multiply(g.star(u), g.star(w)));
                }
            }
        }
    }

    #[test]
    fn tables_are_consistent() {
        let g = group("BC3");
        for w in g.elements() {
            assert_eq!(g.inverse(g.inverse(w)), w);
            assert_eq!(g.multiply(w, g.inverse(w)), 0);
            for s in 0..g.rank() {
                assert_eq!(g.rmul(w, s), g.multiply(w, g.from_word(&[s])));
                assert_eq!(
                    g.is_left_descent(s, w),
                    g.right_descents(g.inverse(w)) >> s & 1 == 1
                );
            }
        }
    }

    #[test]
    fn dihedral_bruhat_is_length_order() {
        let g = group("I2(6)");
        for y in g.elements() {
            for w in g.elements() {
                let expect = g.length(y) < g.length(w) || y == w;
                assert_eq!(g.bruhat_leq(y, w), expect);
                assert_eq!(g.bruhat_leq_recursive(y, w), expect);
            }
        }
    }
}
