use alloc::sync::Arc;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::space::{Element, MatrixSpace, Packed};

#[derive(Debug, Clone)]
struct Level {
    /// base point `e_base`; its orbit consists of possible `base`-th columns
    base: usize,
    gens: Vec<Element>,
    points: Vec<Packed>,
    orbit: HashMap<Packed, usize>,
    /// `transversal[p] · e_base = points[p]`
    transversal: Vec<Element>,
}

/// Deterministic Schreier–Sims stabiliser chain for a matrix group acting on columns.
///
/// The base is `e_1, …, e_n`: a degree-0 matrix fixing every standard basis vector is
/// the identity, so the chain determines the group exactly.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    space: Arc<MatrixSpace>,
    generators: Vec<Element>,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(space: &Arc<MatrixSpace>, generators: Vec<Element>) -> Self {
        let n = space.n();
        let levels = (0..n)
            .map(|base| Level {
                base,
                gens: Vec::new(),
                points: Vec::new(),
                orbit: HashMap::new(),
                transversal: Vec::new(),
            })
            .collect();
        let mut chain = StabilizerChain { space: space.clone(), generators: Vec::new(), levels };
        for level in 0..n {
            chain.rebuild_orbit(level);
        }
        chain.add_generators(generators);
        chain
    }

    /// Adds generators and restores the chain invariants.
    pub fn add_generators(&mut self, gens: Vec<Element>) {
        let mut any = false;
        for g in gens {
            if self.space.is_identity(&g.m) {
                continue;
            }
            self.generators.push(g.clone());
            if self.contains(&g.m) {
                continue;
            }
            any = true;
            let depth = self.first_moved(&g.m);
            for level in 0..=depth {
                self.levels[level].gens.push(g.clone());
            }
            for level in 0..=depth {
                self.rebuild_orbit(level);
            }
        }
        if any {
            self.complete();
        }
    }

    fn first_moved(&self, m: &[u16]) -> usize {
        let id = self.space.identity();
        (0..self.levels.len())
            .find(|&k| self.space.column(m, k) != self.space.column(&id, k))
            .unwrap_or(self.levels.len() - 1)
    }

    fn rebuild_orbit(&mut self, level: usize) {
        let space = self.space.clone();
        let lv = &mut self.levels[level];
        let id = space.identity_element();
        let start = space.column(&id.m, lv.base);
        lv.points = alloc::vec![start.clone()];
        lv.orbit = HashMap::new();
        lv.orbit.insert(start, 0);
        lv.transversal = alloc::vec![id];
        let mut k = 0;
        while k < lv.points.len() {
            for g in &lv.gens {
                let q = space.apply(&g.m, &lv.points[k], lv.base);
                if !lv.orbit.contains_key(&q) {
                    let u = space.mul_elements(g, &lv.transversal[k]);
                    lv.orbit.insert(q.clone(), lv.points.len());
                    lv.points.push(q);
                    lv.transversal.push(u);
                }
            }
            k += 1;
        }
    }

    /// Strips `m` through levels `from..`; returns the residue and the level where it stuck.
    fn sift(&self, m: &[u16], from: usize) -> (Packed, usize) {
        let mut h: Packed = m.into();
        for (k, lv) in self.levels.iter().enumerate().skip(from) {
            let p = self.space.column(&h, lv.base);
            match lv.orbit.get(&p) {
                None => return (h, k),
                Some(&idx) => h = self.space.mul(&lv.transversal[idx].inv, &h),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        let depth = self.levels.len();
        let mut i = depth as isize - 1;
        'outer: while i >= 0 {
            let level = i as usize;
            let lv = &self.levels[level];
            for p in 0..lv.points.len() {
                for s in 0..lv.gens.len() {
                    let lv = &self.levels[level];
                    let su = self.space.mul(&lv.gens[s].m, &lv.transversal[p].m);
                    let q = self.space.column(&su, lv.base);
                    let qi = lv.orbit[&q];
                    let h = self.space.mul(&lv.transversal[qi].inv, &su);
                    let (residue, stuck) = self.sift(&h, level + 1);
                    if self.space.is_identity(&residue) {
                        continue;
                    }
                    let element = self.space.element(residue).expect("group elements are invertible");
                    let stuck = stuck.min(depth - 1);
                    for l in level + 1..=stuck {
                        self.levels[l].gens.push(element.clone());
                    }
                    for l in level + 1..=stuck {
                        self.rebuild_orbit(l);
                    }
                    i = stuck as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    pub fn space(&self) -> &Arc<MatrixSpace> {
        &self.space
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.points.len() as u128).product()
    }

    pub fn contains(&self, m: &[u16]) -> bool {
        let (h, _) = self.sift(m, 0);
        self.space.is_identity(&h)
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Orbit lengths along the base.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.points.len()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::closure::GroupSnapshot;
    use crate::grading::GradeGroup;
    use crate::matrix::ShiftFamily;
    use crate::ring::GradedRing;

    #[test]
    fn chain_matches_closure() {
        for (m, n) in [(2u64, 2usize), (3, 2), (4, 2), (2, 3), (3, 3)] {
            let r = GradedRing::trivial(m, GradeGroup::trivial()).unwrap();
            let fam = ShiftFamily::zeros(r.grading(), n).unwrap();
            let s = MatrixSpace::new(&r, &fam, 1).unwrap();
            let mut gens: Vec<Element> = s.elementary_generators(None).unwrap().into_iter().map(|g| g.0).collect();
            gens.extend(s.diagonal_units(None));
            let closure = GroupSnapshot::generate(&s, gens.clone(), 1 << 20);
            let chain = StabilizerChain::new(&s, gens);
            assert_eq!(chain.order(), closure.order() as u128, "Z/{m}, n = {n}");
            for e in closure.elements().iter().step_by(7) {
                assert!(chain.contains(e));
            }
        }
    }

    #[test]
    fn chain_membership_rejects_outsiders() {
        let r = GradedRing::trivial(3, GradeGroup::trivial()).unwrap();
        let fam = ShiftFamily::zeros(r.grading(), 2).unwrap();
        let s = MatrixSpace::new(&r, &fam, 1).unwrap();
        let gens = s.elementary_generators(None).unwrap().into_iter().map(|g| g.0).collect();
        let sl = StabilizerChain::new(&s, gens);
        assert_eq!(sl.order(), 24);
        let d = &s.diagonal_units(None)[0];
        assert!(!sl.contains(&d.m));
    }
}
