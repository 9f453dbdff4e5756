//! Subgroup lattices, conjugacy classes of subgroups and characteristic
//! subgroups.

use std::collections::HashMap;

use super::Group;
use crate::bits::Bits;
use crate::error::{Error, Result};

/// A conjugacy class of subgroups. `rep` is the smallest member.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub rep: Bits,
    pub members: Vec<Bits>,
    pub normalizer: Bits,
}

/// Every subgroup of a group, sorted by (order, bitset value).
#[derive(Debug)]
pub struct Lattice {
    pub all: Vec<Bits>,
    index: HashMap<Bits, usize>,
    /// Class index of each entry of `all`.
    pub class_of: Vec<usize>,
    pub classes: Vec<SubgroupClass>,
    /// Normal subgroups, in lattice order.
    pub normals: Vec<Bits>,
    pub maximal: Vec<Bits>,
}

impl Lattice {
    fn build(g: &Group) -> Lattice {
        let n = g.order();
        let mut index: HashMap<Bits, usize> = HashMap::new();
        let mut found: Vec<(Bits, Vec<usize>)> = Vec::new();
        let mut cyclic_gens = Vec::new();
        for x in 0..n {
            let c = g.closure(&[x]);
            if !index.contains_key(&c) {
                index.insert(c, found.len());
                found.push((c, vec![x]));
                cyclic_gens.push((c, x));
            }
        }
        let mut frontier: Vec<usize> = (0..found.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &i in &frontier {
                let (h, gens) = found[i].clone();
                for &(c, x) in &cyclic_gens {
                    if c.is_subset(&h) {
                        continue;
                    }
                    let mut gs = gens.clone();
                    gs.push(x);
                    let j = g.closure(&gs);
                    if !index.contains_key(&j) {
                        index.insert(j, found.len());
                        next.push(found.len());
                        found.push((j, gs));
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<Bits> = found.into_iter().map(|(b, _)| b).collect();
        all.sort();
        let index: HashMap<Bits, usize> = all.iter().enumerate().map(|(i, b)| (*b, i)).collect();

        let mut class_of = vec![usize::MAX; all.len()];
        let mut classes = Vec::new();
        for i in 0..all.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let h = all[i];
            let mut members: Vec<Bits> = Vec::new();
            let mut normalizer = Bits::empty();
            for x in 0..n {
                let c = g.conjugate(x, &h);
                if c == h {
                    normalizer.insert(x);
                }
                members.push(c);
            }
            members.sort();
            members.dedup();
            for m in &members {
                class_of[index[m]] = classes.len();
            }
            classes.push(SubgroupClass { rep: members[0], members, normalizer });
        }
        let normals = all.iter().copied().filter(|h| classes[class_of[index[h]]].members.len() == 1).collect();
        let whole = g.whole();
        let maximal = all
            .iter()
            .copied()
            .filter(|h| *h != whole && !all.iter().any(|k| *k != whole && k != h && h.is_subset(k)))
            .collect();
        Lattice { all, index, class_of, classes, normals, maximal }
    }

    pub fn index_of(&self, h: &Bits) -> Option<usize> {
        self.index.get(h).copied()
    }

    pub fn class_index(&self, h: &Bits) -> Option<usize> {
        self.index_of(h).map(|i| self.class_of[i])
    }

    /// Canonical representative of the conjugacy class of `h`.
    pub fn canonical(&self, h: &Bits) -> Option<Bits> {
        self.class_index(h).map(|c| self.classes[c].rep)
    }

    pub fn subgroups_of(&self, t: &Bits) -> impl Iterator<Item = &Bits> + '_ {
        let t = *t;
        self.all.iter().filter(move |h| h.is_subset(&t))
    }
}

/// Center, derived subgroup and Frattini subgroup.
#[derive(Debug, Clone)]
pub struct Characteristic {
    pub center: Bits,
    pub derived: Bits,
    pub frattini: Bits,
}

impl Group {
    pub fn lattice(&self) -> &Lattice {
        self.cache.lattice.get_or_init(|| Lattice::build(self))
    }

    pub fn characteristic(&self) -> &Characteristic {
        self.cache.characteristic.get_or_init(|| Characteristic {
            center: self.center(),
            derived: self.derived_subgroup(),
            frattini: self.frattini_of(&self.whole()),
        })
    }

    pub fn frattini(&self) -> Bits {
        self.characteristic().frattini
    }

    pub fn derived(&self) -> Bits {
        self.characteristic().derived
    }

    pub fn derived_subgroup(&self) -> Bits {
        self.derived_of(&self.whole())
    }

    /// Commutator subgroup of a subgroup `t`.
    pub fn derived_of(&self, t: &Bits) -> Bits {
        let mut comms = Bits::singleton(0);
        for a in t.iter() {
            for b in t.iter() {
                comms.insert(self.mul(self.mul(a, b), self.inv(self.mul(b, a))));
            }
        }
        self.closure_of_set(&comms)
    }

    /// Frattini subgroup of a subgroup `t`: the intersection of its maximal
    /// subgroups (trivial for the trivial group).
    pub fn frattini_of(&self, t: &Bits) -> Bits {
        if let Some(f) = self.cache.frattini_of.lock().get(t) {
            return *f;
        }
        let lat = self.lattice();
        let subs: Vec<Bits> = lat.subgroups_of(t).filter(|h| *h != t).copied().collect();
        let mut f = *t;
        for h in &subs {
            if !subs.iter().any(|k| k != h && h.is_subset(k)) {
                f = f.intersection(h);
            }
        }
        self.cache.frattini_of.lock().insert(*t, f);
        f
    }

    /// For a p-group: the subgroup generated by commutators and p-th powers.
    pub fn frattini_by_powers(&self) -> Result<Bits> {
        if self.order() == 1 {
            return Ok(self.trivial());
        }
        let p = self.prime_power().ok_or(Error::NotPGroup(self.order()))?;
        let mut s = self.derived();
        for x in 0..self.order() {
            s.insert(self.pow(x, p));
        }
        Ok(self.closure_of_set(&s))
    }

    /// Subgroup generated by central elements of order dividing `p`. With
    /// `p = None` the group must have prime-power order.
    pub fn omega1_center(&self, p: Option<usize>) -> Result<Bits> {
        let p = match p {
            Some(p) => p,
            None if self.order() == 1 => return Ok(self.trivial()),
            None => self.prime_power().ok_or(Error::NotPGroup(self.order()))?,
        };
        let z = self.characteristic().center;
        let s: Bits = z.iter().filter(|&x| p % self.elt_order(x) == 0).collect();
        Ok(self.closure_of_set(&s))
    }

    /// Upper central series reaches the whole group.
    pub fn upper_central_series_terminates(&self) -> bool {
        let mut z = self.trivial();
        loop {
            let q = self.quotient(&z).expect("upper central terms are normal");
            let zq = q.group.center();
            let next: Bits = (0..self.order()).filter(|&x| zq.contains(q.proj[x])).collect();
            if next.len() == self.order() {
                return true;
            }
            if next == z {
                return false;
            }
            z = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn perm(name: &str, deg: usize, gens: &[&[usize]]) -> Arc<Group> {
        Group::from_permutations(name, deg, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn brute_subgroups(g: &Group) -> usize {
        // every subgroup is generated by at most 2 elements for these groups;
        // check with all subsets of size <= 2 plus the closure of pairs
        let mut s = std::collections::HashSet::new();
        for a in 0..g.order() {
            for b in 0..g.order() {
                s.insert(g.closure(&[a, b]));
            }
        }
        s.len()
    }

    #[test]
    fn cyclic_prime() {
        let g = perm("C5", 5, &[&[1, 2, 3, 4, 0]]);
        assert_eq!(g.lattice().all.len(), 2);
        assert_eq!(g.lattice().classes.len(), 2);
    }

    #[test]
    fn dihedral_and_quaternion() {
        let d8 = perm("D8", 4, &[&[1, 2, 3, 0], &[0, 3, 2, 1]]);
        let l = d8.lattice();
        assert_eq!(l.all.len(), 10);
        assert_eq!(l.all.len(), brute_subgroups(&d8));
        assert_eq!(l.classes.len(), 8);
        let q8 = perm("Q8", 8, &[&[1, 4, 3, 6, 5, 0, 7, 2], &[2, 7, 4, 1, 6, 3, 0, 5]]);
        let l = q8.lattice();
        assert_eq!(l.all.len(), 6);
        assert_eq!(l.normals.len(), 6);
        let z = q8.center();
        assert_eq!(z.len(), 2);
        assert_eq!(q8.frattini(), z);
        assert_eq!(q8.omega1_center(None).unwrap(), z);
        assert_eq!(q8.frattini_by_powers().unwrap(), z);
    }

    #[test]
    fn ordering_and_classes_partition() {
        let s4 = perm("S4", 4, &[&[1, 2, 3, 0], &[1, 0, 2, 3]]);
        let l = s4.lattice();
        assert_eq!(l.all.len(), 30);
        assert_eq!(l.classes.len(), 11);
        assert!(l.all.windows(2).all(|w| w[0] < w[1]));
        let total: usize = l.classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, l.all.len());
        for c in &l.classes {
            assert_eq!(c.members.len() * c.normalizer.len(), 24);
            assert_eq!(c.rep, c.members[0]);
        }
        assert_eq!(l.normals.len(), 4);
    }

    #[test]
    fn frattini_small() {
        let v = perm("C2xC2", 4, &[&[1, 0, 2, 3], &[0, 1, 3, 2]]);
        assert_eq!(v.frattini(), v.trivial());
        assert_eq!(v.omega1_center(None).unwrap(), v.whole());
        let c4 = perm("C4", 4, &[&[1, 2, 3, 0]]);
        let phi = c4.frattini();
        assert_eq!(phi.len(), 2);
        assert!(phi.iter().all(|x| c4.elt_order(x) <= 2));
        let one = perm("1", 1, &[&[0]]);
        assert_eq!(one.frattini(), one.trivial());
        assert_eq!(one.omega1_center(None).unwrap(), one.trivial());
        let s3 = perm("S3", 3, &[&[1, 2, 0], &[1, 0, 2]]);
        assert!(s3.omega1_center(None).is_err());
        assert_eq!(s3.omega1_center(Some(2)).unwrap(), s3.trivial());
        assert_eq!(s3.derived().len(), 3);
    }

    #[test]
    fn nilpotency() {
        let s3 = perm("S3", 3, &[&[1, 2, 0], &[1, 0, 2]]);
        assert!(!s3.upper_central_series_terminates());
        let d8 = perm("D8", 4, &[&[1, 2, 3, 0], &[0, 3, 2, 1]]);
        assert!(d8.upper_central_series_terminates());
    }
}
