use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{element_order, Backend, GroupElement, GroupError, GroupSpec};

/// Default cap on the size of an enumerated conjugacy class.
pub const CLASS_CAP: usize = 5000;

const NONE: u32 = u32::MAX;

/// Pair-order table value standing for "order greater than 3".
const BIG_ORDER: u8 = 4;

/// `t.(i,j)` label of a class element of a wreath product (blocks 0-based,
/// `i < j`, `t` an index into the base group table).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathLabel {
    pub t: u32,
    pub i: u32,
    pub j: u32,
}

/// A conjugacy class `D` of involutions in breadth-first order from the seed,
/// with its pairwise product orders and conjugation table.
#[derive(Debug, Clone)]
pub struct TranspositionClass {
    spec: GroupSpec,
    elements: Vec<GroupElement>,
    index: BTreeMap<GroupElement, usize>,
    /// `n x n`, entries in `{1, 2, 3}` or [`BIG_ORDER`].
    pair_order: Vec<u8>,
    /// `conj[i * n + j]` = index of `D_i^{D_j}`, or `NONE` if it left the
    /// class (only possible when the seed is outside the generated group).
    conj: Vec<u32>,
    gen_actions: Vec<Vec<u32>>,
}

/// Orbit of `seed` under conjugation by `gens`, breadth-first in generator
/// order.
pub(crate) fn orbit(
    backend: &Backend,
    seed: &GroupElement,
    gens: &[GroupElement],
    cap: usize,
) -> Result<(Vec<GroupElement>, BTreeMap<GroupElement, usize>), GroupError> {
    let inverses: Vec<GroupElement> = gens.iter().map(|g| backend.inv(g)).collect();
    let mut elements = vec![seed.clone()];
    let mut index = BTreeMap::new();
    index.insert(seed.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for (g, g_inv) in gens.iter().zip(&inverses) {
            let c = backend.mul(&backend.mul(g_inv, &elements[k]), g);
            if index.contains_key(&c) {
                continue;
            }
            if elements.len() == cap {
                return Err(GroupError::CapExceeded { cap });
            }
            index.insert(c.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(c);
        }
    }
    Ok((elements, index))
}

/// Picks generators from `target` (in order) until the conjugation orbit of
/// `seed` covers every element of `target`, or the candidates run out.
pub(crate) fn greedy_generators(
    backend: &Backend,
    seed: &GroupElement,
    target: &[GroupElement],
    cap: usize,
) -> Result<Vec<GroupElement>, GroupError> {
    let mut gens: Vec<GroupElement> = Vec::new();
    let mut chosen = BTreeSet::new();
    loop {
        let (_, index) = orbit(backend, seed, &gens, cap)?;
        if target.iter().all(|t| index.contains_key(t)) {
            return Ok(gens);
        }
        // Prefer an element the orbit has not reached; when all of those are
        // already generators, any unused target element enlarges the group.
        let pick = target
            .iter()
            .find(|t| !index.contains_key(*t) && !chosen.contains(*t))
            .or_else(|| target.iter().find(|t| !chosen.contains(*t)));
        match pick {
            None => return Ok(gens),
            Some(t) => {
                chosen.insert(t.clone());
                gens.push(t.clone());
            }
        }
    }
}

impl TranspositionClass {
    /// Conjugacy closure with the default cap; fails if some pair product has
    /// order above 3.
    pub fn closure(spec: &GroupSpec) -> Result<Self, GroupError> {
        Self::closure_with_cap(spec, CLASS_CAP)
    }

    pub fn closure_with_cap(spec: &GroupSpec, cap: usize) -> Result<Self, GroupError> {
        let class = Self::closure_unchecked(spec, cap)?;
        let n = class.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if class.pair_order[i * n + j] == BIG_ORDER {
                    let p = spec.backend.mul(&class.elements[i], &class.elements[j]);
                    let order = element_order(&spec.backend, &p)?;
                    return Err(GroupError::NotThreeTransposition { i, j, order });
                }
            }
        }
        Ok(class)
    }

    /// Closure that records product orders above 3 instead of failing, so
    /// [`TranspositionClass::is_three_transposition`] can inspect them.
    pub fn closure_unchecked(spec: &GroupSpec, cap: usize) -> Result<Self, GroupError> {
        let b = &spec.backend;
        let (elements, index) = orbit(b, &spec.seed, &spec.generators, cap)?;
        let n = elements.len();
        let mut pair_order = vec![1u8; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let o = b
                    .small_product_order(&elements[i], &elements[j])
                    .unwrap_or(BIG_ORDER);
                pair_order[i * n + j] = o;
                pair_order[j * n + i] = o;
            }
        }
        let mut conj = vec![NONE; n * n];
        for i in 0..n {
            for j in 0..n {
                conj[i * n + j] = match pair_order[i * n + j] {
                    1 | 2 => i as u32,
                    _ => {
                        let c = b.conjugate(&elements[i], &elements[j]);
                        index.get(&c).map_or(NONE, |&k| k as u32)
                    }
                };
            }
        }
        let gen_actions = spec
            .generators
            .iter()
            .map(|g| {
                let g_inv = b.inv(g);
                elements
                    .iter()
                    .map(|c| index[&b.mul(&b.mul(&g_inv, c), g)] as u32)
                    .collect()
            })
            .collect();
        Ok(TranspositionClass {
            spec: spec.clone(),
            elements,
            index,
            pair_order,
            conj,
            gen_actions,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn label(&self) -> &str {
        &self.spec.label
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// `|D_i D_j|` when it is at most 3; 4 stands for anything larger.
    pub fn pair_order(&self, i: usize, j: usize) -> u8 {
        self.pair_order[i * self.len() + j]
    }

    pub fn commute(&self, i: usize, j: usize) -> bool {
        self.pair_order(i, j) <= 2
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.pair_order(i, j) == 3
    }

    /// Index of `D_i^{D_j}`, if it lies in the class.
    pub fn conjugate_index(&self, i: usize, j: usize) -> Option<usize> {
        let c = self.conj[i * self.len() + j];
        (c != NONE).then_some(c as usize)
    }

    /// For adjacent `i`, `j`: the third point `D_i^{D_j}` of their line.
    pub fn third_point(&self, i: usize, j: usize) -> Option<usize> {
        if self.adjacent(i, j) {
            self.conjugate_index(i, j)
        } else {
            None
        }
    }

    /// For each generator `g`, the permutation `i -> index of D_i^g`.
    pub fn generator_actions(&self) -> &[Vec<u32>] {
        &self.gen_actions
    }

    /// True iff every off-diagonal product order is 2 or 3.
    pub fn is_three_transposition(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| i == j || matches!(self.pair_order(i, j), 2 | 3)))
    }

    /// The elements commuting with `D_d` other than `D_d` itself, enumerated
    /// as a class of the group they generate.
    pub fn perp_subclass(&self, d: usize) -> Result<TranspositionClass, GroupError> {
        if d >= self.len() {
            return Err(GroupError::IndexOutOfRange(d));
        }
        let target: Vec<GroupElement> = (0..self.len())
            .filter(|&e| e != d && self.pair_order(d, e) == 2)
            .map(|e| self.elements[e].clone())
            .collect();
        let Some(seed) = target.first() else {
            return Err(GroupError::EmptyPerp(d));
        };
        let b = &self.spec.backend;
        let gens = greedy_generators(b, seed, &target, CLASS_CAP)?;
        let spec = GroupSpec {
            backend: b.clone(),
            generators: gens,
            seed: seed.clone(),
            label: format!("{}:perp({d})", self.spec.label),
            wreath: None,
        };
        let sub = TranspositionClass::closure(&spec)?;
        debug_assert_eq!(sub.len(), target.len());
        Ok(sub)
    }

    /// `t.(i,j)` labels for classes of wreath products built in their
    /// imprimitive permutation representation.
    pub fn wreath_labels(&self) -> Option<Vec<WreathLabel>> {
        let shape = self.spec.wreath.as_ref()?;
        let k = shape.base.order();
        let e = shape.base.identity() as usize;
        self.elements
            .iter()
            .map(|g| {
                let GroupElement::Perm(p) = g else {
                    return None;
                };
                (0..shape.blocks).find_map(|i| {
                    let image = p[i * k + e] as usize;
                    let j = image / k;
                    (j != i).then_some(WreathLabel {
                        t: (image % k) as u32,
                        i: i as u32,
                        j: j as u32,
                    })
                })
            })
            .collect()
    }
}

/// Conjugacy closure of `spec.seed` under `spec.generators`.
pub fn conjugacy_closure(spec: &GroupSpec) -> Result<TranspositionClass, GroupError> {
    TranspositionClass::closure(spec)
}

/// True iff every off-diagonal product order in the class is 2 or 3.
pub fn verify_3transpositions(class: &TranspositionClass) -> bool {
    class.is_three_transposition()
}

/// The sub-class of elements commuting with (and distinct from) `D_d`.
pub fn perp_subclass(
    class: &TranspositionClass,
    d: usize,
) -> Result<TranspositionClass, GroupError> {
    class.perp_subclass(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement as G;

    fn sym_spec(m: usize) -> GroupSpec {
        let gens = (1..m)
            .map(|i| G::from_cycles(m, &[&[i, i + 1]]).unwrap())
            .collect();
        let seed = G::from_cycles(m, &[&[1, 2]]).unwrap();
        GroupSpec::new(Backend::Perm { degree: m }, gens, seed, "sym").unwrap()
    }

    #[test]
    fn sym4_class() {
        let d = conjugacy_closure(&sym_spec(4)).unwrap();
        assert_eq!(d.len(), 6);
        assert!(verify_3transpositions(&d));
        for i in 0..6 {
            assert_eq!(d.pair_order(i, i), 1);
            for j in 0..6 {
                assert_eq!(d.pair_order(i, j), d.pair_order(j, i));
            }
        }
    }

    #[test]
    fn class_is_closed_and_orders_match() {
        let spec = sym_spec(5);
        let d = conjugacy_closure(&spec).unwrap();
        let b = &spec.backend;
        for i in 0..d.len() {
            for j in 0..d.len() {
                let c = b.conjugate(d.element(i), d.element(j));
                assert_eq!(d.index_of(&c), d.conjugate_index(i, j));
                assert!(d.conjugate_index(i, j).is_some());
                let o = element_order(b, &b.mul(d.element(i), d.element(j))).unwrap();
                assert_eq!(o, d.pair_order(i, j) as usize);
            }
        }
    }

    #[test]
    fn dihedral_class_with_order_four_products() {
        // symmetries of the octagon on vertices 1..8; the reflection class
        // through two opposite vertices has products of order 4
        let rot = G::from_cycles(8, &[&[1, 2, 3, 4, 5, 6, 7, 8]]).unwrap();
        let refl = G::from_cycles(8, &[&[2, 8], &[3, 7], &[4, 6]]).unwrap();
        let spec = GroupSpec::new(
            Backend::Perm { degree: 8 },
            vec![rot, refl.clone()],
            refl,
            "D16",
        )
        .unwrap();
        let d = TranspositionClass::closure_unchecked(&spec, CLASS_CAP).unwrap();
        assert_eq!(d.len(), 4);
        assert!(!verify_3transpositions(&d));
        assert!(matches!(
            conjugacy_closure(&spec),
            Err(GroupError::NotThreeTransposition { order: 4, .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let err = TranspositionClass::closure_with_cap(&sym_spec(6), 10).unwrap_err();
        assert_eq!(err, GroupError::CapExceeded { cap: 10 });
    }

    #[test]
    fn perp_in_sym5() {
        let d = conjugacy_closure(&sym_spec(5)).unwrap();
        let p = perp_subclass(&d, 0).unwrap();
        assert_eq!(p.len(), 3);
        // every member fixes 1 and 2
        for g in p.elements() {
            let G::Perm(images) = g else { unreachable!() };
            assert_eq!(&images[..2], &[0, 1]);
        }
        let d3 = conjugacy_closure(&sym_spec(3)).unwrap();
        assert_eq!(perp_subclass(&d3, 0).unwrap_err(), GroupError::EmptyPerp(0));
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = conjugacy_closure(&sym_spec(6)).unwrap();
        let b = conjugacy_closure(&sym_spec(6)).unwrap();
        assert_eq!(a.elements(), b.elements());
        assert_eq!(a.elements()[0], sym_spec(6).seed);
    }

    #[test]
    fn generator_actions_are_permutations() {
        let d = conjugacy_closure(&sym_spec(5)).unwrap();
        for act in d.generator_actions() {
            let mut seen = vec![false; d.len()];
            for &k in act {
                assert!(!core::mem::replace(&mut seen[k as usize], true));
            }
        }
    }
}
