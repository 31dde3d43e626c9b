//! Factorizations, Betti elements, minimal presentations, Delta set bounds
//! and catenary degree.

use std::collections::BTreeSet;

use num_integer::Integer;

use super::{NumericalSemigroup, NumsgpError};

/// All factorizations of `element`, as exponent vectors over the minimal
/// generators, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSet {
    pub element: u64,
    pub factorizations: Vec<Vec<u64>>,
}

impl FactorizationSet {
    pub fn lengths(&self) -> BTreeSet<u64> {
        self.factorizations.iter().map(|f| f.iter().sum()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiElement {
    pub element: u64,
    pub factorizations: Vec<Vec<u64>>,
    /// R-class index of each factorization (classes are linked by common support).
    pub class_of: Vec<usize>,
    pub class_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub element: u64,
    pub lhs: Vec<u64>,
    pub rhs: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub betti: Vec<BettiElement>,
    pub relations: Vec<Relation>,
    pub uniquely_presented: bool,
}

impl Presentation {
    pub fn betti_elements(&self) -> Vec<u64> {
        self.betti.iter().map(|b| b.element).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaCatenary {
    pub delta_min: Option<u64>,
    pub delta_max: Option<u64>,
    pub catenary: u64,
}

/// `d(u, v) = max(|u - u∧v|, |v - u∧v|)`.
pub fn factorization_distance(u: &[u64], v: &[u64]) -> u64 {
    let (mut a, mut b) = (0, 0);
    for (&x, &y) in u.iter().zip(v) {
        let m = x.min(y);
        a += x - m;
        b += y - m;
    }
    a.max(b)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Connected-component labels in first-seen order, plus the component count.
fn labels(parent: &mut [usize], count: usize) -> (Vec<usize>, usize) {
    let mut ids: Vec<Option<usize>> = vec![None; parent.len()];
    let mut next = 0;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let r = find(parent, i);
        let id = *ids[r].get_or_insert_with(|| {
            next += 1;
            next - 1
        });
        out.push(id);
    }
    (out, next)
}

impl NumericalSemigroup {
    pub fn factorizations(&self, s: u64) -> Result<FactorizationSet, NumsgpError> {
        if !self.contains(s) {
            return Err(NumsgpError::NotMember(s));
        }
        let gens: Vec<usize> = self.minimal_generators.iter().map(|&g| g as usize).collect();
        let e = gens.len();
        let s = s as usize;
        // reach[j][t]: t is a combination of gens[j..]
        let mut reach = vec![vec![false; s + 1]; e + 1];
        reach[e][0] = true;
        for j in (0..e).rev() {
            let g = gens[j];
            for t in 0..=s {
                reach[j][t] = reach[j + 1][t] || (t >= g && reach[j][t - g]);
            }
        }
        let mut out = Vec::new();
        let mut current = vec![0u64; e];
        enumerate(&gens, &reach, 0, s, &mut current, &mut out);
        out.sort();
        Ok(FactorizationSet {
            element: s as u64,
            factorizations: out,
        })
    }

    /// Whether `∇_s` is disconnected: vertices are the generators `g_i` with
    /// `s - g_i ∈ S`, joined when `s - g_i - g_j ∈ S`.
    pub fn is_betti(&self, s: u64) -> bool {
        let gens = &self.minimal_generators;
        let verts: Vec<usize> = (0..gens.len())
            .filter(|&i| s >= gens[i] && self.contains(s - gens[i]))
            .collect();
        if verts.len() < 2 {
            return false;
        }
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        for a in 0..verts.len() {
            for b in a + 1..verts.len() {
                let sum = gens[verts[a]] + gens[verts[b]];
                if s >= sum && self.contains(s - sum) {
                    union(&mut parent, a, b);
                }
            }
        }
        (0..verts.len()).any(|i| find(&mut parent, i) != 0)
    }

    /// Betti elements in increasing order.
    ///
    /// If `b` is Betti, some generator `g ≠ m` lies in a component of `∇_b`
    /// without `m`, so `b - g ∈ Ap(S, m)`. Hence every Betti element has the
    /// form `w + g` with `w ∈ Ap(S, m) \ {0}` and `g` a generator other than
    /// the multiplicity, which bounds the scan.
    pub fn betti_elements(&self) -> Vec<u64> {
        let m = self.multiplicity();
        let ap = self.apery(m).expect("multiplicity is positive");
        let mut candidates = BTreeSet::new();
        for &w in ap.iter().filter(|&&w| w != 0) {
            for &g in self.minimal_generators.iter().filter(|&&g| g != m) {
                candidates.insert(w + g);
            }
        }
        candidates.into_iter().filter(|&b| self.is_betti(b)).collect()
    }

    pub fn betti_element(&self, b: u64) -> Result<BettiElement, NumsgpError> {
        let fs = self.factorizations(b)?;
        let k = fs.factorizations.len();
        let e = self.embedding_dimension();
        // nodes 0..k are factorizations, k..k+e are generators
        let mut parent: Vec<usize> = (0..k + e).collect();
        for (i, f) in fs.factorizations.iter().enumerate() {
            for (j, &x) in f.iter().enumerate() {
                if x > 0 {
                    union(&mut parent, i, k + j);
                }
            }
        }
        let (class_of, class_count) = labels(&mut parent, k);
        Ok(BettiElement {
            element: b,
            factorizations: fs.factorizations,
            class_of,
            class_count,
        })
    }

    /// A minimal presentation: for each Betti element, one relation from a
    /// representative of the first R-class to a representative of each other
    /// class. Uniquely presented iff every Betti element has exactly two
    /// factorizations.
    pub fn betti_and_presentation(&self) -> Presentation {
        let betti: Vec<BettiElement> = self
            .betti_elements()
            .into_iter()
            .map(|b| self.betti_element(b).expect("Betti elements are members"))
            .collect();
        let mut relations = Vec::new();
        for b in &betti {
            let rep = |c: usize| {
                let i = b.class_of.iter().position(|&x| x == c).unwrap();
                b.factorizations[i].clone()
            };
            let first = rep(0);
            for c in 1..b.class_count {
                relations.push(Relation {
                    element: b.element,
                    lhs: first.clone(),
                    rhs: rep(c),
                });
            }
        }
        let uniquely_presented = betti.iter().all(|b| b.factorizations.len() == 2);
        Presentation {
            betti,
            relations,
            uniquely_presented,
        }
    }

    /// Both bounds of the Delta set and the catenary degree are attained at
    /// Betti elements; `min Δ(S) = gcd Δ(S)`, which is the gcd of the length
    /// differences at the Betti elements.
    pub fn delta_and_catenary(&self) -> DeltaCatenary {
        delta_and_catenary_of(&self.betti_and_presentation())
    }
}

pub fn delta_and_catenary_of(p: &Presentation) -> DeltaCatenary {
    let mut gcd = 0u64;
    let mut max = 0u64;
    let mut catenary = 0u64;
    for b in &p.betti {
        let lengths: BTreeSet<u64> = b.factorizations.iter().map(|f| f.iter().sum()).collect();
        let lengths: Vec<u64> = lengths.into_iter().collect();
        for w in lengths.windows(2) {
            let d = w[1] - w[0];
            gcd = gcd.gcd(&d);
            max = max.max(d);
        }
        catenary = catenary.max(element_catenary(&b.factorizations));
    }
    DeltaCatenary {
        delta_min: (gcd > 0).then_some(gcd),
        delta_max: (max > 0).then_some(max),
        catenary,
    }
}

/// Least `N` for which the graph on `fs` with edges of distance `≤ N` is
/// connected: the bottleneck of a minimum spanning tree (Prim).
pub fn element_catenary(fs: &[Vec<u64>]) -> u64 {
    let k = fs.len();
    if k < 2 {
        return 0;
    }
    let mut in_tree = vec![false; k];
    let mut best = vec![u64::MAX; k];
    best[0] = 0;
    let mut bottleneck = 0;
    for _ in 0..k {
        let next = (0..k)
            .filter(|&i| !in_tree[i])
            .min_by_key(|&i| best[i])
            .unwrap();
        in_tree[next] = true;
        bottleneck = bottleneck.max(best[next]);
        for i in 0..k {
            if !in_tree[i] {
                best[i] = best[i].min(factorization_distance(&fs[next], &fs[i]));
            }
        }
    }
    bottleneck
}

fn enumerate(
    gens: &[usize],
    reach: &[Vec<bool>],
    j: usize,
    t: usize,
    current: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if j == gens.len() {
        if t == 0 {
            out.push(current.clone());
        }
        return;
    }
    let g = gens[j];
    let mut k = 0;
    while k * g <= t {
        if reach[j + 1][t - k * g] {
            current[j] = k as u64;
            enumerate(gens, reach, j + 1, t - k * g, current, out);
        }
        k += 1;
    }
    current[j] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    fn set(v: &[&[u64]]) -> BTreeSet<Vec<u64>> {
        v.iter().map(|x| x.to_vec()).collect()
    }

    /// Every vector in the box with the right weight, by direct product.
    fn factorizations_by_box(s: u64, gens: &[u64]) -> BTreeSet<Vec<u64>> {
        let mut out = BTreeSet::new();
        let mut v = vec![0u64; gens.len()];
        loop {
            let w: u64 = v.iter().zip(gens).map(|(a, b)| a * b).sum();
            if w == s {
                out.insert(v.clone());
            }
            let mut i = 0;
            loop {
                if i == gens.len() {
                    return out;
                }
                v[i] += 1;
                if v[i] * gens[i] <= s {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn factorization_fixtures() {
        let f = sg(&[3, 5, 7]).factorizations(21).unwrap();
        let got: BTreeSet<_> = f.factorizations.into_iter().collect();
        assert_eq!(got, set(&[&[7, 0, 0], &[2, 3, 0], &[3, 1, 1], &[0, 0, 3]]));

        let f = sg(&[5, 4, 3]).factorizations(10).unwrap();
        assert_eq!(f.factorizations, vec![vec![0, 1, 2], vec![2, 0, 0]]);

        let f = sg(&[3, 5, 7]).factorizations(0).unwrap();
        assert_eq!(f.factorizations, vec![vec![0, 0, 0]]);

        assert_eq!(
            sg(&[3, 5, 7]).factorizations(4),
            Err(NumsgpError::NotMember(4))
        );
    }

    #[test]
    fn presentation_fixture_gap() {
        let p = sg(&[11, 13, 14, 15, 19]).betti_and_presentation();
        assert_eq!(p.relations.len(), 5);
        let got: BTreeSet<BTreeSet<Vec<u64>>> = p
            .relations
            .iter()
            .map(|r| [r.lhs.clone(), r.rhs.clone()].into_iter().collect())
            .collect();
        let expected: BTreeSet<BTreeSet<Vec<u64>>> = [
            [[0, 0, 0, 2, 0], [1, 0, 0, 0, 1]],
            [[0, 0, 2, 0, 0], [0, 1, 0, 1, 0]],
            [[0, 2, 0, 0, 0], [1, 0, 0, 1, 0]],
            [[1, 1, 1, 0, 0], [0, 0, 0, 0, 2]],
            [[3, 0, 0, 0, 0], [0, 0, 1, 0, 1]],
        ]
        .iter()
        .map(|pair| pair.iter().map(|v| v.to_vec()).collect())
        .collect();
        assert_eq!(got, expected);
        assert!(p.uniquely_presented);
    }

    #[test]
    fn presentations() {
        let p = sg(&[6, 10, 14, 21]).betti_and_presentation();
        assert!(!p.uniquely_presented);

        let p = sg(&[3, 4, 5]).betti_and_presentation();
        assert_eq!(p.betti_elements(), vec![8, 9, 10]);
        assert!(p.betti.iter().all(|b| b.factorizations.len() == 2));
        assert!(p.uniquely_presented);

        let p = sg(&[2, 3]).betti_and_presentation();
        assert_eq!(p.betti_elements(), vec![6]);
        assert_eq!(p.relations, vec![Relation { element: 6, lhs: vec![0, 2], rhs: vec![3, 0] }]);

        let p = sg(&[1]).betti_and_presentation();
        assert!(p.betti.is_empty());
    }

    #[test]
    fn delta_catenary_fixtures() {
        let d = sg(&[3, 4, 5]).delta_and_catenary();
        assert_eq!(d, DeltaCatenary { delta_min: Some(1), delta_max: Some(1), catenary: 3 });
        let d = sg(&[2, 3]).delta_and_catenary();
        assert_eq!(d, DeltaCatenary { delta_min: Some(1), delta_max: Some(1), catenary: 3 });
        let d = sg(&[359, 199, 139, 123, 119]).delta_and_catenary();
        assert_eq!(d, DeltaCatenary { delta_min: Some(4), delta_max: Some(4), catenary: 14 });
        let d = sg(&[1]).delta_and_catenary();
        assert_eq!(d, DeltaCatenary { delta_min: None, delta_max: None, catenary: 0 });
    }

    #[test]
    fn catenary_of_non_uniquely_presented() {
        let s = sg(&[6, 10, 14, 21]);
        let p = s.betti_and_presentation();
        let per_betti: Vec<u64> = p.betti.iter().map(|b| element_catenary(&b.factorizations)).collect();
        assert_eq!(s.delta_and_catenary().catenary, *per_betti.iter().max().unwrap());
        // 42 = 2·21 = 3·14 = 7·6 = 2·6 + 3·10 = 3·6 + 10 + 14
        let b42 = p.betti.iter().find(|b| b.element == 42).unwrap();
        assert_eq!(b42.factorizations.len(), 5);
    }

    #[test]
    fn distance_and_bottleneck() {
        assert_eq!(factorization_distance(&[2, 0, 0], &[0, 1, 2]), 3);
        assert_eq!(factorization_distance(&[3, 1, 1], &[3, 1, 1]), 0);
        let fs = sg(&[3, 5, 7]).factorizations(21).unwrap().factorizations;
        let edges: Vec<u64> = fs
            .iter()
            .flat_map(|a| fs.iter().map(move |b| factorization_distance(a, b)))
            .collect();
        let c = element_catenary(&fs);
        assert!(edges.contains(&c));
        // brute-force threshold: smallest N whose graph is connected
        let mut thresholds: Vec<u64> = edges.into_iter().filter(|&d| d > 0).collect();
        thresholds.sort();
        let connected = |n: u64| {
            let mut seen = vec![false; fs.len()];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for j in 0..fs.len() {
                    if !seen[j] && factorization_distance(&fs[i], &fs[j]) <= n {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen.iter().all(|&x| x)
        };
        let brute = thresholds.into_iter().find(|&n| connected(n)).unwrap();
        assert_eq!(c, brute);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn semigroup() -> impl Strategy<Value = NumericalSemigroup> {
            proptest::collection::vec(2u64..30, 2..5)
                .prop_filter_map("gcd must be 1", |g| NumericalSemigroup::from_generators(&g).ok())
        }

        proptest! {
            #[test]
            fn factorizations_complete(s in semigroup(), t in 0u64..120) {
                prop_assume!(s.contains(t));
                let got: BTreeSet<_> = s.factorizations(t).unwrap().factorizations.into_iter().collect();
                prop_assert_eq!(got, factorizations_by_box(t, s.minimal_generators()));
            }

            #[test]
            fn betti_scan_matches_disconnected_factorization_graphs(s in semigroup()) {
                let betti = s.betti_elements();
                // every element up to the largest candidate, checked via R-classes
                let m = s.multiplicity();
                let top = s.apery(m).unwrap().last().copied().unwrap()
                    + s.minimal_generators().iter().max().unwrap();
                for t in 1..=top {
                    if !s.contains(t) { continue; }
                    let classes = s.betti_element(t).unwrap().class_count;
                    prop_assert_eq!(classes > 1, betti.contains(&t), "t = {}", t);
                }
            }
        }
    }
}
