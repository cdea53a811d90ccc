//! Green's relations via principal ideals, with deterministic class
//! numbering by least element index.

use super::FiniteSemigroup;

/// All five Green partitions of a finite semigroup plus the J-order.
#[derive(Debug, Clone)]
pub struct GreenStructure {
    pub r_class_of: Vec<usize>,
    pub l_class_of: Vec<usize>,
    pub j_class_of: Vec<usize>,
    pub h_class_of: Vec<usize>,
    pub d_class_of: Vec<usize>,
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub j_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    pub d_classes: Vec<Vec<usize>>,
    /// j_leq[a][b]: J-class a is below-or-equal J-class b in the J-order.
    pub j_leq: Vec<Vec<bool>>,
    /// Membership of the principal two-sided ideal of each element.
    two_sided: Vec<Vec<bool>>,
    /// r_leq_el[s][t]: s lies in the principal right ideal of t.
    r_leq_el: Vec<Vec<bool>>,
    l_leq_el: Vec<Vec<bool>>,
}

impl GreenStructure {
    pub fn r_related(&self, s: usize, t: usize) -> bool {
        self.r_class_of[s] == self.r_class_of[t]
    }
    pub fn l_related(&self, s: usize, t: usize) -> bool {
        self.l_class_of[s] == self.l_class_of[t]
    }
    pub fn j_related(&self, s: usize, t: usize) -> bool {
        self.j_class_of[s] == self.j_class_of[t]
    }
    pub fn h_related(&self, s: usize, t: usize) -> bool {
        self.h_class_of[s] == self.h_class_of[t]
    }
    pub fn d_related(&self, s: usize, t: usize) -> bool {
        self.d_class_of[s] == self.d_class_of[t]
    }

    /// s ≤_J t on elements.
    pub fn j_leq_elements(&self, s: usize, t: usize) -> bool {
        self.two_sided[t][s]
    }
    pub fn r_leq_elements(&self, s: usize, t: usize) -> bool {
        self.r_leq_el[t][s]
    }
    pub fn l_leq_elements(&self, s: usize, t: usize) -> bool {
        self.l_leq_el[t][s]
    }
}

/// Principal right ideal sS¹ as a membership vector.
fn right_ideal(s: &FiniteSemigroup, a: usize) -> Vec<bool> {
    let n = s.size();
    let mut m = vec![false; n];
    m[a] = true;
    for x in 0..n {
        m[s.mul(a, x)] = true;
    }
    m
}

fn left_ideal(s: &FiniteSemigroup, a: usize) -> Vec<bool> {
    let n = s.size();
    let mut m = vec![false; n];
    m[a] = true;
    for x in 0..n {
        m[s.mul(x, a)] = true;
    }
    m
}

/// Principal two-sided ideal S¹aS¹.
fn two_sided_ideal(s: &FiniteSemigroup, a: usize) -> Vec<bool> {
    let n = s.size();
    let mut m = vec![false; n];
    m[a] = true;
    for x in 0..n {
        m[s.mul(a, x)] = true;
        m[s.mul(x, a)] = true;
        let xa = s.mul(x, a);
        for y in 0..n {
            m[s.mul(xa, y)] = true;
        }
    }
    m
}

/// Partition elements by an equivalence given as a predicate, numbering
/// classes by least member.
fn classify(n: usize, related: impl Fn(usize, usize) -> bool) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![a];
        class_of[a] = id;
        for b in (a + 1)..n {
            if class_of[b] == usize::MAX && related(a, b) {
                class_of[b] = id;
                members.push(b);
            }
        }
        classes.push(members);
    }
    (class_of, classes)
}

pub fn green(s: &FiniteSemigroup) -> GreenStructure {
    let n = s.size();
    let r_ideals: Vec<Vec<bool>> = (0..n).map(|a| right_ideal(s, a)).collect();
    let l_ideals: Vec<Vec<bool>> = (0..n).map(|a| left_ideal(s, a)).collect();
    let two_sided: Vec<Vec<bool>> = (0..n).map(|a| two_sided_ideal(s, a)).collect();

    let (r_class_of, r_classes) = classify(n, |a, b| r_ideals[a][b] && r_ideals[b][a]);
    let (l_class_of, l_classes) = classify(n, |a, b| l_ideals[a][b] && l_ideals[b][a]);
    let (j_class_of, j_classes) = classify(n, |a, b| two_sided[a][b] && two_sided[b][a]);
    let (h_class_of, h_classes) =
        classify(n, |a, b| r_class_of[a] == r_class_of[b] && l_class_of[a] == l_class_of[b]);

    // D = R ∘ L (this composition is already the join of R and L).
    let d_related = |a: usize, b: usize| {
        (0..n).any(|u| {
            r_class_of[a] == r_class_of[u] && l_class_of[u] == l_class_of[b]
        })
    };
    let (d_class_of, d_classes) = classify(n, d_related);

    let k = j_classes.len();
    let mut j_leq = vec![vec![false; k]; k];
    for (a, ca) in j_classes.iter().enumerate() {
        for (b, cb) in j_classes.iter().enumerate() {
            j_leq[a][b] = two_sided[cb[0]][ca[0]];
        }
    }

    GreenStructure {
        r_class_of,
        l_class_of,
        j_class_of,
        h_class_of,
        d_class_of,
        r_classes,
        l_classes,
        j_classes,
        h_classes,
        d_classes,
        j_leq,
        two_sided,
        r_leq_el: r_ideals,
        l_leq_el: l_ideals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn group_has_one_class_for_every_relation() {
        let g = corpus::symmetric_group_s3();
        let gr = green(g.base());
        assert_eq!(gr.r_classes.len(), 1);
        assert_eq!(gr.l_classes.len(), 1);
        assert_eq!(gr.j_classes.len(), 1);
        assert_eq!(gr.d_classes.len(), 1);
        assert_eq!(gr.h_classes.len(), 1);
    }

    #[test]
    fn b2_has_two_j_classes_with_expected_shape() {
        let s = corpus::brandt(2);
        let gr = green(s.base());
        assert_eq!(gr.j_classes.len(), 2);
        let zero = s.index_of("0").unwrap();
        let zero_class = gr.j_class_of[zero];
        let unit_class = 1 - zero_class;
        assert_eq!(gr.j_classes[zero_class].len(), 1);
        assert_eq!(gr.j_classes[unit_class].len(), 4);
        let r_in_units: std::collections::HashSet<usize> = gr.j_classes[unit_class]
            .iter()
            .map(|&x| gr.r_class_of[x])
            .collect();
        let l_in_units: std::collections::HashSet<usize> = gr.j_classes[unit_class]
            .iter()
            .map(|&x| gr.l_class_of[x])
            .collect();
        assert_eq!(r_in_units.len(), 2);
        assert_eq!(l_in_units.len(), 2);
    }

    #[test]
    fn i2_has_three_j_classes_indexed_by_rank() {
        let c = corpus::symmetric_inverse_monoid(2);
        let gr = green(c.semigroup.base());
        assert_eq!(gr.j_classes.len(), 3);
        // Each J-class collects the elements of one rank.
        for class in &gr.j_classes {
            let ranks: std::collections::HashSet<usize> =
                class.iter().map(|&i| c.maps[i].rank()).collect();
            assert_eq!(ranks.len(), 1);
        }
    }

    #[test]
    fn h_equals_r_meet_l_and_d_equals_j_on_corpus() {
        for s in corpus::mixed_semigroup_corpus() {
            let gr = green(&s);
            let n = s.size();
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(
                        gr.h_related(a, b),
                        gr.r_related(a, b) && gr.l_related(a, b)
                    );
                    assert_eq!(gr.d_related(a, b), gr.j_related(a, b));
                }
            }
        }
    }

    #[test]
    fn j_order_is_ideal_containment() {
        let s = corpus::brandt(2);
        let gr = green(s.base());
        let zero = s.index_of("0").unwrap();
        let zc = gr.j_class_of[zero];
        let uc = 1 - zc;
        assert!(gr.j_leq[zc][uc]);
        assert!(!gr.j_leq[uc][zc]);
    }
}
