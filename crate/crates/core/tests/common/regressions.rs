//! Small facts about the order that are easy to get wrong. Each function
//! panics on a mismatch.

use dcoset::{CoxeterGroup, DoubleCoset, Element, GenSet, SinglestepExpr};

fn ex(sets: &[GenSet]) -> SinglestepExpr {
    SinglestepExpr::new(sets.to_vec()).unwrap()
}

pub fn one_below_s_below_sts() {
    let g = CoxeterGroup::preset("A2").unwrap();
    let (s, t) = (g.generator(0), g.generator(1));
    let ss = g.multiply(s, s);
    let sts = g.multiply(g.multiply(s, t), s);
    assert_eq!(ss, Element::IDENTITY);
    assert!(g.bruhat_lt(ss, sts));
    assert!(g.bruhat_lt(s, sts));
}

/// `Term([I, Is, I])` is the whole of `W_I \ W_Is / W_I`, while the star
/// product of the termini of `[I, Is]` and `[Is, I]` is only the top coset.
pub fn termini_of_peak_versus_star_of_termini() {
    for name in ["A2", "B2", "I2(5)", "A3", "B3"] {
        let g = CoxeterGroup::preset(name).unwrap();
        for i in GenSet::all_subsets(g.rank()) {
            for s in (0..g.rank()).filter(|&s| !i.contains(s)) {
                let is = i.with(s);
                let peak: Vec<DoubleCoset> = g.term_set(&ex(&[i, is, i]));
                let inside: Vec<DoubleCoset> = g
                    .enumerate_cosets(i, i)
                    .into_iter()
                    .filter(|c| g.coset_elements(c).iter().all(|&w| g.word(w).iter().all(|&l| is.contains(l as usize))))
                    .collect();
                assert_eq!(peak, inside, "{name} I=[{i}] s={}", s + 1);

                let up = g.term_set(&ex(&[i, is]));
                let down = g.term_set(&ex(&[is, i]));
                assert_eq!((up.len(), down.len()), (1, 1));
                let star = g.coset_star(&up[0], &down[0]).unwrap();
                assert_eq!(star, g.coset_of(g.longest_element(is), i, i));
                assert_eq!(inside.len() > 1, star != peak[0] || peak.len() > 1);
                assert!(peak.contains(&star));
            }
        }
    }
}

/// `[∅, s, ∅]` has two subordinate paths; only the forward one is the
/// concatenation of the unique paths of `[∅, s]` and `[s, ∅]`.
pub fn only_forward_path_is_a_concatenation() {
    let g = CoxeterGroup::preset("A2").unwrap();
    let (e, s) = (GenSet::EMPTY, GenSet::singleton(0));
    let up = g.enumerate_paths(&ex(&[e, s]));
    let down = g.enumerate_paths(&ex(&[s, e]));
    assert_eq!((up.len(), down.len()), (1, 1));
    let joined = g.concat_paths(&up[0], &down[0]).unwrap();

    let paths = g.enumerate_paths(&ex(&[e, s, e]));
    assert_eq!(paths.len(), 2);
    let forward: Vec<_> = paths.iter().filter(|p| p.is_forward()).collect();
    assert_eq!(forward.len(), 1);
    assert_eq!(*forward[0], joined);
    let other = paths.iter().find(|p| !p.is_forward()).unwrap();
    assert_ne!(*other, joined);
    assert_eq!(other.terminus(), g.identity_coset(e));
    assert_eq!(joined.terminus(), g.coset_of(g.generator(0), e, e));
}

/// With `r` the unique `(J, S)`-coset, `p * q' * r = p * q * r` even when
/// `q' < q`.
pub fn star_with_full_coset_forgets_the_middle() {
    let g = CoxeterGroup::preset("A2").unwrap();
    let a = GenSet::singleton(0);
    let full = g.generators();
    let mut strict_pairs = 0;
    for k in GenSet::all_subsets(2) {
        for j in GenSet::all_subsets(2) {
            let r = g.enumerate_cosets(j, full);
            assert_eq!(r.len(), 1);
            for p in g.enumerate_cosets(k, a) {
                for q in g.enumerate_cosets(a, j) {
                    for q2 in g.enumerate_cosets(a, j) {
                        if !g.coset_leq(&q2, &q).unwrap() {
                            continue;
                        }
                        strict_pairs += usize::from(q2 != q);
                        let lhs = g.coset_star(&g.coset_star(&p, &q2).unwrap(), &r[0]).unwrap();
                        let rhs = g.coset_star(&g.coset_star(&p, &q).unwrap(), &r[0]).unwrap();
                        assert_eq!(lhs, rhs);
                        assert_eq!(lhs.size(), g.size());
                    }
                }
            }
        }
    }
    assert!(strict_pairs > 0);
}

/// `x * x` need not keep the right descents of `x`: in `A2`,
/// `ab * ab = aba`.
pub fn demazure_square_can_grow_descents() {
    let g = CoxeterGroup::preset("A2").unwrap();
    let ab = g.parse_element("1-2").unwrap();
    assert_eq!(g.format(g.demazure(ab, ab)), "1-2-1");
    assert_ne!(g.right_descents(g.demazure(ab, ab)), g.right_descents(ab));
}

/// `[{a}, {a, b}]` is reduced, which a length count using `l(I_i)` in place
/// of `l(I_{i-1})` would miss.
pub fn asymmetric_expression_is_reduced() {
    let g = CoxeterGroup::preset("A2").unwrap();
    let (a, ab) = (GenSet::singleton(0), g.generators());
    let e = ex(&[a, ab]);
    assert!(g.is_reduced(&e));
    assert_eq!(g.expr_length(&e), 2);
    assert_eq!(g.expressed_coset(&e).length(), 2);
}
