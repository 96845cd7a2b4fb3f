use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::context::{par_tally, Ctx, Tally};
use super::EXHAUSTIVE_TRIPLE_LIMIT;
use crate::coset::DoubleCoset;
use crate::gens::GenSet;
use crate::group::{CoxeterGroup, Element};
use crate::path::{subordination_failure, PathFrontier};

pub(super) fn run(ctx: &Ctx, name: &str) -> Tally {
    match name {
        "bruhat-subword" => bruhat_subword(ctx),
        "monoid-laws" => monoid_laws(ctx),
        "monoid-assoc" => monoid_assoc(ctx),
        "length-additivity" => length_additivity(ctx),
        "star-monotone" => star_monotone(ctx),
        "lifting" => lifting(ctx),
        "lifting-factor" => lifting_factor(ctx),
        "projection-monotone" => projection_monotone(ctx),
        "projection-preimage" => projection_preimage(ctx),
        "coset-structure" => coset_structure(ctx),
        "rex-search" => rex_search(ctx),
        "bruhat-min-max" => bruhat_min_max(ctx),
        "bruhat-reduced-paths" => bruhat_reduced_paths(ctx),
        "bruhat-any-expression" => bruhat_any_expression(ctx),
        "term-lower-set" => term_lower_set(ctx),
        "term-concat" => term_concat(ctx),
        "term-up-down" => term_up_down(ctx),
        "path-concat" => path_concat(ctx),
        "star-inclusion" => star_inclusion(ctx),
        "concat-monotone" => concat_triples(ctx, Triple::Monotone),
        "concat-strict" => concat_triples(ctx, Triple::Strict),
        "star-absorbs" => concat_triples(ctx, Triple::Absorbs),
        "length-order" => length_order(ctx),
        "unique-forward-path" => unique_forward_path(ctx),
        "expression-structure" => expression_structure(ctx),
        "reduced-composition" => reduced_composition(ctx),
        "path-enumeration" => path_enumeration(ctx),
        other => unreachable!("unknown check {other}"),
    }
}

fn elements(g: &CoxeterGroup) -> Vec<Element> {
    g.elements().collect()
}

fn bruhat_subword(ctx: &Ctx) -> Tally {
    let g = ctx.g;
    par_tally(&elements(g), |&y, t| {
        // Products of all subwords of the canonical word of y.
        let mut reach = vec![false; ctx.n];
        reach[0] = true;
        for &s in g.word(y) {
            let snapshot: Vec<usize> = (0..ctx.n).filter(|&i| reach[i]).collect();
            for i in snapshot {
                reach[g.mul_gen(Element::from_index(i), s as usize).index()] = true;
            }
        }
        for x in g.elements() {
            let expected = reach[x.index()];
            t.check(ctx.le(x, y) == expected, || {
                (
                    ctx.element_key(&[x, y]),
                    format!(
                        "x={} y={}: comparator says {}, subword says {}",
                        ctx.showx(x),
                        ctx.showx(y),
                        ctx.le(x, y),
                        expected
                    ),
                )
            });
        }
    })
}

fn monoid_laws(ctx: &Ctx) -> Tally {
    let g = ctx.g;
    let mut t = Tally::default();
    for s in 0..ctx.rank {
        let gs = g.generator(s);
        t.check(g.demazure(gs, gs) == gs, || {
            (ctx.element_key(&[gs]), format!("s={}: s*s != s", ctx.showx(gs)))
        });
    }
    for &set in &ctx.subsets {
        let w = g.longest_element(set);
        t.check(g.demazure(w, w) == w, || {
            (ctx.element_key(&[w]), format!("I=[{set}]: w_I*w_I != w_I"))
        });
    }
    for w in g.elements() {
        let e = Element::IDENTITY;
        t.check(g.demazure(e, w) == w && g.demazure(w, e) == w, || {
            (ctx.element_key(&[w]), format!("w={}: identity not neutral", ctx.showx(w)))
        });
        for s in 0..ctx.rank {
            let fixed = g.demazure_gen(w, s) == w;
            t.check(fixed == g.is_right_descent(w, s), || {
                (
                    ctx.element_key(&[w]),
                    format!("w={} s={}: w*s = w is {fixed}", ctx.showx(w), s + 1),
                )
            });
        }
    }
    t.merge(par_tally(&elements(g), |&x, t| {
        for y in g.elements() {
            for s in g.right_descents(y).iter() {
                let ys = g.mul_gen(y, s);
                let other = g.demazure_gen(g.demazure(x, ys), s);
                t.check(g.demazure(x, y) == other && g.is_right_descent(other, s), || {
                    (
                        ctx.element_key(&[x, y]),
                        format!(
                            "x={} y={} s={}: x*y != (x*ys)*s or s not a descent of x*y",
                            ctx.showx(x),
                            ctx.showx(y),
                            s + 1
                        ),
                    )
                });
            }
        }
    }))
}

fn monoid_assoc(ctx: &Ctx) -> Tally {
    let g = ctx.g;
    let test = |x: Element, y: Element, z: Element, t: &mut Tally| {
        let lhs = g.demazure(g.demazure(x, y), z);
        let rhs = g.demazure(x, g.demazure(y, z));
        t.check(lhs == rhs, || {
            (
                ctx.element_key(&[x, y, z]),
                format!(
                    "x={} y={} z={}: (x*y)*z={} but x*(y*z)={}",
                    ctx.showx(x),
                    ctx.showx(y),
                    ctx.showx(z),
                    ctx.showx(lhs),
                    ctx.showx(rhs)
                ),
            )
        });
    };
    if ctx.n <= EXHAUSTIVE_TRIPLE_LIMIT {
        par_tally(&elements(g), |&x, t| {
            for y in g.elements() {
                for z in g.elements() {
                    test(x, y, z, t);
                }
            }
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        let triples: Vec<[Element; 3]> = (0..ctx.samples)
            .map(|_| [(); 3].map(|_| Element::from_index(rng.gen_range(0..ctx.n))))
            .collect();
        par_tally(&triples, |&[x, y, z], t| test(x, y, z, t))
    }
}

fn length_additivity(ctx: &Ctx) -> Tally {
    let g = ctx.g;
    par_tally(&elements(g), |&x, t| {
        for y in g.elements() {
            let d = g.demazure(x, y);
            t.check(g.length(d) >= g.length(x).max(g.length(y)), || {
                (
                    ctx.element_key(&[x, y]),
                    format!("x={} y={}: l(x*y) < max(l(x), l(y))", ctx.showx(x), ctx.showx(y)),
                )
            });
            let xy = g.multiply(x, y);
            let additive = g.length(xy) == g.length(x) + g.length(y);
            t.check(additive == (xy == d), || {
                (
                    ctx.element_key(&[x, y]),
                    format!(
                        "x={} y={}: length additive is {additive} but xy = x*y is {}",
                        ctx.showx(x),
                        ctx.showx(y),
                        xy == d
                    ),
                )
            });
        }
    })
}

fn star_monotone(ctx: &Ctx) -> Tally {
    let g = ctx.g;
    par_tally(&elements(g), |&b, t| {
        for a in g.elements().filter(|&a| ctx.le(a, b)) {
            for c in g.elements() {
                let (ac, bc) = (g.demazure(a, c), g.demazure(b, c));
                t.check(ctx.le(ac, bc), || {
                    (
                        ctx.element_key(&[a, b, c]),
                        format!(
                            "a={} <= b={}, c={}: a*c={} not <= b*c={}",
                            ctx.showx(a),
                            ctx.showx(b),
                            ctx.showx(c),
                            ctx.showx(ac),
                            ctx.showx(bc)
                        ),
                    )
                });
            }
        }
    })
}

/// `down[x]` lists every `x' <= x`.
fn down_sets(ctx: &Ctx) -> Vec<Vec<Element>> {
    let g = ctx.g;
    g.elements()
        .map(|x| g.elements().filter(|&y| ctx.le(y, x)).collect())
        .collect()
}

fn lifting(ctx: &Ctx) -> Tally {
    let g = ctx.g;
    let down = down_sets(ctx);
    let reduced = |a: Element, b: Element, ab: Element| g.length(ab) == g.length(a) + g.length(b);
    par_tally(&elements(g), |&w, t| {
        for &v in &down[w.index()] {
            for x in g.elements() {
                let vx = g.multiply(v, x);
                let right = down[x.index()].iter().any(|&x2| {
                    let wx2 = g.multiply(w, x2);
                    reduced(w, x2, wx2) && ctx.le(vx, wx2)
                });
                t.check(right, || {
                    (
                        ctx.element_key(&[v, w, x]),
                        format!(
                            "v={} w={} x={}: no x' <= x with vx <= w.x'",
                            ctx.showx(v),
                            ctx.showx(w),
                            ctx.showx(x)
                        ),
                    )
                });
                let xv = g.multiply(x, v);
                let left = down[x.index()].iter().any(|&x2| {
                    let x2w = g.multiply(x2, w);
                    reduced(x2, w, x2w) && ctx.le(xv, x2w)
                });
                t.check(left, || {
                    (
                        ctx.element_key(&[v, w, x]),
                        format!(
                            "v={} w={} x={}: no x' <= x with xv <= x'.w",
                            ctx.showx(v),
                            ctx.showx(w),
                            ctx.showx(x)
                        ),
                    )
                });
            }
        }
    })
}

fn lifting_factor(ctx: &Ctx) -> Tally {
    let g = ctx.g;
    let down = down_sets(ctx);
    par_tally(&elements(g), |&w, t| {
        for z in g.elements() {
            // w = z.x
            let x = g.multiply(g.inverse(z), w);
            if g.length(z) + g.length(x) == g.length(w) {
                let xinv = g.inverse(x);
                for &v in &down[w.index()] {
                    let ok = down[xinv.index()].iter().any(|&x2| ctx.le(g.multiply(v, x2), z));
                    t.check(ok, || {
                        (
                            ctx.element_key(&[v, w, z]),
                            format!(
                                "v={} w={} = z.x with z={}: no x' <= x^-1 with vx' <= z",
                                ctx.showx(v),
                                ctx.showx(w),
                                ctx.showx(z)
                            ),
                        )
                    });
                }
            }
            // w = x.z
            let x = g.multiply(w, g.inverse(z));
            if g.length(x) + g.length(z) == g.length(w) {
                let xinv = g.inverse(x);
                for &v in &down[w.index()] {
                    let ok = down[xinv.index()].iter().any(|&x2| ctx.le(g.multiply(x2, v), z));
                    t.check(ok, || {
                        (
                            ctx.element_key(&[v, w, z]),
                            format!(
                                "v={} w={} = x.z with z={}: no x' <= x^-1 with x'v <= z",
                                ctx.showx(v),
                                ctx.showx(w),
                                ctx.showx(z)
                            ),
                        )
                    });
                }
            }
        }
    })
}

/// All `(I, J, K, L)` with `I ⊆ K`, `J ⊆ L`.
fn projection_quads(ctx: &Ctx) -> Vec<[GenSet; 4]> {
    let mut out = Vec::new();
    for (i, j) in ctx.subset_pairs() {
        for &k in ctx.subsets.iter().filter(|k| i.is_subset(**k)) {
            for &l in ctx.subsets.iter().filter(|l| j.is_subset(**l)) {
                out.push([i, j, k, l]);
            }
        }
    }
    out
}

fn projection_monotone(ctx: &Ctx) -> Tally {
    par_tally(&projection_quads(ctx), |&[i, j, k, l], t| {
        let cosets = ctx.quotient(i, j).cosets();
        for p in cosets {
            for p2 in cosets.iter().filter(|p2| ctx.cle(p, p2)) {
                let (a, b) = (ctx.coset_of(p.min(), k, l), ctx.coset_of(p2.min(), k, l));
                t.check(ctx.cle(&a, &b), || {
                    (
                        ctx.coset_key(&[*p, *p2]),
                        format!(
                            "{} <= {} but images {} not <= {}",
                            ctx.show(p),
                            ctx.show(p2),
                            ctx.show(&a),
                            ctx.show(&b)
                        ),
                    )
                });
            }
        }
    })
}

fn projection_preimage(ctx: &Ctx) -> Tally {
    par_tally(&projection_quads(ctx), |&[i, j, k, l], t| {
        let cosets = ctx.quotient(i, j).cosets();
        for q in ctx.quotient(k, l).cosets() {
            let fibre: Vec<&DoubleCoset> = cosets
                .iter()
                .filter(|p| ctx.coset_of(p.min(), k, l) == *q)
                .collect();
            let maxima: Vec<&DoubleCoset> = fibre
                .iter()
                .copied()
                .filter(|m| fibre.iter().all(|p| ctx.cle(p, m)))
                .collect();
            let top = match maxima.as_slice() {
                [m] => **m,
                _ => {
                    t.check(false, || {
                        (
                            ctx.coset_key(&[*q]),
                            format!("fibre of {} over ({i}|{j}) has {} maxima", ctx.show(q), maxima.len()),
                        )
                    });
                    continue;
                }
            };
            t.check(top.max() == q.max(), || {
                (
                    ctx.coset_key(&[*q]),
                    format!("fibre maximum {} of {} has another max element", ctx.show(&top), ctx.show(q)),
                )
            });
            for p in cosets {
                let lhs = ctx.cle(&ctx.coset_of(p.min(), k, l), q);
                let rhs = ctx.cle(p, &top);
                t.check(lhs == rhs, || {
                    (
                        ctx.coset_key(&[*p, *q]),
                        format!(
                            "p={} q={}: pi(p) <= q is {lhs} but p <= {} is {rhs}",
                            ctx.show(p),
                            ctx.show(q),
                            ctx.show(&top)
                        ),
                    )
                });
            }
        }
    })
}

fn coset_structure(ctx: &Ctx) -> Tally {
    let g = ctx.g;
    par_tally(&ctx.subset_pairs(), |&(i, j), t| {
        let quotient = ctx.quotient(i, j);
        let (wi, wj) = (g.longest_element(i), g.longest_element(j));
        let (li, lj) = (g.length(wi), g.length(wj));
        let zero_length = quotient.cosets().iter().filter(|p| p.length() == 0).count();
        let expected_zero = usize::from(i == j);
        t.check(zero_length == expected_zero, || {
            (
                (0, vec![i.bits(), j.bits()]),
                format!("({i}|{j}): {zero_length} cosets of length 0, expected {expected_zero}"),
            )
        });
        for (idx, p) in quotient.cosets().iter().enumerate() {
            let members = quotient.members(idx);
            let fail = |what: String| (ctx.coset_key(&[*p]), format!("{}: {what}", ctx.show(p)));
            let min_len = members.iter().map(|&x| g.length(x)).min().unwrap_or(0);
            let max_len = members.iter().map(|&x| g.length(x)).max().unwrap_or(0);
            let at_min: Vec<Element> = members.iter().copied().filter(|&x| g.length(x) == min_len).collect();
            let at_max: Vec<Element> = members.iter().copied().filter(|&x| g.length(x) == max_len).collect();
            t.check(at_min == [p.min()] && at_max == [p.max()], || {
                fail(format!("{} shortest and {} longest members", at_min.len(), at_max.len()))
            });
            t.check(p.length() + li + lj == 2 * g.length(p.max()), || {
                fail(format!("length {} != 2l(max) - l(I) - l(J)", p.length()))
            });
            let sandwich = g.demazure(g.demazure(wi, p.min()), wj);
            t.check(sandwich == p.max(), || {
                fail(format!("w_I*min*w_J = {}", ctx.showx(sandwich)))
            });
            let predicted = g.parabolic_elements(i).len() * g.parabolic_elements(j).len()
                / g.parabolic_elements(p.rightred()).len();
            t.check(predicted == members.len() && members.len() == p.size(), || {
                fail(format!("size {} vs {} members vs formula {predicted}", p.size(), members.len()))
            });
            // s.min = min.t pairs the two redundancies.
            let x = p.min();
            let left: GenSet = i
                .iter()
                .filter(|&s| j.iter().any(|u| g.gen_mul(s, x) == g.mul_gen(x, u)))
                .collect();
            let right: GenSet = j
                .iter()
                .filter(|&u| i.iter().any(|s| g.gen_mul(s, x) == g.mul_gen(x, u)))
                .collect();
            t.check(left == p.leftred() && right == p.rightred() && left.len() == right.len(), || {
                fail(format!(
                    "redundancies [{}]/[{}], expected [{left}]/[{right}]",
                    p.leftred(),
                    p.rightred()
                ))
            });
            let is_identity = i == j && members.contains(&Element::IDENTITY);
            t.check((p.length() == 0) == is_identity, || {
                fail(format!("length {} but identity coset is {is_identity}", p.length()))
            });
        }
    })
}

fn rex_search(ctx: &Ctx) -> Tally {
    let g = ctx.g;
    par_tally(&ctx.subset_pairs(), |&(i, j), t| {
        for p in ctx.quotient(i, j).cosets() {
            let e = g.find_reduced_expression(p);
            let ok = g.is_reduced(&e)
                && g.expressed_coset(&e) == *p
                && g.expr_length(&e) == p.length()
                && e.first() == i
                && e.last() == j;
            t.check(ok, || {
                (ctx.coset_key(&[*p]), format!("{}: searched expression {e} is not a reduced expression of it", ctx.show(p)))
            });
        }
    })
}

fn bruhat_min_max(ctx: &Ctx) -> Tally {
    par_tally(&ctx.subset_pairs(), |&(i, j), t| {
        let cosets = ctx.quotient(i, j).cosets();
        for p in cosets {
            for q in cosets {
                let by_min = ctx.le(p.min(), q.min());
                let by_max = ctx.le(p.max(), q.max());
                t.check(by_min == by_max, || {
                    (
                        ctx.coset_key(&[*p, *q]),
                        format!(
                            "p={} q={}: min comparison {by_min}, max comparison {by_max}",
                            ctx.show(p),
                            ctx.show(q)
                        ),
                    )
                });
            }
        }
    })
}

fn bruhat_reduced_paths(ctx: &Ctx) -> Tally {
    let reduced = ctx.reduced();
    par_tally(&ctx.subset_pairs(), |&(i, j), t| {
        let quotient = ctx.quotient(i, j);
        let mut union: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); quotient.len()];
        let mut witnessed = vec![false; quotient.len()];
        for r in reduced.iter().filter(|r| r.expr.first() == i && r.expr.last() == j) {
            let q = ctx.index_of(&r.coset);
            witnessed[q] = true;
            union[q].extend(r.frontier.reachable());
        }
        for (qi, q) in quotient.cosets().iter().enumerate() {
            t.check(witnessed[qi], || {
                (ctx.coset_key(&[*q]), format!("{} has no reduced expression", ctx.show(q)))
            });
            for (pi, p) in quotient.cosets().iter().enumerate() {
                let by_order = ctx.cle(p, q);
                let by_paths = union[qi].contains(&pi);
                t.check(by_order == by_paths, || {
                    (
                        ctx.coset_key(&[*p, *q]),
                        format!(
                            "p={} q={}: p <= q is {by_order}, terminus of a reduced expression is {by_paths}",
                            ctx.show(p),
                            ctx.show(q)
                        ),
                    )
                });
            }
        }
    })
}

fn bruhat_any_expression(ctx: &Ctx) -> Tally {
    let (records, _) = ctx.capped();
    par_tally(&ctx.subset_pairs(), |&(i, j), t| {
        let quotient = ctx.quotient(i, j);
        let mut meet: Vec<Option<BTreeSet<usize>>> = vec![None; quotient.len()];
        for r in records.iter().filter(|r| r.expr.first() == i && r.expr.last() == j) {
            let terms: BTreeSet<usize> = r.terms.iter().copied().collect();
            let slot = &mut meet[ctx.index_of(&r.coset)];
            *slot = Some(match slot.take() {
                None => terms,
                Some(acc) => acc.intersection(&terms).copied().collect(),
            });
        }
        for (qi, q) in quotient.cosets().iter().enumerate() {
            // Cosets without an expression inside the cap are out of scope.
            let Some(common) = &meet[qi] else { continue };
            for (pi, p) in quotient.cosets().iter().enumerate() {
                let by_order = ctx.cle(p, q);
                let by_paths = common.contains(&pi);
                t.check(by_order == by_paths, || {
                    (
                        ctx.coset_key(&[*p, *q]),
                        format!(
                            "p={} q={}: p <= q is {by_order}, terminus of every expression is {by_paths}",
                            ctx.show(p),
                            ctx.show(q)
                        ),
                    )
                });
            }
        }
    })
}

fn term_lower_set(ctx: &Ctx) -> Tally {
    let (records, _) = ctx.capped();
    par_tally(records, |r, t| {
        let lower = ctx.lower_set(&r.coset);
        t.check(r.terms == lower, || {
            (
                ctx.expr_key(&[&r.expr]),
                format!(
                    "{} expresses {}: Term has {} cosets, lower set has {}",
                    r.expr,
                    ctx.show(&r.coset),
                    r.terms.len(),
                    lower.len()
                ),
            )
        });
    })
}

/// Pairs of capped records `(E, F)` with `E` ending where `F` starts and
/// combined width within the cap.
fn composable_pairs(ctx: &Ctx) -> Vec<(usize, usize)> {
    let (records, _) = ctx.capped();
    let mut out = Vec::new();
    for (a, e) in records.iter().enumerate() {
        for (b, f) in records.iter().enumerate() {
            if e.expr.last() == f.expr.first() && e.expr.width() + f.expr.width() <= ctx.width_cap {
                out.push((a, b));
            }
        }
    }
    out
}

fn term_concat(ctx: &Ctx) -> Tally {
    let (records, index) = ctx.capped();
    par_tally(&composable_pairs(ctx), |&(a, b), t| {
        let (e, f) = (&records[a], &records[b]);
        let joined = e.expr.concat(&f.expr).expect("composable");
        let ef = &records[index[&joined]];
        let qe = ctx.quotient(e.expr.first(), e.expr.last());
        let qf = ctx.quotient(f.expr.first(), f.expr.last());
        for &p in &e.terms {
            for &q in &f.terms {
                let pq = ctx.star(qe.coset(p), qf.coset(q));
                let ok = ef.terms.binary_search(&ctx.index_of(&pq)).is_ok();
                t.check(ok, || {
                    (
                        ctx.expr_key(&[&e.expr, &f.expr]),
                        format!(
                            "{} then {}: {} * {} = {} is not a terminus of {joined}",
                            e.expr,
                            f.expr,
                            ctx.show(qe.coset(p)),
                            ctx.show(qf.coset(q)),
                            ctx.show(&pq)
                        ),
                    )
                });
            }
        }
    })
}

fn term_up_down(ctx: &Ctx) -> Tally {
    let (records, index) = ctx.capped();
    let g = ctx.g;
    let short: Vec<&_> = records.iter().filter(|r| r.expr.width() < ctx.width_cap).collect();
    par_tally(&short, |r, t| {
        let (i, j) = (r.expr.first(), r.expr.last());
        let here = ctx.quotient(i, j);
        for s in 0..ctx.rank {
            let next = if j.contains(s) { j.without(s) } else { j.with(s) };
            let mut longer = r.expr.clone();
            longer.push(next).expect("one-generator step");
            let after: BTreeSet<usize> = records[index[&longer]].terms.iter().copied().collect();
            let there = ctx.quotient(i, next);
            let fail = |what: &str| (ctx.expr_key(&[&longer]), format!("{longer}: {what}"));
            let step = g.identity_coset(j);
            let step = ctx.coset_of(step.min(), j, next);
            let starred: BTreeSet<usize> = r
                .terms
                .iter()
                .map(|&p| ctx.index_of(&ctx.star(here.coset(p), &step)))
                .collect();
            if !j.contains(s) {
                t.check(after == starred, || fail("Term after adding differs from Term * (W_J W_Js)"));
            } else {
                let inside: BTreeSet<usize> = r
                    .terms
                    .iter()
                    .flat_map(|&p| g.sub_cosets(here.coset(p), next).expect("subset"))
                    .map(|q| ctx.index_of(&q))
                    .collect();
                t.check(after == inside, || fail("Term after removing is not the set of sub-cosets"));
                t.check(starred.is_subset(&after), || fail("Term * (W_J W_J-t) not inside Term after removing"));
                let by_max: BTreeSet<usize> = r
                    .terms
                    .iter()
                    .map(|&p| there.class_of(here.coset(p).max()))
                    .collect();
                t.check(starred == by_max, || fail("Term * (W_J W_J-t) differs from {W_I max(p) W_J-t}"));
            }
        }
    })
}

fn path_concat(ctx: &Ctx) -> Tally {
    let (records, _) = ctx.capped();
    let g = ctx.g;
    par_tally(&composable_pairs(ctx), |&(a, b), t| {
        let (e, f) = (&records[a].expr, &records[b].expr);
        let joined = e.concat(f).expect("composable");
        let forward = g.forward_path(&joined);
        for pp in g.enumerate_paths(e) {
            for qq in g.enumerate_paths(f) {
                let c = g.concat_paths(&pp, &qq).expect("composable");
                let fail = |what: String| {
                    (
                        ctx.expr_key(&[e, f]),
                        format!(
                            "{e} then {f}, termini {} and {}: {what}",
                            ctx.show(&pp.terminus()),
                            ctx.show(&qq.terminus())
                        ),
                    )
                };
                let why = subordination_failure(g, c.expr(), c.cosets());
                t.check(why.is_none(), || fail(format!("concatenation is not subordinate ({})", why.clone().unwrap_or_default())));
                let star = ctx.star(&pp.terminus(), &qq.terminus());
                t.check(c.terminus() == star, || fail("terminus is not the star product".into()));
                if pp.is_forward() && qq.is_forward() {
                    t.check(c.is_forward() && c == forward, || fail("forward paths concatenate to a non-forward path".into()));
                }
            }
        }
    })
}

fn star_inclusion(ctx: &Ctx) -> Tally {
    let g = ctx.g;
    let triples: Vec<[GenSet; 3]> = ctx
        .subset_pairs()
        .into_iter()
        .flat_map(|(i, j)| ctx.subsets.iter().map(move |&k| [i, j, k]))
        .collect();
    par_tally(&triples, |&[i, j, k], t| {
        for &k2 in ctx.subsets.iter().filter(|k2| k2.is_subset(k)) {
            for p in ctx.quotient(i, j).cosets() {
                for q in ctx.quotient(j, k).cosets() {
                    let pq = ctx.star(p, q);
                    for q2 in g.sub_cosets(q, k2).expect("subset") {
                        let pq2 = ctx.star(p, &q2);
                        t.check(ctx.coset_of(pq2.min(), i, k) == pq, || {
                            (
                                ctx.coset_key(&[*p, q2, *q]),
                                format!(
                                    "p={} q'={} inside q={}: p*q'={} not inside p*q={}",
                                    ctx.show(p),
                                    ctx.show(&q2),
                                    ctx.show(q),
                                    ctx.show(&pq2),
                                    ctx.show(&pq)
                                ),
                            )
                        });
                    }
                }
            }
        }
    })
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Triple {
    Monotone,
    Strict,
    Absorbs,
}

/// Checks over `p` a `(K, I)`-coset, `q' <= q` two `(I, J)`-cosets and `r` a
/// `(J, L)`-coset.
fn concat_triples(ctx: &Ctx, kind: Triple) -> Tally {
    let quads: Vec<[GenSet; 3]> = ctx
        .subset_pairs()
        .into_iter()
        .flat_map(|(k, i)| ctx.subsets.iter().map(move |&j| [k, i, j]))
        .collect();
    let full = ctx.g.generators();
    par_tally(&quads, |&[k, i, j], t| {
        let middle = ctx.quotient(i, j).cosets();
        let ends: Vec<GenSet> = match kind {
            Triple::Absorbs => vec![full],
            _ => ctx.subsets.clone(),
        };
        for p in ctx.quotient(k, i).cosets() {
            for q in middle {
                let pq = ctx.star(p, q);
                let pq_reduced = if kind == Triple::Strict { ctx.reduced_compose(p, q) } else { None };
                for q2 in middle.iter().filter(|q2| ctx.cle(q2, q)) {
                    if kind == Triple::Strict && (q2 == q || pq_reduced.is_none()) {
                        continue;
                    }
                    let pq2 = ctx.star(p, q2);
                    for &l in &ends {
                        for r in ctx.quotient(j, l).cosets() {
                            let lower = ctx.star(&pq2, r);
                            let upper = ctx.star(&pq, r);
                            let (ok, what) = match kind {
                                Triple::Monotone => (ctx.cle(&lower, &upper), "not <="),
                                Triple::Absorbs => (lower == upper, "differs from"),
                                Triple::Strict => {
                                    let Some(pqr) = ctx.reduced_compose(&pq_reduced.expect("checked"), r) else {
                                        continue;
                                    };
                                    (ctx.cle(&lower, &pqr) && lower != pqr, "not <")
                                }
                            };
                            t.check(ok, || {
                                (
                                    ctx.coset_key(&[*p, *q2, *q, *r]),
                                    format!(
                                        "p={} q'={} q={} r={}: p*q'*r={} {what} p*q*r={}",
                                        ctx.show(p),
                                        ctx.show(q2),
                                        ctx.show(q),
                                        ctx.show(r),
                                        ctx.show(&lower),
                                        ctx.show(&upper)
                                    ),
                                )
                            });
                        }
                    }
                }
            }
        }
    })
}

fn length_order(ctx: &Ctx) -> Tally {
    par_tally(&ctx.subset_pairs(), |&(i, j), t| {
        let cosets = ctx.quotient(i, j).cosets();
        for p in cosets {
            for q in cosets.iter().filter(|q| ctx.cle(q, p)) {
                let ok = q.length() <= p.length() && ((q.length() == p.length()) == (q == p));
                t.check(ok, || {
                    (
                        ctx.coset_key(&[*q, *p]),
                        format!(
                            "{} <= {} with lengths {} and {}",
                            ctx.show(q),
                            ctx.show(p),
                            q.length(),
                            p.length()
                        ),
                    )
                });
            }
        }
    })
}

fn unique_forward_path(ctx: &Ctx) -> Tally {
    let g = ctx.g;
    par_tally(ctx.reduced(), |r, t| {
        let target = ctx.index_of(&r.coset);
        let count = r.frontier.count_of(target);
        let forward = g.forward_path(&r.expr);
        let mut ok = count == 1 && forward.terminus() == r.coset;
        if ok && r.expr.width() <= ctx.width_cap {
            let ending: Vec<_> = g
                .enumerate_paths(&r.expr)
                .into_iter()
                .filter(|p| p.terminus() == r.coset)
                .collect();
            ok = ending.len() == 1 && ending[0] == forward;
        }
        t.check(ok, || {
            (
                ctx.expr_key(&[&r.expr]),
                format!("{} expresses {}: {count} paths end there", r.expr, ctx.show(&r.coset)),
            )
        });
    })
}

fn expression_structure(ctx: &Ctx) -> Tally {
    let (records, _) = ctx.capped();
    let g = ctx.g;
    par_tally(records, |r, t| {
        let e = &r.expr;
        let multi = e.to_multistep();
        let fail = |what: String| (ctx.expr_key(&[e]), format!("{e}: {what}"));
        t.check(g.expr_length(e) == g.multistep_length(&multi), || {
            fail(format!("singlestep length {} but multistep length {}", g.expr_length(e), g.multistep_length(&multi)))
        });
        t.check(multi.to_singlestep().to_multistep() == multi, || {
            fail(format!("multistep form {multi} does not round trip"))
        });
        t.check(g.multistep_expressed_coset(&multi) == r.coset, || {
            fail("multistep form expresses another coset".into())
        });
        let reduced = g.is_reduced(e);
        let tight = g.expr_length(e) == r.coset.length();
        t.check(reduced == tight, || {
            fail(format!("reduced is {reduced} but length {} vs l(p) = {}", g.expr_length(e), r.coset.length()))
        });
        if reduced {
            for from in 0..=e.width() {
                for to in from..=e.width() {
                    let piece = e.slice(from, to);
                    t.check(g.is_reduced(&piece), || fail(format!("slice {piece} is not reduced")));
                }
            }
        }
        t.check(g.forward_path(e).terminus() == r.coset, || {
            fail("forward path ends away from the expressed coset".into())
        });
    })
}

fn reduced_composition(ctx: &Ctx) -> Tally {
    let g = ctx.g;
    let triples: Vec<[GenSet; 3]> = ctx
        .subset_pairs()
        .into_iter()
        .flat_map(|(i, j)| ctx.subsets.iter().map(move |&k| [i, j, k]))
        .collect();
    let mut t = par_tally(&triples, |&[i, j, k], t| {
        let wj = g.longest_element(j);
        let wj_inv = g.inverse(wj);
        for p in ctx.quotient(i, j).cosets() {
            for q in ctx.quotient(j, k).cosets() {
                let composed = g.reduced_compose(p, q).expect("matching types");
                let r = ctx.star(p, q);
                let y = g.multiply(wj_inv, q.max());
                let right = g.multiply(p.max(), y) == r.max() && g.length(p.max()) + g.length(y) == g.length(r.max());
                let x = g.multiply(p.max(), wj_inv);
                let left = g.multiply(x, q.max()) == r.max() && g.length(x) + g.length(q.max()) == g.length(r.max());
                let ok = composed.is_some() == right && right == left && composed.is_none_or(|c| c == r);
                t.check(ok, || {
                    (
                        ctx.coset_key(&[*p, *q]),
                        format!(
                            "p={} q={}: composition present is {}, criteria give {right} and {left}",
                            ctx.show(p),
                            ctx.show(q),
                            composed.is_some()
                        ),
                    )
                });
            }
        }
    });
    let (records, index) = ctx.capped();
    let pairs: Vec<(usize, usize)> = composable_pairs(ctx)
        .into_iter()
        .filter(|&(a, b)| g.is_reduced(&records[a].expr) && g.is_reduced(&records[b].expr))
        .collect();
    t = t.merge(par_tally(&pairs, |&(a, b), t| {
        let (e, f) = (&records[a], &records[b]);
        let joined = e.expr.concat(&f.expr).expect("composable");
        let reduced = g.is_reduced(&records[index[&joined]].expr);
        let present = ctx.reduced_compose(&e.coset, &f.coset).is_some();
        t.check(reduced == present, || {
            (
                ctx.expr_key(&[&e.expr, &f.expr]),
                format!(
                    "{} then {}: concatenation reduced is {reduced}, reduced composition present is {present}",
                    e.expr, f.expr
                ),
            )
        });
    }));
    t
}

fn path_enumeration(ctx: &Ctx) -> Tally {
    let (records, _) = ctx.capped();
    let g = ctx.g;
    par_tally(records, |r, t| {
        let e = &r.expr;
        let paths = g.enumerate_paths(e);
        let fail = |what: String| (ctx.expr_key(&[e]), format!("{e}: {what}"));
        let invalid = paths
            .iter()
            .filter(|p| subordination_failure(g, p.expr(), p.cosets()).is_some())
            .count();
        t.check(invalid == 0, || fail(format!("{invalid} enumerated paths are not subordinate")));
        let distinct: HashSet<&[DoubleCoset]> = paths.iter().map(|p| p.cosets()).collect();
        t.check(distinct.len() == paths.len(), || fail("duplicate paths".into()));
        let frontier = PathFrontier::of_expression(g, e);
        let mut counts = vec![0u64; ctx.quotient(e.first(), e.last()).len()];
        for p in &paths {
            counts[ctx.index_of(&p.terminus())] += 1;
        }
        let agree = counts.iter().enumerate().all(|(i, &n)| frontier.count_of(i) == n);
        t.check(agree, || fail("path counts disagree with enumeration".into()));
        let forward: Vec<_> = paths.iter().filter(|p| p.is_forward()).collect();
        t.check(forward.len() == 1 && *forward[0] == g.forward_path(e), || {
            fail(format!("{} forward paths", forward.len()))
        });
    })
}
