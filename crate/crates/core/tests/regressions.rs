//! Small facts about the order that are easy to get wrong, pinned exactly.

mod common;

use common::regressions as r;

#[test]
fn one_below_s_below_sts() {
    r::one_below_s_below_sts();
}

#[test]
fn termini_of_peak_versus_star_of_termini() {
    r::termini_of_peak_versus_star_of_termini();
}

#[test]
fn only_forward_path_is_a_concatenation() {
    r::only_forward_path_is_a_concatenation();
}

#[test]
fn star_with_full_coset_forgets_the_middle() {
    r::star_with_full_coset_forgets_the_middle();
}

#[test]
fn demazure_square_can_grow_descents() {
    r::demazure_square_can_grow_descents();
}

#[test]
fn asymmetric_expression_is_reduced() {
    r::asymmetric_expression_is_reduced();
}
