use super::*;
use crate::cohomology::{solve_coboundary, CoboundarySolution};
use crate::rota_baxter::{same_gamma_witness, SameGamma};

fn powers(group: &FiniteGroup, e: i64) -> Vec<usize> {
    (0..group.order()).map(|g| group.pow(g, e)).collect()
}

#[test]
fn alpha_zero_is_trivial() {
    let inst = build_alpha_family(3, 0).unwrap();
    assert_eq!(inst.gamma, GammaFunction::trivial(inst.heisenberg.clone()));
    assert!(inst.kappa.is_identically_trivial());
    assert!(inst.splits);
    let b = rb_formula_alpha(3, 0).unwrap();
    assert_eq!(b.images(), &vec![0; 27][..]);
}

#[test]
fn minus_half_gives_an_abelian_circle_group_and_a_nontrivial_class() {
    // −1/2 ≡ 1 (mod 3).
    let inst = build_alpha_family(3, 1).unwrap();
    assert!(inst.circle.is_abelian());
    assert!(!inst.splits);
    assert!(!inst.kappa.is_identically_trivial());
    assert!(!solve_coboundary(&inst.kappa).unwrap().is_trivial());
    assert_eq!(
        rb_formula_alpha(3, 1).unwrap_err(),
        GalleryError::AlphaIsMinusHalf { p: 3, alpha: 1 }
    );
}

#[test]
fn p5_alpha_one_cocycle_is_the_inverse_commutator_and_trivial() {
    let inst = build_alpha_family(5, 1).unwrap();
    let h = &inst.heisenberg;
    for g in 0..125 {
        for k in 0..125 {
            assert_eq!(inst.kappa.ambient_value(g, k), h.inv(h.commutator(g, k)));
        }
    }
    assert!(inst.splits);
    assert!(solve_coboundary(&inst.kappa).unwrap().is_trivial());
}

#[test]
fn critical_exponent_does_not_depend_on_the_representative() {
    for p in [3usize, 5, 7, 11] {
        for alpha in 0..p {
            for shift in 1..4 {
                let beta = alpha + shift * p;
                let a = critical_exponent(alpha).rem_euclid(p as i64);
                let b = critical_exponent(beta).rem_euclid(p as i64);
                assert_eq!(a, b, "p = {p}, α = {alpha}");
            }
        }
    }
}

#[test]
fn formula_at_minus_one_is_the_inverse_map() {
    for p in [3usize, 5, 7] {
        let b = rb_formula_alpha(p, p - 1).unwrap();
        let h = b.group();
        assert_eq!(b.images(), &powers(h, -1)[..]);
    }
}

#[test]
fn formula_at_p3_alpha2_is_squaring() {
    let b = rb_formula_alpha(3, 2).unwrap();
    assert_eq!(b.images(), &powers(b.group(), 2)[..]);
}

#[test]
fn switch_examples() {
    assert_eq!(normal_form_switch(7, 2, 0, 0, 0).unwrap(), (0, 0, 0));
    for i in 0..5 {
        for j in 0..5 {
            assert_eq!(normal_form_switch(5, 3, i, j, i * j * 3).unwrap().2, 0);
        }
    }
    assert_eq!(normal_form_switch(5, 1, 1, 1, 4).unwrap(), (1, 1, 1));
    assert_eq!(
        normal_form_switch(5, 2, 1, 1, 1).unwrap_err(),
        GalleryError::AlphaIsMinusHalf { p: 5, alpha: 2 }
    );
}

#[test]
fn switch_matches_circle_products() {
    for (p, alpha) in [(3usize, 2usize), (5, 1), (5, 3), (7, 4)] {
        let inst = build_alpha_family(p, alpha).unwrap();
        let hc = HeisenbergCoords { p };
        let c = &inst.circle;
        let k_tilde = hc.index(0, 0, 1 + 2 * alpha as i64);
        for g in 0..inst.heisenberg.order() {
            let (i, j, r) = hc.coords(g);
            let (i2, j2, q) = normal_form_switch(p, alpha, i as i64, j as i64, r as i64).unwrap();
            let rebuilt = c.product(&[
                c.pow(hc.u(), i2 as i64),
                c.pow(hc.v(), j2 as i64),
                c.pow(k_tilde, q as i64),
            ]);
            assert_eq!(rebuilt, g);
        }
    }
}

#[test]
fn circle_powers_agree_with_dot_powers() {
    let inst = build_alpha_family(5, 3).unwrap();
    for g in 0..125 {
        for e in -5..=5 {
            assert_eq!(inst.circle.pow(g, e), inst.heisenberg.pow(g, e));
        }
    }
}

#[test]
fn closed_form_sigma_rebuilds_the_formula_operator() {
    for (p, alpha) in [(3usize, 0usize), (3, 2), (5, 1), (5, 4), (7, 2)] {
        let inst = build_alpha_family(p, alpha).unwrap();
        let sigma = alpha_closed_form_sigma(&inst).unwrap();
        assert!(sigma.certifies(&inst.kappa).holds(), "p = {p}, α = {alpha}");
        let h = &inst.heisenberg;
        let rebuilt: Vec<usize> = (0..h.order())
            .map(|g| h.mul(sigma.ambient_value(g), inst.lift.apply(g)))
            .collect();
        assert_eq!(rb_formula_alpha(p, alpha).unwrap().images(), &rebuilt[..]);
    }
}

#[test]
fn reconstructed_and_formula_operators_share_gamma() {
    let inst = build_alpha_family(5, 3).unwrap();
    let sigma = match solve_coboundary(&inst.kappa).unwrap() {
        CoboundarySolution::Trivial(s) => s,
        CoboundarySolution::Nontrivial(_) => panic!("α = 3 splits for p = 5"),
    };
    let rebuilt =
        crate::cohomology::reconstruct_rb(&inst.gamma, &inst.circle, &inst.lift, &sigma).unwrap();
    let formula = rb_formula_alpha(5, 3).unwrap();
    assert!(matches!(same_gamma_witness(&rebuilt, &formula).unwrap(), SameGamma::Same(_)));
}

#[test]
fn bad_alpha_parameters() {
    assert_eq!(build_alpha_family(4, 1).unwrap_err(), GalleryError::NotOddPrime(4));
    assert_eq!(build_alpha_family(2, 1).unwrap_err(), GalleryError::NotOddPrime(2));
    assert!(matches!(build_alpha_family(3, 3), Err(GalleryError::BadParameters(_))));
}

#[test]
fn p5_example_shape() {
    let inst = build_p5_example(3).unwrap();
    assert_eq!(inst.group.order(), 243);
    assert_eq!(inst.center.order(), 27);
    assert_eq!(inst.center.rank(), 3);
    let hc = HeisenbergCoords { p: 3 };
    let x = inst.element(1, 0, 0);
    let xy = inst.element(1, 1, 0);
    assert_eq!(inst.kappa.ambient_value(xy, x), hc.index(0, 0, -1));
    let c = hc.index(2, 1, 1);
    assert_eq!(
        inst.kappa.ambient_value(inst.element(2, 0, c), inst.element(1, 2, 5)),
        0
    );
    // C(G) ⊆ H and C(H) ⊆ K.
    for g in 0..243 {
        assert_eq!(inst.coords(inst.lift.apply(g)).0, 0);
        assert_eq!(inst.coords(inst.lift.apply(g)).1, 0);
    }
    for h in 0..27 {
        assert!(inst.lift.apply(h) < 3);
    }
}

#[test]
fn p5_transported_cocycle_is_the_heisenberg_cocycle() {
    let inst = build_p5_example(3).unwrap();
    let kp = inst.transported_kappa().unwrap();
    assert_eq!(kp.base().order(), 9);
    assert_eq!(kp.coeff().rank(), 1);
    for a in 0..9 {
        for b in 0..9 {
            let (j, m) = (a % 3, b / 3);
            assert_eq!(kp.ambient_value(a, b), (9 - j * m) % 3);
        }
    }
    assert!(!solve_coboundary(&kp).unwrap().is_trivial());
}

#[test]
fn p5_gamma_does_not_depend_on_the_lift() {
    let inst = build_p5_example(3).unwrap();
    // Shift C by central elements z(g) = k^(g mod 3) · x^(g mod 2).
    let g = &inst.group;
    let recoded = GroupMap::from_fn(g.clone(), g.clone(), |x| {
        let z = inst.element(x % 2, 0, x % 3);
        g.mul(z, inst.lift.apply(x))
    })
    .unwrap();
    assert_eq!(GammaFunction::from_inner_rep(&recoded), inst.gamma);
}

#[test]
fn noninner_c4_d4() {
    let inst = build_noninner_example(NonInnerKind::C4D4).unwrap();
    assert_eq!(inst.brace.dot().order(), 32);
    assert_eq!(inst.inner, InnerImage::NotInner(8));
    // γ(a, b) is not inner for any b.
    let dot = inst.brace.dot();
    let inner_rows: Vec<Vec<u32>> = (0..32).map(|x| dot.conjugation_images(x)).collect();
    for b in 0..8 {
        let row = inst.brace.gamma().action_row(8 + b).to_vec();
        assert!(!inner_rows.contains(&row), "b = {b}");
    }
}

#[test]
fn noninner_control_is_all_inner() {
    let inst = build_noninner_example(NonInnerKind::C4D4Trivial).unwrap();
    assert!(inst.inner.is_all_inner());
    assert_eq!(
        *inst.brace.gamma(),
        GammaFunction::trivial(inst.brace.dot().clone())
    );
}

#[test]
fn vhq_parameters() {
    assert_eq!(
        NonInnerKind::vhq(7, 3).unwrap(),
        NonInnerKind::Vhq { p: 7, q: 3, c: 2 }
    );
    assert!(matches!(NonInnerKind::vhq(7, 5), Err(GalleryError::BadParameters(_))));
    assert!(matches!(NonInnerKind::vhq(2, 1), Err(GalleryError::BadParameters(_))));
    assert!(matches!(
        build_noninner_example(NonInnerKind::Vhq { p: 7, q: 3, c: 3 }),
        Err(GalleryError::BadParameters(_))
    ));
}

#[test]
fn small_vhq_instance() {
    let inst = build_noninner_example(NonInnerKind::vhq(3, 2).unwrap()).unwrap();
    assert_eq!(inst.brace.dot().order(), 36);
    assert!(!inst.inner.is_all_inner());
}

#[test]
fn centerless_case() {
    let inst = build_centerless_example().unwrap();
    assert_eq!(inst.operator.images(), &powers(&inst.group, -1)[..]);
    assert!(inst.kappa.is_identically_trivial());
}
