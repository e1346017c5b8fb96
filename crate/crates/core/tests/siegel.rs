mod common;

use bergman_torelli::siegel::{bracket_identified, bracket_via_raw, type11_vanishing_check};
use bergman_torelli::{CMat64, PTensor10, SpElement};
use common::*;

const TRIALS: usize = 100;

#[test]
fn cartan_splitting_recombines() {
    for g in 1..=3 {
        let mut r = rng(100 + g as u64);
        for _ in 0..TRIALS {
            let cs = random_structure(&mut r, g);
            let x = SpElement::from_symmetric(&cs, &complex_symmetric(&mut r, 2 * g)).unwrap();
            let (k, p) = x.cartan_project();
            assert!((&(k.matrix() + p.matrix()) - x.matrix()).frobenius() < 1e-10);
            let scale = x.matrix().frobenius().max(1.0);
            assert!(k.commutes_with_j_residual() < 1e-10 * scale);
            assert!(p.anticommutes_with_j_residual() < 1e-10 * scale);
            assert!(k.sp_defect() < 1e-10 * scale && p.sp_defect() < 1e-10 * scale);
        }
    }
}

#[test]
fn bracket_relations_of_the_splitting() {
    for g in 1..=3 {
        let mut r = rng(200 + g as u64);
        for _ in 0..TRIALS {
            let cs = random_structure(&mut r, g);
            let x = SpElement::from_symmetric(&cs, &complex_symmetric(&mut r, 2 * g)).unwrap();
            let y = SpElement::from_symmetric(&cs, &complex_symmetric(&mut r, 2 * g)).unwrap();
            let (kx, px) = x.cartan_project();
            let (ky, py) = y.cartan_project();
            let scale = (x.matrix().frobenius() * y.matrix().frobenius()).max(1.0);
            // [p, p] in k, [k, p] in p, [k, k] in k
            assert!(px.bracket_raw(&py).unwrap().commutes_with_j_residual() < 1e-10 * scale);
            assert!(kx.bracket_raw(&py).unwrap().anticommutes_with_j_residual() < 1e-10 * scale);
            assert!(kx.bracket_raw(&ky).unwrap().commutes_with_j_residual() < 1e-10 * scale);
        }
    }
}

#[test]
fn p10_elements_embed_with_the_right_type() {
    for g in 1..=3 {
        let mut r = rng(300 + g as u64);
        for _ in 0..TRIALS {
            let cs = random_structure(&mut r, g);
            let s = PTensor10::from_symmetric_form(&cs, &complex_symmetric(&mut r, g)).unwrap();
            let x = s.embed().unwrap();
            let scale = x.matrix().frobenius().max(1.0);
            assert!(x.anticommutes_with_j_residual() < 1e-10 * scale);
            // hat I acts by i
            let hat = cs.hat_i(x.matrix());
            assert!((&hat - &x.matrix().scale(c(0.0, 1.0))).frobenius() < 1e-10 * scale);
            let d = x.transport_to_dual().unwrap();
            assert!(d.qstar_asymmetry < 1e-10 * scale);
            assert!(d.image_in_h01_residual.unwrap() < 1e-10);
            assert!(d.kills_h01_residual.unwrap() < 1e-10 * scale);
        }
    }
}

#[test]
fn same_type_brackets_vanish() {
    for g in 1..=3 {
        let mut r = rng(400 + g as u64);
        for _ in 0..TRIALS {
            let cs = random_structure(&mut r, g);
            let s = PTensor10::from_symmetric_form(&cs, &complex_symmetric(&mut r, g)).unwrap();
            let t = PTensor10::from_symmetric_form(&cs, &complex_symmetric(&mut r, g)).unwrap();
            let scale = (s.matrix().frobenius() * t.matrix().frobenius()).max(1.0);
            assert!(type11_vanishing_check(&s, &t).unwrap() < 1e-10 * scale);
        }
    }
}

#[test]
fn identified_bracket_matches_commutator() {
    for g in 1..=3 {
        let mut r = rng(500 + g as u64);
        let mut worst: f64 = 0.0;
        for _ in 0..TRIALS {
            let cs = random_structure(&mut r, g);
            let s = PTensor10::from_symmetric_form(&cs, &complex_symmetric(&mut r, g)).unwrap();
            let t = PTensor10::from_symmetric_form(&cs, &complex_symmetric(&mut r, g)).unwrap();
            let a = bracket_identified(&s, &t).unwrap();
            let b = bracket_via_raw(&s, &t).unwrap();
            let scale = (s.matrix().frobenius() * t.matrix().frobenius()).max(1.0);
            worst = worst.max((a.matrix() - b.matrix()).frobenius() / scale);
        }
        assert!(worst < 1e-10, "g = {g}: {worst:e}");
    }
}

#[test]
fn identified_bracket_is_sesquilinear() {
    let mut r = rng(600);
    let cs = random_structure(&mut r, 2);
    let s = PTensor10::from_symmetric_form(&cs, &complex_symmetric(&mut r, 2)).unwrap();
    let t = PTensor10::from_symmetric_form(&cs, &complex_symmetric(&mut r, 2)).unwrap();
    let lam = c(0.3, -1.7);
    let lt = PTensor10::new(&cs, t.matrix().scale(lam)).unwrap();
    let base = bracket_identified(&s, &t).unwrap();
    let scaled = bracket_identified(&s, &lt).unwrap();
    assert!((scaled.matrix() - &base.matrix().scale(lam.conj())).frobenius() < 1e-12);
    let ls = PTensor10::new(&cs, s.matrix().scale(lam)).unwrap();
    let scaled = bracket_identified(&ls, &t).unwrap();
    assert!((scaled.matrix() - &base.matrix().scale(lam)).frobenius() < 1e-12);
}

#[test]
fn mixed_structures_rejected() {
    let mut r = rng(700);
    let a = random_structure(&mut r, 2);
    let b = random_structure(&mut r, 2);
    let s = PTensor10::from_symmetric_form(&a, &complex_symmetric(&mut r, 2)).unwrap();
    let t = PTensor10::from_symmetric_form(&b, &complex_symmetric(&mut r, 2)).unwrap();
    assert!(bracket_identified(&s, &t).is_err());
    assert!(bracket_via_raw(&s, &t).is_err());
    let x = SpElement::new(&a, CMat64::zeros(4, 4)).unwrap();
    let y = SpElement::new(&b, CMat64::zeros(4, 4)).unwrap();
    assert!(x.bracket_raw(&y).is_err());
}
