#![allow(clippy::excessive_precision)]

mod common;

use bergman_torelli::torus::theorem_b_check;
use bergman_torelli::{
    BergmanContext, CurvePoint, EtaEvaluator, LatticeContext64, TangentVector64, TheoremBSample, TorusTangent, C64,
};
use common::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn sigma(k: u32, n: u64) -> f64 {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| (d as f64).powi(k as i32))
        .sum()
}

/// `E_k(tau)` from its q-expansion.
fn eisenstein(k: u32, tau: C64) -> C64 {
    let q = (c(0.0, 2.0 * PI) * tau).exp();
    let coef = match k {
        2 => -24.0,
        4 => 240.0,
        6 => -504.0,
        _ => unreachable!(),
    };
    let mut acc = c(1.0, 0.0);
    let mut qn = c(1.0, 0.0);
    for n in 1..200u64 {
        qn *= q;
        if qn.norm() < 1e-30 {
            break;
        }
        acc += qn * coef * sigma(k - 1, n);
    }
    acc
}

fn lattices() -> Vec<(C64, C64)> {
    vec![
        (c(1.0, 0.0), c(0.0, 1.0)),
        (c(1.0, 0.0), c(0.0, 2.0)),
        (c(1.0, 0.0), c(0.3, 1.1)),
        (c(0.8, 0.3), c(-0.2, 1.4)),
    ]
}

fn cell_point(r: &mut ChaCha8Rng, lat: &LatticeContext64) -> C64 {
    lat.omega1() * r.gen_range(-0.5..0.5) + lat.omega2() * r.gen_range(-0.5..0.5)
}

#[test]
fn invariants_match_eisenstein_series() {
    for (o1, o2) in lattices() {
        let lat = LatticeContext64::auto(o1, o2).unwrap();
        let tau = o2 / o1;
        let (g2, g3) = lat.weierstrass().invariants();
        let g2_ref = eisenstein(4, tau) * (4.0 * PI.powi(4) / 3.0) / o1.powu(4);
        let g3_ref = eisenstein(6, tau) * (8.0 * PI.powi(6) / 27.0) / o1.powu(6);
        assert!((g2 - g2_ref).norm() < 1e-9 * g2_ref.norm().max(1.0), "{g2} {g2_ref}");
        assert!((g3 - g3_ref).norm() < 1e-9 * g3_ref.norm().max(1.0), "{g3} {g3_ref}");
        let eta1_ref = eisenstein(2, tau) * (PI * PI / 3.0) / o1;
        assert!((lat.eta1() - eta1_ref).norm() < 1e-10);
    }
}

#[test]
fn lemniscatic_g2() {
    // Gamma(1/4)^8 / (16 pi^2)
    let lat = LatticeContext64::auto(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
    let (g2, _) = lat.weierstrass().invariants();
    assert!((g2 - c(189.0727201292338522930613965, 0.0)).norm() < 1e-8);
}

#[test]
fn quasi_periods_and_potential_constants() {
    for (o1, o2) in lattices() {
        let lat = LatticeContext64::auto(o1, o2).unwrap();
        assert!(lat.legendre_residual() < 1e-10);
        assert!(lat.single_valuedness_residual() < 1e-12);
        assert!((lat.c2() - c(PI / lat.area(), 0.0)).norm() < 1e-10);
        let (c2, claim) = lat.dbar_potential_check().unwrap();
        assert!((c2 - claim).norm() < 1e-10);
    }
    let lat = LatticeContext64::auto(c(1.0, 0.0), c(1.0, 1.0)).unwrap();
    assert!((lat.area() - 1.0).abs() < 1e-15);
    let (c2, claim) = lat.dbar_potential_check().unwrap();
    assert!((c2 - c(PI, 0.0)).norm() < 1e-10 && (claim - c(PI, 0.0)).norm() < 1e-10);
}

#[test]
fn c2_scales_inversely_with_area() {
    let base = LatticeContext64::auto(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
    for r in [0.5, 2.0, 3.7] {
        let lat = LatticeContext64::auto(c(r, 0.0), c(0.3 * r, 1.1 * r)).unwrap();
        assert!((lat.c2() - base.c2() / (r * r)).norm() < 1e-10);
    }
}

#[test]
fn potential_is_single_valued() {
    let mut r = rng(80);
    for (o1, o2) in lattices() {
        let lat = LatticeContext64::auto(o1, o2).unwrap();
        for _ in 0..100 {
            let z = cell_point(&mut r, &lat);
            if lat.weierstrass().lattice_distance(z) < 0.05 {
                continue;
            }
            assert!(lat.periodicity_residual(z).unwrap() < 1e-9);
        }
    }
}

#[test]
fn potential_is_harmonic() {
    let mut r = rng(81);
    let h = 1e-3;
    for (o1, o2) in lattices() {
        let lat = LatticeContext64::auto(o1, o2).unwrap();
        let w = lat.weierstrass();
        for _ in 0..20 {
            let z = cell_point(&mut r, &lat);
            if w.lattice_distance(z) < 0.1 {
                continue;
            }
            let (raw, extrapolated) = lat.harmonicity_residual(z, h).unwrap();
            assert!(extrapolated < 1e-4, "{extrapolated}");
            // the raw value is the stencil's own truncation term h^2 wp'''/6
            let e = 1e-3;
            let wp3 = (w.wp_prime(z + e) - w.wp_prime(z) * 2.0 + w.wp_prime(z - e)) / (e * e);
            let lap = lat.discrete_laplacian(z, h).unwrap();
            assert!((lap - wp3 * (h * h / 6.0)).norm() < 1e-3 * raw.max(1e-3), "{lap} {raw}");
        }
    }
}

#[test]
fn potential_has_simple_pole_with_residue_minus_one() {
    let lat = LatticeContext64::auto(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
    let mut bound: f64 = 0.0;
    for k in 1..=5 {
        let z = C64::from_polar(10f64.powi(-k), 0.7 * k as f64);
        let g = lat.elementary_potential(z).unwrap() + z.inv();
        bound = bound.max(g.norm());
    }
    assert!(bound < 1.0, "{bound}");
}

#[test]
fn eta_hat_symmetry_and_double_pole() {
    let lat = LatticeContext64::auto(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
    let ev = EtaEvaluator::new(&lat);
    let mut r = rng(82);
    for _ in 0..20 {
        let (p, q) = (cell_point(&mut r, &lat), cell_point(&mut r, &lat));
        if lat.weierstrass().lattice_distance(p - q) < 0.05 {
            continue;
        }
        let (lu, lv) = (complex(&mut r, 1.0), complex(&mut r, 1.0));
        let a = ev.eta_hat(p, q, lu, lv).unwrap();
        let b = ev.eta_hat(q, p, lv, lu).unwrap();
        assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
        let s = c(0.4, -0.9);
        assert!((ev.eta_hat(p, q, lu * s, lv).unwrap() - a * s).norm() < 1e-10 * a.norm().max(1.0));
    }
    let p = c(0.2, 0.1);
    for d in [1e-4, 3e-4] {
        // the separation actually seen after rounding p + delta
        let delta = (p + C64::from_polar(d, 0.4)) - p;
        let e = ev.eta_hat(p + delta, p, c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        let fit = e - delta.powu(2).inv() - lat.c1();
        assert!(fit.norm() < 1e-6, "{fit}");
    }
}

#[test]
fn alpha_is_invariant_under_lattice_translation() {
    let lat = LatticeContext64::auto(c(0.8, 0.3), c(-0.2, 1.4)).unwrap();
    let ev = EtaEvaluator::new(&lat);
    let (p, q, lu, lv) = (c(0.1, 0.3), c(-0.4, 0.2), c(1.0, 0.5), c(-0.3, 0.7));
    let a = ev.alpha(p, q, lu, lv).unwrap();
    for w in [lat.omega1(), lat.omega2(), -lat.omega1() + lat.omega2()] {
        assert!((ev.alpha(p + w, q, lu, lv).unwrap() - a).norm() < 1e-9);
        assert!((ev.alpha(p, q + w, lu, lv).unwrap() - a).norm() < 1e-9);
    }
    // both potentials are singular at p = q: alpha ~ (lam_u - 2 lam_v) / (p - q)
    let d = c(1e-5, 0.0);
    let near = ev.alpha(q + d, q, lu, lv).unwrap();
    assert!((near * d - (lu - lv * 2.0)).norm() < 1e-4);
}

#[test]
fn theorem_b_on_three_lattices() {
    for (seed, (o1, o2)) in lattices().into_iter().take(3).enumerate() {
        let lat = LatticeContext64::auto(o1, o2).unwrap();
        let ev = EtaEvaluator::new(&lat);
        let mut r = rng(90 + seed as u64);
        let mut samples = Vec::new();
        while samples.len() < 50 {
            let (zp, zq) = (cell_point(&mut r, &lat), cell_point(&mut r, &lat));
            if lat.weierstrass().lattice_distance(zp - zq) < 0.1 {
                continue;
            }
            samples.push(TheoremBSample {
                zp,
                zq,
                lam_u: complex(&mut r, 1.0),
                lam_v: complex(&mut r, 1.0),
            });
        }
        let rep = theorem_b_check(&ev, &samples, 1e-4).unwrap();
        assert!(rep.passes(1e-8, 1e-10, 1e-5), "{rep:?}");
    }
}

#[test]
fn cubic_curve_is_the_square_torus() {
    let curve = cubic();
    let pd = periods(&curve);
    let a = pd.a_periods()[(0, 0)];
    let b = pd.b_periods()[(0, 0)];
    // dx / (2y) has periods (A/2, B/2) and uniformizes y^2 = x^3 - x by x = wp(t), y = wp'(t)/2.
    let lat = LatticeContext64::auto(a / 2.0, b / 2.0).unwrap();
    let (g2, g3) = lat.weierstrass().invariants();
    assert!((g2 - c(4.0, 0.0)).norm() < 1e-9 && g3.norm() < 1e-9);

    let unit = LatticeContext64::auto(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
    let curve_ctx = BergmanContext::new(&pd).unwrap();
    let unit_ctx = BergmanContext::new(&unit).unwrap();
    let mut r = rng(95);
    let mut tangents = Vec::new();
    while tangents.len() < 20 {
        let t = cell_point(&mut r, &lat);
        if lat.weierstrass().lattice_distance(t) < 0.1 || lat.weierstrass().lattice_distance(2.0 * t) < 0.1 {
            continue;
        }
        let x = lat.weierstrass().wp(t);
        let y = lat.weierstrass().wp_prime(t) / 2.0;
        let p = CurvePoint::new(&curve, x, 1).unwrap();
        let p = if (p.y() - y).norm() < (p.y() + y).norm() {
            p
        } else {
            p.flipped()
        };
        assert!((p.y() - y).norm() < 1e-8 * y.norm().max(1.0));
        let lam_t = complex(&mut r, 1.0);
        // d/dt = 2y d/dx
        let u = TangentVector64::new(p, lam_t * y * 2.0);
        // on Z + Zi with w = t / (A/2): d/dt = (2/A) d/dw
        let w = TorusTangent::new(t * 2.0 / a, lam_t * 2.0 / a);
        tangents.push((u, w));
    }
    for (u, w) in &tangents {
        for (v, wv) in &tangents {
            let bc = curve_ctx.bergman_eval(u, v);
            let bl = unit_ctx.bergman_eval(w, wv);
            assert!((bc - bl).norm() < 1e-8, "{bc} {bl}");
        }
    }
}
