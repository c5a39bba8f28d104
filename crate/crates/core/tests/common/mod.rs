#![allow(dead_code)]

use std::sync::Arc;

use ehrfan::fan::{build_fan, Fan};
use ehrfan::lattice::LatticeVector;

pub fn fan(n: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Arc<Fan> {
    let rays = rays.iter().map(|r| LatticeVector::from_i64s(r)).collect();
    let cones: Vec<Vec<usize>> = cones.iter().map(|c| c.to_vec()).collect();
    build_fan(n, rays, &cones, true).unwrap()
}

pub fn f1() -> Arc<Fan> {
    fan(2, &[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 0]])
}

pub fn quadrant() -> Arc<Fan> {
    fan(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]])
}

pub fn hirzebruch() -> Arc<Fan> {
    fan(2, &[&[1, 0], &[0, 1], &[-1, 1], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]])
}

/// Balanced 14-ray fan in dimension 4 that is not Ehrhart.
pub fn fourteen_ray_fan() -> Arc<Fan> {
    let rays: &[&[i64]] = &[
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[0, -1, 0, 0],
        &[0, 0, -1, 0],
        &[0, 0, 0, -1],
        &[0, 1, 1, 1],
        &[1, 0, -1, 1],
        &[1, 1, 0, -1],
        &[1, -1, 1, 0],
        &[-1, 0, 1, -1],
        &[-1, -1, 0, 1],
        &[-1, 1, -1, 0],
    ];
    let one_based: &[[usize; 2]] = &[
        [1, 9], [1, 10], [1, 11], [2, 8], [2, 10], [2, 14], [3, 8], [3, 11], [3, 12],
        [4, 8], [4, 9], [4, 13], [9, 6], [10, 7], [11, 5], [5, 14], [6, 12], [7, 13],
    ];
    let cones: Vec<Vec<usize>> = one_based.iter().map(|c| vec![c[0] - 1, c[1] - 1]).collect();
    let rays = rays.iter().map(|r| LatticeVector::from_i64s(r)).collect();
    build_fan(4, rays, &cones, true).unwrap()
}

use ehrfan::fan::Cone;
use ehrfan::lattice::Int;
use ehrfan::plfun::PLFunction;
use rand::seq::SliceRandom;
use rand::Rng;

/// Complete unimodular fan in the plane: the quadrant fan after `steps`
/// stellar subdivisions at random maximal cones.
pub fn random_plane_fan<R: Rng>(rng: &mut R, steps: usize) -> Arc<Fan> {
    let mut fan = quadrant();
    for _ in 0..steps {
        let cone = fan.maximal_cones().choose(rng).unwrap().clone();
        fan = fan.stellar_subdivision(&cone).unwrap().fan;
    }
    fan
}

/// The fan with rays `u` and `-u` for a random primitive `u` in `Z^n`.
pub fn random_line_fan<R: Rng>(rng: &mut R, n: usize) -> Arc<Fan> {
    loop {
        let u: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        let v = LatticeVector::from_i64s(&u);
        if v.is_zero() || !v.is_primitive() {
            continue;
        }
        let w: Vec<i64> = u.iter().map(|x| -x).collect();
        return fan(n, &[&u, &w], &[&[0], &[1]]);
    }
}

pub fn random_pl<R: Rng>(rng: &mut R, fan: &Arc<Fan>, bound: i64) -> PLFunction {
    let values = (0..fan.num_rays()).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect();
    PLFunction::new(fan.clone(), values).unwrap()
}

/// A function `g` such that `f - g` has one sign on every maximal cone.
pub fn comparable_partner<R: Rng>(rng: &mut R, f: &PLFunction, bound: i64) -> PLFunction {
    let fan = f.fan();
    let mut d: Vec<i64> = (0..fan.num_rays()).map(|_| rng.gen_range(-bound..=bound)).collect();
    for cone in fan.maximal_cones() {
        let rays: &[usize] = cone.rays();
        let sign = rays.iter().map(|&r| d[r].signum()).find(|&s| s != 0).unwrap_or(0);
        for &r in rays {
            if d[r].signum() == -sign {
                d[r] = 0;
            }
        }
    }
    let values = f.values().iter().zip(&d).map(|(v, x)| v + Int::from(*x)).collect();
    PLFunction::new(fan.clone(), values).unwrap()
}

/// Random convex function by rejection sampling.
pub fn random_convex<R: Rng>(rng: &mut R, fan: &Arc<Fan>, bound: i64) -> PLFunction {
    for _ in 0..10_000 {
        let f = random_pl(rng, fan, bound);
        if f.convexity_type().unwrap().is_convex() {
            return f;
        }
    }
    panic!("no convex function found");
}

pub fn random_maximal_cone<R: Rng>(rng: &mut R, fan: &Fan) -> Cone {
    fan.maximal_cones().choose(rng).unwrap().clone()
}
