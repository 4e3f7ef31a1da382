//! Acceptance criteria. Run with `cargo test -p infcube --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use infcube::finite::{
    count_automorphisms_extension, embed_cube_vertex, enumerate_automorphisms_bruteforce,
    enumerate_automorphisms_extension, lift_cube_automorphism,
};
use infcube::symplectic::is_symplectic;
use infcube::{
    example1_automorphism, is_regular_verdict, reconstruct_component, reconstruct_local,
    AutomorphismOracle, Sign, SymplecticPerm, Verdict, Vertex, Window,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_vertex(rng: &mut ChaCha8Rng) -> Vertex {
    let period = rng.gen_range(1..=5);
    let pattern: Vec<Sign> = (0..period)
        .map(|_| if rng.gen() { Sign::Plus } else { Sign::Minus })
        .collect();
    let flips: Vec<u64> = (0..rng.gen_range(0..5))
        .map(|_| rng.gen_range(1..=20))
        .collect();
    Vertex::periodic(&pattern).flip_all(flips).unwrap()
}

/// A vertex outside the component of `v`: negate its whole pattern.
fn other_component(v: &Vertex) -> Vertex {
    let pattern: Vec<Sign> = v.pattern().iter().map(|s| s.flipped()).collect();
    let w = Vertex::periodic(&pattern);
    assert!(!w.same_component(v));
    w
}

fn random_window_containing(rng: &mut ChaCha8Rng, support: u64) -> Window {
    let extra: Vec<u64> = (0..rng.gen_range(0..4))
        .map(|_| rng.gen_range(1..=30))
        .collect();
    Window::new((1..=support).chain(extra)).unwrap()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn ac1_finite_count_law() {
    let start = Instant::now();
    for n in 1..=3 {
        let brute = enumerate_automorphisms_bruteforce(n).unwrap();
        assert_eq!(brute.len(), (1 << n) * factorial(n), "brute force n={n}");
        let ext = enumerate_automorphisms_extension(n).unwrap();
        assert_eq!(brute, ext, "enumerators disagree at n={n}");
    }
    assert_eq!(enumerate_automorphisms_bruteforce(3).unwrap().len(), 48);
    assert_eq!(enumerate_automorphisms_extension(4).unwrap().len(), 384);
    assert_eq!(enumerate_automorphisms_extension(5).unwrap().len(), 3840);
    assert_eq!(count_automorphisms_extension(5).unwrap(), 3840);
    assert!(
        start.elapsed() < Duration::from_secs(60),
        "took {:?}",
        start.elapsed()
    );
}

fn ac2_theorem1_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC2);
    let mut disagreements = 0;
    for case in 0..1000u64 {
        let bound = rng.gen_range(0..=12);
        let s = SymplecticPerm::random_with(bound, &mut rng);
        let x = random_vertex(&mut rng);
        let window = random_window_containing(&mut rng, bound);
        let f = AutomorphismOracle::Regular(s.clone());

        let local = reconstruct_local(&f, &x, &window).unwrap();
        assert_eq!(local.queries, window.len() + 1);

        let checks = 3;
        let r = reconstruct_component(&f, &x, &window, checks, case).unwrap();
        // an empty window has no neighbors to check against
        let rounds = if window.is_empty() { 1 } else { checks + 1 };
        assert_eq!(r.queries, rounds * (window.len() + 1));
        assert_eq!(r.checked_at.len(), rounds - 1);
        if !r.agrees_with(&s) || r.finitize().as_ref() != Some(&s) {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0);
}

fn ac3_lemma2_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC3);
    for _ in 0..500 {
        let bound = rng.gen_range(0..=10);
        let s = SymplecticPerm::random_with(bound, &mut rng);
        let f = AutomorphismOracle::Regular(s);
        let x = random_vertex(&mut rng);
        let y = x.flip(rng.gen_range(1..=25)).unwrap();
        assert!(x.adjacent(&y));
        let window = random_window_containing(&mut rng, bound);
        let at_x = reconstruct_local(&f, &x, &window).unwrap();
        let at_y = reconstruct_local(&f, &y, &window).unwrap();
        assert_eq!(at_x.action, at_y.action);
    }
}

fn ac4_example1_certificate() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC4);
    let mut produced = 0;
    while produced < 100 {
        let bound = rng.gen_range(1..=8);
        let s = SymplecticPerm::random_with(bound, &mut rng);
        if s.is_identity() {
            continue;
        }
        produced += 1;
        let a = random_vertex(&mut rng);
        let reps = [a.clone(), other_component(&a)];
        let window = Window::range(bound);

        let f = example1_automorphism(&a, &s).unwrap();
        match is_regular_verdict(&f, &reps, &window).unwrap() {
            Verdict::NonRegular {
                index,
                reps: (0, 1),
                images,
            } => {
                assert!(window.contains(index));
                assert_eq!(images, (s.image_of(index), index as i64));
                assert_ne!(images.0, images.1);
            }
            other => panic!("Example-1 oracle for {s} not certified: {other:?}"),
        }

        let g = AutomorphismOracle::Regular(s);
        assert_eq!(
            is_regular_verdict(&g, &reps, &window).unwrap(),
            Verdict::ConsistentWithinWindow
        );
    }
}

/// Whether the image of every maximal singular subset of `{±1..±k}` is
/// singular (no element together with its negative).
fn preserves_singular_sets(f: &BTreeMap<i64, i64>, k: u64) -> bool {
    (0..1u32 << k).all(|mask| {
        let image: BTreeSet<i64> = (1..=k as i64)
            .map(|i| if mask >> (i - 1) & 1 == 1 { -i } else { i })
            .map(|x| f[&x])
            .collect();
        image.iter().all(|x| !image.contains(&-x))
    })
}

fn as_raw_map(s: &SymplecticPerm, k: u64) -> BTreeMap<i64, i64> {
    (1..=k as i64)
        .flat_map(|i| [(i, s.apply(i).unwrap()), (-i, s.apply(-i).unwrap())])
        .collect()
}

fn ac5_symplectic_characterization() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC5);
    let (mut symplectic, mut non_symplectic) = (0, 0);
    for case in 0..600 {
        let k = rng.gen_range(1..=8u64);
        let mut f = as_raw_map(&SymplecticPerm::random_with(k, &mut rng), k);
        match case % 3 {
            // deliberately broken: swap the images of a and b with b ≠ ±a
            1 if k >= 2 => {
                let a = rng.gen_range(1..=k as i64);
                let b = loop {
                    let b = rng.gen_range(1..=k as i64) * if rng.gen() { 1 } else { -1 };
                    if b.abs() != a {
                        break b;
                    }
                };
                let (fa, fb) = (f[&a], f[&b]);
                f.insert(a, fb);
                f.insert(b, fa);
            }
            // arbitrary bijection of {±1..±k}
            2 => {
                let domain: Vec<i64> = f.keys().copied().collect();
                let mut images = domain.clone();
                images.shuffle(&mut rng);
                f = domain.into_iter().zip(images).collect();
            }
            _ => {}
        }
        let claimed = is_symplectic(&f);
        assert_eq!(claimed, preserves_singular_sets(&f, k), "map {f:?}");
        if claimed {
            symplectic += 1;
        } else {
            non_symplectic += 1;
        }
    }
    assert!(symplectic + non_symplectic >= 500);
    assert!(
        non_symplectic >= 50,
        "only {non_symplectic} non-symplectic maps"
    );
    assert!(symplectic >= 50, "only {symplectic} symplectic maps");
}

fn order_by_iteration(s: &SymplecticPerm) -> u64 {
    let mut acc = s.clone();
    let mut k = 1;
    while !acc.is_identity() {
        acc = acc.compose(s);
        k += 1;
    }
    k
}

fn ac6_group_theory() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC6);
    let id = SymplecticPerm::identity();
    for _ in 0..1000 {
        let draw = |rng: &mut ChaCha8Rng| {
            let bound = rng.gen_range(0..=8);
            SymplecticPerm::random_with(bound, rng)
        };
        let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        assert_eq!(a.compose(&id), a);
        assert_eq!(id.compose(&a), a);
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(a.inverse().compose(&a).is_identity());

        let (wa, wb) = (a.to_wreath(), b.to_wreath());
        assert_eq!(SymplecticPerm::from_wreath(&wa), a);
        assert_eq!(SymplecticPerm::from_wreath(&wa).to_wreath(), wa);
        assert_eq!(SymplecticPerm::from_wreath(&wa.compose(&wb)), a.compose(&b));

        assert_eq!(a.order(), order_by_iteration(&a));
    }
    assert!(
        start.elapsed() < Duration::from_secs(10),
        "took {:?}",
        start.elapsed()
    );
}

fn ac7_cross_validation() {
    let a0 = Vertex::basepoint();
    let autos = enumerate_automorphisms_bruteforce(3).unwrap();
    assert_eq!(autos.len(), 48);
    let window = Window::range(3);
    let mut exact = 0;
    for (k, a) in autos.iter().enumerate() {
        let w = a.to_wreath().unwrap();
        let f = lift_cube_automorphism(a, &a0).unwrap();
        let x = embed_cube_vertex(k as u32 % 8, 3, &a0);
        let r = reconstruct_local(&f, &x, &window).unwrap();
        if r.finitize() == Some(SymplecticPerm::from_wreath(&w)) {
            exact += 1;
        }
    }
    assert_eq!(exact, 48);
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn()); 7] = [
        (
            "AC1 finite count law |Aut(H_n)| = 2^n n!",
            ac1_finite_count_law,
        ),
        (
            "AC2 reconstruction round-trip on regular oracles",
            ac2_theorem1_round_trip,
        ),
        (
            "AC3 adjacent local reconstructions agree",
            ac3_lemma2_agreement,
        ),
        (
            "AC4 Example-1 non-regularity certificate",
            ac4_example1_certificate,
        ),
        (
            "AC5 symplectic characterization",
            ac5_symplectic_characterization,
        ),
        ("AC6 group-theory suite", ac6_group_theory),
        ("AC7 H_3 cross-validation 48/48", ac7_cross_validation),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        println!("[{status}] {name} ({:.2?})", start.elapsed());
        if outcome.is_err() {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
