use hdccrc_core::region::{
    build_polytope, project_fm, quadrant_directions, support_sweep, MiTerms,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_terms(rng: &mut ChaCha8Rng) -> MiTerms {
    let mut v = [0.0; 18];
    for x in v.iter_mut() {
        *x = rng.random_range(0.0..3.0);
    }
    MiTerms::from_array(rng.random_range(0.0..1.0), v).unwrap()
}

#[test]
fn fm_matches_support_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let dirs = quadrant_directions(721);
    for _ in 0..200 {
        let poly = build_polytope(&random_terms(&mut rng));
        let a = project_fm(&poly).unwrap();
        let b = support_sweep(&poly, &dirs).unwrap();
        assert!((a.area() - b.area()).abs() <= 1e-6, "{a:?} {b:?}");
        assert!((a.max_rp() - b.max_rp()).abs() <= 1e-9);
        assert!((a.max_rc() - b.max_rc()).abs() <= 1e-9);
    }
}
