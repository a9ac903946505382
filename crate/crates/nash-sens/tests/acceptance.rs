//! Acceptance suite: one test per criterion, each ending in a single
//! PASS/FAIL line. Run with
//!
//!   cargo test --test acceptance -- --nocapture
//!
//! Criterion 1's stated tolerance is unattainable at two parameter
//! values for a reason pinned down analytically (midpoint resonance
//! ties); that test prints FAIL for the criterion as stated and asserts
//! the measured values instead of hiding them. Everything else passes
//! at the stated tolerances.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;
use std::time::Instant;

use rand::distributions::{Distribution, Uniform};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nash_sens::config::{ExperimentConfig, Overrides};
use nash_sens::equilibrium::{approx_nash_set, nash_set, verify_sandwich, EpsilonSchedule};
use nash_sens::game::{EpsilonTriple, ParameterPoint};
use nash_sens::games::{motivating_game, oracle_h, oracle_h_eps, random_quadratic_game};
use nash_sens::grid::{
    contains_within, hausdorff, Grid, ProfileSet,
};
use nash_sens::setlimits::{
    kuratowski_liminf, kuratowski_limsup, verify_limit_chain, verify_limit_chain_closed,
    ParameterSequence,
};

const TIE_TOL: f64 = 1e-9;

#[test]
fn criterion_1_equilibrium_oracle_match() {
    let start = Instant::now();
    let game = motivating_game();
    let grid = Grid::build(&game.grid_spec(201)).unwrap();
    let spacing = grid.max_spacing();
    let bound = 2.0 * spacing;

    let mut failures: Vec<(f64, f64)> = Vec::new();
    for &x in &[0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75] {
        let set = nash_set(&game, &[x], &grid, TIE_TOL).unwrap();
        let oracle = oracle_h(x).unwrap().grid_sample(&grid).unwrap();
        let d = hausdorff(&set, &oracle, &grid).unwrap();
        if d > bound {
            failures.push((x, d));
        }
    }

    // The criterion asks for d_H <= 2*spacing at all seven x. It cannot
    // hold at x = 0.75 and x = 1.25: the payoff midpoint ties put every
    // diagonal grid profile (t, t) with t*|1-x| <= spacing/2 into the
    // grid Nash set, so at |1-x| = 1/4 the tie reach is exactly
    // 2*spacing and the farthest artifact sits sqrt(2)*2*spacing
    // ~ 0.0141 from the closed-form set. That exceeds the bound by the
    // fixed factor sqrt(2) at any grid resolution; the assertions pin
    // the analyzed geometry so a regression cannot hide behind the
    // known deviation.
    assert_eq!(
        failures.iter().map(|f| f.0).collect::<Vec<_>>(),
        vec![0.75, 1.25],
        "only the two resonance x values may exceed the bound"
    );
    for &(x, d) in &failures {
        assert!(
            (d - SQRT_2 * 2.0 * spacing).abs() < 1e-12,
            "x = {x}: measured {d}, expected sqrt(2)*2*spacing"
        );
    }
    println!(
        "criterion 1: FAIL as stated (d_H = {:.6} > {:.6} at x = 0.75 and 1.25, \
         resonance ties; analyzed and pinned, see ledger); \
         PASS at the other five x values [{:.2?}s]",
        SQRT_2 * 2.0 * spacing,
        bound,
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_2_approximate_oracle_boundary_band() {
    let start = Instant::now();
    let game = motivating_game();
    let grid = Grid::build(&game.grid_spec(201)).unwrap();
    let spacing = grid.max_spacing();
    let mut coords = vec![0.0; 2];
    let mut checked = 0usize;

    for &x in &[0.5, 1.0, 1.2, 1.3, 1.5] {
        for &e1 in &[0.04, 0.01] {
            let eps = EpsilonTriple::payoff_only(e1);
            let set = approx_nash_set(&game, &[x], &eps, &grid, false).unwrap();
            let regions = oracle_h_eps(x, e1).unwrap();
            let oracle = regions.grid_sample(&grid).unwrap();
            for p in set
                .iter()
                .filter(|&p| !oracle.contains(p))
                .chain(oracle.iter().filter(|&p| !set.contains(p)))
            {
                grid.profile_coords_into(p, &mut coords);
                checked += 1;
                assert!(
                    regions.near_boundary(coords[0], coords[1], spacing),
                    "x = {x}, eps1 = {e1}: symmetric-difference point \
                     ({}, {}) is not within one spacing of a region boundary",
                    coords[0],
                    coords[1]
                );
            }
        }
    }
    println!(
        "criterion 2: PASS (10 (x, eps1) pairs; {checked} symmetric-difference \
         points, all within one grid spacing of a region boundary) [{:.2?}s]",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_3_sandwich_on_seeded_games() {
    let start = Instant::now();
    // Epsilon samples cycle through payoff-only, truncated, and
    // feasibility-slack triples; tie_tol < eps1 throughout.
    let eps1s = [0.21, 0.11, 0.06, 0.035, 0.02];
    let eps2s = [None, Some(0.5), None, Some(0.35), Some(0.8)];
    let eps3s = [None, Some(0.05), Some(0.2), None, Some(0.1)];
    let xs = [0.1, 0.7, 1.0, 1.4, 1.9];

    let mut reports = 0usize;
    for seed in 0u64..20 {
        let players = 2 + (seed % 2) as usize;
        let dims = 1 + ((seed / 2) % 2) as usize;
        let points = match (players, dims) {
            (2, 1) => 41,
            (3, 1) => 17,
            (2, 2) => 9,
            _ => 7,
        };
        let game = random_quadratic_game(seed, players, dims, 1.0).unwrap();
        let grid = Grid::build(&game.grid_spec(points)).unwrap();
        for k in 0..5 {
            let eps = EpsilonTriple::new(eps1s[k], eps2s[k], eps3s[k]);
            let report = verify_sandwich(&game, &[xs[k]], &eps, &grid, TIE_TOL).unwrap();
            assert!(
                report.all_hold(),
                "seed {seed}, sample {k}: sandwich violated: {:?}",
                report.witnesses
            );
            reports += 1;
        }
    }
    assert_eq!(reports, 100);
    println!(
        "criterion 3: PASS (20 seeded quadratic games x 5 epsilon samples, \
         all 300 inclusions hold, zero violations) [{:.2?}s]",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_4_upper_continuity_gap() {
    let start = Instant::now();
    let game = motivating_game();
    // 2501 points per axis: the tie reach at n = 50 is 50*spacing/2
    // = 0.01, small enough that the measured distances land inside the
    // +-0.02 bands around sqrt(2) and sqrt(2)/2.
    let grid = Grid::build(&game.grid_spec(2501)).unwrap();
    let delta = grid.max_spacing();
    let limit_set = nash_set(&game, &[1.0], &grid, TIE_TOL).unwrap();

    let mut measured = Vec::new();
    for (side, target) in [(false, SQRT_2), (true, SQRT_2 / 2.0)] {
        let seq = if side {
            ParameterSequence::harmonic_above(ParameterPoint::scalar(1.0), 50, 1.0).unwrap()
        } else {
            ParameterSequence::harmonic_below(ParameterPoint::scalar(1.0), 50, 1.0).unwrap()
        };
        let sets: Vec<ProfileSet> = seq
            .points()
            .iter()
            .map(|p| nash_set(&game, &p.coords, &grid, TIE_TOL).unwrap())
            .collect();
        let tail = sets.len() / 2;
        let limsup = kuratowski_limsup(&sets, tail, delta, &grid).unwrap();
        let liminf = kuratowski_liminf(&sets, tail, delta, &grid).unwrap();
        assert!(liminf.is_subset_of(&limsup).unwrap());
        assert!(
            contains_within(&limsup, &limit_set, delta, &grid).unwrap(),
            "limsup must sit within delta of h(1)"
        );
        let d = hausdorff(&limsup, &limit_set, &grid).unwrap();
        assert!(
            (d - target).abs() <= 0.02,
            "expected d_H = {target} +- 0.02, measured {d}"
        );
        measured.push(d);
    }
    println!(
        "criterion 4: PASS (below: d_H = {:.5} in sqrt(2) +- 0.02; above: \
         d_H = {:.5} in sqrt(2)/2 +- 0.02; directed containment at \
         delta = spacing both sides) [{:.2?}s]",
        measured[0],
        measured[1],
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_5_double_limit_convergence() {
    let start = Instant::now();
    let game = motivating_game();
    let grid = Grid::build(&game.grid_spec(201)).unwrap();
    let spacing = grid.max_spacing();
    let schedule = EpsilonSchedule::payoff_only(&[0.16, 0.08, 0.04, 0.02, 0.01]).unwrap();
    let seq = ParameterSequence::harmonic_above(ParameterPoint::scalar(1.0), 50, 1.0).unwrap();

    for closed in [false, true] {
        let report = if closed {
            verify_limit_chain_closed(&game, &seq, &schedule, &grid, spacing, None, TIE_TOL)
                .unwrap()
        } else {
            verify_limit_chain(&game, &seq, &schedule, &grid, spacing, None, TIE_TOL).unwrap()
        };
        assert!(report.distances_monotone, "closed = {closed}");
        for row in &report.rows {
            let envelope = 3.0 * row.eps.eps1.sqrt() + 2.0 * spacing;
            assert!(
                row.d_liminf <= envelope && row.d_limsup <= envelope,
                "closed = {closed}, eps1 = {}: d_liminf = {}, d_limsup = {}, \
                 envelope = {envelope}",
                row.eps.eps1,
                row.d_liminf,
                row.d_limsup
            );
        }
        assert!(report.chain_ok(), "closed = {closed}");
    }
    println!(
        "criterion 5: PASS (open and closed variants: both surrogate distance \
         trajectories monotone nonincreasing and within 3*sqrt(eps1) + \
         2*spacing at every level) [{:.2?}s]",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_6_kuratowski_property_suite() {
    let start = Instant::now();
    let mut violations = 0usize;
    for case in 0u64..1000 {
        let mut rng = ChaCha8Rng::seed_from_u64(case);
        let points = rng.gen_range(3..=8);
        let game = motivating_game();
        let grid = Grid::build(&game.grid_spec(points)).unwrap();
        let spacing = grid.max_spacing();

        let num_sets = rng.gen_range(1..=6);
        let density = Uniform::new(0.05, 0.5).sample(&mut rng);
        let sets: Vec<ProfileSet> = (0..num_sets)
            .map(|_| {
                let indices: Vec<usize> =
                    (0..grid.len()).filter(|_| rng.gen_bool(density)).collect();
                ProfileSet::from_indices(indices, &grid)
            })
            .collect();
        let tail = rng.gen_range(0..num_sets);
        let delta = spacing * [0.0, 0.5, 1.0, SQRT_2, 2.0, 3.7][rng.gen_range(0..6)];
        let delta2 = delta + spacing * [0.0, 0.5, 1.3][rng.gen_range(0..3)];

        let liminf = kuratowski_liminf(&sets, tail, delta, &grid).unwrap();
        let limsup = kuratowski_limsup(&sets, tail, delta, &grid).unwrap();
        if !liminf.is_subset_of(&limsup).unwrap() {
            violations += 1;
        }
        let liminf2 = kuratowski_liminf(&sets, tail, delta2, &grid).unwrap();
        let limsup2 = kuratowski_limsup(&sets, tail, delta2, &grid).unwrap();
        if !liminf.is_subset_of(&liminf2).unwrap() || !limsup.is_subset_of(&limsup2).unwrap() {
            violations += 1;
        }
        // Constant sequences reproduce the set exactly at delta = 0.
        let constant = vec![sets[0].clone(); num_sets];
        let c_inf = kuratowski_liminf(&constant, tail, 0.0, &grid).unwrap();
        let c_sup = kuratowski_limsup(&constant, tail, 0.0, &grid).unwrap();
        if c_inf != sets[0] || c_sup != sets[0] {
            violations += 1;
        }
        // Later tails: limsup can only shrink, liminf can only grow.
        if tail + 1 < num_sets {
            let sup_later = kuratowski_limsup(&sets, tail + 1, delta, &grid).unwrap();
            let inf_later = kuratowski_liminf(&sets, tail + 1, delta, &grid).unwrap();
            if !sup_later.is_subset_of(&limsup).unwrap()
                || !liminf.is_subset_of(&inf_later).unwrap()
            {
                violations += 1;
            }
        }
    }
    assert_eq!(violations, 0);
    println!(
        "criterion 6: PASS (1000 randomized set-sequence cases: liminf in \
         limsup, delta monotonicity, constant-sequence identity at delta = 0, \
         tail monotonicity; zero violations) [{:.2?}s]",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_7_deterministic_artifacts() {
    let start = Instant::now();
    let configs = [
        r#"{"game":"motivating","mode":"verify","grid":101,"x":1.2,
            "eps1":0.04,"eps2":0.5,"eps3":0.1}"#,
        r#"{"game":"motivating","mode":"limits","grid":101,
            "schedule":[0.08,0.04],
            "sequence":{"kind":"harmonic","side":"above","limit":1.0,"count":12}}"#,
    ];
    for text in configs {
        let mut snapshots: Vec<BTreeMap<String, Vec<u8>>> = Vec::new();
        for threads in [1usize, 4, 1] {
            let dir = tempfile::tempdir().unwrap();
            let ov = Overrides {
                threads: Some(threads),
                out: Some(dir.path().to_str().unwrap().into()),
                ..Overrides::default()
            };
            let cfg = ExperimentConfig::resolve(Some(text), &ov).unwrap();
            let outcome = nash_sens::driver::run(&cfg).unwrap();
            assert!(outcome.all_verdicts_true);
            let mut files = BTreeMap::new();
            for entry in std::fs::read_dir(dir.path()).unwrap() {
                let entry = entry.unwrap();
                files.insert(
                    entry.file_name().into_string().unwrap(),
                    std::fs::read(entry.path()).unwrap(),
                );
            }
            // The manifest alone carries a wall-clock stamp (and echoes
            // the thread count and output dir, which differ between the
            // runs being compared); every other artifact must be
            // byte-identical.
            let manifest = files.remove("manifest.json").unwrap();
            let mut manifest: serde_json::Value = serde_json::from_slice(&manifest).unwrap();
            let top = manifest.as_object_mut().unwrap();
            top.remove("generated_unix_s");
            let echo = top["config"].as_object_mut().unwrap();
            echo.remove("threads");
            echo.remove("out");
            files.insert("manifest.normalized".into(), serde_json::to_vec(&manifest).unwrap());
            snapshots.push(files);
        }
        assert_eq!(snapshots[0], snapshots[1], "1 vs 4 worker threads");
        assert_eq!(snapshots[0], snapshots[2], "rerun, same config");
    }
    println!(
        "criterion 7: PASS (verify and limits runs at 1 and 4 worker threads \
         plus a rerun: byte-identical artifacts; manifest identical up to its \
         wall-clock stamp) [{:.2?}s]",
        start.elapsed().as_secs_f64()
    );
}
