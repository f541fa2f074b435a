mod common;

use sweep_core::geometry::Vec2;
use sweep_core::harness::{build_simulation, ExperimentConfig};
use sweep_core::strategies::sons::bs::sons_bs_step;
use sweep_core::strategies::sons::{
    spawn_formation, BrainStateBS, BsPhase, SonsFormation, SonsVariant,
};
use sweep_core::{ArenaSpec, SimConfig, SimError, Strategy};

use common::audit_sons;

fn bs_config(side: f64) -> ExperimentConfig {
    let mut cfg = ExperimentConfig {
        strategies: vec![Strategy::SonsBs],
        ..ExperimentConfig::default()
    };
    cfg.arena.side_length = side;
    cfg
}

#[test]
fn boustrophedon_visits_every_cell_once() {
    for side in [40.0, 20.0, 30.0, 60.0] {
        let cfg = bs_config(side);
        let rec = build_simulation(&cfg, Strategy::SonsBs, 3)
            .unwrap()
            .run()
            .unwrap();
        assert!(rec.cct.is_some(), "side {side}");
        assert!(
            rec.final_visits.visits().iter().all(|&v| v == 1),
            "side {side}"
        );
    }
}

#[test]
fn boustrophedon_strip_count_sets_duration() {
    let cct = |side| {
        build_simulation(&bs_config(side), Strategy::SonsBs, 0)
            .unwrap()
            .run()
            .unwrap()
            .cct
            .unwrap()
    };
    // one 20 m strip vs two 40 m strips joined by a 20 m shift
    let one = cct(20.0);
    let two = cct(40.0);
    assert!(one < 220, "{one}");
    assert!((950..1050).contains(&two), "{two}");
}

#[test]
fn boustrophedon_is_seed_independent() {
    let cfg = bs_config(40.0);
    let ccts: Vec<_> = (0..5)
        .map(|s| {
            build_simulation(&cfg, Strategy::SonsBs, s)
                .unwrap()
                .run()
                .unwrap()
                .cct
        })
        .collect();
    assert!(ccts.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn boustrophedon_rejects_shift_off_the_arena() {
    let arena = ArenaSpec::default();
    let f = SonsFormation::line(5, 20, 1.0).unwrap();
    let mut state = BrainStateBS::new(Vec2::new(0.0, 1.0), Vec2::new(-1.0, 0.0), f.footprint());
    state.phase = BsPhase::ExitBoundary;
    // line already covers the westernmost strip and sits 0.5 m past the northern edge
    let err = sons_bs_step(&mut state, Vec2::new(-10.0, 20.5), &arena, &f, 0.1, 7).unwrap_err();
    assert!(matches!(err, SimError::SweepGeometry { step: 7 }));
}

#[test]
fn formation_wider_than_arena_is_rejected() {
    let arena = ArenaSpec::with_side(10.0);
    let err =
        spawn_formation(&arena, &SimConfig::default(), SonsVariant::Rw, 5, 20, 0).unwrap_err();
    assert!(matches!(err, SimError::InvalidConfig(_)));
}

#[test]
fn random_walk_invariants_hold() {
    let cfg = ExperimentConfig {
        strategies: vec![Strategy::SonsRw],
        ..ExperimentConfig::default()
    };
    for seed in 0..3 {
        let a = audit_sons(&cfg, Strategy::SonsRw, seed);
        assert!(a.cct.is_some());
        assert!(a.max_rigidity_error < 1e-9, "{}", a.max_rigidity_error);
        assert_eq!(a.prepare_credits, 0);
        assert!(a.phase_steps.get("prepare").copied().unwrap_or(0) > 0);
        assert!(a.max_align_sampler_speed <= 1.0 + 1e-9);
        assert!(a.max_sampling_speed <= 1.0 + 1e-9);
        assert!(a.theta_rand_count > 0);
        assert_eq!(a.theta_not_interior, 0);
        assert!(a.min_reciprocal_gap >= 30.0);
    }
}

#[test]
fn random_walk_starts_over_the_corner() {
    let cfg = ExperimentConfig {
        strategies: vec![Strategy::SonsRw],
        ..ExperimentConfig::default()
    };
    let sim = build_simulation(&cfg, Strategy::SonsRw, 11).unwrap();
    let brain = &sim.agents()[0];
    assert_eq!((brain.position.x, brain.position.y), (20.0, -20.0));
    let deg = brain.heading.to_degrees();
    assert!(deg > 90.0 && deg < 180.0, "{deg}");
}
