use misodof::channel::{ChannelRealization, CsitConfig};
use misodof::decoding::{decode_report, oracle_decodable, oracle_decodable_all};
use misodof::dof_lab::{bound_check, BoundVerdict};
use misodof::numerics::{Exact, Scalar};
use misodof::scheme_core::{
    counting_dof, run_scheme, DofTuple, LinearScheme, SchemeDescriptor, SymbolLedger, Transcript,
    Transmitter,
};
use misodof::schemes::{self, registry, BuiltinScheme};
use misodof::Error;
use num_rational::Rational64;

fn run<S: LinearScheme>(s: &S, seed: u64) -> Transcript<Exact> {
    let d = s.descriptor();
    let real = ChannelRealization::draw(seed, d.antennas, d.receivers, d.slots).unwrap();
    run_scheme(s, &real, &d.csit).unwrap()
}

fn names(tr: &Transcript<Exact>, cols: &[usize]) -> Vec<String> {
    tr.ledger.names(cols.iter().copied())
}

fn cols_named(tr: &Transcript<Exact>, prefix: char) -> Vec<usize> {
    tr.ledger
        .symbols()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.name.starts_with(prefix))
        .map(|(j, _)| j)
        .collect()
}

#[test]
fn pd22_receivers_decode_their_own_symbols() {
    let tr = run(&schemes::pd22(), 3);
    assert_eq!(names(&tr, &oracle_decodable(&tr, 0).unwrap()), ["a1", "a2"]);
    assert_eq!(names(&tr, &oracle_decodable(&tr, 1).unwrap()), ["b"]);
    // receiver 2 only ever sees one combination of (a1, a2)
    assert_eq!(names(&tr, &oracle_decodable_all(&tr, 1).unwrap()), ["b"]);
}

#[test]
fn ppd33_receiver_three_decodes_c() {
    let tr = run(&schemes::ppd33(), 11);
    assert_eq!(names(&tr, &oracle_decodable(&tr, 2).unwrap()), ["c"]);
}

#[test]
fn counting_identities() {
    let r = Rational64::new;
    let cases: [(&str, Rational64); 5] = [
        ("pd22", r(3, 2)),
        ("order2_delivery", r(5, 4)),
        ("pdd23", r(5, 3)),
        ("pdd33", r(9, 5)),
        ("ppd33", r(9, 4)),
    ];
    for (name, want) in cases {
        let s = BuiltinScheme::by_name(name).unwrap();
        assert_eq!(counting_dof(&s).sum(), want, "{name}");
    }
    assert_eq!(counting_dof(&schemes::ppp_zf(3, 3).unwrap()).sum(), r(3, 1));
    assert_eq!(
        counting_dof(&schemes::order2_delivery()),
        DofTuple::Order2 {
            d12: r(1, 2),
            d23: r(1, 4),
            d13: r(1, 2)
        }
    );
    // 9/5 beats the earlier 5/3
    assert!(counting_dof(&schemes::pdd33()).sum() > r(5, 3));
}

#[test]
fn counting_respects_known_ceilings() {
    for s in registry() {
        let d = s.descriptor();
        match bound_check(&d.csit.to_string(), d.antennas, d.receivers, counting_dof(&s).sum()) {
            Ok(v) => assert_eq!(v, BoundVerdict::Ok, "{}", d.name),
            Err(Error::Unsupported(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn ppd33_receiver_one_sees_no_b_or_c_in_first_two_slots() {
    let s = schemes::ppd33();
    for seed in 0..10 {
        let tr = run(&s, seed);
        let g1 = tr.observation(0);
        let g2 = tr.observation(1);
        for t in 0..2 {
            for j in cols_named(&tr, 'b').into_iter().chain(cols_named(&tr, 'c')) {
                assert!(g1.get(t, j).is_zero(), "seed {seed} slot {t} col {j}");
            }
            for j in cols_named(&tr, 'a').into_iter().chain(cols_named(&tr, 'c')) {
                assert!(g2.get(t, j).is_zero(), "seed {seed} slot {t} col {j}");
            }
        }
    }
}

#[test]
fn pdd_receiver_one_is_interference_free() {
    for s in [BuiltinScheme::Pdd23(schemes::pdd23()), BuiltinScheme::Pdd33(schemes::pdd33())] {
        let tr = run(&s, 4);
        let g1 = tr.observation(0);
        for t in 0..tr.slots {
            for j in cols_named(&tr, 'b').into_iter().chain(cols_named(&tr, 'c')) {
                assert!(g1.get(t, j).is_zero(), "{} slot {t} col {j}", tr.scheme);
            }
        }
    }
}

#[test]
fn stage_two_inputs_are_the_five_order_two_symbols() {
    for s in [BuiltinScheme::Pdd23(schemes::pdd23()), BuiltinScheme::Pdd33(schemes::pdd33())] {
        let tr = run(&s, 9);
        let stage1 = tr.slots - 4;
        let a_cols = cols_named(&tr, 'a');
        for (name, audience) in [
            ("ab1", vec![0, 1]),
            ("ab2", vec![0, 1]),
            ("ac1", vec![0, 2]),
            ("ac2", vec![0, 2]),
            ("bc", vec![1, 2]),
        ] {
            let r = tr.reconstructed_named(name).unwrap();
            assert_eq!(r.symbol.audience, audience, "{name}");
            assert_eq!(r.formed_at, stage1, "{name}");
            assert!(!r.form.is_zero());
            if name != "bc" {
                let outside = r
                    .form
                    .coeffs()
                    .iter()
                    .enumerate()
                    .any(|(j, c)| !a_cols.contains(&j) && !c.is_zero());
                assert!(!outside, "{name} must be a combination of a symbols");
            }
        }
    }
}

#[test]
fn every_stage_two_slot_of_pdd23_is_needed() {
    let tr = run(&schemes::pdd23(), 2);
    for t in 8..12 {
        let cut = tr.without_slot(t).unwrap();
        let ok = (0..3).all(|k| oracle_decodable(&cut, k).unwrap() == cut.targets[k]);
        assert!(!ok, "pdd23 still decodes without slot {t}");
    }
}

#[test]
fn last_slot_of_ppd33_is_needed() {
    let tr = run(&schemes::ppd33(), 2);
    let cut = tr.without_slot(3).unwrap();
    assert!((0..3).any(|k| oracle_decodable(&cut, k).unwrap() != cut.targets[k]));
}

#[test]
fn printed_ppd33_fails_receiver_one_on_every_seed() {
    let s = BuiltinScheme::by_name("ppd33_printed").unwrap();
    for seed in 0..10 {
        let tr = run(&s, seed);
        assert_ne!(oracle_decodable(&tr, 0).unwrap(), tr.targets[0], "seed {seed}");
        // receiver 3 is unaffected
        assert_eq!(oracle_decodable(&tr, 2).unwrap(), tr.targets[2]);
    }
}

struct ReadsCurrentDelayed;

impl LinearScheme for ReadsCurrentDelayed {
    fn descriptor(&self) -> SchemeDescriptor {
        SchemeDescriptor {
            name: "reads_current_delayed".into(),
            slots: 1,
            ..schemes::pdd23().descriptor()
        }
    }

    fn ledger(&self) -> SymbolLedger {
        let mut l = SymbolLedger::new();
        l.fresh("a", &[0]);
        l
    }

    fn transmit<F: Scalar>(&self, tx: &mut Transmitter<'_, F>) -> misodof::Result<()> {
        tx.in_slot(|tx, t| {
            // h_2(t) at slot t: delayed CSIT only, so this must be refused
            let h2 = tx.channel(1, t).unwrap_or_else(|_| vec![F::one(); 2]);
            let a = tx.fresh(0);
            tx.send(h2, &a).map(drop)
        })
    }
}

#[test]
fn reading_current_delayed_csit_is_a_violation() {
    let s = ReadsCurrentDelayed;
    let d = s.descriptor();
    let real = ChannelRealization::<Exact>::draw(0, d.antennas, d.receivers, d.slots).unwrap();
    match run_scheme(&s, &real, &d.csit) {
        Err(Error::CsitViolation { receiver, slot, now }) => {
            assert_eq!((receiver, slot, now), (1, 0, 0));
        }
        other => panic!("expected CsitViolation, got {other:?}"),
    }
}

#[test]
fn audit_is_clean_and_nonempty_for_every_scheme() {
    for s in registry() {
        let tr = run(&s, 21);
        assert!(tr.audit_is_clean(), "{}", tr.scheme);
        if s.descriptor().csit.states().iter().any(|&c| c != misodof::channel::CsitState::D) {
            assert!(!tr.audit.is_empty(), "{} never consulted CSIT", tr.scheme);
        }
    }
}

#[test]
fn wrong_config_or_shape_is_rejected() {
    let s = schemes::pdd23();
    let d = s.descriptor();
    let real = ChannelRealization::<Exact>::draw(0, d.antennas, d.receivers, d.slots).unwrap();
    let ppd: CsitConfig = "PPD".parse().unwrap();
    assert!(matches!(run_scheme(&s, &real, &ppd), Err(Error::ConfigMismatch { .. })));
    let short = ChannelRealization::<Exact>::draw(0, d.antennas, d.receivers, 11).unwrap();
    assert!(matches!(
        run_scheme(&s, &short, &d.csit),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn simulated_outputs_match_observation_matrices() {
    for s in registry() {
        let tr = run(&s, 13);
        let d = s.descriptor();
        let real = ChannelRealization::<Exact>::draw(13, d.antennas, d.receivers, d.slots).unwrap();
        let sym: Vec<Exact> = (0..tr.ledger.len())
            .map(|j| misodof::numerics::exact(j as i64 + 1, 1 - j as i64))
            .collect();
        let y = tr.simulate(&real, &sym).unwrap();
        for (k, yk) in y.iter().enumerate() {
            let g = tr.observation(k);
            for (t, got) in yk.iter().enumerate() {
                let want = misodof::numerics::dot(g.row(t), &sym);
                assert_eq!(*got, want, "{} rx {k} slot {t}", tr.scheme);
            }
        }
    }
}

#[test]
fn transcript_fixture_round_trips() {
    let tr = run(&schemes::ppd33(), 6);
    let back: Transcript<Exact> = Transcript::from_json(&tr.to_json().unwrap()).unwrap();
    assert_eq!(back.observations, tr.observations);
    assert_eq!(back.targets, tr.targets);
    assert_eq!(back.ledger, tr.ledger);
    assert_eq!(back.audit, tr.audit);
    let rep = decode_report(&back).unwrap();
    assert!(rep.matches_declaration());
    assert!(rep.to_json().unwrap().contains("\"targets_feasible\": true"));
}

#[test]
fn oracle_refuses_float_transcripts() {
    let s = schemes::pd22();
    let d = s.descriptor();
    let real = ChannelRealization::<misodof::numerics::Float>::draw(0, 2, 2, 2).unwrap();
    let tr = run_scheme(&s, &real, &d.csit).unwrap();
    assert!(matches!(oracle_decodable(&tr, 0), Err(Error::InvalidInput(_))));
}
