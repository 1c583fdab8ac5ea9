//! Replays the checked-in fuzz corpus through the fuzzed entry points.

use std::fs;
use std::path::PathBuf;

use misodof::channel::{ChannelRealization, CsitConfig};
use misodof::decoding::{decode_report, zf_report};
use misodof::dof_lab::{check_grid, parse_grid, parse_rational, region_check};
use misodof::numerics::{Exact, Float, Mode};
use misodof::scheme_core::Transcript;
use misodof_cli::RunConfig;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "empty corpus for {target}");
    out
}

#[test]
fn realization_seeds_round_trip() {
    for (name, s) in seeds("realization_json") {
        let exact = ChannelRealization::<Exact>::from_json(&s);
        let float = ChannelRealization::<Float>::from_json(&s);
        assert!(exact.is_ok() || float.is_ok(), "{name}");
        if let Ok(r) = exact {
            assert_eq!(ChannelRealization::<Exact>::from_json(&r.to_json().unwrap()).unwrap(), r);
        }
    }
}

#[test]
fn transcript_seeds_decode() {
    for (name, s) in seeds("transcript_json") {
        if let Ok(tr) = Transcript::<Exact>::from_json(&s) {
            assert!(decode_report(&tr).unwrap().matches_declaration(), "{name}");
        } else {
            let tr = Transcript::<Float>::from_json(&s).unwrap();
            assert!(zf_report(&tr, 1e4).unwrap().receivers.iter().all(|r| r.targets_feasible));
        }
    }
}

#[test]
fn run_config_seeds() {
    for (name, s) in seeds("run_config") {
        let ok = RunConfig::from_json(&s)
            .map(|c| c.validate(c.mode).is_ok())
            .unwrap_or(false);
        assert_eq!(ok, name != "bad", "{name}");
        if let Ok(c) = RunConfig::from_json(&s) {
            let other = if c.mode == Mode::Exact { Mode::Float } else { Mode::Exact };
            assert!(c.validate(other).is_err());
        }
    }
}

#[test]
fn grid_seeds() {
    for (name, s) in seeds("grid_spec") {
        let ok = parse_grid(&s).and_then(|g| check_grid(&g)).is_ok();
        assert_eq!(ok, name != "bad", "{name}");
    }
}

#[test]
fn region_seeds() {
    for (name, s) in seeds("region_args") {
        let parsed: Result<Vec<_>, _> = s.split_whitespace().map(parse_rational).collect();
        let inside = parsed
            .ok()
            .and_then(|v| region_check(v[0], v[1], v[2]).ok())
            .map(|r| r.inside);
        let want = match name.as_str() {
            "tight" => Some(true),
            "outside" => Some(false),
            _ => None,
        };
        assert_eq!(inside, want, "{name}");
    }
}

#[test]
fn csit_seeds() {
    for (name, s) in seeds("csit_config") {
        match s.parse::<CsitConfig>() {
            Ok(c) => assert_eq!(c.to_string(), s.to_uppercase(), "{name}"),
            Err(_) => assert_eq!(name, "pdd"),
        }
    }
}
