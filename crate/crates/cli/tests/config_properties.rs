use proptest::prelude::*;
use satake_cli::config::{parse_preset, ActionSpec, Body, Preset};
use satake_cli::{parse_config, parse_config_syntax, resolve, serialize, GroupConfig};

fn rows(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-50i64..50, 0..=max), 0..=max)
}

fn action() -> impl Strategy<Value = ActionSpec> {
    prop_oneof![
        Just(ActionSpec::Identity),
        prop::collection::vec(prop::collection::vec(1usize..9, 0..4), 1..4)
            .prop_map(ActionSpec::Cycles),
        rows(4).prop_map(ActionSpec::Matrix),
    ]
}

const PRESETS: [&str; 12] = [
    "split SL2",
    "split PGL4",
    "split GL3",
    "split T2",
    "split C3 ad",
    "unramified GL4",
    "unramified A5 sc",
    "ramified A4 ad",
    "ramified D4 sc triality",
    "ramified D5 ad",
    "induced e=4 f=2",
    "norm-one",
];

fn body() -> impl Strategy<Value = Body> {
    prop_oneof![
        prop::sample::select(&PRESETS[..]).prop_map(|p| Body::Preset(parse_preset(p).unwrap().0)),
        (0usize..6, rows(4), rows(4), action(), action(), -5i64..5).prop_map(
            |(rank, roots, coroots, tau, sigma, twist)| {
                Body::Datum {
                    rank,
                    roots,
                    coroots,
                    tau,
                    sigma,
                    twist,
                }
            }
        ),
        (0usize..6, action(), action(), -5i64..5).prop_map(|(rank, tau, sigma, twist)| {
            Body::Torus {
                rank,
                tau,
                sigma,
                twist,
            }
        }),
    ]
}

fn config() -> impl Strategy<Value = GroupConfig> {
    (
        prop::option::of("[A-Za-z0-9][A-Za-z0-9 ()_-]{0,12}[A-Za-z0-9]"),
        prop::option::of(2u64..1000),
        body(),
    )
        .prop_map(|(name, q, body)| GroupConfig { name, q, body })
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(c in config()) {
        prop_assert_eq!(parse_config_syntax(&serialize(&c)).unwrap(), c);
    }

    #[test]
    fn valid_presets_round_trip(p in prop::sample::select(&PRESETS[..]), q in prop::sample::select(vec![3u64, 5, 7])) {
        let c = GroupConfig::preset(parse_preset(p).unwrap().0, Some(q));
        let parsed = parse_config(&serialize(&c)).unwrap();
        prop_assert_eq!(&parsed, &c);
        prop_assert!(resolve(&parsed).is_ok());
    }
}

#[test]
fn every_preset_resolves() {
    for p in PRESETS {
        let (preset, _) = parse_preset(p).unwrap();
        let q = if matches!(preset, Preset::Induced { .. }) {
            Some(3)
        } else {
            None
        };
        assert!(resolve(&GroupConfig::preset(preset, q)).is_ok(), "{p}");
    }
}

#[test]
fn syntax_errors_carry_locations() {
    let cases = [
        ("rank = 2\nroots = [1, ]\n", 2, 10),
        ("rank = 1\nroots = [[1, ]]\n", 2, 14),
        ("rank = 1\nroots = [[1]\n", 2, 13),
        ("rank = x\n", 1, 8),
        ("rank = 1\ncolour = red\n", 2, 1),
        ("rank = 1\ntau = (1 2\n", 2, 11),
        ("just text\n", 1, 1),
    ];
    for (text, line, column) in cases {
        let e = &parse_config(text).unwrap_err()[0];
        assert_eq!((e.line, e.column), (line, column), "{text:?}: {e}");
    }
}
