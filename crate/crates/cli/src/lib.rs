//! Batch interface: read a group description, run one command, emit a report.

pub mod config;
pub mod input;
pub mod report;

use std::path::PathBuf;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use satake_core::components::{
    check_center_covers_components, check_fixed_weyl_is_folded_with_cap, check_tad_connected,
};
use satake_core::kottwitz::{
    character_at_generator, kottwitz_group, lemma5_cocycle, maximal_compact_quotient,
    positive_generator, KottwitzError, ParameterClass, SatakeContext,
};
use satake_core::lattice::{format_vector, ExactCircle};
use satake_core::root_datum::{
    dual_datum, folded_generators, restricted_root_data, simple_orbits, validate,
    weyl_group_with_cap, DatumError, OrbitKind, PinnedAutomorphism, DEFAULT_WEYL_CAP,
};

pub use config::{
    parse_config, parse_config_syntax, resolve, serialize, ConfigError, Group, GroupConfig,
};
pub use report::{Format, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Kottwitz,
    Compact,
    Cocycle,
    Classify,
    Equal,
    Fold,
    VerifyKs,
    Modulus,
    Orbits,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Kottwitz => "kottwitz",
            Command::Compact => "compact",
            Command::Cocycle => "cocycle",
            Command::Classify => "classify",
            Command::Equal => "equal",
            Command::Fold => "fold",
            Command::VerifyKs => "verify-ks",
            Command::Modulus => "modulus",
            Command::Orbits => "orbits",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Preset(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub source: Source,
    pub q: Option<u64>,
    pub torsion: Option<u64>,
    pub format: Format,
    pub max_orbit: Option<usize>,
    pub character: Option<String>,
    pub other: Option<String>,
    pub value: Option<String>,
    pub element: Option<String>,
}

impl Options {
    pub fn new(source: Source) -> Self {
        Options {
            source,
            q: None,
            torsion: None,
            format: Format::Text,
            max_orbit: None,
            character: None,
            other: None,
            value: None,
            element: None,
        }
    }

    fn cap(&self) -> usize {
        self.max_orbit.unwrap_or(DEFAULT_WEYL_CAP)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
    Config(Vec<ConfigError>),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Cap(_) => 2,
            _ => 1,
        }
    }
}

impl From<DatumError> for CliError {
    fn from(e: DatumError) -> Self {
        match e {
            DatumError::WeylCapExceeded(_) => CliError::Cap(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<KottwitzError> for CliError {
    fn from(e: KottwitzError) -> Self {
        match e {
            KottwitzError::OrbitCap(_) => CliError::Cap(e.to_string()),
            KottwitzError::Datum(d) => d.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Rendered report plus exit code; `stderr` is empty on success.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Reads the source named in `options` and runs `command` on it.
pub fn execute(command: Command, options: &Options) -> Outcome {
    let text = match &options.source {
        Source::File(p) => match std::fs::read_to_string(p) {
            Ok(t) => t,
            Err(e) => return failure(&CliError::Input(format!("{}: {e}", p.display()))),
        },
        Source::Preset(p) => format!("preset = {p}\n"),
    };
    let parsed = parse_config(&text).and_then(|mut c| {
        if options.q.is_some() {
            c.q = options.q;
        }
        resolve(&c).map(|g| (c, g))
    });
    match parsed {
        Ok((config, group)) => match run(command, &config, &group, options) {
            Ok((report, code)) => Outcome {
                stdout: report.render(options.format),
                stderr: String::new(),
                code,
            },
            Err(e) => failure(&e),
        },
        Err(errors) if command == Command::Validate => {
            let mut results = Map::new();
            results.insert("valid".into(), json!(false));
            results.insert(
                "errors".into(),
                json!(errors.iter().map(ToString::to_string).collect::<Vec<_>>()),
            );
            let report = Report {
                command: command.name().into(),
                inputs: source_echo(options),
                results,
            };
            Outcome {
                stdout: report.render(options.format),
                stderr: String::new(),
                code: 1,
            }
        }
        Err(errors) => failure(&CliError::Config(errors)),
    }
}

fn failure(e: &CliError) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: e.exit_code(),
    }
}

fn source_echo(options: &Options) -> Map<String, Value> {
    let mut m = Map::new();
    match &options.source {
        Source::Preset(p) => {
            m.insert("source".into(), json!("preset"));
            m.insert("preset".into(), json!(p));
        }
        Source::File(p) => {
            m.insert("source".into(), json!("file"));
            let name = p.file_name().map_or_else(
                || p.display().to_string(),
                |n| n.to_string_lossy().into_owned(),
            );
            m.insert("file".into(), json!(name));
        }
    }
    m
}

fn inputs_echo(config: &GroupConfig, options: &Options) -> Map<String, Value> {
    let mut m = source_echo(options);
    m.insert("name".into(), json!(config.label()));
    m.insert("q".into(), json!(config.q));
    m.insert(
        "config".into(),
        json!(serialize(config).lines().collect::<Vec<_>>().join("; ")),
    );
    let optional = [
        ("torsion", options.torsion.map(|t| json!(t))),
        ("max_orbit", options.max_orbit.map(|t| json!(t))),
        ("character", options.character.as_ref().map(|t| json!(t))),
        ("other", options.other.as_ref().map(|t| json!(t))),
        ("value", options.value.as_ref().map(|t| json!(t))),
        ("element", options.element.as_ref().map(|t| json!(t))),
    ];
    for (k, v) in optional {
        if let Some(v) = v {
            m.insert(k.into(), v);
        }
    }
    m
}

fn circles(values: &[ExactCircle]) -> Value {
    json!(values.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn class_json(class: &ParameterClass) -> Value {
    json!({
        "representative": circles(class.representative.values()),
        "orbit_size": class.orbit_size,
    })
}

fn permutation_json(tau: &PinnedAutomorphism) -> Value {
    json!({
        "order": tau.order(),
        "simple_permutation": tau.simple_permutation().iter().map(|i| i + 1).collect::<Vec<_>>(),
        "matrix": tau.matrix().to_string(),
    })
}

/// Runs one command on a resolved group; the exit code is 1 when a
/// verification fails.
pub fn run(
    command: Command,
    config: &GroupConfig,
    group: &Group,
    options: &Options,
) -> Result<(Report, i32), CliError> {
    let mut results = Map::new();
    let mut code = 0;
    let mut put = |k: &str, v: Value| {
        results.insert(k.into(), v);
    };
    let context = || SatakeContext::with_cap(&group.datum, &group.action, options.cap());
    let require = |v: &Option<String>, flag: &str| {
        v.clone()
            .ok_or_else(|| CliError::Input(format!("{} needs --{flag}", command.name())))
    };
    match command {
        Command::Validate => {
            let violations = validate(&group.datum);
            let w = weyl_group_with_cap(&group.datum, options.cap())?;
            let ctx = context()?;
            put("valid", json!(violations.is_empty()));
            put(
                "violations",
                json!(violations
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()),
            );
            put("rank", json!(group.datum.rank()));
            put("semisimple_rank", json!(group.datum.semisimple_rank()));
            put("roots", json!(group.datum.roots().len()));
            put(
                "cartan_matrix",
                json!(group.datum.cartan_matrix().to_string()),
            );
            put("tau", permutation_json(group.action.tau()));
            put("sigma", permutation_json(group.action.sigma()));
            put("twist", json!(group.action.twist()));
            put("weyl_order", json!(w.order()));
            put("relative_weyl_order", json!(ctx.relative_weyl().order()));
            if !violations.is_empty() {
                code = 1;
            }
        }
        Command::Kottwitz => {
            let k = kottwitz_group(&group.torus)?;
            put("cocharacter_rank", json!(group.torus.rank()));
            put("coinvariants", json!(k.coinvariants.to_string()));
            put("kottwitz_group", json!(k.group.to_string()));
            let gens: Vec<Value> = (0..k.group.num_generators())
                .map(|i| {
                    let order = k.group.generator_order(i);
                    json!({
                        "order": if order == BigInt::from(0) { "infinite".to_string() } else { order.to_string() },
                        "cocharacter": format_vector(&k.lift(&k.group.generator(i))),
                    })
                })
                .collect();
            put("generators", json!(gens));
        }
        Command::Compact => {
            let k = kottwitz_group(&group.torus)?;
            let (torsion, _) = k.group.torsion_subgroup();
            put("kottwitz_group", json!(k.group.to_string()));
            put("compact_part", json!(torsion.to_string()));
            put(
                "maximal_compact_quotient",
                json!(maximal_compact_quotient(&group.torus)?.to_string()),
            );
        }
        Command::Cocycle => {
            let data = *group
                .torus
                .induced_data()
                .ok_or_else(|| CliError::Input("cocycle needs an induced torus".into()))?;
            let value = match &options.value {
                Some(v) => input::parse_circle(v).map_err(CliError::Input)?,
                None => ExactCircle::q_power(1, 1),
            };
            let k = kottwitz_group(&group.torus)?;
            let cocycle = lemma5_cocycle(&group.torus, &value)?;
            let from_cocycle = cocycle.character(&k);
            let expected = character_at_generator(&group.torus, &value)?;
            put("e", json!(data.e));
            put("f", json!(data.f));
            put("q", json!(data.q));
            put("kottwitz_group", json!(k.group.to_string()));
            put(
                "positive_generator",
                json!(format_vector(&positive_generator(&group.torus)?)),
            );
            put("value", json!(value.to_string()));
            put("chi", json!(format_vector(&cocycle.chi)));
            put("c", json!(cocycle.c.to_string()));
            put("character", circles(from_cocycle.values()));
            put("round_trip", json!(from_cocycle == expected));
            if from_cocycle != expected {
                code = 1;
            }
        }
        Command::Classify | Command::Equal => {
            let ctx = context()?;
            let n = ctx.kottwitz().group.num_generators();
            let parse = |s: &str| -> Result<_, CliError> {
                let values = input::parse_character(s, n).map_err(CliError::Input)?;
                Ok(ctx.parameter_from_values(values)?)
            };
            let p = parse(&require(&options.character, "character")?)?;
            put("kottwitz_group", json!(ctx.kottwitz().group.to_string()));
            put("relative_weyl_order", json!(ctx.relative_weyl().order()));
            put("parameter", circles(p.values()));
            let class = ctx.classify(&p)?;
            if command == Command::Classify {
                put("class", class_json(&class));
            } else {
                let other = parse(&require(&options.other, "other")?)?;
                let other_class = ctx.classify(&other)?;
                put("other", circles(other.values()));
                put("class", class_json(&class));
                put("other_class", class_json(&other_class));
                put(
                    "equal",
                    json!(class.representative == other_class.representative),
                );
            }
        }
        Command::Fold => {
            let dual = dual_datum(&group.datum)?;
            let tau_hat = PinnedAutomorphism::new(&dual, group.action.tau().dual_matrix().clone())?;
            let orbits: Vec<Value> = simple_orbits(&tau_hat)
                .iter()
                .map(|o| json!(o.iter().map(|i| i + 1).collect::<Vec<_>>()))
                .collect();
            let gens: Vec<Value> = folded_generators(&dual, &tau_hat)?
                .iter()
                .map(|g| {
                    let kind = match g.kind {
                        OrbitKind::Orthogonal(k) => format!("A1^{k}"),
                        OrbitKind::A2 => "A2".to_string(),
                    };
                    json!({
                        "orbit": g.orbit.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "kind": kind,
                        "matrix": g.matrix.to_string(),
                    })
                })
                .collect();
            let r = restricted_root_data(&dual, &tau_hat)?;
            put("side", json!("dual"));
            put("tau_order", json!(tau_hat.order()));
            put("simple_orbits", json!(orbits));
            put("folded_generators", json!(gens));
            put("invariant_rank", json!(r.rank));
            put("restricted_roots", json!(r.roots.len()));
            put("non_reduced", json!(r.non_reduced));
            put("reduced_roots", json!(r.reduced.len()));
            put("cartan_matrix", json!(r.cartan.to_string()));
            put("folded_type", json!(r.folded_type));
        }
        Command::VerifyKs => {
            let tau = group.action.tau();
            let tad = check_tad_connected(&group.datum, tau);
            let cover = check_center_covers_components(&group.datum, tau);
            let fold = check_fixed_weyl_is_folded_with_cap(&group.datum, tau, options.cap())?;
            put(
                "tad_connected",
                json!({
                    "passed": tad.is_connected(),
                    "pi0": tad.group.to_string(),
                    "coinvariants": tad.coinvariants.to_string(),
                    "smith_invariants": format_vector(&tad.witness.invariants()),
                }),
            );
            put(
                "center_covers_components",
                json!({
                    "passed": cover.surjective,
                    "pi0_center": cover.pi0_center.to_string(),
                    "pi0_torus": cover.pi0_torus.to_string(),
                    "obstruction": cover.obstruction.to_string(),
                }),
            );
            put(
                "fixed_weyl_is_folded",
                json!({
                    "passed": fold.equal,
                    "fixed_order": fold.fixed_order,
                    "folded_order": fold.folded_order,
                }),
            );
            let all = tad.is_connected() && cover.surjective && fold.equal;
            put("all_passed", json!(all));
            if !all {
                code = 1;
            }
        }
        Command::Modulus => {
            let ctx = context()?;
            let k = ctx.kottwitz();
            put("kottwitz_group", json!(k.group.to_string()));
            put("two_rho", json!(format_vector(&group.datum.two_rho())));
            match &options.element {
                Some(e) => {
                    let x = input::parse_element(e, k.group.num_generators())
                        .map_err(CliError::Input)?;
                    let x = k.group.reduce(&x);
                    put("element", json!(format_vector(&x)));
                    put("cocharacter", json!(format_vector(&k.lift(&x))));
                    put("modulus", json!(ctx.modulus_character(&x).to_string()));
                }
                None => {
                    let rows: Vec<Value> = (0..k.group.num_generators())
                        .map(|i| {
                            let g = k.group.generator(i);
                            json!({
                                "generator": i,
                                "cocharacter": format_vector(&k.lift(&g)),
                                "modulus": ctx.modulus_character(&g).to_string(),
                            })
                        })
                        .collect();
                    put("generators", json!(rows));
                }
            }
        }
        Command::Orbits => {
            let n = options
                .torsion
                .ok_or_else(|| CliError::Input("orbits needs --torsion".into()))?;
            if n == 0 {
                return Err(CliError::Input("--torsion must be positive".into()));
            }
            let ctx = context()?;
            let classes = ctx.torsion_classes(n, options.cap())?;
            put("kottwitz_group", json!(ctx.kottwitz().group.to_string()));
            put("relative_weyl_order", json!(ctx.relative_weyl().order()));
            put("torsion", json!(n));
            put("class_count", json!(classes.len()));
            put(
                "classes",
                json!(classes.iter().map(class_json).collect::<Vec<_>>()),
            );
        }
    }
    let report = Report {
        command: command.name().into(),
        inputs: inputs_echo(config, options),
        results,
    };
    Ok((report, code))
}
