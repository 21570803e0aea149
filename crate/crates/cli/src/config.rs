//! Group description files.
//!
//! One `key = value` pair per line; `#` starts a comment. Keys:
//!
//! | key       | value                                                        |
//! |-----------|--------------------------------------------------------------|
//! | `name`    | free text                                                    |
//! | `preset`  | a preset id, see [`Preset`]                                  |
//! | `kind`    | `datum` (default) or `torus`                                 |
//! | `rank`    | rank of the character lattice                                |
//! | `roots`   | simple roots, `[[1, -1, 0], [0, 1, -1]]`                     |
//! | `coroots` | simple coroots, same shape                                   |
//! | `tau`     | `identity`, cycles on simple roots `(1 3)(2)`, or a matrix   |
//! | `sigma`   | as `tau`                                                     |
//! | `twist`   | exponent `j` in `σ τ σ⁻¹ = τ^j` (default 1)                  |
//! | `q`       | residue field order                                          |
//!
//! Cycle notation numbers simple roots from 1. Matrices are lists of rows and
//! act on `X`; for `kind = torus` they act on the cocharacter lattice.
//! A `preset` line excludes every key except `name` and `q`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use satake_core::kottwitz::{build_induced_torus, TorusWithAction};
use satake_core::lattice::{IntMatrix, IntVector};
use satake_core::root_datum::presets::{self, Family, Form};
use satake_core::root_datum::{BasedRootDatum, DatumError, GaloisAction, PinnedAutomorphism};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ConfigError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ConfigError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupName {
    SpecialLinear(usize),
    ProjectiveLinear(usize),
    GeneralLinear(usize),
    Torus(usize),
    Typed(Family, usize, Form),
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::SpecialLinear(n) => write!(f, "SL{n}"),
            GroupName::ProjectiveLinear(n) => write!(f, "PGL{n}"),
            GroupName::GeneralLinear(n) => write!(f, "GL{n}"),
            GroupName::Torus(n) => write!(f, "T{n}"),
            GroupName::Typed(fam, n, form) => write!(f, "{fam}{n} {form}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outer {
    Flip,
    Triality,
}

/// Preset ids:
///
/// - `split G`, `unramified G [triality]`, `ramified G [triality]`, where `G`
///   is `SL<n>`, `PGL<n>`, `GL<n>`, `T<n>` (split only) or `<A|B|C|D><n> [sc|ad]`.
///   Unramified presets let Frobenius act by the diagram automorphism,
///   ramified ones let inertia act by it.
/// - `induced e=<e> f=<f>`: the induced torus (needs `q`).
/// - `norm-one`: norm-one torus of a ramified quadratic extension.
///
/// Any preset may carry `q=<n>`, which sets the `q` key.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Split(GroupName),
    Unramified(GroupName, Outer),
    Ramified(GroupName, Outer),
    Induced { e: u64, f: u64 },
    NormOne,
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outer = |o: &Outer| {
            if *o == Outer::Triality {
                " triality"
            } else {
                ""
            }
        };
        match self {
            Preset::Split(g) => write!(f, "split {g}"),
            Preset::Unramified(g, o) => write!(f, "unramified {g}{}", outer(o)),
            Preset::Ramified(g, o) => write!(f, "ramified {g}{}", outer(o)),
            Preset::Induced { e, f: ff } => write!(f, "induced e={e} f={ff}"),
            Preset::NormOne => write!(f, "norm-one"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionSpec {
    Identity,
    /// Disjoint cycles on simple roots, numbered from 1.
    Cycles(Vec<Vec<usize>>),
    /// Rows of an integer matrix.
    Matrix(Vec<Vec<i64>>),
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionSpec::Identity => write!(f, "identity"),
            ActionSpec::Cycles(cycles) => {
                for c in cycles {
                    let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
                    write!(f, "({})", parts.join(" "))?;
                }
                Ok(())
            }
            ActionSpec::Matrix(rows) => write!(f, "{}", format_rows(rows)),
        }
    }
}

fn format_rows(rows: &[Vec<i64>]) -> String {
    let r: Vec<String> = rows
        .iter()
        .map(|row| {
            format!(
                "[{}]",
                row.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    format!("[{}]", r.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Preset(Preset),
    Datum {
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        tau: ActionSpec,
        sigma: ActionSpec,
        twist: i64,
    },
    Torus {
        rank: usize,
        tau: ActionSpec,
        sigma: ActionSpec,
        twist: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupConfig {
    pub name: Option<String>,
    pub q: Option<u64>,
    pub body: Body,
}

impl GroupConfig {
    pub fn preset(preset: Preset, q: Option<u64>) -> Self {
        GroupConfig {
            name: None,
            q,
            body: Body::Preset(preset),
        }
    }

    /// Display name: the explicit name, else the preset id.
    pub fn label(&self) -> String {
        match (&self.name, &self.body) {
            (Some(n), _) => n.clone(),
            (None, Body::Preset(p)) => p.to_string(),
            (None, _) => "unnamed".into(),
        }
    }
}

/// Canonical text form; `parse_config` inverts it.
pub fn serialize(config: &GroupConfig) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(" = ");
        out.push_str(&v);
        out.push('\n');
    };
    if let Some(n) = &config.name {
        line("name", n.clone());
    }
    match &config.body {
        Body::Preset(p) => line("preset", p.to_string()),
        Body::Datum {
            rank,
            roots,
            coroots,
            tau,
            sigma,
            twist,
        } => {
            line("kind", "datum".into());
            line("rank", rank.to_string());
            line("roots", format_rows(roots));
            line("coroots", format_rows(coroots));
            line("tau", tau.to_string());
            line("sigma", sigma.to_string());
            line("twist", twist.to_string());
        }
        Body::Torus {
            rank,
            tau,
            sigma,
            twist,
        } => {
            line("kind", "torus".into());
            line("rank", rank.to_string());
            line("tau", tau.to_string());
            line("sigma", sigma.to_string());
            line("twist", twist.to_string());
        }
    }
    if let Some(q) = config.q {
        line("q", q.to_string());
    }
    out
}

// ---------------------------------------------------------------------------
// Value scanning.

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    /// Column of `chars[0]` in the source line, 1-based.
    offset: usize,
}

impl Scanner {
    fn new(src: &str, line: usize, offset: usize) -> Self {
        Scanner {
            chars: src.chars().collect(),
            pos: 0,
            line,
            offset,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ConfigError {
        ConfigError::new(self.line, self.offset + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ConfigError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.err(format!("expected '{c}', found '{x}'"))),
            None => Err(self.err(format!("expected '{c}', found end of line"))),
        }
    }

    fn integer(&mut self) -> Result<i64, ConfigError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-' | '+')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        if text.is_empty() || text == "-" || text == "+" {
            self.pos = start;
            return Err(match self.chars.get(start) {
                Some(c) => self.err(format!("expected an integer, found '{c}'")),
                None => self.err("expected an integer, found end of line"),
            });
        }
        text.parse()
            .map_err(|_| ConfigError::new(self.line, self.offset + start, "integer out of range"))
    }

    fn finish(&mut self) -> Result<(), ConfigError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected '{c}' after value"))),
        }
    }

    /// `[a, b, …]`.
    fn vector(&mut self) -> Result<Vec<i64>, ConfigError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.integer()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(c) => return Err(self.err(format!("expected ',' or ']', found '{c}'"))),
                None => return Err(self.err("unterminated list")),
            }
        }
    }

    /// `[[…], […]]`.
    fn rows(&mut self) -> Result<Vec<Vec<i64>>, ConfigError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.vector()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(c) => return Err(self.err(format!("expected ',' or ']', found '{c}'"))),
                None => return Err(self.err("unterminated list")),
            }
        }
    }

    fn cycles(&mut self) -> Result<Vec<Vec<usize>>, ConfigError> {
        let mut out = Vec::new();
        while self.peek() == Some('(') {
            self.pos += 1;
            let mut cycle = Vec::new();
            loop {
                match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(',') => self.pos += 1,
                    None => return Err(self.err("unterminated cycle")),
                    Some(_) => {
                        let col = self.pos;
                        let v = self.integer()?;
                        if v < 1 {
                            return Err(ConfigError::new(
                                self.line,
                                self.offset + col,
                                "simple roots are numbered from 1",
                            ));
                        }
                        cycle.push(v as usize);
                    }
                }
            }
            out.push(cycle);
        }
        Ok(out)
    }

    fn action(&mut self) -> Result<ActionSpec, ConfigError> {
        let spec = match self.peek() {
            Some('[') => ActionSpec::Matrix(self.rows()?),
            Some('(') => ActionSpec::Cycles(self.cycles()?),
            Some(_) => {
                let rest: String = self.chars[self.pos..].iter().collect();
                if rest.trim_end() == "identity" {
                    self.pos = self.chars.len();
                    ActionSpec::Identity
                } else {
                    return Err(self.err("expected 'identity', cycles or a matrix"));
                }
            }
            None => return Err(self.err("missing value")),
        };
        self.finish()?;
        Ok(spec)
    }
}

fn parse_unsigned(s: &str) -> Option<u64> {
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_group_name(tokens: &[&str]) -> Result<(GroupName, usize), String> {
    let first = *tokens.first().ok_or("missing group")?;
    let number = |prefix: &str| {
        first
            .strip_prefix(prefix)
            .and_then(parse_unsigned)
            .map(|n| n as usize)
    };
    let positive = |n: usize| {
        if n == 0 {
            Err("rank must be positive".to_string())
        } else {
            Ok(n)
        }
    };
    let at_least_two = |n: usize| {
        if n < 2 {
            Err(format!("{first} needs n >= 2"))
        } else {
            Ok(n)
        }
    };
    if let Some(n) = number("SL") {
        return Ok((GroupName::SpecialLinear(at_least_two(n)?), 1));
    }
    if let Some(n) = number("PGL") {
        return Ok((GroupName::ProjectiveLinear(at_least_two(n)?), 1));
    }
    if let Some(n) = number("GL") {
        return Ok((GroupName::GeneralLinear(positive(n)?), 1));
    }
    if let Some(n) = number("T") {
        return Ok((GroupName::Torus(positive(n)?), 1));
    }
    let mut chars = first.chars();
    let fam: Family = chars.next().map(String::from).unwrap_or_default().parse()?;
    let n =
        parse_unsigned(chars.as_str()).ok_or_else(|| format!("unknown group {first:?}"))? as usize;
    if n < fam.min_rank() {
        return Err(format!("{fam}{n} needs rank at least {}", fam.min_rank()));
    }
    match tokens.get(1) {
        Some(&"sc") => Ok((GroupName::Typed(fam, n, Form::SimplyConnected), 2)),
        Some(&"ad") => Ok((GroupName::Typed(fam, n, Form::Adjoint), 2)),
        _ => Ok((GroupName::Typed(fam, n, Form::SimplyConnected), 1)),
    }
}

/// Parses a preset id and any `q=<n>` token in it.
pub fn parse_preset(text: &str) -> Result<(Preset, Option<u64>), String> {
    let mut q = None;
    let mut tokens = Vec::new();
    for t in text.split_whitespace() {
        if let Some(v) = t.strip_prefix("q=") {
            q = Some(
                parse_unsigned(v)
                    .filter(|&v| v >= 2)
                    .ok_or_else(|| format!("bad residue field order {v:?}"))?,
            );
        } else {
            tokens.push(t);
        }
    }
    let (head, rest) = tokens.split_first().ok_or("empty preset")?;
    let preset = match *head {
        "norm-one" if rest.is_empty() => Preset::NormOne,
        "induced" => {
            let (mut e, mut f) = (None, None);
            for t in rest {
                if let Some(v) = t.strip_prefix("e=") {
                    e = parse_unsigned(v);
                } else if let Some(v) = t.strip_prefix("f=") {
                    f = parse_unsigned(v);
                } else {
                    return Err(format!("unexpected {t:?} in induced preset"));
                }
            }
            let e = e
                .filter(|&v| v > 0)
                .ok_or("induced preset needs e=<positive integer>")?;
            let f = f
                .filter(|&v| v > 0)
                .ok_or("induced preset needs f=<positive integer>")?;
            Preset::Induced { e, f }
        }
        "split" | "unramified" | "ramified" => {
            let (g, used) = parse_group_name(rest)?;
            let tail = &rest[used..];
            let outer = match tail {
                [] => Outer::Flip,
                ["triality"] => Outer::Triality,
                _ => return Err(format!("unexpected {:?}", tail.join(" "))),
            };
            match *head {
                "split" if outer == Outer::Flip => Preset::Split(g),
                "split" => return Err("split groups take no automorphism".into()),
                "unramified" => Preset::Unramified(g, outer),
                _ => Preset::Ramified(g, outer),
            }
        }
        other => return Err(format!("unknown preset {other:?}")),
    };
    Ok((preset, q))
}

/// Line of each key, for semantic error locations.
type KeyLines = HashMap<&'static str, usize>;

const KEYS: [&str; 10] = [
    "name", "preset", "kind", "rank", "roots", "coroots", "tau", "sigma", "twist", "q",
];

/// Syntax only: every line well formed and the keys consistent.
pub fn parse_config_syntax(text: &str) -> Result<GroupConfig, Vec<ConfigError>> {
    parse_with_lines(text).map(|(c, _)| c)
}

fn parse_with_lines(text: &str) -> Result<(GroupConfig, KeyLines), Vec<ConfigError>> {
    let mut errors = Vec::new();
    let mut lines: KeyLines = HashMap::new();
    let mut values: HashMap<&'static str, (usize, usize, String)> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            errors.push(ConfigError::new(n, 1, "expected 'key = value'"));
            continue;
        };
        let key = content[..eq].trim();
        let Some(&k) = KEYS.iter().find(|&&k| k == key) else {
            errors.push(ConfigError::new(
                n,
                1 + content.find(key).unwrap_or(0),
                format!("unknown key {key:?}"),
            ));
            continue;
        };
        if lines.insert(k, n).is_some() {
            errors.push(ConfigError::new(n, 1, format!("duplicate key {key:?}")));
            continue;
        }
        let value = &content[eq + 1..];
        let lead = value.len() - value.trim_start().len();
        let column = content[..eq + 1 + lead].chars().count() + 1;
        values.insert(k, (n, column, value.trim().to_string()));
    }
    let scan = |k: &str| {
        values
            .get(k)
            .map(|(l, c, v)| (Scanner::new(v, *l, *c), *l, *c, v.clone()))
    };

    let integer = |k: &str, errors: &mut Vec<ConfigError>| -> Option<i64> {
        let (mut s, ..) = scan(k)?;
        match s.integer().and_then(|v| s.finish().map(|_| v)) {
            Ok(v) => Some(v),
            Err(e) => {
                errors.push(e);
                None
            }
        }
    };
    let name = values.get("name").map(|v| v.2.clone());
    let q = match integer("q", &mut errors) {
        Some(v) if v < 2 => {
            errors.push(ConfigError::new(lines["q"], 1, "q must be at least 2"));
            None
        }
        v => v.map(|v| v as u64),
    };
    let twist = integer("twist", &mut errors).unwrap_or(1);
    let rank = integer("rank", &mut errors);
    if let Some(r) = rank {
        if r < 0 {
            errors.push(ConfigError::new(
                lines["rank"],
                1,
                "rank must be nonnegative",
            ));
        }
    }
    let rows = |k: &str, errors: &mut Vec<ConfigError>| -> Option<Vec<Vec<i64>>> {
        let (mut s, ..) = scan(k)?;
        match s.rows().and_then(|v| s.finish().map(|_| v)) {
            Ok(v) => Some(v),
            Err(e) => {
                errors.push(e);
                None
            }
        }
    };
    let roots = rows("roots", &mut errors);
    let coroots = rows("coroots", &mut errors);
    let action = |k: &str, errors: &mut Vec<ConfigError>| -> ActionSpec {
        match scan(k) {
            None => ActionSpec::Identity,
            Some((mut s, ..)) => s.action().unwrap_or_else(|e| {
                errors.push(e);
                ActionSpec::Identity
            }),
        }
    };
    let tau = action("tau", &mut errors);
    let sigma = action("sigma", &mut errors);

    let body = if let Some((l, c, text)) = values.get("preset") {
        for k in ["kind", "rank", "roots", "coroots", "tau", "sigma", "twist"] {
            if let Some(&kl) = lines.get(k) {
                errors.push(ConfigError::new(
                    kl,
                    1,
                    format!("{k:?} cannot be combined with a preset"),
                ));
            }
        }
        match parse_preset(text) {
            Ok((p, pq)) => {
                if let (Some(a), Some(b)) = (pq, q) {
                    if a != b {
                        errors.push(ConfigError::new(
                            *l,
                            *c,
                            "preset q disagrees with the q key",
                        ));
                    }
                }
                return finish(
                    errors,
                    GroupConfig {
                        name,
                        q: q.or(pq),
                        body: Body::Preset(p),
                    },
                    lines,
                );
            }
            Err(m) => {
                errors.push(ConfigError::new(*l, *c, m));
                return Err(errors);
            }
        }
    } else {
        let kind = values.get("kind").map(|v| v.2.as_str()).unwrap_or("datum");
        let Some(rank) = rank else {
            if !lines.contains_key("rank") {
                errors.push(ConfigError::new(
                    text.lines().count().max(1),
                    1,
                    "missing key \"rank\"",
                ));
            }
            return Err(errors);
        };
        let rank = rank.max(0) as usize;
        match kind {
            "datum" => Body::Datum {
                rank,
                roots: roots.unwrap_or_default(),
                coroots: coroots.unwrap_or_default(),
                tau,
                sigma,
                twist,
            },
            "torus" => {
                for k in ["roots", "coroots"] {
                    if let Some(&kl) = lines.get(k) {
                        errors.push(ConfigError::new(
                            kl,
                            1,
                            format!("{k:?} is not allowed for a torus"),
                        ));
                    }
                }
                Body::Torus {
                    rank,
                    tau,
                    sigma,
                    twist,
                }
            }
            other => {
                errors.push(ConfigError::new(
                    lines["kind"],
                    1,
                    format!("unknown kind {other:?}"),
                ));
                return Err(errors);
            }
        }
    };
    finish(errors, GroupConfig { name, q, body }, lines)
}

fn finish(
    errors: Vec<ConfigError>,
    config: GroupConfig,
    lines: KeyLines,
) -> Result<(GroupConfig, KeyLines), Vec<ConfigError>> {
    if errors.is_empty() {
        Ok((config, lines))
    } else {
        Err(errors)
    }
}

/// A fully checked group: root datum of `G` with its Galois action, and the
/// maximal torus with the action on cocharacters.
#[derive(Clone, Debug)]
pub struct Group {
    pub datum: BasedRootDatum,
    pub action: GaloisAction,
    pub torus: TorusWithAction,
    pub q: Option<u64>,
}

/// Parses and checks a config: syntax, ranks, axioms, pinning and tameness.
pub fn parse_config(text: &str) -> Result<GroupConfig, Vec<ConfigError>> {
    let (config, lines) = parse_with_lines(text)?;
    resolve_with_lines(&config, &lines)?;
    Ok(config)
}

pub fn resolve(config: &GroupConfig) -> Result<Group, Vec<ConfigError>> {
    resolve_with_lines(config, &HashMap::new())
}

fn to_vectors(rows: &[Vec<i64>]) -> Vec<IntVector> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

fn resolve_with_lines(config: &GroupConfig, lines: &KeyLines) -> Result<Group, Vec<ConfigError>> {
    let at = |k: &str| lines.get(k).copied().unwrap_or(0);
    let err = |k: &str, m: String| vec![ConfigError::new(at(k), 1, m)];
    let datum_err = |k: &str, e: DatumError| err(k, e.to_string());
    match &config.body {
        Body::Preset(p) => resolve_preset(p, config.q).map_err(|m| err("preset", m)),
        Body::Datum {
            rank,
            roots,
            coroots,
            tau,
            sigma,
            twist,
        } => {
            let mut errors = Vec::new();
            for (k, list) in [("roots", roots), ("coroots", coroots)] {
                for (i, v) in list.iter().enumerate() {
                    if v.len() != *rank {
                        errors.push(ConfigError::new(
                            at(k),
                            1,
                            format!(
                                "rank mismatch: entry {} of {k} has length {}, expected {rank}",
                                i + 1,
                                v.len()
                            ),
                        ));
                    }
                }
            }
            if roots.len() != coroots.len() {
                errors.push(ConfigError::new(
                    at("coroots"),
                    1,
                    format!("{} roots but {} coroots", roots.len(), coroots.len()),
                ));
            }
            if !errors.is_empty() {
                return Err(errors);
            }
            let datum =
                BasedRootDatum::from_simple(*rank, &to_vectors(roots), &to_vectors(coroots))
                    .map_err(|e| datum_err("roots", e))?;
            let t = automorphism(&datum, tau).map_err(|m| err("tau", m))?;
            let s = automorphism(&datum, sigma).map_err(|m| err("sigma", m))?;
            let action = GaloisAction::new(t, s, *twist).map_err(|e| datum_err("twist", e))?;
            let torus = TorusWithAction::from_datum(&datum, &action)
                .map_err(|e| err("tau", e.to_string()))?;
            Ok(Group {
                datum,
                action,
                torus,
                q: config.q,
            })
        }
        Body::Torus {
            rank,
            tau,
            sigma,
            twist,
        } => {
            let matrix = |k: &str, a: &ActionSpec| -> Result<IntMatrix, Vec<ConfigError>> {
                match a {
                    ActionSpec::Identity => Ok(IntMatrix::identity(*rank)),
                    ActionSpec::Cycles(_) => {
                        Err(err(k, "a torus has no simple roots; give a matrix".into()))
                    }
                    ActionSpec::Matrix(rows) => {
                        if rows.len() != *rank || rows.iter().any(|r| r.len() != *rank) {
                            Err(err(
                                k,
                                format!("rank mismatch: expected a {rank}x{rank} matrix"),
                            ))
                        } else {
                            Ok(to_matrix(rows))
                        }
                    }
                }
            };
            let (t, s) = (matrix("tau", tau)?, matrix("sigma", sigma)?);
            let torus =
                TorusWithAction::new(t, s, *twist).map_err(|e| err("tau", e.to_string()))?;
            Ok(torus_group(torus, config.q))
        }
    }
}

/// A torus viewed as a group with no roots; `X = X^*(T)` carries the
/// contragredient action.
fn torus_group(torus: TorusWithAction, q: Option<u64>) -> Group {
    let datum = BasedRootDatum::torus(torus.rank());
    let t = PinnedAutomorphism::new(&datum, torus.action().tau().dual_matrix().clone())
        .expect("finite order");
    let s = PinnedAutomorphism::new(&datum, torus.action().sigma().dual_matrix().clone())
        .expect("finite order");
    let action =
        GaloisAction::new(t, s, torus.action().twist()).expect("contragredient keeps the twist");
    Group {
        datum,
        action,
        torus,
        q,
    }
}

fn automorphism(datum: &BasedRootDatum, spec: &ActionSpec) -> Result<PinnedAutomorphism, String> {
    match spec {
        ActionSpec::Identity => Ok(PinnedAutomorphism::identity(datum)),
        ActionSpec::Matrix(rows) => {
            let n = datum.rank();
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(format!("rank mismatch: expected a {n}x{n} matrix"));
            }
            PinnedAutomorphism::new(datum, to_matrix(rows)).map_err(|e| e.to_string())
        }
        ActionSpec::Cycles(cycles) => {
            let l = datum.semisimple_rank();
            let mut perm: Vec<usize> = (0..l).collect();
            let mut seen = vec![false; l];
            for c in cycles {
                for (k, &i) in c.iter().enumerate() {
                    if i == 0 || i > l {
                        return Err(format!("simple root {i} out of range 1..={l}"));
                    }
                    if std::mem::replace(&mut seen[i - 1], true) {
                        return Err(format!("simple root {i} appears in two cycles"));
                    }
                    perm[i - 1] = c[(k + 1) % c.len()] - 1;
                }
            }
            PinnedAutomorphism::from_simple_permutation(datum, &perm).map_err(|e| e.to_string())
        }
    }
}

fn named_datum(g: &GroupName) -> BasedRootDatum {
    match *g {
        GroupName::SpecialLinear(n) => presets::semisimple(Family::A, n - 1, Form::SimplyConnected),
        GroupName::ProjectiveLinear(n) => presets::semisimple(Family::A, n - 1, Form::Adjoint),
        GroupName::GeneralLinear(n) => presets::general_linear(n),
        GroupName::Torus(n) => presets::torus(n),
        GroupName::Typed(f, n, form) => presets::semisimple(f, n, form),
    }
}

fn outer_automorphism(
    g: &GroupName,
    datum: &BasedRootDatum,
    outer: Outer,
) -> Result<PinnedAutomorphism, String> {
    let r = match (*g, outer) {
        (GroupName::Typed(Family::D, 4, _), Outer::Triality) => presets::triality(datum),
        (_, Outer::Triality) => return Err("triality needs type D4".into()),
        (GroupName::GeneralLinear(_), _) => presets::gl_flip(datum),
        (GroupName::SpecialLinear(n) | GroupName::ProjectiveLinear(n), _) => {
            presets::diagram_flip(datum, Family::A, n - 1)
        }
        (GroupName::Typed(f, n, _), _) => presets::diagram_flip(datum, f, n),
        (GroupName::Torus(_), _) => {
            return Err("a split torus preset has no outer automorphism".into())
        }
    };
    r.map_err(|e| e.to_string())
}

pub fn resolve_preset(preset: &Preset, q: Option<u64>) -> Result<Group, String> {
    let reductive =
        |g: &GroupName, tau: Option<Outer>, sigma: Option<Outer>| -> Result<Group, String> {
            let datum = named_datum(g);
            let pick = |o: Option<Outer>| match o {
                None => Ok(PinnedAutomorphism::identity(&datum)),
                Some(o) => outer_automorphism(g, &datum, o),
            };
            let action =
                GaloisAction::new(pick(tau)?, pick(sigma)?, 1).map_err(|e| e.to_string())?;
            let torus = TorusWithAction::from_datum(&datum, &action).map_err(|e| e.to_string())?;
            Ok(Group {
                datum,
                action,
                torus,
                q,
            })
        };
    match preset {
        Preset::Split(g) => reductive(g, None, None),
        Preset::Unramified(g, o) => reductive(g, None, Some(*o)),
        Preset::Ramified(g, o) => reductive(g, Some(*o), None),
        Preset::Induced { e, f } => {
            let q = q.ok_or("induced tori need q")?;
            let torus = build_induced_torus(*e, *f, q).map_err(|e| e.to_string())?;
            Ok(torus_group(torus, Some(q)))
        }
        Preset::NormOne => {
            let torus =
                TorusWithAction::new(IntMatrix::from_rows(&[vec![-1]]), IntMatrix::identity(1), 1)
                    .map_err(|e| e.to_string())?;
            Ok(torus_group(torus, q))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_examples() {
        let c = parse_config("preset = induced e=2 f=1 q=3\n").unwrap();
        let g = resolve(&c).unwrap();
        assert_eq!(g.torus.rank(), 2);
        assert_eq!(g.torus.tau(), build_induced_torus(2, 1, 3).unwrap().tau());

        let c = parse_config("preset = split SL2 q=5").unwrap();
        assert_eq!(c.q, Some(5));
        let g = resolve(&c).unwrap();
        assert_eq!(g.datum.roots().len(), 2);
        assert_eq!(g.datum.rank(), 1);
    }

    #[test]
    fn malformed_vector_located() {
        let errs = parse_config("rank = 2\nroots = [1, ]\n").unwrap_err();
        assert_eq!(errs[0].line, 2);
        assert_eq!(errs[0].column, 10);
        assert!(errs[0].message.contains("expected '['"), "{}", errs[0]);

        let errs = parse_config("rank = 1\nroots = [[1, ]]\n").unwrap_err();
        assert_eq!((errs[0].line, errs[0].column), (2, 14));
        assert!(errs[0].message.contains("expected an integer"));
    }

    #[test]
    fn semantic_errors() {
        let errs = parse_config("rank = 2\nroots = [[2]]\ncoroots = [[1]]\n").unwrap_err();
        assert!(errs[0].message.contains("rank mismatch"));
        assert_eq!(errs[0].line, 2);

        // -1 does not preserve the base.
        let errs =
            parse_config("rank = 1\nroots = [[2]]\ncoroots = [[1]]\ntau = [[-1]]\n").unwrap_err();
        assert!(
            errs[0].message.contains("not a pinned automorphism"),
            "{}",
            errs[0]
        );
        assert_eq!(errs[0].line, 4);

        let errs = parse_config("preset = induced e=3 f=1 q=3\n").unwrap_err();
        assert!(errs[0].message.contains("wild ramification"));
    }

    #[test]
    fn explicit_unitary_config() {
        let text = "name = U3\nrank = 3\nroots = [[1, -1, 0], [0, 1, -1]]\ncoroots = [[1, -1, 0], [0, 1, -1]]\ntau = [[0, 0, -1], [0, -1, 0], [-1, 0, 0]]\n";
        let c = parse_config(text).unwrap();
        let g = resolve(&c).unwrap();
        assert_eq!(g.action.tau().order(), 2);
        assert_eq!(parse_config(&serialize(&c)).unwrap(), c);
    }

    #[test]
    fn cycles_on_simple_roots() {
        let text = "rank = 3\nroots = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]\ncoroots = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]\nsigma = (1 3)(2)\n";
        let g = resolve(&parse_config(text).unwrap()).unwrap();
        assert_eq!(g.action.sigma().simple_permutation(), &[2, 1, 0]);
    }

    #[test]
    fn preset_ids_round_trip() {
        for id in [
            "split SL2",
            "split PGL3",
            "split GL3",
            "split T2",
            "split B3 ad",
            "unramified GL3",
            "ramified A3 sc",
            "ramified D4 ad triality",
            "unramified D4 sc triality",
            "induced e=2 f=3",
            "norm-one",
        ] {
            let (p, _) = parse_preset(id).unwrap();
            assert_eq!(p.to_string(), id);
        }
        assert!(parse_preset("ramified A3 sc triality").is_ok());
        assert!(resolve_preset(&parse_preset("ramified A3 sc triality").unwrap().0, None).is_err());
        assert!(parse_preset("split SL1").is_err());
    }
}
