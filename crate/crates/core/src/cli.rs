//! Command-line front end: argument parsing, input files, and reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{PrepError, Result};
use crate::free_word::FreeHomomorphism;
use crate::perm_group::{FiniteGroup, GroupLimits, Perm};
use crate::rep_variety::{
    based_limit, class_limit, conjugacy_classes, enumerate_homs, DirectLimitResult, HomPoint,
    DEFAULT_BUDGET,
};
use crate::substitution_complex::{
    allowed_factors, is_primitive, parse_endomorphism, Approximant, SubstitutionRule,
};

/// Parses `S<n>`, `C<n>`, `D<n>` (order `2n`) or
/// `perm(<degree>): <cycles>; <cycles>; …` with 1-based points.
///
/// `S3` comes with the letter labels `1, a, a2, b, ab, a2b`.
pub fn parse_group_spec(spec: &str, limits: &GroupLimits) -> Result<FiniteGroup> {
    let at = |position: usize, message: String| PrepError::ParseAt { position, message };
    let lead = spec.len() - spec.trim_start().len();
    let s = spec.trim();
    if s.is_empty() {
        return Err(at(1, "empty group spec".into()));
    }
    if let Some(rest) = s.strip_prefix("perm") {
        return parse_perm_spec(rest, lead + 4, limits);
    }
    let kind = s.chars().next().unwrap();
    let digits = &s[kind.len_utf8()..];
    if !matches!(kind, 'S' | 'C' | 'D') {
        return Err(at(
            lead + 1,
            format!("expected S<n>, C<n>, D<n> or perm(<degree>): …, found {s:?}"),
        ));
    }
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(at(lead + 2, format!("expected a number after {kind}")));
    }
    let n: usize = digits
        .parse()
        .map_err(|_| at(lead + 2, format!("number {digits} is too large")))?;
    if n == 0 {
        return Err(at(lead + 2, "group parameter must be positive".into()));
    }
    match kind {
        'S' if n == 3 => limits.symmetric(3)?.with_s3_letter_labels(),
        'S' => limits.symmetric(n),
        'C' => limits.cyclic(n),
        _ => limits.dihedral(n),
    }
}

fn parse_perm_spec(rest: &str, offset: usize, limits: &GroupLimits) -> Result<FiniteGroup> {
    let at = |position: usize, message: String| PrepError::ParseAt { position, message };
    let bytes = rest.as_bytes();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if bytes.get(i) != Some(&b'(') {
        return Err(at(offset + i + 1, "expected '(' after perm".into()));
    }
    i += 1;
    let start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    let degree: usize = rest[start..i]
        .parse()
        .map_err(|_| at(offset + start + 1, "expected the degree".into()))?;
    if degree == 0 {
        return Err(at(offset + start + 1, "degree must be positive".into()));
    }
    if bytes.get(i) != Some(&b')') {
        return Err(at(offset + i + 1, "expected ')' after the degree".into()));
    }
    i += 1;
    skip_ws(&mut i);
    if bytes.get(i) != Some(&b':') {
        return Err(at(offset + i + 1, "expected ':'".into()));
    }
    i += 1;

    let body = &rest[i..];
    let mut gens = Vec::new();
    if !body.trim().is_empty() {
        let mut part_start = i;
        for part in body.split(';') {
            gens.push(parse_cycles(part, degree, offset + part_start)?);
            part_start += part.len() + 1;
        }
    }
    limits.from_generators(degree, &gens)
}

/// One generator in disjoint-cycle notation, e.g. `(1 2 3)(4 5)` or `()`.
fn parse_cycles(part: &str, degree: usize, offset: usize) -> Result<Perm> {
    let at = |position: usize, message: String| PrepError::ParseAt { position, message };
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut number_start = None;
    let mut saw_any = false;
    let chars: Vec<(usize, char)> = part.char_indices().chain([(part.len(), ' ')]).collect();
    for &(pos, c) in &chars {
        if c.is_ascii_digit() {
            if current.is_none() {
                return Err(at(offset + pos + 1, "point outside a cycle".into()));
            }
            number_start.get_or_insert(pos);
            continue;
        }
        if let Some(ns) = number_start.take() {
            let p: usize = part[ns..pos]
                .parse()
                .map_err(|_| at(offset + ns + 1, "point number too large".into()))?;
            if p == 0 || p > degree {
                return Err(at(
                    offset + ns + 1,
                    format!("point {p} is outside 1..={degree}"),
                ));
            }
            current.as_mut().unwrap().push(p - 1);
        }
        match c {
            '(' if current.is_none() => {
                current = Some(Vec::new());
                saw_any = true;
            }
            ')' if current.is_some() => cycles.push(current.take().unwrap()),
            c if c.is_whitespace() || (c == ',' && current.is_some()) => {}
            _ => return Err(at(offset + pos + 1, format!("unexpected {c:?}"))),
        }
    }
    if current.is_some() {
        return Err(at(offset + part.len() + 1, "unclosed cycle".into()));
    }
    if !saw_any {
        return Err(at(offset + 1, "empty generator".into()));
    }
    Perm::from_cycles(degree, &cycles).map_err(|e| at(offset + 1, e.to_string()))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| PrepError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_substitution_file(path: &Path) -> Result<SubstitutionRule> {
    SubstitutionRule::parse(&read_file(path)?)
}

/// Endomorphism file: rule grammar plus `name^-1` letters.
pub fn parse_endomorphism_file(path: &Path) -> Result<(Vec<String>, FreeHomomorphism)> {
    parse_endomorphism(&read_file(path)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Count homomorphisms and conjugacy classes
    Count,
    /// Direct limit of the representation variety modulo conjugation
    Limit,
    /// Direct limit of the based representation variety
    BasedLimit,
    /// Approximant graph, fundamental group and induced endomorphism
    Approximant,
    /// Legal factors of a substitution language
    Factors,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Count => "count",
            Command::Limit => "limit",
            Command::BasedLimit => "based-limit",
            Command::Approximant => "approximant",
            Command::Factors => "factors",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub group_spec: Option<String>,
    pub rule_path: Option<PathBuf>,
    pub endo_path: Option<PathBuf>,
    pub collar_level: u8,
    /// Approximant vertex to base π₁ at (vertex 0 when unset).
    pub basepoint: Option<usize>,
    pub rank_override: Option<usize>,
    pub length: Option<usize>,
    pub output_format: OutputFormat,
    pub budget: u64,
    pub limits: GroupLimits,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            group_spec: None,
            rule_path: None,
            endo_path: None,
            collar_level: 0,
            basepoint: None,
            rank_override: None,
            length: None,
            output_format: OutputFormat::Text,
            budget: DEFAULT_BUDGET,
            limits: GroupLimits::default(),
        }
    }

    pub fn group(mut self, spec: &str) -> Self {
        self.group_spec = Some(spec.to_string());
        self
    }

    pub fn rule(mut self, path: impl Into<PathBuf>) -> Self {
        self.rule_path = Some(path.into());
        self
    }

    pub fn endo(mut self, path: impl Into<PathBuf>) -> Self {
        self.endo_path = Some(path.into());
        self
    }

    pub fn collar(mut self, level: u8) -> Self {
        self.collar_level = level;
        self
    }

    pub fn basepoint(mut self, vertex: usize) -> Self {
        self.basepoint = Some(vertex);
        self
    }

    pub fn rank(mut self, k: usize) -> Self {
        self.rank_override = Some(k);
        self
    }

    pub fn length(mut self, len: usize) -> Self {
        self.length = Some(len);
        self
    }

    pub fn json(mut self) -> Self {
        self.output_format = OutputFormat::Json;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupEcho {
    pub spec: String,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleEcho {
    pub letters: Vec<String>,
    pub images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoEcho {
    pub generators: Vec<String>,
    pub images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub homs: u64,
    pub classes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Member {
    pub tuple: Vec<String>,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitReport {
    pub size: usize,
    pub steps: usize,
    pub transient: usize,
    pub members: Vec<Member>,
    /// Position in `members` of the image of each member.
    pub permutation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeEcho {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproximantReport {
    pub vertices: usize,
    pub edges: Vec<EdgeEcho>,
    pub basepoint: usize,
    pub rank: usize,
    pub spanning_tree: Vec<String>,
    pub generators: Vec<String>,
    pub endomorphism: Vec<String>,
}

/// Where the graph map sends the basepoint, and the tree path used to
/// conjugate image loops back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasepointReport {
    pub vertex: usize,
    pub image: usize,
    pub transport: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorsReport {
    pub length: usize,
    pub primitive: bool,
    pub primitivity_exponent: Option<usize>,
    pub words: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collar: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<BasepointReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub endomorphism: Option<EndoEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Counts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<LimitReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approximant: Option<ApproximantReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<FactorsReport>,
    pub timing: Timing,
}

impl Report {
    fn new(command: Command) -> Self {
        Report {
            command: command.name().to_string(),
            group: None,
            rule: None,
            collar: None,
            basepoint: None,
            endomorphism: None,
            counts: None,
            limit: None,
            approximant: None,
            factors: None,
            timing: Timing { elapsed_ms: 0.0 },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(g) = &self.group {
            let _ = writeln!(out, "group: {} (order {})", g.spec, g.order);
        }
        if let Some(r) = &self.rule {
            let rules: Vec<String> = r
                .letters
                .iter()
                .zip(&r.images)
                .map(|(l, img)| format!("{l} -> {img}"))
                .collect();
            let _ = write!(out, "rule: {}", rules.join("; "));
            if let Some(c) = self.collar {
                let _ = write!(out, " (collar {c})");
            }
            out.push('\n');
        }
        if let Some(b) = &self.basepoint {
            if b.transport.is_empty() {
                let _ = writeln!(
                    out,
                    "basepoint: vertex {} (fixed by the graph map)",
                    b.vertex
                );
            } else {
                let _ = writeln!(
                    out,
                    "basepoint: vertex {} maps to {}, transported along [{}]",
                    b.vertex,
                    b.image,
                    b.transport.join(", ")
                );
            }
        }
        if let Some(e) = &self.endomorphism {
            let maps: Vec<String> = e
                .generators
                .iter()
                .zip(&e.images)
                .map(|(g, img)| format!("{g} -> {img}"))
                .collect();
            let _ = writeln!(out, "endomorphism: {}", maps.join("; "));
        }
        if let Some(a) = &self.approximant {
            let _ = writeln!(
                out,
                "approximant: {} vertices, {} edges, basepoint {}",
                a.vertices,
                a.edges.len(),
                a.basepoint
            );
            for e in &a.edges {
                let _ = writeln!(out, "  edge {}: {} -> {}", e.label, e.source, e.target);
            }
            let _ = writeln!(out, "spanning tree: [{}]", a.spanning_tree.join(", "));
            let _ = writeln!(out, "rank: {}", a.rank);
            for (g, img) in a.generators.iter().zip(&a.endomorphism) {
                let _ = writeln!(out, "  {g} -> {img}");
            }
        }
        if let Some(f) = &self.factors {
            match f.primitivity_exponent {
                Some(n) => {
                    let _ = writeln!(out, "primitive: yes (M^{n} > 0)");
                }
                None => {
                    let _ = writeln!(out, "primitive: no");
                }
            }
            let _ = writeln!(out, "factors of length {}: {}", f.length, f.words.len());
            for w in &f.words {
                let _ = writeln!(out, "  {w}");
            }
        }
        if let Some(c) = &self.counts {
            let _ = writeln!(out, "homs: {}, classes: {}", c.homs, c.classes);
        }
        if let Some(l) = &self.limit {
            let _ = writeln!(
                out,
                "limit: {} members, stable after {} steps, {} transient",
                l.size, l.steps, l.transient
            );
            for m in &l.members {
                let _ = writeln!(out, "  ({})  orbit {}", m.tuple.join(", "), m.orbit_size);
            }
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Json => {
                let mut s = self.to_json();
                s.push('\n');
                s
            }
        }
    }
}

fn require<'a, T>(value: &'a Option<T>, flag: &str, command: Command) -> Result<&'a T> {
    value
        .as_ref()
        .ok_or_else(|| PrepError::invalid(format!("{} needs {flag}", command.name())))
}

fn rule_echo(rule: &SubstitutionRule) -> RuleEcho {
    RuleEcho {
        letters: rule.alphabet().to_vec(),
        images: rule.images().iter().map(|w| rule.display_word(w)).collect(),
    }
}

fn basepoint_report(ap: &Approximant) -> BasepointReport {
    BasepointReport {
        vertex: ap.graph.basepoint,
        image: ap.basepoint_image(),
        transport: ap
            .transport()
            .iter()
            .map(|s| {
                let label = &ap.graph.edges[s.edge].label;
                if s.forward {
                    label.clone()
                } else {
                    format!("{label}^-1")
                }
            })
            .collect(),
    }
}

fn endo_echo(names: &[String], sigma: &FreeHomomorphism) -> EndoEcho {
    EndoEcho {
        generators: names.to_vec(),
        images: sigma
            .images()
            .iter()
            .map(|w| w.display_with(names))
            .collect(),
    }
}

/// The free-group endomorphism a command iterates, with generator names.
fn resolve_endomorphism(
    config: &RunConfig,
    report: &mut Report,
) -> Result<(Vec<String>, FreeHomomorphism)> {
    let cmd = config.command;
    if config.basepoint.is_some() && config.rule_path.is_none() {
        return Err(PrepError::invalid("--basepoint needs --rule"));
    }
    match (&config.rule_path, &config.endo_path) {
        (Some(_), Some(_)) => Err(PrepError::invalid(
            "--rule and --endo are mutually exclusive",
        )),
        (Some(path), None) => {
            if config.rank_override.is_some() {
                return Err(PrepError::invalid(
                    "--rank applies to --endo or a bare free group, not to --rule",
                ));
            }
            let rule = parse_substitution_file(path)?;
            let ap = Approximant::build_at(&rule, config.collar_level, config.basepoint)?;
            report.rule = Some(rule_echo(&rule));
            report.collar = Some(config.collar_level);
            report.basepoint = Some(basepoint_report(&ap));
            Ok((ap.generator_names(), ap.endomorphism))
        }
        (None, Some(path)) => {
            let (names, sigma) = parse_endomorphism_file(path)?;
            if let Some(k) = config.rank_override {
                if k != names.len() {
                    return Err(PrepError::invalid(format!(
                        "--rank {k} does not match the {} generators of {}",
                        names.len(),
                        path.display()
                    )));
                }
            }
            Ok((names, sigma))
        }
        (None, None) => {
            let k = *require(&config.rank_override, "--rule, --endo or --rank", cmd)?;
            let names = (0..k).map(|i| format!("x{}", i + 1)).collect();
            Ok((names, FreeHomomorphism::identity(k)))
        }
    }
}

fn member_of(group: &FiniteGroup, point: &HomPoint, orbit_size: usize) -> Member {
    Member {
        tuple: point
            .labels(group)
            .into_iter()
            .map(str::to_string)
            .collect(),
        orbit_size,
    }
}

fn limit_report(limit: &DirectLimitResult, members: Vec<Member>) -> LimitReport {
    LimitReport {
        size: limit.len(),
        steps: limit.steps_to_stabilize,
        transient: limit.transient_count,
        members,
        permutation: limit.restricted_map.clone(),
    }
}

/// Runs one command end to end.
pub fn run(config: &RunConfig) -> Result<Report> {
    if config.budget == 0 {
        return Err(PrepError::invalid("--budget must be positive"));
    }
    let started = Instant::now();
    let cmd = config.command;
    let mut report = Report::new(cmd);

    match cmd {
        Command::Factors => {
            let path = require(&config.rule_path, "--rule", cmd)?;
            let rule = parse_substitution_file(path)?;
            let length = config.length.unwrap_or(2);
            if length == 0 {
                return Err(PrepError::invalid("--length must be positive"));
            }
            let primitivity = is_primitive(&rule);
            report.rule = Some(rule_echo(&rule));
            report.factors = Some(FactorsReport {
                length,
                primitive: primitivity.is_primitive(),
                primitivity_exponent: primitivity.exponent,
                words: allowed_factors(&rule, length)
                    .iter()
                    .map(|w| rule.display_word(w))
                    .collect(),
            });
        }
        Command::Approximant => {
            let path = require(&config.rule_path, "--rule", cmd)?;
            let rule = parse_substitution_file(path)?;
            let ap = Approximant::build_at(&rule, config.collar_level, config.basepoint)?;
            let names = ap.generator_names();
            report.rule = Some(rule_echo(&rule));
            report.collar = Some(config.collar_level);
            report.basepoint = Some(basepoint_report(&ap));
            report.approximant = Some(ApproximantReport {
                vertices: ap.graph.vertex_count,
                edges: ap
                    .graph
                    .edges
                    .iter()
                    .map(|e| EdgeEcho {
                        label: e.label.clone(),
                        source: e.source,
                        target: e.target,
                    })
                    .collect(),
                basepoint: ap.graph.basepoint,
                rank: ap.pi1.rank,
                spanning_tree: ap
                    .pi1
                    .spanning_tree
                    .iter()
                    .map(|&e| ap.graph.edges[e].label.clone())
                    .collect(),
                generators: names.clone(),
                endomorphism: ap
                    .endomorphism
                    .images()
                    .iter()
                    .map(|w| w.display_with(&names))
                    .collect(),
            });
        }
        Command::Count | Command::Limit | Command::BasedLimit => {
            let spec = require(&config.group_spec, "--group", cmd)?;
            let group = parse_group_spec(spec, &config.limits)?;
            report.group = Some(GroupEcho {
                spec: spec.clone(),
                order: group.order(),
            });
            let (names, sigma) = resolve_endomorphism(config, &mut report)?;
            report.endomorphism = Some(endo_echo(&names, &sigma));
            let k = sigma.source_rank();

            match cmd {
                Command::Count => {
                    let space = enumerate_homs(&group, k, config.budget)?;
                    let partition = conjugacy_classes(&space, &group);
                    report.counts = Some(Counts {
                        homs: space.len() as u64,
                        classes: partition.len() as u64,
                    });
                }
                Command::Limit => {
                    let result = class_limit(&sigma, &group, config.budget)?;
                    report.counts = Some(Counts {
                        homs: result.space.len() as u64,
                        classes: result.partition.len() as u64,
                    });
                    let members = result
                        .member_classes()
                        .iter()
                        .map(|c| member_of(&group, &c.canonical, c.orbit_size))
                        .collect();
                    report.limit = Some(limit_report(&result.limit, members));
                }
                _ => {
                    let result = based_limit(&sigma, &group, config.budget)?;
                    let partition = conjugacy_classes(&result.space, &group);
                    report.counts = Some(Counts {
                        homs: result.space.len() as u64,
                        classes: partition.len() as u64,
                    });
                    let members = result
                        .limit
                        .members
                        .iter()
                        .map(|&i| {
                            let orbit = partition.classes()[partition.class_of(i)].orbit_size;
                            member_of(&group, &result.space.point(i), orbit)
                        })
                        .collect();
                    report.limit = Some(limit_report(&result.limit, members));
                }
            }
        }
    }

    report.timing.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Representation varieties of substitution tilings over finite groups.
#[derive(Debug, Parser)]
#[command(name = "prep", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Count Hom(F_k, G) and its conjugacy classes
    Count(Options),
    /// Direct limit of Hom(F_k, G)/G along the induced map
    Limit(Options),
    /// Direct limit of Hom(F_k, G) along the induced map
    BasedLimit(Options),
    /// Approximant graph, fundamental group and induced endomorphism
    Approximant(Options),
    /// Legal factors of the substitution language
    Factors(Options),
}

#[derive(Debug, Args)]
pub struct Options {
    /// Group: S<n>, C<n>, D<n> or "perm(<degree>): (1 2 3); (1 2)"
    #[arg(long)]
    pub group: Option<String>,
    /// Substitution rule file
    #[arg(long)]
    pub rule: Option<PathBuf>,
    /// Collar level of the approximant
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub collar: u8,
    /// Approximant vertex to base the fundamental group at
    #[arg(long)]
    pub basepoint: Option<usize>,
    /// Work directly on F_k (identity map unless --endo is given)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub rank: Option<u64>,
    /// Endomorphism file (rule grammar, inverse letters as name^-1)
    #[arg(long)]
    pub endo: Option<PathBuf>,
    /// Factor length for `factors`
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub length: Option<u64>,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
    /// Largest |G|^k to enumerate
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Worker threads for enumeration
    #[arg(long, env = "PREP_WORKERS")]
    pub workers: Option<usize>,
}

impl Cli {
    /// Splits into the run configuration and the requested worker count.
    pub fn into_config(self) -> (RunConfig, Option<usize>) {
        let (command, o) = match self.command {
            CliCommand::Count(o) => (Command::Count, o),
            CliCommand::Limit(o) => (Command::Limit, o),
            CliCommand::BasedLimit(o) => (Command::BasedLimit, o),
            CliCommand::Approximant(o) => (Command::Approximant, o),
            CliCommand::Factors(o) => (Command::Factors, o),
        };
        let config = RunConfig {
            command,
            group_spec: o.group,
            rule_path: o.rule,
            endo_path: o.endo,
            collar_level: o.collar,
            basepoint: o.basepoint,
            rank_override: o.rank.map(|k| k as usize),
            length: o.length.map(|l| l as usize),
            output_format: if o.json {
                OutputFormat::Json
            } else {
                OutputFormat::Text
            },
            budget: o.budget,
            limits: GroupLimits::default(),
        };
        (config, o.workers)
    }
}
