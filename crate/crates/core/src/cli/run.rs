//! Validation of problem files and execution of their tasks.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use super::format::*;
use crate::base_change::{saturated_base_change, verify_base_change, SatBaseChangeResult};
use crate::cone::{Face, RationalCone};
use crate::error::Error;
use crate::lattice::vector::{format_vector, format_vectors, primitive, sort_dedup};
use crate::lattice::LatticeMap;
use crate::log_morphism::MonoidChart;
use crate::monoid::{hilbert_basis, saturate, AffineMonoid};
use crate::oracle;
use crate::toric_chart::ToricChart;

pub const COMMANDS: &[&str] = &[
    "dual",
    "hilbert",
    "boundary-ideal",
    "faces",
    "orbit",
    "split",
    "check-log-smooth",
    "check-log-etale",
    "check-strict",
    "fibre-dim",
    "base-change",
    "verify",
    "oracle",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Version,
    DanglingReference,
    Dimension,
    Invalid,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Version => "unsupported version",
            ParseErrorKind::DanglingReference => "unresolved reference",
            ParseErrorKind::Dimension => "dimension mismatch",
            ParseErrorKind::Invalid => "invalid document",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.column, self.kind, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A value bound to a name, either declared or produced by a task.
#[derive(Clone, Debug)]
pub enum Object {
    Cone(RationalCone),
    Monoid(AffineMonoid),
    ToricChart(ToricChart),
    Chart(MonoidChart),
    BaseChange(Box<SatBaseChangeResult>),
    Data(Value),
}

impl Object {
    fn kind(&self) -> &'static str {
        match self {
            Object::Cone(_) => "cone",
            Object::Monoid(_) => "monoid",
            Object::ToricChart(_) => "toric-chart",
            Object::Chart(_) => "monoid-chart",
            Object::BaseChange(_) => "base-change result",
            Object::Data(_) => "task result",
        }
    }

    fn as_cone(&self) -> Option<RationalCone> {
        match self {
            Object::Cone(c) => Some(c.clone()),
            Object::ToricChart(c) => Some(c.cone().clone()),
            Object::Monoid(m) => Some(m.cone().clone()),
            _ => None,
        }
    }

    fn as_monoid(&self) -> Option<AffineMonoid> {
        match self {
            Object::Monoid(m) => Some(m.clone()),
            Object::ToricChart(c) => Some(c.dual_monoid().clone()),
            Object::BaseChange(r) => Some(r.main_monoid.clone()),
            _ => None,
        }
    }

    fn as_toric_chart(&self) -> Option<ToricChart> {
        match self {
            Object::ToricChart(c) => Some(c.clone()),
            Object::Cone(c) => ToricChart::from_cone(c.clone()).ok(),
            _ => None,
        }
    }

    fn as_chart(&self) -> Option<MonoidChart> {
        match self {
            Object::Chart(c) => Some(c.clone()),
            Object::BaseChange(r) => Some(r.structural_map.clone()),
            _ => None,
        }
    }
}

/// A validated problem file with its objects built.
#[derive(Clone, Debug)]
pub struct Problem {
    pub file: ProblemFile,
    pub objects: BTreeMap<String, Object>,
}

/// Line and column (1-based) of the first occurrence of `needle` at or after
/// byte offset `from`.
fn locate(text: &str, needle: &str, from: usize) -> (usize, usize) {
    let at = text.get(from..).and_then(|t| t.find(needle)).map(|i| i + from).unwrap_or(0);
    let before = &text[..at];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(at, |nl| at - nl - 1) + 1;
    (line, column)
}

fn error_at(text: &str, needle: &str, from: usize, kind: ParseErrorKind, message: String) -> ParseError {
    let (line, column) = locate(text, needle, from);
    ParseError { kind, line, column, message }
}

fn library_kind(e: &Error) -> ParseErrorKind {
    match e {
        Error::DimensionMismatch { .. } => ParseErrorKind::Dimension,
        _ => ParseErrorKind::Invalid,
    }
}

struct Resolver<'a> {
    text: &'a str,
    specs: &'a BTreeMap<String, ObjectSpec>,
    built: BTreeMap<String, Object>,
    in_progress: Vec<String>,
}

impl Resolver<'_> {
    fn fail(&self, name: &str, kind: ParseErrorKind, message: String) -> ParseError {
        error_at(self.text, &format!("\"{name}\""), 0, kind, message)
    }

    fn resolve(&mut self, name: &str, referrer: &str) -> Result<Object, ParseError> {
        if let Some(o) = self.built.get(name) {
            return Ok(o.clone());
        }
        let Some(spec) = self.specs.get(name) else {
            return Err(self.fail(
                referrer,
                ParseErrorKind::DanglingReference,
                format!("object `{referrer}` refers to undeclared object `{name}`"),
            ));
        };
        if self.in_progress.iter().any(|n| n == name) {
            return Err(self.fail(
                name,
                ParseErrorKind::Invalid,
                format!("object `{name}` refers to itself"),
            ));
        }
        self.in_progress.push(name.to_string());
        let object = self.build(name, spec)?;
        self.in_progress.pop();
        self.built.insert(name.to_string(), object.clone());
        Ok(object)
    }

    fn monoid(&mut self, r: &MonoidRef, owner: &str) -> Result<AffineMonoid, ParseError> {
        match r {
            MonoidRef::Inline(spec) => {
                build_monoid(spec.rank, &spec.generators, spec.saturated).map_err(|(k, m)| {
                    self.fail(owner, k, format!("object `{owner}`: {m}"))
                })
            }
            MonoidRef::Name(n) => {
                let o = self.resolve(n, owner)?;
                o.as_monoid().ok_or_else(|| {
                    self.fail(
                        owner,
                        ParseErrorKind::Invalid,
                        format!("object `{owner}` expects a monoid, `{n}` is a {}", o.kind()),
                    )
                })
            }
        }
    }

    fn build(&mut self, name: &str, spec: &ObjectSpec) -> Result<Object, ParseError> {
        let lib = |this: &Self, e: Error| this.fail(name, library_kind(&e), format!("object `{name}`: {e}"));
        match spec {
            ObjectSpec::Cone { rank, generators, facets } => {
                let cone = RationalCone::from_generators(*rank, &to_vectors(generators))
                    .map_err(|e| lib(self, e))?;
                if let Some(stored) = facets {
                    let mut given: Vec<_> = to_vectors(stored).iter().map(|f| primitive(f)).collect();
                    let mut computed = cone.facets().to_vec();
                    sort_dedup(&mut given);
                    sort_dedup(&mut computed);
                    if given != computed {
                        return Err(self.fail(
                            name,
                            ParseErrorKind::Invalid,
                            format!(
                                "object `{name}`: stored facets {} differ from computed facets {}",
                                format_vectors(&given),
                                format_vectors(&computed)
                            ),
                        ));
                    }
                }
                Ok(Object::Cone(cone))
            }
            ObjectSpec::Monoid { rank, generators, saturated } => {
                build_monoid(*rank, generators, *saturated)
                    .map(Object::Monoid)
                    .map_err(|(k, m)| self.fail(name, k, format!("object `{name}`: {m}")))
            }
            ObjectSpec::ToricChart { lattice_rank, cone_generators } => {
                ToricChart::new(*lattice_rank, &to_vectors(cone_generators))
                    .map(Object::ToricChart)
                    .map_err(|e| lib(self, e))
            }
            ObjectSpec::MonoidChart { source, target, matrix } => {
                let p = self.monoid(source, name)?;
                let q = self.monoid(target, name)?;
                let map = LatticeMap::from_rows(p.ambient_rank(), to_vectors(matrix))
                    .map_err(|e| lib(self, e))?;
                MonoidChart::new(p, q, map).map(Object::Chart).map_err(|e| lib(self, e))
            }
            ObjectSpec::ToricMorphism { source, target, matrix } => {
                let chart = |this: &mut Self, n: &str| -> Result<ToricChart, ParseError> {
                    let o = this.resolve(n, name)?;
                    o.as_toric_chart().ok_or_else(|| {
                        this.fail(
                            name,
                            ParseErrorKind::Invalid,
                            format!("object `{name}` expects a toric chart, `{n}` is a {}", o.kind()),
                        )
                    })
                };
                let src = chart(self, source)?;
                let dst = chart(self, target)?;
                let map = LatticeMap::from_rows(src.lattice_rank(), to_vectors(matrix))
                    .map_err(|e| lib(self, e))?;
                MonoidChart::from_toric_morphism(&src, &dst, &map)
                    .map(Object::Chart)
                    .map_err(|e| lib(self, e))
            }
        }
    }
}

fn build_monoid(
    rank: usize,
    generators: &Matrix,
    saturated: Option<bool>,
) -> Result<AffineMonoid, (ParseErrorKind, String)> {
    let m = AffineMonoid::generated_by(rank, &to_vectors(generators))
        .map_err(|e| (library_kind(&e), e.to_string()))?;
    match saturated {
        Some(claim) if claim != m.is_saturated() => Err((
            ParseErrorKind::Invalid,
            format!("declared saturated: {claim}, but the monoid is {}saturated", if claim { "not " } else { "" }),
        )),
        _ => Ok(m),
    }
}

/// Parses and validates a problem file: JSON structure, version, object
/// construction, task commands and references.
pub fn parse(text: &str) -> Result<Problem, ParseError> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| ParseError {
        kind: if e.is_data() { ParseErrorKind::Invalid } else { ParseErrorKind::Syntax },
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    if file.version != FORMAT_VERSION {
        return Err(error_at(
            text,
            "\"version\"",
            0,
            ParseErrorKind::Version,
            format!("version `{}` is not recognised (expected `{FORMAT_VERSION}`)", file.version),
        ));
    }
    let mut resolver =
        Resolver { text, specs: &file.objects, built: BTreeMap::new(), in_progress: Vec::new() };
    for name in file.objects.keys() {
        resolver.resolve(name, name)?;
    }
    let objects = resolver.built;

    let tasks_at = text.find("\"tasks\"").unwrap_or(0);
    let mut names: Vec<&str> = objects.keys().map(String::as_str).collect();
    for (i, task) in file.tasks.iter().enumerate() {
        if !COMMANDS.contains(&task.command.as_str()) {
            return Err(error_at(
                text,
                &format!("\"{}\"", task.command),
                tasks_at,
                ParseErrorKind::Invalid,
                format!("task {i}: unknown command `{}`", task.command),
            ));
        }
        for value in task.arguments.values() {
            if let Value::String(r) = value {
                if !names.contains(&r.as_str()) {
                    return Err(error_at(
                        text,
                        &format!("\"{r}\""),
                        tasks_at,
                        ParseErrorKind::DanglingReference,
                        format!("task {i} ({}) refers to undeclared object `{r}`", task.command),
                    ));
                }
            }
        }
        if let Some(out) = &task.output {
            names.push(out);
        }
    }
    Ok(Problem { file, objects })
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

/// The serialized form of a parsed file.
pub fn serialize(p: &Problem) -> Value {
    serde_json::to_value(&p.file).expect("problem files serialize")
}

#[derive(Debug)]
enum TaskError {
    Library(Error),
    Usage(String),
}

impl From<Error> for TaskError {
    fn from(e: Error) -> Self {
        TaskError::Library(e)
    }
}

impl fmt::Display for TaskError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TaskError::Library(e) => e.fmt(f),
            TaskError::Usage(m) => f.write_str(m),
        }
    }
}

struct Context<'a> {
    env: &'a BTreeMap<String, Object>,
    task: &'a TaskSpec,
}

impl Context<'_> {
    fn object(&self, key: &str) -> Result<&Object, TaskError> {
        match self.task.arguments.get(key) {
            Some(Value::String(name)) => self
                .env
                .get(name)
                .ok_or_else(|| TaskError::Usage(format!("undeclared object `{name}`"))),
            Some(_) => Err(TaskError::Usage(format!("argument `{key}` must name an object"))),
            None => Err(TaskError::Usage(format!("missing argument `{key}`"))),
        }
    }

    fn typed<T>(
        &self,
        key: &str,
        what: &str,
        f: impl Fn(&Object) -> Option<T>,
    ) -> Result<T, TaskError> {
        let o = self.object(key)?;
        f(o).ok_or_else(|| TaskError::Usage(format!("argument `{key}` must be a {what}, found a {}", o.kind())))
    }

    fn cone(&self, key: &str) -> Result<RationalCone, TaskError> {
        self.typed(key, "cone", Object::as_cone)
    }

    fn monoid(&self, key: &str) -> Result<AffineMonoid, TaskError> {
        self.typed(key, "monoid", Object::as_monoid)
    }

    fn toric_chart(&self, key: &str) -> Result<ToricChart, TaskError> {
        self.typed(key, "toric chart", Object::as_toric_chart)
    }

    fn chart(&self, key: &str) -> Result<MonoidChart, TaskError> {
        self.typed(key, "monoid chart", Object::as_chart)
    }

    fn has(&self, key: &str) -> bool {
        self.task.arguments.contains_key(key)
    }

    fn vectors(&self, key: &str) -> Result<Option<Vec<crate::lattice::IntVector>>, TaskError> {
        match self.task.arguments.get(key) {
            None => Ok(None),
            Some(v) => parse_vectors(v)
                .map(Some)
                .ok_or_else(|| TaskError::Usage(format!("argument `{key}` must be a list of integer vectors"))),
        }
    }

    fn search_box(&self, n: usize, default: oracle::Box) -> Result<oracle::Box, TaskError> {
        let Some(v) = self.task.arguments.get("box") else {
            return Ok(default);
        };
        let bad = || TaskError::Usage("argument `box` must be {\"lower\": [...], \"upper\": [...]}".into());
        let bound = |k: &str| -> Result<Vec<i64>, TaskError> {
            let row = v.get(k).and_then(parse_vector).ok_or_else(bad)?;
            row.iter().map(|x| i64::try_from(x).map_err(|_| bad())).collect()
        };
        let b = oracle::Box::new(bound("lower")?, bound("upper")?);
        if b.rank() != n {
            return Err(TaskError::Library(Error::DimensionMismatch { expected: n, found: b.rank() }));
        }
        Ok(b)
    }
}

fn execute(ctx: &Context) -> Result<(Value, Object), TaskError> {
    let data = |v: Value| Ok((v.clone(), Object::Data(v)));
    match ctx.task.command.as_str() {
        "dual" => {
            let dual = ctx.cone("cone")?.dual();
            Ok((json!({ "cone": cone_json(&dual) }), Object::Cone(dual)))
        }
        "hilbert" => {
            let m = hilbert_basis(&ctx.cone("cone")?)?;
            Ok((json!({ "hilbert_basis": vectors_json(m.generators()) }), Object::Monoid(m)))
        }
        "boundary-ideal" => {
            let ideal = ctx.toric_chart("chart")?.boundary_ideal_generators()?;
            data(json!({
                "generators": vectors_json(&ideal.generator_exponents),
                "monoid": monoid_json(&ideal.monoid),
            }))
        }
        "faces" => {
            let faces = ctx.cone("cone")?.faces()?;
            data(json!({ "faces": faces.iter().map(face_json).collect::<Vec<_>>() }))
        }
        "orbit" => {
            let chart = ctx.toric_chart("chart")?;
            let orbit = |f: &Face| -> Result<Value, TaskError> {
                let o = chart.orbit_data(f)?;
                Ok(json!({
                    "face": face_json(&o.face),
                    "orbit_dimension": o.orbit_dimension,
                    "closure_monoid": monoid_json(&o.closure_monoid),
                }))
            };
            match ctx.vectors("face")? {
                Some(gens) => {
                    let face = Face::from_generators(chart.cone(), &gens)?;
                    data(orbit(&face)?)
                }
                None => {
                    let all: Result<Vec<Value>, TaskError> = chart.cone().faces()?.iter().map(orbit).collect();
                    data(json!({ "orbits": all? }))
                }
            }
        }
        "split" => {
            let chart = ctx.toric_chart("chart")?;
            let s = chart.split_torus_factor()?;
            let reassembles = s.reassemble().same_monoid(chart.dual_monoid());
            if !reassembles {
                return Err(Error::Invariant("torus splitting does not reassemble".into()).into());
            }
            data(json!({
                "n1": sublattice_json(&s.n1),
                "n2": sublattice_json(&s.n2),
                "factor_monoid": monoid_json(&s.factor_monoid),
                "torus_rank": s.torus_rank,
                "reassembles": reassembles,
            }))
        }
        "check-log-smooth" => {
            let s = ctx.chart("chart")?.is_log_smooth();
            data(json!({
                "verdict": s.verdict,
                "kernel": vectors_json(&s.kernel),
                "cokernel_torsion": integers_json(&s.cokernel_torsion),
            }))
        }
        "check-log-etale" => {
            let c = ctx.chart("chart")?;
            let cokernel = c.gp_cokernel();
            data(json!({
                "verdict": c.is_log_etale(),
                "kernel": sublattice_json(&c.gp_kernel()),
                "cokernel_free_rank": cokernel.free_rank,
                "torsion_divisors": integers_json(&cokernel.torsion_divisors),
            }))
        }
        "check-strict" => data(json!({ "verdict": ctx.chart("chart")?.is_strict() })),
        "fibre-dim" => data(json!({ "fibre_dim": ctx.chart("chart")?.fibre_dimension()? })),
        "base-change" => {
            let theta = ctx.chart("theta")?;
            let phi = ctx.chart("phi")?;
            let r = saturated_base_change(&theta, &phi)?;
            let result = base_change_json(&r);
            Ok((result, Object::BaseChange(Box::new(r))))
        }
        "verify" => {
            let r = match ctx.object("result")? {
                Object::BaseChange(r) => r.clone(),
                o => {
                    return Err(TaskError::Usage(format!(
                        "argument `result` must be a base-change result, found a {}",
                        o.kind()
                    )))
                }
            };
            let theta = ctx.chart("theta")?;
            let report = verify_base_change(&r, &theta).into_result()?;
            data(json!({
                "saturated": report.saturated,
                "log_smooth": report.log_smooth,
                "dominant": report.dominant,
                "fibre_dim_identity": report.fibre_dim_identity,
                "passed": true,
            }))
        }
        "oracle" => run_oracle(ctx),
        other => Err(TaskError::Usage(format!("unknown command `{other}`"))),
    }
}

fn base_change_json(r: &SatBaseChangeResult) -> Value {
    json!({
        "main_monoid": monoid_json(&r.main_monoid),
        "structural_matrix": matrix_json(r.structural_map.map()),
        "q_matrix": matrix_json(&r.q_map),
        "torsion_order": r.torsion_order.to_string(),
        "torsion_divisors": integers_json(&r.pushout.torsion_divisors),
        "fibre_dim": r.fibre_dim,
        "pushout": {
            "group_pushout_rank": r.pushout.group_pushout_rank,
            "q_images": vectors_json(&r.pushout.q_images),
            "p2_images": vectors_json(&r.pushout.p2_images),
        },
    })
}

fn disagreement(what: &str, library: &[crate::lattice::IntVector], brute: &[crate::lattice::IntVector]) -> TaskError {
    TaskError::Library(Error::Invariant(format!(
        "{what}: library {} but oracle {}",
        format_vectors(library),
        format_vectors(brute)
    )))
}

fn sorted(mut v: Vec<crate::lattice::IntVector>) -> Vec<crate::lattice::IntVector> {
    v.sort();
    v
}

fn run_oracle(ctx: &Context) -> Result<(Value, Object), TaskError> {
    let data = |v: Value| Ok((v.clone(), Object::Data(v)));
    if ctx.has("cone") {
        let cone = ctx.cone("cone")?;
        let library = sorted(hilbert_basis(&cone)?.generators().to_vec());
        let b = ctx.search_box(cone.ambient_rank(), oracle::Box::zonotope(cone.ambient_rank(), cone.rays()))?;
        let brute = oracle::brute_hilbert_basis(&cone, &b);
        if library != brute {
            return Err(disagreement("Hilbert basis", &library, &brute));
        }
        return data(json!({ "check": "hilbert", "hilbert_basis": vectors_json(&brute), "agrees": true }));
    }
    if ctx.has("chart") {
        let chart = ctx.toric_chart("chart")?;
        let d = chart.lattice_rank();
        let ideal = chart.boundary_ideal_generators()?;
        let b = ctx.search_box(d, oracle::Box::cube(d, 6))?;
        let points = oracle::enumerate_cone_points(chart.dual_monoid().cone(), &b);
        let wide = b.widened(oracle::ideal_reach(&ideal));
        let lookup = oracle::PointSet::new(&oracle::enumerate_cone_points(chart.dual_monoid().cone(), &wide));
        let rays = chart.cone().rays();
        let mut checked = 0usize;
        for m in &points {
            let in_ideal = !rays.is_empty()
                && rays.iter().all(|r| crate::lattice::vector::dot(m, r) >= 1.into());
            if in_ideal != oracle::brute_ideal_membership(&ideal, m, &lookup) {
                return Err(TaskError::Library(Error::Invariant(format!(
                    "boundary ideal membership of {} disagrees with the oracle",
                    format_vector(m)
                ))));
            }
            checked += 1;
        }
        return data(json!({
            "check": "boundary-ideal",
            "generators": vectors_json(&ideal.generator_exponents),
            "points_checked": checked,
            "agrees": true,
        }));
    }
    if ctx.has("monoid") {
        let m = ctx.monoid("monoid")?;
        if !m.is_sharp() {
            return Err(TaskError::Usage("the saturation oracle needs a monoid without units".into()));
        }
        let library = sorted(saturate(&m).generators().to_vec());
        let n = m.ambient_rank();
        let b = ctx.search_box(n, oracle::Box::zonotope(n, m.cone().rays()))?;
        let brute = oracle::brute_saturation(m.generators(), &m.group(), &b);
        if library != brute {
            return Err(disagreement("saturation", &library, &brute));
        }
        return data(json!({ "check": "saturation", "hilbert_basis": vectors_json(&brute), "agrees": true }));
    }
    Err(TaskError::Usage("oracle needs one of the arguments `cone`, `chart` or `monoid`".into()))
}

/// Certificate of a run and the process exit code it calls for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub certificate: Value,
    pub exit_code: i32,
}

pub fn run(p: &Problem) -> RunOutcome {
    run_tasks(p, &p.file.tasks)
}

pub fn run_tasks(p: &Problem, tasks: &[TaskSpec]) -> RunOutcome {
    let mut env = p.objects.clone();
    let mut entries = Vec::new();
    let mut failed = 0usize;
    let mut invariant = false;
    for (i, task) in tasks.iter().enumerate() {
        let mut entry = Map::new();
        entry.insert("index".into(), json!(i));
        entry.insert("command".into(), json!(task.command));
        entry.insert("arguments".into(), json!(task.arguments));
        if let Some(out) = &task.output {
            entry.insert("output".into(), json!(out));
        }
        let outcome = execute(&Context { env: &env, task });
        match outcome {
            Ok((result, object)) => {
                entry.insert("status".into(), json!("ok"));
                entry.insert("result".into(), result);
                if let Some(out) = &task.output {
                    env.insert(out.clone(), object);
                }
            }
            Err(e) => {
                failed += 1;
                if matches!(e, TaskError::Library(Error::Invariant(_))) {
                    invariant = true;
                }
                entry.insert("status".into(), json!("error"));
                entry.insert("error".into(), json!(e.to_string()));
            }
        }
        entries.push(Value::Object(entry));
    }
    let certificate = json!({
        "version": FORMAT_VERSION,
        "tasks": entries,
        "summary": { "tasks": tasks.len(), "failed": failed },
    });
    let exit_code = if invariant {
        3
    } else if failed > 0 {
        1
    } else {
        0
    };
    RunOutcome { certificate, exit_code }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(Value::is_string) => {
            format!("({})", items.iter().map(render_value).collect::<Vec<_>>().join(", "))
        }
        Value::Array(items) if items.iter().all(|x| x.as_array().is_some_and(|a| a.iter().all(Value::is_string))) => {
            format!("{{{}}}", items.iter().map(render_value).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn render_fields(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if x.is_object() {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_fields(out, x, indent + 1);
                } else if x.as_array().is_some_and(|a| a.iter().any(Value::is_object)) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    for item in x.as_array().into_iter().flatten() {
                        out.push_str(&format!("{pad}  -\n"));
                        render_fields(out, item, indent + 2);
                    }
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", render_value(x)));
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", render_value(other))),
    }
}

/// Human-readable rendering of a certificate.
pub fn render_text(certificate: &Value) -> String {
    let mut out = String::new();
    for task in certificate["tasks"].as_array().into_iter().flatten() {
        out.push_str(&format!(
            "[{}] {}: {}\n",
            task["index"],
            task["command"].as_str().unwrap_or_default(),
            task["status"].as_str().unwrap_or_default()
        ));
        match task.get("result") {
            Some(r) => render_fields(&mut out, r, 1),
            None => out.push_str(&format!("  error: {}\n", task["error"].as_str().unwrap_or_default())),
        }
    }
    out.push_str(&format!(
        "{} task(s), {} failed\n",
        certificate["summary"]["tasks"], certificate["summary"]["failed"]
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUSP: &str = r#"{
  "version": "1",
  "objects": {
    "theta": {"kind": "monoid-chart", "source": {"rank": 1, "generators": [["1"]]},
              "target": {"rank": 1, "generators": [["1"]]}, "matrix": [["2"]]},
    "phi": {"kind": "monoid-chart", "source": {"rank": 1, "generators": [["1"]]},
            "target": {"rank": 1, "generators": [["1"]]}, "matrix": [["3"]]}
  },
  "tasks": [{"command": "base-change", "arguments": {"theta": "theta", "phi": "phi"}, "output": "W"}]
}"#;

    #[test]
    fn parses_cusp() {
        let p = parse(CUSP).unwrap();
        assert_eq!(p.objects.len(), 2);
        assert_eq!(p.file.tasks.len(), 1);
        let out = run(&p);
        assert_eq!(out.exit_code, 0);
        let r = &out.certificate["tasks"][0]["result"];
        assert_eq!(r["main_monoid"]["generators"], json!([["1"]]));
        assert_eq!(r["torsion_order"], json!("1"));
    }

    #[test]
    fn truncated_input() {
        let e = parse(&CUSP[..40]).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
    }

    #[test]
    fn dangling_reference() {
        let text = CUSP.replace(r#""phi": "phi""#, r#""phi": "psi""#);
        let e = parse(&text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DanglingReference);
        assert!(e.message.contains("`psi`"));
        assert_eq!(e.line, 9);
    }

    #[test]
    fn wrong_version() {
        let e = parse(&CUSP.replace(r#""version": "1""#, r#""version": "7""#)).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Version);
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn dimension_mismatch() {
        let text = r#"{"version": "1", "objects": {"c": {"kind": "cone", "rank": 2, "generators": [["1"]]}}}"#;
        assert_eq!(parse(text).unwrap_err().kind, ParseErrorKind::Dimension);
    }

    #[test]
    fn empty_task_list() {
        let p = parse(r#"{"version": "1", "objects": {}, "tasks": []}"#).unwrap();
        let out = run(&p);
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.certificate["tasks"], json!([]));
    }

    #[test]
    fn task_failure_sets_exit_code() {
        let text = r#"{"version": "1",
          "objects": {"sum": {"kind": "monoid-chart",
                              "source": {"rank": 2, "generators": [["1","0"],["0","1"]]},
                              "target": {"rank": 1, "generators": [["1"]]},
                              "matrix": [["1","1"]]}},
          "tasks": [{"command": "fibre-dim", "arguments": {"chart": "sum"}},
                    {"command": "check-log-smooth", "arguments": {"chart": "sum"}}]}"#;
        let out = run(&parse(text).unwrap());
        assert_eq!(out.exit_code, 1);
        assert_eq!(out.certificate["tasks"][0]["status"], json!("error"));
        let smooth = &out.certificate["tasks"][1]["result"];
        assert_eq!(smooth["verdict"], json!(false));
        assert_eq!(smooth["kernel"], json!([["1", "-1"]]));
    }
}
