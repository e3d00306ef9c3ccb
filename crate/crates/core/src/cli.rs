//! Command-line driver. `main` calls [`run`]; everything else is private.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::caps::Caps;
use crate::circuit::{Circuit, Domain, JCircuit, SignPartition};
use crate::enumeration::{enumerate_circuits, enumerate_j_circuits, polytope_dimension};
use crate::error::{Error, Result};
use crate::facets::{
    certify_facet, check_validity, is_facet_bruteforce, is_valid_bruteforce, map_to_arc_model, FacetCertificate,
    LinearInequality, TightPoints,
};
use crate::greedy::{implied_ordering, undominated_j_circuits};
use crate::rational::{display_rational, format_rational, parse_list, parse_rational, Rational};
use crate::separation::{separate_all, separate_hierarchy, separate_permutation, separate_two_term, Cut, QueryPoint};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CUT_FOUND: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "circuit-polytope", version, about = "Exact tools for the hamiltonian circuit polytope")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find violated facet-family members at a point.
    Separate {
        #[command(flatten)]
        common: Common,
        /// Comma-separated point, e.g. "7,2.6,1".
        #[arg(long)]
        point: Option<String>,
        #[arg(long, value_enum, default_value_t = Families::All)]
        families: Families,
        /// Exit with status 1 when a cut is found.
        #[arg(long)]
        fail_on_cut: bool,
    },
    /// Check validity of an inequality through its undominated J-circuits.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ineq: IneqArg,
        /// Also check every circuit.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Certify whether an inequality defines a facet.
    Certify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ineq: IneqArg,
        /// Also run the brute-force facet oracle.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Undominated J-circuits for a sign pattern.
    Undominated {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        signs: SignArgs,
    },
    /// Ordering along which the greedy pass regenerates a J-circuit.
    ImpliedOrdering {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        signs: SignArgs,
        /// Values of the J-circuit, in the order of J.
        #[arg(long)]
        xbar: Option<String>,
    },
    /// Dimension of the polytope.
    Dimension {
        #[command(flatten)]
        common: Common,
    },
    /// List all circuits, or all J-circuits with --J.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long = "J")]
        j: Option<String>,
    },
    /// Rewrite an inequality over the 0-1 arc variables.
    MapArc {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ineq: IneqArg,
    },
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Size n; the domain defaults to 1..=n.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated increasing domain values.
    #[arg(long)]
    domain: Option<String>,
    /// Job file or inline JSON object with any of the flag values.
    #[arg(long)]
    input: Option<String>,
    /// Write the result here instead of standard output.
    #[arg(long)]
    output: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(clap::Args, Debug)]
struct IneqArg {
    /// Inequality as inline JSON or a file path:
    /// {"coeffs": {"3": "1/1"}, "rhs": "3/1"}.
    #[arg(long)]
    ineq: Option<String>,
}

#[derive(clap::Args, Debug)]
struct SignArgs {
    #[arg(long = "J")]
    j: Option<String>,
    #[arg(long)]
    plus: Option<String>,
    #[arg(long)]
    minus: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Families {
    All,
    Permutation,
    TwoTerm,
    Hierarchy,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, err) {
        Ok(reply) => match emit(&reply, out) {
            Ok(()) => reply.code,
            Err(e) => report(e, err),
        },
        Err(e) => report(e, err),
    }
}

fn report(e: Error, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {e}");
    match e {
        Error::Resource(_) => EXIT_RESOURCE,
        Error::Input(_) | Error::Infeasible(_) => EXIT_INPUT,
    }
}

struct Reply {
    json: Value,
    text: String,
    format: Format,
    output: Option<String>,
    code: i32,
}

fn emit(reply: &Reply, out: &mut dyn Write) -> Result<()> {
    let body = match reply.format {
        Format::Json => serde_json::to_string_pretty(&reply.json).expect("json values serialize") + "\n",
        Format::Text => reply.text.clone(),
    };
    match &reply.output {
        Some(path) => std::fs::write(path, body).map_err(|e| Error::Input(format!("cannot write {path}: {e}"))),
        None => out
            .write_all(body.as_bytes())
            .map_err(|e| Error::Input(format!("cannot write output: {e}"))),
    }
}

/// Values gathered from flags, with `--input` filling the gaps.
struct Job {
    domain: Domain,
    fields: Map<String, Value>,
    caps: Caps,
}

impl Job {
    fn new(common: &Common) -> Result<Job> {
        let fields = match &common.input {
            Some(src) => match read_json(src)? {
                Value::Object(map) => map,
                _ => return Err(Error::Input("--input must be a JSON object".into())),
            },
            None => Map::new(),
        };
        let caps = Caps::from_env()?;
        let domain = resolve_domain(common, &fields)?;
        Ok(Job { domain, fields, caps })
    }

    /// Flag value if given, else the `--input` field rendered as a string.
    fn text(&self, flag: &Option<String>, key: &str) -> Result<Option<String>> {
        if let Some(v) = flag {
            return Ok(Some(v.clone()));
        }
        match self.fields.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(Value::Array(items)) => Ok(Some(
                items.iter().map(scalar_text).collect::<Result<Vec<_>>>()?.join(","),
            )),
            Some(v) => Ok(Some(scalar_text(v)?)),
        }
    }

    fn required(&self, flag: &Option<String>, key: &str) -> Result<String> {
        self.text(flag, key)?
            .ok_or_else(|| Error::Input(format!("missing --{key}")))
    }

    fn indices(&self, flag: &Option<String>, key: &str) -> Result<Option<Vec<usize>>> {
        self.text(flag, key)?.map(|s| parse_indices(&s)).transpose()
    }

    fn inequality(&self, arg: &IneqArg) -> Result<LinearInequality> {
        let value = match (&arg.ineq, self.fields.get("ineq")) {
            (Some(src), _) => read_json(src)?,
            (None, Some(v)) => v.clone(),
            (None, None) => return Err(Error::Input("missing --ineq".into())),
        };
        inequality_from_json(&value, self.domain.n())
    }

    fn signs(&self, args: &SignArgs) -> Result<(Vec<usize>, SignPartition)> {
        let plus = self.indices(&args.plus, "plus")?;
        let minus = self.indices(&args.minus, "minus")?;
        let j = match self.indices(&args.j, "J")? {
            Some(j) => j,
            None => {
                let mut all: Vec<usize> = plus.iter().chain(&minus).flatten().copied().collect();
                all.sort_unstable();
                all
            }
        };
        let mut j_sorted = j.clone();
        j_sorted.sort_unstable();
        j_sorted.dedup();
        if j_sorted.len() != j.len() {
            return Err(Error::Input("J has repeated indices".into()));
        }
        let not_in = |set: &Vec<usize>| j_sorted.iter().copied().filter(|i| !set.contains(i)).collect::<Vec<_>>();
        let (plus, minus) = match (plus, minus) {
            (Some(p), Some(m)) => (p, m),
            (Some(p), None) => {
                let m = not_in(&p);
                (p, m)
            }
            (None, Some(m)) => (not_in(&m), m),
            (None, None) => (j_sorted.clone(), Vec::new()),
        };
        let signs = SignPartition::new(plus, minus)?;
        if signs.support() != j_sorted {
            return Err(Error::Input("--plus and --minus must partition J".into()));
        }
        Ok((j, signs))
    }
}

fn scalar_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Input(format!("expected a number or string, got {other}"))),
    }
}

fn read_json(src: &str) -> Result<Value> {
    let trimmed = src.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        src.to_string()
    } else if Path::new(src).exists() {
        std::fs::read_to_string(src).map_err(|e| Error::Input(format!("cannot read {src}: {e}")))?
    } else {
        return Err(Error::Input(format!("{src} is neither JSON nor a readable file")));
    };
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("bad JSON: {e}")))
}

fn resolve_domain(common: &Common, fields: &Map<String, Value>) -> Result<Domain> {
    let listed = match (&common.domain, fields.get("domain")) {
        (Some(s), _) => Some(parse_list(s)?),
        (None, Some(Value::Array(items))) => Some(
            items
                .iter()
                .map(|v| parse_rational(&scalar_text(v)?))
                .collect::<Result<Vec<_>>>()?,
        ),
        (None, Some(Value::String(s))) => Some(parse_list(s)?),
        (None, Some(other)) => return Err(Error::Input(format!("bad domain {other}"))),
        (None, None) => None,
    };
    let n = match (common.n, fields.get("n")) {
        (Some(n), _) => Some(n),
        (None, Some(v)) => Some(
            v.as_u64()
                .ok_or_else(|| Error::Input(format!("bad n {v}")))? as usize,
        ),
        (None, None) => None,
    };
    match (listed, n) {
        (Some(values), Some(n)) if values.len() != n => Err(Error::Input(format!(
            "--n {n} disagrees with a domain of {} values",
            values.len()
        ))),
        (Some(values), _) => Domain::new(values),
        (None, Some(n)) => Domain::unit(n),
        (None, None) => Err(Error::Input("give --n or --domain".into())),
    }
}

fn parse_indices(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Input(format!("bad index {s:?}"))))
        .collect()
}

/// `{"coeffs": {"3": "1/1"}, "rhs": "3/1"}`; `n` may be given and must
/// then match the domain.
pub fn inequality_from_json(value: &Value, n: usize) -> Result<LinearInequality> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Input("inequality must be a JSON object".into()))?;
    if let Some(v) = obj.get("n") {
        if v.as_u64() != Some(n as u64) {
            return Err(Error::Input(format!("inequality n {v} does not match the domain size {n}")));
        }
    }
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Input("inequality needs a \"coeffs\" object".into()))?;
    let mut parsed = Vec::with_capacity(coeffs.len());
    for (k, v) in coeffs {
        let j: usize = k.trim().parse().map_err(|_| Error::Input(format!("bad index {k:?}")))?;
        parsed.push((j, parse_rational(&scalar_text(v)?)?));
    }
    let rhs = parse_rational(&scalar_text(
        obj.get("rhs")
            .ok_or_else(|| Error::Input("inequality needs \"rhs\"".into()))?,
    )?)?;
    LinearInequality::new(n, parsed, rhs)
}

pub fn inequality_to_json(ineq: &LinearInequality) -> Value {
    let coeffs: Map<String, Value> = ineq
        .coeffs()
        .iter()
        .map(|(j, a)| (j.to_string(), Value::String(format_rational(a))))
        .collect();
    json!({ "n": ineq.n(), "coeffs": coeffs, "rhs": format_rational(ineq.rhs()) })
}

fn rationals(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(|v| Value::String(format_rational(v))).collect())
}

fn j_circuit_json(jc: &JCircuit, domain: &Domain) -> Value {
    json!({
        "indices": jc.indices(),
        "positions": jc.positions(),
        "values": rationals(&jc.values(domain)),
    })
}

fn circuit_json(c: &Circuit, domain: &Domain) -> Value {
    json!({ "tour": c.tour(), "successors": c.successors(), "values": rationals(&c.values(domain)) })
}

fn cut_json(cut: &Cut) -> Value {
    let mut v = inequality_to_json(&cut.inequality);
    let obj = v.as_object_mut().expect("object");
    obj.insert("family".into(), json!(cut.family()));
    obj.insert("families".into(), json!(cut.families));
    obj.insert("lhs".into(), json!(format_rational(&cut.lhs)));
    obj.insert("violation".into(), json!(format_rational(&cut.violation)));
    obj.insert("theorem_scope_ok".into(), json!(cut.theorem_scope_ok));
    obj.insert("text".into(), json!(cut.inequality.to_string()));
    v
}

fn certificate_json(cert: &FacetCertificate, domain: &Domain) -> Value {
    let tight = match &cert.tight_points {
        TightPoints::JCircuits(v) => v.iter().map(|jc| j_circuit_json(jc, domain)).collect::<Vec<_>>(),
        TightPoints::Circuits(v) => v.iter().map(|c| circuit_json(c, domain)).collect(),
    };
    json!({
        "status": cert.status,
        "theorem_scope_ok": cert.theorem_scope_ok,
        "affine_rank_of_tight": cert.affine_rank_of_tight,
        "tight_source": cert.tight_source,
        "tight_points": tight,
        "undominated_witnesses": cert.undominated_witnesses.iter().map(|(jc, l)| {
            let mut v = j_circuit_json(jc, domain);
            v["lhs"] = json!(format_rational(l));
            v
        }).collect::<Vec<_>>(),
        "note": cert.note,
    })
}

fn show_values(values: &[Rational]) -> String {
    values.iter().map(display_rational).collect::<Vec<_>>().join(",")
}

fn execute(command: Command, err: &mut dyn Write) -> Result<Reply> {
    let reply = |common: &Common, json: Value, text: String| Reply {
        json,
        text,
        format: common.format,
        output: common.output.clone(),
        code: EXIT_OK,
    };
    match command {
        Command::Separate { common, point, families, fail_on_cut } => {
            let job = Job::new(&common)?;
            let point = parse_list(&job.required(&point, "point")?)?;
            let q = QueryPoint::new(job.domain.clone(), point)?;
            let result = match families {
                Families::All => separate_all(&q),
                Families::Permutation => separate_permutation(&q)?,
                Families::TwoTerm => separate_two_term(&q)?,
                Families::Hierarchy => separate_hierarchy(&q)?,
            };
            for note in &result.notes {
                let _ = writeln!(err, "note: {note}");
            }
            let json = Value::Array(result.cuts.iter().map(cut_json).collect());
            let text: String = result
                .cuts
                .iter()
                .map(|c| {
                    let tags: Vec<&str> = c.tags().iter().map(|t| t.name()).collect();
                    format!("{}    violation {}  [{}]\n", c.inequality, display_rational(&c.violation), tags.join(", "))
                })
                .collect();
            let mut r = reply(&common, json, text);
            if fail_on_cut && !result.cuts.is_empty() {
                r.code = EXIT_CUT_FOUND;
            }
            Ok(r)
        }
        Command::Verify { common, ineq, bruteforce } => {
            let job = Job::new(&common)?;
            let ineq = job.inequality(&ineq)?;
            let v = check_validity(&job.domain, &ineq, &job.caps)?;
            let d = &job.domain;
            let mut json = json!({
                "inequality": inequality_to_json(&ineq),
                "valid": v.valid,
                "source": v.source,
                "witness": v.witness.as_ref().map(|(jc, l)| {
                    let mut w = j_circuit_json(jc, d);
                    w["lhs"] = json!(format_rational(l));
                    w
                }),
                "undominated": v.undominated.iter().map(|(jc, l)| {
                    let mut w = j_circuit_json(jc, d);
                    w["lhs"] = json!(format_rational(l));
                    w
                }).collect::<Vec<_>>(),
            });
            let mut text = format!("{ineq}\nvalid: {}\n", v.valid);
            if let Some((jc, l)) = &v.witness {
                text += &format!("witness: {} with lhs {}\n", jc, display_rational(l));
            }
            if bruteforce {
                let all = is_valid_bruteforce(d, &ineq, &job.caps)?;
                json["valid_bruteforce"] = json!(all);
                text += &format!("valid on every circuit: {all}\n");
            }
            Ok(reply(&common, json, text))
        }
        Command::Certify { common, ineq, bruteforce } => {
            let job = Job::new(&common)?;
            let ineq = job.inequality(&ineq)?;
            let cert = certify_facet(&job.domain, &ineq, &job.caps)?;
            let mut json = certificate_json(&cert, &job.domain);
            json["inequality"] = inequality_to_json(&ineq);
            let mut text = format!(
                "{ineq}\nstatus: {}\naffine rank of tight points: {}\ntheorem scope: {}\n",
                json["status"].as_str().unwrap_or_default(),
                cert.affine_rank_of_tight,
                cert.theorem_scope_ok
            );
            if let Some(note) = &cert.note {
                text += &format!("note: {note}\n");
            }
            if bruteforce {
                let facet = is_facet_bruteforce(&job.domain, &ineq, &job.caps)?;
                json["facet_bruteforce"] = json!(facet);
                text += &format!("facet by brute force: {facet}\n");
            }
            Ok(reply(&common, json, text))
        }
        Command::Undominated { common, signs } => {
            let job = Job::new(&common)?;
            let (mut j, signs) = job.signs(&signs)?;
            j.sort_unstable();
            let set = undominated_j_circuits(&job.domain, &j, &signs, &job.caps)?;
            let json = json!({
                "J": j,
                "plus": signs.plus(),
                "minus": signs.minus(),
                "count": set.len(),
                "j_circuits": set.iter().map(|jc| j_circuit_json(jc, &job.domain)).collect::<Vec<_>>(),
            });
            let text = set.iter().map(|jc| format!("{jc}\n")).collect();
            Ok(reply(&common, json, text))
        }
        Command::ImpliedOrdering { common, signs, xbar } => {
            let job = Job::new(&common)?;
            let (j, signs) = job.signs(&signs)?;
            let values = parse_list(&job.required(&xbar, "xbar")?)?;
            if values.len() != j.len() {
                return Err(Error::Input(format!("--xbar has {} values for |J| = {}", values.len(), j.len())));
            }
            let by_index: BTreeMap<usize, Rational> = j.iter().copied().zip(values).collect();
            let mut entries = Vec::with_capacity(by_index.len());
            for (i, v) in &by_index {
                let k = job
                    .domain
                    .position(v)
                    .ok_or_else(|| Error::Input(format!("{} is not a domain value", display_rational(v))))?;
                entries.push((*i, k));
            }
            let jc = JCircuit::new(job.domain.n(), entries)?;
            let trace = implied_ordering(&job.domain, &jc, &signs)?;
            let pos = |k: Option<usize>| k.map(|k| format_rational(job.domain.value(k)));
            let steps: Vec<Value> = trace
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "step": s.step, "r": s.r, "s": s.s, "i_r": s.i_r, "j_s": s.j_s,
                        "v_min": pos(s.v_min), "v_max": pos(s.v_max),
                        "chosen": s.chosen, "assigned": format_rational(job.domain.value(s.assigned)),
                    })
                })
                .collect();
            let json = json!({
                "ordering": trace.ordering,
                "greedy_result": j_circuit_json(&trace.greedy_result, &job.domain),
                "matches_input": trace.matches_input,
                "steps": steps,
            });
            let ordering: Vec<String> = trace.ordering.iter().map(usize::to_string).collect();
            let text = format!(
                "ordering: ({})\ngreedy result: {}\nmatches input: {}\n",
                ordering.join(","),
                trace.greedy_result,
                trace.matches_input
            );
            Ok(reply(&common, json, text))
        }
        Command::Dimension { common } => {
            let job = Job::new(&common)?;
            let dim = polytope_dimension(&job.domain, &job.caps)?;
            Ok(reply(&common, json!({ "dimension": dim }), format!("{dim}\n")))
        }
        Command::Enumerate { common, j } => {
            let job = Job::new(&common)?;
            let d = &job.domain;
            match job.indices(&j, "J")? {
                Some(mut j) => {
                    j.sort_unstable();
                    let all = enumerate_j_circuits(d, &j, &job.caps)?;
                    let json = json!({
                        "J": j,
                        "count": all.len(),
                        "j_circuits": all.iter().map(|jc| j_circuit_json(jc, d)).collect::<Vec<_>>(),
                    });
                    let text = all.iter().map(|jc| format!("{jc}\n")).collect();
                    Ok(reply(&common, json, text))
                }
                None => {
                    let all = enumerate_circuits(d, &job.caps)?;
                    let json = json!({
                        "count": all.len(),
                        "circuits": all.iter().map(|c| circuit_json(c, d)).collect::<Vec<_>>(),
                    });
                    let text = all.iter().map(|c| format!("{}\n", show_values(&c.values(d)))).collect();
                    Ok(reply(&common, json, text))
                }
            }
        }
        Command::MapArc { common, ineq } => {
            let job = Job::new(&common)?;
            let ineq = job.inequality(&ineq)?;
            let arc = map_to_arc_model(&job.domain, &ineq)?;
            let json = json!({
                "n": arc.n(),
                "coeffs": arc.coeffs.iter().map(|row| rationals(row)).collect::<Vec<_>>(),
                "rhs": format_rational(&arc.rhs),
            });
            let mut text: String = arc.coeffs.iter().map(|row| show_values(row) + "\n").collect();
            text += &format!(">= {}\n", display_rational(&arc.rhs));
            Ok(reply(&common, json, text))
        }
    }
}
