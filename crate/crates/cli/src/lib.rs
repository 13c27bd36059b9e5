//! Command-line front end. Every subcommand produces a JSON report on
//! standard output; the exit code is 0 for stable / found, 1 for unstable /
//! not found and 2 for errors.

mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use condorcet_committees::exec::{binomial, filter_combinations};
use condorcet_committees::generators::cubic_graph;
use condorcet_committees::io::{parse_graph, parse_profile, write_profile};
use condorcet_committees::*;
use num_rational::Ratio;

pub use report::{Digest, Document};
use report::*;

/// Environment variable overriding the default search budget.
pub const BUDGET_ENV: &str = "CCOM_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "ccom", version, about = "Condorcet-consistent committee analysis")]
pub struct Cli {
    /// Add wall-clock timing to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Run searches on a single thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one committee against a stability notion.
    Check {
        #[arg(long)]
        election: PathBuf,
        /// Comma-separated candidate labels.
        #[arg(long, value_delimiter = ',', required = true)]
        committee: Vec<String>,
        #[arg(long, value_enum)]
        notion: NotionArg,
        /// hare, droop, hb or exact:V (V an integer or a fraction a/b).
        #[arg(long, default_value = "droop")]
        quota: String,
        /// Highest level for the Dummett check; defaults to the committee size.
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Search for stable committees of a given size.
    Find {
        #[arg(long)]
        election: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum)]
        notion: NotionArg,
        #[arg(long, default_value = "droop")]
        quota: String,
        /// Report every committee instead of the first one.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Recognise single-crossing, single-peaked and party-list structure.
    Detect {
        #[arg(long)]
        election: PathBuf,
        /// Committee size for party-list recognition.
        #[arg(short)]
        k: Option<usize>,
    },
    /// Build a committee with one of the constructive rules.
    Construct {
        #[arg(long)]
        election: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum)]
        method: Method,
        /// Voter spacing for the uniform rules; defaults to the Droop quota.
        #[arg(long)]
        spacing: Option<usize>,
        /// Comma-separated axis for sp-uniform; recognised when omitted.
        #[arg(long, value_delimiter = ',')]
        axis: Option<Vec<String>>,
    },
    /// Write an instance to a profile file.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        out: PathBuf,
        /// Size parameter of the first worked example.
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Graph file: vertex count, then one-based `u,v` edges (arcs for
        /// mcgarvey). For vc3, one of k4, prism, k33, petersen also works.
        #[arg(long)]
        graph: Option<String>,
        /// Item weights for pok, comma-separated.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<usize>,
        /// Precedence arcs for pok, e.g. 1>2,1>3 (one-based items).
        #[arg(long, value_delimiter = ',')]
        arcs: Vec<String>,
        /// Target weight (pok) or cover size (vc3).
        #[arg(long)]
        t: Option<usize>,
        /// One-based vertex colours for mcc, comma-separated.
        #[arg(long, value_delimiter = ',')]
        coloring: Vec<usize>,
        #[arg(long, value_enum, default_value = "ic")]
        model: ModelArg,
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[arg(long, default_value_t = 9)]
        n: usize,
        /// Party size bound for the party-list model.
        #[arg(short, default_value_t = 2)]
        k: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NotionArg {
    WeakGehrlein,
    StrongGehrlein,
    Local,
    FullLocal,
    SolidCoalitions,
    Dummett,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Centrist,
    ScUniform,
    SpUniform,
    Party,
    StrongNed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Example1,
    Fig1,
    Example3,
    Example4,
    Mcgarvey,
    Pok,
    Vc3,
    Mcc,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    #[value(alias = "impartial-culture")]
    Ic,
    #[value(alias = "single-peaked")]
    Sp,
    #[value(alias = "single-crossing")]
    Sc,
    #[value(alias = "party-list")]
    Party,
}

impl NotionArg {
    fn name(self) -> &'static str {
        match self {
            NotionArg::WeakGehrlein => "weak-gehrlein",
            NotionArg::StrongGehrlein => "strong-gehrlein",
            NotionArg::Local => "local",
            NotionArg::FullLocal => "full-local",
            NotionArg::SolidCoalitions => "solid-coalitions",
            NotionArg::Dummett => "dummett",
        }
    }
}

/// Parses arguments and runs the command. Returns the exit code and the
/// JSON report.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => (0, e.to_string()),
            _ => (2, render(&ErrorDocument::usage(e.to_string()))),
        },
    }
}

pub fn dispatch(cli: &Cli) -> (i32, String) {
    let start = Instant::now();
    let name = command_name(&cli.command);
    match execute(cli) {
        Ok((code, mut doc)) => {
            if cli.timing {
                doc.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            (code, render(&doc))
        }
        Err(err) => (2, render(&ErrorDocument::from_error(name, &err))),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Find { .. } => "find",
        Command::Detect { .. } => "detect",
        Command::Construct { .. } => "construct",
        Command::Generate { .. } => "generate",
    }
}

fn render<T: serde::Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("reports serialise")
}

pub fn parse_quota(text: &str) -> Result<QuotaSpec> {
    match text.to_ascii_lowercase().as_str() {
        "hare" => Ok(QuotaSpec::Hare),
        "droop" => Ok(QuotaSpec::Droop),
        "hb" | "hagenbach-bischoff" => Ok(QuotaSpec::HagenbachBischoff),
        other => {
            let value = other
                .strip_prefix("exact:")
                .ok_or_else(|| Error::InvalidQuota(format!("unknown quota `{text}`")))?;
            let ratio: Ratio<i64> = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidQuota(format!("`{value}` is not an integer or fraction")))?;
            Ok(QuotaSpec::Exact(ratio))
        }
    }
}

fn budget(flag: Option<u64>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::PreconditionViolated(format!("{BUDGET_ENV}=`{v}` is not an integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn options(cli: &Cli, flag: Option<u64>) -> Result<SearchOptions> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    Ok(SearchOptions::default().with_budget(budget(flag)?).with_exec(exec))
}

fn load(path: &Path) -> Result<(Election, Digest)> {
    let e = parse_profile(path)?;
    let digest = Digest::of(&e);
    Ok((e, digest))
}

fn execute(cli: &Cli) -> Result<(i32, Document)> {
    match &cli.command {
        Command::Check {
            election,
            committee,
            notion,
            quota,
            level,
            budget,
        } => {
            let (e, digest) = load(election)?;
            let s = e.committee_from_labels(committee)?;
            let body = check(&e, &s, *notion, parse_quota(quota)?, *level, &options(cli, *budget)?)?;
            let code = if body.verdict == "stable" { 0 } else { 1 };
            Ok((code, Document::new("check", Some(digest), Body::Check(body))))
        }
        Command::Find {
            election,
            k,
            notion,
            quota,
            all,
            budget,
        } => {
            let (e, digest) = load(election)?;
            let spec = parse_quota(quota)?;
            let mut found = find(&e, *k, *notion, spec, &options(cli, *budget)?)?;
            let total = found.len();
            if !*all {
                found.truncate(1);
            }
            let body = FindBody {
                notion: notion.name(),
                k: *k,
                quota: uses_quota(*notion).then(|| quota.to_ascii_lowercase()),
                count: total,
                committees: found.iter().map(|c| c.labels(&e)).collect(),
            };
            let code = if total > 0 { 0 } else { 1 };
            Ok((code, Document::new("find", Some(digest), Body::Find(body))))
        }
        Command::Detect { election, k } => {
            let (e, digest) = load(election)?;
            let report = detect_domains(&e, *k);
            let body = DetectBody::new(&e, *k, &report);
            Ok((0, Document::new("detect", Some(digest), Body::Detect(body))))
        }
        Command::Construct {
            election,
            k,
            method,
            spacing,
            axis,
        } => {
            let (e, digest) = load(election)?;
            let (committee, axis) = construct(&e, *k, *method, *spacing, axis.as_deref())?;
            let body = ConstructBody {
                method: method.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
                k: *k,
                spacing: *spacing,
                axis: axis.map(|a| e.labels_of(&a)),
                committee: committee.as_ref().map(|c| c.labels(&e)),
            };
            let code = if committee.is_some() { 0 } else { 1 };
            Ok((code, Document::new("construct", Some(digest), Body::Construct(body))))
        }
        Command::Generate { family, out, .. } => {
            let (e, k, committee) = generate(&cli.command)?;
            write_profile(&e, out)?;
            let body = GenerateBody {
                family: family.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
                out: out.display().to_string(),
                k,
                committee: committee.map(|c| c.labels(&e)),
            };
            Ok((0, Document::new("generate", Some(Digest::of(&e)), Body::Generate(body))))
        }
    }
}

fn uses_quota(notion: NotionArg) -> bool {
    notion == NotionArg::Local
}

fn check(
    e: &Election,
    s: &Committee,
    notion: NotionArg,
    spec: QuotaSpec,
    level: Option<usize>,
    opts: &SearchOptions,
) -> Result<CheckBody> {
    let mut body = CheckBody {
        notion: notion.name(),
        committee: s.labels(e),
        quota: Vec::new(),
        verdict: "stable",
        witnesses: Vec::new(),
    };
    let report = match notion {
        NotionArg::WeakGehrlein | NotionArg::StrongGehrlein => {
            let v = check_gehrlein(e, s);
            let (ok, witness) = if notion == NotionArg::WeakGehrlein {
                (v.weak, v.weak_witness)
            } else {
                (v.strong, v.strong_witness)
            };
            if !ok {
                body.verdict = "unstable";
            }
            body.witnesses.extend(witness.map(|w| Witness::pair(e, &w)));
            return Ok(body);
        }
        NotionArg::Local => check_local(e, s, spec)?,
        NotionArg::FullLocal => check_full_local(e, s, opts)?,
        NotionArg::SolidCoalitions => check_solid_coalitions(e, s)?,
        NotionArg::Dummett => check_dummett(e, s, level.unwrap_or(s.len()))?,
    };
    if !report.stable {
        body.verdict = "unstable";
    }
    body.quota = report.quotas.iter().map(|&(level, quota)| LevelQuota { level, quota }).collect();
    body.witnesses = report.violations.iter().map(|w| Witness::group(e, w)).collect();
    Ok(body)
}

fn find(e: &Election, k: usize, notion: NotionArg, spec: QuotaSpec, opts: &SearchOptions) -> Result<Vec<Committee>> {
    match notion {
        NotionArg::WeakGehrlein => find_weak_committees(e, k, opts),
        NotionArg::StrongGehrlein => Ok(find_strong_committee(e, k)?.into_iter().collect()),
        NotionArg::Local => find_locally_stable(e, k, spec, opts),
        NotionArg::FullLocal => find_fully_locally_stable(e, k, opts),
        NotionArg::SolidCoalitions | NotionArg::Dummett => {
            let m = e.num_candidates();
            if k == 0 || k > m {
                return Err(Error::IndexOutOfRange {
                    what: "committee size",
                    index: k,
                    limit: m,
                });
            }
            let estimated = binomial(m, k);
            if estimated > opts.budget as u128 {
                return Err(Error::InstanceTooLarge {
                    estimated,
                    budget: opts.budget,
                });
            }
            let all: Vec<usize> = (0..m).collect();
            let keep = |_: &mut (), set: &[usize]| {
                let s = Committee::new(set.to_vec(), m).expect("valid subset");
                let report = if notion == NotionArg::Dummett {
                    check_dummett(e, &s, k)
                } else {
                    check_solid_coalitions(e, &s)
                };
                report.map(|r| r.stable).unwrap_or(false)
            };
            Ok(filter_combinations(&all, k, opts.exec, || (), keep)
                .into_iter()
                .map(|set| Committee::new(set, m).expect("valid subset"))
                .collect())
        }
    }
}

fn construct(
    e: &Election,
    k: usize,
    method: Method,
    spacing: Option<usize>,
    axis: Option<&[String]>,
) -> Result<(Option<Committee>, Option<Vec<Candidate>>)> {
    Ok(match method {
        Method::Centrist => (centrist_committee(e, k)?, None),
        Method::ScUniform => (Some(sc_uniform_committee(e, k, spacing)?), None),
        Method::SpUniform => {
            let axis = match axis {
                Some(labels) => labels
                    .iter()
                    .map(|l| e.candidate_index(l).ok_or_else(|| Error::UnknownCandidate(l.clone())))
                    .collect::<Result<Vec<_>>>()?,
                None => check_single_peaked(e, None).ok_or(Error::NotSinglePeaked)?,
            };
            (Some(sp_uniform_committee(e, k, &axis, spacing)?), Some(axis))
        }
        Method::Party => (Some(party_proportional_committee(e, k)?), None),
        Method::StrongNed => (Some(strong_ned(e, k)?), None),
    })
}

fn parse_arc(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::PreconditionViolated(format!("arc `{text}` is not of the form i>j"));
    let (a, b) = text.split_once('>').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a - 1, b - 1))
}

fn graph_arg(graph: &Option<String>, named: bool) -> Result<Graph> {
    let spec = graph
        .as_deref()
        .ok_or_else(|| Error::PreconditionViolated("--graph is required for this family".into()))?;
    if named {
        if let Some(g) = cubic_graph(spec) {
            return Ok(g);
        }
    }
    parse_graph(spec)
}

fn generate(command: &Command) -> Result<(Election, Option<usize>, Option<Committee>)> {
    let Command::Generate {
        family,
        d,
        seed,
        graph,
        weights,
        arcs,
        t,
        coloring,
        model,
        m,
        n,
        k,
        ..
    } = command
    else {
        unreachable!("generate called for another command");
    };
    let need_t = || t.ok_or_else(|| Error::PreconditionViolated("--t is required for this family".into()));
    Ok(match family {
        Family::Example1 => {
            let (e, k) = gen_example1(*d)?;
            (e, Some(k), None)
        }
        Family::Fig1 => (gen_fig1(), None, None),
        Family::Example3 => (gen_example3(), None, None),
        Family::Example4 => {
            let (e, k) = gen_example4();
            (e, Some(k), None)
        }
        Family::Mcgarvey => {
            let g = graph_arg(graph, false)?;
            (mcgarvey_election(&TargetDigraph::new(g.vertices, g.edges)?), None, None)
        }
        Family::Pok => {
            let inst = PokInstance {
                weights: weights.clone(),
                arcs: arcs.iter().map(|a| parse_arc(a)).collect::<Result<_>>()?,
                target: need_t()?,
            };
            let (e, k) = reduce_pok(&inst)?;
            (e, Some(k), None)
        }
        Family::Vc3 => {
            let inst = Vc3Instance {
                graph: graph_arg(graph, true)?,
                t: need_t()?,
            };
            let (e, k) = reduce_vc3(&inst)?;
            (e, Some(k), None)
        }
        Family::Mcc => {
            if coloring.contains(&0) {
                return Err(Error::PreconditionViolated("colours are one-based".into()));
            }
            let inst = MccInstance {
                graph: graph_arg(graph, false)?,
                colors: coloring.iter().copied().max().unwrap_or(0),
                coloring: coloring.iter().map(|c| c - 1).collect(),
            };
            let (e, s) = reduce_mcc(&inst)?;
            let k = s.len();
            (e, Some(k), Some(s))
        }
        Family::Random => {
            let model = match model {
                ModelArg::Ic => Model::ImpartialCulture,
                ModelArg::Sp => Model::SinglePeaked,
                ModelArg::Sc => Model::SingleCrossing,
                ModelArg::Party => Model::PartyList { k: *k },
            };
            (random_election(model, *m, *n, *seed)?, None, None)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quota_names() {
        assert_eq!(parse_quota("Droop").unwrap(), QuotaSpec::Droop);
        assert_eq!(parse_quota("hare").unwrap(), QuotaSpec::Hare);
        assert_eq!(parse_quota("hb").unwrap(), QuotaSpec::HagenbachBischoff);
        assert_eq!(parse_quota("exact:7/2").unwrap(), QuotaSpec::Exact(Ratio::new(7, 2)));
        assert_eq!(parse_quota("exact:3").unwrap(), QuotaSpec::Exact(Ratio::from_integer(3)));
        assert!(matches!(parse_quota("imperiali"), Err(Error::InvalidQuota(_))));
        assert!(matches!(parse_quota("exact:x"), Err(Error::InvalidQuota(_))));
    }

    #[test]
    fn arcs() {
        assert_eq!(parse_arc("1>2").unwrap(), (0, 1));
        assert!(parse_arc("0>2").is_err());
        assert!(parse_arc("12").is_err());
    }
}
