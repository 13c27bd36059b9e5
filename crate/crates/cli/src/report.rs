//! JSON report shapes. Field order is fixed by declaration order.

use condorcet_committees::gehrlein::PairWitness;
use condorcet_committees::io::serialize_profile;
use condorcet_committees::{DeviationWitness, DomainReport, Election, Error};
use serde::Serialize;
use sha2::{Digest as _, Sha256};

/// Identifies the profile a report is about: SHA-256 of its canonical
/// serialisation.
#[derive(Debug, Clone, Serialize)]
pub struct Digest {
    pub m: usize,
    pub n: usize,
    pub sha256: String,
}

impl Digest {
    pub fn of(e: &Election) -> Self {
        let hash = Sha256::digest(serialize_profile(e).as_bytes());
        Digest {
            m: e.num_candidates(),
            n: e.num_voters(),
            sha256: hash.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Document {
    pub command: &'static str,
    pub election: Option<Digest>,
    #[serde(flatten)]
    pub(crate) body: Body,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Document {
    pub(crate) fn new(command: &'static str, election: Option<Digest>, body: Body) -> Self {
        Document {
            command,
            election,
            body,
            timing_ms: None,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub(crate) enum Body {
    Check(CheckBody),
    Find(FindBody),
    Detect(DetectBody),
    Construct(ConstructBody),
    Generate(GenerateBody),
}

#[derive(Debug, Serialize)]
pub(crate) struct LevelQuota {
    pub level: usize,
    pub quota: usize,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub(crate) enum Witness {
    Pair {
        outsider: String,
        member: String,
        outsider_support: u32,
        member_support: u32,
    },
    Group {
        level: usize,
        candidates: Vec<String>,
        voters: Vec<usize>,
    },
}

impl Witness {
    pub fn pair(e: &Election, w: &PairWitness) -> Self {
        Witness::Pair {
            outsider: e.label(w.outsider).to_string(),
            member: e.label(w.member).to_string(),
            outsider_support: w.outsider_support,
            member_support: w.member_support,
        }
    }

    pub fn group(e: &Election, w: &DeviationWitness) -> Self {
        Witness::Group {
            level: w.level,
            candidates: e.labels_of(&w.candidates),
            voters: w.voters.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub(crate) struct CheckBody {
    pub notion: &'static str,
    pub committee: Vec<String>,
    pub quota: Vec<LevelQuota>,
    pub verdict: &'static str,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Serialize)]
pub(crate) struct FindBody {
    pub notion: &'static str,
    pub k: usize,
    pub quota: Option<String>,
    pub count: usize,
    pub committees: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub(crate) struct SingleCrossingPart {
    pub holds_as_given: bool,
    pub witness_order: Option<Vec<usize>>,
}

#[derive(Debug, Serialize)]
pub(crate) struct SinglePeakedPart {
    pub axis: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub(crate) struct PartyPart {
    pub candidates: Vec<String>,
    pub voters: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub(crate) struct DetectBody {
    pub k: Option<usize>,
    pub single_crossing: SingleCrossingPart,
    pub single_peaked: SinglePeakedPart,
    pub party_list: Option<Vec<PartyPart>>,
}

impl DetectBody {
    pub fn new(e: &Election, k: Option<usize>, r: &DomainReport) -> Self {
        DetectBody {
            k,
            single_crossing: SingleCrossingPart {
                holds_as_given: r.single_crossing.holds_as_given,
                witness_order: r.single_crossing.witness_order.clone(),
            },
            single_peaked: SinglePeakedPart {
                axis: r.single_peaked_axis.as_ref().map(|a| e.labels_of(a)),
            },
            party_list: r.party_list.as_ref().map(|list| {
                list.parties
                    .iter()
                    .map(|p| PartyPart {
                        candidates: e.labels_of(&p.candidates),
                        voters: p.voters.clone(),
                    })
                    .collect()
            }),
        }
    }
}

#[derive(Debug, Serialize)]
pub(crate) struct ConstructBody {
    pub method: String,
    pub k: usize,
    pub spacing: Option<usize>,
    pub axis: Option<Vec<String>>,
    pub committee: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub(crate) struct GenerateBody {
    pub family: String,
    pub out: String,
    pub k: Option<usize>,
    pub committee: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub(crate) struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimated: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
}

#[derive(Debug, Serialize)]
pub(crate) struct ErrorDocument {
    pub command: &'static str,
    pub error: ErrorBody,
}

impl ErrorDocument {
    pub fn usage(message: String) -> Self {
        ErrorDocument {
            command: "",
            error: ErrorBody {
                kind: "usage",
                message,
                estimated: None,
                budget: None,
                line: None,
            },
        }
    }

    pub fn from_error(command: &'static str, err: &Error) -> Self {
        let mut body = ErrorBody {
            kind: error_kind(err),
            message: err.to_string(),
            estimated: None,
            budget: None,
            line: None,
        };
        match err {
            Error::InstanceTooLarge { estimated, budget } => {
                body.estimated = Some(*estimated);
                body.budget = Some(*budget);
            }
            Error::Parse { line, .. } => body.line = Some(*line),
            _ => {}
        }
        ErrorDocument { command, error: body }
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::DuplicateCandidate(_) => "duplicate_candidate",
        Error::EmptyElection => "empty_election",
        Error::IncompleteRanking { .. } => "incomplete_ranking",
        Error::UnknownCandidate(_) => "unknown_candidate",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::InvalidCommittee(_) => "invalid_committee",
        Error::SizeMismatch { .. } => "size_mismatch",
        Error::InvalidQuota(_) => "invalid_quota",
        Error::InstanceTooLarge { .. } => "instance_too_large",
        Error::EmptyComplement => "empty_complement",
        Error::SpacingOutOfRange { .. } => "spacing_out_of_range",
        Error::NotSingleCrossing => "not_single_crossing",
        Error::NotSinglePeaked => "not_single_peaked",
        Error::NotPartyList(_) => "not_party_list",
        Error::UnsupportedWeight { .. } => "unsupported_weight",
        Error::CyclicPrecedence => "cyclic_precedence",
        Error::NotThreeRegular { .. } => "not_three_regular",
        Error::BoundOutOfRange { .. } => "bound_out_of_range",
        Error::PreconditionViolated(_) => "precondition_violated",
        Error::InvalidDigraph(_) => "invalid_digraph",
        Error::Parse { .. } => "parse",
        Error::Io(_) => "io",
    }
}
