//! Condorcet-style committee notions for multiwinner elections.
//!
//! The crate verifies and searches for weakly and strongly Gehrlein-stable
//! committees, locally stable and fully locally stable committees, checks the
//! solid coalitions property and Dummett's proportionality, recognises
//! single-crossing, single-peaked and party-list profiles, and generates test
//! instances (McGarvey realisations, worked examples and hardness reductions).
//!
//! ```
//! use condorcet_committees::{Election, QuotaSpec, check_local, find_strong_committee};
//!
//! let mut ballots = vec![vec!["a", "b", "c"]; 3];
//! ballots.extend(vec![vec!["c", "b", "a"]; 4]);
//! let e = Election::from_labels(["a", "b", "c"], ballots).unwrap();
//!
//! let strong = find_strong_committee(&e, 2).unwrap().unwrap();
//! assert_eq!(strong.labels(&e), ["b", "c"]);
//! assert!(!check_local(&e, &strong, QuotaSpec::Droop).unwrap().stable);
//! ```

pub mod domains;
pub mod election;
pub mod error;
pub mod exec;
pub mod gehrlein;
pub mod generators;
pub mod io;
pub mod local;
pub mod majority;

pub use domains::{
    check_single_crossing, check_single_peaked, detect_domains, detect_party_list,
    party_proportional_committee, sc_uniform_committee, sp_uniform_committee, DomainReport,
    Party, PartyList, SingleCrossingReport,
};
pub use election::{quota_value, Candidate, Committee, DeviationWitness, Election, QuotaSpec};
pub use error::{Error, Result};
pub use exec::{Exec, SearchOptions, DEFAULT_BUDGET};
pub use gehrlein::{
    centrist_committee, check_gehrlein, find_strong_committee, find_weak_committees, strong_ned,
    GehrleinVerdict, PairWitness,
};
pub use generators::{
    gen_example1, gen_example3, gen_example4, gen_fig1, mcgarvey_election, random_election,
    reduce_mcc, reduce_pok, reduce_vc3, Graph, MccInstance, Model, PokInstance, TargetDigraph,
    Vc3Instance,
};
pub use io::{parse_profile, parse_profile_str, serialize_profile};
pub use local::{
    check_dummett, check_full_local, check_local, check_solid_coalitions,
    find_fully_locally_stable, find_locally_stable, theta_threshold, Notion, StabilityReport,
    ThetaThreshold,
};
pub use majority::{
    condensation_chain, condorcet_winners, majority_order, tally_pairwise, CondensationChain,
    CondorcetWinners, GraphSource, MajorityGraphs, PairwiseTally,
};
