//! Command dispatch. Each command builds an `AnalysisReport`; `--assert-safe`
//! turns a detected paradox or failed structure check into exit code 1.

use mivote::condorcet::{find_condorcet, is_condorcet, CondorcetAnswer};
use mivote::majority::{detect_anscombe, detect_ostrogorski, iwm_proposals, support_tally};
use mivote::representation::{
    best_supported_oracle, generate_big_ell, generate_small_ell, partition_proposal,
    relevant_topics, wagner_check,
};
use mivote::single_crossing::{find_forbidden_sc, profile_to_orders, recognize_single_crossing};
use mivote::structure::{enumerate_orbit, find_forbidden_fast, recognize_ssw};
use mivote::{
    average_weight_vector, format_rational, parse_rational, topic_majority, Error as CoreError,
    Proposal, VotingInstance,
};
use serde_json::{json, Value};

use crate::format::{parse_instance, parse_orders, sniff_format, write_miv, ParseError};
use crate::report::{summary, AnalysisReport};

/// Process exit codes as documented: 2 = input error, 3 = size cap exceeded.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    CapExceeded(String),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Input(_) => 2,
            RunError::CapExceeded(_) => 3,
        }
    }
}

impl From<ParseError> for RunError {
    fn from(e: ParseError) -> Self {
        RunError::Input(e.to_string())
    }
}

impl From<CoreError> for RunError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SizeCapExceeded { .. } => RunError::CapExceeded(e.to_string()),
            other => RunError::Input(other.to_string()),
        }
    }
}

/// A finished analysis: the report plus whether `--assert-safe` should fail.
pub struct Outcome {
    pub report: AnalysisReport,
    pub violation: bool,
}

fn prop_str(p: &Proposal) -> String {
    p.to_string()
}

fn opt_prop(p: &Option<Proposal>) -> Value {
    match p {
        Some(p) => Value::String(prop_str(p)),
        None => Value::Null,
    }
}

/// Parses a proposal argument: comma- or space-separated {+, -, +1, -1}, or a
/// compact run like `+-+`.
pub fn parse_proposal_arg(s: &str, t: usize) -> Result<Proposal, RunError> {
    let tokens: Vec<&str> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|tok| !tok.is_empty())
        .collect();
    let signs: Vec<i8> = if tokens.len() == 1 && tokens[0].len() > 1 && t != 1 {
        tokens[0]
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(RunError::Input(format!("bad opinion {other:?} in proposal"))),
            })
            .collect::<Result<_, _>>()?
    } else {
        tokens
            .iter()
            .map(|tok| match *tok {
                "+" | "+1" => Ok(1),
                "-" | "-1" => Ok(-1),
                other => Err(RunError::Input(format!("bad opinion token {other:?}"))),
            })
            .collect::<Result<_, _>>()?
    };
    if signs.len() != t {
        return Err(RunError::Input(format!(
            "proposal has {} topics, instance has {t}",
            signs.len()
        )));
    }
    Ok(Proposal::from_signs(&signs).expect("signs are ±1"))
}

pub fn cmd_majority(text: &str) -> Result<Outcome, RunError> {
    let inst = parse_instance(text)?;
    let mut report = AnalysisReport::new("majority", Some(summary(&inst)));
    let majorities: Vec<String> = (0..inst.t())
        .map(|j| Ok(format_rational(&topic_majority(&inst, j)?)))
        .collect::<Result<_, CoreError>>()?;
    let iwm = iwm_proposals(&inst)?;
    report.set("topic_majorities", majorities);
    report.set("iwm_canonical", prop_str(&iwm.canonical));
    report.set("iwm_count", iwm.proposals.len());
    report.set(
        "tied_topics",
        iwm.tied_topics.iter().map(|&j| j as u64).collect::<Vec<_>>(),
    );
    let tally = support_tally(&inst, &iwm.canonical)?;
    report.set(
        "canonical_support",
        json!({
            "supporters": tally.supporters,
            "opposers": tally.opposers,
            "indifferent": tally.indifferent,
        }),
    );
    Ok(Outcome { report, violation: false })
}

pub fn cmd_paradox(text: &str) -> Result<Outcome, RunError> {
    let inst = parse_instance(text)?;
    let mut report = AnalysisReport::new("paradox", Some(summary(&inst)));
    let anscombe = detect_anscombe(&inst)?;
    let ostro = detect_ostrogorski(&inst)?;
    let winner = find_condorcet(&inst)?;
    report.set("anscombe", anscombe.occurs);
    report.set("anscombe_witness", opt_prop(&anscombe.witness_iwm));
    report.set("ostrogorski", ostro.occurs);
    report.set("ostrogorski_witness", opt_prop(&ostro.witness_iwm));
    report.set("defeater", opt_prop(&ostro.defeater));
    report.set("condorcet_winner", opt_prop(&winner));
    if let (Some(w), Some(d)) = (&anscombe.witness_iwm, &ostro.defeater) {
        if *d == w.complement() {
            let tally = support_tally(&inst, d)?;
            report.set(
                "complement_tally",
                format!("{} vs {}", tally.supporters, tally.opposers),
            );
        }
    }
    let violation = anscombe.occurs || ostro.occurs;
    Ok(Outcome { report, violation })
}

pub fn cmd_condorcet(text: &str, check: Option<&str>) -> Result<Outcome, RunError> {
    let inst = parse_instance(text)?;
    let mut report = AnalysisReport::new("condorcet", Some(summary(&inst)));
    let violation = match check {
        Some(arg) => {
            let p = parse_proposal_arg(arg, inst.t())?;
            report.set("proposal", prop_str(&p));
            match is_condorcet(&inst, &p)? {
                CondorcetAnswer::Yes => {
                    report.set("condorcet_winner", true);
                    false
                }
                CondorcetAnswer::No { defeater } => {
                    report.set("condorcet_winner", false);
                    report.set("defeater", prop_str(&defeater));
                    true
                }
            }
        }
        None => {
            let winner = find_condorcet(&inst)?;
            report.set("winner", opt_prop(&winner));
            winner.is_none()
        }
    };
    Ok(Outcome { report, violation })
}

pub fn cmd_ssw(text: &str) -> Result<Outcome, RunError> {
    let inst = parse_instance(text)?;
    let profile = &inst.profile;
    let mut report = AnalysisReport::new("ssw", Some(summary(&inst)));
    match recognize_ssw(profile) {
        Some(pres) => {
            report.set("single_switch", true);
            report.set(
                "order",
                pres.column_order.iter().map(|&j| j as u64).collect::<Vec<_>>(),
            );
            let mask: String = pres
                .flips
                .iter()
                .map(|&f| if f { '1' } else { '0' })
                .collect();
            report.set("flip_mask", mask);
            let orbit = enumerate_orbit(&pres, profile)?;
            report.set("orbit_size", orbit.presentations.len());
            Ok(Outcome { report, violation: false })
        }
        None => {
            report.set("single_switch", false);
            let witness = find_forbidden_fast(profile)?;
            report.set(
                "witness_rows",
                witness.rows.iter().map(|&i| i as u64).collect::<Vec<_>>(),
            );
            report.set(
                "witness_cols",
                witness.cols.iter().map(|&j| j as u64).collect::<Vec<_>>(),
            );
            report.set("catalogue_id", witness.catalogue_id);
            Ok(Outcome { report, violation: true })
        }
    }
}

pub fn cmd_sc(text: &str) -> Result<Outcome, RunError> {
    let list = match sniff_format(text) {
        Some("ord") => parse_orders(text)?,
        Some("miv") => profile_to_orders(&parse_instance(text)?.profile),
        _ => {
            return Err(RunError::Input(
                "input is neither a `miv` instance nor an `ord` order list".into(),
            ))
        }
    };
    let mut report = AnalysisReport::new("sc", None);
    report.set("orders", list.t());
    report.set("alternatives", list.m());
    match recognize_single_crossing(&list)? {
        Some(perm) => {
            report.set("single_crossing", true);
            report.set("order", perm.iter().map(|&j| j as u64).collect::<Vec<_>>());
            Ok(Outcome { report, violation: false })
        }
        None => {
            report.set("single_crossing", false);
            let w = find_forbidden_sc(&list)?;
            report.set(
                "witness_orders",
                w.order_indices.iter().map(|&i| i as u64).collect::<Vec<_>>(),
            );
            report.set(
                "witness_alternatives",
                w.alternative_indices.iter().map(|&j| j as u64).collect::<Vec<_>>(),
            );
            Ok(Outcome { report, violation: true })
        }
    }
}

pub fn cmd_represent(text: &str, method: &str) -> Result<Outcome, RunError> {
    let inst = parse_instance(text)?;
    let mut report = AnalysisReport::new("represent", Some(summary(&inst)));
    report.set("method", method);
    match method {
        "partition" | "oracle" => {
            let iwm = iwm_proposals(&inst)?.canonical;
            let r = if method == "partition" {
                partition_proposal(&inst, &iwm)?
            } else {
                best_supported_oracle(&inst, &iwm)?
            };
            report.set("iwm", prop_str(&iwm));
            report.set("proposal", prop_str(&r.proposal));
            report.set("distance_to_iwm", format_rational(&r.distance_to_iwm));
            report.set(
                "support",
                json!({
                    "supporters": r.support.supporters,
                    "opposers": r.support.opposers,
                    "indifferent": r.support.indifferent,
                }),
            );
            if let Some(case) = r.bound_used {
                let ell = average_weight_vector(&inst).max;
                report.set("bound_case", format!("{case:?}"));
                report.set("bound", format_rational(&case.bound(&ell)));
            }
        }
        "relevant" => {
            check_shared_weights(&inst)?;
            let avg = average_weight_vector(&inst);
            let topics = relevant_topics(&inst.voter_weights(0))?;
            report.set("ell", format_rational(&avg.max));
            report.set(
                "relevant_topics",
                topics.iter().map(|&j| j as u64).collect::<Vec<_>>(),
            );
        }
        "wagner" => {
            let w = wagner_check(&inst)?;
            report.set("average_majority", format_rational(&w.average_majority));
            report.set("weight_on_majority", format_rational(&w.weight_on_majority));
            report.set("anscombe_safe", w.anscombe_safe);
            report.set("ostrogorski_safe", w.ostrogorski_safe);
            report.set(
                "flipped_topics",
                w.flipped_topics.iter().map(|&j| j as u64).collect::<Vec<_>>(),
            );
        }
        other => return Err(RunError::Input(format!("unknown method {other:?}"))),
    }
    Ok(Outcome { report, violation: false })
}

pub fn cmd_generate(family: &str, parameter: &str) -> Result<String, RunError> {
    let inst: VotingInstance = match family {
        "small-ell" => {
            let k: u32 = parameter
                .parse()
                .map_err(|_| RunError::Input(format!("bad k {parameter:?}")))?;
            generate_small_ell(k)?
        }
        "big-ell" => {
            let ell = parse_rational(parameter)?;
            generate_big_ell(&ell)?
        }
        other => return Err(RunError::Input(format!("unknown family {other:?}"))),
    };
    Ok(write_miv(&inst))
}

/// The relevant-topics method needs a shared weight row; reject internal
/// mode up front with a readable message.
fn check_shared_weights(inst: &VotingInstance) -> Result<(), RunError> {
    match inst.mode() {
        mivote::WeightMode::Internal => Err(RunError::Input(
            "method needs a shared weight row (unweighted or external mode)".into(),
        )),
        _ => Ok(()),
    }
}
