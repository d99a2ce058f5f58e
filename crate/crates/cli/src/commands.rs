use f2bal::closed_form::{
    detect_independent, detect_one_relation, predict_fixing, predict_independent, predict_one_relation,
    predict_subspace,
};
use f2bal::testkit::{generate, oracle_analyze, Family, FamilySpec, Generated};
use f2bal::{
    analyze, balancing_set, fixing_set, fixing_set_m, quotient, BalanceStructure, BitVec, Limits, MethodChoice,
    Subspace, VectorSet,
};

use crate::error::{CliError, CliResult};
use crate::input::{render_multiset, render_set, Input};
use crate::report::{AnalysisReport, BalancingReport, Classification, ClosedFormCheck, QuotientReport, SpaceReport};

/// `--enumerate` lists `B` only up to this many members.
pub const ENUMERATE_LOG2_LIMIT: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalyzeOptions {
    pub method: MethodChoice,
    pub limits: Limits,
    pub enumerate: bool,
    pub show_indices: bool,
}

fn strings(vs: &[BitVec]) -> Vec<String> {
    vs.iter().map(|x| x.to_string()).collect()
}

fn space_report(s: &Subspace) -> SpaceReport {
    SpaceReport {
        dimension: s.dimension(),
        basis: strings(s.basis()),
    }
}

fn classify(s: &VectorSet) -> Classification {
    if s.is_vector_space() {
        Classification::VectorSpace
    } else if s.is_affine() {
        Classification::AffineSpace
    } else {
        Classification::General
    }
}

/// Closed forms whose hypotheses the input satisfies, each compared with the
/// computed balancing number.
pub fn closed_form_checks(
    input: &Input,
    structure: &BalanceStructure,
    limits: &Limits,
) -> CliResult<Vec<ClosedFormCheck>> {
    let actual = structure.balancing_number();
    let rank = structure.rank() as u32;
    let mut checks = Vec::new();
    let mut push = |name: &str, predicted: u64, actual: u64| {
        checks.push(ClosedFormCheck {
            name: name.to_string(),
            predicted,
            actual,
            matches: predicted == actual,
        })
    };

    if input.weighted().total() % 2 == 1 {
        push("odd_total", 0, actual);
    }
    // Constant multiplicity scales every balance sum, so the set formulas apply.
    let set = match input {
        Input::Set(s) => s.clone(),
        Input::Multiset(m) if m.has_constant_multiplicity() => m.support(),
        Input::Multiset(_) => return Ok(checks),
    };
    if set.is_affine() {
        push("affine_space", predict_subspace(rank), actual);
    }
    if let Some(r) = detect_independent(&set) {
        let (predicted, cardinality) = predict_independent(r, set.width())?;
        push("independent", predicted, actual);
        if let (Ok(p), Ok(a)) = (
            u64::try_from(cardinality),
            u64::try_from(structure.balancing_cardinality()),
        ) {
            push("independent_cardinality", p, a);
        }
    }
    if let Some(p) = detect_one_relation(&set) {
        push("one_relation", predict_one_relation(p), actual);
    }
    let f = fixing_set(&set).dimension() as u32;
    if f > 0 {
        let outside = predict_fixing(rank, f)?;
        if set.len() % (1usize << (f + 1)) != 0 {
            push("fixing_outside_h", outside, actual);
        } else if rank <= limits.max_rank {
            let inner = balancing_set(quotient(&set).representatives(), limits)?.balancing_number();
            push("fixing_decomposition", outside + inner, actual);
        }
    }
    Ok(checks)
}

/// Assembles the report for an already computed balance structure.
pub fn build_report(input: &Input, structure: &BalanceStructure, opts: &AnalyzeOptions) -> CliResult<AnalysisReport> {
    let support = input.support();
    let (fixing, quotient_report, structural_full) = match input {
        Input::Set(s) => {
            let q = quotient(s);
            let report = (q.fixing_dimension() > 0).then(|| QuotientReport {
                f: q.fixing_dimension(),
                representatives: strings(q.representatives().members()),
            });
            (q.fixing_space().clone(), report, s.is_affine())
        }
        Input::Multiset(m) => (
            fixing_set_m(m)?,
            None,
            support.is_affine() && m.has_constant_multiplicity(),
        ),
    };
    let fully_balanced = structure.is_fully_balanced();
    if fully_balanced != structural_full {
        return Err(CliError::Internal(format!(
            "b = 2^r - 1 is {fully_balanced} but the affine test gives {structural_full}"
        )));
    }

    let reps = structure.balancing_reps();
    let balancing = BalancingReport {
        number: structure.balancing_number(),
        coset_representatives: strings(reps),
        method: structure.method().as_str().to_string(),
        coset_representative_indices: opts.show_indices.then(|| reps.iter().map(|x| x.index()).collect()),
        enumerated_members: if opts.enumerate {
            Some(strings(&structure.enumerate_balancing(ENUMERATE_LOG2_LIMIT)?))
        } else {
            None
        },
    };

    Ok(AnalysisReport {
        n: support.width(),
        cardinality: support.len() as u64,
        total_multiplicity: input.weighted().total(),
        rank: structure.rank(),
        classification: classify(&support),
        constant_set: space_report(structure.constant_space()),
        balancing,
        fixing_set: space_report(&fixing),
        fully_balanced,
        quotient: quotient_report,
        closed_form_checks: closed_form_checks(input, structure, &opts.limits)?,
    })
}

pub fn cmd_analyze(input: &Input, opts: &AnalyzeOptions) -> CliResult<AnalysisReport> {
    let structure = analyze(input.weighted(), opts.method, &opts.limits)?;
    build_report(input, &structure, opts)
}

/// Same report as [`cmd_analyze`], with the balance structure taken from
/// the brute-force oracle.
pub fn cmd_oracle(input: &Input, opts: &AnalyzeOptions) -> CliResult<AnalysisReport> {
    let structure = oracle_analyze(input.weighted())?;
    build_report(input, &structure, opts)
}

/// Family parameters as given on the command line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenRequest {
    pub family: String,
    pub n: u32,
    pub r: Option<u32>,
    pub k: Option<u32>,
    pub f: Option<u32>,
    pub classes: Option<u64>,
    pub cardinality: Option<u64>,
    pub support: Option<u64>,
    pub max_multiplicity: Option<u64>,
    pub seed: u64,
    pub canonical: bool,
}

pub const FAMILY_NAMES: [&str; 7] = [
    "subspace",
    "affine",
    "independent",
    "one_relation",
    "fixed_by",
    "random_set",
    "random_multiset",
];

fn required<T>(value: Option<T>, flag: &str, family: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("--family {family} requires --{flag}")))
}

impl GenRequest {
    pub fn family(&self) -> CliResult<Family> {
        let name = self.family.as_str();
        Ok(match name {
            "subspace" => Family::Subspace {
                r: required(self.r, "r", name)?,
            },
            "affine" => Family::Affine {
                r: required(self.r, "r", name)?,
            },
            "independent" => Family::Independent {
                r: required(self.r, "r", name)?,
            },
            "one_relation" => Family::OneRelation {
                r: required(self.r, "r", name)?,
                k: required(self.k, "k", name)?,
            },
            "fixed_by" => Family::FixedBy {
                f: required(self.f, "f", name)?,
                classes: required(self.classes, "classes", name)?,
            },
            "random_set" => Family::RandomSet {
                cardinality: required(self.cardinality, "cardinality", name)?,
            },
            "random_multiset" => Family::RandomMultiset {
                support: required(self.support, "support", name)?,
                max_multiplicity: self.max_multiplicity.unwrap_or(1),
            },
            _ => {
                return Err(CliError::Usage(format!(
                    "unknown family {name:?}; expected one of {}",
                    FAMILY_NAMES.join(", ")
                )))
            }
        })
    }
}

/// A generated input rendered in the file format it would be read from.
pub fn cmd_gen(req: &GenRequest) -> CliResult<String> {
    let spec = FamilySpec {
        family: req.family()?,
        n: req.n,
        seed: req.seed,
        canonical: req.canonical,
    };
    let generated = generate(&spec).map_err(|e| match e {
        f2bal::Error::WidthOutOfRange(_) => CliError::Usage(e.to_string()),
        other => other.into(),
    })?;
    Ok(match generated {
        Generated::Set(s) => render_set(&s),
        Generated::Multiset(m) => render_multiset(&m),
    })
}
