//! Hilbert-style proof checking for the base logic and its extensions by
//! catalogued principles.

mod catalog;
mod taut;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use catalog::{rn_scheme, scheme, scheme_catalog, BASE_AXIOMS, PRINCIPLES};
pub use taut::{is_tautology, MAX_LETTERS};

use crate::error::{Error, Result};
use crate::formula::{instantiate, match_scheme, parse, Formula, Substitution};

/// The base logic extended by a set of principle ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LogicId {
    pub principles: BTreeSet<String>,
}

impl LogicId {
    pub fn base() -> Self {
        LogicId::default()
    }

    pub fn with(mut self, id: &str) -> Result<Self> {
        scheme(id)?;
        if BASE_AXIOMS.contains(&id) {
            return Err(Error::InvalidInput(format!("{id} is already part of IL")));
        }
        self.principles.insert(id.to_owned());
        Ok(self)
    }

    /// Whether `id` names an axiom scheme of this logic.
    pub fn admits(&self, id: &str) -> bool {
        BASE_AXIOMS.contains(&id) || self.principles.contains(id)
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IL")?;
        for p in &self.principles {
            write!(f, "+{p}")?;
        }
        Ok(())
    }
}

impl FromStr for LogicId {
    type Err = Error;

    /// `IL`, `IL+W`, `IL+M+Rn:2`, ...
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('+').map(str::trim);
        if parts.next() != Some("IL") {
            return Err(Error::UnknownId(s.to_owned()));
        }
        parts.try_fold(LogicId::base(), |l, p| l.with(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Taut,
    Axiom {
        scheme: String,
        subst: Option<Substitution>,
    },
    /// From step `i` (`A`) and step `j` (`A -> B`) conclude `B`.
    Mp(usize, usize),
    Nec(usize),
}

/// One proof line. The formula may be left out for rules that determine it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub formula: Option<Formula>,
}

impl Step {
    pub fn taut(f: Formula) -> Self {
        Step {
            rule: Rule::Taut,
            formula: Some(f),
        }
    }

    pub fn axiom(scheme: &str, subst: Substitution) -> Self {
        Step {
            rule: Rule::Axiom {
                scheme: scheme.to_owned(),
                subst: Some(subst),
            },
            formula: None,
        }
    }

    pub fn mp(i: usize, j: usize) -> Self {
        Step {
            rule: Rule::Mp(i, j),
            formula: None,
        }
    }

    pub fn nec(i: usize) -> Self {
        Step {
            rule: Rule::Nec(i),
            formula: None,
        }
    }

    pub fn claiming(mut self, f: Formula) -> Self {
        self.formula = Some(f);
        self
    }
}

/// Steps are numbered from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Proof {
    pub logic: Option<LogicId>,
    pub steps: Vec<Step>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProofFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    logic: Option<String>,
    steps: Vec<StepFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepFile {
    rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    formula: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scheme: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    subst: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    refs: Option<Vec<usize>>,
}

impl Proof {
    pub fn new(steps: Vec<Step>) -> Self {
        Proof { logic: None, steps }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProofFile = serde_json::from_str(text)?;
        let logic = file.logic.as_deref().map(LogicId::from_str).transpose()?;
        let steps = file
            .steps
            .into_iter()
            .enumerate()
            .map(|(k, s)| read_step(k + 1, s))
            .collect::<Result<_>>()?;
        Ok(Proof { logic, steps })
    }

    pub fn to_json(&self) -> String {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let mut out = StepFile {
                    rule: String::new(),
                    formula: s.formula.as_ref().map(Formula::to_string),
                    scheme: None,
                    subst: None,
                    refs: None,
                };
                match &s.rule {
                    Rule::Taut => out.rule = "taut".into(),
                    Rule::Axiom { scheme, subst } => {
                        out.rule = "axiom".into();
                        out.scheme = Some(scheme.clone());
                        out.subst = subst
                            .as_ref()
                            .map(|m| m.iter().map(|(k, v)| (k.clone(), v.to_string())).collect());
                    }
                    Rule::Mp(i, j) => {
                        out.rule = "mp".into();
                        out.refs = Some(vec![*i, *j]);
                    }
                    Rule::Nec(i) => {
                        out.rule = "nec".into();
                        out.refs = Some(vec![*i]);
                    }
                }
                out
            })
            .collect();
        let file = ProofFile {
            logic: self.logic.as_ref().map(LogicId::to_string),
            steps,
        };
        serde_json::to_string_pretty(&file).expect("proof files serialise")
    }
}

fn read_step(k: usize, s: StepFile) -> Result<Step> {
    let bad = |m: &str| Error::Format(format!("step {k}: {m}"));
    let formula = s
        .formula
        .as_deref()
        .map(parse)
        .transpose()
        .map_err(|e| bad(&e.to_string()))?;
    let refs = s.refs.unwrap_or_default();
    let rule = match s.rule.as_str() {
        "taut" => {
            if formula.is_none() {
                return Err(bad("taut needs a formula"));
            }
            Rule::Taut
        }
        "axiom" => {
            let scheme = s.scheme.ok_or_else(|| bad("axiom needs a scheme"))?;
            let subst = s
                .subst
                .map(|m| {
                    m.into_iter()
                        .map(|(k, v)| parse(&v).map(|f| (k, f)))
                        .collect::<Result<Substitution>>()
                })
                .transpose()
                .map_err(|e| bad(&e.to_string()))?;
            if subst.is_none() && formula.is_none() {
                return Err(bad("axiom needs a substitution or a formula"));
            }
            Rule::Axiom { scheme, subst }
        }
        "mp" => match refs[..] {
            [i, j] => Rule::Mp(i, j),
            _ => return Err(bad("mp needs two refs")),
        },
        "nec" => match refs[..] {
            [i] => Rule::Nec(i),
            _ => return Err(bad("nec needs one ref")),
        },
        other => return Err(bad(&format!("unknown rule `{other}`"))),
    };
    Ok(Step { rule, formula })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofFailure {
    /// 1-based step number.
    pub step: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofVerdict {
    /// Formulas established by the accepted prefix of the proof.
    pub lines: Vec<Formula>,
    pub failure: Option<ProofFailure>,
}

impl ProofVerdict {
    pub fn accepted(&self) -> bool {
        self.failure.is_none() && !self.lines.is_empty()
    }

    pub fn theorem(&self) -> Option<&Formula> {
        if self.accepted() {
            self.lines.last()
        } else {
            None
        }
    }
}

fn line(lines: &[Formula], k: usize, r: usize) -> std::result::Result<&Formula, String> {
    if r == 0 || r >= k {
        return Err(format!("reference {r} does not precede step {k}"));
    }
    Ok(&lines[r - 1])
}

fn check_step(
    logic: &LogicId,
    lines: &[Formula],
    k: usize,
    step: &Step,
) -> std::result::Result<Formula, String> {
    let derived = match &step.rule {
        Rule::Taut => {
            let f = step.formula.as_ref().ok_or("taut needs a formula")?;
            if !f.is_ground() {
                return Err("formula contains metavariables".into());
            }
            match is_tautology(f) {
                Some(true) => f.clone(),
                Some(false) => return Err(format!("`{f}` is not a tautology")),
                None => return Err(format!("more than {MAX_LETTERS} propositional letters")),
            }
        }
        Rule::Axiom { scheme: id, subst } => {
            if !logic.admits(id) {
                return Err(format!("{id} is not an axiom of {logic}"));
            }
            let sch = scheme(id).map_err(|e| e.to_string())?;
            match subst {
                Some(s) => instantiate(&sch, s).map_err(|e| e.to_string())?,
                None => {
                    let f = step.formula.as_ref().ok_or("axiom needs a formula")?;
                    if match_scheme(&sch, f).is_none() {
                        return Err(format!("`{f}` is not an instance of {id}"));
                    }
                    f.clone()
                }
            }
        }
        Rule::Mp(i, j) => {
            let a = line(lines, k, *i)?;
            let imp = line(lines, k, *j)?;
            match imp {
                Formula::Impl(l, r) if **l == *a => (**r).clone(),
                _ => return Err(format!("step {j} is not an implication from step {i}")),
            }
        }
        Rule::Nec(i) => Formula::boxed(line(lines, k, *i)?.clone()),
    };
    if let Some(claimed) = &step.formula {
        if *claimed != derived {
            return Err(format!(
                "claimed `{claimed}` but the rule yields `{derived}`"
            ));
        }
    }
    Ok(derived)
}

/// Checks `p` step by step against `logic`, stopping at the first step that
/// does not follow.
pub fn check_proof(p: &Proof, logic: &LogicId) -> ProofVerdict {
    let mut lines = Vec::with_capacity(p.steps.len());
    for (idx, step) in p.steps.iter().enumerate() {
        let k = idx + 1;
        match check_step(logic, &lines, k, step) {
            Ok(f) => lines.push(f),
            Err(reason) => {
                return ProofVerdict {
                    lines,
                    failure: Some(ProofFailure { step: k, reason }),
                }
            }
        }
    }
    let failure = lines.is_empty().then(|| ProofFailure {
        step: 0,
        reason: "empty proof".into(),
    });
    ProofVerdict { lines, failure }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn sub(pairs: &[(&str, &str)]) -> Substitution {
        pairs.iter().map(|(k, v)| (k.to_string(), f(v))).collect()
    }

    fn p_rhd_p() -> Proof {
        Proof::new(vec![
            Step::taut(f("p -> p")),
            Step::nec(1),
            Step::axiom("J1", sub(&[("A", "p"), ("B", "p")])),
            Step::mp(2, 3),
        ])
    }

    #[test]
    fn four_steps() {
        let v = check_proof(&p_rhd_p(), &LogicId::base());
        assert!(v.accepted(), "{v:?}");
        assert_eq!(v.theorem(), Some(&f("p |> p")));
    }

    #[test]
    fn corrupted_axiom() {
        let mut p = p_rhd_p();
        p.steps[2] = Step::axiom("J1", sub(&[("A", "p"), ("B", "q")]));
        let v = check_proof(&p, &LogicId::base());
        assert_eq!(v.failure.unwrap().step, 4);
    }

    #[test]
    fn principles_need_the_logic() {
        let p = Proof::new(vec![Step::axiom("W", sub(&[("A", "p"), ("B", "q")]))]);
        assert!(!check_proof(&p, &LogicId::base()).accepted());
        assert!(check_proof(&p, &"IL+W".parse().unwrap()).accepted());
    }

    #[test]
    fn references_must_precede() {
        let p = Proof::new(vec![Step::taut(f("p -> p")), Step::nec(2)]);
        let v = check_proof(&p, &LogicId::base());
        assert_eq!(v.failure.unwrap().step, 2);
    }

    #[test]
    fn json_round_trip_and_inference() {
        let text = r#"{"logic":"IL","steps":[
            {"rule":"taut","formula":"p -> p"},
            {"rule":"nec","refs":[1]},
            {"rule":"axiom","scheme":"J1","formula":"[](p -> p) -> p |> p"},
            {"rule":"mp","refs":[2,3],"formula":"p |> p"}]}"#;
        let p = Proof::from_json(text).unwrap();
        assert!(check_proof(&p, &LogicId::base()).accepted());
        let again = Proof::from_json(&p.to_json()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn logic_ids() {
        let l: LogicId = "IL+W+M".parse().unwrap();
        assert_eq!(l.to_string(), "IL+M+W");
        assert!("IL+J1".parse::<LogicId>().is_err());
        assert!("ILW".parse::<LogicId>().is_err());
        assert!("IL+Rn:2".parse::<LogicId>().unwrap().admits("Rn:2"));
    }
}
