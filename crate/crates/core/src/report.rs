//! Rendering of classification results: a stable JSON record and a
//! human-readable report.

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::abelian::{FgAbelianGroup, Notation};
use crate::classifier::{ClassCount, ClassificationResult};

/// Machine-readable record. Field order is fixed by declaration order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationRecord {
    pub complex: String,
    pub group: String,
    pub verdict: String,
    pub kernel: FgAbelianGroup,
    pub quotient: FgAbelianGroup,
    pub classified_group: Option<FgAbelianGroup>,
    pub cardinality: Value,
    pub citations: Vec<String>,
}

pub fn count_value(count: &ClassCount) -> Value {
    match count {
        ClassCount::Finite(n) => match n.to_u64() {
            Some(x) => Value::from(x),
            None => Value::from(n.to_string()),
        },
        ClassCount::Infinite => Value::from("infinite"),
        ClassCount::Unknown => Value::from("unknown"),
    }
}

impl From<&ClassificationResult> for ClassificationRecord {
    fn from(r: &ClassificationResult) -> Self {
        ClassificationRecord {
            complex: r.complex.clone(),
            group: r.group.clone(),
            verdict: r.verdict.to_string(),
            kernel: r.kernel_term.group.clone(),
            quotient: r.quotient_term.group.clone(),
            classified_group: r.classified_group.clone(),
            cardinality: count_value(&r.cardinality),
            citations: r.citations.iter().map(|c| c.tag().to_string()).collect(),
        }
    }
}

pub fn to_json(r: &ClassificationResult) -> String {
    serde_json::to_string_pretty(&ClassificationRecord::from(r)).expect("record serializes")
}

fn ascii(text: &str) -> String {
    text.replace("𝓑_", "B_")
        .replace('⊕', "+")
        .replace('²', "^2")
        .replace('¹', "^1")
        .replace('⁰', "^0")
        .replace('³', "^3")
        .replace('χ', "chi")
        .replace('Σ', "Sigma")
        .replace("π₀", "pi0")
        .replace("π₁", "pi1")
        .replace('π', "pi")
        .replace('→', "->")
        .replace('≅', "~=")
        .replace('⇒', "=>")
        .replace('ⁿ', "^n")
        .replace('−', "-")
        .replace('Γ', "Gamma")
        .replace("G̃", "G~")
}

pub fn human_report(r: &ClassificationResult, notation: Notation) -> String {
    let grp = |g: &FgAbelianGroup| g.render(notation);
    let mut out = String::new();
    out.push_str(&format!("complex: {}\n", r.complex));
    out.push_str(&format!("group:   {}\n", r.group));
    out.push_str(&format!("H²(M; π₁G) = {}\n", grp(&r.kernel_term.group)));
    out.push_str(&format!("H¹(M; π₀G) = {}\n", grp(&r.quotient_term.group)));
    out.push_str(&format!("case:    {} [{}]\n", r.case_description(), r.verdict));
    match &r.classified_group {
        Some(g) => out.push_str(&format!("𝓑_G(M) ≅ {}\n", grp(g))),
        None => out.push_str(&format!(
            "𝓑_G(M) sits in 0 → {} → 𝓑_G(M) → {} → 0\n",
            grp(&r.kernel_term.group),
            grp(&r.quotient_term.group)
        )),
    }
    out.push_str(&format!("classes: {}\n", r.cardinality));
    out.push_str("rules:\n");
    for c in &r.citations {
        out.push_str(&format!("  [{}] {}\n", c.tag(), c.statement()));
    }
    match notation {
        Notation::Unicode => out,
        Notation::Ascii => ascii(&out),
    }
}

/// Applies the ASCII substitutions to arbitrary report text.
pub fn asciify(text: &str, notation: Notation) -> String {
    match notation {
        Notation::Unicode => text.to_string(),
        Notation::Ascii => ascii(text),
    }
}
