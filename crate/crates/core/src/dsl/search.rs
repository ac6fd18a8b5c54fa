//! Shape check for properties usable by the parameter search: one user
//! input, variants that keep or grow the code, and a postcondition of the
//! form `variant succeeds ==> original succeeds`.

use super::*;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchValidation {
    pub ok: bool,
    pub reasons: Vec<String>,
}

pub fn validate_search_spec(spec: &PropertySpec) -> SearchValidation {
    let mut reasons = Vec::new();
    if spec.inputs.len() != 1 {
        reasons.push(format!("needs exactly one input, found {}", spec.inputs.len()));
    }
    for d in &spec.derived_vars {
        if !d.call.func.search_compatible() {
            reasons.push(format!(
                "`{}` uses `{}`, which does not produce an equivalent or larger variant",
                d.name, d.call.func
            ));
        }
    }
    match &spec.postcondition {
        Expr::Binary {
            op: BinOp::Implies,
            lhs,
            ..
        } => {
            // The antecedent may only talk about variants and their outputs.
            let mut user: Vec<&str> = spec.inputs.iter().map(String::as_str).collect();
            for q in &spec.query_block {
                if spec.inputs.contains(&q.source) {
                    user.push(&q.target);
                }
            }
            let bad: Vec<&str> = lhs.idents().into_iter().filter(|i| user.contains(i)).collect();
            if !bad.is_empty() {
                reasons.push(format!(
                    "the antecedent refers to the user input or its translation ({})",
                    bad.join(", ")
                ));
            }
        }
        _ => reasons.push("the postcondition is not an implication".into()),
    }
    SearchValidation {
        ok: reasons.is_empty(),
        reasons,
    }
}
