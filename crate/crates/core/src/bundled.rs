//! Property files shipped with the library.

use crate::dsl::{parse_spec, Diagnostics, PropertySpec};

macro_rules! table {
    ($dir:literal: $($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../specs/", $dir, "/", $name, ".ksp")))),*]
    };
}

/// The testing properties, as (name, text) pairs.
pub const TESTING: &[(&str, &str)] = table!("testing":
    "addConditional_arity",
    "addConditional_compiles",
    "addConditional_numConditionals",
    "addConditional_numLoops",
    "addConditional_retValues",
    "addLoop_arity",
    "addLoop_compiles",
    "addLoop_numConditionals",
    "addLoop_numLoops",
    "addLoop_retValues",
    "addParam_arity",
    "addParam_compiles",
    "addParam_numConditionals",
    "addParam_numLoops",
    "addParam_retValues",
    "arity",
    "chBranchCond_arity",
    "chBranchCond_compiles",
    "chBranchCond_numConditionals",
    "chBranchCond_numLoops",
    "compiles",
    "merge_arity",
    "merge_compiles",
    "merge_numConditionals",
    "merge_numLoops",
    "merge_retValues",
    "numConditionals",
    "numLoops",
    "renameParam_arity",
    "renameParam_compiles",
    "renameParam_numConditionals",
    "renameParam_numLoops",
    "renameParam_retValues",
    "retValues",
    "rmLoop_arity",
    "rmLoop_compiles",
    "rmLoop_numConditionals",
    "rmLoop_numLoops",
);

/// The search-compatible rewrites used by the parameter search.
pub const SEARCH: &[(&str, &str)] = table!("search":
    "addConditional_arity_S",
    "addConditional_compiles_S",
    "addConditional_numConditionals_S",
    "addConditional_numLoops_S",
    "addConditional_retValues_S",
    "addLoop_arity_S",
    "addLoop_compiles_S",
    "addLoop_numConditionals_S",
    "addLoop_numLoops_S",
    "addLoop_retValues_S",
    "addParam_arity_S",
    "addParam_compiles_S",
    "addParam_numConditionals_S",
    "addParam_numLoops_S",
    "addParam_retValues_S",
    "chBranchCond_arity_S",
    "chBranchCond_compiles_S",
    "chBranchCond_numConditionals_S",
    "chBranchCond_numLoops_S",
    "renameParam_arity_S",
    "renameParam_compiles_S",
    "renameParam_numConditionals_S",
    "renameParam_numLoops_S",
    "renameParam_retValues_S",
);

/// Small illustrative properties, including C++ targets.
pub const EXAMPLES: &[(&str, &str)] = table!("examples":
    "addcond_loops",
    "cpp_conditionals",
    "cpp_retvalues",
    "rename_retvalues",
);

fn parse_all(table: &[(&str, &str)]) -> Result<Vec<PropertySpec>, (String, Diagnostics)> {
    table
        .iter()
        .map(|(name, text)| parse_spec(name, text).map_err(|d| (name.to_string(), d)))
        .collect()
}

pub fn testing_specs() -> Result<Vec<PropertySpec>, (String, Diagnostics)> {
    parse_all(TESTING)
}

pub fn search_specs() -> Result<Vec<PropertySpec>, (String, Diagnostics)> {
    parse_all(SEARCH)
}

pub fn example_specs() -> Result<Vec<PropertySpec>, (String, Diagnostics)> {
    parse_all(EXAMPLES)
}

/// Looks a property up by name across all bundled tables.
pub fn find(name: &str) -> Option<&'static str> {
    TESTING
        .iter()
        .chain(SEARCH)
        .chain(EXAMPLES)
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_file_parses() {
        assert_eq!(testing_specs().unwrap().len(), 38);
        assert_eq!(example_specs().unwrap().len(), 4);
        let search = search_specs().unwrap();
        assert_eq!(search.len(), 24);
        for s in &search {
            assert!(s.search_compatible, "{}", s.name);
        }
    }

    #[test]
    fn testing_specs_are_not_search_shaped() {
        for s in testing_specs().unwrap() {
            assert!(!s.search_compatible, "{}", s.name);
        }
    }
}
