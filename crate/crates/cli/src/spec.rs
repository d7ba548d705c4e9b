//! Groupoid specifications given on the command line.
//!
//! A spec is one or more terms joined by `+`, read as a disjoint union in
//! left-to-right order:
//!
//! - `pair:N` is the pair groupoid on `N` objects;
//! - `group:NAME` is a one-object groupoid (`Z<n>`, `V4` or `S3`);
//! - `z2-swap` is `ℤ₂` acting on `{0, 1}` by the swap;
//! - `file:PATH` is an explicit groupoid in the JSON wire form.

use std::path::Path;

use mspace::groupoid::{FiniteGroupoid, Group, GroupoidJson};

use crate::CliError;

pub fn parse_groupoid(spec: &str) -> Result<FiniteGroupoid, CliError> {
    let mut terms = spec.split('+').map(str::trim);
    let first =
        terms.next().map(parse_term).transpose()?.ok_or_else(|| CliError::Usage("empty groupoid spec".into()))?;
    terms.try_fold(first, |acc, t| Ok(FiniteGroupoid::disjoint_union(&acc, &parse_term(t)?)?))
}

fn parse_term(term: &str) -> Result<FiniteGroupoid, CliError> {
    let bad = || CliError::Usage(format!("unrecognized groupoid term `{term}`"));
    if term == "z2-swap" {
        return Ok(FiniteGroupoid::z2_swap());
    }
    let (kind, arg) = term.split_once(':').ok_or_else(bad)?;
    match kind {
        "pair" => {
            let n: usize = arg.parse().map_err(|_| bad())?;
            Ok(FiniteGroupoid::pair(n)?)
        }
        "group" => Ok(FiniteGroupoid::group(&Group::named(arg)?)?),
        "file" => load_groupoid(Path::new(arg)),
        _ => Err(bad()),
    }
}

pub fn load_groupoid(path: &Path) -> Result<FiniteGroupoid, CliError> {
    let j: GroupoidJson = crate::read_json(path)?;
    Ok(FiniteGroupoid::from_json(&j)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_shifts_objects() {
        let g = parse_groupoid("pair:2+pair:1").unwrap();
        assert_eq!((g.object_count(), g.arrow_count()), (3, 5));
    }

    #[test]
    fn rejects_unknown_terms() {
        assert!(matches!(parse_groupoid("pear:2"), Err(CliError::Usage(_))));
        assert!(matches!(parse_groupoid("pair:x"), Err(CliError::Usage(_))));
        assert!(parse_groupoid("group:Q8").is_err());
    }
}
