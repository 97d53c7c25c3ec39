//! Label validation and label generation for derived structures.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::set::PointSet;

pub fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn check_label(s: &str) -> Result<()> {
    if is_identifier(s) {
        Ok(())
    } else {
        Err(Error::InvalidLabel(s.to_string()))
    }
}

/// Validate a label list: identifiers, pairwise distinct.
pub fn check_labels<S: AsRef<str>>(labels: &[S]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        let l = l.as_ref();
        check_label(l)?;
        if !seen.insert(l) {
            return Err(Error::DuplicateLabel(l.to_string()));
        }
    }
    Ok(())
}

/// Render a subset as `{a,b,c}` with labels sorted lexicographically.
pub fn set_literal<S: AsRef<str>>(labels: &[S], set: PointSet) -> String {
    let mut names: Vec<&str> = set.iter().map(|i| labels[i].as_ref()).collect();
    names.sort_unstable();
    format!("{{{}}}", names.join(","))
}

/// Identifier labels for a family of subsets: `prefix` followed by `_member`
/// for each member in point order. Falls back to `prefix<index>` for the whole
/// family when the readable names would collide.
pub fn subset_labels<S: AsRef<str>>(
    prefix: &str,
    points: &[S],
    family: &[PointSet],
) -> Vec<String> {
    let readable: Vec<String> = family
        .iter()
        .map(|s| {
            let mut name = prefix.to_string();
            for i in s.iter() {
                name.push('_');
                name.push_str(points[i].as_ref());
            }
            name
        })
        .collect();
    let distinct = readable.iter().collect::<HashSet<_>>().len() == readable.len();
    if distinct {
        readable
    } else {
        (0..family.len()).map(|i| format!("{prefix}{i}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers() {
        assert!(is_identifier("loc_m"));
        assert!(is_identifier("0"));
        assert!(!is_identifier(""));
        assert!(!is_identifier("loc(m)"));
        assert_eq!(
            check_labels(&["a", "b", "a"]),
            Err(Error::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn subset_label_collisions_fall_back() {
        let pts = ["a_b", "c", "a", "b_c"];
        let fam = [
            PointSet::from_indices([0, 1]),
            PointSet::from_indices([2, 3]),
        ];
        assert_eq!(subset_labels("U", &pts, &fam), vec!["U0", "U1"]);
        let fam = [PointSet::EMPTY, PointSet::singleton(1)];
        assert_eq!(subset_labels("U", &pts, &fam), vec!["U", "U_c"]);
    }

    #[test]
    fn set_literal_sorts() {
        let pts = ["Q", "0", "P"];
        assert_eq!(set_literal(&pts, PointSet::full(3)), "{0,P,Q}");
        assert_eq!(set_literal(&pts, PointSet::EMPTY), "{}");
    }
}
