//! Multiplication tables compiled into the library.
//!
//! Three rank-one horospherical cases with their full quantum Chevalley
//! data, plus projective spaces P^1 through P^5 as closed-form controls.

pub struct BundledDataset {
    pub name: &'static str,
    pub contents: &'static str,
}

pub const BUNDLED: &[BundledDataset] = &[
    BundledDataset {
        name: "case1_n3",
        contents: include_str!("../datasets/case1_n3.txt"),
    },
    BundledDataset {
        name: "case2",
        contents: include_str!("../datasets/case2.txt"),
    },
    BundledDataset {
        name: "case5",
        contents: include_str!("../datasets/case5.txt"),
    },
    BundledDataset {
        name: "p1",
        contents: include_str!("../datasets/p1.txt"),
    },
    BundledDataset {
        name: "p2",
        contents: include_str!("../datasets/p2.txt"),
    },
    BundledDataset {
        name: "p3",
        contents: include_str!("../datasets/p3.txt"),
    },
    BundledDataset {
        name: "p4",
        contents: include_str!("../datasets/p4.txt"),
    },
    BundledDataset {
        name: "p5",
        contents: include_str!("../datasets/p5.txt"),
    },
];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|d| d.name == name).map(|d| d.contents)
}

pub fn names() -> Vec<&'static str> {
    BUNDLED.iter().map(|d| d.name).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{parse_table, validate_grading};

    #[test]
    fn all_bundled_tables_parse_and_grade() {
        assert_eq!(BUNDLED.len(), 8);
        for d in BUNDLED {
            let t = parse_table(d.contents)
                .unwrap_or_else(|e| panic!("{} failed to parse: {e}", d.name));
            assert_eq!(t.name, d.name, "dataset name field matches its key");
            let report = validate_grading(&t);
            assert!(
                report.ok,
                "{} has grading violations: {:?}",
                d.name, report.violations
            );
            assert!(t.empty_row_names().is_empty(), "{} has empty rows", d.name);
        }
    }

    #[test]
    fn lookup_by_name() {
        assert!(bundled("case5").is_some());
        assert!(bundled("nope").is_none());
        assert_eq!(names().len(), 8);
        assert_eq!(names()[0], "case1_n3");
    }
}
