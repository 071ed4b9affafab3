//! Graded quantum Chevalley multiplication tables.
//!
//! A table records, for every basis class `alpha` of the small quantum
//! cohomology ring (specialized or not), the product `h * alpha` as a sum of
//! terms `c * q^d * beta` with positive integer coefficients. The file format
//! is line oriented:
//!
//! ```text
//! name        case5
//! fano_index  4
//! c1_multiple 4
//! basis one 0
//! basis h   1
//! chev one : 1 q0 h
//! chev h   : 3 q0 a1, 1 q0 a2
//! ```
//!
//! `#` starts a comment, blank lines are ignored, and a basis element with no
//! `chev` line has an empty row (`h * alpha = 0`).

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

/// A graded basis class of the ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: u32,
}

/// One term `coefficient * q^q_power * basis[target]` of a Chevalley row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QTerm {
    pub coefficient: u64,
    pub q_power: u32,
    pub target: usize,
}

/// A parsed multiplication table. Basis order is file order; `rows[i]` is the
/// expansion of `h * basis[i]` at unit scale (the `c1_multiple` is applied
/// later, when the operator matrix is built).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChevalleyTable {
    pub name: String,
    pub fano_index: u32,
    pub c1_multiple: u32,
    pub basis: Vec<BasisElement>,
    pub rows: Vec<Vec<QTerm>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate basis element `{name}`")]
    DuplicateBasis { line: usize, name: String },
    #[error("line {line}: unknown basis element `{name}`")]
    UnknownElement { line: usize, name: String },
    #[error("line {line}: second `chev` row for `{name}`")]
    DuplicateRow { line: usize, name: String },
    #[error("line {line}: target `{name}` appears twice in one row")]
    DuplicateTarget { line: usize, name: String },
    #[error("missing `{0}` declaration")]
    MissingField(&'static str),
    #[error("expected exactly one degree-0 basis element named `one`, {0}")]
    BadIdentity(String),
    #[error("expected exactly one degree-1 basis element named `h`, {0}")]
    BadHyperplane(String),
}

impl ChevalleyTable {
    /// Number of basis classes.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Index of a basis element by name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Index of the identity class `one` (degree 0). Guaranteed by the parser.
    pub fn identity_index(&self) -> usize {
        self.index_of("one").expect("parser guarantees `one`")
    }

    /// Index of the hyperplane class `h` (degree 1). Guaranteed by the parser.
    pub fn hyperplane_index(&self) -> usize {
        self.index_of("h").expect("parser guarantees `h`")
    }

    /// Number of basis classes in each degree, indexed by degree from 0 to
    /// the maximum declared degree.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let max = self.basis.iter().map(|b| b.degree).max().unwrap_or(0);
        let mut hist = vec![0usize; max as usize + 1];
        for b in &self.basis {
            hist[b.degree as usize] += 1;
        }
        hist
    }

    /// Names of basis elements whose row is empty (`h * alpha = 0`). Legal,
    /// but surprising enough to warrant a warning at load time.
    pub fn empty_row_names(&self) -> Vec<&str> {
        self.basis
            .iter()
            .zip(&self.rows)
            .filter(|(_, row)| row.is_empty())
            .map(|(b, _)| b.name.as_str())
            .collect()
    }

    /// Canonical text form. `parse_table(serialize(t)) == t` for every valid
    /// table; empty rows are omitted and comments are not preserved.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name        {}", self.name);
        let _ = writeln!(out, "fano_index  {}", self.fano_index);
        let _ = writeln!(out, "c1_multiple {}", self.c1_multiple);
        out.push('\n');
        let width = self.basis.iter().map(|b| b.name.len()).max().unwrap_or(0);
        for b in &self.basis {
            let _ = writeln!(out, "basis {:width$} {}", b.name, b.degree);
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let terms: Vec<String> = row
                .iter()
                .map(|t| {
                    format!(
                        "{} q{} {}",
                        t.coefficient, t.q_power, self.basis[t.target].name
                    )
                })
                .collect();
            let _ = writeln!(
                out,
                "chev {:width$} : {}",
                self.basis[i].name,
                terms.join(", ")
            );
        }
        out
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parse the text of a table file. Errors carry 1-based line numbers.
/// A `chev` line before target names are resolved: the line number, the
/// source name, and the raw (coefficient, q power, target name) terms.
type PendingRow = (usize, String, Vec<(u64, u32, String)>);

pub fn parse_table(text: &str) -> Result<ChevalleyTable, ParseError> {
    let mut name: Option<String> = None;
    let mut fano_index: Option<u32> = None;
    let mut c1_multiple: Option<u32> = None;
    let mut basis: Vec<BasisElement> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    // Rows are resolved after the basis is complete so that `chev` lines may
    // reference elements declared later in the file.
    let mut pending: Vec<PendingRow> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let directive = tokens.next().expect("non-empty line has a token");
        match directive {
            "name" => {
                let value = tokens
                    .next()
                    .ok_or_else(|| syntax(lineno, "`name` needs a value"))?;
                if tokens.next().is_some() {
                    return Err(syntax(lineno, "`name` takes a single token"));
                }
                if name.replace(value.to_string()).is_some() {
                    return Err(syntax(lineno, "`name` declared twice"));
                }
            }
            "fano_index" | "c1_multiple" => {
                let value = tokens
                    .next()
                    .ok_or_else(|| syntax(lineno, format!("`{directive}` needs a value")))?;
                if tokens.next().is_some() {
                    return Err(syntax(
                        lineno,
                        format!("`{directive}` takes a single integer"),
                    ));
                }
                let parsed: u32 = value.parse().map_err(|_| {
                    syntax(lineno, format!("`{directive}` must be a positive integer"))
                })?;
                if parsed == 0 {
                    return Err(syntax(lineno, format!("`{directive}` must be at least 1")));
                }
                let slot = if directive == "fano_index" {
                    &mut fano_index
                } else {
                    &mut c1_multiple
                };
                if slot.replace(parsed).is_some() {
                    return Err(syntax(lineno, format!("`{directive}` declared twice")));
                }
            }
            "basis" => {
                let elt_name = tokens
                    .next()
                    .ok_or_else(|| syntax(lineno, "`basis` needs a name and a degree"))?;
                let degree = tokens
                    .next()
                    .ok_or_else(|| syntax(lineno, "`basis` needs a degree"))?;
                if tokens.next().is_some() {
                    return Err(syntax(lineno, "`basis` takes a name and a degree"));
                }
                let degree: u32 = degree
                    .parse()
                    .map_err(|_| syntax(lineno, "basis degree must be a nonnegative integer"))?;
                if index.contains_key(elt_name) {
                    return Err(ParseError::DuplicateBasis {
                        line: lineno,
                        name: elt_name.to_string(),
                    });
                }
                index.insert(elt_name.to_string(), basis.len());
                basis.push(BasisElement {
                    name: elt_name.to_string(),
                    degree,
                });
            }
            "chev" => {
                let rest = line["chev".len()..].trim_start();
                let colon = rest
                    .find(':')
                    .ok_or_else(|| syntax(lineno, "`chev` row needs a `:`"))?;
                let source = rest[..colon].trim();
                if source.is_empty() || source.split_whitespace().count() != 1 {
                    return Err(syntax(
                        lineno,
                        "`chev` needs a single source name before `:`",
                    ));
                }
                let mut terms = Vec::new();
                for piece in rest[colon + 1..].split(',') {
                    let parts: Vec<&str> = piece.split_whitespace().collect();
                    if parts.len() != 3 {
                        return Err(syntax(lineno, "each term must be `COEFF qD TARGET`"));
                    }
                    let coefficient: u64 = parts[0].parse().map_err(|_| {
                        syntax(lineno, "term coefficient must be a positive integer")
                    })?;
                    if coefficient == 0 {
                        return Err(syntax(lineno, "term coefficient must be at least 1"));
                    }
                    let q_power: u32 = parts[1]
                        .strip_prefix('q')
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(|| syntax(lineno, "q power must look like `q0`, `q1`, ..."))?;
                    terms.push((coefficient, q_power, parts[2].to_string()));
                }
                pending.push((lineno, source.to_string(), terms));
            }
            other => {
                return Err(syntax(lineno, format!("unknown directive `{other}`")));
            }
        }
    }

    let fano_index = fano_index.ok_or(ParseError::MissingField("fano_index"))?;
    let c1_multiple = c1_multiple.ok_or(ParseError::MissingField("c1_multiple"))?;
    let name = name.unwrap_or_else(|| "unnamed".to_string());

    check_distinguished(&basis, 0, "one").map_err(ParseError::BadIdentity)?;
    check_distinguished(&basis, 1, "h").map_err(ParseError::BadHyperplane)?;

    let mut rows: Vec<Vec<QTerm>> = vec![Vec::new(); basis.len()];
    let mut seen_row = vec![false; basis.len()];
    for (lineno, source, terms) in pending {
        let src = *index
            .get(&source)
            .ok_or_else(|| ParseError::UnknownElement {
                line: lineno,
                name: source.clone(),
            })?;
        if seen_row[src] {
            return Err(ParseError::DuplicateRow {
                line: lineno,
                name: source,
            });
        }
        seen_row[src] = true;
        let mut row = Vec::with_capacity(terms.len());
        for (coefficient, q_power, target_name) in terms {
            let target = *index
                .get(&target_name)
                .ok_or_else(|| ParseError::UnknownElement {
                    line: lineno,
                    name: target_name.clone(),
                })?;
            if row.iter().any(|t: &QTerm| t.target == target) {
                return Err(ParseError::DuplicateTarget {
                    line: lineno,
                    name: target_name,
                });
            }
            row.push(QTerm {
                coefficient,
                q_power,
                target,
            });
        }
        rows[src] = row;
    }

    Ok(ChevalleyTable {
        name,
        fano_index,
        c1_multiple,
        basis,
        rows,
    })
}

fn check_distinguished(basis: &[BasisElement], degree: u32, expected: &str) -> Result<(), String> {
    let matching: Vec<&BasisElement> = basis.iter().filter(|b| b.degree == degree).collect();
    match matching.as_slice() {
        [] => Err("found none".to_string()),
        [single] if single.name == expected => Ok(()),
        [single] => Err(format!("found `{}`", single.name)),
        many => Err(format!("found {} of that degree", many.len())),
    }
}

/// What is wrong with a single row term, in the grading sense. For a term
/// `c q^d beta` in the row of `alpha` the degree rule is
/// `deg(beta) = deg(alpha) + 1 - r * d`, so the expected power is
/// `(deg(alpha) + 1 - deg(beta)) / r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradingIssue {
    /// `deg(alpha) + 1 - deg(beta)` is negative: no power of q can fix it.
    Negative,
    /// The degree gap is not divisible by the Fano index.
    NonIntegral,
    /// The declared power differs from the unique solution.
    WrongPower { expected: u32, actual: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingViolation {
    pub source: String,
    pub target: String,
    pub issue: GradingIssue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingReport {
    pub ok: bool,
    pub violations: Vec<GradingViolation>,
    pub degree_histogram: Vec<usize>,
}

/// Check every row term against the degree rule and recompute its q power.
/// Issues are classified per term with precedence Negative, NonIntegral,
/// WrongPower.
pub fn validate_grading(table: &ChevalleyTable) -> GradingReport {
    let r = i64::from(table.fano_index);
    let mut violations = Vec::new();
    for (i, row) in table.rows.iter().enumerate() {
        for term in row {
            let gap =
                i64::from(table.basis[i].degree) + 1 - i64::from(table.basis[term.target].degree);
            let issue = if gap < 0 {
                Some(GradingIssue::Negative)
            } else if gap % r != 0 {
                Some(GradingIssue::NonIntegral)
            } else {
                let expected = (gap / r) as u32;
                if expected != term.q_power {
                    Some(GradingIssue::WrongPower {
                        expected,
                        actual: term.q_power,
                    })
                } else {
                    None
                }
            };
            if let Some(issue) = issue {
                violations.push(GradingViolation {
                    source: table.basis[i].name.clone(),
                    target: table.basis[term.target].name.clone(),
                    issue,
                });
            }
        }
    }
    GradingReport {
        ok: violations.is_empty(),
        violations,
        degree_histogram: table.degree_histogram(),
    }
}
