//! The parameter file grammar.
//!
//! ```text
//! file       := line*
//! line       := blank | comment | stage-line | "repeat" | "end"
//! comment    := "#" to end of line
//! stage-line := "stage" SP "q=" INT SP "a=" INT ("," INT)*
//! ```
//!
//! A stage line carries exactly `q - 1` comma-separated spacer values. At
//! most one `repeat ... end` block is allowed; it must come last and be
//! non-empty. Stages before it form the prefix, stages inside it the tail.

use ro1::params::{RawSpec, RawStage};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamFileError {
    #[error("line {line}: expected a stage line, 'repeat', or 'end', got {content:?}")]
    UnexpectedLine { line: usize, content: String },
    #[error("line {line}: nested repeat block")]
    NestedRepeat { line: usize },
    #[error("line {line}: 'end' without a matching 'repeat'")]
    EndWithoutRepeat { line: usize },
    #[error("line {line}: the repeat block must be the last thing in the file")]
    ContentAfterEnd { line: usize },
    #[error("line {line}: malformed integer in {content:?}")]
    BadInteger { line: usize, content: String },
    #[error("unclosed repeat block")]
    UnclosedRepeat,
    #[error("repeat block is empty")]
    EmptyRepeat,
}

fn parse_stage_line(no: usize, line: &str) -> Result<RawStage, ParamFileError> {
    let mut parts = line.split_whitespace();
    let bad = || ParamFileError::UnexpectedLine {
        line: no,
        content: line.to_string(),
    };
    if parts.next() != Some("stage") {
        return Err(bad());
    }
    let q_part = parts.next().ok_or_else(bad)?;
    let a_part = parts.next().ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    let q_str = q_part.strip_prefix("q=").ok_or_else(bad)?;
    let a_str = a_part.strip_prefix("a=").ok_or_else(bad)?;
    let int = |s: &str| {
        s.parse::<i64>().map_err(|_| ParamFileError::BadInteger {
            line: no,
            content: s.to_string(),
        })
    };
    let q = int(q_str)?;
    let spacers = a_str.split(',').map(int).collect::<Result<Vec<_>, _>>()?;
    Ok(RawStage { q, spacers })
}

/// Parse parameter file text into raw (unvalidated) spec data.
pub fn parse_param_file(text: &str) -> Result<RawSpec, ParamFileError> {
    enum Section {
        Prefix,
        Tail,
        Done,
    }
    let mut section = Section::Prefix;
    let mut prefix = Vec::new();
    let mut tail = Vec::new();
    let mut saw_repeat = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match (line, &section) {
            (_, Section::Done) => return Err(ParamFileError::ContentAfterEnd { line: no }),
            ("repeat", Section::Prefix) => {
                if saw_repeat {
                    return Err(ParamFileError::NestedRepeat { line: no });
                }
                saw_repeat = true;
                section = Section::Tail;
            }
            ("repeat", Section::Tail) => return Err(ParamFileError::NestedRepeat { line: no }),
            ("end", Section::Tail) => section = Section::Done,
            ("end", Section::Prefix) => return Err(ParamFileError::EndWithoutRepeat { line: no }),
            (_, Section::Prefix) => prefix.push(parse_stage_line(no, line)?),
            (_, Section::Tail) => tail.push(parse_stage_line(no, line)?),
        }
    }
    match section {
        Section::Tail => Err(ParamFileError::UnclosedRepeat),
        Section::Done if tail.is_empty() => Err(ParamFileError::EmptyRepeat),
        _ => Ok(RawSpec {
            prefix,
            tail: saw_repeat.then_some(tail),
            name: None,
        }),
    }
}

pub fn render_stage(stage: &ro1::params::StageSpec) -> String {
    let spacers: Vec<String> = stage.spacers().iter().map(u64::to_string).collect();
    format!("stage q={} a={}", stage.q(), spacers.join(","))
}

/// Render a spec back into parameter file syntax.
pub fn render_spec(spec: &ro1::params::ParamSpec) -> String {
    let mut out = String::new();
    for stage in spec.prefix() {
        out.push_str(&render_stage(stage));
        out.push('\n');
    }
    if let Some(tail) = spec.tail() {
        out.push_str("repeat\n");
        for stage in tail {
            out.push_str(&render_stage(stage));
            out.push('\n');
        }
        out.push_str("end\n");
    }
    out
}
