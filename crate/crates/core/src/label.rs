//! Structured vertex labels.
//!
//! Every vertex of a constructed instance carries a label describing its role:
//! selector vertices, gadget gates, critical-pair vertices, path subdivisions,
//! and forced twins. Labels serialize to a compact bracketed form that is
//! whitespace-free, so they survive line-oriented instance files, and they
//! round-trip byte-exactly.

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// Gate corners of a propagation gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Corner {
    Nw,
    Ne,
    Sw,
    Se,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::Nw, Corner::Ne, Corner::Sw, Corner::Se];

    fn as_str(self) -> &'static str {
        match self {
            Corner::Nw => "nw",
            Corner::Ne => "ne",
            Corner::Sw => "sw",
            Corner::Se => "se",
        }
    }
}

/// The two parallel critical-pair rows of a propagation gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropRow {
    A,
    Alpha,
}

impl PropRow {
    fn as_str(self) -> &'static str {
        match self {
            PropRow::A => "a",
            PropRow::Alpha => "alpha",
        }
    }
}

/// The three vertices of an edge gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgePart {
    C,
    Cp,
    G,
}

impl EdgePart {
    fn as_str(self) -> &'static str {
        match self {
            EdgePart::C => "c",
            EdgePart::Cp => "cp",
            EdgePart::G => "g",
        }
    }
}

/// The six named vertices of a forced-set gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FsPart {
    P,
    Q,
    R,
    S,
    Pi,
    Rho,
}

impl FsPart {
    fn as_str(self) -> &'static str {
        match self {
            FsPart::P => "p",
            FsPart::Q => "q",
            FsPart::R => "r",
            FsPart::S => "s",
            FsPart::Pi => "pi",
            FsPart::Rho => "rho",
        }
    }
}

/// A structured vertex label.
///
/// Concrete grammar (indices are 1-based):
///
/// ```text
/// sel[i,j,g]                 selector vertex g of row i, column j
/// gate[nw|ne|sw|se,i,j]      gate of the propagation gadget between columns j and j+1
/// A[a|alpha,i,j,g]           critical-pair vertex of the same gadget
/// edge[c|cp|g,j]             edge-gadget vertex of column j
/// fs[p|q|r|s|pi|rho,i,j]     forced-set gadget vertex
/// path[<from>,<to>,<pos>]    pos-th internal vertex of the path built from <from> to <to>
/// forced[<host>,0|1]         the two pendant twins attached to <host>
/// <name>                     free-form label for hand-written instances
/// ```
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Sel { i: u32, j: u32, g: u32 },
    Gate { corner: Corner, i: u32, j: u32 },
    Prop { row: PropRow, i: u32, j: u32, g: u32 },
    Edge { part: EdgePart, j: u32 },
    Fs { part: FsPart, i: u32, j: u32 },
    Path { from: Box<Label>, to: Box<Label>, pos: u32 },
    Forced { host: Box<Label>, twin: bool },
    Name(String),
}

impl Label {
    pub fn sel(i: u32, j: u32, g: u32) -> Label {
        Label::Sel { i, j, g }
    }

    pub fn gate(corner: Corner, i: u32, j: u32) -> Label {
        Label::Gate { corner, i, j }
    }

    pub fn prop(row: PropRow, i: u32, j: u32, g: u32) -> Label {
        Label::Prop { row, i, j, g }
    }

    pub fn edge(part: EdgePart, j: u32) -> Label {
        Label::Edge { part, j }
    }

    pub fn fs(part: FsPart, i: u32, j: u32) -> Label {
        Label::Fs { part, i, j }
    }

    pub fn path(from: &Label, to: &Label, pos: u32) -> Label {
        Label::Path {
            from: Box::new(from.clone()),
            to: Box::new(to.clone()),
            pos,
        }
    }

    pub fn forced(host: &Label, twin: bool) -> Label {
        Label::Forced {
            host: Box::new(host.clone()),
            twin,
        }
    }

    /// Free-form label for hand-written instances and tests.
    pub fn name(s: impl Into<String>) -> Label {
        Label::Name(s.into())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Sel { i, j, g } => write!(f, "sel[{i},{j},{g}]"),
            Label::Gate { corner, i, j } => write!(f, "gate[{},{i},{j}]", corner.as_str()),
            Label::Prop { row, i, j, g } => write!(f, "A[{},{i},{j},{g}]", row.as_str()),
            Label::Edge { part, j } => write!(f, "edge[{},{j}]", part.as_str()),
            Label::Fs { part, i, j } => write!(f, "fs[{},{i},{j}]", part.as_str()),
            Label::Path { from, to, pos } => write!(f, "path[{from},{to},{pos}]"),
            Label::Forced { host, twin } => write!(f, "forced[{host},{}]", u8::from(*twin)),
            Label::Name(s) => f.write_str(s),
        }
    }
}

impl FromStr for Label {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Label, ParseError> {
        parse_label(s)
    }
}

fn bad(s: &str) -> ParseError {
    ParseError::BadLabel(s.to_string())
}

/// Splits `s` on commas at bracket-nesting depth zero.
fn split_top_level(s: &str) -> Result<Vec<&str>, ParseError> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (idx, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.checked_sub(1).ok_or_else(|| bad(s))?,
            ',' if depth == 0 => {
                parts.push(&s[start..idx]);
                start = idx + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(bad(s));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_u32(s: &str, whole: &str) -> Result<u32, ParseError> {
    s.parse().map_err(|_| bad(whole))
}

fn parse_label(s: &str) -> Result<Label, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(bad(s));
    }
    let Some(open) = s.find('[') else {
        // Free-form label: a single bracket-free, comma-free token.
        if s.contains([']', ',']) || s.contains(char::is_whitespace) {
            return Err(bad(s));
        }
        return Ok(Label::Name(s.to_string()));
    };
    if !s.ends_with(']') {
        return Err(bad(s));
    }
    let head = &s[..open];
    let args = split_top_level(&s[open + 1..s.len() - 1])?;
    match (head, args.as_slice()) {
        ("sel", [i, j, g]) => Ok(Label::Sel {
            i: parse_u32(i, s)?,
            j: parse_u32(j, s)?,
            g: parse_u32(g, s)?,
        }),
        ("gate", [c, i, j]) => {
            let corner = match *c {
                "nw" => Corner::Nw,
                "ne" => Corner::Ne,
                "sw" => Corner::Sw,
                "se" => Corner::Se,
                _ => return Err(bad(s)),
            };
            Ok(Label::Gate {
                corner,
                i: parse_u32(i, s)?,
                j: parse_u32(j, s)?,
            })
        }
        ("A", [row, i, j, g]) => {
            let row = match *row {
                "a" => PropRow::A,
                "alpha" => PropRow::Alpha,
                _ => return Err(bad(s)),
            };
            Ok(Label::Prop {
                row,
                i: parse_u32(i, s)?,
                j: parse_u32(j, s)?,
                g: parse_u32(g, s)?,
            })
        }
        ("edge", [part, j]) => {
            let part = match *part {
                "c" => EdgePart::C,
                "cp" => EdgePart::Cp,
                "g" => EdgePart::G,
                _ => return Err(bad(s)),
            };
            Ok(Label::Edge {
                part,
                j: parse_u32(j, s)?,
            })
        }
        ("fs", [part, i, j]) => {
            let part = match *part {
                "p" => FsPart::P,
                "q" => FsPart::Q,
                "r" => FsPart::R,
                "s" => FsPart::S,
                "pi" => FsPart::Pi,
                "rho" => FsPart::Rho,
                _ => return Err(bad(s)),
            };
            Ok(Label::Fs {
                part,
                i: parse_u32(i, s)?,
                j: parse_u32(j, s)?,
            })
        }
        ("path", [from, to, pos]) => Ok(Label::Path {
            from: Box::new(parse_label(from)?),
            to: Box::new(parse_label(to)?),
            pos: parse_u32(pos, s)?,
        }),
        ("forced", [host, twin]) => {
            let twin = match *twin {
                "0" => false,
                "1" => true,
                _ => return Err(bad(s)),
            };
            Ok(Label::Forced {
                host: Box::new(parse_label(host)?),
                twin,
            })
        }
        _ => Err(bad(s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(text: &str) -> Label {
        let label: Label = text.parse().expect(text);
        assert_eq!(label.to_string(), text);
        label
    }

    #[test]
    fn grammar_roundtrips() {
        roundtrip("sel[1,2,3]");
        roundtrip("gate[nw,1,2]");
        roundtrip("A[alpha,2,1,4]");
        roundtrip("edge[cp,7]");
        roundtrip("fs[rho,1,1]");
        roundtrip("path[sel[1,1,1],edge[g,1],3]");
        roundtrip("forced[gate[se,2,3],1]");
        roundtrip("forced[path[sel[1,1,1],fs[pi,1,1],4],0]");
        roundtrip("path[path[sel[1,1,1],gate[sw,1,1],1],fs[pi,1,1],1]");
        roundtrip("v0");
    }

    #[test]
    fn rejects_malformed() {
        assert!("sel[1,2]".parse::<Label>().is_err());
        assert!("gate[xx,1,2]".parse::<Label>().is_err());
        assert!("path[sel[1,1,1],edge[g,1]".parse::<Label>().is_err());
        assert!("a,b".parse::<Label>().is_err());
        assert!("".parse::<Label>().is_err());
        assert!("forced[v0,2]".parse::<Label>().is_err());
    }
}
