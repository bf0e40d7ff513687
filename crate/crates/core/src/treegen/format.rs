//! Line-oriented listing format.
//!
//! ```text
//! # labels: 1 2 3 4 5 6 7
//! 1100110
//! - 1 + 4 [pivot face inner paf pof]
//! 0101110
//! # trees=21 genlex=yes class=paf:yes
//! ```
//!
//! The optional header gives the label of each edge id. Each tree is its
//! characteristic vector with label 1 leftmost. Step lines between trees are
//! optional when reading.

use std::io::{self, Write};

use thiserror::Error;

use super::{verify_genlex, ClassFilter, Exchange, ExchangeClass, Listing, SpanningTree};
use crate::bits::BitSet;
use crate::labeling::EdgeLabeling;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ListingParseError {
    pub line: usize,
    pub message: String,
}

/// Writes the listing with a trailing summary for `class`.
pub fn write_listing<W: Write + ?Sized>(w: &mut W, listing: &Listing, class: ClassFilter) -> io::Result<()> {
    let labels: Vec<String> = listing.labeling.labels().iter().map(|l| l.to_string()).collect();
    writeln!(w, "# labels: {}", labels.join(" "))?;
    for (i, t) in listing.trees.iter().enumerate() {
        if i > 0 {
            let (ex, c) = listing.steps[i - 1];
            writeln!(w, "{ex} {c}")?;
        }
        writeln!(w, "{t}")?;
    }
    let genlex = verify_genlex(&listing.bits());
    writeln!(
        w,
        "# trees={} genlex={} class={}:{}",
        listing.len(),
        yes_no(genlex),
        class,
        yes_no(listing.all_steps(class))
    )
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// A parsed listing file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListingFile {
    pub labels: Option<Vec<usize>>,
    pub trees: Vec<BitSet>,
    /// Step recorded before tree `i + 1`, if any.
    pub steps: Vec<Option<(Exchange, ExchangeClass)>>,
}

impl ListingFile {
    /// Converts to a [`Listing`]. Missing steps are derived from the
    /// symmetric difference; where that is not a single exchange the step is
    /// left as `- 0 + 0` for verification to reject.
    pub fn into_listing(self) -> Result<Listing, String> {
        let m = self.trees.first().map_or(0, BitSet::len);
        let labeling = match self.labels {
            Some(l) => EdgeLabeling::new(l).map_err(|e| e.to_string())?,
            None => EdgeLabeling::identity(m),
        };
        if labeling.m() != m {
            return Err(format!("header has {} labels, trees have {m} bits", labeling.m()));
        }
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.unwrap_or_else(|| {
                    let (a, b) = (&self.trees[i], &self.trees[i + 1]);
                    let d = a.symmetric_difference(b);
                    let ex = match d.as_slice() {
                        [x, y] if a.contains(*x) => Exchange {
                            removed: x + 1,
                            added: y + 1,
                        },
                        [x, y] => Exchange {
                            removed: y + 1,
                            added: x + 1,
                        },
                        _ => Exchange { removed: 0, added: 0 },
                    };
                    (ex, ExchangeClass::default())
                })
            })
            .collect();
        let trees: Vec<SpanningTree> = self.trees.into_iter().map(SpanningTree::from_bits_unchecked).collect();
        let initial = trees
            .first()
            .cloned()
            .unwrap_or_else(|| SpanningTree::from_bits_unchecked(BitSet::new(0)));
        Ok(Listing {
            labeling,
            initial,
            trees,
            steps,
        })
    }
}

fn parse_step(line: &str) -> Option<(Exchange, ExchangeClass)> {
    let (head, classes) = match line.find('[') {
        Some(i) => {
            let rest = line[i + 1..].trim_end();
            (&line[..i], Some(rest.strip_suffix(']')?))
        }
        None => (line, None),
    };
    let tok: Vec<&str> = head.split_whitespace().collect();
    let [minus, e, plus, f] = tok.as_slice() else {
        return None;
    };
    if *minus != "-" || *plus != "+" {
        return None;
    }
    let ex = Exchange {
        removed: e.parse().ok()?,
        added: f.parse().ok()?,
    };
    let mut class = ExchangeClass::default();
    for name in classes.unwrap_or("").split_whitespace() {
        match name {
            "pivot" => class.pivot = true,
            "face" => class.face = true,
            "inner" => class.face_inner = true,
            "paf" | "pof" => {}
            _ => return None,
        }
    }
    Some((ex, class))
}

pub fn parse_listing(text: &str) -> Result<ListingFile, ListingParseError> {
    let mut labels = None;
    let mut trees: Vec<BitSet> = Vec::new();
    let mut steps = Vec::new();
    let mut pending: Option<(Exchange, ExchangeClass)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| ListingParseError { line: line_no, message };
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(list) = rest.trim().strip_prefix("labels:") {
                if !trees.is_empty() {
                    return Err(err("labels header after the first tree".into()));
                }
                let parsed: Result<Vec<usize>, _> = list.split_whitespace().map(str::parse).collect();
                labels = Some(parsed.map_err(|e| err(format!("bad label: {e}")))?);
            }
            continue;
        }
        if line.starts_with('-') {
            if trees.is_empty() || pending.is_some() {
                return Err(err("step line must follow a tree".into()));
            }
            pending = Some(parse_step(line).ok_or_else(|| err(format!("malformed step {line:?}")))?);
            continue;
        }
        let bits = BitSet::parse_bits(line).ok_or_else(|| err(format!("expected a 0/1 string, got {line:?}")))?;
        if let Some(first) = trees.first() {
            if first.len() != bits.len() {
                return Err(err(format!("tree has {} bits, expected {}", bits.len(), first.len())));
            }
            steps.push(pending.take());
        } else if let Some(l) = &labels {
            if l.len() != bits.len() {
                return Err(err(format!(
                    "tree has {} bits, header has {} labels",
                    bits.len(),
                    l.len()
                )));
            }
        }
        trees.push(bits);
    }
    if pending.is_some() {
        return Err(ListingParseError {
            line: text.lines().count(),
            message: "step line without a following tree".into(),
        });
    }
    Ok(ListingFile { labels, trees, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedgraph::{build_embedding, named};
    use crate::treegen::{Generator, LabeledGraph, TieBreak};

    #[test]
    fn round_trip() {
        let (g, order) = named::fan(5);
        let e = build_embedding(&g, &order).unwrap();
        let l = EdgeLabeling::identity(7);
        let lg = LabeledGraph::new(&g, &l);
        let t = SpanningTree::first(&lg).unwrap();
        let listing = Generator::new(&g, &l, TieBreak::Closest)
            .with_embedding(&e)
            .run(&t)
            .unwrap();
        let mut out = Vec::new();
        write_listing(&mut out, &listing, ClassFilter::Paf).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.ends_with("# trees=21 genlex=yes class=paf:yes\n"));
        let parsed = parse_listing(&text).unwrap().into_listing().unwrap();
        assert_eq!(parsed.trees, listing.trees);
        assert_eq!(parsed.steps, listing.steps);
    }

    #[test]
    fn steps_optional_and_errors_have_lines() {
        let f = parse_listing("110\n011\n101\n").unwrap();
        assert_eq!(f.steps, vec![None, None]);
        let l = f.into_listing().unwrap();
        assert_eq!(l.steps[0].0, Exchange { removed: 1, added: 3 });

        let e = parse_listing("110\n- 1 + 3 [pivot]\n01x\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_listing("110\n- 1 + [pivot]\n011\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_listing("110\n0110\n").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
