//! The shipped corpus of `.cmp` documents.
//!
//! Texts are embedded at compile time from `fixtures/`; the truncated
//! augmented simplex category is generated by [`delta_truncated`] and its file
//! is checked against the generator.

use crate::computad::{Computad2, GroupoidalComputad2};
use crate::error::{Error, Result};
use crate::format::{self, CmpDocument};
use crate::graph::{Graph, ObjectId};
use crate::two_dim::Computad3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
}

impl Fixture {
    pub fn document(&self) -> Result<CmpDocument> {
        format::parse(self.text)
    }
}

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        &[$(Fixture {
            name: $name,
            text: include_str!(concat!("../fixtures/", $name, ".cmp")),
        }),*]
    };
}

pub const ALL: &[Fixture] = corpus![
    "delta2dot",
    "delta2",
    "delta_trunc",
    "dstr_dot",
    "dstr",
    "h_delta2",
    "h_delta",
    "torus",
    "circle",
    "g_hat",
    "weak_tree",
    "xi",
    "strictly_increasing",
    "sphere",
];

pub fn get(name: &str) -> Result<CmpDocument> {
    ALL.iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::Io(format!("no fixture named {name}")))?
        .document()
}

fn expect<T>(name: &str, f: impl FnOnce(&CmpDocument) -> Option<T>) -> T {
    let doc = get(name).unwrap_or_else(|e| panic!("fixture {name}: {e}"));
    f(&doc).unwrap_or_else(|| panic!("fixture {name} has kind {}", doc.kind().name()))
}

pub fn graph(name: &str) -> Graph {
    expect(name, CmpDocument::graph)
}

pub fn computad(name: &str) -> Computad2 {
    expect(name, CmpDocument::computad)
}

pub fn groupoidal(name: &str) -> GroupoidalComputad2 {
    expect(name, CmpDocument::groupoidal)
}

pub fn computad3(name: &str) -> Computad3 {
    expect(name, CmpDocument::computad3)
}

/// Faces and degeneracies of the augmented simplex category on the ordinals
/// `0..=max`, with the cosimplicial identities that stay inside the range.
///
/// `d{i}_{m} : m -> m+1` for `i <= m`; `s{k}_{m} : m+1 -> m` for `k < m`.
/// Ordinal `0` is empty and has no degeneracies.
pub fn delta_truncated(max: usize) -> Computad2 {
    let mut g = Graph::empty();
    for m in 0..=max {
        g.push_object(&m.to_string());
    }
    let d = |i: usize, m: usize| format!("d{i}_{m}");
    let s = |k: usize, m: usize| format!("s{k}_{m}");
    for m in 0..max {
        for i in 0..=m {
            g.push_arrow(&d(i, m), ObjectId(m), ObjectId(m + 1));
        }
        for k in 0..m {
            g.push_arrow(&s(k, m), ObjectId(m + 1), ObjectId(m));
        }
    }
    let mut cells: Vec<(String, String, String)> = Vec::new();
    // d^k d^i = d^i d^(k-1), i < k
    for m in 0..max.saturating_sub(1) {
        for k in 1..=m + 1 {
            for i in 0..k {
                cells.push((
                    format!("dd{k}{i}_{m}"),
                    format!("{} {}", d(i, m), d(k, m + 1)),
                    format!("{} {}", d(k - 1, m), d(i, m + 1)),
                ));
            }
        }
    }
    // s^k s^i = s^i s^(k+1), i <= k
    for m in 1..max.saturating_sub(1) {
        for k in 0..m {
            for i in 0..=k {
                cells.push((
                    format!("ss{k}{i}_{m}"),
                    format!("{} {}", s(i, m + 1), s(k, m)),
                    format!("{} {}", s(k + 1, m + 1), s(i, m)),
                ));
            }
        }
    }
    // s^k d^i: d^i s^(k-1) if i < k; identity if i = k, k+1; d^(i-1) s^k if i > k+1
    for m in 1..max {
        for k in 0..m {
            for i in 0..=m {
                let target = if i < k {
                    format!("{} {}", s(k - 1, m - 1), d(i, m - 1))
                } else if i == k || i == k + 1 {
                    format!("id({m})")
                } else {
                    format!("{} {}", s(k, m - 1), d(i - 1, m - 1))
                };
                cells.push((
                    format!("sd{k}{i}_{m}"),
                    format!("{} {}", d(i, m), s(k, m)),
                    target,
                ));
            }
        }
    }
    Computad2::parse_cells(g, &cells).expect("simplicial identities are well typed")
}
