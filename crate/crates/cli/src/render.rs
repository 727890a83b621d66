//! Plain-text dot diagrams, top row first.
//!
//! Fermionic cells print `•`, bosonic cells print their multiplicity, and
//! empty cells print `.`.

use mlq_core::{Mlq, Row, Statistic, Word};

use crate::io::{AnyQueue, AnyWord};

fn cell(count: u32, dots: bool) -> String {
    match count {
        0 => ".".into(),
        1 if dots => "•".into(),
        c => c.to_string(),
    }
}

/// Renders count rows given top first.
pub fn render_grid(rows: &[Vec<u32>], dots: bool) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|&c| cell(c, dots)).collect()).collect();
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn render_queue<S: Statistic>(q: &Mlq<S>) -> String {
    let rows: Vec<Vec<u32>> = q.rows().iter().rev().map(|r| r.counts()).collect();
    render_grid(&rows, S::KIND == mlq_core::Kind::Fermionic)
}

/// Column diagram of a word: row `m` from the bottom is `υ_m`.
pub fn render_word<W: Word>(w: &W, dots: bool) -> String {
    let mut rows: Vec<Vec<u32>> = w.decompose().iter().rev().map(|r| r.counts()).collect();
    if rows.is_empty() {
        rows.push(vec![0; w.n()]);
    }
    render_grid(&rows, dots)
}

pub fn render_any_queue(q: &AnyQueue) -> String {
    match q {
        AnyQueue::Fermionic(q) => render_queue(q),
        AnyQueue::Bosonic(q) => render_queue(q),
    }
}

pub fn render_any_word(w: &AnyWord) -> String {
    match w {
        AnyWord::Fermionic(w) => render_word(w, true),
        AnyWord::Bosonic(w) => render_word(w, false),
    }
}
