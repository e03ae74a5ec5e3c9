//! graph6 line streams from files or stdin, one record per line.

use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use hamsub_core::graph::Graph;
use hamsub_core::graph6;

/// A parsed stream line: 1-based line number plus the decode outcome.
pub struct StreamItem {
    pub line: u64,
    pub text: String,
    pub graph: Result<Graph, graph6::Graph6Error>,
}

pub fn read_lines(reader: impl Read) -> Vec<StreamItem> {
    BufReader::new(reader)
        .lines()
        .map_while(Result::ok)
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let text = l.trim().to_string();
            let graph = graph6::decode(&text);
            StreamItem { line: i as u64 + 1, text, graph }
        })
        .collect()
}

/// Reads from the path, or stdin when the path is `-`.
pub fn read_input(path: &str) -> anyhow::Result<Vec<StreamItem>> {
    if path == "-" {
        Ok(read_lines(std::io::stdin().lock()))
    } else {
        let file = std::fs::File::open(Path::new(path))
            .map_err(|e| anyhow::anyhow!("cannot open {path}: {e}"))?;
        Ok(read_lines(file))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_good_and_bad_lines() {
        let items = read_lines("C~\n\nBw\nC\u{1f}x\n".as_bytes());
        assert_eq!(items.len(), 3);
        assert!(items[0].graph.is_ok());
        assert_eq!(items[1].line, 3);
        assert!(items[2].graph.is_err());
    }
}
