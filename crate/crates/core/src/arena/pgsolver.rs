//! Reading and writing games in the PGSolver text format.
//!
//! ```text
//! parity 1;
//! 0 2 0 0,1 "start";
//! 1 1 1 0;
//! ```
//!
//! The header gives the highest node id and is optional on input. Each node
//! statement is `<id> <priority> <owner> <succ>,<succ>,... ["name"];`.
//! Priorities are used as colors unchanged.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::game::{GameError, NodeDecl, ParityGame, Player};
use super::GameView;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("node {0} declared twice")]
    DuplicateNode(usize),
    #[error("node ids must be 0..{count}; id {missing} is missing")]
    MissingNode { count: usize, missing: usize },
    #[error(transparent)]
    Game(#[from] GameError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Splits the input into `;`-terminated statements, paired with the line
/// each one starts on. Semicolons inside quoted names do not terminate.
fn statements(text: &str) -> Result<Vec<(usize, &str)>, ParseError> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut line = 1;
    // line of the first non-blank character of the current statement
    let mut first_line = None;
    let mut in_quotes = false;
    for (i, ch) in text.char_indices() {
        match ch {
            '\n' if in_quotes => return Err(syntax(line, "unterminated name")),
            '\n' => line += 1,
            ';' if !in_quotes => {
                let stmt = text[start..i].trim();
                if !stmt.is_empty() {
                    out.push((first_line.unwrap_or(line), stmt));
                }
                start = i + 1;
                first_line = None;
            }
            c => {
                if c == '"' {
                    in_quotes = !in_quotes;
                }
                if !c.is_whitespace() && first_line.is_none() {
                    first_line = Some(line);
                }
            }
        }
    }
    if let Some(l) = first_line {
        return Err(syntax(l, "statement not terminated by ';'"));
    }
    Ok(out)
}

fn parse_uint(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| syntax(line, format!("invalid {what} {token:?}")))
}

fn parse_node(line: usize, stmt: &str) -> Result<(usize, NodeDecl), ParseError> {
    let (body, name) = match stmt.find('"') {
        Some(q) => {
            let tail = &stmt[q + 1..];
            let close = tail
                .find('"')
                .ok_or_else(|| syntax(line, "unterminated name"))?;
            if !tail[close + 1..].trim().is_empty() {
                return Err(syntax(line, "unexpected text after name"));
            }
            (&stmt[..q], Some(tail[..close].to_string()))
        }
        None => (stmt, None),
    };
    let tokens: Vec<&str> = body.split_whitespace().collect();
    if tokens.len() < 4 {
        return Err(syntax(line, "expected `<id> <priority> <owner> <successors>`"));
    }
    let id = parse_uint(line, tokens[0], "node id")?;
    let color = parse_uint(line, tokens[1], "priority")?;
    let owner = match tokens[2] {
        "0" => Player::Even,
        "1" => Player::Odd,
        other => return Err(syntax(line, format!("invalid owner {other:?}"))),
    };
    let succ_text = tokens[3..].concat();
    let successors = succ_text
        .split(',')
        .map(|t| parse_uint(line, t, "successor"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((
        id,
        NodeDecl {
            owner,
            color,
            successors,
            name,
        },
    ))
}

pub fn parse_pgsolver(text: &str) -> Result<ParityGame, ParseError> {
    let mut nodes: BTreeMap<usize, NodeDecl> = BTreeMap::new();
    for (idx, (line, stmt)) in statements(text)?.into_iter().enumerate() {
        let mut words = stmt.split_whitespace();
        match words.next() {
            Some("parity") => {
                if idx != 0 {
                    return Err(syntax(line, "header must be the first statement"));
                }
                let value = words.next().ok_or_else(|| syntax(line, "missing header value"))?;
                value
                    .parse::<i64>()
                    .map_err(|_| syntax(line, format!("invalid header value {value:?}")))?;
                if words.next().is_some() {
                    return Err(syntax(line, "unexpected text in header"));
                }
            }
            Some("start") => {
                let value = words.next().ok_or_else(|| syntax(line, "missing start node"))?;
                parse_uint(line, value, "start node")?;
            }
            _ => {
                let (id, decl) = parse_node(line, stmt)?;
                if nodes.insert(id, decl).is_some() {
                    return Err(ParseError::DuplicateNode(id));
                }
            }
        }
    }
    let count = nodes.len();
    if let Some(missing) = (0..count).find(|v| !nodes.contains_key(v)) {
        return Err(ParseError::MissingNode { count, missing });
    }
    Ok(ParityGame::new(nodes.into_values().collect())?)
}

/// Canonical PGSolver text: header, then one line per node in id order.
pub fn serialize_pgsolver(game: &ParityGame) -> String {
    let n = game.num_nodes();
    let mut out = String::with_capacity(16 * (n + 1));
    let _ = writeln!(out, "parity {};", n as i64 - 1);
    for v in 0..n {
        let _ = write!(out, "{} {} {} ", v, game.color(v), game.owner(v).index());
        for (i, w) in game.successors(v).iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{w}");
        }
        if let Some(name) = game.name(v) {
            let _ = write!(out, " \"{name}\"");
        }
        out.push_str(";\n");
    }
    out
}
