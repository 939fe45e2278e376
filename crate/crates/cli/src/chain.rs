//! Parser and printer for the chain mini-language.
//!
//! Grammar: `step (';' step)*` with
//! `step = "levi[" indices "]" | "dynkin[" index ",n=" int "]" | "twist[" indices "]"`.
//! Indices refer to the current simple system of the subsystem being
//! stepped; `twist` re-chooses that simple system by reflecting it in its
//! own members.

use std::fmt::Write as _;

use maxrank_core::subsystems::Step;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainParseError {
    pub pos: usize,
    pub msg: String,
}

impl std::fmt::Display for ChainParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "chain syntax error at byte {}: {}", self.pos, self.msg)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ChainParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(ChainParseError { pos: self.pos, msg: format!("expected `{token}`") })
        }
    }

    fn number(&mut self) -> Result<usize, ChainParseError> {
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(ChainParseError { pos: self.pos, msg: "expected a number".into() });
        }
        self.pos += digits.len();
        digits
            .parse()
            .map_err(|_| ChainParseError { pos: self.pos, msg: "number too large".into() })
    }

    fn index_list(&mut self) -> Result<Vec<usize>, ChainParseError> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.rest().starts_with(']') {
            return Ok(out);
        }
        loop {
            self.skip_ws();
            out.push(self.number()?);
            self.skip_ws();
            if !self.eat(",") {
                break;
            }
        }
        Ok(out)
    }
}

/// Parse a chain specification into steps. Out-of-range indices are left
/// to chain application.
pub fn parse_chain_spec(text: &str) -> Result<Vec<Step>, ChainParseError> {
    let mut cur = Cursor { text, pos: 0 };
    let mut steps = Vec::new();
    cur.skip_ws();
    if cur.rest().is_empty() {
        return Ok(steps);
    }
    loop {
        cur.skip_ws();
        if cur.eat("levi[") {
            let indices = cur.index_list()?;
            cur.skip_ws();
            cur.expect("]")?;
            steps.push(Step::Levi(indices));
        } else if cur.eat("dynkin[") {
            cur.skip_ws();
            let index = cur.number()?;
            cur.skip_ws();
            cur.expect(",")?;
            cur.skip_ws();
            cur.expect("n=")?;
            let n = cur.number()?;
            if n > u32::MAX as usize {
                return Err(ChainParseError { pos: cur.pos, msg: "modulus too large".into() });
            }
            cur.skip_ws();
            cur.expect("]")?;
            steps.push(Step::Dynkin { index, n: n as u32 });
        } else if cur.eat("twist[") {
            let indices = cur.index_list()?;
            cur.skip_ws();
            cur.expect("]")?;
            steps.push(Step::Twist(indices));
        } else {
            return Err(ChainParseError {
                pos: cur.pos,
                msg: "expected `levi[`, `dynkin[` or `twist[`".into(),
            });
        }
        cur.skip_ws();
        if cur.rest().is_empty() {
            return Ok(steps);
        }
        cur.expect(";")?;
    }
}

/// Render steps in the mini-language.
pub fn chain_to_string(steps: &[Step]) -> String {
    let mut out = String::new();
    for (i, step) in steps.iter().enumerate() {
        if i > 0 {
            out.push(';');
        }
        match step {
            Step::Levi(idx) => {
                out.push_str("levi[");
                join_indices(&mut out, idx);
                out.push(']');
            }
            Step::Dynkin { index, n } => {
                let _ = write!(out, "dynkin[{index},n={n}]");
            }
            Step::Twist(idx) => {
                out.push_str("twist[");
                join_indices(&mut out, idx);
                out.push(']');
            }
        }
    }
    out
}

fn join_indices(out: &mut String, idx: &[usize]) {
    for (i, v) in idx.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{v}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_chain_spec("levi[0,2]").unwrap(), vec![Step::Levi(vec![0, 2])]);
        assert_eq!(
            parse_chain_spec("dynkin[1,n=2];levi[0]").unwrap(),
            vec![Step::Dynkin { index: 1, n: 2 }, Step::Levi(vec![0])]
        );
        assert_eq!(parse_chain_spec("levi[]").unwrap(), vec![Step::Levi(vec![])]);
        assert_eq!(parse_chain_spec("").unwrap(), vec![]);
        assert_eq!(
            parse_chain_spec("twist[1,0];levi[0]").unwrap(),
            vec![Step::Twist(vec![1, 0]), Step::Levi(vec![0])]
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_chain_spec("dynkin[1]").unwrap_err();
        assert_eq!(err.pos, 8);
        assert!(parse_chain_spec("levi[0").is_err());
        assert!(parse_chain_spec("frob[1]").is_err());
        assert!(parse_chain_spec("levi[0] levi[1]").is_err());
    }

    #[test]
    fn roundtrip() {
        for s in ["levi[0,2]", "dynkin[1,n=2];levi[0]", "twist[1];dynkin[0,n=3]", "levi[]"] {
            let steps = parse_chain_spec(s).unwrap();
            assert_eq!(chain_to_string(&steps), s);
        }
    }
}
