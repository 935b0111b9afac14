//! Product expressions such as `S^2 x M(Z/2,3) x atomic:A where A(5,3,2)`.
//!
//! Grammar, whitespace-insensitive:
//!
//! ```text
//! expr    := factor ('x' factor)* ['where' decl (';' decl)* [';']]
//! factor  := 'S^' n | 'RP^' n | 'CP^' n | 'HP^' n
//!          | 'M(' group ',' n ')' | 'K(' group ',' n ')'
//!          | 'L(' d ',' p ')' | 'atomic:' name
//! decl    := name '(' n0 ',' p ',' (r | 'inf') ')'
//!          | 'no_retract(' name ',' name ')'
//! ```
//!
//! `L(d,p)` is the lens space of total dimension `d = 2n+1`. Names use
//! letters, digits and `_` but not the letter `x`, which separates factors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::abgroup::{is_prime, parse_cyclic_sum};
use crate::catalog::{AtomicSpace, LocalCyclicModule, SpaceDescriptor};
use crate::error::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("invalid value at column {column}: {message}")]
    Domain { column: usize, message: String },
}

impl ParseError {
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. } | ParseError::Domain { column, .. } => *column,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expression {
    pub source: String,
    pub factors: Vec<SpaceDescriptor>,
}

pub fn parse_expression(text: &str) -> Result<Expression, ParseError> {
    Parser { text, pos: 0 }.expression()
}

impl FromStr for Expression {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expression(s)
    }
}

/// Canonical form: factors joined by ` x `, then a `where` block for any
/// atomic factors.
impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" x "))?;
        let mut atoms: BTreeMap<&str, &AtomicSpace> = BTreeMap::new();
        for s in &self.factors {
            if let SpaceDescriptor::Atomic(a) = s {
                atoms.insert(&a.name, a);
            }
        }
        if atoms.is_empty() {
            return Ok(());
        }
        let mut decls: Vec<String> = atoms
            .values()
            .map(|a| {
                let r = a.module.exponent.map_or("inf".to_string(), |r| r.to_string());
                format!("{}({},{},{r})", a.name, a.hurewicz_dim, a.module.prime)
            })
            .collect();
        for (name, a) in &atoms {
            for other in a.not_retract_of.iter().filter(|o| o.as_str() > *name) {
                if atoms.contains_key(other.as_str()) {
                    decls.push(format!("no_retract({name},{other})"));
                }
            }
        }
        write!(f, " where {}", decls.join("; "))
    }
}

enum Pending {
    Space(SpaceDescriptor),
    Atomic { name: String, column: usize },
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

fn is_name_char(c: char) -> bool {
    (c.is_ascii_alphanumeric() || c == '_') && c != 'x'
}

impl Parser<'_> {
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { column: self.column(), message: message.into() })
    }

    fn found(&self) -> String {
        match self.rest().chars().next() {
            Some(c) => format!("`{c}`"),
            None => "end of input".into(),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.syntax(format!("expected `{token}`, found {}", self.found()))
        }
    }

    fn number(&mut self) -> Result<(u64, usize), ParseError> {
        self.skip_ws();
        let column = self.column();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return self.syntax(format!("expected a number, found {}", self.found()));
        }
        self.pos += digits.len();
        let value = digits.parse().map_err(|_| ParseError::Domain {
            column,
            message: format!("number {digits} is too large"),
        })?;
        Ok((value, column))
    }

    fn small(&mut self) -> Result<(u32, usize), ParseError> {
        let (v, column) = self.number()?;
        let v = u32::try_from(v).map_err(|_| ParseError::Domain {
            column,
            message: format!("dimension {v} is too large"),
        })?;
        Ok((v, column))
    }

    fn name(&mut self) -> Result<(String, usize), ParseError> {
        self.skip_ws();
        let column = self.column();
        let name: String = self.rest().chars().take_while(|&c| is_name_char(c)).collect();
        if name.is_empty() || name.starts_with(|c: char| c.is_ascii_digit()) {
            return self.syntax(format!("expected a name, found {}", self.found()));
        }
        self.pos += name.len();
        Ok((name, column))
    }

    fn group(&mut self) -> Result<crate::abgroup::FgAbGroup, ParseError> {
        self.skip_ws();
        let end = self.rest().find([',', ')']).map_or(self.text.len(), |i| self.pos + i);
        let literal = &self.text[self.pos..end];
        let group = parse_cyclic_sum(literal, self.pos).map_err(|e| match e {
            AlgebraError::Literal { column, message } => ParseError::Syntax { column, message },
            other => ParseError::Syntax { column: self.column(), message: other.to_string() },
        })?;
        self.pos = end;
        Ok(group.canonical())
    }

    fn expression(mut self) -> Result<Expression, ParseError> {
        let mut pending = vec![self.factor()?];
        let mut atoms = BTreeMap::new();
        loop {
            self.skip_ws();
            if self.rest().is_empty() {
                break;
            }
            if self.eat("where") {
                atoms = self.declarations()?;
                self.skip_ws();
                if !self.rest().is_empty() {
                    return self.syntax(format!("unexpected {}", self.found()));
                }
                break;
            }
            if self.eat("x") {
                pending.push(self.factor()?);
                continue;
            }
            return self.syntax(format!("expected `x`, `where` or end of input, found {}", self.found()));
        }
        let factors = pending
            .into_iter()
            .map(|p| match p {
                Pending::Space(s) => Ok(s),
                Pending::Atomic { name, column } => atoms
                    .get(&name)
                    .cloned()
                    .map(SpaceDescriptor::Atomic)
                    .ok_or(ParseError::Domain {
                        column,
                        message: format!("atomic space `{name}` is not declared in a where block"),
                    }),
            })
            .collect::<Result<_, _>>()?;
        Ok(Expression { source: self.text.to_string(), factors })
    }

    fn factor(&mut self) -> Result<Pending, ParseError> {
        self.skip_ws();
        let column = self.column();
        let domain = |s: SpaceDescriptor| {
            s.validate().map(|_| Pending::Space(s.clone())).map_err(|e| ParseError::Domain {
                column,
                message: e.to_string(),
            })
        };
        if self.eat("atomic:") {
            let (name, _) = self.name()?;
            return Ok(Pending::Atomic { name, column });
        }
        for (prefix, make) in [
            ("RP^", (|n| SpaceDescriptor::RealProjective { n }) as fn(u32) -> SpaceDescriptor),
            ("CP^", |n| SpaceDescriptor::ComplexProjective { n }),
            ("HP^", |n| SpaceDescriptor::QuaternionicProjective { n }),
            ("S^", |n| SpaceDescriptor::Sphere { n }),
        ] {
            if self.eat(prefix) {
                let (n, _) = self.small()?;
                return domain(make(n));
            }
        }
        for (prefix, moore) in [("M(", true), ("K(", false)] {
            if self.eat(prefix) {
                let group = self.group()?;
                self.expect(",")?;
                let (n, _) = self.small()?;
                self.expect(")")?;
                return domain(if moore {
                    SpaceDescriptor::Moore { group, n }
                } else {
                    SpaceDescriptor::EilenbergMacLane { group, n }
                });
            }
        }
        if self.eat("L(") {
            let (d, d_col) = self.small()?;
            self.expect(",")?;
            let (p, p_col) = self.number()?;
            self.expect(")")?;
            if d < 3 || d % 2 == 0 {
                return Err(ParseError::Domain {
                    column: d_col,
                    message: format!("lens dimension {d} must be odd and at least 3"),
                });
            }
            if !is_prime(p) {
                return Err(ParseError::Domain {
                    column: p_col,
                    message: format!("lens order {p} must be prime"),
                });
            }
            return domain(SpaceDescriptor::Lens { n: (d - 1) / 2, p });
        }
        self.syntax(format!("expected a space, found {}", self.found()))
    }

    fn declarations(&mut self) -> Result<BTreeMap<String, AtomicSpace>, ParseError> {
        let mut atoms: BTreeMap<String, AtomicSpace> = BTreeMap::new();
        let mut pairs = Vec::new();
        loop {
            let (name, column) = self.name()?;
            self.expect("(")?;
            if name == "no_retract" {
                let a = self.name()?;
                self.expect(",")?;
                let b = self.name()?;
                self.expect(")")?;
                pairs.push((a, b));
            } else {
                let (n0, n0_col) = self.small()?;
                self.expect(",")?;
                let (prime, p_col) = self.number()?;
                self.expect(",")?;
                let exponent = if self.eat("inf") { None } else { Some(self.small()?) };
                self.expect(")")?;
                let domain = |column, message: String| Err(ParseError::Domain { column, message });
                if n0 < 1 {
                    return domain(n0_col, "Hurewicz dimension must be at least 1".into());
                }
                if !is_prime(prime) {
                    return domain(p_col, format!("local prime {prime} must be prime"));
                }
                if let Some((r, r_col)) = exponent {
                    if r < 1 || prime.checked_pow(r).is_none() {
                        return domain(r_col, format!("module exponent {r} must be between 1 and the 64-bit limit"));
                    }
                }
                let atom = AtomicSpace {
                    name: name.clone(),
                    hurewicz_dim: n0,
                    module: LocalCyclicModule { prime, exponent: exponent.map(|e| e.0) },
                    not_retract_of: BTreeSet::new(),
                };
                if atoms.insert(name.clone(), atom).is_some() {
                    return domain(column, format!("atomic space `{name}` is declared twice"));
                }
            }
            if !self.eat(";") {
                break;
            }
            self.skip_ws();
            if self.rest().is_empty() {
                break;
            }
        }
        for ((a, a_col), (b, b_col)) in pairs {
            for (n, c) in [(&a, a_col), (&b, b_col)] {
                if !atoms.contains_key(n) {
                    return Err(ParseError::Domain {
                        column: c,
                        message: format!("atomic space `{n}` is not declared"),
                    });
                }
            }
            if a == b {
                return Err(ParseError::Domain {
                    column: b_col,
                    message: "no_retract needs two different spaces".into(),
                });
            }
            atoms.get_mut(&a).unwrap().not_retract_of.insert(b.clone());
            atoms.get_mut(&b).unwrap().not_retract_of.insert(a);
        }
        Ok(atoms)
    }
}
