//! The `name:key=val,key=val` symbol mini-language used on the command line.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::catalog::{canonical_name, Params};
use super::Symbol;

/// A parsed `name:key=value,...` string, not yet validated against the catalog.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSpec {
    pub name: String,
    pub params: Vec<(String, f64)>,
}

impl SymbolSpec {
    /// Validates parameters and binds the symbol to dimension `dim`.
    pub fn build<T: Real>(&self, dim: usize) -> Result<Symbol<T>> {
        let params: Params<T> = self.params.iter().map(|(k, v)| (k.clone(), T::lit(*v))).collect();
        Symbol::named(&self.name, &params, dim)
    }
}

impl fmt::Display for SymbolSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

fn is_ident(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl FromStr for SymbolSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest, rest_at) = match s.find(':') {
            Some(i) => (&s[..i], Some(&s[i + 1..]), i + 1),
            None => (s, None, s.len()),
        };
        if name.is_empty() {
            return Err(parse_error(0, "empty symbol name"));
        }
        if let Some(bad) = name.char_indices().find(|(_, c)| !is_ident(*c)) {
            return Err(parse_error(bad.0, format!("unexpected character `{}` in symbol name", bad.1)));
        }
        if canonical_name(name).is_none() {
            return Err(parse_error(0, format!("unknown symbol `{name}`")));
        }

        let mut params: Vec<(String, f64)> = Vec::new();
        if let Some(rest) = rest {
            let mut at = rest_at;
            for item in rest.split(',') {
                let Some(eq) = item.find('=') else {
                    return Err(parse_error(at + item.len(), "expected `=`"));
                };
                let (key, value) = (&item[..eq], &item[eq + 1..]);
                if key.is_empty() {
                    return Err(parse_error(at, "empty parameter name"));
                }
                if let Some(bad) = key.char_indices().find(|(_, c)| !is_ident(*c)) {
                    return Err(parse_error(
                        at + bad.0,
                        format!("unexpected character `{}` in parameter name", bad.1),
                    ));
                }
                if params.iter().any(|(k, _)| k == key) {
                    return Err(parse_error(at, format!("duplicate parameter `{key}`")));
                }
                let value_at = at + eq + 1;
                let parsed: f64 = value
                    .trim()
                    .parse()
                    .map_err(|_| parse_error(value_at, format!("expected a number, found `{value}`")))?;
                if !parsed.is_finite() {
                    return Err(parse_error(value_at, "parameter values must be finite"));
                }
                params.push((key.to_owned(), parsed));
                at += item.len() + 1;
            }
        }
        Ok(SymbolSpec { name: name.to_owned(), params })
    }
}
