//! Text syntax for map expressions.
//!
//! ```text
//! expr := affine(N, p, s, [t0, t1, ...]) | cantor_proj | compose(expr, expr)
//!       | id | shift(k) | times(k) | divfloor(k) | perm([i0, i1, ...])
//! ```
//!
//! Sugar forms desugar to [`AffinePeriodic`]; printing always uses the core forms.

use std::fmt;

use crate::mapexpr::{AffinePeriodic, MapError, MapExpr};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("malformed map at position {position}: {source}")]
    Arity { position: usize, source: MapError },
}

impl fmt::Display for AffinePeriodic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let table: Vec<String> = self.table().iter().map(u64::to_string).collect();
        write!(f, "affine({},{},{},[{}])", self.threshold(), self.period(), self.shift(), table.join(","))
    }
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapExpr::Affine(ap) => ap.fmt(f),
            MapExpr::CantorProj => f.write_str("cantor_proj"),
            MapExpr::Compose(a, b) => write!(f, "compose({a},{b})"),
        }
    }
}

impl std::str::FromStr for MapExpr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

pub fn parse_expr(text: &str) -> Result<MapExpr, ExprError> {
    let mut parser = Parser { text, pos: 0 };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < text.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError::Parse { position: self.pos, message: message.into() }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn expect(&mut self, token: char) -> Result<(), ExprError> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected '{token}'")))
        }
    }

    fn eat(&mut self, token: char) -> bool {
        self.skip_ws();
        let found = self.rest().starts_with(token);
        if found {
            self.pos += token.len_utf8();
        }
        found
    }

    fn ident(&mut self) -> Result<&str, ExprError> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected an expression"));
        }
        let start = self.pos;
        self.pos += len;
        Ok(&self.text[start..self.pos])
    }

    fn number(&mut self) -> Result<u64, ExprError> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a natural number"));
        }
        let value = self.rest()[..len].parse().map_err(|_| self.error("number out of range"))?;
        self.pos += len;
        Ok(value)
    }

    fn list(&mut self) -> Result<Vec<u64>, ExprError> {
        self.expect('[')?;
        let mut items = Vec::new();
        if self.eat(']') {
            return Ok(items);
        }
        loop {
            items.push(self.number()?);
            if self.eat(']') {
                return Ok(items);
            }
            self.expect(',')?;
        }
    }

    fn single_arg(&mut self) -> Result<u64, ExprError> {
        self.expect('(')?;
        let k = self.number()?;
        self.expect(')')?;
        Ok(k)
    }

    fn expr(&mut self) -> Result<MapExpr, ExprError> {
        self.skip_ws();
        let at = self.pos;
        let arity = |source| ExprError::Arity { position: at, source };
        let name = self.ident()?.to_owned();
        let ap = match name.as_str() {
            "cantor_proj" => return Ok(MapExpr::CantorProj),
            "compose" => {
                self.expect('(')?;
                let first = self.expr()?;
                self.expect(',')?;
                let second = self.expr()?;
                self.expect(')')?;
                return Ok(MapExpr::compose(first, second));
            }
            "affine" => {
                self.expect('(')?;
                let n = self.number()?;
                self.expect(',')?;
                let p = self.number()?;
                self.expect(',')?;
                let s = self.number()?;
                self.expect(',')?;
                let table = self.list()?;
                self.expect(')')?;
                AffinePeriodic::new(n, p, s, table).map_err(arity)?
            }
            "id" => AffinePeriodic::identity(),
            "shift" => AffinePeriodic::shift_by(self.single_arg()?),
            "times" => AffinePeriodic::times(self.single_arg()?),
            "divfloor" => AffinePeriodic::divfloor(self.single_arg()?).map_err(arity)?,
            "perm" => {
                self.expect('(')?;
                let images = self.list()?;
                self.expect(')')?;
                AffinePeriodic::perm(&images).map_err(arity)?
            }
            other => return Err(ExprError::Parse { position: at, message: format!("unknown map '{other}'") }),
        };
        Ok(MapExpr::Affine(ap))
    }
}
