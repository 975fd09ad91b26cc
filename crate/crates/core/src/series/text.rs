//! Text form of series and the series file format.
//!
//! ```text
//! series := term (('+'|'-') term)*
//! term   := coeff ('*'? var ('^' nat)?)*
//! coeff  := int | int '/' int | (empty, meaning 1)
//! var    := a letter followed by optional digits
//! ```
//!
//! Without a variable list, variables are `x1, x2, ...` and the variable
//! count is the largest index used. Files may start with header lines
//! `field Q`, `field F <p>`, `vars <name>+` and `trunc <D>`; `#` starts a
//! comment. A file whose first non-blank character is `{` is read as JSON.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{json, Exponent, Series};
use crate::error::{Error, Result};
use crate::field::Field;

/// Variable names, in order `x_1 .. x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames(Vec<String>);

impl VarNames {
    pub fn new(names: Vec<String>) -> Self {
        VarNames(names)
    }

    /// `x1, ..., xn`.
    pub fn indexed(n: usize) -> Self {
        VarNames((1..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    fn is_indexed(&self) -> bool {
        self.0.iter().enumerate().all(|(i, s)| *s == format!("x{}", i + 1))
    }

    fn lookup(&self, token: &str) -> Option<usize> {
        self.0.iter().position(|s| s == token)
    }
}

struct RawTerm {
    position: usize,
    num: BigInt,
    den: BigInt,
    vars: Vec<(usize, i64)>,
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax { position: self.pos, message: message.into() }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    /// Parses the whole input; `resolve` maps a variable token to its index.
    fn parse(mut self, resolve: &dyn Fn(&str) -> Option<usize>) -> Result<Vec<RawTerm>> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty series"));
        }
        let mut negative = false;
        if let Some(b @ (b'+' | b'-')) = self.peek() {
            negative = b == b'-';
            self.pos += 1;
            self.skip_ws();
        }
        loop {
            let mut t = self.term(resolve)?;
            if negative {
                t.num = -t.num;
            }
            out.push(t);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(self.err("expected '+', '-' or end of input")),
            }
            self.pos += 1;
            self.skip_ws();
        }
        Ok(out)
    }

    fn term(&mut self, resolve: &dyn Fn(&str) -> Option<usize>) -> Result<RawTerm> {
        let position = self.pos;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut has_coeff = false;
        if let Some(d) = self.digits() {
            num = d.parse().expect("digit run");
            has_coeff = true;
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let d = self.digits().ok_or_else(|| self.err("expected denominator"))?;
                den = d.parse().expect("digit run");
                if den.is_zero() {
                    return Err(Error::InvalidCoefficient {
                        position,
                        message: "zero denominator".into(),
                    });
                }
            }
        }
        let mut vars = Vec::new();
        loop {
            self.skip_ws();
            let save = self.pos;
            if self.peek() == Some(b'*') {
                if !has_coeff && vars.is_empty() {
                    return Err(self.err("'*' needs a factor before it"));
                }
                self.pos += 1;
                self.skip_ws();
            }
            match self.peek() {
                Some(b) if b.is_ascii_alphabetic() => {
                    let start = self.pos;
                    self.pos += 1;
                    self.digits();
                    let token = &self.src[start..self.pos];
                    let idx = resolve(token).ok_or_else(|| Error::Syntax {
                        position: start,
                        message: format!("unknown variable '{token}'"),
                    })?;
                    let mut power = 1i64;
                    self.skip_ws();
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        if self.peek() == Some(b'-') {
                            return Err(Error::NegativeExponent { position: self.pos });
                        }
                        let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
                        power = d.parse().map_err(|_| self.err("exponent too large"))?;
                    }
                    vars.push((idx, power));
                }
                _ => {
                    if self.pos != save {
                        return Err(self.err("expected a variable after '*'"));
                    }
                    self.pos = save;
                    break;
                }
            }
        }
        if !has_coeff && vars.is_empty() {
            return Err(self.err("expected a coefficient or variable"));
        }
        Ok(RawTerm { position, num, den, vars })
    }
}

fn assemble(raw: Vec<RawTerm>, n: usize, field: Field) -> Result<Series> {
    let mut s = Series::zero(n, field);
    for t in raw {
        let c = field.from_ratio(&t.num, &t.den).ok_or_else(|| Error::InvalidCoefficient {
            position: t.position,
            message: format!("{}/{} is not defined over {field}", t.num, t.den),
        })?;
        let mut e = Exponent::zero(n);
        for (i, p) in t.vars {
            e.0[i] += p;
        }
        s.add_term(e, c);
    }
    Ok(s)
}

fn indexed_token(token: &str) -> Option<usize> {
    let rest = token.strip_prefix('x')?;
    let k: usize = rest.parse().ok()?;
    (k >= 1 && !rest.starts_with('0')).then(|| k - 1)
}

/// Parses with variables `x1, x2, ...`; the variable count is the largest
/// index that occurs (at least 1).
pub fn parse_series(text: &str, field: Field) -> Result<Series> {
    let raw = Parser::new(text).parse(&indexed_token)?;
    let n = raw
        .iter()
        .flat_map(|t| t.vars.iter().map(|v| v.0 + 1))
        .max()
        .unwrap_or(1);
    assemble(raw, n, field)
}

/// Parses against a fixed variable list.
pub fn parse_with(text: &str, field: Field, names: &VarNames) -> Result<Series> {
    let raw = Parser::new(text).parse(&|tok| names.lookup(tok))?;
    assemble(raw, names.len(), field)
}

/// Canonical text: terms in ascending graded-lex order, coefficient `1`
/// omitted, `0` for the zero series.
pub fn format_series(s: &Series, names: &VarNames) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (e, c)) in s.terms().enumerate() {
        let (neg, mag) = c.signed_parts();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut factors: Vec<String> = Vec::new();
        for (i, &p) in e.0.iter().enumerate() {
            match p {
                0 => {}
                1 => factors.push(names.0[i].clone()),
                _ => factors.push(format!("{}^{p}", names.0[i])),
            }
        }
        if factors.is_empty() {
            out.push_str(&mag);
        } else {
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// A series together with its file header.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesFile {
    pub vars: VarNames,
    pub series: Series,
}

impl SeriesFile {
    pub fn new(series: Series, vars: Option<VarNames>) -> Self {
        let vars = vars.unwrap_or_else(|| VarNames::indexed(series.n()));
        SeriesFile { vars, series }
    }

    pub fn field(&self) -> Field {
        self.series.field()
    }

    /// Parses another series in the same ring (same field and variables).
    pub fn parse_in_ring(&self, text: &str) -> Result<Series> {
        parse_with(text, self.field(), &self.vars)
    }

    pub fn format(&self, s: &Series) -> String {
        format_series(s, &self.vars)
    }

    /// Reads the header-plus-body text format, or JSON.
    pub fn parse(text: &str) -> Result<SeriesFile> {
        if text.trim_start().starts_with('{') {
            return json::from_json_str(text);
        }
        let mut field = Field::Rationals;
        let mut vars: Option<VarNames> = None;
        let mut trunc: Option<u32> = None;
        let mut body = String::new();
        // (body offset, file offset) of each body line, so syntax positions
        // refer to the file.
        let mut offset = 0usize;
        let mut segments: Vec<(usize, usize)> = Vec::new();
        for line in text.split_inclusive('\n') {
            let content = line.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            let mut words = trimmed.split_whitespace();
            match words.next() {
                Some("field") if body.is_empty() => {
                    field = match (words.next(), words.next()) {
                        (Some("Q"), None) => Field::Rationals,
                        (Some("F"), Some(p)) => {
                            let p: u64 = p.parse().map_err(|_| Error::Syntax {
                                position: offset,
                                message: format!("bad prime '{p}'"),
                            })?;
                            Field::prime(p)?
                        }
                        _ => {
                            return Err(Error::Syntax {
                                position: offset,
                                message: "expected 'field Q' or 'field F <p>'".into(),
                            })
                        }
                    };
                }
                Some("vars") if body.is_empty() => {
                    let names: Vec<String> = words.map(str::to_string).collect();
                    for nm in &names {
                        let ok = nm.as_bytes()[0].is_ascii_alphabetic()
                            && nm.bytes().skip(1).all(|b| b.is_ascii_digit());
                        if !ok {
                            return Err(Error::Syntax {
                                position: offset,
                                message: format!("variable name '{nm}' must be a letter followed by digits"),
                            });
                        }
                    }
                    if names.is_empty() {
                        return Err(Error::Syntax { position: offset, message: "empty vars line".into() });
                    }
                    vars = Some(VarNames::new(names));
                }
                Some("trunc") if body.is_empty() => {
                    let d = words.next().and_then(|w| w.parse().ok()).ok_or_else(|| Error::Syntax {
                        position: offset,
                        message: "expected 'trunc <D>'".into(),
                    })?;
                    trunc = Some(d);
                }
                Some(_) => {
                    segments.push((body.len(), offset));
                    body.push_str(content);
                    body.push(' ');
                }
                None => {}
            }
            offset += line.len();
        }
        let to_file = |p: usize| match segments.iter().rev().find(|s| s.0 <= p) {
            Some(&(b, f)) => f + (p - b),
            None => p,
        };
        let shift = |e: Error| match e {
            Error::Syntax { position, message } => Error::Syntax { position: to_file(position), message },
            Error::InvalidCoefficient { position, message } => {
                Error::InvalidCoefficient { position: to_file(position), message }
            }
            Error::NegativeExponent { position } => Error::NegativeExponent { position: to_file(position) },
            other => other,
        };
        let mut series = match &vars {
            Some(v) => parse_with(&body, field, v).map_err(shift)?,
            None => parse_series(&body, field).map_err(shift)?,
        };
        if trunc.is_some() {
            series.set_truncation(trunc);
        }
        Ok(SeriesFile::new(series, vars))
    }

    /// Header lines plus the canonical body.
    pub fn to_text(&self) -> String {
        let mut out = format!("field {}\n", self.field());
        if !self.vars.is_indexed() || self.needs_vars_line() {
            out.push_str(&format!("vars {}\n", self.vars.0.join(" ")));
        }
        if let Some(t) = self.series.truncation() {
            out.push_str(&format!("trunc {t}\n"));
        }
        out.push_str(&self.format(&self.series));
        out.push('\n');
        out
    }

    /// Indexed names can be left implicit only when the last variable
    /// actually occurs (otherwise re-parsing would lose variables).
    fn needs_vars_line(&self) -> bool {
        let n = self.series.n();
        self.series.degree_in(n - 1).unwrap_or(0) == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dangling_star() {
        assert!(matches!(parse_series("x1 + * x2", Field::Rationals), Err(Error::Syntax { position: 5, .. })));
        assert!(parse_series("*x1", Field::Rationals).is_err());
        assert!(parse_series("2*x1*x2", Field::Rationals).is_ok());
    }

    #[test]
    fn basic_parse() {
        let s = parse_series("x3^2 + x1*x2", Field::Rationals).unwrap();
        assert_eq!(s.n(), 3);
        let got: Vec<(Vec<i64>, String)> =
            s.terms().map(|(e, c)| (e.0.clone(), c.to_string())).collect();
        assert_eq!(got, vec![(vec![1, 1, 0], "1".into()), (vec![0, 0, 2], "1".into())]);
    }

    #[test]
    fn cancellation_and_small_characteristic() {
        assert!(parse_series("2*x1 - 2*x1", Field::Rationals).unwrap().is_zero());
        assert!(parse_series("3*x1", Field::Prime(3)).unwrap().is_zero());
        assert!(parse_series("0", Field::Rationals).unwrap().is_zero());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_series("x1 + + x2", Field::Rationals),
            Err(Error::Syntax { position: 5, .. })
        ));
        assert!(matches!(
            parse_series("1/3*x1", Field::Prime(3)),
            Err(Error::InvalidCoefficient { .. })
        ));
        assert!(matches!(
            parse_series("x1^-2", Field::Rationals),
            Err(Error::NegativeExponent { .. })
        ));
        assert!(parse_series("y", Field::Rationals).is_err());
        assert!(parse_series("2*", Field::Rationals).is_err());
        assert!(parse_series("", Field::Rationals).is_err());
    }

    #[test]
    fn juxtaposition_and_names() {
        let names = VarNames::new(vec!["x".into(), "y".into()]);
        let a = parse_with("3xy^2 - 1/2 x", Field::Rationals, &names).unwrap();
        let b = parse_with("-1/2*x + 3*x*y^2", Field::Rationals, &names).unwrap();
        assert_eq!(a, b);
        assert_eq!(format_series(&a, &names), "-1/2*x + 3*x*y^2");
    }

    #[test]
    fn file_header() {
        let text = "# node\nfield F 101\nvars x y\ntrunc 4\ny^2 - x^2\n - x^3 + x^5\n";
        let f = SeriesFile::parse(text).unwrap();
        assert_eq!(f.field(), Field::Prime(101));
        assert_eq!(f.series.truncation(), Some(4));
        assert_eq!(f.format(&f.series), "-x^2 + y^2 - x^3");
        let again = SeriesFile::parse(&f.to_text()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn implicit_vars_survive_round_trip() {
        let f = SeriesFile::new(parse_series("x1 + x2", Field::Rationals).unwrap().mul(&Series::one(2, Field::Rationals)), None);
        let g = SeriesFile::parse(&f.to_text()).unwrap();
        assert_eq!(f, g);
        // x3 absent from the support but part of the ring
        let h = SeriesFile::new(parse_with("x1", Field::Rationals, &VarNames::indexed(3)).unwrap(), None);
        assert_eq!(SeriesFile::parse(&h.to_text()).unwrap(), h);
    }

    #[test]
    fn syntax_positions_refer_to_file() {
        let text = "field Q\nx1 + + x2\n";
        match SeriesFile::parse(text) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 8 + 5),
            other => panic!("unexpected {other:?}"),
        }
    }
}
