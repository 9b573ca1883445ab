//! Plain-text expressions for test functions and parity functions.
//!
//! ```text
//! loggauss(1,0,1)                     loggauss(a=1, mu=0, sigma=1)
//! logbump(a=1, lo=0.5, hi=2)          logbump(1, 0.5, 2, k=2)
//! shift(loggauss(1,0,1), t=2)         power(logbump(1,0.5,2), s=-1)
//! J(loggauss(1,ln(2),0.5))            2*loggauss(1,0,1) - 0.5*loggauss(1,1,1)
//! gauss2   oddgauss2   pgauss(c=1, k=2, alpha=0.5)   fourier(pgauss(1,1,2))
//! ```
//!
//! Numbers may use `+ - * /`, parentheses, `pi`, `e`, `i` and `ln`, `exp`, `sqrt`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

use super::parity::{Parity, ParityFunction, ParityTerm};
use super::test_function::TestFunction;

type Cf = C<f64>;

#[derive(Clone, Debug)]
enum Val {
    Num(Cf),
    Test(TestFunction<f64>),
    Par(ParityFunction<f64>),
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn err<X>(&self, message: impl Into<String>) -> Result<X> {
        Err(Error::Expression {
            input: self.src.to_string(),
            message: format!("{} (at offset {})", message.into(), self.pos),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
            if self.pos == start && self.chars[self.pos].is_ascii_digit() {
                return None;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let mut seen_exp = false;
        while let Some(&c) = self.chars.get(self.pos) {
            let sign_in_exp =
                (c == '+' || c == '-') && seen_exp && matches!(self.chars.get(self.pos - 1), Some('e') | Some('E'));
            if c.is_ascii_digit() || c == '.' || sign_in_exp {
                self.pos += 1;
            } else if (c == 'e' || c == 'E') && !seen_exp && self.pos > start {
                seen_exp = true;
                self.pos += 1;
            } else {
                break;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<f64>()
            .or_else(|_| self.err(format!("bad number `{text}`")))
    }

    fn expr(&mut self) -> Result<Val> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = self.add(acc, rhs, 1.0)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = self.add(acc, rhs, -1.0)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = self.mul(acc, rhs)?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                match rhs {
                    Val::Num(d) => acc = self.mul(acc, Val::Num(Cf::new(1.0, 0.0) / d))?,
                    _ => return self.err("can only divide by a number"),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Val> {
        if self.eat('-') {
            let v = self.unary()?;
            return self.mul(Val::Num(Cf::new(-1.0, 0.0)), v);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Val> {
        if self.eat('(') {
            let v = self.expr()?;
            self.expect(')')?;
            return Ok(v);
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => return Ok(Val::Num(Cf::new(self.number()?, 0.0))),
            None => return self.err("unexpected end of input"),
            _ => {}
        }
        let Some(name) = self.ident() else {
            return self.err("expected a number or a name");
        };
        match name.as_str() {
            "pi" => return Ok(Val::Num(Cf::new(std::f64::consts::PI, 0.0))),
            "e" => return Ok(Val::Num(Cf::new(std::f64::consts::E, 0.0))),
            "i" => return Ok(Val::Num(Cf::new(0.0, 1.0))),
            "gauss2" => return Ok(Val::Par(ParityFunction::special_even())),
            "oddgauss2" => return Ok(Val::Par(ParityFunction::special_odd())),
            _ => {}
        }
        self.expect('(')?;
        let mut args: Vec<(Option<String>, Val)> = Vec::new();
        if !self.eat(')') {
            loop {
                let save = self.pos;
                let key = match self.ident() {
                    Some(k) if self.eat('=') => Some(k),
                    _ => {
                        self.pos = save;
                        None
                    }
                };
                args.push((key, self.expr()?));
                if self.eat(')') {
                    break;
                }
                self.expect(',')?;
            }
        }
        self.call(&name, args)
    }

    fn bind(
        &self,
        name: &str,
        params: &[(&str, Option<f64>)],
        args: Vec<(Option<String>, Val)>,
    ) -> Result<(Vec<Val>, Vec<f64>)> {
        // leading non-numeric arguments are functions; the rest bind to params
        let mut funcs = Vec::new();
        let mut slots: Vec<Option<f64>> = vec![None; params.len()];
        let mut positional = 0;
        for (key, v) in args {
            match (key, v) {
                (None, v @ (Val::Test(_) | Val::Par(_))) => funcs.push(v),
                (None, Val::Num(n)) => {
                    if positional >= params.len() {
                        return self.err(format!("too many arguments to `{name}`"));
                    }
                    slots[positional] = Some(self.real(n)?);
                    positional += 1;
                }
                (Some(k), Val::Num(n)) => match params.iter().position(|p| p.0 == k) {
                    Some(i) => slots[i] = Some(self.real(n)?),
                    None => return self.err(format!("`{name}` has no parameter `{k}`")),
                },
                (Some(k), _) => return self.err(format!("parameter `{k}` of `{name}` must be a number")),
            }
        }
        let values = slots
            .iter()
            .zip(params)
            .map(|(v, p)| v.or(p.1).ok_or(p.0))
            .collect::<std::result::Result<Vec<f64>, &str>>();
        match values {
            Ok(v) => Ok((funcs, v)),
            Err(missing) => self.err(format!("`{name}` is missing parameter `{missing}`")),
        }
    }

    fn real(&self, n: Cf) -> Result<f64> {
        if n.im != 0.0 {
            return self.err("expected a real number");
        }
        Ok(n.re)
    }

    fn one_test(&self, name: &str, funcs: Vec<Val>) -> Result<TestFunction<f64>> {
        match <[Val; 1]>::try_from(funcs) {
            Ok([Val::Test(f)]) => Ok(f),
            _ => self.err(format!("`{name}` takes exactly one test function")),
        }
    }

    fn call(&self, name: &str, args: Vec<(Option<String>, Val)>) -> Result<Val> {
        let wrap = |r: Result<TestFunction<f64>>| r.map(Val::Test).or_else(|e| self.err(e.to_string()));
        match name {
            "ln" | "exp" | "sqrt" => {
                let (_, v) = self.bind(name, &[("x", None)], args)?;
                let x = v[0];
                let y = match name {
                    "ln" => x.ln(),
                    "exp" => x.exp(),
                    _ => x.sqrt(),
                };
                if !y.is_finite() {
                    return self.err(format!("{name}({x}) is not finite"));
                }
                Ok(Val::Num(Cf::new(y, 0.0)))
            }
            "loggauss" => {
                let (_, v) = self.bind(name, &[("a", None), ("mu", None), ("sigma", None)], args)?;
                wrap(TestFunction::log_gaussian(v[0], v[1], v[2]))
            }
            "logbump" => {
                let (_, v) = self.bind(name, &[("a", None), ("lo", None), ("hi", None), ("k", Some(1.0))], args)?;
                wrap(TestFunction::log_bump_with_shape(v[0], v[1], v[2], v[3]))
            }
            "shift" => {
                let (f, v) = self.bind(name, &[("t", None)], args)?;
                wrap(self.one_test(name, f)?.shifted(v[0]))
            }
            "power" => {
                let (f, v) = self.bind(name, &[("s", None)], args)?;
                Ok(Val::Test(self.one_test(name, f)?.scaled_power(v[0])))
            }
            "J" => {
                let (f, _) = self.bind(name, &[], args)?;
                Ok(Val::Test(self.one_test(name, f)?.apply_j()))
            }
            "pgauss" => {
                let (_, v) = self.bind(name, &[("c", Some(1.0)), ("k", None), ("alpha", None)], args)?;
                if v[1] < 0.0 || v[1].fract() != 0.0 {
                    return self.err("pgauss degree k must be a non-negative integer");
                }
                ParityFunction::from_real_terms(&[(v[0], v[1] as u32, v[2])])
                    .map(Val::Par)
                    .or_else(|e| self.err(e.to_string()))
            }
            "fourier" => {
                let (f, _) = self.bind(name, &[], args)?;
                match <[Val; 1]>::try_from(f) {
                    Ok([Val::Par(p)]) => Ok(Val::Par(p.fourier())),
                    _ => self.err("`fourier` takes one parity function"),
                }
            }
            other => self.err(format!("unknown function `{other}`")),
        }
    }

    fn add(&self, a: Val, b: Val, sign: f64) -> Result<Val> {
        match (a, b) {
            (Val::Num(x), Val::Num(y)) => Ok(Val::Num(x + y * sign)),
            (Val::Test(f), Val::Test(g)) => Ok(Val::Test(f.plus(g.scale(sign)))),
            (Val::Par(f), Val::Par(g)) => f
                .plus(&g.scale(Cf::new(sign, 0.0)))
                .map(Val::Par)
                .or_else(|e| self.err(e.to_string())),
            _ => self.err("cannot add values of different kinds"),
        }
    }

    fn mul(&self, a: Val, b: Val) -> Result<Val> {
        match (a, b) {
            (Val::Num(x), Val::Num(y)) => Ok(Val::Num(x * y)),
            (Val::Num(c), Val::Test(f)) | (Val::Test(f), Val::Num(c)) => Ok(Val::Test(f.scale(self.real(c)?))),
            (Val::Num(c), Val::Par(f)) | (Val::Par(f), Val::Num(c)) => Ok(Val::Par(f.scale(c))),
            _ => self.err("can only multiply by numbers"),
        }
    }

    fn finish(mut self) -> Result<Val> {
        let v = self.expr()?;
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(v)
    }
}

fn cast_test<T: Real>(f: &TestFunction<f64>) -> TestFunction<T> {
    match f {
        TestFunction::LogGaussian {
            amplitude,
            center,
            width,
        } => TestFunction::LogGaussian {
            amplitude: T::lit(*amplitude),
            center: T::lit(*center),
            width: T::lit(*width),
        },
        TestFunction::LogBump {
            amplitude,
            lo,
            hi,
            shape,
        } => TestFunction::LogBump {
            amplitude: T::lit(*amplitude),
            lo: T::lit(*lo),
            hi: T::lit(*hi),
            shape: T::lit(*shape),
        },
        TestFunction::ScaledPower { base, exponent } => TestFunction::ScaledPower {
            base: Box::new(cast_test(base)),
            exponent: T::lit(*exponent),
        },
        TestFunction::Shifted { base, t } => TestFunction::Shifted {
            base: Box::new(cast_test(base)),
            t: T::lit(*t),
        },
        TestFunction::Combination(terms) => {
            TestFunction::Combination(terms.iter().map(|(c, f)| (T::lit(*c), cast_test(f))).collect())
        }
    }
}

/// Parses a test-function expression such as `loggauss(a=1,mu=0,sigma=1)`.
pub fn parse_test_function<T: Real>(src: &str) -> Result<TestFunction<T>> {
    let p = Parser::new(src);
    match p.finish()? {
        Val::Test(f) => Ok(cast_test(&f)),
        _ => Err(Error::Expression {
            input: src.to_string(),
            message: "not a test function on the half-line".into(),
        }),
    }
}

/// Parses a parity-function expression such as `gauss2` or `pgauss(1,2,0.5)`.
pub fn parse_parity_function<T: Real>(src: &str) -> Result<ParityFunction<T>> {
    let p = Parser::new(src);
    match p.finish()? {
        Val::Par(f) => {
            let terms = f
                .terms()
                .iter()
                .map(|t| ParityTerm {
                    coeff: C::new(T::lit(t.coeff.re), T::lit(t.coeff.im)),
                    degree: t.degree,
                    alpha: T::lit(t.alpha),
                })
                .collect();
            ParityFunction::new(f.parity(), terms)
        }
        _ => Err(Error::Expression {
            input: src.to_string(),
            message: "not a parity function".into(),
        }),
    }
}

impl<T: Real> fmt::Display for TestFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::LogGaussian {
                amplitude,
                center,
                width,
            } => write!(f, "loggauss(a={amplitude},mu={center},sigma={width})"),
            TestFunction::LogBump {
                amplitude,
                lo,
                hi,
                shape,
            } => write!(f, "logbump(a={amplitude},lo={lo},hi={hi},k={shape})"),
            TestFunction::ScaledPower { base, exponent } => write!(f, "power({base},s={exponent})"),
            TestFunction::Shifted { base, t } => write!(f, "shift({base},t={t})"),
            TestFunction::Combination(terms) => {
                if terms.is_empty() {
                    return write!(f, "0*loggauss(1,0,1)");
                }
                for (i, (c, g)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{c}*{g}")?;
                }
                Ok(())
            }
        }
    }
}

impl<T: Real> fmt::Display for ParityFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms().is_empty() {
            let k = if self.parity() == Parity::Even { 0 } else { 1 };
            return write!(f, "0*pgauss(c=1,k={k},alpha=1)");
        }
        for (i, t) in self.terms().iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let (re, im) = (t.coeff.re, t.coeff.im);
            if im == T::zero() {
                write!(f, "pgauss(c={re},k={},alpha={})", t.degree, t.alpha)?;
            } else {
                write!(f, "({re} + {im}*i)*pgauss(c=1,k={},alpha={})", t.degree, t.alpha)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positional_and_keyword_forms_agree() {
        let a: TestFunction = parse_test_function("loggauss(1,0,1)").unwrap();
        let b: TestFunction = parse_test_function("loggauss(a=1, mu=0, sigma=1)").unwrap();
        let c: TestFunction = parse_test_function("loggauss(sigma=1, a=1, mu=0)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let d: TestFunction = parse_test_function("logbump(a=1,lo=0.5,hi=2)").unwrap();
        assert_eq!(d, TestFunction::log_bump(1.0, 0.5, 2.0).unwrap());
    }

    #[test]
    fn arithmetic_and_operators() {
        let f: TestFunction = parse_test_function("2*shift(loggauss(1,0,1), t=e) - loggauss(1,ln(2),0.5)/2").unwrap();
        let x: f64 = 1.7;
        let expect = 2.0 * (-(x / std::f64::consts::E).ln().powi(2) / 2.0).exp()
            - 0.5 * (-(x.ln() - 2f64.ln()).powi(2) / 0.5).exp();
        assert!((f.value(x) - expect).abs() < 1e-14);
        let j: TestFunction = parse_test_function("J(J(logbump(1,0.5,3,k=2)))").unwrap();
        assert!(
            (j.value(1.3)
                - TestFunction::log_bump_with_shape(1.0, 0.5, 3.0, 2.0)
                    .unwrap()
                    .value(1.3))
            .abs()
                < 1e-15
        );
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "loggauss(1,0,1)",
            "logbump(0.3,0.25,4,k=1.5)",
            "power(logbump(1,0.5,2),s=-1.25) + 3*shift(loggauss(2,0.1,0.7),t=3)",
            "J(power(logbump(1,0.5,2),s=0.5))",
            "1e-3*loggauss(1,0,1) - 2.5e2*loggauss(1,1,2)",
        ] {
            let f: TestFunction = parse_test_function(src).unwrap();
            let g: TestFunction = parse_test_function(&f.to_string()).unwrap();
            for x in [0.3, 1.0, 2.2] {
                assert_eq!(f.value(x), g.value(x), "{src} -> {f}");
            }
        }
        for src in [
            "gauss2",
            "oddgauss2",
            "fourier(pgauss(1,3,0.5))",
            "gauss2 + pgauss(c=-0.5,k=2,alpha=0.3)",
        ] {
            let f: ParityFunction = parse_parity_function(src).unwrap();
            let g: ParityFunction = parse_parity_function(&f.to_string()).unwrap();
            assert_eq!(f, g, "{src}");
        }
    }

    #[test]
    fn errors_are_reported() {
        for bad in [
            "loggauss(1,0)",
            "loggauss(1,0,-1)",
            "logbump(1,2,0.5)",
            "frobnicate(1)",
            "loggauss(1,0,1) +",
            "loggauss(1,0,1) + gauss2",
            "shift(loggauss(1,0,1), t=0)",
            "loggauss(1,0,1) * loggauss(1,0,1)",
            "gauss2",
        ] {
            assert!(parse_test_function::<f64>(bad).is_err(), "{bad}");
        }
        assert!(parse_parity_function::<f64>("gauss2 + oddgauss2").is_err());
        assert!(parse_parity_function::<f64>("pgauss(1,1.5,1)").is_err());
    }
}
