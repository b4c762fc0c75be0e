//! Closed-form entries of the partial character table and of the printed
//! quotient matrices, as functions of `k`.
//!
//! Entries are written in a small expression language close to the printed
//! formulas: integers, `k`, `+ - * / ^`, parentheses, implicit
//! multiplication, and `dN` for the double factorial `(2k-N)!!`.

use num_traits::{One, Zero};

use crate::combinat::{double_factorial, IntegerPartition};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::{self, Rational};

use super::generic_shape;

/// Offsets of the modules in the partial table: `[2k]`, `[2k-2,2]`,
/// `[2k-4,4]`, `[2k-4,2,2]`, `[2k-6,6]`.
pub const PARTIAL_MODULES: [&[usize]; 5] = [&[], &[2], &[4], &[2, 2], &[6]];

/// Offsets of the classes in the partial table, in the same order.
pub const PARTIAL_CLASSES: [&[usize]; 5] = [&[], &[2], &[4], &[2, 2], &[6]];

/// `None` marks a cell the printed table leaves open.
const CHAR_TABLE: [[Option<&str>; 5]; 5] = [
    [Some("d0/(2k)"), Some("d0/(2(2k-2))"), Some("d0/(4(2k-4))"), Some("d0/(8(2k-4))"), Some("d0/(6(2k-6))")],
    [Some("-d4"), Some("d4/2"), Some("-2k d6 / 4"), None, Some("-2k d4 / (6(2k-6))")],
    [Some("-d6"), Some("-(5k-12) d8"), Some("(7k-15) d8 / 2"), None, Some("-2k d6 / (6(2k-6))")],
    [Some("2 d6"), Some("-d6"), Some("-d6/2"), None, Some("4k d6 / (6(2k-6))")],
    [Some("-3 d8"), Some("-3(3k-10) d10"), Some("-3(9k^2-71k+140) d12"), None, Some("6(5k^2-38k+70) d12")],
];

/// How many times the generic formula for class `[2k - s, rest...]` counts
/// each neighbor when parts of the actual shape coincide: the generic shape
/// treats the first part as distinct from the others.
pub fn coincidence_factor(k: usize, class_rest: &[usize]) -> Option<u64> {
    let actual = generic_shape(k, class_rest)?;
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    let mult = |parts: &[usize]| -> u64 {
        let mut parts = parts.to_vec();
        parts.sort_unstable();
        parts.chunk_by(|a, b| a == b).map(|c| fact(c.len())).product()
    };
    Some(mult(actual.parts()) / mult(class_rest))
}

#[derive(Debug, Clone)]
pub struct ClosedFormCell {
    pub module: IntegerPartition,
    pub class: IntegerPartition,
    pub formula: &'static str,
    /// The formula evaluated at `k`.
    pub printed: Rational,
    /// `printed` divided by [`coincidence_factor`] of the class.
    pub corrected: Rational,
    pub coincidence: u64,
}

/// The closed-form cell `(module, class)` of the partial table at `k`, with
/// indices into [`PARTIAL_MODULES`] and [`PARTIAL_CLASSES`]. `Ok(None)` for
/// cells left open and for shapes that do not exist at this `k`.
pub fn char_table_closed_form(k: usize, module: usize, class: usize) -> Result<Option<ClosedFormCell>> {
    let Some(formula) = CHAR_TABLE[module][class] else {
        return Ok(None);
    };
    let (Some(m), Some(c)) = (generic_shape(k, PARTIAL_MODULES[module]), generic_shape(k, PARTIAL_CLASSES[class]))
    else {
        return Ok(None);
    };
    let Some(printed) = eval(formula, k)? else {
        return Ok(None);
    };
    let coincidence = coincidence_factor(k, PARTIAL_CLASSES[class]).expect("shape exists");
    let corrected = &printed / rational::int(coincidence as i64);
    Ok(Some(ClosedFormCell { module: m, class: c, formula, printed, corrected, coincidence }))
}

#[derive(Debug, Clone)]
pub struct QuotientFixture {
    pub name: &'static str,
    pub class_rest: &'static [usize],
    pub subgroup_rest: &'static [usize],
    rows: &'static [&'static [&'static str]],
}

impl QuotientFixture {
    pub fn class(&self, k: usize) -> Option<IntegerPartition> {
        generic_shape(k, self.class_rest)
    }

    pub fn subgroup(&self, k: usize) -> Option<IntegerPartition> {
        generic_shape(k, self.subgroup_rest)
    }

    pub fn formulas(&self) -> &'static [&'static [&'static str]] {
        self.rows
    }

    /// The printed matrix at `k`, or `None` if some double factorial has a
    /// negative argument below -1.
    pub fn printed(&self, k: usize) -> Result<Option<RatMatrix>> {
        let mut out = Vec::new();
        for row in self.rows {
            let mut r = Vec::new();
            for cell in *row {
                match eval(cell, k)? {
                    Some(v) => r.push(v),
                    None => return Ok(None),
                }
            }
            out.push(r);
        }
        Ok(Some(out))
    }

    /// The printed matrix divided by the class's coincidence factor.
    pub fn corrected(&self, k: usize) -> Result<Option<RatMatrix>> {
        let Some(f) = coincidence_factor(k, self.class_rest) else {
            return Ok(None);
        };
        let f = rational::int(f as i64);
        Ok(self.printed(k)?.map(|m| m.into_iter().map(|r| r.into_iter().map(|x| x / &f).collect()).collect()))
    }
}

/// The twelve printed quotient tables plus the two matrices worked out in
/// the `[2k-4,4]` example. Two printing slips are repaired: a caption that
/// reads `X_[2k-2]` means class `[2k-2,2]`, and an entry printed `8^4`
/// means `8k^4`.
pub fn quotient_fixtures() -> Vec<QuotientFixture> {
    vec![
        QuotientFixture {
            name: "X_[2k]/[2k-2,2]",
            class_rest: &[],
            subgroup_rest: &[2],
            rows: &[&["0", "d2"], &["d4", "(2k-3)d4"]],
        },
        QuotientFixture {
            name: "X_[2k-2,2]/[2k-2,2]",
            class_rest: &[2],
            subgroup_rest: &[2],
            rows: &[&["d4", "(k-1)d4"], &["d4/2", "(2k-1)d4/2"]],
        },
        QuotientFixture {
            name: "X_[2k-6,6]/[2k-2,2]",
            class_rest: &[6],
            subgroup_rest: &[2],
            rows: &[&["0", "d0/(6(2k-6))"], &["2k d4/(6(2k-6))", "2k(2k-3)d4/(6(2k-6))"]],
        },
        QuotientFixture {
            name: "X_[2k]/[2k-4,4]",
            class_rest: &[],
            subgroup_rest: &[4],
            rows: &[
                &["0", "4d4", "(2k-6)d4"],
                &["2d6", "2(5k-12)d6", "(2k-6)(2k-5)d6"],
                &["3d6", "6(2k-5)d6", "(2k-7)(2k-5)d6"],
            ],
        },
        QuotientFixture {
            name: "X_[2k-2,2]/[2k-4,4]",
            class_rest: &[2],
            subgroup_rest: &[4],
            rows: &[
                &["0", "4d4", "(k-4)d4"],
                &["2d6", "(7k-18)d6", "(2k^2-11k+16)d6"],
                &["3(k-4)d8", "6(2k^2-11k+16)d8", "(2k^2-9k+12)(2k-7)d8"],
            ],
        },
        QuotientFixture {
            name: "X_[2k]/[2k-6,6]",
            class_rest: &[],
            subgroup_rest: &[6],
            rows: &[
                &["0", "24d6", "12(2k-8)d6", "(2k-8)(2k-10)d6"],
                &["8d8", "8(8k-27)d8", "2(13k-45)(2k-8)d8", "(2k-7)(2k-8)(2k-10)d8"],
                &["12d8", "6(13k-45)d8", "4(7k-30)(2k-7)d8", "(2k-7)(2k-9)(2k-10)d8"],
                &["15d8", "45(2k-7)d8", "15(2k-7)(2k-9)d8", "(2k-7)(2k-9)(2k-11)d8"],
            ],
        },
        QuotientFixture {
            name: "X_[2k-2,2]/[2k-6,6]",
            class_rest: &[2],
            subgroup_rest: &[6],
            rows: &[
                &["0", "24d6", "6(3k-14)d6", "(k-5)(2k-12)d6"],
                &["8d8", "4(13k-48)d8", "(34k^2-274k+564)d8", "2(2k^3-27k^2+123k-190)d8"],
                &[
                    "6(3k-14)d10",
                    "6(17k^2-137k+282)d10",
                    "2(32k^3-390k^2+1627k-2334)d10",
                    "(8k^4-136k^3+886k^2-2642k+3060)d10",
                ],
                &[
                    "15(k-6)d10",
                    "45(2k^2-17k+38)d10",
                    "15(4k^3-48k^2+203k-306)d10",
                    "(8k^4-132k^3+838k^2-2487k+2970)d10",
                ],
            ],
        },
        QuotientFixture {
            name: "X_[2k-4,4]/[2k-6,6]",
            class_rest: &[4],
            subgroup_rest: &[6],
            rows: &[
                &["0", "12d6", "3(2k-8)d6", "(k^2-7k+12)d6"],
                &["4d8", "10d6", "(13k^2-79k+108)d8", "(2k^3-21k^2+65k-52)d8"],
                &["3d8", "3(13k^2-79k+108)d10", "(28k^3-274k^2+792k-576)d10", "(4k^4-60k^3+311k^2-609k+276)d10"],
                &[
                    "15(k^2-7k+12)d12",
                    "45(2k^3-21k^2+65k-52)d12",
                    "15(4k^4-60k^3+311k^2-609k+276)d12",
                    "(8k^5-164k^4+1282k^3-4591k^2+6795k-1980)d12",
                ],
            ],
        },
        QuotientFixture {
            name: "X_[2k-6,6]/[2k-6,6]",
            class_rest: &[6],
            subgroup_rest: &[6],
            rows: &[
                &["8d8", "4d6", "2(2k-2)d6", "(2/3)(k^2-6k+2)d6"],
                &["(4/3)d8", "((32/3)k-4)d8", "((26/3)k^2-(116/3)k+4)d8", "((4/3)k^3-(38/3)k^2+(92/3)k-(4/3))d8"],
                &[
                    "2(2k-2)d10",
                    "(26k^2-116k+12)d10",
                    "((56/3)k^3-164k^2+(1108/3)k-12)d10",
                    "((8/3)k^4-(112/3)k^3+(526/3)k^2-(836/3)k+4)d10",
                ],
                &[
                    "10(k^2-6k+2)d12",
                    "60(k^3-(19/2)k^2+23k-1)d12",
                    "40(k^4-14k^3+(263/4)k^2-(209/2)k+(3/2))d12",
                    "((16/3)k^5-104k^4+(2284/3)k^3-2486k^2+(9220/3)k-20)d12",
                ],
            ],
        },
        QuotientFixture {
            name: "X_[2k]/[2k-4,2,2]",
            class_rest: &[],
            subgroup_rest: &[2, 2],
            rows: &[
                &["0", "0", "0", "0", "4d4", "(2k-6)d4"],
                &["0", "0", "d4", "2d6", "4(2k-5)d6", "(2k-5)(2k-6)d6"],
                &["0", "d4", "0", "2d6", "4(2k-5)d6", "(2k-5)(2k-6)d6"],
                &["0", "d4", "d4", "0", "2d4", "(2k-6)d4"],
                &["d6", "(2k-5)d6", "(2k-5)d6", "d6", "(6k-14)d6", "(2k-5)(2k-6)d6"],
                &["d6", "(2k-5)d6", "(2k-5)d6", "2d6", "4(2k-5)d6", "(2k-5)(2k-7)d6"],
            ],
        },
        QuotientFixture {
            name: "X_[2k-2,2]/[2k-4,2,2]",
            class_rest: &[2],
            subgroup_rest: &[2, 2],
            rows: &[
                &["0", "d4", "d4", "0", "2d4", "(k-4)d4"],
                &["d6", "(2k-5)d6", "(k-3)d6", "d6", "2(2k-5)d6", "(2k^2-11k+16)d6"],
                &["d6", "(k-3)d6", "(2k-5)d6", "d6", "2(2k-5)d6", "(2k^2-11k+16)d6"],
                &["0", "d4/2", "d4/2", "0", "3d4", "(k-4)d4"],
                &["d6/2", "(2k-5)d6/2", "(2k-5)d6/2", "(3/2)d6", "(5k-13)d6", "(2k^2-11k+16)d6"],
                &[
                    "(k-4)d8",
                    "(2k^2-11k+16)d8",
                    "(2k^2-11k+16)d8",
                    "(2k-8)d8",
                    "4(2k^2-11k+16)d8",
                    "(2k^2-9k+12)(2k-7)d8",
                ],
            ],
        },
        QuotientFixture {
            name: "X_[2k-4,4]/[2k-4,2,2]",
            class_rest: &[4],
            subgroup_rest: &[2, 2],
            rows: &[
                &["0", "0", "0", "2d6", "d4", "d2/4"],
                &["0", "0", "k d6/2", "d6/2", "(2k-1)d6", "(2k^2-7k+1)d6/2"],
                &["0", "k d6/2", "0", "d6/2", "(2k-1)d6", "(2k^2-7k+1)d6/2"],
                &["d6", "d4/4", "d4/4", "d6", "d4/2", "d2/4"],
                &["d6/4", "(2k-1)d6/4", "(2k-1)d6/4", "d6/4", "(3k-1)d6/2", "(2k^2-7k+1)d6/2"],
                &[
                    "(k-1)d8/2",
                    "(2k^2-7k+1)d8/2",
                    "(2k^2-7k+1)d8/2",
                    "(k-1)d8",
                    "2(2k^2-7k+1)d8",
                    "(2k^3-14k^2+(51/2)k-(3/2))d8",
                ],
            ],
        },
        QuotientFixture {
            name: "X_[2k-4,4]/[2k-2,2] (worked example)",
            class_rest: &[4],
            subgroup_rest: &[2],
            rows: &[&["0", "k(k-1)d6"], &["k d6/2", "k(2k-3)d6/2"]],
        },
        QuotientFixture {
            name: "X_[2k-4,4]/[2k-4,4] (worked example)",
            class_rest: &[4],
            subgroup_rest: &[4],
            rows: &[
                &["2d6", "d4", "(k-1)(k-2)d6"],
                &["d6/2", "(5k-2)d6/2", "(2k^2-7k+1)d6/2"],
                &["(3/2)(k-1)d8", "3(2k^2-7k+1)d8", "(2k^3-14k^2+(51/2)k-(3/2))d8"],
            ],
        },
    ]
}

/// Evaluates a formula at `k`. `Ok(None)` when a double factorial argument
/// drops below -1.
pub fn eval(src: &str, k: usize) -> Result<Option<Rational>> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0, k: k as i64, undefined: false };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Format(format!("trailing input in {src:?}")));
    }
    Ok((!p.undefined).then_some(v))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    K,
    Df(i64),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let number = |i: &mut usize| -> i64 {
        let mut v = 0i64;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            v = v * 10 + chars[*i].to_digit(10).unwrap() as i64;
            *i += 1;
        }
        v
    };
    while i < chars.len() {
        match chars[i] {
            ' ' => i += 1,
            c if c.is_ascii_digit() => out.push(Tok::Num(number(&mut i))),
            'k' => {
                out.push(Tok::K);
                i += 1;
            }
            'd' => {
                i += 1;
                out.push(Tok::Df(number(&mut i)));
            }
            c @ ('+' | '-' | '*' | '/' | '^' | '(' | ')') => {
                out.push(Tok::Op(c));
                i += 1;
            }
            c => return Err(Error::Format(format!("unexpected {c:?} in {src:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
    k: i64,
    undefined: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Rational> {
        let mut v = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            if c == '+' {
                v += t;
            } else {
                v -= t;
            }
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<Rational> {
        let mut v = self.unary()?;
        loop {
            match self.peek().cloned() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    v *= self.power()?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.power()?;
                    if d.is_zero() {
                        self.undefined = true;
                    } else {
                        v /= d;
                    }
                }
                Some(Tok::Num(_) | Tok::K | Tok::Df(_) | Tok::Op('(')) => v *= self.power()?,
                _ => return Ok(v),
            }
        }
    }

    fn unary(&mut self) -> Result<Rational> {
        if self.peek() == Some(&Tok::Op('-')) {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Rational> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Op('^')) {
            self.pos += 1;
            let Some(Tok::Num(e)) = self.peek().cloned() else {
                return Err(Error::Format("exponent must be an integer".into()));
            };
            self.pos += 1;
            let mut v = Rational::one();
            for _ in 0..e {
                v *= &base;
            }
            return Ok(v);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Rational> {
        let t = self.peek().cloned();
        self.pos += 1;
        match t {
            Some(Tok::Num(n)) => Ok(rational::int(n)),
            Some(Tok::K) => Ok(rational::int(self.k)),
            Some(Tok::Df(m)) => match double_factorial(2 * self.k - m) {
                Ok(v) => Ok(rational::big(num_bigint::BigInt::from(v))),
                Err(_) => {
                    self.undefined = true;
                    Ok(Rational::zero())
                }
            },
            Some(Tok::Op('(')) => {
                let v = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(Error::Format("missing ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            other => Err(Error::Format(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn evaluator() {
        assert_eq!(eval("2k^2-11k+16", 6).unwrap(), Some(int(22)));
        assert_eq!(eval("-(5k-12)d8", 6).unwrap(), Some(int(-144)));
        assert_eq!(eval("d0/(6(2k-6))", 6).unwrap(), Some(int(1280)));
        assert_eq!(eval("(2/3)(k^2-6k+2)d6", 6).unwrap(), Some(int(64)));
        assert_eq!(eval("d12", 5).unwrap(), None);
        assert_eq!(eval("d11", 5).unwrap(), Some(int(1)));
        assert_eq!(eval("-2k d6 / 4", 5).unwrap(), Some(int(-20)));
        assert!(eval("2k)", 5).is_err());
        assert!(eval("2x", 5).is_err());
    }

    #[test]
    fn sample_cells() {
        let cell = |m, c| char_table_closed_form(6, m, c).unwrap().unwrap().printed;
        assert_eq!(cell(1, 0), int(-384));
        assert_eq!(cell(2, 1), int(-144));
        assert_eq!(cell(3, 0), int(96));
        assert!(char_table_closed_form(6, 1, 3).unwrap().is_none());
    }

    #[test]
    fn coincidences() {
        assert_eq!(coincidence_factor(6, &[6]), Some(2));
        assert_eq!(coincidence_factor(7, &[6]), Some(1));
        assert_eq!(coincidence_factor(4, &[4]), Some(2));
        assert_eq!(coincidence_factor(3, &[2, 2]), Some(3));
        assert_eq!(coincidence_factor(5, &[2, 2]), Some(1));
        assert_eq!(coincidence_factor(2, &[4]), None);
    }

    #[test]
    fn printed_first_table_at_k6() {
        let f = &quotient_fixtures()[0];
        let m = f.printed(6).unwrap().unwrap();
        assert_eq!(m, vec![vec![int(0), int(3840)], vec![int(384), int(3456)]]);
        assert_eq!(quotient_fixtures().len(), 14);
    }
}
