//! A small text format for braid words.
//!
//! ```text
//! word   := factor (WS factor)*
//! factor := "b" INDEX ("^" SIGNED_INT)?
//! ```
//!
//! Indices are 1-based and the exponent defaults to 1, so `"b1 b2^-1 b1^3"`
//! is the word `b1 b2^-1 b1^3` in `B_3`. A word acts on kets from the right:
//! `"b1 b2"` is the matrix product `b1 b2`.

use std::fmt;

use crate::braidrep::{jones_representation, BraidRepresentation, RepContext};
use crate::error::{Error, Result};
use crate::linalg::{apply, matmul, matpow, ComplexMatrix, StateVector};
use crate::states::build_structured_b;
use crate::tla::{InvolutionSpec, RepShape, TLParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    /// 1-based generator index.
    pub generator: usize,
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    factors: Vec<Factor>,
}

impl BraidWord {
    pub fn new(strands: usize, factors: Vec<Factor>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidShape(format!(
                "a braid needs >= 2 strands, got {strands}"
            )));
        }
        for f in &factors {
            if f.generator == 0 || f.generator >= strands {
                return Err(Error::IndexOutOfRange {
                    index: f.generator,
                    strands,
                });
            }
            if f.exponent == 0 {
                return Err(Error::ZeroExponent { position: 0 });
            }
        }
        Ok(Self { strands, factors })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// The word read backwards with negated exponents.
    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| Factor {
                    generator: f.generator,
                    exponent: -f.exponent,
                })
                .collect(),
        }
    }

    /// Concatenation `self other`, on the larger strand count.
    pub fn concat(&self, other: &Self) -> Self {
        Self {
            strands: self.strands.max(other.strands),
            factors: self.factors.iter().chain(&other.factors).copied().collect(),
        }
    }

    fn is_exactly(&self, pattern: &[(usize, i64)]) -> bool {
        self.factors.len() == pattern.len()
            && self
                .factors
                .iter()
                .zip(pattern)
                .all(|(f, &(g, e))| f.generator == g && f.exponent == e)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, factor) in self.factors.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "b{}", factor.generator)?;
            if factor.exponent != 1 {
                write!(f, "^{}", factor.exponent)?;
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(ch) = self.peek() {
            self.pos += ch.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        &self.text[start..self.pos]
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }
}

/// Parses a word; `declared_strands` fixes the strand count, otherwise it is
/// the largest index plus one.
pub fn parse(text: &str, declared_strands: Option<usize>) -> Result<BraidWord> {
    let mut cur = Cursor { text, pos: 0 };
    let mut factors = Vec::new();
    let mut positions = Vec::new();
    cur.skip_ws();
    while cur.peek().is_some() {
        let start = cur.pos;
        if cur.peek() != Some('b') {
            return Err(cur.error(format!(
                "expected 'b', found {:?}",
                cur.peek().unwrap_or(' ')
            )));
        }
        cur.bump();
        let index_text = cur.digits();
        if index_text.is_empty() {
            return Err(cur.error("expected generator index"));
        }
        let generator: usize = index_text.parse().map_err(|_| Error::Syntax {
            position: cur.pos,
            message: "index too large".into(),
        })?;
        if generator == 0 {
            return Err(Error::Syntax {
                position: start + 1,
                message: "generator indices start at 1".into(),
            });
        }
        let mut exponent = 1i64;
        if cur.peek() == Some('^') {
            cur.bump();
            let exp_start = cur.pos;
            let negative = match cur.peek() {
                Some('-') => {
                    cur.bump();
                    true
                }
                Some('+') => {
                    cur.bump();
                    false
                }
                _ => false,
            };
            let digits = cur.digits();
            if digits.is_empty() {
                return Err(cur.error("expected exponent"));
            }
            let magnitude: i64 = digits.parse().map_err(|_| Error::Syntax {
                position: exp_start,
                message: "exponent too large".into(),
            })?;
            exponent = if negative { -magnitude } else { magnitude };
            if exponent == 0 {
                return Err(Error::ZeroExponent {
                    position: exp_start,
                });
            }
        }
        match cur.peek() {
            None => {}
            Some(ch) if ch.is_whitespace() => cur.skip_ws(),
            Some(ch) => return Err(cur.error(format!("unexpected {ch:?}"))),
        }
        factors.push(Factor {
            generator,
            exponent,
        });
        positions.push(start);
    }
    if factors.is_empty() {
        return Err(Error::Syntax {
            position: 0,
            message: "empty braid word".into(),
        });
    }
    let max_index = factors.iter().map(|f| f.generator).max().unwrap_or(1);
    let strands = match declared_strands {
        Some(m) => {
            if let Some(f) = factors.iter().find(|f| f.generator >= m) {
                return Err(Error::IndexOutOfRange {
                    index: f.generator,
                    strands: m,
                });
            }
            m
        }
        None => max_index + 1,
    };
    BraidWord::new(strands, factors)
}

fn check_compatible(word: &BraidWord, rep: &BraidRepresentation) -> Result<()> {
    if word.strands > rep.strands() {
        return Err(Error::Incompatible(format!(
            "word on {} strands, representation on {}",
            word.strands,
            rep.strands()
        )));
    }
    Ok(())
}

fn factor_matrix(rep: &BraidRepresentation, f: &Factor) -> Result<ComplexMatrix> {
    let base = if f.exponent > 0 {
        rep.generator(f.generator)
    } else {
        rep.inverse(f.generator)
    }
    .ok_or(Error::IndexOutOfRange {
        index: f.generator,
        strands: rep.strands(),
    })?;
    matpow(base, f.exponent.unsigned_abs())
}

/// Left-to-right product of the word's factors.
pub fn evaluate(word: &BraidWord, rep: &BraidRepresentation) -> Result<ComplexMatrix> {
    check_compatible(word, rep)?;
    let mut acc = ComplexMatrix::identity(rep.dim());
    for f in word.factors() {
        acc = matmul(&acc, &factor_matrix(rep, f)?)?;
    }
    Ok(acc)
}

/// `b1 b2` and its inverse word `b2^-1 b1^-1` take the structured path.
fn structured_direction(word: &BraidWord) -> Option<bool> {
    if word.is_exactly(&[(1, 1), (2, 1)]) {
        Some(false)
    } else if word.is_exactly(&[(2, -1), (1, -1)]) {
        Some(true)
    } else {
        None
    }
}

/// `evaluate(word) v`, applying factors right to left.
pub fn evaluate_on_state(
    word: &BraidWord,
    rep: &BraidRepresentation,
    v: &StateVector,
) -> Result<StateVector> {
    check_compatible(word, rep)?;
    if v.dim() != rep.dim() {
        return Err(Error::DimensionMismatch {
            op: "evaluate_on_state",
            left: (rep.dim(), rep.dim()),
            right: (v.dim(), 1),
        });
    }
    if let (
        RepContext::Jones {
            params,
            shape,
            spec,
        },
        Some(inverse),
    ) = (rep.context(), structured_direction(word))
    {
        return build_structured_b(*shape, params, spec)?.apply(v, inverse);
    }
    let mut out = v.clone();
    for f in word.factors().iter().rev() {
        out = apply(&factor_matrix(rep, f)?, &out)?;
    }
    Ok(out)
}

/// Applies a word under the Jones family without building dense generators
/// when the structured path covers it, so large registers stay in reach.
pub fn apply_jones_word(
    word: &BraidWord,
    params: &TLParams,
    shape: RepShape,
    spec: &InvolutionSpec,
    v: &StateVector,
) -> Result<StateVector> {
    if word.strands > 3 {
        return Err(Error::Incompatible(format!(
            "the Jones family represents B_3, word needs {} strands",
            word.strands
        )));
    }
    if let Some(inverse) = structured_direction(word) {
        return build_structured_b(shape, params, spec)?.apply(v, inverse);
    }
    let rep = jones_representation(params, shape, spec)?;
    evaluate_on_state(word, &rep, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braidrep::bell_representation;
    use crate::linalg::{c, ZERO};
    use std::f64::consts::PI;

    fn f(generator: usize, exponent: i64) -> Factor {
        Factor {
            generator,
            exponent,
        }
    }

    #[test]
    fn parse_examples() {
        let w = parse("b1 b2", Some(3)).unwrap();
        assert_eq!(w.factors(), &[f(1, 1), f(2, 1)]);
        assert_eq!(w.strands(), 3);

        let w = parse("b1 b2^-1 b1^3", None).unwrap();
        assert_eq!(w.factors(), &[f(1, 1), f(2, -1), f(1, 3)]);
        assert_eq!(w.strands(), 3);
        assert_eq!(w.to_string(), "b1 b2^-1 b1^3");

        assert!(matches!(
            parse("b3", Some(3)),
            Err(Error::IndexOutOfRange {
                index: 3,
                strands: 3
            })
        ));
        assert_eq!(parse("  b4^+2  ", None).unwrap().factors(), &[f(4, 2)]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse("", None),
            Err(Error::Syntax { position: 0, .. })
        ));
        assert!(matches!(parse("   ", None), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse("b1 b2^0", None),
            Err(Error::ZeroExponent { position: 6 })
        ));
        assert!(matches!(
            parse("b1 x2", None),
            Err(Error::Syntax { position: 3, .. })
        ));
        assert!(matches!(
            parse("b", None),
            Err(Error::Syntax { position: 1, .. })
        ));
        assert!(matches!(parse("b0", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse("b1^", None), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse("b1b2", None),
            Err(Error::Syntax { position: 2, .. })
        ));
    }

    #[test]
    fn bell_word_gives_psi() {
        let rep = bell_representation(3).unwrap();
        let w = parse("b1 b2", Some(3)).unwrap();
        let out = evaluate_on_state(&w, &rep, &StateVector::basis(3, 0).unwrap()).unwrap();
        for idx in 0..8 {
            let want = if [0b000, 0b011, 0b101, 0b110].contains(&idx) {
                0.5
            } else {
                0.0
            };
            assert!((out.amplitude(idx) - c(want, 0.0)).norm() < 1e-15);
        }
        let m = evaluate(&w, &rep).unwrap();
        let via_matrix = apply(&m, &StateVector::basis(3, 0).unwrap()).unwrap();
        assert!(via_matrix.max_abs_diff(&out).unwrap() < 1e-15);
    }

    #[test]
    fn inverses_and_powers() {
        let rep = bell_representation(2).unwrap();
        let m = evaluate(&parse("b1 b1^-1", None).unwrap(), &rep).unwrap();
        assert!(m.max_abs_diff(&ComplexMatrix::identity(4)).unwrap() < 1e-15);

        let p = TLParams::new(PI / 8.0, 0.0).unwrap();
        let shape = RepShape::new(2, 1).unwrap();
        let rep = jones_representation(&p, shape, &InvolutionSpec::standard(shape)).unwrap();
        let m = evaluate(&parse("b1^16", None).unwrap(), &rep).unwrap();
        assert!(m.max_abs_diff(&ComplexMatrix::identity(4)).unwrap() < 1e-10);
        let m = evaluate(&parse("b2^16", None).unwrap(), &rep).unwrap();
        assert!(m.max_abs_diff(&ComplexMatrix::identity(4)).unwrap() < 1e-10);
    }

    #[test]
    fn structured_path_for_jones() {
        let p = TLParams::default();
        let shape = RepShape::new(3, 1).unwrap();
        let spec = InvolutionSpec::standard(shape);
        let rep = jones_representation(&p, shape, &spec).unwrap();
        let w = parse("b1 b2", None).unwrap();
        let zero = StateVector::basis(3, 0).unwrap();
        let out = evaluate_on_state(&w, &rep, &zero).unwrap();
        let support: Vec<usize> = (0..8)
            .filter(|&i| out.amplitude(i) != ZERO && out.amplitude(i).norm() > 1e-14)
            .collect();
        assert_eq!(support, vec![0, 7]);
        let dense = apply(&evaluate(&w, &rep).unwrap(), &zero).unwrap();
        assert!(out.max_abs_diff(&dense).unwrap() < 1e-12);

        let inv = w.inverse();
        assert_eq!(inv.to_string(), "b2^-1 b1^-1");
        let back = evaluate_on_state(&inv, &rep, &out).unwrap();
        assert!(back.max_abs_diff(&zero).unwrap() < 1e-12);

        let big = RepShape::new(16, 1).unwrap();
        let v = StateVector::basis(16, 0).unwrap();
        let out = apply_jones_word(&w, &p, big, &InvolutionSpec::standard(big), &v).unwrap();
        assert!((out.norm() - 1.0).abs() < 1e-12);
        assert!(apply_jones_word(
            &parse("b3", None).unwrap(),
            &p,
            big,
            &InvolutionSpec::standard(big),
            &v
        )
        .is_err());
    }

    #[test]
    fn incompatible_words() {
        let rep = bell_representation(3).unwrap();
        assert!(matches!(
            evaluate(&parse("b3", None).unwrap(), &rep),
            Err(Error::Incompatible(_))
        ));
        assert!(evaluate_on_state(
            &parse("b1", None).unwrap(),
            &rep,
            &StateVector::basis(2, 0).unwrap()
        )
        .is_err());
    }
}
