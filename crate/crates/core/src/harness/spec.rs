//! Textual code specifications used by the CLI and experiment configs.
//!
//! ```text
//! steane | shor | bitflip:N | phaseflip:N | surface:L | toric:L
//! hgp-rep:L1,L2            hypergraph product of two repetition codes
//! css:H1,H2 | hgp:H1,H2    classical parity-check matrix files
//! lp:A1,A2                 polynomial matrix files
//! concat:OUTER+INNER       nested specs
//! file:PATH | PATH.qchk    QCHK v1 check matrix
//! ```

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::constructions::{
    bit_flip_code, concatenate, css, hgp, lifted_product, phase_flip_code, repetition, shor,
    steane, surface, toric, ClassicalCode, PolyMatrix,
};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::stabilizer::{read_qchk, validate, StabilizerCode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSpec {
    Steane,
    Shor,
    BitFlip(usize),
    PhaseFlip(usize),
    Surface(usize),
    Toric(usize),
    HgpRep(usize, usize),
    Css(PathBuf, PathBuf),
    Hgp(PathBuf, PathBuf),
    Lp(PathBuf, PathBuf),
    Concat(Box<CodeSpec>, Box<CodeSpec>),
    File(PathBuf),
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn classical(path: &Path) -> Result<ClassicalCode> {
    ClassicalCode::new(BitMatrix::parse(&read(path)?)?)
}

fn poly(path: &Path) -> Result<PolyMatrix> {
    PolyMatrix::parse(&read(path)?)
}

impl CodeSpec {
    pub fn build(&self) -> Result<StabilizerCode> {
        match self {
            CodeSpec::Steane => Ok(steane()),
            CodeSpec::Shor => Ok(shor()),
            CodeSpec::BitFlip(n) => bit_flip_code(*n),
            CodeSpec::PhaseFlip(n) => phase_flip_code(*n),
            CodeSpec::Surface(l) => surface(*l),
            CodeSpec::Toric(l) => toric(*l),
            CodeSpec::HgpRep(a, b) => hgp(&repetition(*a)?, &repetition(*b)?),
            CodeSpec::Css(a, b) => css(&classical(a)?, &classical(b)?),
            CodeSpec::Hgp(a, b) => hgp(&classical(a)?, &classical(b)?),
            CodeSpec::Lp(a, b) => lifted_product(&poly(a)?, &poly(b)?),
            CodeSpec::Concat(outer, inner) => concatenate(&outer.build()?, &inner.build()?),
            CodeSpec::File(path) => validate(read_qchk(&read(path)?)?, true),
        }
    }
}

fn count(name: &str, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::invalid(format!("{name}: expected a nonnegative integer, got {s:?}")))
}

fn pair<'a>(name: &str, s: &'a str) -> Result<(&'a str, &'a str)> {
    s.split_once(',')
        .filter(|(a, b)| !a.is_empty() && !b.is_empty())
        .ok_or_else(|| Error::invalid(format!("{name}: expected two comma-separated arguments")))
}

impl FromStr for CodeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let need = || arg.ok_or_else(|| Error::invalid(format!("code {head:?} needs a parameter")));
        let spec = match head {
            "steane" if arg.is_none() => CodeSpec::Steane,
            "shor" if arg.is_none() => CodeSpec::Shor,
            "bitflip" => CodeSpec::BitFlip(count(head, need()?)?),
            "phaseflip" => CodeSpec::PhaseFlip(count(head, need()?)?),
            "surface" => CodeSpec::Surface(count(head, need()?)?),
            "toric" => CodeSpec::Toric(count(head, need()?)?),
            "hgp-rep" => {
                let (a, b) = pair(head, need()?)?;
                CodeSpec::HgpRep(count(head, a)?, count(head, b)?)
            }
            "css" | "hgp" | "lp" => {
                let (a, b) = pair(head, need()?)?;
                let (a, b) = (PathBuf::from(a), PathBuf::from(b));
                match head {
                    "css" => CodeSpec::Css(a, b),
                    "hgp" => CodeSpec::Hgp(a, b),
                    _ => CodeSpec::Lp(a, b),
                }
            }
            "concat" => {
                let (outer, inner) = need()?
                    .split_once('+')
                    .ok_or_else(|| Error::invalid("concat: expected OUTER+INNER"))?;
                CodeSpec::Concat(Box::new(outer.parse()?), Box::new(inner.parse()?))
            }
            "file" => CodeSpec::File(PathBuf::from(need()?)),
            _ if s.ends_with(".qchk") => CodeSpec::File(PathBuf::from(s)),
            _ => return Err(Error::invalid(format!("unknown code {s:?}"))),
        };
        Ok(spec)
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSpec::Steane => f.write_str("steane"),
            CodeSpec::Shor => f.write_str("shor"),
            CodeSpec::BitFlip(n) => write!(f, "bitflip:{n}"),
            CodeSpec::PhaseFlip(n) => write!(f, "phaseflip:{n}"),
            CodeSpec::Surface(l) => write!(f, "surface:{l}"),
            CodeSpec::Toric(l) => write!(f, "toric:{l}"),
            CodeSpec::HgpRep(a, b) => write!(f, "hgp-rep:{a},{b}"),
            CodeSpec::Css(a, b) => write!(f, "css:{},{}", a.display(), b.display()),
            CodeSpec::Hgp(a, b) => write!(f, "hgp:{},{}", a.display(), b.display()),
            CodeSpec::Lp(a, b) => write!(f, "lp:{},{}", a.display(), b.display()),
            CodeSpec::Concat(o, i) => write!(f, "concat:{o}+{i}"),
            CodeSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_named_codes() {
        assert_eq!("steane".parse::<CodeSpec>().unwrap(), CodeSpec::Steane);
        assert_eq!("surface:5".parse::<CodeSpec>().unwrap(), CodeSpec::Surface(5));
        assert_eq!("hgp-rep:3,4".parse::<CodeSpec>().unwrap(), CodeSpec::HgpRep(3, 4));
        assert_eq!(
            "concat:phaseflip:3+bitflip:3".parse::<CodeSpec>().unwrap(),
            CodeSpec::Concat(Box::new(CodeSpec::PhaseFlip(3)), Box::new(CodeSpec::BitFlip(3)))
        );
        assert_eq!("codes/a.qchk".parse::<CodeSpec>().unwrap(), CodeSpec::File("codes/a.qchk".into()));
        for bad in ["", "surface", "surface:x", "steane:3", "hgp-rep:3", "concat:steane", "golay"] {
            assert!(bad.parse::<CodeSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["shor", "toric:4", "concat:phaseflip:3+bitflip:3", "lp:a.txt,b.txt", "file:x.qchk"] {
            assert_eq!(s.parse::<CodeSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn builds() {
        let code = "concat:phaseflip:3+bitflip:3".parse::<CodeSpec>().unwrap().build().unwrap();
        assert_eq!((code.n(), code.k()), (9, 1));
        assert!(matches!(
            CodeSpec::File("/nonexistent/x.qchk".into()).build(),
            Err(Error::Io(_))
        ));
    }
}
