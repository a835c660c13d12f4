//! Braid words, positive lifts of Weyl elements, and their images in the
//! Hecke algebra, where every generator acts invertibly.
//!
//! No normal form for braid words is attempted; relations are verified in
//! the Hecke image, which is not asserted faithful.

use std::fmt;

use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::weyl::{WeylElement, WeylGroup};

/// Safety cap on parsed braid-word length.
pub const BRAID_WORD_CAP: usize = 10_000;

/// One letter sigma_i^{+-1}; `index` is 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BraidLetter {
    pub index: usize,
    pub positive: bool,
}

impl BraidLetter {
    pub fn positive(index: usize) -> Self {
        BraidLetter {
            index,
            positive: true,
        }
    }

    pub fn negative(index: usize) -> Self {
        BraidLetter {
            index,
            positive: false,
        }
    }

    pub fn inverted(self) -> Self {
        BraidLetter {
            index: self.index,
            positive: !self.positive,
        }
    }
}

/// A word in the braid generators attached to a Weyl group.
#[derive(Clone, PartialEq, Eq)]
pub struct BraidWord {
    group: WeylGroup,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(group: &WeylGroup, letters: Vec<BraidLetter>) -> Result<BraidWord> {
        for l in &letters {
            group.cartan().check_generator(l.index)?;
        }
        Ok(BraidWord {
            group: group.clone(),
            letters,
        })
    }

    pub fn empty(group: &WeylGroup) -> BraidWord {
        BraidWord {
            group: group.clone(),
            letters: Vec::new(),
        }
    }

    /// Parse whitespace-separated tokens "i" (positive) and "-i"
    /// (negative), 1-based: "1 2 -1".
    pub fn parse(group: &WeylGroup, input: &str) -> Result<BraidWord> {
        let mut letters = Vec::new();
        for (pos, token) in input.split_whitespace().enumerate() {
            let (positive, digits) = match token.strip_prefix('-') {
                Some(rest) => (false, rest),
                None => (true, token),
            };
            let idx: usize = digits.parse().map_err(|_| Error::Parse {
                position: pos,
                message: format!("invalid braid letter {token:?}"),
            })?;
            if idx == 0 {
                return Err(Error::Parse {
                    position: pos,
                    message: "generator indices are 1-based".into(),
                });
            }
            letters.push(BraidLetter {
                index: idx - 1,
                positive,
            });
            if letters.len() > BRAID_WORD_CAP {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("braid word exceeds the cap of {BRAID_WORD_CAP} letters"),
                });
            }
        }
        BraidWord::new(group, letters)
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cancel adjacent inverse pairs until none remain; the Hecke image
    /// is unchanged.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<BraidLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match stack.last() {
                Some(&top) if top.index == l.index && top.positive != l.positive => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        BraidWord {
            group: self.group.clone(),
            letters: stack,
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        self.group.check_same(&other.group)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            group: self.group.clone(),
            letters,
        })
    }

    pub fn reversed(&self) -> BraidWord {
        BraidWord {
            group: self.group.clone(),
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// The formal inverse: reverse the word and invert every letter.
    pub fn inverse_word(&self) -> BraidWord {
        BraidWord {
            group: self.group.clone(),
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// sigma_i -> t_{s_i}, sigma_i^-1 -> (t_{s_i})^-1; multiplicative in
    /// the word.
    pub fn hecke_image(&self) -> HeckeElement {
        let alg = HeckeAlgebra::new(self.group.clone());
        let mut out = alg.unit();
        for l in &self.letters {
            let s = self
                .group
                .simple(l.index)
                .expect("letter validated at construction");
            let factor = if l.positive {
                alg.t(&s).expect("same group")
            } else {
                alg.t_inverse(&s).expect("same group")
            };
            out = out.mult(&factor).expect("same group");
        }
        out
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.positive {
                    (l.index + 1).to_string()
                } else {
                    format!("-{}", l.index + 1)
                }
            })
            .collect();
        write!(f, "{}", tokens.join(" "))
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord({})", self)
    }
}

/// All-positive lift along the canonical reduced word; well defined in
/// the Hecke image by Matsumoto's theorem.
pub fn positive_lift(w: &WeylElement) -> BraidWord {
    BraidWord {
        group: w.group().clone(),
        letters: w.word().iter().map(|&i| BraidLetter::positive(i)).collect(),
    }
}

/// Outcome of checking one braid relation in the Hecke image.
#[derive(Clone, Debug)]
pub struct BraidRelationReport {
    pub i: usize,
    pub j: usize,
    pub order: usize,
    pub holds: bool,
    pub lhs: HeckeElement,
    pub rhs: HeckeElement,
}

/// Compare the images of the alternating words sigma_i sigma_j ... and
/// sigma_j sigma_i ... of length m(i,j).
pub fn verify_braid_relation(group: &WeylGroup, i: usize, j: usize) -> Result<BraidRelationReport> {
    group.cartan().check_generator(i)?;
    group.cartan().check_generator(j)?;
    if i == j {
        return Err(Error::Parse {
            position: 0,
            message: "braid relation needs two distinct generators".into(),
        });
    }
    let m = group.cartan().coxeter_m(i, j);
    let alternating = |a: usize, b: usize| -> BraidWord {
        let letters = (0..m)
            .map(|k| BraidLetter::positive(if k % 2 == 0 { a } else { b }))
            .collect();
        BraidWord {
            group: group.clone(),
            letters,
        }
    };
    let lhs = alternating(i, j).hecke_image();
    let rhs = alternating(j, i).hecke_image();
    Ok(BraidRelationReport {
        i,
        j,
        order: m,
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}
