use std::fmt;

use crate::error::{Error, Result};

/// `σ_i` or `σ_i^{-1}`, with `i` counted from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(&self) -> Letter {
        Letter { index: self.index, inverse: !self.inverse }
    }
}

/// A word in the generators of `B_m`; letters are applied right to left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::BraidParse { pos: 0, msg: "a braid needs at least one strand".into() });
        }
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(Error::BraidParse {
                pos: 0,
                msg: format!("generator s{} out of range for B{strands}", l.index),
            });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// Signed letter count `ζ`.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(Letter::sign).sum()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self · other` in `B_m` with `m` the larger strand count.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands.max(other.strands), letters }
    }

    /// Moves the first `k` letters to the end (a conjugate of `self`).
    pub fn rotate(&self, k: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// `self · σ_m^{±1}` in `B_{m+1}`.
    pub fn stabilize(&self, inverse: bool) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.push(Letter { index: self.strands, inverse });
        BraidWord { strands: self.strands + 1, letters }
    }

    /// Cancels adjacent `σ_i σ_i^{-1}` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Strand permutation: position `p` at the bottom ends at position `perm[p]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in self.letters.iter().rev() {
            at.swap(l.index - 1, l.index);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " s{}{}", l.index, if l.inverse { "^-1" } else { "" })?;
        }
        Ok(())
    }
}

/// Parses `["B<m>:"] item (WS item)*` with `item := "s" INT ["^-1"]`.
/// Without a header the strand count is one more than the largest index.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let err = |pos: usize, msg: String| Error::BraidParse { pos, msg };
    let mut body = text;
    let mut offset = 0;
    let mut header = None;
    let trimmed = text.trim_start();
    if let Some(rest) = trimmed.strip_prefix('B') {
        let start = text.len() - trimmed.len();
        let colon = rest.find(':').ok_or_else(|| err(start, "header must end with ':'".into()))?;
        let m: usize = rest[..colon]
            .trim()
            .parse()
            .map_err(|_| err(start + 1, format!("bad strand count '{}'", &rest[..colon])))?;
        if m == 0 {
            return Err(err(start + 1, "strand count must be positive".into()));
        }
        header = Some(m);
        offset = start + 1 + colon + 1;
        body = &text[offset..];
    }

    let mut letters = Vec::new();
    let mut positions = Vec::new();
    let mut i = 0;
    let bytes = body.as_bytes();
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        let token = &body[start..i];
        let pos = offset + start;
        let rest = token
            .strip_prefix('s')
            .ok_or_else(|| err(pos, format!("expected s<index>, found '{token}'")))?;
        let (digits, inverse) = match rest.strip_suffix("^-1") {
            Some(d) => (d, true),
            None => (rest, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(pos, format!("bad token '{token}'")));
        }
        let index: usize = digits.parse().map_err(|_| err(pos, format!("index too large in '{token}'")))?;
        if index == 0 {
            return Err(err(pos, "generator indices start at 1".into()));
        }
        letters.push(Letter { index, inverse });
        positions.push(pos);
    }

    let strands = match header {
        Some(m) => {
            if let Some((l, &pos)) = letters.iter().zip(&positions).find(|(l, _)| l.index >= m) {
                return Err(err(pos, format!("s{} out of range for B{m}", l.index)));
            }
            m
        }
        None => 1 + letters.iter().map(|l| l.index).max().unwrap_or(0),
    };
    Ok(BraidWord { strands, letters })
}
