//! Words over a symmetric generating alphabet, with exact normal forms for
//! the built-in group families (free, free abelian, surface, direct and free
//! products). The normal form solves the word problem: two words map to the
//! same normal form exactly when they represent the same group element.

mod dehn;
mod peripheral;

pub use dehn::dehn_reduce;
pub use peripheral::{PeripheralFamily, PeripheralKind, PeripheralSpec};

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// A letter indexes into the symmetric alphabet: generator `i` is letter
/// `2i`, its formal inverse is `2i + 1`, so `l ^ 1` inverts a letter.
pub type Letter = u8;

#[inline]
pub fn letter_inverse(l: Letter) -> Letter {
    l ^ 1
}

/// A word over the ambient alphabet. The empty word is the group identity.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn single(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Formal inverse: reversed sequence with each letter inverted. Not
    /// normalized.
    pub fn formal_inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| letter_inverse(l)).collect())
    }

    /// Plain concatenation, not normalized.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, n: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.0)
    }
}

/// Shortlex order: compare by length first, then lexicographically by
/// letter index. This is the canonical order used everywhere a "smallest"
/// word is picked (coset keys, enumeration order, tie-breaking).
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Generator names plus the fixed pairing of each letter with its formal
/// inverse. Names render with a trailing `'` for inverses (`a'` = a⁻¹).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::input("alphabet needs at least one generator"));
        }
        if names.len() > 26 {
            return Err(Error::input("at most 26 generators are supported"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if n.is_empty() || n == "1" || n.contains('\'') || n.contains(|c: char| c.is_whitespace()) {
                return Err(Error::input(format!("bad generator name {n:?}")));
            }
            if !seen.insert(n.clone()) {
                return Err(Error::input(format!("duplicate generator name {n:?}")));
            }
        }
        Ok(Alphabet { names })
    }

    /// Default names a, b, c, ... for `n` generators.
    pub fn standard(n: usize) -> Result<Self> {
        let names = (0..n)
            .map(|i| {
                char::from_u32('a' as u32 + i as u32)
                    .map(|c| c.to_string())
                    .ok_or_else(|| Error::input("too many generators for standard names"))
            })
            .collect::<Result<Vec<_>>>()?;
        Alphabet::new(names)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn letter_count(&self) -> usize {
        self.names.len() * 2
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let gen = (l / 2) as usize;
        if l % 2 == 0 {
            self.names[gen].clone()
        } else {
            format!("{}'", self.names[gen])
        }
    }

    pub fn contains_letter(&self, l: Letter) -> bool {
        (l as usize) < self.letter_count()
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        for &l in w.letters() {
            if !self.contains_letter(l) {
                return Err(Error::input(format!(
                    "letter index {l} out of range for alphabet of {} generators",
                    self.generator_count()
                )));
            }
        }
        Ok(())
    }

    /// Render a word; the identity prints as `1`.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().iter().map(|&l| self.letter_name(l)).collect()
    }

    /// Parse a word. Generators are matched longest-name-first, `'` marks an
    /// inverse, and `[u,v]` is the commutator u v u⁻¹ v⁻¹. `1` alone is the
    /// identity. Whitespace and `*` separators are ignored.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if s.iter().collect::<String>() == "1" {
            return Ok(Word::empty());
        }
        let mut order: Vec<usize> = (0..self.names.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.names[i].len()));
        let mut out = Vec::new();
        let mut pos = 0;
        self.parse_into(&s, &mut pos, &order, &mut out, None)?;
        if pos != s.len() {
            return Err(Error::input(format!(
                "unexpected character {:?} at position {} in word {text:?}",
                s[pos], pos
            )));
        }
        Ok(Word(out))
    }

    fn parse_into(
        &self,
        s: &[char],
        pos: &mut usize,
        order: &[usize],
        out: &mut Vec<Letter>,
        stop: Option<char>,
    ) -> Result<()> {
        'outer: while *pos < s.len() {
            let c = s[*pos];
            if Some(c) == stop {
                return Ok(());
            }
            if c == '[' {
                *pos += 1;
                let mut u = Vec::new();
                self.parse_into(s, pos, order, &mut u, Some(','))?;
                if *pos >= s.len() || s[*pos] != ',' {
                    return Err(Error::input("expected ',' in commutator"));
                }
                *pos += 1;
                let mut v = Vec::new();
                self.parse_into(s, pos, order, &mut v, Some(']'))?;
                if *pos >= s.len() || s[*pos] != ']' {
                    return Err(Error::input("expected ']' in commutator"));
                }
                *pos += 1;
                let inverted = *pos < s.len() && s[*pos] == '\'';
                if inverted {
                    *pos += 1;
                }
                let mut comm = Vec::new();
                comm.extend_from_slice(&u);
                comm.extend_from_slice(&v);
                comm.extend(u.iter().rev().map(|&l| letter_inverse(l)));
                comm.extend(v.iter().rev().map(|&l| letter_inverse(l)));
                if inverted {
                    comm.reverse();
                    for l in &mut comm {
                        *l = letter_inverse(*l);
                    }
                }
                out.extend_from_slice(&comm);
                continue;
            }
            for &gi in order {
                let name: Vec<char> = self.names[gi].chars().collect();
                if s.len() - *pos >= name.len() && s[*pos..*pos + name.len()] == name[..] {
                    *pos += name.len();
                    let inverted = *pos < s.len() && s[*pos] == '\'';
                    if inverted {
                        *pos += 1;
                    }
                    out.push(if inverted { (gi as Letter) * 2 + 1 } else { (gi as Letter) * 2 });
                    continue 'outer;
                }
            }
            return Err(Error::input(format!(
                "unknown generator at position {} in word",
                *pos
            )));
        }
        Ok(())
    }
}

/// Built-in group families. Products may nest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Free { rank: usize },
    FreeAbelian { rank: usize },
    Surface { genus: usize },
    DirectProduct(Vec<Family>),
    FreeProduct(Vec<Family>),
}

impl Family {
    pub fn generator_count(&self) -> usize {
        match self {
            Family::Free { rank } | Family::FreeAbelian { rank } => *rank,
            Family::Surface { genus } => 2 * genus,
            Family::DirectProduct(fs) | Family::FreeProduct(fs) => {
                fs.iter().map(|f| f.generator_count()).sum()
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Family::Free { rank } => format!("free:{rank}"),
            Family::FreeAbelian { rank } => format!("abelian:{rank}"),
            Family::Surface { genus } => format!("surface:{genus}"),
            Family::DirectProduct(fs) => {
                let inner: Vec<String> = fs.iter().map(|f| f.describe()).collect();
                format!("direct({})", inner.join(","))
            }
            Family::FreeProduct(fs) => {
                let inner: Vec<String> = fs.iter().map(|f| f.describe()).collect();
                format!("freeprod({})", inner.join(","))
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Family::Free { rank } | Family::FreeAbelian { rank } => {
                if *rank == 0 {
                    return Err(Error::input("rank must be at least 1"));
                }
            }
            Family::Surface { genus } => {
                if *genus < 2 {
                    return Err(Error::input("surface family needs genus >= 2"));
                }
            }
            Family::DirectProduct(fs) | Family::FreeProduct(fs) => {
                if fs.is_empty() {
                    return Err(Error::input("product family needs at least one factor"));
                }
                for f in fs {
                    f.validate()?;
                }
            }
        }
        Ok(())
    }
}

/// Normalization strategy tree mirroring the family structure, with
/// surface-group rewriting tables precomputed.
#[derive(Clone, Debug)]
enum Normalizer {
    Free,
    Abelian { rank: usize },
    Surface(dehn::SurfaceRules),
    Direct(Vec<(usize, Normalizer)>),
    FreeProd(Vec<(usize, Normalizer)>),
}

impl Normalizer {
    fn build(family: &Family) -> Normalizer {
        match family {
            Family::Free { .. } => Normalizer::Free,
            Family::FreeAbelian { rank } => Normalizer::Abelian { rank: *rank },
            Family::Surface { genus } => Normalizer::Surface(dehn::SurfaceRules::new(*genus)),
            Family::DirectProduct(fs) => Normalizer::Direct(
                fs.iter()
                    .map(|f| (f.generator_count(), Normalizer::build(f)))
                    .collect(),
            ),
            Family::FreeProduct(fs) => Normalizer::FreeProd(
                fs.iter()
                    .map(|f| (f.generator_count(), Normalizer::build(f)))
                    .collect(),
            ),
        }
    }

    fn normalize(&self, letters: &[Letter]) -> Vec<Letter> {
        match self {
            Normalizer::Free => free_reduce(letters),
            Normalizer::Abelian { rank } => abelian_normal_form(letters, *rank),
            Normalizer::Surface(rules) => rules.normalize(letters),
            Normalizer::Direct(factors) => {
                let mut out = Vec::with_capacity(letters.len());
                let mut offset = 0usize;
                for (gens, norm) in factors {
                    let local: Vec<Letter> = letters
                        .iter()
                        .filter(|&&l| {
                            let g = (l / 2) as usize;
                            g >= offset && g < offset + gens
                        })
                        .map(|&l| l - (offset as Letter) * 2)
                        .collect();
                    let normd = norm.normalize(&local);
                    out.extend(normd.into_iter().map(|l| l + (offset as Letter) * 2));
                    offset += gens;
                }
                out
            }
            Normalizer::FreeProd(factors) => {
                // Syllable stack: adjacent letters of one factor form a
                // syllable normalized by that factor; trivial syllables pop
                // and let their neighbours merge.
                let mut ranges = Vec::new();
                let mut off = 0usize;
                for (gens, _) in factors {
                    ranges.push((off, off + gens));
                    off += gens;
                }
                let factor_of = |l: Letter| -> usize {
                    let g = (l / 2) as usize;
                    ranges.iter().position(|&(a, b)| g >= a && g < b).unwrap()
                };
                let renorm = |f: usize, syl: &[Letter]| -> Vec<Letter> {
                    let off = ranges[f].0 as Letter * 2;
                    let local: Vec<Letter> = syl.iter().map(|&l| l - off).collect();
                    factors[f]
                        .1
                        .normalize(&local)
                        .into_iter()
                        .map(|l| l + off)
                        .collect()
                };
                let mut stack: Vec<(usize, Vec<Letter>)> = Vec::new();
                for &l in letters {
                    let f = factor_of(l);
                    match stack.last_mut() {
                        Some(top) if top.0 == f => top.1.push(l),
                        _ => stack.push((f, vec![l])),
                    }
                    loop {
                        let (f, syl) = stack.pop().expect("syllable stack non-empty");
                        let normd = renorm(f, &syl);
                        if !normd.is_empty() {
                            stack.push((f, normd));
                            break;
                        }
                        let n = stack.len();
                        if n >= 2 && stack[n - 1].0 == stack[n - 2].0 {
                            let (_, tail) = stack.pop().expect("merge partner");
                            stack.last_mut().expect("merge target").1.extend(tail);
                        } else {
                            break;
                        }
                    }
                }
                stack.into_iter().flat_map(|(_, syl)| syl).collect()
            }
        }
    }
}

/// Free reduction: cancel adjacent letter/inverse pairs.
pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if let Some(&last) = out.last() {
            if last == letter_inverse(l) {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    out
}

fn abelian_normal_form(letters: &[Letter], rank: usize) -> Vec<Letter> {
    let mut exp = vec![0i64; rank];
    for &l in letters {
        let g = (l / 2) as usize;
        if l % 2 == 0 {
            exp[g] += 1;
        } else {
            exp[g] -= 1;
        }
    }
    let mut out = Vec::new();
    for (g, &e) in exp.iter().enumerate() {
        let letter = if e >= 0 { (g as Letter) * 2 } else { (g as Letter) * 2 + 1 };
        for _ in 0..e.unsigned_abs() {
            out.push(letter);
        }
    }
    out
}

/// A generating alphabet plus a normal-form procedure solving the word
/// problem for one of the built-in families. Immutable; cheap to clone.
#[derive(Clone, Debug)]
pub struct GroupOracle {
    alphabet: Alphabet,
    family: Family,
    norm: Arc<Normalizer>,
}

impl GroupOracle {
    pub fn new(family: Family) -> Result<Self> {
        family.validate()?;
        let alphabet = Alphabet::standard(family.generator_count())?;
        let norm = Arc::new(Normalizer::build(&family));
        Ok(GroupOracle { alphabet, family, norm })
    }

    pub fn free(rank: usize) -> Result<Self> {
        GroupOracle::new(Family::Free { rank })
    }

    pub fn free_abelian(rank: usize) -> Result<Self> {
        GroupOracle::new(Family::FreeAbelian { rank })
    }

    pub fn surface(genus: usize) -> Result<Self> {
        GroupOracle::new(Family::Surface { genus })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Canonical normal form. Two words normalize equal exactly when they
    /// represent the same group element.
    pub fn normalize(&self, w: &Word) -> Result<Word> {
        self.alphabet.check_word(w)?;
        Ok(Word(self.norm.normalize(w.letters())))
    }

    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word> {
        self.normalize(&u.concat(v))
    }

    pub fn invert(&self, w: &Word) -> Result<Word> {
        self.normalize(&w.formal_inverse())
    }

    pub fn is_identity(&self, w: &Word) -> Result<bool> {
        Ok(self.normalize(w)?.is_empty())
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.normalize(u)? == self.normalize(v)?)
    }

    pub fn generator(&self, i: usize) -> Result<Word> {
        if i >= self.alphabet.generator_count() {
            return Err(Error::input(format!("generator index {i} out of range")));
        }
        Ok(Word::single((i as Letter) * 2))
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        let w = self.alphabet.parse_word(text)?;
        self.normalize(&w)
    }

    pub fn render(&self, w: &Word) -> String {
        self.alphabet.render(w)
    }
}

#[cfg(test)]
mod tests;
