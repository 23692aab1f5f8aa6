//! Peripheral subgroup specifications: membership tests, canonical coset
//! representatives, and generating sets, for the subgroup kinds the
//! constructions support (cyclic subgroups, direct/free factors, and the
//! whole group).

use super::{Family, GroupOracle, Letter, Word};
use crate::error::{Error, Result};

/// How many consecutive scan steps past the stopping margin the cyclic
/// coset-key scan tolerates, and the hard cap on scanned powers. The scan
/// walks g·wᵏ in both directions and keeps the shortlex-least normal form;
/// it stops a direction once the candidate length exceeds the best found
/// by `2·|w| + 8`. Exact for free and abelian families, where candidate
/// length is unimodal in k; for surface families the margin covers the
/// quasiconvexity wobble at the scales this crate builds.
const CYCLIC_SCAN_CAP: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeripheralKind {
    /// The cyclic subgroup generated by a word.
    Cyclic(Word),
    /// The i-th factor: ⟨aᵢ⟩ for free and free abelian families, the full
    /// factor subgroup for direct and free products.
    Factor(usize),
    /// The whole group as a single peripheral (one coset).
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeripheralSpec {
    pub label: String,
    pub kind: PeripheralKind,
}

impl PeripheralSpec {
    pub fn cyclic(label: impl Into<String>, word: Word) -> Self {
        PeripheralSpec { label: label.into(), kind: PeripheralKind::Cyclic(word) }
    }

    pub fn factor(label: impl Into<String>, index: usize) -> Self {
        PeripheralSpec { label: label.into(), kind: PeripheralKind::Factor(index) }
    }

    pub fn full(label: impl Into<String>) -> Self {
        PeripheralSpec { label: label.into(), kind: PeripheralKind::Full }
    }

    pub fn validate(&self, oracle: &GroupOracle) -> Result<()> {
        match &self.kind {
            PeripheralKind::Cyclic(w) => {
                oracle.alphabet().check_word(w)?;
                Ok(())
            }
            PeripheralKind::Factor(i) => match oracle.family() {
                Family::Free { rank } | Family::FreeAbelian { rank } => {
                    if i >= rank {
                        Err(Error::config(format!(
                            "peripheral {:?}: factor index {i} out of range for rank {rank}",
                            self.label
                        )))
                    } else {
                        Ok(())
                    }
                }
                Family::DirectProduct(fs) | Family::FreeProduct(fs) => {
                    if *i >= fs.len() {
                        Err(Error::config(format!(
                            "peripheral {:?}: factor index {i} out of range for {} factors",
                            self.label,
                            fs.len()
                        )))
                    } else {
                        Ok(())
                    }
                }
                Family::Surface { .. } => Err(Error::config(format!(
                    "peripheral {:?}: surface groups have no factor subgroups; use cyclic",
                    self.label
                ))),
            },
            PeripheralKind::Full => Ok(()),
        }
    }

    /// Does `w` represent an element of the subgroup?
    pub fn membership(&self, oracle: &GroupOracle, w: &Word) -> Result<bool> {
        Ok(self.coset_key(oracle, w)?.is_empty())
    }

    /// Canonical representative of the coset wP: the shortlex-least word
    /// among the minimal-length normal forms in the coset. Constant on
    /// cosets: `coset_key(g) == coset_key(h)` exactly when g⁻¹h ∈ P.
    pub fn coset_key(&self, oracle: &GroupOracle, w: &Word) -> Result<Word> {
        let g = oracle.normalize(w)?;
        match &self.kind {
            PeripheralKind::Full => Ok(Word::empty()),
            PeripheralKind::Cyclic(step) => cyclic_coset_key(oracle, step, &g),
            PeripheralKind::Factor(i) => match oracle.family() {
                Family::Free { .. } | Family::FreeAbelian { .. } => {
                    cyclic_coset_key(oracle, &oracle.generator(*i)?, &g)
                }
                Family::DirectProduct(fs) => {
                    let (lo, hi) = factor_letter_range(fs, *i);
                    // Normal form is the concatenation of factor blocks;
                    // dropping the i-th block is the minimal representative.
                    let kept: Vec<Letter> = g
                        .letters()
                        .iter()
                        .copied()
                        .filter(|&l| (l as usize) < lo || (l as usize) >= hi)
                        .collect();
                    oracle.normalize(&Word::from_letters(kept))
                }
                Family::FreeProduct(fs) => {
                    let (lo, hi) = factor_letter_range(fs, *i);
                    // Strip the trailing syllable when it lies in factor i.
                    let letters = g.letters();
                    let mut end = letters.len();
                    while end > 0 {
                        let l = letters[end - 1] as usize;
                        if l >= lo && l < hi {
                            end -= 1;
                        } else {
                            break;
                        }
                    }
                    Ok(Word::from_letters(letters[..end].to_vec()))
                }
                Family::Surface { .. } => Err(Error::config(
                    "factor peripherals are undefined for surface groups".to_string(),
                )),
            },
        }
    }

    /// Generating words of the subgroup inside the ambient group.
    pub fn generators(&self, oracle: &GroupOracle) -> Result<Vec<Word>> {
        match &self.kind {
            PeripheralKind::Cyclic(w) => {
                let n = oracle.normalize(w)?;
                if n.is_empty() {
                    Ok(Vec::new())
                } else {
                    Ok(vec![n])
                }
            }
            PeripheralKind::Factor(i) => match oracle.family() {
                Family::Free { .. } | Family::FreeAbelian { .. } => Ok(vec![oracle.generator(*i)?]),
                Family::DirectProduct(fs) | Family::FreeProduct(fs) => {
                    let (lo, hi) = factor_letter_range(fs, *i);
                    Ok((lo..hi)
                        .step_by(2)
                        .map(|l| Word::single(l as Letter))
                        .collect())
                }
                Family::Surface { .. } => Err(Error::config(
                    "factor peripherals are undefined for surface groups".to_string(),
                )),
            },
            PeripheralKind::Full => Ok((0..oracle.alphabet().generator_count())
                .map(|i| Word::single((i as Letter) * 2))
                .collect()),
        }
    }
}

/// Letter index range [lo, hi) occupied by factor `i` of a product.
fn factor_letter_range(factors: &[Family], i: usize) -> (usize, usize) {
    let mut off = 0usize;
    for f in &factors[..i] {
        off += f.generator_count();
    }
    let lo = off * 2;
    let hi = lo + factors[i].generator_count() * 2;
    (lo, hi)
}

fn cyclic_coset_key(oracle: &GroupOracle, step: &Word, g: &Word) -> Result<Word> {
    let step = oracle.normalize(step)?;
    if step.is_empty() {
        return Ok(g.clone());
    }
    let margin = 2 * step.len() + 8;
    let mut best = g.clone();
    for dir in [step.clone(), oracle.invert(&step)?] {
        let mut cur = g.clone();
        for _ in 0..CYCLIC_SCAN_CAP {
            cur = oracle.multiply(&cur, &dir)?;
            if cur < best {
                best = cur.clone();
            }
            if cur.len() > best.len() + margin {
                break;
            }
        }
    }
    Ok(best)
}

/// A finite list of peripheral subgroup representatives with distinct
/// labels. Cosets of every member get coned or cusped by the constructions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PeripheralFamily {
    specs: Vec<PeripheralSpec>,
}

impl PeripheralFamily {
    pub fn empty() -> Self {
        PeripheralFamily { specs: Vec::new() }
    }

    pub fn new(specs: Vec<PeripheralSpec>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for s in &specs {
            if !seen.insert(s.label.clone()) {
                return Err(Error::config(format!("duplicate peripheral label {:?}", s.label)));
            }
        }
        Ok(PeripheralFamily { specs })
    }

    pub fn validate(&self, oracle: &GroupOracle) -> Result<()> {
        for s in &self.specs {
            s.validate(oracle)?;
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn specs(&self) -> &[PeripheralSpec] {
        &self.specs
    }

    pub fn iter(&self) -> impl Iterator<Item = &PeripheralSpec> {
        self.specs.iter()
    }
}
