//! Radius-R balls of Cayley graphs, enumerated breadth-first in shortlex
//! order so vertex indices are globally deterministic.

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, MetricGraph, VertexTag, UNIT_EDGE};
use crate::words::{GroupOracle, Letter, Word};
use crate::DEFAULT_VERTEX_CAP;
use std::collections::HashMap;

/// Index of a constructed ball: vertex ids for every normal form of length
/// ≤ R, grouped into spheres by word length.
#[derive(Clone, Debug)]
pub struct BallIndex {
    radius: u32,
    words: Vec<Word>,
    lookup: HashMap<Word, u32>,
    spheres: Vec<Vec<u32>>,
}

impl BallIndex {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, v: u32) -> &Word {
        &self.words[v as usize]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn vertex_of(&self, w: &Word) -> Option<u32> {
        self.lookup.get(w).copied()
    }

    /// Vertex ids at word-length exactly `k`.
    pub fn sphere(&self, k: u32) -> Result<&[u32]> {
        if k > self.radius {
            return Err(Error::input(format!(
                "sphere {k} out of range for ball of radius {}",
                self.radius
            )));
        }
        Ok(&self.spheres[k as usize])
    }

    /// Normal forms at word-length exactly `k`.
    pub fn sphere_words(&self, k: u32) -> Result<Vec<Word>> {
        Ok(self.sphere(k)?.iter().map(|&v| self.words[v as usize].clone()).collect())
    }
}

/// Build the radius-`radius` ball of the Cayley graph of `oracle` with the
/// default vertex cap.
pub fn build_ball(oracle: &GroupOracle, radius: u32) -> Result<(MetricGraph, BallIndex)> {
    build_ball_capped(oracle, radius, DEFAULT_VERTEX_CAP)
}

/// Vertices are all group elements of word length ≤ radius; edges join g
/// and g·a for every generator letter a with both endpoints inside the
/// ball. Enumeration is shortlex breadth-first: vertex 0 is the identity
/// and indices increase with (length, lex) order.
pub fn build_ball_capped(
    oracle: &GroupOracle,
    radius: u32,
    cap: usize,
) -> Result<(MetricGraph, BallIndex)> {
    let letter_count = oracle.alphabet().letter_count();
    let mut words: Vec<Word> = vec![Word::empty()];
    let mut lookup: HashMap<Word, u32> = HashMap::new();
    lookup.insert(Word::empty(), 0);
    let mut spheres: Vec<Vec<u32>> = vec![vec![0]];

    let mut frontier: Vec<Word> = vec![Word::empty()];
    for _k in 1..=radius {
        let mut next: Vec<Word> = Vec::new();
        for w in &frontier {
            for l in 0..letter_count {
                let nw = oracle.multiply(w, &Word::single(l as Letter))?;
                if !lookup.contains_key(&nw) && !next.contains(&nw) {
                    next.push(nw);
                }
            }
        }
        next.sort();
        next.dedup();
        let mut sphere = Vec::with_capacity(next.len());
        for nw in &next {
            if words.len() >= cap {
                return Err(Error::resource(format!(
                    "ball of radius {radius} exceeds the vertex cap {cap}"
                )));
            }
            let id = words.len() as u32;
            words.push(nw.clone());
            lookup.insert(nw.clone(), id);
            sphere.push(id);
        }
        spheres.push(sphere);
        frontier = next;
        if frontier.is_empty() {
            // finite group exhausted early; remaining spheres stay empty
            while spheres.len() <= radius as usize {
                spheres.push(Vec::new());
            }
            break;
        }
    }

    let mut builder = GraphBuilder::new(oracle.alphabet().clone());
    for w in &words {
        builder.add_vertex(VertexTag::Group { word: w.clone() });
    }
    for (i, w) in words.iter().enumerate() {
        for l in 0..letter_count {
            let nw = oracle.multiply(w, &Word::single(l as Letter))?;
            if let Some(&j) = lookup.get(&nw) {
                if (i as u32) < j {
                    builder.add_edge(i as u32, j, UNIT_EDGE)?;
                }
            }
        }
    }
    let graph = builder.finish();
    Ok((graph, BallIndex { radius, words, lookup, spheres }))
}
