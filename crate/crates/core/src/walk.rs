//! Markov chain on labels `(w, r)` whose transition probabilities are the
//! entries of the three-term blocks.
//!
//! The generator is ChaCha8 seeded with `seed_from_u64`; each step draws one
//! uniform `f64` in `[0, 1)` and selects by cumulative sum over the targets
//! in the fixed order `A_w` row, `B_w` row, `C_w` row, columns ascending.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::recurrence::{blocks, RecursionBlocks};

pub type State = (usize, usize);

/// Transition structure with memoized blocks.
pub struct Chain {
    params: Params,
    cache: HashMap<usize, RecursionBlocks<f64>>,
}

impl Chain {
    pub fn new(params: &Params) -> Result<Self> {
        params.validate()?;
        Ok(Chain { params: *params, cache: HashMap::new() })
    }

    fn blocks(&mut self, w: usize) -> Result<&RecursionBlocks<f64>> {
        if !self.cache.contains_key(&w) {
            let b = blocks::<f64>(&self.params, w)?;
            self.cache.insert(w, b);
        }
        Ok(&self.cache[&w])
    }

    /// Targets of `(w, r)` with their probabilities, zero entries included,
    /// in selection order.
    pub fn transitions(&mut self, (w, r): State) -> Result<Vec<(State, f64)>> {
        let dim = self.params.dim();
        let bl = self.blocks(w)?;
        let mut out = Vec::with_capacity(3 * dim);
        for s in 0..dim {
            if w > 0 {
                out.push(((w - 1, s), bl.a[(r, s)]));
            } else if bl.a[(r, s)] != 0.0 {
                return Err(Error::DegenerateCoefficient("A_0 has a nonzero entry".into()));
            }
        }
        out.extend((0..dim).map(|s| ((w, s), bl.b[(r, s)])));
        out.extend((0..dim).map(|s| ((w + 1, s), bl.c[(r, s)])));
        Ok(out)
    }

    /// One step driven by the uniform variate `x ∈ [0, 1)`.
    pub fn step(&mut self, from: State, x: f64) -> Result<State> {
        let targets = self.transitions(from)?;
        let mut acc = 0.0;
        let mut last = None;
        for (state, p) in targets {
            if p <= 0.0 {
                continue;
            }
            acc += p;
            last = Some(state);
            if x < acc {
                return Ok(state);
            }
        }
        // Cumulative sums may fall short of 1 by rounding.
        last.ok_or_else(|| Error::DegenerateCoefficient(format!("no transition out of {from:?}")))
    }
}

/// Trajectory of `steps` transitions from `start`, including `start`.
pub fn walk(params: &Params, steps: usize, seed: u64, start: State) -> Result<Vec<State>> {
    if !params.in_set(start.0, start.1) {
        return Err(Error::OutsideSet { w: start.0, r: start.1 });
    }
    let mut chain = Chain::new(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(start);
    let mut cur = start;
    for _ in 0..steps {
        cur = chain.step(cur, rng.random::<f64>())?;
        out.push(cur);
    }
    Ok(out)
}
