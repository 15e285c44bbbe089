//! Self-avoiding walks in the half plane via the pivot algorithm.
//!
//! States are N-step nearest-neighbor walks from the origin with every site
//! in the closed half plane y >= 0 and no repeated site, under the uniform
//! measure. A move picks a pivot site and one of the seven non-identity
//! square-lattice symmetries, applies it to the tail, and accepts iff the
//! result is again self-avoiding and stays in the half plane.

use rand::Rng;

use crate::error::{Error, Result};
use crate::hashutil::{pack, FastMap};

use super::LatticeWalk;

/// The seven non-identity symmetries of the square lattice, acting on
/// coordinates relative to the pivot site.
#[inline]
fn apply_symmetry(sym: u8, dx: i32, dy: i32) -> (i32, i32) {
    match sym {
        0 => (-dy, dx),   // rotate 90
        1 => (-dx, -dy),  // rotate 180
        2 => (dy, -dx),   // rotate 270
        3 => (dx, -dy),   // reflect across x axis
        4 => (-dx, dy),   // reflect across y axis
        5 => (dy, dx),    // reflect across the diagonal
        _ => (-dy, -dx),  // reflect across the anti-diagonal
    }
}

/// Markov chain over fixed-length half-plane self-avoiding walks.
pub struct PivotChain {
    sites: Vec<(i32, i32)>,
    /// site -> its index in `sites`
    index: FastMap<u32>,
    accepted: u64,
    attempted: u64,
}

impl PivotChain {
    /// Start from the straight vertical walk, which satisfies all constraints.
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter {
                reason: "saw length must be >= 1".into(),
            });
        }
        let sites: Vec<(i32, i32)> = (0..=n as i32).map(|k| (0, k)).collect();
        let mut index = FastMap::default();
        for (i, &(x, y)) in sites.iter().enumerate() {
            index.insert(pack(x, y), i as u32);
        }
        Ok(PivotChain {
            sites,
            index,
            accepted: 0,
            attempted: 0,
        })
    }

    pub fn walk(&self) -> LatticeWalk {
        LatticeWalk::Square(self.sites.clone())
    }

    pub fn sites(&self) -> &[(i32, i32)] {
        &self.sites
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.attempted == 0 {
            return 0.0;
        }
        self.accepted as f64 / self.attempted as f64
    }

    /// One pivot attempt; returns whether it was accepted.
    pub fn step<R: Rng>(&mut self, rng: &mut R) -> bool {
        let n = self.sites.len() - 1; // number of steps
        let pivot = rng.gen_range(0..n); // tail is never empty
        let sym = rng.gen_range(0..7u8);
        self.attempted += 1;
        if self.try_pivot(pivot, sym) {
            self.accepted += 1;
            true
        } else {
            false
        }
    }

    pub fn advance<R: Rng>(&mut self, iterations: u64, rng: &mut R) {
        for _ in 0..iterations {
            self.step(rng);
        }
    }

    /// Apply symmetry `sym` about site `pivot` to the tail; accept iff the
    /// transformed tail stays in the half plane and avoids the head. Tail
    /// sites are checked walking outward from the pivot so clashes abort
    /// early.
    fn try_pivot(&mut self, pivot: usize, sym: u8) -> bool {
        let (px, py) = self.sites[pivot];
        for k in pivot + 1..self.sites.len() {
            let (x, y) = self.sites[k];
            let (dx, dy) = apply_symmetry(sym, x - px, y - py);
            let ny = py + dy;
            if ny < 0 {
                return false;
            }
            if let Some(&i) = self.index.get(&pack(px + dx, ny)) {
                // a clash with the moving tail is not a clash: those sites
                // are about to move away
                if (i as usize) <= pivot {
                    return false;
                }
            }
        }
        // accepted: rebuild the tail (remove old entries first so moved
        // sites do not collide with themselves)
        for k in pivot + 1..self.sites.len() {
            let (x, y) = self.sites[k];
            self.index.remove(&pack(x, y));
        }
        for k in pivot + 1..self.sites.len() {
            let (x, y) = self.sites[k];
            let (dx, dy) = apply_symmetry(sym, x - px, y - py);
            let site = (px + dx, py + dy);
            self.sites[k] = site;
            self.index.insert(pack(site.0, site.1), k as u32);
        }
        true
    }

    /// Walk validity (used by tests): self-avoiding, in y >= 0, from origin.
    pub fn is_valid(&self) -> bool {
        if self.sites[0] != (0, 0) {
            return false;
        }
        let mut seen = crate::hashutil::FastSet::default();
        for (i, &(x, y)) in self.sites.iter().enumerate() {
            if y < 0 || !seen.insert(pack(x, y)) {
                return false;
            }
            if i > 0 {
                let (px, py) = self.sites[i - 1];
                if (x - px).abs() + (y - py).abs() != 1 {
                    return false;
                }
            }
        }
        true
    }
}

/// Emit `count` samples from one pivot chain, `stride` iterations apart,
/// after a burn-in. The walks are not exactly independent; a stride of order
/// N or more makes them close to it.
pub fn generate_saw<R: Rng>(
    n: usize,
    stride: u64,
    count: usize,
    burn_in: u64,
    rng: &mut R,
) -> Result<Vec<LatticeWalk>> {
    let mut chain = PivotChain::new(n)?;
    chain.advance(burn_in, rng);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        chain.advance(stride, rng);
        out.push(chain.walk());
    }
    Ok(out)
}

/// Default burn-in: ten sweeps of pivot attempts.
pub fn default_burn_in(n: usize) -> u64 {
    10 * n as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_state_is_valid() {
        let chain = PivotChain::new(10).unwrap();
        assert!(chain.is_valid());
        assert_eq!(chain.sites().len(), 11);
    }

    #[test]
    fn symmetries_are_bijective_isometries() {
        for sym in 0..7u8 {
            let (dx, dy) = apply_symmetry(sym, 3, 4);
            assert_eq!(dx * dx + dy * dy, 25, "symmetry must preserve length");
            assert_ne!((dx, dy), (3, 4), "identity is excluded");
        }
    }

    #[test]
    fn tail_below_axis_is_rejected() {
        // Straight vertical walk, pivot at the origin, rotation by 180
        // sends the whole tail to y < 0.
        let mut chain = PivotChain::new(5).unwrap();
        let before = chain.sites().to_vec();
        assert!(!chain.try_pivot(0, 1));
        assert_eq!(chain.sites(), &before[..], "rejected move must not change the walk");
        assert!(chain.is_valid());
    }

    #[test]
    fn chain_stays_valid() {
        let mut rng = crate::rng::stream(50, 0);
        let mut chain = PivotChain::new(60).unwrap();
        for _ in 0..5000 {
            chain.step(&mut rng);
        }
        assert!(chain.is_valid());
        assert!(chain.acceptance_rate() > 0.05);
    }

    #[test]
    fn strided_samples_are_deterministic() {
        let a = generate_saw(30, 50, 4, 100, &mut crate::rng::stream(51, 0)).unwrap();
        let b = generate_saw(30, 50, 4, 100, &mut crate::rng::stream(51, 0)).unwrap();
        assert_eq!(a, b);
        for w in &a {
            assert_eq!(w.steps(), 30);
            assert!(w.is_simple());
            let LatticeWalk::Square(sites) = w else { panic!() };
            assert!(sites.iter().all(|&(_, y)| y >= 0));
        }
    }
}
