//! Loop-erased random walk from the half-plane excursion.
//!
//! The excursion is the simple random walk conditioned to stay in the upper
//! half plane: at height k >= 1 it moves up with probability (k+1)/4k, down
//! with probability (k-1)/4k and left or right with probability 1/4 each.
//! Loops are erased chronologically as they form; generation stops once the
//! erased walk reaches the requested number of steps.

use rand::Rng;

use crate::error::{Error, Result};
use crate::hashutil::{pack, FastMap};

use super::LatticeWalk;

/// Raw excursion steps before giving up; the excursion is transient so this
/// never triggers in practice.
const STEP_CAP: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    #[inline]
    pub fn delta(self) -> (i32, i32) {
        match self {
            Direction::Up => (0, 1),
            Direction::Down => (0, -1),
            Direction::Left => (-1, 0),
            Direction::Right => (1, 0),
        }
    }
}

/// (P(up), P(down)) at height k; left and right each take 1/4.
pub fn excursion_probs(k: i32) -> (f64, f64) {
    assert!(k >= 1, "excursion is only defined above the axis");
    let kf = k as f64;
    ((kf + 1.0) / (4.0 * kf), (kf - 1.0) / (4.0 * kf))
}

/// One excursion transition at height k >= 1.
#[inline]
pub fn excursion_step<R: Rng>(k: i32, rng: &mut R) -> Direction {
    let (pu, pd) = excursion_probs(k);
    let u: f64 = rng.gen();
    if u < pu {
        Direction::Up
    } else if u < pu + pd {
        Direction::Down
    } else if u < pu + pd + 0.25 {
        Direction::Left
    } else {
        Direction::Right
    }
}

/// Generate the loop erasure of a half-plane excursion with `n_target` steps.
///
/// The first move is the forced entry step to (0, 1); the transition rule is
/// undefined on the axis itself. Erasure is maintained online: stepping onto
/// a retained site truncates the walk back to that site.
pub fn generate_lerw<R: Rng>(n_target: usize, rng: &mut R) -> Result<LatticeWalk> {
    if n_target < 1 {
        return Err(Error::InvalidParameter {
            reason: "lerw length must be >= 1".into(),
        });
    }
    let mut path: Vec<(i32, i32)> = Vec::with_capacity(n_target + 1);
    let mut index: FastMap<u32> = FastMap::default();
    path.push((0, 0));
    index.insert(pack(0, 0), 0);
    path.push((0, 1));
    index.insert(pack(0, 1), 1);

    let mut raw_steps: u64 = 1;
    while path.len() <= n_target {
        let (x, y) = *path.last().unwrap();
        let (dx, dy) = excursion_step(y, rng).delta();
        let next = (x + dx, y + dy);
        raw_steps += 1;
        if raw_steps > STEP_CAP {
            return Err(Error::StepCapExceeded { cap: STEP_CAP });
        }
        let key = pack(next.0, next.1);
        if let Some(&i) = index.get(&key) {
            // chronological loop erasure: cut back to the first visit, which
            // keeps its own index entry
            for site in path.drain(i as usize + 1..) {
                index.remove(&pack(site.0, site.1));
            }
        } else {
            index.insert(key, path.len() as u32);
            path.push(next);
        }
    }
    Ok(LatticeWalk::Square(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn transition_probabilities() {
        let (pu, pd) = excursion_probs(1);
        assert_eq!(pu, 0.5);
        assert_eq!(pd, 0.0);
        let (pu, pd) = excursion_probs(3);
        assert!((pu - 1.0 / 3.0).abs() < 1e-16);
        assert!((pd - 1.0 / 6.0).abs() < 1e-16);
        for k in 1..50 {
            let (pu, pd) = excursion_probs(k);
            assert!((pu + pd + 0.5 - 1.0).abs() < 1e-15, "probabilities must sum to 1");
        }
    }

    #[test]
    fn never_returns_to_axis() {
        let mut rng = crate::rng::stream(40, 0);
        let walk = generate_lerw(500, &mut rng).unwrap();
        let LatticeWalk::Square(sites) = &walk else { panic!() };
        assert_eq!(sites[0], (0, 0));
        assert_eq!(sites[1], (0, 1));
        assert!(sites[1..].iter().all(|&(_, y)| y >= 1));
    }

    /// Scripted rng: returns preset uniforms, to drive chosen directions.
    struct Scripted {
        vals: Vec<f64>,
        i: usize,
    }

    impl RngCore for Scripted {
        fn next_u32(&mut self) -> u32 {
            self.next_u64() as u32
        }
        fn next_u64(&mut self) -> u64 {
            // rand's Standard f64 uses the top 53 bits: u = (v >> 11) * 2^-53.
            let u = self.vals[self.i];
            self.i += 1;
            ((u * (1u64 << 53) as f64) as u64) << 11
        }
        fn fill_bytes(&mut self, dest: &mut [u8]) {
            for b in dest.iter_mut() {
                *b = 0;
            }
        }
        fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
            self.fill_bytes(dest);
            Ok(())
        }
    }

    /// A uniform draw that selects the given direction at height k.
    fn driving_value(k: i32, d: Direction) -> f64 {
        let (pu, pd) = excursion_probs(k);
        match d {
            Direction::Up => 0.5 * pu,
            Direction::Down => pu + 0.5 * pd,
            Direction::Left => pu + pd + 0.125,
            Direction::Right => pu + pd + 0.375,
        }
    }

    #[test]
    fn loop_erasure_truncates_to_first_visit() {
        // After the forced step to (0,1): right to (1,1), up to (1,2), left
        // to (0,2), down to (0,1) -- a loop, so the path cuts back to
        // [(0,0),(0,1)] -- then up to (0,2) twice to reach three steps.
        use Direction::*;
        let script = [
            driving_value(1, Right),
            driving_value(1, Up),
            driving_value(2, Left),
            driving_value(2, Down),
            driving_value(1, Up),
            driving_value(2, Up),
        ];
        let mut rng = Scripted {
            vals: script.to_vec(),
            i: 0,
        };
        let walk = generate_lerw(3, &mut rng).unwrap();
        let LatticeWalk::Square(sites) = &walk else { panic!() };
        assert_eq!(sites, &vec![(0, 0), (0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn deterministic_given_stream() {
        let a = generate_lerw(300, &mut crate::rng::stream(9, 4)).unwrap();
        let b = generate_lerw(300, &mut crate::rng::stream(9, 4)).unwrap();
        assert_eq!(a, b);
        let c = generate_lerw(300, &mut crate::rng::stream(9, 5)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn output_is_simple() {
        for idx in 0..20 {
            let walk = generate_lerw(400, &mut crate::rng::stream(41, idx)).unwrap();
            assert!(walk.is_simple());
            assert_eq!(walk.steps(), 400);
        }
    }
}
