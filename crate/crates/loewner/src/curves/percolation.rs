//! Critical percolation exploration interface.
//!
//! Site percolation on the triangular lattice is described through its dual
//! hexagonal tiling: each hexagon is white or black with probability 1/2,
//! except for the boundary row, which is white along the negative real axis
//! and black along the positive real axis. The interface starts with the
//! vertical bond through the origin and walks hexagon edges keeping white on
//! its left and black on its right.
//!
//! Geometry: pointy-top unit-edge hexagons. A hexagon with axial coordinate
//! (q, r) has its center at integer units (2q + r + 1, 3r + 1), a vertex at
//! units (a, b) sits at the plane point (a sqrt(3)/2, b/2). Row r = 0 is the
//! boundary row; interior hexagons (r >= 1) are colored lazily by fair coin,
//! memoized by coordinate, so the same stream always explores the same
//! configuration.

use rand::Rng;

use crate::error::{Error, Result};
use crate::hashutil::{pack, FastMap};

use super::LatticeWalk;

type Axial = (i32, i32);

#[inline]
fn center_units((q, r): Axial) -> (i32, i32) {
    (2 * q + r + 1, 3 * r + 1)
}

/// The three hexagons meeting at a vertex given in integer units.
fn hexes_at_vertex(a: i32, b: i32) -> [Axial; 3] {
    let candidates = [
        (a - 1, b - 1),
        (a - 1, b + 1),
        (a + 1, b - 1),
        (a + 1, b + 1),
        (a, b - 2),
        (a, b + 2),
    ];
    let mut out = [(0, 0); 3];
    let mut k = 0;
    for (ac, bc) in candidates {
        if (bc - 1).rem_euclid(3) != 0 {
            continue;
        }
        let r = (bc - 1) / 3;
        if (ac - r - 1).rem_euclid(2) != 0 {
            continue;
        }
        let q = (ac - r - 1) / 2;
        debug_assert!(k < 3, "vertex ({a},{b}) has more than three hexagons");
        out[k] = (q, r);
        k += 1;
    }
    debug_assert_eq!(k, 3, "vertex ({a},{b}) is not a lattice vertex");
    out
}

/// Endpoints (in units) of the edge shared by two adjacent hexagons.
fn shared_edge(h1: Axial, h2: Axial) -> ((i32, i32), (i32, i32)) {
    let c1 = center_units(h1);
    let c2 = center_units(h2);
    let d = (c2.0 - c1.0, c2.1 - c1.1);
    let e = match d {
        (2, 0) | (-2, 0) => (0, 2),
        (1, 3) | (-1, -3) => (-1, 1),
        (1, -3) | (-1, 3) => (1, 1),
        _ => unreachable!("hexagons {h1:?} and {h2:?} are not adjacent"),
    };
    let s = (c1.0 + c2.0, c1.1 + c2.1);
    (
        ((s.0 + e.0) / 2, (s.1 + e.1) / 2),
        ((s.0 - e.0) / 2, (s.1 - e.1) / 2),
    )
}

/// Walk the interface for `n_steps` edges with an arbitrary coloring of the
/// interior hexagons (row r >= 1). Boundary colors are fixed by the axis
/// sign. Returns the n_steps + 1 visited vertices.
fn explore(n_steps: usize, mut interior_is_black: impl FnMut(Axial) -> bool) -> Vec<(i32, i32)> {
    let mut is_black = move |hex: Axial| -> bool {
        let (q, r) = hex;
        if r <= 0 {
            // boundary rule by the sign of the center abscissa
            2 * q + r + 1 > 0
        } else {
            interior_is_black(hex)
        }
    };

    // First bond: through the origin, between the white hexagon (-1, 0) and
    // the black hexagon (0, 0).
    let mut left: Axial = (-1, 0);
    let mut right: Axial = (0, 0);
    let mut v = (0, 2);
    let mut path = Vec::with_capacity(n_steps + 1);
    path.push((0, 0));
    path.push(v);

    for _ in 1..n_steps {
        let hexes = hexes_at_vertex(v.0, v.1);
        let facing = *hexes
            .iter()
            .find(|&&h| h != left && h != right)
            .expect("vertex must border a third hexagon");
        if is_black(facing) {
            right = facing; // turn toward the white side
        } else {
            left = facing; // turn toward the black side
        }
        let (e1, e2) = shared_edge(left, right);
        v = if e1 == v { e2 } else { e1 };
        path.push(v);
    }
    path
}

/// Generate the first `n_steps` interface edge-endpoints, coloring interior
/// hexagons by fair coin as the interface first touches them.
pub fn generate_percolation_interface<R: Rng>(
    n_steps: usize,
    rng: &mut R,
) -> Result<LatticeWalk> {
    if n_steps < 1 {
        return Err(Error::InvalidParameter {
            reason: "interface length must be >= 1".into(),
        });
    }
    let mut colors: FastMap<bool> = FastMap::default();
    let path = explore(n_steps, |hex| {
        *colors
            .entry(pack(hex.0, hex.1))
            .or_insert_with(|| rng.gen::<f64>() < 0.5)
    });
    Ok(LatticeWalk::HexVertices(path))
}
