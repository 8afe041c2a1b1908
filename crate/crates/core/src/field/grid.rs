use std::collections::VecDeque;

use num_complex::Complex64;
use serde::Serialize;

use crate::conformal_plane::PlanarDomain;
use crate::error::{Error, Result};

/// Smallest admissible number of nodes per axis.
pub const MIN_NODES: usize = 33;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    /// Inside the domain with all four stencil neighbours inside.
    Interior,
    /// Inside the domain with at least one neighbour outside.
    Boundary,
    Exterior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    East,
    West,
    North,
    South,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::East,
        Direction::West,
        Direction::North,
        Direction::South,
    ];

    pub fn offset(self) -> (isize, isize) {
        match self {
            Direction::East => (1, 0),
            Direction::West => (-1, 0),
            Direction::North => (0, 1),
            Direction::South => (0, -1),
        }
    }

    pub fn unit(self) -> Complex64 {
        let (di, dj) = self.offset();
        Complex64::new(di as f64, dj as f64)
    }
}

/// Crossing of a grid line with the boundary curve, seen from a boundary node.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arm {
    pub direction: Direction,
    /// Distance to the crossing as a fraction of `h`, in `(0, 1]`.
    pub fraction: f64,
    /// Curve parameter of the crossing.
    pub param: f64,
    pub point: Complex64,
}

/// Masked square grid covering a planar Jordan domain.
///
/// Nodes are indexed `idx = j * n + i` with `i` along `x`. The grid is
/// centred on the bounding box of the boundary curve and padded so that
/// the outermost ring of nodes is always exterior.
#[derive(Clone, Debug)]
pub struct DiskGrid {
    n: usize,
    h: f64,
    center: Complex64,
    domain: PlanarDomain,
    kinds: Vec<NodeKind>,
    interior: Vec<usize>,
    active: Vec<usize>,
    boundary: Vec<usize>,
    boundary_param: Vec<f64>,
    arms: Vec<Vec<Arm>>,
    slot: Vec<u32>,
}

const NO_SLOT: u32 = u32::MAX;

impl PartialEq for DiskGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.h == other.h
            && self.center == other.center
            && self.domain == other.domain
    }
}

impl DiskGrid {
    /// Grid over the closed unit disk.
    pub fn unit_disk(n: usize) -> Result<Self> {
        Self::new(PlanarDomain::unit_disk(), n)
    }

    pub fn new(domain: PlanarDomain, n: usize) -> Result<Self> {
        if n < MIN_NODES {
            return Err(Error::Resolution(format!(
                "grid needs n >= {MIN_NODES}, got {n}"
            )));
        }
        let (lo, hi) = domain.boundary.bounding_box();
        let width = (hi.re - lo.re).max(hi.im - lo.im);
        let h = width / (n - 3) as f64;
        let center = (lo + hi) * 0.5;

        let mut grid = DiskGrid {
            n,
            h,
            center,
            domain,
            kinds: vec![NodeKind::Exterior; n * n],
            interior: Vec::new(),
            active: Vec::new(),
            boundary: Vec::new(),
            boundary_param: Vec::new(),
            arms: Vec::new(),
            slot: vec![NO_SLOT; n * n],
        };

        let inside: Vec<bool> = (0..n * n)
            .map(|idx| grid.domain.contains(grid.coord(idx)))
            .collect();
        for j in 0..n {
            for i in 0..n {
                let idx = j * n + i;
                if !inside[idx] {
                    continue;
                }
                if i == 0 || j == 0 || i == n - 1 || j == n - 1 {
                    return Err(Error::Resolution("domain touches the grid frame".into()));
                }
                let all_in = Direction::ALL.iter().all(|d| {
                    let (di, dj) = d.offset();
                    inside[(j as isize + dj) as usize * n + (i as isize + di) as usize]
                });
                grid.kinds[idx] = if all_in {
                    NodeKind::Interior
                } else {
                    NodeKind::Boundary
                };
            }
        }

        for idx in 0..n * n {
            match grid.kinds[idx] {
                NodeKind::Interior => {
                    grid.interior.push(idx);
                    grid.active.push(idx);
                }
                NodeKind::Boundary => {
                    grid.active.push(idx);
                    grid.slot[idx] = grid.boundary.len() as u32;
                    grid.boundary.push(idx);
                    let p = grid.coord(idx);
                    grid.boundary_param.push(grid.domain.boundary.nearest(p).0);
                    let arms = Direction::ALL
                        .iter()
                        .filter(|d| grid.kinds_neighbor_outside(&inside, idx, **d))
                        .map(|d| grid.crossing(p, *d))
                        .collect();
                    grid.arms.push(arms);
                }
                NodeKind::Exterior => {}
            }
        }

        if grid.interior.is_empty() {
            return Err(Error::EmptyInterior);
        }
        if !grid.interior_connected() {
            return Err(Error::Resolution(
                "interior nodes are not 4-connected".into(),
            ));
        }
        Ok(grid)
    }

    fn kinds_neighbor_outside(&self, inside: &[bool], idx: usize, d: Direction) -> bool {
        let nb = self.neighbor(idx, d).expect("non-frame node");
        !inside[nb]
    }

    fn crossing(&self, p: Complex64, d: Direction) -> Arm {
        let step = d.unit() * self.h;
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.domain.contains(p + step * mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let fraction = (0.5 * (lo + hi)).max(1e-8);
        let point = p + step * fraction;
        Arm {
            direction: d,
            fraction,
            param: self.domain.boundary.param_on_curve(point),
            point,
        }
    }

    fn interior_connected(&self) -> bool {
        let mut seen = vec![false; self.n * self.n];
        let mut queue = VecDeque::from([self.interior[0]]);
        seen[self.interior[0]] = true;
        let mut count = 0;
        while let Some(idx) = queue.pop_front() {
            count += 1;
            for d in Direction::ALL {
                if let Some(nb) = self.neighbor(idx, d) {
                    if !seen[nb] && self.kinds[nb] == NodeKind::Interior {
                        seen[nb] = true;
                        queue.push_back(nb);
                    }
                }
            }
        }
        count == self.interior.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn domain(&self) -> &PlanarDomain {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.interior.is_empty()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.n + i
    }

    pub fn ij(&self, idx: usize) -> (usize, usize) {
        (idx % self.n, idx / self.n)
    }

    pub fn coord(&self, idx: usize) -> Complex64 {
        let (i, j) = self.ij(idx);
        let c = (self.n - 1) as f64 / 2.0;
        self.center + Complex64::new((i as f64 - c) * self.h, (j as f64 - c) * self.h)
    }

    pub fn kind(&self, idx: usize) -> NodeKind {
        self.kinds[idx]
    }

    pub fn is_active(&self, idx: usize) -> bool {
        self.kinds[idx] != NodeKind::Exterior
    }

    pub fn neighbor(&self, idx: usize, d: Direction) -> Option<usize> {
        let (i, j) = self.ij(idx);
        let (di, dj) = d.offset();
        let (ni, nj) = (i as isize + di, j as isize + dj);
        if ni < 0 || nj < 0 || ni >= self.n as isize || nj >= self.n as isize {
            None
        } else {
            Some(nj as usize * self.n + ni as usize)
        }
    }

    /// Interior nodes in index order.
    pub fn interior_nodes(&self) -> &[usize] {
        &self.interior
    }

    /// Interior and boundary nodes in index order.
    pub fn active_nodes(&self) -> &[usize] {
        &self.active
    }

    pub fn boundary_nodes(&self) -> &[usize] {
        &self.boundary
    }

    /// Boundary crossings of a boundary node; empty for other nodes.
    pub fn arms(&self, idx: usize) -> &[Arm] {
        match self.slot[idx] {
            NO_SLOT => &[],
            s => &self.arms[s as usize],
        }
    }

    /// Curve parameter of the boundary point nearest to a boundary node.
    pub fn boundary_param(&self, idx: usize) -> Option<f64> {
        match self.slot[idx] {
            NO_SLOT => None,
            s => Some(self.boundary_param[s as usize]),
        }
    }

    pub fn distance_to_boundary(&self, idx: usize) -> f64 {
        self.domain.boundary.nearest(self.coord(idx)).1
    }

    /// All boundary crossings, in node order.
    pub fn crossings(&self) -> impl Iterator<Item = &Arm> {
        self.arms.iter().flatten()
    }
}
