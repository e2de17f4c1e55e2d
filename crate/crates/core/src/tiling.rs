//! Kadanoff blockings of periodic lattices by code tiles.
//!
//! A tiling places one copy of a tile shape at every point of a center
//! sublattice. When the centers form a scaled and rotated copy of the
//! original lattice, the block spins live on a lattice of the same kind and
//! the blocking can be repeated.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

pub type Site = [i64; 2];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error("extent {extent} is not a multiple of {modulus}")]
    ExtentNotDivisible { extent: usize, modulus: u64 },
    #[error("site {0:?} is covered more than once")]
    Overlap(Site),
    #[error("site {0:?} is not covered")]
    Gap(Site),
    #[error("tile centers do not form a similar sublattice: {0}")]
    NonSimilarSublattice(String),
    #[error("lattice dimension must be 1 or 2, got {0}")]
    Dimension(usize),
    #[error("concatenation depth must be at least 1")]
    ZeroLevels,
}

/// Periodic `L^d` lattice, `d ∈ {1, 2}`. One-dimensional sites use `y = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lattice {
    pub dim: usize,
    pub extent: usize,
}

impl Lattice {
    pub fn new(dim: usize, extent: usize) -> Result<Self, TilingError> {
        if dim != 1 && dim != 2 {
            return Err(TilingError::Dimension(dim));
        }
        Ok(Self { dim, extent })
    }

    pub fn square(extent: usize) -> Self {
        Self { dim: 2, extent }
    }

    pub fn num_sites(&self) -> usize {
        self.extent.pow(self.dim as u32)
    }

    pub fn wrap(&self, s: Site) -> Site {
        let l = self.extent as i64;
        if self.dim == 1 {
            [s[0].rem_euclid(l), 0]
        } else {
            [s[0].rem_euclid(l), s[1].rem_euclid(l)]
        }
    }

    /// Row-major index of a (wrapped) site.
    pub fn index(&self, s: Site) -> usize {
        let w = self.wrap(s);
        (w[1] as usize) * self.extent + w[0] as usize
    }

    pub fn site(&self, index: usize) -> Site {
        [(index % self.extent) as i64, (index / self.extent) as i64]
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (0..self.num_sites()).map(|i| self.site(i))
    }

    /// Minimum-image representative, each coordinate in `(-L/2, L/2]`.
    pub fn min_image(&self, s: Site) -> Site {
        let l = self.extent as i64;
        let w = self.wrap(s);
        let f = |c: i64| if 2 * c > l { c - l } else { c };
        [f(w[0]), if self.dim == 1 { 0 } else { f(w[1]) }]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Handedness {
    Right,
    Left,
}

impl Handedness {
    pub fn sign(self) -> i64 {
        match self {
            Handedness::Right => 1,
            Handedness::Left => -1,
        }
    }
}

/// The integer similarity `(x, y) ↦ (a x − b y, b x + a y)` mapping the
/// original lattice onto the center sublattice (`b = 0` in one dimension).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Similarity {
    pub a: i64,
    pub b: i64,
    pub dim: usize,
}

impl Similarity {
    pub fn rescale(&self) -> f64 {
        ((self.a * self.a + self.b * self.b) as f64).sqrt()
    }

    pub fn rotation(&self) -> f64 {
        (self.b as f64).atan2(self.a as f64)
    }

    /// Index of the center sublattice in the original lattice.
    pub fn index(&self) -> u64 {
        if self.dim == 1 {
            self.a.unsigned_abs()
        } else {
            (self.a * self.a + self.b * self.b) as u64
        }
    }

    pub fn apply(&self, v: Site) -> Site {
        if self.dim == 1 {
            [self.a * v[0], 0]
        } else {
            [self.a * v[0] - self.b * v[1], self.b * v[0] + self.a * v[1]]
        }
    }

    /// Integer preimage of `v`, if `v` lies on the image lattice.
    pub fn preimage(&self, v: Site) -> Option<Site> {
        if self.dim == 1 {
            return (v[0] % self.a == 0).then(|| [v[0] / self.a, 0]);
        }
        let n = self.a * self.a + self.b * self.b;
        let x = self.a * v[0] + self.b * v[1];
        let y = -self.b * v[0] + self.a * v[1];
        (x % n == 0 && y % n == 0).then(|| [x / n, y / n])
    }

    /// The two basis vectors `(a, b)` and `(−b, a)`.
    pub fn basis(&self) -> [Site; 2] {
        [[self.a, self.b], [-self.b, self.a]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tile {
    pub center: Site,
    /// Covered sites in tile-shape order; position `i` carries label `i + 1`.
    pub sites: Vec<Site>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tiling {
    pub lattice: Lattice,
    pub shape: Vec<Site>,
    pub tiles: Vec<Tile>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TilingReport {
    pub exact_cover: bool,
    pub rescale: f64,
    pub rotation: f64,
    pub similarity: Similarity,
}

/// Plus-pentomino offsets: center, N, E, S, W (labels 1..5).
pub const PLUS_SHAPE: [Site; 5] = [[0, 0], [0, 1], [1, 0], [0, -1], [-1, 0]];

impl Tiling {
    /// Places `shape` at every center. No validation.
    pub fn from_centers(lattice: Lattice, shape: Vec<Site>, centers: Vec<Site>) -> Self {
        let mut centers: Vec<Site> = centers.into_iter().map(|c| lattice.wrap(c)).collect();
        centers.sort_by_key(|c| (c[1], c[0]));
        let tiles = centers
            .into_iter()
            .map(|c| Tile {
                center: c,
                sites: shape.iter().map(|o| lattice.wrap([c[0] + o[0], c[1] + o[1]])).collect(),
            })
            .collect();
        Self { lattice, shape, tiles }
    }

    pub fn centers(&self) -> Vec<Site> {
        self.tiles.iter().map(|t| t.center).collect()
    }

    pub fn tile_size(&self) -> usize {
        self.shape.len()
    }

    /// Site index → `(tile index, position label 1..n)`.
    pub fn assignment(&self) -> Result<Vec<(usize, usize)>, TilingError> {
        let mut out: Vec<Option<(usize, usize)>> = vec![None; self.lattice.num_sites()];
        for (ti, tile) in self.tiles.iter().enumerate() {
            for (pi, &s) in tile.sites.iter().enumerate() {
                let idx = self.lattice.index(s);
                if out[idx].is_some() {
                    return Err(TilingError::Overlap(self.lattice.wrap(s)));
                }
                out[idx] = Some((ti, pi + 1));
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(i, a)| a.ok_or(TilingError::Gap(self.lattice.site(i))))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let report = validate_tiling(self).ok();
        let assignment = self.assignment().ok();
        serde_json::json!({
            "lattice": self.lattice,
            "shape": self.shape,
            "centers": self.centers(),
            "assignment": assignment,
            "rescale": report.map(|r| r.rescale),
            "rotation": report.map(|r| r.rotation),
        })
    }

    /// SVG drawing: tiles as filled cells with outlines, centers as rings,
    /// and the rescaled lattice as dashed segments between centers.
    pub fn to_svg(&self, metadata: &str) -> String {
        const CELL: i64 = 24;
        let l = self.lattice.extent as i64;
        let h = if self.lattice.dim == 1 { 1 } else { l };
        let palette = [
            "#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6", "#ffff99", "#8dd3c7",
        ];
        let mut svg = String::new();
        let (w_px, h_px) = (l * CELL, h * CELL);
        let _ = writeln!(
            svg,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w_px}\" height=\"{h_px}\" viewBox=\"0 0 {w_px} {h_px}\">"
        );
        let _ = writeln!(svg, "<metadata>{}</metadata>", xml_escape(metadata));
        // y grows upward in lattice coordinates
        let px = |s: Site| (s[0] * CELL, (h - 1 - s[1]) * CELL);
        let owner = self.assignment().ok();
        for (ti, tile) in self.tiles.iter().enumerate() {
            let color = palette[ti % palette.len()];
            let _ = writeln!(svg, "<g class=\"tile\" id=\"tile-{ti}\">");
            for &s in &tile.sites {
                let (x, y) = px(s);
                let _ = writeln!(
                    svg,
                    "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{color}\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>"
                );
            }
            let _ = writeln!(svg, "</g>");
        }
        if let Some(owner) = &owner {
            // tile outlines: cell edges whose neighbour belongs to another tile
            let _ = writeln!(svg, "<g class=\"outlines\" stroke=\"#2b7a2b\" stroke-width=\"2\">");
            for s in self.lattice.sites() {
                let t = owner[self.lattice.index(s)].0;
                let (x, y) = px(s);
                let right = self.lattice.index([s[0] + 1, s[1]]);
                if s[0] + 1 < l && owner[right].0 != t {
                    let _ = writeln!(
                        svg,
                        "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{}\"/>",
                        x + CELL,
                        x + CELL,
                        y + CELL
                    );
                }
                if self.lattice.dim == 2 && s[1] + 1 < l {
                    let up = self.lattice.index([s[0], s[1] + 1]);
                    if owner[up].0 != t {
                        let _ = writeln!(svg, "<line x1=\"{x}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\"/>", x + CELL);
                    }
                }
            }
            let _ = writeln!(svg, "</g>");
        }
        if let Ok(report) = validate_tiling(self) {
            let _ = writeln!(
                svg,
                "<g class=\"rescaled-lattice\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" stroke-dasharray=\"4 3\">"
            );
            for c in self.centers() {
                for v in report.similarity.basis() {
                    let d = [c[0] + v[0], c[1] + v[1]];
                    let inside = d[0] >= 0 && d[0] < l && d[1] >= 0 && d[1] < h;
                    if inside && (self.lattice.dim == 2 || v[1] == 0) {
                        let (x1, y1) = px(c);
                        let (x2, y2) = px(d);
                        let half = CELL / 2;
                        let _ = writeln!(
                            svg,
                            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                            x1 + half,
                            y1 + half,
                            x2 + half,
                            y2 + half
                        );
                    }
                }
            }
            let _ = writeln!(svg, "</g>");
        }
        let _ = writeln!(
            svg,
            "<g class=\"centers\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\">"
        );
        for c in self.centers() {
            let (x, y) = px(c);
            let _ = writeln!(
                svg,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                x + CELL / 2,
                y + CELL / 2,
                CELL / 4
            );
        }
        let _ = writeln!(svg, "</g>");
        svg.push_str("</svg>\n");
        svg
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn check_multiple(l: usize, m: u64) -> Result<(), TilingError> {
    if l == 0 || !(l as u64).is_multiple_of(m) {
        return Err(TilingError::ExtentNotDivisible { extent: l, modulus: m });
    }
    Ok(())
}

/// Plus-pentomino tiling of the `L × L` torus. Right-handed centers satisfy
/// `2x + y ≡ 0 (mod 5)`, left-handed ones `x + 2y ≡ 0 (mod 5)`.
pub fn plus_tiling(l: usize, hand: Handedness) -> Result<Tiling, TilingError> {
    check_multiple(l, 5)?;
    let lattice = Lattice::square(l);
    let centers = lattice
        .sites()
        .filter(|&[x, y]| match hand {
            Handedness::Right => (2 * x + y) % 5 == 0,
            Handedness::Left => (x + 2 * y) % 5 == 0,
        })
        .collect();
    Ok(Tiling::from_centers(lattice, PLUS_SHAPE.to_vec(), centers))
}

/// Horizontal 5×1 bricks with origins on `x ≡ 2y (mod 5)`; the brick origin
/// is its block-spin site. This gives the same center set as the
/// right-handed plus tiling.
pub fn brick_tiling(l: usize) -> Result<Tiling, TilingError> {
    brick_tiling_with(l, Handedness::Right)
}

/// Brick tiling with row offset 2 (right-handed) or 3 (left-handed, the
/// mirror image).
pub fn brick_tiling_with(l: usize, hand: Handedness) -> Result<Tiling, TilingError> {
    check_multiple(l, 5)?;
    let lattice = Lattice::square(l);
    let step = match hand {
        Handedness::Right => 2,
        Handedness::Left => 3,
    };
    let centers = lattice
        .sites()
        .filter(|&[x, y]| (x - step * y).rem_euclid(5) == 0)
        .collect();
    let shape = (0..5).map(|dx| [dx, 0]).collect();
    Ok(Tiling::from_centers(lattice, shape, centers))
}

/// Blocks of `k` consecutive sites on a ring of `L` sites.
pub fn chain_tiling(l: usize, k: usize) -> Result<Tiling, TilingError> {
    check_multiple(l, k as u64)?;
    let lattice = Lattice::new(1, l)?;
    let centers = (0..l as i64).step_by(k).map(|x| [x, 0]).collect();
    let shape = (0..k as i64).map(|dx| [dx, 0]).collect();
    Ok(Tiling::from_centers(lattice, shape, centers))
}

/// Checks the exact cover and fits a similar sublattice to the centers.
pub fn validate_tiling(t: &Tiling) -> Result<TilingReport, TilingError> {
    t.assignment()?;
    let similarity = fit_similarity(&t.lattice, &t.centers())?;
    Ok(TilingReport {
        exact_cover: true,
        rescale: similarity.rescale(),
        rotation: similarity.rotation(),
        similarity,
    })
}

fn fit_similarity(lattice: &Lattice, centers: &[Site]) -> Result<Similarity, TilingError> {
    let non_similar = |why: &str| TilingError::NonSimilarSublattice(why.to_string());
    let Some(&c0) = centers.first() else {
        return Err(non_similar("no centers"));
    };
    let set: HashSet<Site> = centers.iter().map(|&c| lattice.wrap(c)).collect();
    let diffs: HashSet<Site> = set.iter().map(|c| lattice.wrap([c[0] - c0[0], c[1] - c0[1]])).collect();
    let shortest = if set.len() == 1 {
        // a single center: the whole torus is one block
        [lattice.extent as i64, 0]
    } else {
        diffs
            .iter()
            .filter(|d| **d != [0, 0])
            .map(|&d| lattice.min_image(d))
            .min_by_key(|v| (v[0] * v[0] + v[1] * v[1], *v))
            .expect("at least two centers")
    };
    let similarity = if lattice.dim == 1 {
        Similarity {
            a: shortest[0].abs(),
            b: 0,
            dim: 1,
        }
    } else {
        let rotations = [
            shortest,
            [-shortest[1], shortest[0]],
            [-shortest[0], -shortest[1]],
            [shortest[1], -shortest[0]],
        ];
        if set.len() > 1 && !diffs.contains(&lattice.wrap(rotations[1])) {
            return Err(non_similar(
                "shortest center vector rotated by 90° is not a center vector",
            ));
        }
        let [a, b] = rotations
            .into_iter()
            .find(|&[a, b]| a > 0 && -a < b && b <= a)
            .expect("one rotation lies in the sector (-45°, 45°]");
        Similarity { a, b, dim: 2 }
    };
    // the generated sublattice must be exactly the center set
    let basis = similarity.basis();
    let steps: &[Site] = if lattice.dim == 1 { &basis[..1] } else { &basis };
    let mut generated: HashSet<Site> = HashSet::from([lattice.wrap(c0)]);
    let mut frontier = vec![lattice.wrap(c0)];
    while let Some(p) = frontier.pop() {
        for v in steps {
            for sgn in [1, -1] {
                let q = lattice.wrap([p[0] + sgn * v[0], p[1] + sgn * v[1]]);
                if generated.insert(q) {
                    frontier.push(q);
                }
            }
        }
    }
    if generated != set {
        return Err(non_similar(
            "centers are not the sublattice generated by the fitted basis",
        ));
    }
    Ok(similarity)
}

/// Multi-level address of every site under repeated blocking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchicalAssignment {
    pub levels: usize,
    /// `tile_counts[j]` = number of tiles at level `j + 1`.
    pub tile_counts: Vec<usize>,
    /// `addresses[site][j]` = `(tile index at level j+1, position label)`.
    pub addresses: Vec<Vec<(usize, usize)>>,
}

/// Applies the tiling rule `r` times, each time on the previous level's
/// center lattice.
pub fn concatenate_tiling(t: &Tiling, r: usize) -> Result<HierarchicalAssignment, TilingError> {
    if r == 0 {
        return Err(TilingError::ZeroLevels);
    }
    let report = validate_tiling(t)?;
    let sim = report.similarity;
    let index = sim.index();
    let modulus = index.checked_pow(r as u32).ok_or(TilingError::ExtentNotDivisible {
        extent: t.lattice.extent,
        modulus: u64::MAX,
    })?;
    check_multiple(t.lattice.extent, modulus)?;
    let lattice = t.lattice;
    let c0 = t.tiles[0].center;
    let mut raw: Vec<Vec<(Site, usize)>> = Vec::with_capacity(lattice.num_sites());
    for s in lattice.sites() {
        let mut q = [s[0] - c0[0], s[1] - c0[1]];
        // physical displacement M^j applied to level-j offsets
        let mut scale = Similarity {
            a: 1,
            b: 0,
            dim: sim.dim,
        };
        let mut physical = s;
        let mut path = Vec::with_capacity(r);
        for _ in 0..r {
            let (pos, coarse) = t
                .shape
                .iter()
                .enumerate()
                .find_map(|(i, o)| sim.preimage([q[0] - o[0], q[1] - o[1]]).map(|c| (i, c)))
                .ok_or_else(|| TilingError::NonSimilarSublattice("tile shape does not cover a coset".into()))?;
            let d = scale.apply(t.shape[pos]);
            physical = lattice.wrap([physical[0] - d[0], physical[1] - d[1]]);
            path.push((physical, pos + 1));
            q = coarse;
            scale = compose(&scale, &sim);
        }
        raw.push(path);
    }
    let mut tile_counts = Vec::with_capacity(r);
    let mut lookups: Vec<BTreeMap<(i64, i64), usize>> = Vec::with_capacity(r);
    for j in 0..r {
        let centers: BTreeSet<(i64, i64)> = raw.iter().map(|p| (p[j].0[1], p[j].0[0])).collect();
        tile_counts.push(centers.len());
        lookups.push(centers.into_iter().enumerate().map(|(i, c)| (c, i)).collect());
    }
    let addresses = raw
        .into_iter()
        .map(|path| {
            path.into_iter()
                .enumerate()
                .map(|(j, (c, pos))| (lookups[j][&(c[1], c[0])], pos))
                .collect()
        })
        .collect();
    Ok(HierarchicalAssignment {
        levels: r,
        tile_counts,
        addresses,
    })
}

fn compose(a: &Similarity, b: &Similarity) -> Similarity {
    // (a1 + i b1)(a2 + i b2)
    Similarity {
        a: a.a * b.a - a.b * b.b,
        b: a.a * b.b + a.b * b.a,
        dim: a.dim,
    }
}
