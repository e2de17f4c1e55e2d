//! Toric-code rescaling: coarse generators built from 3×3 vertex blocks and
//! plus-shaped face clusters, generating-set surgery, block entropies and
//! cardinality scans.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::bits::{self, Bits};
use crate::codes::ToricLayout;
use crate::group::{GroupError, StabilizerGroup};
use crate::pauli::Pauli;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ToricError {
    #[error("rescaled generators need L >= {min}, got {l}")]
    TooSmall { l: usize, min: usize },
    #[error("vertex or face ({0}, {1}) is outside the torus")]
    OutOfRange(usize, usize),
    #[error("generator {0} is not in the generating set")]
    UnknownGenerator(String),
    #[error("swap changes the group: {0} does not replace {1}")]
    GroupChanged(String, String),
    #[error("edge {0} is outside the torus")]
    EdgeOutOfRange(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Smallest torus on which the rescaled generators do not wrap onto
/// themselves.
pub const MIN_RESCALE_L: usize = 5;

/// Pure toric-code stabilizer state on an `L × L` torus: the code stabilizer
/// plus the two `Z̄` loops, rank `2L²`.
#[derive(Debug, Clone)]
pub struct ToricState {
    layout: ToricLayout,
    group: StabilizerGroup,
}

impl ToricState {
    pub fn new(l: usize) -> Result<Self, ToricError> {
        if l < 2 {
            return Err(ToricError::TooSmall { l, min: 2 });
        }
        let layout = ToricLayout::new(l);
        let mut gens = layout.all_sites();
        gens.pop();
        let mut plaquettes = layout.all_plaquettes();
        plaquettes.pop();
        gens.extend(plaquettes);
        gens.extend(layout.logicals().1);
        let group = StabilizerGroup::new(layout.num_qubits(), gens)?;
        debug_assert_eq!(group.rank(), layout.num_qubits());
        Ok(Self { layout, group })
    }

    pub fn l(&self) -> usize {
        self.layout.l
    }

    pub fn layout(&self) -> &ToricLayout {
        &self.layout
    }

    pub fn group(&self) -> &StabilizerGroup {
        &self.group
    }

    pub fn num_edges(&self) -> usize {
        self.layout.num_qubits()
    }

    fn check_rescale(&self, x: usize, y: usize) -> Result<(), ToricError> {
        let l = self.l();
        if l < MIN_RESCALE_L {
            return Err(ToricError::TooSmall { l, min: MIN_RESCALE_L });
        }
        if x >= l || y >= l {
            return Err(ToricError::OutOfRange(x, y));
        }
        Ok(())
    }

    /// Vertices of the 3×3 block anchored at `(x, y)`.
    pub fn site_block(&self, x: usize, y: usize) -> Vec<(usize, usize)> {
        let l = self.l();
        (0..3)
            .flat_map(|j| (0..3).map(move |i| ((x + i) % l, (y + j) % l)))
            .collect()
    }

    /// Faces of the plus cluster centred at `(x, y)`, centre first.
    pub fn plaquette_cluster(&self, x: usize, y: usize) -> Vec<(usize, usize)> {
        let l = self.l();
        vec![
            (x, y),
            (x, (y + 1) % l),
            ((x + 1) % l, y),
            (x, (y + l - 1) % l),
            ((x + l - 1) % l, y),
        ]
    }

    /// Product of the nine site operators of the 3×3 vertex block anchored
    /// at `(x, y)`. Interior edges cancel, leaving the 12 boundary edges.
    pub fn rescaled_site(&self, x: usize, y: usize) -> Result<Pauli, ToricError> {
        self.check_rescale(x, y)?;
        Ok(product(
            self.num_edges(),
            self.site_block(x, y).into_iter().map(|(a, b)| self.layout.site(a, b)),
        ))
    }

    /// Product of the five plaquettes of the plus cluster centred at face
    /// `(x, y)`; the 12 perimeter edges survive.
    pub fn rescaled_plaquette(&self, x: usize, y: usize) -> Result<Pauli, ToricError> {
        self.check_rescale(x, y)?;
        Ok(product(
            self.num_edges(),
            self.plaquette_cluster(x, y)
                .into_iter()
                .map(|(a, b)| self.layout.plaquette(a, b)),
        ))
    }

    /// `S(A)` in bits for a set of edges.
    pub fn block_entropy(&self, region: &[usize]) -> Result<usize, ToricError> {
        check_region(self.num_edges(), region)?;
        Ok(self.group.entropy(&dedup(region)))
    }
}

fn product(n: usize, ops: impl Iterator<Item = Pauli>) -> Pauli {
    let mut out = Pauli::identity(n);
    for p in ops {
        out.mul_assign_right(&p);
    }
    out
}

fn dedup(region: &[usize]) -> Vec<usize> {
    let mut r = region.to_vec();
    r.sort_unstable();
    r.dedup();
    r
}

fn check_region(n: usize, region: &[usize]) -> Result<(), ToricError> {
    match region.iter().find(|&&e| e >= n) {
        Some(&e) => Err(ToricError::EdgeOutOfRange(e)),
        None => Ok(()),
    }
}

/// Replaces generator `drop` of `group` by `add`. Succeeds only when the new
/// set generates exactly the same group.
pub fn swap_generating_set(group: &StabilizerGroup, drop: &Pauli, add: &Pauli) -> Result<StabilizerGroup, ToricError> {
    let gens = group.generators();
    let pos = gens
        .iter()
        .position(|g| g == drop)
        .ok_or_else(|| ToricError::UnknownGenerator(drop.to_string()))?;
    let mut next = gens.to_vec();
    next[pos] = add.clone();
    let changed = || ToricError::GroupChanged(add.to_string(), drop.to_string());
    let swapped = StabilizerGroup::new(group.num_qubits(), next).map_err(|_| changed())?;
    if swapped.rank() != group.rank() || !swapped.same_group(group) {
        return Err(changed());
    }
    Ok(swapped)
}

/// Edges in breadth-first order from `start`, two edges being adjacent when
/// they share a vertex. Prefixes of this order are connected regions.
pub fn bfs_edge_order(layout: &ToricLayout, start: usize) -> Vec<usize> {
    let l = layout.l;
    let n = layout.num_qubits();
    let ends = |e: usize| -> [(usize, usize); 2] {
        let (x, y) = ((e % (l * l)) % l, (e % (l * l)) / l);
        if e < l * l {
            [(x, y), ((x + 1) % l, y)]
        } else {
            [(x, y), (x, (y + 1) % l)]
        }
    };
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(e) = queue.pop_front() {
        order.push(e);
        for (x, y) in ends(e) {
            let mut nbrs = layout.site_edges(x, y);
            nbrs.sort_unstable();
            for f in nbrs {
                if !seen[f] {
                    seen[f] = true;
                    queue.push_back(f);
                }
            }
        }
    }
    order
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionReport {
    pub size: usize,
    pub entropy: usize,
    /// `Σ_{e∈A} S(e) − S(A)`.
    pub internal_correlation: usize,
    /// Independent in-region stabilizers not generated by those of the
    /// subregions `A ∖ {e}`.
    pub irreducible: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CardinalityScan {
    pub regions: Vec<RegionReport>,
    /// Largest sub-global region size with positive internal correlation.
    pub n_t: Option<usize>,
    /// Largest sub-global region size carrying an irreducible stabilizer.
    pub irreducible_cardinality: Option<usize>,
}

impl CardinalityScan {
    /// CSV with columns `size,entropy,internal_correlation,irreducible`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,entropy,internal_correlation,irreducible\n");
        for r in &self.regions {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.size, r.entropy, r.internal_correlation, r.irreducible
            ));
        }
        out
    }
}

fn symplectic_rank(ops: &[Pauli]) -> usize {
    let rows: Vec<Bits> = ops.iter().map(Pauli::symplectic_vector).collect();
    bits::rank(&rows)
}

fn region_report(group: &StabilizerGroup, region: &[usize]) -> RegionReport {
    let entropy = group.entropy(region);
    let singles: usize = region.iter().map(|&e| group.entropy(&[e])).sum();
    let inside = group.subgroup_in_region(region);
    let mut smaller = Vec::new();
    for skip in 0..region.len() {
        let sub: Vec<usize> = region
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &e)| e)
            .collect();
        smaller.extend(group.subgroup_in_region(&sub));
    }
    let irreducible = inside.len() - symplectic_rank(&smaller);
    RegionReport {
        size: region.len(),
        entropy,
        internal_correlation: singles - entropy,
        irreducible,
    }
}

/// Scans the nested regions `regions` (typically prefixes of a BFS order).
/// The full edge set is excluded from `n_t`.
pub fn cardinality_scan(group: &StabilizerGroup, regions: &[Vec<usize>]) -> CardinalityScan {
    let n = group.num_qubits();
    let reports: Vec<RegionReport> = regions.iter().map(|r| region_report(group, &dedup(r))).collect();
    let largest =
        |pred: &dyn Fn(&RegionReport) -> bool| reports.iter().filter(|r| r.size < n && pred(r)).map(|r| r.size).max();
    CardinalityScan {
        n_t: largest(&|r| r.internal_correlation > 0),
        irreducible_cardinality: largest(&|r| r.irreducible > 0),
        regions: reports,
    }
}

/// Nested BFS prefixes of every size from 1 to `2L²` starting at edge 0.
pub fn bfs_regions(layout: &ToricLayout) -> Vec<Vec<usize>> {
    let order = bfs_edge_order(layout, 0);
    (1..=order.len()).map(|k| order[..k].to_vec()).collect()
}

/// The toric state's generating set with every rescaled site and plaquette
/// anchored on the spacing-3 grid swapped in for one of its constituents.
pub fn rescaled_description(state: &ToricState) -> Result<StabilizerGroup, ToricError> {
    let l = state.l();
    let mut group = state.group().clone();
    for y in (0..l).step_by(3) {
        for x in (0..l).step_by(3) {
            let big_site = state.rescaled_site(x, y)?;
            let big_plaq = state.rescaled_plaquette(x, y)?;
            for (small, big) in [
                (
                    candidates(&group, &state.site_block(x, y), |a, b| state.layout().site(a, b)),
                    big_site,
                ),
                (
                    candidates(&group, &state.plaquette_cluster(x, y), |a, b| {
                        state.layout().plaquette(a, b)
                    }),
                    big_plaq,
                ),
            ] {
                // first constituent whose removal the big generator makes up for
                if let Some(g) = small.iter().find_map(|d| swap_generating_set(&group, d, &big).ok()) {
                    group = g;
                }
            }
        }
    }
    Ok(group)
}

fn candidates(group: &StabilizerGroup, cells: &[(usize, usize)], op: impl Fn(usize, usize) -> Pauli) -> Vec<Pauli> {
    cells
        .iter()
        .map(|&(a, b)| op(a, b))
        .filter(|p| group.generators().contains(p))
        .collect()
}

/// Structural check of one rescaling step: every rescaled generator has
/// weight 12, rescaled sites commute with all plaquettes and rescaled
/// plaquettes with all sites, and each is the product of its constituents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RescaleCheck {
    pub anchors: usize,
    pub site_weights: Vec<usize>,
    pub plaquette_weights: Vec<usize>,
    pub commutation_ok: bool,
}

impl RescaleCheck {
    pub fn passed(&self) -> bool {
        self.commutation_ok
            && self.site_weights.iter().all(|&w| w == 12)
            && self.plaquette_weights.iter().all(|&w| w == 12)
    }
}

pub fn check_rescaling(state: &ToricState) -> Result<RescaleCheck, ToricError> {
    let l = state.l();
    let sites = state.layout().all_sites();
    let plaquettes = state.layout().all_plaquettes();
    let mut site_weights = Vec::new();
    let mut plaquette_weights = Vec::new();
    let mut commutation_ok = true;
    for y in 0..l {
        for x in 0..l {
            let s = state.rescaled_site(x, y)?;
            let p = state.rescaled_plaquette(x, y)?;
            site_weights.push(s.weight());
            plaquette_weights.push(p.weight());
            commutation_ok &= plaquettes.iter().all(|q| s.commutes_with(q));
            commutation_ok &= sites.iter().all(|q| p.commutes_with(q));
        }
    }
    Ok(RescaleCheck {
        anchors: l * l,
        site_weights,
        plaquette_weights,
        commutation_ok,
    })
}

/// SVG of the torus edges with the supports of `ops` highlighted, X-type
/// edges in red and Z-type in blue.
pub fn support_svg(layout: &ToricLayout, ops: &[Pauli], metadata: &str) -> String {
    let l = layout.l;
    let cell = 40.0;
    let margin = 20.0;
    let size = margin * 2.0 + cell * l as f64;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n<!-- {} -->\n",
        metadata.replace("--", "- -")
    );
    let pos = |c: usize| margin + cell * c as f64;
    let mut colour = vec!["#cccccc"; layout.num_qubits()];
    let mut width = vec![1.0; layout.num_qubits()];
    for p in ops {
        for q in p.support() {
            let (x, z) = p.kind(q).bits();
            colour[q] = match (x, z) {
                (true, true) => "#800080",
                (true, false) => "#cc2222",
                _ => "#2244cc",
            };
            width[q] = 4.0;
        }
    }
    for e in 0..layout.num_qubits() {
        let horizontal = e < l * l;
        let (x, y) = ((e % (l * l)) % l, (e % (l * l)) / l);
        let (x2, y2) = if horizontal {
            (pos(x) + cell, pos(y))
        } else {
            (pos(x), pos(y) + cell)
        };
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
            pos(x),
            pos(y),
            colour[e],
            width[e]
        ));
    }
    out.push_str("</svg>\n");
    out
}
