//! Pentomino and brick tilings of the square torus.

use blockspin::tiling::{
    brick_tiling, brick_tiling_with, chain_tiling, concatenate_tiling, plus_tiling, validate_tiling, Handedness,
    Lattice, Tiling, TilingError, PLUS_SHAPE,
};

#[test]
fn plus_and_brick_share_centers() {
    let plus = plus_tiling(5, Handedness::Right).unwrap();
    let brick = brick_tiling(5).unwrap();
    let (a, b) = (validate_tiling(&plus).unwrap(), validate_tiling(&brick).unwrap());
    assert!(a.exact_cover && b.exact_cover);
    assert_eq!(plus.centers(), brick.centers());
    for r in [a, b] {
        assert!((r.rescale - 5f64.sqrt()).abs() < 1e-12);
        assert!((r.rotation - 0.5f64.atan()).abs() < 1e-12);
    }
}

#[test]
fn handedness_mirrors_rotation() {
    let left = validate_tiling(&plus_tiling(10, Handedness::Left).unwrap()).unwrap();
    assert!((left.rotation + 0.5f64.atan()).abs() < 1e-12);
    let bl = validate_tiling(&brick_tiling_with(10, Handedness::Left).unwrap()).unwrap();
    assert_eq!(bl.similarity, left.similarity);
}

#[test]
fn every_site_gets_one_label() {
    let t = plus_tiling(10, Handedness::Right).unwrap();
    let a = t.assignment().unwrap();
    assert_eq!(a.len(), 100);
    let mut counts = [0usize; 5];
    for (_, label) in &a {
        counts[label - 1] += 1;
    }
    assert_eq!(counts, [20; 5]);
    for tile in &t.tiles {
        assert_eq!(a[t.lattice.index(tile.center)].1, 1);
    }
}

#[test]
fn overlaps_and_bad_sizes_are_reported() {
    assert!(matches!(
        plus_tiling(6, Handedness::Right),
        Err(TilingError::ExtentNotDivisible { .. })
    ));
    let lattice = Lattice::square(5);
    let bad = Tiling::from_centers(
        lattice,
        PLUS_SHAPE.to_vec(),
        vec![[0, 0], [1, 0], [2, 2], [3, 3], [4, 4]],
    );
    assert!(matches!(validate_tiling(&bad), Err(TilingError::Overlap(_))));
    let sparse = Tiling::from_centers(lattice, PLUS_SHAPE.to_vec(), vec![[0, 0]]);
    assert!(matches!(validate_tiling(&sparse), Err(TilingError::Gap(_))));
}

#[test]
fn chain_blocks() {
    let t = chain_tiling(25, 5).unwrap();
    let r = validate_tiling(&t).unwrap();
    assert_eq!(r.rescale, 5.0);
    assert_eq!(r.rotation, 0.0);
    let h = concatenate_tiling(&t, 2).unwrap();
    assert_eq!(h.tile_counts, vec![5, 1]);
    assert!(chain_tiling(7, 5).is_err());
}

#[test]
fn two_level_plus_hierarchy() {
    let t = plus_tiling(25, Handedness::Right).unwrap();
    let h = concatenate_tiling(&t, 2).unwrap();
    assert_eq!(h.tile_counts, vec![125, 25]);
    for j in 0..2 {
        let mut seen = std::collections::HashSet::new();
        for addr in &h.addresses {
            assert!(addr[j].1 >= 1 && addr[j].1 <= 5);
            seen.insert(addr[j].0);
        }
        assert_eq!(seen.len(), h.tile_counts[j]);
    }
    // each level-2 tile is made of 25 sites
    let mut sizes = [0; 25];
    for addr in &h.addresses {
        sizes[addr[1].0] += 1;
    }
    assert!(sizes.iter().all(|&s| s == 25));
    assert!(concatenate_tiling(&t, 3).is_err());
    assert!(concatenate_tiling(&t, 0).is_err());
}

#[test]
fn json_and_svg_render() {
    let t = plus_tiling(5, Handedness::Right).unwrap();
    let j = t.to_json();
    assert_eq!(j["centers"].as_array().unwrap().len(), 5);
    let svg = t.to_svg("{}");
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.contains("</svg>"));
}
