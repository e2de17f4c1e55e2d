//! Plus-pentomino and brick tilings of the 10 x 10 torus, their similarity
//! data, and a two-level hierarchy on the 25 x 25 torus. The 10 x 10 plus
//! tiling is also written as SVG to the temp directory.

use blockspin::tiling::{brick_tiling, concatenate_tiling, plus_tiling, validate_tiling, Handedness};

fn main() {
    for (name, t) in [
        ("plus, right", plus_tiling(10, Handedness::Right).unwrap()),
        ("plus, left", plus_tiling(10, Handedness::Left).unwrap()),
        ("brick", brick_tiling(10).unwrap()),
    ] {
        let r = validate_tiling(&t).unwrap();
        println!(
            "{name:<12} {} tiles  rescale {:.6}  rotation {:+.6} rad  index {}",
            t.tiles.len(),
            r.rescale,
            r.rotation,
            r.similarity.index()
        );
    }

    let t = plus_tiling(25, Handedness::Right).unwrap();
    let h = concatenate_tiling(&t, 2).unwrap();
    println!("\n25 x 25, two levels: tiles per level {:?}", h.tile_counts);
    for site in [0, 1, 26, 312] {
        println!("  site {site:>3}: {:?}", h.addresses[site]);
    }

    let path = std::env::temp_dir().join("plus_tiling.svg");
    std::fs::write(&path, plus_tiling(10, Handedness::Right).unwrap().to_svg("")).unwrap();
    println!("\nwrote {}", path.display());
}
