//! One rescaling step of the toric code on the 6 x 6 torus: weight-12 coarse
//! generators swapped into the generating set, and block entropies of BFS
//! regions before and after.

use blockspin::toric::{bfs_regions, cardinality_scan, check_rescaling, rescaled_description, ToricState};

fn main() {
    let state = ToricState::new(6).unwrap();
    let check = check_rescaling(&state).unwrap();
    println!(
        "rescaled generators at {} anchors, all weight 12: {}",
        check.anchors,
        check.passed()
    );
    println!("  site(0,0)       {}", state.rescaled_site(0, 0).unwrap());
    println!("  plaquette(0,0)  {}", state.rescaled_plaquette(0, 0).unwrap());

    let coarse = rescaled_description(&state).unwrap();
    let heavy = coarse.generators().iter().filter(|g| g.weight() == 12).count();
    println!(
        "\n{heavy} generators replaced, same group: {}",
        coarse.same_group(state.group())
    );

    let regions = bfs_regions(state.layout());
    let scan = cardinality_scan(state.group(), &regions);
    println!("\nsize entropy correlation irreducible");
    for r in scan.regions.iter().filter(|r| r.size % 8 == 0 || r.size <= 4) {
        println!(
            "{:>4} {:>7} {:>11} {:>11}",
            r.size, r.entropy, r.internal_correlation, r.irreducible
        );
    }
    println!(
        "n_T = {:?}, irreducible cardinality = {:?}",
        scan.n_t, scan.irreducible_cardinality
    );
    assert_eq!(scan, cardinality_scan(&coarse, &regions));
}
