//! Generate graphs, inspect their structure, and round-trip them through files.
//!
//!     cargo run --release --example graph_io

use sawlab::graph::{girth, load_graph, save_graph, Family, DEFAULT_AUTOMORPHISM_BUDGET};

fn main() -> sawlab::Result<()> {
    let families = [
        Family::Petersen,
        Family::Complete(6),
        Family::Cycle(9),
        Family::Hypercube(3),
        Family::Torus(5, 2),
        Family::RandomRegular { n: 1000, d: 3, seed: 7 },
    ];
    println!("{:<24} {:>6} {:>6} {:>7} {:>6}  transitive", "graph", "n", "edges", "degree", "girth");
    for fam in families {
        let g = fam.generate()?;
        let meta = g.meta(DEFAULT_AUTOMORPHISM_BUDGET);
        let degree = meta.degree.map_or("-".to_string(), |d| d.to_string());
        println!(
            "{:<24} {:>6} {:>6} {:>7} {:>6}  {:?}",
            g.name(),
            g.n(),
            g.num_edges(),
            degree,
            meta.girth.to_string(),
            meta.vertex_transitive
        );
    }

    let dir = std::env::temp_dir().join("sawlab-graph-io");
    std::fs::create_dir_all(&dir)?;
    let g = Family::RandomRegular { n: 50, d: 4, seed: 3 }.generate()?;
    for file in ["rr50.edges", "rr50.json"] {
        let path = dir.join(file);
        save_graph(&g, &path)?;
        let back = load_graph(&path)?;
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        println!("saved and reloaded {} ({} edges, girth {})", path.display(), back.num_edges(), girth(&back));
    }
    Ok(())
}
