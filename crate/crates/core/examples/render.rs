//! Writes an SVG of a perturbed grid with its non-flat faces highlighted.

use pqmap::curvature::PQParams;
use pqmap::generators::{gen_standard, perturb_defects};
use pqmap::render::{render, RenderFormat};

fn main() {
    let pq = PQParams::standard(4, 4).unwrap();
    let m = perturb_defects(&gen_standard(4, 3).unwrap(), &pq, 1, 2).unwrap();
    let out = render(&m, RenderFormat::Svg, Some(&pq)).unwrap();
    if let Some(w) = &out.warning {
        eprintln!("{w}");
    }
    let path = std::env::temp_dir().join("pqmap-example.svg");
    std::fs::write(&path, &out.text).unwrap();
    println!("wrote {} ({} bytes)", path.display(), out.text.len());
}
