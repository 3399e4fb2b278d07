//! Writes the bundled scenes as SVG files into the directory given as the
//! first argument (default: the system temp directory).

use std::path::PathBuf;

use hilbert_core::render::{render_svg, SceneDescription};
use hilbert_core::Result;

const SCENES: [(&str, &str); 3] = [
    (
        "triangle_broken_geodesic",
        include_str!("../assets/triangle_broken_geodesic.json"),
    ),
    ("square_ball", include_str!("../assets/square_ball.json")),
    (
        "empty_triangle",
        include_str!("../assets/empty_triangle.json"),
    ),
];

fn main() -> Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    for (name, json) in SCENES {
        let svg = render_svg(&SceneDescription::from_json(json)?)?;
        let path = dir.join(format!("{name}.svg"));
        std::fs::write(&path, svg).expect("output directory is writable");
        println!("wrote {}", path.display());
    }
    Ok(())
}
