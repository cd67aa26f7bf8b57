// Solve a small hand-made instance and draw its districts as SVG.
//
// The data in `examples/data/illustrative_districts.json` is invented for
// illustration. The picture is written to the system temporary directory
// unless a path is given.
//
// ```text
// cargo run --example render_districts -- districts.svg
// ```

use std::path::PathBuf;

use gerrymander::format::parse_instance;
use gerrymander::render::render_svg;
use gerrymander::separator::{solve, SeparatorConfig};

const DATA: &[u8] = include_bytes!("data/illustrative_districts.json");

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inst = parse_instance(DATA)?;
    let answer = solve(&inst, &SeparatorConfig { safe_mode: true, ..Default::default() })?;
    let chosen = answer.certificate.ok_or("the illustrative instance is a yes instance")?;
    println!("{} wins {} of {} districts with boxes {chosen:?}", inst.target_id(), inst.ell, inst.k);

    let svg = render_svg(&inst, Some(&chosen))?;
    let out =
        std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("illustrative_districts.svg"));
    std::fs::write(&out, &svg)?;
    println!("wrote {} ({} bytes)", out.display(), svg.len());
    // the empty map: voters and candidate locations only
    let plain = render_svg(&inst, None)?;
    assert!(!String::from_utf8(plain)?.contains("<polygon"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
