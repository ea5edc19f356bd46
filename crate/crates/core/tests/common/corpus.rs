//! Synthetic gesture logs in the published XML attribute layout.

use std::path::Path;

use squiggle_core::glyphs::GlyphSpec;
use squiggle_core::store::{gesture_to_xml, Speed};

use super::{pen_trace, random_affine, rng, to_raw};

/// Writes `subjects × 3 speeds × reps` mildly distorted redraws of every
/// glyph under `root/sNN/<speed>/<name>NN.xml`. Returns the file count.
pub fn write_corpus(root: &Path, specs: &[GlyphSpec], subjects: usize, reps: usize, seed: u64) -> usize {
    let mut r = rng(seed);
    let mut files = 0;
    for s in 1..=subjects {
        let subject = format!("s{s:02}");
        for (speed, noise) in [(Speed::Fast, 1.5), (Speed::Medium, 1.0), (Speed::Slow, 0.5)] {
            let dir = root.join(&subject).join(speed.as_str());
            std::fs::create_dir_all(&dir).unwrap();
            for g in specs {
                for k in 1..=reps {
                    let t = random_affine(&mut r, 1.3, 0.5, false);
                    let mut pts = pen_trace(g, &t, noise, true, &mut r);
                    pts.dedup();
                    let name = format!("{}{k:02}", g.name);
                    let xml = gesture_to_xml(&name, &subject, Some(speed), &to_raw(&pts));
                    std::fs::write(dir.join(format!("{name}.xml")), xml).unwrap();
                    files += 1;
                }
            }
        }
    }
    files
}
