//! Regenerates the bundled corpus files under `data/`.
//!
//!     cargo run -p wirtwidth --example gen_corpus

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wirtwidth::corpus::{gauss_from_braid, gauss_from_dt, random_braid_knot};

const DT_CODES: &[(&str, &[i32])] = &[
    ("3_1", &[4, 6, 2]),
    ("4_1", &[4, 6, 8, 2]),
    ("5_1", &[6, 8, 10, 2, 4]),
    ("5_2", &[4, 8, 10, 2, 6]),
    ("6_1", &[4, 8, 12, 10, 2, 6]),
    ("6_2", &[4, 8, 10, 12, 2, 6]),
    ("6_3", &[4, 8, 10, 2, 12, 6]),
    ("7_1", &[8, 10, 12, 14, 2, 4, 6]),
    ("7_2", &[4, 10, 14, 12, 2, 8, 6]),
    ("7_3", &[6, 10, 12, 14, 2, 4, 8]),
    ("7_4", &[6, 10, 12, 14, 4, 2, 8]),
    ("7_5", &[4, 10, 12, 14, 2, 8, 6]),
    ("7_6", &[4, 8, 12, 2, 14, 6, 10]),
    ("7_7", &[4, 8, 10, 12, 2, 14, 6]),
];

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");

    let mut knots = String::from("# name\tgauss code\n0_1\t\n");
    for (name, dt) in DT_CODES {
        writeln!(knots, "{name}\t{}", gauss_from_dt(dt).unwrap()).unwrap();
    }
    writeln!(knots, "4_1b\t-1,2,-3,4,-2,1,-4,3").unwrap();
    let braids: [(&str, Vec<i32>); 3] = [
        ("8_19", [1, 2].repeat(4)),
        ("9_1", vec![1; 9]),
        ("T(4,5)", [1, 2, 3].repeat(5)),
    ];
    for (name, word) in &braids {
        writeln!(knots, "{name}\t{}", gauss_from_braid(word).unwrap()).unwrap();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..8 {
        let strands = rng.gen_range(4..=5);
        let len = rng.gen_range(5..=7);
        let (word, d) = random_braid_knot(&mut rng, strands, len);
        writeln!(knots, "{}\t{}", braid_name("r", i, &word), d.code()).unwrap();
    }
    // Small diagrams that need three seeds.
    for (i, word) in [[-2, -2, -2, 1, -3, -3, -3], [-2, -3, -3, -3, -1, -2, -1]].iter().enumerate() {
        writeln!(knots, "{}\t{}", braid_name("m", i, word), gauss_from_braid(word).unwrap()).unwrap();
    }
    fs::write(data.join("knots.tsv"), knots).unwrap();

    let mut sample = String::from("# name\tgauss code\n");
    for i in 0..1000 {
        let strands = rng.gen_range(3..=5);
        let len = rng.gen_range(12..=16);
        let (word, d) = random_braid_knot(&mut rng, strands, len);
        writeln!(sample, "{}\t{}", braid_name("b", i, &word), d.code()).unwrap();
    }
    fs::write(data.join("braid_sample.tsv"), sample).unwrap();
}

fn braid_name(prefix: &str, i: usize, word: &[i32]) -> String {
    let word: Vec<String> = word.iter().map(i32::to_string).collect();
    format!("{prefix}{i:04}[{}]", word.join(" "))
}
