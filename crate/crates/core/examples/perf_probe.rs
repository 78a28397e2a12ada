use std::sync::Arc;
use std::time::Instant;
use macq::baker::{build_ba, normalize_ba};
use macq::rootdata::{build_root_system, Family, MultSpec};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(|s| s.as_str()).unwrap_or("a2");
    let (fam, rank, spec, name) = match which {
        "a2" => (Family::A, 2, MultSpec::uniform(2), "A2 m=2"),
        "b2" => (Family::B, 2, MultSpec::short_long(2, 1), "B2 (2,1)"),
        "a3" => (Family::A, 3, MultSpec::uniform(1), "A3 m=1"),
        "g2" => (Family::G, 2, MultSpec::short_long(1, 1), "G2 (1,1)"),
        _ => panic!(),
    };
    let t0 = Instant::now();
    let sys = Arc::new(build_root_system(fam, rank, &spec).unwrap());
    let ba = build_ba(&sys).unwrap();
    let t1 = Instant::now();
    let n = normalize_ba(&ba).unwrap();
    let t2 = Instant::now();
    println!(
        "{}: build {:?}, normalize {:?}, raw terms {}, norm terms {}",
        name, t1 - t0, t2 - t1, ba.psi.num_terms(), n.psi.num_terms()
    );
}
