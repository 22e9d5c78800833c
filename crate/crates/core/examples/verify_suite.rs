//! The acceptance checks through the library, one criterion at a time.
//!
//! cargo run --release --example verify_suite -- 1 2 10

use dyck_shift::verify::{Session, VerifyOptions};

fn main() {
    let ids: Vec<u8> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let ids = if ids.is_empty() {
        vec![1, 2, 4, 5, 10]
    } else {
        ids
    };
    let mut session = Session::new(VerifyOptions {
        seed: 7,
        samples: 20_000,
    });
    for id in ids {
        let r = session.run(id);
        println!("{}", r.tap_line());
        for d in r.details.iter().take(4) {
            println!("  # {d}");
        }
    }
}
