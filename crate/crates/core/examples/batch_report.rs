//! Batch search over the corpus files, the way `ztc solve` does, printing the report
//! table and its JSON form.

use std::path::PathBuf;

use ztc::cli::{load, solve};
use ztc::fms::SearchConfig;

fn main() {
    let files = vec![PathBuf::from("corpus/launch_vehicle.ztc"), PathBuf::from("corpus/toolkit.ztc")];
    let units = load(&files).expect("run from crates/core");
    let report = solve(&units, &SearchConfig::default(), None);
    println!("{report}\n");
    println!("{}", report.without_timings().to_json());
}
