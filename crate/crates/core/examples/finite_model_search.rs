//! Search every corpus spec for a witness, printing the search statistics.
//!
//!     cargo run --example finite_model_search -- 2 500

use ztc::fms::{numeric_seed, search, SearchConfig, SearchResult};
use ztc::zparse::parse_file;
use ztc::ztype::typecheck;

fn main() {
    let mut args = std::env::args().skip(1);
    let fss = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    let max = args.next().and_then(|a| a.parse().ok()).unwrap_or(10_000);
    let cfg = SearchConfig::new(fss, max).expect("positive FSS and MAX");
    let file = parse_file(include_str!("../corpus/toolkit.ztc")).unwrap();
    for spec in file.flattened() {
        let t = typecheck(&spec, &file.types).unwrap();
        let seed = numeric_seed(&t, &cfg);
        let s = search(&t, &cfg);
        let result = match &s.result {
            SearchResult::Witness(env) => {
                let b: Vec<String> = env.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                b.join(", ")
            }
            other => format!("{other:?}"),
        };
        println!(
            "{:<16} seeds nat={:?} int={:?}  size~{}  explored={}  survivors={:?}\n    {result}",
            t.name(),
            seed.nat,
            seed.int,
            s.stats.estimated_size,
            s.stats.explored,
            s.stats.survivors
        );
    }
}
