//! Type-check specs, showing normalized types and carrier constraints.

use ztc::zparse::parse_file;
use ztc::ztype::typecheck;

const SRC: &str = "
free STATUS ::= normal | failure;
spec Ok {
  q : seq STATUS;
  f : STATUS pfun NAT
|
  1 in dom q;
  q @ 1 = failure;
  f @ normal = 2
}
spec Broken {
  s : P STATUS
|
  # s = 1
}
";

fn main() {
    let file = parse_file(SRC).unwrap();
    for spec in file.flattened() {
        match typecheck(&spec, &file.types) {
            Ok(t) => {
                println!("{}: ok", t.name());
                for v in &t.vars {
                    let cs: Vec<String> = v.constraints.iter().map(|c| c.to_string()).collect();
                    println!("  {} : {}  ~>  {}  [{}]", v.name, v.declared, v.normalized, cs.join(", "));
                }
                for w in &t.warnings {
                    println!("  warning: {w}");
                }
            }
            Err(e) => println!("{}: {e}", spec.name),
        }
    }
}
