//! Running an external solver binary on a script file, with a wall-clock limit.

use std::io::Read;
use std::path::Path;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("cannot start `{bin}`: {err}")]
    Spawn { bin: String, err: std::io::Error },
    #[error("timeout after {0:?}")]
    Timeout(Duration),
    #[error("waiting for the solver: {0}")]
    Wait(std::io::Error),
}

/// Runs `bin args.. script` and returns its standard output. The process is killed once
/// `timeout` has elapsed; a zero timeout therefore always times out.
pub fn run(bin: &Path, args: &[String], script: &Path, timeout: Duration) -> Result<String, SolverError> {
    let start = Instant::now();
    let mut child = Command::new(bin)
        .args(args)
        .arg(script)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|err| SolverError::Spawn { bin: bin.display().to_string(), err })?;
    let mut stdout = child.stdout.take().expect("stdout is piped");
    // drain the pipe while waiting so a chatty solver cannot block on a full buffer
    let reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = stdout.read_to_string(&mut s);
        s
    });
    loop {
        if start.elapsed() >= timeout {
            let _ = child.kill();
            let _ = child.wait();
            return Err(SolverError::Timeout(timeout));
        }
        match child.try_wait() {
            Ok(Some(_)) => break,
            Ok(None) => thread::sleep(Duration::from_millis(5)),
            Err(e) => return Err(SolverError::Wait(e)),
        }
    }
    Ok(reader.join().unwrap_or_default())
}
