//! The optional training step, run under a wall-clock budget.

use std::path::Path;
use std::process::{Child, Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::spec::PredictorSpec;
use crate::error::{Error, Result, Stage};

pub const BUDGET_EXCEEDED: &str = "training budget exceeded";
const POLL: Duration = Duration::from_millis(10);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrainingOutcome {
    Trained { elapsed_s: f64 },
    Rejected { reason: String, elapsed_s: f64 },
}

fn kill_tree(child: &mut Child) {
    #[cfg(unix)]
    // SAFETY: plain syscall on the group created for this child.
    unsafe {
        libc::kill(-(child.id() as libc::pid_t), libc::SIGKILL);
    }
    // Errors only mean the process is already gone.
    let _ = child.kill();
    let _ = child.wait();
}

/// Runs `training.command… <train_dir>`. A process still running when the
/// budget runs out is killed and the run is rejected; a nonzero exit is a
/// failure instead. Specs without training succeed immediately.
pub fn run_training(spec: &PredictorSpec, train_dir: &Path) -> Result<TrainingOutcome> {
    let Some(t) = &spec.training else {
        return Ok(TrainingOutcome::Trained { elapsed_s: 0.0 });
    };
    spec.validate()?;
    let mut cmd = Command::new(&t.command[0]);
    cmd.args(&t.command[1..]).arg(train_dir).stdin(Stdio::null());
    if let Some(dir) = &t.working_dir {
        cmd.current_dir(dir);
    }
    // Own process group, so a budget kill also reaches grandchildren.
    #[cfg(unix)]
    std::os::unix::process::CommandExt::process_group(&mut cmd, 0);
    let budget = Duration::from_secs_f64(t.budget_s);
    let start = Instant::now();
    let mut child = cmd.spawn().map_err(|source| Error::Spawn { command: t.command.join(" "), source })?;
    loop {
        let status = child.try_wait().map_err(|e| Error::io(&t.command[0], e))?;
        let elapsed = start.elapsed();
        if let Some(status) = status {
            if !status.success() {
                return Err(Error::PredictorExit { stage: Stage::Training, code: status.code() });
            }
            return Ok(TrainingOutcome::Trained { elapsed_s: elapsed.as_secs_f64() });
        }
        if elapsed > budget {
            kill_tree(&mut child);
            log::warn!("training of `{}` killed after {:.1} s", spec.label, elapsed.as_secs_f64());
            return Ok(TrainingOutcome::Rejected { reason: BUDGET_EXCEEDED.into(), elapsed_s: elapsed.as_secs_f64() });
        }
        thread::sleep(POLL.min(budget - elapsed));
    }
}
