use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 1,
            Status::InputError => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::CheckFailed => "check failed",
            Status::InputError => "input error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

/// Output of one command. Rendering is a pure function of the contents.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub sections: Vec<Section>,
    pub status: Status,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Report {
        Report { command: command.into(), seed, sections: Vec::new(), status: Status::Ok }
    }

    pub fn section(&mut self, title: impl Into<String>) -> &mut Vec<String> {
        self.sections.push(Section { title: title.into(), lines: Vec::new() });
        &mut self.sections.last_mut().unwrap().lines
    }

    /// Records a check; a failure downgrades the status.
    pub fn check(&mut self, name: &str, passed: bool) -> bool {
        if !passed && self.status == Status::Ok {
            self.status = Status::CheckFailed;
        }
        let line = format!("[{}] {name}", if passed { "ok" } else { "FAILED" });
        match self.sections.last_mut() {
            Some(s) => s.lines.push(line),
            None => self.section("checks").push(line),
        }
        passed
    }

    pub fn fail(&mut self, status: Status, msg: impl Into<String>) {
        self.status = status;
        self.section("error").push(msg.into());
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command)?;
        writeln!(f, "seed: {}", self.seed)?;
        for s in &self.sections {
            writeln!(f, "== {} ==", s.title)?;
            for l in &s.lines {
                writeln!(f, "{l}")?;
            }
        }
        writeln!(f, "status: {}", self.status.label())
    }
}
