use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Info,
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Ordered findings of one analysis.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub items: Vec<Item>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), items: Vec::new() }
    }

    pub fn info(&mut self, name: &str, detail: impl Into<String>) {
        self.items.push(Item { name: name.to_string(), status: Status::Info, detail: detail.into() });
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.items.push(Item { name: name.to_string(), status, detail: detail.into() });
    }

    /// Records an analysis error as a failed item.
    pub fn error(&mut self, name: &str, e: impl std::fmt::Display) {
        self.items.push(Item { name: name.to_string(), status: Status::Fail, detail: format!("error: {e}") });
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in &self.items {
            let tag = match i.status {
                Status::Info => "",
                Status::Pass => " [pass]",
                Status::Fail => " [FAIL]",
            };
            out.push_str(&format!("{}: {}{}\n", i.name, i.detail, tag));
        }
        out
    }
}
