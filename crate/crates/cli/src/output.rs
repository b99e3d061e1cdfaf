use std::io::Write;
use std::path::Path;

use crate::cli::{CommandName, Format};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Written for every format.
    EdgeList,
    Json,
    Csv,
    Dot,
    /// Only with `--format all`.
    Markdown,
}

impl Kind {
    fn selected_by(self, format: Format) -> bool {
        match (self, format) {
            (Kind::EdgeList, _) | (_, Format::All) => true,
            (Kind::Json, Format::Json) | (Kind::Csv, Format::Csv) | (Kind::Dot, Format::Dot) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Artifact {
    pub name: &'static str,
    pub kind: Kind,
    pub content: String,
}

impl Artifact {
    pub fn new(name: &'static str, kind: Kind, content: String) -> Self {
        Artifact { name, kind, content }
    }
}

/// Writes the artifacts picked by `format` into `out`, or prints the first of
/// them to stdout when no directory is given (the first matching the
/// requested format, if one was requested).
pub fn emit(command: CommandName, artifacts: &[Artifact], format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let selected: Vec<&Artifact> = artifacts.iter().filter(|a| a.kind.selected_by(format)).collect();
    if selected.is_empty() {
        return Err(CliError::Usage(format!(
            "`{}` has no {} output",
            command.as_str(),
            format!("{format:?}").to_lowercase()
        )));
    }
    match out {
        Some(dir) => {
            let io_err = |path: &Path| {
                let path = path.display().to_string();
                move |source| CliError::Io { path, source }
            };
            std::fs::create_dir_all(dir).map_err(io_err(dir))?;
            for a in selected {
                let path = dir.join(a.name);
                std::fs::write(&path, &a.content).map_err(io_err(&path))?;
                eprintln!("wrote {}", path.display());
            }
        }
        None => {
            // an explicit format beats the always-on edge list
            let primary = selected
                .iter()
                .find(|a| format == Format::All || a.kind != Kind::EdgeList)
                .unwrap_or(&selected[0]);
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(primary.content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    Ok(())
}
