//! Loading inputs from disk or from the bundled corpus.

use std::path::{Path, PathBuf};

use recollement::fixtures::{self, TriangularSpec};
use recollement::{parse_algebra_file, Error, FieldSpec, QuiverPresentation};

use crate::error::{io, CliError};

pub struct Loaded {
    pub name: String,
    pub text: String,
    pub presentation: QuiverPresentation,
}

/// Reads `file` from disk, falling back to the bundled fixture of that name.
pub fn read_source(file: &str) -> Result<(String, String), CliError> {
    let path = Path::new(file);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(io(path))?;
        let name = path.file_stem().map_or_else(|| file.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok((name, text));
    }
    let stem = file.strip_suffix(".qalg").unwrap_or(file);
    match fixtures::quiver_source(stem) {
        Some(text) => Ok((stem.to_string(), text.to_string())),
        None => Err(CliError::Usage(format!("'{file}' is neither a file nor a bundled fixture"))),
    }
}

pub fn load(file: &str, field: Option<FieldSpec>) -> Result<Loaded, CliError> {
    let (name, text) = read_source(file)?;
    let mut presentation = parse_algebra_file(&text).map_err(Error::from)?;
    if let Some(f) = field {
        presentation = presentation.with_field(f);
    }
    Ok(Loaded { name, text, presentation })
}

/// A triangular spec with its `sigma`/`gamma` paths resolved against the
/// spec's directory, then against the bundled corpus.
pub fn load_triangular(spec: &str) -> Result<(TriangularSpec, Option<PathBuf>), CliError> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(io(path))?;
        return Ok((TriangularSpec::from_json(&text)?, path.parent().map(Path::to_path_buf)));
    }
    let stem = spec.strip_suffix(".json").unwrap_or(spec);
    let text = fixtures::TRIANGULAR
        .iter()
        .find(|(n, _)| *n == stem)
        .map(|(_, s)| *s)
        .ok_or_else(|| CliError::Usage(format!("'{spec}' is neither a file nor a bundled triangular spec")))?;
    Ok((TriangularSpec::from_json(text)?, None))
}

pub fn part_loader(dir: Option<PathBuf>) -> impl Fn(&str) -> recollement::Result<String> {
    move |p: &str| {
        if let Some(d) = &dir {
            let candidate = d.join(p);
            if candidate.exists() {
                return std::fs::read_to_string(&candidate)
                    .map_err(|e| Error::Unsupported(format!("{}: {e}", candidate.display())));
            }
        }
        fixtures::quiver_source(p)
            .map(str::to_string)
            .ok_or_else(|| Error::Unsupported(format!("cannot find '{p}'")))
    }
}
