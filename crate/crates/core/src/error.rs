use thiserror::Error;

/// Errors produced while loading resources, ingesting reviews, or building
/// lexicon tables.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: input is not valid UTF-8")]
    InvalidUtf8 { line: usize },

    #[error("word has {n} toggleable positions, above the cap of {cap}")]
    ToggleExplosion { n: usize, cap: usize },

    #[error("gram size mismatch: {left} vs {right}")]
    GramSizeMismatch { left: usize, right: usize },

    #[error("rating class {0} is not in the configured class set")]
    UnknownClass(u8),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Splits raw bytes into numbered UTF-8 lines (1-based), stripping a trailing
/// `\r`. Fails on the first line that is not valid UTF-8.
pub(crate) fn utf8_lines(bytes: &[u8]) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    if bytes.is_empty() {
        return Ok(out);
    }
    let body = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    for (i, raw) in body.split(|&b| b == b'\n').enumerate() {
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let line = std::str::from_utf8(raw).map_err(|_| Error::InvalidUtf8 { line: i + 1 })?;
        out.push((i + 1, line));
    }
    Ok(out)
}
