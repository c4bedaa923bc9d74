use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered finite alphabet with optional null (`φ`) and erasure (`e`) roles.
///
/// Role symbols are ordinary members of the alphabet; the roles only flag
/// them for the half-duplex checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<String>,
    null: Option<usize>,
    erasure: Option<usize>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(symbols: &[S]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must not be empty".into()));
        }
        let symbols: Vec<String> = symbols.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Self {
            symbols,
            null: None,
            erasure: None,
        })
    }

    pub fn with_null(mut self, symbol: &str) -> Result<Self> {
        self.null = Some(self.position(symbol).ok_or_else(|| {
            Error::InvalidAlphabet(format!("null symbol `{symbol}` is not a member"))
        })?);
        Ok(self)
    }

    pub fn with_erasure(mut self, symbol: &str) -> Result<Self> {
        self.erasure = Some(self.position(symbol).ok_or_else(|| {
            Error::InvalidAlphabet(format!("erasure symbol `{symbol}` is not a member"))
        })?);
        Ok(self)
    }

    /// The listen/transmit state alphabet `{l, t}`.
    pub fn state() -> Self {
        Self::new(&["l", "t"]).expect("static alphabet")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    pub fn position(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    pub fn null(&self) -> Option<usize> {
        self.null
    }

    pub fn erasure(&self) -> Option<usize> {
        self.erasure
    }

    pub fn null_symbol(&self) -> Option<&str> {
        self.null.map(|i| self.symbols[i].as_str())
    }

    pub fn erasure_symbol(&self) -> Option<&str> {
        self.erasure.map(|i| self.symbols[i].as_str())
    }
}
