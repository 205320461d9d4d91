use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Decoration {
    #[default]
    None,
    Star,
    Inverse,
}

/// A generator name such as `alpha*`, `u(1,2)` or `g1^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSymbol {
    pub name: String,
    pub indices: Vec<i64>,
    pub decoration: Decoration,
}

impl GeneratorSymbol {
    pub fn plain(name: impl Into<String>) -> Self {
        GeneratorSymbol { name: name.into(), indices: Vec::new(), decoration: Decoration::None }
    }

    pub fn indexed(name: impl Into<String>, indices: &[i64]) -> Self {
        GeneratorSymbol { name: name.into(), indices: indices.to_vec(), decoration: Decoration::None }
    }

    pub fn with(mut self, decoration: Decoration) -> Self {
        self.decoration = decoration;
        self
    }

    pub fn starred(&self) -> Self {
        self.clone().with(Decoration::Star)
    }

    pub fn inverse(&self) -> Self {
        self.clone().with(Decoration::Inverse)
    }

    pub fn undecorated(&self) -> Self {
        self.clone().with(Decoration::None)
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.indices.is_empty() {
            let parts: Vec<String> = self.indices.iter().map(i64::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        match self.decoration {
            Decoration::None => Ok(()),
            Decoration::Star => f.write_str("*"),
            Decoration::Inverse => f.write_str("^-1"),
        }
    }
}

/// Ordered generator list of a presentation. Letters of words are indices into it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<GeneratorSymbol>,
    index: HashMap<GeneratorSymbol, u32>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_symbols(symbols: impl IntoIterator<Item = GeneratorSymbol>) -> Result<Self> {
        let mut a = Alphabet::new();
        for s in symbols {
            a.push(s)?;
        }
        Ok(a)
    }

    pub fn push(&mut self, s: GeneratorSymbol) -> Result<u32> {
        if s.name == "i" && s.indices.is_empty() {
            return Err(Error::InvalidInput("`i` is reserved for the imaginary unit".into()));
        }
        if self.index.contains_key(&s) {
            return Err(Error::InvalidInput(format!("duplicate generator `{s}`")));
        }
        let id = self.symbols.len() as u32;
        self.index.insert(s.clone(), id);
        self.symbols.push(s);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, id: u32) -> &GeneratorSymbol {
        &self.symbols[id as usize]
    }

    pub fn lookup(&self, s: &GeneratorSymbol) -> Option<u32> {
        self.index.get(s).copied()
    }

    pub fn require(&self, s: &GeneratorSymbol) -> Result<u32> {
        self.lookup(s).ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }

    /// Looks up a symbol by its printed form.
    pub fn by_name(&self, text: &str) -> Result<u32> {
        self.symbols
            .iter()
            .position(|s| s.to_string() == text)
            .map(|i| i as u32)
            .ok_or_else(|| Error::UnknownGenerator(text.to_string()))
    }

    pub fn symbols(&self) -> &[GeneratorSymbol] {
        &self.symbols
    }

    pub fn ids(&self) -> impl Iterator<Item = u32> {
        0..self.symbols.len() as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(GeneratorSymbol::plain("alpha").starred().to_string(), "alpha*");
        assert_eq!(GeneratorSymbol::indexed("u", &[1, 2]).to_string(), "u(1,2)");
        assert_eq!(GeneratorSymbol::plain("g1").inverse().to_string(), "g1^-1");
    }

    #[test]
    fn alphabet_rejects_duplicates_and_i() {
        let mut a = Alphabet::new();
        a.push(GeneratorSymbol::plain("a")).unwrap();
        assert!(a.push(GeneratorSymbol::plain("a")).is_err());
        assert!(a.push(GeneratorSymbol::plain("i")).is_err());
        assert_eq!(a.by_name("a").unwrap(), 0);
    }
}
