use std::fmt;

/// A word `s_{i1} s_{i2} ... s_{ik}` in the simple reflections, 0-based
/// letters. It acts on weights as the composition `s_{i1} o ... o s_{ik}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord(Vec<usize>);

impl WeylWord {
    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord(letters)
    }

    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `s_i * self`
    pub fn prepend(&self, i: usize) -> WeylWord {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.push(i);
        letters.extend_from_slice(&self.0);
        WeylWord(letters)
    }

    /// Letters shifted to the 1-based numbering used for display.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{}", i + 1)?;
        }
        Ok(())
    }
}
