use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::PolyError;

/// Ordered set of variable names. The order fixes the lexicographic
/// tie-break of the monomial order: earlier names rank higher.
#[derive(Clone)]
pub struct VarTable {
    inner: Arc<Inner>,
}

struct Inner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(PolyError::InvalidVariableName(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(PolyError::DuplicateVariable(name.clone()));
            }
        }
        Ok(VarTable {
            inner: Arc::new(Inner { names, index }),
        })
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.inner.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.inner.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.names == other.inner.names
    }
}

impl Eq for VarTable {}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.inner.names.iter()).finish()
    }
}
