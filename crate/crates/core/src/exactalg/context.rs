use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Coordinate names of the complex Heisenberg group, in canonical order.
pub const HEISENBERG_VARS: [&str; 5] = ["y00p", "y10p", "y01p", "y11p", "t"];

/// Coordinate names of the real Heisenberg group.
pub const REAL_VARS: [&str; 5] = ["x1", "x2", "x3", "x4", "s"];

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    names: Vec<String>,
    /// `inverse[k] = Some(j)` when variable `j` is declared as `1/x_k`.
    inverse: Vec<Option<usize>>,
}

/// An ordered list of variable names shared by every polynomial built in it.
///
/// A context may declare Laurent pairs `(x, xinv)`; monomials are normalized
/// with `x·xinv = 1`. Cloning is cheap.
#[derive(Clone)]
pub struct Context(Arc<Inner>);

impl Context {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Self::with_laurent::<S, &str>(names, &[])
    }

    /// A context where each pair `(x, y)` satisfies `x·y = 1`.
    pub fn with_laurent<S: AsRef<str>, P: AsRef<str>>(names: &[S], pairs: &[(P, P)]) -> Self {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(n),
                "duplicate variable `{n}` in context"
            );
            assert!(n != "i", "`i` is reserved for the imaginary unit");
        }
        let mut inverse = vec![None; names.len()];
        for (a, b) in pairs {
            let ia = names.iter().position(|n| n == a.as_ref()).expect("laurent pair variable");
            let ib = names.iter().position(|n| n == b.as_ref()).expect("laurent pair variable");
            inverse[ia] = Some(ib);
            inverse[ib] = Some(ia);
        }
        Context(Arc::new(Inner { names, inverse }))
    }

    /// `(y00p, y10p, y01p, y11p, t)`.
    pub fn heisenberg() -> Self {
        Self::new(&HEISENBERG_VARS)
    }

    /// The Heisenberg coordinates followed by extra parameter symbols.
    pub fn heisenberg_with(extra: &[&str]) -> Self {
        let mut v: Vec<&str> = HEISENBERG_VARS.to_vec();
        v.extend_from_slice(extra);
        Self::new(&v)
    }

    /// Heisenberg coordinates plus the Laurent pair `(zeta, zetainv)`.
    pub fn heisenberg_zeta() -> Self {
        let mut v: Vec<&str> = HEISENBERG_VARS.to_vec();
        v.extend_from_slice(&["zeta", "zetainv"]);
        Self::with_laurent(&v, &[("zeta", "zetainv")])
    }

    /// `(x1, x2, x3, x4, s)`.
    pub fn real() -> Self {
        Self::new(&REAL_VARS)
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, k: usize) -> &str {
        &self.0.names[k]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn inverse_of(&self, k: usize) -> Option<usize> {
        self.0.inverse[k]
    }

    pub fn has_laurent(&self) -> bool {
        self.0.inverse.iter().any(Option::is_some)
    }

    pub fn check_same(&self, other: &Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch { left: self.to_string(), right: other.to_string() })
        }
    }
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Context {}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.names.join(", "))
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Context[{self}]")
    }
}
