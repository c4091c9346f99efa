//! Named, interchangeable evaluators of the local contribution `l(Q, m)`.
//!
//! Each evaluator implements [`LocalTerm`] and is looked up by name in a
//! [`LocalTermRegistry`]. The CLI's `l --form` flag selects from the
//! default registry; the oracle sweeps every registered form against its
//! own brute-force sum.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::basket::{l_closed, l_direct, l_onewave, QuotientSingularity};
use crate::error::{Error, Result};
use crate::numeric::Rational;

pub trait LocalTerm: Send + Sync {
    fn name(&self) -> &'static str;

    fn describe(&self) -> &'static str {
        ""
    }

    /// Whether this form is defined for `q`.
    fn applies_to(&self, _q: &QuotientSingularity) -> bool {
        true
    }

    fn eval(&self, q: &QuotientSingularity, m: u64) -> Result<Rational>;
}

pub struct DirectSum;

impl LocalTerm for DirectSum {
    fn name(&self) -> &'static str {
        "direct"
    }

    fn describe(&self) -> &'static str {
        "sum over k = 1..m-1"
    }

    fn eval(&self, q: &QuotientSingularity, m: u64) -> Result<Rational> {
        Ok(l_direct(q, m))
    }
}

pub struct PeriodReduced;

impl LocalTerm for PeriodReduced {
    fn name(&self) -> &'static str {
        "closed"
    }

    fn describe(&self) -> &'static str {
        "complete periods plus a partial sum over the residue"
    }

    fn eval(&self, q: &QuotientSingularity, m: u64) -> Result<Rational> {
        Ok(l_closed(q, m))
    }
}

/// Polynomial form, only for weight `±1`.
pub struct OneWave;

impl LocalTerm for OneWave {
    fn name(&self) -> &'static str {
        "onewave"
    }

    fn describe(&self) -> &'static str {
        "polynomial form for type 1/r(1,-1,1)"
    }

    fn applies_to(&self, q: &QuotientSingularity) -> bool {
        q.weight() == 1
    }

    fn eval(&self, q: &QuotientSingularity, m: u64) -> Result<Rational> {
        if !self.applies_to(q) {
            return Err(Error::domain(
                "l_onewave",
                format!("{q} does not have weight 1; the polynomial form does not apply"),
            ));
        }
        Ok(l_onewave(q.order(), m))
    }
}

#[derive(Clone, Default)]
pub struct LocalTermRegistry {
    forms: BTreeMap<&'static str, Arc<dyn LocalTerm>>,
}

impl LocalTermRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Registers `form`, replacing any form of the same name.
    pub fn register(&mut self, form: Arc<dyn LocalTerm>) -> &mut Self {
        self.forms.insert(form.name(), form);
        self
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn LocalTerm>> {
        self.forms.get(name).cloned().ok_or_else(|| {
            Error::domain(
                "l",
                format!(
                    "unknown form {name:?}; available: {}",
                    self.names().join(", ")
                ),
            )
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.forms.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn LocalTerm>> {
        self.forms.values()
    }
}

impl LocalTermRegistry {
    /// The three forms shipped with the crate: `direct`, `closed`, `onewave`.
    pub fn standard() -> Self {
        let mut reg = Self::empty();
        reg.register(Arc::new(DirectSum))
            .register(Arc::new(PeriodReduced))
            .register(Arc::new(OneWave));
        reg
    }
}
