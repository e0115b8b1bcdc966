use crate::exactla::Field;
use crate::error::{Error, Result};
use crate::kron::StabilityOptions;
use crate::polygraded::monomial::{self, Exp};
use crate::polygraded::{Form, Presentation};

/// T = O(-n) ⊕ O(-m) on P^r together with the budgets shared by every
/// operation of the bridge. H = S_{m-n} with the pinned monomial basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BridgeContext<F: Field> {
    pub r: usize,
    pub field: F,
    pub n: i64,
    pub m: i64,
    /// Slack above the top presentation degree for resolutions.
    pub degree_cap: Option<i64>,
    pub theta_budget: usize,
    pub max_power: usize,
    pub seed: u64,
    pub enum_budget: u128,
}

impl<F: Field> BridgeContext<F> {
    pub fn new(field: &F, r: usize, n: i64, m: i64) -> Result<Self> {
        if m <= n {
            return Err(Error::InvalidContext(format!("need m > n, got n = {n}, m = {m}")));
        }
        if r == 0 {
            return Err(Error::InvalidContext("projective dimension must be positive".into()));
        }
        let d = StabilityOptions::default();
        Ok(BridgeContext {
            r,
            field: field.clone(),
            n,
            m,
            degree_cap: None,
            theta_budget: d.theta_budget,
            max_power: d.max_power,
            seed: d.seed,
            enum_budget: d.enum_budget,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_budget(mut self, theta_budget: usize) -> Self {
        self.theta_budget = theta_budget;
        self
    }

    pub fn with_degree_cap(mut self, cap: Option<i64>) -> Self {
        self.degree_cap = cap;
        self
    }

    /// Same budgets, other twists.
    pub fn at(&self, n: i64, m: i64) -> Result<Self> {
        let mut c = Self::new(&self.field, self.r, n, m)?;
        c.degree_cap = self.degree_cap;
        c.theta_budget = self.theta_budget;
        c.max_power = self.max_power;
        c.seed = self.seed;
        c.enum_budget = self.enum_budget;
        Ok(c)
    }

    pub fn nv(&self) -> usize {
        self.r + 1
    }

    pub fn h_basis(&self) -> Vec<Exp> {
        monomial::monomial_basis(self.nv(), self.m - self.n)
    }

    pub fn dim_h(&self) -> usize {
        monomial::num_monomials(self.nv(), self.m - self.n)
    }

    pub fn h_forms(&self) -> Vec<Form<F>> {
        self.h_basis()
            .into_iter()
            .map(|e| Form::monomial(&self.field, e, self.field.one()))
            .collect()
    }

    pub fn stability_options(&self) -> StabilityOptions {
        StabilityOptions {
            enum_budget: self.enum_budget,
            theta_budget: self.theta_budget,
            max_power: self.max_power,
            seed: self.seed,
        }
    }

    pub(crate) fn check(&self, e: &Presentation<F>) -> Result<()> {
        if e.num_vars() != self.nv() {
            return Err(Error::VarMismatch(e.num_vars(), self.nv()));
        }
        if e.field() != &self.field {
            return Err(Error::FieldMismatch("sheaf and context".into()));
        }
        Ok(())
    }
}
