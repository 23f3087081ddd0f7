//! Polynomial germs with exact rational coefficients, and their JSON form.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_q, parse_q, Q};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GermJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl GermPoly {
    /// Builds a germ, summing repeated exponents and dropping zero terms.
    pub fn new<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Q)>,
    {
        if nvars == 0 {
            return Err(Error::Parse("germ needs at least one variable".into()));
        }
        let mut map: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Parse(format!(
                    "exponent {e:?} has length {}, expected {nvars}",
                    e.len()
                )));
            }
            *map.entry(e).or_insert_with(Q::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.keys().any(|e| e.iter().all(|&x| x == 0)) {
            return Err(Error::ConstantTerm);
        }
        Ok(GermPoly { nvars, terms: map })
    }

    /// Sum of monomials with coefficient one.
    pub fn from_exponents(nvars: usize, exps: &[&[u32]]) -> Result<Self> {
        GermPoly::new(nvars, exps.iter().map(|e| (e.to_vec(), Q::from_integer(1))))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).collect())
            .collect()
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0)
    }

    /// First variable with no pure power among the terms, if any.
    pub fn missing_pure_power(&self) -> Option<usize> {
        (0..self.nvars).find(|&i| {
            !self.terms.keys().any(|e| {
                e[i] > 0 && e.iter().enumerate().all(|(j, &x)| j == i || x == 0)
            })
        })
    }

    pub fn is_convenient(&self) -> bool {
        self.missing_pure_power().is_none()
    }

    /// Sub-polynomial on the given exponents.
    pub fn restrict<F: Fn(&[u32]) -> bool>(&self, keep: F) -> GermPoly {
        GermPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
        }
    }

    pub fn to_json(&self, vars: Option<&[String]>) -> GermJson {
        let vars = match vars {
            Some(v) => v.to_vec(),
            None => default_vars(self.nvars),
        };
        GermJson {
            vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson { exp: e.clone(), coef: fmt_q(c) })
                .collect(),
        }
    }

    pub fn from_json(j: &GermJson) -> Result<Self> {
        let n = j.vars.len();
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            let c = parse_q(&t.coef)
                .ok_or_else(|| Error::Parse(format!("bad coefficient {:?}", t.coef)))?;
            terms.push((t.exp.clone(), c));
        }
        GermPoly::new(n, terms)
    }

    pub fn parse_str(s: &str) -> Result<Self> {
        let j: GermJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        GermPoly::from_json(&j)
    }
}

fn default_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}
